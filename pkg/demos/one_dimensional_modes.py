#!/usr/bin/env python3
"""How many modes does a standard normal sample have?

At a sensible bandwidth the answer is one, and the test says so with
confidence.  Undersmooth the same sample and the density estimate sprouts a
dozen wiggles -- every one of which the test correctly refuses to certify.
"""

import os

import numpy as np

from modesig import ModeTestConfig, run_mode_test
from modesig.report import emit_report

out_dir = os.path.join(os.path.dirname(os.path.abspath(__file__)), "out", "one_dim")

data = np.random.default_rng(7).normal(size=(200, 1))

# a reasonable bandwidth: one candidate, and it is significant
rep = run_mode_test(data, ModeTestConfig(h=1.0, alpha=0.10, B=500,
                                         split_seed=7, boot_seed=7))
print(f"h=1.0: {rep.k} candidate(s), {rep.significant_count} significant")
for port in rep.portraits:
    lo, hi = port.c_interval
    print(f"  mode at {port.mode.location[0]:+.3f}  "
          f"curvature interval [{lo:.4f}, {hi:.4f}]  "
          f"significant={port.significant}")

emit_report(out_dir, config={"h": 1.0, "alpha": 0.10, "B": 500}, report=rep)
print(f"wrote {out_dir}/report.json and eigenportrait.svg")

# undersmoothed: plenty of candidates, none of them certified
rep = run_mode_test(data, ModeTestConfig(h=0.1, alpha=0.10, B=500,
                                         split_seed=7, boot_seed=7))
print(f"\nh=0.1: {rep.k} candidate(s), {rep.significant_count} significant")
print("every wiggle fails the test: the lower curvature bounds sit at or "
      "below zero once the bootstrap spread is accounted for")
