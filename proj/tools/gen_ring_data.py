#!/usr/bin/env python3
"""Regenerate data/ring_y.txt, the observation set for the ring-shaped posterior.

100 draws from N(2, 4^2) with a fixed seed, affinely rescaled so the sample
mean and centred sum of squares equal (2.00159623, 1365.90540918). The
posterior depends on the data only through these two statistics; the values
reproduce the published normalizing constants of the ring example across
d = 2, 50, 150, 500.
"""
import sys

import numpy as np

SEED = 20240501
TARGET_MEAN = 2.00159623
TARGET_SS = 1365.90540918


def main(path):
    y = np.random.default_rng(SEED).normal(2.0, 4.0, 100)
    centred = y - y.mean()
    y = TARGET_MEAN + centred * np.sqrt(TARGET_SS / np.sum(centred**2))
    with open(path, "w") as f:
        for v in y:
            f.write(f"{v:.17g}\n")


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else "data/ring_y.txt")
