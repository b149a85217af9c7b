#!/usr/bin/env python3
"""Write small bundled scikit-learn datasets as libsvm train/test files.

The split is a seeded random permutation (70% train). Nothing is downloaded.
"""

import argparse
from pathlib import Path

import numpy as np
from sklearn import datasets

LOADERS = {
    "breast_cancer": datasets.load_breast_cancer,
    "wine": datasets.load_wine,
    "digits": datasets.load_digits,
}


def write_libsvm(path, x, y):
    with open(path, "w") as f:
        for row, label in zip(x, y):
            feats = " ".join(f"{j + 1}:{float(v)!r}" for j, v in enumerate(row) if v != 0.0)
            f.write(f"{int(label)} {feats}".rstrip() + "\n")


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", type=Path, default=Path(__file__).resolve().parents[1] / "tests" / "data")
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--train-fraction", type=float, default=0.7)
    ap.add_argument("names", nargs="*", default=["breast_cancer", "wine"])
    args = ap.parse_args()
    args.out.mkdir(parents=True, exist_ok=True)
    for name in args.names:
        bunch = LOADERS[name]()
        x, y = bunch.data.astype(float), bunch.target.astype(int)
        perm = np.random.default_rng(args.seed).permutation(len(y))
        n_train = int(round(args.train_fraction * len(y)))
        tr, te = perm[:n_train], perm[n_train:]
        write_libsvm(args.out / f"{name}.train", x[tr], y[tr])
        write_libsvm(args.out / f"{name}.test", x[te], y[te])
        print(f"{name}: d={x.shape[1]} train={len(tr)} test={len(te)} classes={sorted(set(y))}")


if __name__ == "__main__":
    main()
