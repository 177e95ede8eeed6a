"""Compare the compiled and numpy split kernels.

    python bench/bench_kernels.py [--rows 400] [--features 3] [--repeat 200]

Times one best-split call, one full score_subset (fit + predict + score) and a
small scan on random regression and classification data, for each backend.
"""

import argparse
import time

import numpy as np

from twotier import Dataset, Task, _pysplit, best_split, kernels, make_split, score_subset


def timeit(fn, repeat):
    fn()
    t0 = time.perf_counter()
    for _ in range(repeat):
        fn()
    return (time.perf_counter() - t0) / repeat


def make_data(rows, features, task, seed=0):
    rng = np.random.default_rng(seed)
    X = rng.normal(size=(rows, features)).round(2)
    if task is Task.CLASSIFICATION:
        y = (X[:, 0] * X[:, 1] > 0).astype(int) ^ (rng.random(rows) < 0.1)
    else:
        y = np.sign(X[:, 0] * X[:, 1]) + rng.normal(scale=0.5, size=rows)
    names = tuple(f"x{i}" for i in range(features))
    return Dataset(names, X, y, task)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--rows", type=int, default=400)
    ap.add_argument("--features", type=int, default=3)
    ap.add_argument("--repeat", type=int, default=200)
    args = ap.parse_args()

    backends = [("numpy", _pysplit)]
    if kernels.compiled is not None:
        backends.append(("cython", kernels.compiled))
    else:
        print("compiled kernel not built; timing the numpy fallback only")

    print(f"rows={args.rows} features={args.features} repeat={args.repeat}")
    print(f"{'task':<15}{'operation':<14}" + "".join(f"{n:>12}" for n, _ in backends)
          + ("     speedup" if len(backends) == 2 else ""))
    for task in (Task.REGRESSION, Task.CLASSIFICATION):
        d = make_data(args.rows, args.features, task)
        plan = make_split(d, 0.7, 1)
        feats = list(range(d.n_features))
        rows = np.arange(d.n_samples)
        ops = {
            "best_split": lambda k: best_split(rows, d, feats, backend=k),
            "score_subset": lambda k: score_subset(d, plan, feats, backend=k),
        }
        for name, op in ops.items():
            picks = {op(k) for _, k in backends} if name == "best_split" else set()
            assert len(picks) <= 1, "backends disagree"
            times = [timeit(lambda k=k: op(k), args.repeat) for _, k in backends]
            line = f"{task.value:<15}{name:<14}" + "".join(f"{t * 1e6:>10.1f}us" for t in times)
            if len(times) == 2:
                line += f"{times[0] / times[1]:>11.1f}x"
            print(line)


if __name__ == "__main__":
    main()
