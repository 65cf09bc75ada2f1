"""Compare the compiled and pure-Python integer kernels.

    python benchmarks/bench_kernels.py
    python benchmarks/bench_kernels.py --sizes 10 20 40 --repeat 5 --json out.json

Random matrices are sparse with small entries, like boundary matrices.  The
``corpus`` rows time the kernels on the matrices the verification suites
actually produce (differentials of strong cones of seeded map towers).
"""

import argparse
import json
import random
import statistics
import sys
import time

from stronghom import _pykernels, kernels


def random_rows(rng, m, n, density=0.3, bound=3):
    return [[rng.randint(-bound, bound) if rng.random() < density else 0 for _ in range(n)] for _ in range(m)]


def timed(fn, repeat):
    samples = []
    for _ in range(repeat):
        t = time.perf_counter()
        fn()
        samples.append(time.perf_counter() - t)
    return statistics.median(samples)


def corpus_matrices(count):
    from stronghom.suites import corpus_tower
    from stronghom.tower import strong_cone
    mats = []
    for i in range(count):
        C = strong_cone(corpus_tower(0, i))
        for n in C.degrees:
            D = C.differential(n)
            if D.nrows and D.ncols:
                mats.append((D.rows, D.nrows, D.ncols))
    return mats


def bench(cases, repeat):
    rows = []
    for label, mats in cases:
        for name in ("snf", "hnf"):
            py = timed(lambda: [getattr(_pykernels, name)(*a) for a in mats], repeat)
            nat = timed(lambda: [getattr(kernels, name)(*a, backend="native") for a in mats], repeat)
            rows.append({"case": label, "kernel": name, "python_s": py, "native_s": nat,
                         "speedup": py / nat if nat else float("inf")})
        mm = [(r, r, m, n, n) for r, m, n in mats if m == n]
        if mm:
            py = timed(lambda: [_pykernels.matmul(*a) for a in mm], repeat)
            nat = timed(lambda: [kernels.matmul(*a, backend="native") for a in mm], repeat)
            rows.append({"case": label, "kernel": "matmul", "python_s": py, "native_s": nat,
                         "speedup": py / nat if nat else float("inf")})
    return rows


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.split("\n\n")[0])
    ap.add_argument("--sizes", type=int, nargs="+", default=[8, 16, 32, 48])
    ap.add_argument("--batch", type=int, default=10, help="matrices per random case")
    ap.add_argument("--corpus", type=int, default=20, help="map towers for the corpus case (0 to skip)")
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--json", help="also write the rows here")
    args = ap.parse_args(argv)

    if not kernels.native_available():
        print("native extension not built; run `python setup.py build_ext --inplace`", file=sys.stderr)
        return 1
    rng = random.Random(args.seed)
    cases = [(f"random {s}x{s}", [(random_rows(rng, s, s), s, s) for _ in range(args.batch)])
             for s in args.sizes]
    if args.corpus:
        cases.append((f"corpus ({args.corpus} towers)", corpus_matrices(args.corpus)))
    rows = bench(cases, args.repeat)
    print(f"{'case':<24}{'kernel':<8}{'python s':>12}{'native s':>12}{'speedup':>10}")
    for r in rows:
        print(f"{r['case']:<24}{r['kernel']:<8}{r['python_s']:>12.4f}{r['native_s']:>12.4f}{r['speedup']:>9.1f}x")
    if args.json:
        with open(args.json, "w") as fh:
            json.dump(rows, fh, indent=1)
    return 0


if __name__ == "__main__":
    sys.exit(main())
