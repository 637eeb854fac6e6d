"""Time the windowed closure kernel: compiled vs pure Python.

    python3 benchmarks/bench_closure.py [--repeat N] [--windows 10 20 40]
"""
import argparse
import timeit

from affine_biclosed import _kernels_py
from affine_biclosed.affine import AffineRoot, _kernel_tables

try:
    from affine_biclosed import _kernels
except ImportError:
    _kernels = None

CASES = {
    "A2": [AffineRoot((1, 0), 0), AffineRoot((-1, 0), 1), AffineRoot((0, 1), 0)],
    "B2": [AffineRoot((1, 0), 0), AffineRoot((-1, -1), 1), AffineRoot((0, 1), 0)],
    "G2": [AffineRoot((1, 0), 0), AffineRoot((-3, -2), 1), AffineRoot((0, 1), 0)],
}


def _run(kernel, tag, gens, window):
    dirs, idx, nd, opposite, base, offsets, targets, p1s, p2s, qs = _kernel_tables(tag)
    seeds = [(idx[r.dir], r.level) for r in gens]
    return kernel.window_closure(nd, opposite, base, offsets, targets, p1s, p2s, qs, seeds, window)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--windows", type=int, nargs="+", default=[10, 20, 40])
    args = ap.parse_args()
    kernels = [("python", _kernels_py)] + ([("cython", _kernels)] if _kernels else [])
    if _kernels is None:
        print("compiled kernel not built; timing the Python kernel only")
    print(f"{'type':<5}{'window':>7}{'roots':>7}" + "".join(f"{n + ' ms':>12}" for n, _ in kernels)
          + ("     speedup" if _kernels else ""))
    for tag, gens in CASES.items():
        for n in args.windows:
            outs = [set(_run(k, tag, gens, n)) for _, k in kernels]
            assert all(o == outs[0] for o in outs), f"kernels disagree on {tag} window {n}"
            ms = [1000 * min(timeit.repeat(lambda k=k: _run(k, tag, gens, n),
                                           number=1, repeat=args.repeat)) for _, k in kernels]
            line = f"{tag:<5}{n:>7}{len(outs[0]):>7}" + "".join(f"{t:>12.2f}" for t in ms)
            if _kernels:
                line += f"{ms[0] / ms[1]:>11.1f}x"
            print(line)


if __name__ == "__main__":
    main()
