"""Compare the compiled and pure-Python elimination kernels.

    python benchmarks/bench_elim.py [--repeat 3] [--degrees 16,20,24,28] [--bound 22]

Part one times the elimination kernel alone on the differential matrices of
the bundled ``four_quadrics`` model (with kernel-tracking columns, as the
cohomology engine uses them).  Part two times complete cohomology tables.
Both backends must produce identical pivots and dimensions.
"""

import argparse
import time

from sullivan import _elim_py, linalg
from sullivan.cli import read_model_text
from sullivan.cohomology import cohomology, differential_images
from sullivan.gca import basis
from sullivan.parser import parse_model

try:
    from sullivan import _elim as _elim_c
except ImportError:
    _elim_c = None


def tracked_rows(A, n):
    images = differential_images(A, n)
    width = len(basis(n + 1, A.gens))
    rows = []
    for j, vec in enumerate(images):
        k, row = linalg.integer_row(vec)
        row.append((width + j, k))
        rows.append(row)
    return rows, width


def best_of(repeat, fn):
    best, out = float("inf"), None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--repeat", type=int, default=3)
    p.add_argument("--degrees", default="16,20,24,28")
    p.add_argument("--bound", type=int, default=22)
    args = p.parse_args()
    A = parse_model(read_model_text("four_quadrics"))
    if _elim_c is None:
        print("compiled kernel not built; only the Python kernel is available")

    print("kernel: codegree  rows x cols   python ms  compiled ms  speedup")
    for n in (int(x) for x in args.degrees.split(",")):
        rows, width = tracked_rows(A, n)
        tp, rp = best_of(args.repeat, lambda: _elim_py.echelonize(rows, width))
        line = f"        {n:8d}  {len(rows):5d} x {width:<5d} {tp * 1000:10.1f}"
        if _elim_c is not None:
            try:
                tc, rc = best_of(args.repeat, lambda: _elim_c.echelonize(rows, width))
            except OverflowError:
                line += "     overflow (falls back to Python)"
            else:
                assert rc[0] == rp[0], "backends disagree on the echelon form"
                line += f" {tc * 1000:12.1f} {tp / tc:8.1f}x"
        print(line)

    print(f"table:  cohomology through codegree {args.bound}")
    dims = {}
    for backend in ("python", "compiled"):
        try:
            linalg.set_backend(backend)
        except RuntimeError:
            continue
        t, dims[backend] = best_of(args.repeat, lambda: cohomology(A, args.bound).dims)
        print(f"        {backend:9s} {t * 1000:10.1f} ms")
    if len(dims) == 2:
        assert dims["python"] == dims["compiled"], "backends disagree on dimensions"
        print("        dimensions identical")


if __name__ == "__main__":
    main()
