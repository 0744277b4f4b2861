"""Compare the compiled and pure-Python kernels.

    python3 benchmarks/bench_kernels.py [--repeat N]

Times Laufer's iteration on long Y_p graphs and the bounded minimum-cycle
search on the small-tree family used by the oracle checks.
"""

import argparse
import time

from plumbkit import _pure
from plumbkit.generators import weighted_trees
from plumbkit.graph import make_yp
from plumbkit.lattice import graph_is_negative_definite

try:
    from plumbkit import _speedups
except ImportError:
    _speedups = None


def _time(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t)
    return best


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()

    backends = {"pure": _pure}
    if _speedups is not None:
        backends["compiled"] = _speedups
    else:
        print("compiled extension not built; timing the pure kernels only")

    big = [make_yp(p).csr for p in (50, 200, 800)]
    trees = [g.csr for g in weighted_trees(5, range(-5, 0)) if graph_is_negative_definite(g)]

    cases = {
        "laufer on Y_50, Y_200, Y_800": lambda m: [m.laufer(*c) for c in big],
        f"search bound 8 on {len(trees)} trees (<= 5 vertices)": lambda m: [m.min_cycle_search(*c, 8) for c in trees],
    }
    print(f"{'case':<48} " + " ".join(f"{name:>10}" for name in backends) + "   speedup")
    for label, case in cases.items():
        times = {name: _time(lambda m=mod: case(m), args.repeat) for name, mod in backends.items()}
        row = f"{label:<48} " + " ".join(f"{times[n]:>9.3f}s" for n in backends)
        if "compiled" in times:
            row += f"   {times['pure'] / times['compiled']:.1f}x"
        print(row)


if __name__ == "__main__":
    main()
