"""Benchmark the pure-Python and compiled feasibility kernels.

Builds the two workloads that dominate real runs (region-witness
systems and facet probes for a few Weyl types, plus a batch of random
mixed systems), solves every system with both kernels, checks the
results agree exactly, and prints a timing table.

Run:  python benchmarks/bench_fmcore.py [--types B3,B4] [--repeat 1]
"""

from __future__ import annotations

import argparse
import random
import time

from shicone import _fmcore_py
from shicone.rootsys import (
    CartanType,
    build_root_system,
    inverse_element,
    inversion_set,
    root_poset,
    weyl_group,
)

try:
    from shicone import _fmcore_c
except ImportError:
    _fmcore_c = None


def region_systems(type_name: str, stride: int = 1) -> list:
    rs = build_root_system(CartanType.parse(type_name))
    rp = root_poset(rs)
    n = rs.rank
    pos = rs.positive_roots
    systems = []
    for w in weyl_group(rs)[::stride]:
        E = sorted(
            set(range(len(pos))) - inversion_set(rs, inverse_element(rs, w))
        )
        sub = rp.restrict(E)
        for A in sub.antichains():
            ideal = sub.ideal_generated(A)
            base = [
                (tuple(1 if j == i else 0 for j in range(n)), 0, _fmcore_py.GT)
                for i in range(n)
            ]
            rows = list(base)
            for g in E:
                c = pos[g]
                if g in ideal:
                    rows.append((tuple(-x for x in c), -1, _fmcore_py.GT))
                else:
                    rows.append((c, 1, _fmcore_py.GT))
            systems.append((n, rows))
            for b in sorted(ideal):
                probe = list(base)
                for g in E:
                    c = pos[g]
                    if g == b:
                        probe.append((c, 1, _fmcore_py.EQ))
                    elif g in ideal:
                        probe.append((tuple(-x for x in c), -1, _fmcore_py.GT))
                    else:
                        probe.append((c, 1, _fmcore_py.GT))
                systems.append((n, probe))
    return systems


def random_systems(count: int, seed: int = 7) -> list:
    rng = random.Random(seed)
    systems = []
    for _ in range(count):
        n = rng.choice([2, 3, 4])
        rows = [
            (
                tuple(rng.randint(-4, 4) for _ in range(n)),
                rng.randint(-3, 3),
                rng.choice([_fmcore_py.EQ, _fmcore_py.GE, _fmcore_py.GT]),
            )
            for _ in range(rng.randint(1, 10))
        ]
        systems.append((n, rows))
    return systems


def run(kernel, systems, repeat: int) -> tuple:
    best = None
    out = None
    for _ in range(repeat):
        start = time.perf_counter()
        out = [kernel.solve(n, rows) for n, rows in systems]
        elapsed = time.perf_counter() - start
        best = elapsed if best is None else min(best, elapsed)
    return best, out


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--types", default="B3,B4", help="comma-separated types")
    parser.add_argument("--stride", type=int, default=4, help="cone subsampling")
    parser.add_argument("--random", type=int, default=2000)
    parser.add_argument("--repeat", type=int, default=1)
    args = parser.parse_args()

    workloads = []
    for name in args.types.split(","):
        workloads.append((f"regions+probes {name}", region_systems(name, args.stride)))
    workloads.append((f"random mixed x{args.random}", random_systems(args.random)))

    if _fmcore_c is None:
        print("compiled kernel not built (run: python setup.py build_ext --inplace)")

    header = f"{'workload':<28}{'systems':>9}{'pure (s)':>11}{'compiled (s)':>14}{'speedup':>9}"
    print(header)
    print("-" * len(header))
    for name, systems in workloads:
        t_py, out_py = run(_fmcore_py, systems, args.repeat)
        if _fmcore_c is None:
            print(f"{name:<28}{len(systems):>9}{t_py:>11.3f}{'-':>14}{'-':>9}")
            continue
        t_c, out_c = run(_fmcore_c, systems, args.repeat)
        if out_py != out_c:
            raise SystemExit(f"kernel mismatch on workload {name!r}")
        print(
            f"{name:<28}{len(systems):>9}{t_py:>11.3f}{t_c:>14.3f}"
            f"{t_py / t_c:>8.2f}x"
        )
    print("results of both kernels verified identical" if _fmcore_c else "")


if __name__ == "__main__":
    main()
