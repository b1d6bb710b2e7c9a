"""Compare the compiled and pure-Python radial kernels.

    python3 benchmarks/bench_kernels.py [--n 4096] [--repeat 5]

Times the individual kernels on one grid and full ground-state solves with
each backend swapped into the solver, then prints a table of best-of-N
wall times and speedups.
"""

import argparse
import math
import timeit
from contextlib import contextmanager

import numpy as np

from gravbec import _kernels_py, mean_field
from gravbec.physical_model import couplings_from_tilde

try:
    from gravbec import _kernels_cy
except ImportError:            # extension not built
    _kernels_cy = None


@contextmanager
def backend(module):
    saved = mean_field._kernels
    mean_field._kernels = module
    try:
        yield
    finally:
        mean_field._kernels = saved


def kernel_cases(n):
    grid = mean_field.RadialGrid(10.0, n)
    u = np.ascontiguousarray(mean_field.gaussian_state(grid, 1.0).reduced())
    r, dr = grid.r, grid.dr
    return {
        "kinetic_apply": lambda k: k.kinetic_apply(u, dr),
        "gravity_potential": lambda k: k.gravity_potential(u, r, dr, 1.0),
        "energy_terms": lambda k: k.energy_terms(u, r, dr, 2.0, 1.0, True),
        "effective_potential": lambda k: k.effective_potential(u, r, dr, 2.0, 1.0, True),
        "flow_step": lambda k: k.flow_step(u, r, dr, 2.0, 1.0, True, 0.1),
    }


def solve_cases(n):
    def trapped(k):
        g_u, g_s = couplings_from_tilde(1.0, 1.0)
        with backend(k):
            mean_field.ground_state(g_s, g_u, True, n=n)

    def boson_star(k):
        with backend(k):
            mean_field.ground_state(0.0, 1.0, trap=False, n=n)
    return {"ground_state trapped": trapped, "ground_state boson star": boson_star}


def best(fn, module, repeat):
    number = 1
    while timeit.timeit(lambda: fn(module), number=number) < 0.05:
        number *= 4
    return min(timeit.repeat(lambda: fn(module), number=number, repeat=repeat)) / number


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--n", type=int, default=4096, help="radial grid points")
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args()
    if _kernels_cy is None:
        raise SystemExit("compiled backend not available; run "
                         "'python3 setup.py build_ext --inplace' first")
    cases = {**kernel_cases(args.n), **solve_cases(args.n)}
    print(f"grid points: {args.n}, best of {args.repeat}")
    print(f"{'case':<26}{'python':>12}{'cython':>12}{'speedup':>10}")
    for name, fn in cases.items():
        t_py = best(fn, _kernels_py, args.repeat)
        t_cy = best(fn, _kernels_cy, args.repeat)
        print(f"{name:<26}{t_py * 1e3:>10.3f}ms{t_cy * 1e3:>10.3f}ms"
              f"{t_py / t_cy if t_cy > 0 else math.inf:>9.1f}x")


if __name__ == "__main__":
    main()
