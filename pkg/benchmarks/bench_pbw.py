"""Compare the compiled and pure-Python PBW kernels.

Runs the Lax pipeline (dominated by PBW straightening) and a batch of raw
products on a fresh kernel for each backend, then prints wall times.

    python benchmarks/bench_pbw.py [--repeat 3]
"""
import argparse
import random
import time

from wlax import LieAlgebraFamily, build_graded_setup, lax
from wlax.uea import UEA
from wlax._pbw_py import PBWKernel as PyKernel

try:
    from wlax._pbw_core import PBWKernel as CoreKernel
except ImportError:
    CoreKernel = None

CASES = [("gl", 3, (2, 1)), ("so", 5, (5,)), ("sp", 4, (4,))]


def random_products(kernel_cls, setup, count, seed):
    alg = UEA(setup, kernel_cls)
    rng = random.Random(seed)
    n = alg.dim
    t = time.perf_counter()
    for _ in range(count):
        a = alg.monomial([rng.randrange(n) for _ in range(3)])
        b = alg.monomial([rng.randrange(n) for _ in range(3)])
        a * b
    return time.perf_counter() - t


def pipeline(kernel_cls, setup):
    alg = UEA(setup, kernel_cls)
    t = time.perf_counter()
    lax(setup, None, alg)
    return time.perf_counter() - t


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--products", type=int, default=400)
    args = ap.parse_args()
    backends = [("python", PyKernel)]
    if CoreKernel is not None:
        backends.append(("compiled", CoreKernel))
    else:
        print("compiled kernel not built; timing the Python kernel only")
    print(f"{'case':<14}{'workload':<12}" + "".join(f"{b:>12}" for b, _ in backends) + f"{'speedup':>10}")
    for fam, n, part in CASES:
        setup = build_graded_setup(LieAlgebraFamily(fam, n), part)
        label = f"{fam}{n}{part}".replace(" ", "")
        for work, fn in (
            ("lax", lambda k: pipeline(k, setup)),
            ("products", lambda k: random_products(k, setup, args.products, 7)),
        ):
            times = [min(fn(k) for _ in range(args.repeat)) for _, k in backends]
            speed = f"{times[0] / times[-1]:.2f}x" if len(times) > 1 else "-"
            print(f"{label:<14}{work:<12}" + "".join(f"{t:>11.3f}s" for t in times) + f"{speed:>10}")


if __name__ == "__main__":
    main()
