"""Time the product of two random 200-term elements of A(z^2 - 1; q).

Runs every available kernel backend on the same inputs and checks that the
results agree.  Usage: python benchmarks/bench_mul.py [--terms N] [--reps R]
"""

import argparse
import random
import statistics
import time

from weylcalc import kernel
from weylcalc.algebra import AlgebraCtx, AMonomial
from weylcalc.scalars import Scalar, ZPoly


def random_element(ctx, rng, terms, max_exp):
    seen = {}
    while len(seen) < terms:
        m = AMonomial(rng.randint(-max_exp, max_exp), rng.randint(0, max_exp), rng.randint(0, max_exp))
        seen[m] = Scalar.qpow(rng.randint(-3, 3)) * rng.choice((1, -1, 2, 3, -5))
    out = ctx.zero
    for m, c in seen.items():
        out = out + ctx.monomial(*m, c)
    return out


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--terms", type=int, default=200)
    ap.add_argument("--max-exp", type=int, default=10)
    ap.add_argument("--reps", type=int, default=5)
    ap.add_argument("--seed", type=int, default=1)
    args = ap.parse_args()

    results = {}
    for backend in kernel.available_backends():
        kernel.use_backend(backend)
        times = []
        for _ in range(args.reps):
            # fresh context each time so cached structure polynomials do not
            # flatter later repetitions
            ctx = AlgebraCtx(ZPoly([-1, 0, 1]))
            r = random.Random(args.seed)
            a = random_element(ctx, r, args.terms, args.max_exp)
            b = random_element(ctx, r, args.terms, args.max_exp)
            t0 = time.perf_counter()
            prod = a * b
            times.append(time.perf_counter() - t0)
        results[backend] = prod
        print(f"{backend:7} median {statistics.median(times) * 1e3:8.1f} ms   "
              f"min {min(times) * 1e3:8.1f} ms   result terms {len(prod)}")
    values = list(results.values())
    assert all(v.terms == values[0].terms for v in values), "backends disagree"
    print("backends agree")


if __name__ == "__main__":
    main()
