"""Compare the pure-Python and compiled elimination kernels.

    python3 benchmarks/bench_kernels.py --sizes 20 60 120 --repeat 3
"""

import argparse
import random
import time

from birkhoff.kernel import backends
from birkhoff.linalg import CERT_PRIME


def random_rows(n, rng, bound, rank_deficit=0):
    rows = [[rng.randint(-bound, bound) for _ in range(n)] for _ in range(n - rank_deficit)]
    # pad with combinations so the kernel is nontrivial
    for _ in range(rank_deficit):
        a, b = rng.sample(range(len(rows)), 2)
        rows.append([x + y for x, y in zip(rows[a], rows[b])])
    return rows


def best_of(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t)
    return best


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--sizes", type=int, nargs="+", default=[20, 60, 120])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--seed", type=int, default=1)
    args = ap.parse_args()

    impls = backends()
    if "cython" not in impls:
        print("compiled kernel not built; only the Python backend is available")
    rng = random.Random(args.seed)
    print(f"{'kernel':<10} {'n':>5} " + " ".join(f"{name:>12}" for name in impls) + "   speedup")
    for n in args.sizes:
        rows_mod = random_rows(n, rng, 10**6, n // 4)
        rows_int = random_rows(min(n, 40), rng, 9, min(n, 40) // 4)
        for label, call in (
            ("rref_mod", lambda k: k.rref_mod(rows_mod, n, CERT_PRIME)),
            ("rref_int", lambda k: k.rref_int(rows_int, len(rows_int[0]))),
        ):
            results = [call(k) for k in impls.values()]
            assert all(r == results[0] for r in results), "backends disagree"
            times = {name: best_of(lambda k=k: call(k), args.repeat) for name, k in impls.items()}
            size = n if label == "rref_mod" else len(rows_int[0])
            speed = times["python"] / times["cython"] if "cython" in times else 1.0
            print(f"{label:<10} {size:>5} " + " ".join(f"{t * 1e3:>10.2f}ms" for t in times.values())
                  + f"   {speed:6.1f}x")


if __name__ == "__main__":
    main()
