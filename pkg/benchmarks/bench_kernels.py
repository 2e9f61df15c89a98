"""Compare the compiled and pure-Python kernels on the hot paths.

    python3 benchmarks/bench_kernels.py [--repeat N]

Each row times one workload under every available backend and prints the
speed-up of the compiled kernels over the fallback.
"""

import argparse
import random
import time

from mealycat import fugal, kernels, rel
from mealycat.finset import FinSet
from mealycat.machines import random_mealy


def _alphabet(n, prefix):
    return FinSet([f"{prefix}{k}" for k in range(n)])


def fugal_check(rng):
    ms = [fugal.fugal_extension(random_mealy(rng, _alphabet(4, "e"), _alphabet(4, "a"), _alphabet(4, "b")))
          for _ in range(20)]
    return lambda: [fugal.is_fugal(m, 6) for m in ms]


def flat_composition(rng):
    pairs = []
    for _ in range(20):
        m1 = random_mealy(rng, _alphabet(3, "e"), _alphabet(3, "a"), _alphabet(3, "b"))
        m2 = random_mealy(rng, _alphabet(3, "f"), m1.output, _alphabet(3, "c"))
        pairs.append((m1, m2))
    return lambda: [fugal.check_flat_preserves_composition(m1, m2, 6) for m1, m2 in pairs]


def rel_enumeration(rng):
    A = _alphabet(3, "x")
    B = _alphabet(4, "y")
    cases = [(rel.Rel.from_mask(A, A, rng.getrandbits(9)), rel.Rel.from_mask(A, B, rng.getrandbits(12)))
             for _ in range(10)]
    return lambda: [rel.count_machines(I, O) for I, O in cases]


WORKLOADS = [("fugal check, 20 x |E|=|I|=|O|=4, len 6", fugal_check),
             ("flat composition, 20 pairs, len 6", flat_composition),
             ("rel enumeration, 10 x 2^12 relations", rel_enumeration)]


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    backends = kernels.available()
    if "cython" not in backends:
        print("compiled kernels not built; timing the Python fallback only")
    print(f"{'workload':42s}" + "".join(f"{b:>12s}" for b in backends) + ("     speed-up" if len(backends) > 1 else ""))
    for label, make in WORKLOADS:
        work = make(random.Random(0))
        row = {}
        for b in backends:
            kernels.use_backend(b)
            row[b] = best_of(work, args.repeat)
        line = f"{label:42s}" + "".join(f"{row[b]:11.4f}s" for b in backends)
        if len(backends) > 1:
            line += f"{row['python'] / row['cython']:12.1f}x"
        print(line)


if __name__ == "__main__":
    main()
