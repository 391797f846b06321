"""Generation and verification time and peak memory for odd n."""

import argparse
import resource
import time

from rankgray import analysis as an
from rankgray import hamgen


def peak_mb():
    return resource.getrusage(resource.RUSAGE_SELF).ru_maxrss / 1024


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("sizes", nargs="*", type=int, default=[7, 9, 11])
    args = parser.parse_args()
    for n in args.sizes:
        t0 = time.perf_counter()
        seq = hamgen.generate(n)
        t1 = time.perf_counter()
        rep = an.verify_snake(seq)
        t2 = time.perf_counter()
        hist = " ".join(f"{k}:{v}" for k, v in sorted(rep.generator_histogram.items()))
        print(
            f"n={n} length={rep.length} hamiltonian={rep.is_hamiltonian_in_An} "
            f"gen={t1 - t0:.2f}s verify={t2 - t1:.2f}s peak={peak_mb():.0f}MB",
            flush=True,
        )
        print(f"  histogram {hist}", flush=True)


if __name__ == "__main__":
    main()
