"""Exhaustive longest-snake search for n = 5 with tau_3 and tau_5 (and smaller cases)."""

import argparse
import time

from rankgray import analysis as an
from rankgray import search

CASES = [(3, [2, 3]), (4, [3]), (4, [3, 4]), (4, [2, 3, 4]), (5, [3, 5])]


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--budget", type=float, default=None, help="seconds per case")
    args = parser.parse_args()
    for n, gens in CASES:
        t0 = time.perf_counter()
        res = search.longest_snake_search(n, gens, budget=args.budget)
        secs = time.perf_counter() - t0
        ok = res.witness is not None and an.verify_snake(res.witness, mode="sn").min_pairwise_kendall_ok
        print(
            f"n={n} gens={','.join(map(str, gens)):<8} length={res.length:<4} "
            f"exact={res.exact} nodes={res.nodes} witness_ok={ok} {secs:.1f}s",
            flush=True,
        )
    t0 = time.perf_counter()
    ham = search.find_hamiltonian_cycle(5, [3, 5], budget=args.budget)
    print(f"A_5 Hamiltonian cycle with tau_3, tau_5: {'none' if ham.exact and not ham.length else ham.length} "
          f"({time.perf_counter() - t0:.1f}s)")
    for n, a, b in [(5, 3, 5), (7, 5, 7), (7, 3, 7), (3, 2, 3)]:
        print(f"rankin n={n} gens={a},{b}: {'excluded' if an.rankin_verdict(n, a, b) else 'inconclusive'}")


if __name__ == "__main__":
    main()
