"""Cycle structure of the A_7 cover as the rule rows are switched on one at a time."""

import argparse

from rankgray import covers as cv
from rankgray.hamgen import A7_RULES


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.parse_args()
    last = len(A7_RULES.rows) - 1
    print(f"{'rows':<14} {'cycles':>6}  lengths")
    for upto in range(-1, last):
        keep = list(range(upto + 1))
        cover = cv.cover_from_rule(7, A7_RULES.restricted(keep).generator_for)
        if not cover.is_valid():
            # the last two rule rows only form a cover together
            continue
        counts = cv.count_cycles(cover)
        label = "catch-all" if upto < 0 else f"1..{upto + 1} + last"
        shape = " ".join(f"{length}x{count}" for length, count in sorted(counts.items()))
        print(f"{label:<14} {sum(counts.values()):>6}  {shape}")


if __name__ == "__main__":
    main()
