"""
Checks and oracles for snake cycles: verification, Rankin's criterion, the M_6 replay.

A snake is a self-avoiding cycle with no two vertices one adjacent
transposition apart (Kendall distance 1).  :func:`verify_snake` walks a
sequence once, then probes every visited vertex's ``n - 1`` adjacent-swap
neighbours against a bitmap of visited lexicographic ranks.  Inside A_n the
probe can never hit, because an adjacent swap flips parity; it is run anyway.
"""

from __future__ import annotations

import json
import math
from collections import deque
from dataclasses import asdict, dataclass, field

import numpy as np

from . import permcore as pc
from .config import LIMITS
from .covers import GenSequence

CHUNK = 1 << 20
# violations kept per reason; the report stays readable on badly broken input
MAX_VIOLATIONS = 50

REPEATED = "repeated vertex"
KENDALL = "kendall distance 1"
ODD_GENERATOR = "odd generator leaves A_n"
ODD_VERTEX = "odd permutation"


@dataclass
class SnakeReport:
    length: int
    is_cycle: bool
    is_hamiltonian_in_An: bool
    min_pairwise_kendall_ok: bool
    generator_histogram: dict[int, int]
    violations: list[tuple[int, int, str]] = field(default_factory=list)

    @property
    def self_avoiding(self) -> bool:
        return not any(reason == REPEATED for _, _, reason in self.violations)

    @property
    def in_alternating_group(self) -> bool:
        return not any(reason in (ODD_GENERATOR, ODD_VERTEX) for _, _, reason in self.violations)

    def to_dict(self) -> dict:
        d = asdict(self)
        d["generator_histogram"] = {str(k): v for k, v in self.generator_histogram.items()}
        d["violations"] = [list(v) for v in self.violations]
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=False)

    def to_text(self) -> str:
        hist = " ".join(f"{k}:{v}" for k, v in sorted(self.generator_histogram.items()))
        lines = [
            f"length: {self.length}",
            f"is_cycle: {str(self.is_cycle).lower()}",
            f"is_hamiltonian_in_An: {str(self.is_hamiltonian_in_An).lower()}",
            f"min_pairwise_kendall_ok: {str(self.min_pairwise_kendall_ok).lower()}",
            f"generator_histogram: {hist}",
            f"violations: {len(self.violations)}",
        ]
        lines += [f"violation: {i} {j} {reason}" for i, j, reason in self.violations]
        return "\n".join(lines) + "\n"


def _neighbour_ranks(perms: np.ndarray, digits: np.ndarray, ranks: np.ndarray, i: int) -> np.ndarray:
    """Lexicographic ranks after swapping positions ``i`` and ``i + 1`` (0-based)."""
    n = perms.shape[1]
    up = (perms[:, i] < perms[:, i + 1]).astype(np.int64)
    c0 = digits[:, i].astype(np.int64)
    c1 = digits[:, i + 1].astype(np.int64)
    new0 = c1 + up
    new1 = c0 - (1 - up)
    return ranks + (new0 - c0) * math.factorial(n - 1 - i) + (new1 - c1) * math.factorial(n - 2 - i)


class _Violations:
    def __init__(self):
        self.items: list[tuple[int, int, str]] = []
        self.counts: dict[str, int] = {}

    def add(self, i: int, j: int, reason: str) -> None:
        if self.counts.get(reason, 0) < MAX_VIOLATIONS:
            self.items.append((int(i), int(j), reason))
        self.counts[reason] = self.counts.get(reason, 0) + 1

    def full(self, reason: str) -> bool:
        return self.counts.get(reason, 0) >= MAX_VIOLATIONS


def verify_snake(seq: GenSequence, mode: str = "an") -> SnakeReport:
    """Walk ``seq`` and report length, closure, Hamiltonicity in A_n and snake violations.

    ``mode="an"`` additionally flags generators and vertices outside A_n;
    ``mode="sn"`` accepts any generator.  Position ``t`` is the vertex reached
    after ``t`` steps.
    """
    if mode not in ("an", "sn"):
        raise ValueError(f"unknown mode {mode!r}")
    n = seq.n
    gens = seq.gens
    hist = {int(k): int(v) for k, v in enumerate(np.bincount(gens, minlength=n + 1)) if v}
    bad = _Violations()

    codes = pc.walk_codes(seq.start, gens)
    closed = len(gens) > 0 and codes[-1] == codes[0]
    verts = codes[:-1] if closed else codes
    total = len(verts)

    if mode == "an":
        for t in np.flatnonzero((gens & 1) == 0)[:MAX_VIOLATIONS].tolist():
            bad.add(t, (t + 1) % total if closed else t + 1, ODD_GENERATOR)

    seen = np.zeros(math.factorial(n), dtype=bool)
    weights = pc._weights(n)
    all_even = True
    repeated = []
    for lo in range(0, total, CHUNK):
        perms = pc.decode_many(verts[lo : lo + CHUNK], n)
        digits = pc.lehmer_many(perms)
        ranks = digits.astype(np.int64) @ weights
        odd = np.flatnonzero(digits.sum(axis=1, dtype=np.int64) & 1)
        if odd.size:
            all_even = False
            if mode == "an":
                for t in odd[:MAX_VIOLATIONS].tolist():
                    bad.add(lo + t, lo + t, ODD_VERTEX)
        order = np.argsort(ranks, kind="stable")
        dup_in_chunk = order[1:][ranks[order[1:]] == ranks[order[:-1]]]
        dup = np.union1d(np.flatnonzero(seen[ranks]), dup_in_chunk)
        repeated.extend((lo + dup[: MAX_VIOLATIONS]).tolist())
        seen[ranks] = True
    for t in repeated[:MAX_VIOLATIONS]:
        first = int(np.flatnonzero(verts == verts[t])[0])
        bad.add(first, t, REPEATED)

    kendall_ok = True
    for lo in range(0, total, CHUNK):
        if bad.full(KENDALL):
            break
        perms = pc.decode_many(verts[lo : lo + CHUNK], n)
        digits = pc.lehmer_many(perms)
        ranks = digits.astype(np.int64) @ weights
        for i in range(n - 1):
            hits = np.flatnonzero(seen[_neighbour_ranks(perms, digits, ranks, i)])
            if not hits.size:
                continue
            kendall_ok = False
            for t in hits[:MAX_VIOLATIONS].tolist():
                swapped = perms[t].tolist()
                swapped[i], swapped[i + 1] = swapped[i + 1], swapped[i]
                other = int(np.flatnonzero(verts == pc.encode(swapped))[0])
                if other > lo + t:
                    bad.add(lo + t, other, KENDALL)

    hamiltonian = (
        closed
        and total == pc.even_count(n)
        and all_even
        and not repeated
        and not np.any((gens & 1) == 0)
    )
    return SnakeReport(
        length=total,
        is_cycle=bool(closed),
        is_hamiltonian_in_An=bool(hamiltonian),
        min_pairwise_kendall_ok=kendall_ok,
        generator_histogram=hist,
        violations=sorted(bad.items),
    )


# ---------------------------------------------------------------------------
# Rankin's criterion


@dataclass(frozen=True)
class RankinInstance:
    group_size: int
    order_a: int
    order_ab_inv: int

    def __post_init__(self):
        if min(self.group_size, self.order_a, self.order_ab_inv) < 1:
            raise ValueError("group size and element orders must be positive")


def rankin_excludes(inst: RankinInstance) -> bool:
    """True when the two-generator criterion proves there is no directed Hamiltonian cycle."""
    if inst.group_size % inst.order_a:
        raise ValueError(f"order {inst.order_a} does not divide group size {inst.group_size}")
    return inst.order_ab_inv % 2 == 1 and (inst.group_size // inst.order_a) % 2 == 0


# closure by breadth-first search is kept to groups of this many points
RANKIN_MAX_POINTS = 9


def generated_group_size(gens: list[pc.Perm]) -> int:
    """Order of the permutation group generated by ``gens`` (breadth-first closure)."""
    n = len(gens[0])
    ident = pc.identity(n)
    seen = {ident}
    queue = deque([ident])
    while queue:
        p = queue.popleft()
        for g in gens:
            q = pc.compose(p, g)
            if q not in seen:
                seen.add(q)
                queue.append(q)
    return len(seen)


def rankin_instance(n: int, a: int, b: int) -> RankinInstance:
    """Instance for the Cayley graph of the group generated by ``tau_a`` and ``tau_b``.

    Both generators fix every element above ``max(a, b)``, so the closure is
    computed on ``1..max(a, b)``.
    """
    if a == b:
        raise ValueError("need two distinct generators")
    for k in (a, b):
        if not 2 <= k <= n:
            raise ValueError(f"generator index {k} out of range 2..{n}")
    points = max(a, b)
    if points > RANKIN_MAX_POINTS:
        raise ValueError(f"group closure limited to {RANKIN_MAX_POINTS} points, need {points}")
    ta, tb = pc.make_tau(a, points), pc.make_tau(b, points)
    return RankinInstance(
        group_size=generated_group_size([ta, tb]),
        order_a=pc.order(ta),
        order_ab_inv=pc.order(pc.compose(ta, pc.inverse(tb))),
    )


def rankin_verdict(n: int, a: int, b: int) -> bool:
    """Excluded if the criterion fires with either generator in the role of ``a``."""
    return rankin_excludes(rankin_instance(n, a, b)) or rankin_excludes(rankin_instance(n, b, a))


# ---------------------------------------------------------------------------
# the n = 6 cycle and the upper bound

# one third of the cycle; the whole generator sequence repeats it three times
M6_BLOCK = (
    "6455353355553555355533555535555355535555335553555533"
    "64555335355335533535553555535553555335555355535555335"
)
M6_REPEATS = 3


def m6_block() -> list[int]:
    return [int(ch) for ch in M6_BLOCK]


def m6_cycle(start: pc.Perm | None = None) -> GenSequence:
    """The 315-step snake in S_6, from the identity unless ``start`` is given."""
    gens = m6_block() * M6_REPEATS
    seq = GenSequence(6, pc.identity(6) if start is None else start, gens)
    if len(seq) != 315 or not seq.is_closed():
        raise RuntimeError("stored M_6 generator data failed its self-check")
    return seq


def upper_bound(n: int) -> int:
    """At most one of each pair {p, p tau_2} fits in a snake, so at most n!/2 vertices."""
    if n < 2:
        raise ValueError("n must be at least 2")
    if n > LIMITS.max_n:
        raise ValueError(f"n={n} exceeds the supported maximum {LIMITS.max_n}")
    return math.factorial(n) // 2
