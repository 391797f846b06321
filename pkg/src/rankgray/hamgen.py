"""
Directed Hamiltonian cycles of the Cayley graph of A_n for odd n >= 7.

The cycle for A_7 comes from a table of pattern rules: every permutation is
followed by the generator of the first row it matches.  Larger odd n are
reached two at a time.  Given a Hamiltonian cycle ``L`` of A_{n-2} (from the
identity), every suffix class ``A_n(a, b)`` (even permutations ending in
``a, b``) can be covered by a relabelled copy of ``L``.  The classes are merged
into one cycle one hyperedge at a time, following a connected acyclic
hypergraph on ordered pairs: first six classes at once through the order-2
relation, then two new classes for each triangle.

Each copy of ``L`` is recorded as ``(base, p)``: its vertices are
``base * w_t`` where ``w_t`` is the ``t``-th vertex of ``L``, and the edge at
position ``p`` (a ``tau_k`` occurrence) is the one replaced by ``tau_n``.
"""

from __future__ import annotations

import logging
from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np

from . import permcore as pc
from .config import LIMITS, Limits
from .covers import GenSequence, SuccessorCover, walk_cover
from .hypergraph import Hyperedge, build_connected, order_hyperedges, shared_vertices, triangle_of

log = logging.getLogger(__name__)


class ConstructionError(RuntimeError):
    """The construction reached a state its invariants rule out."""


class UnsupportedSize(ValueError):
    pass


# ---------------------------------------------------------------------------
# pattern rules for A_7


@dataclass(frozen=True)
class Pattern:
    """Positional constraints: an exact value, ``*`` for anything, ``!v`` for anything but v."""

    cells: tuple[tuple[str, int], ...]

    @classmethod
    def parse(cls, text: str) -> "Pattern":
        cells = []
        i = 0
        while i < len(text):
            ch = text[i]
            if ch == "*":
                cells.append(("any", 0))
            elif ch == "!":
                i += 1
                cells.append(("not", int(text[i])))
            else:
                cells.append(("is", int(ch)))
            i += 1
        return cls(tuple(cells))

    def matches(self, p: Sequence[int]) -> bool:
        if len(p) != len(self.cells):
            return False
        for (kind, v), x in zip(self.cells, p):
            if kind == "is" and x != v:
                return False
            if kind == "not" and x == v:
                return False
        return True

    def __str__(self) -> str:
        return "".join("*" if k == "any" else (f"!{v}" if k == "not" else str(v)) for k, v in self.cells)


@dataclass(frozen=True)
class Rule:
    patterns: tuple[Pattern, ...]
    generator: int

    def matches(self, p: Sequence[int]) -> bool:
        return any(pat.matches(p) for pat in self.patterns)


@dataclass(frozen=True)
class RuleTable:
    """Ordered rules; the first matching row wins and the last row matches everything."""

    n: int
    rows: tuple[Rule, ...]

    @classmethod
    def from_rows(cls, n: int, rows: Sequence[tuple[Sequence[str], int]]) -> "RuleTable":
        rows = tuple(Rule(tuple(Pattern.parse(s) for s in pats), g) for pats, g in rows)
        return cls(n, rows)

    def matching_rows(self, p: Sequence[int]) -> list[int]:
        return [i for i, row in enumerate(self.rows) if row.matches(p)]

    def generator_for(self, p: Sequence[int]) -> int:
        for row in self.rows:
            if row.matches(p):
                return row.generator
        raise ConstructionError(f"no rule matches {list(p)}")

    def restricted(self, keep: Sequence[int]) -> "RuleTable":
        """Only the rows with the given indices (the catch-all row is always kept)."""
        last = len(self.rows) - 1
        idx = sorted(set(keep) | {last})
        return RuleTable(self.n, tuple(self.rows[i] for i in idx))


A7_RULES = RuleTable.from_rows(
    7,
    [
        (["6!7!7!7***", "!7!7!76***"], 5),
        (["67*****", "76*****"], 3),
        (["567!1***", "576****"], 5),
        (["2567***", "4576***"], 5),
        (["5671234", "5612347", "5623714", "5637142"], 3),
        (["5623471", "5671423"], 5),
        (["*******"], 7),
    ],
)


def follow_rules(table: RuleTable, start: Sequence[int] | None = None) -> GenSequence:
    """Walk from ``start`` applying the rule table until the walk returns."""
    n = table.n
    start = pc.identity(n) if start is None else tuple(start)
    limit = pc.even_count(n)
    gens = []
    seen = {start}
    p = start
    while True:
        k = table.generator_for(p)
        gens.append(k)
        p = pc.right_tau(p, k)
        if p == start:
            return GenSequence(n, start, gens)
        if p in seen or len(gens) >= limit:
            raise ConstructionError(f"rule walk revisits {list(p)} after {len(gens)} steps")
        seen.add(p)


def base_case_a7() -> GenSequence:
    seq = follow_rules(A7_RULES)
    if len(seq) != pc.even_count(7):
        raise ConstructionError(f"rule table closes after {len(seq)} steps, not 2520")
    if 5 not in seq.gens:
        raise ConstructionError("base cycle never uses tau_5")
    return seq


# ---------------------------------------------------------------------------
# helpers on a Hamiltonian cycle of A_m


def penultimate_table(seq: GenSequence) -> dict[int, int]:
    """For each element ``i``, the first position whose vertex ends in ``i`` and leaves by ``tau_m``."""
    m = seq.n
    codes = pc.walk_codes(seq.start, seq.gens)[:-1]
    last = (codes >> (4 * (m - 1))) & 0xF
    table: dict[int, int] = {}
    hits = np.flatnonzero(seq.gens == m)
    for t in hits.tolist():
        table.setdefault(int(last[t]), t)
        if len(table) == m:
            break
    missing = sorted(set(range(1, m + 1)) - table.keys())
    if missing:
        raise ValueError(f"no vertex ending in {missing} is followed by tau_{m}; not Hamiltonian")
    return table


def first_occurrence(seq: GenSequence, k: int) -> int:
    hits = np.flatnonzero(seq.gens == k)
    if hits.size == 0:
        raise ValueError(f"tau_{k} does not occur in the sequence")
    return int(hits[0])


def rotate_cut(seq: GenSequence, k: int) -> np.ndarray:
    """The cycle's labels starting just after the first ``tau_k``, with that ``tau_k`` left out."""
    p = first_occurrence(seq, k)
    return np.concatenate([seq.gens[p + 1 :], seq.gens[:p]])


# ---------------------------------------------------------------------------
# inductive step


@dataclass
class ClassPath:
    """A copy of the smaller cycle covering one suffix class, cut at position ``cut``."""

    base: pc.Perm
    cut: int
    k: int


class CycleBuilder:
    """Grows a single cycle of A_n inside a :class:`SuccessorCover`.

    ``start()`` performs the six-class step and ``add_triangle()`` each
    later step.  ``paths`` records, per suffix pair, which copy of ``L``
    covers that class.
    """

    def __init__(self, L: GenSequence):
        m = L.n
        n = m + 2
        if m < 7 or m % 2 == 0:
            raise UnsupportedSize(f"inductive step needs a cycle of A_m for odd m >= 7, got m={m}")
        if L.start != pc.identity(m):
            raise ValueError("the smaller cycle must start at the identity")
        if len(L) != pc.even_count(m):
            raise ValueError(f"sequence of length {len(L)} is not Hamiltonian in A_{m}")
        self.n = n
        self.L = L
        walk = pc.decode_many(pc.walk_codes(L.start, L.gens)[:-1], m)
        # append the two fixed coordinates so rows are permutations of 1..n
        fixed = np.broadcast_to(np.array([n - 1, n], dtype=np.int8), (walk.shape[0], 2))
        self.walk = np.hstack([walk, fixed])
        self.cut_at = {k: first_occurrence(L, k) for k in (m, m - 2)}
        self.penultimate = penultimate_table(L)
        self.cover = SuccessorCover.empty(n)
        self.paths: dict[tuple[int, int], ClassPath] = {}
        self._labels = {}
        for k, p in self.cut_at.items():
            labels = L.gens.copy()
            labels[p] = n
            self._labels[k] = labels

    def _row(self, t: int) -> pc.Perm:
        return tuple(self.walk[t % len(self.walk)].tolist())

    def write_path(self, start: pc.Perm, k: int) -> pc.Perm:
        """Cover ``A_n(start[-2], start[-1])`` by ``L`` cut at its first ``tau_k``, starting at ``start``.

        Returns the last vertex of the path; its label is ``tau_n``.
        """
        p = self.cut_at[k]
        base = pc.compose(start, pc.inverse(self._row(p + 1)))
        verts = np.asarray(base, dtype=np.int8)[self.walk - 1]
        ranks = pc.rank_even_many(verts)
        if np.any(self.cover.succ[ranks]):
            raise ConstructionError(f"suffix class {start[-2:]} is already covered")
        self.cover.succ[ranks] = self._labels[k]
        pair = (start[-2], start[-1])
        self.paths[pair] = ClassPath(base, p, k)
        return pc.compose(base, self._row(p))

    def start(self) -> list[tuple[int, int]]:
        """Six classes around the identity, joined by the order-2 relation."""
        n = self.n
        v = pc.identity(n)
        for k in (n - 2, n - 4, n - 4, n - 2, n - 4, n - 4):
            v = self.write_path(pc.right_tau(v, n), k)
        # the last path ends at the identity, whose tau_n edge opened the block
        if v != pc.identity(n):
            raise ConstructionError("first block does not close at the identity")
        return list(self.paths)

    def splice_target(self, a: int, b: int, c: int) -> pc.Perm:
        """The vertex ``[..., a, b, c]`` in class (b, c) that leaves by ``tau_{n-2}``."""
        n = self.n
        path = self.paths[(b, c)]
        i = pc.inverse(path.base)[a - 1]
        if i > n - 2:
            raise ConstructionError(f"element {a} sits in the fixed suffix of class {(b, c)}")
        t = self.penultimate[i]
        return pc.compose(path.base, self._row(t))

    def add_triangle(self, a: int, b: int, c: int) -> pc.Perm:
        """Link classes (a, b) and (c, a) in through a vertex ``[..., a, b, c]``."""
        n = self.n
        target = self.splice_target(a, b, c)
        r = pc.rank_even(target)
        if self.cover.succ[r] != n - 2:
            raise ConstructionError(
                f"splice target {list(target)} leaves by tau_{self.cover.succ[r]}, expected tau_{n - 2}"
            )
        self.cover.succ[r] = n
        end = self.write_path(pc.right_tau(target, n), n - 2)
        end = self.write_path(pc.right_tau(end, n), n - 2)
        if pc.right_tau(end, n) != pc.right_tau(target, n - 2):
            raise ConstructionError(f"splice at {list(target)} does not return to its old successor")
        return target


def splice_plan(n: int) -> list[tuple[Hyperedge, tuple[int, int] | None]]:
    """Hyperedges in linking order, each with the pair it shares with earlier ones."""
    h = build_connected(n, (n - 4, n - 3, n - 2, n - 1, n))
    order = order_hyperedges(h)
    return list(zip(order, shared_vertices(order)))


def inductive_step(L: GenSequence) -> GenSequence:
    """A Hamiltonian cycle of A_{m+2} from one of A_m that uses ``tau_{m-2}``."""
    builder = CycleBuilder(L)
    n = builder.n
    plan = splice_plan(n)
    first = set(builder.start())
    if first != set(plan[0][0]):
        raise ConstructionError(f"first block covers {sorted(first)}, expected {sorted(plan[0][0])}")
    for edge, shared in plan[1:]:
        a, b, c = triangle_of(edge).rotated_to(shared)
        builder.add_triangle(a, b, c)
    if not builder.cover.is_complete():
        raise ConstructionError("some suffix classes were never linked in")
    seq = walk_cover(builder.cover)
    if len(seq) != pc.even_count(n):
        raise ConstructionError(f"cover splits into several cycles (identity's has length {len(seq)})")
    return seq


def check_generate_size(n: int, limits: Limits = LIMITS) -> None:
    if n % 2 == 0:
        raise UnsupportedSize(f"n={n} is even; A_n is only built for odd n")
    if n < 7:
        if n == 5:
            raise UnsupportedSize("A_5 has no directed Hamiltonian cycle (Rankin's criterion)")
        raise UnsupportedSize(f"the construction starts at n=7, got n={n}")
    if n > limits.gen_max_n:
        raise UnsupportedSize(
            f"n={n} is above the configured ceiling {limits.gen_max_n} (set RANKGRAY_MAX_N to override)"
        )


def generate(n: int, limits: Limits = LIMITS) -> GenSequence:
    """Hamiltonian cycle of A_n from the identity, using ``tau_{n-2}`` at least once."""
    check_generate_size(n, limits)
    seq = base_case_a7()
    for m in range(9, n + 1, 2):
        log.info("building A_%d from A_%d", m, m - 2)
        seq = inductive_step(seq)
    return seq
