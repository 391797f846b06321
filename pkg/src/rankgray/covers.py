"""
Cycles and cycle covers of the Cayley graph of A_n, and the linkages that merge them.

A cycle is stored either as a :class:`GenSequence` (start vertex plus the
generator labels in order) or, together with the rest of a cover, as a
:class:`SuccessorCover` that records the outgoing label at every vertex.
Covers are dense ``uint8`` arrays indexed by even rank; label 0 marks a vertex
that has not been assigned yet.

A linkage works along an alternating cycle: vertices ``t_0, t_1, ...`` with
``t_{i+1} = t_i tau_l tau_k^-1``.  Every ``t_i`` currently leaves by ``tau_k``;
switching all of them to ``tau_l`` keeps a valid cover and, when the replaced
edges sat on distinct cycles, merges those cycles into one.
"""

from __future__ import annotations

from collections import Counter
from collections.abc import Iterator, Sequence
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from . import permcore as pc
from .permcore import Perm

# rows per batch when ranking a whole cover
CHUNK = 1 << 20


class LinkageError(ValueError):
    """A linkage precondition failed at ``vertex``; nothing was modified."""

    def __init__(self, vertex: Perm, expected: int, found: int):
        self.vertex = vertex
        self.expected = expected
        self.found = found
        super().__init__(
            f"vertex {list(vertex)} leaves by tau_{found}, linkage needs tau_{expected}"
        )


@dataclass(frozen=True, eq=False)
class GenSequence:
    """A walk given by its start vertex and generator labels.

    It is a cycle when the walk ends back at ``start``; ``gens`` is kept as a
    read-only ``uint8`` array because Hamiltonian cycles get long.
    """

    n: int
    start: Perm
    gens: np.ndarray = field(repr=False)

    def __post_init__(self):
        start = pc.check_perm(self.start)
        if len(start) != self.n:
            raise ValueError(f"start has size {len(start)}, expected n={self.n}")
        gens = np.ascontiguousarray(self.gens, dtype=np.int64)
        if gens.ndim != 1:
            raise ValueError("generator list must be one-dimensional")
        if gens.size and (gens.min() < 2 or gens.max() > self.n):
            raise ValueError(f"generator indices must lie in 2..{self.n}")
        gens = gens.astype(np.uint8)
        gens.flags.writeable = False
        object.__setattr__(self, "start", start)
        object.__setattr__(self, "gens", gens)

    def __len__(self) -> int:
        return int(self.gens.size)

    def __eq__(self, other) -> bool:
        if not isinstance(other, GenSequence):
            return NotImplemented
        return (
            self.n == other.n
            and self.start == other.start
            and np.array_equal(self.gens, other.gens)
        )

    def vertices(self) -> Iterator[Perm]:
        return pc.walk(self.start, self.gens.tolist())

    def end(self) -> Perm:
        return pc.walk_end(self.start, self.gens)

    def is_closed(self) -> bool:
        return len(self) > 0 and self.end() == self.start


@dataclass(frozen=True)
class AlternatingSite:
    """Alternating cycle through ``anchor`` whose tails leave by ``tau_k`` or ``tau_l``."""

    anchor: Perm
    k: int
    l: int

    @property
    def q(self) -> int:
        return abs(self.k - self.l) + 1


@dataclass(eq=False)
class SuccessorCover:
    n: int
    succ: np.ndarray = field(repr=False)

    def __post_init__(self):
        size = pc.even_count(self.n)
        self.succ = np.asarray(self.succ, dtype=np.uint8)
        if self.succ.shape != (size,):
            raise ValueError(f"cover of A_{self.n} needs {size} labels, got {self.succ.shape}")

    @classmethod
    def empty(cls, n: int) -> "SuccessorCover":
        return cls(n, np.zeros(pc.even_count(n), dtype=np.uint8))

    def copy(self) -> "SuccessorCover":
        return SuccessorCover(self.n, self.succ.copy())

    def __len__(self) -> int:
        return int(self.succ.size)

    def label(self, p: Sequence[int]) -> int:
        return int(self.succ[pc.rank_even(p)])

    def is_complete(self) -> bool:
        return bool(np.all(self.succ != 0))

    def successor_ranks(self) -> np.ndarray:
        """Even rank of the successor of every vertex."""
        if not self.is_complete():
            raise ValueError("cover has unassigned vertices")
        labels = self.succ
        if np.any((labels & 1) == 0) or labels.max() > self.n:
            raise ValueError("cover uses a generator outside A_n")
        out = np.empty(len(self), dtype=np.int64)
        for lo in range(0, len(self), CHUNK):
            hi = min(lo + CHUNK, len(self))
            perms = _even_block(self.n, lo, hi)
            out[lo:hi] = pc.rank_even_many(pc.right_tau_many(perms, labels[lo:hi]))
        return out

    def is_valid(self) -> bool:
        """Every vertex has one outgoing edge inside A_n and exactly one incoming edge."""
        try:
            nxt = self.successor_ranks()
        except ValueError:
            return False
        return bool(np.all(np.bincount(nxt, minlength=len(self)) == 1))


def _even_block(n: int, lo: int, hi: int) -> np.ndarray:
    if pc.even_count(n) <= CHUNK:
        return _all_even(n)[lo:hi]
    return pc.unrank_even_many(np.arange(lo, hi), n)


@lru_cache(maxsize=8)
def _all_even(n: int) -> np.ndarray:
    perms = pc.unrank_even_many(np.arange(pc.even_count(n)), n)
    perms.flags.writeable = False
    return perms


def single_generator_cover(n: int, k: int) -> SuccessorCover:
    """The cover that leaves every vertex by ``tau_k``."""
    if k % 2 == 0:
        raise ValueError(f"tau_{k} is odd and leaves A_n")
    if not 3 <= k <= n:
        raise ValueError(f"generator index {k} out of range 3..{n}")
    return SuccessorCover(n, np.full(pc.even_count(n), k, dtype=np.uint8))


def _cycle_walks(nxt: np.ndarray) -> Iterator[tuple[int, int]]:
    """(smallest rank, length) of each cycle of a successor-rank array, by smallest rank."""
    seen = bytearray(len(nxt))
    view = memoryview(np.ascontiguousarray(nxt, dtype=np.int64))
    for r in range(len(nxt)):
        if seen[r]:
            continue
        length = 0
        x = r
        while not seen[x]:
            seen[x] = 1
            length += 1
            x = view[x]
        if x != r:
            raise ValueError(f"successor map is not a permutation (rank {x} entered twice)")
        yield r, length


def cycle_index(c: SuccessorCover) -> np.ndarray:
    """For every even rank, the number of its cycle in :func:`cover_to_sequences` order."""
    nxt = memoryview(c.successor_ranks())
    out = np.full(len(c), -1, dtype=np.int64)
    view = memoryview(out)
    cid = 0
    for r in range(len(c)):
        if view[r] >= 0:
            continue
        x = r
        while view[x] < 0:
            view[x] = cid
            x = nxt[x]
        cid += 1
    return out


def count_cycles(c: SuccessorCover) -> Counter:
    """Multiset of cycle lengths, as ``Counter({length: how_many})``."""
    return Counter(length for _, length in _cycle_walks(c.successor_ranks()))


def number_of_cycles(c: SuccessorCover) -> int:
    return sum(count_cycles(c).values())


def _follow(c: SuccessorCover, nxt: np.ndarray, r: int, length: int) -> np.ndarray:
    order = np.empty(length, dtype=np.int64)
    view = memoryview(order)
    nview = memoryview(np.ascontiguousarray(nxt, dtype=np.int64))
    for t in range(length):
        view[t] = r
        r = nview[r]
    return c.succ[order]


def cover_to_sequences(c: SuccessorCover) -> list[GenSequence]:
    """One closed sequence per cycle, each starting at its smallest-rank vertex."""
    nxt = c.successor_ranks()
    return [
        GenSequence(c.n, pc.unrank_even(r, c.n), _follow(c, nxt, r, length))
        for r, length in _cycle_walks(nxt)
    ]


def walk_cover(c: SuccessorCover, start: Sequence[int] | None = None) -> GenSequence:
    """The cycle of ``c`` through ``start`` (identity by default)."""
    start = pc.identity(c.n) if start is None else pc.check_perm(start)
    r0 = pc.rank_even(start)
    nxt = c.successor_ranks()
    view = memoryview(nxt)
    length, r = 1, view[r0]
    while r != r0:
        r = view[r]
        length += 1
    return GenSequence(c.n, start, _follow(c, nxt, r0, length))


def sequences_to_cover(seqs: Sequence[GenSequence], n: int) -> SuccessorCover:
    """Inverse of :func:`cover_to_sequences` for sequences that tile A_n."""
    cover = SuccessorCover.empty(n)
    for s in seqs:
        codes = pc.walk_codes(s.start, s.gens)[:-1]
        ranks = pc.rank_even_many(pc.decode_many(codes, n))
        if np.any(cover.succ[ranks] != 0):
            raise ValueError("sequences overlap")
        cover.succ[ranks] = s.gens
    if not cover.is_complete():
        raise ValueError("sequences do not cover A_n")
    return cover


def alternating_tails(anchor: Sequence[int], ks: Sequence[int], l: int) -> list[Perm]:
    """Tails ``t_0 = anchor, t_{i+1} = t_i tau_l tau_{ks[i]}^-1`` around an alternating cycle.

    ``t_{i+1}`` is the tail whose ``tau_{ks[i]}`` edge shares its head with the
    ``tau_l`` edge out of ``t_i``.  The walk must close up at ``anchor``.
    """
    tails = [tuple(anchor)]
    for k in ks:
        tails.append(pc.right_tau_inv(pc.right_tau(tails[-1], l), k))
    if tails[-1] != tails[0]:
        raise ValueError("labels do not describe a closed alternating cycle")
    return tails[:-1]


def _relabel(
    c: SuccessorCover, tails: list[Perm], old: Sequence[int], new: Sequence[int]
) -> SuccessorCover:
    ranks = []
    for t, want in zip(tails, old):
        if not pc.is_even(t):
            raise ValueError(f"anchor must be even, reached {list(t)}")
        r = pc.rank_even(t)
        if c.succ[r] != want:
            raise LinkageError(t, want, int(c.succ[r]))
        ranks.append(r)
    out = c.copy()
    out.succ[ranks] = new
    return out


def three_fold_link(c: SuccessorCover, site: AlternatingSite) -> SuccessorCover:
    """Replace the ``q`` ``tau_k`` edges of the alternating cycle at ``site`` by ``tau_l`` edges."""
    n, k, l = c.n, site.k, site.l
    for g in (k, l):
        if g % 2 == 0 or not 3 <= g <= n:
            raise ValueError(f"tau_{g} is not a generator of A_{n}")
    if k == l:
        raise ValueError("linkage needs two distinct generators")
    tails = alternating_tails(site.anchor, [k] * site.q, l)
    return _relabel(c, tails, [k] * site.q, [l] * site.q)


def six_fold_labels(n: int) -> list[int]:
    """Labels leaving the tails ``t_1, ..., t_5, t_0`` of the order-2 relation cycle."""
    return [n - 2, n - 4, n - 4, n - 2, n - 4, n - 4]


def six_fold_tails(anchor: Sequence[int]) -> list[Perm]:
    n = len(anchor)
    return alternating_tails(anchor, six_fold_labels(n), n)


def six_fold_vertices(anchor: Sequence[int]) -> list[Perm]:
    """The 13 permutations around the 12-cycle, starting and ending at ``anchor``."""
    n = len(anchor)
    rows = [tuple(anchor)]
    for k in six_fold_labels(n):
        rows.append(pc.right_tau(rows[-1], n))
        rows.append(pc.right_tau_inv(rows[-1], k))
    return rows


def six_fold_link(
    c: SuccessorCover, anchor: Sequence[int], *, reverse: bool = False
) -> SuccessorCover:
    """Swap the two ``tau_{n-2}`` and four ``tau_{n-4}`` tails of the 12-cycle to ``tau_n``.

    With ``reverse=True`` the six ``tau_n`` edges are swapped back to the mixed
    pattern instead.  Either way the number of cycles changes parity.
    """
    n = c.n
    if n < 7 or n % 2 == 0:
        raise ValueError(f"six-fold linkage needs odd n >= 7, got {n}")
    tails = six_fold_tails(anchor)
    # tail t_{i+1} carries label ks[i]; rotate so labels line up with t_0..t_5
    ks = six_fold_labels(n)
    pattern = ks[-1:] + ks[:-1]
    if reverse:
        return _relabel(c, tails, [n] * 6, pattern)
    return _relabel(c, tails, pattern, [n] * 6)


def cover_from_rule(n: int, rule) -> SuccessorCover:
    """Build a cover by asking ``rule(perm)`` for the label at every vertex of A_n."""
    labels = [rule(tuple(p)) for p in _all_even(n).tolist()]
    return SuccessorCover(n, np.array(labels, dtype=np.uint8))
