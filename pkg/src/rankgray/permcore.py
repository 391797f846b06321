"""
Permutation arithmetic on one-line tuples over ``1..n``.

Composition follows ``(pq)(i) = p(q(i))``, so walking the Cayley graph means
multiplying on the right: the edge labelled ``tau_k`` leaves ``p`` for
``compose(p, make_tau(k, n))``.  Right-multiplying by ``tau_k`` moves the entry
in position ``k`` to the front.

>>> make_tau(7, 9)
(7, 1, 2, 3, 4, 5, 6, 8, 9)
>>> compose(make_tau(9, 9), inverse(make_tau(7, 9)))
(1, 2, 3, 4, 5, 6, 9, 7, 8)

Even permutations are indexed by their position among the even permutations
in lexicographic order.  Lexicographically adjacent pairs ``2j, 2j + 1`` only
differ in their last two entries, so exactly one of each pair is even and the
even rank is ``lex_rank // 2``.

Batched helpers (``*_many``) work on ``(rows, n)`` integer arrays and are what
the large constructions use; the scalar functions are for clarity and tests.
"""

from __future__ import annotations

import math
from collections.abc import Iterable, Iterator, Sequence
from itertools import permutations

import numpy as np

from .config import LIMITS

Perm = tuple[int, ...]

# bits per entry in packed permutation codes; entries 1..15 fit in a nibble
_NIBBLE = 4


def identity(n: int) -> Perm:
    return tuple(range(1, n + 1))


def check_perm(p: Sequence[int]) -> Perm:
    """Return ``p`` as a tuple, raising ValueError unless it is a bijection on 1..n."""
    p = tuple(int(x) for x in p)
    n = len(p)
    if n < 1:
        raise ValueError("empty permutation")
    if n > LIMITS.max_n:
        raise ValueError(f"n={n} exceeds the supported maximum {LIMITS.max_n}")
    if sorted(p) != list(range(1, n + 1)):
        raise ValueError(f"not a permutation of 1..{n}: {p}")
    return p


def make_tau(k: int, n: int) -> Perm:
    """The generator that jumps element ``k`` to position 1."""
    if not 1 <= n <= LIMITS.max_n:
        raise ValueError(f"n={n} out of range 1..{LIMITS.max_n}")
    if not 2 <= k <= n:
        raise ValueError(f"generator index k={k} out of range 2..{n}")
    return (k, *range(1, k), *range(k + 1, n + 1))


def compose(a: Sequence[int], b: Sequence[int]) -> Perm:
    if len(a) != len(b):
        raise ValueError(f"size mismatch: {len(a)} vs {len(b)}")
    return tuple(a[x - 1] for x in b)


def inverse(a: Sequence[int]) -> Perm:
    inv = [0] * len(a)
    for i, x in enumerate(a, 1):
        inv[x - 1] = i
    return tuple(inv)


def right_tau(p: Sequence[int], k: int) -> Perm:
    """``p`` followed by the ``tau_k`` edge, without building the generator."""
    return (p[k - 1], *p[: k - 1], *p[k:])


def right_tau_inv(p: Sequence[int], k: int) -> Perm:
    """``p`` followed by ``tau_k`` traversed backwards: the front entry drops to position ``k``."""
    return (*p[1:k], p[0], *p[k:])


def ratio(l: int, k: int, n: int) -> Perm:
    """``tau_l tau_k^-1``: jumps element ``l`` to position ``k``; its order is ``|k - l| + 1``."""
    if k == l:
        raise ValueError("ratio needs two distinct generators")
    return compose(make_tau(l, n), inverse(make_tau(k, n)))


def inversions(a: Sequence[int]) -> int:
    n = len(a)
    return sum(1 for i in range(n) for j in range(i + 1, n) if a[i] > a[j])


def parity(a: Sequence[int]) -> int:
    """0 for even, 1 for odd, from the cycle type."""
    seen = [False] * len(a)
    transpositions = 0
    for i in range(len(a)):
        if seen[i]:
            continue
        j = i
        length = 0
        while not seen[j]:
            seen[j] = True
            j = a[j] - 1
            length += 1
        transpositions += length - 1
    return transpositions & 1


def is_even(a: Sequence[int]) -> bool:
    return parity(a) == 0


def cycle_type(a: Sequence[int]) -> list[int]:
    seen = [False] * len(a)
    lengths = []
    for i in range(len(a)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = a[j] - 1
            length += 1
        lengths.append(length)
    return sorted(lengths, reverse=True)


def order(a: Sequence[int]) -> int:
    return math.lcm(*cycle_type(a))


def power(a: Sequence[int], t: int) -> Perm:
    result = identity(len(a))
    for _ in range(t):
        result = compose(result, a)
    return result


def kendall_distance(a: Sequence[int], b: Sequence[int]) -> int:
    """Inversion number of ``a^-1 b``: adjacent swaps needed to turn ``a`` into ``b``."""
    if len(a) != len(b):
        raise ValueError(f"size mismatch: {len(a)} vs {len(b)}")
    return inversions(compose(inverse(a), b))


def lex_rank(a: Sequence[int]) -> int:
    n = len(a)
    rank = 0
    for i in range(n):
        smaller = sum(1 for j in range(i + 1, n) if a[j] < a[i])
        rank += smaller * math.factorial(n - 1 - i)
    return rank


def lex_unrank(r: int, n: int) -> Perm:
    if not 0 <= r < math.factorial(n):
        raise ValueError(f"rank {r} out of range for n={n}")
    pool = list(range(1, n + 1))
    out = []
    for i in range(n):
        f = math.factorial(n - 1 - i)
        d, r = divmod(r, f)
        out.append(pool.pop(d))
    return tuple(out)


def even_count(n: int) -> int:
    return math.factorial(n) // 2 if n >= 2 else 1


def rank_even(a: Sequence[int]) -> int:
    if not is_even(a):
        raise ValueError(f"rank_even needs an even permutation, got {tuple(a)}")
    return lex_rank(a) // 2


def unrank_even(r: int, n: int) -> Perm:
    if not 0 <= r < even_count(n):
        raise ValueError(f"even rank {r} out of range for n={n}")
    if n < 2:
        return identity(n)
    p = lex_unrank(2 * r, n)
    if parity(p):
        p = (*p[:-2], p[-1], p[-2])
    return p


def even_perms(n: int) -> list[Perm]:
    """All of A_n in rank order."""
    return [p for p in permutations(range(1, n + 1)) if not parity(p)]


def walk(start: Sequence[int], gens: Iterable[int]) -> Iterator[Perm]:
    """Yield ``start`` and every vertex reached by following ``gens``."""
    p = tuple(start)
    yield p
    for k in gens:
        p = (p[k - 1], *p[: k - 1], *p[k:])
        yield p


def product(gens: Iterable[int], n: int) -> Perm:
    """Composition, in order, of the generators ``tau_k`` for ``k`` in ``gens``."""
    p = identity(n)
    for k in gens:
        p = right_tau(p, k)
    return p


# ---------------------------------------------------------------------------
# batched operations on (rows, n) arrays


_FACTORIALS = np.array([math.factorial(i) for i in range(LIMITS.max_n + 1)], dtype=np.int64)


def _columns(perms: np.ndarray) -> list[np.ndarray]:
    perms = np.asarray(perms)
    return [np.ascontiguousarray(perms[:, i], dtype=np.int8) for i in range(perms.shape[1])]


def lehmer_many(perms: np.ndarray) -> np.ndarray:
    """Lehmer digits: entry ``i`` counts later entries smaller than entry ``i``."""
    cols = _columns(perms)
    n = len(cols)
    rows = cols[0].shape[0] if cols else 0
    digits = np.zeros((rows, n), dtype=np.int8)
    # column-by-column comparisons are much faster than row reductions here
    for i in range(n - 1):
        count = np.zeros(rows, dtype=np.int8)
        for j in range(i + 1, n):
            count += cols[j] < cols[i]
        digits[:, i] = count
    return digits


def _weights(n: int) -> np.ndarray:
    return _FACTORIALS[n - 1 :: -1][:n]


def lex_rank_many(perms: np.ndarray) -> np.ndarray:
    digits = lehmer_many(perms)
    return digits.astype(np.int64) @ _weights(digits.shape[1])


def rank_even_many(perms: np.ndarray) -> np.ndarray:
    """Even ranks of the rows of ``perms`` (rows are assumed even)."""
    return lex_rank_many(perms) // 2


def _factoradic(ranks: np.ndarray, n: int) -> np.ndarray:
    rest = np.array(ranks, dtype=np.int64)
    digits = np.empty((rest.shape[0], n), dtype=np.int8)
    for i, f in enumerate(_weights(n)):
        d = rest // f
        rest -= d * f
        digits[:, i] = d
    return digits


def _from_lehmer(digits: np.ndarray) -> np.ndarray:
    rows, n = digits.shape
    cols = [np.empty(rows, dtype=np.int8) for _ in range(n)]
    # insert from the right: entry i is its digit + 1 among entries i..n-1
    for i in range(n - 1, -1, -1):
        v = digits[:, i] + np.int8(1)
        for j in range(i + 1, n):
            cols[j] += cols[j] >= v
        cols[i][:] = v
    return np.stack(cols, axis=1)


def lex_unrank_many(ranks: np.ndarray, n: int) -> np.ndarray:
    return _from_lehmer(_factoradic(ranks, n))


def unrank_even_many(ranks: np.ndarray, n: int) -> np.ndarray:
    digits = _factoradic(2 * np.asarray(ranks, dtype=np.int64), n)
    if n >= 2:
        # parity is the digit sum; flipping the second-to-last digit swaps the last two entries
        odd = digits.sum(axis=1, dtype=np.int64) & 1
        digits[:, n - 2] ^= odd.astype(np.int8)
    return _from_lehmer(digits)


def parity_many(perms: np.ndarray) -> np.ndarray:
    return (lehmer_many(perms).sum(axis=1) & 1).astype(np.int8)


def right_tau_many(perms: np.ndarray, labels: np.ndarray) -> np.ndarray:
    """Row ``i`` of ``perms`` followed by the edge ``tau_{labels[i]}``."""
    out = np.array(perms, copy=True)
    labels = np.asarray(labels)
    for k in np.unique(labels):
        rows = np.flatnonzero(labels == k)
        block = perms[rows]
        out[rows, 0] = block[:, k - 1]
        out[rows, 1:k] = block[:, : k - 1]
    return out


# ---------------------------------------------------------------------------
# packed codes: entry at position i (1-based) stored in nibble i - 1


def encode(p: Sequence[int]) -> int:
    code = 0
    for i, x in enumerate(p):
        code |= int(x) << (_NIBBLE * i)
    return code


def decode(code: int, n: int) -> Perm:
    return tuple((code >> (_NIBBLE * i)) & 0xF for i in range(n))


def decode_many(codes: np.ndarray, n: int) -> np.ndarray:
    shifts = (_NIBBLE * np.arange(n, dtype=np.int64))[None, :]
    return ((np.asarray(codes, dtype=np.int64)[:, None] >> shifts) & 0xF).astype(np.int8)


def walk_end(start: Sequence[int], gens: Sequence[int]) -> Perm:
    """Last vertex of a walk, without storing the ones before it."""
    n = len(start)
    masks = [(1 << (_NIBBLE * k)) - 1 for k in range(n + 1)]
    shifts = [_NIBBLE * (k - 1) for k in range(n + 1)]
    code = encode(start)
    for k in gens.tolist() if isinstance(gens, np.ndarray) else gens:
        mask = masks[k]
        low = code & mask
        code = (code ^ low) | ((low << _NIBBLE) & mask) | (low >> shifts[k])
    return decode(code, n)


def walk_codes(start: Sequence[int], gens: Sequence[int]) -> np.ndarray:
    """Packed codes of the ``len(gens) + 1`` vertices of a walk.

    This is the one sequential loop that has to touch every step of a long
    cycle, so it works on Python ints with shifts and masks instead of tuples.
    """
    n = len(start)
    if n > LIMITS.max_n:
        raise ValueError(f"n={n} exceeds the supported maximum {LIMITS.max_n}")
    masks = [(1 << (_NIBBLE * k)) - 1 for k in range(n + 1)]
    shifts = [_NIBBLE * (k - 1) for k in range(n + 1)]
    gens = gens.tolist() if isinstance(gens, np.ndarray) else list(gens)
    out = np.empty(len(gens) + 1, dtype=np.int64)
    view = memoryview(out)
    code = encode(start)
    t = 0
    for k in gens:
        view[t] = code
        t += 1
        mask = masks[k]
        low = code & mask
        code = (code ^ low) | ((low << _NIBBLE) & mask) | (low >> shifts[k])
    view[t] = code
    return out
