"""
Exhaustive search for the longest snake through the identity in a Cayley graph of S_n.

Depth-first search over lexicographic ranks with incremental pruning: a
vertex stays *available* while it is unvisited, has no visited Kendall
neighbour, still has a usable in-edge and a usable out-edge back towards the
path.  ``visited + available`` bounds every cycle that extends the current
path.  A cycle can be rotated so that its generator word is the least of its
rotations and then translated to start at the identity, so only words that
are prenecklaces (prefixes of such least rotations) are extended.  Exact mode lowers a target ``T`` from that bound at the root until a
cycle of length ``T`` is found, so the first witness found is optimal.
"""

from __future__ import annotations

import math
import sys
import time
from collections import deque
from dataclasses import dataclass

from . import permcore as pc
from .config import LIMITS
from .covers import GenSequence


class BudgetExhausted(Exception):
    pass


@dataclass
class SearchResult:
    length: int
    witness: GenSequence | None
    exact: bool
    nodes: int = 0


class _Graph:
    def __init__(self, n: int, gens: list[int]):
        self.n = n
        perms = [pc.lex_unrank(r, n) for r in range(math.factorial(n))]
        self.gens = sorted(set(gens))
        self.out = [[(k, pc.lex_rank(pc.right_tau(p, k))) for k in self.gens] for p in perms]
        self.inn: list[list[int]] = [[] for _ in perms]
        for v, edges in enumerate(self.out):
            for _, w in edges:
                self.inn[w].append(v)
        self.kendall = []
        for p in perms:
            nbrs = []
            for i in range(n - 1):
                q = list(p)
                q[i], q[i + 1] = q[i + 1], q[i]
                nbrs.append(pc.lex_rank(q))
            self.kendall.append(nbrs)
        # the group generated by the chosen generators, as lex ranks
        self.reachable = {0}
        queue = deque([0])
        while queue:
            v = queue.popleft()
            for _, w in self.out[v]:
                if w not in self.reachable:
                    self.reachable.add(w)
                    queue.append(w)


class _State:
    """Counters for the availability bound, updated and undone step by step.

    A vertex feeds the ``live_in`` of its out-neighbours while it is open or
    the head of the path, and the ``live_out`` of its in-neighbours while it
    is open or the start.
    """

    def __init__(self, g: _Graph, start: int):
        self.g = g
        self.start = start
        size = len(g.out)
        self.visited = [False] * size
        self.forbid = [0] * size
        self.open = [v in g.reachable for v in range(size)]  # unvisited and not forbidden
        self.live_in = [sum(self.open[u] for u in g.inn[v]) for v in range(size)]
        self.live_out = [sum(self.open[w] for _, w in g.out[v]) for v in range(size)]
        self.alive = [False] * size
        self.avail = 0
        for v in range(size):
            self._refresh(v)

    def _refresh(self, v: int) -> None:
        a = self.open[v] and self.live_in[v] > 0 and self.live_out[v] > 0
        if a != self.alive[v]:
            self.alive[v] = a
            self.avail += 1 if a else -1

    def _source(self, v: int, d: int) -> None:
        for _, w in self.g.out[v]:
            self.live_in[w] += d
            self._refresh(w)

    def _target(self, v: int, d: int) -> None:
        for u in self.g.inn[v]:
            self.live_out[u] += d
            self._refresh(u)

    def _close(self, z: int, d: int) -> None:
        self.open[z] = d > 0
        self._refresh(z)
        self._source(z, d)
        self._target(z, d)

    def visit(self, v: int) -> None:
        """``v`` becomes the head; it keeps feeding its out-neighbours."""
        self.visited[v] = True
        self.open[v] = False
        self._refresh(v)
        if v != self.start:
            self._target(v, -1)
        for z in self.g.kendall[v]:
            self.forbid[z] += 1
            if self.forbid[z] == 1 and self.open[z]:
                self._close(z, -1)

    def unvisit(self, v: int) -> None:
        for z in reversed(self.g.kendall[v]):
            self.forbid[z] -= 1
            if self.forbid[z] == 0 and not self.visited[z] and z in self.g.reachable:
                self._close(z, 1)
        if v != self.start:
            self._target(v, 1)
        self.visited[v] = False
        self.open[v] = True
        self._refresh(v)

    def leave(self, u: int, d: int) -> None:
        """The head ``u`` moves on (``d=-1``) or is restored (``d=1``)."""
        self._source(u, d)


def _check(n: int, gens: list[int]) -> list[int]:
    if n < 2:
        raise ValueError("n must be at least 2")
    if n > LIMITS.exact_search_max_n:
        raise ValueError(f"search is limited to n <= {LIMITS.exact_search_max_n}")
    gens = sorted(set(int(k) for k in gens))
    if not gens or not all(2 <= k <= n for k in gens):
        raise ValueError(f"generators must lie in 2..{n}")
    return gens


def longest_snake_search(
    n: int,
    gens: list[int],
    budget: float | None = None,
    min_length: int | None = None,
) -> SearchResult:
    """Longest snake cycle through the identity using only ``tau_k`` for ``k`` in ``gens``.

    With ``budget`` (seconds) the search may stop early; the result then has
    ``exact=False`` and carries the best cycle found.  With ``min_length`` the
    search only looks for cycles at least that long and returns the first one.
    """
    gens = _check(n, gens)
    g = _Graph(n, gens)
    start = 0
    st = _State(g, start)
    deadline = None if budget is None else time.monotonic() + budget
    ident = pc.identity(n)
    nodes = 0
    best_len = 0
    best_path: list[int] | None = None
    path: list[int] = []

    limit = sys.getrecursionlimit()
    sys.setrecursionlimit(max(limit, 4 * math.factorial(n) + 100))

    def dfs(u: int, depth: int, floor: int, period: int) -> bool:
        # depth = number of visited vertices on the path; the word so far is a
        # prenecklace with the given period
        nonlocal nodes, best_len, best_path
        nodes += 1
        if deadline is not None and nodes & 1023 == 0 and time.monotonic() > deadline:
            raise BudgetExhausted
        size = len(path)
        for k, x in g.out[u]:
            if size:
                ref = path[size - period]
                if k < ref:
                    continue
                nxt = period if k == ref else size + 1
            else:
                nxt = 1
            if x == start and depth >= 2:
                if depth > max(best_len, floor):
                    best_len = depth
                    best_path = path + [k]
                    return True
                continue
            if not st.alive[x]:
                continue
            st.leave(u, -1)
            st.visit(x)
            if depth + 1 + st.avail > max(best_len, floor):
                path.append(k)
                found = dfs(x, depth + 1, floor, nxt)
                path.pop()
            else:
                found = False
            st.unvisit(x)
            st.leave(u, 1)
            if found:
                return True
        return False

    st.visit(start)
    exact = True
    try:
        top = 1 + st.avail
        if min_length is not None:
            dfs(start, 1, min_length - 1, 1)
        else:
            for target in range(top, 1, -1):
                if dfs(start, 1, target - 1, 1):
                    break
    except BudgetExhausted:
        exact = False
    finally:
        sys.setrecursionlimit(limit)
    witness = None if best_path is None else GenSequence(n, ident, best_path)
    return SearchResult(best_len, witness, exact, nodes)


def find_hamiltonian_cycle(n: int, gens: list[int], budget: float | None = None) -> SearchResult:
    """Oracle: a directed Hamiltonian cycle of the generated group, if one exists.

    Odd generators only: the group then lies in A_n, where no two vertices are
    one adjacent swap apart, so a Hamiltonian cycle is automatically a snake.
    """
    gens = _check(n, gens)
    if any(k % 2 == 0 for k in gens):
        raise ValueError("the Hamiltonian oracle needs odd generators")
    size = len(_Graph(n, gens).reachable)
    return longest_snake_search(n, gens, budget=budget, min_length=size)
