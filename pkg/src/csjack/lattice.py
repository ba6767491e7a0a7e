"""Integer-vector combinatorics for the eigenfunction index lattice.

Eigenfunctions are labeled by integer vectors n in Z^N.  The operator action
moves labels by the lowering steps E_ij = e_i - e_j (i < j), so every series
in this package lives on a translate of the lowering lattice

    Lambda_N = { sum_{i<j} mu_ij E_ij : mu_ij = 0, 1, 2, ... }.

This module implements the dominance (tail-sum) partial order, enumeration of
the mu coordinate vectors, and the depth-truncated displacement sets that the
recursion sweeps over.

Indices are 0-based throughout: a "pair" is (i, j) with 0 <= i < j < N.

A subtlety for N >= 3: distinct mu coordinate vectors can name the same
lattice point (E_02 = E_01 + E_12), so coefficient tables are keyed by the
displacement vector in Z^N, never by mu coordinates.  The depth of a lattice
point d is the minimal total weight sum(mu) over its representations
(``min_weight``); the number of adjacent steps sum_i mu_{i,i+1} of its unique
adjacent-pair representation (``adjacent_weight``) is additive under steps and
orders the recursion sweep.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, Iterable, List, Sequence, Tuple

IntVec = Tuple[int, ...]
Pair = Tuple[int, int]


class DimensionError(ValueError):
    """Vector length does not match the expected number of variables."""


def pairs(N: int) -> List[Pair]:
    """All pairs (i, j) with 0 <= i < j < N, lexicographically ordered."""
    return [(i, j) for i in range(N) for j in range(i + 1, N)]


def unit_step(N: int, i: int, j: int) -> IntVec:
    """The lowering step E_ij = e_i - e_j."""
    v = [0] * N
    v[i] += 1
    v[j] -= 1
    return tuple(v)


def dominance_leq(m: Sequence[int], n: Sequence[int]) -> bool:
    """Tail-sum partial order: m <= n iff sum(m[i:]) <= sum(n[i:]) for all i."""
    if len(m) != len(n):
        raise DimensionError(f"length mismatch: {len(m)} vs {len(n)}")
    tm = tn = 0
    for a, b in zip(reversed(m), reversed(n)):
        tm += a
        tn += b
        if tm > tn:
            return False
    return True


def is_partition(n: Sequence[int]) -> bool:
    """Weakly decreasing and non-negative."""
    return all(a >= b for a, b in zip(n, n[1:])) and (len(n) == 0 or n[-1] >= 0)


@dataclass(frozen=True)
class MuVector:
    """Coordinates mu_ij >= 0 of a lowering-lattice point sum mu_ij E_ij.

    ``mu`` is aligned with ``pairs(N)``.
    """

    N: int
    mu: Tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.mu) != self.N * (self.N - 1) // 2:
            raise DimensionError(f"expected {self.N * (self.N - 1) // 2} pair slots")
        if any(v < 0 for v in self.mu):
            raise ValueError("mu coordinates must be non-negative")

    @property
    def weight(self) -> int:
        """Total weight sum(mu_ij)."""
        return sum(self.mu)

    def displacement(self) -> IntVec:
        """The lattice point sum mu_ij E_ij as a vector in Z^N."""
        d = [0] * self.N
        for (i, j), v in zip(pairs(self.N), self.mu):
            d[i] += v
            d[j] -= v
        return tuple(d)


def enumerate_mu(N: int, depth: int) -> List[MuVector]:
    """All MuVectors with total weight <= depth, ordered by (weight, mu).

    The count is the multiset number C(depth + P, P) with P = N(N-1)/2 slots.
    """
    if N < 2:
        raise DimensionError("need at least two variables for a pair slot")
    P = N * (N - 1) // 2
    out: List[Tuple[int, ...]] = []

    def rec(slot: int, remaining: int, prefix: Tuple[int, ...]) -> None:
        if slot == P:
            out.append(prefix)
            return
        for v in range(remaining + 1):
            rec(slot + 1, remaining - v, prefix + (v,))

    rec(0, depth, ())
    out.sort(key=lambda t: (sum(t), t))
    return [MuVector(N, t) for t in out]


def shift_reachable(n: Sequence[int], depth: int) -> List[IntVec]:
    """Distinct vectors n + mu_hat over all MuVectors of weight <= depth.

    Every returned vector m satisfies dominance_leq(m, n).
    """
    n = tuple(n)
    seen: Dict[IntVec, None] = {}
    for mv in enumerate_mu(len(n), depth):
        d = mv.displacement()
        m = tuple(a + b for a, b in zip(n, d))
        seen.setdefault(m, None)
    return list(seen)


def crossings(d: Sequence[int]) -> Tuple[int, ...]:
    """Boundary crossing counts c_L = -sum(d[L:]) for L = 1..N-1.

    For d = sum mu_ij E_ij, c_L counts the steps E_ij with i < L <= j,
    independently of the chosen representation.
    """
    out = []
    t = 0
    for a in reversed(d[1:]):
        t += a
        out.append(-t)
    out.reverse()
    return tuple(out)


def in_lowering_lattice(d: Sequence[int]) -> bool:
    """Whether d is a non-negative integer combination of the steps E_ij."""
    return sum(d) == 0 and all(c >= 0 for c in crossings(d))


def min_weight(d: Sequence[int]) -> int:
    """Minimal total weight sum(mu) over representations of d.

    Each step covers a contiguous interval of boundaries, so the minimum is
    the number of unit-height strips under the crossing profile.
    """
    w = 0
    prev = 0
    for c in crossings(d):
        if c > prev:
            w += c - prev
        prev = c
    return w


def adjacent_weight(d: Sequence[int]) -> int:
    """Total weight of the adjacent-pair representation, sum of crossings.

    Additive under steps: adjacent_weight(d + nu*E_ij) grows by nu*(j - i),
    which makes it a valid sweep order for the recursion at every N.
    """
    return sum(crossings(d))


def displacement_set(N: int, depth: int) -> List[IntVec]:
    """Distinct lattice points of min_weight <= depth, sorted for the sweep.

    Sort key is (adjacent_weight, d): sources of every recursion step come
    strictly earlier in this order.
    """
    seen = {mv.displacement() for mv in enumerate_mu(N, depth)}
    return sorted(seen, key=lambda v: (adjacent_weight(v), v))


def predecessor_closure(dset: Iterable[IntVec]) -> List[IntVec]:
    """Close a set of lattice points under d -> d - nu*E_ij within the lattice.

    The recursion at d sums over all lattice predecessors of d, so the working
    set must contain them.  For N <= 3 the min_weight truncation is already
    closed; for N >= 4 it need not be (e.g. E_03 has min_weight 1 but its
    predecessor E_01 + E_23 has min_weight 2).
    """
    work = list(dset)
    out = set(work)
    if not work:
        return []
    N = len(work[0])
    prs = pairs(N)
    while work:
        d = work.pop()
        for (i, j) in prs:
            nu = 1
            while True:
                src = list(d)
                src[i] -= nu
                src[j] += nu
                src_t = tuple(src)
                if not in_lowering_lattice(src_t):
                    break
                if src_t not in out:
                    out.add(src_t)
                    work.append(src_t)
                nu += 1
    return sorted(out, key=lambda v: (adjacent_weight(v), v))


@lru_cache(maxsize=None)
def series_support(N: int, depth: int) -> Tuple[IntVec, ...]:
    """Canonical index set for depth-truncated series: the closed sweep set."""
    return tuple(predecessor_closure(displacement_set(N, depth)))
