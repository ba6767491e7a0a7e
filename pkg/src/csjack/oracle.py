"""Independent reference implementations used to validate the main pipeline.

Jack polynomials are computed here by diagonalizing the gauged Sutherland
operator

    D(lam) = sum_j (z_j d/dz_j)^2
           + lam * sum_{i<j} (z_i + z_j)/(z_i - z_j) * (z_i d/dz_i - z_j d/dz_j)

in the monomial symmetric basis, one degree block at a time, with dense back
substitution; Schur polynomials come from Jacobi-Trudi determinants.  Both
paths share nothing with the series/constant-term pipeline, so exact
agreement is a meaningful check.

The operator is applied as honest polynomial calculus: on a symmetric
polynomial the pair term is evaluated with the finite telescoping identity

    (z_i + z_j)/(z_i - z_j) * (z^a - z^a') =
        z^a + z^a' + 2 * sum_{t=1}^{a_i - a_j - 1} z^(a - t(e_i - e_j))

for a_i > a_j, where a' is a with the (i, j) entries swapped.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Sequence, Tuple

from csjack.algebra import (
    SymPoly,
    XPoly,
    as_frac,
    monomial_orbit,
    xp_add_scaled,
    xp_mul,
    xpoly_to_sympoly,
)
from csjack.lattice import dominance_leq, is_partition
from csjack.singular import DegeneracyError


def partitions_of(total: int, max_parts: int) -> List[Tuple[int, ...]]:
    """All partitions of ``total`` into at most ``max_parts`` parts."""
    out: List[Tuple[int, ...]] = []

    def rec(rest: int, bound: int, prefix: Tuple[int, ...]) -> None:
        if rest == 0:
            out.append(prefix)
            return
        if len(prefix) == max_parts:
            return
        for part in range(min(rest, bound), 0, -1):
            rec(rest - part, part, prefix + (part,))

    rec(total, total, ())
    return out


def partitions_upto(max_total: int, max_parts: int) -> List[Tuple[int, ...]]:
    """All partitions of size 0..max_total into at most ``max_parts`` parts."""
    out: List[Tuple[int, ...]] = []
    for total in range(max_total + 1):
        out.extend(partitions_of(total, max_parts))
    return out


def _pad(kappa: Sequence[int], N: int) -> Tuple[int, ...]:
    return tuple(kappa) + (0,) * (N - len(tuple(kappa)))


def monomial_sym_xpoly(kappa: Sequence[int], N: int) -> XPoly:
    """m_kappa as an explicit exponent-vector polynomial."""
    return {a: Fraction(1) for a in monomial_orbit(kappa, N)}


def sutherland_apply(lam: Fraction, xp: XPoly, N: int) -> XPoly:
    """Apply D(lam) to a symmetric exponent-vector polynomial.

    Requires the input to be symmetric: each monomial's (i, j)-swap must be
    present with the same coefficient, which lets the pair term telescope to
    a finite polynomial.
    """
    out: XPoly = {}
    for a, c in xp.items():
        kin = c * sum(Fraction(e) ** 2 for e in a)
        if kin:
            out[a] = out.get(a, Fraction(0)) + kin
    for a, c in xp.items():
        for i in range(N):
            for j in range(i + 1, N):
                if a[i] <= a[j]:
                    continue
                # representative of the unordered pair {a, swap(a)}
                diff = a[i] - a[j]
                w = lam * c * diff
                swapped = list(a)
                swapped[i], swapped[j] = swapped[j], swapped[i]
                out[a] = out.get(a, Fraction(0)) + w
                key = tuple(swapped)
                out[key] = out.get(key, Fraction(0)) + w
                for t in range(1, diff):
                    mid = list(a)
                    mid[i] -= t
                    mid[j] += t
                    key = tuple(mid)
                    out[key] = out.get(key, Fraction(0)) + 2 * w
    return {k: v for k, v in out.items() if v}


def sutherland_matrix_column(lam: Fraction, kappa: Tuple[int, ...], N: int) -> Dict[Tuple[int, ...], Fraction]:
    """Expansion of D(lam) m_kappa in the monomial basis, keyed by partition."""
    image = sutherland_apply(lam, monomial_sym_xpoly(kappa, N), N)
    return dict(xpoly_to_sympoly(image, N).terms)


def jack_eigenvalue(lam: Fraction, kappa: Sequence[int], N: int) -> Fraction:
    """Diagonal of D(lam) on the m_kappa block: sum_j k_j(k_j + lam(N+1-2j))."""
    kp = _pad(kappa, N)
    return sum(
        Fraction(k) * (k + lam * (N - 1 - 2 * i)) for i, k in enumerate(kp)
    )


def jack_oracle(N: int, lam: "Fraction | int | str", n: Sequence[int]) -> SymPoly:
    """The monic Jack polynomial P_n in N variables at coupling lam.

    Solves the gauged eigenvalue problem in the block of same-degree
    partitions dominated by n, by dense back substitution.  Declines with a
    DegeneracyError when another partition in the block shares the
    eigenvalue.
    """
    lam = as_frac(lam)
    n = _canonical(n, N)
    # Monomial support of a Jack polynomial is the standard-dominance lower
    # set of n, which for equal degree is the tail-sum UPPER set: the
    # operator raises tail sums on polynomials and lowers them on the
    # singular series.
    block = [
        kappa
        for kappa in partitions_of(sum(n), N)
        if dominance_leq(_pad(n, N), _pad(kappa, N))
    ]
    block.sort(key=lambda k: _pad(k, N), reverse=True)  # lex desc refines std dominance
    d_n = jack_eigenvalue(lam, n, N)
    for kappa in block:
        if kappa != n and jack_eigenvalue(lam, kappa, N) == d_n:
            raise DegeneracyError(
                f"eigenvalue degeneracy in degree block: {kappa} vs {n}", label=kappa
            )
    columns = {kappa: sutherland_matrix_column(lam, kappa, N) for kappa in block}
    v: Dict[Tuple[int, ...], Fraction] = {n: Fraction(1)}
    for kappa in block:
        if kappa == n:
            continue
        acc = Fraction(0)
        for src, vs in v.items():
            if src != kappa and vs:
                acc += columns[src].get(kappa, Fraction(0)) * vs
        v[kappa] = acc / (d_n - jack_eigenvalue(lam, kappa, N))
    return SymPoly(N, v)


def _canonical(n: Sequence[int], N: int) -> Tuple[int, ...]:
    t = tuple(n)
    if len(t) > N:
        raise ValueError(f"partition longer than {N} variables")
    if not is_partition(t):
        raise ValueError(f"{t} is not a partition")
    while t and t[-1] == 0:
        t = t[:-1]
    return t


@lru_cache(maxsize=None)
def complete_homogeneous(k: int, N: int) -> Tuple[Tuple[Tuple[int, ...], int], ...]:
    """h_k in N variables: every monomial of total degree k with coefficient 1."""
    if k < 0:
        return ()
    out: List[Tuple[int, ...]] = []

    def rec(slot: int, rest: int, prefix: Tuple[int, ...]) -> None:
        if slot == N - 1:
            out.append(prefix + (rest,))
            return
        for v in range(rest + 1):
            rec(slot + 1, rest - v, prefix + (v,))

    rec(0, k, ())
    return tuple((e, 1) for e in out)


def schur_oracle(N: int, n: Sequence[int]) -> SymPoly:
    """The Schur polynomial s_n in N variables via the Jacobi-Trudi
    determinant det(h_{n_i - i + j})_{i,j=1..N}, expanded exactly."""
    from itertools import permutations as _perms

    n = _canonical(n, N)
    kp = _pad(n, N)
    acc: XPoly = {}
    for sigma in _perms(range(N)):
        sign = _perm_sign(sigma)
        indices = [kp[i] - i + sigma[i] for i in range(N)]
        if any(idx < 0 for idx in indices):
            continue
        prod: XPoly = {(0,) * N: Fraction(1)}
        for idx in indices:
            h = {e: Fraction(c) for e, c in complete_homogeneous(idx, N)}
            prod = xp_mul(prod, h)
        xp_add_scaled(acc, prod, Fraction(sign))
    return xpoly_to_sympoly(acc, N)


def _perm_sign(sigma: Sequence[int]) -> int:
    sign = 1
    seen = [False] * len(sigma)
    for start in range(len(sigma)):
        if seen[start]:
            continue
        length = 0
        k = start
        while not seen[k]:
            seen[k] = True
            k = sigma[k]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign
