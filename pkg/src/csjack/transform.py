"""The regularizing constant-term transform.

On the torus |xi_j| = R^j (R > 1) with |z_j| = 1, every factor of the kernel

    prod_{i<j} (1 - xi_i/xi_j)^lam  /  prod_{j,k} (1 - z_j/xi_k)^lam

has an unambiguous power-series expansion with integer exponents, so the
contour integral extracting the constant term in every xi variable is exact
coefficient arithmetic; R never enters the result (it only certifies
convergence, see :func:`csjack.spectrum.pt_conditions`).

Writing g_p(a) for the coefficients of (1 - w)^a and

    h_Q(z) = [t^Q] prod_j (1 - z_j t)^(-lam)

(the lam-deformed complete homogeneous polynomials; at lam = 1 they are the
classical h_Q), the constant term of xi^m times the kernel is

    f_m(z) = sum over matrices (p_ij)_{i<j}, p_ij >= 0, of
             prod_{i<j} g_{p_ij}(lam) * prod_l h_{Q_l(p)}(z),

    Q_l(p) = m_l + sum_{k>l} p_lk - sum_{i<l} p_il,

with terms dropped whenever some Q_l < 0 (no exponent balance).  Every
contribution is homogeneous of total z-degree |m|.

Finiteness of the matrix sum: processing variables from the last one down,
column l of the matrix is constrained by Q_l >= 0 to have column sum at most
m_l plus the (already chosen) row sum to its right, so each column ranges
over a finite set and the enumeration terminates.  Nonzero contributions
moreover force every tail sum m_l + ... + m_N to be non-negative, which is
what makes the assembled eigenfunction sums finite in practice.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from csjack.algebra import (
    RatLike,
    SymPoly,
    XPoly,
    as_frac,
    gen_binomial,
    xp_add_scaled,
    xp_mul,
    xpoly_to_sympoly,
)
from csjack.lattice import IntVec, is_partition
from csjack.singular import AlphaTable
from csjack.spectrum import ConfigurationError


class NormalizationError(ArithmeticError):
    """The assembled polynomial has no leading-monomial coefficient."""


@dataclass(frozen=True)
class TransformConfig:
    """Settings for the constant-term transform.

    ``zdeg`` caps the retained total degree in z (every contribution to
    f_m has degree exactly |m|, so this is an all-or-nothing gate);
    ``depth`` is the truncation weight for the coefficient tables;
    ``contour_radius`` is carried along for convergence reporting only.
    """

    N: int
    lam: Fraction
    zdeg: int
    depth: int
    contour_radius: Optional[Fraction] = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "lam", as_frac(self.lam))
        if self.contour_radius is not None:
            r = as_frac(self.contour_radius)
            if r <= 1:
                raise ValueError("contour radius must exceed 1")
            object.__setattr__(self, "contour_radius", r)


_H_CACHE: Dict[Tuple[int, Fraction, int], XPoly] = {}
_HPROD_CACHE: Dict[Tuple[int, Fraction, Tuple[int, ...]], XPoly] = {}
_F_CACHE: Dict[Tuple[int, Fraction, IntVec], SymPoly] = {}


def h_deformed(N: int, lam: RatLike, Q: int) -> XPoly:
    """h_Q(z) = [t^Q] prod_j (1 - z_j t)^(-lam), exact; cached, read-only."""
    lam = as_frac(lam)
    key = (N, lam, Q)
    cached = _H_CACHE.get(key)
    if cached is not None:
        return cached
    g = gen_binomial(-lam, Q)
    out: XPoly = {}

    def rec(slot: int, rest: int, prefix: Tuple[int, ...], coeff: Fraction) -> None:
        if coeff == 0:
            return
        if slot == N - 1:
            out[prefix + (rest,)] = coeff * g[rest]
            return
        for v in range(rest + 1):
            rec(slot + 1, rest - v, prefix + (v,), coeff * g[v])

    rec(0, Q, (), Fraction(1))
    out = {e: c for e, c in out.items() if c}
    _H_CACHE[key] = out
    return out


def _h_product(N: int, lam: Fraction, qs: Sequence[int]) -> XPoly:
    key = (N, lam, tuple(sorted(qs)))
    cached = _HPROD_CACHE.get(key)
    if cached is not None:
        return cached
    prod: XPoly = {(0,) * N: Fraction(1)}
    for q in key[2]:
        if q:
            prod = xp_mul(prod, h_deformed(N, lam, q))
    _HPROD_CACHE[key] = prod
    return prod


def f_monomial(cfg: TransformConfig, m: Sequence[int]) -> SymPoly:
    """Constant term of xi^m times the kernel: a symmetric polynomial,
    homogeneous of degree |m|; the zero polynomial when no exponent balance
    exists (some tail sum of m is negative) or when |m| exceeds zdeg."""
    m = tuple(m)
    if len(m) != cfg.N:
        raise ValueError(f"expected {cfg.N} entries, got {len(m)}")
    total = sum(m)
    if total < 0 or total > cfg.zdeg:
        return SymPoly(cfg.N, {})
    tail = 0
    for v in reversed(m):
        tail += v
        if tail < 0:
            return SymPoly(cfg.N, {})
    key = (cfg.N, cfg.lam, m)
    cached = _F_CACHE.get(key)
    if cached is not None:
        return cached

    N = cfg.N
    lam = cfg.lam
    gb = gen_binomial(lam, 0)

    def g(p: int) -> Fraction:
        while len(gb) <= p:
            q = len(gb)
            gb.append(gb[-1] * (lam - (q - 1)) / q * -1)
        return gb[p]

    acc: XPoly = {}

    def do_column(col: int, rowsums: List[int], coeff: Fraction, qs: Tuple[int, ...]) -> None:
        if coeff == 0:
            return
        if col == 0:
            q0 = m[0] + rowsums[0]
            if q0 >= 0:
                xp_add_scaled(acc, _h_product(N, lam, (q0,) + qs), coeff)
            return
        budget = m[col] + rowsums[col]
        if budget < 0:
            return

        def choose_rows(row: int, rest: int, c2: Fraction) -> None:
            if c2 == 0:
                return
            if row == col:
                do_column(col - 1, rowsums, c2, (rest,) + qs)
                return
            for p in range(rest + 1):
                rowsums[row] += p
                choose_rows(row + 1, rest - p, c2 * g(p))
                rowsums[row] -= p
        # rest passed down is the unassigned budget, i.e. Q_col at the end
        choose_rows(0, budget, coeff)

    do_column(N - 1, [0] * N, Fraction(1), ())
    result = xpoly_to_sympoly(acc, N)
    _F_CACHE[key] = result
    return result


def assemble_regular(cfg: TransformConfig, table: AlphaTable) -> Tuple[SymPoly, Fraction]:
    """Sum alpha_n(n + d) * f_{n+d} over the coefficient table and normalize
    to leading coefficient 1 on m_n.

    Returns the monic polynomial together with the raw leading coefficient
    (the proportionality constant absorbed by the normalization).
    """
    n = table.n
    if not is_partition(n):
        raise ValueError(f"leading label {n} must be a partition")
    combined: Dict[Tuple[int, ...], Fraction] = {}
    for d, a in table.alpha.items():
        if a == 0:
            continue
        mvec = tuple(x + y for x, y in zip(n, d))
        part = f_monomial(cfg, mvec)
        for kappa, c in part.terms.items():
            v = combined.get(kappa, Fraction(0)) + a * c
            if v:
                combined[kappa] = v
            elif kappa in combined:
                del combined[kappa]
    poly = SymPoly(cfg.N, combined)
    leading = poly.coeff(n)
    if leading == 0:
        raise NormalizationError(
            f"assembled polynomial has zero coefficient on the leading monomial {n}"
        )
    return poly.scale(1 / leading), leading


def schur_integral(cfg: TransformConfig, n: Sequence[int]) -> SymPoly:
    """At lam = 1 the transform needs no coefficient table: the constant term
    of xi^n times the kernel is already the Schur polynomial s_n."""
    if cfg.lam != 1:
        raise ConfigurationError("the direct integral form requires lam = 1")
    return f_monomial(cfg, tuple(n) + (0,) * (cfg.N - len(tuple(n))))
