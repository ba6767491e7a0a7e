"""Exact-arithmetic containers: generalized binomial series, truncated
multivariate Laurent series over the lowering lattice, and symmetric
polynomials in the monomial basis.

Coefficients are ``fractions.Fraction`` throughout.  The coupling lambda is a
fixed rational per run, never a symbolic indeterminate, so all arithmetic
stays in the rational field.

Non-integer exponent shifts s_j are carried as metadata on a Laurent series
and never expanded: every operator action and series product changes
exponents by integers only, so only the integer displacement part
participates in arithmetic.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations
from typing import Dict, List, Mapping, Sequence, Tuple, Union

from csjack.lattice import IntVec, series_support

Rat = Fraction
RatLike = Union[Fraction, int, str]

XPoly = Dict[Tuple[int, ...], Fraction]


class AlignmentError(ValueError):
    """Series with different base, shift or dimension cannot be combined."""


class InvariantViolation(AssertionError):
    """An internal consistency check failed (e.g. non-symmetric raw output)."""


def as_frac(x: RatLike) -> Fraction:
    """Coerce ints, Fractions and 'p/q' strings to Fraction."""
    if isinstance(x, Fraction):
        return x
    return Fraction(x)


def gen_binomial(lam: RatLike, order: int) -> List[Fraction]:
    """Coefficients c_0..c_order of (1 - w)^lam = sum_p c_p w^p.

    c_p = (-1)^p * lam*(lam-1)*...*(lam-p+1) / p!, exact.  For integer
    lam >= 0 the sequence terminates: c_p = 0 for p > lam.
    """
    if order < 0:
        raise ValueError("order must be >= 0")
    lam = as_frac(lam)
    out = [Fraction(1)]
    for p in range(1, order + 1):
        out.append(out[-1] * (lam - (p - 1)) / p * -1)
    return out


def _clean_terms(terms: Mapping[IntVec, RatLike]) -> Dict[IntVec, Fraction]:
    out: Dict[IntVec, Fraction] = {}
    for k, v in terms.items():
        fv = as_frac(v)
        if fv != 0:
            out[tuple(k)] = fv
    return out


@dataclass
class LaurentSeries:
    """Truncated formal series sum_d a_d * z^(base + d + shift).

    ``terms`` maps lattice displacements d (vectors in Z^N summing to zero,
    non-positive tail sums) to rational coefficients.  ``depth`` is the
    truncation weight; stored displacements lie in the closed support set
    ``series_support(N, depth)``.
    """

    base: IntVec
    shift: Tuple[Fraction, ...]
    terms: Dict[IntVec, Fraction]
    depth: int

    def __post_init__(self) -> None:
        self.base = tuple(self.base)
        self.shift = tuple(as_frac(s) for s in self.shift)
        if len(self.base) != len(self.shift):
            raise AlignmentError("base and shift lengths differ")
        self.terms = _clean_terms(self.terms)
        support = set(series_support(self.N, self.depth))
        for d in self.terms:
            if len(d) != self.N:
                raise AlignmentError("displacement length differs from base")
            if d not in support:
                raise ValueError(f"displacement {d} outside depth-{self.depth} support")

    @property
    def N(self) -> int:
        return len(self.base)

    @classmethod
    def monomial(
        cls,
        base: Sequence[int],
        shift: Sequence[RatLike],
        depth: int,
        coeff: RatLike = 1,
    ) -> "LaurentSeries":
        """The single monomial z^(base + shift), leading coefficient ``coeff``."""
        zero = tuple([0] * len(tuple(base)))
        return cls(tuple(base), tuple(as_frac(s) for s in shift), {zero: as_frac(coeff)}, depth)

    def coeff(self, d: Sequence[int]) -> Fraction:
        return self.terms.get(tuple(d), Fraction(0))

    def leading(self) -> Fraction:
        return self.coeff((0,) * self.N)

    def is_zero(self) -> bool:
        return not self.terms


def _check_aligned(a: LaurentSeries, b: LaurentSeries) -> None:
    if a.base != b.base or a.shift != b.shift:
        raise AlignmentError("series have different base or shift")


def series_scale_add(a: LaurentSeries, c: RatLike, b: LaurentSeries) -> LaurentSeries:
    """Termwise a + c*b; result truncated to min(a.depth, b.depth)."""
    _check_aligned(a, b)
    c = as_frac(c)
    depth = min(a.depth, b.depth)
    support = set(series_support(a.N, depth))
    out: Dict[IntVec, Fraction] = {d: v for d, v in a.terms.items() if d in support}
    for d, v in b.terms.items():
        if d in support:
            out[d] = out.get(d, Fraction(0)) + c * v
    return LaurentSeries(a.base, a.shift, out, depth)


def _canonical_partition(key: Sequence[int]) -> Tuple[int, ...]:
    t = tuple(key)
    while t and t[-1] == 0:
        t = t[:-1]
    return t


@dataclass
class SymPoly:
    """Symmetric polynomial as a map partition -> coefficient.

    Each key kappa stands for the monomial symmetric function m_kappa(z),
    the sum of z^a over all distinct permutations a of kappa padded to
    ``nvars`` entries.  Keys are stored with trailing zeros stripped.
    """

    nvars: int
    terms: Dict[Tuple[int, ...], Fraction]

    def __post_init__(self) -> None:
        clean: Dict[Tuple[int, ...], Fraction] = {}
        for k, v in self.terms.items():
            key = _canonical_partition(k)
            if len(key) > self.nvars:
                raise ValueError(f"partition {key} longer than nvars={self.nvars}")
            if any(a < b for a, b in zip(key, key[1:])) or (key and key[-1] < 0):
                raise ValueError(f"key {key} is not a partition")
            fv = as_frac(v)
            if fv != 0:
                clean[key] = fv
        self.terms = clean

    def coeff(self, kappa: Sequence[int]) -> Fraction:
        return self.terms.get(_canonical_partition(kappa), Fraction(0))

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        return max((sum(k) for k in self.terms), default=0)

    def scale(self, c: RatLike) -> "SymPoly":
        c = as_frac(c)
        return SymPoly(self.nvars, {k: c * v for k, v in self.terms.items()})

    def __add__(self, other: "SymPoly") -> "SymPoly":
        if self.nvars != other.nvars:
            raise AlignmentError("SymPoly nvars differ")
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, Fraction(0)) + v
        return SymPoly(self.nvars, out)


def monomial_orbit(kappa: Sequence[int], nvars: int) -> List[Tuple[int, ...]]:
    """Distinct permutations of kappa padded with zeros to nvars entries."""
    padded = tuple(kappa) + (0,) * (nvars - len(tuple(kappa)))
    return sorted(set(permutations(padded)))


def sympoly_to_xpoly(p: SymPoly) -> XPoly:
    """Expand into an explicit exponent-vector polynomial."""
    out: XPoly = {}
    for kappa, c in p.terms.items():
        for a in monomial_orbit(kappa, p.nvars):
            out[a] = c
    return out


def xpoly_to_sympoly(xp: XPoly, nvars: int, check_symmetric: bool = True) -> SymPoly:
    """Collect an exponent-vector polynomial into the monomial basis.

    With ``check_symmetric`` the input must carry every orbit completely and
    with a single coefficient; otherwise InvariantViolation is raised.
    """
    terms: Dict[Tuple[int, ...], Fraction] = {}
    for a, c in xp.items():
        if c == 0:
            continue
        if len(a) != nvars or any(e < 0 for e in a):
            raise ValueError(f"bad exponent vector {a}")
        key = tuple(sorted(a, reverse=True))
        if key in terms:
            continue
        terms[key] = c
    if check_symmetric:
        for key, c in terms.items():
            for a in monomial_orbit(key, nvars):
                if xp.get(a, Fraction(0)) != c:
                    raise InvariantViolation(
                        f"raw coefficients are not permutation invariant at orbit {key}"
                    )
    return SymPoly(nvars, terms)


def xp_mul(a: XPoly, b: XPoly, max_degree: int | None = None) -> XPoly:
    """Product of exponent-vector polynomials, optionally degree-truncated."""
    out: XPoly = {}
    for ea, ca in a.items():
        da = sum(ea)
        for eb, cb in b.items():
            if max_degree is not None and da + sum(eb) > max_degree:
                continue
            key = tuple(x + y for x, y in zip(ea, eb))
            v = out.get(key, Fraction(0)) + ca * cb
            if v:
                out[key] = v
            elif key in out:
                del out[key]
    return out


def xp_add_scaled(acc: XPoly, other: XPoly, c: Fraction) -> None:
    """In-place acc += c * other."""
    if c == 0:
        return
    for e, v in other.items():
        w = acc.get(e, Fraction(0)) + c * v
        if w:
            acc[e] = w
        elif e in acc:
            del acc[e]


def sympoly_eval(p: SymPoly, z: Sequence[complex], precision: int = 256):
    """Evaluate at a point with at least ``precision`` bits (mpmath complex)."""
    from mpmath import mp, mpc

    if len(z) != p.nvars:
        raise AlignmentError(f"expected {p.nvars} coordinates, got {len(z)}")
    with mp.workprec(precision):
        zs = [mpc(w) for w in z]
        total = mpc(0)
        for kappa, c in p.terms.items():
            orbit_sum = mpc(0)
            for a in monomial_orbit(kappa, p.nvars):
                term = mpc(1)
                for w, e in zip(zs, a):
                    if e:
                        term *= w ** e
                orbit_sum += term
            total += mpc(c.numerator) / c.denominator * orbit_sum
        return total


def sympoly_to_json(p: SymPoly) -> dict:
    """Canonical JSON form with decimal-string big integers; bit-exact."""
    terms = [
        {"partition": list(k), "num": str(v.numerator), "den": str(v.denominator)}
        for k, v in sorted(p.terms.items())
    ]
    return {"nvars": p.nvars, "terms": terms}


def sympoly_from_json(obj: Union[dict, str]) -> SymPoly:
    """Inverse of :func:`sympoly_to_json`."""
    if isinstance(obj, str):
        obj = json.loads(obj)
    terms = {
        tuple(t["partition"]): Fraction(int(t["num"]), int(t["den"]))
        for t in obj["terms"]
    }
    return SymPoly(int(obj["nvars"]), terms)
