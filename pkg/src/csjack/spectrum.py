"""Closed-form spectral data: eigenvalues, gaps, groundstate energies,
shift vectors, and the convergence / square-integrability conditions.

All quantities are exact rationals.  The contour radius R (the base of the
torus |z_j| = R^j on which the singular series converge) is itself stored as
a rational and never exponentiated: every condition is evaluated in terms of
integer powers of R.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Mapping, Optional, Sequence, Tuple

from csjack.algebra import RatLike, as_frac
from csjack.lattice import DimensionError, displacement_set, pairs

Pair = Tuple[int, int]


class ConfigurationError(ValueError):
    """A model parameter required by the requested operation is missing."""


@dataclass(frozen=True)
class ModelParams:
    """Parameters of the generalized Calogero-Sutherland operator
    -sum_j (1/M_j) d^2/dx_j^2 + sum_{i<j} gamma_ij / (4 sin^2((x_i-x_j)/2)).

    ``shifts`` are the exponent offsets s_j of the series monomials
    z^(n + s).  ``lamjk`` holds the per-pair exponents lambda_ij of the
    generalized gauge factor (first-order-term models); None otherwise.
    ``contour_radius`` is the default R > 1 used by convergence checks.

    Masses must be nonzero; positivity is only required on the paths that
    need it (groundstate factorization) and is checked there.
    """

    N: int
    masses: Tuple[Fraction, ...]
    lam: Fraction
    gamma: Mapping[Pair, Fraction]
    shifts: Tuple[Fraction, ...]
    lamjk: Optional[Mapping[Pair, Fraction]] = None
    contour_radius: Optional[Fraction] = None

    def __post_init__(self) -> None:
        if self.N < 1:
            raise DimensionError("N must be >= 1")
        if len(self.masses) != self.N or len(self.shifts) != self.N:
            raise DimensionError("masses and shifts must have length N")
        if any(m == 0 for m in self.masses):
            raise ConfigurationError("masses must be nonzero")
        want = set(pairs(self.N))
        if set(self.gamma) != want:
            raise ConfigurationError("gamma must cover exactly the pairs i < j")
        if self.lamjk is not None and set(self.lamjk) != want:
            raise ConfigurationError("lamjk must cover exactly the pairs i < j")

    def require_lamjk(self) -> Mapping[Pair, Fraction]:
        if self.lamjk is None:
            raise ConfigurationError("model has no per-pair exponents lambda_ij")
        return self.lamjk


def cs_shifts(N: int, lam: RatLike) -> Tuple[Fraction, ...]:
    """The shifts s_j = (N + 1 - 2j) * lam / 2 (j = 1..N) that line the
    singular spectrum up with the regular one.  They sum to zero."""
    lam = as_frac(lam)
    return tuple(Fraction(N - 1 - 2 * i) * lam / 2 for i in range(N))


def cs_params(
    N: int,
    lam: RatLike,
    shifts: Optional[Sequence[RatLike]] = None,
    contour_radius: Optional[RatLike] = None,
) -> ModelParams:
    """Standard Calogero-Sutherland mode: unit masses, coupling
    gamma = 2*lam*(lam - 1) on every pair, shifts s_j = (N+1-2j)*lam/2."""
    lam = as_frac(lam)
    gamma = {p: 2 * lam * (lam - 1) for p in pairs(N)}
    sh = cs_shifts(N, lam) if shifts is None else tuple(as_frac(s) for s in shifts)
    r = None if contour_radius is None else as_frac(contour_radius)
    return ModelParams(N, (Fraction(1),) * N, lam, gamma, sh, None, r)


def general_params(
    masses: Sequence[RatLike],
    lam: RatLike,
    gamma: Mapping[Pair, RatLike],
    shifts: Sequence[RatLike],
    lamjk: Optional[Mapping[Pair, RatLike]] = None,
    contour_radius: Optional[RatLike] = None,
) -> ModelParams:
    """Fully general parameter bundle with rational coercion."""
    masses = tuple(as_frac(m) for m in masses)
    g = {p: as_frac(v) for p, v in gamma.items()}
    lj = None if lamjk is None else {p: as_frac(v) for p, v in lamjk.items()}
    r = None if contour_radius is None else as_frac(contour_radius)
    return ModelParams(len(masses), masses, as_frac(lam), g, tuple(as_frac(s) for s in shifts), lj, r)


def hermitean_couplings(masses: Sequence[RatLike], lam: RatLike) -> Dict[Pair, Fraction]:
    """gamma_ij = (M_i + M_j) * lam * (M_i*M_j*lam - 1): the couplings for
    which prod sin((x_j-x_i)/2)^(lam*M_i*M_j) is an exact groundstate."""
    masses = tuple(as_frac(m) for m in masses)
    lam = as_frac(lam)
    return {
        (i, j): (masses[i] + masses[j]) * lam * (masses[i] * masses[j] * lam - 1)
        for (i, j) in pairs(len(masses))
    }


def eigenvalue(params: ModelParams, n: Sequence[int]) -> Fraction:
    """E_n = sum_j (n_j + s_j)^2 / M_j, exact."""
    if len(n) != params.N:
        raise DimensionError("label length differs from N")
    return sum(
        (nj + sj) ** 2 / mj for nj, sj, mj in zip(n, params.shifts, params.masses)
    )


def gap_b(params: ModelParams, n: Sequence[int], m: Sequence[int]) -> Fraction:
    """The gap b_n(m) = E_m - E_n = sum_j (m_j-n_j)(m_j+n_j+2 s_j)/M_j."""
    if len(n) != params.N or len(m) != params.N:
        raise DimensionError("label length differs from N")
    return sum(
        (mj - nj) * (mj + nj + 2 * sj) / Mj
        for mj, nj, sj, Mj in zip(m, n, params.shifts, params.masses)
    )


def gap_certificate(params: ModelParams, n: Sequence[int], depth: int) -> Fraction:
    """Minimum |b_n(n + d)| over nonzero lattice points d of depth <= depth.

    Returns exact 0 as soon as a degeneracy b = 0 is found, which signals
    that the triangular construction does not apply at this label.
    """
    if depth < 1:
        raise ValueError("depth must be >= 1")
    n = tuple(n)
    best: Optional[Fraction] = None
    for d in displacement_set(params.N, depth):
        if all(v == 0 for v in d):
            continue
        m = tuple(a + b for a, b in zip(n, d))
        b = abs(gap_b(params, n, m))
        if b == 0:
            return Fraction(0)
        if best is None or b < best:
            best = b
    if best is None:
        raise ValueError("no nonzero lattice point at this depth")
    return best


def groundstate_energy(params: ModelParams) -> Fraction:
    """(lam^2 / 12) * ((sum M_j)^3 - sum M_j^3) for positive masses."""
    if any(m <= 0 for m in params.masses):
        raise ConfigurationError("groundstate energy requires positive masses")
    s = sum(params.masses)
    return params.lam ** 2 * (s ** 3 - sum(m ** 3 for m in params.masses)) / 12


def e0_generalized(params: ModelParams) -> Fraction:
    """Gauge constant of the generalized first-order-term model:

        E_0 = sum_{i<j<k} lam_ij*lam_ik / (2 M_i) + sum_{i != j} lam_ij^2 / (4 M_i).

    Both signs are fixed by the groundstate factorization: when lam_ij is
    proportional to M_i*M_j the three-body terms collapse and E_0 must equal
    the groundstate energy above, which the test suite enforces (flipping
    the quadratic sum breaks that identity and the Sutherland reduction).
    """
    lamjk = params.require_lamjk()

    def lam_at(i: int, j: int) -> Fraction:
        return lamjk[(i, j) if i < j else (j, i)]

    N = params.N
    total = Fraction(0)
    for i in range(N):
        for j in range(i + 1, N):
            for k in range(j + 1, N):
                total += lam_at(i, j) * lam_at(i, k) / (2 * params.masses[i])
    for i in range(N):
        for j in range(N):
            if i != j:
                total += lam_at(i, j) ** 2 / (4 * params.masses[i])
    return total


@dataclass(frozen=True)
class PtConditionsReport:
    """Left-hand sides of the convergence conditions at contour radius R.

    ``cond1_lhs``: sum_{i<j} |gamma_ij| * t/(1-t)^2 with t = R^(i-j)
    (absolute convergence of the singular series on |z_j| = R^j).
    ``cond3_lhs``: sum_{i<j} |gamma_ij| * u/(1+u)^2 with u = R^(-2(j-i))
    (square integrability on the shifted contour).
    ``r_min``: the crude sufficient radius max(2, N(N-1)|lam-1|/8).
    Both sides are compared against the gap bound ``delta``.
    """

    r: Fraction
    delta: Fraction
    cond1_lhs: Fraction
    cond3_lhs: Fraction
    r_min: Fraction

    @property
    def cond1_ok(self) -> bool:
        return self.cond1_lhs < self.delta

    @property
    def cond3_ok(self) -> bool:
        return self.cond3_lhs < self.delta


def pt_conditions(
    params: ModelParams,
    R: Optional[RatLike] = None,
    delta: Optional[RatLike] = None,
) -> PtConditionsReport:
    """Evaluate both convergence conditions exactly at radius R > 1.

    ``delta`` defaults to the Calogero-Sutherland gap bound 2*lam.
    """
    if R is None:
        R = params.contour_radius
    if R is None:
        raise ConfigurationError("no contour radius given")
    R = as_frac(R)
    if R <= 1:
        raise ValueError("contour radius must exceed 1")
    dlt = 2 * params.lam if delta is None else as_frac(delta)
    cond1 = Fraction(0)
    cond3 = Fraction(0)
    for (i, j) in pairs(params.N):
        g = abs(params.gamma[(i, j)])
        t = R ** (i - j)
        u = R ** (-2 * (j - i))
        cond1 += g * t / (1 - t) ** 2
        cond3 += g * u / (1 + u) ** 2
    r_min = max(Fraction(2), Fraction(params.N * (params.N - 1)) * abs(params.lam - 1) / 8)
    return PtConditionsReport(R, dlt, cond1, cond3, r_min)
