"""The singular-eigenfunction engine.

On the ordered-modulus domain |z_1| < ... < |z_N| the operator acts on the
monomials f_m = z^(m+s) triangularly:

    H f_m = E_m f_m - sum_{i<j} gamma_ij sum_{nu>=1} nu f_{m + nu E_ij},

so an eigenfunction with leading index n is f_n plus a tail over the
lowering lattice whose coefficients alpha_n(m) solve

    alpha_n(m) = (1 / b_n(m)) sum_{i<j} gamma_ij sum_nu nu alpha_n(m - nu E_ij)

with b_n(m) = E_m - E_n and alpha_n(n) = 1.  This module implements that
recursion, the equivalent closed path-sum formula, the generic triangular
eigenvector solver it is an instance of, and the generalization with
first-order (cot) terms.

Truncation is by lattice depth: the working index set is closed under taking
recursion sources, so the truncated eigenfunction satisfies its eigenvalue
equation exactly on the whole retained index set.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, Hashable, Iterable, List, Optional, Sequence, Tuple

from csjack.algebra import LaurentSeries, as_frac
from csjack.lattice import (
    IntVec,
    adjacent_weight,
    in_lowering_lattice,
    pairs,
    series_support,
)
from csjack.spectrum import ModelParams, e0_generalized, eigenvalue, gap_b

Pair = Tuple[int, int]


class DegeneracyError(ArithmeticError):
    """A vanishing eigenvalue gap makes the triangular recursion singular."""

    def __init__(self, message: str, label: Optional[Tuple] = None):
        super().__init__(message)
        self.label = label


@dataclass
class AlphaTable:
    """Coefficients alpha_n(n + d) of a singular eigenfunction.

    ``alpha`` and ``gaps`` are keyed by lattice displacements d; the gap at
    d is b_n(n + d) = E_{n+d} - E_n, nonzero for every retained d != 0.
    """

    n: IntVec
    depth: int
    alpha: Dict[IntVec, Fraction]
    gaps: Dict[IntVec, Fraction]


def _steps_into(d: IntVec, support: frozenset, max_aw: int) -> Iterable[Tuple[IntVec, Pair, int]]:
    """Targets d + nu*E_ij inside the support, with their pair and nu."""
    N = len(d)
    aw = adjacent_weight(d)
    for (i, j) in pairs(N):
        nu = 1
        while aw + nu * (j - i) <= max_aw:
            t = list(d)
            t[i] += nu
            t[j] -= nu
            tt = tuple(t)
            if tt in support:
                yield tt, (i, j), nu
            nu += 1


def _sources_of(d: IntVec) -> Iterable[Tuple[IntVec, Pair, int]]:
    """Lattice predecessors d - nu*E_ij, with their pair and nu."""
    N = len(d)
    for (i, j) in pairs(N):
        nu = 1
        while True:
            s = list(d)
            s[i] -= nu
            s[j] += nu
            st = tuple(s)
            if not in_lowering_lattice(st):
                break
            yield st, (i, j), nu
            nu += 1


def apply_H(params: ModelParams, s: LaurentSeries) -> LaurentSeries:
    """Image of a truncated series under the operator, truncated to the same
    index set; exact rationals."""
    support = frozenset(series_support(s.N, s.depth))
    max_aw = max(adjacent_weight(d) for d in support)
    n = s.base
    out: Dict[IntVec, Fraction] = {}
    for d, c in s.terms.items():
        m = tuple(a + b for a, b in zip(n, d))
        em = eigenvalue(params, m)
        out[d] = out.get(d, Fraction(0)) + em * c
        for tt, (i, j), nu in _steps_into(d, support, max_aw):
            out[tt] = out.get(tt, Fraction(0)) - params.gamma[(i, j)] * nu * c
    return LaurentSeries(s.base, s.shift, out, s.depth)


def alpha_recursive(params: ModelParams, n: Sequence[int], depth: int) -> AlphaTable:
    """Solve the recursion by a sweep of the depth-truncated lattice in
    increasing adjacent-weight order (sources always precede targets)."""
    n = tuple(n)
    support = series_support(params.N, depth)
    alpha: Dict[IntVec, Fraction] = {}
    gaps: Dict[IntVec, Fraction] = {}
    for d in support:
        if all(v == 0 for v in d):
            alpha[d] = Fraction(1)
            continue
        m = tuple(a + b for a, b in zip(n, d))
        b = gap_b(params, n, m)
        gaps[d] = b
        if b == 0:
            raise DegeneracyError(f"vanishing gap at m = {m}", label=m)
        val = Fraction(0)
        for src, (i, j), nu in _sources_of(d):
            a = alpha.get(src)
            if a:
                val += params.gamma[(i, j)] * nu * a
        alpha[d] = val / b
    return AlphaTable(n, depth, alpha, gaps)


def alpha_closed(
    params: ModelParams,
    n: Sequence[int],
    mu: "IntVec | object",
    smax: Optional[int] = None,
) -> Fraction:
    """The coefficient as an explicit sum over ordered step sequences.

    Each sequence ((i_1,j_1,nu_1), ..., (i_s,j_s,nu_s)) with total
    displacement d contributes prod_r gamma * nu_r divided by the product of
    gaps b_n at the partial sums.  ``mu`` may be a MuVector or a displacement
    vector.  ``smax`` caps the sequence length; sequences are finite anyway
    because every step strictly increases the adjacent weight.
    """
    n = tuple(n)
    target = tuple(mu.displacement() if hasattr(mu, "displacement") else mu)
    if not in_lowering_lattice(target):
        raise ValueError(f"{target} is not in the lowering lattice")
    if all(v == 0 for v in target):
        return Fraction(1)
    prs = pairs(params.N)
    total = Fraction(0)

    def extend(pos: IntVec, acc: Fraction, steps: int) -> None:
        nonlocal total
        if smax is not None and steps >= smax:
            return
        for (i, j) in prs:
            nu = 1
            while True:
                nxt = list(pos)
                nxt[i] += nu
                nxt[j] -= nu
                nxt_t = tuple(nxt)
                rest = tuple(a - b for a, b in zip(target, nxt_t))
                # crossings of rest decrease monotonically in nu, so the
                # first failure rules out all larger nu for this pair
                if not in_lowering_lattice(rest):
                    break
                m = tuple(a + b for a, b in zip(n, nxt_t))
                b = gap_b(params, n, m)
                if b == 0:
                    raise DegeneracyError(f"vanishing gap at m = {m}", label=m)
                acc2 = acc * params.gamma[(i, j)] * nu / b
                if nxt_t == target:
                    total += acc2
                else:
                    extend(nxt_t, acc2, steps + 1)
                nu += 1

    extend((0,) * params.N, Fraction(1), 0)
    return total


def singular_eigenfunction(params: ModelParams, n: Sequence[int], depth: int) -> LaurentSeries:
    """The eigenfunction series: leading coefficient 1 at n, shift from the
    model parameters, truncated at ``depth``."""
    table = alpha_recursive(params, n, depth)
    return LaurentSeries(tuple(n), params.shifts, table.alpha, depth)


# ---------------------------------------------------------------------------
# Generic triangular eigenvector solver
# ---------------------------------------------------------------------------


@dataclass
class TriangularSystem:
    """A matrix A with A_JK != 0 only for K >= J in some partial order.

    ``diag(J)`` returns a_J = A_JJ; ``action(J)`` returns the finite list of
    (K, A_JK) with K strictly above J.  ``indices`` optionally enumerates the
    index set for reporting.
    """

    diag: Callable[[Hashable], Fraction]
    action: Callable[[Hashable], List[Tuple[Hashable, Fraction]]]
    indices: Optional[Iterable[Hashable]] = None


def triangular_eigenvector(
    sys: TriangularSystem,
    L: Hashable,
    indices: Optional[Iterable[Hashable]] = None,
) -> Dict[Hashable, Fraction]:
    """The eigenvector to eigenvalue a_L: v_L = 1, v_J = 0 off the set of
    indices from which L is reachable, and otherwise

        v_J = (1 / (a_L - a_J)) * sum_{K > J} A_JK v_K.

    Divides only where the numerator is nonzero, and raises DegeneracyError
    if that requires a_J = a_L.
    """
    a_L = sys.diag(L)
    memo: Dict[Hashable, Fraction] = {L: Fraction(1)}
    visiting: set = set()

    def solve(J: Hashable) -> Fraction:
        if J in memo:
            return memo[J]
        if J in visiting:
            raise ValueError("action is not triangular: cycle detected")
        visiting.add(J)
        acc = Fraction(0)
        for K, A in sys.action(J):
            vK = solve(K)
            if vK:
                acc += as_frac(A) * vK
        visiting.discard(J)
        if acc == 0:
            v = Fraction(0)
        else:
            a_J = sys.diag(J)
            if a_J == a_L:
                raise DegeneracyError(f"degenerate diagonal at index {J!r}", label=J)
            v = acc / (a_L - a_J)
        memo[J] = v
        return v

    todo = indices if indices is not None else sys.indices
    if todo is None:
        raise ValueError("no index set given")
    return {J: solve(J) for J in todo}


def cs_triangular_system(params: ModelParams, n: Sequence[int], depth: int) -> TriangularSystem:
    """The eigenfunction recursion as a TriangularSystem over displacements.

    Row d has diagonal E_{n+d} and entries A[d, d - nu*E_ij] = -nu*gamma_ij;
    feeding it to :func:`triangular_eigenvector` at L = 0 reproduces
    :func:`alpha_recursive` exactly.
    """
    n = tuple(n)
    support = series_support(params.N, depth)
    support_set = frozenset(support)

    def diag(d: IntVec) -> Fraction:
        return eigenvalue(params, tuple(a + b for a, b in zip(n, d)))

    def action(d: IntVec) -> List[Tuple[IntVec, Fraction]]:
        out = []
        for src, (i, j), nu in _sources_of(d):
            if src in support_set:
                out.append((src, -params.gamma[(i, j)] * nu))
        return out

    return TriangularSystem(diag, action, support)


# ---------------------------------------------------------------------------
# Generalized model with first-order (cot) terms
# ---------------------------------------------------------------------------


def gamma_prime(params: ModelParams, pair: Pair) -> Fraction:
    """Residual second-order coupling after gauging away the pair exponents:
    gamma'_ij = gamma_ij - (M_i + M_j)/(M_i M_j) * lam_ij * (lam_ij - 1)."""
    lamjk = params.require_lamjk()
    i, j = pair
    Mi, Mj = params.masses[i], params.masses[j]
    lij = lamjk[pair]
    return params.gamma[pair] - (Mi + Mj) / (Mi * Mj) * lij * (lij - 1)


def pair_velocity(params: ModelParams, m: Sequence[int], pair: Pair) -> Fraction:
    """(m_i + s_i)/M_i - (m_j + s_j)/M_j for the pair (i, j)."""
    i, j = pair
    return (m[i] + params.shifts[i]) / params.masses[i] - (m[j] + params.shifts[j]) / params.masses[j]


def reduced_diagonal(params: ModelParams, m: Sequence[int]) -> Fraction:
    """Diagonal of the gauged operator on f_m in the ordered-modulus domain:

        a(m) = sum_j (m_j + s_j)^2 / M_j - sum_{i<j} lam_ij * v_ij(m)

    with v_ij the pair velocity.  The cot factor expands on |z_i/z_j| < 1 as
    -i * (1 + 2 sum_{nu>=1} (z_i/z_j)^nu), whence the minus sign.
    """
    base = eigenvalue(params, m)
    lamjk = params.require_lamjk()
    return base - sum(lamjk[p] * pair_velocity(params, m, p) for p in pairs(params.N))


def apply_H_generalized(params: ModelParams, s: LaurentSeries) -> LaurentSeries:
    """Image of a series under the gauged operator with cot terms:

        H' f_m = a(m) f_m - sum_{i<j} sum_{nu>=1}
                 (2 lam_ij v_ij(m) + nu gamma'_ij) f_{m + nu E_ij}.
    """
    lamjk = params.require_lamjk()
    support = frozenset(series_support(s.N, s.depth))
    max_aw = max(adjacent_weight(d) for d in support)
    n = s.base
    gprime = {p: gamma_prime(params, p) for p in pairs(params.N)}
    out: Dict[IntVec, Fraction] = {}
    for d, c in s.terms.items():
        m = tuple(a + b for a, b in zip(n, d))
        out[d] = out.get(d, Fraction(0)) + reduced_diagonal(params, m) * c
        for tt, p, nu in _steps_into(d, support, max_aw):
            w = 2 * lamjk[p] * pair_velocity(params, m, p) + nu * gprime[p]
            out[tt] = out.get(tt, Fraction(0)) - w * c
    return LaurentSeries(s.base, s.shift, out, s.depth)


@dataclass
class GeneralizedAlphaTable:
    """Result of the generalized recursion.

    ``reduced_eigenvalue`` is the gauged-operator eigenvalue a(n);
    ``gauge_energy`` the gauge constant E_0 (see e0_generalized); their sum
    ``total_eigenvalue`` is the eigenvalue of the full operator whenever the
    pair exponents are proportional to M_i*M_j (three-body collapse).
    """

    n: IntVec
    depth: int
    alpha: Dict[IntVec, Fraction]
    gaps: Dict[IntVec, Fraction]
    reduced_eigenvalue: Fraction
    gauge_energy: Fraction
    total_eigenvalue: Fraction


def generalized_alpha(params: ModelParams, n: Sequence[int], depth: int) -> GeneralizedAlphaTable:
    """Solve the generalized recursion

        (a(m) - a(n)) alpha(m) = sum_{i<j} sum_nu
            (2 lam_ij v_ij(m - nu E_ij) + nu gamma'_ij) alpha(m - nu E_ij)

    via the same triangular sweep as :func:`alpha_recursive`; with all
    lam_ij = 0 it reduces to that recursion exactly.
    """
    n = tuple(n)
    lamjk = params.require_lamjk()
    gprime = {p: gamma_prime(params, p) for p in pairs(params.N)}
    support = series_support(params.N, depth)
    a_n = reduced_diagonal(params, n)
    alpha: Dict[IntVec, Fraction] = {}
    gaps: Dict[IntVec, Fraction] = {}
    for d in support:
        if all(v == 0 for v in d):
            alpha[d] = Fraction(1)
            continue
        m = tuple(a + b for a, b in zip(n, d))
        gap = reduced_diagonal(params, m) - a_n
        gaps[d] = gap
        if gap == 0:
            raise DegeneracyError(f"vanishing gap at m = {m}", label=m)
        val = Fraction(0)
        for src, (i, j), nu in _sources_of(d):
            a = alpha.get(src)
            if a:
                msrc = tuple(x + y for x, y in zip(n, src))
                w = 2 * lamjk[(i, j)] * pair_velocity(params, msrc, (i, j)) + nu * gprime[(i, j)]
                val += w * a
        alpha[d] = val / gap
    e0 = e0_generalized(params)
    return GeneralizedAlphaTable(n, depth, alpha, gaps, a_n, e0, a_n + e0)


def momenta(params: ModelParams, n: Sequence[int]) -> Tuple[Fraction, ...]:
    """Quasi-momenta p_i = n_i + s_i + (sum_{k<i} lam_ki - sum_{k>i} lam_ik)/2.

    When the pair exponents are proportional to M_i*M_j, the total eigenvalue
    of :func:`generalized_alpha` equals sum_i p_i^2 / M_i.
    """
    lamjk = params.require_lamjk()
    out = []
    for i in range(params.N):
        c = Fraction(0)
        for k in range(params.N):
            if k < i:
                c += lamjk[(k, i)]
            elif k > i:
                c -= lamjk[(i, k)]
        out.append(n[i] + params.shifts[i] + c / 2)
    return tuple(out)
