"""Linear-programming route to sharp indirect-effect bounds.

The decision variables are the sixteen augmented principal strata

    psi[yA, yB, m1, m0] = P(Y(ref, 1) = yA, Y(ref, 0) = yB, M(1) = m1, M(0) = m0)

for a fixed reference arm ``ref``: each stratum fixes both potential mediator
values and both potential reference-arm outcomes.  Every quantity the bounds
need is linear in psi:

* reference-arm joint cells pin four linear combinations of psi,
* the opposite arm contributes only its mediator margin P(M = 1 | A = 1-ref),
* mediator monotonicity zeroes the four defier strata (m1, m0) = (0, 1),
* the signed mediator-on-outcome restriction is one inequality
  sign * (P(yA=1, yB=0) - P(yA=0, yB=1)) >= 0,
* the cross-world mean E[Y(ref, M(1-ref))] is the objective.

Extremizing the objective over this polytope and translating back to
delta(ref) gives bounds that are sharp by construction; the closed forms in
``closed_form`` are validated against this route, and this route serves the
estimands that have no printed closed form.

The solver is a dense two-phase primal simplex with Bland's rule.  The
programs here are tiny (16 + at most 1 slack variable, at most 11 rows), so a
bespoke dense implementation is simpler to certify at the 1e-9 contract than a
general sparse solver dependency, and its witnesses come back in exactly the
stratum layout the oracle needs.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .model import (
    AssumptionIncompatibilityError,
    Assumptions,
    BoundsResult,
    EstimandSpec,
    Method,
    ObservedDistribution,
    SIMPLEX_TOL,
    ValidationError,
)

FEAS_TOL = 1e-9
PIVOT_TOL = 1e-10
_MAX_PIVOTS = 10_000


class Sense(enum.Enum):
    MIN = "min"
    MAX = "max"


def strata_index(y_a: int, y_b: int, m1: int, m0: int) -> int:
    """Flat index of stratum (Y(ref,1)=y_a, Y(ref,0)=y_b, M(1)=m1, M(0)=m0)."""
    return 8 * y_a + 4 * y_b + 2 * m1 + m0


_BITS = [(a, b, c, d) for a in (0, 1) for b in (0, 1) for c in (0, 1) for d in (0, 1)]


@dataclass(frozen=True, eq=False)
class StrataDistribution16:
    """A distribution over the sixteen augmented strata at one reference level."""

    psi: np.ndarray
    reference: int

    def __post_init__(self) -> None:
        arr = np.asarray(self.psi, dtype=float)
        if arr.shape != (16,):
            raise ValidationError(f"psi must have shape (16,), got {arr.shape}")
        if np.any(arr < -FEAS_TOL):
            raise ValidationError(f"negative stratum mass {arr.min()!r}")
        if abs(arr.sum() - 1.0) > 1e-9:
            raise ValidationError(f"stratum masses sum to {arr.sum()!r}, expected 1")
        if self.reference not in (0, 1):
            raise ValidationError(f"reference must be 0 or 1, got {self.reference!r}")
        arr = np.clip(arr, 0.0, None)
        arr.flags.writeable = False
        object.__setattr__(self, "psi", arr)

    def mass(self, y_a: int, y_b: int, m1: int, m0: int) -> float:
        return float(self.psi[strata_index(y_a, y_b, m1, m0)])

    def defier_mass(self) -> float:
        return float(sum(self.psi[strata_index(a, b, 0, 1)] for a in (0, 1) for b in (0, 1)))


@dataclass(frozen=True)
class LinearProgram:
    """A small LP over the sixteen strata, rows stored densely.

    ``equalities`` and ``inequalities`` are tuples of (coefficients, rhs);
    inequality rows are of the form coeffs . psi >= rhs.  Exactly one equality
    must be the simplex row (all ones, rhs 1), and every equality rhs is a
    probability.
    """

    objective: tuple[float, ...]
    equalities: tuple[tuple[tuple[float, ...], float], ...]
    inequalities: tuple[tuple[tuple[float, ...], float], ...]
    sense: Sense
    reference: int
    row_labels: tuple[str, ...] = ()

    def __post_init__(self) -> None:
        if len(self.objective) != 16:
            raise ValidationError("objective must have 16 coefficients")
        simplex_rows = [
            i
            for i, (coeffs, rhs) in enumerate(self.equalities)
            if all(c == 1.0 for c in coeffs) and rhs == 1.0
        ]
        if len(simplex_rows) != 1:
            raise ValidationError(f"expected exactly one simplex row, found {len(simplex_rows)}")
        for coeffs, rhs in self.equalities:
            if len(coeffs) != 16:
                raise ValidationError("equality rows must have 16 coefficients")
            if not (-SIMPLEX_TOL <= rhs <= 1.0 + SIMPLEX_TOL):
                raise ValidationError(f"probability row rhs {rhs!r} outside [0, 1]")
        for coeffs, rhs in self.inequalities:
            if len(coeffs) != 16:
                raise ValidationError("inequality rows must have 16 coefficients")


class InfeasibleError(RuntimeError):
    """The program has no feasible point; carries the most-violated constraint."""

    def __init__(self, message: str, *, constraint: str, residual: float):
        super().__init__(message)
        self.constraint = constraint
        self.residual = residual


class UnboundedError(RuntimeError):
    """The objective is unbounded; impossible for these compact programs, so a bug."""


def build_lp(dist: ObservedDistribution, spec: EstimandSpec, sense: Sense) -> LinearProgram:
    """Assemble the stratum LP whose optimum is the extreme cross-world mean.

    The objective is E[Y(ref, M(1-ref))]; ``anie_bounds_lp`` translates its
    extrema into bounds on delta(ref).
    """
    ref = spec.reference
    p_ref = dist.arm(ref)
    opp_margin = dist.mediator_margin(1 - ref)

    equalities: list[tuple[tuple[float, ...], float]] = []
    labels: list[str] = ["simplex: total mass = 1"]
    equalities.append((tuple(1.0 for _ in range(16)), 1.0))

    # Reference-arm joint cells: in arm ref the realized mediator is m1 when
    # ref = 1 and m0 when ref = 0, and the realized outcome is yA or yB
    # according to that mediator value.
    for y in (0, 1):
        for m in (0, 1):
            row = np.zeros(16)
            for a, b, c, d in _BITS:
                m_obs = c if ref == 1 else d
                y_obs = a if m_obs == 1 else b
                if m_obs == m and y_obs == y:
                    row[strata_index(a, b, c, d)] = 1.0
            equalities.append((tuple(row), float(p_ref[2 * y + m])))
            labels.append(f"arm {ref} joint cell (y={y}, m={m})")

    # The opposite arm identifies only its mediator margin.
    row = np.zeros(16)
    for a, b, c, d in _BITS:
        m_opp = d if ref == 1 else c
        if m_opp == 1:
            row[strata_index(a, b, c, d)] = 1.0
    equalities.append((tuple(row), float(opp_margin)))
    labels.append(f"arm {1 - ref} mediator margin P(M=1|A={1 - ref})")

    if spec.assumptions in (Assumptions.MMR, Assumptions.MMR_POS_MEDIATOR):
        for a in (0, 1):
            for b in (0, 1):
                row = np.zeros(16)
                row[strata_index(a, b, 0, 1)] = 1.0
                equalities.append((tuple(row), 0.0))
                labels.append(f"no mediator defiers: psi({a},{b},0,1) = 0")

    inequalities: list[tuple[tuple[float, ...], float]] = []
    if spec.assumptions is Assumptions.MMR_POS_MEDIATOR:
        sign = float(spec.mediator_effect_sign)
        row = np.zeros(16)
        for c in (0, 1):
            for d in (0, 1):
                row[strata_index(1, 0, c, d)] += sign
                row[strata_index(0, 1, c, d)] -= sign
        inequalities.append((tuple(row), 0.0))
        labels.append(f"mediator effect on arm-{ref} outcome has sign {spec.mediator_effect_sign:+d}")

    objective = np.zeros(16)
    for a, b, c, d in _BITS:
        m_cross = d if ref == 1 else c
        y_cross = a if m_cross == 1 else b
        if y_cross == 1:
            objective[strata_index(a, b, c, d)] = 1.0

    return LinearProgram(
        objective=tuple(objective),
        equalities=tuple(equalities),
        inequalities=tuple(inequalities),
        sense=sense,
        reference=ref,
        row_labels=tuple(labels),
    )


def format_lp(lp: LinearProgram) -> str:
    """Stable one-line-per-row text dump for debugging and golden tests."""

    def fmt_row(coeffs) -> str:
        return " ".join(f"{c:.12g}" for c in coeffs)

    lines = [f"# reference={lp.reference} rows={len(lp.equalities) + len(lp.inequalities)}"]
    lines.append(f"{lp.sense.name} {fmt_row(lp.objective)}")
    for coeffs, rhs in lp.equalities:
        lines.append(f"EQ {fmt_row(coeffs)} = {rhs:.12g}")
    for coeffs, rhs in lp.inequalities:
        lines.append(f"GE {fmt_row(coeffs)} >= {rhs:.12g}")
    return "\n".join(lines) + "\n"


class _Infeasible(Exception):
    def __init__(self, residuals: np.ndarray):
        self.residuals = residuals


def _pivot(T: np.ndarray, basis: np.ndarray, row: int, col: int) -> None:
    T[row] /= T[row, col]
    colvals = T[:, col].copy()
    colvals[row] = 0.0
    T -= np.outer(colvals, T[row])
    T[:, col] = 0.0
    T[row, col] = 1.0
    basis[row] = col


def _bland(T: np.ndarray, basis: np.ndarray, ncols: int) -> None:
    # Bland's smallest-index rules on both the entering and leaving choice;
    # guarantees termination despite the heavy degeneracy of these programs.
    m = T.shape[0] - 1
    for _ in range(_MAX_PIVOTS):
        reduced = T[m, :ncols]
        entering = np.flatnonzero(reduced < -PIVOT_TOL)
        if entering.size == 0:
            return
        col = int(entering[0])
        column = T[:m, col]
        positive = column > PIVOT_TOL
        if not positive.any():
            raise UnboundedError("no blocking row for entering column")
        ratios = np.full(m, np.inf)
        ratios[positive] = T[:m, -1][positive] / column[positive]
        best = ratios.min()
        candidates = np.flatnonzero(ratios <= best + 1e-12)
        row = int(candidates[np.argmin(basis[candidates])])
        _pivot(T, basis, row, col)
    raise RuntimeError("simplex failed to terminate within the pivot budget")


def _solve_standard(A: np.ndarray, b: np.ndarray, c: np.ndarray) -> np.ndarray:
    """min c.x subject to A x = b, x >= 0; returns an optimal x."""
    m, n = A.shape
    A = A.copy()
    b = b.copy()
    flip = b < 0.0
    A[flip] *= -1.0
    b[flip] *= -1.0

    # Phase 1: feasibility via artificial variables.
    T = np.zeros((m + 1, n + m + 1))
    T[:m, :n] = A
    T[:m, n : n + m] = np.eye(m)
    T[:m, -1] = b
    T[m, :n] = -A.sum(axis=0)
    T[m, -1] = -b.sum()
    basis = np.arange(n, n + m)
    _bland(T, basis, n + m)
    if -T[m, -1] > FEAS_TOL:
        residuals = np.zeros(m)
        for i, var in enumerate(basis):
            if var >= n:
                residuals[var - n] = T[i, -1]
        raise _Infeasible(residuals)

    # Drive leftover artificials out of the basis; a row with no structural
    # pivot is redundant and is dropped.
    keep = []
    for i in range(m):
        if basis[i] >= n:
            structural = np.flatnonzero(np.abs(T[i, :n]) > PIVOT_TOL)
            if structural.size == 0:
                continue
            _pivot(T, basis, i, int(structural[0]))
        keep.append(i)
    if len(keep) < m:
        T = T[keep + [m], :]
        basis = basis[keep]
        m = len(keep)

    # Phase 2 on structural columns only.
    T2 = np.zeros((m + 1, n + 1))
    T2[:m, :n] = T[:m, :n]
    T2[:m, -1] = T[:m, -1]
    T2[m, :n] = c
    for i, var in enumerate(basis):
        coef = T2[m, var]
        if coef != 0.0:
            T2[m] -= coef * T2[i]
    _bland(T2, basis, n)

    x = np.zeros(n)
    x[basis] = T2[:m, -1]
    return x


def solve(lp: LinearProgram) -> tuple[float, StrataDistribution16]:
    """Optimize ``lp``; return the optimal value and a witness stratum distribution.

    Raises :class:`InfeasibleError` (naming the most-violated constraint) when
    the constraints are inconsistent, and :class:`UnboundedError` in the
    impossible unbounded case.
    """
    n_eq = len(lp.equalities)
    n_ineq = len(lp.inequalities)
    n = 16 + n_ineq
    A = np.zeros((n_eq + n_ineq, n))
    b = np.zeros(n_eq + n_ineq)
    for i, (coeffs, rhs) in enumerate(lp.equalities):
        A[i, :16] = coeffs
        b[i] = rhs
    for j, (coeffs, rhs) in enumerate(lp.inequalities):
        # coeffs . psi >= rhs becomes coeffs . psi - surplus = rhs
        A[n_eq + j, :16] = coeffs
        A[n_eq + j, 16 + j] = -1.0
        b[n_eq + j] = rhs

    c = np.zeros(n)
    c[:16] = lp.objective
    if lp.sense is Sense.MAX:
        c = -c

    try:
        x = _solve_standard(A, b, c)
    except _Infeasible as exc:
        worst = int(np.argmax(np.abs(exc.residuals)))
        label = lp.row_labels[worst] if worst < len(lp.row_labels) else f"row {worst}"
        residual = float(exc.residuals[worst])
        raise InfeasibleError(
            f"constraints are inconsistent; most violated: {label} (residual {residual:.6g})",
            constraint=label,
            residual=residual,
        ) from None

    residual = float(np.abs(A @ x - b).max()) if A.size else 0.0
    if residual > FEAS_TOL or x.min() < -FEAS_TOL:
        raise RuntimeError(f"simplex returned an infeasible point (residual {residual:.3g})")
    value = float(np.dot(lp.objective, x[:16]))
    witness = StrataDistribution16(psi=x[:16], reference=lp.reference)
    return value, witness


def cross_world_range(
    dist: ObservedDistribution, spec: EstimandSpec
) -> tuple[float, float, StrataDistribution16, StrataDistribution16]:
    """Extremes of E[Y(ref, M(1-ref))] with the witnesses attaining them."""
    lo_val, lo_wit = solve(build_lp(dist, spec, Sense.MIN))
    hi_val, hi_wit = solve(build_lp(dist, spec, Sense.MAX))
    return lo_val, hi_val, lo_wit, hi_wit


def anie_bounds_lp(dist: ObservedDistribution, spec: EstimandSpec) -> BoundsResult:
    """Sharp bounds on delta(spec.reference) by linear programming.

    Serves every assumption set at either reference level, including the
    signed-mediator set at reference 0 and with negative maintained sign.
    Infeasibility is surfaced as :class:`AssumptionIncompatibilityError`.
    """
    try:
        cross_min, cross_max, _, _ = cross_world_range(dist, spec)
    except InfeasibleError as exc:
        raise AssumptionIncompatibilityError(
            f"observed distribution is incompatible with {spec.assumptions.value!r}: {exc}"
        ) from exc
    if spec.reference == 1:
        mean = dist.outcome_mean(1)
        lower, upper = mean - cross_max, mean - cross_min
    else:
        mean = dist.outcome_mean(0)
        lower, upper = cross_min - mean, cross_max - mean
    lower = min(1.0, max(-1.0, lower))
    upper = min(1.0, max(-1.0, upper))
    return BoundsResult(
        lower=lower,
        upper=upper,
        binding_lower=None,
        binding_upper=None,
        spec=spec,
        method=Method.LP,
        fingerprint=dist.fingerprint(),
    )
