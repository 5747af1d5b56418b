"""Union information: what a family of parts conveys about the target in parallel.

Two measures are provided behind one configuration type:

* ``minsyn`` (default): the minimum, over all joint distributions q on the
  full outcome space that preserve every part-target marginal
  ``q(P_i, Y) = p(P_i, Y)``, of the whole-target mutual information
  ``I_q(X_all ; Y)``.  The objective is convex in q and the feasible set is
  the intersection of an affine subspace with the nonnegative orthant, so
  projected gradient descent with Dykstra-style feasibility projection finds
  the global optimum.
* ``maxmi``: the largest single-part mutual information ``max_i I(P_i ; Y)``.
  A deliberately weak baseline kept to demonstrate that the irreducibility
  layer is measure-pluggable; it satisfies the same property list but does
  not reproduce the reference circuit values.

Both satisfy the six properties the irreducibility measures require
(nonnegativity and vanishing for constant targets, invariance under
equivalent relabelings, weak monotonicity under appending parts, order
invariance, single-part self-redundancy, and the whole-information upper
bound); :func:`check_axioms` verifies them numerically on a suite.

The minimization is parameterized over the product of the declared alphabets
rather than the base support, because the optimum generally moves mass onto
outcomes the base distribution never produces.  Cells that any preserved
marginal pins to zero are eliminated up front; this leaves the feasible set
unchanged and keeps the optimizer away from gradient blow-ups at forced
zeros.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass, field
from enum import Enum
from functools import lru_cache
from itertools import product as iter_product
from typing import Iterable, Sequence

import numpy as np

from .distributions import DistributionError, JointDistribution, VariableSelector
from .parts import PartFamily, PartSpec, all_parts

__all__ = [
    "MeasureKind",
    "UnionMeasure",
    "MarginalPolytope",
    "UnionConvergenceError",
    "union_information",
    "brute_force_union_oracle",
    "AxiomReport",
    "check_axioms",
]

_LN2 = math.log(2.0)

#: Stop a descent run once the objective sits this close to the per-part
#: lower bound; no feasible point can be better.
_CERTIFICATE_SLACK = 1e-11

#: Plateau rule: converged when 50 consecutive iterations improve the
#: objective by less than this many bits.
_PLATEAU_IMPROVEMENT = 1e-10
_PLATEAU_WINDOW = 50

#: Masses below this are clipping residue, not signal.
_DUST_FLOOR = 1e-13


class MeasureKind(str, Enum):
    MIN_SYNERGY = "minsyn"
    MAX_SINGLE_MI = "maxmi"

    @classmethod
    def from_name(cls, name: str) -> "MeasureKind":
        aliases = {
            "minsyn": cls.MIN_SYNERGY,
            "minsynergy": cls.MIN_SYNERGY,
            "min_synergy": cls.MIN_SYNERGY,
            "maxmi": cls.MAX_SINGLE_MI,
            "maxsinglemi": cls.MAX_SINGLE_MI,
            "max_single_mi": cls.MAX_SINGLE_MI,
        }
        try:
            return aliases[name.strip().lower()]
        except KeyError:
            raise ValueError(f"unknown union measure {name!r}") from None


@dataclass(frozen=True)
class UnionMeasure:
    """Union-information measure selection plus optimizer settings."""

    kind: MeasureKind = MeasureKind.MIN_SYNERGY
    tolerance: float = 1e-6
    max_iterations: int = 10000
    restarts: int = 4
    seed: int = 0

    def __post_init__(self):
        if self.tolerance <= 0:
            raise ValueError("tolerance must be positive")
        if self.restarts < 1:
            raise ValueError("restarts must be >= 1")
        if self.max_iterations < 1:
            raise ValueError("max_iterations must be >= 1")

    def settings_dict(self) -> dict:
        return {
            "measure": self.kind.value,
            "tolerance": self.tolerance,
            "max_iterations": self.max_iterations,
            "restarts": self.restarts,
            "seed": self.seed,
        }


class UnionConvergenceError(RuntimeError):
    """No restart of the minimizer met the convergence rule."""

    def __init__(self, message: str, best_value: float):
        super().__init__(message)
        self.best_value = best_value


def _part_selector(d: JointDistribution, part: PartSpec) -> VariableSelector:
    preds = d.predictor_indices
    return VariableSelector(preds[i] for i in part.member_indices)


def _part_target_marginal(d: JointDistribution, part: PartSpec) -> dict[tuple, float]:
    """Joint (part, target) marginal keyed by (part symbols..., target symbol)."""
    preds = d.predictor_indices
    positions = [preds[i] for i in part.member_indices]
    t = d.target_index
    out: dict[tuple, float] = {}
    for outcome, p in d.pmf.items():
        key = tuple(outcome[i] for i in positions) + (outcome[t],)
        out[key] = out.get(key, 0.0) + p
    return out


def part_mutual_information(d: JointDistribution, part: PartSpec) -> float:
    return d.mutual_information(_part_selector(d, part), d.target_selector())


def whole_mutual_information(d: JointDistribution) -> float:
    return d.mutual_information(d.whole_selector(), d.target_selector())


class MarginalPolytope:
    """Feasible set of the minimum-synergy program, reduced to live cells.

    Cells enumerate the product of the declared alphabets (not just the base
    support).  A cell is dropped when some preserved marginal forces it to
    zero; every feasible q vanishes there, so the reduction is exact.  The
    base pmf itself is feasible and serves as the canonical start.
    """

    def __init__(self, base: JointDistribution, parts: Sequence[PartSpec]):
        if not parts:
            raise ValueError("need at least one part")
        n = base.n_predictors
        for p in parts:
            p.validate(n, allow_full=True)
        preds = base.predictor_indices
        t = base.target_index
        self.base = base
        self.parts = tuple(parts)

        marginals = [_part_target_marginal(base, p) for p in parts]
        part_positions = [
            [preds[i] for i in p.member_indices] for p in parts
        ]

        cells: list[tuple] = []
        for combo in iter_product(*base.alphabets):
            keep = True
            for positions, marg in zip(part_positions, marginals):
                key = tuple(combo[i] for i in positions) + (combo[t],)
                if key not in marg:
                    keep = False
                    break
            if keep:
                cells.append(combo)
        self.cells = cells
        ncells = len(cells)

        # Group indices for the objective: one group per whole-predictor
        # configuration, one per target symbol.
        xkeys: dict[tuple, int] = {}
        ykeys: dict[str, int] = {}
        xidx = np.empty(ncells, dtype=np.intp)
        yidx = np.empty(ncells, dtype=np.intp)
        for c, combo in enumerate(cells):
            xk = tuple(combo[i] for i in preds)
            yk = combo[t]
            xidx[c] = xkeys.setdefault(xk, len(xkeys))
            yidx[c] = ykeys.setdefault(yk, len(ykeys))
        self.xidx, self.yidx = xidx, yidx
        self.nx, self.ny = len(xkeys), len(ykeys)

        rows: list[np.ndarray] = []
        rhs: list[float] = []
        for positions, marg in zip(part_positions, marginals):
            row_of_key = {k: i for i, k in enumerate(marg)}
            block = np.zeros((len(marg), ncells))
            for c, combo in enumerate(cells):
                key = tuple(combo[i] for i in positions) + (combo[t],)
                block[row_of_key[key], c] = 1.0
            rows.append(block)
            rhs.extend(marg.values())
        self.A = np.vstack(rows) if rows else np.zeros((0, ncells))
        self.b = np.asarray(rhs)

        x0 = np.zeros(ncells)
        index_of_cell = {combo: c for c, combo in enumerate(cells)}
        for outcome, p in base.pmf.items():
            x0[index_of_cell[outcome]] = p
        self.x0 = x0
        residual = np.abs(self.A @ x0 - self.b).max() if len(self.b) else 0.0
        if residual > 1e-9:
            raise AssertionError(
                f"base distribution violates its own marginals by {residual}"
            )
        self._x_indicator: np.ndarray | None = None
        self._y_indicator: np.ndarray | None = None

        self.lower_bound = max(part_mutual_information(base, p) for p in parts)
        self.upper_bound = whole_mutual_information(base)

        # Orthonormal basis of the constraint null space; movement inside it
        # preserves every marginal exactly.
        if self.A.shape[0]:
            _, s, vt = np.linalg.svd(self.A, full_matrices=True)
            tol = s[0] * max(self.A.shape) * np.finfo(float).eps if s.size else 0.0
            rank = int((s > tol).sum())
            self.null_basis = vt[rank:].T.copy()
        else:
            self.null_basis = np.eye(ncells)

    # -- geometry ----------------------------------------------------------

    @property
    def x_indicator(self) -> np.ndarray:
        if self._x_indicator is None:
            self._x_indicator = _group_matrix(self.xidx, self.nx)
        return self._x_indicator

    @property
    def y_indicator(self) -> np.ndarray:
        if self._y_indicator is None:
            self._y_indicator = _group_matrix(self.yidx, self.ny)
        return self._y_indicator

    def project_affine(self, v: np.ndarray) -> np.ndarray:
        w = v - self.x0
        return self.x0 + self.null_basis @ (self.null_basis.T @ w)

    def residual(self, q: np.ndarray) -> float:
        """Worst marginal-constraint violation."""
        if not len(self.b):
            return 0.0
        return float(np.abs(self.A @ q - self.b).max())

    def project(self, v: np.ndarray, max_iter: int = 2500, tol: float = 1e-15) -> np.ndarray:
        """Dykstra alternation between the affine subspace and the orthant.

        Iterates until the orthant-exact iterate also satisfies the
        marginals tightly; small-increment stalls alone are not trusted,
        since near-tangential faces make increments shrink long before the
        iterate is feasible.
        """
        x = np.asarray(v, dtype=float)
        x0 = self.x0
        basis = self.null_basis
        p = np.zeros_like(x)
        q = np.zeros_like(x)
        for it in range(max_iter):
            w = x + p
            y = x0 + basis @ (basis.T @ (w - x0))
            p = w - y
            z = y + q
            xn = np.maximum(z, 0.0)
            q = z - xn
            delta = np.abs(xn - x).max()
            x = xn
            if delta < tol:
                break
            if delta < 1e-12 and (it & 7) == 0 and self.residual(x) < 1e-12:
                break
        # Affine-exact polish: safe whenever it stays essentially nonnegative.
        y = self.project_affine(x)
        if y.min() > -1e-11:
            return np.maximum(y, 0.0)
        return x

    # -- objective ----------------------------------------------------------

    def mi_bits(self, q: np.ndarray) -> float:
        qx = np.bincount(self.xidx, weights=q, minlength=self.nx)
        qy = np.bincount(self.yidx, weights=q, minlength=self.ny)
        return float(_neg_plogp(qx) + _neg_plogp(qy) - _neg_plogp(q))

    def mi_grad(self, q: np.ndarray) -> np.ndarray:
        # Boundary clipping leaves float dust (~1e-15) in cells that are
        # really zero; log-ratios of dust masses poison descent directions,
        # so anything below the dust floor is treated as an exact zero.
        # With exact zeros the clamped logs reproduce the correct one-sided
        # derivatives (cancellation inside an empty group, a large negative
        # pull inside a populated one).
        eps = 1e-18
        qc = np.where(q > _DUST_FLOOR, q, 0.0)
        qx = np.bincount(self.xidx, weights=qc, minlength=self.nx)
        qy = np.bincount(self.yidx, weights=qc, minlength=self.ny)
        # The additive -1/ln2 constant lies in the constraint row space
        # (each part's rows sum to the all-ones vector) and is annihilated
        # by the null-space projection, so it is omitted.
        return (
            np.log2(np.maximum(qc, eps))
            - np.log2(np.maximum(qx, eps))[self.xidx]
            - np.log2(np.maximum(qy, eps))[self.yidx]
        )


def _neg_plogp(v: np.ndarray) -> float:
    vv = v[v > 0.0]
    return float(-(vv * np.log2(vv)).sum())


def _run_projected_gradient(
    poly: MarginalPolytope,
    q: np.ndarray,
    max_iterations: int,
    barrier_mu: float = 0.0,
):
    """Projected-gradient loop on the objective, optionally barrier-smoothed.

    With ``barrier_mu`` > 0 the objective becomes
    ``I(q) - mu * sum(log2(q + mu))``: a shifted barrier that is smooth at
    the boundary (gradient bounded by ~1/ln2 per cell), pulls iterates off
    degenerate faces, and vanishes as mu goes to zero.  Returns
    ``(q, value, converged)`` where ``value`` is the smoothed objective.

    Steps follow the negative gradient projected into the constraint null
    space, so marginals stay exact.  While the step stays inside the
    orthant it is taken directly; beyond the first boundary crossing the
    candidate is either projected back onto the feasible set (which lets
    the iterate slide along a face) or capped at the boundary, whichever
    first improves the objective.
    """
    mu = barrier_mu

    def value(v: np.ndarray) -> float:
        base = poly.mi_bits(v)
        if mu > 0.0:
            base -= mu * float(np.log2(v + mu).sum())
        return base

    def gradient(v: np.ndarray) -> np.ndarray:
        g = poly.mi_grad(v)
        if mu > 0.0:
            g = g - mu / ((v + mu) * _LN2)
        return g

    nb = poly.null_basis
    f = value(q)
    if nb.shape[1] == 0:
        return q, f, True
    certificate = poly.lower_bound + _CERTIFICATE_SLACK if mu == 0.0 else -math.inf
    step = 1.0
    window_anchor = f
    window_count = 0
    recovered = False
    prev_q: np.ndarray | None = None
    prev_grad: np.ndarray | None = None
    for it in range(max_iterations):
        if f <= certificate:
            return q, f, True
        g = gradient(q)
        direction = -(nb @ (nb.T @ g))
        dnorm = np.abs(direction).max()
        if dnorm < 1e-15:
            return q, f, True
        # Barzilai-Borwein trial step; keeps line searches from inheriting a
        # microscopic step after one deep backtrack.  Capped so candidates
        # never leave the projection's fast-convergence neighborhood.
        step_cap = 4.0 / dnorm
        if prev_q is not None:
            dq = q - prev_q
            dg = direction - prev_grad
            denom = -(dq @ dg)
            if denom > 1e-300:
                step = float(np.clip((dq @ dq) / denom, 1e-10, step_cap))
            else:
                step = max(step * 4.0, 1e-3)
        step = min(step, step_cap)
        prev_q, prev_grad = q.copy(), direction.copy()
        # Dust cells count as already at the boundary.  A meaningful outward
        # push on one invalidates straight-line steps entirely (the clip
        # would break the marginals), so those iterations go through the
        # projection; harmless sub-dust pushes are merely clipped.
        blocked = (direction < -1e-12) & (q <= _DUST_FLOOR)
        neg = (direction < 0.0) & (q > _DUST_FLOOR)
        if blocked.any():
            t_boundary = 0.0
        elif neg.any():
            t_boundary = float((q[neg] / -direction[neg]).min())
        else:
            t_boundary = math.inf
        accepted = False
        tried_capped = False
        for _ in range(80):
            if step <= t_boundary:
                # Stays inside the orthant: affine feasibility is preserved.
                cand = np.maximum(q + step * direction, 0.0)
                fc = value(cand)
                if fc < f - 1e-15:
                    accepted = True
                    break
            else:
                if not tried_capped and t_boundary > 0.0:
                    # Cheap first try: stop at the first blocking face.
                    tried_capped = True
                    cand = np.maximum(q + 0.999 * t_boundary * direction, 0.0)
                    fc = value(cand)
                    if fc < f - 1e-15:
                        accepted = True
                        break
                cand = poly.project(q + step * direction)
                fc = value(cand)
                if fc < f - 1e-15 and poly.residual(cand) < 1e-10:
                    accepted = True
                    break
            step *= 0.5
            if step * dnorm < 1e-16:
                break
        if not accepted:
            if not recovered:
                # One fresh attempt from a cleanly projected iterate.
                recovered = True
                requeued = poly.project(q)
                if poly.residual(requeued) < 1e-10:
                    q = requeued
                    f = value(q)
                step = 1.0
                prev_q = prev_grad = None
                continue
            return q, f, True  # no descent representable in floats
        q, f = cand, fc
        step = min(step * 2.0, step_cap)
        if (it + 1) % 128 == 0:
            # Kill accumulated float drift off the affine subspace.
            requeued = poly.project(q)
            if poly.residual(requeued) < 1e-10:
                q = requeued
                f = value(q)
        window_count += 1
        if window_count >= _PLATEAU_WINDOW:
            if window_anchor - f < _PLATEAU_IMPROVEMENT:
                return q, f, True
            window_anchor = f
            window_count = 0
    return q, f, False


#: Barrier ladder used to escape boundary-degenerate stalls.
_BARRIER_LADDER = (1e-3, 1e-5, 1e-7, 1e-9)


def _descend(poly: MarginalPolytope, start: np.ndarray, max_iterations: int):
    """One plain projected-gradient run; returns (q, value, converged)."""
    q = poly.project(start)
    if poly.residual(q) > 1e-9:
        q = poly.x0.copy()  # projection failed; the base pmf is always feasible
    return _run_projected_gradient(poly, q, max_iterations)


def _ladder_refine(poly: MarginalPolytope, q: np.ndarray, f: float, max_iterations: int):
    """Shifted-barrier homotopy pass from a stalled endpoint.

    Boundary-degenerate faces (for example an entire predictor
    configuration emptied out) make the exact objective first-order blind
    and can stall every plain run above the optimum.  The smoothed
    objective sees through them: re-run the same loop along decreasing
    smoothing levels, then hand the endpoint back to an exact pass.
    """
    converged = False
    for _ in range(3):
        qb = q
        for mu in _BARRIER_LADDER:
            qb, _, _ = _run_projected_gradient(poly, qb, 600, barrier_mu=mu)
        qb, fb, conv_b = _run_projected_gradient(poly, qb, max_iterations)
        improved = fb < f - 1e-12
        if fb < f:
            q, f = qb, fb
            converged = converged or conv_b
        if not improved:
            break
    return q, f, converged


def _min_synergy_value(d: JointDistribution, parts: Sequence[PartSpec], m: UnionMeasure) -> float:
    poly = MarginalPolytope(d, parts)
    spread = poly.upper_bound - poly.lower_bound
    if spread <= _CERTIFICATE_SLACK:
        return poly.upper_bound

    starts = [poly.x0]
    if m.restarts >= 2:
        # Projection of the independent coupling: exactly optimal whenever
        # no constraint ties the predictors to the target, and a strong
        # start otherwise.
        px = np.bincount(poly.xidx, weights=poly.x0, minlength=poly.nx)
        py = np.bincount(poly.yidx, weights=poly.x0, minlength=poly.ny)
        indep = px[poly.xidx] * py[poly.yidx]
        total = indep.sum()
        if total > 0:
            starts.append(poly.project(indep / total))

    results = []
    best = math.inf
    best_q = poly.x0
    for start in starts:
        q, value, converged = _descend(poly, start, m.max_iterations)
        results.append((value, converged))
        if value < best:
            best, best_q = value, q
        if best <= poly.lower_bound + _CERTIFICATE_SLACK:
            break  # no feasible point can do better

    # The objective is convex, so converged runs agree up to optimizer
    # noise; the remaining perturbed restarts exist to guard against
    # projection stalls and only run when the first attempts disagree.
    agreed = (
        len(results) >= 2
        and all(c for _, c in results)
        and max(v for v, _ in results) - min(v for v, _ in results) < 0.1 * m.tolerance
    )
    certified = best <= poly.lower_bound + _CERTIFICATE_SLACK
    if not (agreed or certified):
        seeds = np.random.SeedSequence(m.seed).spawn(max(m.restarts - len(starts), 0))
        scale = max(poly.x0.max(), 1e-3) * 0.25
        for ss in seeds:
            rng = np.random.Generator(np.random.PCG64(ss))
            noise = rng.standard_normal(poly.x0.shape) * scale
            q, value, converged = _descend(poly, poly.project(poly.x0 + noise), m.max_iterations)
            results.append((value, converged))
            if value < best:
                best, best_q = value, q
            if best <= poly.lower_bound + _CERTIFICATE_SLACK:
                break

    agreed = (
        len(results) >= 2
        and all(c for _, c in results)
        and max(v for v, _ in results) - min(v for v, _ in results) < 0.1 * m.tolerance
    )
    if best > poly.lower_bound + _CERTIFICATE_SLACK and not agreed:
        # Degenerate boundary faces can stall every plain run; let the
        # barrier homotopy have the final word.
        _, value, converged = _ladder_refine(poly, best_q, best, m.max_iterations)
        if value < best:
            best = value
            results.append((value, converged))

    if not any(c for _, c in results):
        raise UnionConvergenceError(
            f"minimum-synergy optimizer failed to converge after "
            f"{m.max_iterations} x {m.restarts} iterations (best bound {best!r})",
            best_value=best,
        )
    return float(min(max(best, poly.lower_bound - m.tolerance), poly.upper_bound + m.tolerance))


def _max_single_mi_value(d: JointDistribution, parts: Sequence[PartSpec]) -> float:
    return max(part_mutual_information(d, p) for p in parts)


@lru_cache(maxsize=65536)
def _union_information_cached(
    m: UnionMeasure, d: JointDistribution, family: PartFamily
) -> float:
    family.validate(d.n_predictors, allow_full=True)
    if m.kind is MeasureKind.MAX_SINGLE_MI:
        return _max_single_mi_value(d, family.parts)
    return _min_synergy_value(d, family.parts, m)


def union_information(
    m: UnionMeasure,
    d: JointDistribution,
    family: PartFamily | Iterable[PartSpec],
    target: str | None = None,
) -> float:
    """Union information the family's parts convey about the target, in bits.

    ``target`` defaults to the distribution's own target variable; passing a
    different name re-targets the computation at that column.
    """
    if not isinstance(family, PartFamily):
        family = PartFamily(tuple(family))
    if target is not None and target != d.target:
        d = JointDistribution(d.variables, d.pmf, target=target)
    if d.target is None:
        raise DistributionError("union information needs a target variable")
    return _union_information_cached(m, d, family)


def union_information_uncached(
    m: UnionMeasure, d: JointDistribution, family: PartFamily
) -> float:
    """Cache-bypassing variant used by determinism tests."""
    return _union_information_cached.__wrapped__(m, d, family)


def max_workers() -> int:
    """Parallelism cap from the PID_THREADS environment variable (default 1)."""
    try:
        return max(int(os.environ.get("PID_THREADS", "1")), 1)
    except ValueError:
        return 1


# ---------------------------------------------------------------------------
# Independent oracle (tests only)
# ---------------------------------------------------------------------------

def brute_force_union_oracle(
    d: JointDistribution,
    family: PartFamily | Iterable[PartSpec],
    target: str | None = None,
    n_samples: int = 1000,
    n_polish: int = 8,
    seed: int = 20240901,
) -> float:
    """Upper-bound check on the minimum-synergy value by brute search.

    Samples ``n_samples`` seeded feasible points of the marginal polytope,
    runs local descent from the most promising ones (plus the base pmf
    itself), and returns the best objective value seen.  Convexity of the
    objective makes this an effective two-sided check: the production
    optimizer can never beat the true minimum, and this search closes in
    on it from above.  Deliberately built on a separate stack from the
    production path: SciPy null-space sampling, alternating minimization
    against the product reference with iterative proportional fitting for
    the marginal constraints, and an SLSQP polish on small instances.

    Restricted to bases with at most 64 support outcomes.
    """
    import scipy.linalg
    import scipy.optimize

    if not isinstance(family, PartFamily):
        family = PartFamily(tuple(family))
    if target is not None and target != d.target:
        d = JointDistribution(d.variables, d.pmf, target=target)
    if len(d.pmf) > 64:
        raise ValueError(f"oracle guarded at support <= 64, got {len(d.pmf)}")
    family.validate(d.n_predictors, allow_full=True)

    preds = d.predictor_indices
    t = d.target_index
    cells = list(iter_product(*d.alphabets))

    # Marginal tables recomputed from scratch, including zero rows.
    part_positions = [[preds[i] for i in p.member_indices] for p in family.parts]
    keyfuncs = [
        (lambda combo, pos=pos: tuple(combo[i] for i in pos) + (combo[t],))
        for pos in part_positions
    ]
    rows = []
    rhs = []
    forced_zero = np.zeros(len(cells), dtype=bool)
    for kf in keyfuncs:
        table: dict[tuple, float] = {}
        for outcome, p in d.pmf.items():
            table[kf(outcome)] = table.get(kf(outcome), 0.0) + p
        keys = sorted({kf(c) for c in cells})
        row_of = {k: i for i, k in enumerate(keys)}
        block = np.zeros((len(keys), len(cells)))
        for c, combo in enumerate(cells):
            k = kf(combo)
            block[row_of[k], c] = 1.0
            if table.get(k, 0.0) == 0.0:
                forced_zero[c] = True
        rows.append(block)
        rhs.extend(table.get(k, 0.0) for k in keys)
    A_full = np.vstack(rows)
    b_full = np.asarray(rhs)

    live = ~forced_zero
    A = A_full[:, live]
    keep_rows = ~(b_full == 0.0)
    A = A[keep_rows]
    b = b_full[keep_rows]
    # Marginal blocks overlap, so rows are linearly dependent; SLSQP wants a
    # full-row-rank equality system.  Keep a maximal independent row subset.
    if A.shape[0] > 1:
        _, _, pivots = scipy.linalg.qr(A.T, pivoting=True, mode="economic")
        rank = np.linalg.matrix_rank(A)
        keep = np.sort(pivots[:rank])
        A = A[keep]
        b = b[keep]

    index_of_cell = {c: i for i, c in enumerate(cells)}
    x_full = np.zeros(len(cells))
    for outcome, p in d.pmf.items():
        x_full[index_of_cell[outcome]] = p
    x0 = x_full[live]

    xkeys: dict[tuple, int] = {}
    ykeys: dict[str, int] = {}
    xidx, yidx = [], []
    for combo, alive in zip(cells, live):
        if not alive:
            continue
        xk = tuple(combo[i] for i in preds)
        xidx.append(xkeys.setdefault(xk, len(xkeys)))
        yidx.append(ykeys.setdefault(combo[t], len(ykeys)))
    xidx = np.asarray(xidx, dtype=np.intp)
    yidx = np.asarray(yidx, dtype=np.intp)
    nx, ny = len(xkeys), len(ykeys)
    dim = x0.size

    def objective(q: np.ndarray) -> float:
        qc = np.maximum(q, 0.0)
        qx = np.bincount(xidx, weights=qc, minlength=nx)
        qy = np.bincount(yidx, weights=qc, minlength=ny)
        return _neg_plogp(qx) + _neg_plogp(qy) - _neg_plogp(qc)

    def objective_and_grad(q: np.ndarray):
        eps = 1e-18
        qc = np.maximum(q, eps)
        qx = np.bincount(xidx, weights=qc, minlength=nx)
        qy = np.bincount(yidx, weights=qc, minlength=ny)
        val = _neg_plogp(qx) + _neg_plogp(qy) - _neg_plogp(qc)
        grad = (
            np.log2(qc) - np.log2(np.maximum(qx, eps))[xidx]
            - np.log2(np.maximum(qy, eps))[yidx]
        ) - 1.0 / _LN2
        return val, grad

    # Constraint blocks in gather form for iterative proportional fitting.
    ipf_blocks = []
    for kf in keyfuncs:
        table: dict[tuple, float] = {}
        for outcome, p in d.pmf.items():
            table[kf(outcome)] = table.get(kf(outcome), 0.0) + p
        keys = sorted(k for k in table)
        row_of = {k: i for i, k in enumerate(keys)}
        rows_idx = []
        for combo, alive in zip(cells, live):
            if alive:
                rows_idx.append(row_of[kf(combo)])
        ipf_blocks.append(
            (np.asarray(rows_idx, dtype=np.intp), np.asarray([table[k] for k in keys]))
        )
    py_cell = np.asarray([d.project(d.target_selector())[(c[t],)] for c, a in zip(cells, live) if a])

    def alternating_descent(start: np.ndarray, max_outer: int = 400) -> np.ndarray:
        """Minimize the objective by alternating the product reference and
        an I-projection (iterative proportional fitting) onto the marginals."""
        q = np.maximum(start, 0.0) + 1e-13
        q /= q.sum()
        prev = math.inf
        for _ in range(max_outer):
            rx = np.bincount(xidx, weights=q, minlength=nx)
            qn = rx[xidx] * py_cell
            for _ in range(300):
                worst = 0.0
                for rows_idx, bvals in ipf_blocks:
                    marg = np.bincount(rows_idx, weights=qn, minlength=bvals.size)
                    qn *= (bvals / np.maximum(marg, 1e-300))[rows_idx]
                    worst = max(worst, float(np.abs(marg - bvals).max()))
                if worst < 1e-12:
                    break
            val = objective(qn)
            q = qn
            if prev - val < 1e-13:
                break
            prev = val
        return q

    nullity = scipy.linalg.null_space(A) if A.size else np.eye(dim)
    best = objective(x0)
    starts = [x0]

    if nullity.size and nullity.shape[1] > 0:
        rng = np.random.Generator(np.random.PCG64(seed))
        k = nullity.shape[1]
        z = rng.standard_normal((n_samples, k)) * (0.5 / math.sqrt(k))
        raw = x0[None, :] + z @ nullity.T
        # Shrink each ray toward the feasible base point until nonnegative.
        with np.errstate(divide="ignore", invalid="ignore"):
            ratios = np.where(raw < 0.0, x0[None, :] / (x0[None, :] - raw), 1.0)
        tmax = np.clip(np.nanmin(ratios, axis=1), 0.0, 1.0) * 0.999
        samples = x0[None, :] + tmax[:, None] * (raw - x0[None, :])
        np.maximum(samples, 0.0, out=samples)

        sx = samples @ _group_matrix(xidx, nx)
        sy = samples @ _group_matrix(yidx, ny)
        vals = (
            _neg_plogp_rows(sx) + _neg_plogp_rows(sy) - _neg_plogp_rows(samples)
        )
        order = np.argsort(vals)
        starts.extend(samples[i] for i in order[: max(n_polish - 1, 1)])
        best = min(best, float(vals.min()))

    descended = []
    for start in starts:
        q = alternating_descent(start)
        feas = max(
            float(np.abs(np.bincount(ri, weights=q, minlength=bv.size) - bv).max())
            for ri, bv in ipf_blocks
        )
        if feas < 1e-8:
            descended.append(q)
            best = min(best, objective(q))

    if dim <= 200:
        polish_starts = starts[:1] + descended[:2]
        for start in polish_starts:
            res = scipy.optimize.minimize(
                objective_and_grad,
                start,
                jac=True,
                method="SLSQP",
                constraints=[
                    {"type": "eq", "fun": lambda q: A @ q - b, "jac": lambda q: A}
                ],
                bounds=[(0.0, 1.0)] * dim,
                options={"ftol": 1e-14, "maxiter": 400},
            )
            if res.x is not None:
                feas = np.abs(A @ res.x - b).max() if A.size else 0.0
                if feas < 1e-8:
                    best = min(best, objective(res.x))
    return float(best)


def _group_matrix(idx: np.ndarray, n: int) -> np.ndarray:
    g = np.zeros((idx.size, n))
    g[np.arange(idx.size), idx] = 1.0
    return g


def _neg_plogp_rows(m: np.ndarray) -> np.ndarray:
    with np.errstate(divide="ignore", invalid="ignore"):
        terms = np.where(m > 0.0, m * np.log2(np.maximum(m, 1e-300)), 0.0)
    return -terms.sum(axis=1)


# ---------------------------------------------------------------------------
# Property checker
# ---------------------------------------------------------------------------

@dataclass
class AxiomResult:
    axiom: str
    worst_violation: float = 0.0
    n_cases: int = 0
    worst_case: str = ""

    def record(self, violation: float, description: str) -> None:
        self.n_cases += 1
        if violation > self.worst_violation:
            self.worst_violation = violation
            self.worst_case = description

    def passed(self, tol: float) -> bool:
        return self.worst_violation <= tol


@dataclass
class AxiomReport:
    tolerance: float
    results: dict[str, AxiomResult] = field(default_factory=dict)

    AXIOMS = ("GP", "Eq", "M0", "S0", "SR", "UB")

    def result(self, axiom: str) -> AxiomResult:
        return self.results.setdefault(axiom, AxiomResult(axiom))

    @property
    def all_passed(self) -> bool:
        return all(r.passed(self.tolerance) for r in self.results.values())

    def to_dict(self) -> dict:
        return {
            "tolerance": self.tolerance,
            "all_passed": self.all_passed,
            "axioms": {
                name: {
                    "passed": r.passed(self.tolerance),
                    "worst_violation": r.worst_violation,
                    "cases": r.n_cases,
                    "worst_case": r.worst_case,
                }
                for name, r in ((a, self.results[a]) for a in self.AXIOMS if a in self.results)
            },
        }


def _relabel_map(symbols: Sequence[str], salt: str) -> dict[str, str]:
    rotated = list(symbols[1:]) + [symbols[0]]
    return {s: f"{r}{salt}" for s, r in zip(symbols, rotated)}


def check_axioms(
    m: UnionMeasure, suite: Iterable[tuple[JointDistribution, PartFamily]]
) -> AxiomReport:
    """Numerically verify the union-information property list on a suite.

    Each suite entry is an input distribution paired with a part family.
    Violations are magnitudes in bits; an axiom passes when its worst
    violation over all applicable cases is within the measure tolerance.
    """
    report = AxiomReport(tolerance=m.tolerance)
    for item_no, (d, family) in enumerate(suite):
        n = d.n_predictors
        family.validate(n)
        label = f"item {item_no}"
        value = union_information(m, d, family)
        whole = whole_mutual_information(d)

        # GP: nonnegative, and zero when the target is constant.
        report.result("GP").record(max(0.0, -value), f"{label}: negative value")
        const_val = union_information(m, d.with_constant_target(), family)
        report.result("GP").record(abs(const_val), f"{label}: constant target")

        # Eq: invariance under relabeling a member variable and the target.
        preds = d.predictor_indices
        member_pos = preds[family.parts[0].member_indices[0]]
        member = d.variables[member_pos]
        relabeled = d.relabeled(member, _relabel_map(d.alphabets[member_pos], "~"))
        report.result("Eq").record(
            abs(union_information(m, relabeled, family) - value),
            f"{label}: relabel {member}",
        )
        tpos = d.target_index
        relabeled_y = d.relabeled(
            d.variables[tpos], _relabel_map(d.alphabets[tpos], "~")
        )
        report.result("Eq").record(
            abs(union_information(m, relabeled_y, family) - value),
            f"{label}: relabel target",
        )

        # M0 equality clause: appending W that is a sub-part of some member.
        wide = next((p for p in family.parts if len(p) >= 2), None)
        if wide is not None:
            w = PartSpec(wide.member_indices[:-1])
            if w not in family.parts:
                extended = PartFamily(family.parts + (w,))
                report.result("M0").record(
                    abs(union_information(m, d, extended) - value),
                    f"{label}: append sub-part",
                )
        # M0 monotonicity clause: appending any part never decreases the value.
        fresh = next((p for p in all_parts(n) if p not in family.parts), None)
        if fresh is not None:
            grown = PartFamily(family.parts + (fresh,))
            report.result("M0").record(
                max(0.0, value - union_information(m, d, grown)),
                f"{label}: append arbitrary part",
            )

        # S0: reordering the family (families are canonically ordered, so
        # this is exact by construction; check it anyway).
        reordered = PartFamily(tuple(reversed(family.parts)))
        report.result("S0").record(
            abs(union_information(m, d, reordered) - value), f"{label}: reorder"
        )

        # SR: a single part's union information is its mutual information.
        first = family.parts[0]
        report.result("SR").record(
            abs(
                union_information(m, d, PartFamily((first,)))
                - part_mutual_information(d, first)
            ),
            f"{label}: single part",
        )

        # UB: never exceeds the whole's mutual information.
        report.result("UB").record(
            max(0.0, value - whole), f"{label}: upper bound"
        )
    return report
