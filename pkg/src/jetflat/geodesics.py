"""Quasi-autonomy detection, geodesic verification, and the path optimizer.

A piecewise-linear isotopy is quasi-autonomous when one base point attains,
with one fixed sign, the sup norm of every segment difference and is a
critical point of each difference: the lifted point then rides a single
Reeb orbit while the Hamiltonian realizes +/- its sup norm.  That witness
exists exactly when the sup-norm length of the path collapses onto the flat
distance of its endpoints, which is what the checks here cross-validate.

The optimizer is an independent numerical oracle: multi-start subgradient
descent over interior knot coefficients, with the exact endpoint distance
as a certified lower bound.
"""

from __future__ import annotations

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .config import (
    EQUALITY_TOL,
    ORDER_BOUNDARY_TOL,
    WITNESS_DERIV_TOL,
    WITNESS_VALUE_TOL,
    ZERO_SEGMENT_TOL,
    thread_cap,
)
from .errors import EquivalenceViolation, MalformedPath, ViolationReport
from .fourier import (
    DomainDescriptor,
    FourierFunction,
    attaining_set,
    extremum,
    grid_points,
    sup_norm,
    _circle_tables,
)
from .jets import JetLegendrian, pointwise_leq
from .paths import IsotopyPath
from .selectors import sch_length

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class QAWitness:
    """Sign, base point, and per-segment residuals of a quasi-autonomy witness.

    residual_k = epsilon * delta_k(q0) - max|delta_k|; all residuals sit at
    zero up to tolerance when the witness is genuine.
    """

    epsilon: int
    base_point: tuple[float, ...]
    per_knot_residuals: tuple[float, ...]

    def to_json_dict(self) -> dict:
        return {
            "epsilon": self.epsilon,
            "base_point": list(self.base_point),
            "per_knot_residuals": list(self.per_knot_residuals),
        }


def _origin(domain: DomainDescriptor) -> tuple[float, ...]:
    return (0.0,) * domain.ndim


def _eval_at(f: FourierFunction, pt: np.ndarray) -> float:
    return float(f(pt if f.domain.ndim > 1 else float(pt[0])))


def common_attaining_point(
    funcs: Sequence[FourierFunction],
    value_tol: float = WITNESS_VALUE_TOL,
    deriv_tol: float | None = None,
    zero_tol: float = ZERO_SEGMENT_TOL,
):
    """Search for (epsilon, q0) with eps * h_k(q0) = max|h_k| for all k.

    Near-zero functions are skipped; near-constant ones constrain only the
    sign.  Candidates are the refined attaining points of the first
    non-constant function, filtered through the attainment (and optional
    critical-point) conditions of all others; that set is complete because
    a witness must attain every sup norm.  Returns (epsilon, point,
    residuals) with residuals in the original order, or None.
    """
    domain = funcs[0].domain
    info = []
    for h in funcs:
        vmax = extremum(h, "max").value
        vmin = extremum(h, "min").value
        m = max(vmax, -vmin)
        info.append((h, vmax, vmin, m))
    active = [(i, *rec) for i, rec in enumerate(info) if rec[3] > zero_tol]
    if not active:
        return 1, _origin(domain), tuple(0.0 for _ in funcs)
    grads = {i: h.gradient() for i, h, *_ in active}

    def residuals(eps: int, pt: np.ndarray) -> tuple[float, ...]:
        out = []
        for (h, vmax, vmin, m) in info:
            out.append(0.0 if m <= zero_tol else eps * _eval_at(h, pt) - m)
        return tuple(out)

    for eps in (1, -1):
        candidates: np.ndarray | None = None
        sign_ok = True
        for i, h, vmax, vmin, m in active:
            peak = vmax if eps == 1 else -vmin
            if peak < m - value_tol:
                sign_ok = False
                break  # this sign never attains the sup norm on segment i
            if vmax - vmin <= 1e-12:
                continue  # constant: no point constraint
            if candidates is None:
                _, pts = attaining_set(h if eps == 1 else -h, "max", tol=value_tol)
                candidates = pts
                keep = []
                for p in candidates:
                    if deriv_tol is None or all(
                        abs(_eval_at(g, p)) <= deriv_tol for g in grads[i]
                    ):
                        keep.append(p)
                candidates = np.array(keep) if keep else np.zeros((0, domain.ndim))
            else:
                keep = []
                for p in candidates:
                    if eps * _eval_at(h, p) < m - value_tol:
                        continue
                    if deriv_tol is not None and any(
                        abs(_eval_at(g, p)) > deriv_tol for g in grads[i]
                    ):
                        continue
                    keep.append(p)
                candidates = np.array(keep) if keep else np.zeros((0, domain.ndim))
            if len(candidates) == 0:
                sign_ok = False
                break
        if not sign_ok:
            continue
        if candidates is None:
            # only constants: any base point witnesses this sign
            pt = np.array(_origin(domain))
            return eps, _origin(domain), residuals(eps, pt)
        pt = min((tuple(p) for p in candidates))
        return eps, tuple(float(x) for x in pt), residuals(eps, np.array(pt))
    return None


def quasi_autonomy_check(
    path: IsotopyPath,
    value_tol: float = WITNESS_VALUE_TOL,
    deriv_tol: float = WITNESS_DERIV_TOL,
) -> QAWitness | None:
    """Witness search for the whole path; None when no witness exists.

    The witness point must attain every segment's sup norm with a common
    sign and be a critical point of every segment difference, so the slope
    of the lifted point never moves and it stays on one Reeb orbit.
    """
    deltas = path.segment_deltas()
    found = common_attaining_point(deltas, value_tol, deriv_tol)
    if found is None:
        return None
    eps, pt, res = found
    return QAWitness(epsilon=eps, base_point=pt, per_knot_residuals=res)


@dataclass(frozen=True)
class SegmentationReport:
    """Maximal quasi-autonomous windows of a path, in knot indices.

    A window (i, j) covers knots i..j, i.e. segments i..j-1.  The path is a
    geodesic at knot granularity when the windows cover every segment; the
    multi-segment windows additionally show where consecutive segments share
    a witness (the straddling information).
    """

    windows: tuple[tuple[int, int], ...]
    covered: bool
    multi_segment_windows: tuple[tuple[int, int], ...]

    @property
    def geodesic(self) -> bool:
        return self.covered

    def to_json_dict(self) -> dict:
        return {
            "windows": [list(w) for w in self.windows],
            "covered": self.covered,
            "geodesic": self.geodesic,
            "multi_segment_windows": [list(w) for w in self.multi_segment_windows],
        }


def local_quasi_autonomy_check(
    path: IsotopyPath,
    value_tol: float = WITNESS_VALUE_TOL,
    deriv_tol: float = WITNESS_DERIV_TOL,
) -> SegmentationReport:
    """Maximal knot-index windows on which the witness search succeeds.

    Quasi-autonomy is hereditary under shrinking a window, so a two-pointer
    sweep finds all maximal windows.  Single segments always carry a
    witness, hence the cover verdict is about how the windows tile the
    path, and the multi-segment windows carry the sharper information.
    """
    deltas = path.segment_deltas()
    k = len(deltas)

    def window_ok(i: int, j: int) -> bool:
        return common_attaining_point(deltas[i : j + 1], value_tol, deriv_tol) is not None

    # quasi-autonomy is hereditary, so the maximal end j(i) is nondecreasing
    # and comparing against the last stored window suffices
    windows: list[tuple[int, int]] = []
    for i in range(k):
        j = i
        while j + 1 < k and window_ok(i, j + 1):
            j += 1
        win = (i, j + 1)  # knot indices i .. j+1 = segments i .. j
        if not windows or win[1] > windows[-1][1]:
            windows.append(win)
    covered = set()
    for a, b in windows:
        covered.update(range(a, b))
    multi = tuple(w for w in windows if w[1] - w[0] >= 2)
    return SegmentationReport(
        windows=tuple(windows),
        covered=covered == set(range(k)),
        multi_segment_windows=multi,
    )


@dataclass(frozen=True)
class IntegralCriterionReport:
    holds: bool
    lhs: float
    rhs: float
    gap: float
    witness: tuple[int, tuple[float, ...]] | None

    def to_json_dict(self) -> dict:
        return {
            "holds": self.holds,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "gap": self.gap,
            "witness": None
            if self.witness is None
            else {"epsilon": self.witness[0], "point": list(self.witness[1])},
        }


def integral_criterion(
    family: IsotopyPath, tol: float = EQUALITY_TOL
) -> IntegralCriterionReport:
    """Equality of the integrated sup norm with the sup norm of the integral.

    Condition (1): trapezoid(max|g_t|) equals max_x |trapezoid(g_t(x))|;
    condition (2): a single (epsilon, x0) attains eps*g_t(x0) = max|g_t| at
    every sample.  For the sampled data the two are equivalent, and the
    check asserts that; disagreement raises EquivalenceViolation with the
    gap (resolution diagnosis).
    """
    funcs = list(family.knots)
    times = np.asarray(family.times)
    w = np.empty(len(funcs))
    w[0] = 0.5 * (times[1] - times[0])
    w[-1] = 0.5 * (times[-1] - times[-2])
    if len(funcs) > 2:
        w[1:-1] = 0.5 * (times[2:] - times[:-2])
    lhs = float(sum(wi * sup_norm(g) for wi, g in zip(w, funcs)))
    integral = funcs[0] * float(w[0])
    for wi, g in zip(w[1:], funcs[1:]):
        integral = integral + g * float(wi)
    rhs = sup_norm(integral)
    gap = lhs - rhs
    holds = gap <= tol
    found = common_attaining_point(funcs, value_tol=tol)
    witness = None if found is None else (found[0], found[1])
    if holds != (witness is not None):
        raise EquivalenceViolation(
            f"integral criterion mismatch: gap={gap:.3e}, witness={witness}"
        )
    return IntegralCriterionReport(holds=holds, lhs=lhs, rhs=rhs, gap=gap, witness=witness)


@dataclass(frozen=True)
class GeodesicCheckReport:
    length: float
    endpoint_distance: float
    gap: float
    max_subpath_gap: float
    worst_pair: tuple[int, int]
    minimizing: bool
    witness: QAWitness | None
    cross_check_mismatch: bool

    def to_json_dict(self) -> dict:
        return {
            "length": self.length,
            "d_spec": self.endpoint_distance,
            "gap": self.gap,
            "max_subpath_gap": self.max_subpath_gap,
            "worst_pair": list(self.worst_pair),
            "minimizing": self.minimizing,
            "qa_witness": None if self.witness is None else self.witness.to_json_dict(),
            "cross_check_mismatch": self.cross_check_mismatch,
        }


def minimizing_geodesic_check(path: IsotopyPath, tol: float = EQUALITY_TOL) -> GeodesicCheckReport:
    """Gap between path length and endpoint distance, over all knot windows.

    Minimizing means every window's sup-norm length matches the distance of
    its endpoints.  The verdict is cross-checked against the witness search;
    a disagreement is reported (discretization too coarse), not raised.
    """
    deltas = path.segment_deltas()
    seg_len = [sup_norm(d) for d in deltas]
    n = len(path.knots)
    max_gap = 0.0
    worst = (0, n - 1)
    for i in range(n):
        for j in range(i + 1, n):
            length_ij = sum(seg_len[i:j])
            dist_ij = sup_norm(path.knots[j] - path.knots[i])
            g = length_ij - dist_ij
            if g > max_gap:
                max_gap, worst = g, (i, j)
    total_len = float(sum(seg_len))
    dist = sup_norm(path.knots[-1] - path.knots[0])
    witness = quasi_autonomy_check(path)
    minimizing = max_gap <= tol
    mismatch = minimizing != (witness is not None)
    if mismatch:
        log.warning(
            "geodesic cross-check mismatch: max gap %.3e, witness %s", max_gap, witness
        )
    return GeodesicCheckReport(
        length=total_len,
        endpoint_distance=dist,
        gap=total_len - dist,
        max_subpath_gap=max_gap,
        worst_pair=worst,
        minimizing=minimizing,
        witness=witness,
        cross_check_mismatch=mismatch,
    )


def monotone_check(path: IsotopyPath, boundary: float = ORDER_BOUNDARY_TOL) -> bool:
    """Non-negative generating Hamiltonian == monotone for the pointwise order.

    Both formulations are evaluated and must agree exactly; they reduce to
    the same extremum up to an exact sign flip, so a disagreement raises
    EquivalenceViolation.
    """
    deltas = path.segment_deltas()
    by_hamiltonian = all(extremum(d, "min").value >= -boundary for d in deltas)
    by_order = all(
        pointwise_leq(JetLegendrian(a), JetLegendrian(b), boundary)
        for a, b in zip(path.knots[:-1], path.knots[1:])
    )
    if by_hamiltonian != by_order:
        raise EquivalenceViolation(
            f"monotone verdicts disagree: hamiltonian={by_hamiltonian}, order={by_order}"
        )
    return by_hamiltonian


# ---------------------------------------------------------------------------
# coarse-grid model (exhaustive verification oracle)
# ---------------------------------------------------------------------------


def grid_flatness_gap(deltas: np.ndarray) -> float:
    """Sum of segment sup norms minus the endpoint sup norm, on grid samples.

    deltas has shape (segments, grid points); this is the discrete model in
    which the flatness lower bound and its equality case are exact.
    """
    deltas = np.asarray(deltas, dtype=float)
    return float(np.sum(np.max(np.abs(deltas), axis=1)) - np.max(np.abs(deltas.sum(axis=0))))


def grid_quasi_autonomy_witness(
    deltas: np.ndarray, tol: float = 1e-12
) -> tuple[int, int] | None:
    """(epsilon, grid index) witnessing joint sup-norm attainment, or None."""
    deltas = np.asarray(deltas, dtype=float)
    m = np.max(np.abs(deltas), axis=1)
    active = m > tol
    if not active.any():
        return (1, 0)
    d = deltas[active]
    ma = m[active][:, None]
    for eps in (1, -1):
        mask = np.all(eps * d >= ma - tol, axis=0)
        if mask.any():
            return (eps, int(np.argmax(mask)))
    return None


# ---------------------------------------------------------------------------
# variational path optimizer (numerical oracle)
# ---------------------------------------------------------------------------


def to_real_vector(f: FourierFunction) -> np.ndarray:
    """Flatten to the real coefficient vector the optimizer works in."""
    if f.domain.kind == "S1":
        a0, a, b = f.circle_cos_sin()
        return np.concatenate(([a0], a, b))
    a0, cc, cs, sc, ss = f.torus_blocks()
    return np.concatenate(([a0], cc.ravel(), cs.ravel(), sc.ravel(), ss.ravel()))


def from_real_vector(domain: DomainDescriptor, vec: np.ndarray, degree: int) -> FourierFunction:
    vec = np.asarray(vec, dtype=float)
    if domain.kind == "S1":
        return FourierFunction.from_circle_coeffs(
            vec[0], vec[1 : degree + 1], vec[degree + 1 : 2 * degree + 1]
        )
    n = degree + 1
    blocks = vec[1:].reshape(4, n, n)
    return FourierFunction.from_torus_coeffs(vec[0], blocks[0], blocks[1], blocks[2], blocks[3])


def _real_basis(domain: DomainDescriptor, degree: int, n: int) -> tuple[np.ndarray, np.ndarray]:
    """(points, B) with B[i] the basis-function values at grid point i."""
    if domain.kind == "S1":
        cos_t, sin_t = _circle_tables(n, degree) if degree else (np.zeros((n, 0)),) * 2
        pts = grid_points(n)[:, None]
        b = np.hstack([np.ones((n, 1)), cos_t[:, :degree], sin_t[:, :degree]])
        return pts, b
    g = grid_points(n)
    q1, q2 = np.meshgrid(g, g, indexing="ij")
    pts = np.stack([q1.ravel(), q2.ravel()], axis=1)
    k = np.arange(degree + 1)
    c1 = np.cos(2 * np.pi * pts[:, :1] * k)
    s1 = np.sin(2 * np.pi * pts[:, :1] * k)
    c2 = np.cos(2 * np.pi * pts[:, 1:] * k)
    s2 = np.sin(2 * np.pi * pts[:, 1:] * k)
    def outer(u, v):
        return (u[:, :, None] * v[:, None, :]).reshape(len(pts), -1)
    cc = outer(c1, c2)
    cc[:, 0] = 0.0  # the constant slot lives in the leading column
    b = np.hstack([np.ones((len(pts), 1)), cc, outer(c1, s2), outer(s1, c2), outer(s1, s2)])
    return pts, b


@dataclass(frozen=True)
class OptimizeResult:
    path: IsotopyPath
    length: float
    certified_lower: float
    restart_lengths: tuple[float, ...]

    @property
    def gap(self) -> float:
        return self.length - self.certified_lower


def _run_restart(
    x0: np.ndarray,
    basis: np.ndarray,
    interior: slice,
    rng: np.random.Generator,
    sigma: float,
    iters: int,
    step0: float,
) -> np.ndarray:
    """One subgradient-descent restart; returns best iterate found."""
    x = np.array(x0)
    if sigma > 0.0:
        x[interior] += sigma * rng.standard_normal(x[interior].shape)

    def objective_and_argmax(xc):
        v = np.diff(xc, axis=0) @ basis.T  # (segments, n_points)
        idx = np.argmax(np.abs(v), axis=1)
        vals = v[np.arange(len(idx)), idx]
        return float(np.sum(np.abs(vals))), idx, np.sign(vals)

    best_val, _, _ = objective_and_argmax(x)
    best_x = np.array(x)
    for it in range(iters):
        val, idx, signs = objective_and_argmax(x)
        if val < best_val:
            best_val, best_x = val, np.array(x)
        rows = basis[idx] * signs[:, None]  # (segments, dim)
        grad = np.zeros_like(x)
        grad[1:] += rows
        grad[:-1] -= rows
        x[interior] -= (step0 / np.sqrt(it + 1.0)) * grad[interior]
    val, _, _ = objective_and_argmax(x)
    if val < best_val:
        best_x = x
    return best_x


def optimize_path(
    f0: FourierFunction,
    f1: FourierFunction,
    knots: int = 6,
    restarts: int = 16,
    seed: int = 0,
    iters: int = 500,
    sigma: float = 0.2,
    step0: float = 0.1,
    grid: int | None = None,
) -> OptimizeResult:
    """Minimize the sup-norm length over interior knot coefficient vectors.

    Multi-start subgradient descent with the subgradient taken at a point
    attaining each segment's sup norm.  The first start is the straight
    path itself (zero perturbation) so the flat upper bound is always in
    the candidate set; the remaining starts are Gaussian perturbations.
    Every candidate is re-measured with the exact extremum machinery, and
    the result is certified against the endpoint distance lower bound.
    """
    if knots < 2:
        raise MalformedPath("optimize_path needs at least two knots")
    if f0.domain != f1.domain:
        raise MalformedPath("endpoint domains disagree")
    domain = f0.domain
    degree = max(f0.degree, f1.degree)
    if grid is None:
        grid = 4096 if domain.kind == "S1" else 64
    _, basis = _real_basis(domain, degree, grid)

    v0 = to_real_vector(f0.pad_to_degree(degree))
    v1 = to_real_vector(f1.pad_to_degree(degree))
    straight = np.array(
        [v0 + (i / (knots - 1)) * (v1 - v0) for i in range(knots)]
    )
    interior = slice(1, knots - 1)

    def exact_length(xmat: np.ndarray) -> tuple[float, IsotopyPath]:
        fns = [from_real_vector(domain, row, degree) for row in xmat]
        p = IsotopyPath.uniform(fns)
        return sch_length(p), p

    candidates = [straight]
    if knots > 2:
        runs = []
        for r in range(restarts):
            rng = np.random.default_rng([seed, r])
            runs.append((straight, basis, interior, rng, 0.0 if r == 0 else sigma, iters, step0))
        workers = thread_cap()
        if workers > 1:
            with ThreadPoolExecutor(max_workers=workers) as pool:
                candidates += list(pool.map(lambda args: _run_restart(*args), runs))
        else:
            candidates += [_run_restart(*args) for args in runs]

    lower = sup_norm(f1 - f0)
    best_len, best_path = exact_length(candidates[0])
    lengths = [best_len]
    for cand in candidates[1:]:
        length, p = exact_length(cand)
        lengths.append(length)
        if length < best_len:
            best_len, best_path = length, p
    if best_len < lower - 1e-9:
        raise ViolationReport(
            f"optimizer undercut the certified lower bound: {best_len} < {lower}"
        )
    if best_len >= lengths[0] - 1e-12:
        log.info("optimizer found no path shorter than the straight one (length %.6g)", best_len)
    return OptimizeResult(
        path=best_path,
        length=best_len,
        certified_lower=lower,
        restart_lengths=tuple(lengths[1:]),
    )
