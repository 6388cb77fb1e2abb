"""Order spectral selectors, spectral distance, and sup-norm length functionals.

In the jet chart the selectors of a pair of jet graphs are the extrema of
the generator difference,

    ell_plus = max (f1 - f0),   ell_minus = min (f1 - f0),

and the induced spectral distance max(ell_plus, -ell_minus) equals the sup
norm of the difference.  The chart makes these formulas global, so no
smallness of the generators is enforced here; the sup-norm length of a
piecewise-linear path and the partition-refinement length of the induced
metric agree exactly on such paths.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .config import EQUALITY_TOL, VALUE_CLUSTER_TOL
from .errors import DimensionMismatch, MalformedPath, ViolationReport
from .fourier import FourierFunction, extremum, sup_norm
from .jets import ChordSpectrum, JetLegendrian, chord_spectrum, pointwise_leq, reeb_translate
from .paths import IsotopyPath


@dataclass(frozen=True)
class SelectorReport:
    """Selector pair with the induced distance and spectrum membership."""

    ell_plus: float
    ell_minus: float
    d_spec: float
    plus_in_spectrum: bool
    minus_in_spectrum: bool
    spectrum: ChordSpectrum | None = None

    @property
    def in_spectrum(self) -> bool:
        return self.plus_in_spectrum and self.minus_in_spectrum


def selectors(
    l1: JetLegendrian,
    l0: JetLegendrian,
    membership_tol: float = VALUE_CLUSTER_TOL,
    with_spectrum: bool = True,
) -> SelectorReport:
    """Spectral selectors of an ordered pair of jet graphs.

    ell_plus/ell_minus are the extrema of the generator difference; the
    membership flags record whether they land in the root-found Reeb-chord
    spectrum within membership_tol.
    """
    if l1.domain != l0.domain:
        raise DimensionMismatch("selectors of Legendrians over different bases")
    diff = l1.generator - l0.generator
    ell_plus = extremum(diff, "max").value
    ell_minus = extremum(diff, "min").value
    d = max(ell_plus, -ell_minus)
    if with_spectrum:
        spec = chord_spectrum(l1, l0)
        plus_in = spec.contains(ell_plus, membership_tol)
        minus_in = spec.contains(ell_minus, membership_tol)
    else:
        spec, plus_in, minus_in = None, True, True
    return SelectorReport(
        ell_plus=ell_plus,
        ell_minus=ell_minus,
        d_spec=d,
        plus_in_spectrum=plus_in,
        minus_in_spectrum=minus_in,
        spectrum=spec,
    )


def spectral_distance(l1: JetLegendrian, l0: JetLegendrian) -> float:
    """max(ell_plus, -ell_minus) without the spectrum bookkeeping."""
    r = selectors(l1, l0, with_spectrum=False)
    return r.d_spec


def sch_length(path: IsotopyPath) -> float:
    """Sup-norm length of a piecewise-linear path.

    The generating Hamiltonian is constant on each segment, so the time
    integral of its sup norm collapses to the sum of segment sup norms,
    independent of the time parametrization.
    """
    if not isinstance(path, IsotopyPath):
        raise MalformedPath("sch_length expects an IsotopyPath")
    return float(sum(sup_norm(d) for d in path.segment_deltas()))


@dataclass(frozen=True)
class MetricLengthReport:
    value: float
    depth: int
    refinement_gap: float
    converged: bool

    @property
    def non_convergent(self) -> bool:
        return not self.converged


def metric_length(
    path: IsotopyPath,
    metric: str = "spec",
    tol: float = 1e-9,
    max_depth: int = 12,
) -> MetricLengthReport:
    """Length as a supremum of partition sums under dyadic refinement.

    Partitions refine the knot partition (each knot interval is split in
    halves), so each sub-interval stays inside one linear segment; the
    partition sums then telescope and the iteration stabilizes immediately.
    Both metric choices evaluate to the sup norm of the coefficient
    difference in this chart: the straight segment realizes the sup-norm
    infimum, so the path-infimum distance agrees with the flat one.
    """
    if metric not in ("spec", "sch"):
        raise ValueError("metric must be 'spec' or 'sch'")

    def partition_sum(splits: int) -> float:
        total = 0.0
        for k in range(path.n_segments):
            a, b = path.knots[k], path.knots[k + 1]
            prev = a
            for i in range(1, splits + 1):
                cur = b if i == splits else a + (i / splits) * (b - a)
                total += sup_norm(cur - prev)
                prev = cur
        return total

    prev_sum = partition_sum(1)
    depth = 0
    gap = float("inf")
    while depth < max_depth:
        depth += 1
        cur_sum = partition_sum(2**depth)
        gap = abs(cur_sum - prev_sum)
        prev_sum = max(prev_sum, cur_sum)
        if gap < tol:
            return MetricLengthReport(prev_sum, depth, gap, True)
    return MetricLengthReport(prev_sum, depth, gap, False)


@dataclass(frozen=True)
class HamiltonianBounds:
    """The chain  int min H <= ell_minus <= ell_plus <= int max H."""

    int_min_h: float
    ell_minus: float
    ell_plus: float
    int_max_h: float

    def as_tuple(self) -> tuple[float, float, float, float]:
        return (self.int_min_h, self.ell_minus, self.ell_plus, self.int_max_h)

    def worst_slack(self) -> float:
        return min(
            self.ell_minus - self.int_min_h,
            self.ell_plus - self.ell_minus,
            self.int_max_h - self.ell_plus,
        )


def hamiltonian_bounds_check(path: IsotopyPath, slack: float = EQUALITY_TOL) -> HamiltonianBounds:
    """Selector bounds by the time integrals of the Hamiltonian extrema.

    For piecewise-linear paths the integrals are the sums of the signed
    segment extrema.  The chain must hold; a violation beyond the slack is
    an implementation bug and raises ViolationReport.
    """
    deltas = path.segment_deltas()
    int_min = float(sum(extremum(d, "min").value for d in deltas))
    int_max = float(sum(extremum(d, "max").value for d in deltas))
    total = path.knots[-1] - path.knots[0]
    ell_minus = extremum(total, "min").value
    ell_plus = extremum(total, "max").value
    report = HamiltonianBounds(int_min, ell_minus, ell_plus, int_max)
    if report.worst_slack() < -slack:
        raise ViolationReport(
            f"selector bound chain violated: {report.as_tuple()} (slack {report.worst_slack():.3e})"
        )
    return report


# ---------------------------------------------------------------------------
# axiom suite
# ---------------------------------------------------------------------------


@dataclass
class AxiomResult:
    name: str
    checks: int = 0
    failures: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def record(self, ok: bool, detail: str) -> None:
        self.checks += 1
        if not ok and len(self.failures) < 8:
            self.failures.append(detail)
        elif not ok:
            self.failures[-1] = "... more failures suppressed"


@dataclass
class AxiomSuiteReport:
    results: list[AxiomResult]
    sample_size: int
    tolerance: float
    membership_tolerance: float

    @property
    def all_pass(self) -> bool:
        return all(r.passed for r in self.results)

    def by_name(self, name: str) -> AxiomResult:
        for r in self.results:
            if r.name == name:
                return r
        raise KeyError(name)

    def to_json_dict(self) -> dict:
        return {
            "sample_size": self.sample_size,
            "tolerance": self.tolerance,
            "membership_tolerance": self.membership_tolerance,
            "all_pass": self.all_pass,
            "axioms": {
                r.name: {"pass": r.passed, "checks": r.checks, "failures": r.failures}
                for r in self.results
            },
        }


def _coeff_gap(f: FourierFunction, g: FourierFunction) -> float:
    d = max(f.degree, g.degree)
    return float(np.max(np.abs(f.pad_to_degree(d).coeffs - g.pad_to_degree(d).coeffs)))


def axiom_suite(
    sample: Sequence[JetLegendrian],
    tol: float = EQUALITY_TOL,
    membership_tol: float = VALUE_CLUSTER_TOL,
) -> AxiomSuiteReport:
    """Check the selector axioms over all pairs and triples of the sample.

    Covered: normalization at the diagonal, the Reeb shift identity,
    monotonicity along constructed comparable pairs, both triangle
    inequalities, Poincare duality, non-degeneracy of the induced distance,
    and spectrality against root-found chord spectra.  Failures are
    collected per axiom, never raised.
    """
    if not sample:
        raise ValueError("sample must be nonempty")
    n = len(sample)
    gens = [l.generator for l in sample]

    lp = np.empty((n, n))
    lm = np.empty((n, n))
    for i in range(n):
        for j in range(n):
            diff = gens[i] - gens[j]
            lp[i, j] = extremum(diff, "max").value
            lm[i, j] = extremum(diff, "min").value

    normalization = AxiomResult("normalization")
    reeb_shift = AxiomResult("reeb_shift")
    monotonicity = AxiomResult("monotonicity")
    triangle_plus = AxiomResult("triangle_plus")
    triangle_minus = AxiomResult("triangle_minus")
    duality = AxiomResult("poincare_duality")
    non_degeneracy = AxiomResult("non_degeneracy")
    spectrality = AxiomResult("spectrality")

    for i in range(n):
        ok = abs(lp[i, i]) <= tol and abs(lm[i, i]) <= tol
        normalization.record(ok, f"ell_pm({i},{i}) = ({lp[i,i]:.3e}, {lm[i,i]:.3e})")

    shift = 0.37
    for i in range(n):
        for j in range(n):
            shifted = reeb_translate(sample[i], shift)
            d = shifted.generator - gens[j]
            sp = extremum(d, "max").value
            sm = extremum(d, "min").value
            ok = abs(sp - (shift + lp[i, j])) <= tol and abs(sm - (shift + lm[i, j])) <= tol
            reeb_shift.record(ok, f"shift identity failed at pair ({i},{j})")

    # comparable pairs: raise sample[j] by ell_plus(i, j) so it dominates sample[i]
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            upper = reeb_translate(sample[j], lp[i, j] + 1e-15)
            if not pointwise_leq(sample[i], upper, boundary=tol):
                monotonicity.record(False, f"constructed pair ({i},{j}) not comparable")
                continue
            for k in (0, (i + j) % n):
                du = upper.generator - gens[k]
                up_p = extremum(du, "max").value
                up_m = extremum(du, "min").value
                ok = lp[i, k] <= up_p + tol and lm[i, k] <= up_m + tol
                monotonicity.record(ok, f"monotonicity failed at ({i},{j}) vs {k}")

    for i in range(n):
        for j in range(n):
            for k in range(n):
                ok = lp[i, k] <= lp[i, j] + lp[j, k] + tol
                triangle_plus.record(ok, f"ell_plus triangle failed at ({i},{j},{k})")
                ok = lm[i, k] >= lm[i, j] + lm[j, k] - tol
                triangle_minus.record(ok, f"ell_minus triangle failed at ({i},{j},{k})")

    for i in range(n):
        for j in range(n):
            ok = abs(lp[i, j] + lm[j, i]) <= tol
            duality.record(ok, f"duality failed at ({i},{j})")

    for i in range(n):
        for j in range(n):
            d = max(lp[i, j], -lm[i, j])
            if d <= tol:
                gap = _coeff_gap(gens[i], gens[j])
                non_degeneracy.record(
                    gap <= 2.0 * tol + 1e-12,
                    f"d_spec({i},{j}) = {d:.3e} but coefficient gap {gap:.3e}",
                )
            else:
                non_degeneracy.record(True, "")

    for i in range(n):
        for j in range(i, n):
            spec = chord_spectrum(sample[i], sample[j])
            ok = spec.contains(lp[i, j], membership_tol) and spec.contains(lm[i, j], membership_tol)
            spectrality.record(ok, f"ell_pm({i},{j}) not in spectrum at tol {membership_tol:.1e}")

    return AxiomSuiteReport(
        results=[
            normalization,
            reeb_shift,
            monotonicity,
            triangle_plus,
            triangle_minus,
            duality,
            non_degeneracy,
            spectrality,
        ],
        sample_size=n,
        tolerance=tol,
        membership_tolerance=membership_tol,
    )


# ---------------------------------------------------------------------------
# CSV export
# ---------------------------------------------------------------------------

SELECTOR_CSV_COLUMNS = ("case_id", "ell_plus", "ell_minus", "d_spec", "in_spectrum")


def selector_csv(cases: Iterable[tuple[str, SelectorReport]]) -> str:
    """Render (case_id, report) pairs as CSV with the documented columns."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(SELECTOR_CSV_COLUMNS)
    for case_id, r in cases:
        writer.writerow([case_id, repr(r.ell_plus), repr(r.ell_minus), repr(r.d_spec), r.in_spectrum])
    return buf.getvalue()
