"""One-jet-space model: jet-graph Legendrians, Reeb chords, pointwise order.

The ambient space is the 1-jet space of the base manifold with contact form
dz - p.dq.  A Legendrian here is the graph of the 1-jet of a generating
function f, i.e. the set {(q, df(q), f(q))}; the Reeb flow translates the z
coordinate, and a Reeb chord between two jet graphs over the point q has
length f1(q) - f0(q) with both slopes agreeing, so chord lengths are exactly
the critical values of the generator difference.
"""

from __future__ import annotations

from dataclasses import dataclass

from .config import ORDER_BOUNDARY_TOL, VALUE_CLUSTER_TOL
from .errors import DimensionMismatch
from .fourier import CriticalSet, DomainDescriptor, FourierFunction, critical_set, extremum


@dataclass(frozen=True)
class JetLegendrian:
    """Graph of the 1-jet of a generating function.

    Two jet graphs are equal iff their generators are (the map from
    functions to jet graphs is injective).
    """

    generator: FourierFunction

    @property
    def domain(self) -> DomainDescriptor:
        return self.generator.domain

    def __eq__(self, other) -> bool:
        if not isinstance(other, JetLegendrian):
            return NotImplemented
        return self.generator == other.generator

    __hash__ = None


def zero_section(domain: DomainDescriptor | None = None) -> JetLegendrian:
    from .fourier import CIRCLE

    return JetLegendrian(FourierFunction.zero(domain if domain is not None else CIRCLE))


@dataclass(frozen=True)
class ChordSpectrum:
    """Sorted Reeb-chord lengths between two jet graphs (units: Reeb time)."""

    lengths: tuple[float, ...]
    source: CriticalSet

    @property
    def plateau(self) -> bool:
        return self.source.plateau

    def contains(self, value: float, tol: float | None = None) -> bool:
        t = self.source.tolerance if tol is None else tol
        return any(abs(value - v) <= t for v in self.lengths)


def reeb_translate(legendrian: JetLegendrian, t: float) -> JetLegendrian:
    """Push a jet graph along the Reeb flow for time t (z-translation)."""
    return JetLegendrian(legendrian.generator + float(t))


def chord_spectrum(
    l1: JetLegendrian, l0: JetLegendrian, tol: float = VALUE_CLUSTER_TOL
) -> ChordSpectrum:
    """Reeb-chord lengths from l0 to l1: critical values of f1 - f0."""
    if l1.domain != l0.domain:
        raise DimensionMismatch("chord spectrum of Legendrians over different bases")
    cs = critical_set(l1.generator - l0.generator, tol=tol)
    return ChordSpectrum(lengths=tuple(sorted(cs.values)), source=cs)


@dataclass(frozen=True)
class OrderVerdict:
    """pointwise_leq with its margin; marginal means |max(f1-f0)| is at the
    comparison boundary."""

    leq: bool
    margin: float
    marginal: bool


def pointwise_leq_detailed(
    l1: JetLegendrian, l0: JetLegendrian, boundary: float = ORDER_BOUNDARY_TOL
) -> OrderVerdict:
    if l1.domain != l0.domain:
        raise DimensionMismatch("order comparison of Legendrians over different bases")
    m = extremum(l1.generator - l0.generator, "max").value
    return OrderVerdict(leq=m <= boundary, margin=m, marginal=abs(m) <= boundary)


def pointwise_leq(
    l1: JetLegendrian, l0: JetLegendrian, boundary: float = ORDER_BOUNDARY_TOL
) -> bool:
    """Chart realization of the partial order: true iff f1 <= f0 everywhere.

    For jet graphs the global order relation is exactly the pointwise order
    of the generators, so the comparison reduces to one extremum.
    """
    return pointwise_leq_detailed(l1, l0, boundary).leq
