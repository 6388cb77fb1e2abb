"""Truncated Fourier models of smooth functions on the circle and 2-torus.

A function is stored as complex Fourier coefficients ``c[k]`` (circle) or
``c[k1, k2]`` (torus) with indices running over ``-D..D`` and the Hermitian
symmetry ``c[-k] = conj(c[k])``, so every represented function is real,
exactly 1-periodic in each coordinate, and differentiable term by term.
The truncation degree bounds the oscillation, which is what makes
scan-plus-Newton extraction of extrema and critical values reliable.

Coordinates live on [0, 1) with period 1 in every axis.  All values are
immutable after construction and every operation here is a pure function.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Literal, NamedTuple, Sequence

import numpy as np
from scipy.signal import convolve2d

from .config import (
    DEFAULT_CIRCLE_SCAN,
    DEFAULT_TORUS_SCAN,
    HESSIAN_DEGENERACY_TOL,
    NEWTON_MAX_ITER,
    NEWTON_RESIDUAL,
    PLATEAU_FRACTION,
    PLATEAU_POINT_TOL,
    POINT_CLUSTER_TOL,
    VALUE_CLUSTER_TOL,
)
from .errors import DimensionMismatch

TWO_PI = 2.0 * np.pi


@dataclass(frozen=True)
class DomainDescriptor:
    """Closed manifold the functions live on: S1 or the 2-torus.

    Coordinates are taken mod 1; the period is exactly 1 in every axis.
    """

    kind: str

    def __post_init__(self) -> None:
        if self.kind not in ("S1", "T2"):
            raise ValueError(f"unknown domain kind {self.kind!r}")

    @property
    def ndim(self) -> int:
        return 1 if self.kind == "S1" else 2


CIRCLE = DomainDescriptor("S1")
TORUS2 = DomainDescriptor("T2")


def _hermitian_project(c: np.ndarray) -> np.ndarray:
    """Average c with its conjugate reversal; exact when already Hermitian."""
    rev = np.conj(c[::-1] if c.ndim == 1 else c[::-1, ::-1])
    return 0.5 * (c + rev)


class FourierFunction:
    """Real-valued truncated Fourier series on S1 or T2.

    The circle series of degree D is
        f(q) = a0 + sum_{k=1..D} a_k cos(2 pi k q) + b_k sin(2 pi k q)
    stored as ``c[k] = (a_k - i b_k) / 2`` with ``c[-k] = conj(c[k])``.
    The torus series is the analogous double sum stored as a (2D+1)^2
    complex array.  Derivatives multiply coefficients by ``2 pi i k`` and
    are therefore exact; no finite differences appear anywhere.
    """

    __slots__ = ("domain", "coeffs")

    def __init__(self, domain: DomainDescriptor, coeffs) -> None:
        c = np.asarray(coeffs, dtype=complex)
        if c.ndim != domain.ndim:
            raise DimensionMismatch(
                f"coefficient array of rank {c.ndim} for domain {domain.kind}"
            )
        if any(n % 2 == 0 for n in c.shape):
            raise ValueError("coefficient arrays must have odd length 2D+1 per axis")
        if domain.kind == "T2" and c.shape[0] != c.shape[1]:
            raise ValueError("torus coefficient array must be square")
        if not np.all(np.isfinite(c.view(float))):
            raise ValueError("coefficients must be finite")
        c = _hermitian_project(c)
        c.flags.writeable = False
        object.__setattr__(self, "domain", domain)
        object.__setattr__(self, "coeffs", c)

    def __setattr__(self, name, value):  # immutable
        raise AttributeError("FourierFunction is immutable")

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, domain: DomainDescriptor = CIRCLE) -> "FourierFunction":
        shape = (1,) * domain.ndim
        return cls(domain, np.zeros(shape, dtype=complex))

    @classmethod
    def constant(cls, value: float, domain: DomainDescriptor = CIRCLE) -> "FourierFunction":
        shape = (1,) * domain.ndim
        c = np.full(shape, complex(value))
        return cls(domain, c)

    @classmethod
    def from_circle_coeffs(cls, a0: float, cos: Sequence[float] = (), sin: Sequence[float] = ()) -> "FourierFunction":
        a = np.asarray(cos, dtype=float)
        b = np.asarray(sin, dtype=float)
        d = max(len(a), len(b))
        a = np.pad(a, (0, d - len(a)))
        b = np.pad(b, (0, d - len(b)))
        c = np.zeros(2 * d + 1, dtype=complex)
        c[d] = a0
        c[d + 1 :] = 0.5 * (a - 1j * b)
        c[:d] = np.conj(c[d + 1 :][::-1])
        return cls(CIRCLE, c)

    @classmethod
    def from_torus_coeffs(cls, a0, cc, cs=None, sc=None, ss=None) -> "FourierFunction":
        cc = np.atleast_2d(np.asarray(cc, dtype=float))
        n = cc.shape[0]
        if cc.shape != (n, n):
            raise ValueError("cc block must be square")
        blocks = []
        for blk in (cs, sc, ss):
            blk = np.zeros((n, n)) if blk is None else np.asarray(blk, dtype=float)
            if blk.shape != (n, n):
                raise ValueError("cs/sc/ss blocks must match the cc shape")
            blocks.append(blk)
        cs, sc, ss = blocks
        d = n - 1
        a0 = float(a0) + float(cc[0, 0])  # fold any constant stored in cc
        c = np.zeros((2 * d + 1, 2 * d + 1), dtype=complex)
        ctr = d
        c[ctr, ctr] = a0
        for k1 in range(0, d + 1):
            for k2 in range(0, d + 1):
                if k1 == 0 and k2 == 0:
                    continue
                if k1 == 0:
                    # cos(2 pi k2 q2) and sin(2 pi k2 q2) terms
                    val = 0.5 * (cc[0, k2] - 1j * cs[0, k2])
                    c[ctr, ctr + k2] += val
                    c[ctr, ctr - k2] += np.conj(val)
                elif k2 == 0:
                    val = 0.5 * (cc[k1, 0] - 1j * sc[k1, 0])
                    c[ctr + k1, ctr] += val
                    c[ctr - k1, ctr] += np.conj(val)
                else:
                    p = 0.25 * ((cc[k1, k2] - ss[k1, k2]) - 1j * (cs[k1, k2] + sc[k1, k2]))
                    q = 0.25 * ((cc[k1, k2] + ss[k1, k2]) + 1j * (cs[k1, k2] - sc[k1, k2]))
                    c[ctr + k1, ctr + k2] += p
                    c[ctr - k1, ctr - k2] += np.conj(p)
                    c[ctr + k1, ctr - k2] += q
                    c[ctr - k1, ctr + k2] += np.conj(q)
        return cls(TORUS2, c)

    # -- structure ---------------------------------------------------------

    @property
    def degree(self) -> int:
        return (self.coeffs.shape[0] - 1) // 2

    @property
    def mean_value(self) -> float:
        ctr = (self.degree,) * self.domain.ndim
        return float(self.coeffs[ctr].real)

    def circle_cos_sin(self) -> tuple[float, np.ndarray, np.ndarray]:
        """Real (a0, cos, sin) coefficient view; circle functions only."""
        if self.domain.kind != "S1":
            raise DimensionMismatch("circle_cos_sin on a torus function")
        d = self.degree
        pos = self.coeffs[d + 1 :]
        return self.mean_value, 2.0 * pos.real, -2.0 * pos.imag

    def torus_blocks(self) -> tuple[float, np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
        """Real (a0, cc, cs, sc, ss) blocks of shape (D+1, D+1)."""
        if self.domain.kind != "T2":
            raise DimensionMismatch("torus_blocks on a circle function")
        d = self.degree
        ctr = d
        cc = np.zeros((d + 1, d + 1))
        cs = np.zeros((d + 1, d + 1))
        sc = np.zeros((d + 1, d + 1))
        ss = np.zeros((d + 1, d + 1))
        c = self.coeffs
        for k2 in range(1, d + 1):
            v = c[ctr, ctr + k2]
            cc[0, k2] = 2.0 * v.real
            cs[0, k2] = -2.0 * v.imag
        for k1 in range(1, d + 1):
            v = c[ctr + k1, ctr]
            cc[k1, 0] = 2.0 * v.real
            sc[k1, 0] = -2.0 * v.imag
            for k2 in range(1, d + 1):
                p = c[ctr + k1, ctr + k2]
                q = c[ctr + k1, ctr - k2]
                cc[k1, k2] = 2.0 * (p.real + q.real)
                ss[k1, k2] = 2.0 * (q.real - p.real)
                cs[k1, k2] = 2.0 * (q.imag - p.imag)
                sc[k1, k2] = -2.0 * (p.imag + q.imag)
        return self.mean_value, cc, cs, sc, ss

    def pad_to_degree(self, d: int) -> "FourierFunction":
        cur = self.degree
        if d < cur:
            raise ValueError("cannot pad to a smaller degree")
        if d == cur:
            return self
        w = d - cur
        pad = ((w, w),) * self.domain.ndim
        return FourierFunction(self.domain, np.pad(self.coeffs, pad))

    def __eq__(self, other) -> bool:
        if not isinstance(other, FourierFunction):
            return NotImplemented
        if self.domain != other.domain:
            return False
        d = max(self.degree, other.degree)
        a = self.pad_to_degree(d).coeffs
        b = other.pad_to_degree(d).coeffs
        return bool(np.array_equal(a, b))

    __hash__ = None

    def __repr__(self) -> str:
        return f"FourierFunction({self.domain.kind}, degree={self.degree})"

    # -- arithmetic (exact on coefficients) --------------------------------

    def _binary(self, other, op):
        if isinstance(other, FourierFunction):
            if other.domain != self.domain:
                raise DimensionMismatch("domain mismatch in arithmetic")
            d = max(self.degree, other.degree)
            return FourierFunction(
                self.domain, op(self.pad_to_degree(d).coeffs, other.pad_to_degree(d).coeffs)
            )
        if isinstance(other, (int, float, np.integer, np.floating)):
            c = np.array(self.coeffs)
            ctr = (self.degree,) * self.domain.ndim
            c[ctr] = op(c[ctr], complex(other))
            return FourierFunction(self.domain, c)
        return NotImplemented

    def __add__(self, other):
        return self._binary(other, lambda x, y: x + y)

    __radd__ = __add__

    def __sub__(self, other):
        return self._binary(other, lambda x, y: x - y)

    def __rsub__(self, other):
        return (-self).__add__(other)

    def __neg__(self):
        return FourierFunction(self.domain, -self.coeffs)

    def __mul__(self, scalar):
        if not isinstance(scalar, (int, float, np.integer, np.floating)):
            return NotImplemented
        return FourierFunction(self.domain, self.coeffs * float(scalar))

    __rmul__ = __mul__

    def multiply(self, other: "FourierFunction") -> "FourierFunction":
        """Exact series product; the degree adds (used by oracle code paths)."""
        if other.domain != self.domain:
            raise DimensionMismatch("domain mismatch in multiply")
        if self.domain.kind == "S1":
            c = np.convolve(self.coeffs, other.coeffs)
        else:
            c = convolve2d(self.coeffs, other.coeffs)
        return FourierFunction(self.domain, c)

    # -- calculus ----------------------------------------------------------

    def derivative(self, axis: int = 0) -> "FourierFunction":
        """Analytic partial derivative along the given coordinate axis."""
        if not 0 <= axis < self.domain.ndim:
            raise DimensionMismatch(f"axis {axis} for domain {self.domain.kind}")
        d = self.degree
        k = np.arange(-d, d + 1)
        factor = TWO_PI * 1j * k
        if self.domain.ndim == 1:
            return FourierFunction(self.domain, self.coeffs * factor)
        if axis == 0:
            return FourierFunction(self.domain, self.coeffs * factor[:, None])
        return FourierFunction(self.domain, self.coeffs * factor[None, :])

    def gradient(self) -> tuple["FourierFunction", ...]:
        return tuple(self.derivative(axis) for axis in range(self.domain.ndim))

    # -- evaluation --------------------------------------------------------

    def __call__(self, x):
        if self.domain.kind == "S1":
            xs = np.asarray(x, dtype=float)
            if xs.ndim > 1:
                raise DimensionMismatch("circle points must be scalars or 1-d arrays")
            scalar = xs.ndim == 0
            vals = self._eval_circle(np.atleast_1d(xs))
            return float(vals[0]) if scalar else vals
        pts = np.asarray(x, dtype=float)
        if pts.shape == (2,):
            return float(self._eval_torus(pts[None, :])[0])
        if pts.ndim == 2 and pts.shape[1] == 2:
            return self._eval_torus(pts)
        raise DimensionMismatch("torus points must have shape (2,) or (m, 2)")

    def _eval_circle(self, x: np.ndarray) -> np.ndarray:
        a0, a, b = self.circle_cos_sin()
        d = self.degree
        if d == 0:
            return np.full(x.shape, a0)
        ang = TWO_PI * np.mod(x, 1.0)[:, None] * np.arange(1, d + 1)[None, :]
        return a0 + np.cos(ang) @ a + np.sin(ang) @ b

    def _eval_torus(self, pts: np.ndarray) -> np.ndarray:
        d = self.degree
        k = np.arange(-d, d + 1)
        e1 = np.exp(TWO_PI * 1j * np.mod(pts[:, 0], 1.0)[:, None] * k[None, :])
        e2 = np.exp(TWO_PI * 1j * np.mod(pts[:, 1], 1.0)[:, None] * k[None, :])
        return np.einsum("mi,ij,mj->m", e1, self.coeffs, e2).real

    def values_on_grid(self, n: int) -> np.ndarray:
        """Values at the uniform grid (i/n) — (n,) on S1, (n, n) on T2."""
        if self.domain.kind == "S1":
            a0, a, b = self.circle_cos_sin()
            if self.degree == 0:
                return np.full(n, a0)
            cos_t, sin_t = _circle_tables(n, self.degree)
            return a0 + cos_t @ a + sin_t @ b
        e = _torus_tables(n, self.degree)
        return (e @ self.coeffs @ e.T).real


@lru_cache(maxsize=64)
def _circle_tables(n: int, degree: int) -> tuple[np.ndarray, np.ndarray]:
    ang = TWO_PI * (np.arange(n) / n)[:, None] * np.arange(1, degree + 1)[None, :]
    c, s = np.cos(ang), np.sin(ang)
    c.flags.writeable = False
    s.flags.writeable = False
    return c, s


@lru_cache(maxsize=64)
def _torus_tables(n: int, degree: int) -> np.ndarray:
    k = np.arange(-degree, degree + 1)
    e = np.exp(TWO_PI * 1j * (np.arange(n) / n)[:, None] * k[None, :])
    e.flags.writeable = False
    return e


def grid_points(n: int) -> np.ndarray:
    return np.arange(n) / n


# ---------------------------------------------------------------------------
# evaluation / extrema / critical sets
# ---------------------------------------------------------------------------

Mode = Literal["max", "min"]


class Extremum(NamedTuple):
    value: float
    point: tuple[float, ...]


@dataclass(frozen=True)
class CriticalSet:
    """Refined critical points and clustered critical values.

    points hold coordinates with |grad f| at or below point_tolerance after
    Newton refinement; values are deduplicated at the clustering tolerance
    and always contain the global extremum values.  plateau flags a
    non-isolated critical locus (reported once through its value).
    """

    points: tuple[tuple[float, ...], ...]
    values: tuple[float, ...]
    tolerance: float
    plateau: bool = False
    point_tolerance: float = NEWTON_RESIDUAL


def evaluate(f: FourierFunction, x) -> float:
    """Exact truncated-series value at a point of the domain (mod 1)."""
    return f(x)


def _circle_scan_size(f: FourierFunction, n: int | None) -> int:
    if n is not None:
        return n
    # never undersample relative to the degree
    return max(DEFAULT_CIRCLE_SCAN, 8 * f.degree)


def _newton_circle(
    fp: FourierFunction,
    fpp: FourierFunction,
    x0: float,
    halfwidth: float,
    residual: float = NEWTON_RESIDUAL,
) -> float | None:
    """Newton for fp(x) = 0 from x0, confined to |x - x0| <= halfwidth."""
    x = x0
    for _ in range(NEWTON_MAX_ITER):
        g = fp(x)
        if abs(g) <= residual:
            return x
        h = fpp(x)
        if h == 0.0:
            return None
        step = g / h
        x_new = x - step
        if abs(x_new - x0) > halfwidth:
            return None
        x = x_new
    return x if abs(fp(x)) <= residual else None


def _ternary_max_circle(f: FourierFunction, lo: float, hi: float, iters: int = 80) -> float:
    invphi = (np.sqrt(5.0) - 1.0) / 2.0
    a, b = lo, hi
    c = b - invphi * (b - a)
    d = a + invphi * (b - a)
    fc, fd = f(c), f(d)
    for _ in range(iters):
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - invphi * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + invphi * (b - a)
            fd = f(d)
    return 0.5 * (a + b)


def _circular_lt(p: np.ndarray, q: np.ndarray) -> bool:
    """Lexicographic order on canonical mod-1 coordinates."""
    for a, b in zip(p, q):
        if a < b - 1e-15:
            return True
        if a > b + 1e-15:
            return False
    return False


def _canonical_mod1(x: np.ndarray) -> np.ndarray:
    y = np.mod(x, 1.0)
    # points that round back to 1.0 belong at 0
    y[np.abs(y - 1.0) < 1e-12] = 0.0
    return y


def _dedupe_points(points: np.ndarray, tol: float = POINT_CLUSTER_TOL) -> np.ndarray:
    """Merge points closer than tol in the circular sup metric."""
    if len(points) == 0:
        return points
    kept: list[np.ndarray] = []
    for p in points:
        dup = False
        for q in kept:
            d = np.abs(p - q)
            if np.max(np.minimum(d, 1.0 - d)) <= tol:
                dup = True
                break
        if not dup:
            kept.append(p)
    order = sorted(range(len(kept)), key=lambda i: tuple(kept[i]))
    return np.array([kept[i] for i in order])


def _attaining_set_circle(f: FourierFunction, n: int, tol: float) -> tuple[float, np.ndarray]:
    vals = f.values_on_grid(n)
    vmax = float(vals.max())
    vmin = float(vals.min())
    if vmax - vmin <= 1e-12:  # constant: attained everywhere
        return vmax, np.array([[0.0]])
    fp = f.derivative()
    fpp = fp.derivative()
    dq = 1.0 / n
    dscale = float(np.max(np.abs(fp.values_on_grid(n))))
    residual = NEWTON_RESIDUAL * max(1.0, dscale)
    # margin below which a grid point may still hide the global max
    curv = float(np.max(np.abs(fpp.values_on_grid(n))))
    margin = 10.0 * tol + 0.5 * curv * dq * dq
    mask = vals >= vmax - margin
    # one seed per contiguous run (circular)
    idx = np.flatnonzero(mask)
    runs: list[list[int]] = []
    for i in idx:
        if runs and i == runs[-1][-1] + 1:
            runs[-1].append(i)
        else:
            runs.append([i])
    if len(runs) > 1 and runs[0][0] == 0 and runs[-1][-1] == n - 1:
        runs[0] = runs.pop() + runs[0]
    seeds = [max(run, key=lambda i: vals[i]) / n for run in runs]
    refined = []
    best = vmax
    for s in seeds:
        r = _newton_circle(fp, fpp, s, 2.0 * dq, residual)
        if r is None:
            r = _ternary_max_circle(f, s - dq, s + dq)
        v = f(r)
        refined.append((v, r))
        best = max(best, v)
    pts = np.array([[r] for v, r in refined if v >= best - tol])
    pts = _dedupe_points(_canonical_mod1(pts))
    return best, pts


def _newton_torus(grad, hess, seeds: np.ndarray, residual: float) -> np.ndarray:
    """Vectorized 2-d Newton for grad f = 0; returns converged points only."""
    pts = np.array(seeds, dtype=float)
    alive = np.ones(len(pts), dtype=bool)
    g1, g2 = grad
    h11, h12, h22 = hess
    for _ in range(NEWTON_MAX_ITER):
        if not alive.any():
            break
        p = pts[alive]
        a = g1(p)
        b = g2(p)
        done = np.maximum(np.abs(a), np.abs(b)) <= residual
        if done.all():
            break
        m11 = h11(p)
        m12 = h12(p)
        m22 = h22(p)
        det = m11 * m22 - m12 * m12
        bad = np.abs(det) < 1e-30
        det[bad] = 1.0
        dx = (m22 * a - m12 * b) / det
        dy = (m11 * b - m12 * a) / det
        dx[bad | done] = 0.0
        dy[bad | done] = 0.0
        # basin guard: overly long steps mark the seed as non-convergent
        overshoot = np.maximum(np.abs(dx), np.abs(dy)) > 0.1
        step = np.stack([dx, dy], axis=1)
        step[overshoot] = 0.0
        pts[alive] = p - step
        drop = bad | overshoot
        if drop.any():
            alive_idx = np.flatnonzero(alive)
            alive[alive_idx[drop]] = False
    g = np.maximum(np.abs(g1(pts)), np.abs(g2(pts)))
    return pts[g <= residual]


def _torus_derivative_pack(f: FourierFunction):
    f1, f2 = f.gradient()
    return (f1, f2), (f1.derivative(0), f1.derivative(1), f2.derivative(1))


def _attaining_set_torus(f: FourierFunction, n: int, tol: float) -> tuple[float, np.ndarray]:
    vals = f.values_on_grid(n)
    vmax = float(vals.max())
    vmin = float(vals.min())
    if vmax - vmin <= 1e-12:
        return vmax, np.array([[0.0, 0.0]])
    grad, hess = _torus_derivative_pack(f)
    dq = 1.0 / n
    gscale = max(float(np.max(np.abs(g.values_on_grid(n)))) for g in grad)
    residual = NEWTON_RESIDUAL * max(1.0, gscale)
    curv = max(float(np.max(np.abs(h.values_on_grid(n)))) for h in hess)
    margin = 10.0 * tol + 2.0 * curv * dq * dq
    mask = vals >= vmax - margin
    local_max = np.ones_like(mask)
    for sx in (-1, 0, 1):
        for sy in (-1, 0, 1):
            if sx == 0 and sy == 0:
                continue
            local_max &= vals >= np.roll(np.roll(vals, sx, axis=0), sy, axis=1)
    seeds_idx = np.argwhere(mask & local_max)
    if len(seeds_idx) == 0:
        seeds_idx = np.argwhere(vals == vmax)
    seeds = seeds_idx / n
    refined = _newton_torus(grad, hess, seeds, residual)
    cand = [(float(f(p)), p) for p in refined]
    cand += [(float(f(s)), s) for s in seeds]  # fallback if Newton lost a basin
    best = max(vmax, max(v for v, _ in cand))
    pts = np.array([p for v, p in cand if v >= best - tol])
    pts = _dedupe_points(_canonical_mod1(pts))
    return best, pts


def attaining_set(
    f: FourierFunction,
    mode: Mode = "max",
    n: int | None = None,
    tol: float = VALUE_CLUSTER_TOL,
) -> tuple[float, np.ndarray]:
    """Global extremum value together with all refined attaining points.

    Points come back sorted lexicographically, canonicalized to [0, 1).
    """
    if mode == "min":
        value, pts = attaining_set(-f, "max", n=n, tol=tol)
        return -value, pts
    if f.domain.kind == "S1":
        return _attaining_set_circle(f, _circle_scan_size(f, n), tol)
    return _attaining_set_torus(f, n if n is not None else DEFAULT_TORUS_SCAN, tol)


def extremum(f: FourierFunction, mode: Mode = "max", n: int | None = None) -> Extremum:
    """Global max or min with an attaining point.

    Uniform scan plus Newton refinement on the derivative; ties are broken
    toward the lexicographically smallest coordinates.
    """
    value, pts = attaining_set(f, mode, n=n)
    return Extremum(value, tuple(float(x) for x in pts[0]))


def sup_norm(f: FourierFunction, n: int | None = None) -> float:
    """max |f| through the signed extremum code path."""
    return max(extremum(f, "max", n=n).value, -extremum(f, "min", n=n).value)


def sup_norm_by_squaring(f: FourierFunction, n: int | None = None) -> float:
    """max |f| as sqrt(max f^2), using the exact series product.

    Independent formula route: the extremum engine runs on the squared
    series (double the degree) instead of on f itself.
    """
    sq = f.multiply(f)
    m = extremum(sq, "max", n=n).value
    return float(np.sqrt(max(m, 0.0)))


def _critical_points_circle(f: FourierFunction, n: int) -> np.ndarray:
    fp = f.derivative()
    fpp = fp.derivative()
    dvals = fp.values_on_grid(n)
    residual = NEWTON_RESIDUAL * max(1.0, float(np.max(np.abs(dvals))))
    dq = 1.0 / n
    xs = grid_points(n)
    roots: list[float] = []
    # sign-change brackets, including the wrap-around interval
    nxt = np.roll(dvals, -1)
    change = (dvals == 0.0) | (np.sign(dvals) != np.sign(nxt))
    for i in np.flatnonzero(change):
        if dvals[i] == 0.0:
            roots.append(xs[i])
            continue
        lo, hi = xs[i], xs[i] + dq
        r = _newton_circle(fp, fpp, 0.5 * (lo + hi), dq, residual)
        if r is None:
            r = _bisect_root(fp, lo, hi)
        if r is not None:
            roots.append(r)
    # tangential zeros: strict local minima of |f'| refined by Newton
    absd = np.abs(dvals)
    local_min = (absd < np.roll(absd, 1)) & (absd <= np.roll(absd, -1))
    for i in np.flatnonzero(local_min):
        if change[i] or change[i - 1]:
            continue
        r = _newton_circle(fp, fpp, xs[i], 2.0 * dq, residual)
        if r is not None:
            roots.append(r)
    if not roots:
        return np.zeros((0, 1))
    return _dedupe_points(_canonical_mod1(np.array(roots)[:, None]))


def _bisect_root(fp: FourierFunction, lo: float, hi: float) -> float | None:
    flo = fp(lo)
    if flo == 0.0:
        return lo
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        fm = fp(mid)
        if abs(fm) <= NEWTON_RESIDUAL or hi - lo < 1e-16:
            return mid
        if np.sign(fm) == np.sign(flo):
            lo, flo = mid, fm
        else:
            hi = mid
    return 0.5 * (lo + hi)


def _critical_points_torus(f: FourierFunction, n: int) -> np.ndarray:
    grad, hess = _torus_derivative_pack(f)
    g1 = grad[0].values_on_grid(n)
    g2 = grad[1].values_on_grid(n)
    gn = np.maximum(np.abs(g1), np.abs(g2))
    residual = NEWTON_RESIDUAL * max(1.0, float(gn.max()))
    local_min = np.ones(gn.shape, dtype=bool)
    for sx in (-1, 0, 1):
        for sy in (-1, 0, 1):
            if sx == 0 and sy == 0:
                continue
            local_min &= gn <= np.roll(np.roll(gn, sx, axis=0), sy, axis=1)
    seeds = np.argwhere(local_min) / n
    refined = _newton_torus(grad, hess, seeds, residual)
    if len(refined) == 0:
        return np.zeros((0, 2))
    return _dedupe_points(_canonical_mod1(refined))


def _cluster_values(values: Iterable[float], tol: float) -> list[float]:
    vs = sorted(values)
    if not vs:
        return []
    clusters: list[list[float]] = [[vs[0]]]
    for v in vs[1:]:
        if v - clusters[-1][-1] <= tol:
            clusters[-1].append(v)
        else:
            clusters.append([v])
    return [float(np.mean(c)) for c in clusters]


def critical_set(
    f: FourierFunction,
    n: int | None = None,
    tol: float = VALUE_CLUSTER_TOL,
) -> CriticalSet:
    """All critical points found at scan resolution, Newton refined.

    Sign-change roots of f' (circle) or simultaneous zeros of the gradient
    (torus) plus tangential zeros; values are clustered at tol and always
    include the global extremum values.  A plateau (more than 1% of scan
    points with |grad f| below the point tolerance) sets the plateau flag
    and contributes its value once.
    """
    if f.domain.kind == "S1":
        scan = _circle_scan_size(f, n)
        dnorm = np.abs(f.derivative().values_on_grid(scan))
    else:
        scan = n if n is not None else DEFAULT_TORUS_SCAN
        g1, g2 = f.gradient()
        dnorm = np.maximum(
            np.abs(g1.values_on_grid(scan)), np.abs(g2.values_on_grid(scan))
        )
    plateau = float(np.mean(dnorm < PLATEAU_POINT_TOL)) > PLATEAU_FRACTION
    point_tol = NEWTON_RESIDUAL * max(1.0, float(np.max(dnorm)))
    if float(np.max(dnorm)) < PLATEAU_POINT_TOL:
        # constant function: every point is critical, report the value once
        origin = (0.0,) * f.domain.ndim
        return CriticalSet(
            points=(origin,),
            values=(f.mean_value,),
            tolerance=tol,
            plateau=True,
            point_tolerance=point_tol,
        )
    if f.domain.kind == "S1":
        pts = _critical_points_circle(f, scan)
    else:
        pts = _critical_points_torus(f, scan)
    values = [float(f(p if f.domain.ndim > 1 else p[0])) for p in pts]
    vmax, pmax = extremum(f, "max", n=n)
    vmin, pmin = extremum(f, "min", n=n)
    values += [vmax, vmin]
    all_pts = list(pts) + [np.array(pmax), np.array(pmin)]
    pts = _dedupe_points(np.array(all_pts))
    return CriticalSet(
        points=tuple(tuple(float(x) for x in p) for p in pts),
        values=tuple(_cluster_values(values, tol)),
        tolerance=tol,
        plateau=plateau,
        point_tolerance=point_tol,
    )


def is_morse(f: FourierFunction, n: int | None = None) -> bool:
    """True when every detected critical point is nondegenerate.

    Circle: |f''| must exceed the degeneracy threshold at each refined
    critical point; torus: |det Hess f| against the squared threshold.
    Plateaus are degenerate by definition.
    """
    cs = critical_set(f, n=n)
    if cs.plateau:
        return False
    if f.domain.kind == "S1":
        fpp = f.derivative().derivative()
        scan = _circle_scan_size(f, n)
        scale = max(1.0, float(np.max(np.abs(fpp.values_on_grid(scan)))))
        thresh = HESSIAN_DEGENERACY_TOL * scale
        return all(abs(fpp(p[0])) > thresh for p in cs.points)
    _, hess = _torus_derivative_pack(f)
    scan = n if n is not None else DEFAULT_TORUS_SCAN
    scale = max(
        1.0, max(float(np.max(np.abs(h.values_on_grid(scan)))) for h in hess)
    )
    thresh = (HESSIAN_DEGENERACY_TOL * scale) ** 2
    h11, h12, h22 = hess
    for p in cs.points:
        pt = np.array([p])
        det = h11(pt)[0] * h22(pt)[0] - h12(pt)[0] ** 2
        if abs(det) <= thresh:
            return False
    return True
