"""Weighted spaces of entire functions and the Gaussian mollifier.

A_g carries the norm sup_z |f(z)| e^{-g(z)}; its L2 sibling integrates
|f(z)|^2 e^{-g(z)} over the plane.  weighted_sup_norm evaluates the first on
a declared grid, which makes it a lower bound of the true norm; every report
that consumes one says so.  l2_embedding_check tests both directions of the
sup/L2 embedding on a truncated disc,

    ||f||_{A^2_{2g + log(1+|z|^4)}} <= 3 pi ||f||_{A_g}
    ||f||_{A_{h/2}}                <= e^K  ||f||_{A^2_g}

the second under the translation hypothesis g(z+u) <= h(z) + K for |u| <= 1,
which is either supplied or estimated on the grid.

mollify convolves a plateau cutoff of f against the Gaussian kernel
E_j(z) = sqrt(j/pi) exp(-j z^2).  The result is entire, and every derivative
of it is computed by differentiating the kernel, never the data:

    d^p/dz^p exp(-a z^2) = P_p(z) exp(-a z^2),   P_0 = 1,
    P_{p+1} = P_p' - 2 a u P_p

so high orders stay exact up to quadrature.  derivative_seminorm computes the
graded sup

    ||f||^M_{K,m,r} = sup_{j, 0<=k<=m, x in K} |f^(j+k)(x)| / (r^j M_j)

truncated at j <= J_max (default 12).  Closed-form rules differentiate
symbolically; grid data falls back to repeated central differences capped at
the same order.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from numpy.polynomial import polynomial as npp

from .errors import (
    DerivativeOrderExceeded,
    HypothesisNotMet,
    NonPositive,
    OutOfTrustedRange,
    PropertyViolation,
    QuadratureFailure,
)
from .reports import (
    ConditionReport,
    FAILS_TREND,
    HOLDS_TREND,
    INCONCLUSIVE,
    downsample,
    trend_additive,
)
from .sequences import WeightSequence
from .weightfuncs import PreWeightFunction

__all__ = [
    "SampledFunction",
    "derivative_seminorm",
    "disc_grid",
    "l2_embedding_check",
    "mollify",
    "plateau_cutoff",
    "weighted_sup_norm",
]

_KINDS = ("polynomial", "exp", "gaussian", "grid", "mollified")
_J_MAX = 12
_CONV_TOL = 1.0e-8
_GL10 = np.polynomial.legendre.leggauss(10)


def _ramp(x: np.ndarray) -> np.ndarray:
    """Smooth 0->1 ramp on [0, 1] built from exp(-1/x); 0 below, 1 above."""
    x = np.asarray(x, dtype=float)
    out = np.zeros_like(x)
    out[x >= 1.0] = 1.0
    inside = (x > 0.0) & (x < 1.0)
    xi = x[inside]
    a = np.exp(-1.0 / xi)
    b = np.exp(-1.0 / (1.0 - xi))
    out[inside] = a / (a + b)
    return out


def plateau_cutoff(x, k: float) -> np.ndarray:
    """Smooth plateau: 1 on [-k-1, k+1], 0 outside [-k-2, k+2].

    Profile v1, a fixed pair of exp(-1/x) ramps of unit width; versioned so
    mollifier outputs reproduce bit for bit across runs.
    """
    xs = np.asarray(x, dtype=float)
    return _ramp(xs + k + 2.0) * _ramp(k + 2.0 - xs)


@lru_cache(maxsize=512)
def _gauss_deriv_coeffs(a: float, p: int) -> tuple:
    # P_{p+1} = P_p' - 2 a u P_p gives d^p/dz^p e^{-a z^2} = P_p(z) e^{-a z^2}
    c = np.array([1.0])
    for _ in range(p):
        d = npp.polyder(c) if c.size > 1 else np.zeros(1)
        c = npp.polysub(d, 2.0 * a * npp.polymulx(c))
    return tuple(float(v) for v in c)


@dataclass(frozen=True)
class SampledFunction:
    """A function under one of five evaluation rules.

    polynomial  coeffs, ascending
    exp         scale * e^{rate z}
    gaussian    scale * e^{-rate z^2}, rate > 0
    grid        linear interpolation of real-axis samples (no complex z)
    mollified   E_j * (chi f) with chi = plateau_cutoff(., cutoff_k); base,
                cutoff_k, j name the convolution, grid/values cache samples

    The first three and mollified are entire and differentiate exactly (the
    mollified rule by moving the derivative onto the kernel); grid data uses
    central differences capped at order 12.
    """

    kind: str
    coeffs: tuple = ()
    scale: complex = 1.0
    rate: complex = 1.0
    grid: tuple = ()
    values: tuple = ()
    base: "SampledFunction | None" = None
    cutoff_k: float = 0.0
    j: int = 0
    label: str = ""

    def __post_init__(self):
        if self.kind not in _KINDS:
            raise PropertyViolation(f"unknown evaluation rule {self.kind!r}")
        if self.kind == "polynomial":
            if not self.coeffs or not all(np.isfinite(complex(c).real) and np.isfinite(complex(c).imag) for c in self.coeffs):
                raise PropertyViolation("polynomial needs a nonempty tuple of finite coefficients")
        if self.kind in ("exp", "gaussian"):
            for v in (self.scale, self.rate):
                if not (np.isfinite(complex(v).real) and np.isfinite(complex(v).imag)):
                    raise PropertyViolation("scale and rate must be finite")
            if self.kind == "gaussian" and not complex(self.rate).real > 0:
                raise NonPositive("gaussian rate must be positive for real-axis decay")
        if self.grid:
            g = np.asarray(self.grid, dtype=float)
            if g.size != len(self.values):
                raise PropertyViolation("grid and values lengths differ")
            if not np.all(np.isfinite(g)) or not np.all(np.diff(g) > 0):
                raise PropertyViolation("grid must be finite and strictly increasing")
            if not np.all(np.isfinite(np.asarray(self.values, dtype=complex))):
                raise PropertyViolation("samples must be finite")
        if self.kind == "grid" and len(self.grid) < 2:
            raise PropertyViolation("grid rule needs at least two samples")
        if self.kind == "mollified":
            if self.base is None:
                raise PropertyViolation("mollified rule needs a base function")
            if not self.cutoff_k > 0:
                raise NonPositive("cutoff radius must be positive")
            if self.j < 1:
                raise NonPositive("kernel parameter j must be a positive integer")

    # -- constructors ------------------------------------------------------

    @classmethod
    def polynomial(cls, coeffs, label: str = "") -> "SampledFunction":
        """Polynomial with ascending coefficients c_0 + c_1 z + ..."""
        return cls(kind="polynomial", coeffs=tuple(complex(c) if isinstance(c, complex) else float(c) for c in coeffs), label=label)

    @classmethod
    def exponential(cls, rate=1.0, scale=1.0, label: str = "") -> "SampledFunction":
        return cls(kind="exp", rate=rate, scale=scale, label=label)

    @classmethod
    def gaussian(cls, rate, scale=1.0, label: str = "") -> "SampledFunction":
        return cls(kind="gaussian", rate=rate, scale=scale, label=label)

    @classmethod
    def from_grid(cls, grid, values, label: str = "") -> "SampledFunction":
        return cls(kind="grid", grid=tuple(float(x) for x in grid),
                   values=tuple(float(v) for v in values), label=label)

    # -- evaluation --------------------------------------------------------

    def _real_axis_only(self, zs: np.ndarray) -> np.ndarray:
        if np.iscomplexobj(zs):
            if np.any(np.abs(zs.imag) > 0.0):
                raise PropertyViolation("grid samples define a real-axis function")
            zs = zs.real
        xs = np.asarray(zs, dtype=float)
        g0, g1 = self.grid[0], self.grid[-1]
        pad = 1e-12 * max(1.0, abs(g0), abs(g1))
        if np.any(xs < g0 - pad) or np.any(xs > g1 + pad):
            raise OutOfTrustedRange(f"evaluation outside sample hull [{g0:g}, {g1:g}]")
        return xs

    def _eval(self, zs: np.ndarray) -> np.ndarray:
        if self.kind == "polynomial":
            return npp.polyval(zs, np.asarray(self.coeffs))
        if self.kind == "exp":
            return self.scale * np.exp(self.rate * zs)
        if self.kind == "gaussian":
            return self.scale * np.exp(-self.rate * zs * zs)
        if self.kind == "grid":
            xs = self._real_axis_only(zs)
            return np.interp(xs, np.asarray(self.grid), np.asarray(self.values, dtype=float))
        return _conv_deriv(self.base, self.cutoff_k, self.j, zs, 0, _CONV_TOL)[0]

    def __call__(self, z):
        zs = np.asarray(z)
        scalar = zs.ndim == 0
        out = self._eval(zs.reshape(1) if scalar else zs)
        if scalar:
            v = out.reshape(-1)[0]
            return complex(v) if np.iscomplexobj(out) else float(v)
        return out

    def derivative_values(self, x, p: int, tol: float = _CONV_TOL) -> np.ndarray:
        """Values of the p-th derivative on real points x."""
        if p < 0:
            raise PropertyViolation("derivative order must be nonnegative")
        xs = np.atleast_1d(np.asarray(x, dtype=float))
        if p == 0:
            out = self._eval(xs)
            return np.asarray(out)
        if self.kind == "polynomial":
            c = np.asarray(self.coeffs)
            if p >= c.size:
                return np.zeros_like(xs, dtype=c.dtype)
            return npp.polyval(xs, npp.polyder(c, m=p))
        if self.kind == "exp":
            return self.scale * self.rate**p * np.exp(self.rate * xs)
        if self.kind == "gaussian":
            c = np.asarray(_gauss_deriv_coeffs(float(complex(self.rate).real), p))
            return self.scale * npp.polyval(xs, c) * np.exp(-self.rate * xs * xs)
        if self.kind == "mollified":
            return _conv_deriv(self.base, self.cutoff_k, self.j, xs, p, tol)[0]
        # grid rule: repeated second-order central differences
        if p > _J_MAX:
            raise DerivativeOrderExceeded(f"grid data supports orders <= {_J_MAX}, requested {p}")
        g = np.asarray(self.grid)
        v = np.asarray(self.values, dtype=float)
        for _ in range(p):
            v = np.gradient(v, g)
        xs = self._real_axis_only(xs)
        return np.interp(xs, g, v)


# -- mollifier -------------------------------------------------------------


@lru_cache(maxsize=64)
def _conv_nodes(base: SampledFunction, k: float, j: int, level: int, reach: float):
    """Composite GL10 panels whose width resolves the kernel scale 1/sqrt(j).

    The panel range covers supp(chi) plus the kernel reach (where e^{-j y^2}
    underflows), so that polynomials subtracted below integrate against the
    full line up to underflow.  Returns (nodes, weights, weights * chi * f);
    f is only evaluated where chi > 0, so base grids need not extend further.
    """
    pad = math.sqrt(760.0 / j)
    lo, hi = -reach - pad, reach + pad
    h = min(0.5, 0.5 / math.sqrt(j)) / (2.0**level)
    n = int(math.ceil((hi - lo) / h))
    edges = np.linspace(lo, hi, n + 1)
    half = 0.5 * (edges[1] - edges[0])
    mids = 0.5 * (edges[:-1] + edges[1:])
    t = (mids[:, None] + half * _GL10[0][None, :]).ravel()
    w = np.broadcast_to(half * _GL10[1], (n, 10)).ravel().copy()
    chi = plateau_cutoff(t, k)
    idx = chi > 0.0
    bv = np.asarray(base(t[idx]))
    fv = np.zeros(t.size, dtype=bv.dtype if bv.size else float)
    fv[idx] = bv
    return t, w, w * chi * fv


def _conv_deriv(base: SampledFunction, k: float, j: int, zs: np.ndarray,
                p: int, tol: float) -> tuple[np.ndarray, float]:
    """(E_j * chi base)^(p) on zs: quadrature with the differentiated kernel.

    The differentiated kernel carries a j^{p/2} Hermite prefactor, so the
    naive quadrature loses the answer to cancellation once j and p are both
    large.  For p >= 1 on real points the degree-(p-1) Taylor polynomial
    Q_x of f at x, scaled by chi(x), is removed from the data: it integrates
    to exactly zero against E_j^{(p)} over the line.  For polynomial bases
    the split

        chi(t) f(t) - chi(x) Q_x(t)
            = chi(t) [f(t) - Q_x(t)] + [chi(t) - chi(x)] Q_x(t)

    is evaluated with the Taylor remainder f - Q_x expanded analytically in
    powers of t - x, so the data is exactly zero on the plateau and the
    cancellation disappears at every order.  Other closed-form bases use the
    floating-point subtraction (adequate while j^{p/2} eps stays below the
    target), grid bases only the degree-0 version, complex points none.

    Two panel resolutions are compared and refined until they agree to tol
    (relative to the largest value); disagreement after three refinements
    raises QuadratureFailure.
    """
    amp = math.sqrt(j / math.pi)
    c = np.asarray(_gauss_deriv_coeffs(float(j), p))
    flat = np.asarray(zs).ravel()
    if flat.size == 0:
        return np.zeros(np.shape(zs)), 0.0
    reach = float(max(k + 2.0, math.ceil(float(np.max(np.abs(flat))))))
    mode = "plain"
    taylor = chi_x = None
    if p >= 1 and not np.iscomplexobj(flat):
        xr = flat.astype(float)
        chi_x = plateau_cutoff(xr, k)
        if base.kind == "polynomial":
            mode = "exact"
            cf = np.asarray(base.coeffs)
            taylor = np.stack([npp.polyval(xr, npp.polyder(cf, m=i)) / math.factorial(i)
                               if i else npp.polyval(xr, cf) * np.ones_like(xr)
                               for i in range(len(base.coeffs))])
        elif base.kind in ("exp", "gaussian"):
            mode = "subtract"
            deg = p - 1
        elif base.kind == "grid" and (xr.min() < base.grid[0] or xr.max() > base.grid[-1]):
            mode = "plain"
        else:
            mode = "subtract"
            deg = 0
        if mode == "subtract":
            taylor = np.stack([np.asarray(base.derivative_values(xr, i)) / math.factorial(i)
                               for i in range(deg + 1)])
            taylor = taylor * chi_x[None, :]
    prev = None
    for level in range(4):
        t, w, wb = _conv_nodes(base, float(k), int(j), level, reach)
        chi_t = plateau_cutoff(t, k) if mode == "exact" else None
        chunk = max(1, 4_000_000 // max(1, t.size))
        parts = []
        for i0 in range(0, flat.size, chunk):
            x = flat[i0:i0 + chunk]
            y = x[:, None] - t[None, :]
            with np.errstate(over="ignore"):
                kern = npp.polyval(y, c) * np.exp(-j * y * y)
            if mode == "exact":
                u = -y
                b = taylor[:, i0:i0 + chunk]
                d_top = taylor.shape[0] - 1
                qv = np.zeros_like(u)
                for i in range(min(p - 1, d_top), -1, -1):
                    qv = qv * u + b[i][:, None]
                data = (chi_t[None, :] - chi_x[i0:i0 + chunk, None]) * qv
                if d_top >= p:
                    rv = np.zeros_like(u)
                    for i in range(d_top, p - 1, -1):
                        rv = rv * u + b[i][:, None]
                    data = data + chi_t[None, :] * (rv * u**p)
                parts.append((kern * (w[None, :] * data)).sum(axis=1))
            elif mode == "subtract":
                u = -y
                q = np.broadcast_to(taylor[-1, i0:i0 + chunk, None], y.shape).copy()
                for i in range(taylor.shape[0] - 2, -1, -1):
                    q = q * u + taylor[i, i0:i0 + chunk, None]
                parts.append((kern * (wb[None, :] - w[None, :] * q)).sum(axis=1))
            else:
                parts.append((kern * wb).sum(axis=1))
        cur = amp * np.concatenate(parts)
        if prev is not None:
            err = float(np.max(np.abs(cur - prev)))
            scale = max(1.0, float(np.max(np.abs(cur))))
            if err <= tol * scale:
                return cur.reshape(np.shape(zs)), err
        prev = cur
    raise QuadratureFailure(
        f"convolution panels disagree beyond tol={tol:g} at order {p} after 3 refinements"
    )


def mollify(f: SampledFunction, cutoff_k: float, j: int, *,
            grid=None, tol: float = _CONV_TOL) -> SampledFunction:
    """Entire mollification E_j * (chi f), chi the plateau on [-k-1, k+1].

    f must be evaluable on [-k-2, k+2].  The returned function carries the
    convolution rule (so derivatives of any order remain available) plus
    samples on the requested real grid, default 241 uniform points across
    supp(chi).
    """
    if not isinstance(f, SampledFunction):
        raise PropertyViolation("mollify expects a SampledFunction")
    if not cutoff_k > 0:
        raise NonPositive("cutoff radius must be positive")
    if int(j) != j or j < 1:
        raise NonPositive("kernel parameter j must be a positive integer")
    k = float(cutoff_k)
    if f.kind == "grid" and (f.grid[0] > -k - 2.0 or f.grid[-1] < k + 2.0):
        raise OutOfTrustedRange(
            f"grid hull [{f.grid[0]:g}, {f.grid[-1]:g}] does not cover [-{k + 2:g}, {k + 2:g}]"
        )
    xs = np.linspace(-k - 2.0, k + 2.0, 241) if grid is None else np.asarray(grid, dtype=float)
    vals, _ = _conv_deriv(f, k, int(j), xs, 0, tol)
    return SampledFunction(
        kind="mollified", base=f, cutoff_k=k, j=int(j),
        grid=tuple(float(v) for v in xs), values=tuple(float(v) for v in np.real(vals)),
        label=f"mollify({f.label or f.kind}, k={k:g}, j={int(j)})",
    )


# -- norms -----------------------------------------------------------------


def _as_weight_rule(g):
    """Coerce g to a vectorized callable on complex points.

    Weight sequences and pre-weight functions act radially through omega(|z|);
    a plain callable is trusted to accept complex arrays itself.
    """
    if isinstance(g, WeightSequence):
        g = PreWeightFunction.from_sequence(g)
    if isinstance(g, PreWeightFunction):
        pwf = g
        return lambda z: np.asarray(pwf(np.abs(np.asarray(z))), dtype=float)
    if callable(g):
        return lambda z: np.asarray(g(z), dtype=float)
    raise PropertyViolation(f"no weight rule for {type(g).__name__}")


def disc_grid(radius: float, n_r: int = 64, n_theta: int = 64) -> np.ndarray:
    """Deterministic polar grid on the closed disc |z| <= radius, center included."""
    if not radius > 0:
        raise NonPositive("disc radius must be positive")
    if n_r < 1 or n_theta < 1:
        raise PropertyViolation("need at least one radius and one angle")
    r = np.linspace(0.0, radius, n_r + 1)[1:]
    th = np.linspace(0.0, 2.0 * math.pi, n_theta, endpoint=False)
    pts = (r[:, None] * np.exp(1j * th)[None, :]).ravel()
    return np.concatenate([np.zeros(1, dtype=complex), pts])


def weighted_sup_norm(f, g, grid=None, *, trend: bool = False):
    """Grid supremum of |f(z)| e^{-g(z)}: a lower bound of the A_g norm.

    With trend=True also classifies the growth of the running sup across
    radial shells of the grid and returns (norm, ConditionReport); a FAILS
    verdict flags an unbounded trend (the sup keeps climbing with |z|).
    """
    rule = _as_weight_rule(g)
    pts = np.asarray(disc_grid(100.0, 96, 64) if grid is None else grid).ravel()
    pts = pts.astype(complex)
    with np.errstate(over="ignore"):
        vals = np.abs(np.asarray(f(pts))) * np.exp(-rule(pts))
    norm = float(np.max(vals)) if pts.size else 0.0
    if not trend:
        return norm
    if pts.size < 16:
        rep = ConditionReport(
            condition="entire.supnorm.trend", verdict=INCONCLUSIVE,
            witnesses={"norm": norm, "reason": "too few grid points for a radial trend"},
            K=int(pts.size), notes="need at least 16 points to split into shells",
        )
        return norm, rep
    order = np.argsort(np.abs(pts), kind="stable")
    shells = np.array_split(np.log(np.maximum(vals[order], 1e-300)), 16)
    prof = np.maximum.accumulate([float(np.max(s)) for s in shells])
    verdict, diag = trend_additive(prof)
    rep = ConditionReport(
        condition="entire.supnorm.trend", verdict=verdict,
        witnesses={"norm": norm, **diag},
        profile=downsample(list(range(16)), [float(v) for v in prof]),
        K=int(pts.size),
        notes="profile is the log of the running grid sup per radial shell; "
              "grid sups are lower bounds of the true norm",
    )
    return norm, rep


def _disc_l2(f, wrule, radius: float, n_r: int, n_theta: int) -> float:
    """sqrt of int_{|z|<=radius} |f|^2 e^{-w} dA: GL in r, uniform in theta."""
    nodes, weights = np.polynomial.legendre.leggauss(n_r)
    r = 0.5 * radius * (nodes + 1.0)
    wr = 0.5 * radius * weights
    th = np.linspace(0.0, 2.0 * math.pi, n_theta, endpoint=False)
    z = r[:, None] * np.exp(1j * th)[None, :]
    with np.errstate(over="ignore"):
        integ = np.abs(np.asarray(f(z))) ** 2 * np.exp(-wrule(z))
    inner = integ.sum(axis=1) * (2.0 * math.pi / n_theta)
    return float(math.sqrt(max(0.0, float(np.dot(wr * r, inner)))))


def l2_embedding_check(f, g, h=None, K_const: float | None = None, *,
                       radius: float = 50.0, n_r: int = 120, n_theta: int = 128,
                       tol: float = 1e-9) -> ConditionReport:
    """Check the sup/L2 embedding pair on a truncated disc.

    Part one needs no hypothesis.  Part two runs only when h is given; its
    translation constant K is verified on a grid sample when supplied and
    estimated from it otherwise.  All sups and integrals are disc truncations,
    so the margins certify the declared grid only.
    """
    cond = "entire.l2_embedding"
    if not radius > 0 or n_r < 2 or n_theta < 2:
        return ConditionReport(
            condition=cond, verdict=INCONCLUSIVE,
            witnesses={"reason": "degenerate quadrature grid"},
            notes="disc quadrature needs radius > 0 and at least 2 x 2 nodes",
        )
    grule = _as_weight_rule(g)
    nodes, _ = np.polynomial.legendre.leggauss(n_r)
    r = 0.5 * radius * (nodes + 1.0)
    th = np.linspace(0.0, 2.0 * math.pi, n_theta, endpoint=False)
    zpts = np.concatenate([np.zeros(1, dtype=complex),
                           (r[:, None] * np.exp(1j * th)[None, :]).ravel()])
    with np.errstate(over="ignore"):
        fvals = np.abs(np.asarray(f(zpts)))
    sup_g = float(np.max(fvals * np.exp(-grule(zpts))))
    lhs1 = _disc_l2(f, lambda z: 2.0 * grule(z) + np.log1p(np.abs(z) ** 4),
                    radius, n_r, n_theta)
    rhs1 = 3.0 * math.pi * sup_g
    margin1 = rhs1 - lhs1
    wit = {"l2_norm_heavier_weight": lhs1, "sup_norm": sup_g, "margin1": margin1}
    margins = [margin1 / max(1.0, rhs1)]
    k_used = None
    if h is not None:
        hrule = _as_weight_rule(h)
        zs = zpts[:: max(1, zpts.size // 256)]
        us = np.concatenate([np.zeros(1, dtype=complex),
                             np.exp(1j * np.linspace(0, 2 * math.pi, 8, endpoint=False)),
                             0.5 * np.exp(1j * np.linspace(0, 2 * math.pi, 8, endpoint=False))])
        excess = float(np.max(grule(zs[:, None] + us[None, :]) - hrule(zs)[:, None]))
        if K_const is None:
            k_used = max(excess, 0.0)
        else:
            if excess > K_const + 1e-9 * max(1.0, abs(K_const)):
                raise HypothesisNotMet(
                    f"g(z+u) exceeds h(z) + K by {excess - K_const:.3e} on the grid sample"
                )
            k_used = float(K_const)
        sup_h2 = float(np.max(fvals * np.exp(-0.5 * hrule(zpts))))
        rhs2 = math.exp(k_used) * _disc_l2(f, grule, radius, n_r, n_theta)
        margin2 = rhs2 - sup_h2
        wit.update({"sup_norm_half_h": sup_h2, "l2_norm_times_eK": rhs2,
                    "margin2": margin2, "K": k_used,
                    "K_estimated": K_const is None})
        margins.append(margin2 / max(1.0, rhs2))
    verdict = HOLDS_TREND if min(margins) >= -tol else FAILS_TREND
    return ConditionReport(
        condition=cond, verdict=verdict, witnesses=wit, K=n_r * n_theta,
        notes="constants 3*pi and e^K as stated; sup norms are grid lower "
              "bounds and integrals disc truncations, so margins certify the "
              "declared grid only",
    )


# -- graded derivative seminorm ---------------------------------------------


def derivative_seminorm(f: SampledFunction, M: WeightSequence, interval,
                        m: int = 0, r: float = 1.0, *, minus: SampledFunction | None = None,
                        j_max: int = _J_MAX, grid_n: int = 129,
                        tol: float = _CONV_TOL) -> float:
    """sup_{j<=j_max, 0<=k<=m, x in interval} |f^(j+k)(x)| / (r^j M_j).

    interval is (a, b) or a single radius k for [-k, k].  minus subtracts a
    second function before taking absolute values, which is how mollifier
    errors ||f - f_j|| are measured.  The j-truncation makes the result a
    lower bound of the true seminorm.
    """
    if not isinstance(M, WeightSequence):
        raise PropertyViolation("the grading needs a WeightSequence")
    if not r > 0:
        raise NonPositive("radius r must be positive")
    if m < 0 or j_max < 0:
        raise PropertyViolation("orders m and j_max must be nonnegative")
    if np.isscalar(interval):
        a, b = -float(interval), float(interval)
    else:
        a, b = float(interval[0]), float(interval[1])
    if not (np.isfinite(a) and np.isfinite(b) and a <= b):
        raise PropertyViolation("interval must be finite with a <= b")
    j_max = min(int(j_max), M.K)
    p_top = j_max + int(m)
    fns = [fn for fn in (f, minus) if fn is not None]
    if any(fn.kind == "grid" for fn in fns):
        if p_top > _J_MAX:
            raise DerivativeOrderExceeded(
                f"grid data supports orders <= {_J_MAX}, seminorm needs {p_top}"
            )
        gfn = next(fn for fn in fns if fn.kind == "grid")
        gx = np.asarray(gfn.grid)
        if gx[0] > a or gx[-1] < b:
            raise OutOfTrustedRange("sample hull does not cover the interval")
        xs = gx[(gx >= a) & (gx <= b)]
        xs = np.unique(np.concatenate([[a], xs, [b]]))
    else:
        xs = np.linspace(a, b, max(2, int(grid_n))) if a < b else np.array([a])
    sup_abs = np.empty(p_top + 1)
    for p in range(p_top + 1):
        dv = f.derivative_values(xs, p, tol=tol)
        if minus is not None:
            dv = dv - minus.derivative_values(xs, p, tol=tol)
        sup_abs[p] = float(np.max(np.abs(dv)))
    best = 0.0
    log_r = math.log(r)
    for j in range(j_max + 1):
        top = float(np.max(sup_abs[j:j + int(m) + 1]))
        if top > 0.0:
            best = max(best, math.exp(math.log(top) - j * log_r - M.log_M[j]))
    return best
