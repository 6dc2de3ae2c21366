"""Pre-weight functions and the associated-weight calculus.

A pre-weight function omega is continuous, nondecreasing, vanishes at 0, and
tends to infinity.  Four representations are supported:

* closed forms ("sqrt", "power", "logpower", "linear") evaluated exactly;
* "piecewise": affine in log t between user-supplied knots;
* "from_sequence": the associated weight of a weight sequence M, which is the
  staircase omega_M(t) = sum_{mu_k <= t} log(t/mu_k) = sup_k log(t^k / M_k).

For "from_sequence" the quotient breakpoints are materialized out to
``materialize_factor`` times the stored horizon using the tail model (when
present), and beyond the materialized range the staircase is continued in
closed form through the model (count times log t minus a log-Gamma term).
Without a tail model, evaluation past the last stored quotient raises
OutOfTrustedRange.

The Young conjugate phi*(x) = sup_{y>=0} (x y - omega(e^y)) is exact for the
piecewise-log-linear representations (the supremum sits at a breakpoint; for
integer x and omega = omega_M it reproduces log M_x identically) and is a
bracketed ternary search on the convex profile for closed forms.  Everything
downstream (recovery of M from omega, the weight matrix W^{(x)}_k =
exp(phi*(x k)/x), weighted jet norms) goes through this one code path.
"""

from __future__ import annotations

import math
from fractions import Fraction

import numpy as np
from scipy.special import gammaincc, gammaln, logsumexp

from ._quad import adaptive_gl
from .errors import (
    NoDecayWithinK,
    NotSublinear,
    OutOfTrustedRange,
    PropertyViolation,
    SupAtBoundary,
    TruncationTooShort,
    Unbounded,
)
from .reports import (
    ConditionReport,
    FAILS_TREND,
    HOLDS_TREND,
    INCONCLUSIVE,
    downsample,
    trend_bounded,
)
from .sequences import TailModel, WeightMatrix, WeightSequence

__all__ = [
    "PreWeightFunction",
    "counting_mu",
    "lambda_series",
    "matrix_from_weight_function",
    "omega_assoc",
    "recover_sequence",
    "weight_predicates",
    "young_conjugate",
]

_CLOSED = ("sqrt", "power", "logpower", "linear")
# bracket ceiling for conjugate searches in y = log t; reaching it means the
# slope of phi never catches up with x, i.e. the conjugate is unbounded
_Y_MAX = 1.0e7
_TERNARY_STEPS = 200


def _upper_gamma(s: float, a: float) -> float:
    """Upper incomplete Gamma(s, a) for a >= 0, in linear scale."""
    if a <= 0.0:
        return float(math.gamma(s))
    return float(gammaincc(s, a)) * math.gamma(s)


# ---------------------------------------------------------------------------
# staircase evaluation shared by omega_assoc and the from_sequence PWF


def _staircase(log_bp: np.ndarray, log_bp_M: np.ndarray,
               tail: TailModel | None, lt: np.ndarray) -> np.ndarray:
    """Evaluate the staircase sum_{bp <= t} (log t - bp) at lt = log t.

    log_bp are the log-quotient breakpoints (1-based positions), log_bp_M
    their prefix sums with a leading 0.  Values of lt beyond the last
    breakpoint are continued through the tail model when one is given and
    raise OutOfTrustedRange otherwise.
    """
    n = np.searchsorted(log_bp, lt, side="right")
    horizon = log_bp.size
    with np.errstate(invalid="ignore"):
        out = n * lt - log_bp_M[n]
    out = np.where(n == 0, 0.0, out)
    beyond = (n == horizon) & (lt > log_bp[-1])
    if np.any(beyond):
        if tail is None or tail.p <= 0.0:
            t_bad = float(np.exp(lt[beyond].max()))
            raise OutOfTrustedRange(
                f"t={t_bad:.6g} beyond last quotient exp({log_bp[-1]:.6g}) "
                "and no usable tail model"
            )
        p, log_c = tail.p, tail.log_c
        ltb = lt[beyond]
        with np.errstate(over="ignore"):
            kt = np.maximum(np.floor(np.exp((ltb - log_c) / p)), float(horizon))
        cont = (
            horizon * ltb - log_bp_M[horizon]
            + (kt - horizon) * (ltb - log_c)
            - p * (gammaln(kt + 1.0) - gammaln(horizon + 1.0))
        )
        out = out.astype(float)
        out[beyond] = cont
    return out


def omega_assoc(M: WeightSequence, t):
    """Associated weight omega_M(t) = sup_k log(t^k / M_k), exactly.

    Uses the counting representation on the stored quotients; t past mu_K is
    continued through the tail model or raises OutOfTrustedRange.  Accepts
    scalars or arrays; complex arguments are evaluated radially.
    """
    ts = np.asarray(t)
    if np.iscomplexobj(ts):
        ts = np.abs(ts)
    ts = np.asarray(ts, dtype=float)
    if np.any(ts < 0):
        raise PropertyViolation("omega_assoc needs nonnegative arguments")
    with np.errstate(divide="ignore"):
        lt = np.log(ts)
    out = _staircase(M.log_mu, M.log_M, M.tail, np.atleast_1d(lt))
    return float(out[0]) if np.isscalar(t) or ts.ndim == 0 else out.reshape(ts.shape)


def counting_mu(M: WeightSequence, lam: float) -> int:
    """Number of quotients mu_p <= lam.

    Past mu_K the count is continued through the tail model when present;
    otherwise the count within the stored horizon (that is, K) is returned.
    """
    if lam <= 0:
        raise PropertyViolation("counting_mu needs a positive threshold")
    ll = math.log(lam)
    n = int(np.searchsorted(M.log_mu, ll, side="right"))
    if n == M.K and ll > float(M.log_mu[-1]) and M.tail is not None and M.tail.p > 0:
        n = int(max(math.floor(math.exp((ll - M.tail.log_c) / M.tail.p)), M.K))
    return n


def lambda_series(M: WeightSequence, t: float) -> float:
    """lambda_M(t) = sum_j t^j / M_j, as partial sum plus geometric tail.

    The returned value is an upper bound within the geometric tail width of
    the true series (the ratio of consecutive terms past the horizon is at
    most t/mu_K by monotonicity of the quotients).  Satisfies
    exp(omega_M(t)) <= lambda_M(t) <= 2 exp(omega_M(2t)).
    """
    if t < 0:
        raise PropertyViolation("lambda_series needs a nonnegative argument")
    if t == 0.0:
        return 1.0
    lt = math.log(t)
    log_rho = lt - float(M.log_mu[-1])
    if log_rho >= 0.0:
        raise NoDecayWithinK(
            f"t={t:.6g} >= mu_K={math.exp(float(M.log_mu[-1])):.6g}; "
            "series terms never decay within the horizon"
        )
    ks = np.arange(M.K + 1, dtype=float)
    log_terms = ks * lt - M.log_M
    partial = float(np.exp(logsumexp(log_terms)))
    rho = math.exp(log_rho)
    tail_hi = math.exp(log_terms[-1]) * rho / (1.0 - rho)
    return partial + tail_hi


# ---------------------------------------------------------------------------
# pre-weight functions


class PreWeightFunction:
    """A pre-weight function with a trusted evaluation range.

    ``shift`` implements the normalization max(0, omega - omega(1)) without
    touching the stored representation.  ``sublinear`` is a sampled trend
    flag (True / False / None for inconclusive); omega1 / nonquasianalytic
    start as None and are filled in by weight_predicates.
    """

    __slots__ = (
        "kind", "params", "seq", "shift", "label",
        "log_bp", "log_bp_M", "omega_bp",
        "knot_y", "knot_w",
        "T_max", "sublinear", "log_dominated",
        "omega1", "nonquasianalytic",
    )

    def __init__(self, kind: str, params: dict | None = None,
                 seq: WeightSequence | None = None, shift: float = 0.0,
                 label: str = "", materialize_factor: int = 4):
        self.kind = kind
        self.params = dict(params or {})
        self.seq = seq
        self.shift = float(shift)
        self.omega1 = None
        self.nonquasianalytic = None
        self.log_bp = self.log_bp_M = self.omega_bp = None
        self.knot_y = self.knot_w = None

        if kind == "from_sequence":
            if seq is None:
                raise PropertyViolation("from_sequence needs a WeightSequence")
            ext = seq.log_mu
            if seq.tail is not None and seq.tail.p > 0 and materialize_factor > 1:
                ks = np.arange(seq.K + 1, materialize_factor * seq.K + 1, dtype=float)
                ext = np.maximum.accumulate(
                    np.concatenate([ext, seq.tail.log_mu(ks)])
                )
            self.log_bp = ext
            self.log_bp_M = np.concatenate([[0.0], np.cumsum(ext)])
            js = np.arange(1, ext.size + 1, dtype=float)
            self.omega_bp = np.concatenate([[0.0], js * ext - self.log_bp_M[1:]])
            self.T_max = math.inf if (seq.tail is not None and seq.tail.p > 0) \
                else float(np.exp(ext[-1]))
            self.log_dominated = True
            verdict, _ = trend_bounded(seq.log_root_m, log=True)
            self.sublinear = {HOLDS_TREND: False, FAILS_TREND: True}.get(verdict)
            self.label = label or f"omega[{seq.label}]"
        elif kind == "piecewise":
            ts = np.asarray(self.params["t"], dtype=float)
            ws = np.asarray(self.params["w"], dtype=float)
            if ts.size < 2 or ts.size != ws.size:
                raise PropertyViolation("piecewise needs matching knot arrays, >= 2 knots")
            if np.any(ts <= 0) or np.any(np.diff(ts) <= 0):
                raise PropertyViolation("piecewise knots must be positive and ascending")
            if ws[0] != 0.0 or np.any(np.diff(ws) < 0):
                raise PropertyViolation("piecewise values must start at 0 and be nondecreasing")
            self.knot_y = np.log(ts)
            self.knot_w = ws
            self.T_max = float(ts[-1])
            self.log_dominated = True
            self.sublinear = True  # bounded by (max slope) * log t
            self.label = label or "omega[piecewise]"
        elif kind in _CLOSED:
            if kind == "power":
                a = float(self.params.setdefault("a", 1.0))
                alpha = float(self.params["alpha"])
                if a <= 0 or alpha <= 0:
                    raise PropertyViolation("power form needs a > 0, alpha > 0")
                self.sublinear = alpha < 1.0
            elif kind == "logpower":
                beta = float(self.params["beta"])
                if beta <= 0:
                    raise PropertyViolation("logpower form needs beta > 0")
                self.sublinear = True
            elif kind == "sqrt":
                self.sublinear = True
            else:  # linear
                self.sublinear = False
            self.log_dominated = not (kind == "logpower" and self.params["beta"] <= 1.0)
            self.T_max = math.inf
            self.label = label or f"omega[{kind}]"
        else:
            raise PropertyViolation(f"unknown pre-weight kind {kind!r}")

    # -- evaluation ----------------------------------------------------------

    def _raw_log(self, y: np.ndarray) -> np.ndarray:
        """Unshifted omega(e^y), evaluated natively in y to avoid overflow."""
        if self.kind == "sqrt":
            with np.errstate(over="ignore"):
                return np.exp(0.5 * y)
        if self.kind == "power":
            with np.errstate(over="ignore"):
                return self.params["a"] * np.exp(self.params["alpha"] * y)
        if self.kind == "logpower":
            return np.maximum(y, 0.0) ** self.params["beta"]
        if self.kind == "linear":
            with np.errstate(over="ignore"):
                return np.exp(y)
        if self.kind == "piecewise":
            if np.any(y > self.knot_y[-1] + 1e-9):
                raise OutOfTrustedRange(
                    f"t beyond last knot {self.T_max:.6g} of piecewise pre-weight"
                )
            return np.interp(y, self.knot_y, self.knot_w)
        return _staircase(self.log_bp, self.log_bp_M, self.seq.tail, y)

    def _phi(self, y: np.ndarray) -> np.ndarray:
        """Shifted convex profile phi(y) = max(0, omega(e^y) - shift), y >= 0."""
        raw = self._raw_log(np.asarray(y, dtype=float))
        return np.maximum(raw - self.shift, 0.0)

    def __call__(self, t):
        ts = np.asarray(t)
        if np.iscomplexobj(ts):
            ts = np.abs(ts)
        ts = np.asarray(ts, dtype=float)
        if np.any(ts < 0):
            raise PropertyViolation("pre-weight functions take nonnegative arguments")
        with np.errstate(divide="ignore"):
            y = np.log(np.atleast_1d(ts))
        raw = self._raw_log(y)
        raw = np.where(np.atleast_1d(ts) == 0.0, 0.0, raw)
        out = np.maximum(raw - self.shift, 0.0)
        return float(out[0]) if ts.ndim == 0 else out.reshape(ts.shape)

    def normalized(self) -> "PreWeightFunction":
        """max(0, omega - omega(1)): the same function forced to 0 on [0, 1]."""
        at1 = float(self._raw_log(np.zeros(1))[0])
        if at1 == 0.0 and self.shift == 0.0:
            return self
        if self.kind == "from_sequence":
            # normalized sequences already give omega(1) = 0 and the exact
            # breakpoint conjugate below assumes shift 0
            raise PropertyViolation(
                "normalize the underlying sequence instead of shifting omega_M"
            )
        out = PreWeightFunction.__new__(PreWeightFunction)
        for slot in self.__slots__:
            object.__setattr__(out, slot, getattr(self, slot))
        out.shift = self.shift + at1
        out.label = self.label + "~norm"
        out.omega1 = self.omega1
        out.nonquasianalytic = None
        return out

    def breakpoints(self) -> np.ndarray:
        """Slope-change positions in t, for quadrature splitting."""
        if self.kind == "from_sequence":
            return np.exp(np.unique(self.log_bp))
        if self.kind == "piecewise":
            return np.exp(self.knot_y)
        if self.shift > 0.0:
            if self.kind == "sqrt":
                return np.array([self.shift ** 2])
            if self.kind == "power":
                return np.array([(self.shift / self.params["a"]) ** (1.0 / self.params["alpha"])])
            if self.kind == "logpower":
                return np.array([math.exp(self.shift ** (1.0 / self.params["beta"]))])
            return np.array([self.shift])
        return np.empty(0)

    # -- Young conjugate -----------------------------------------------------

    def young_conjugate(self, x):
        """phi*(x) = sup_{y>=0} (x y - phi(y)) for the shifted profile.

        Exact breakpoint enumeration for the log-linear representations, a
        bracketed ternary search for closed forms.  Raises Unbounded when the
        slope of phi never reaches x, SupAtBoundary when the maximizer would
        sit at or past the trusted horizon.
        """
        xs = np.asarray(x, dtype=float)
        scalar = xs.ndim == 0
        flat = np.atleast_1d(xs).astype(float)
        if np.any(flat < 0):
            raise PropertyViolation("Young conjugate arguments must be nonnegative")
        if self.kind == "from_sequence":
            out = self._conj_staircase(flat)
        elif self.kind == "piecewise":
            out = self._conj_piecewise(flat)
        else:
            out = self._conj_closed(flat)
        return float(out[0]) if scalar else out.reshape(xs.shape)

    def _conj_staircase(self, xs: np.ndarray) -> np.ndarray:
        if self.shift != 0.0:
            raise PropertyViolation("staircase conjugate assumes an unshifted omega_M")
        horizon = self.log_bp.size
        j = np.ceil(xs).astype(np.int64)
        if np.any(j > horizon):
            raise SupAtBoundary(
                f"conjugate argument {float(xs.max()):.6g} needs quotient index "
                f"{int(j.max())} beyond the materialized horizon {horizon}; "
                "increase K or the tail materialization"
            )
        omega1 = float(_staircase(self.log_bp, self.log_bp_M, None, np.zeros(1))[0])
        vals = np.where(
            j == 0,
            -omega1,
            xs * self.log_bp[np.maximum(j, 1) - 1] - self.omega_bp[j],
        )
        # maximizer clamps to y = 0 when the selected breakpoint sits below t=1
        below = (j > 0) & (self.log_bp[np.maximum(j, 1) - 1] <= 0.0)
        return np.where(below, -omega1, vals)

    def _conj_piecewise(self, xs: np.ndarray) -> np.ndarray:
        ys = np.concatenate([[0.0], self.knot_y[self.knot_y > 0]])
        ws = self._phi(ys)
        cand = xs[:, None] * ys[None, :] - ws[None, :]
        arg = np.argmax(cand, axis=1)
        if np.any((arg == ys.size - 1) & (xs > 0)):
            raise SupAtBoundary(
                "conjugate maximizer at the last knot; extend the piecewise range"
            )
        return cand[np.arange(xs.size), arg]

    def _conj_closed(self, xs: np.ndarray) -> np.ndarray:
        # bracket: double y until the mean slope of phi over [y, 2y] exceeds x
        y = np.ones_like(xs)
        done = np.zeros(xs.shape, dtype=bool)
        while True:
            need = ~done
            if not np.any(need):
                break
            yn = y[need]
            ok = self._phi(2.0 * yn) >= xs[need] * yn + self._phi(yn)
            done[need] = ok
            grow = need.copy()
            grow[need] = ~ok
            y[grow] *= 2.0
            if np.any(y[~done] > _Y_MAX):
                bad = float(xs[~done].min())
                raise Unbounded(
                    f"slope of phi never reaches x={bad:.6g}; log t is not o(omega)"
                )
        lo = np.zeros_like(xs)
        hi = 2.0 * y
        for _ in range(_TERNARY_STEPS):
            m1 = lo + (hi - lo) / 3.0
            m2 = hi - (hi - lo) / 3.0
            left = xs * m1 - self._phi(m1) < xs * m2 - self._phi(m2)
            lo = np.where(left, m1, lo)
            hi = np.where(left, hi, m2)
            if float(np.max(hi - lo)) < 1e-13 * max(1.0, float(np.max(hi))):
                break
        ym = 0.5 * (lo + hi)
        return xs * ym - self._phi(ym)

    # -- integrals of omega(t)/t^2 -------------------------------------------

    def integral_against_invt2(self, a: float, b: float) -> float:
        """integral_a^b omega(t)/t^2 dt, exact per log-linear segment.

        Closed forms use their antiderivatives; the staircase and piecewise
        representations sum the per-segment primitive of (n log t - c)/t^2.
        Requires 0 < a <= b within the trusted/materialized range.
        """
        if not (0.0 < a <= b):
            raise PropertyViolation("integral needs 0 < a <= b")
        if a == b:
            return 0.0
        shift = self.shift
        if shift > 0.0 and self.kind in ("from_sequence", "piecewise"):
            raise PropertyViolation("shifted log-linear integrals are not supported")
        if self.kind in _CLOSED:
            t0 = a
            if shift > 0.0:
                kink = float(self.breakpoints()[0])
                if b <= kink:
                    return 0.0
                t0 = max(a, kink)
            val = self._closed_invt2(t0, b)
            if shift > 0.0:
                val -= shift * (1.0 / t0 - 1.0 / b)
            return val
        if self.kind == "piecewise":
            if b > self.T_max * (1 + 1e-12):
                raise OutOfTrustedRange(f"b={b:.6g} beyond last knot {self.T_max:.6g}")
            ys = self.knot_y
            la, lb = math.log(a), math.log(b)
            inner = ys[(ys > la) & (ys < lb)]
            bounds = np.concatenate([[la], inner, [lb]])
            wvals = np.interp(bounds, ys, self.knot_w)
            total = 0.0
            for i in range(bounds.size - 1):
                y0, y1 = bounds[i], bounds[i + 1]
                w0, w1 = wvals[i], wvals[i + 1]
                s = (w1 - w0) / (y1 - y0) if y1 > y0 else 0.0
                c = w0 - s * y0  # omega = s*log t + c on the segment
                g0 = (s * y0 + c + s) * math.exp(-y0)
                g1 = (s * y1 + c + s) * math.exp(-y1)
                total += g0 - g1
            return total
        # from_sequence staircase
        if math.log(b) > float(self.log_bp[-1]) + 1e-9:
            raise OutOfTrustedRange(
                f"b={b:.6g} beyond materialized horizon exp({self.log_bp[-1]:.6g})"
            )
        la, lb = math.log(a), math.log(b)
        i0 = int(np.searchsorted(self.log_bp, la, side="right"))
        i1 = int(np.searchsorted(self.log_bp, lb, side="right"))
        bounds = np.concatenate([[la], self.log_bp[i0:i1], [lb]])
        ns = np.arange(i0, i1 + 1, dtype=float)
        cs = self.log_bp_M[i0:i1 + 1]

        def g(ly, n, c):
            return (n * ly - c + n) * np.exp(-ly)

        return float(np.sum(g(bounds[:-1], ns, cs) - g(bounds[1:], ns, cs)))

    def _closed_invt2(self, a: float, b: float) -> float:
        if self.kind == "sqrt":
            return 2.0 / math.sqrt(a) - 2.0 / math.sqrt(b)
        if self.kind == "power":
            ac, alpha = self.params["a"], self.params["alpha"]
            if alpha == 1.0:
                return ac * math.log(b / a)
            return ac * (b ** (alpha - 1.0) - a ** (alpha - 1.0)) / (alpha - 1.0)
        if self.kind == "linear":
            return math.log(b / a)
        # logpower: integrand vanishes below t = 1
        beta = self.params["beta"]
        lo = max(a, 1.0)
        if b <= lo:
            return 0.0
        hi_term = 0.0 if b == math.inf else _upper_gamma(beta + 1.0, math.log(b))
        return _upper_gamma(beta + 1.0, math.log(lo)) - hi_term

    def tail_integral_interval(self, T: float) -> tuple[float, float]:
        """Enclosure of integral_T^inf omega(t)/t^2 dt.

        Closed sublinear forms give exact values; the staircase gives a
        rigorous lower bound (freeze the count at T) and a model upper bound
        (count continued through the power-law tail, summed by integral
        comparison).  Divergent cases return (inf, inf); an absent tail model
        returns (lower, inf).
        """
        if T <= 0:
            raise PropertyViolation("tail cut T must be positive")
        shift_term = self.shift / T
        if self.kind in _CLOSED:
            if not self.sublinear and self.kind in ("linear",):
                return math.inf, math.inf
            if self.kind == "power" and self.params["alpha"] >= 1.0:
                return math.inf, math.inf
            kink = float(self.breakpoints()[0]) if self.shift > 0 else 0.0
            t0 = max(T, kink)  # integrand vanishes on [T, t0]
            val = max(self._closed_invt2(t0, math.inf) - self.shift / t0, 0.0)
            return val, val
        if self.kind == "piecewise":
            # constant continuation is a lower bound; no growth model above
            w_last = float(self.knot_w[-1]) - self.shift
            return max(w_last, 0.0) / T, math.inf
        # from_sequence
        lT = math.log(T)
        nT = int(np.searchsorted(self.log_bp, lT, side="right"))
        cT = float(self.log_bp_M[nT])
        lo = (nT * lT - cT + nT) / T  # frozen staircase: omega >= nT*log t - cT
        lo = max(lo, 0.0)
        tail = self.seq.tail if self.seq is not None else None
        if tail is None or tail.p <= 1.0:
            hi = math.inf
            if tail is not None and tail.p <= 1.0:
                # quotients grow at most polynomially of degree <= 1: the
                # staircase grows at least linearly and the integral diverges
                return math.inf, math.inf
            return lo, hi
        p, log_c = tail.p, tail.log_c
        horizon = float(self.log_bp.size)
        alpha = 1.0 / p
        a_coef = p * math.exp(-alpha * log_c)
        c0 = -float(self.log_bp_M[-1]) + horizon * (log_c + p * math.log(horizon) - p)
        hi = c0 / T + a_coef * T ** (alpha - 1.0) / (1.0 - alpha)
        hi = max(hi, lo)
        return lo, hi

    def to_dict(self) -> dict:
        d = {"kind": self.kind, "label": self.label, "shift": self.shift,
             "T_max": self.T_max, "sublinear": self.sublinear}
        if self.kind == "from_sequence":
            d["seq"] = self.seq.to_dict()
        elif self.kind == "piecewise":
            d["params"] = {"t": list(map(float, np.exp(self.knot_y))),
                           "w": list(map(float, self.knot_w))}
        else:
            d["params"] = {k: float(v) for k, v in self.params.items()}
        return d

    def __repr__(self) -> str:
        return f"PreWeightFunction({self.label}, kind={self.kind}, T_max={self.T_max:g})"

    # -- constructors ----------------------------------------------------------

    @classmethod
    def from_sequence(cls, seq: WeightSequence, materialize_factor: int = 4,
                      label: str = "") -> "PreWeightFunction":
        return cls("from_sequence", seq=seq, label=label,
                   materialize_factor=materialize_factor)

    @classmethod
    def closed(cls, kind: str, label: str = "", **params) -> "PreWeightFunction":
        if kind not in _CLOSED:
            raise PropertyViolation(f"unknown closed form {kind!r}")
        return cls(kind, params=params, label=label)

    @classmethod
    def piecewise(cls, t, w, label: str = "") -> "PreWeightFunction":
        return cls("piecewise", params={"t": t, "w": w}, label=label)


def young_conjugate(omega: PreWeightFunction, x):
    """Module-level alias for PreWeightFunction.young_conjugate."""
    return omega.young_conjugate(x)


def recover_sequence(omega: PreWeightFunction, k: float, *,
                     log: bool = False) -> float:
    """sup_{t>0} t^k exp(-omega(t)) = exp(phi*(k)); reproduces M_k for omega_M.

    log=True returns log M_k instead; M_k itself leaves the float range
    around k ~ 150 for factorial-type sequences.
    """
    lv = float(omega.young_conjugate(float(k)))
    if log:
        return lv
    with np.errstate(over="ignore"):
        return float(np.exp(lv))


# ---------------------------------------------------------------------------
# the weight matrix of a pre-weight function


def matrix_from_weight_function(omega: PreWeightFunction, xs, K: int,
                                label: str = "") -> WeightMatrix:
    """Weight matrix W^{(x)}_k = exp(phi*(x k)/x) of a normalized pre-weight.

    omega is normalized to vanish on [0, 1] first.  Rows are log-convex by
    convexity of the conjugate and pointwise ordered in x; both are validated
    by the WeightMatrix constructor.
    """
    if omega.sublinear is False:
        raise NotSublinear(f"{omega.label} is not o(t); no associated matrix")
    if K < 8:
        raise TruncationTooShort(f"matrix horizon K={K} too small")
    om0 = omega.normalized()
    ks = np.arange(K + 1, dtype=float)
    rows = []
    for x in xs:
        fx = Fraction(x)
        xf = float(fx)
        if xf <= 0:
            raise PropertyViolation("row parameters must be positive")
        logW = om0.young_conjugate(xf * ks) / xf
        # conjugate convexity makes the quotients nondecreasing up to search
        # noise; the accumulate clamp removes that noise before validation
        log_mu = np.maximum.accumulate(np.diff(logW))
        seq = WeightSequence(
            log_mu,
            label=f"W^({fx})[{omega.label}]",
            tail=TailModel.fit(log_mu),
            kind="omega_row",
            params={"x": str(fx)},
        )
        rows.append((fx, seq))
    return WeightMatrix(rows, label=label or f"Omega[{omega.label}]")


# ---------------------------------------------------------------------------
# predicates


def _omega1_report(omega: PreWeightFunction) -> ConditionReport:
    if omega.kind == "from_sequence":
        t_lo = 2.0 * max(float(np.exp(omega.log_bp[0])), 1.0)
        t_hi = float(np.exp(min(float(omega.log_bp[-1]),
                                math.log(1.0e12)))) / 2.0
    elif omega.kind == "piecewise":
        t_lo, t_hi = 2.0, omega.T_max / 2.0
    else:
        t_lo, t_hi = 2.0, 1.0e8
    if not t_hi > t_lo * 100.0:
        return ConditionReport(
            condition=f"omega1[{omega.label}]", verdict=INCONCLUSIVE,
            witnesses={"t_lo": t_lo, "t_hi": t_hi}, profile=[], K=0,
            notes="trusted range shorter than two decades",
        )
    grid = np.geomspace(t_lo, t_hi, 257)
    den = np.asarray(omega(grid), dtype=float)
    num = np.asarray(omega(2.0 * grid), dtype=float)
    good = den > 0.0
    if int(np.count_nonzero(good)) < 16:
        return ConditionReport(
            condition=f"omega1[{omega.label}]", verdict=INCONCLUSIVE,
            witnesses={}, profile=[], K=0,
            notes="omega vanishes on most of the sample grid",
        )
    ratio = num[good] / den[good]
    verdict, diag = trend_bounded(ratio)
    omega.omega1 = {HOLDS_TREND: True, FAILS_TREND: False}.get(verdict)
    return ConditionReport(
        condition=f"omega1[{omega.label}]",
        verdict=verdict,
        witnesses={"C": float(np.max(ratio)), **diag},
        profile=downsample(grid[good], ratio),
        K=int(ratio.size),
        notes="ratio profile omega(2t)/omega(t); verdict from its trend",
    )


def _nonqa_report(omega: PreWeightFunction) -> ConditionReport:
    if omega.kind == "from_sequence":
        # cutting the quadrature below the last breakpoint is fine: the
        # enclosure integrates the remaining staircase through the tail model
        T = float(np.exp(min(float(omega.log_bp[-1]), math.log(1.0e12))))
    elif omega.kind == "piecewise":
        T = min(omega.T_max, 1.0e12)
    else:
        T = 1.0e6

    def integrand(ts):
        return np.asarray(omega(ts), dtype=float) / (1.0 + ts * ts)

    t_lo, t_hi = omega.tail_integral_interval(T)
    if math.isinf(t_lo):
        # the tail alone certifies divergence; skip the quadrature
        omega.nonquasianalytic = False
        return ConditionReport(
            condition=f"nonquasianalytic[{omega.label}]",
            verdict=FAILS_TREND,
            witnesses={"tail_lo": t_lo, "tail_hi": t_hi, "T_cut": T},
            tail_bound=[math.inf, math.inf],
            notes="tail model certifies a divergent integral of omega(t)/(1+t^2)",
        )
    main = 0.0
    a = 0.0
    for b in np.geomspace(1.0, T, max(2, int(math.log10(max(T, 10.0))) + 1)):
        part, _ = adaptive_gl(integrand, a, float(b), tol=1e-7, max_evals=60000)
        main += part
        a = float(b)
    # 1/(1+t^2) vs 1/t^2 on [T, inf): factor lies in [1/(1+T^-2), 1]
    lo_total = main + t_lo / (1.0 + T ** -2)
    hi_total = main + t_hi
    if math.isinf(t_lo):
        verdict = FAILS_TREND
    elif math.isinf(t_hi):
        verdict = INCONCLUSIVE
    else:
        verdict = HOLDS_TREND
    omega.nonquasianalytic = {HOLDS_TREND: True, FAILS_TREND: False}.get(verdict)
    return ConditionReport(
        condition=f"nonquasianalytic[{omega.label}]",
        verdict=verdict,
        witnesses={"integral_main": main, "tail_lo": t_lo, "tail_hi": t_hi, "T_cut": T},
        profile=[],
        K=0,
        tail_bound=[lo_total, hi_total],
        notes="integral of omega(t)/(1+t^2): quadrature to T_cut plus tail enclosure",
    )


def weight_predicates(omega: PreWeightFunction, kind: str = "omega1") -> ConditionReport:
    """Sampled verdicts for the pre-weight predicates.

    kind "omega1": trend of the ratio omega(2t)/omega(t) on a log grid.
    kind "nonquasianalytic": quadrature of omega(t)/(1+t^2) plus a tail
    interval; HOLDS means the integral is certified finite.
    """
    if kind == "omega1":
        return _omega1_report(omega)
    if kind == "nonquasianalytic":
        return _nonqa_report(omega)
    raise PropertyViolation(f"unknown predicate kind {kind!r}")
