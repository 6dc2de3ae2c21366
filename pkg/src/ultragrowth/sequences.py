"""Weight sequences, weight matrices, jets, and their growth indices.

A weight sequence M is stored through its log-quotients log mu_1..log mu_K;
the values M_k = mu_1*...*mu_k live purely in the log domain (cumulative
sums), so nothing here ever forms M_k itself and horizons up to K = 1e5 stay
finite even for q-Gevrey growth.  A weight matrix is a finite ladder of rows
indexed by rational parameters x = 1/k, pointwise ordered in x.  A jet stores
log|lambda_k| plus a phase so that jets like lambda_k = (k!)^1.4 survive large
truncations.

Asymptotic statements (boundedness of a sup, decay to zero, convergence of a
series) are classified on trend over the window [K/4, K]; see reports.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence as SequenceT

import numpy as np
from scipy.special import gammaln

from .errors import (
    HorizonExceeded,
    InsufficientRows,
    NonLogConvex,
    NonMonotoneQuotients,
    NonPositive,
    PropertyViolation,
    TruncationTooShort,
)
from .reports import (
    FAILS_TREND,
    HOLDS_TREND,
    INCONCLUSIVE,
    ConditionReport,
    downsample,
    trend_bounded,
    trend_decay,
)

__all__ = [
    "TailModel",
    "WeightSequence",
    "WeightMatrix",
    "Jet",
    "make_sequence",
    "gevrey",
    "q_gevrey",
    "relation_check",
    "growth_index",
    "quasianalytic_check",
    "matrix_condition",
    "equivalent_absorbing_matrix",
    "derivation_closed_shift",
    "jet_norm",
]

LOG2 = math.log(2.0)

# absolute slack (log domain) tolerated in inputs before rejecting; stored
# arrays are clamped to exact monotonicity afterwards
VALIDATION_SLACK = 1e-9


# ---------------------------------------------------------------------------
# tail models


@dataclass(frozen=True)
class TailModel:
    """Power-law continuation mu_k ~ c * k^p of the quotients beyond K.

    The coefficient is kept as log_c: fitted slopes can be huge (a geometric
    quotient sequence regresses to p in the hundreds) and c itself would
    under/overflow.  Log-convex sequences have quotients that eventually
    dominate any power law matched to earlier indices, so series tails
    sum_{k>j} 1/mu_k bounded through the model are conservative: the model's
    upper bound dominates the true tail whenever the model underestimates
    the quotients.
    """

    p: float
    log_c: float = 0.0
    fitted: bool = False

    @property
    def c(self) -> float:
        with np.errstate(over="ignore"):
            return float(np.exp(self.log_c))

    def log_mu(self, k):
        """Model log-quotient at index k (scalar or array)."""
        return self.log_c + self.p * np.log(k)

    def reciprocal_tail(self, j: int) -> tuple[float, float]:
        """Enclosure of sum_{k>j} 1/(c k^p); (inf, inf) when divergent.

        Integral comparison: for p > 1 the sum lies between
        int_{j+1}^inf and int_j^inf of dx/(c x^p).
        """
        if self.p <= 1.0:
            return (math.inf, math.inf)
        s = self.p - 1.0
        base = -self.log_c - math.log(s)
        with np.errstate(over="ignore"):
            hi = float(np.exp(base - s * math.log(j)))
            lo = float(np.exp(base - s * math.log(j + 1)))
        return (lo, hi)

    @classmethod
    def fit(cls, log_mu: np.ndarray) -> "TailModel":
        """Least-squares power law through the last decade of quotients.

        The slope comes from regressing log mu_k on log k over k in
        [max(2, K/10), K]; c anchors the model at the last stored quotient so
        the continuation is exact at the junction.
        """
        K = len(log_mu)
        k0 = max(2, K // 10)
        ks = np.arange(k0, K + 1, dtype=float)
        ys = np.asarray(log_mu[k0 - 1 : K], dtype=float)
        p = float(np.polyfit(np.log(ks), ys, 1)[0])
        log_c = float(log_mu[K - 1]) - p * math.log(K)
        return cls(p=p, log_c=log_c, fitted=True)


# ---------------------------------------------------------------------------
# weight sequences


class WeightSequence:
    """Truncated log-convex sequence M_k = mu_1*...*mu_k with M_0 = 1.

    Construction validates positivity and quotient monotonicity (slack 1e-9
    in the log domain, after which quotients are clamped to an exactly
    nondecreasing staircase), which is equivalent to log-convexity together
    with M_0 = 1.
    """

    __slots__ = ("log_mu", "log_M", "K", "label", "tail", "normalized", "kind", "params")

    def __init__(
        self,
        log_mu,
        label: str = "",
        tail: TailModel | None = None,
        kind: str = "quotients",
        params: dict | None = None,
    ):
        lm = np.array(log_mu, dtype=float)
        if lm.ndim != 1 or lm.size < 1:
            raise NonPositive("need at least one quotient")
        if not np.all(np.isfinite(lm)):
            raise NonPositive("quotients must be positive and finite")
        if lm.size > 1:
            worst = float(np.min(np.diff(lm)))
            if worst < -VALIDATION_SLACK:
                k = int(np.argmin(np.diff(lm))) + 2
                raise NonMonotoneQuotients(
                    f"mu_{k} < mu_{k - 1} (log gap {worst:.3e})"
                )
        lm = np.maximum.accumulate(lm)
        lm.setflags(write=False)
        log_M = np.concatenate(([0.0], np.cumsum(lm)))
        log_M.setflags(write=False)
        self.log_mu = lm
        self.log_M = log_M
        self.K = int(lm.size)
        self.label = label
        self.tail = tail
        self.normalized = bool(lm[0] >= 0.0)
        self.kind = kind
        self.params = dict(params or {})

    # -- accessors ---------------------------------------------------------

    def mu(self, k: int) -> float:
        """Quotient mu_k for 1 <= k <= K."""
        return math.exp(self.log_mu[k - 1])

    def M(self, k: int) -> float:
        """Value M_k for 0 <= k <= K (may overflow to inf for large k)."""
        return math.exp(self.log_M[k])

    @property
    def log_m(self) -> np.ndarray:
        """log m_k where m_k = M_k / k!, for k = 0..K."""
        ks = np.arange(self.K + 1)
        return self.log_M - gammaln(ks + 1.0)

    @property
    def log_root_M(self) -> np.ndarray:
        """log (M_k)^{1/k} for k = 1..K."""
        ks = np.arange(1, self.K + 1)
        return self.log_M[1:] / ks

    @property
    def log_root_m(self) -> np.ndarray:
        """log (m_k)^{1/k} for k = 1..K."""
        ks = np.arange(1, self.K + 1)
        return self.log_m[1:] / ks

    # -- derived sequences ---------------------------------------------------

    def clip(self, K: int) -> "WeightSequence":
        """Truncate to the first K quotients."""
        if K > self.K:
            raise TruncationTooShort(f"cannot extend K={self.K} to {K}")
        if K == self.K:
            return self
        return WeightSequence(
            self.log_mu[:K], label=self.label, tail=self.tail,
            kind=self.kind, params=self.params,
        )

    def scale_geometric(self, log_r: float, label: str | None = None) -> "WeightSequence":
        """The sequence r^k M_k, i.e. every quotient multiplied by r."""
        tail = None
        if self.tail is not None:
            tail = TailModel(
                p=self.tail.p, log_c=self.tail.log_c + log_r, fitted=self.tail.fitted
            )
        return WeightSequence(
            self.log_mu + log_r,
            label=label if label is not None else self.label,
            tail=tail,
        )

    def reciprocal_quotient_tails(self) -> np.ndarray:
        """t[j-1] = sum_{k=j}^{K} 1/mu_k for j = 1..K (stored part only)."""
        inv = np.exp(-self.log_mu)
        return np.cumsum(inv[::-1])[::-1]

    def tail_interval(self) -> tuple[float, float]:
        """Enclosure of sum_{k>K} 1/mu_k; (0, inf) without a tail model."""
        if self.tail is None:
            return (0.0, math.inf)
        return self.tail.reciprocal_tail(self.K)

    # -- plumbing ------------------------------------------------------------

    def with_label(self, label: str) -> "WeightSequence":
        out = WeightSequence.__new__(WeightSequence)
        out.log_mu = self.log_mu
        out.log_M = self.log_M
        out.K = self.K
        out.label = label
        out.tail = self.tail
        out.normalized = self.normalized
        out.kind = self.kind
        out.params = self.params
        return out

    def to_dict(self) -> dict:
        tail = None
        if self.tail is not None:
            tail = {
                "model": "powerlaw",
                "exponent": self.tail.p,
                "log_coefficient": self.tail.log_c,
                "fitted": self.tail.fitted,
            }
        d = {"label": self.label, "kind": self.kind, "K": self.K, "tail": tail}
        if self.kind in ("gevrey", "qgevrey"):
            d["params"] = self.params
        else:
            d["params"] = {"log_mu": [float(v) for v in self.log_mu]}
        return d

    def __repr__(self) -> str:
        return f"WeightSequence({self.label or self.kind}, K={self.K})"


def make_sequence(
    kind: str,
    K: int,
    *,
    s: float | None = None,
    q: float | None = None,
    quotients: SequenceT[float] | None = None,
    log_quotients: SequenceT[float] | None = None,
    values: SequenceT[float] | None = None,
    label: str | None = None,
    tail: TailModel | str | None = "auto",
) -> WeightSequence:
    """Build a validated WeightSequence.

    kind: "gevrey" (mu_k = k^s, needs s > 0), "qgevrey" (M_k = q^{k^2},
    needs q > 1), "quotients" (explicit mu or log mu), or "values" (explicit
    M_0..M_K with M_0 = 1).  tail: "auto" fits a power law from the last
    decade of quotients (exact, unfitted model for Gevrey), None disables,
    or pass a TailModel.
    """
    if K < 8:
        raise TruncationTooShort(f"K >= 8 required, got {K}")
    if kind == "gevrey":
        if s is None or s <= 0:
            raise NonPositive("gevrey needs s > 0")
        ks = np.arange(1, K + 1, dtype=float)
        log_mu = s * np.log(ks)
        t = TailModel(p=float(s), log_c=0.0, fitted=False) if tail == "auto" else _coerce_tail(tail)
        return WeightSequence(
            log_mu, label=label or f"gevrey{s:g}", tail=t,
            kind="gevrey", params={"s": float(s)},
        )
    if kind == "qgevrey":
        if q is None or q <= 1:
            raise NonPositive("qgevrey needs q > 1")
        ks = np.arange(1, K + 1, dtype=float)
        log_mu = (2.0 * ks - 1.0) * math.log(q)
        t = TailModel.fit(log_mu) if tail == "auto" else _coerce_tail(tail)
        return WeightSequence(
            log_mu, label=label or f"qgevrey{q:g}", tail=t,
            kind="qgevrey", params={"q": float(q)},
        )
    if kind == "quotients":
        if log_quotients is not None:
            log_mu = np.asarray(log_quotients, dtype=float)
        elif quotients is not None:
            qs = np.asarray(quotients, dtype=float)
            if np.any(qs <= 0):
                raise NonPositive("quotients must be positive")
            log_mu = np.log(qs)
        else:
            raise NonPositive("quotients kind needs quotients or log_quotients")
        log_mu = log_mu[:K]
        if len(log_mu) < K:
            raise TruncationTooShort(f"got {len(log_mu)} quotients, need {K}")
        t = TailModel.fit(log_mu) if tail == "auto" else _coerce_tail(tail)
        return WeightSequence(log_mu, label=label or "quotients", tail=t)
    if kind == "values":
        if values is None:
            raise NonPositive("values kind needs values")
        vs = np.asarray(values, dtype=float)
        if np.any(vs <= 0):
            raise NonPositive("values must be positive")
        if vs[0] != 1.0:
            raise NonPositive("values must start at M_0 = 1")
        log_vals = np.log(vs)[: K + 1]
        if len(log_vals) < K + 1:
            raise TruncationTooShort(f"got {len(log_vals) - 1} values, need {K}")
        log_mu = np.diff(log_vals)
        try:
            t = TailModel.fit(log_mu) if tail == "auto" else _coerce_tail(tail)
            return WeightSequence(log_mu, label=label or "values", tail=t)
        except NonMonotoneQuotients as exc:
            raise NonLogConvex(str(exc)) from exc
    raise NonPositive(f"unknown sequence kind {kind!r}")


def _coerce_tail(tail) -> TailModel | None:
    if tail is None or tail == "none":
        return None
    if isinstance(tail, TailModel):
        return tail
    raise NonPositive(f"bad tail spec {tail!r}")


def gevrey(s: float, K: int) -> WeightSequence:
    """Gevrey sequence M_k = (k!)^s."""
    return make_sequence("gevrey", K, s=s)


def q_gevrey(q: float, K: int) -> WeightSequence:
    """q-Gevrey sequence M_k = q^{k^2} (quotients q^{2k-1})."""
    return make_sequence("qgevrey", K, q=q)


# ---------------------------------------------------------------------------
# weight matrices


class WeightMatrix:
    """Finite ladder of weight sequences indexed by rationals x, ascending.

    Pointwise order M^{(x)} <= M^{(y)} for x <= y is validated at
    construction (slack 1e-9 relative in the log domain).  quotient_ordered
    records whether the quotients are ordered the same way, and
    realanalytic_trend whether every row has (m_k)^{1/k} strictly increasing
    over the final quarter of the horizon (the finite-horizon stand-in for
    (m_k)^{1/k} -> infinity); both are observations, not requirements.
    """

    __slots__ = ("rows", "label", "quotient_ordered", "realanalytic_trend")

    def __init__(self, rows: Iterable[tuple], label: str = ""):
        entries = sorted(
            ((Fraction(x), seq) for x, seq in rows), key=lambda e: e[0]
        )
        if not entries:
            raise InsufficientRows("matrix needs at least one row")
        xs = [x for x, _ in entries]
        if len(set(xs)) != len(xs):
            raise PropertyViolation("duplicate row parameters", {"xs": [str(x) for x in xs]})
        if any(x <= 0 for x in xs):
            raise NonPositive("row parameters must be positive")
        K = min(seq.K for _, seq in entries)
        entries = [(x, seq.clip(K)) for x, seq in entries]
        slack = VALIDATION_SLACK
        for (x1, s1), (x2, s2) in zip(entries, entries[1:]):
            gap = s1.log_M - s2.log_M
            bad = gap > slack * (1.0 + np.abs(s2.log_M))
            if np.any(bad):
                j = int(np.argmax(bad))
                raise PropertyViolation(
                    f"rows x={x1} and x={x2} violate pointwise order at j={j}",
                    {"j": j, "log_gap": float(gap[j])},
                )
        q_ordered = True
        for (_, s1), (_, s2) in zip(entries, entries[1:]):
            gap = s1.log_mu - s2.log_mu
            if np.any(gap > slack * (1.0 + np.abs(s2.log_mu))):
                q_ordered = False
                break
        ra = True
        for _, seq in entries:
            prof = seq.log_root_m
            last = prof[(3 * len(prof)) // 4 :]
            if len(last) < 2 or np.any(np.diff(last) <= 0):
                ra = False
                break
        self.rows = tuple(entries)
        self.label = label
        self.quotient_ordered = q_ordered
        self.realanalytic_trend = ra

    # -- accessors ---------------------------------------------------------

    @property
    def K(self) -> int:
        return self.rows[0][1].K

    @property
    def n_rows(self) -> int:
        return len(self.rows)

    def xs(self) -> list[Fraction]:
        return [x for x, _ in self.rows]

    def row(self, x) -> WeightSequence:
        x = Fraction(x)
        for rx, seq in self.rows:
            if rx == x:
                return seq
        raise KeyError(f"no row with x={x}")

    def row_k(self, k: int) -> WeightSequence:
        return self.row(Fraction(1, k))

    def ks(self) -> list[int]:
        """Ladder indices k for rows x = 1/k, ascending in k."""
        out = []
        for x, _ in reversed(self.rows):
            if x.numerator != 1:
                raise PropertyViolation(
                    f"row x={x} is not of the form 1/k", {"x": str(x)}
                )
            out.append(x.denominator)
        return out

    def __iter__(self):
        return iter(self.rows)

    @classmethod
    def constant(cls, seq: WeightSequence, ks: Iterable[int], label: str = "") -> "WeightMatrix":
        """Row-replicated matrix of a single sequence on the ladder x = 1/k."""
        return cls(
            [(Fraction(1, k), seq) for k in ks],
            label=label or f"const[{seq.label}]",
        )

    def to_dict(self) -> dict:
        return {
            "label": self.label,
            "quotient_ordered": self.quotient_ordered,
            "rows": [{"x": str(x), "seq": seq.to_dict()} for x, seq in self.rows],
        }

    def __repr__(self) -> str:
        xs = ", ".join(str(x) for x in self.xs())
        return f"WeightMatrix({self.label}, x in [{xs}], K={self.K})"


# ---------------------------------------------------------------------------
# jets


class Jet:
    """Truncated formal power-series coefficients lambda_0..lambda_K.

    Stored as log|lambda_k| (with -inf for exact zeros) plus a phase, so
    factorial-power jets survive truncations where |lambda_k| overflows.
    """

    __slots__ = ("log_abs", "phase", "label")

    def __init__(self, log_abs, phase=None, label: str = ""):
        la = np.array(log_abs, dtype=float)
        if la.ndim != 1 or la.size < 1:
            raise NonPositive("jet needs at least one entry")
        if np.any(np.isnan(la)) or np.any(la == math.inf):
            raise NonPositive("jet entries must be finite (log|.| < inf)")
        la.setflags(write=False)
        if phase is None:
            ph = np.zeros_like(la)
        else:
            ph = np.array(phase, dtype=float)
            if ph.shape != la.shape:
                raise NonPositive("phase shape mismatch")
        ph.setflags(write=False)
        self.log_abs = la
        self.phase = ph
        self.label = label

    @property
    def K(self) -> int:
        return int(self.log_abs.size - 1)

    @classmethod
    def from_values(cls, values, label: str = "") -> "Jet":
        v = np.asarray(values, dtype=complex)
        with np.errstate(divide="ignore"):
            la = np.log(np.abs(v))
        return cls(la, np.angle(v), label=label)

    @classmethod
    def from_factorial_power(cls, power: float, K: int, label: str = "") -> "Jet":
        """lambda_k = (k!)^power."""
        ks = np.arange(K + 1)
        return cls(power * gammaln(ks + 1.0), label=label or f"factorial^{power:g}")

    @classmethod
    def unit(cls, index: int, K: int, label: str = "") -> "Jet":
        """Standard basis jet e_index."""
        la = np.full(K + 1, -math.inf)
        la[index] = 0.0
        return cls(la, label=label or f"e_{index}")

    @classmethod
    def from_sequence(cls, seq: WeightSequence, label: str = "") -> "Jet":
        """Boundary jet lambda_k = M_k."""
        return cls(seq.log_M.copy(), label=label or f"jet[{seq.label}]")

    def abs(self, k: int) -> float:
        return math.exp(self.log_abs[k])

    def to_dict(self) -> dict:
        return {
            "label": self.label,
            "K": self.K,
            "log_abs": [float(v) for v in self.log_abs],
            "phase": [float(v) for v in self.phase],
        }

    def __repr__(self) -> str:
        return f"Jet({self.label}, K={self.K})"


# ---------------------------------------------------------------------------
# relations and indices


def _common_K(M: WeightSequence, N: WeightSequence, minimum: int = 32) -> int:
    K = min(M.K, N.K)
    if K < minimum:
        raise TruncationTooShort(f"need K >= {minimum}, got {K}")
    return K


def relation_check(kind: str, M: WeightSequence, N: WeightSequence) -> ConditionReport:
    """Order relations between sequences: leq, preceq, triangle, equivalent.

    leq is the exact elementwise comparison M_k <= N_k.  preceq classifies
    boundedness of the root ratio profile (M_k/N_k)^{1/k}; triangle its decay
    to zero; equivalent is preceq in both directions.
    """
    K = _common_K(M, N)
    ks = np.arange(1, K + 1)
    d = (M.log_M[1 : K + 1] - N.log_M[1 : K + 1]) / ks
    with np.errstate(over="ignore"):
        prof = np.exp(d)
    profile = downsample(ks, prof)
    name = f"relation.{kind}"

    if kind == "leq":
        ok = M.log_M[: K + 1] <= N.log_M[: K + 1]
        if bool(np.all(ok)):
            return ConditionReport(name, HOLDS_TREND, {"exact": True}, profile, K,
                                   notes="exact elementwise comparison on [0,K]")
        j = int(np.argmin(ok))
        return ConditionReport(
            name, FAILS_TREND,
            {"exact": True, "first_violation": j,
             "log_gap": float(M.log_M[j] - N.log_M[j])},
            profile, K, notes="exact elementwise comparison on [0,K]",
        )
    if kind == "preceq":
        verdict, diag = trend_bounded(d, log=True)
        wit = {"C": float(np.exp(np.max(d))), **diag}
        return ConditionReport(name, verdict, wit, profile, K)
    if kind == "triangle":
        verdict, diag = trend_decay(d, log=True)
        return ConditionReport(name, verdict, dict(diag), profile, K)
    if kind == "equivalent":
        fwd, fdiag = trend_bounded(d, log=True)
        bwd, bdiag = trend_bounded(-d, log=True)
        if fwd == HOLDS_TREND and bwd == HOLDS_TREND:
            verdict = HOLDS_TREND
        elif FAILS_TREND in (fwd, bwd):
            verdict = FAILS_TREND
        else:
            verdict = INCONCLUSIVE
        wit = {
            "C": float(np.exp(max(np.max(d), np.max(-d)))),
            "forward": fwd,
            "backward": bwd,
        }
        return ConditionReport(name, verdict, wit, profile, K)
    raise NonPositive(f"unknown relation kind {kind!r}")


def growth_index(kind: str, M: WeightSequence, N: WeightSequence) -> ConditionReport:
    """Mixed moderate-growth / derivation-closedness indices.

    mg(M,N) = sup_{j+k>=1} (M_{j+k} / (N_j N_k))^{1/(j+k)}; by log-convexity
    of N the inner sup over j+k = i is attained at the central split, so the
    profile is a_i = (log M_i - log N_{floor(i/2)} - log N_{ceil(i/2)}) / i.
    dc(M,N) = sup_j (M_{j+1}/N_j)^{1/(j+1)}.  The verdict classifies whether
    the running sup of the profile has stabilized.
    """
    K = _common_K(M, N, minimum=8)
    if kind == "mg":
        i = np.arange(1, K + 1)
        lo = i // 2
        hi = i - lo
        a = (M.log_M[i] - N.log_M[lo] - N.log_M[hi]) / i
        idx = i
    elif kind == "dc":
        j = np.arange(0, K)
        a = (M.log_M[j + 1] - N.log_M[j]) / (j + 1)
        idx = j
    else:
        raise NonPositive(f"unknown growth index {kind!r}")
    run = np.maximum.accumulate(a)
    verdict, diag = trend_bounded(run, log=True)
    arg = int(np.argmax(a))
    with np.errstate(over="ignore"):
        sup = float(np.exp(a[arg]))
    wit = {
        "log_sup": float(a[arg]),
        "sup": sup,
        "argmax": int(idx[arg]),
        **diag,
    }
    with np.errstate(over="ignore"):
        prof = np.exp(a)
    return ConditionReport(
        f"index.{kind}", verdict, wit, downsample(idx, prof), K,
        notes="profile is the per-index root value; verdict from its running sup",
    )


def quasianalytic_check(M: WeightSequence) -> ConditionReport:
    """Non-quasianalyticity: does sum 1/mu_k converge?

    HOLDS_TREND means non-quasianalytic (finite tail interval); FAILS_TREND
    means the tail model certifies divergence (quasianalytic); INCONCLUSIVE
    without a usable tail model.
    """
    if M.K < 32:
        raise TruncationTooShort(f"need K >= 32, got {M.K}")
    inv = np.exp(-M.log_mu)
    partial = np.cumsum(inv)
    total = float(partial[-1])
    wit: dict = {"partial_sum": total}
    ks = np.arange(1, M.K + 1)
    profile = downsample(ks, partial)
    if M.tail is None:
        return ConditionReport(
            "nonquasianalytic", INCONCLUSIVE, wit, profile, M.K,
            tail_bound=[total, math.inf],
            notes="no tail model; tail of sum 1/mu unbounded",
        )
    wit["tail_p"] = M.tail.p
    wit["tail_c"] = M.tail.c
    lo, hi = M.tail.reciprocal_tail(M.K)
    if math.isinf(hi):
        return ConditionReport(
            "nonquasianalytic", FAILS_TREND, wit, profile, M.K,
            tail_bound=[total, math.inf],
            notes=f"tail model p={M.tail.p:g} <= 1 certifies divergence",
        )
    return ConditionReport(
        "nonquasianalytic", HOLDS_TREND, wit, profile, M.K,
        tail_bound=[total + lo, total + hi],
    )


# ---------------------------------------------------------------------------
# matrix conditions


def _witness_search(universal_rows, candidate_rows, check):
    """Generic forall-y exists-x search; check(x_seq, y_seq) -> (verdict, wit).

    Candidates are tried ascending in x; the first HOLDS_TREND wins.  The
    per-y verdict degrades to INCONCLUSIVE if any candidate was inconclusive,
    else FAILS_TREND.
    """
    verdicts = []
    witness_map = {}
    for y, y_seq in universal_rows:
        best = FAILS_TREND
        found = None
        for x, x_seq in candidate_rows:
            verdict, wit = check(x_seq, y_seq)
            if verdict == HOLDS_TREND:
                found = (x, wit)
                break
            if verdict == INCONCLUSIVE:
                best = INCONCLUSIVE
        if found is not None:
            witness_map[str(y)] = {"x": str(found[0]), **found[1]}
            verdicts.append(HOLDS_TREND)
        else:
            witness_map[str(y)] = {"x": None}
            verdicts.append(best)
    if all(v == HOLDS_TREND for v in verdicts):
        overall = HOLDS_TREND
    elif any(v == FAILS_TREND for v in verdicts):
        overall = FAILS_TREND
    else:
        overall = INCONCLUSIVE
    return overall, witness_map


def matrix_condition(
    kind: str,
    MM: WeightMatrix,
    NN: WeightMatrix | None = None,
    h_grid: SequenceT[float] = (2.0, 4.0, 8.0),
) -> ConditionReport:
    """Quantified matrix conditions over the available ladder rows.

    kinds: "preceq" (forall y-row of NN exists x-row of MM with
    M^{(x)} preceq N^{(y)}); "mg" / "dc" (forall y exists x with the mixed
    index finite, both rows from MM); "exp_absorb" (forall y and h in h_grid
    exists x, A with h^k M^{(x)}_k <= A M^{(y)}_k); "nonquasianalytic"
    (every row non-quasianalytic).

    Quantifiers range over the stored rows only; the report's row_set
    discloses them.  For the self-referential kinds (mg, dc, exp_absorb) the
    universal quantifier ranges over the top half of the ladder only: the
    witness parameter these conditions call for sits a multiplicative gap
    below y (y/2 for mg/dc via the product splitting, y/2^kappa for
    exp_absorb with h = 2^kappa), so the bottom half of a finite ladder has
    no candidate witnesses and quantifying over it would report a spurious
    failure of the asymptotic condition.
    """
    rows = list(MM.rows)
    row_set: dict = {"m_rows": [str(x) for x, _ in rows]}
    if kind == "preceq":
        if NN is None:
            raise InsufficientRows("preceq needs a second matrix")
        row_set["n_rows"] = [str(x) for x, _ in NN.rows]
        overall, wit_map = _witness_search(
            list(NN.rows), rows,
            lambda x_seq, y_seq: _split(relation_check("preceq", x_seq, y_seq)),
        )
        return ConditionReport(
            "matrix.preceq", overall, {"witnesses": wit_map}, [],
            min(MM.K, NN.K), row_set=row_set,
        )
    if kind == "nonquasianalytic":
        wit_map = {}
        verdicts = []
        for x, seq in rows:
            rep = quasianalytic_check(seq)
            verdicts.append(rep.verdict)
            wit_map[str(x)] = {
                "verdict": rep.verdict,
                "tail_bound": rep.tail_bound,
            }
        if all(v == HOLDS_TREND for v in verdicts):
            overall = HOLDS_TREND
        elif any(v == FAILS_TREND for v in verdicts):
            overall = FAILS_TREND
        else:
            overall = INCONCLUSIVE
        return ConditionReport(
            "matrix.nonquasianalytic", overall, {"rows": wit_map}, [],
            MM.K, row_set=row_set,
        )
    if kind in ("mg", "dc"):
        if len(rows) < 2:
            raise InsufficientRows(f"{kind} needs >= 2 rows")
        universal = rows[len(rows) // 2 :]
        row_set["universal"] = [str(x) for x, _ in universal]
        row_set["excluded"] = [str(x) for x, _ in rows[: len(rows) // 2]]
        overall, wit_map = _witness_search(
            universal, rows,
            lambda x_seq, y_seq: _split(growth_index(kind, x_seq, y_seq)),
        )
        return ConditionReport(
            f"matrix.{kind}", overall, {"witnesses": wit_map}, [],
            MM.K, row_set=row_set,
        )
    if kind == "exp_absorb":
        if len(rows) < 2:
            raise InsufficientRows("exp_absorb needs >= 2 rows")
        universal = rows[len(rows) // 2 :]
        row_set["universal"] = [str(x) for x, _ in universal]
        row_set["excluded"] = [str(x) for x, _ in rows[: len(rows) // 2]]
        row_set["h_grid"] = [float(h) for h in h_grid]
        K = MM.K
        ks = np.arange(0, K + 1)
        wit_map = {}
        verdicts = []
        for y, y_seq in universal:
            for h in h_grid:
                best = FAILS_TREND
                found = None
                for x, x_seq in rows:
                    p = ks * math.log(h) + x_seq.log_M - y_seq.log_M
                    verdict, diag = trend_bounded(p, log=True)
                    if verdict == HOLDS_TREND:
                        with np.errstate(over="ignore"):
                            A = float(np.exp(np.max(p)))
                        found = (x, A, diag)
                        break
                    if verdict == INCONCLUSIVE:
                        best = INCONCLUSIVE
                key = f"y={y},h={float(h):g}"
                if found is not None:
                    wit_map[key] = {"x": str(found[0]), "A": found[1]}
                    verdicts.append(HOLDS_TREND)
                else:
                    wit_map[key] = {"x": None}
                    verdicts.append(best)
        if all(v == HOLDS_TREND for v in verdicts):
            overall = HOLDS_TREND
        elif any(v == FAILS_TREND for v in verdicts):
            overall = FAILS_TREND
        else:
            overall = INCONCLUSIVE
        return ConditionReport(
            "matrix.exp_absorb", overall, {"witnesses": wit_map}, [],
            MM.K, row_set=row_set,
        )
    raise NonPositive(f"unknown matrix condition {kind!r}")


def _split(report: ConditionReport) -> tuple[str, dict]:
    keep = {k: report.witnesses[k] for k in ("C", "sup", "log_sup", "argmax")
            if k in report.witnesses}
    return report.verdict, keep


# ---------------------------------------------------------------------------
# the two matrix normalizations


def equivalent_absorbing_matrix(
    MM: WeightMatrix,
) -> tuple[WeightMatrix, dict]:
    """Equivalent matrix whose row 1/k damps M^{(1/k)} by 2^{-kj}.

    Rebuilds each row from modified quotients: nu_j = 1 up to a crossover
    index j1, then mu_j / 2^k beyond it.  The crossover is the greedy minimal
    index at which the damped quotient product overtakes the constant B
    linking the row to its predecessor, which makes the output rows
    nonincreasing in k while keeping each row equivalent to its source:

        A_k (1/2^k)^j M^{(1/k)}_j <= N^{(1/k)}_j <= B_k (1/2^k)^j M^{(1/k)}_j

    holds for all j <= K with the returned tight constants (computed as the
    realized min/max of the ratio, so the sandwich is exact on the horizon).
    The resulting ladder absorbs exponential factors: h^j N^{(1/(k+n))}_j <=
    (B_{k+n}/A_n) N^{(1/n)}_j for h <= 2^k.

    Returns (matrix, witnesses) with witnesses carrying per-row log A_k,
    log B_k, j0, j1.  Raises HorizonExceeded when a crossover index does not
    exist within K.
    """
    ks = MM.ks()
    if ks != list(range(1, len(ks) + 1)):
        raise PropertyViolation(
            "need a contiguous ladder x = 1/1 .. 1/n", {"ks": ks}
        )
    for _, seq in MM.rows:
        if not seq.normalized:
            raise PropertyViolation("rows must be normalized (mu_1 >= 1)", {})
    K = MM.K
    out_rows: dict[int, WeightSequence] = {}
    log_A: dict[int, float] = {}
    log_B: dict[int, float] = {}
    j0s: dict[int, int] = {}
    j1s: dict[int, int] = {}

    prev_logN = None
    for k in ks:
        src = MM.row_k(k)
        lmu = src.log_mu
        thresh = k * LOG2
        above = np.nonzero(lmu >= thresh)[0]
        if len(above) == 0:
            raise HorizonExceeded(
                f"row 1/{k}: no quotient reaches 2^{k} within K={K}"
            )
        j0 = int(above[0]) + 1  # quotient indices are 1-based
        if k == 1:
            j1 = j0
        else:
            # B = 2^{k j0} N^{(1/(k-1))}_{j0} / (A_{k-1} M^{(1/k)}_{j0});
            # find minimal j1 > j0 with the damped quotient product over
            # (j0, j1] at least B
            log_B_rec = (
                k * j0 * LOG2
                + prev_logN[j0]
                - log_A[k - 1]
                - src.log_M[j0]
            )
            js = np.arange(j0 + 1, K + 1)
            lhs = (
                -(js - j0) * (k * LOG2)
                + src.log_M[js]
                - src.log_M[j0]
            )
            hit = np.nonzero(lhs >= log_B_rec)[0]
            if len(hit) == 0:
                raise HorizonExceeded(
                    f"row 1/{k}: crossover j1 not reached within K={K}"
                )
            j1 = int(js[hit[0]])
        log_nu = np.where(
            np.arange(1, K + 1) <= j1, 0.0, lmu - thresh
        )
        row = WeightSequence(
            log_nu,
            label=f"{src.label}~1/{k}",
            tail=TailModel.fit(log_nu),
        )
        # tight sandwich constants: realized min/max of N_j 2^{kj} / M_j
        r = row.log_M + thresh * np.arange(0, K + 1) - src.log_M
        log_A[k] = float(np.min(r))
        log_B[k] = float(np.max(r))
        j0s[k] = j0
        j1s[k] = j1
        out_rows[k] = row
        prev_logN = row.log_M

    out = WeightMatrix(
        [(Fraction(1, k), out_rows[k]) for k in ks],
        label=f"{MM.label}~absorb" if MM.label else "absorb",
    )
    with np.errstate(over="ignore"):
        witnesses = {
            "log_A": {k: log_A[k] for k in ks},
            "log_B": {k: log_B[k] for k in ks},
            "A": {k: float(np.exp(log_A[k])) for k in ks},
            "B": {k: float(np.exp(log_B[k])) for k in ks},
            "j0": j0s,
            "j1": j1s,
        }
    return out, witnesses


def derivation_closed_shift(NN: WeightMatrix) -> WeightMatrix:
    """Shift row 1/k down by k indices: out_j = N_{j-k} (1 for j < k).

    The result is derivation closed along the ladder (the dc index between
    adjacent rows is finite) and satisfies out <= N elementwise for
    normalized rows.
    """
    ks = NN.ks()
    out_rows = []
    K = NN.K
    for k in ks:
        seq = NN.row_k(k)
        if not seq.normalized:
            raise PropertyViolation("rows must be normalized (mu_1 >= 1)", {})
        log_nu = np.concatenate((np.zeros(min(k, K)), seq.log_mu[: K - k]))
        out_rows.append(
            (
                Fraction(1, k),
                WeightSequence(
                    log_nu,
                    label=f"{seq.label}_dcshift",
                    tail=TailModel.fit(log_nu),
                ),
            )
        )
    return WeightMatrix(
        out_rows, label=f"{NN.label}~dc" if NN.label else "dcshift"
    )


# ---------------------------------------------------------------------------
# jet norms


def jet_norm(jet: Jet, weight, r: float) -> float:
    """Truncated sup_k |lambda_k| / (r^k W_k) with a boundedness-trend gate.

    weight is a WeightSequence (W_k = M_k) or any object exposing
    young_conjugate (then W_k = exp(phi*(rk)/r), the function-weighted
    norm).  Returns the finite sup when the log profile is bounded on trend,
    +inf when it fails the trend, and the sup as-is when inconclusive.
    """
    if r <= 0:
        raise NonPositive("r must be positive")
    if hasattr(weight, "log_M"):
        K = min(jet.K, weight.K)
        log_den = np.arange(K + 1) * math.log(r) + weight.log_M[: K + 1]
    elif hasattr(weight, "young_conjugate"):
        K = jet.K
        ks = np.arange(K + 1, dtype=float)
        log_den = weight.young_conjugate(r * ks) / r
    else:
        raise NonPositive("weight must be a WeightSequence or PreWeightFunction")
    log_p = jet.log_abs[: K + 1] - log_den
    verdict, _ = trend_bounded(log_p, log=True)
    if verdict == FAILS_TREND:
        return math.inf
    top = float(np.max(log_p))
    if top == -math.inf:
        return 0.0
    with np.errstate(over="ignore"):
        return float(np.exp(top))
