"""Finite-horizon verdicts and their reporting container.

A condition like "sup_k a_k < inf" can never be decided from a truncation, so
every checker in this package classifies the *trend* of a profile over the
examined window [K/4, K] and returns one of three verdicts:

  HOLDS        profile consistent with the condition (bounded / decaying)
  FAILS        profile inconsistent with it at the stated margin
  INCONCLUSIVE neither margin is met

The window skips the first quarter (burn-in from small-index transients) and
splits the rest at 5K/8.  Boundedness holds when the supremum over the second
part exceeds the first by less than 5%, and fails when it exceeds it by more
than 25%.  Decay-to-zero holds when the second-part sup is below half the
first-part sup, and fails at 80% or above.  A decreasing profile counts as
bounded.  Multiplicative profiles are classified in the log domain with the
same relative margins.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .errors import TruncationTooShort

HOLDS_TREND = "HOLDS_TREND"
FAILS_TREND = "FAILS_TREND"
INCONCLUSIVE = "INCONCLUSIVE"

# relative margins for the two classifiers
REL_HOLD = 0.05
REL_FAIL = 0.25
DECAY_HOLD = 0.5
DECAY_FAIL = 0.8

MAX_PROFILE_POINTS = 512


def _window(n: int) -> tuple[int, int]:
    if n < 8:
        raise TruncationTooShort(f"trend window needs >= 8 points, got {n}")
    return n // 4, (5 * n) // 8


def trend_bounded(profile: Sequence[float], log: bool = False) -> tuple[str, dict]:
    """Classify whether a nonnegative profile stays bounded on trend.

    With log=True the profile is log-values and margins are applied
    multiplicatively (difference against ln 1.05 / ln 1.25).
    """
    p = np.asarray(profile, dtype=float)
    i0, i1 = _window(len(p))
    sup1 = float(np.max(p[i0:i1]))
    sup2 = float(np.max(p[i1:]))
    diag = {"sup_first": sup1, "sup_second": sup2, "window": [i0, i1, len(p)]}
    if log:
        if sup1 == -math.inf and sup2 == -math.inf:
            return HOLDS_TREND, diag
        if sup2 == math.inf:
            return FAILS_TREND, diag
        if sup1 == -math.inf:
            return FAILS_TREND, diag
        if sup2 <= sup1 + math.log(1.0 + REL_HOLD):
            return HOLDS_TREND, diag
        if sup2 > sup1 + math.log(1.0 + REL_FAIL):
            return FAILS_TREND, diag
        return INCONCLUSIVE, diag
    if sup1 == 0.0 and sup2 == 0.0:
        return HOLDS_TREND, diag
    if not math.isfinite(sup2):
        return FAILS_TREND, diag
    if sup2 <= (1.0 + REL_HOLD) * sup1:
        return HOLDS_TREND, diag
    if sup2 > (1.0 + REL_FAIL) * sup1:
        return FAILS_TREND, diag
    return INCONCLUSIVE, diag


def trend_decay(profile: Sequence[float], log: bool = False) -> tuple[str, dict]:
    """Classify whether a nonnegative profile decays to zero on trend."""
    p = np.asarray(profile, dtype=float)
    i0, i1 = _window(len(p))
    sup1 = float(np.max(p[i0:i1]))
    sup2 = float(np.max(p[i1:]))
    diag = {"sup_first": sup1, "sup_second": sup2, "window": [i0, i1, len(p)]}
    if log:
        if sup2 == -math.inf:
            return HOLDS_TREND, diag
        if sup1 == -math.inf:
            return FAILS_TREND, diag
        if sup2 <= sup1 + math.log(DECAY_HOLD):
            return HOLDS_TREND, diag
        if sup2 >= sup1 + math.log(DECAY_FAIL):
            return FAILS_TREND, diag
        return INCONCLUSIVE, diag
    if sup2 == 0.0:
        return HOLDS_TREND, diag
    if sup1 == 0.0:
        return FAILS_TREND, diag
    if sup2 <= DECAY_HOLD * sup1:
        return HOLDS_TREND, diag
    if sup2 >= DECAY_FAIL * sup1:
        return FAILS_TREND, diag
    return INCONCLUSIVE, diag


def trend_additive(profile: Sequence[float]) -> tuple[str, dict]:
    """Boundedness verdict for an additive (log-domain) gap profile.

    The profile is divided by its first-window sup magnitude so that the
    multiplicative margins of trend_bounded turn into proportional additive
    slack; the diagnostics are rescaled back and the scale disclosed.
    """
    p = np.asarray(profile, dtype=float)
    i0, i1 = _window(len(p))
    s = float(np.max(np.abs(p[i0:i1])))
    if not math.isfinite(s) or s < 1.0:
        s = 1.0
    verdict, diag = trend_bounded(p / s, log=True)
    diag = {k: (v * s if isinstance(v, float) else v) for k, v in diag.items()}
    diag["scale"] = s
    return verdict, diag


def downsample(indices: Sequence[float], values: Sequence[float],
               max_points: int = MAX_PROFILE_POINTS) -> list[list[float]]:
    """Deterministic stride thinning; always keeps the last point."""
    n = len(values)
    if n == 0:
        return []
    stride = max(1, -(-n // max_points))
    pairs = [[float(indices[i]), float(values[i])] for i in range(0, n, stride)]
    if (n - 1) % stride != 0:
        pairs.append([float(indices[n - 1]), float(values[n - 1])])
    return pairs


@dataclass
class ConditionReport:
    """Outcome of a finite-horizon condition check.

    witnesses holds the named constants realizing the verdict (e.g. the s and
    C of a mixed condition); profile is the downsampled margin curve that the
    trend rule classified; tail_bound is the [lower, upper] enclosure of the
    tail contribution when a tail model was available; row_set discloses which
    matrix rows a quantifier actually ranged over.
    """

    condition: str
    verdict: str
    witnesses: dict = field(default_factory=dict)
    profile: list = field(default_factory=list)
    K: int = 0
    tail_bound: list | None = None
    row_set: dict | None = None
    notes: str = ""

    @property
    def holds(self) -> bool:
        return self.verdict == HOLDS_TREND

    def to_dict(self) -> dict:
        return {
            "condition": self.condition,
            "verdict": self.verdict,
            "witnesses": self.witnesses,
            "profile": self.profile,
            "K": self.K,
            "tail_bound": self.tail_bound,
            "row_set": self.row_set,
            "notes": self.notes,
        }

    def to_json(self) -> str:
        return dumps(self.to_dict())

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["field", "value"])
        for key in ("condition", "verdict", "K", "notes"):
            w.writerow([key, getattr(self, key)])
        for name, val in sorted(self.witnesses.items()):
            w.writerow([f"witness.{name}", fmt_float(val)])
        if self.tail_bound is not None:
            w.writerow(["tail_bound.lo", fmt_float(self.tail_bound[0])])
            w.writerow(["tail_bound.hi", fmt_float(self.tail_bound[1])])
        w.writerow(["profile.index", "profile.value"])
        for idx, val in self.profile:
            w.writerow([fmt_float(idx), fmt_float(val)])
        return buf.getvalue()


def fmt_float(x) -> str:
    if isinstance(x, float):
        return "%.17g" % x
    return str(x)


def to_jsonable(obj):
    """Recursively convert to JSON-safe types; non-finite floats to strings."""
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v) for v in obj]
    if isinstance(obj, (np.floating, float)):
        x = float(obj)
        if math.isinf(x):
            return "inf" if x > 0 else "-inf"
        if math.isnan(x):
            return "nan"
        return x
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, np.ndarray):
        return [to_jsonable(v) for v in obj.tolist()]
    return obj


def dumps(obj) -> str:
    """Deterministic JSON: sorted keys, fixed separators, inf as string."""
    return json.dumps(to_jsonable(obj), sort_keys=True, separators=(",", ":"))
