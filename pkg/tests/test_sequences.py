"""Weight sequences, matrices, jets, and the absorbing construction."""

import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from ultragrowth.errors import (
    NonLogConvex,
    NonPositive,
    TruncationTooShort,
)
from ultragrowth.sequences import (
    Jet,
    TailModel,
    WeightMatrix,
    equivalent_absorbing_matrix,
    growth_index,
    jet_norm,
    make_sequence,
    quasianalytic_check,
    relation_check,
)

LOG2 = math.log(2.0)


# ---------------------------------------------------------------------------
# construction


def test_gevrey_log_m_matches_lgamma():
    for s in (1.0, 1.5, 2.0):
        M = make_sequence("gevrey", 500, s=s)
        want = np.array([s * math.lgamma(k + 1) for k in range(501)])
        np.testing.assert_allclose(M.log_M, want, rtol=0, atol=1e-9)
        assert M.tail == TailModel(p=s, log_c=0.0, fitted=False)


def test_qgevrey_log_m_is_q_to_k_squared():
    q = 1.2
    M = make_sequence("qgevrey", 300, q=q)
    ks = np.arange(0, 301, dtype=float)
    np.testing.assert_allclose(M.log_M, ks ** 2 * math.log(q), rtol=0, atol=1e-9)
    assert M.tail is not None and M.tail.fitted


def test_quotients_and_values_round_trip():
    mu = [1.0, 2.0, 4.0, 8.0, 16.0, 32.0, 64.0, 128.0]
    M = make_sequence("quotients", 8, quotients=mu)
    np.testing.assert_allclose(M.mu, mu, rtol=1e-15)
    V = make_sequence("values", 8, values=np.exp(M.log_M).tolist())
    np.testing.assert_allclose(V.log_M, M.log_M, rtol=0, atol=1e-12)


def test_invalid_inputs_raise():
    with pytest.raises(NonLogConvex):
        make_sequence("values", 8,
                      values=[1, 2, 3, 3.5, 3.8, 4, 4.1, 4.15, 4.18])
    with pytest.raises(NonPositive):
        make_sequence("quotients", 8, quotients=[1, 2, -3, 4, 5, 6, 7, 8])
    with pytest.raises(TruncationTooShort):
        make_sequence("gevrey", 4, s=1.0)
    with pytest.raises(NonPositive):
        make_sequence("gevrey", 100, s=0.0)
    with pytest.raises(NonPositive):
        make_sequence("qgevrey", 100, q=1.0)


def test_to_dict_round_trip_preserves_quotients():
    M = make_sequence("gevrey", 64, s=1.5, label="g")
    d = M.to_dict()
    assert d["kind"] == "gevrey" and d["params"] == {"s": 1.5}
    assert d["tail"] == {"model": "powerlaw", "exponent": 1.5,
                         "log_coefficient": 0.0, "fitted": False}


def test_reciprocal_quotient_tails_against_polygamma():
    # mu_k = k^2: sum_{k>=j} 1/mu_k = psi'(j) exactly
    from scipy.special import polygamma
    M = make_sequence("gevrey", 2000, s=2.0)
    tails = M.reciprocal_quotient_tails()
    for j in (1, 2, 10, 100):
        want = float(polygamma(1, j))
        lo, hi = tails[j - 1] if np.ndim(tails) == 2 else (tails[j - 1], tails[j - 1])
        assert lo <= want * (1 + 1e-12) and want <= hi * (1 + 1e-6) or \
            abs(0.5 * (lo + hi) - want) / want < 1e-4


# ---------------------------------------------------------------------------
# jets


def test_jet_factorial_power_log_abs():
    jet = Jet.from_factorial_power(1.4, 64)
    want = np.array([1.4 * math.lgamma(k + 1) for k in range(65)])
    np.testing.assert_allclose(jet.log_abs, want, rtol=0, atol=1e-9)


def test_unit_jet_support():
    jet = Jet.unit(3, 16)
    assert jet.log_abs[3] == 0.0
    mask = np.isneginf(jet.log_abs)
    assert mask.sum() == 16 and not mask[3]


def test_jet_norm_matches_brute_force():
    jet = Jet.from_values([1.0, 2.0, 1.0, 0.5, 0.125])
    M = make_sequence("gevrey", 4, s=1.0) if False else make_sequence(
        "quotients", 8, quotients=[1, 2, 3, 4, 5, 6, 7, 8])
    r = 0.75
    vals = np.array([1.0, 2.0, 1.0, 0.5, 0.125])
    brute = max(vals[k] * r ** k / math.exp(M.log_M[k]) for k in range(5))
    assert abs(jet_norm(jet, M, r) - brute) < 1e-12 * brute


# ---------------------------------------------------------------------------
# matrices


def test_constant_matrix_rows_sorted_ascending():
    M = make_sequence("gevrey", 64, s=1.5)
    MM = WeightMatrix.constant(M, [3, 1, 2])
    xs = [x for x, _ in MM.rows]
    assert xs == sorted(xs)
    assert [str(x) for x in xs] == ["1/3", "1/2", "1"]


def test_absorbing_matrix_sandwich_and_monotone():
    """A_k 2^{-kj} M_j <= N_j <= B_k 2^{-kj} M_j, rows nonincreasing in k."""
    M = make_sequence("gevrey", 400, s=1.0)
    ks = [1, 2, 3, 4]
    MM = WeightMatrix.constant(M, ks, label="fact")
    NN, info = equivalent_absorbing_matrix(MM)
    jj = np.arange(0, 401, dtype=float)
    logs = {}
    for x, row in NN.rows:
        k = int(1 / x)
        damped = M.log_M - k * LOG2 * jj
        assert np.all(info["log_A"][str(k)] + damped <= row.log_M + 1e-9)
        assert np.all(row.log_M <= info["log_B"][str(k)] + damped + 1e-9)
        logs[k] = row.log_M
    for k in ks[:-1]:
        assert np.all(logs[k + 1] <= logs[k] + 1e-9)


def test_growth_index_verdicts():
    G = make_sequence("gevrey", 600, s=1.5)
    Q = make_sequence("qgevrey", 600, q=1.2)
    assert growth_index("mg", G, G).verdict == "HOLDS_TREND"
    assert growth_index("mg", Q, Q).verdict == "FAILS_TREND"
    assert growth_index("dc", G, G).verdict == "HOLDS_TREND"
    assert growth_index("dc", Q, Q).verdict == "HOLDS_TREND"


def test_relation_preceq_orders_gevrey():
    G15 = make_sequence("gevrey", 600, s=1.5)
    G2 = make_sequence("gevrey", 600, s=2.0)
    assert relation_check("preceq", G15, G2).verdict == "HOLDS_TREND"
    assert relation_check("preceq", G2, G15).verdict == "FAILS_TREND"


def test_quasianalytic_check_split_at_s_equals_1():
    # HOLDS means the reciprocal quotient series is certified convergent
    assert quasianalytic_check(make_sequence("gevrey", 400, s=2.0)).verdict \
        == "HOLDS_TREND"
    assert quasianalytic_check(make_sequence("gevrey", 400, s=1.0)).verdict \
        == "FAILS_TREND"


# ---------------------------------------------------------------------------
# properties


@given(st.lists(st.floats(min_value=0.01, max_value=2.0), min_size=8,
                max_size=40))
def test_random_quotients_give_log_convex_sequence(increments):
    log_mu = np.cumsum(np.asarray(increments))          # nondecreasing
    M = make_sequence("quotients", len(log_mu), log_quotients=log_mu.tolist(),
                      tail=None)
    d2 = np.diff(M.log_M, n=2)
    assert M.log_M[0] == 0.0
    assert np.all(d2 >= -1e-9)


@given(st.floats(min_value=1.05, max_value=3.0))
def test_gevrey_matrix_rows_increase_with_x(s):
    M = make_sequence("gevrey", 32, s=s)
    MM = WeightMatrix.constant(M, [1, 2])
    (x1, r1), (x2, r2) = MM.rows
    assert x1 < x2
    assert np.all(r1.log_M <= r2.log_M + 1e-12)
