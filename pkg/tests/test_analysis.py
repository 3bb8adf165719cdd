from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import mod_chain_matrix, oracle_drift, power_iteration_stationary
from parrondo.analysis import (
    DegenerateChainError,
    ModMChain,
    ParadoxStrength,
    ProbabilityPoint,
    Region,
    Verdict,
    boundary_curve,
    boundary_p2,
    classify_point,
    classify_scheme,
    compound_condition,
    exact_drift,
    fairness_ratio,
    game_a_fair_root,
    history_stationary_distribution,
    history_transition_matrix,
    paradox_strength,
    stationary_distribution,
)
from parrondo.model import (
    BiasParams,
    CapitalGameB,
    CompoundGame,
    GameA,
    HistoryGameB,
    Outcome,
    build_history_games,
    build_parrondo_games,
    reflect_game,
)

open_prob = st.floats(0.001, 0.999)


@pytest.mark.parametrize("m", [2, 3, 5, 8])
def test_boundary_symmetry_point(m):
    assert boundary_p2(0.5, m) == 0.5


def test_boundary_default_point_below_curve():
    # evaluated with exact rational arithmetic as the reference
    q = Fraction(745, 1000)
    ref = (1 - q) ** 2 / ((1 - q) ** 2 + q ** 2)
    assert boundary_p2(0.745, 3) == pytest.approx(float(ref), abs=1e-15)
    assert boundary_p2(0.745, 3) == pytest.approx(0.10487, abs=5e-6)
    assert 0.095 < boundary_p2(0.745, 3)


def test_boundary_modified_point_below_curve():
    q = Fraction(625, 1000)
    ref = (1 - q) ** 4 / ((1 - q) ** 4 + q ** 4)
    assert boundary_p2(0.625, 5) == pytest.approx(float(ref), abs=1e-15)
    assert 0.095 < boundary_p2(0.625, 5)


def test_boundary_limits():
    assert boundary_p2(0.0, 3) == 1.0
    assert boundary_p2(1.0, 3) == 0.0


def test_boundary_exact_for_fractions():
    q = Fraction(1, 100)
    p2 = boundary_p2(q, 5)
    assert isinstance(p2, Fraction)
    assert fairness_ratio(ProbabilityPoint(p2, q), 5) == 1


@settings(max_examples=200)
@given(open_prob, st.sampled_from([3, 5]))
def test_boundary_point_symmetry(p3, m):
    assert boundary_p2(1 - p3, m) == pytest.approx(1 - boundary_p2(p3, m), abs=1e-12)


@settings(max_examples=200)
@given(st.floats(0.05, 0.95), st.sampled_from([3, 5]))
def test_float_boundary_round_trip_is_conditioning_limited(p3, m):
    p2 = boundary_p2(p3, m)
    ratio = fairness_ratio(ProbabilityPoint(p2, p3), m)
    # one ulp of p2 moves the ratio by about eps / (1 - p2)
    bound = 8 * np.finfo(float).eps / min(p2, 1 - p2)
    assert abs(ratio - 1) <= bound


def test_fairness_examples():
    assert fairness_ratio(ProbabilityPoint(0.5, 0.5), 3) == 1.0
    assert fairness_ratio(ProbabilityPoint(0.095, 0.745), 3) < 1
    assert fairness_ratio(ProbabilityPoint(1.0, 0.5), 3) == float("inf")


@pytest.mark.parametrize("p2,p3,region", [
    (0.095, 0.745, Region.LOSING),
    (0.905, 0.255, Region.WINNING),
    (0.5, 0.5, Region.BOUNDARY),
    (1.0, 0.5, Region.WINNING),
])
def test_classify_point(p2, p3, region):
    assert classify_point(ProbabilityPoint(p2, p3), 3) is region


def test_classify_needs_positive_tol():
    with pytest.raises(ValueError):
        classify_point(ProbabilityPoint(0.5, 0.5), 3, tol=0)


def test_fair_root():
    r = game_a_fair_root()
    assert r == pytest.approx(0.5, abs=1e-12)
    assert r ** 3 == pytest.approx((1 - r) ** 3, abs=1e-15)
    assert classify_point(ProbabilityPoint(r, r), 3) is Region.BOUNDARY
    assert exact_drift(GameA(r)) == pytest.approx(0.0, abs=1e-12)


def test_uniform_chain():
    pi = stationary_distribution(ModMChain((0.5, 0.5, 0.5)))
    np.testing.assert_allclose(pi, [1 / 3] * 3, atol=1e-15)


@pytest.mark.parametrize("probs", [(0.095, 0.745, 0.745), (0.295, 0.62, 0.62),
                                   (0.095, 0.625, 0.625, 0.625, 0.625)])
def test_stationary_matches_power_iteration(probs):
    chain = ModMChain(probs)
    pi = stationary_distribution(chain)
    P = chain.transition_matrix()
    assert np.max(np.abs(pi @ P - pi)) <= 1e-12
    assert pi.sum() == pytest.approx(1.0, abs=1e-15) and np.all(pi >= 0)
    np.testing.assert_allclose(pi, power_iteration_stationary(mod_chain_matrix(probs)), atol=1e-12)


@pytest.mark.parametrize("probs", [(0.095, 0.745, 0.745), (0.295, 0.62, 0.62)])
def test_stationary_matches_long_run_occupancy(probs):
    # 1000 walkers x 10_000 steps = 10^7 visits
    rng = np.random.default_rng(123)
    m = len(probs)
    p = np.asarray(probs)
    state = np.zeros(1000, dtype=np.int64)
    counts = np.zeros(m)
    for _ in range(10_000):
        win = rng.random(1000) < p[state]
        state = (state + np.where(win, 1, -1)) % m
        counts += np.bincount(state, minlength=m)
    freq = counts / counts.sum()
    np.testing.assert_allclose(stationary_distribution(ModMChain(probs)), freq, atol=3e-3)


def test_degenerate_chain():
    with pytest.raises(DegenerateChainError):
        stationary_distribution(ModMChain((1.0, 0.5, 0.5)))
    with pytest.raises(DegenerateChainError):
        exact_drift(CapitalGameB(0.0, 0.5, 3))


def test_drift_examples():
    a, b = build_parrondo_games(BiasParams())
    assert exact_drift(a) == pytest.approx(-0.01, abs=1e-15)
    db = exact_drift(b)
    assert db == pytest.approx(oracle_drift([0.095, 0.745, 0.745]), abs=1e-12)
    assert db == pytest.approx(-0.0087, abs=5e-5)
    dc = exact_drift(CompoundGame(0.5, a, b))
    assert dc == pytest.approx(oracle_drift([0.295, 0.62, 0.62]), abs=1e-12)
    assert dc == pytest.approx(0.0157, abs=5e-5)


def test_history_chain():
    _, b = build_history_games(BiasParams())
    P = history_transition_matrix(b)
    np.testing.assert_allclose(P.sum(axis=1), 1.0)
    pi = history_stationary_distribution(b)
    np.testing.assert_allclose(pi, power_iteration_stationary(P), atol=1e-12)
    # zero bias makes the original history game exactly fair
    assert exact_drift(build_history_games(BiasParams(0.0))[1]) == pytest.approx(0.0, abs=1e-15)
    assert exact_drift(b) < 0


def test_history_paradox():
    a, b = build_history_games(BiasParams())
    assert exact_drift(a) < 0 and exact_drift(b) < 0
    assert exact_drift(CompoundGame(0.5, a, b)) > 0


def test_compound_condition_examples():
    assert compound_condition(0.295, 0.62, 3)
    assert fairness_ratio(ProbabilityPoint(0.295, 0.62), 3) == pytest.approx(1.114, abs=1e-3)
    assert not compound_condition(0.5, 0.5, 3)
    assert not compound_condition(0.705, 0.38, 3)


probabilistic = st.one_of(
    st.builds(GameA, open_prob),
    st.builds(CapitalGameB, open_prob, open_prob, st.sampled_from([2, 3, 5])),
    st.builds(CompoundGame, open_prob, st.builds(GameA, open_prob),
              st.builds(CapitalGameB, open_prob, open_prob, st.sampled_from([3, 5]))),
)


@settings(max_examples=300)
@given(probabilistic)
def test_reflection_antisymmetry(game):
    assert exact_drift(reflect_game(game)) == pytest.approx(-exact_drift(game), abs=1e-12)


@settings(max_examples=300)
@given(open_prob, open_prob, st.sampled_from([3, 5]))
def test_ratio_and_drift_agree(p2, p3, m):
    point = ProbabilityPoint(p2, p3)
    region = classify_point(point, m)
    drift = exact_drift(CapitalGameB(p2, p3, m))
    if region is Region.WINNING:
        assert drift > 0
    elif region is Region.LOSING:
        assert drift < 0


@given(open_prob, open_prob, open_prob, st.floats(0, 1))
def test_compound_point_linearity(p1, p2, p3, gamma):
    c = CompoundGame(gamma, GameA(p1), CapitalGameB(p2, p3, 3))
    assert c.pc1 == pytest.approx(gamma * p1 + (1 - gamma) * p2)
    c0 = CompoundGame(0.0, GameA(p1), CapitalGameB(p2, p3, 3))
    c1 = CompoundGame(1.0, GameA(p1), CapitalGameB(p2, p3, 3))
    assert (c0.pc1, c0.pc2) == (p2, p3)
    assert (c1.pc1, c1.pc2) == (p1, p1)


def test_paradox_strength_is_function_of_verdicts():
    W, L = Verdict.WIN, Verdict.LOSE
    assert paradox_strength(L, L, W) is ParadoxStrength.VERY_STRONG
    assert paradox_strength(W, W, L) is ParadoxStrength.VERY_STRONG
    assert paradox_strength(W, L, W) is ParadoxStrength.STRONG
    assert paradox_strength(L, W, L) is ParadoxStrength.STRONG
    assert paradox_strength(L, W, W) is ParadoxStrength.NOT_APPLICABLE
    assert paradox_strength(W, L, L) is ParadoxStrength.NOT_APPLICABLE
    assert paradox_strength(W, W, W) is ParadoxStrength.NOT_APPLICABLE
    assert paradox_strength(L, L, L) is ParadoxStrength.NOT_APPLICABLE


@pytest.mark.parametrize("scheme_id,description,label", [
    (1, "Lose + Lose = Win", "VeryStrong"),
    (5, "Win + Win = Win", "N/A"),
    (7, "Lose + Win = Lose", "Strong"),
])
def test_classify_scheme_examples(scheme_id, description, label):
    sc = classify_scheme(scheme_id)
    assert sc.description == description and sc.paradox.value == label


def test_boundary_curve_samples():
    rows = boundary_curve(3, 3)
    np.testing.assert_allclose(rows, [[0, 1], [0.5, 0.5], [1, 0]])
    with pytest.raises(ValueError):
        boundary_curve(3, 1)


def enumerate_mean(game, t_max, history=None):
    """Oracle: exact mean over every win/lose sequence of length t_max."""
    from itertools import product

    from parrondo.model import PlayerState

    total = 0.0
    for seq in product((0, 1), repeat=t_max):
        state, prob = PlayerState(0, 0, history), 1.0
        for won in seq:
            if isinstance(game, CapitalGameB):
                p = game.win_probability(state.capital)
            else:
                p = game.win_probability(state.history)
            prob *= p if won else 1 - p
            state = state.advance(Outcome(won), 1 if won else -1)
        total += prob * state.capital
    return total


@pytest.mark.parametrize("game", [CapitalGameB(0.095, 0.745, 3), CapitalGameB(0.295, 0.62, 3),
                                  CapitalGameB(0.2, 0.7, 5)])
def test_expected_capital_matches_enumeration(game):
    from parrondo.analysis import expected_capital
    ec = expected_capital(game, 10)
    for t in (1, 4, 10):
        assert ec[t] == pytest.approx(enumerate_mean(game, t), abs=1e-12)


def test_expected_capital_history_enumeration():
    from parrondo.analysis import expected_capital
    from parrondo.model import HISTORIES
    _, b = build_history_games(BiasParams())
    for h in HISTORIES:
        assert expected_capital(b, 8, initial_history=h)[8] == pytest.approx(enumerate_mean(b, 8, h), abs=1e-12)
    uniform = np.mean([enumerate_mean(b, 8, h) for h in HISTORIES])
    assert expected_capital(b, 8)[8] == pytest.approx(uniform, abs=1e-12)


def test_expected_capital_slope_tends_to_drift():
    from parrondo.analysis import expected_capital
    game = CapitalGameB(0.095, 0.745, 3)
    ec = expected_capital(game, 400)
    assert ec[400] - ec[399] == pytest.approx(exact_drift(game), abs=1e-12)
    assert ec[0] == 0
    np.testing.assert_allclose(expected_capital(GameA(0.495), 3), [0, -0.01, -0.02, -0.03])
