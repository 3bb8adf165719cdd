"""Exact analysis in the (p2, p3) probability space.

Two independent routes decide whether a capital-dependent game wins:

* the product criterion ``p2 * p3**(m-1) / ((1-p2) * (1-p3)**(m-1))``
  compared with 1 (:func:`fairness_ratio`, :func:`compound_condition`);
* the expected capital change per play under the stationary distribution
  of the capital-mod-m Markov chain (:func:`exact_drift`).

The drift is the oracle for scheme verdicts; the ratio is kept as a
separate check, and the two must agree away from the boundary curve.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Tuple

import numpy as np

from .model import (
    SCHEME_TABLE,
    BiasParams,
    CapitalGameB,
    CompoundGame,
    GameA,
    HistoryGameB,
    ParameterError,
    UnsupportedGameError,
    build_scheme,
    check_probability,
)

DEFAULT_TOL = 1e-9


class DegenerateChainError(ValueError):
    """The chain has a win probability of exactly 0 or 1."""


class Region(enum.Enum):
    WINNING = "Winning"
    LOSING = "Losing"
    BOUNDARY = "Boundary"


class Verdict(enum.Enum):
    WIN = "Win"
    LOSE = "Lose"


class ParadoxStrength(enum.Enum):
    VERY_STRONG = "VeryStrong"
    STRONG = "Strong"
    NOT_APPLICABLE = "N/A"


def _coordinate(value, name: str):
    # Fractions stay exact so curve/ratio round trips can be checked without rounding.
    if isinstance(value, Fraction):
        if not 0 <= value <= 1:
            raise ParameterError(f"{name}={value} is not a probability in [0, 1]")
        return value
    return check_probability(value, name)


@dataclass(frozen=True)
class ProbabilityPoint:
    """Location of a capital game in the unit square; floats or exact Fractions."""

    p2: float
    p3: float

    def __post_init__(self):
        object.__setattr__(self, "p2", _coordinate(self.p2, "p2"))
        object.__setattr__(self, "p3", _coordinate(self.p3, "p3"))

    def as_array(self) -> np.ndarray:
        return np.array([self.p2, self.p3])


@dataclass(frozen=True)
class ModMChain:
    """Capital modulo ``m``; from residue s a win moves to s+1 and a loss to s-1."""

    win_probs: Tuple[float, ...]

    def __post_init__(self):
        probs = tuple(check_probability(p) for p in self.win_probs)
        if len(probs) < 2:
            raise ParameterError("a mod-m chain needs m >= 2 residues")
        object.__setattr__(self, "win_probs", probs)

    @property
    def m(self) -> int:
        return len(self.win_probs)

    @classmethod
    def from_game(cls, game: CapitalGameB) -> "ModMChain":
        return cls((game.p2,) + (game.p3,) * (game.m - 1))

    def transition_matrix(self) -> np.ndarray:
        m = self.m
        P = np.zeros((m, m))
        for s, p in enumerate(self.win_probs):
            P[s, (s + 1) % m] += p
            P[s, (s - 1) % m] += 1.0 - p
        return P


def history_transition_matrix(game: HistoryGameB) -> np.ndarray:
    """Chain over (older, newer) outcome pairs, indexed LL, LW, WL, WW."""
    P = np.zeros((4, 4))
    for h, p in enumerate(game.probabilities):
        newer = h & 1
        P[h, 2 * newer + 1] += p
        P[h, 2 * newer] += 1.0 - p
    return P


def boundary_p2(p3: float, m: int) -> float:
    """The p2 that makes the capital game fair for a given p3.

    A :class:`~fractions.Fraction` argument is evaluated exactly.  In floating
    point the result near p3 = 0 is close to 1, where a single ulp of p2 is a
    large relative change in ``1 - p2``.
    """
    p3 = _coordinate(p3, "p3")
    if m < 2:
        raise ParameterError(f"m must be >= 2, got {m}")
    lose = (1 - p3) ** (m - 1)
    win = p3 ** (m - 1)
    return lose / (lose + win)


def fairness_ratio(p: ProbabilityPoint, m: int) -> float:
    num = p.p2 * p.p3 ** (m - 1)
    den = (1 - p.p2) * (1 - p.p3) ** (m - 1)
    if den == 0:
        return math.inf if num > 0 else math.nan
    return num / den


def _region_from_ratio(ratio: float, tol: float) -> Region:
    if ratio > 1.0 + tol:
        return Region.WINNING
    if ratio < 1.0 - tol:
        return Region.LOSING
    return Region.BOUNDARY


def classify_point(p: ProbabilityPoint, m: int, tol: float = DEFAULT_TOL) -> Region:
    if tol <= 0:
        raise ParameterError("tol must be positive")
    # nan (0/0 corner) falls through both comparisons to Boundary
    return _region_from_ratio(fairness_ratio(p, m), tol)


def game_a_fair_root() -> float:
    """Real root of p**3 = (1 - p)**3."""
    # p^3 - (1-p)^3 = 2p^3 - 3p^2 + 3p - 1; the other two roots are complex.
    roots = np.roots([2.0, -3.0, 3.0, -1.0])
    real = roots[np.abs(roots.imag) < 1e-9].real
    return float(real[0])


def _solve_stationary(P: np.ndarray) -> np.ndarray:
    n = P.shape[0]
    A = P.T - np.eye(n)
    A[-1, :] = 1.0
    b = np.zeros(n)
    b[-1] = 1.0
    return np.linalg.solve(A, b)


def stationary_distribution(chain: ModMChain) -> np.ndarray:
    if any(p <= 0.0 or p >= 1.0 for p in chain.win_probs):
        raise DegenerateChainError(f"win probabilities must lie strictly in (0, 1): {chain.win_probs}")
    return _solve_stationary(chain.transition_matrix())


def history_stationary_distribution(game: HistoryGameB) -> np.ndarray:
    if any(p <= 0.0 or p >= 1.0 for p in game.probabilities):
        raise DegenerateChainError(f"win probabilities must lie strictly in (0, 1): {game.probabilities}")
    return _solve_stationary(history_transition_matrix(game))


def exact_drift(game) -> float:
    """Long-run expected capital change per play."""
    if isinstance(game, GameA):
        return 2.0 * game.p1 - 1.0
    if isinstance(game, CompoundGame):
        game = game.effective_game()
    if isinstance(game, CapitalGameB):
        chain = ModMChain.from_game(game)
        pi = stationary_distribution(chain)
        probs = np.asarray(chain.win_probs)
    elif isinstance(game, HistoryGameB):
        pi = history_stationary_distribution(game)
        probs = np.asarray(game.probabilities)
    else:
        raise UnsupportedGameError(f"no drift for {type(game).__name__}")
    return float(pi @ (2.0 * probs - 1.0))


def expected_capital(game, t_max: int, initial_capital: int = 0,
                     initial_history=None) -> np.ndarray:
    """Exact E[C(t)] for t = 0..t_max, start-up transient included.

    The stationary drift is only the long-run slope; from a fixed start the
    residue (or history) distribution needs a few plays to settle.  A history
    game without ``initial_history`` starts from the uniform mix of the four
    histories.
    """
    if isinstance(game, CompoundGame):
        game = game.effective_game()
    if isinstance(game, GameA):
        return initial_capital + (2.0 * game.p1 - 1.0) * np.arange(t_max + 1)
    if isinstance(game, CapitalGameB):
        chain = ModMChain.from_game(game)
        P = chain.transition_matrix()
        gain = 2.0 * np.asarray(chain.win_probs) - 1.0
        dist = np.zeros(game.m)
        dist[initial_capital % game.m] = 1.0
    elif isinstance(game, HistoryGameB):
        P = history_transition_matrix(game)
        gain = 2.0 * np.asarray(game.probabilities) - 1.0
        if initial_history is None:
            dist = np.full(4, 0.25)
        else:
            dist = np.zeros(4)
            dist[2 * int(initial_history[0]) + int(initial_history[1])] = 1.0
    else:
        raise UnsupportedGameError(f"no expectation for {type(game).__name__}")
    out = np.empty(t_max + 1)
    out[0] = initial_capital
    for t in range(t_max):
        out[t + 1] = out[t] + dist @ gain
        dist = dist @ P
    return out


def compound_condition(pc1: float, pc2: float, m: int) -> bool:
    """True when the compound point lies strictly in the winning region."""
    return fairness_ratio(ProbabilityPoint(pc1, pc2), m) > 1.0


def verdict(drift: float) -> Verdict:
    return Verdict.WIN if drift > 0 else Verdict.LOSE


def paradox_strength(a: Verdict, b: Verdict, compound: Verdict) -> ParadoxStrength:
    """Label one win/lose combination.

    Very strong: the mixture goes against both games.  Strong: the games
    disagree and the mixture sides with game A rather than with game B,
    whose scenario structure otherwise dominates the mixture.
    """
    if a == b and compound != a:
        return ParadoxStrength.VERY_STRONG
    if a != b and compound == a:
        return ParadoxStrength.STRONG
    return ParadoxStrength.NOT_APPLICABLE


@dataclass(frozen=True)
class SchemeClassification:
    scheme: int
    verdict_a: Verdict
    verdict_b: Verdict
    verdict_compound: Verdict
    paradox: ParadoxStrength
    drift_a: float
    drift_b: float
    drift_compound: float

    @property
    def description(self) -> str:
        return f"{self.verdict_a.value} + {self.verdict_b.value} = {self.verdict_compound.value}"


def classify_scheme(scheme_id: int, bias: BiasParams = BiasParams(),
                    gamma: float = 0.5) -> SchemeClassification:
    game_a, game_b, compound = build_scheme(scheme_id, bias, gamma)
    da, db, dc = exact_drift(game_a), exact_drift(game_b), exact_drift(compound)
    va, vb, vc = verdict(da), verdict(db), verdict(dc)
    return SchemeClassification(scheme_id, va, vb, vc, paradox_strength(va, vb, vc), da, db, dc)


def classify_all_schemes(bias: BiasParams = BiasParams(),
                         gamma: float = 0.5) -> Dict[int, SchemeClassification]:
    return {i: classify_scheme(i, bias, gamma) for i in sorted(SCHEME_TABLE)}


def boundary_curve(m: int, samples: int) -> np.ndarray:
    """``samples`` evenly spaced (p3, p2) points along the fair curve."""
    if samples < 2:
        raise ParameterError("samples must be >= 2")
    p3 = np.linspace(0.0, 1.0, samples)
    return np.column_stack([p3, [boundary_p2(q, m) for q in p3]])
