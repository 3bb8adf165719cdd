"""Game definitions and canonical parameterizations.

All game objects are frozen dataclasses, so they can be shared freely
between threads.  Win probabilities are stored as plain floats and checked
to lie in ``[0, 1]`` on construction; the matching losing probability is
always ``1 - p``.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, replace
from typing import Optional, Tuple, Union


class ParameterError(ValueError):
    """A probability or parameter is outside its admissible range."""


class UnsupportedGameError(TypeError):
    """The operation is not defined for the given game type."""


class Outcome(enum.IntEnum):
    LOSE = 0
    WIN = 1

    @property
    def label(self) -> str:
        return "Win" if self is Outcome.WIN else "Lose"


def check_probability(value: float, name: str = "p") -> float:
    value = float(value)
    if not 0.0 <= value <= 1.0:
        raise ParameterError(f"{name}={value!r} is not a probability in [0, 1]")
    return value


def _check_modulus(m: int) -> int:
    if int(m) != m or m < 2:
        raise ParameterError(f"capital modulus m must be an integer >= 2, got {m!r}")
    return int(m)


@dataclass(frozen=True)
class BiasParams:
    epsilon: float = 0.005
    m: int = 3

    def __post_init__(self):
        object.__setattr__(self, "epsilon", float(self.epsilon))
        object.__setattr__(self, "m", _check_modulus(self.m))


@dataclass(frozen=True)
class GameA:
    """Memoryless coin flip won with probability ``p1``."""

    p1: float

    def __post_init__(self):
        object.__setattr__(self, "p1", check_probability(self.p1, "p1"))


@dataclass(frozen=True)
class CapitalGameB:
    """Won with ``p2`` when capital is a multiple of ``m``, else with ``p3``."""

    p2: float
    p3: float
    m: int = 3

    def __post_init__(self):
        object.__setattr__(self, "p2", check_probability(self.p2, "p2"))
        object.__setattr__(self, "p3", check_probability(self.p3, "p3"))
        object.__setattr__(self, "m", _check_modulus(self.m))

    @property
    def point(self) -> Tuple[float, float]:
        return (self.p2, self.p3)

    def win_probability(self, capital: int) -> float:
        # Python's % is the non-negative remainder for positive m, so -2 % 3 == 1.
        return self.p2 if capital % self.m == 0 else self.p3


# Histories are (older, newer) outcome pairs; index = 2 * older + newer.
HISTORIES = ((Outcome.LOSE, Outcome.LOSE), (Outcome.LOSE, Outcome.WIN),
             (Outcome.WIN, Outcome.LOSE), (Outcome.WIN, Outcome.WIN))


def history_index(history: Tuple[Outcome, Outcome]) -> int:
    older, newer = history
    return 2 * int(older) + int(newer)


@dataclass(frozen=True)
class HistoryGameB:
    """Win probability chosen by the last two outcomes: LL, LW, WL, WW."""

    p2: float
    p3: float
    p4: float
    p5: float

    def __post_init__(self):
        for name in ("p2", "p3", "p4", "p5"):
            object.__setattr__(self, name, check_probability(getattr(self, name), name))

    @property
    def probabilities(self) -> Tuple[float, float, float, float]:
        return (self.p2, self.p3, self.p4, self.p5)

    def win_probability(self, history: Tuple[Outcome, Outcome]) -> float:
        return self.probabilities[history_index(history)]


@dataclass(frozen=True)
class CompoundGame:
    """Random mixture: game A is selected with probability ``gamma`` each play."""

    gamma: float
    game_a: GameA
    game_b: Union[CapitalGameB, HistoryGameB]

    def __post_init__(self):
        object.__setattr__(self, "gamma", check_probability(self.gamma, "gamma"))
        if not isinstance(self.game_a, GameA):
            raise UnsupportedGameError("game_a must be a GameA")
        if not isinstance(self.game_b, (CapitalGameB, HistoryGameB)):
            raise UnsupportedGameError("game_b must be a CapitalGameB or HistoryGameB")

    @property
    def pc1(self) -> float:
        """Effective win probability when capital is a multiple of m."""
        if not isinstance(self.game_b, CapitalGameB):
            raise UnsupportedGameError("pc1 is only defined for the capital variant")
        return self.gamma * self.game_a.p1 + (1.0 - self.gamma) * self.game_b.p2

    @property
    def pc2(self) -> float:
        if not isinstance(self.game_b, CapitalGameB):
            raise UnsupportedGameError("pc2 is only defined for the capital variant")
        return self.gamma * self.game_a.p1 + (1.0 - self.gamma) * self.game_b.p3

    def effective_game(self) -> Union[CapitalGameB, HistoryGameB]:
        """The single condition-based game equivalent to this mixture."""
        g, p1, b = self.gamma, self.game_a.p1, self.game_b

        def mix(p):
            # a convex combination can round one ulp past 1
            return min(g * p1 + (1.0 - g) * p, 1.0)
        if isinstance(b, CapitalGameB):
            return CapitalGameB(mix(b.p2), mix(b.p3), b.m)
        return HistoryGameB(*(mix(p) for p in b.probabilities))


@dataclass(frozen=True)
class SimpleGameRule:
    """Deterministic capital change chosen by parity of the current capital."""

    odd_delta: int
    even_delta: int

    def delta(self, capital: int) -> int:
        return self.odd_delta if capital % 2 == 1 else self.even_delta


# A thin alias keeps the game union readable.
SimpleDeterministicGame = SimpleGameRule

GameSpec = Union[GameA, CapitalGameB, HistoryGameB, CompoundGame, SimpleGameRule]
ProbabilisticGame = Union[GameA, CapitalGameB, HistoryGameB, CompoundGame]


@dataclass(frozen=True)
class PlayerState:
    capital: int = 0
    t: int = 0
    history: Optional[Tuple[Outcome, Outcome]] = None

    def advance(self, outcome: Outcome, delta: int) -> "PlayerState":
        history = None if self.history is None else (self.history[1], outcome)
        return PlayerState(self.capital + delta, self.t + 1, history)


def build_parrondo_games(bias: BiasParams = BiasParams()) -> Tuple[GameA, CapitalGameB]:
    e = bias.epsilon
    return GameA(0.5 - e), CapitalGameB(0.1 - e, 0.75 - e, bias.m)


def build_history_games(bias: BiasParams = BiasParams()) -> Tuple[GameA, HistoryGameB]:
    e = bias.epsilon
    return GameA(0.5 - e), HistoryGameB(0.9 - e, 0.25 - e, 0.25 - e, 0.7 - e)


# Scenario verdicts of game B -> (p2, p3) as functions of epsilon.
_B_POINTS = {
    ("Lose", "Win"): lambda e: (0.1 - e, 0.75 - e),
    ("Win", "Lose"): lambda e: (0.9 + e, 0.25 + e),
    ("Lose", "Lose"): lambda e: (0.1 - e, 0.25 - e),
    ("Win", "Win"): lambda e: (0.9 + e, 0.75 + e),
}

#: scheme id -> (game A verdict, scenario 1 verdict, scenario 2 verdict)
SCHEME_TABLE = {
    1: ("Lose", "Lose", "Win"),
    2: ("Win", "Lose", "Win"),
    3: ("Lose", "Win", "Win"),
    4: ("Lose", "Lose", "Lose"),
    5: ("Win", "Win", "Win"),
    6: ("Win", "Lose", "Lose"),
    7: ("Lose", "Win", "Lose"),
    8: ("Win", "Win", "Lose"),
}


def build_scheme(scheme_id: int, bias: BiasParams = BiasParams(),
                 gamma: float = 0.5) -> Tuple[GameA, CapitalGameB, CompoundGame]:
    """Canonical games for one of the eight win/lose combinations."""
    if scheme_id not in SCHEME_TABLE:
        raise ParameterError(f"scheme id must be in 1..8, got {scheme_id!r}")
    a_verdict, s1, s2 = SCHEME_TABLE[scheme_id]
    e = bias.epsilon
    game_a = GameA(0.5 - e if a_verdict == "Lose" else 0.5 + e)
    game_b = CapitalGameB(*_B_POINTS[(s1, s2)](e), bias.m)
    return game_a, game_b, CompoundGame(gamma, game_a, game_b)


def reflect_game(game: ProbabilisticGame) -> ProbabilisticGame:
    """Swap every win probability with its losing probability."""
    if isinstance(game, GameA):
        return GameA(1.0 - game.p1)
    if isinstance(game, CapitalGameB):
        return replace(game, p2=1.0 - game.p2, p3=1.0 - game.p3)
    if isinstance(game, HistoryGameB):
        return HistoryGameB(*(1.0 - p for p in game.probabilities))
    if isinstance(game, CompoundGame):
        return replace(game, game_a=reflect_game(game.game_a), game_b=reflect_game(game.game_b))
    raise UnsupportedGameError(f"cannot reflect {type(game).__name__}")
