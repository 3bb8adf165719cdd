"""The deterministic parity game offered as a "simple" stand-in for the paradox.

Game A loses $2 on odd capital and $1 on even capital; game B wins $6 on
odd capital and loses $7 on even capital.  Once capital is odd, game B adds
an even amount forever, so capital stays odd and B gains $6 every play.
"""
from __future__ import annotations

import enum
from typing import List, Optional, Tuple

import numpy as np

from .engine import EnsembleStats, RngStream, stats_from_sums
from .model import ParameterError, SimpleGameRule

SIMPLE_GAME_A = SimpleGameRule(odd_delta=-2, even_delta=-1)
SIMPLE_GAME_B = SimpleGameRule(odd_delta=6, even_delta=-7)

ABSORPTION_SCAN = 100


class Parity(enum.Enum):
    ODD = "Odd"
    EVEN = "Even"


def parity(capital: int) -> Parity:
    return Parity.ODD if capital % 2 == 1 else Parity.EVEN


def simple_step(rule: SimpleGameRule, capital: int) -> int:
    return capital + rule.delta(capital)


def simple_trace(rule: SimpleGameRule, start: int, steps: int) -> List[int]:
    out = [start]
    for _ in range(steps):
        out.append(simple_step(rule, out[-1]))
    return out


def parity_absorption(rule: SimpleGameRule, start: int) -> Tuple[int, Optional[Parity], int]:
    """Steps until capital parity can no longer change, the locked parity and its delta.

    Returns ``(ABSORPTION_SCAN, None, 0)`` if parity is still changing after
    that many steps.
    """
    capital = start
    for n in range(ABSORPTION_SCAN + 1):
        delta = rule.delta(capital)
        if delta % 2 == 0:
            return n, parity(capital), delta
        capital += delta
    return ABSORPTION_SCAN, None, 0


def simple_compound_capitals(gamma: float, t_max: int, trials: int, seed: int = 0,
                             initial_capital: int = 0) -> np.ndarray:
    """(trials, t_max + 1) capitals; each play picks A when its uniform is < gamma."""
    if not 0.0 <= gamma <= 1.0:
        raise ParameterError(f"gamma must be in [0, 1], got {gamma}")
    if trials < 1:
        raise ValueError(f"trials must be >= 1, got {trials}")
    u = np.empty((trials, t_max))
    for k in range(trials):
        u[k] = RngStream(seed, k).uniforms(t_max)
    caps = np.empty((trials, t_max + 1), dtype=np.int64)
    cap = np.full(trials, initial_capital, dtype=np.int64)
    caps[:, 0] = cap
    for t in range(t_max):
        odd = cap % 2 == 1
        delta_a = np.where(odd, SIMPLE_GAME_A.odd_delta, SIMPLE_GAME_A.even_delta)
        delta_b = np.where(odd, SIMPLE_GAME_B.odd_delta, SIMPLE_GAME_B.even_delta)
        cap = cap + np.where(u[:, t] < gamma, delta_a, delta_b)
        caps[:, t + 1] = cap
    return caps


def simulate_simple_compound(gamma: float, t_max: int, trials: int,
                             seed: int = 0) -> EnsembleStats:
    caps = simple_compound_capitals(gamma, t_max, trials, seed)
    return stats_from_sums(caps.sum(axis=0), (caps * caps).sum(axis=0), trials, t_max)
