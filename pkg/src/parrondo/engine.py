"""Single-step semantics and seeded Monte Carlo ensembles.

Every trial draws from its own counter-based Philox stream keyed by
``(seed, trial_index)``, so results do not depend on how trials are
scheduled.  Uniform draws are consumed in a fixed order per play:

* history games draw one extra uniform at ``t = 0`` to pick the starting
  history unless one is supplied;
* a compound game draws the game-selection uniform, then the win uniform;
* every other probabilistic game draws one win uniform;
* a play is won when its win uniform is ``< p``.

:func:`step` and :func:`simulate_trajectory` are the readable scalar path.
:func:`run_ensemble` replays exactly the same draws, vectorized across trials.
"""
from __future__ import annotations

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

import numpy as np

from .model import (
    HISTORIES,
    CapitalGameB,
    CompoundGame,
    GameA,
    GameSpec,
    HistoryGameB,
    Outcome,
    PlayerState,
    SimpleGameRule,
    UnsupportedGameError,
)

logger = logging.getLogger(__name__)

_UINT64_MAX = 2**64 - 1
_CHUNK = 2048


class GameStateError(RuntimeError):
    """The player state is incompatible with the game being played."""


class RngStream:
    """Uniform draws from the Philox stream keyed by ``(seed, stream_id)``."""

    def __init__(self, seed: int = 0, stream_id: int = 0):
        for name, value in (("seed", seed), ("stream_id", stream_id)):
            if int(value) != value or not 0 <= value <= _UINT64_MAX:
                raise ValueError(f"{name} must be an unsigned 64-bit integer, got {value!r}")
        self.seed = int(seed)
        self.stream_id = int(stream_id)
        key = np.array([self.stream_id, self.seed], dtype=np.uint64)
        self._gen = np.random.Generator(np.random.Philox(key=key))

    def uniform(self) -> float:
        return float(self._gen.random())

    def uniforms(self, n: int) -> np.ndarray:
        return self._gen.random(n)

    def __repr__(self):
        return f"RngStream(seed={self.seed}, stream_id={self.stream_id})"


@dataclass(frozen=True, eq=False)
class Trajectory:
    capitals: np.ndarray

    @property
    def t_max(self) -> int:
        return len(self.capitals) - 1


@dataclass(frozen=True, eq=False)
class EnsembleStats:
    """Per-step mean capital and its standard error over ``trials`` runs."""

    mean: np.ndarray
    stderr: np.ndarray
    trials: int
    t_max: int

    @property
    def final_mean(self) -> float:
        return float(self.mean[-1])

    @property
    def final_stderr(self) -> float:
        return float(self.stderr[-1])

    @property
    def steps(self) -> np.ndarray:
        return np.arange(self.t_max + 1)


def _needs_history(game: GameSpec) -> bool:
    if isinstance(game, CompoundGame):
        return isinstance(game.game_b, HistoryGameB)
    return isinstance(game, HistoryGameB)


def _win_probability(game, state: PlayerState) -> float:
    if isinstance(game, GameA):
        return game.p1
    if isinstance(game, CapitalGameB):
        return game.win_probability(state.capital)
    if isinstance(game, HistoryGameB):
        if state.history is None:
            raise GameStateError("history game played with an unset history")
        return game.win_probability(state.history)
    raise UnsupportedGameError(f"no win probability for {type(game).__name__}")


def step(game: GameSpec, state: PlayerState, rng: RngStream) -> Tuple[PlayerState, Outcome]:
    """Play one round of ``game`` from ``state``."""
    if isinstance(game, SimpleGameRule):
        delta = game.delta(state.capital)
        outcome = Outcome.WIN if delta > 0 else Outcome.LOSE
        return state.advance(outcome, delta), outcome
    if _needs_history(game) and state.history is None:
        raise GameStateError("history game played with an unset history")
    played = game
    if isinstance(game, CompoundGame):
        played = game.game_a if rng.uniform() < game.gamma else game.game_b
    p = _win_probability(played, state)
    outcome = Outcome.WIN if rng.uniform() < p else Outcome.LOSE
    return state.advance(outcome, 1 if outcome is Outcome.WIN else -1), outcome


def _draw_history(rng: RngStream) -> Tuple[Outcome, Outcome]:
    return HISTORIES[min(int(rng.uniform() * 4), 3)]


def simulate_trajectory(game: GameSpec, t_max: int, rng: RngStream,
                        initial_history: Optional[Tuple[Outcome, Outcome]] = None,
                        initial_capital: int = 0) -> Trajectory:
    if t_max < 0:
        raise ValueError(f"t_max must be >= 0, got {t_max}")
    history = None
    if _needs_history(game):
        history = tuple(initial_history) if initial_history is not None else _draw_history(rng)
    state = PlayerState(initial_capital, 0, history)
    capitals = [state.capital]
    for _ in range(t_max):
        state, _ = step(game, state, rng)
        capitals.append(state.capital)
    return Trajectory(np.asarray(capitals, dtype=np.int64))


def _draws_per_step(game: GameSpec) -> int:
    if isinstance(game, SimpleGameRule):
        return 0
    return 2 if isinstance(game, CompoundGame) else 1


def _chunk_capitals(game: GameSpec, t_max: int, seed: int, stream_ids: Sequence[int],
                    initial_history, initial_capital: int) -> np.ndarray:
    """Capitals of shape (len(stream_ids), t_max + 1), vectorized over trials."""
    n = len(stream_ids)
    k = _draws_per_step(game)
    needs_history = _needs_history(game)
    lead = 1 if needs_history and initial_history is None else 0
    width = lead + k * t_max
    u = np.empty((n, width))
    if width:
        for row, sid in enumerate(stream_ids):
            u[row] = RngStream(seed, sid).uniforms(width)

    caps = np.empty((n, t_max + 1), dtype=np.int64)
    cap = np.full(n, initial_capital, dtype=np.int64)
    caps[:, 0] = cap
    if isinstance(game, SimpleGameRule):
        for t in range(t_max):
            cap = cap + np.where(cap % 2 == 1, game.odd_delta, game.even_delta)
            caps[:, t + 1] = cap
        return caps

    if needs_history:
        if lead:
            hist = np.minimum((u[:, 0] * 4).astype(np.int64), 3)
        else:
            older, newer = initial_history
            hist = np.full(n, 2 * int(older) + int(newer), dtype=np.int64)

    base = game.game_b if isinstance(game, CompoundGame) else game
    if isinstance(base, HistoryGameB):
        table = np.asarray(base.probabilities)
    for t in range(t_max):
        col = lead + k * t
        if isinstance(base, GameA):
            p = np.full(n, base.p1)
        elif isinstance(base, CapitalGameB):
            p = np.where(cap % base.m == 0, base.p2, base.p3)
        else:
            p = table[hist]
        if isinstance(game, CompoundGame):
            p = np.where(u[:, col] < game.gamma, game.game_a.p1, p)
            col += 1
        win = u[:, col] < p
        cap = cap + np.where(win, 1, -1)
        caps[:, t + 1] = cap
        if needs_history:
            hist = 2 * (hist & 1) + win
    return caps


def simulate_capitals(game: GameSpec, t_max: int, trials: int, seed: int = 0,
                      initial_history: Optional[Tuple[Outcome, Outcome]] = None,
                      initial_capital: int = 0) -> np.ndarray:
    """All trajectories as a (trials, t_max + 1) integer array; row k uses stream k."""
    return _chunk_capitals(game, t_max, seed, range(trials), initial_history, initial_capital)


def _moments(caps: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    return caps.sum(axis=0), (caps * caps).sum(axis=0)


def stats_from_sums(total: np.ndarray, total_sq: np.ndarray, trials: int,
                    t_max: int) -> EnsembleStats:
    """Mean and standard error from exact integer sums of capital and capital squared."""
    n = trials
    mean = total / n
    if n > 1:
        # n*SS - S^2 is an exact integer; the division happens once.
        var = (n * total_sq - total * total) / (n * (n - 1))
        stderr = np.sqrt(np.maximum(var, 0.0) / n)
    else:
        stderr = np.zeros(t_max + 1)
    return EnsembleStats(mean, stderr, n, t_max)


def run_ensemble(game: GameSpec, t_max: int, trials: int, seed: int = 0,
                 n_jobs: int = 1, initial_history: Optional[Tuple[Outcome, Outcome]] = None,
                 initial_capital: int = 0) -> EnsembleStats:
    """Average ``trials`` independent runs of ``t_max`` plays each.

    Trials are split into fixed-size chunks that may run on ``n_jobs``
    threads.  Per-chunk sums are exact integers, so the result is identical
    for any ``n_jobs`` and any chunk completion order.
    """
    if trials < 1:
        raise ValueError(f"trials must be >= 1, got {trials}")
    if t_max < 0:
        raise ValueError(f"t_max must be >= 0, got {t_max}")
    chunks: List[range] = [range(lo, min(lo + _CHUNK, trials)) for lo in range(0, trials, _CHUNK)]

    def work(ids):
        return _moments(_chunk_capitals(game, t_max, seed, ids, initial_history, initial_capital))

    if n_jobs > 1 and len(chunks) > 1:
        with ThreadPoolExecutor(max_workers=n_jobs) as pool:
            parts = list(pool.map(work, chunks))
    else:
        parts = [work(ids) for ids in chunks]
    total = np.zeros(t_max + 1, dtype=np.int64)
    total_sq = np.zeros(t_max + 1, dtype=np.int64)
    for s, ss in parts:
        total += s
        total_sq += ss
    logger.debug("ensemble %s: %d trials x %d plays", type(game).__name__, trials, t_max)
    return stats_from_sums(total, total_sq, trials, t_max)
