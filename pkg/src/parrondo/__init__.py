"""Parrondo-style games: simulation, exact drift analysis and probability-space geometry."""
from .analysis import (
    DegenerateChainError,
    ModMChain,
    ParadoxStrength,
    ProbabilityPoint,
    Region,
    SchemeClassification,
    Verdict,
    boundary_p2,
    classify_point,
    classify_scheme,
    compound_condition,
    exact_drift,
    fairness_ratio,
    game_a_fair_root,
    stationary_distribution,
)
from .engine import EnsembleStats, GameStateError, RngStream, Trajectory, run_ensemble, simulate_trajectory, step
from .mixing import (
    MixPath,
    PathOutOfRangeError,
    compound_from_point,
    linear_mix,
    path_point,
    signed_boundary_distance,
)
from .model import (
    BiasParams,
    CapitalGameB,
    CompoundGame,
    GameA,
    HistoryGameB,
    Outcome,
    ParameterError,
    PlayerState,
    SimpleGameRule,
    UnsupportedGameError,
    build_history_games,
    build_parrondo_games,
    build_scheme,
    reflect_game,
)
from .refute import parity_absorption, simple_step, simulate_simple_compound

__version__ = "0.1.0"
