"""Linear and bent mixing paths between game A and game B.

A path runs from game B's point ``(p2, p3)`` at ``t = 0`` to game A's
diagonal point ``(p1, p1)`` at ``t = 1``.  Bent paths are quadratic Bezier
curves whose control point is the segment midpoint pushed ``kappa`` along
the unit normal (the segment direction rotated by +90 degrees).  Only the
midpoint of a path is promoted to a compound game.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize_scalar

from .analysis import ProbabilityPoint, Region, boundary_p2, classify_point
from .model import CapitalGameB, GameA, ParameterError


class PathOutOfRangeError(ValueError):
    """A mixing path left the unit square."""


@dataclass(frozen=True)
class MixPath:
    endpoint_a: ProbabilityPoint
    endpoint_b: ProbabilityPoint
    kappa: float = 0.0
    linear: bool = True

    @classmethod
    def between(cls, a: GameA, b: CapitalGameB, kappa: float = None) -> "MixPath":
        """Straight path when ``kappa`` is None, otherwise a Bezier bent by ``kappa``."""
        pa = ProbabilityPoint(a.p1, a.p1)
        pb = ProbabilityPoint(b.p2, b.p3)
        if kappa is None:
            return cls(pa, pb)
        return cls(pa, pb, float(kappa), linear=False)

    def control_point(self) -> np.ndarray:
        p0, p1 = self.endpoint_b.as_array(), self.endpoint_a.as_array()
        d = p1 - p0
        length = np.hypot(*d)
        if length == 0.0:
            return p0.copy()
        normal = np.array([-d[1], d[0]]) / length
        return 0.5 * (p0 + p1) + self.kappa * normal


def linear_mix(a: GameA, b: CapitalGameB, gamma: float) -> ProbabilityPoint:
    if not 0.0 <= gamma <= 1.0:
        raise ParameterError(f"gamma must be in [0, 1], got {gamma}")
    return ProbabilityPoint(gamma * a.p1 + (1.0 - gamma) * b.p2,
                            gamma * a.p1 + (1.0 - gamma) * b.p3)


def path_point(path: MixPath, t: float) -> ProbabilityPoint:
    if not 0.0 <= t <= 1.0:
        raise ParameterError(f"t must be in [0, 1], got {t}")
    p0, p1 = path.endpoint_b.as_array(), path.endpoint_a.as_array()
    if t == 0.0:
        return path.endpoint_b
    if t == 1.0:
        return path.endpoint_a
    if path.linear:
        xy = (1.0 - t) * p0 + t * p1
    else:
        c = path.control_point()
        xy = (1.0 - t) ** 2 * p0 + 2.0 * t * (1.0 - t) * c + t ** 2 * p1
    if np.any(xy < 0.0) or np.any(xy > 1.0):
        raise PathOutOfRangeError(f"path point {tuple(xy)} at t={t} is outside the unit square")
    return ProbabilityPoint(float(xy[0]), float(xy[1]))


def path_midpoint(path: MixPath) -> ProbabilityPoint:
    return path_point(path, 0.5)


def compound_from_point(p: ProbabilityPoint, m: int) -> CapitalGameB:
    """Play a probability point directly as a capital-dependent game."""
    return CapitalGameB(float(p.p2), float(p.p3), m)


def _curve_distance(q: float, x: np.ndarray, m: int) -> float:
    return float(np.hypot(boundary_p2(q, m) - x[0], q - x[1]))


def boundary_distance(p: ProbabilityPoint, m: int, scan: int = 1000, xtol: float = 1e-10) -> float:
    """Euclidean distance from ``p`` to the fair curve ``{(boundary_p2(q), q)}``."""
    x = np.array([float(p.p2), float(p.p3)])
    qs = np.linspace(0.0, 1.0, scan + 1)
    dists = [_curve_distance(q, x, m) for q in qs]
    i = int(np.argmin(dists))
    lo, hi = qs[max(i - 1, 0)], qs[min(i + 1, scan)]
    res = minimize_scalar(_curve_distance, bounds=(lo, hi), args=(x, m), method="bounded",
                          options={"xatol": xtol})
    return min(float(res.fun), dists[i])


def signed_boundary_distance(p: ProbabilityPoint, m: int) -> float:
    """Distance to the fair curve, positive in the winning region."""
    region = classify_point(p, m)
    if region is Region.BOUNDARY:
        return 0.0
    d = boundary_distance(p, m)
    return d if region is Region.WINNING else -d
