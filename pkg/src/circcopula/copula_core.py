"""Bivariate copulas on the unit square.

Includes the independence copula, the Frechet-Hoeffding bounds ``M`` and
``W``, their circular counterparts ``M_a`` and ``W_a`` (the classes of copulas
obtained from ``M`` and ``W`` under every change of zero directions), and the
Mardia-type mixture of the three.

All copulas are immutable and evaluate elementwise on broadcastable arrays.
Formulas are arranged so that groundedness ``C(u, 0) = C(0, v) = 0`` and the
uniform margins ``C(u, 1) = u``, ``C(1, v) = v`` hold bit-exactly.
"""

from __future__ import annotations

from abc import ABC, abstractmethod
from dataclasses import dataclass

import numpy as np

__all__ = [
    "Copula",
    "Independence",
    "UpperFrechet",
    "LowerFrechet",
    "CircularUpperBound",
    "CircularLowerBound",
    "MardiaMixture",
    "mardia_weights",
    "volume",
]


def _unit(x, name):
    arr = np.asarray(x, dtype=float)
    if np.any(~np.isfinite(arr)) or np.any((arr < 0.0) | (arr > 1.0)):
        raise ValueError(f"{name} must lie in [0, 1]")
    return arr


def _out(arr):
    return float(arr) if np.ndim(arr) == 0 else arr


def _sum_minus(u, v, c):
    # u + v - c, evaluated so that the result is exactly v when u == c and
    # exactly u when v == c (keeps copula margins exact).
    return np.where(u >= v, (u - c) + v, (v - c) + u)


class Copula(ABC):
    """A joint distribution function on [0, 1]^2 with uniform margins."""

    @abstractmethod
    def _eval(self, u: np.ndarray, v: np.ndarray) -> np.ndarray:
        ...

    def __call__(self, u, v):
        u = _unit(u, "u")
        v = _unit(v, "v")
        u, v = np.broadcast_arrays(u, v)
        return _out(np.asarray(self._eval(u, v), dtype=float))

    cdf = __call__

    def volume(self, u1, u2, v1, v2):
        """C-volume of the rectangle [u1, u2] x [v1, v2]."""
        return volume(self, u1, u2, v1, v2)


def volume(C: Copula, u1, u2, v1, v2):
    """C-volume ``C(u2,v2) - C(u2,v1) - C(u1,v2) + C(u1,v1)``.

    Raises
    ------
    ValueError
        If ``u1 > u2`` or ``v1 > v2`` anywhere.
    """
    u1, u2, v1, v2 = (np.asarray(x, dtype=float) for x in (u1, u2, v1, v2))
    if np.any(u1 > u2) or np.any(v1 > v2):
        raise ValueError("malformed rectangle: need u1 <= u2 and v1 <= v2")
    vol = (np.asarray(C(u2, v2)) - np.asarray(C(u2, v1))) - (
        np.asarray(C(u1, v2)) - np.asarray(C(u1, v1))
    )
    return _out(vol)


@dataclass(frozen=True)
class Independence(Copula):
    """``Pi(u, v) = u v``."""

    def _eval(self, u, v):
        return u * v


@dataclass(frozen=True)
class UpperFrechet(Copula):
    """``M(u, v) = min(u, v)``."""

    def _eval(self, u, v):
        return np.minimum(u, v)


@dataclass(frozen=True)
class LowerFrechet(Copula):
    """``W(u, v) = max(u + v - 1, 0)``."""

    def _eval(self, u, v):
        return np.maximum(_sum_minus(u, v, 1.0), 0.0)


def _check_param(a, name="a"):
    a = float(a)
    if not (0.0 <= a <= 1.0):
        raise ValueError(f"{name} must lie in [0, 1], got {a}")
    return a


@dataclass(frozen=True)
class CircularUpperBound(Copula):
    """Circular upper bound ``M_a``.

    Mass 1 - a lies uniformly on the segment (0, a)-(1-a, 1) and mass a on
    (1-a, 0)-(1, a).  Piecewise::

        min(u, v - a)        on [0, 1-a] x [a, 1]
        min(u + a - 1, v)    on [1-a, 1] x [0, a]
        max(u + v - 1, 0)    elsewhere

    ``M_0`` and ``M_1`` both coincide with ``M``.
    """

    a: float

    def __post_init__(self):
        object.__setattr__(self, "a", _check_param(self.a))

    def _eval(self, u, v):
        a = self.a
        first = (u <= 1.0 - a) & (v >= a)
        second = ~first & (u >= 1.0 - a) & (v <= a)
        return np.where(
            first,
            np.minimum(u, v - a),
            np.where(
                second,
                np.minimum(np.maximum(_sum_minus(u, a, 1.0), 0.0), v),
                np.maximum(_sum_minus(u, v, 1.0), 0.0),
            ),
        )


@dataclass(frozen=True)
class CircularLowerBound(Copula):
    """Circular lower bound ``W_a``.

    Mass a lies uniformly on the segment (0, a)-(a, 0) and mass 1 - a on
    (a, 1)-(1, a).  Piecewise::

        max(u + v - a, 0)    on [0, a]^2
        max(u + v - 1, a)    on [a, 1]^2
        min(u, v)            elsewhere

    ``W_0`` and ``W_1`` both coincide with ``W``.
    """

    a: float

    def __post_init__(self):
        object.__setattr__(self, "a", _check_param(self.a))

    def _eval(self, u, v):
        a = self.a
        first = (u <= a) & (v <= a)
        second = ~first & (u >= a) & (v >= a)
        return np.where(
            first,
            np.maximum(_sum_minus(u, v, a), 0.0),
            np.where(
                second,
                np.maximum(_sum_minus(u, v, 1.0), a),
                np.minimum(u, v),
            ),
        )


def mardia_weights(gamma):
    """Mixture weights ``(w_plus, w_zero, w_minus)`` for ``gamma`` in [-1, 1].

    ``w_plus = gamma^2 (1 + gamma) / 2``, ``w_zero = 1 - gamma^2`` and
    ``w_minus = gamma^2 (1 - gamma) / 2``.
    """
    g = float(gamma)
    if not (-1.0 <= g <= 1.0):
        raise ValueError(f"gamma must lie in [-1, 1], got {g}")
    g2 = g * g
    return g2 * (1.0 + g) / 2.0, 1.0 - g2, g2 * (1.0 - g) / 2.0


@dataclass(frozen=True)
class MardiaMixture(Copula):
    """Convex combination ``w+ M_a + w0 Pi + w- W_b``.

    ``gamma = 1, 0, -1`` give ``M_a``, ``Pi`` and ``W_b`` exactly.  The
    parameters ``a`` and ``b`` are accepted over all of [0, 1] even when the
    weight of their component vanishes.
    """

    gamma: float
    a: float = 0.7
    b: float = 0.4

    def __post_init__(self):
        mardia_weights(self.gamma)
        object.__setattr__(self, "gamma", float(self.gamma))
        object.__setattr__(self, "a", _check_param(self.a, "a"))
        object.__setattr__(self, "b", _check_param(self.b, "b"))

    @property
    def weights(self):
        return mardia_weights(self.gamma)

    @property
    def upper(self) -> CircularUpperBound:
        return CircularUpperBound(self.a)

    @property
    def lower(self) -> CircularLowerBound:
        return CircularLowerBound(self.b)

    def _eval(self, u, v):
        w_plus, w_zero, w_minus = self.weights
        if w_zero == 0.0:
            if w_minus == 0.0:
                return self.upper._eval(u, v)
            if w_plus == 0.0:
                return self.lower._eval(u, v)
        # Written around uv so the margins stay exact whatever the rounding
        # of the weights; algebraically equal to the plain convex sum.
        pi = u * v
        return pi + w_plus * (self.upper._eval(u, v) - pi) + w_minus * (
            self.lower._eval(u, v) - pi
        )
