"""Circular distribution functions on C = [0, 2*pi).

A circular distribution function ``F`` is nondecreasing with ``F(0) = 0``
and ``F(theta) -> 1`` as ``theta -> 2*pi``.  Because the zero direction of
an angle is arbitrary, every ``F`` generates a whole class of distribution
functions ``F_alpha(theta) = F~(theta + alpha) - F~(alpha)``, one per choice
of origin ``alpha``, where ``F~`` is the extension of ``F`` to [0, 4*pi).

Conventions
-----------
* ``cdf`` accepts ``theta`` in the closed interval [0, 2*pi]; the value at
  ``2*pi`` is the left limit, which is always 1.
* Probability mass sitting exactly on the origin is counted at the *end* of
  the circle (``F(0) = 0`` must hold), so it only shows up in ``F(2*pi) = 1``.
* Quasi-inverses return ``inf{theta : F(theta) >= u}`` and may return
  ``2*pi`` when ``F`` reaches ``u`` only in the limit.
"""

from __future__ import annotations

from abc import ABC, abstractmethod
from dataclasses import dataclass

import numpy as np

__all__ = [
    "TWO_PI",
    "wrap_angle",
    "CircularCdf",
    "UniformCdf",
    "CardioidCdf",
    "EmpiricalCircularCdf",
    "ShiftedCdf",
    "shift_origin",
]

TWO_PI = 2.0 * np.pi

# Absolute tolerance in theta for the bisection quasi-inverse.
QUASI_INVERSE_XTOL = 1e-12

_SNAP_EPS = 1e-15


def wrap_angle(theta):
    """Reduce angles into [0, 2*pi).

    Values that land within 1e-15 of ``2*pi`` after reduction (a rounding
    artefact of ``np.mod``) are snapped to 0.

    Parameters
    ----------
    theta : float or array_like
        Angles in radians, any real value.

    Returns
    -------
    float or ndarray
        Reduced angles, same shape as the input.
    """
    arr = np.mod(np.asarray(theta, dtype=float), TWO_PI)
    arr = np.where(arr >= TWO_PI - _SNAP_EPS, 0.0, arr)
    if arr.ndim == 0:
        return float(arr)
    return arr


def _as_unit(u, name="u"):
    arr = np.asarray(u, dtype=float)
    if np.any(~np.isfinite(arr)) or np.any((arr < 0.0) | (arr > 1.0)):
        raise ValueError(f"{name} must lie in [0, 1]")
    return arr


def _scalar_or_array(arr):
    if arr.ndim == 0:
        return float(arr)
    return arr


class CircularCdf(ABC):
    """Abstract circular distribution function.

    Subclasses implement ``_cdf`` on [0, 2*pi); everything else (closed
    right endpoint, extension, origin shifts, quasi-inverse by bisection) is
    provided here.
    """

    #: True when the distribution is purely atomic; Sklar compositions with
    #: such marginals are only defined on the range of ``F``.
    discrete = False

    @abstractmethod
    def _cdf(self, theta: np.ndarray) -> np.ndarray:
        """Evaluate F on an array of angles in [0, 2*pi]."""

    def cdf(self, theta):
        """Evaluate ``F(theta)`` for ``theta`` in [0, 2*pi].

        ``F(2*pi)`` is the left limit and equals 1.

        Raises
        ------
        ValueError
            If any angle is outside [0, 2*pi].
        """
        arr = np.asarray(theta, dtype=float)
        if np.any(~np.isfinite(arr)) or np.any((arr < 0.0) | (arr > TWO_PI)):
            raise ValueError("theta must lie in [0, 2*pi]; wrap it first")
        out = np.asarray(self._cdf(arr), dtype=float)
        out = np.where(arr == 0.0, 0.0, out)
        out = np.where(arr == TWO_PI, 1.0, out)
        return _scalar_or_array(out)

    __call__ = cdf

    def extend(self, theta):
        """Extension ``F~`` of ``F`` to [0, 4*pi).

        ``F~(theta) = F(theta)`` below ``2*pi`` and ``F(theta - 2*pi) + 1``
        from ``2*pi`` on, so ``F~(2*pi) = 1``.

        Raises
        ------
        ValueError
            If any argument is outside [0, 4*pi).
        """
        arr = np.asarray(theta, dtype=float)
        if np.any(~np.isfinite(arr)) or np.any((arr < 0.0) | (arr >= 2.0 * TWO_PI)):
            raise ValueError("extended argument must lie in [0, 4*pi)")
        upper = arr >= TWO_PI
        low_vals = np.asarray(self.cdf(np.where(upper, 0.0, arr)))
        high_vals = np.asarray(self.cdf(np.where(upper, arr - TWO_PI, 0.0))) + 1.0
        return _scalar_or_array(np.where(upper, high_vals, low_vals))

    def shifted(self, alpha) -> CircularCdf:
        """Distribution function seen from the origin ``alpha``."""
        alpha = wrap_angle(alpha)
        if alpha == 0.0:
            return self
        return ShiftedCdf(self, alpha)

    def quasi_inverse(self, u):
        """Quasi-inverse ``inf{theta : F(theta) >= u}``.

        The generic implementation bisects on [0, 2*pi] until the bracket is
        narrower than ``QUASI_INVERSE_XTOL``.  The returned value always
        satisfies ``F(result) >= u``; ``u = 0`` maps to 0.
        """
        u = _as_unit(u)
        lo = np.zeros(u.shape)
        hi = np.full(u.shape, TWO_PI)
        while np.any(hi - lo > QUASI_INVERSE_XTOL):
            mid = 0.5 * (lo + hi)
            above = np.asarray(self.cdf(mid)) >= u
            hi = np.where(above, mid, hi)
            lo = np.where(above, lo, mid)
        return _scalar_or_array(np.where(u <= 0.0, 0.0, hi))

    def range_values(self) -> np.ndarray | None:
        """Sorted values taken by ``F``, or None for continuous ``F``."""
        return None


@dataclass(frozen=True)
class UniformCdf(CircularCdf):
    """Circular uniform distribution, ``F(theta) = theta / (2*pi)``."""

    def _cdf(self, theta):
        return theta / TWO_PI

    def quasi_inverse(self, u):
        return _scalar_or_array(_as_unit(u) * TWO_PI)

    def shifted(self, alpha):
        return self


@dataclass(frozen=True)
class CardioidCdf(CircularCdf):
    """Cardioid distribution with concentration ``rho`` and mean ``mu``.

    ``F(theta) = (rho/pi) * (sin(theta - mu) + sin(mu)) + theta / (2*pi)``.

    The density ``(1 + 2*rho*cos(theta - mu)) / (2*pi)`` is nonnegative only
    for ``|rho| <= 1/2``, so larger values are rejected.
    """

    rho: float
    mu: float = 0.0

    def __post_init__(self):
        if not np.isfinite(self.rho) or abs(self.rho) > 0.5:
            raise ValueError(f"cardioid rho must satisfy |rho| <= 1/2, got {self.rho}")
        object.__setattr__(self, "rho", float(self.rho))
        object.__setattr__(self, "mu", wrap_angle(self.mu))

    def _cdf(self, theta):
        return (self.rho / np.pi) * (np.sin(theta - self.mu) + np.sin(self.mu)) + theta / TWO_PI


class EmpiricalCircularCdf(CircularCdf):
    """Purely atomic circular distribution.

    Parameters
    ----------
    angles : array_like
        Atom locations (any real values; reduced mod 2*pi).  Must be
        distinct after reduction.
    masses : array_like, optional
        Positive probabilities summing to 1 (within 1e-12).  Defaults to
        equal weights.
    """

    discrete = True

    def __init__(self, angles, masses=None):
        angles = np.atleast_1d(wrap_angle(angles)).astype(float)
        if angles.size == 0:
            raise ValueError("need at least one atom")
        if masses is None:
            masses = np.full(angles.size, 1.0 / angles.size)
        masses = np.atleast_1d(np.asarray(masses, dtype=float))
        if masses.shape != angles.shape:
            raise ValueError("angles and masses must have the same length")
        if np.any(~(masses > 0.0)):
            raise ValueError("atom masses must be positive")
        if abs(masses.sum() - 1.0) > 1e-12:
            raise ValueError(f"atom masses must sum to 1, got {masses.sum()!r}")
        order = np.argsort(angles, kind="stable")
        angles, masses = angles[order], masses[order]
        if np.any(np.diff(angles) <= 0.0):
            raise ValueError("atom angles must be distinct modulo 2*pi")
        self.angles = angles
        self.masses = masses
        self.angles.flags.writeable = False
        self.masses.flags.writeable = False
        # Mass at the origin only enters at 2*pi, so it is excluded here.
        inner = angles > 0.0
        self._pos = angles[inner]
        cum = np.cumsum(masses[inner])
        if cum.size and not angles[0] == 0.0:
            cum[-1] = 1.0
        self._cum = cum

    def __repr__(self):
        return f"EmpiricalCircularCdf(angles={self.angles!r}, masses={self.masses!r})"

    def _cdf(self, theta):
        idx = np.searchsorted(self._pos, theta, side="right")
        padded = np.concatenate(([0.0], self._cum))
        return padded[idx]

    def quasi_inverse(self, u):
        u = _as_unit(u)
        idx = np.searchsorted(self._cum, u, side="left")
        padded = np.concatenate((self._pos, [TWO_PI]))
        out = padded[np.minimum(idx, self._pos.size)]
        return _scalar_or_array(np.where(u <= 0.0, 0.0, out))

    def shifted(self, alpha):
        alpha = wrap_angle(alpha)
        if alpha == 0.0:
            return self
        return EmpiricalCircularCdf(wrap_angle(self.angles - alpha), self.masses)

    def range_values(self):
        return np.unique(np.concatenate(([0.0], self._cum, [1.0])))


class ShiftedCdf(CircularCdf):
    """``F_alpha(theta) = F~(theta + alpha) - F~(alpha)`` for a base ``F``."""

    def __init__(self, base: CircularCdf, alpha: float):
        self.base = base
        self.alpha = wrap_angle(alpha)
        self.discrete = base.discrete
        self._offset = float(base.cdf(self.alpha))

    def __repr__(self):
        return f"ShiftedCdf({self.base!r}, alpha={self.alpha!r})"

    def _cdf(self, theta):
        # theta + alpha < 4*pi holds for theta <= 2*pi and alpha < 2*pi.
        return self.base.extend(theta + self.alpha) - self._offset

    def shifted(self, alpha):
        total = wrap_angle(self.alpha + wrap_angle(alpha))
        if total == 0.0:
            return self.base
        return ShiftedCdf(self.base, total)


def shift_origin(F: CircularCdf, alpha) -> CircularCdf:
    """Re-express ``F`` with ``alpha`` as the zero direction."""
    return F.shifted(alpha)
