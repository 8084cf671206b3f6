"""Exact samplers for the circular bound copulas and their Mardia mixture.

``M_a`` and ``W_b`` are singular: all of their mass sits on two line segments
of slope +1 (resp. -1).  A draw picks a mixture component, then for a
singular component draws ``u`` uniformly and places ``v`` on whichever
segment covers that ``u``.  Since every segment has unit slope magnitude and
carries mass equal to its u-extent, this is the same as picking a segment
proportionally to its mass and a uniform position along it.

Random numbers come from numpy's PCG64.  Draws are produced in fixed-size
chunks; chunk ``k`` of a run seeded with ``seed`` uses the child stream
``SeedSequence(seed, spawn_key=(k,))``.  The output therefore depends only
on ``(seed, n)`` and the copula parameters, never on how chunks are
scheduled.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from .circ_dist import CircularCdf, wrap_angle
from .copula_core import mardia_weights

__all__ = [
    "Segment",
    "SampleSet",
    "CHUNK_SIZE",
    "COMPONENT_UPPER",
    "COMPONENT_INDEPENDENT",
    "COMPONENT_LOWER",
    "segments_upper",
    "segments_lower",
    "chunk_generator",
    "sample_copula",
    "to_circular",
    "sample_circular",
]

CHUNK_SIZE = 65536

COMPONENT_UPPER = 1
COMPONENT_INDEPENDENT = 0
COMPONENT_LOWER = -1


class Segment(NamedTuple):
    """A line segment in the unit square carrying uniform mass."""

    start: tuple[float, float]
    end: tuple[float, float]
    mass: float

    def contains(self, u, v, tol=1e-12):
        """Whether ``(u, v)`` lies on the segment (within ``tol``)."""
        (u0, v0), (u1, v1) = self.start, self.end
        du, dv = u1 - u0, v1 - v0
        length2 = du * du + dv * dv
        u = np.asarray(u, dtype=float)
        v = np.asarray(v, dtype=float)
        if length2 == 0.0:
            return np.hypot(u - u0, v - v0) <= tol
        t = np.clip(((u - u0) * du + (v - v0) * dv) / length2, 0.0, 1.0)
        return np.hypot(u - (u0 + t * du), v - (v0 + t * dv)) <= tol


def segments_upper(a) -> list[Segment]:
    """Support of ``M_a``: (0,a)-(1-a,1) with mass 1-a, (1-a,0)-(1,a) with mass a."""
    a = float(a)
    return [
        Segment((0.0, a), (1.0 - a, 1.0), 1.0 - a),
        Segment((1.0 - a, 0.0), (1.0, a), a),
    ]


def segments_lower(a) -> list[Segment]:
    """Support of ``W_a``: (0,a)-(a,0) with mass a, (a,1)-(1,a) with mass 1-a."""
    a = float(a)
    return [
        Segment((0.0, a), (a, 0.0), a),
        Segment((a, 1.0), (1.0, a), 1.0 - a),
    ]


def chunk_generator(seed, index) -> np.random.Generator:
    """PCG64 generator for chunk ``index`` of a run seeded with ``seed``."""
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed, spawn_key=(index,))))


def _draw_chunk(rng, m, cum_plus, cum_zero, a, b):
    draws = rng.random((m, 3))
    pick, u, w = draws[:, 0], draws[:, 1], draws[:, 2]
    comp = np.where(
        pick < cum_plus,
        COMPONENT_UPPER,
        np.where(pick < cum_zero, COMPONENT_INDEPENDENT, COMPONENT_LOWER),
    )
    v_upper = np.where(u < 1.0 - a, u + a, u - (1.0 - a))
    v_lower = np.where(u < b, b - u, (1.0 + b) - u)
    v = np.where(comp == COMPONENT_UPPER, v_upper, np.where(comp == COMPONENT_LOWER, v_lower, w))
    return u, np.clip(v, 0.0, 1.0), comp


def sample_copula(n, gamma=0.7, a=0.7, b=0.4, seed=0, return_components=False):
    """Draw ``n`` i.i.d. pairs from the mixture ``w+ M_a + w0 Pi + w- W_b``.

    Parameters
    ----------
    n : int
        Number of draws, ``n >= 0``.
    gamma, a, b : float
        Mixture parameters; ``gamma`` in [-1, 1], ``a`` and ``b`` in [0, 1].
    seed : int
        Root seed (any nonnegative integer up to 64 bits).
    return_components : bool
        Also return the component label of each draw (+1 for ``M_a``,
        0 for ``Pi``, -1 for ``W_b``).

    Returns
    -------
    u, v : ndarray
        Coordinates on [0, 1].
    components : ndarray of int, optional
        Only when ``return_components`` is true.
    """
    n = int(n)
    if n < 0:
        raise ValueError("n must be nonnegative")
    w_plus, w_zero, _ = mardia_weights(gamma)
    a = float(a)
    b = float(b)
    if not (0.0 <= a <= 1.0 and 0.0 <= b <= 1.0):
        raise ValueError("a and b must lie in [0, 1]")
    cum_plus = w_plus
    cum_zero = w_plus + w_zero
    us, vs, cs = [], [], []
    for k, start in enumerate(range(0, n, CHUNK_SIZE)):
        m = min(CHUNK_SIZE, n - start)
        u, v, c = _draw_chunk(chunk_generator(seed, k), m, cum_plus, cum_zero, a, b)
        us.append(u)
        vs.append(v)
        cs.append(c)
    u = np.concatenate(us) if us else np.empty(0)
    v = np.concatenate(vs) if vs else np.empty(0)
    comps = np.concatenate(cs) if cs else np.empty(0, dtype=int)
    if return_components:
        return u, v, comps
    return u, v


@dataclass(frozen=True)
class SampleSet:
    """Angle pairs on the torus plus the metadata that produced them."""

    theta: np.ndarray
    phi: np.ndarray
    meta: dict = field(default_factory=dict)
    components: np.ndarray | None = None

    def __len__(self):
        return int(self.theta.size)

    @property
    def pairs(self):
        return np.column_stack((self.theta, self.phi))


def to_circular(u, v, F: CircularCdf, G: CircularCdf, meta=None, components=None) -> SampleSet:
    """Map copula draws to angles through the quasi-inverses of ``F`` and ``G``."""
    u = np.atleast_1d(np.asarray(u, dtype=float))
    v = np.atleast_1d(np.asarray(v, dtype=float))
    # Quasi-inverses can return 2*pi for u = 1; that is the origin again.
    theta = np.atleast_1d(wrap_angle(F.quasi_inverse(u))) if u.size else np.empty(0)
    phi = np.atleast_1d(wrap_angle(G.quasi_inverse(v))) if v.size else np.empty(0)
    return SampleSet(theta, phi, dict(meta or {}), components)


def sample_circular(n, F: CircularCdf, G: CircularCdf, gamma=0.7, a=0.7, b=0.4, seed=0) -> SampleSet:
    """Draw from the mixture and transform to circular marginals ``F``, ``G``."""
    u, v, comps = sample_copula(n, gamma, a, b, seed, return_components=True)
    meta = {"seed": int(seed), "n": int(n), "gamma": float(gamma), "a": float(a), "b": float(b)}
    for name, cdf in (("F", F), ("G", G)):
        rho = getattr(cdf, "rho", None)
        if rho is not None:
            meta[f"rho_{name}"] = float(rho)
            meta[f"mu_{name}"] = float(cdf.mu)
    return to_circular(u, v, F, G, meta, comps)
