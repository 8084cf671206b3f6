import math

import numpy as np
import pytest

from circcopula import CardioidCdf

# Marginals used by the reference simulation.
RHO_F, MU_F = 0.1, math.pi
RHO_G, MU_G = 0.3, math.pi / 3


@pytest.fixture
def F():
    return CardioidCdf(RHO_F, MU_F)


@pytest.fixture
def G():
    return CardioidCdf(RHO_G, MU_G)


def cardioid_density(theta, rho, mu):
    return (1.0 + 2.0 * rho * np.cos(theta - mu)) / (2.0 * np.pi)


def segment_mass_cdf(segments, u, v):
    """Mass of uniformly loaded segments inside [0, u] x [0, v].

    Each segment is ((u0, v0), (u1, v1), mass).  The set of parameters t in
    [0, 1] whose point falls in the rectangle is an interval cut out by two
    linear inequalities, so the mass is exact up to rounding.
    """
    total = 0.0
    for (u0, v0), (u1, v1), mass in segments:
        if mass == 0.0:
            continue
        lo, hi = 0.0, 1.0
        for start, delta, bound in ((u0, u1 - u0, u), (v0, v1 - v0, v)):
            # start + t * delta <= bound
            if delta > 0:
                hi = min(hi, (bound - start) / delta)
            elif delta < 0:
                lo = max(lo, (bound - start) / delta)
            elif start > bound:
                hi = -1.0
        total += mass * max(0.0, hi - lo)
    return total


def upper_segments(a):
    return [((0.0, a), (1.0 - a, 1.0), 1.0 - a), ((1.0 - a, 0.0), (1.0, a), a)]


def lower_segments(a):
    return [((0.0, a), (a, 0.0), a), ((a, 1.0), (1.0, a), 1.0 - a)]
