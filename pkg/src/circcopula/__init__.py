"""Circular copulas: origin-shift classes, circular Frechet-Hoeffding bounds,
the circular Mardia mixture, samplers and monotone-support detection."""

from .circ_dist import (
    TWO_PI,
    CardioidCdf,
    CircularCdf,
    EmpiricalCircularCdf,
    ShiftedCdf,
    UniformCdf,
    shift_origin,
    wrap_angle,
)
from .circ_joint import (
    CircularJoint,
    OriginShift,
    RangeRestrictionError,
    ShiftedCopula,
    fit_lower_bound_parameter,
    shift_joint,
    shifted_copula,
    upper_bound_case_table,
    upper_bound_deviation,
    upper_bound_parameter,
)
from .copula_core import (
    CircularLowerBound,
    CircularUpperBound,
    Copula,
    Independence,
    LowerFrechet,
    MardiaMixture,
    UpperFrechet,
    mardia_weights,
    volume,
)
from .dependence import (
    MonotoneVerdict,
    circular_monotone,
    fl83_test,
    is_planar_monotone,
    redraw,
)
from .sampling import (
    SampleSet,
    Segment,
    sample_circular,
    sample_copula,
    segments_lower,
    segments_upper,
    to_circular,
)

__version__ = "0.1.0"
