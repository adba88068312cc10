"""Extreme points and convex hulls of limit sets of z -> c z + xi^j."""
from .core import (
    IfsParams,
    PointCloud,
    default_depth,
    enumerate_cloud,
    evaluate,
    fixed_point,
    hull_cloud,
    parse_angle,
    tail_bound,
)
from .errors import (
    AmbiguousTieError,
    BudgetExceededError,
    InvalidParamsError,
    InvalidWordError,
    NotAFaceError,
    PolyIfsError,
    RationalRequiredError,
    StructureError,
)
from .extreme import (
    DigitChoices,
    ExtremeWordSet,
    SupportQuery,
    constellation,
    digit_choices,
    extreme_points,
    extreme_word_set,
    support_value,
    v_theta,
)
from .kernels import BACKEND
from .oracle import brute_force_support, convex_hull_2d, verify
from .rational import (
    FaceIfs,
    HullPolygon,
    RationalIfsParams,
    convexity_necessary,
    face_ifs,
    face_is_interval,
    hull_polygon,
    period_b,
    theta_set,
)
from .render import render_constellations, render_limit_set

__version__ = "0.1.0"
