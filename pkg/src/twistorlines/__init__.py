"""Twistor lines in CP^3: fibers, linear systems of surfaces through them, and line enumeration."""

from .analysis import (
    analyze_surface,
    collinearity_report,
    contains_line,
    irreducibility_slice_certificate,
    singularity_probe,
    smooth_along_line,
)
from .geometry import LineP3, PluckerVec, ProjPoint3
from .linefinder import LineFinderOptions, LineFound, find_lines
from .linsys import (
    CohomologyReport,
    Configuration,
    cohomology,
    condition_rows,
    general_member,
    is_base_point,
    j_invariant_member,
    linear_system,
    nu,
    planar_cohomology,
    bidegree_cohomology,
)
from .plucker import (
    incidence,
    is_twistor,
    j_plucker,
    plucker_of,
    quadric_through_three,
    ruling_lines_at,
    transversals,
)
from .polyring import BinaryForm, PolyForm, binary_gcd, j_form, partials, restrict_to_line
from .quaternion import HPoint, Quaternion
from .scalars import GaussianRational
from .twistor import fiber_through, j_point, pi_project, sample_twistor_lines, twistor_fiber

__version__ = "0.1.0"
