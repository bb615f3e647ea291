"""Exact workbench for pseudoline kaleidoscope wedges and alpha-curve
incidence structures."""

from .structure import (
    Disconnected,
    DuplicateVertex,
    IncidenceStructure,
    InvalidStructureError,
    PairMultiplicity,
    SmallVertex,
    Stats,
    UnusedCurve,
    ValidationReport,
    compute_stats,
    validate,
)
from .wedge import (
    Apex,
    BeamCopy,
    BeamSpec,
    Bounce,
    BounceEvent,
    Crossing,
    ExpandedArrangement,
    ExpansionError,
    Ideal,
    LineAtInfinity,
    Mirror,
    NonClosingBeam,
    SelfCrossingBeam,
    ValidationFailed,
    WedgeSpec,
    expand,
    wedge_paths,
)
from .family import (
    family_point_order,
    family_wedge,
    gen_near_pencil,
    gen_pencil,
    gen_simple_cyclic,
    per_class_max_degrees,
    reference_family_counts,
)
from .formats import (
    ParseError,
    parse_structure,
    parse_wedge,
    serialize_structure,
    serialize_wedge,
)
from .audits import (
    DichotomyReport,
    DiracAuditReport,
    DyadicProfileParams,
    DyadicWindowReport,
    PairIdentityReport,
    SizeLimitExceeded,
    TkBoundEntry,
    TkBoundsReport,
    audit_dirac,
    audit_pair_identity,
    audit_tk_bounds,
    dichotomy_report,
    dyadic_profile,
)
from .plane import (
    DuplicateLineId,
    NotPrime,
    ProjectivePlane,
    pg2,
    sample_lines,
    splitmix64,
    structure_from_lines,
)
from .render import RenderOptions, render_arrangement, render_wedge

__version__ = "0.1.0"
