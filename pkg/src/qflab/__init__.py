"""Exact quadratic-form arithmetic over Q and its completions, Pfister norm
groups, divisors on hyperelliptic curves, and a local-global checker for
zero-cycles on quadric fibrations."""

from .curves import (
    ClosedPoint,
    DeltaVerdict,
    Divisor,
    FunctionElement,
    HyperellipticCurve,
    ProjectiveLine,
    delta_image_test,
    dn_subgroup_test,
    fiber_index,
    principal_divisor,
)
from .exprparse import parse_curve, parse_function
from .forms import (
    DiagonalForm,
    WittClass,
    anisotropic_places,
    in_fundamental_power,
    invariants,
    is_hyperbolic,
    is_isometric,
    is_isotropic,
    parse_form,
    witt_decompose,
    witt_index,
)
from .obstruction import (
    ChowClassCandidate,
    ExternalFact,
    FibrationInstance,
    ObstructionReport,
    RepresentationWitness,
    ResidueObstruction,
    Verdict,
    local_triviality,
    prop33_report,
    second_residue,
    theorem31_pipeline,
    verify_nonmembership_certificate,
)
from .pfister import (
    Answer,
    PfisterForm,
    QuaternionAlgebra,
    is_pfister_neighbor,
    norm_member,
    parse_pfister,
    ramified_places,
    reduced_norm_member,
)
from .places import GLOBAL, REAL, Place, hilbert_symbol, parse_place

__version__ = "0.1.0"
