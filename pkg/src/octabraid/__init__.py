"""Double covers of rotational hyperoctahedral groups from braid quotients.

The package has three layers: symbolic words and presentations with a
Todd-Coxeter oracle (``words``, ``cosets``, ``quotient``, ``hyperocta``),
exact order-48 models (``models``), and numeric paths in SO(n) with the
contraction flow and local-word reduction (``sopath``, ``rewrite``).
"""

from .cosets import CosetTable, EnumLimits, LimitExceeded, enumerate_cosets, group_order
from .hyperocta import (
    SignedPerm,
    ThetaImage,
    compose,
    determinant,
    kernel,
    theta_generator,
    theta_image,
    theta_plane,
    theta_word,
)
from .quotient import CanonicalForm, GroupCtx, expand
from .sopath import (
    FlowParams,
    FlowResult,
    RotationPath,
    compile_path,
    contract,
    distance,
    generator_matrix,
    is_local,
    snap_to_word,
    stall_witness,
)
from .words import (
    Letter,
    PlaneLetter,
    Presentation,
    Word,
    free_reduce,
    invert,
    parse_word,
    plane_to_standard,
    presentation_for,
)

__version__ = "0.1.0"

__all__ = [
    "CanonicalForm",
    "CosetTable",
    "EnumLimits",
    "FlowParams",
    "FlowResult",
    "GroupCtx",
    "Letter",
    "LimitExceeded",
    "PlaneLetter",
    "Presentation",
    "RotationPath",
    "SignedPerm",
    "ThetaImage",
    "Word",
    "compile_path",
    "compose",
    "contract",
    "determinant",
    "distance",
    "enumerate_cosets",
    "expand",
    "free_reduce",
    "generator_matrix",
    "group_order",
    "invert",
    "is_local",
    "kernel",
    "parse_word",
    "plane_to_standard",
    "presentation_for",
    "snap_to_word",
    "stall_witness",
    "theta_generator",
    "theta_image",
    "theta_plane",
    "theta_word",
]
