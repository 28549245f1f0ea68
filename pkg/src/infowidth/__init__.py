"""Combinatorial information measures and the information width.

The main entry points are re-exported here; see the submodules for details:
``measures`` (entropy, information, description complexity), ``width``
(I*(l) and efficiency), ``classes`` (binary function classes and their
properties), ``asymptotics`` (closed-form estimates), ``random_classes``
(samplers and Monte Carlo estimates) and ``figures``.
"""

__version__ = "0.1.0"

from .errors import (
    DomainError,
    InfeasibleSamplingError,
    InfoWidthError,
    OutOfRangeError,
    PreconditionWarning,
    UndefinedValueError,
    UnsupportedMethodError,
    UnsupportedRepresentationError,
)
from .measures import (
    WHOLE_SPACE,
    InfoReport,
    PropertyCollection,
    TargetSpace,
    TargetSubset,
    complement_complexity,
    conditional_entropy,
    cost,
    density,
    description_complexity,
    entropy,
    info_between_sets,
    information,
    is_informative,
)
from .width import (
    brute_force_width,
    efficiency,
    info_width,
    kappa_star,
    optimal_property,
    provider_width_bruteforce,
    threshold_r,
)
from .classes import (
    ExpDecay,
    FuncDomain,
    FunctionClass,
    Identity,
    LabeledSample,
    Ld,
    Vd,
    VdC,
    VdSample,
    enumerate_property,
    l_dimension,
    property_report,
    satisfies,
    trace,
    vc_dimension,
)
from .kernels import BACKEND as KERNEL_BACKEND

__all__ = [
    "DomainError",
    "ExpDecay",
    "FuncDomain",
    "FunctionClass",
    "Identity",
    "InfeasibleSamplingError",
    "InfoReport",
    "InfoWidthError",
    "KERNEL_BACKEND",
    "LabeledSample",
    "Ld",
    "OutOfRangeError",
    "PreconditionWarning",
    "PropertyCollection",
    "TargetSpace",
    "TargetSubset",
    "UndefinedValueError",
    "UnsupportedMethodError",
    "UnsupportedRepresentationError",
    "Vd",
    "VdC",
    "VdSample",
    "WHOLE_SPACE",
    "brute_force_width",
    "complement_complexity",
    "conditional_entropy",
    "cost",
    "density",
    "description_complexity",
    "efficiency",
    "entropy",
    "enumerate_property",
    "info_between_sets",
    "info_width",
    "information",
    "is_informative",
    "kappa_star",
    "l_dimension",
    "optimal_property",
    "property_report",
    "provider_width_bruteforce",
    "satisfies",
    "threshold_r",
    "trace",
    "vc_dimension",
]
