"""Exact checks of quantization commuting with reduction on fixed-point models."""

from .characters import Box, FormalCharacter
from .corpus import get_example, model_from_document, model_to_document
from .errors import (BoxTooSmall, CheckFailed, DegeneratePolarization, EmptyP, GammaSearchExhausted,
                     InconsistentGKM, NonFiniteSystem, NotDominant, NotInRegion, NotQuasiPolynomial,
                     NotToricModel, NotWeaklyRegular, QRError, UnknownExample, ZeroNotInDelta)
from .localization import (Edge, FixedPoint, FixedPointModel, Polarization, dominant_multiplicity,
                           index_character, index_multiplicity, kostant_partition,
                           multiplicity_function, polarize, q_multiplicities,
                           truncated_series_oracle)
from .moment_geometry import (ComponentDatum, choose_gamma, component_halfspaces, construct_p,
                              enumerate_components, moment_polytope, polytope_p, principal_hull,
                              weakly_regular)
from .polyhedra import AffineSubspace, RationalPolytope
from .quasipoly import ConeRegion, QuasiPolynomial, RayDomain, equals, fit, restrict_to_ray
from .reduction import (OrbifoldPoint, QRCertificate, ReducedLevelData, derive_level_data,
                        kawasaki_point_sum, qr_check)
from .root_lattice import (RootSystem, WeightLattice, WeylElement, build_root_system,
                           shifted_action, torus, weyl_numerator)

__version__ = "0.1.0"

__all__ = [
    "AffineSubspace",
    "Box",
    "BoxTooSmall",
    "CheckFailed",
    "ComponentDatum",
    "ConeRegion",
    "DegeneratePolarization",
    "Edge",
    "EmptyP",
    "FixedPoint",
    "FixedPointModel",
    "FormalCharacter",
    "GammaSearchExhausted",
    "InconsistentGKM",
    "NonFiniteSystem",
    "NotDominant",
    "NotInRegion",
    "NotQuasiPolynomial",
    "NotToricModel",
    "NotWeaklyRegular",
    "OrbifoldPoint",
    "Polarization",
    "QRCertificate",
    "QRError",
    "QuasiPolynomial",
    "RationalPolytope",
    "RayDomain",
    "ReducedLevelData",
    "RootSystem",
    "UnknownExample",
    "WeightLattice",
    "WeylElement",
    "ZeroNotInDelta",
    "build_root_system",
    "choose_gamma",
    "component_halfspaces",
    "construct_p",
    "derive_level_data",
    "dominant_multiplicity",
    "enumerate_components",
    "equals",
    "fit",
    "get_example",
    "index_character",
    "index_multiplicity",
    "kawasaki_point_sum",
    "kostant_partition",
    "model_from_document",
    "model_to_document",
    "moment_polytope",
    "multiplicity_function",
    "polarize",
    "polytope_p",
    "principal_hull",
    "q_multiplicities",
    "qr_check",
    "restrict_to_ray",
    "shifted_action",
    "torus",
    "truncated_series_oracle",
    "weakly_regular",
    "weyl_numerator",
]
