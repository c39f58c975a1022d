"""Evolgebra.

Nilpotent evolution algebras of maximal nilpotency index: their
derivations, automorphisms, Banach gamma-norm and the exponential
group exp(Der(E)) inside Aut(E).
"""

from evolgebra.algebra import Element
from evolgebra.algebra import EvolutionAlgebra
from evolgebra.algebra import Subspace
from evolgebra.automorphisms import AutomorphismParams
from evolgebra.automorphisms import build_automorphism
from evolgebra.automorphisms import eta
from evolgebra.automorphisms import is_automorphism
from evolgebra.derivations import Case
from evolgebra.derivations import DerivationParams
from evolgebra.derivations import build_derivation
from evolgebra.derivations import derivation_space
from evolgebra.derivations import index_set
from evolgebra.derivations import is_derivation
from evolgebra.document import AlgebraDocument
from evolgebra.document import parse_algebra
from evolgebra.errors import EvolgebraError
from evolgebra.expgroup import exp_derivation_closed
from evolgebra.expgroup import exp_series
from evolgebra.expgroup import membership_exp_der
from evolgebra.expgroup import quotient_report
from evolgebra.linalg import LinearMap
from evolgebra.norm import GammaNorm
from evolgebra.norm import gamma
from evolgebra.numeric import FieldTag
from evolgebra.numeric import Scalar


__all__ = [
    "AlgebraDocument",
    "AutomorphismParams",
    "Case",
    "DerivationParams",
    "Element",
    "EvolgebraError",
    "EvolutionAlgebra",
    "FieldTag",
    "GammaNorm",
    "LinearMap",
    "Scalar",
    "Subspace",
    "build_automorphism",
    "build_derivation",
    "derivation_space",
    "eta",
    "exp_derivation_closed",
    "exp_series",
    "gamma",
    "index_set",
    "is_automorphism",
    "is_derivation",
    "membership_exp_der",
    "parse_algebra",
    "quotient_report",
]
