"""Exact acyclic and cellular relations between finite chain complexes
over Z and Z/n."""

from .certify import HomEpi, HomologyPiece, MalformedCertificate, ModuleEpi, ShiftedSupport
from .complexes import (ChainMap, FreeComplex, HomologyObject, ModuleValuedMap, cone,
                        direct_sum, euler_characteristics, hocolim, homology, homology_map,
                        induced_homology_maps, module_to_complex, suspend, tensor)
from .exactla import IntMatrix, snf
from .modules import FPModule, ModuleMap, is_quotient_of_sum
from .relations import (Obstruction, Verdict, acyclic_over, cellular_decide, hom_mono_acyclic,
                        verify_certificate)
from .rings import ZZ, PrimeIdeal, RingSpec, SuppSet
from .stanley import (PhiFunction, class_contained, classes_equal, localizing_member,
                      phi_member, phi_of_generators)

__version__ = "0.1.0"

__all__ = [
    "ChainMap", "FPModule", "FreeComplex", "HomEpi", "HomologyObject", "HomologyPiece",
    "IntMatrix", "MalformedCertificate", "ModuleEpi", "ModuleMap", "ModuleValuedMap",
    "Obstruction", "PhiFunction", "PrimeIdeal", "RingSpec", "ShiftedSupport", "SuppSet",
    "Verdict", "ZZ", "acyclic_over", "cellular_decide", "class_contained", "classes_equal",
    "cone", "direct_sum", "euler_characteristics", "hocolim", "hom_mono_acyclic", "homology",
    "homology_map", "induced_homology_maps", "is_quotient_of_sum", "localizing_member",
    "module_to_complex", "phi_member", "phi_of_generators", "snf", "suspend", "tensor",
    "verify_certificate",
]
