"""Contiguity invariants of finite simplicial complexes.

Strong collapses and cores, categorical products, contiguity classes of
simplicial maps, the simplicial LS category ``scat`` and the higher
discrete topological complexity ``TC_n``, each with replayable
certificates.
"""

from .complex import (
    Complex,
    SimplicialMap,
    Subcomplex,
    boundary_of_simplex,
    compose,
    constant_map,
    core,
    edge_path_connected,
    generated_subcomplex,
    identity,
    is_dominated,
    is_face,
    is_isomorphic,
    is_strongly_collapsible,
    normalize,
    restrict,
    same_strong_homotopy_type,
    simplex,
    strong_expansion,
    subcomplex,
)
from .contiguity import (
    ClassDecision,
    ContiguityChain,
    SearchBudget,
    certify_strong_equivalence,
    class_contains_constant,
    is_contiguous,
    same_contiguity_class,
    verify_chain,
)
from .invariants import (
    BoundResult,
    CoverCertificate,
    inequality_suite,
    is_categorical,
    is_farber,
    scat,
    tc,
    verify_cover,
)
from .io import load_fixture, parse, serialize
from .product import (
    ProductComplex,
    categorical_product,
    diagonal,
    map_power,
    member,
    power,
    preimage_subcomplex,
    projection,
)

__version__ = "0.1.0"
