"""Exact subgraph and homomorphism counting on bounded-degeneracy graphs
by reduction to weighted colorful cycle counting."""

from .expand import expand_even, expand_odd, recover_from_even, recover_from_odd
from .graphs import (DirectedGraph, UndirectedGraph, degeneracy_order,
                     load_edge_list, orient_by_degeneracy)
from .patterns import (CanonicalForm, Pattern, SpasmDecomposition,
                       canonical_form, enumerate_acyclic_orientations, licl,
                       spasm, spasm_coefficients, sub_from_homs)
from .pipeline import (ClassificationReport, classify_pattern, count_cycles,
                       hom_count, sub_count)

__all__ = [
    "DirectedGraph",
    "UndirectedGraph",
    "degeneracy_order",
    "load_edge_list",
    "orient_by_degeneracy",
    "CanonicalForm",
    "Pattern",
    "SpasmDecomposition",
    "canonical_form",
    "enumerate_acyclic_orientations",
    "licl",
    "spasm",
    "spasm_coefficients",
    "sub_from_homs",
    "ClassificationReport",
    "classify_pattern",
    "count_cycles",
    "hom_count",
    "sub_count",
    "expand_even",
    "expand_odd",
    "recover_from_even",
    "recover_from_odd",
]

__version__ = "0.1.0"
