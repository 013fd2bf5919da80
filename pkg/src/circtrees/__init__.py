"""Exact spanning-tree and arborescence counts for two circulant families.

Directed circulant graphs whose generators grow linearly with the vertex
count, and the n-th/(n-1)-th power graphs of the beta*n cycle. Counts come
from short certified product formulas (ceil(beta/2) - 1 transcendental
factors), cross-checkable against two independent exact oracles: cofactor
determinants of the Laplacian and the product of its non-zero eigenvalues.
"""

from .closedform import (
    CyclePowerTerms,
    DigraphSpectralTerms,
    asymptotic_estimate,
    asymptotic_ratio,
    asymptotic_relative_error,
    cycle_power_count,
    cycle_power_terms,
    digraph_beta_product,
    digraph_closed_form,
    digraph_spectral_terms,
    digraph_two_generator,
    directed_cycle_count,
)
from .graphs import (
    CyclePowerSpec,
    CyclePowerVariant,
    DirectedCirculantSpec,
    GeneralCirculantInstance,
    LaplacianMatrix,
    StructuralZeroReason,
    TreeCount,
    cycle_power_eigenvalue,
    cycle_power_instance,
    digraph_eigenvalue,
    is_structurally_zero,
    laplacian,
    reduce_to_instance,
)
from .intervals import (
    ComplexInterval,
    IntervalField,
    PrecisionBudget,
    PrecisionExhausted,
    RealInterval,
    certify_integer,
)
from .oracle import (
    bareiss_determinant,
    cofactor_count,
    count_arborescences,
    count_spanning_trees,
    eigenvalue_product,
    eigenvalue_product_count,
    matrix_tree_count,
)

__all__ = [
    "ComplexInterval",
    "CyclePowerSpec",
    "CyclePowerTerms",
    "CyclePowerVariant",
    "DigraphSpectralTerms",
    "DirectedCirculantSpec",
    "GeneralCirculantInstance",
    "IntervalField",
    "LaplacianMatrix",
    "PrecisionBudget",
    "PrecisionExhausted",
    "RealInterval",
    "StructuralZeroReason",
    "TreeCount",
    "asymptotic_estimate",
    "asymptotic_ratio",
    "asymptotic_relative_error",
    "bareiss_determinant",
    "certify_integer",
    "cofactor_count",
    "count_arborescences",
    "count_spanning_trees",
    "cycle_power_count",
    "cycle_power_eigenvalue",
    "cycle_power_instance",
    "cycle_power_terms",
    "digraph_beta_product",
    "digraph_closed_form",
    "digraph_eigenvalue",
    "digraph_spectral_terms",
    "digraph_two_generator",
    "directed_cycle_count",
    "eigenvalue_product",
    "eigenvalue_product_count",
    "is_structurally_zero",
    "laplacian",
    "matrix_tree_count",
    "reduce_to_instance",
]

__version__ = "0.1.0"
