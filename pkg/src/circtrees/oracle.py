"""Ground-truth counts by exact cofactor determinants and eigenvalue products.

The cofactor route (Kirchhoff for undirected graphs, Tutte for digraphs)
works entirely in exact integers via fraction-free Bareiss elimination, so
it is immune to rounding and serves as the reference for every closed-form
path. A second, independent route multiplies certified enclosures of the
N-1 non-zero Laplacian eigenvalues; its enclosure must always contain the
cofactor answer. Neither route consults the structural-zero predicate:
zeros have to emerge from the arithmetic itself.

Both routes are O(N^3)-ish and intended for modest N; the closed-form
module owns large instances.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .graphs import (
    GeneralCirculantInstance,
    LaplacianMatrix,
    TreeCount,
    _digraph_eigenvalue_iv,
    _undirected_instance_eigenvalue_iv,
    laplacian,
)
from .intervals import (
    DEFAULT_BUDGET,
    ComplexInterval,
    IntervalField,
    PrecisionBudget,
    PrecisionExhausted,
    RealInterval,
    _TooWide,
)

#: Square array of exact integers (the carrier for Laplacian minors).
ExactMatrix = Sequence[Sequence[int]]


def bareiss_determinant(matrix: ExactMatrix) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination.

    A zero pivot is repaired by swapping in a nonzero row from below (the
    sign flips); if the whole pivot column is zero the determinant is 0.
    Every division below is exact by the Bareiss identity.
    """
    n = len(matrix)
    rows = [list(r) for r in matrix]
    for r in rows:
        if len(r) != n:
            raise ValueError("matrix must be square")
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for c in range(n - 1):
        if rows[c][c] == 0:
            for i in range(c + 1, n):
                if rows[i][c] != 0:
                    rows[c], rows[i] = rows[i], rows[c]
                    sign = -sign
                    break
            else:
                return 0
        pivot_row = rows[c]
        pivot = pivot_row[c]
        for i in range(c + 1, n):
            row = rows[i]
            factor = row[c]
            for j in range(c + 1, n):
                row[j] = (pivot * row[j] - factor * pivot_row[j]) // prev
            row[c] = 0
        prev = pivot
    return sign * rows[n - 1][n - 1]


def cofactor_count(L: LaplacianMatrix, v: int) -> TreeCount:
    """Cofactor of the Laplacian at vertex v (row and column v deleted).

    For a directed Laplacian this counts arborescences converging to v;
    for an undirected one it is the spanning-tree count. 0 means the graph
    is disconnected (in the relevant sense).
    """
    if not 0 <= v < L.size:
        raise ValueError(f"vertex {v} outside [0, {L.size - 1}]")
    return TreeCount(bareiss_determinant(L.minor(v)))


def count_arborescences(
    inst: GeneralCirculantInstance, *, verify_transitivity: bool = False
) -> TreeCount:
    """Total number of converging arborescences, summed over all roots.

    Vertex transitivity makes every cofactor equal, so this is N times the
    cofactor at vertex 0. `verify_transitivity` cross-asserts a second
    cofactor, for test/debug runs.
    """
    if not inst.directed:
        raise ValueError("instance is undirected; use count_spanning_trees")
    L = laplacian(inst)
    per_root = cofactor_count(L, 0)
    if verify_transitivity and inst.size > 1:
        other = cofactor_count(L, inst.size // 2)
        if other != per_root:
            raise AssertionError(
                f"cofactors differ between vertices: {per_root} vs {other}"
            )
    return TreeCount(inst.size * per_root)


def count_spanning_trees(inst: GeneralCirculantInstance) -> TreeCount:
    """Spanning trees of an undirected instance (any single cofactor)."""
    if inst.directed:
        raise ValueError("instance is directed; use count_arborescences")
    return cofactor_count(laplacian(inst), 0)


def matrix_tree_count(inst: GeneralCirculantInstance) -> TreeCount:
    """Dispatch to the cofactor count appropriate for the instance."""
    if inst.directed:
        return count_arborescences(inst)
    return count_spanning_trees(inst)


def _eigenvalue_product_enclosure(
    inst: GeneralCirculantInstance, F: IntervalField
) -> RealInterval:
    N = inst.size
    if inst.directed:
        prod = ComplexInterval(F.one(), F.zero())
        for k in range(1, N):
            prod = prod * _digraph_eigenvalue_iv(inst, k, F)
        if not prod.im.contains(0):
            # conjugate pairing forces a real product; a violation would
            # mean the enclosure machinery itself is unsound
            raise AssertionError("eigenvalue product enclosure excludes the real axis")
        return prod.re
    prod = F.one()
    for k in range(1, N):
        prod = prod * _undirected_instance_eigenvalue_iv(inst, k, F)
    return prod.scale(Fraction(1, N))


def _certified_eigenvalue_product(
    inst: GeneralCirculantInstance, budget: PrecisionBudget
) -> tuple[RealInterval, int, int]:
    bits = budget.start_bits
    while True:
        try:
            enc = _eigenvalue_product_enclosure(inst, IntervalField(bits))
            value = enc.unique_integer()
        except _TooWide:
            enc, value = None, None
        if value is not None:
            return enc, value, bits
        if bits >= budget.cap_bits:
            raise PrecisionExhausted(
                f"eigenvalue product not certified at {bits} bits "
                f"(cap {budget.cap_bits})"
            )
        bits = min(2 * bits, budget.cap_bits)


def eigenvalue_product(
    inst: GeneralCirculantInstance, budget: PrecisionBudget = DEFAULT_BUDGET
) -> RealInterval:
    """Certified enclosure of the product of the N-1 non-zero eigenvalues.

    For undirected instances the product is divided by N (matrix tree
    theorem); either way the enclosure contains the exact count, and is
    refined until it isolates that single integer.
    """
    enc, _, _ = _certified_eigenvalue_product(inst, budget)
    return enc


def eigenvalue_product_count(
    inst: GeneralCirculantInstance, budget: PrecisionBudget = DEFAULT_BUDGET
) -> TreeCount:
    """The unique integer certified by `eigenvalue_product`."""
    _, value, bits = _certified_eigenvalue_product(inst, budget)
    return TreeCount(value, bits_used=bits)
