"""Circulant graph families: parameter specs, concrete instances, Laplacians.

Two parameterized families are modeled. The directed family lives on
N = beta*n vertices with generator set {p, g_1*n + p, ..., g_{d-1}*n + p}
reduced mod N (an oriented edge v -> v+g for each generator g). The
undirected family is the cycle power graph on N = beta*n vertices, where
vertices at cycle distance <= k are adjacent, read as the Cayley multigraph
on generators {1, ..., k}; for even N the generator N/2 contributes a
double edge, which is what the spectral product formulas count.

Laplacian eigenvalues are always evaluated from the closed trigonometric
expressions as certified enclosures, never by numerically diagonalizing
the matrix. All values here are immutable and safe to share across tasks.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from .intervals import ComplexInterval, IntervalField, RealInterval


class TreeCount(int):
    """Nonnegative arbitrary-precision count carrying certification metadata.

    `bits_used` records the working precision that certified the value;
    it is 0 for results reached by exact integer/rational arithmetic.
    """

    bits_used: int

    def __new__(cls, value: int, bits_used: int = 0) -> "TreeCount":
        if value < 0:
            raise ValueError("a tree count cannot be negative")
        self = super().__new__(cls, value)
        self.bits_used = bits_used
        return self


class CyclePowerVariant(Enum):
    """Which power of the beta*n cycle: the n-th or the (n-1)-th."""

    POWER_N = "n"
    POWER_N_MINUS_1 = "n-1"


class StructuralZeroReason(Enum):
    """Why a directed spec has no spanning arborescences at all."""

    NOT_COPRIME = "gcd(p,n)!=1"
    ALL_EVEN = "beta,p,gammas all even"


@dataclass(frozen=True)
class DirectedCirculantSpec:
    """Directed circulant family on beta*n vertices.

    Generators are p and gamma*n + p for each gamma; gammas must be
    nondecreasing with 1 <= gamma <= beta. d = 1 + len(gammas) is the
    out-degree.
    """

    beta: int
    n: int
    p: int
    gammas: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "gammas", tuple(self.gammas))
        for name in ("beta", "n", "p"):
            v = getattr(self, name)
            if not isinstance(v, int) or v < 1:
                raise ValueError(f"{name} must be a positive integer, got {v!r}")
        for g in self.gammas:
            if not isinstance(g, int) or not 1 <= g <= self.beta:
                raise ValueError(f"gamma {g!r} outside [1, beta={self.beta}]")
        if any(a > b for a, b in zip(self.gammas, self.gammas[1:])):
            raise ValueError("gammas must be nondecreasing")

    @property
    def d(self) -> int:
        return 1 + len(self.gammas)

    @property
    def size(self) -> int:
        return self.beta * self.n


@dataclass(frozen=True)
class CyclePowerSpec:
    """Cycle power family: the n-th or (n-1)-th power of the beta*n cycle."""

    beta: int
    n: int
    variant: CyclePowerVariant = CyclePowerVariant.POWER_N

    def __post_init__(self) -> None:
        if not isinstance(self.beta, int) or self.beta < 2:
            raise ValueError(f"beta must be an integer >= 2, got {self.beta!r}")
        if not isinstance(self.n, int) or self.n < 1:
            raise ValueError(f"n must be a positive integer, got {self.n!r}")
        if self.variant is CyclePowerVariant.POWER_N_MINUS_1 and self.n < 2:
            raise ValueError("the (n-1)-th power needs n >= 2 (n = 1 gives an empty graph)")

    @property
    def power(self) -> int:
        return self.n if self.variant is CyclePowerVariant.POWER_N else self.n - 1

    @property
    def size(self) -> int:
        return self.beta * self.n


@dataclass(frozen=True)
class GeneralCirculantInstance:
    """Concrete circulant (multi)graph: vertex count plus generator residues.

    Directed instances store residues in [0, N-1] (0 is a self-loop);
    undirected instances store residues in [1, N//2]. Multiplicities count
    parallel edges.
    """

    size: int
    directed: bool
    generators: tuple[tuple[int, int], ...]  # (residue, multiplicity), sorted

    def __post_init__(self) -> None:
        if self.size < 1:
            raise ValueError("vertex count must be positive")
        lo = 0 if self.directed else 1
        hi = self.size - 1 if self.directed else self.size // 2
        seen = set()
        for g, m in self.generators:
            if not lo <= g <= hi:
                raise ValueError(f"generator {g} outside [{lo}, {hi}]")
            if m < 1:
                raise ValueError("multiplicities must be >= 1")
            if g in seen:
                raise ValueError(f"duplicate generator {g}")
            seen.add(g)

    def generator_map(self) -> dict[int, int]:
        return dict(self.generators)

    def out_degree(self) -> int:
        """Total out-degree (directed) or degree (undirected) of each vertex."""
        if self.directed:
            return sum(m for _, m in self.generators)
        return sum(m if g * 2 == self.size else 2 * m for g, m in self.generators)

    def loop_multiplicity(self) -> int:
        return sum(m for g, m in self.generators if g == 0)


def _instance(size: int, directed: bool, counter: Counter) -> GeneralCirculantInstance:
    gens = tuple(sorted(counter.items()))
    return GeneralCirculantInstance(size=size, directed=directed, generators=gens)


def reduce_to_instance(spec: DirectedCirculantSpec) -> GeneralCirculantInstance:
    """Reduce a directed spec to its concrete generator multiset mod N.

    Coinciding residues accumulate multiplicity; residue 0 is kept as a
    self-loop (it has no Laplacian effect but preserves the out-degree).
    """
    N = spec.size
    counter: Counter = Counter()
    counter[spec.p % N] += 1
    for g in spec.gammas:
        counter[(g * spec.n + spec.p) % N] += 1
    return _instance(N, True, counter)


def cycle_power_instance(spec: CyclePowerSpec) -> GeneralCirculantInstance:
    """Concrete undirected instance of a cycle power graph.

    Generators are 1..k for k = n or n-1. When N is even and k = N/2 (only
    for beta = 2 with the n-th power), that generator is a double edge.
    """
    N = spec.size
    counter: Counter = Counter()
    for g in range(1, spec.power + 1):
        counter[g] += 2 if 2 * g == N else 1
    return _instance(N, False, counter)


@dataclass(frozen=True)
class LaplacianMatrix:
    """Combinatorial (out-degree) Laplacian D - A with exact integer entries."""

    size: int
    rows: tuple[tuple[int, ...], ...]

    def minor(self, v: int) -> list[list[int]]:
        """Rows as mutable lists with row and column v deleted."""
        return [
            [x for j, x in enumerate(row) if j != v]
            for i, row in enumerate(self.rows)
            if i != v
        ]

    def trace(self) -> int:
        return sum(self.rows[i][i] for i in range(self.size))


def laplacian(inst: GeneralCirculantInstance) -> LaplacianMatrix:
    """Build D - A for a circulant instance. Self-loops cancel exactly."""
    N = inst.size
    rows = [[0] * N for _ in range(N)]
    for g, m in inst.generators:
        if inst.directed:
            for v in range(N):
                rows[v][v] += m
                rows[v][(v + g) % N] -= m
        elif 2 * g == N:
            for v in range(N):
                rows[v][v] += m
                rows[v][(v + g) % N] -= m
        else:
            for v in range(N):
                rows[v][v] += 2 * m
                rows[v][(v + g) % N] -= m
                rows[v][(v - g) % N] -= m
    return LaplacianMatrix(size=N, rows=tuple(tuple(r) for r in rows))


def _digraph_eigenvalue_iv(
    inst: GeneralCirculantInstance, k: int, F: IntervalField
) -> ComplexInterval:
    # lambda_k = sum over generators of mult * (1 - exp(2*pi*i*g*k/N));
    # a self-loop term is identically zero.
    N = inst.size
    total = F.czero()
    for g, m in inst.generators:
        if g == 0:
            continue
        term = (1 - F.phasor(Fraction(2 * g * k, N))) * m
        total = total + term
    return total


def _cycle_power_eigenvalue_iv(spec: CyclePowerSpec, k: int, F: IntervalField) -> RealInterval:
    # lambda_k = 2K - 2*sum_{m=1..K} cos(2*pi*k*m/N) with K = n or n-1
    N = spec.size
    total = F.zero()
    for m in range(1, spec.power + 1):
        total = total + (2 - F.cos_pi_times(Fraction(2 * k * m, N)).scale(2))
    return total


def _undirected_instance_eigenvalue_iv(
    inst: GeneralCirculantInstance, k: int, F: IntervalField
) -> RealInterval:
    total = F.zero()
    N = inst.size
    for g, m in inst.generators:
        c = F.cos_pi_times(Fraction(2 * g * k, N))
        if 2 * g == N:
            total = total + (1 - c).scale(m)
        else:
            total = total + (1 - c).scale(2 * m)
    return total


def digraph_eigenvalue(spec: DirectedCirculantSpec, k: int, bits: int = 128) -> ComplexInterval:
    """Certified enclosure of the k-th Laplacian eigenvalue of the digraph.

    The trivial character gives lambda_0 = 0 exactly.
    """
    N = spec.size
    if not 0 <= k < N:
        raise ValueError(f"eigenvalue index {k} outside [0, {N - 1}]")
    F = IntervalField(bits)
    if k == 0:
        return F.czero()
    return _digraph_eigenvalue_iv(reduce_to_instance(spec), k, F)


def cycle_power_eigenvalue(spec: CyclePowerSpec, k: int, bits: int = 128) -> RealInterval:
    """Certified enclosure of the k-th Laplacian eigenvalue of a cycle power."""
    N = spec.size
    if not 0 <= k < N:
        raise ValueError(f"eigenvalue index {k} outside [0, {N - 1}]")
    F = IntervalField(bits)
    if k == 0:
        return F.zero()
    return _cycle_power_eigenvalue_iv(spec, k, F)


def is_structurally_zero(
    spec: DirectedCirculantSpec,
) -> tuple[bool, StructuralZeroReason | None]:
    """Detect parameter configurations whose arborescence count is zero.

    gcd(p, n) > 1 disconnects the cycle skeleton; with gcd(p, n) = 1, an
    all-even beta, p and gammas disconnect the graph on parity classes.
    """
    if math.gcd(spec.p, spec.n) != 1:
        return True, StructuralZeroReason.NOT_COPRIME
    if spec.beta % 2 == 0 and spec.p % 2 == 0 and all(g % 2 == 0 for g in spec.gammas):
        return True, StructuralZeroReason.ALL_EVEN
    return False, None
