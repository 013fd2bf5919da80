"""Certified evaluation of the closed product formulas for both families.

Every count here is a short product: ceil(beta/2) - 1 transcendental
factors (plus exact rational prefactors), instead of the N - 1 = beta*n - 1
eigenvalue factors of the matrix tree route. All transcendental work runs
in outward-rounded interval arithmetic and is certified by isolating a
unique integer; exact rational structure (leading powers, parity factors,
the whole beta = 2 cycle-power case) is kept in exact arithmetic and never
touches the interval layer.

Structural zeros short-circuit before any numeric work, so the interval
layer is never asked to certify a value it cannot separate from zero by
structure alone. Phase angles are taken as true principal phases
(two-argument arctangent semantics); the printed single-argument
arctangent form with its sign correction is kept available for
cross-checking, and both agree factor by factor.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .graphs import (
    CyclePowerSpec,
    CyclePowerVariant,
    DirectedCirculantSpec,
    TreeCount,
    is_structurally_zero,
)
from .intervals import (
    DEFAULT_BUDGET,
    ComplexInterval,
    IntervalField,
    PrecisionBudget,
    RealInterval,
    _TooWide,
    certify_integer,
)


# ---------------------------------------------------------------------------
# spectral building blocks
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class DigraphSpectralTerms:
    """Per-k spectral data of the beta-vertex quotient digraph.

    mu is the k-th non-zero Laplacian eigenvalue of the (d-1)-generator
    quotient digraph on beta vertices, eta its undirected counterpart
    (eta = 2 Re mu), sinsum the imaginary part of d - mu. modulus and
    phase describe 1 - mu/d in polar form.
    """

    k: int
    mu: ComplexInterval
    eta: RealInterval
    sinsum: RealInterval
    modulus: RealInterval
    phase: RealInterval


def digraph_spectral_terms(
    spec: DirectedCirculantSpec, k: int, F: IntervalField
) -> DigraphSpectralTerms:
    beta, d = spec.beta, spec.d
    cos_sum = F.zero()
    sin_sum = F.zero()
    for g in spec.gammas:
        q = Fraction(2 * g * k, beta)
        cos_sum = cos_sum + F.cos_pi_times(q)
        sin_sum = sin_sum + F.sin_pi_times(q)
    c = 1 + cos_sum  # = d - eta_k/2, the real part of d - mu_k
    mu = ComplexInterval((d - 1) - cos_sum, -sin_sum)
    eta = (2 * (d - 1)) - cos_sum.scale(2)
    modulus = (c.sqr() + sin_sum.sqr()).sqrt().scale(Fraction(1, d))
    phase = ComplexInterval(c, sin_sum).phase_rep()
    return DigraphSpectralTerms(
        k=k, mu=mu, eta=eta, sinsum=sin_sum, modulus=modulus, phase=phase
    )


@dataclass(frozen=True)
class CyclePowerTerms:
    """Per-k data of the cycle-power product: beta-cycle eigenvalue mu,
    the sine-combination amplitude z with its modulus and phase."""

    k: int
    mu: RealInterval
    z: ComplexInterval
    theta: RealInterval
    modulus: RealInterval


def cycle_power_terms(spec: CyclePowerSpec, k: int, F: IntervalField) -> CyclePowerTerms:
    """Valid for any k in 1..beta-1; the count formulas only consume
    k < beta/2, where theta coincides with the arcsine form."""
    beta, n = spec.beta, spec.n
    half = Fraction(k, beta)  # angle pi*k/beta
    cos_h = F.cos_pi_times(half)
    sin_h = F.sin_pi_times(half)
    mu = (1 - F.cos_pi_times(2 * half)).scale(2)
    if spec.variant is CyclePowerVariant.POWER_N:
        z = ComplexInterval(cos_h.scale(2 * n), sin_h.scale(-(2 * n + 2)))
    else:
        z = ComplexInterval(cos_h.scale(2 * n), sin_h.scale(2 * n - 2))
    return CyclePowerTerms(k=k, mu=mu, z=z, theta=z.phase_rep(), modulus=abs(z))


def _cycle_power_arcsin(spec: CyclePowerSpec, mu: RealInterval, F: IntervalField) -> RealInterval:
    # Arcsin((n+1)/sqrt(4n^2/mu + 2n + 1)), or for the (n-1)-th power
    # Arcsin((n-1)/sqrt(4n^2/mu - (2n - 1))); the argument is strictly
    # inside (0, 1) because mu < 4 on the k range used.
    n = spec.n
    if spec.variant is CyclePowerVariant.POWER_N:
        inner = (4 * n * n) / mu + (2 * n + 1)
        num = n + 1
    else:
        inner = (4 * n * n) / mu - (2 * n - 1)
        num = n - 1
    arg = num / inner.sqrt()
    if not arg.hi_fraction() < 1:
        raise _TooWide("arcsin argument enclosure not yet inside (0, 1)")
    return arg.asin()


# ---------------------------------------------------------------------------
# directed circulant counts
# ---------------------------------------------------------------------------

def directed_cycle_count(p: int, n: int) -> TreeCount:
    """Arborescence count of the p-jump circulant on n vertices: n when
    gcd(p, n) = 1, else 0 (the graph splits into gcd(p, n) components)."""
    if p < 1 or n < 1:
        raise ValueError("p and n must be positive")
    return TreeCount(n if math.gcd(p, n) == 1 else 0)


def _parity_prefactor(spec: DirectedCirculantSpec) -> Fraction:
    # exact value of n * d^(beta*n - 1) * (1 - [beta even] * (-1)^p * S^n / d^n)
    # with S = 1 + sum over gammas of (-1)^gamma
    beta, n, p, d = spec.beta, spec.n, spec.p, spec.d
    lead = Fraction(n * d ** (beta * n - 1))
    if beta % 2 == 0:
        s = 1 + sum(-1 if g % 2 else 1 for g in spec.gammas)
        sign = -1 if p % 2 else 1
        lead *= 1 - Fraction(sign * s**n, d**n)
    return lead


def _digraph_factor(
    spec: DirectedCirculantSpec, k: int, F: IntervalField, phase_mode: str
) -> RealInterval:
    beta, n, p, d = spec.beta, spec.n, spec.p, spec.d
    terms = digraph_spectral_terms(spec, k, F)
    r_n = terms.modulus**n
    lead = F.pi_times(Fraction(2 * p * k, beta))
    if phase_mode == "principal":
        cos_term = (lead + terms.phase.scale(n)).cos()
        signed = cos_term
    elif phase_mode == "arctg":
        # the printed form: Arctg(sinsum / (d - eta/2)), with the odd-n
        # sign factor sgn(d - eta/2) and sgn(0) = 1; at an uncertain sign
        # both pieces widen to their full ranges, which stays sound
        c, s = d - terms.eta.scale(Fraction(1, 2)), terms.sinsum
        if c.lo > 0 or c.hi < 0:
            arctg = (s / c).atan()
        else:
            half_pi = F.pi_times(Fraction(1, 2))
            arctg = RealInterval(F, (-half_pi).lo, half_pi.hi)
        cos_term = (lead + arctg.scale(n)).cos()
        if n % 2 == 0:
            signed = cos_term
        elif c.lo > 0:
            signed = cos_term
        elif c.hi < 0:
            signed = -cos_term
        else:
            signed = cos_term.hull(-cos_term)
    else:
        raise ValueError(f"unknown phase mode {phase_mode!r}")
    return 1 - (r_n * signed).scale(2) + r_n.sqr()


def _digraph_enclosure(
    spec: DirectedCirculantSpec, F: IntervalField, phase_mode: str = "principal"
) -> RealInterval:
    prod = F.from_rational(_parity_prefactor(spec))
    for k in range(1, (spec.beta + 1) // 2):
        prod = prod * _digraph_factor(spec, k, F, phase_mode)
    return prod


def digraph_closed_form(
    spec: DirectedCirculantSpec, budget: PrecisionBudget = DEFAULT_BUDGET
) -> TreeCount:
    """Arborescence count of the directed family from the short product.

    Requires d >= 2 (at least one gamma). Structural zeros return 0 without
    numeric work; otherwise the product of ceil(beta/2) - 1 polar factors is
    evaluated with principal phases and certified.
    """
    if spec.d < 2:
        raise ValueError("the closed form needs at least one gamma (d >= 2)")
    zero, _ = is_structurally_zero(spec)
    if zero:
        return TreeCount(0)
    value, bits = certify_integer(lambda F: _digraph_enclosure(spec, F), budget)
    return TreeCount(value, bits_used=bits)


def _beta_product_enclosure(spec: DirectedCirculantSpec, F: IntervalField) -> RealInterval:
    beta, n, p, d = spec.beta, spec.n, spec.p, spec.d
    inv_dn = Fraction(1, d**n)
    prod = ComplexInterval(F.one(), F.zero())
    for k in range(1, beta):
        w = ComplexInterval(F.one(), F.zero())
        for g in spec.gammas:
            w = w + F.phasor(Fraction(2 * g * k, beta))
        factor = 1 - (w**n * F.phasor(Fraction(2 * p * k, beta))).scale(inv_dn)
        prod = prod * factor
    return prod.re.scale(n * d ** (beta * n - 1))


def digraph_beta_product(
    spec: DirectedCirculantSpec, budget: PrecisionBudget = DEFAULT_BUDGET
) -> TreeCount:
    """Branch-free reference count: the full product over the beta - 1
    non-trivial roots of unity, before any pairing into polar factors.

    Returns 0 directly when gcd(p, n) != 1; parity-based zeros are left to
    emerge numerically (the k = beta/2 factor collapses to 0 exactly).
    """
    if math.gcd(spec.p, spec.n) != 1:
        return TreeCount(0)
    value, bits = certify_integer(lambda F: _beta_product_enclosure(spec, F), budget)
    return TreeCount(value, bits_used=bits)


def _two_generator_enclosure(spec: DirectedCirculantSpec, F: IntervalField) -> RealInterval:
    beta, n, p = spec.beta, spec.n, spec.p
    gamma = spec.gammas[0]
    exponent = beta * n - 1 + (1 if beta % 2 == 0 and gamma % 2 == 0 else 0)
    prod = F.from_rational(n * 2**exponent)
    for k in range(1, (beta + 1) // 2):
        # angles 2*pi*(p + gamma*n/2)*k/beta and pi*gamma*k/beta, the first
        # kept as the half-angle form (2p + gamma*n)*k/beta in units of pi
        cu = F.cos_pi_times(Fraction((2 * p + gamma * n) * k, beta))
        cv = F.cos_pi_times(Fraction(gamma * k, beta))
        cv_n = cv**n
        prod = prod * (1 - (cu * cv_n).scale(2) + cv_n.sqr())
    return prod


def digraph_two_generator(
    spec: DirectedCirculantSpec, budget: PrecisionBudget = DEFAULT_BUDGET
) -> TreeCount:
    """Two-generator specialization: cosine factors only.

    Even beta gains a factor 2 when gamma is even (and p odd); the count is
    0 when gcd(p, n) != 1 or when beta, p, gamma are all even.
    """
    if spec.d != 2:
        raise ValueError("the two-generator form needs exactly one gamma")
    zero, _ = is_structurally_zero(spec)
    if zero:
        return TreeCount(0)
    value, bits = certify_integer(lambda F: _two_generator_enclosure(spec, F), budget)
    return TreeCount(value, bits_used=bits)


# ---------------------------------------------------------------------------
# cycle power counts
# ---------------------------------------------------------------------------

def _cycle_power_exact_beta2(spec: CyclePowerSpec) -> TreeCount:
    # (2n)^(2n-2) * (1 +- 1/n)^n is rational and always an integer
    n = spec.n
    sign = 1 if spec.variant is CyclePowerVariant.POWER_N else -1
    value = Fraction(2 * n) ** (2 * n - 2) * Fraction(n + sign, n) ** n
    if value.denominator != 1:
        raise AssertionError(f"beta=2 closed form not integral: {value}")
    return TreeCount(int(value))


def _cycle_power_prefactor(spec: CyclePowerSpec) -> Fraction:
    beta, n = spec.beta, spec.n
    lead = Fraction(2 ** (beta * (n + 1)), (2 * beta) ** 2) * Fraction(n) ** (beta * n - 2)
    if spec.variant is CyclePowerVariant.POWER_N:
        lead *= Fraction(2 * n + 1, 2 * n) ** (beta * n)
        lead *= (1 - Fraction(1, (2 * n + 1) ** beta)) ** n
    else:
        lead *= Fraction(2 * n - 1, 2 * n) ** (beta * n)
        lead *= abs(Fraction((-1) ** beta) - Fraction(1, (2 * n - 1) ** beta)) ** n
    return lead


def _cycle_power_enclosure(spec: CyclePowerSpec, F: IntervalField) -> RealInterval:
    beta, n = spec.beta, spec.n
    shift = 1 if spec.variant is CyclePowerVariant.POWER_N else -1
    prod = F.from_rational(_cycle_power_prefactor(spec))
    for k in range(1, (beta + 1) // 2):
        mu = (1 - F.cos_pi_times(Fraction(2 * k, beta))).scale(2)
        theta = _cycle_power_arcsin(spec, mu, F)
        lead = F.pi_times(Fraction((n + shift) * k, beta))
        prod = prod * (lead - theta.scale(n)).sin().sqr()
    return prod


def cycle_power_count(
    spec: CyclePowerSpec, budget: PrecisionBudget = DEFAULT_BUDGET
) -> TreeCount:
    """Spanning trees of the n-th or (n-1)-th power of the beta*n cycle.

    beta = 2 is evaluated purely in rational arithmetic; beta >= 3 pairs an
    exact rational prefactor with ceil(beta/2) - 1 certified sine factors.
    """
    if spec.beta == 2:
        return _cycle_power_exact_beta2(spec)
    value, bits = certify_integer(lambda F: _cycle_power_enclosure(spec, F), budget)
    return TreeCount(value, bits_used=bits)


# ---------------------------------------------------------------------------
# asymptotics
# ---------------------------------------------------------------------------

def _leading_scale(beta: int, n: int) -> Fraction:
    return Fraction(2 ** (beta * n), 2 * beta) * Fraction(n) ** (beta * n - 2)


def asymptotic_estimate(
    beta: int, n: int, variant: CyclePowerVariant = CyclePowerVariant.POWER_N, bits: int = 128
) -> RealInterval:
    """Certified enclosure of the large-n estimate
    2^(beta*n)/(2*beta) * n^(beta*n-2) * exp(+-beta/2)."""
    if beta < 2 or n < 1:
        raise ValueError("need beta >= 2 and n >= 1")
    F = IntervalField(bits)
    sign = 1 if variant is CyclePowerVariant.POWER_N else -1
    return F.from_rational(Fraction(sign * beta, 2)).exp() * F.from_rational(
        _leading_scale(beta, n)
    )


def asymptotic_ratio(
    beta: int,
    n: int,
    variant: CyclePowerVariant = CyclePowerVariant.POWER_N,
    budget: PrecisionBudget = DEFAULT_BUDGET,
) -> Fraction:
    """Exact dimensionless ratio r = count * 2*beta / (2^(beta*n) n^(beta*n-2)).

    r converges to exp(+-beta/2); for beta = 2 it is identically
    (1 +- 1/n)^n by construction.
    """
    count = cycle_power_count(CyclePowerSpec(beta, n, variant), budget)
    return Fraction(int(count)) / _leading_scale(beta, n)


def asymptotic_relative_error(
    beta: int,
    n: int,
    variant: CyclePowerVariant = CyclePowerVariant.POWER_N,
    budget: PrecisionBudget = DEFAULT_BUDGET,
    bits: int = 128,
) -> float:
    """|r(beta, n) / exp(+-beta/2) - 1| for convergence reporting."""
    r = asymptotic_ratio(beta, n, variant, budget)
    F = IntervalField(bits)
    sign = 1 if variant is CyclePowerVariant.POWER_N else -1
    target = F.from_rational(Fraction(sign * beta, 2)).exp()
    return abs(F.from_rational(r) / target - 1).mid_float()
