"""Significant-order predicates and certified infinite-chain analysis.

``sig_less_real`` and ``sig_less_laurent`` decide "x is significantly less
than y" for a fixed positive threshold r: on rationals this is a gap of at
least r, on Laurent values it is decided by orders and leading
coefficients. The reals satisfy an escape property under this relation
(every strictly climbing chain eventually significantly exceeds any fixed
value); Laurent values do not, and :func:`laurent_nonarch_witness` builds
the explicit counterexample chain together with the value it never
overtakes.

A derived, coarser relation ``lower <<' upper`` holds when some infinite
chain starts at ``lower``, climbs significantly at every step, and stays
significantly below ``upper``. Arbitrary chains make that undecidable, so
certificates here carry an affine chain ``x_i = base + i * step``; every
coefficient of ``x_i`` is then affine in ``i``, which makes the universal
check over all ``i`` decidable (see :func:`decide_affine_sig_prime`).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Union

from .laurent import (
    LaurentSeries,
    Ordering,
    RationalLike,
    ZERO,
    add,
    as_rational,
    compare,
    monomial,
    scalar_mul,
    series_from_json,
    series_to_json,
)


@dataclass(frozen=True)
class SigThreshold:
    """A fixed positive gap; two values closer than this are not significantly apart."""

    r: Fraction

    def __post_init__(self) -> None:
        object.__setattr__(self, "r", as_rational(self.r))
        if self.r <= 0:
            raise ValueError("threshold must be positive")


ThresholdLike = Union[SigThreshold, Fraction, int, str]


def _threshold(r: ThresholdLike) -> Fraction:
    if isinstance(r, SigThreshold):
        return r.r
    value = as_rational(r)
    if value <= 0:
        raise ValueError("threshold must be positive")
    return value


def sig_less_real(x: RationalLike, y: RationalLike, r: ThresholdLike) -> bool:
    """True when x <= y - r: the gap from x up to y is at least r."""
    return as_rational(x) <= as_rational(y) - _threshold(r)


def sig_less_laurent(a: LaurentSeries, b: LaurentSeries, r: ThresholdLike) -> bool:
    """The significant order on Laurent values.

    Holds when the order/leading-coefficient data satisfies one of:
    a has higher order (is smaller-scale) and b's leading coefficient is
    positive; a has lower order and a's leading coefficient is negative;
    or both have the same order and the leading coefficients are at least
    r apart. The zero series has infinite order and leading coefficient 0.
    """
    gap = _threshold(r)
    order_a = a.order()
    order_b = b.order()
    if order_a > order_b:
        return b.leading_coeff() > 0
    if order_a < order_b:
        return a.leading_coeff() < 0
    return a.leading_coeff() <= b.leading_coeff() - gap


def verify_chain_prefix(seq: Sequence[LaurentSeries], r: ThresholdLike) -> bool:
    """True when every consecutive pair of the prefix climbs significantly."""
    if not seq:
        raise ValueError("chain prefix must be non-empty")
    gap = _threshold(r)
    return all(sig_less_laurent(seq[i], seq[i + 1], gap) for i in range(len(seq) - 1))


def laurent_nonarch_witness(
    r: ThresholdLike, n: int
) -> tuple[list[LaurentSeries], LaurentSeries]:
    """Prefix of the escape-property counterexample at threshold r.

    Returns the chain ``x_i = (i+1) * r * eps^1`` for i < n together with
    ``y = 1 eps^0``. Each step climbs by exactly r at order 1, every chain
    element is significantly below y, yet y is never significantly below
    any chain element: the chain is trapped under y forever.
    """
    gap = _threshold(r)
    if n < 1:
        raise ValueError("prefix length must be positive")
    chain = [monomial((i + 1) * gap, 1) for i in range(n)]
    return chain, monomial(1, 0)


def verify_nonarch_prefix(
    chain: Sequence[LaurentSeries], y: LaurentSeries, r: ThresholdLike
) -> bool:
    """Check a trapped-chain prefix: climbing, below y, and y never overtaken."""
    gap = _threshold(r)
    if not verify_chain_prefix(chain, gap):
        return False
    if not all(sig_less_laurent(x, y, gap) for x in chain):
        return False
    return not any(sig_less_laurent(y, x, gap) for x in chain)


@dataclass(frozen=True)
class AffineChain:
    """The infinite sequence ``x_i = base + i * step`` for i = 0, 1, 2, ..."""

    base: LaurentSeries
    step: LaurentSeries

    def element(self, i: int) -> LaurentSeries:
        if i < 0:
            raise ValueError("chain index must be non-negative")
        return add(self.base, scalar_mul(i, self.step))


@dataclass(frozen=True)
class SigPrimeCertificate:
    """Certificate that ``lower <<' upper`` via the affine chain.

    Valid when the chain starts at ``lower``, every element is
    significantly below its successor, and every element is significantly
    below ``upper``. Validity is decided, not assumed; build freely and run
    :func:`decide_affine_sig_prime`.
    """

    lower: LaurentSeries
    upper: LaurentSeries
    chain: AffineChain


@dataclass(frozen=True)
class SigPrimeDecision:
    """Outcome of :func:`decide_affine_sig_prime`.

    ``violation_index`` is the smallest failing i when rejected. Past
    ``stabilization_index`` both certificate conditions keep a constant
    truth value, so the finite prefix scan decides all infinitely many i.
    """

    accepted: bool
    violation_index: Optional[int]
    stabilization_index: int

    def __bool__(self) -> bool:
        return self.accepted


def _stabilization_index(chain: AffineChain, upper: LaurentSeries, gap: Fraction) -> int:
    """Smallest index past which both certificate conditions are constant.

    Each coefficient of ``base + i * step`` is affine in i, so it has a
    fixed nonzero sign once i passes its single root. Past the largest of
    those roots the chain's support, order, and leading-coefficient sign
    are all frozen; the climb condition then reduces to the constant test
    "step's coefficient at the frozen order >= gap", and the only remaining
    i-dependence in the ceiling condition is the equal-order coefficient
    comparison, which is monotone in i and flips at one more affine root.
    """
    exponents = sorted(
        {e for e, _ in chain.base.terms} | {e for e, _ in chain.step.terms}
    )
    bound = 0
    for exponent in exponents:
        slope = chain.step.coefficient(exponent)
        if slope != 0:
            root = -chain.base.coefficient(exponent) / slope
            bound = max(bound, math.floor(root) + 1)
    if exponents:
        frozen_order = exponents[0]
        slope = chain.step.coefficient(frozen_order)
        if slope != 0 and upper.order() == frozen_order:
            intercept = chain.base.coefficient(frozen_order)
            root = (upper.leading_coeff() - gap - intercept) / slope
            bound = max(bound, math.floor(root) + 1)
    return bound


def decide_affine_sig_prime(
    cert: SigPrimeCertificate, r: ThresholdLike
) -> SigPrimeDecision:
    """Decide whether the affine-chain certificate is valid for every i >= 0.

    Scans i = 0 .. stabilization index, checking that ``x_i`` is
    significantly below both ``x_{i+1}`` and ``upper``. Beyond that index
    both conditions are constant, and a constant condition that held at the
    index keeps holding, so a clean prefix accepts the whole infinite
    chain. Rejections report the smallest violating i.

    Raises ValueError when the chain does not start at ``lower``.
    """
    gap = _threshold(r)
    if cert.chain.base != cert.lower:
        raise ValueError("certificate chain must start at its lower element")
    stabilization = _stabilization_index(cert.chain, cert.upper, gap)
    current = cert.chain.base
    for i in range(stabilization + 1):
        successor = cert.chain.element(i + 1)
        if not sig_less_laurent(current, successor, gap) or not sig_less_laurent(
            current, cert.upper, gap
        ):
            return SigPrimeDecision(False, i, stabilization)
        current = successor
    return SigPrimeDecision(True, None, stabilization)


def _require_accepted(cert: SigPrimeCertificate, r: ThresholdLike) -> None:
    decision = decide_affine_sig_prime(cert, r)
    if not decision.accepted:
        raise ValueError(
            f"certificate rejected at chain index {decision.violation_index}"
        )


def claim1_holds(cert: SigPrimeCertificate, r: ThresholdLike) -> bool:
    """Accepted certificates never have an upper element below zero."""
    _require_accepted(cert, r)
    return compare(cert.upper, ZERO) is not Ordering.LESS


def claim2_holds(cert: SigPrimeCertificate, r: ThresholdLike) -> bool:
    """With a nonnegative lower element, the upper element has strictly smaller order."""
    _require_accepted(cert, r)
    if compare(cert.lower, ZERO) is Ordering.LESS:
        return True
    return cert.lower.order() > cert.upper.order()


def certificate_to_json(cert: SigPrimeCertificate) -> dict:
    return {
        "lower": series_to_json(cert.lower),
        "upper": series_to_json(cert.upper),
        "chain": {
            "base": series_to_json(cert.chain.base),
            "step": series_to_json(cert.chain.step),
        },
    }


def certificate_from_json(obj: object) -> SigPrimeCertificate:
    if not isinstance(obj, dict):
        raise ValueError("certificate JSON must be an object")
    try:
        chain_obj = obj["chain"]
        lower = series_from_json(obj["lower"])
        upper = series_from_json(obj["upper"])
    except KeyError as exc:
        raise ValueError(f"certificate JSON missing key {exc}") from exc
    if not isinstance(chain_obj, dict) or "base" not in chain_obj or "step" not in chain_obj:
        raise ValueError("certificate 'chain' must have 'base' and 'step'")
    chain = AffineChain(
        base=series_from_json(chain_obj["base"]),
        step=series_from_json(chain_obj["step"]),
    )
    return SigPrimeCertificate(lower=lower, upper=upper, chain=chain)
