"""Intrinsic bounds computed from a moment sequence alone.

Three families of estimates, all reported together with the truncation order
that produced them (no operation extrapolates):

* growth bounds: sup over n of L(a^(2n))^(1/(2n)), the even-power root
  sequence, which converges to the sup-norm of ``a`` on the support;
* Rayleigh bounds: extreme generalized eigenvalues of the localized/plain
  moment matrix pencil, estimating the range of ``a`` on the support;
* archimedean bounds: the smallest constant M making the localized matrix of
  M - a (or M - a^2) positive semidefinite, found by bisection on the range
  of the moment form.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple, Sequence

import numpy as np

from .exceptions import (
    CeilingExceededError,
    DegreeOverflowError,
    NotNormalizedError,
)
from .linalg import (
    DEFAULT_RANK_TOL,
    EigenDecomposition,
    PsdVerdict,
    pencil_extremes,
    psd_check,
    sym_eig,
)
from .moments import MomentSequence
from .polynomials import Polynomial

#: multiplicative slack accepted when comparing two growth bounds, both of
#: which converge from below at finite truncation
MEMBERSHIP_SLACK = 0.05

BISECTION_TOL = 1e-8
BISECTION_CEILING = 1e12


@dataclass(frozen=True)
class GrowthBound:
    """Max of the even-power root sequence, with the sequence itself.

    ``per_power[k]`` holds L(a^(2(k+1)))^(1/(2(k+1))). ``clamped`` flags that
    some even-power value was negative (impossible for PSD input) and was
    clamped to zero instead of erroring, so diagnostics stay available.
    """

    value: float
    n_used: int
    per_power: tuple
    clamped: bool = False


@dataclass(frozen=True)
class RayleighBounds:
    lower: float
    upper: float
    order_used: int
    effective_rank: int


@dataclass(frozen=True)
class MembershipVerdict:
    """Growth-route membership test for {a : L(b^2 a) >= 0 for all b}.

    ``holds`` applies the configured slack; ``raw_holds`` is the unslacked
    comparison ``growth_shift <= growth_a``. Both estimates converge from
    below, so the raw comparison is exact only in the limit.
    """

    holds: bool
    growth_a: float
    growth_shift: float
    raw_holds: bool
    slack: float


class SupportInterval(NamedTuple):
    poly: Polynomial
    lower: float
    upper: float
    order_used: int
    effective_rank: int


@dataclass(frozen=True)
class SupportBox:
    """Per-polynomial Rayleigh intervals bounding the support.

    Entries whose degree budget does not fit are reported in ``failures``
    rather than aborting the whole box.
    """

    entries: tuple
    failures: tuple = field(default=())


class GrowthRayleighComparison(NamedTuple):
    growth: float
    upper: float
    lower: float
    gap: float


def _require_normalized(seq: MomentSequence):
    if not seq.normalized:
        raise NotNormalizedError(
            "operation requires unit mass but L(1) <= 0 (normalization rejected)"
        )


def _plain_matrix_eig(seq: MomentSequence, order: int) -> EigenDecomposition:
    """Eigendecomposition of the plain moment matrix, memoized per sequence."""
    key = ("plain_eig", order)
    cached = seq._cache.get(key)
    if cached is None:
        cached = sym_eig(seq.moment_matrix(order).matrix)
        seq._cache[key] = cached
    return cached


def growth_bound(seq: MomentSequence, a: Polynomial) -> GrowthBound:
    """Largest 2n-th root of L(a^(2n)) over every n the truncation affords.

    For a polynomial of degree g >= 1 the achievable powers are
    n = 1 .. max_degree // (2g). Constant polynomials evaluate exactly to
    their absolute value. Requires unit mass.
    """
    _require_normalized(seq)
    if a.dimension != seq.dimension:
        raise ValueError("polynomial dimension mismatch")
    deg = a.degree()
    if deg <= 0:
        c = abs(float(a.coefficient((0,) * a.dimension))) if not a.is_zero() else 0.0
        return GrowthBound(value=c, n_used=1, per_power=(c,))
    if deg > seq.n_max:
        raise DegreeOverflowError(
            f"degree {deg} exceeds n_max {seq.n_max}: no even power fits"
        )
    n_used = seq.max_degree // (2 * deg)
    square = a * a
    power = Polynomial.constant(seq.dimension, 1.0)
    per = []
    clamped = False
    for n in range(1, n_used + 1):
        power = power * square
        value = seq.apply(power)
        if value < 0.0:
            clamped = True
            value = 0.0
        per.append(value ** (1.0 / (2 * n)))
    return GrowthBound(
        value=max(per), n_used=n_used, per_power=tuple(per), clamped=clamped
    )


def rayleigh_bounds(
    seq: MomentSequence,
    a: Polynomial,
    order: int,
    rank_tol: float = DEFAULT_RANK_TOL,
) -> RayleighBounds:
    """Extremes of L(a b^2) / L(b^2) over b of degree <= order.

    Computed as the extreme generalized eigenvalues of the pencil formed by
    the a-localized and plain moment matrices, deflated to the range of the
    plain matrix.
    """
    localized = seq.moment_matrix(order, a).matrix
    plain = seq.moment_matrix(order).matrix
    lo, hi, rank = pencil_extremes(
        localized, plain, rank_tol=rank_tol, b_eig=_plain_matrix_eig(seq, order)
    )
    return RayleighBounds(lower=lo, upper=hi, order_used=order, effective_rank=rank)


def square_norm_bound(
    seq: MomentSequence,
    a: Polynomial,
    order: int,
    rank_tol: float = DEFAULT_RANK_TOL,
) -> float:
    """Upper Rayleigh bound for a^2: estimates the squared sup-norm of a."""
    return rayleigh_bounds(seq, a * a, order, rank_tol=rank_tol).upper


def quadratic_module_psd(
    seq: MomentSequence,
    a: Polynomial,
    order: int,
    tol: float | None = None,
) -> PsdVerdict:
    """Localized-matrix membership test: is L(b^2 a) >= 0 for b up to order?"""
    return psd_check(seq.moment_matrix(order, a).matrix, tol)


def quadratic_module_growth(
    seq: MomentSequence,
    a: Polynomial,
    slack: float = MEMBERSHIP_SLACK,
) -> MembershipVerdict:
    """Growth-route membership test: growth bound of (c - a) stays below c.

    ``c`` is the growth bound of ``a`` itself; membership holds in the limit
    exactly when the shifted bound does not exceed it. Both estimates rise
    toward their limits, so a configured slack factor is applied and the raw
    comparison is reported alongside.
    """
    c_a = growth_bound(seq, a)
    shifted = Polynomial.constant(seq.dimension, c_a.value) - a
    c_shift = growth_bound(seq, shifted)
    raw = c_shift.value <= c_a.value
    return MembershipVerdict(
        holds=c_shift.value <= c_a.value * (1.0 + slack),
        growth_a=c_a.value,
        growth_shift=c_shift.value,
        raw_holds=raw,
        slack=slack,
    )


def archimedean_bound(
    seq: MomentSequence,
    a: Polynomial,
    order: int,
    mode: str = "linear",
    tol: float = BISECTION_TOL,
    ceiling: float = BISECTION_CEILING,
    rank_tol: float = DEFAULT_RANK_TOL,
) -> float:
    """Smallest M with the localized matrix of (M - a), or (M - a^2) in
    ``square`` mode, positive semidefinite at the given order.

    The search runs on the range of the plain moment matrix (rank-deficient
    directions are quotiented out, never perturbed), bisecting to absolute
    tolerance ``tol``. The result coincides with the upper Rayleigh bound of
    ``a`` (resp. ``a^2``); keeping the bisection route makes that equality a
    checkable property rather than a definition.
    """
    if mode not in ("linear", "square"):
        raise ValueError(f"mode must be 'linear' or 'square', got {mode!r}")
    shift = a if mode == "linear" else a * a
    localized = seq.moment_matrix(order, shift).matrix
    plain_eig = _plain_matrix_eig(seq, order)
    values = plain_eig.eigenvalues
    scale = max(float(values[-1]), 0.0)
    keep = values > rank_tol * scale
    if not np.any(keep):
        raise CeilingExceededError("moment form is zero at this truncation")
    w = plain_eig.eigenvectors[:, keep] / np.sqrt(values[keep])
    compressed = w.T @ localized.data @ w
    identity = np.eye(compressed.shape[0])

    def admissible(m: float) -> bool:
        return psd_check(m * identity - compressed, tol=0.0).is_psd

    hi = 1.0
    while not admissible(hi):
        hi *= 2.0
        if hi > ceiling:
            raise CeilingExceededError(
                f"no admissible bound below ceiling {ceiling:g}"
            )
    lo = -1.0
    while admissible(lo):
        lo *= 2.0
        if lo < -ceiling:
            raise CeilingExceededError(
                f"bound lies below -ceiling {ceiling:g}; data looks degenerate"
            )
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if admissible(mid):
            hi = mid
        else:
            lo = mid
    return hi


def support_box(
    seq: MomentSequence,
    polys: Sequence[Polynomial] | None = None,
    order: int = 1,
    rank_tol: float = DEFAULT_RANK_TOL,
) -> SupportBox:
    """Rayleigh interval per polynomial; defaults to the coordinate variables.

    Degree overflows are collected per entry instead of aborting the box.
    """
    if polys is None:
        polys = [
            Polynomial.variable(seq.dimension, i) for i in range(seq.dimension)
        ]
    entries = []
    failures = []
    for p in polys:
        try:
            rb = rayleigh_bounds(seq, p, order, rank_tol=rank_tol)
        except DegreeOverflowError as exc:
            failures.append((p, str(exc)))
            continue
        entries.append(
            SupportInterval(
                poly=p,
                lower=rb.lower,
                upper=rb.upper,
                order_used=rb.order_used,
                effective_rank=rb.effective_rank,
            )
        )
    return SupportBox(entries=tuple(entries), failures=tuple(failures))


def growth_vs_rayleigh(
    seq: MomentSequence,
    a: Polynomial,
    order: int,
) -> GrowthRayleighComparison:
    """Growth bound against max(upper, -lower) of the Rayleigh interval.

    In the limit the two agree, so the gap measures truncation error only.
    """
    g = growth_bound(seq, a).value
    rb = rayleigh_bounds(seq, a, order)
    return GrowthRayleighComparison(
        growth=g,
        upper=rb.upper,
        lower=rb.lower,
        gap=abs(g - max(rb.upper, -rb.lower)),
    )


__all__ = [
    "BISECTION_CEILING",
    "BISECTION_TOL",
    "GrowthBound",
    "GrowthRayleighComparison",
    "MembershipVerdict",
    "MEMBERSHIP_SLACK",
    "RayleighBounds",
    "SupportBox",
    "SupportInterval",
    "archimedean_bound",
    "growth_bound",
    "growth_vs_rayleigh",
    "quadratic_module_growth",
    "quadratic_module_psd",
    "rayleigh_bounds",
    "square_norm_bound",
    "support_box",
]
