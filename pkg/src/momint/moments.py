"""Truncated moment sequences and their matrices.

A :class:`MomentSequence` stores the values of a linear functional on every
monomial up to an even truncation degree. Sequences are built either from a
known measure (the oracle direction: finitely many atoms, or the uniform
density on a box integrated by Gauss-Legendre quadrature) or ingested from a
document. On ingest the mass L(1) is rescaled to 1 whenever it is positive;
operations that assume unit mass must check the ``normalized`` flag.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Mapping, Sequence

import numpy as np

from .exceptions import DegreeOverflowError
from .linalg import PsdVerdict, SymMatrix, psd_check
from .polynomials import MultiIndex, Polynomial, enumerate_monomials, grlex_key

GAUSS_NEWTON_TOL = 1e-14


def gauss_legendre(order: int) -> tuple[np.ndarray, np.ndarray]:
    """Gauss-Legendre nodes and weights on [-1, 1].

    Nodes are found by Newton iteration on the three-term recurrence,
    polished to 1e-14; the rule is exact through degree ``2*order - 1``.
    """
    if order < 1:
        raise ValueError("quadrature order must be >= 1")
    n = order
    nodes = np.empty(n)
    weights = np.empty(n)
    for i in range((n + 1) // 2):
        x = math.cos(math.pi * (i + 0.75) / (n + 0.5))
        for _ in range(100):
            p_prev, p = 1.0, x
            for k in range(2, n + 1):
                p_prev, p = p, ((2 * k - 1) * x * p - (k - 1) * p_prev) / k
            deriv = n * (x * p - p_prev) / (x * x - 1.0)
            step = p / deriv
            x -= step
            if abs(step) <= GAUSS_NEWTON_TOL:
                break
        p_prev, p = 1.0, x
        for k in range(2, n + 1):
            p_prev, p = p, ((2 * k - 1) * x * p - (k - 1) * p_prev) / k
        deriv = n * (x * p - p_prev) / (x * x - 1.0)
        w = 2.0 / ((1.0 - x * x) * deriv * deriv)
        nodes[n - 1 - i] = x
        nodes[i] = -x
        weights[i] = w
        weights[n - 1 - i] = w
    if n % 2 == 1:
        nodes[n // 2] = 0.0
    return nodes, weights


class MeasureSpec:
    """A desk-scale representable measure: weighted atoms, or uniform on a box.

    Exactly one of ``atoms`` and ``box`` is set. Atoms are (point, weight)
    pairs with positive weights; a box is a list of [lo, hi] intervals plus a
    Gauss-Legendre order per dimension.
    """

    __slots__ = ("atoms", "box")

    def __init__(self, atoms=None, box=None):
        if (atoms is None) == (box is None):
            raise ValueError("exactly one of atoms/box must be given")
        if atoms is not None:
            cleaned = []
            dim = None
            for point, weight in atoms:
                point = tuple(float(x) for x in point)
                if dim is None:
                    dim = len(point)
                elif len(point) != dim:
                    raise ValueError("atoms have inconsistent dimensions")
                if not weight > 0:
                    raise ValueError(f"atom weight must be positive, got {weight}")
                cleaned.append((point, float(weight)))
            if not cleaned:
                raise ValueError("atom list is empty")
            self.atoms = tuple(cleaned)
            self.box = None
        else:
            bounds, order = box
            bounds = tuple((float(lo), float(hi)) for lo, hi in bounds)
            if not bounds:
                raise ValueError("box has no bounds")
            for lo, hi in bounds:
                if not lo < hi:
                    raise ValueError(f"box interval [{lo}, {hi}] must have lo < hi")
            order = int(order)
            if order < 1:
                raise ValueError("quadrature order must be >= 1")
            self.atoms = None
            self.box = (bounds, order)

    @property
    def dimension(self) -> int:
        if self.atoms is not None:
            return len(self.atoms[0][0])
        return len(self.box[0])

    @classmethod
    def from_document(cls, doc: Mapping) -> "MeasureSpec":
        if "atoms" in doc:
            atoms = [(entry["point"], entry["weight"]) for entry in doc["atoms"]]
            return cls(atoms=atoms)
        if "box" in doc:
            return cls(box=(doc["box"]["bounds"], doc["box"]["order"]))
        raise ValueError("measure document needs an 'atoms' or 'box' field")

    def to_document(self) -> dict:
        if self.atoms is not None:
            return {
                "atoms": [
                    {"point": list(point), "weight": weight}
                    for point, weight in self.atoms
                ]
            }
        bounds, order = self.box
        return {"box": {"bounds": [list(b) for b in bounds], "order": order}}

    def __repr__(self) -> str:
        if self.atoms is not None:
            return f"MeasureSpec(atoms={len(self.atoms)}, dimension={self.dimension})"
        return f"MeasureSpec(box={self.box[0]}, order={self.box[1]})"


@dataclass(frozen=True)
class MomentMatrix:
    """Localized moment matrix: entry (alpha, beta) = L(shift * x^(alpha+beta)).

    ``basis`` lists the row/column monomials in graded-lex order; equal
    alpha+beta always produces equal entries (Hankel-type structure).
    """

    basis: tuple
    matrix: SymMatrix
    shift: Polynomial
    order: int


class MomentSequence:
    """Values of a linear functional on all monomials of degree <= max_degree.

    ``normalized`` records whether the stored values have unit mass; ``scale``
    keeps the original L(1) so oracle provenance is not lost.
    """

    __slots__ = ("dimension", "max_degree", "values", "normalized", "scale", "origin", "_cache")

    def __init__(self, dimension: int, max_degree: int, values: Mapping, origin: str = ""):
        if dimension < 1:
            raise ValueError("dimension must be >= 1")
        if max_degree < 0 or max_degree % 2 != 0:
            raise ValueError("max_degree must be an even nonnegative integer")
        table = {}
        for key, value in values.items():
            index = tuple(int(e) for e in key)
            if len(index) != dimension or any(e < 0 for e in index):
                raise ValueError(f"bad multi-index {key} for dimension {dimension}")
            if sum(index) > max_degree:
                raise ValueError(f"index {index} exceeds max_degree {max_degree}")
            value = float(value)
            if not math.isfinite(value):
                raise ValueError(f"non-finite moment at {index}")
            table[index] = value
        expected = enumerate_monomials(dimension, max_degree)
        missing = [idx for idx in expected if idx not in table]
        if missing:
            raise ValueError(
                f"moment table incomplete: {len(missing)} of {len(expected)} "
                f"indices missing, first {missing[0]}"
            )
        mass = table[(0,) * dimension]
        if mass > 0.0:
            if mass != 1.0:
                table = {k: v / mass for k, v in table.items()}
            normalized = True
        else:
            normalized = False
        self.dimension = dimension
        self.max_degree = int(max_degree)
        self.values = table
        self.normalized = normalized
        self.scale = mass
        self.origin = origin
        self._cache: dict = {}

    @property
    def n_max(self) -> int:
        """Largest matrix order N with 2N <= max_degree."""
        return self.max_degree // 2

    def moment(self, index) -> float:
        index = tuple(int(e) for e in index)
        if sum(index) > self.max_degree:
            raise DegreeOverflowError(
                f"moment of degree {sum(index)} beyond truncation {self.max_degree}"
            )
        return self.values[index]

    def apply(self, p: Polynomial) -> float:
        """L(p). Raises DegreeOverflowError when p needs unstored moments."""
        if p.dimension != self.dimension:
            raise ValueError(
                f"polynomial dimension {p.dimension} != sequence dimension {self.dimension}"
            )
        if p.degree() > self.max_degree:
            raise DegreeOverflowError(
                f"degree {p.degree()} exceeds stored truncation {self.max_degree}"
            )
        return float(sum(float(c) * self.values[idx] for idx, c in p.terms.items()))

    def moment_matrix(self, order: int, shift: Polynomial | None = None) -> MomentMatrix:
        """Matrix of b -> L(shift * b^2) on the monomials of degree <= order."""
        if order < 0:
            raise ValueError("order must be >= 0")
        if shift is None:
            shift = Polynomial.constant(self.dimension, 1.0)
        if shift.dimension != self.dimension:
            raise ValueError("shift polynomial has wrong dimension")
        shift_degree = max(shift.degree(), 0)
        if 2 * order + shift_degree > self.max_degree:
            raise DegreeOverflowError(
                f"matrix order {order} with shift degree {shift_degree} needs "
                f"moments of degree {2 * order + shift_degree} > {self.max_degree}"
            )
        basis = enumerate_monomials(self.dimension, order)
        table = {}
        for gamma in enumerate_monomials(self.dimension, 2 * order):
            total = 0.0
            for delta, coeff in shift.terms.items():
                key = tuple(g + d for g, d in zip(gamma, delta))
                total += float(coeff) * self.values[key]
            table[gamma] = total
        n = len(basis)
        entries = np.empty((n, n))
        for i, alpha in enumerate(basis):
            for j in range(i, n):
                beta = basis[j]
                value = table[tuple(a + b for a, b in zip(alpha, beta))]
                entries[i, j] = value
                entries[j, i] = value
        return MomentMatrix(
            basis=tuple(basis), matrix=SymMatrix(entries), shift=shift, order=order
        )

    def psd_check(self, order: int, tol: float | None = None) -> PsdVerdict:
        """PSD verdict of the plain moment matrix at the given order."""
        return psd_check(self.moment_matrix(order).matrix, tol)

    # -- documents ----------------------------------------------------------

    def to_document(self) -> dict:
        moments = [
            {"index": list(idx), "value": self.values[idx]}
            for idx in sorted(self.values, key=grlex_key)
        ]
        return {
            "dimension": self.dimension,
            "max_degree": self.max_degree,
            "moments": moments,
        }

    @classmethod
    def from_document(cls, doc: Mapping, origin: str = "document") -> "MomentSequence":
        try:
            dimension = int(doc["dimension"])
            max_degree = int(doc["max_degree"])
            values = {tuple(m["index"]): m["value"] for m in doc["moments"]}
        except (KeyError, TypeError) as exc:
            raise ValueError(f"malformed moment document: {exc}") from exc
        return cls(dimension, max_degree, values, origin=origin)

    def __repr__(self) -> str:
        return (
            f"MomentSequence(dimension={self.dimension}, max_degree={self.max_degree}, "
            f"normalized={self.normalized})"
        )


def from_measure(spec: MeasureSpec, max_degree: int) -> MomentSequence:
    """Moment sequence of a known measure, exact through ``max_degree``.

    Atomic measures are summed directly. Box measures use per-dimension
    Gauss-Legendre rules (the uniform density factorizes), which requires
    ``order >= max_degree // 2 + 1`` so every stored monomial is integrated
    exactly.
    """
    if max_degree < 0 or max_degree % 2 != 0:
        raise ValueError("max_degree must be an even nonnegative integer")
    d = spec.dimension
    indices = enumerate_monomials(d, max_degree)
    if spec.atoms is not None:
        powers = []
        for point, weight in spec.atoms:
            per_dim = [
                [coord**e for e in range(max_degree + 1)] for coord in point
            ]
            powers.append((per_dim, weight))
        values = {}
        for idx in indices:
            total = 0.0
            for per_dim, weight in powers:
                prod = weight
                for j, e in enumerate(idx):
                    if e:
                        prod *= per_dim[j][e]
                total += prod
            values[idx] = total
        origin = f"atoms({len(spec.atoms)})"
    else:
        bounds, order = spec.box
        needed = max_degree // 2 + 1
        if order < needed:
            raise ValueError(
                f"quadrature order {order} too small for max_degree {max_degree}: "
                f"need order >= max_degree/2 + 1 = {needed}"
            )
        base_nodes, base_weights = gauss_legendre(order)
        per_dim_integrals = []
        for lo, hi in bounds:
            half = 0.5 * (hi - lo)
            mid = 0.5 * (hi + lo)
            xs = mid + half * base_nodes
            ws = half * base_weights
            integrals = [float(np.sum(ws * xs**e)) for e in range(max_degree + 1)]
            per_dim_integrals.append(integrals)
        values = {}
        for idx in indices:
            prod = 1.0
            for j, e in enumerate(idx):
                prod *= per_dim_integrals[j][e]
            values[idx] = prod
        origin = f"box(order={order})"
    return MomentSequence(d, max_degree, values, origin=origin)


__all__ = [
    "MeasureSpec",
    "MomentMatrix",
    "MomentSequence",
    "from_measure",
    "gauss_legendre",
]
