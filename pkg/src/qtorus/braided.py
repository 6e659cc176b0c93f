"""Braided and ribbon data of the graded fiber category.

Objects are lattice-graded with one-dimensional pieces, so all structure
constants are Q/Z phases. A braiding refinement is a matrix beta whose
symmetrization is pinned to the polarization of the quadratic form; the
choice of refinement is not canonical, and everything observable (twist,
double braiding) must be refinement independent.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Mapping, Sequence

from .errors import DimensionMismatch, ShapeMismatch
from .forms import ZERO, Frac1, QuadraticForm, SymmetricForm, evaluate, polarize


@dataclass(frozen=True)
class GradedObject:
    """Finite-support multiplicity function on the grading lattice."""

    rank: int
    support: Mapping[tuple[int, ...], int]

    def __post_init__(self):
        clean = {}
        for vec, mult in self.support.items():
            v = tuple(int(x) for x in vec)
            if len(v) != self.rank:
                raise DimensionMismatch(f"support vector {v} has wrong length for rank {self.rank}")
            if mult < 1:
                raise ShapeMismatch(f"multiplicity of {v} must be >= 1, got {mult}")
            clean[v] = int(mult)
        object.__setattr__(self, "support", clean)

    def items(self):
        return sorted(self.support.items())

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, GradedObject)
            and self.rank == other.rank
            and dict(self.support) == dict(other.support)
        )


def fuse(v: GradedObject, w: GradedObject) -> GradedObject:
    """Tensor product on supports: convolution of multiplicity functions."""
    if v.rank != w.rank:
        raise DimensionMismatch("cannot fuse objects over different lattices")
    out: dict[tuple[int, ...], int] = {}
    for a, ma in v.support.items():
        for b, mb in w.support.items():
            key = tuple(x + y for x, y in zip(a, b))
            out[key] = out.get(key, 0) + ma * mb
    return GradedObject(v.rank, out)


@dataclass(frozen=True)
class BraidedData:
    """A quadratic form together with a braiding refinement beta.

    Constraints: beta[i][i] = Q(e_i), and beta[i][j] + beta[j][i] = b(e_i, e_j)
    for i != j. Any two refinements of the same form differ by an
    antisymmetric matrix of phases.
    """

    quad: QuadraticForm
    beta: tuple[tuple[Frac1, ...], ...]

    def __post_init__(self):
        r = self.quad.rank
        if len(self.beta) != r or any(len(row) != r for row in self.beta):
            raise DimensionMismatch("beta must be a square matrix matching the form's rank")
        for i in range(r):
            if self.beta[i][i] != self.quad.diag[i]:
                raise ShapeMismatch(f"beta[{i}][{i}] must equal the form's value on e_{i}")
            for j in range(i + 1, r):
                if self.beta[i][j] + self.beta[j][i] != self.quad.b_basis(i, j):
                    raise ShapeMismatch(
                        f"beta[{i}][{j}] + beta[{j}][{i}] must symmetrize to the polarization"
                    )

    @property
    def rank(self) -> int:
        return self.quad.rank


def standard_refinement(q: QuadraticForm) -> BraidedData:
    """Upper-triangular refinement: all of b(e_i, e_j) on the i < j side."""
    r = q.rank
    beta = tuple(
        tuple(
            q.diag[i] if i == j else (q.b_basis(i, j) if i < j else ZERO)
            for j in range(r)
        )
        for i in range(r)
    )
    return BraidedData(q, beta)


def perturb_refinement(b: BraidedData, eps: Sequence[Sequence[Frac1]]) -> BraidedData:
    """Shift a refinement by an antisymmetric phase matrix (zero diagonal)."""
    r = b.rank
    if len(eps) != r or any(len(row) != r for row in eps):
        raise DimensionMismatch("perturbation must be a rank-sized square matrix")
    for i in range(r):
        if eps[i][i]:
            raise ShapeMismatch("perturbation diagonal must vanish")
        for j in range(i + 1, r):
            if eps[i][j] + eps[j][i] != ZERO:
                raise ShapeMismatch("perturbation must be antisymmetric")
    beta = tuple(
        tuple(b.beta[i][j] + eps[i][j] for j in range(r)) for i in range(r)
    )
    return BraidedData(b.quad, beta)


def braiding_phase(b: BraidedData, lam: Sequence[int], mu: Sequence[int]) -> Frac1:
    """Phase of the braiding on a pair of graded lines, bilinear in beta."""
    r = b.rank
    if len(lam) != r or len(mu) != r:
        raise DimensionMismatch(f"vectors must have length {r}")
    total = ZERO
    for i, li in enumerate(lam):
        if not li:
            continue
        row = b.beta[i]
        for j, mj in enumerate(mu):
            if mj:
                total = total + row[j].scale(li * mj)
    return total


def double_braiding(b: BraidedData, lam: Sequence[int], mu: Sequence[int]) -> Frac1:
    """Square of the braiding; equals the polarization, whatever the refinement."""
    return braiding_phase(b, lam, mu) + braiding_phase(b, mu, lam)


def twist(b: BraidedData, lam: Sequence[int]) -> Frac1:
    """Ribbon twist on the graded line at lam: the value of the quadratic form."""
    return evaluate(b.quad, lam)


def balancing_check(b: BraidedData, lam1: Sequence[int], lam2: Sequence[int]) -> bool:
    """Twist of a product against the twists of the factors and the double braiding."""
    lhs = twist(b, tuple(x + y for x, y in zip(lam1, lam2))) - twist(b, lam1) - twist(b, lam2)
    return lhs == double_braiding(b, lam1, lam2)


PhaseFn = Callable[[Sequence[int], Sequence[int]], Frac1]


def hexagon_check(
    b: BraidedData,
    lam1: Sequence[int],
    lam2: Sequence[int],
    lam3: Sequence[int],
    phase: PhaseFn | None = None,
) -> bool:
    """Additivity of the braiding phase in each slot on a triple.

    ``phase`` defaults to the bilinear extension of beta; passing a corrupted
    phase function is how tests exercise the failure mode.
    """
    c = phase if phase is not None else (lambda x, y: braiding_phase(b, x, y))
    s12 = tuple(x + y for x, y in zip(lam1, lam2))
    s23 = tuple(x + y for x, y in zip(lam2, lam3))
    if c(s12, lam3) != c(lam1, lam3) + c(lam2, lam3):
        return False
    if c(lam1, s23) != c(lam1, lam2) + c(lam1, lam3):
        return False
    return True


def double_braiding_matrix(q: QuadraticForm) -> SymmetricForm:
    """Double braiding as a symmetric form; convenience for report builders."""
    return polarize(q)
