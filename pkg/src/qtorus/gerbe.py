"""Global invariants: section space homotopy, commutator pairing, block data.

The space of compactly supported sections over a closed oriented surface is
a 2-type whose homotopy groups are the twisted cohomology of the surface in
degrees 2, 1, 0. Pushing the level forward along the fundamental class
equips each component with a flat gerbe; its isomorphism class is captured
by an antisymmetric Q/Z pairing omega on pi_1 (independent of the component)
and a character chi_d on pi_2 (depending on the component d). Block
dimensions follow by finite Heisenberg counting from omega alone.

omega is computed here by a closed word-combinatorial formula over the
surface relator. The simplicial machinery in :mod:`qtorus.cochain` computes
the same pairing along a completely separate route and serves as its oracle.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import product
from typing import Sequence

from .errors import BadComponent, DimensionMismatch, NotInvariant
from .errors import InvariantViolation
from .forms import (
    ZERO,
    BilinearData,
    Frac1,
    QuadraticForm,
    SymmetricForm,
    invariance_check,
    polarize,
    quad_from_bilinear,
)
from .lattice import FgAbGroup, IntMatrix, smith_normal_form
from .surface import (
    CohomologyPresentations,
    LatticeLocalSystem,
    SurfaceGroup,
    cohomology_presentations,
    twisted_cohomology,
)


@dataclass(frozen=True)
class SectionSpaceInvariants:
    """Homotopy groups of the section space: pi_n is cohomology in degree 2-n."""

    pi0: FgAbGroup
    pi1: FgAbGroup
    pi2: FgAbGroup


def section_space(rho: LatticeLocalSystem) -> SectionSpaceInvariants:
    h = twisted_cohomology(rho)
    return SectionSpaceInvariants(pi0=h.h2, pi1=h.h1, pi2=h.h0)


class LevelInput:
    """A level paired with the surface monodromy it must be invariant under."""

    def __init__(self, bilinear: BilinearData, rho: LatticeLocalSystem):
        if bilinear.rank != rho.rank:
            raise DimensionMismatch(
                f"level rank {bilinear.rank} != local system rank {rho.rank}"
            )
        self.bilinear = bilinear
        self.rho = rho
        self.quad: QuadraticForm = quad_from_bilinear(bilinear)
        if not invariance_check(self.quad, rho.mon):
            raise NotInvariant("the level's quadratic form is not monodromy invariant")
        self.pairing: SymmetricForm = polarize(self.quad)


def _letter_frames(rho: LatticeLocalSystem):
    """Per relator letter: (generator index, exponent, chart transport).

    The transport is the monodromy of the boundary-word prefix ending just
    before a positive letter, or just after a negative one; that is the frame
    in which the letter's loop value sits when the relator is unwound.
    """
    frames = []
    prefix = IntMatrix.identity(rho.rank)
    for letter in SurfaceGroup(rho.genus).relator():
        j = abs(letter) - 1
        if letter > 0:
            frames.append((j, 1, prefix))
            prefix = prefix @ rho.matrix(letter)
        else:
            prefix = prefix @ rho.matrix(letter)
            frames.append((j, -1, prefix))
    return frames


def pairing_on_cocycles(
    pairing: SymmetricForm,
    rho: LatticeLocalSystem,
    u: Sequence[int],
    v: Sequence[int],
) -> Frac1:
    """Closed form for the cup pairing of two kernel vectors.

    ``u`` and ``v`` list one lattice vector per generator loop (concatenated).
    Unwinding the relator turns the cup product against the fundamental class
    into a sum over ordered letter pairs; no triangulation is built.
    """
    r = rho.rank
    n = 2 * rho.genus * r
    if len(u) != n or len(v) != n:
        raise DimensionMismatch(f"expected vectors of length {n}")
    u_blocks = [tuple(u[j * r : (j + 1) * r]) for j in range(2 * rho.genus)]
    v_blocks = [tuple(v[j * r : (j + 1) * r]) for j in range(2 * rho.genus)]
    total = ZERO
    acc = (0,) * r
    for j, eps, frame in _letter_frames(rho):
        u_k = tuple(eps * x for x in frame.mul_vec(u_blocks[j]))
        v_k = tuple(eps * x for x in frame.mul_vec(v_blocks[j]))
        total = total + pairing.evaluate(acc, v_k)
        if eps == -1:
            total = total + pairing.evaluate(u_k, v_k)
        acc = tuple(a + x for a, x in zip(acc, u_k))
    return total


def commutator_pairing(level: LevelInput) -> tuple[tuple[Frac1, ...], ...]:
    """omega on the chosen generators of pi_1 (free generators first).

    Antisymmetric with zero diagonal on the free generators; violations would
    mean the closed form and the presentation disagree, which is an internal
    error, never a user one.
    """
    pres = cohomology_presentations(level.rho)
    gens = pres.h1.all_gens()
    omega = tuple(
        tuple(pairing_on_cocycles(level.pairing, level.rho, gi, gj) for gj in gens)
        for gi in gens
    )
    free = len(pres.h1.free_gens)
    for i in range(len(gens)):
        for j in range(len(gens)):
            if omega[i][j] + omega[j][i] != ZERO:
                raise InvariantViolation("commutator pairing is not antisymmetric")
        if i < free and omega[i][i] != ZERO:
            raise InvariantViolation("commutator pairing has a nonzero free diagonal")
    return omega


def pi2_character(level: LevelInput, component: Sequence[int]) -> tuple[Frac1, ...]:
    """chi_d on the invariant-sublattice basis for the component represented by d.

    Well-definedness in d is rechecked on every call: shifting the
    representative by any (rho(x) - 1)-image must not change the values.
    """
    rho = level.rho
    d_rep = tuple(int(x) for x in component)
    if len(d_rep) != rho.rank:
        raise BadComponent(f"component representative must have length {rho.rank}")
    pres = cohomology_presentations(rho)
    basis = [pres.h0_basis.column(i) for i in range(pres.h0_basis.cols)]

    def chi(rep: Sequence[int]) -> tuple[Frac1, ...]:
        return tuple(level.pairing.evaluate(lam, rep) for lam in basis)

    values = chi(d_rep)
    eye = IntMatrix.identity(rho.rank)
    for m in rho.mon:
        diff = m - eye
        for l in range(rho.rank):
            shift = diff.column(l)
            shifted = tuple(a + b for a, b in zip(d_rep, shift))
            if chi(shifted) != values:
                raise InvariantViolation(
                    "pi2 character depends on the component representative"
                )
    return values


@dataclass(frozen=True)
class GerbeBlock:
    """Isomorphism data of one component's flat gerbe."""

    component: tuple[int, ...]
    omega: tuple[tuple[Frac1, ...], ...]
    pi2_character: tuple[Frac1, ...]
    radical_rank: int
    block_dim: int


@dataclass(frozen=True)
class BlockReport:
    """Everything the global tasks report, before serialization."""

    section: SectionSpaceInvariants
    presentations: CohomologyPresentations
    omega: tuple[tuple[Frac1, ...], ...]
    radical_rank: int
    block_dim: int
    blocks: tuple[GerbeBlock, ...]


def _heisenberg_dimensions(
    omega: tuple[tuple[Frac1, ...], ...], free_count: int
) -> tuple[int, int]:
    """(radical rank, block dimension) of the pairing on the free generators.

    Lift N*omega to an integer antisymmetric matrix A (N the lcm of the
    denominators); the finite quotient is the image of A on (Z/N)-coordinates
    and its order is a perfect square because the nonzero invariant factors
    of an antisymmetric matrix pair up.
    """
    f = free_count
    if f == 0:
        return 0, 1
    n = math.lcm(*[omega[i][j].den for i in range(f) for j in range(f)])
    a = IntMatrix(
        f, f, [omega[i][j].num * (n // omega[i][j].den) for i in range(f) for j in range(f)]
    )
    snf = smith_normal_form(a)
    diag = list(snf.diagonal())
    rank = sum(1 for d in diag if d)
    order = 1
    for d in diag:
        order *= n // math.gcd(n, d)
    dim = math.isqrt(order)
    if dim * dim != order:
        raise InvariantViolation("block order is not a perfect square")
    return f - rank, dim


def enumerate_components(
    pres: CohomologyPresentations, free_bound: int = 1
) -> list[tuple[int, ...]]:
    """Default component list: all torsion classes, free coordinates within a bound."""
    h2 = pres.h2
    r = pres.complex.rank
    free_ranges = [range(-free_bound, free_bound + 1)] * len(h2.free_gens)
    torsion_ranges = [range(o) for o in h2.group.torsion]
    out = []
    for free_coeffs in product(*free_ranges):
        for tors_coeffs in product(*torsion_ranges):
            rep = [0] * r
            for coef, gen in zip(free_coeffs, h2.free_gens):
                for i in range(r):
                    rep[i] += coef * gen[i]
            for coef, gen in zip(tors_coeffs, h2.torsion_gens):
                for i in range(r):
                    rep[i] += coef * gen[i]
            out.append(tuple(rep))
    return out


def block_report(
    level: LevelInput,
    components: Sequence[Sequence[int]] | None = None,
    free_bound: int = 1,
    mapper=map,
) -> BlockReport:
    """Full block structure; ``mapper`` lets callers fan per-component work out."""
    rho = level.rho
    pres = cohomology_presentations(rho)
    section = SectionSpaceInvariants(
        pi0=pres.triple.h2, pi1=pres.triple.h1, pi2=pres.triple.h0
    )
    omega = commutator_pairing(level)
    radical_rank, block_dim = _heisenberg_dimensions(omega, len(pres.h1.free_gens))
    if components is None:
        reps = enumerate_components(pres, free_bound)
    else:
        reps = [tuple(int(x) for x in c) for c in components]
        for rep in reps:
            if len(rep) != rho.rank:
                raise BadComponent(f"component representative must have length {rho.rank}")

    def one_block(rep: tuple[int, ...]) -> GerbeBlock:
        return GerbeBlock(
            component=rep,
            omega=omega,
            pi2_character=pi2_character(level, rep),
            radical_rank=radical_rank,
            block_dim=block_dim,
        )

    blocks = tuple(mapper(one_block, reps))
    return BlockReport(section, pres, omega, radical_rank, block_dim, blocks)


@dataclass(frozen=True)
class BuntReport:
    """Block data relabeled for the moduli of bundles on the curve.

    pi0 carries first-Chern-class labels and coincides with degree-2
    cohomology; the uniformization degrees supply pi1 and pi2. The group data
    is identical to the section-space report by construction, and that
    equality is asserted here rather than trusted.
    """

    pi0: FgAbGroup
    pi1: FgAbGroup
    pi2: FgAbGroup
    component_label: str
    blocks: tuple[GerbeBlock, ...]


def bunt_report(
    level: LevelInput,
    components: Sequence[Sequence[int]] | None = None,
    free_bound: int = 1,
    mapper=map,
) -> BuntReport:
    report = block_report(level, components, free_bound, mapper)
    space = section_space(level.rho)
    if (space.pi0, space.pi1, space.pi2) != (
        report.section.pi0,
        report.section.pi1,
        report.section.pi2,
    ):
        raise InvariantViolation("bundle-moduli and section-space group data disagree")
    return BuntReport(
        pi0=space.pi0,
        pi1=space.pi1,
        pi2=space.pi2,
        component_label="first_chern_class",
        blocks=report.blocks,
    )
