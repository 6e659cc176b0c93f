"""Simplicial cochain model of the closed genus-g surface.

The surface is the 4g-gon with the standard boundary identification, coned
from an interior vertex: 4g triangles, 4g radial edges, 2g identified
boundary loops, and two vertices (cone point and the single boundary
vertex). Each triangle carries a fixed vertex order with the cone point
first, chosen so that every face traverses its edge cell in the cell's
intrinsic direction; this makes the complex a genuine ordered
(delta-complex) structure on which the front/back-face cup product is
defined.

Twisted cochains store one integer vector per cell, read in the chart of the
polygon interior. Because the polygon is simply connected, the coboundary is
the untwisted alternating sum once each face value is transported back to
the chart: a face lying over the boundary word prefix W picks up the
monodromy of W. The orientation is normalized so that at genus 1 with
trivial coefficients the a-loop cup b-loop evaluates to +1.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

from .errors import (
    NotACocycle,
    NotInKernel,
    ShapeMismatch,
    UnsupportedGenus,
)
from .errors import InvariantViolation
from .forms import ZERO, Frac1, SymmetricForm
from .surface import LatticeLocalSystem, Word

Cell = tuple[str, object]  # ("vert","c"|"v"), ("rad",k), ("gen",j), ("tri",k)

_V_CONE: Cell = ("vert", "c")
_V_BASE: Cell = ("vert", "v")

# face slot -> (tail position, head position) in the ordered triangle
_SLOT_ENDS = {0: (1, 2), 1: (0, 2), 2: (0, 1)}


@dataclass(frozen=True)
class _Face:
    cell: Cell
    word: Word  # transport from the chart to this face's position


@dataclass(frozen=True)
class _Triangle:
    sign: int  # contribution to the fundamental cycle
    faces: tuple[_Face, _Face, _Face]  # slots d0, d1, d2


class TriangulatedSurface:
    """Combinatorial tables of the coned 4g-gon; no coefficient data."""

    def __init__(self, genus: int):
        if genus < 1:
            raise UnsupportedGenus("the polygon model needs genus >= 1")
        self.genus = genus
        n = 4 * genus
        self.num_sides = n
        # side k of the polygon carries generator j with exponent eps
        self.side_letter: list[tuple[int, int]] = []
        for k in range(n):
            j = 2 * (k // 4) + (0 if k % 4 in (0, 2) else 1)
            eps = 1 if k % 4 < 2 else -1
            self.side_letter.append((j, eps))
        # boundary word prefixes: W_0 empty, W_{k+1} = W_k * letter_k
        self.prefix_words: list[Word] = [()]
        for k in range(n):
            j, eps = self.side_letter[k]
            self.prefix_words.append(self.prefix_words[k] + (eps * (j + 1),))
        self.triangles: list[_Triangle] = []
        for k in range(n):
            j, eps = self.side_letter[k]
            rad_k: Cell = ("rad", k)
            rad_next: Cell = ("rad", (k + 1) % n)
            gen: Cell = ("gen", j)
            if eps == 1:
                # ordered (cone, corner k, corner k+1); agrees with the polygon
                # orientation, so it counts +1 in the fundamental cycle
                faces = (_Face(gen, self.prefix_words[k]), _Face(rad_next, ()), _Face(rad_k, ()))
                self.triangles.append(_Triangle(1, faces))
            else:
                # ordered (cone, corner k+1, corner k): the side is traversed
                # against the polygon, so the triangle counts -1
                faces = (_Face(gen, self.prefix_words[k + 1]), _Face(rad_k, ()), _Face(rad_next, ()))
                self.triangles.append(_Triangle(-1, faces))
        self.edge_cells: list[Cell] = [("rad", k) for k in range(n)] + [
            ("gen", j) for j in range(2 * genus)
        ]
        # oriented edges: (tail face, head face) with transports into the chart
        self.edge_ends: dict[Cell, tuple[_Face, _Face]] = {}
        for k in range(n):
            self.edge_ends[("rad", k)] = (_Face(_V_CONE, ()), _Face(_V_BASE, self.prefix_words[k]))
        for j in range(2 * genus):
            self.edge_ends[("gen", j)] = (_Face(_V_BASE, ()), _Face(_V_BASE, (j + 1,)))
        self._validate()

    # -- structural checks -------------------------------------------------

    def _validate(self) -> None:
        g, n = self.genus, self.num_sides
        v, e, f = 2, len(self.edge_cells), len(self.triangles)
        if v - e + f != 2 - 2 * g:
            raise InvariantViolation("Euler characteristic mismatch")
        occurrences: dict[Cell, list[tuple[int, int]]] = {c: [] for c in self.edge_cells}
        for t, tri in enumerate(self.triangles):
            for slot, face in enumerate(tri.faces):
                occurrences[face.cell].append((t, slot))
        for cell, occ in occurrences.items():
            if len(occ) != 2:
                raise InvariantViolation(f"edge {cell} lies on {len(occ)} triangle sides, not 2")
        # the signed faces must cancel: the triangles form a fundamental cycle
        balance: dict[Cell, int] = {c: 0 for c in self.edge_cells}
        for tri in self.triangles:
            for slot, face in enumerate(tri.faces):
                balance[face.cell] += tri.sign * (1 if slot != 1 else -1)
        if any(balance.values()):
            raise InvariantViolation("triangle orientations do not sum to a cycle")
        if self._count_link_circles(occurrences) != v:
            raise InvariantViolation("some vertex link is not a single circle")

    def _count_link_circles(self, occurrences: dict[Cell, list[tuple[int, int]]]) -> int:
        # walk corner-to-corner around each vertex; every cycle is one link
        # circle, so the number of cycles must equal the number of vertices
        adj = {0: (1, 2), 1: (0, 2), 2: (0, 1)}  # corner position -> face slots
        seen: set[tuple[int, int, int]] = set()  # (triangle, position, exit slot)
        cycles = 0
        for t0 in range(len(self.triangles)):
            for p0 in range(3):
                for s0 in adj[p0]:
                    if (t0, p0, s0) in seen:
                        continue
                    cycles += 1
                    t, p, s = t0, p0, s0
                    while (t, p, s) not in seen:
                        seen.add((t, p, s))
                        a, b = occurrences[self.triangles[t].faces[s].cell]
                        t2, s2 = b if (t, s) == a else a
                        # land on the matching end of the shared edge
                        end = 0 if _SLOT_ENDS[s][0] == p else 1
                        p2 = _SLOT_ENDS[s2][end]
                        other = [x for x in adj[p2] if x != s2][0]
                        t, p, s = t2, p2, other
                    if (t, p, s) != (t0, p0, s0):
                        raise InvariantViolation("corner walk did not close up")
        # each undirected corner was traversed once per exit slot; the walk
        # above visits every (corner, exit) pair exactly once around a cycle,
        # so directed cycles come in orientation pairs
        if cycles % 2:
            raise InvariantViolation("odd number of directed link cycles")
        return cycles // 2

    def cells_of_degree(self, degree: int) -> list[Cell]:
        if degree == 0:
            return [_V_CONE, _V_BASE]
        if degree == 1:
            return list(self.edge_cells)
        if degree == 2:
            return [("tri", k) for k in range(self.num_sides)]
        raise ShapeMismatch(f"no cells in degree {degree}")


@dataclass(frozen=True)
class TwistedCochain:
    """Vector-valued cochain; values are read in the polygon chart."""

    degree: int
    rank: int
    values: Mapping[Cell, tuple[int, ...]]

    def __post_init__(self):
        if self.degree not in (0, 1, 2):
            raise ShapeMismatch(f"degree must be 0, 1 or 2, got {self.degree}")
        clean = {}
        for cell, vec in self.values.items():
            v = tuple(int(x) for x in vec)
            if len(v) != self.rank:
                raise ShapeMismatch(f"value at {cell} has length {len(v)}, expected {self.rank}")
            clean[cell] = v
        object.__setattr__(self, "values", clean)

    def value(self, cell: Cell) -> tuple[int, ...]:
        return self.values[cell]


def triangulate(genus: int) -> TriangulatedSurface:
    """Build and validate the coned-polygon model; genus must be >= 1."""
    return TriangulatedSurface(genus)


def _check_compat(c: TwistedCochain, t: TriangulatedSurface, rho: LatticeLocalSystem) -> None:
    if rho.genus != t.genus:
        raise ShapeMismatch(f"local system genus {rho.genus} != triangulation genus {t.genus}")
    if c.rank != rho.rank:
        raise ShapeMismatch(f"cochain rank {c.rank} != local system rank {rho.rank}")
    want = set(t.cells_of_degree(c.degree))
    have = set(c.values.keys())
    if want != have:
        raise ShapeMismatch("cochain does not assign exactly one value per cell of its degree")


def _transported(rho: LatticeLocalSystem, face: _Face, value: Sequence[int]) -> tuple[int, ...]:
    return rho.word_matrix(face.word).mul_vec(value)


def coboundary(
    c: TwistedCochain, t: TriangulatedSurface, rho: LatticeLocalSystem
) -> TwistedCochain:
    """Twisted coboundary; raises in degree 2 where no higher cells exist."""
    _check_compat(c, t, rho)
    r = c.rank
    if c.degree == 0:
        out: dict[Cell, tuple[int, ...]] = {}
        for cell in t.edge_cells:
            tail, head = t.edge_ends[cell]
            hv = _transported(rho, head, c.value(head.cell))
            tv = _transported(rho, tail, c.value(tail.cell))
            out[cell] = tuple(h - x for h, x in zip(hv, tv))
        return TwistedCochain(1, r, out)
    if c.degree == 1:
        out = {}
        for k, tri in enumerate(t.triangles):
            total = [0] * r
            for slot, face in enumerate(tri.faces):
                sgn = 1 if slot != 1 else -1
                moved = _transported(rho, face, c.value(face.cell))
                for i in range(r):
                    total[i] += sgn * moved[i]
            out[("tri", k)] = tuple(total)
        return TwistedCochain(2, r, out)
    raise ShapeMismatch("no coboundary out of degree 2")


def cocycle_check(c: TwistedCochain, t: TriangulatedSurface, rho: LatticeLocalSystem) -> bool:
    """True when the twisted coboundary vanishes identically.

    Degree-2 cochains are cocycles vacuously: the complex stops there.
    """
    _check_compat(c, t, rho)
    if c.degree == 2:
        return True
    d = coboundary(c, t, rho)
    return all(all(x == 0 for x in v) for v in d.values.values())


def cup_evaluate(
    c1: TwistedCochain,
    c2: TwistedCochain,
    pairing: SymmetricForm,
    t: TriangulatedSurface,
    rho: LatticeLocalSystem,
) -> Frac1:
    """Pair two 1-cocycles against the fundamental class.

    Front face/back face rule on each ordered triangle: the value of c1 on
    the edge out of the first vertex, paired with the value of c2 on the edge
    into the last vertex, both transported to the chart. The pairing must be
    monodromy invariant for the result to be well defined; callers own that
    check.
    """
    if c1.degree != 1 or c2.degree != 1:
        raise NotACocycle("cup evaluation is defined on a pair of 1-cocycles")
    if pairing.rank != rho.rank:
        raise ShapeMismatch(f"pairing rank {pairing.rank} != local system rank {rho.rank}")
    if not cocycle_check(c1, t, rho):
        raise NotACocycle("first argument is not a cocycle")
    if not cocycle_check(c2, t, rho):
        raise NotACocycle("second argument is not a cocycle")
    total = ZERO
    for tri in t.triangles:
        front = tri.faces[2]  # edge [v0, v1]
        back = tri.faces[0]  # edge [v1, v2]
        x = _transported(rho, front, c1.value(front.cell))
        y = _transported(rho, back, c2.value(back.cell))
        total = total + pairing.evaluate(x, y).scale(tri.sign)
    return total


def class_of(
    h1_vector: Sequence[int], t: TriangulatedSurface, rho: LatticeLocalSystem
) -> TwistedCochain:
    """Simplicial 1-cocycle with prescribed holonomy on each boundary loop.

    The input lists one integer vector per generator loop (concatenated,
    generator-major). Values on the radial edges are forced by the cocycle
    condition triangle by triangle around the polygon; the walk closes up
    exactly when the input lies in the kernel of the degree-1 differential,
    otherwise NotInKernel is raised.
    """
    g, r = t.genus, rho.rank
    if rho.genus != g:
        raise ShapeMismatch(f"local system genus {rho.genus} != triangulation genus {g}")
    vec = tuple(int(x) for x in h1_vector)
    if len(vec) != 2 * g * r:
        raise ShapeMismatch(f"expected a vector of length {2 * g * r}, got {len(vec)}")
    loop_values = [vec[j * r : (j + 1) * r] for j in range(2 * g)]
    values: dict[Cell, tuple[int, ...]] = {("gen", j): loop_values[j] for j in range(2 * g)}
    radial = [0] * r
    values[("rad", 0)] = tuple(radial)
    for k in range(t.num_sides):
        j, eps = t.side_letter[k]
        if eps == 1:
            step = rho.word_matrix(t.prefix_words[k]).mul_vec(loop_values[j])
            radial = [a + s for a, s in zip(radial, step)]
        else:
            step = rho.word_matrix(t.prefix_words[k + 1]).mul_vec(loop_values[j])
            radial = [a - s for a, s in zip(radial, step)]
        if k + 1 < t.num_sides:
            values[("rad", k + 1)] = tuple(radial)
    if any(radial):
        raise NotInKernel("holonomy data does not close up around the polygon")
    return TwistedCochain(1, r, values)


def holonomies(c: TwistedCochain, t: TriangulatedSurface) -> tuple[int, ...]:
    """Concatenated loop values of a 1-cochain, generator-major."""
    if c.degree != 1:
        raise ShapeMismatch("holonomies are read off 1-cochains")
    out: list[int] = []
    for j in range(2 * t.genus):
        out.extend(c.value(("gen", j)))
    return tuple(out)
