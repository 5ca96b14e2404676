"""Saturation factors k_R, k_w and k(W_aff, L) for root systems and lattices.

The computation follows the alcove-vertex procedure: the finite group
F = L/Q(R^vee) acts on the extended Dynkin diagram; for every element g and
every <g>-orbit of alcove vertices, the barycenter b must be moved onto a
special vertex by the least integer k_O with k_O * alpha(b) integral for all
alpha in {theta, alpha_1, ..., alpha_n}; the saturation factor is the LCM of
the k_O over all orbits and all g.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Sequence

from .intlinalg import (
    lattice_basis_from_generators,
    lattice_intersect_span,
    quotient_representatives,
)
from .rootdata import (
    LatticeSpec,
    RootSystem,
    Vector,
    alcove_reduce,
    coroot_lattice,
    coweight_lattice,
    translation_map,
    vadd,
    vdot,
    vscale,
    vzero,
)


@dataclass(frozen=True)
class ExtendedDiagram:
    """Alcove vertices of an irreducible system with their theta-labels.

    Vertex 0 is the origin (label 1); vertex i >= 1 is omega_i^vee / m_i
    (label m_i), the vertex of the fundamental alcove cut out by theta(x)=1
    and the walls alpha_j(x)=0, j != i.
    """

    system: RootSystem
    vertices: tuple[Vector, ...]
    labels: tuple[int, ...]

    @staticmethod
    def build(system: RootSystem) -> "ExtendedDiagram":
        if not system.is_irreducible():
            raise ValueError("extended diagram needs an irreducible system")
        m = system.theta_coefficients
        vertices = [vzero(system.ambient_dim)]
        for i in range(system.rank):
            vertices.append(vscale(Fraction(1, m[i]), system.fundamental_coweight(i)))
        labels = (1,) + tuple(m)
        theta = system.theta
        for i in range(1, len(vertices)):
            if vdot(theta, vertices[i]) != 1:
                raise AssertionError("alcove vertex fails theta(x) = 1")
        return ExtendedDiagram(system, tuple(vertices), labels)


@dataclass(frozen=True)
class DiagramAutomorphism:
    """An alcove automorphism induced by a coweight class in F = L/Q(R^vee)."""

    permutation: tuple[int, ...]
    class_rep: Vector

    def orbits(self) -> list[tuple[int, ...]]:
        seen = set()
        out = []
        for start in range(len(self.permutation)):
            if start in seen:
                continue
            cycle = [start]
            seen.add(start)
            nxt = self.permutation[start]
            while nxt != start:
                cycle.append(nxt)
                seen.add(nxt)
                nxt = self.permutation[nxt]
            out.append(tuple(cycle))
        return out


def k_R(system: RootSystem) -> int:
    """Least k moving every Coxeter-complex vertex into the coweight lattice.

    Equals LCM of the highest-root coefficients, component by component.
    """
    k = 1
    for _, coeffs in system.highest_roots():
        for m in coeffs:
            if m:
                k = lcm(k, m)
    return k


def fundamental_group_action(
    system: RootSystem, L: LatticeSpec | Sequence[Vector]
) -> list[DiagramAutomorphism]:
    """The action of F = L/Q(R^vee) on the alcove vertices.

    Each class representative tau acts as (alcove reduction) o (translation
    by tau); the resulting isometry preserves the alcove and permutes its
    vertices label-preservingly.
    """
    if not system.is_irreducible():
        raise ValueError("fundamental group action needs an irreducible system")
    basis = L.basis if isinstance(L, LatticeSpec) else tuple(L)
    LatticeSpec(system, basis)  # validates the sandwich Q <= L <= P
    diagram = ExtendedDiagram.build(system)
    reps = quotient_representatives(basis, system.simple_coroots)
    autos = []
    barycenter = vscale(
        Fraction(1, len(diagram.vertices)),
        _vsum(diagram.vertices, system.ambient_dim),
    )
    for tau in reps:
        translated = vadd(barycenter, tau)
        _, amap = alcove_reduce(system, translated)
        g = amap.compose_after(translation_map(tau))
        perm = []
        for v in diagram.vertices:
            img = g.apply(v)
            try:
                perm.append(diagram.vertices.index(img))
            except ValueError:
                raise AssertionError("alcove automorphism does not permute vertices")
        if sorted(perm) != list(range(len(perm))):
            raise AssertionError("vertex map is not a permutation")
        for i, j in enumerate(perm):
            if diagram.labels[i] != diagram.labels[j]:
                raise AssertionError("automorphism does not preserve labels")
        if any(perm[i] == i and diagram.labels[i] == 1 for i in range(len(perm))):
            if perm != list(range(len(perm))):
                raise AssertionError("automorphism fixing a label-1 node must be trivial")
        autos.append(DiagramAutomorphism(tuple(perm), tau))
    return autos


def _orbit_factor(diagram: ExtendedDiagram, cycle: Sequence[int]) -> int:
    barycenter = vscale(
        Fraction(1, len(cycle)),
        _vsum([diagram.vertices[i] for i in cycle], diagram.system.ambient_dim),
    )
    functionals = list(diagram.system.simple_roots) + [diagram.system.theta]
    k = 1
    for a in functionals:
        k = lcm(k, vdot(a, barycenter).denominator)
    return k


def saturation_factor(system: RootSystem, L: LatticeSpec | Sequence[Vector]) -> int:
    """k(W_aff, L) for Q(R^vee) <= L <= P(R^vee) (components treated by LCM).

    The lattice is first intersected with the span of the coroots (dropping
    central directions) and then projected to each irreducible component.
    """
    basis = list(L.basis if isinstance(L, LatticeSpec) else L)
    basis = lattice_intersect_span(basis, list(system.simple_coroots))
    k = 1
    for ci, (series, rank) in enumerate(system.components):
        lo, d = system.block_spans[ci]
        comp = RootSystem("%s%d" % (series, rank))
        gens = [tuple(b[lo : lo + d]) for b in basis]
        comp_basis = lattice_basis_from_generators(gens)
        k = lcm(k, _saturation_irreducible(comp, comp_basis))
    return k


def _saturation_irreducible(system: RootSystem, basis: Sequence[Vector]) -> int:
    diagram = ExtendedDiagram.build(system)
    k = 1
    for auto in fundamental_group_action(system, basis):
        for cycle in auto.orbits():
            k = lcm(k, _orbit_factor(diagram, cycle))
    return k


def k_w(system: RootSystem) -> int:
    """Saturation factor for the full coweight lattice P(R^vee)."""
    return saturation_factor(system, coweight_lattice(system))


def connection_index(system: RootSystem) -> int:
    """|P(R^vee)/Q(R^vee)| (the index of connection)."""
    reps = quotient_representatives(
        [system.fundamental_coweight(i) for i in range(system.rank)],
        system.simple_coroots,
    )
    return len(reps)


def k_for_group(preset) -> int:
    """Saturation factor of a group preset (reduces to the derived group)."""
    from .groups import GroupPreset, resolve_preset

    if not isinstance(preset, GroupPreset):
        preset = resolve_preset(preset)
    k = 1
    for comp_system, comp_lattice in preset.satfactor_parts:
        k = lcm(k, saturation_factor(comp_system, comp_lattice))
    return k


def _vsum(vectors, dim):
    total = vzero(dim)
    for v in vectors:
        total = vadd(total, v)
    return total
