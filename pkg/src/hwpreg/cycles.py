"""Cycles on group elements, their translates, orbits and differences.

A cycle is stored in canonical form: the lexicographically least among
all rotations of both orientations, so equality means equality as a
subgraph.  The group acts on cycles by right translation.  The list of
partial differences of a cycle C = (c_1, ..., c_l) is the inverse-closed
set collecting c_{t+1} * c_t^-1 for every consecutive pair (indices mod
l); when the orbit of C under the full group tiles Cay[G:Omega] exactly,
those orbits are the building blocks of a 2-factorization.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .cayley import ConnectionSet, cayley_graph, connection_set, edge
from .groups import FiniteGroup, GroupError, Subgroup


class CycleError(ValueError):
    """Vertex sequence that does not describe a cycle."""


def _canonical_rotation(verts: tuple[int, ...]) -> tuple[int, ...]:
    best: Optional[tuple[int, ...]] = None
    n = len(verts)
    for seq in (verts, verts[::-1]):
        for r in range(n):
            cand = seq[r:] + seq[:r]
            if best is None or cand < best:
                best = cand
    assert best is not None
    return best


@dataclass(frozen=True)
class Cycle:
    """A simple cycle on group elements, canonical under rotation/reflection."""

    group: FiniteGroup
    verts: tuple[int, ...]

    @property
    def length(self) -> int:
        return len(self.verts)

    def edges(self) -> list[tuple[int, int]]:
        v = self.verts
        return [edge(v[t], v[(t + 1) % len(v)]) for t in range(len(v))]

    def vertex_set(self) -> frozenset[int]:
        return frozenset(self.verts)

    def format(self, fancy: bool = False) -> str:
        inner = ", ".join(self.group.format(v, fancy) for v in self.verts)
        return f"({inner})"


def cycle(group: FiniteGroup, verts: Sequence[int]) -> Cycle:
    """Validate and canonicalize a vertex sequence into a Cycle."""
    vt = tuple(verts)
    if len(vt) < 3:
        raise CycleError(f"cycle needs at least 3 vertices, got {len(vt)}")
    for v in vt:
        if not 0 <= v < len(group):
            raise CycleError(f"vertex index {v} out of range for {group.id}")
    if len(set(vt)) != len(vt):
        dup = [v for v, c in Counter(vt).items() if c > 1][0]
        raise CycleError(
            f"repeated vertex {group.format(dup)} in cycle"
        )
    return Cycle(group, _canonical_rotation(vt))


def cycle_from_texts(group: FiniteGroup, texts: Sequence[str]) -> Cycle:
    return cycle(group, [group.parse(t) for t in texts])


def translate_cycle(c: Cycle, x: int) -> Cycle:
    """Right-translate every vertex by x and re-canonicalize."""
    G = c.group
    return Cycle(G, _canonical_rotation(tuple(G.mul(v, x) for v in c.verts)))


def cycle_stabilizer(c: Cycle) -> Subgroup:
    """Set-wise stabilizer of c under right translation (checked subgroup)."""
    G = c.group
    members = tuple(
        x for x in range(len(G)) if translate_cycle(c, x) == c
    )
    mset = set(members)
    for a in members:
        for b in members:
            if G.mul(a, b) not in mset:
                raise GroupError("cycle stabilizer is not closed")
    return Subgroup(G, members, members)


@dataclass(frozen=True)
class CycleOrbit:
    """Orbit of a base cycle under a subgroup acting by right translation."""

    base: Cycle
    subgroup: Subgroup
    cycles: tuple[Cycle, ...]
    stabilizer: Subgroup  # stabilizer of base inside the acting subgroup

    def __len__(self) -> int:
        return len(self.cycles)


def cycle_orbit(c: Cycle, sub: Subgroup) -> CycleOrbit:
    """Distinct translates of c under sub, with the orbit-stabilizer check."""
    seen: dict[Cycle, None] = {}
    for x in sub.members:
        seen.setdefault(translate_cycle(c, x), None)
    G = c.group
    stab_members = tuple(
        x for x in sub.members if translate_cycle(c, x) == c
    )
    stab = Subgroup(G, stab_members, stab_members)
    orbit = tuple(sorted(seen, key=lambda cc: cc.verts))
    if len(orbit) * stab.order != sub.order:
        raise GroupError(
            f"orbit-stabilizer mismatch: {len(orbit)} * {stab.order} != {sub.order}"
        )
    return CycleOrbit(c, sub, orbit, stab)


def forward_differences(c: Cycle) -> list[int]:
    """Consecutive differences c_{t+1} * c_t^-1 in cycle order (with repeats)."""
    G = c.group
    v = c.verts
    return [
        G.mul(v[(t + 1) % len(v)], G.inv(v[t])) for t in range(len(v))
    ]


def partial_differences(c: Cycle) -> ConnectionSet:
    """Inverse-closed set of the differences realized by edges of c."""
    G = c.group
    out: set[int] = set()
    for d in forward_differences(c):
        out.add(d)
        out.add(G.inv(d))
    return connection_set(G, out)


def omega_representatives(c: Cycle) -> list[int]:
    """One member per inverse pair of partial_differences(c), in the order
    the pairs are first realized walking the cycle."""
    G = c.group
    reps: list[int] = []
    seen: set[int] = set()
    for d in forward_differences(c):
        if d in seen:
            continue
        seen.update((d, G.inv(d)))
        reps.append(d)
    return reps


@dataclass(frozen=True)
class DecompositionReport:
    """Outcome of checking that Orb_G(C) decomposes Cay[G:Omega(C)]."""

    ok: bool
    omega: ConnectionSet
    orbit_length: int
    edges_expected: int
    edges_seen: int
    witness: Optional[tuple[int, int]]  # an edge covered != once, if any
    message: str


def verify_orbit_decomposition(c: Cycle) -> DecompositionReport:
    """Check the full-group orbit of c covers every Cay[G:Omega] edge once."""
    G = c.group
    omega = partial_differences(c)
    orbit = cycle_orbit(c, G.whole_subgroup())
    counts: Counter[tuple[int, int]] = Counter()
    for cc in orbit.cycles:
        counts.update(cc.edges())
    target = cayley_graph(G, omega).edges
    for e, n in counts.items():
        if n > 1:
            return DecompositionReport(
                False, omega, len(orbit), len(target), sum(counts.values()), e,
                "edge covered more than once by the cycle orbit",
            )
        if e not in target:
            return DecompositionReport(
                False, omega, len(orbit), len(target), sum(counts.values()), e,
                "orbit edge outside the Cayley graph of the differences",
            )
    missing = target - counts.keys()
    if missing:
        e = min(missing)
        return DecompositionReport(
            False, omega, len(orbit), len(target), sum(counts.values()), e,
            "Cayley graph edge not covered by the cycle orbit",
        )
    return DecompositionReport(
        True, omega, len(orbit), len(target), sum(counts.values()), None, "ok"
    )


@dataclass(frozen=True)
class PartitionReport:
    """Outcome of checking difference sets partition G minus {1, involution}."""

    ok: bool
    union_size: int
    expected_size: int
    overlaps: tuple[tuple[int, int], ...]  # (element, multiplicity > 1)
    missing: tuple[int, ...]
    forbidden: tuple[int, ...]  # identity or involution showing up


def verify_partition(
    group: FiniteGroup, omegas: Iterable[ConnectionSet]
) -> PartitionReport:
    counts: Counter[int] = Counter()
    for om in omegas:
        counts.update(om.members)
    excluded = {group.identity, group.unique_involution()}
    universe = set(range(len(group))) - excluded
    overlaps = tuple(
        (x, n) for x, n in sorted(counts.items()) if n > 1
    )
    missing = tuple(sorted(universe - counts.keys()))
    forbidden = tuple(sorted(set(counts) & excluded))
    ok = not overlaps and not missing and not forbidden
    return PartitionReport(
        ok, len(set(counts)), len(universe), overlaps, missing, forbidden
    )
