"""Assembling 2-factors from cycle orbits and certifying factorizations.

A factor recipe is a list of (base cycle, acting subgroup) parts; the
union of the sub-orbits must tile the group, giving one 2-factor.  The
full-group orbits of the recipe factors are then expected to partition
the edge set of the cocktail party graph K_v minus I.  Verification is
by brute force: every edge of every expanded factor is counted exactly
once against the target edge set, and the outcome is wrapped in a
certificate that renders both as readable text and as byte-stable JSON.
"""

from __future__ import annotations

import hashlib
import json
from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .cayley import cocktail_party_graph
from .cycles import Cycle, cycle_orbit, translate_cycle
from .groups import FiniteGroup, GroupError, Subgroup

CERTIFICATE_FORMAT = "hwp-regular-certificate/1"


class RecipeError(ValueError):
    """A factor recipe that fails to assemble into a 2-factor."""

    def __init__(self, message: str, witness: Optional[dict] = None) -> None:
        super().__init__(message)
        self.witness = witness or {}


@dataclass(frozen=True)
class RecipePart:
    cycle: Cycle
    subgroup: Subgroup
    cycle_name: str
    subgroup_name: str


@dataclass(frozen=True)
class FactorRecipe:
    label: str
    parts: tuple[RecipePart, ...]


@dataclass(frozen=True)
class TwoFactor:
    """A spanning union of vertex-disjoint cycles, stored sorted."""

    group: FiniteGroup
    cycles: tuple[Cycle, ...]

    @property
    def cycle_length(self) -> Optional[int]:
        lengths = {c.length for c in self.cycles}
        return lengths.pop() if len(lengths) == 1 else None

    def key(self) -> tuple[tuple[int, ...], ...]:
        return tuple(c.verts for c in self.cycles)


def _sorted_cycles(cycles: Iterable[Cycle]) -> tuple[Cycle, ...]:
    return tuple(sorted(cycles, key=lambda c: c.verts))


def assemble_factor(group: FiniteGroup, recipe: FactorRecipe) -> TwoFactor:
    """Expand the recipe's sub-orbits and check they tile the group."""
    if not recipe.parts:
        raise RecipeError(f"{recipe.label}: empty recipe")
    covered: dict[int, str] = {}
    cycles: list[Cycle] = []
    for part in recipe.parts:
        if part.cycle.group is not group or part.subgroup.group is not group:
            raise RecipeError(f"{recipe.label}: part bound to a different group")
        orbit = cycle_orbit(part.cycle, part.subgroup)
        for c in orbit.cycles:
            for v in c.verts:
                if v in covered:
                    raise RecipeError(
                        f"{recipe.label}: vertex {group.format(v)} covered twice",
                        {
                            "kind": "overlap",
                            "vertex": group.format(v),
                            "parts": [covered[v], part.cycle_name],
                        },
                    )
                covered[v] = part.cycle_name
            cycles.append(c)
    if len(covered) != len(group):
        gap = min(v for v in range(len(group)) if v not in covered)
        raise RecipeError(
            f"{recipe.label}: vertex {group.format(gap)} not covered",
            {"kind": "gap", "vertex": group.format(gap)},
        )
    return TwoFactor(group, _sorted_cycles(cycles))


def translate_factor(f: TwoFactor, x: int) -> TwoFactor:
    return TwoFactor(f.group, _sorted_cycles(translate_cycle(c, x) for c in f.cycles))


def factor_stabilizer(f: TwoFactor) -> Subgroup:
    """Set-wise stabilizer of the whole factor under right translation."""
    G = f.group
    members = tuple(x for x in range(len(G)) if translate_factor(f, x) == f)
    mset = set(members)
    for a in members:
        for b in members:
            if G.mul(a, b) not in mset:
                raise GroupError("factor stabilizer is not closed")
    return Subgroup(G, members, members)


def factor_orbit(f: TwoFactor) -> tuple[TwoFactor, ...]:
    """Distinct right translates of f under the full group, sorted."""
    G = f.group
    seen: dict[tuple, TwoFactor] = {}
    for x in range(len(G)):
        t = translate_factor(f, x)
        seen.setdefault(t.key(), t)
    return tuple(seen[k] for k in sorted(seen))


def translation_permutes_factors(
    factors: Sequence[TwoFactor], elements: Optional[Iterable[int]] = None
) -> bool:
    """True when right translation maps the factor list onto itself."""
    if not factors:
        return True
    G = factors[0].group
    keys = {f.key() for f in factors}
    for x in elements if elements is not None else range(len(G)):
        for f in factors:
            if translate_factor(f, x).key() not in keys:
                return False
    return True


def hwp_feasibility(v: int, r: int, s: int) -> tuple[bool, Optional[str]]:
    """Arithmetic admissibility of HWP(v; 3, 4; r, s)."""
    if v < 6 or v % 2:
        return False, f"v={v} must be an even integer >= 6"
    if r < 0 or s < 0:
        return False, "factor counts must be nonnegative"
    if r + s != v // 2 - 1:
        return False, f"r+s={r + s} must equal v/2-1={v // 2 - 1}"
    if r > 0 and v % 3:
        return False, f"triangle factors need 3 | v, got v={v}"
    if s > 0 and v % 4:
        return False, f"quadrangle factors need 4 | v, got v={v}"
    return True, None


# ---------------------------------------------------------------------------
# certificates


@dataclass(frozen=True)
class FactorReport:
    label: str
    parts: tuple[tuple[str, str], ...]  # (cycle name, subgroup name)
    cycle_length: Optional[int]
    cycles_in_factor: int
    stabilizer_order: int
    orbit_length: int


@dataclass(frozen=True)
class OmegaReport:
    """Recomputed differences of one base cycle against an annotated listing."""

    cycle_name: str
    recomputed: tuple[str, ...]
    printed: Optional[tuple[str, ...]]
    match: Optional[bool]
    only_recomputed: tuple[str, ...] = ()
    only_printed: tuple[str, ...] = ()


@dataclass(frozen=True)
class Certificate:
    group_id: str
    v: int
    ok: bool
    r: Optional[int]
    s: Optional[int]
    expected: Optional[tuple[int, int, int]]
    factors: tuple[FactorReport, ...]
    edges_expected: int
    edges_covered_once: int
    duplicate_edges: int
    missing_edges: int
    edges_sha256: Optional[str]
    failure: Optional[str] = None
    witness: Optional[dict] = None
    solution_id: Optional[str] = None
    partition_ok: Optional[bool] = None
    partition_size: Optional[int] = None
    omega: tuple[OmegaReport, ...] = ()
    notes: tuple[str, ...] = ()

    def to_dict(self) -> dict:
        return {
            "format": CERTIFICATE_FORMAT,
            "solution": self.solution_id,
            "group": self.group_id,
            "v": self.v,
            "verdict": "pass" if self.ok else "fail",
            "r": self.r,
            "s": self.s,
            "expected": (
                None
                if self.expected is None
                else {"v": self.expected[0], "r": self.expected[1], "s": self.expected[2]}
            ),
            "factors": [
                {
                    "label": fr.label,
                    "parts": [
                        {"cycle": cn, "subgroup": sn} for cn, sn in fr.parts
                    ],
                    "cycle_length": fr.cycle_length,
                    "cycles_in_factor": fr.cycles_in_factor,
                    "stabilizer_order": fr.stabilizer_order,
                    "orbit_length": fr.orbit_length,
                }
                for fr in self.factors
            ],
            "edge_coverage": {
                "expected": self.edges_expected,
                "covered_once": self.edges_covered_once,
                "duplicates": self.duplicate_edges,
                "missing": self.missing_edges,
                "sha256": self.edges_sha256,
            },
            "difference_partition": {
                "ok": self.partition_ok,
                "size": self.partition_size,
            },
            "omega": [
                {
                    "cycle": om.cycle_name,
                    "recomputed": list(om.recomputed),
                    "printed": None if om.printed is None else list(om.printed),
                    "match": om.match,
                    "only_recomputed": list(om.only_recomputed),
                    "only_printed": list(om.only_printed),
                }
                for om in self.omega
            ],
            "notes": list(self.notes),
            "failure": self.failure,
            "witness": self.witness,
        }

    def canonical_text(self) -> str:
        """Byte-stable JSON rendering (sorted keys, no whitespace)."""
        return json.dumps(self.to_dict(), sort_keys=True, separators=(",", ":")) + "\n"

    def human_text(self) -> str:
        lines = []
        head = f"solution {self.solution_id}" if self.solution_id else "factorization"
        lines.append(f"{head}: {'PASS' if self.ok else 'FAIL'}")
        lines.append(
            f"  group {self.group_id} (v={self.v}), "
            f"r={self.r if self.r is not None else '?'} triangle factors, "
            f"s={self.s if self.s is not None else '?'} quadrangle factors"
        )
        if self.expected is not None:
            ev, er, es = self.expected
            lines.append(f"  expected: v={ev}, r={er}, s={es}")
        lines.append(
            f"  edges: {self.edges_covered_once}/{self.edges_expected} covered once"
            + (
                f" ({self.duplicate_edges} duplicated, {self.missing_edges} missing)"
                if self.duplicate_edges or self.missing_edges
                else ""
            )
        )
        if self.partition_ok is not None:
            lines.append(
                f"  difference partition: "
                f"{'ok' if self.partition_ok else 'BROKEN'} ({self.partition_size} elements)"
            )
        for fr in self.factors:
            parts = " + ".join(f"Orb[{sn}]({cn})" for cn, sn in fr.parts)
            length = fr.cycle_length if fr.cycle_length is not None else "mixed"
            lines.append(
                f"  {fr.label}: {parts}  "
                f"[{fr.cycles_in_factor} x C{length}, stab {fr.stabilizer_order}, "
                f"orbit {fr.orbit_length}]"
            )
        mismatches = [om for om in self.omega if om.match is False]
        if self.omega:
            if mismatches:
                lines.append(f"  annotated differences: {len(mismatches)} mismatch(es)")
                for om in mismatches:
                    if om.only_recomputed:
                        lines.append(
                            f"    {om.cycle_name} recomputed-only: "
                            + ", ".join(om.only_recomputed)
                        )
                    if om.only_printed:
                        lines.append(
                            f"    {om.cycle_name} annotated-only: "
                            + ", ".join(om.only_printed)
                        )
            else:
                checked = sum(1 for om in self.omega if om.match is not None)
                if checked:
                    lines.append(
                        f"  annotated differences: all {checked} annotated listings match"
                    )
        for note in self.notes:
            lines.append(f"  note: {note}")
        if self.failure:
            lines.append(f"  failure: {self.failure}")
        if self.witness:
            lines.append(f"  witness: {json.dumps(self.witness, sort_keys=True)}")
        return "\n".join(lines) + "\n"


def _edge_checksum(group: FiniteGroup, edges: Iterable[tuple[int, int]]) -> str:
    lines = sorted(f"{group.format(u)}|{group.format(v)}" for u, v in edges)
    return hashlib.sha256("\n".join(lines).encode()).hexdigest()


def verify_factorization(
    group: FiniteGroup,
    recipes: Sequence[FactorRecipe],
    expected: Optional[tuple[int, int, int]] = None,
) -> Certificate:
    """Expand every recipe's orbit and certify exact edge coverage of K_v - I.

    The check is independent of how the recipes were found: it never trusts
    difference-set reasoning, it just counts edges.
    """
    v = len(group)
    base = dict(
        group_id=group.id,
        v=v,
        ok=False,
        r=None,
        s=None,
        expected=expected,
        factors=(),
        edges_expected=v * (v - 2) // 2,
        edges_covered_once=0,
        duplicate_edges=0,
        missing_edges=0,
        edges_sha256=None,
    )

    reports: list[FactorReport] = []
    expanded: list[TwoFactor] = []
    try:
        for recipe in recipes:
            f = assemble_factor(group, recipe)
            stab = factor_stabilizer(f)
            orbit = factor_orbit(f)
            if len(orbit) * stab.order != len(group):
                raise GroupError("factor orbit-stabilizer mismatch")
            reports.append(
                FactorReport(
                    recipe.label,
                    tuple((p.cycle_name, p.subgroup_name) for p in recipe.parts),
                    f.cycle_length,
                    len(f.cycles),
                    stab.order,
                    len(orbit),
                )
            )
            expanded.extend(orbit)
    except RecipeError as err:
        return Certificate(
            **{**base, "factors": tuple(reports)},
            failure=str(err),
            witness=err.witness or None,
        )

    base["factors"] = tuple(reports)
    bad_length = [fr for fr in reports if fr.cycle_length not in (3, 4)]
    if bad_length:
        return Certificate(
            **base,
            failure=f"{bad_length[0].label}: factor cycle length must be uniformly 3 or 4",
            witness={"kind": "cycle-length", "factor": bad_length[0].label},
        )

    counts: Counter[tuple[int, int]] = Counter()
    for f in expanded:
        for c in f.cycles:
            counts.update(c.edges())
    target = cocktail_party_graph(group).edges

    duplicates = sorted(e for e, n in counts.items() if n > 1)
    foreign = sorted(e for e in counts if e not in target)
    missing = sorted(target - counts.keys())
    covered_once = sum(1 for e, n in counts.items() if n == 1 and e in target)
    base.update(
        edges_covered_once=covered_once,
        duplicate_edges=len(duplicates),
        missing_edges=len(missing),
    )

    def fmt_edge(e: tuple[int, int]) -> list[str]:
        return [group.format(e[0]), group.format(e[1])]

    if duplicates:
        e = duplicates[0]
        return Certificate(
            **base,
            failure="an edge is covered by more than one factor",
            witness={"kind": "duplicate-edge", "edge": fmt_edge(e), "count": counts[e]},
        )
    if foreign:
        e = foreign[0]
        return Certificate(
            **base,
            failure="a factor uses an edge outside K_v minus I",
            witness={"kind": "foreign-edge", "edge": fmt_edge(e)},
        )
    if missing:
        e = missing[0]
        return Certificate(
            **base,
            failure="an edge of K_v minus I is not covered",
            witness={"kind": "missing-edge", "edge": fmt_edge(e)},
        )

    r = sum(fr.orbit_length for fr in reports if fr.cycle_length == 3)
    s = sum(fr.orbit_length for fr in reports if fr.cycle_length == 4)
    base.update(r=r, s=s, edges_sha256=_edge_checksum(group, counts))

    if r + s != v // 2 - 1:
        return Certificate(
            **base,
            failure=f"factor count r+s={r + s} differs from v/2-1={v // 2 - 1}",
            witness={"kind": "factor-count", "r": r, "s": s},
        )
    if expected is not None and (v, r, s) != expected:
        return Certificate(
            **base,
            failure=f"computed (v,r,s)=({v},{r},{s}) differs from expected {expected}",
            witness={"kind": "expected-mismatch", "computed": [v, r, s]},
        )
    feasible, reason = hwp_feasibility(v, r, s)
    if not feasible:
        return Certificate(
            **base,
            failure=f"infeasible parameters: {reason}",
            witness={"kind": "infeasible", "reason": reason},
        )
    return Certificate(**{**base, "ok": True})
