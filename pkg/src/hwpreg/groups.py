"""Exact constructions of the three groups behind the bundled solutions.

Supported groups, by id:

* ``2O``   the binary octahedral group, 48 unit quaternions with
           coordinates in {0, +-1, +-1/2, +-1/sqrt(2)};
* ``Q24``  the dicyclic group of order 24 (a^12 = 1, b^2 = a^6,
           b^-1 a b = a^-1), elements in normal form a^i b^j;
* ``SL23`` the 2x2 matrices over Z_3 with determinant 1 (order 24).

Each group is enumerated once in a fixed canonical order and its full
multiplication table is built up front; every later operation works on
element indices.  Quaternion coordinates are kept exact as pairs (p, q)
denoting (p + q*sqrt(2))/2, so equality tests are sound.

All three groups have exactly one involution, which is what makes them
usable as regular automorphism groups of a cocktail party graph.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import cached_property, lru_cache
from itertools import combinations, product
from typing import Callable, Iterable, Sequence

GROUP_IDS = ("2O", "Q24", "SL23")

_UNIT_NAMES = ("1", "i", "j", "k")


class GroupError(Exception):
    """Structural defect while building or using a group."""


class ElementError(ValueError):
    """Text that is malformed or does not denote a group element."""


# ---------------------------------------------------------------------------
# binary octahedral group: exact arithmetic over Q(sqrt 2)

Coord = tuple[int, int]  # (p, q) encodes the real number (p + q*sqrt(2)) / 2
Quat = tuple[Coord, Coord, Coord, Coord]

QUAT_ONE: Quat = ((2, 0), (0, 0), (0, 0), (0, 0))


def _cprod(x: Coord, y: Coord) -> tuple[int, int]:
    # product of two coordinates, landing over denominator 4
    p, q = x
    r, s = y
    return p * r + 2 * q * s, p * s + q * r


def _csum4(terms: Sequence[tuple[int, int]], signs: Sequence[int]) -> Coord:
    # combine denominator-4 terms and reduce back to denominator 2;
    # reduction must be exact for products of group elements
    p4 = sum(sign * t[0] for t, sign in zip(terms, signs))
    q4 = sum(sign * t[1] for t, sign in zip(terms, signs))
    if p4 % 2 or q4 % 2:
        raise GroupError("quaternion product left the group lattice")
    return p4 // 2, q4 // 2


def quat_mul(x: Quat, y: Quat) -> Quat:
    """Hamilton product of two exact quaternions (i*j = k, j*k = i, k*i = j)."""
    a1, b1, c1, d1 = x
    a2, b2, c2, d2 = y
    return (
        _csum4((_cprod(a1, a2), _cprod(b1, b2), _cprod(c1, c2), _cprod(d1, d2)), (1, -1, -1, -1)),
        _csum4((_cprod(a1, b2), _cprod(b1, a2), _cprod(c1, d2), _cprod(d1, c2)), (1, 1, 1, -1)),
        _csum4((_cprod(a1, c2), _cprod(b1, d2), _cprod(c1, a2), _cprod(d1, b2)), (1, -1, 1, 1)),
        _csum4((_cprod(a1, d2), _cprod(b1, c2), _cprod(c1, b2), _cprod(d1, a2)), (1, 1, -1, 1)),
    )


def quat_conj(x: Quat) -> Quat:
    """Conjugate; equals the inverse for unit quaternions."""
    a, b, c, d = x
    return a, (-b[0], -b[1]), (-c[0], -c[1]), (-d[0], -d[1])


def quat_norm2_times4(x: Quat) -> tuple[int, int]:
    """4 * |x|^2 as (rational, sqrt2-multiple) numerators."""
    p4 = sum(p * p + 2 * q * q for p, q in x)
    q4 = sum(2 * p * q for p, q in x)
    return p4, q4


def octahedral_elements() -> list[Quat]:
    """The 48 elements: 8 of unit type, 16 half-integer, 24 sqrt2 type."""
    elems: list[Quat] = []
    zero: Coord = (0, 0)
    for pos in range(4):
        for sign in (2, -2):
            coords = [zero] * 4
            coords[pos] = (sign, 0)
            elems.append(tuple(coords))  # type: ignore[arg-type]
    for signs in product((1, -1), repeat=4):
        elems.append(tuple((s, 0) for s in signs))  # type: ignore[arg-type]
    for x, y in combinations(range(4), 2):
        for sx in (1, -1):
            for sy in (1, -1):
                coords = [zero] * 4
                coords[x] = (0, sx)
                coords[y] = (0, sy)
                elems.append(tuple(coords))  # type: ignore[arg-type]
    if len(set(elems)) != 48:
        raise GroupError("binary octahedral enumeration is not 48 distinct elements")
    for q in elems:
        if quat_norm2_times4(q) != (4, 0):
            raise GroupError(f"non-unit quaternion in enumeration: {q!r}")
    return sorted(elems)


_QUAT_OUTER = re.compile(
    r"^\s*([+-]?)\s*(?:(1/2|1/√2|1/r2)\s*)?(?:\(([^()]+)\)|(1|i|j|k))\s*$"
)
_QUAT_TERM = re.compile(r"\s*([+-]?)\s*(1|i|j|k)")


def parse_quat(text: str) -> Quat:
    """Parse texts like ``k``, ``-1``, ``1/2(-1-i+j+k)``, ``-1/r2(1+j)``.

    ``1/r2`` is the ASCII spelling of ``1/√2``.  A leading sign negates the
    whole expression; inside parentheses every term after the first must be
    signed.
    """
    m = _QUAT_OUTER.match(text)
    if not m:
        raise ElementError(f"malformed quaternion text: {text!r}")
    lead, prefix, inner, bare = m.group(1), m.group(2), m.group(3), m.group(4)
    body = inner if inner is not None else bare
    coeffs = [0, 0, 0, 0]
    pos = 0
    first = True
    while pos < len(body):
        tm = _QUAT_TERM.match(body, pos)
        if not tm:
            raise ElementError(f"malformed quaternion term in {text!r}")
        sign_txt, unit = tm.group(1), tm.group(2)
        if sign_txt == "" and not first:
            raise ElementError(f"missing sign between terms in {text!r}")
        sign = -1 if sign_txt == "-" else 1
        coeffs[_UNIT_NAMES.index(unit)] += sign
        pos = tm.end()
        first = False
    if lead == "-":
        coeffs = [-c for c in coeffs]
    if prefix is None:
        quat = tuple((2 * c, 0) for c in coeffs)
    elif prefix == "1/2":
        quat = tuple((c, 0) for c in coeffs)
    else:
        quat = tuple((0, c) for c in coeffs)
    return quat  # type: ignore[return-value]


def format_quat(q: Quat, fancy: bool = False) -> str:
    """Render an element in the notation accepted by :func:`parse_quat`."""
    ps = [p for p, _ in q]
    qs = [s for _, s in q]
    if all(s == 0 for s in qs):
        nonzero = [(t, p) for t, p in enumerate(ps) if p]
        if len(nonzero) == 1 and abs(nonzero[0][1]) == 2:
            t, p = nonzero[0]
            return ("-" if p < 0 else "") + _UNIT_NAMES[t]
        return "1/2(" + _signed_sum(ps) + ")"
    root = "1/√2" if fancy else "1/r2"
    return root + "(" + _signed_sum(qs) + ")"


def _signed_sum(coeffs: Sequence[int]) -> str:
    parts: list[str] = []
    for t, c in enumerate(coeffs):
        if c == 0:
            continue
        if abs(c) != 1:
            raise GroupError(f"coordinate out of range in formatter: {coeffs!r}")
        sign = "-" if c < 0 else ("+" if parts else "")
        parts.append(sign + _UNIT_NAMES[t])
    return "".join(parts)


# ---------------------------------------------------------------------------
# dicyclic group of order 24, normal form a^i b^j

Dic = tuple[int, int]  # (i, j) encodes a^i b^j, 0 <= i < 12, j in {0, 1}


def dicyclic_elements() -> list[Dic]:
    return [(i, j) for i in range(12) for j in (0, 1)]


def dicyclic_mul(x: Dic, y: Dic) -> Dic:
    # rewriting rules: b a^m = a^-m b and b^2 = a^6
    i, s = x
    m, t = y
    if s == 0:
        return (i + m) % 12, t
    if t == 0:
        return (i - m) % 12, 1
    return (i - m + 6) % 12, 0


_DIC_RE = re.compile(r"^\s*(?:(1)|(a(\d{1,2})?)?(b)?)\s*$")


def parse_dicyclic(text: str) -> Dic:
    m = _DIC_RE.match(text)
    if not m or (m.group(1) is None and m.group(2) is None and m.group(4) is None):
        raise ElementError(f"malformed dicyclic text: {text!r}")
    if m.group(1):
        return 0, 0
    exp = 0
    if m.group(2):
        exp = int(m.group(3)) if m.group(3) is not None else 1
        if not 0 <= exp <= 11:
            raise ElementError(f"exponent out of range in {text!r}")
    return exp, 1 if m.group(4) else 0


def format_dicyclic(x: Dic, fancy: bool = False) -> str:
    i, j = x
    if i == 0:
        return "b" if j else "1"
    a = "a" if i == 1 else f"a{i}"
    return a + ("b" if j else "")


# ---------------------------------------------------------------------------
# SL(2, 3): 2x2 matrices over Z_3 with determinant 1

Mat = tuple[int, int, int, int]  # row-major (a, b, c, d)


def sl23_elements() -> list[Mat]:
    elems = [
        m
        for m in product(range(3), repeat=4)
        if (m[0] * m[3] - m[1] * m[2]) % 3 == 1
    ]
    return sorted(elems)  # type: ignore[return-value]


def sl23_mul(x: Mat, y: Mat) -> Mat:
    a, b, c, d = x
    e, f, g, h = y
    return (
        (a * e + b * g) % 3,
        (a * f + b * h) % 3,
        (c * e + d * g) % 3,
        (c * f + d * h) % 3,
    )


_MAT_RE = re.compile(
    r"^\s*\[\s*\[\s*(\d)\s*,\s*(\d)\s*\]\s*,\s*\[\s*(\d)\s*,\s*(\d)\s*\]\s*\]\s*$"
)


def parse_sl23(text: str) -> Mat:
    m = _MAT_RE.match(text)
    if not m:
        raise ElementError(f"malformed matrix text: {text!r}")
    entries = tuple(int(g) for g in m.groups())
    if any(e > 2 for e in entries):
        raise ElementError(f"matrix entries must be residues 0..2: {text!r}")
    return entries  # type: ignore[return-value]


def format_sl23(x: Mat, fancy: bool = False) -> str:
    a, b, c, d = x
    return f"[[{a},{b}],[{c},{d}]]"


# ---------------------------------------------------------------------------
# the uniform table-backed group interface


@dataclass(frozen=True)
class Subgroup:
    """A verified subgroup, stored as a sorted tuple of element indices."""

    group: "FiniteGroup"
    members: tuple[int, ...]
    generators: tuple[int, ...]

    @cached_property
    def member_set(self) -> frozenset[int]:
        return frozenset(self.members)

    @property
    def order(self) -> int:
        return len(self.members)

    def __contains__(self, idx: int) -> bool:
        return idx in self.member_set

    def __repr__(self) -> str:
        gens = ", ".join(self.group.format(g) for g in self.generators)
        return f"Subgroup(<{gens}>, order {self.order})"


class FiniteGroup:
    """A small finite group with a precomputed multiplication table.

    Elements are referred to by index into :attr:`elements`; ``mul`` and
    ``inv`` are table lookups.  Instances are immutable after construction
    and safe to share; use :func:`build_group` to obtain the cached
    instance for a group id.
    """

    def __init__(
        self,
        gid: str,
        elements: Sequence[object],
        mul_func: Callable,
        parser: Callable[[str], object],
        formatter: Callable,
    ) -> None:
        self.id = gid
        self.elements = tuple(elements)
        self._index = {e: i for i, e in enumerate(self.elements)}
        if len(self._index) != len(self.elements):
            raise GroupError(f"{gid}: duplicate elements in enumeration")
        self._parser = parser
        self._formatter = formatter

        n = len(self.elements)
        table: list[tuple[int, ...]] = []
        for a in self.elements:
            row = []
            for b in self.elements:
                prod = mul_func(a, b)
                idx = self._index.get(prod)
                if idx is None:
                    raise GroupError(f"{gid}: product {prod!r} escapes the element set")
                row.append(idx)
            table.append(tuple(row))
        self.table: tuple[tuple[int, ...], ...] = tuple(table)

        identities = [
            e for e in range(n)
            if all(self.table[e][x] == x and self.table[x][e] == x for x in range(n))
        ]
        if len(identities) != 1:
            raise GroupError(f"{gid}: expected a unique identity, found {len(identities)}")
        self.identity: int = identities[0]

        inv = []
        for a in range(n):
            hits = [
                b for b in range(n)
                if self.table[a][b] == self.identity and self.table[b][a] == self.identity
            ]
            if len(hits) != 1:
                raise GroupError(f"{gid}: element {a} lacks a unique two-sided inverse")
            inv.append(hits[0])
        self.inv_table: tuple[int, ...] = tuple(inv)

        involutions = [
            x for x in range(n) if x != self.identity and self.table[x][x] == self.identity
        ]
        if len(involutions) != 1:
            raise GroupError(
                f"{gid}: needs exactly one involution, found {len(involutions)}"
            )
        self._involution: int = involutions[0]

    # -- basic operations --------------------------------------------------

    def __len__(self) -> int:
        return len(self.elements)

    def __repr__(self) -> str:
        return f"FiniteGroup({self.id}, order {len(self)})"

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def inv(self, a: int) -> int:
        return self.inv_table[a]

    def power(self, a: int, n: int) -> int:
        if n < 0:
            return self.power(self.inv_table[a], -n)
        acc = self.identity
        for _ in range(n):
            acc = self.table[acc][a]
        return acc

    def element_order(self, a: int) -> int:
        acc = a
        n = 1
        while acc != self.identity:
            acc = self.table[acc][a]
            n += 1
        return n

    def unique_involution(self) -> int:
        """The one element x != 1 with x*x = 1 (verified at construction)."""
        return self._involution

    # -- subgroups ---------------------------------------------------------

    def subgroup_closure(self, generators: Iterable[int]) -> Subgroup:
        """Smallest subgroup containing the generators, with a Lagrange check."""
        gens = tuple(dict.fromkeys(generators))
        for g in gens:
            if not 0 <= g < len(self):
                raise GroupError(f"{self.id}: generator index {g} out of range")
        members = {self.identity}
        frontier = [self.identity]
        while frontier:
            x = frontier.pop()
            for g in gens:
                y = self.table[x][g]
                if y not in members:
                    members.add(y)
                    frontier.append(y)
        for x in members:
            if self.inv_table[x] not in members:
                raise GroupError(f"{self.id}: closure not inverse-closed at {x}")
        if len(self) % len(members) != 0:
            raise GroupError(
                f"{self.id}: subgroup order {len(members)} violates Lagrange"
            )
        return Subgroup(self, tuple(sorted(members)), gens)

    def whole_subgroup(self) -> Subgroup:
        return Subgroup(self, tuple(range(len(self))), (self.identity,))

    def trivial_subgroup(self) -> Subgroup:
        return Subgroup(self, (self.identity,), ())

    # -- text form ---------------------------------------------------------

    def parse(self, text: str) -> int:
        """Index of the element denoted by ``text``; raises ElementError."""
        value = self._parser(text)
        idx = self._index.get(value)
        if idx is None:
            raise ElementError(f"{text!r} is not an element of {self.id}")
        return idx

    def format(self, idx: int, fancy: bool = False) -> str:
        return self._formatter(self.elements[idx], fancy)

    def format_all(self, indices: Iterable[int], fancy: bool = False) -> list[str]:
        return [self.format(i, fancy) for i in indices]


@lru_cache(maxsize=None)
def build_group(gid: str) -> FiniteGroup:
    """Build (once) and return the group for ``gid`` in GROUP_IDS."""
    if gid == "2O":
        return FiniteGroup(gid, octahedral_elements(), quat_mul, parse_quat, format_quat)
    if gid == "Q24":
        return FiniteGroup(gid, dicyclic_elements(), dicyclic_mul, parse_dicyclic, format_dicyclic)
    if gid == "SL23":
        return FiniteGroup(gid, sl23_elements(), sl23_mul, parse_sl23, format_sl23)
    raise GroupError(f"unknown group id {gid!r}; expected one of {GROUP_IDS}")
