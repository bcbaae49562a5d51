"""Group kernel: exact arithmetic, tables, subgroups, element notation."""

import pytest

from hwpreg.groups import (
    GROUP_IDS,
    ElementError,
    GroupError,
    build_group,
    octahedral_elements,
    quat_conj,
    quat_mul,
    quat_norm2_times4,
)

ORDERS = {"2O": 48, "Q24": 24, "SL23": 24}


def test_group_ids_and_orders():
    assert GROUP_IDS == ("2O", "Q24", "SL23")
    for gid in GROUP_IDS:
        assert len(build_group(gid)) == ORDERS[gid]


def test_build_group_is_cached():
    assert build_group("Q24") is build_group("Q24")


def test_build_group_rejects_unknown():
    with pytest.raises(GroupError):
        build_group("S5")


@pytest.mark.parametrize("gid", GROUP_IDS)
def test_associativity_exhaustive(gid):
    G = build_group(gid)
    n = len(G)
    t = G.table
    for a in range(n):
        ta = t[a]
        for b in range(n):
            tab = ta[b]
            tb = t[b]
            for c in range(n):
                assert t[tab][c] == ta[tb[c]]


@pytest.mark.parametrize("gid", GROUP_IDS)
def test_identity_and_inverses(gid):
    G = build_group(gid)
    e = G.identity
    for a in range(len(G)):
        assert G.mul(e, a) == a == G.mul(a, e)
        assert G.mul(a, G.inv(a)) == e == G.mul(G.inv(a), a)
        # the inverse is unique
        assert sum(1 for b in range(len(G)) if G.mul(a, b) == e) == 1


@pytest.mark.parametrize("gid", GROUP_IDS)
def test_unique_central_involution(gid):
    G = build_group(gid)
    invs = [x for x in range(len(G)) if x != G.identity and G.mul(x, x) == G.identity]
    assert invs == [G.unique_involution()]
    iota = invs[0]
    assert all(G.mul(iota, g) == G.mul(g, iota) for g in range(len(G)))


@pytest.mark.parametrize("gid", GROUP_IDS)
def test_parse_format_round_trip_every_element(gid):
    G = build_group(gid)
    for x in range(len(G)):
        assert G.parse(G.format(x)) == x
        assert G.parse(G.format(x, fancy=True)) == x


def test_octahedral_census():
    els = octahedral_elements()
    assert len(els) == len(set(els)) == 48
    for q in els:
        assert quat_norm2_times4(q) == (4, 0)  # unit quaternions
    G = build_group("2O")
    units = sum(1 for x in range(48) if "(" not in G.format(x))
    halves = sum(1 for x in range(48) if G.format(x).startswith(("1/2(", "-1/2(")))
    roots = sum(1 for x in range(48) if "r2" in G.format(x))
    assert (units, halves, roots) == (8, 16, 24)


def test_quaternion_identities():
    G = build_group("2O")
    i, j, k = G.parse("i"), G.parse("j"), G.parse("k")
    minus1 = G.parse("-1")
    assert G.mul(i, i) == G.mul(j, j) == G.mul(k, k) == minus1
    assert G.mul(i, j) == k and G.mul(j, k) == i and G.mul(k, i) == j
    assert G.mul(j, i) == G.parse("-k")
    w = G.parse("1/2(1+i+j+k)")
    assert G.element_order(w) == 6
    assert G.power(w, 3) == minus1
    assert G.element_order(G.parse("1/r2(1+i)")) == 8


def test_quat_conj_is_inverse_for_units():
    for q in octahedral_elements():
        prod = quat_mul(q, quat_conj(q))
        assert prod == ((2, 0), (0, 0), (0, 0), (0, 0))


def test_fancy_and_ascii_quaternion_notation():
    G = build_group("2O")
    x = G.parse("1/r2(j-k)")
    assert G.parse("1/√2(j-k)") == x
    assert G.format(x) == "1/r2(j-k)"
    assert G.format(x, fancy=True) == "1/√2(j-k)"


def test_dicyclic_relations():
    G = build_group("Q24")
    a, b = G.parse("a"), G.parse("b")
    assert G.element_order(a) == 12
    assert G.element_order(b) == 4
    assert G.mul(b, b) == G.parse("a6")
    # b^-1 a b = a^-1
    assert G.mul(G.mul(G.inv(b), a), b) == G.inv(a)
    assert G.format(G.mul(G.parse("a7"), G.parse("a6b"))) == "ab"


def test_sl23_arithmetic():
    G = build_group("SL23")
    x = G.parse("[[1,1],[0,1]]")
    assert G.element_order(x) == 3
    assert G.parse("[[2,0],[0,2]]") == G.unique_involution()
    y = G.parse("[[0,2],[1,0]]")
    assert G.element_order(y) == 4
    assert G.format(G.mul(x, y)) == "[[1,2],[1,0]]"  # plain matrix product


@pytest.mark.parametrize(
    "gid,text",
    [
        ("2O", "q"),
        ("2O", "1/3(1+i)"),
        ("2O", "1/2(1+i)"),  # not a unit quaternion
        ("2O", "1/2(1+i+j k)"),  # missing sign between terms
        ("2O", ""),
        ("Q24", "a12"),
        ("Q24", "a-1"),
        ("Q24", "ba"),
        ("Q24", "c"),
        ("SL23", "[[1,0],[0,2]]"),  # determinant 2
        ("SL23", "[[1,0],[0]]"),
        ("SL23", "[[3,0],[0,1]]"),  # entry out of range
    ],
)
def test_parse_rejects(gid, text):
    with pytest.raises(ElementError):
        build_group(gid).parse(text)


@pytest.mark.parametrize(
    "gid,gens,order",
    [
        ("2O", ["k", "1/r2(j-k)"], 16),
        ("2O", ["1/r2(j-k)", "1/2(-1-i+j+k)"], 12),
        ("Q24", ["b"], 4),
        ("Q24", ["a2"], 6),
        ("Q24", ["a2b", "a3"], 8),
        ("SL23", ["[[0,2],[1,0]]", "[[1,1],[1,2]]"], 8),
        ("SL23", ["[[0,1],[2,1]]"], 6),
    ],
)
def test_subgroup_closures(gid, gens, order):
    G = build_group(gid)
    sub = G.subgroup_closure([G.parse(t) for t in gens])
    assert sub.order == order
    assert len(G) % sub.order == 0
    mset = sub.member_set
    assert all(G.inv(x) in mset for x in mset)
    assert all(G.mul(x, y) in mset for x in mset for y in mset)


def test_whole_and_trivial_subgroups():
    G = build_group("Q24")
    assert G.whole_subgroup().order == 24
    assert G.trivial_subgroup().members == (G.identity,)
    assert G.identity in G.trivial_subgroup()
    assert G.parse("a5") not in G.trivial_subgroup()


def test_subgroup_closure_rejects_bad_index():
    G = build_group("Q24")
    with pytest.raises(GroupError):
        G.subgroup_closure([99])


def test_element_order_divides_group_order():
    for gid in GROUP_IDS:
        G = build_group(gid)
        for x in range(len(G)):
            assert len(G) % G.element_order(x) == 0
