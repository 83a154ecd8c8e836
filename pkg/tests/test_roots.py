from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from currentrep.errors import StructureConstantsUnavailable, UnsupportedType
from currentrep.roots import (EXPECTED_COUNTS, SUPPORTED, basis_keys, bracket, build_root_system,
                              chevalley_bracket, h_of_root, parse_type, root_string)

WEYL_ORDERS = {("A", 1): 2, ("A", 2): 6, ("A", 3): 24, ("A", 4): 120, ("B", 2): 8, ("G", 2): 12}


def weyl_group_order(rs):
    """Size of the group generated by simple reflections, acting on the roots."""
    n = len(rs)
    gens = []
    for i in range(rs.rank):
        a = rs.roots[rs.simple(i)]
        gens.append(tuple(rs.index[rs.reflect(v, a)] for v in rs.roots))
    ident = tuple(range(n))
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for g in frontier:
            for s in gens:
                h = tuple(s[g[k]] for k in range(n))
                if h not in seen:
                    seen.add(h)
                    nxt.append(h)
        frontier = nxt
    return len(seen)


@pytest.mark.parametrize("key", SUPPORTED)
def test_root_counts_and_weyl_orders(key):
    rs = build_root_system(*key)
    assert len(rs) == EXPECTED_COUNTS[key]
    assert weyl_group_order(rs) == WEYL_ORDERS[key]
    assert len(rs.positive) == len(rs.negative) == len(rs) // 2


def test_examples():
    assert len(build_root_system("A", 1)) == 2
    assert len(build_root_system("A", 2)) == 6
    assert len(build_root_system("G", 2)) == 12


@pytest.mark.parametrize("key,cartan", [
    (("A", 2), [[2, -1], [-1, 2]]),
    (("B", 2), [[2, -2], [-1, 2]]),
    (("G", 2), [[2, -1], [-3, 2]]),
])
def test_cartan_matrices(key, cartan):
    rs = build_root_system(*key)
    assert [[int(x) for x in row] for row in rs.cartan] == cartan


@pytest.mark.parametrize("key", SUPPORTED)
def test_canonical_order_and_negation(key):
    rs = build_root_system(*key)
    hts = [sum(v) for v in rs.roots]
    assert hts == sorted(hts)
    for r, v in enumerate(rs.roots):
        assert rs.roots[rs.neg[r]] == tuple(-x for x in v)
        # <alpha, alpha^vee> = 2
        assert sum(c * l for c, l in zip(rs.coroot(r), rs.labels(v))) == 2


@pytest.mark.parametrize("key", SUPPORTED)
def test_labels_roundtrip(key):
    rs = build_root_system(*key)
    for v in rs.roots:
        assert tuple(rs.to_root_coords(rs.labels(v))) == tuple(Fraction(x) for x in v)


def test_unsupported():
    with pytest.raises(UnsupportedType):
        parse_type("E8")
    with pytest.raises(UnsupportedType):
        build_root_system("C", 3)
    with pytest.raises(ValueError):
        parse_type("A")
    with pytest.raises(StructureConstantsUnavailable):
        rs = build_root_system("B", 2)
        chevalley_bracket(rs, ("x", 0), ("x", 1))


def test_sl2_relations():
    rs = build_root_system("A", 1)
    e, f = ("x", rs.index[(1,)]), ("x", rs.index[(-1,)])
    assert chevalley_bracket(rs, e, f) == {("h", 0): 1}
    assert chevalley_bracket(rs, ("h", 0), e) == {e: 2}
    assert chevalley_bracket(rs, ("h", 0), f) == {f: -2}


def test_sl3_simple_bracket_sign():
    rs = build_root_system("A", 2)
    a1, a2, a12 = (("x", rs.index[v]) for v in ((1, 0), (0, 1), (1, 1)))
    assert chevalley_bracket(rs, a1, a2) == {a12: 1}


@pytest.mark.parametrize("n", [1, 2, 3])
def test_antisymmetry_and_chevalley_constants(n):
    rs = build_root_system("A", n)
    keys = basis_keys(rs)
    for u, v in product(keys, repeat=2):
        assert chevalley_bracket(rs, u, v) == {k: -c for k, c in chevalley_bracket(rs, v, u).items()}
    # N_{alpha,beta} = +-(p+1) with p the largest k such that beta - k alpha is a root
    for a in range(len(rs)):
        for b in range(len(rs)):
            if (a, b) not in rs.sums:
                continue
            p = -min(root_string(rs, b, a))
            got = chevalley_bracket(rs, ("x", a), ("x", b))
            assert list(got) == [("x", rs.sums[a, b])]
            assert abs(next(iter(got.values()))) == p + 1


@pytest.mark.parametrize("n", [1, 2, 3])
def test_h_alpha(n):
    rs = build_root_system("A", n)
    for r in range(len(rs)):
        assert chevalley_bracket(rs, ("x", r), ("x", rs.neg[r])) == h_of_root(rs, r)
        assert bracket(rs, h_of_root(rs, r), {("x", r): 1}) == {("x", r): 2}


KEYS4 = basis_keys(build_root_system("A", 3))


@settings(max_examples=200, deadline=None)
@given(st.sampled_from(KEYS4), st.sampled_from(KEYS4), st.sampled_from(KEYS4))
def test_jacobi_sl4(a, b, c):
    rs = build_root_system("A", 3)
    A, B, C = {a: 1}, {b: 1}, {c: 1}
    acc = {}
    for t in (bracket(rs, A, bracket(rs, B, C)), bracket(rs, B, bracket(rs, C, A)),
              bracket(rs, C, bracket(rs, A, B))):
        for k, v in t.items():
            acc[k] = acc.get(k, 0) + v
    assert not any(acc.values())
