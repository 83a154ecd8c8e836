from itertools import combinations

import pytest

from currentrep.errors import ClosureViolation, NotAPartition, NotParabolic, TooLarge
from currentrep.parabolic import (bases, borel, build_P, certificate_mask, certify,
                                  enumerate_parabolics, from_certificate, full_mask, is_closed,
                                  is_parabolic, lemma_violations, levi_split, mask_of, members,
                                  negate, parse_parabolic, standard_parabolic)
from currentrep.roots import build_root_system

from test_roots import weyl_group_order


def weyl_subgroup_order(rs, simple_positions):
    """Order of the group generated by the given simple reflections."""
    n = len(rs)
    gens = [tuple(rs.index[rs.reflect(v, rs.roots[rs.simple(i)])] for v in rs.roots)
            for i in simple_positions]
    seen = {tuple(range(n))}
    frontier = list(seen)
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


def parabolic_count_oracle(rs):
    # each parabolic is conjugate to exactly one standard one; the orbit of the
    # standard parabolic for T has |W| / |W_T| elements
    w = weyl_group_order(rs)
    return sum(w // weyl_subgroup_order(rs, T)
               for k in range(rs.rank + 1) for T in combinations(range(rs.rank), k))


@pytest.mark.parametrize("key,count", [(("A", 1), 3), (("A", 2), 13), (("B", 2), 17),
                                       (("G", 2), 25), (("A", 3), 75)])
def test_enumeration_counts(key, count):
    rs = build_root_system(*key)
    ps = enumerate_parabolics(rs)
    assert len(ps) == count == parabolic_count_oracle(rs)
    assert len({P.mask for P in ps}) == count
    for P in ps:
        assert is_parabolic(rs, P.mask)
        assert certificate_mask(rs, P.base, P.T) == P.mask
        assert from_certificate(rs, P.base, P.T).mask == P.mask


def test_a1_members():
    rs = build_root_system("A", 1)
    got = sorted(tuple(sorted(rs.roots[r] for r in P.roots)) for P in enumerate_parabolics(rs))
    assert got == [((-1,),), ((-1,), (1,)), ((1,),)]


def test_number_of_bases():
    assert len(bases(build_root_system("A", 2))) == 6
    assert len(bases(build_root_system("G", 2))) == 12


def test_too_large():
    with pytest.raises(TooLarge):
        enumerate_parabolics(build_root_system("A", 4))


def test_closure_examples():
    rs = build_root_system("A", 2)
    assert is_closed(rs, mask_of(rs, rs.positive))
    assert is_closed(build_root_system("A", 1), mask_of(build_root_system("A", 1), [(1,)]))
    assert not is_closed(rs, mask_of(rs, [(1, 0), (0, 1)]))
    assert is_parabolic(rs, full_mask(rs))
    assert is_parabolic(rs, mask_of(rs, rs.positive))
    assert not is_parabolic(rs, mask_of(rs, [(1, 0), (-1, 0)]))


def test_levi_split_examples():
    rs = build_root_system("A", 2)
    P = certify(rs, full_mask(rs))
    assert levi_split(P) == (full_mask(rs), 0, 0)
    rs1 = build_root_system("A", 1)
    levi, up, down = levi_split(certify(rs1, mask_of(rs1, [(1,)])))
    assert (levi, up, down) == (0, mask_of(rs1, [(1,)]), mask_of(rs1, [(-1,)]))
    P = certify(rs, mask_of(rs, list(rs.positive) + [(-1, 0)]))
    levi, up, down = levi_split(P)
    assert levi == mask_of(rs, [(1, 0), (-1, 0)])
    assert up == mask_of(rs, [(0, 1), (1, 1)])
    assert down == mask_of(rs, [(0, -1), (-1, -1)])


def test_height_examples():
    rs = build_root_system("A", 2)
    P = certify(rs, mask_of(rs, list(rs.positive) + [(-1, 0)]))
    eps = [b for b in P.base if b not in P.T]
    for e in eps:
        assert P.height(rs.roots[e]) == 1
    for d in P.T:
        assert P.height(rs.roots[d]) == 0
    assert P.height((-1, -2)) == -2


@pytest.mark.parametrize("key", [("A", 1), ("A", 2), ("B", 2), ("G", 2), ("A", 3)])
def test_strata_properties(key):
    rs = build_root_system(*key)
    for P in enumerate_parabolics(rs):
        levi, up, down = levi_split(P)
        assert negate(rs, levi) == levi and is_closed(rs, levi)
        assert negate(rs, up) == down
        assert all(P.height(rs.roots[r]) >= 1 for r in members(up))
        assert all(P.height(rs.roots[r]) == 0 for r in members(levi))
        assert all(P.height(rs.roots[r]) <= -1 for r in members(down))


def test_build_P_examples():
    rs = build_root_system("A", 2)
    full = full_mask(rs)
    assert build_P(rs, full, 0).mask == full
    assert build_P(rs, 0, full).mask == full
    pos = mask_of(rs, rs.positive)
    assert build_P(rs, pos, full & ~pos).mask == pos
    with pytest.raises(NotAPartition):
        build_P(rs, pos, pos)
    bad_f = mask_of(rs, [(1, 0), (-1, 0), (0, 1)])  # alpha1 + alpha2 missing
    with pytest.raises(ClosureViolation) as err:
        build_P(rs, bad_f, full & ~bad_f)
    a, b = err.value.witness
    same = bad_f if a in members(bad_f) else full & ~bad_f
    assert b in members(same) and rs.sums[a, b] not in members(same)


def test_partitions_passing_lemma_give_parabolics():
    """Every split of the A2 roots that satisfies the closure conclusions yields a parabolic."""
    rs = build_root_system("A", 2)
    full = full_mask(rs)
    good = 0
    for phi_f in range(1 << len(rs)):
        phi_i = full & ~phi_f
        if lemma_violations(rs, phi_f, phi_i):
            with pytest.raises((ClosureViolation, NotParabolic)):
                build_P(rs, phi_f, phi_i)
            continue
        good += 1
        assert is_parabolic(rs, build_P(rs, phi_f, phi_i).mask)
    assert good > 2


def test_parse_parabolic():
    rs = build_root_system("A", 2)
    assert parse_parabolic(rs, "borel") == borel(rs)
    assert parse_parabolic(rs, "full").mask == full_mask(rs)
    P = parse_parabolic(rs, "std:0")
    assert P == standard_parabolic(rs, [0])
    assert levi_split(P)[0] == mask_of(rs, [(1, 0), (-1, 0)])
    for bad in ("std:5", "weird"):
        with pytest.raises(ValueError):
            parse_parabolic(rs, bad)
