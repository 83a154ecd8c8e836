import random
from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from currentrep.coeff import character_at, make_points_algebra, make_truncated
from currentrep.errors import DegenerateLeviModule, HeightMismatch, TooLarge
from currentrep.evalmod import EvaluationFactor, build_factors, tensor_eval, weight_mult
from currentrep.induction import (induced_module, levi_highest_weight_module, n_plus_invariants_dim,
                                  raising_words, simple_quotient_mult,
                                  simple_quotient_realization, straighten_apply, torus_module,
                                  verma_weight_basis)
from currentrep.linalg import rank
from currentrep.parabolic import borel, certify, enumerate_parabolics, levi_split, mask_of
from currentrep.reps import LeviModuleSpec, dense_sl2, freudenthal_diagram, levi_module
from currentrep.roots import build_root_system

A1 = build_root_system("A", 1)
A2 = build_root_system("A", 2)
Q = make_points_algebra([0])
S01 = make_points_algebra([0, 1])


def borel_module(rs, S, weights):
    return induced_module(borel(rs), S, torus_module(rs, S, weights))


def sl2_two_point(m=1, n=1):
    return borel_module(A1, S01, [((m,), 0), ((n,), 1)])


def test_verma_basis_examples():
    IM = sl2_two_point()
    assert verma_weight_basis(IM, (0,)) == [((), 0)]
    low = IM.verma_weight_basis((-1,))
    assert len(low) == 2
    assert {m[0][0][1] for m in low} == {0, 1}
    assert len(IM.verma_weight_basis((-2,))) == 3
    assert IM.verma_weight_basis((1,)) == []


def test_raising_word_examples():
    IM = sl2_two_point()
    assert raising_words(IM, (0,)) == [()]
    assert len(IM.raising_words((-1,))) == 2
    assert len(IM.raising_words((-2,))) == 4
    with pytest.raises(HeightMismatch):
        IM.raising_words((1,))


def test_straighten_examples():
    IM = borel_module(A1, Q, [((5,), 0)])
    assert straighten_apply(IM, (), ((), 0)) == (1,)
    e, f = (("x", 1), 0), (("x", 0), 0)
    assert IM.straighten_apply((e,), ((f,), 0)) == (5,)
    IM = sl2_two_point()
    et, ft = (("x", 1), 1), (("x", 0), 1)
    assert IM.straighten_apply((et,), ((ft,), 0)) == (1,)
    with pytest.raises(HeightMismatch):
        IM.straighten_apply((et, et), ((ft,), 0))


def test_simple_quotient_examples():
    IM = sl2_two_point()
    assert [simple_quotient_mult(IM, (-k,)) for k in range(4)] == [1, 2, 1, 0]
    # matrix shapes 2x2, 3x4, 4x8
    for k, shape in ((1, (2, 2)), (2, (3, 4)), (3, (4, 8))):
        assert (IM.dim_verma((-k,)), len(IM.raising_words((-k,)))) == shape
    IM = borel_module(A1, make_truncated(2), [((1,), 0)])
    assert IM.simple_quotient_mult((-1,)) == 1
    with pytest.raises(HeightMismatch):
        IM.simple_quotient_mult((1,))


def test_n_plus_examples():
    IM = sl2_two_point()
    assert n_plus_invariants_dim(IM, (-1,)) == 0
    assert IM.n_plus_invariants_dim((-3,)) == 0
    IM = borel_module(A2, Q, [((1, 0), 0)])
    assert IM.n_plus_invariants_dim((-1, -1)) == 0
    with pytest.raises(HeightMismatch):
        IM.n_plus_invariants_dim((0, 0))


def test_singular_vectors_detected():
    # lambda = (-1, 0): f_2 v is singular, f_1 v is not
    IM = borel_module(A2, Q, [((-1, 0), 0)])
    assert IM.simple_quotient_mult((-1, 0)) == 1
    assert IM.simple_quotient_mult((0, -1)) == 0
    assert IM.simple_quotient_mult((-1, -1)) == 1


@pytest.mark.parametrize("m,n", list(product(range(3), repeat=2)))
def test_two_point_matches_tensor(m, n):
    IM = sl2_two_point(m, n)
    T = tensor_eval(build_factors(A1, [("hw", (m,), 0), ("hw", (n,), 1)])[0])
    for k in range(6):
        assert IM.simple_quotient_mult((-k,)) == weight_mult(T, (-k,))


@pytest.mark.parametrize("lam", [(1, 0), (0, 1), (1, 1)])
def test_sl3_two_point_matches_tensor(lam):
    IM = borel_module(A2, S01, [(lam, 0), ((1, 0), 1)])
    T = tensor_eval(build_factors(A2, [("hw", lam, 0), ("hw", (1, 0), 1)])[0])
    for a, b in product(range(4), repeat=2):
        if a + b <= 4:
            assert IM.simple_quotient_mult((-a, -b)) == weight_mult(T, (-a, -b))


def test_takiff_collapse_generic_heights():
    for order, lam in product((2, 3), (1, 2)):
        IM = borel_module(A1, make_truncated(order), [((lam,), 0)])
        ref = borel_module(A1, Q, [((lam,), 0)])
        for k in range(5):
            assert IM.simple_quotient_mult((-k,)) == ref.simple_quotient_mult((-k,))


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 3), st.integers(0, 3), st.integers(0, 5))
def test_monotone_sandwich(m, n, k):
    IM = sl2_two_point(m, n)
    assert 0 <= IM.simple_quotient_mult((-k,)) <= IM.dim_verma((-k,))


@pytest.mark.parametrize("gamma", [(-1, -1), (-2, -1), (-2, -2), (-3, -2)])
def test_word_order_independence(gamma):
    IM = borel_module(A2, Q, [((1, 2), 0)])
    words = IM.raising_words(gamma)
    base = IM.simple_quotient_mult(gamma)
    assert IM.simple_quotient_mult(gamma, words) == base
    rng = random.Random(len(words))
    for _ in range(5):
        shuffled = list(words) + rng.sample(words, min(3, len(words)))
        rng.shuffle(shuffled)
        rows = IM.pairing_rows(gamma, shuffled)
        cols = sorted({c for r in rows for c in r})
        rng.shuffle(cols)
        perm = {c: i for i, c in enumerate(cols)}
        assert rank([{perm[c]: v for c, v in r.items()} for r in rows]) == base


def test_rejects_bad_levi_modules():
    P = borel(A2)
    S = make_points_algebra([0])
    finite = torus_module(A2, S, [((1, 0), 0)])
    with pytest.raises(ValueError):
        induced_module(P, S01, finite)
    std = certify(A2, mask_of(A2, list(A2.positive) + [(-1, 0)]))
    # W is only an h-module: it does not realize the Levi root vectors
    with pytest.raises(ValueError):
        induced_module(std, S, finite)
    D = dense_sl2(0, 1, 3)
    T = tensor_eval([EvaluationFactor(D, character_at(S, 0))])
    with pytest.raises(DegenerateLeviModule):
        induced_module(certify(A1, mask_of(A1, [(1,), (-1,)])), S, T)


def test_offsets_of_nonzero_height_rejected():
    # an sl2 module used over the Borel has weights in different height levels
    S = make_points_algebra([0])
    T = tensor_eval(build_factors(A1, [("hw", (1,), 0)], S=S)[0])
    with pytest.raises(DegenerateLeviModule):
        induced_module(borel(A1), S, T)


def realization_brackets(IM, R):
    """Matrices of the realization satisfy [z, w] = zw - wz for all letter pairs."""
    letters = sorted(R.action)
    n = len(R.offsets)

    def apply(z, vec):
        out = {}
        for j, c in vec.items():
            for i, x in R.action[z].get(j, {}).items():
                out[i] = out.get(i, 0) + c * x
        return out

    for z, w in product(letters, repeat=2):
        br = IM.bracket(z, w)
        for j in range(n):
            a = apply(z, apply(w, {j: 1}))
            b = apply(w, apply(z, {j: 1}))
            lhs = {i: a.get(i, 0) - b.get(i, 0) for i in set(a) | set(b)}
            rhs = {}
            for y, c in br.items():
                for i, x in apply(y, {j: 1}).items():
                    rhs[i] = rhs.get(i, 0) + c * x
            assert {i: x for i, x in lhs.items() if x} == {i: x for i, x in rhs.items() if x}


def test_realization_two_point():
    IM = sl2_two_point(1, 2)
    R = simple_quotient_realization(IM, 10)
    assert len(R.offsets) == 6
    for g, d in R.dims.items():
        assert d == IM.simple_quotient_mult(g)
    realization_brackets(IM, R)


def test_realization_takiff_and_depth_cap():
    IM = borel_module(A1, make_truncated(2), [((2,), 0)])
    R = simple_quotient_realization(IM, 10)
    assert R.dims == {(0,): 1, (-1,): 1, (-2,): 1}
    realization_brackets(IM, R)
    with pytest.raises(TooLarge):
        simple_quotient_realization(borel_module(A1, Q, [((4,), 0)]), 2)
    with pytest.raises(TooLarge):
        simple_quotient_realization(borel_module(A1, Q, [((-1,), 0)]), 6)


@pytest.mark.parametrize("P", enumerate_parabolics(A2), ids=lambda P: str(P.mask))
def test_levi_modules_all_parabolics(P):
    levi, _, _ = levi_split(P)
    lam = (1, 1)
    W = levi_highest_weight_module(P, lam)
    R = W.diagram
    assert R.finite and R.total() >= 1
    # the simple l-module sits inside L(lam) restricted to l
    full = freudenthal_diagram(A2, lam)
    for o, m in R.mults.items():
        assert m <= full.mult(o)
    if levi == mask_of(A2, A2.roots):
        assert R == full


@pytest.mark.parametrize("T", [[0], [1], [0, 1]])
@pytest.mark.parametrize("lam", [(1, 0), (0, 1), (1, 1), (2, 1)])
def test_parabolic_induction_recovers_finite_modules(T, lam):
    from currentrep.parabolic import standard_parabolic

    P = standard_parabolic(A2, T)
    W = levi_module(LeviModuleSpec(P, Q, ((lam, character_at(Q, 0)),)))
    IM = induced_module(P, Q, W)
    full = freudenthal_diagram(A2, lam)
    for a, b in product(range(5), repeat=2):
        g = (-a, -b)
        if IM.ht(g) <= 0:
            assert IM.simple_quotient_mult(g) == full.mult(g)
    R = simple_quotient_realization(IM, 20)
    realization_brackets(IM, R)


def test_levi_two_point_parabolic():
    """Levi sl2 modules at two points, induced to sl3 over points[0, 1]."""
    from currentrep.parabolic import standard_parabolic

    P = standard_parabolic(A2, [0])
    chunks = (((1, 0), character_at(S01, 0)), ((1, 1), character_at(S01, 1)))
    W = levi_module(LeviModuleSpec(P, S01, chunks))
    IM = induced_module(P, S01, W)
    T = tensor_eval(build_factors(A2, [("hw", (1, 0), 0), ("hw", (1, 1), 1)])[0])
    for a, b in product(range(4), repeat=2):
        g = (-a, -b)
        if IM.ht(g) <= 0:
            assert IM.simple_quotient_mult(g) == weight_mult(T, g)


def test_takiff_verma_simple_when_nilpotent_part_acts():
    """For sl2 (x) Q[t]/t^2, a torus character nonzero on h (x) t leaves nothing to quotient."""
    S = make_truncated(2)
    W = tensor_eval([], rs=A1, S=S, chi=[[1, 1]], levi=0)
    IM = induced_module(borel(A1), S, W)
    for k in range(6):
        assert IM.simple_quotient_mult((-k,)) == IM.dim_verma((-k,)) == k + 1
