"""The invariant suite run by ``currentrep verify`` and the acceptance tests.

Each check returns a :class:`CheckResult`; details are deterministic strings
(no timings) so that repeated runs are byte-identical.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import product
from typing import Callable, List, Tuple

from .classifier import classify_exact, classify_induced, trichotomy
from .coeff import make_points_algebra, make_truncated
from .evalmod import build_factors, iso_canonical_form, tensor_eval, weight_mult
from .induction import induced_module, torus_module
from .parabolic import (borel, certify, enumerate_parabolics, full_mask, is_closed, levi_split,
                        mask_of, members, negate)
from .reps import dense_sl2, freudenthal_diagram, weyl_dim
from .roots import EXPECTED_COUNTS, basis_keys, bracket, build_root_system, chevalley_bracket, h_of_root

PARABOLIC_COUNTS = {("A", 1): 3, ("A", 2): 13, ("B", 2): 17}
SL3_WEIGHTS = ((1, 0), (0, 1), (1, 1), (2, 1))
HEIGHT_RANGE = 4


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str

    def line(self) -> str:
        return f"{'PASS' if self.passed else 'FAIL'} {self.name}: {self.detail}"


def _sl(n):
    return build_root_system("A", n)


# -- 1, 2: parabolic subsets ---------------------------------------------------

def check_parabolic_enumeration() -> CheckResult:
    counts = []
    ok = True
    for key, want in PARABOLIC_COUNTS.items():
        rs = build_root_system(*key)
        if len(rs) != EXPECTED_COUNTS[key]:
            ok = False
        try:
            got = len(enumerate_parabolics(rs))
        except AssertionError:
            ok, got = False, -1
        ok &= got == want
        counts.append(f"{rs.name}={got}")
    return CheckResult("parabolic enumeration", ok, "scan equals certificates; " + " ".join(counts))


def check_closure_lemmas() -> CheckResult:
    bad = 0
    total = 0
    for key in PARABOLIC_COUNTS:
        rs = build_root_system(*key)
        full = full_mask(rs)
        for P in enumerate_parabolics(rs):
            total += 1
            levi, raise_, lower = levi_split(P)
            bad += not is_closed(rs, P.mask)
            bad += (P.mask | negate(rs, P.mask)) != full
            bad += negate(rs, levi) != levi or not is_closed(rs, levi)
            bad += any(P.height(rs.roots[r]) < 1 for r in members(raise_))
            bad += any(P.height(rs.roots[r]) != 0 for r in members(levi))
            bad += any(P.height(rs.roots[r]) > -1 for r in members(lower))
            bad += certify(rs, P.mask).mask != P.mask
    return CheckResult("closure lemmas", bad == 0, f"{total} parabolic subsets, {bad} violations")


# -- 3: structure constants ---------------------------------------------------

def check_chevalley() -> CheckResult:
    bad = 0
    for n in (1, 2):
        rs = _sl(n)
        for r in range(len(rs)):
            x, y = ("x", r), ("x", rs.neg[r])
            bad += chevalley_bracket(rs, x, y) != h_of_root(rs, r)
            bad += bracket(rs, h_of_root(rs, r), {x: 1}) != {x: 2}
    rs = _sl(2)
    keys = basis_keys(rs)
    triples = 0
    for a, b, c in product(keys, repeat=3):
        A, B, C = {a: 1}, {b: 1}, {c: 1}
        acc = {}
        for t in (bracket(rs, A, bracket(rs, B, C)), bracket(rs, B, bracket(rs, C, A)),
                  bracket(rs, C, bracket(rs, A, B))):
            for k, v in t.items():
                acc[k] = acc.get(k, 0) + v
        bad += any(acc.values())
        triples += 1
    return CheckResult("chevalley relations", bad == 0,
                       f"sl2, sl3 relations and {triples} Jacobi triples, {bad} failures")


# -- 4-7: induction engine ------------------------------------------------------

def _borel_module(rs, S, weights):
    return induced_module(borel(rs), S, torus_module(rs, S, weights))


def _cone(rs, depth):
    """Offsets -(a_1, ..., a_n) with 0 <= sum a_i <= depth."""
    out = []
    for a in product(range(depth + 1), repeat=rs.rank):
        if sum(a) <= depth:
            out.append(tuple(-x for x in a))
    return sorted(out, key=lambda o: (-sum(o), o))


def _base_configs():
    rs1, rs2 = _sl(1), _sl(2)
    Q = make_points_algebra([0])
    for lam in range(11):
        yield rs1, (lam,), _borel_module(rs1, Q, [((lam,), 0)])
    for lam in SL3_WEIGHTS:
        yield rs2, lam, _borel_module(rs2, Q, [(lam, 0)])


def check_oracle_triangle() -> CheckResult:
    bad = []
    for rs, lam, IM in _base_configs():
        fd = freudenthal_diagram(rs, lam)
        depth = sum(sum(c * l for c, l in zip(rs.coroot(r), lam)) for r in rs.positive)
        total = 0
        for g in _cone(rs, depth + 1):
            m = IM.simple_quotient_mult(g)
            total += m
            if m != fd.mult(g):
                bad.append(f"{rs.name}{lam}@{g}")
        if total != weyl_dim(rs, lam):
            bad.append(f"{rs.name}{lam} total {total}")
    return CheckResult("oracle triangle", not bad,
                       "sl2 lam<=10 and sl3 " + ",".join(map(str, SL3_WEIGHTS))
                       + (" agree" if not bad else " mismatch " + " ".join(bad)))


def _two_point_configs():
    rs = _sl(1)
    S = make_points_algebra([0, 1])
    for m, n in product(range(3), repeat=2):
        IM = _borel_module(rs, S, [((m,), 0), ((n,), 1)])
        yield (m, n), IM


def check_two_point() -> CheckResult:
    rs = _sl(1)
    bad = []
    for (m, n), IM in _two_point_configs():
        factors, S = build_factors(rs, [("hw", (m,), 0), ("hw", (n,), 1)])
        T = tensor_eval(factors)
        for F, lam in zip(factors, (m, n)):
            if F.base.diagram != freudenthal_diagram(rs, (lam,)):
                bad.append(f"factor L({lam})")
        for k in range(HEIGHT_RANGE + 1):
            if IM.simple_quotient_mult((-k,)) != weight_mult(T, (-k,)):
                bad.append(f"({m},{n})@{-k}")
    return CheckResult("two-point tensor cross-check", not bad,
                       "9 configurations" + (" agree" if not bad else " mismatch " + " ".join(bad)))


def _takiff_configs():
    rs = _sl(1)
    for order in (2, 3):
        S = make_truncated(order)
        for lam in (1, 2, 3):
            yield order, lam, _borel_module(rs, S, [((lam,), 0)])


def check_takiff() -> CheckResult:
    rs = _sl(1)
    Q = make_points_algebra([0])
    bad = []
    for order, lam, IM in _takiff_configs():
        ref = _borel_module(rs, Q, [((lam,), 0)])
        for k in range(HEIGHT_RANGE + 1):
            if IM.simple_quotient_mult((-k,)) != ref.simple_quotient_mult((-k,)):
                bad.append(f"trunc:{order} L({lam})@{-k}")
    return CheckResult("truncated collapse", not bad,
                       "trunc:2, trunc:3 with lam 1..3" + (" agree" if not bad else
                                                          " mismatch " + " ".join(bad)))


def check_n_plus() -> CheckResult:
    IMs = [IM for _, _, IM in _base_configs()]
    IMs += [IM for _, IM in _two_point_configs()]
    IMs += [IM for _, _, IM in _takiff_configs()]
    bad = 0
    tested = 0
    for IM in IMs:
        for g in _cone(IM.rs, HEIGHT_RANGE):
            if not sum(g):
                continue
            tested += 1
            bad += IM.n_plus_invariants_dim(g) != 0
    return CheckResult("raising invariants vanish", bad == 0,
                       f"{tested} weights in {len(IMs)} configurations, {bad} nonzero")


# -- 8: trichotomy ---------------------------------------------------------------

def check_trichotomy(window: int = 50) -> CheckResult:
    notes = []
    ok = True
    rs1, rs2 = _sl(1), _sl(2)
    finite = [
        tensor_eval(build_factors(rs1, [("hw", (1,), 0), ("hw", (1,), 1)])[0]),
        tensor_eval(build_factors(rs2, [("hw", (1, 0), 0), ("hw", (0, 1), 1)])[0]),
    ]
    classes = []
    for T in finite:
        c = classify_exact(T)
        classes.append(c)
        ok &= trichotomy(c).case == "finite" and T.diagram.finite and T.diagram.total() == T.dim
    notes.append(f"{len(finite)} finite")
    S = make_points_algebra([0])
    from .evalmod import EvaluationFactor
    from .coeff import character_at
    dense = tensor_eval([EvaluationFactor(dense_sl2(0, 1, window), character_at(S, 0))])
    c = classify_exact(dense)
    classes.append(c)
    d = dense.diagram
    ok &= trichotomy(c).case == "dense"
    ok &= all(d.mult((k,)) == 1 for k in range(-window, window + 1))
    notes.append(f"dense constant on |k|<={window}")
    P = certify(rs2, mask_of(rs2, list(rs2.positive) + [rs2.index[(-1, 0)]]))
    c = classify_induced(P)
    classes.append(c)
    t = trichotomy(c)
    ok &= t.case == "parabolic" and t.P.mask == P.mask
    notes.append("mixed A2 gives its parabolic")
    viol = sum(len(c.violations()) for c in classes)
    ok &= viol == 0
    notes.append(f"{viol} closure violations")
    return CheckResult("trichotomy fixtures", ok, ", ".join(notes))


# -- 9: isomorphism criterion --------------------------------------------------------

ISO_FAMILY = (("hw", (1, 0), 0), ("hw", (0, 1), 1), ("hw", (1, 1), 2))


def _form(rs, parsed):
    return iso_canonical_form(tensor_eval(build_factors(rs, parsed)[0]))


def check_isomorphism(shuffles: int = 100, seed: int = 0) -> CheckResult:
    from fractions import Fraction

    rs = _sl(2)
    parsed = [(k, tuple(Fraction(x) for x in v), Fraction(p)) for k, v, p in ISO_FAMILY]
    ref = _form(rs, parsed)
    rng = random.Random(seed)
    ok = True
    for _ in range(shuffles):
        perm = list(parsed)
        rng.shuffle(perm)
        ok &= _form(rs, perm) == ref
    variants = 0
    for i, (kind, lab, pt) in enumerate(parsed):
        changes = [(kind, lab, pt + 5)]
        for j in range(len(lab)):
            changes.append((kind, tuple(x + (k == j) for k, x in enumerate(lab)), pt))
        for new in changes:
            alt = list(parsed)
            alt[i] = new
            variants += 1
            ok &= _form(rs, alt) != ref
    return CheckResult("isomorphism criterion", ok,
                       f"{shuffles} shuffles invariant, {variants} single changes distinguished")


CHECKS: Tuple[Tuple[int, Callable[[], CheckResult]], ...] = (
    (1, check_parabolic_enumeration),
    (2, check_closure_lemmas),
    (3, check_chevalley),
    (4, check_oracle_triangle),
    (5, check_two_point),
    (6, check_takiff),
    (7, check_n_plus),
    (8, check_trichotomy),
    (9, check_isomorphism),
)


def run_all() -> List[CheckResult]:
    return [fn() for _, fn in CHECKS]
