"""Explicit weight modules and multiplicity oracles.

Weights are recorded relative to an anchor: every module carries the Dynkin
labels of one of its weights (``anchor``) and each carrier vector an integer
offset in simple-root coordinates.  For highest weight modules the anchor is
the highest weight and offsets are non-positive.

Finite-dimensional simple modules are not written down by hand: they come out
of the induction engine with S = Q and the Borel parabolic.  Weyl's dimension
formula and Freudenthal's recursion live here as independent oracles.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import isqrt
from typing import Dict, FrozenSet, Mapping, Optional, Sequence, Tuple

from .errors import NonDominant, OutOfWindow, ReducibleParameters, TooLarge
from .roots import Key, RootSystem, build_root_system

Offset = Tuple[int, ...]
Labels = Tuple[Fraction, ...]
SparseMatrix = Dict[int, Dict[int, Fraction]]  # column -> {row: value}


@dataclass(frozen=True)
class WeightDiagram:
    """Weight multiplicities keyed by offset from ``anchor``.

    ``window`` is None for finite diagrams.  Otherwise it is the set of offsets
    at which the stored values are exact; querying anything else raises.
    """

    anchor: Labels
    mults: Mapping[Offset, int]
    window: Optional[FrozenSet[Offset]] = None
    rs: Optional[RootSystem] = field(default=None, compare=False, repr=False)

    def mult(self, offset) -> int:
        offset = tuple(offset)
        if self.window is not None and offset not in self.window:
            raise OutOfWindow(f"offset {offset} lies outside the computed window")
        return self.mults.get(offset, 0)

    __call__ = mult

    @property
    def finite(self) -> bool:
        return self.window is None

    def total(self) -> int:
        return sum(self.mults.values())

    def support(self):
        return sorted(o for o, m in self.mults.items() if m)

    def __eq__(self, other):
        if not isinstance(other, WeightDiagram):
            return NotImplemented
        return (self.anchor == other.anchor and self.window == other.window
                and {k: v for k, v in self.mults.items() if v}
                == {k: v for k, v in other.mults.items() if v})


@dataclass(frozen=True)
class ModuleRealization:
    """A weight module given by sparse matrices on an ordered weight basis.

    ``action[key][j]`` is the image of basis vector ``j`` as ``{i: coeff}``.
    Keys whose image of ``j`` would leave a finite window are listed in
    ``escapes``; applying them raises :class:`OutOfWindow`.
    """

    rs: RootSystem
    tag: Optional[tuple]
    anchor: Labels
    offsets: Tuple[Offset, ...]
    action: Mapping[Key, SparseMatrix] = field(repr=False)
    escapes: Mapping[Key, FrozenSet[int]] = field(default_factory=dict, repr=False)
    window: Optional[int] = None
    labels: tuple = field(default=(), repr=False)

    @property
    def size(self) -> int:
        return len(self.offsets)

    @property
    def dim(self) -> Optional[int]:
        return None if self.window is not None else len(self.offsets)

    @property
    def finite(self) -> bool:
        return self.window is None

    @property
    def keys(self):
        return frozenset(self.action)

    def act(self, key: Key, j: int) -> Dict[int, Fraction]:
        if j in self.escapes.get(key, ()):
            raise OutOfWindow(f"{key} moves carrier vector {self.labels[j] if self.labels else j}"
                              " outside the window")
        return self.action[key].get(j, {})

    def apply(self, key: Key, vec: Mapping[int, Fraction]) -> Dict[int, Fraction]:
        out: Dict[int, Fraction] = {}
        for j, c in vec.items():
            for i, x in self.act(key, j).items():
                out[i] = out.get(i, 0) + c * x
        return {i: x for i, x in out.items() if x}

    def matrix(self, key: Key):
        n = self.size
        m = [[Fraction(0)] * n for _ in range(n)]
        for j, col in self.action[key].items():
            for i, x in col.items():
                m[i][j] = Fraction(x)
        return m

    def weight(self, j: int) -> Labels:
        lab = self.rs.labels(self.offsets[j])
        return tuple(a + b for a, b in zip(self.anchor, lab))

    @property
    def diagram(self) -> WeightDiagram:
        mults: Dict[Offset, int] = {}
        for o in self.offsets:
            mults[o] = mults.get(o, 0) + 1
        window = None
        if self.window is not None:
            window = frozenset(self.offsets)
        return WeightDiagram(self.anchor, mults, window, self.rs)

    @property
    def kind(self) -> Optional[str]:
        return self.tag[0] if self.tag else None


# -- oracles -----------------------------------------------------------------

def _check_dominant(rs: RootSystem, lam) -> Tuple[int, ...]:
    out = []
    for x in lam:
        x = Fraction(x)
        if x.denominator != 1 or x < 0:
            raise NonDominant(f"{tuple(lam)} is not dominant integral")
        out.append(int(x))
    if len(out) != rs.rank:
        raise NonDominant(f"expected {rs.rank} labels, got {len(out)}")
    return tuple(out)


def weyl_dim(rs: RootSystem, lam) -> int:
    lam = _check_dominant(rs, lam)
    num = den = Fraction(1)
    for r in rs.positive:
        c = rs.coroot(r)
        num *= sum(ci * (li + 1) for ci, li in zip(c, lam))
        den *= sum(c)
    d = num / den
    assert d.denominator == 1
    return int(d)


def freudenthal_diagram(rs: RootSystem, lam, limit: int = 10 ** 4) -> WeightDiagram:
    """Weight multiplicities of L(lam) by Freudenthal's recursion, top down."""
    lam = _check_dominant(rs, lam)
    dim = weyl_dim(rs, lam)
    if dim > limit:
        raise TooLarge(f"dim L{lam} = {dim} exceeds {limit}")
    n = rs.rank
    lam_rc = rs.to_root_coords(lam)
    rho_rc = rs.to_root_coords((1,) * n)
    top = tuple(a + b for a, b in zip(lam_rc, rho_rc))
    norm_top = rs.pairing(top, top)
    pos = [rs.roots[r] for r in rs.positive]
    mults: Dict[Offset, int] = {(0,) * n: 1}
    level = [(0,) * n]
    while level:
        cands = sorted({tuple(c - (k == i) for k, c in enumerate(o))
                        for o in level for i in range(n)})
        level = []
        for o in cands:
            mu_rho = tuple(t + x for t, x in zip(top, o))
            denom = norm_top - rs.pairing(mu_rho, mu_rho)
            acc = Fraction(0)
            for a in pos:
                k = 1
                while True:
                    shifted = tuple(x + k * y for x, y in zip(o, a))
                    if any(x > 0 for x in shifted):
                        break
                    m = mults.get(shifted, 0)
                    if m:
                        w = tuple(l + x for l, x in zip(lam_rc, shifted))
                        acc += m * rs.pairing(w, a)
                    k += 1
            if acc:
                val = 2 * acc / denom
                assert val.denominator == 1 and val > 0
                mults[o] = int(val)
                level.append(o)
    total = sum(mults.values())
    assert total == dim, (total, dim)
    return WeightDiagram(tuple(Fraction(x) for x in lam), mults, None, rs)


# -- dense sl2 family --------------------------------------------------------

def _rational_sqrt(x: Fraction) -> Optional[Fraction]:
    if x < 0:
        return None
    p, q = isqrt(x.numerator), isqrt(x.denominator)
    if p * p == x.numerator and q * q == x.denominator:
        return Fraction(p, q)
    return None


def dense_zeros(lam, tau) -> Tuple[int, ...]:
    """All integers k with tau = k (lam + k + 1), found from the discriminant."""
    lam, tau = Fraction(lam), Fraction(tau)
    # k^2 + (lam+1) k - tau = 0
    root = _rational_sqrt((lam + 1) ** 2 + 4 * tau)
    if root is None:
        return ()
    ks = {(-(lam + 1) + s) / 2 for s in (root, -root)}
    return tuple(sorted(int(k) for k in ks if k.denominator == 1))


def dense_coefficient(lam, tau, k: int) -> Fraction:
    return Fraction(tau) - k * (Fraction(lam) + k + 1)


def dense_sl2(lam, tau, window: int = 10) -> ModuleRealization:
    """The dense sl2 module with h v_k = (lam+2k) v_k, f v_k = v_{k-1}, e v_k = c_k v_{k+1}.

    Carrier vectors v_k for |k| <= window.  Raises ReducibleParameters when
    some c_k vanishes for an integer k (the module is then not simple).
    """
    lam, tau = Fraction(lam), Fraction(tau)
    zeros = dense_zeros(lam, tau)
    if zeros:
        raise ReducibleParameters(f"c_k = 0 at k = {zeros[0]} for (lam, tau) = ({lam}, {tau})")
    if window < 1:
        raise ValueError("window must be positive")
    rs = build_root_system("A", 1)
    e_key, f_key, h_key = ("x", rs.index[(1,)]), ("x", rs.index[(-1,)]), ("h", 0)
    ks = list(range(-window, window + 1))
    pos = {k: i for i, k in enumerate(ks)}
    e: SparseMatrix = {}
    f: SparseMatrix = {}
    h: SparseMatrix = {}
    for k, i in pos.items():
        if lam + 2 * k:
            h[i] = {i: lam + 2 * k}
        if k + 1 in pos:
            e[i] = {pos[k + 1]: dense_coefficient(lam, tau, k)}
        if k - 1 in pos:
            f[i] = {pos[k - 1]: Fraction(1)}
    return ModuleRealization(
        rs, ("dense", lam, tau, "full"), (lam,), tuple((k,) for k in ks),
        {e_key: e, f_key: f, h_key: h},
        {e_key: frozenset({pos[window]}), f_key: frozenset({pos[-window]})},
        window, tuple(ks))


# -- highest weight and Levi modules ----------------------------------------

def highest_weight_module(rs: RootSystem, lam, limit: int = 200) -> ModuleRealization:
    """L(lam) realized as the simple quotient of the Verma module over S = Q."""
    lam = _check_dominant(rs, lam)
    dim = weyl_dim(rs, lam)
    if dim > limit:
        raise TooLarge(f"dim L{lam} = {dim} exceeds {limit}")
    return _highest_weight_module(rs, lam)


@lru_cache(maxsize=256)
def _highest_weight_module(rs: RootSystem, lam: Tuple[int, ...]) -> ModuleRealization:
    from .induction import simple_quotient_realization, torus_module, induced_module
    from .coeff import make_points_algebra
    from .parabolic import borel

    S = make_points_algebra([0])
    W = torus_module(rs, S, [(lam, 0)])
    IM = induced_module(borel(rs), S, W)
    # ht(lam - w0 lam) = sum over positive roots of <lam, alpha^vee>
    depth = sum(sum(c * l for c, l in zip(rs.coroot(r), lam)) for r in rs.positive)
    real = simple_quotient_realization(IM, max_depth=depth + 1)
    action = {z[0]: mat for z, mat in real.action.items()}
    return ModuleRealization(rs, ("hw", lam, "borel"), real.anchor, real.offsets,
                             action, {}, None, real.labels)


@dataclass(frozen=True)
class LeviModuleSpec:
    """A simple Levi module: tensor of evaluation highest weight modules and a central twist.

    ``factors`` pairs Dynkin labels (dominant integral on the Levi's simple
    roots, arbitrary rationals elsewhere) with a character of ``S``.
    ``central`` is an optional rank-by-dim(S) table giving chi(h_i (x) s_b);
    it must vanish on the coroots of the Levi's semisimple part, i.e. it is a
    character of Z(l) (x) S.
    """

    P: "object"
    S: "object"
    factors: Tuple[Tuple[Tuple[Fraction, ...], "object"], ...] = ()
    central: Optional[Tuple[Tuple[Fraction, ...], ...]] = None


def levi_module(spec: LeviModuleSpec):
    """Realize ``spec`` as a module for l (x) S (a :class:`~currentrep.evalmod.TensorModule`)."""
    from .evalmod import EvaluationFactor, tensor_eval
    from .induction import levi_highest_weight_module
    from .parabolic import levi_split

    P = spec.P
    rs = P.rs
    levi, _, _ = levi_split(P)
    factors = []
    for lab, point in spec.factors:
        base = levi_highest_weight_module(P, lab)
        factors.append(EvaluationFactor(base, point))
    return tensor_eval(factors, rs=rs, S=spec.S, chi=spec.central, levi=levi)
