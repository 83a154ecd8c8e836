"""Evaluation modules and their tensor products.

A factor is a g-module (or l-module) realization together with a character M
of S; x (x) s acts on it by s(M) x.  A tensor product of factors at distinct
characters carries the Leibniz action

    (x (x) s)(w_1 (x) ... (x) w_q) = sum_i s(M_i) w_1 (x) ... (x) x w_i (x) ... (x) w_q,

optionally twisted by a central character chi of h (x) S.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .coeff import CoeffAlgebra, Element, MaxCharacter, character_at, evaluate, make_points_algebra
from .errors import (DimensionMismatch, Inadmissible, MismatchedAlgebra, RepeatedPoint,
                     UntaggedFactor)
from .parabolic import members
from .reps import ModuleRealization, WeightDiagram, dense_sl2, highest_weight_module
from .roots import Key, RootSystem


@dataclass(frozen=True)
class EvaluationFactor:
    base: ModuleRealization
    point: MaxCharacter


def evaluation_action(F: EvaluationFactor, key: Key, s: Element, v: Dict[int, Fraction]):
    c = evaluate(s, F.point)
    if not c:
        return {}
    return {i: c * x for i, x in F.base.apply(key, v).items()}


def _convolve(a: Dict[tuple, int], b: Dict[tuple, int]) -> Dict[tuple, int]:
    out: Dict[tuple, int] = {}
    for x, m in a.items():
        for y, n in b.items():
            z = tuple(p + q for p, q in zip(x, y))
            out[z] = out.get(z, 0) + m * n
    return out


@dataclass(frozen=True)
class TensorModule:
    rs: RootSystem
    S: CoeffAlgebra
    factors: Tuple[EvaluationFactor, ...]
    chi: Optional[Tuple[Tuple[Fraction, ...], ...]] = None
    levi: Optional[int] = None
    _cache: dict = field(default_factory=dict, compare=False, repr=False)

    @property
    def finite(self) -> bool:
        return all(F.base.finite for F in self.factors)

    @property
    def sizes(self) -> Tuple[int, ...]:
        return tuple(F.base.size for F in self.factors)

    @property
    def dim(self) -> Optional[int]:
        if not self.finite:
            return None
        n = 1
        for d in self.sizes:
            n *= d
        return n

    @property
    def keys(self) -> frozenset:
        keys = {("h", i) for i in range(self.rs.rank)}
        if self.factors:
            common = frozenset.intersection(*(F.base.keys for F in self.factors))
            keys |= set(common)
        if self.levi is not None:
            keys |= {("x", r) for r in members(self.levi)}
        return frozenset(keys)

    @property
    def anchor(self) -> Tuple[Fraction, ...]:
        out = [Fraction(0)] * self.rs.rank
        for F in self.factors:
            out = [a + b for a, b in zip(out, F.base.anchor)]
        if self.chi is not None:
            out = [a + row[0] for a, row in zip(out, self.chi)]
        return tuple(out)

    def split(self, j: int) -> Tuple[int, ...]:
        idx = []
        for d in reversed(self.sizes):
            idx.append(j % d)
            j //= d
        return tuple(reversed(idx))

    def join(self, idx: Sequence[int]) -> int:
        j = 0
        for d, i in zip(self.sizes, idx):
            j = j * d + i
        return j

    def offset(self, j: int) -> Tuple[int, ...]:
        out = [0] * self.rs.rank
        for F, i in zip(self.factors, self.split(j)):
            out = [a + b for a, b in zip(out, F.base.offsets[i])]
        return tuple(out)

    @property
    def offsets(self) -> Tuple[Tuple[int, ...], ...]:
        got = self._cache.get("offsets")
        if got is None:
            got = tuple(self.offset(j) for j in range(self.dim))
            self._cache["offsets"] = got
        return got

    def act(self, key: Key, s: Element, j: int) -> Dict[int, Fraction]:
        """(key (x) s) applied to flat basis vector ``j``."""
        idx = self.split(j)
        out: Dict[int, Fraction] = {}
        for p, F in enumerate(self.factors):
            c = evaluate(s, F.point)
            if not c:
                continue
            for i, x in F.base.act(key, idx[p]).items():
                k = self.join(idx[:p] + (i,) + idx[p + 1:])
                out[k] = out.get(k, 0) + c * x
        if key[0] == "h" and self.chi is not None:
            val = sum((a * b for a, b in zip(self.chi[key[1]], s)), Fraction(0))
            if val:
                out[j] = out.get(j, 0) + val
        return {k: v for k, v in out.items() if v}

    def act_letter(self, letter, j: int) -> Dict[int, Fraction]:
        key, b = letter
        memo = self._cache.setdefault("letters", {})
        hit = memo.get((letter, j))
        if hit is None:
            hit = self.act(key, self.S.basis(b), j)
            memo[letter, j] = hit
        return hit

    def matrix(self, key: Key, s: Element):
        n = self.dim
        m = [[Fraction(0)] * n for _ in range(n)]
        for j in range(n):
            for i, x in self.act(key, s, j).items():
                m[i][j] = x
        return m

    @property
    def diagram(self) -> WeightDiagram:
        got = self._cache.get("diagram")
        if got is not None:
            return got
        finite = {(0,) * self.rs.rank: 1}
        windowed = None
        for F in self.factors:
            d = F.base.diagram
            if d.finite:
                finite = _convolve(finite, dict(d.mults))
            else:
                windowed = d
        if windowed is None:
            got = WeightDiagram(self.anchor, finite, None, self.rs)
        else:
            fsupp = [f for f, m in finite.items() if m]
            cands = {tuple(a + b for a, b in zip(w, f)) for w in windowed.window for f in fsupp}
            window = frozenset(
                g for g in cands
                if all(tuple(a - b for a, b in zip(g, f)) in windowed.window for f in fsupp))
            mults = {}
            for g in window:
                m = sum(n * windowed.mults.get(tuple(a - b for a, b in zip(g, f)), 0)
                        for f, n in finite.items())
                if m:
                    mults[g] = m
            got = WeightDiagram(self.anchor, mults, window, self.rs)
        self._cache["diagram"] = got
        return got


def _validate_chi(rs: RootSystem, S: CoeffAlgebra, chi, levi: Optional[int]):
    if chi is None:
        return None
    chi = tuple(tuple(Fraction(x) for x in row) for row in chi)
    if len(chi) != rs.rank or any(len(row) != S.dim for row in chi):
        raise DimensionMismatch(f"central character must be {rs.rank} x {S.dim}")
    for r in members(levi or 0):
        cor = rs.coroot(r)
        for b in range(S.dim):
            if sum(c * chi[i][b] for i, c in enumerate(cor)):
                raise DimensionMismatch(
                    f"central character is nonzero on the Levi coroot of {rs.roots[r]}")
    return chi


def tensor_eval(factors: Sequence[EvaluationFactor], *, rs: RootSystem = None,
                S: CoeffAlgebra = None, chi=None, levi: Optional[int] = None) -> TensorModule:
    factors = tuple(factors)
    if rs is None:
        if not factors:
            raise ValueError("root system required for an empty tensor product")
        rs = factors[0].base.rs
    if S is None:
        if not factors:
            raise ValueError("coefficient algebra required for an empty tensor product")
        S = factors[0].point.parent
    seen = set()
    for F in factors:
        if F.base.rs != rs:
            raise MismatchedAlgebra("factors live over different root systems")
        if F.point.parent != S:
            raise MismatchedAlgebra("factors evaluate in different coefficient algebras")
        if F.point.value in seen:
            raise RepeatedPoint(f"two factors at the same maximal ideal t = {F.point.value}")
        seen.add(F.point.value)
    if sum(not F.base.finite for F in factors) > 1:
        raise Inadmissible("at most one infinite-dimensional factor is supported")
    return TensorModule(rs, S, factors, _validate_chi(rs, S, chi, levi), levi)


def weight_mult(T: TensorModule, gamma) -> int:
    """Multiplicity of the weight anchor + gamma (gamma in simple-root coordinates)."""
    return T.diagram.mult(gamma)


def _fmt(x) -> str:
    return str(Fraction(x))


def structural_tag(base: ModuleRealization) -> str:
    if not base.tag:
        raise UntaggedFactor("factor has no structural tag")
    kind = base.tag[0]
    if kind == "hw":
        return "hw(" + ",".join(_fmt(x) for x in base.tag[1]) + ")/" + base.tag[2]
    if kind == "dense":
        return f"dense({_fmt(base.tag[1])},{_fmt(base.tag[2])})/{base.tag[3]}"
    return repr(base.tag)


def iso_canonical_form(T: TensorModule) -> Tuple[Tuple[str, str], ...]:
    """Sorted (point, structural tag) pairs; equal forms mean isomorphic modules."""
    return tuple(sorted((_fmt(F.point.value), structural_tag(F.base)) for F in T.factors))


def render_canonical(form) -> str:
    return " (x) ".join(f"{tag}@{pt}" for pt, tag in form)


# -- descriptors -------------------------------------------------------------

_FACTOR = re.compile(r"(hw|dense):([^@]*)@([^,\s]+)")


def parse_factors(text: str) -> List[Tuple[str, Tuple[Fraction, ...], Fraction]]:
    """Split ``hw:<labels>@<pt>,dense:<lam>,<tau>@<pt>,...`` into parsed triples."""
    out = []
    pos = 0
    text = text.strip()
    for m in _FACTOR.finditer(text):
        gap = text[pos:m.start()].strip()
        if gap not in ("", ","):
            raise ValueError(f"cannot parse factor list near {gap!r}")
        kind, body, pt = m.groups()
        vals = tuple(Fraction(x) for x in body.split(",") if x.strip())
        out.append((kind, vals, Fraction(pt)))
        pos = m.end()
    if text[pos:].strip() or not out:
        raise ValueError(f"cannot parse factor list {text!r}")
    return out


def build_factors(rs: RootSystem, parsed, window: int = 10, S: CoeffAlgebra = None):
    """Realize parsed factor descriptors; S defaults to the points algebra of their points."""
    if S is None:
        pts = []
        for _, _, p in parsed:
            if p not in pts:
                pts.append(p)
        S = make_points_algebra(sorted(pts))
    factors = []
    for kind, vals, pt in parsed:
        if kind == "hw":
            if len(vals) != rs.rank:
                raise ValueError(f"hw factor needs {rs.rank} labels")
            base = highest_weight_module(rs, vals)
        else:
            if rs.rank != 1 or len(vals) != 2:
                raise ValueError("dense factors take lam,tau and require type A1")
            base = dense_sl2(vals[0], vals[1], window)
        factors.append(EvaluationFactor(base, character_at(S, pt)))
    return factors, S
