"""Finite-dimensional commutative coefficient algebras over Q.

Every algebra here is a quotient Q[t]/(f) with f split over Q, written in the
monomial basis 1, t, ..., t^(n-1).  ``points`` algebras have f squarefree
(S is then Q^q by the Chinese remainder theorem), ``truncated`` algebras have
f = t^n, and ``split-poly`` allows arbitrary root multiplicities.

Elements are tuples of Fractions of length ``dim``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Sequence, Tuple

from .errors import DuplicatePoint, MismatchedAlgebra

Element = Tuple[Fraction, ...]


def _poly_mul(a, b):
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


@dataclass(frozen=True)
class CoeffAlgebra:
    dim: int
    kind: str
    roots: Tuple[Tuple[Fraction, int], ...]  # (root of f, multiplicity)
    mult: Tuple[Tuple[Element, ...], ...] = field(compare=False, repr=False)

    def basis(self, i: int) -> Element:
        return tuple(Fraction(int(k == i)) for k in range(self.dim))

    def unit(self) -> Element:
        return self.basis(0)

    def element(self, coeffs: Sequence) -> Element:
        if len(coeffs) != self.dim:
            raise MismatchedAlgebra(f"expected {self.dim} coordinates, got {len(coeffs)}")
        return tuple(Fraction(c) for c in coeffs)

    def mul(self, a: Element, b: Element) -> Element:
        out = [Fraction(0)] * self.dim
        for i, x in enumerate(a):
            if not x:
                continue
            for j, y in enumerate(b):
                if y:
                    for k, c in enumerate(self.mult[i][j]):
                        if c:
                            out[k] += x * y * c
        return tuple(out)

    def describe(self) -> str:
        if self.kind == "points":
            return "points:" + ",".join(str(a) for a, _ in self.roots)
        if self.kind == "truncated":
            return f"trunc:{self.dim}"
        return "poly:" + ",".join(f"{a}^{m}" for a, m in self.roots)


def _quotient(roots: Dict[Fraction, int], kind: str) -> CoeffAlgebra:
    f = [Fraction(1)]
    for a, m in roots.items():
        for _ in range(m):
            f = _poly_mul(f, [-a, Fraction(1)])
    n = len(f) - 1  # f monic of degree n

    def reduce(p):
        p = list(p)
        for deg in range(len(p) - 1, n - 1, -1):
            c = p[deg]
            if c:
                for k in range(n + 1):
                    p[deg - n + k] -= c * f[k]
        return tuple(p[:n]) + (Fraction(0),) * max(0, n - len(p))

    mult = tuple(tuple(reduce([Fraction(int(k == i + j)) for k in range(i + j + 1)])
                       for j in range(n)) for i in range(n))
    S = CoeffAlgebra(n, kind, tuple(sorted(roots.items())), mult)
    _check_commutative_associative(S)
    return S


def _check_commutative_associative(S: CoeffAlgebra):
    b = [S.basis(i) for i in range(S.dim)]
    for i in range(S.dim):
        assert S.mul(b[0], b[i]) == b[i]
        for j in range(S.dim):
            assert S.mult[i][j] == S.mult[j][i]
            for k in range(S.dim):
                assert S.mul(S.mul(b[i], b[j]), b[k]) == S.mul(b[i], S.mul(b[j], b[k]))


def make_points_algebra(points: Sequence) -> CoeffAlgebra:
    pts = [Fraction(p) for p in points]
    if not pts:
        raise ValueError("at least one point is required")
    if len(set(pts)) != len(pts):
        raise DuplicatePoint(f"points must be distinct: {points}")
    return _quotient({p: 1 for p in pts}, "points")


def make_truncated(n: int) -> CoeffAlgebra:
    if n < 1:
        raise ValueError("truncation order must be positive")
    return _quotient({Fraction(0): n}, "truncated")


def make_split_poly(roots: Dict) -> CoeffAlgebra:
    """Q[t] / prod (t - a)^m for a mapping {a: m}."""
    rs = {Fraction(a): int(m) for a, m in roots.items() if int(m) > 0}
    if not rs:
        raise ValueError("empty polynomial")
    return _quotient(rs, "split-poly")


@dataclass(frozen=True)
class MaxCharacter:
    """The character t -> value of a split quotient, i.e. evaluation modulo (t - value)."""

    parent: CoeffAlgebra
    value: Fraction

    @property
    def values(self) -> Element:
        return tuple(self.value ** i for i in range(self.parent.dim))

    def __str__(self):
        return str(self.value)


def characters(S: CoeffAlgebra) -> List[MaxCharacter]:
    return [MaxCharacter(S, a) for a, _ in S.roots]


def character_at(S: CoeffAlgebra, value) -> MaxCharacter:
    value = Fraction(value)
    for M in characters(S):
        if M.value == value:
            return M
    raise MismatchedAlgebra(f"{S.describe()} has no character t -> {value}")


def evaluate(s: Element, M: MaxCharacter, S: CoeffAlgebra = None) -> Fraction:
    if S is not None and S != M.parent:
        raise MismatchedAlgebra("element and character belong to different algebras")
    if len(s) != M.parent.dim:
        raise MismatchedAlgebra(f"element has {len(s)} coordinates, algebra has "
                                f"{M.parent.dim}")
    return sum((Fraction(c) * v for c, v in zip(s, M.values)), Fraction(0))


def parse_algebra(text: str) -> CoeffAlgebra:
    """``points:a1,a2,...``, ``trunc:n`` or ``poly:a^m,b^k,...``."""
    text = text.strip()
    kind, _, body = text.partition(":")
    if not body:
        raise ValueError(f"bad algebra descriptor {text!r}")
    if kind == "points":
        return make_points_algebra([Fraction(x) for x in body.split(",")])
    if kind == "trunc":
        return make_truncated(int(body))
    if kind == "poly":
        roots: Dict[Fraction, int] = {}
        for item in body.split(","):
            a, _, m = item.partition("^")
            roots[Fraction(a)] = roots.get(Fraction(a), 0) + (int(m) if m else 1)
        return make_split_poly(roots)
    raise ValueError(f"bad algebra descriptor {text!r}")
