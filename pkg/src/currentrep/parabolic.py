"""Closed and parabolic subsets of a root system.

Subsets are bitmasks over the canonical root ordering of
:class:`~currentrep.roots.RootSystem` (bit ``r`` stands for ``rs.roots[r]``).

A parabolic subset P comes with a certificate: a base of simple roots split as
(delta_1..delta_m, eps_1..eps_n) with T = {delta_i}, such that P is the set of
roots whose eps-coordinates are all non-negative.  The parabolic height of a
lattice element is the sum of its eps-coordinates.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Dict, FrozenSet, List, Optional, Tuple

from .errors import ClosureViolation, NotAPartition, NotParabolic, TooLarge
from .linalg import inverse
from .roots import RootSystem

MAX_ENUMERATION_ROOTS = 16


def mask_of(rs: RootSystem, roots) -> int:
    """Bitmask of an iterable of root indices or root vectors."""
    m = 0
    for r in roots:
        m |= 1 << (rs.index[tuple(r)] if isinstance(r, tuple) else r)
    return m


def members(mask: int) -> List[int]:
    out, r = [], 0
    while mask:
        if mask & 1:
            out.append(r)
        mask >>= 1
        r += 1
    return out


def negate(rs: RootSystem, mask: int) -> int:
    return mask_of(rs, (rs.neg[r] for r in members(mask)))


def full_mask(rs: RootSystem) -> int:
    return (1 << len(rs)) - 1


def closure_witness(rs: RootSystem, mask: int) -> Optional[Tuple[int, int]]:
    """A pair (a, b) in the subset with a+b a root outside it, or None."""
    ms = members(mask)
    for a in ms:
        for b in ms:
            c = rs.sums.get((a, b))
            if c is not None and not mask >> c & 1:
                return a, b
    return None


def is_closed(rs: RootSystem, mask: int) -> bool:
    return closure_witness(rs, mask) is None


def is_parabolic(rs: RootSystem, mask: int) -> bool:
    return is_closed(rs, mask) and (mask | negate(rs, mask)) == full_mask(rs)


# -- bases and certificates --------------------------------------------------

@lru_cache(maxsize=None)
def bases(rs: RootSystem) -> Tuple[Tuple[int, ...], ...]:
    """All bases of simple roots (the Weyl orbit of the standard one), sorted."""
    start = tuple(sorted(rs.simple(i) for i in range(rs.rank)))
    seen = {start}
    frontier = [start]
    while frontier:
        nxt = []
        for base in frontier:
            for a in base:
                image = tuple(sorted(rs.index[rs.reflect(rs.roots[b], rs.roots[a])]
                                     for b in base))
                if image not in seen:
                    seen.add(image)
                    nxt.append(image)
        frontier = nxt
    return tuple(sorted(seen))


@lru_cache(maxsize=None)
def _base_inverse(rs: RootSystem, base: Tuple[int, ...]):
    cols = [rs.roots[b] for b in base]
    # columns are base roots; invert to get base coordinates of any vector
    return inverse([[Fraction(cols[k][i]) for k in range(len(base))] for i in range(rs.rank)])


def base_coordinates(rs: RootSystem, base: Tuple[int, ...], mu) -> Tuple[Fraction, ...]:
    inv = _base_inverse(rs, base)
    return tuple(sum((inv[k][i] * mu[i] for i in range(rs.rank)), Fraction(0))
                 for k in range(len(base)))


def certificate_mask(rs: RootSystem, base: Tuple[int, ...], T: FrozenSet[int]) -> int:
    eps = [k for k, b in enumerate(base) if b not in T]
    m = 0
    for r, v in enumerate(rs.roots):
        c = base_coordinates(rs, base, v)
        if all(c[k] >= 0 for k in eps):
            m |= 1 << r
    return m


def _subsets(base: Tuple[int, ...]):
    for bits in range(1 << len(base)):
        yield frozenset(b for k, b in enumerate(base) if bits >> k & 1)


@lru_cache(maxsize=None)
def _certificate_table(rs: RootSystem) -> Dict[int, Tuple[Tuple[int, ...], FrozenSet[int]]]:
    table: Dict[int, Tuple[Tuple[int, ...], FrozenSet[int]]] = {}
    for base in bases(rs):
        for T in _subsets(base):
            table.setdefault(certificate_mask(rs, base, T), (base, T))
    return table


@dataclass(frozen=True)
class ParabolicSet:
    rs: RootSystem
    mask: int
    base: Tuple[int, ...]
    T: FrozenSet[int]
    height_coeffs: Tuple[Fraction, ...] = field(compare=False, repr=False)

    @property
    def roots(self) -> List[int]:
        return members(self.mask)

    def levi_split(self):
        return levi_split(self)

    def height(self, mu) -> int:
        return height(self, mu)


def certify(rs: RootSystem, mask: int) -> ParabolicSet:
    """Attach the first (base, T) certificate reproducing ``mask``."""
    cert = _certificate_table(rs).get(mask)
    if cert is None:
        raise NotParabolic(f"subset {members(mask)} of {rs.name} is not parabolic")
    base, T = cert
    inv = _base_inverse(rs, base)
    coeffs = tuple(sum((inv[k][i] for k, b in enumerate(base) if b not in T), Fraction(0))
                   for i in range(rs.rank))
    return ParabolicSet(rs, mask, base, T, coeffs)


def from_certificate(rs: RootSystem, base, T) -> ParabolicSet:
    return certify(rs, certificate_mask(rs, tuple(base), frozenset(T)))


def borel(rs: RootSystem) -> ParabolicSet:
    return certify(rs, mask_of(rs, rs.positive))


def standard_parabolic(rs: RootSystem, T=()) -> ParabolicSet:
    """Parabolic from the standard base with T given as simple-root positions."""
    base = tuple(sorted(rs.simple(i) for i in range(rs.rank)))
    return from_certificate(rs, base, [rs.simple(i) for i in T])


def enumerate_parabolics(rs: RootSystem) -> List[ParabolicSet]:
    """Every parabolic subset, found by scanning all subsets of the roots.

    The scan is checked against the sets produced by all (base, T)
    certificates; a disagreement raises ``AssertionError``.
    """
    n = len(rs)
    if n > MAX_ENUMERATION_ROOTS:
        raise TooLarge(f"{rs.name} has {n} roots; exhaustive scan limited to "
                       f"{MAX_ENUMERATION_ROOTS}")
    scanned = [m for m in range(1 << n) if is_parabolic(rs, m)]
    certified = set(_certificate_table(rs))
    if set(scanned) != certified:
        raise AssertionError(f"{rs.name}: subset scan and certificates disagree")
    return [certify(rs, m) for m in scanned]


def certificate_masks(rs: RootSystem) -> FrozenSet[int]:
    return frozenset(_certificate_table(rs))


def levi_split(P: ParabolicSet) -> Tuple[int, int, int]:
    """(P & -P, P minus -P, -P minus P) as bitmasks."""
    neg = negate(P.rs, P.mask)
    return P.mask & neg, P.mask & ~neg, neg & ~P.mask


def height(P: ParabolicSet, mu) -> int:
    """Sum of the eps-coordinates of ``mu`` (simple-root coordinates) in P's base."""
    h = sum((c * x for c, x in zip(P.height_coeffs, mu)), Fraction(0))
    assert h.denominator == 1
    return int(h)


def lemma_violations(rs: RootSystem, phi_f: int, phi_i: int) -> List[str]:
    """Closure conclusions required of a locally finite / injective split.

    Returns human-readable descriptions; empty when all three hold:
    sums within phi_i stay in phi_i, sums within phi_f stay in phi_f, and no
    root is the sum of a two-sided finite root and a two-sided injective one.
    """
    out = []
    w = closure_witness(rs, phi_i)
    if w:
        out.append(f"injective roots not closed: {rs.roots[w[0]]} + {rs.roots[w[1]]}")
    w = closure_witness(rs, phi_f)
    if w:
        out.append(f"locally finite roots not closed: {rs.roots[w[0]]} + {rs.roots[w[1]]}")
    ff = phi_f & negate(rs, phi_f)
    ii = phi_i & negate(rs, phi_i)
    for a in members(ff):
        for b in members(ii):
            if (a, b) in rs.sums:
                out.append(f"two-sided finite {rs.roots[a]} + two-sided injective "
                           f"{rs.roots[b]} is a root")
    return out


def build_P(rs: RootSystem, phi_f: int, phi_i: int) -> ParabolicSet:
    full = full_mask(rs)
    if phi_f & phi_i or (phi_f | phi_i) != full:
        raise NotAPartition("locally finite and injective roots must partition the roots")
    for m in (phi_i, phi_f):
        w = closure_witness(rs, m)
        if w:
            raise ClosureViolation(
                f"{rs.roots[w[0]]} + {rs.roots[w[1]]} leaves its class", witness=w)
    ff = phi_f & negate(rs, phi_f)
    ii = phi_i & negate(rs, phi_i)
    for a in members(ff):
        for b in members(ii):
            if (a, b) in rs.sums:
                raise ClosureViolation(
                    f"{rs.roots[a]} + {rs.roots[b]} is a root", witness=(a, b))
    P = phi_f | negate(rs, phi_i)
    if not is_parabolic(rs, P):
        raise NotParabolic(f"{members(P)} is not parabolic")
    return certify(rs, P)


def parse_parabolic(rs: RootSystem, text: str) -> ParabolicSet:
    """``borel``, ``full`` or ``std:i,j`` (standard base, T at those positions)."""
    text = text.strip()
    if text == "borel":
        return borel(rs)
    if text == "full":
        return certify(rs, full_mask(rs))
    if text.startswith("std:"):
        body = text[4:]
        T = [int(x) for x in body.split(",")] if body else []
        if any(not 0 <= i < rs.rank for i in T):
            raise ValueError(f"simple root position out of range in {text!r}")
        return standard_parabolic(rs, T)
    raise ValueError(f"bad parabolic descriptor {text!r}")


def root_label(rs: RootSystem, r: int) -> str:
    return "(" + ",".join(str(c) for c in rs.roots[r]) + ")"

