"""Locally finite versus injective roots, and the resulting trichotomy.

A root alpha is locally finite on a module when x_alpha acts locally
nilpotently and injective otherwise.  For tensor products of evaluation
modules this is read off the factors: x_alpha acts on the tensor product as
a commuting sum of its actions on the factors, so it is injective as soon as
one summand is injective (if (A + N) v = 0 with N locally nilpotent then
A^k v = (-N)^k v = 0 for large k).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .errors import NotAPartition, NotExact, OutOfWindow, UntaggedFactor, WindowTooSmall
from .evalmod import TensorModule
from .parabolic import ParabolicSet, build_P, full_mask, lemma_violations, levi_split
from .reps import WeightDiagram
from .roots import RootSystem


@dataclass(frozen=True)
class RootClassification:
    """phi_f / phi_i as bitmasks; ``provenance`` is ``"exact"`` or ``("windowed", bound)``."""

    rs: RootSystem
    phi_f: int
    phi_i: int
    provenance: object = "exact"

    def __post_init__(self):
        if self.phi_f & self.phi_i or (self.phi_f | self.phi_i) != full_mask(self.rs):
            raise NotAPartition("phi_f and phi_i must partition the roots")

    @property
    def exact(self) -> bool:
        return self.provenance == "exact"

    def violations(self):
        return lemma_violations(self.rs, self.phi_f, self.phi_i)

    def parabolic(self) -> ParabolicSet:
        return build_P(self.rs, self.phi_f, self.phi_i)


@dataclass(frozen=True)
class Trichotomy:
    case: str  # "finite", "dense" or "parabolic"
    P: Optional[ParabolicSet] = None

    def __str__(self):
        return self.case


def _injective_roots(T: TensorModule) -> int:
    rs = T.rs
    inj = 0
    for F in T.factors:
        tag = F.base.tag
        if not tag:
            raise UntaggedFactor("cannot classify a factor without a structural tag")
        if tag[0] in ("hw", "levi-hw"):
            continue
        if tag[0] == "dense":
            # both root vectors of the dense sl2 family act injectively
            inj |= full_mask(rs)
            continue
        raise UntaggedFactor(f"unknown factor kind {tag[0]!r}")
    return inj


def classify_exact(T: TensorModule) -> RootClassification:
    inj = _injective_roots(T)
    return RootClassification(T.rs, full_mask(T.rs) & ~inj, inj, "exact")


def classify_induced(P: ParabolicSet) -> RootClassification:
    """Classification of L_P(W) declared from induction data.

    Assumes W is cuspidal (every Levi root injective) and every lowering root
    acts freely, the situation in which a module is recovered as L_P(W) from
    its own root classification.  The raising roots are always locally finite
    because they raise the parabolic height, which is bounded on L_P(W).
    """
    levi, raise_, lower = levi_split(P)
    return RootClassification(P.rs, raise_, levi | lower, "exact")


def classify_window(diagram: WeightDiagram, base, bound: int) -> RootClassification:
    """Heuristic split from multiplicities along root strings through ``base``.

    alpha is called locally finite when the weights base + n alpha are absent
    for every n in (bound/2, bound], injective when all are present.  Anything
    else, or a string leaving the computed window, raises WindowTooSmall.
    """
    if bound < 1:
        raise WindowTooSmall("the window bound must be positive")
    base = tuple(base)
    rs = diagram.rs
    if rs is None:
        raise ValueError("diagram carries no root system")
    if not diagram.mult(base):
        raise ValueError(f"{base} is not a weight of the diagram")
    phi_f = phi_i = 0
    for r, root in enumerate(rs.roots):
        seen = set()
        for n in range(bound // 2 + 1, bound + 1):
            gamma = tuple(b + n * a for b, a in zip(base, root))
            try:
                seen.add(bool(diagram.mult(gamma)))
            except OutOfWindow as exc:
                raise WindowTooSmall(f"string along {root} leaves the window at n = {n}") from exc
        if seen == {False}:
            phi_f |= 1 << r
        elif seen == {True}:
            phi_i |= 1 << r
        else:
            raise WindowTooSmall(f"string along {root} is still changing at the boundary")
    return RootClassification(rs, phi_f, phi_i, ("windowed", bound))


def trichotomy(c: RootClassification) -> Trichotomy:
    if not c.exact:
        raise NotExact("the trichotomy is only reported for exact classifications")
    full = full_mask(c.rs)
    if c.phi_f == full:
        return Trichotomy("finite")
    if c.phi_i == full:
        return Trichotomy("dense")
    P = c.parabolic()
    assert P.mask != full, "a mixed classification must give a proper parabolic"
    return Trichotomy("parabolic", P)


def describe(c: RootClassification):
    """(root, class) rows in canonical root order."""
    return [(c.rs.roots[r], "f" if c.phi_f >> r & 1 else "i") for r in range(len(c.rs))]

