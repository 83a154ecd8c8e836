"""Finite root systems and Chevalley structure constants.

Roots are integer vectors in simple-root coordinates.  The invariant form is
kept as an exact rational Gram matrix on the simple roots, so every pairing,
reflection and Dynkin label stays in :class:`fractions.Fraction`.

Structure constants are only available in type A, where they come from the
matrix-unit realization of sl(n+1): the root e_i - e_j carries x = E_ij and
the simple coroot h_k is E_kk - E_{k+1,k+1}.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Tuple

from .errors import StructureConstantsUnavailable, UnsupportedType

Vector = Tuple[int, ...]
Key = Tuple[str, int]  # ('h', i) simple coroot, ('x', r) root vector

SUPPORTED = (("A", 1), ("A", 2), ("A", 3), ("A", 4), ("B", 2), ("G", 2))
EXPECTED_COUNTS = {("A", 1): 2, ("A", 2): 6, ("A", 3): 12, ("A", 4): 20,
                   ("B", 2): 8, ("G", 2): 12}


def _gram(series: str, rank: int):
    F = Fraction
    if series == "A":
        return tuple(tuple(F(2) if i == j else F(-1) if abs(i - j) == 1 else F(0)
                           for j in range(rank)) for i in range(rank))
    if series == "B":
        # alpha_1 long, alpha_2 short
        return ((F(2), F(-1)), (F(-1), F(1)))
    # G2: alpha_1 short, alpha_2 long
    return ((F(2), F(-3)), (F(-3), F(6)))


@dataclass(frozen=True)
class RootSystem:
    series: str
    rank: int
    gram: Tuple[Tuple[Fraction, ...], ...]
    roots: Tuple[Vector, ...] = field(compare=False)
    cartan: Tuple[Tuple[int, ...], ...] = field(compare=False, repr=False)
    index: Dict[Vector, int] = field(compare=False, repr=False)
    neg: Tuple[int, ...] = field(compare=False, repr=False)
    sums: Dict[Tuple[int, int], int] = field(compare=False, repr=False)

    @property
    def name(self) -> str:
        return f"{self.series}{self.rank}"

    def __len__(self):
        return len(self.roots)

    def pairing(self, u, v) -> Fraction:
        """Invariant form of two vectors in simple-root coordinates."""
        g = self.gram
        return sum((Fraction(u[i]) * g[i][j] * v[j]
                    for i in range(self.rank) for j in range(self.rank)), Fraction(0))

    def coroot_pairing(self, beta, alpha) -> Fraction:
        """<beta, alpha^vee> = 2 (beta, alpha) / (alpha, alpha)."""
        return 2 * self.pairing(beta, alpha) / self.pairing(alpha, alpha)

    def reflect(self, beta, alpha) -> Vector:
        c = self.coroot_pairing(beta, alpha)
        assert c.denominator == 1
        return tuple(int(b - c * a) for b, a in zip(beta, alpha))

    def simple(self, i: int) -> int:
        return self.index[tuple(int(k == i) for k in range(self.rank))]

    @property
    def positive(self) -> Tuple[int, ...]:
        return tuple(r for r, v in enumerate(self.roots) if sum(v) > 0)

    @property
    def negative(self) -> Tuple[int, ...]:
        return tuple(r for r, v in enumerate(self.roots) if sum(v) < 0)

    def coroot(self, r: int) -> Vector:
        """Coordinates of the coroot of root ``r`` in the simple coroots."""
        alpha = self.roots[r]
        aa = self.pairing(alpha, alpha)
        out = []
        for j, c in enumerate(alpha):
            x = c * self.gram[j][j] / aa
            assert x.denominator == 1
            out.append(int(x))
        return tuple(out)

    def labels(self, v) -> Tuple[Fraction, ...]:
        """Dynkin labels <v, alpha_i^vee> of a vector given in root coordinates."""
        return tuple(sum((Fraction(v[j]) * self.cartan[j][i] for j in range(self.rank)),
                         Fraction(0)) for i in range(self.rank))

    def to_root_coords(self, labels) -> Tuple[Fraction, ...]:
        """Inverse of :meth:`labels` (rational root coordinates of a weight)."""
        from .linalg import inverse

        inv = inverse([[Fraction(self.cartan[j][i]) for j in range(self.rank)]
                       for i in range(self.rank)])
        return tuple(sum((inv[j][i] * Fraction(labels[i]) for i in range(self.rank)),
                         Fraction(0)) for j in range(self.rank))


def build_root_system(series: str, rank: int) -> RootSystem:
    series = series.upper()
    if (series, rank) not in SUPPORTED:
        raise UnsupportedType(f"unsupported root system {series}{rank}")
    gram = _gram(series, rank)
    cartan = tuple(tuple(int(2 * gram[i][j] / gram[j][j]) for j in range(rank))
                   for i in range(rank))
    simple = [tuple(int(k == i) for k in range(rank)) for i in range(rank)]

    def refl(beta, i):
        c = sum(beta[j] * cartan[j][i] for j in range(rank))
        return tuple(b - (c if k == i else 0) for k, b in enumerate(beta))

    found = set(simple)
    frontier = list(simple)
    while frontier:
        nxt = []
        for beta in frontier:
            for i in range(rank):
                gamma = refl(beta, i)
                if gamma not in found:
                    found.add(gamma)
                    nxt.append(gamma)
        frontier = nxt
    roots = tuple(sorted(found, key=lambda v: (sum(v), v)))
    index = {v: r for r, v in enumerate(roots)}
    neg = tuple(index[tuple(-c for c in v)] for v in roots)
    sums = {}
    for i, u in enumerate(roots):
        for j, v in enumerate(roots):
            w = tuple(a + b for a, b in zip(u, v))
            if w in index:
                sums[i, j] = index[w]
    return RootSystem(series, rank, gram, roots, cartan, index, neg, sums)


def parse_type(text: str) -> RootSystem:
    text = text.strip()
    if len(text) < 2 or not text[1:].isdigit():
        raise ValueError(f"bad root system name {text!r}")
    return build_root_system(text[0], int(text[1:]))


# -- Chevalley basis (type A only) -------------------------------------------

def basis_keys(rs: RootSystem) -> Tuple[Key, ...]:
    return tuple(("h", i) for i in range(rs.rank)) + tuple(("x", r) for r in range(len(rs)))


def _require_type_a(rs: RootSystem):
    if rs.series != "A":
        raise StructureConstantsUnavailable(
            f"{rs.name}: structure constants are only realized for type A")


def _matrix_unit(rs: RootSystem, r: int) -> Tuple[int, int]:
    v = rs.roots[r]
    support = [k for k, c in enumerate(v) if c]
    i, j = support[0], support[-1] + 1
    return (i, j) if sum(v) > 0 else (j, i)


def _to_matrix(rs: RootSystem, key: Key) -> Dict[Tuple[int, int], int]:
    kind, n = key
    if kind == "h":
        return {(n, n): 1, (n + 1, n + 1): -1}
    return {_matrix_unit(rs, n): 1}


def _from_matrix(rs: RootSystem, m: Dict[Tuple[int, int], int]) -> Dict[Key, int]:
    out: Dict[Key, int] = {}
    unit_to_root = {_matrix_unit(rs, r): r for r in range(len(rs))}
    diag = [0] * (rs.rank + 1)
    for (a, b), c in m.items():
        if not c:
            continue
        if a == b:
            diag[a] += c
        else:
            out[("x", unit_to_root[a, b])] = c
    assert sum(diag) == 0
    acc = 0
    for k in range(rs.rank):
        acc += diag[k]
        if acc:
            out[("h", k)] = acc
    return out


@lru_cache(maxsize=None)
def _bracket_cached(rs: RootSystem, u: Key, v: Key) -> Tuple[Tuple[Key, int], ...]:
    a, b = _to_matrix(rs, u), _to_matrix(rs, v)
    prod: Dict[Tuple[int, int], int] = {}
    for (i, j), x in a.items():
        for (k, l), y in b.items():
            if j == k:
                prod[i, l] = prod.get((i, l), 0) + x * y
            if l == i:
                prod[k, j] = prod.get((k, j), 0) - x * y
    return tuple(sorted(_from_matrix(rs, prod).items()))


def chevalley_bracket(rs: RootSystem, u: Key, v: Key) -> Dict[Key, int]:
    """[u, v] for two Chevalley basis elements, as {basis key: integer}."""
    _require_type_a(rs)
    return dict(_bracket_cached(rs, u, v))


def h_of_root(rs: RootSystem, r: int) -> Dict[Key, int]:
    """h_alpha for root index ``r`` written in the simple coroots."""
    return {("h", i): c for i, c in enumerate(rs.coroot(r)) if c}


def bracket(rs: RootSystem, a: Dict[Key, int], b: Dict[Key, int]) -> Dict[Key, int]:
    """Bilinear extension of :func:`chevalley_bracket`."""
    out: Dict[Key, int] = {}
    for u, x in a.items():
        for v, y in b.items():
            for w, z in chevalley_bracket(rs, u, v).items():
                out[w] = out.get(w, 0) + x * y * z
    return {k: c for k, c in out.items() if c}


def root_string(rs: RootSystem, beta: int, alpha: int) -> Tuple[int, ...]:
    """Integers k (in a generous range) with beta + k*alpha a root."""
    b, a = rs.roots[beta], rs.roots[alpha]
    span = 4  # strings have length at most 4 in every supported type
    return tuple(k for k in range(-span, span + 1)
                 if tuple(x + k * y for x, y in zip(b, a)) in rs.index)
