"""Generalized Verma modules over g (x) S and their simple quotients.

M_P(W) is identified with U(N-) (x) W through ordered PBW monomials in the
lowering letters x_alpha (x) s_b (alpha in -P minus P, s_b a basis vector of S).
Any element of the current algebra acts on a monomial by commuting it to the
right: lowering letters are sorted in, Levi letters reach W and act there,
raising letters reach W and die.

The weight space L_P(W)_gamma of the simple quotient is the image of M_gamma
under the pairing with raising words of complementary height: a vector lies
in the maximal submodule meeting W trivially exactly when every such word
sends it to zero.  Its dimension is therefore the rank of an exact pairing
matrix.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations_with_replacement, product
from typing import Dict, List, Optional, Sequence, Tuple

from .coeff import CoeffAlgebra, character_at
from .errors import DegenerateLeviModule, HeightMismatch, NonDominant, TooLarge
from .linalg import coordinates, rank, row_basis
from .parabolic import ParabolicSet, levi_split, members
from .reps import ModuleRealization
from .roots import Key, RootSystem, chevalley_bracket

Letter = Tuple[Key, int]
Monomial = Tuple[Tuple[Letter, ...], int]
Vec = Dict[Monomial, Fraction]


def _axpy(out: Dict, vec: Dict, c=1):
    for k, v in vec.items():
        w = out.get(k, 0) + c * v
        if w:
            out[k] = w
        else:
            out.pop(k, None)


def torus_module(rs: RootSystem, S: CoeffAlgebra, weights):
    """One-dimensional h (x) S module; h_i (x) s acts by sum_p labels_p[i] * s(M_p).

    ``weights`` is a list of (labels, point) pairs, one per evaluation point.
    """
    from .evalmod import tensor_eval

    chi = [[Fraction(0)] * S.dim for _ in range(rs.rank)]
    for labels, pt in weights:
        if len(labels) != rs.rank:
            raise ValueError(f"expected {rs.rank} labels, got {len(labels)}")
        vals = character_at(S, pt).values
        for i in range(rs.rank):
            for b in range(S.dim):
                chi[i][b] += Fraction(labels[i]) * vals[b]
    return tensor_eval([], rs=rs, S=S, chi=chi, levi=0)


class InducedModule:
    """The data (P, S, W) with lazily computed weight spaces of M_P(W) and L_P(W).

    Weights gamma are given as integer offsets (simple-root coordinates) from
    the anchor weight of W.  The root sets may describe a subalgebra (a Levi
    subalgebra with its own Borel), in which case only its letters occur.
    """

    def __init__(self, rs: RootSystem, S: CoeffAlgebra, W, raising: Sequence[int],
                 levi: Sequence[int], lowering: Sequence[int], height: Sequence[Fraction],
                 parabolic: Optional[ParabolicSet] = None):
        self.rs, self.S, self.W, self.parabolic = rs, S, W, parabolic
        self.raising = tuple(sorted(raising))
        self.levi = tuple(sorted(levi))
        self.lowering = tuple(sorted(lowering))
        self.height_coeffs = tuple(Fraction(c) for c in height)
        kind: Dict[Key, str] = {("h", i): "levi" for i in range(rs.rank)}
        for name, roots in (("raise", self.raising), ("levi", self.levi),
                            ("lower", self.lowering)):
            for r in roots:
                kind["x", r] = name
        self._kind = kind
        for r in self.raising:
            if self.ht(rs.roots[r]) < 1:
                raise ValueError(f"raising root {rs.roots[r]} has non-positive height")
        for r in self.lowering:
            if self.ht(rs.roots[r]) > -1:
                raise ValueError(f"lowering root {rs.roots[r]} has non-negative height")
        for r in self.levi:
            if self.ht(rs.roots[r]) != 0:
                raise ValueError(f"Levi root {rs.roots[r]} has nonzero height")
        d = S.dim
        self.lowering_alphabet = tuple((("x", r), b) for r in self.lowering for b in range(d))
        self.raising_alphabet = tuple((("x", r), b) for r in self.raising for b in range(d))
        self.levi_alphabet = tuple((("h", i), b) for i in range(rs.rank) for b in range(d)) + \
            tuple((("x", r), b) for r in self.levi for b in range(d))

        if not W.finite:
            raise DegenerateLeviModule("the Levi module must be finite-dimensional")
        if W.S != S or W.rs != rs:
            raise ValueError("Levi module lives over a different algebra")
        missing = {("x", r) for r in self.levi} - set(W.keys)
        if missing:
            raise ValueError(f"Levi module does not realize {sorted(missing)}")
        self.w_offsets = tuple(W.offsets)
        if any(self.ht(o) for o in self.w_offsets):
            raise DegenerateLeviModule("Levi module weights are not in one coset of the Levi lattice")
        self._w_by_offset: Dict[tuple, List[int]] = {}
        for j, o in enumerate(self.w_offsets):
            self._w_by_offset.setdefault(o, []).append(j)
        # per-instance caches; entries are deterministic so concurrent fills agree
        self._act_memo: Dict[Tuple[Letter, Monomial], Vec] = {}
        self._word_memo: Dict[Tuple[tuple, Monomial], Vec] = {}
        self._bracket_memo: Dict[Tuple[Letter, Letter], Dict[Letter, Fraction]] = {}
        self._basis_memo: Dict[tuple, List[Monomial]] = {}

    # -- bookkeeping --------------------------------------------------------

    @property
    def anchor(self):
        return self.W.anchor

    def ht(self, mu) -> int:
        h = sum((c * x for c, x in zip(self.height_coeffs, mu)), Fraction(0))
        assert h.denominator == 1
        return int(h)

    def root_of(self, letter: Letter) -> Tuple[int, ...]:
        key = letter[0]
        if key[0] == "h":
            return (0,) * self.rs.rank
        return self.rs.roots[key[1]]

    def letter_height(self, letter: Letter) -> int:
        return self.ht(self.root_of(letter))

    def word_height(self, word) -> int:
        return sum(self.letter_height(x) for x in word)

    def monomial_offset(self, m: Monomial) -> Tuple[int, ...]:
        out = list(self.w_offsets[m[1]])
        for x in m[0]:
            out = [a + b for a, b in zip(out, self.root_of(x))]
        return tuple(out)

    # -- the current algebra acting on M_P(W) --------------------------------

    def bracket(self, a: Letter, b: Letter) -> Dict[Letter, Fraction]:
        got = self._bracket_memo.get((a, b))
        if got is None:
            prod_ = self.S.mult[a[1]][b[1]]
            got = {}
            for key, c in chevalley_bracket(self.rs, a[0], b[0]).items():
                for k, m in enumerate(prod_):
                    if m:
                        got[key, k] = got.get((key, k), 0) + c * m
            got = {k: v for k, v in got.items() if v}
            self._bracket_memo[a, b] = got
        return got

    def act(self, z: Letter, m: Monomial) -> Vec:
        """z . m as a combination of PBW monomials."""
        memo_key = (z, m)
        got = self._act_memo.get(memo_key)
        if got is not None:
            return got
        letters, j = m
        kind = self._kind[z[0]]
        if not letters:
            if kind == "lower":
                out = {((z,), j): Fraction(1)}
            elif kind == "raise":
                out = {}
            else:
                out = {((), i): Fraction(c) for i, c in self.W.act_letter(z, j).items()}
        elif kind == "lower" and z <= letters[0]:
            out = {((z,) + letters, j): Fraction(1)}
        else:
            # z y rest = y (z rest) + [z, y] rest
            y, rest = letters[0], (letters[1:], j)
            out = {}
            _axpy(out, self.act_vec(y, self.act(z, rest)))
            for w, c in self.bracket(z, y).items():
                _axpy(out, self.act(w, rest), c)
        self._act_memo[memo_key] = out
        return out

    def act_vec(self, z: Letter, v: Vec) -> Vec:
        out: Vec = {}
        for m, c in v.items():
            _axpy(out, self.act(z, m), c)
        return out

    def apply_word(self, word: Tuple[Letter, ...], m: Monomial) -> Vec:
        """word[0] word[1] ... word[-1] . m (the last letter acts first)."""
        if not word:
            return {m: Fraction(1)}
        key = (word, m)
        got = self._word_memo.get(key)
        if got is None:
            got = self.act_vec(word[0], self.apply_word(word[1:], m))
            self._word_memo[key] = got
        return got

    # -- weight spaces -------------------------------------------------------

    def _partitions(self, delta: Tuple[int, ...], start: int = 0):
        """Multisets of lowering roots (as (root, count) runs) summing to delta."""
        if not any(delta):
            yield ()
            return
        h = self.ht(delta)
        if h >= 0 or start >= len(self.lowering):
            return
        r = self.lowering[start]
        root = self.rs.roots[r]
        step = -self.ht(root)
        count = 0
        rem = delta
        while count * step <= -h:
            for tail in self._partitions(rem, start + 1):
                yield (((r, count),) if count else ()) + tail
            count += 1
            rem = tuple(a - b for a, b in zip(rem, root))

    def verma_weight_basis(self, gamma) -> List[Monomial]:
        gamma = tuple(gamma)
        got = self._basis_memo.get(gamma)
        if got is not None:
            return got
        d = self.S.dim
        out = []
        for j, o in enumerate(self.w_offsets):
            delta = tuple(a - b for a, b in zip(gamma, o))
            for parts in self._partitions(delta):
                choices = [[tuple((("x", r), b) for b in bs)
                            for bs in combinations_with_replacement(range(d), c)]
                           for r, c in parts]
                for pick in product(*choices):
                    letters = tuple(x for run in pick for x in run)
                    out.append((letters, j))
        out.sort()
        self._basis_memo[gamma] = out
        return out

    def dim_verma(self, gamma) -> int:
        return len(self.verma_weight_basis(gamma))

    def height_of(self, gamma) -> int:
        return self.ht(gamma)

    def raising_words(self, gamma, landing_only: bool = False) -> List[Tuple[Letter, ...]]:
        """Sequences of raising letters of total height -ht(gamma).

        With ``landing_only`` only words whose root sum moves gamma onto a
        weight of W are kept; the others pair to zero identically.
        """
        gamma = tuple(gamma)
        h = self.ht(gamma)
        if h > 0:
            raise HeightMismatch(f"weight {gamma} has positive height {h}")
        alphabet = [(x, self.letter_height(x), self.root_of(x)) for x in self.raising_alphabet]
        words: List[Tuple[Letter, ...]] = []

        def rec(prefix, rem, pos):
            if rem == 0:
                if not landing_only or pos in self._w_by_offset:
                    words.append(tuple(prefix))
                return
            for x, hx, root in alphabet:
                if hx <= rem:
                    prefix.append(x)
                    rec(prefix, rem - hx, tuple(a + b for a, b in zip(pos, root)))
                    prefix.pop()

        rec([], -h, gamma)
        return words

    def straighten_apply(self, word, m: Monomial) -> Tuple[Fraction, ...]:
        """word . m, which lies in the height-zero part W, in W's basis."""
        word = tuple(word)
        if self.word_height(word) + self.ht(self.monomial_offset(m)) != 0:
            raise HeightMismatch("word and monomial heights do not cancel")
        out = [Fraction(0)] * len(self.w_offsets)
        for (letters, j), c in self.apply_word(word, m).items():
            assert not letters, "height-zero component must lie in W"
            out[j] += c
        return tuple(out)

    def pairing_rows(self, gamma, words=None) -> List[Dict[int, Fraction]]:
        """Rows indexed by verma_weight_basis(gamma), columns by (word, W coordinate)."""
        gamma = tuple(gamma)
        if words is None:
            words = self.raising_words(gamma, landing_only=True)
        n = len(self.w_offsets)
        rows = []
        for m in self.verma_weight_basis(gamma):
            row: Dict[int, Fraction] = {}
            for w_i, word in enumerate(words):
                for (letters, j), c in self.apply_word(word, m).items():
                    assert not letters
                    row[w_i * n + j] = row.get(w_i * n + j, 0) + c
            rows.append({k: v for k, v in row.items() if v})
        return rows

    def simple_quotient_mult(self, gamma, words=None) -> int:
        """dim L_P(W)_gamma, the rank of the raising-word pairing matrix."""
        gamma = tuple(gamma)
        if self.ht(gamma) > 0:
            raise HeightMismatch(f"weight {gamma} has positive height")
        return rank(self.pairing_rows(gamma, words))

    def n_plus_invariants_dim(self, gamma) -> int:
        """Dimension of the vectors in L_gamma killed by every raising letter."""
        gamma = tuple(gamma)
        if self.ht(gamma) >= 0:
            raise HeightMismatch("N+-invariants are only tested at negative height")
        rows = self.pairing_rows(gamma)
        basis = [self.verma_weight_basis(gamma)[i] for i in row_basis(rows)]
        if not basis:
            return 0
        stacked = [dict() for _ in basis]
        col0 = 0
        for x in self.raising_alphabet:
            target = tuple(a + b for a, b in zip(gamma, self.root_of(x)))
            if self.ht(target) > 0:
                continue
            trows = self.pairing_rows(target)
            index = {m: i for i, m in enumerate(self.verma_weight_basis(target))}
            width = 1 + max((k for r in trows for k in r), default=-1)
            for out, m in zip(stacked, basis):
                img: Dict[int, Fraction] = {}
                for m2, c in self.act(x, m).items():
                    _axpy(img, trows[index[m2]], c)
                for k, v in img.items():
                    out[col0 + k] = v
            col0 += width
        return len(basis) - rank(stacked)


def induced_module(P: ParabolicSet, S: CoeffAlgebra, W) -> InducedModule:
    levi, raise_, lower = levi_split(P)
    return InducedModule(P.rs, S, W, members(raise_), members(levi), members(lower),
                         P.height_coeffs, parabolic=P)


# -- explicit realization of the simple quotient ----------------------------

@dataclass(frozen=True)
class QuotientRealization:
    anchor: tuple
    offsets: Tuple[Tuple[int, ...], ...]
    labels: Tuple[Monomial, ...]
    action: Dict[Letter, Dict[int, Dict[int, Fraction]]]
    dims: Dict[Tuple[int, ...], int]


def simple_quotient_realization(IM: InducedModule, max_depth: int = 50) -> QuotientRealization:
    """Matrices for every letter on a weight basis of a finite-dimensional L_P(W).

    Weight spaces are built level by level in height: at level k a PBW vector
    is zero in L exactly when each single raising letter maps it to zero in
    the (already known) higher levels.  Basis vectors are the first independent
    PBW monomials, so coordinates are canonical.
    """
    coords: Dict[tuple, Dict[Monomial, Tuple[Fraction, ...]]] = {}
    bases: Dict[tuple, List[Monomial]] = {}
    level_nonzero: Dict[int, List[tuple]] = {0: sorted(set(IM.w_offsets))}
    for o in level_nonzero[0]:
        monos = IM.verma_weight_basis(o)
        bases[o] = monos
        coords[o] = {m: tuple(Fraction(int(i == k)) for i in range(len(monos)))
                     for k, m in enumerate(monos)}
    lower_steps = [(IM.rs.roots[r], -IM.ht(IM.rs.roots[r])) for r in IM.lowering]
    reach = max((step for _, step in lower_steps), default=1)
    k = 1
    while True:
        # every vector at level k is a lowering letter applied to a shallower level,
        # so once `reach` consecutive levels vanish nothing deeper survives
        if all(not level_nonzero.get(k - i) for i in range(1, reach + 1)):
            break
        cands = set()
        for root, step in lower_steps:
            for o in level_nonzero.get(k - step, ()):
                cands.add(tuple(a + b for a, b in zip(o, root)))
        level_nonzero[k] = []
        for gamma in sorted(cands):
            monos = IM.verma_weight_basis(gamma)
            blocks = []
            col = 0
            for x in IM.raising_alphabet:
                target = tuple(a + b for a, b in zip(gamma, IM.root_of(x)))
                tc = coords.get(target)
                if tc is None:
                    continue
                width = len(bases[target])
                blocks.append((x, tc, col))
                col += width
            rows = []
            for m in monos:
                row: Dict[int, Fraction] = {}
                for x, tc, c0 in blocks:
                    for m2, c in IM.act(x, m).items():
                        for i, v in enumerate(tc[m2]):
                            if v:
                                row[c0 + i] = row.get(c0 + i, 0) + c * v
                rows.append({a: b for a, b in row.items() if b})
            keep = row_basis(rows)
            if not keep:
                continue
            basis_rows = [rows[i] for i in keep]
            cs = coordinates(basis_rows, rows)
            bases[gamma] = [monos[i] for i in keep]
            coords[gamma] = {m: tuple(c) for m, c in zip(monos, cs)}
            level_nonzero[k].append(gamma)
        if level_nonzero[k] and k > max_depth:
            raise TooLarge(f"simple quotient still nonzero below depth {max_depth}")
        k += 1

    order = sorted(bases, key=lambda o: (-IM.ht(o), tuple(-x for x in o)))
    start: Dict[tuple, int] = {}
    offsets, labels = [], []
    for o in order:
        start[o] = len(offsets)
        for m in bases[o]:
            offsets.append(o)
            labels.append(m)
    letters = IM.levi_alphabet + IM.raising_alphabet + IM.lowering_alphabet
    action: Dict[Letter, Dict[int, Dict[int, Fraction]]] = {}
    for z in letters:
        mat: Dict[int, Dict[int, Fraction]] = {}
        zr = IM.root_of(z)
        for o in order:
            target = tuple(a + b for a, b in zip(o, zr))
            tc = coords.get(target)
            for i, m in enumerate(bases[o]):
                v = IM.act(z, m)
                if tc is None:
                    assert IM.ht(target) != 0 or not v or target not in bases, "lost vector"
                    continue
                col: Dict[int, Fraction] = {}
                for m2, c in v.items():
                    for t, x in enumerate(tc[m2]):
                        if x:
                            col[start[target] + t] = col.get(start[target] + t, 0) + c * x
                col = {a: b for a, b in col.items() if b}
                if col:
                    mat[start[o] + i] = col
        action[z] = mat
    dims = {o: len(bases[o]) for o in order}
    return QuotientRealization(IM.anchor, tuple(offsets), tuple(labels), action, dims)


def levi_highest_weight_module(P: ParabolicSet, labels) -> ModuleRealization:
    """The simple l-module with highest weight ``labels`` for the Levi of P.

    Highest refers to the Levi roots that are positive in the standard
    ordering.  ``labels`` are Dynkin labels on the standard simple coroots;
    they must be dominant integral on the positive Levi coroots and are
    otherwise arbitrary.
    """
    from .coeff import make_points_algebra

    rs = P.rs
    labels = tuple(Fraction(x) for x in labels)
    if len(labels) != rs.rank:
        raise ValueError(f"expected {rs.rank} labels")
    levi, _, _ = levi_split(P)
    pos = [r for r in members(levi) if r in set(rs.positive)]
    neg = [rs.neg[r] for r in pos]

    def pair(r):
        return sum((c * l for c, l in zip(rs.coroot(r), labels)), Fraction(0))

    for r in pos:
        val = pair(r)
        if val.denominator != 1 or val < 0:
            raise NonDominant(f"labels {labels} are not dominant integral on the Levi root "
                              f"{rs.roots[r]}")
    S0 = make_points_algebra([0])
    W = torus_module(rs, S0, [(labels, 0)])
    IM = InducedModule(rs, S0, W, pos, (), sorted(neg), (Fraction(1),) * rs.rank)
    top = max((sum(rs.roots[r]) for r in pos), default=1)
    depth = top * sum(pair(r) for r in pos)
    real = simple_quotient_realization(IM, max_depth=int(depth) + 1)
    action = {z[0]: mat for z, mat in real.action.items()}
    return ModuleRealization(rs, ("levi-hw", labels, P.mask), real.anchor, real.offsets,
                             action, {}, None, real.labels)


# -- function-style entry points ------------------------------------------------

def verma_weight_basis(IM: InducedModule, gamma) -> List[Monomial]:
    return IM.verma_weight_basis(gamma)


def raising_words(IM: InducedModule, gamma) -> List[Tuple[Letter, ...]]:
    return IM.raising_words(gamma)


def straighten_apply(IM: InducedModule, word, m: Monomial) -> Tuple[Fraction, ...]:
    return IM.straighten_apply(word, m)


def simple_quotient_mult(IM: InducedModule, gamma) -> int:
    return IM.simple_quotient_mult(gamma)


def n_plus_invariants_dim(IM: InducedModule, gamma) -> int:
    return IM.n_plus_invariants_dim(gamma)
