"""The braided tensor algebra T(V) in the non-strict category.

Words are stored in the canonical left-nested bracketing
(((v1 (x) v2) (x) v3) ...); every other bracketing exists only transiently,
with its coherence scalar made explicit.  A word is a tuple of letters
(slot, basis_index) over an ordered list of modules (the slots); all letters
are homogeneous, so every associator move acts by a single Phi value.

Conventions:
  * assoc move (u (x) v) (x) w -> u (x) (v (x) w) multiplies by
    Phi(deg u, deg v, deg w)^-1, the inverse direction by Phi(...).
  * braiding c(u (x) v) = (deg u |> v) (x) u.
  * the coproduct is the unique algebra map T(V) -> T(V) (x) T(V) with
    Delta(v) = v (x) 1 + 1 (x) v, computed by structural recursion through
    the braided product on pairs; the shuffle expansion lives only in the
    test oracles.
"""

from __future__ import annotations

from .cyclo import CycScalar
from .errors import ValidationError
from .ydcat import ModuleTuple, YDModule, tensor_action_scalar

_ONE = CycScalar.one()

Word = tuple  # tuple[(slot, basis_index), ...]


class GradedVector:
    """Finitely supported map Word -> CycScalar; no zero coefficients stored."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms: dict = {}
        if terms:
            for w, c in (terms.items() if isinstance(terms, dict) else terms):
                self.add_term(w, c)

    @classmethod
    def from_word(cls, word: Word, coeff=_ONE):
        v = cls()
        v.add_term(tuple(word), coeff)
        return v

    def add_term(self, word: Word, coeff):
        if isinstance(coeff, int):
            coeff = CycScalar.from_rational(coeff)
        if coeff.is_zero():
            return
        cur = self.terms.get(word)
        if cur is None:
            self.terms[word] = coeff
        else:
            s = cur + coeff
            if s.is_zero():
                del self.terms[word]
            else:
                self.terms[word] = s

    def items(self):
        return self.terms.items()

    def is_zero(self):
        return not self.terms

    def scale(self, c) -> "GradedVector":
        out = GradedVector()
        for w, x in self.terms.items():
            out.add_term(w, x * c)
        return out

    def __add__(self, other):
        out = GradedVector(dict(self.terms))
        for w, c in other.terms.items():
            out.add_term(w, c)
        return out

    def __sub__(self, other):
        out = GradedVector(dict(self.terms))
        for w, c in other.terms.items():
            out.add_term(w, -c)
        return out

    def __neg__(self):
        return self.scale(CycScalar.from_rational(-1))

    def __eq__(self, other):
        if not isinstance(other, GradedVector):
            return NotImplemented
        if set(self.terms) != set(other.terms):
            return False
        return all(c == other.terms[w] for w, c in self.terms.items())

    def by_length(self) -> dict:
        """Homogeneous components keyed by word length."""
        out: dict = {}
        for w, c in self.terms.items():
            out.setdefault(len(w), GradedVector()).add_term(w, c)
        return out

    def by_degree(self, ctx: "WordAlgebra") -> dict:
        """Homogeneous components keyed by G-degree (needs the slot context)."""
        out: dict = {}
        for w, c in self.terms.items():
            out.setdefault(ctx.word_degree(w), GradedVector()).add_term(w, c)
        return out

    def __repr__(self):
        return f"GradedVector({self.terms!r})"


class PairVector:
    """Finitely supported map (Word, Word) -> CycScalar, for Delta components."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms: dict = dict(terms or {})

    def add_term(self, pair, coeff):
        if coeff.is_zero():
            return
        cur = self.terms.get(pair)
        if cur is None:
            self.terms[pair] = coeff
        else:
            s = cur + coeff
            if s.is_zero():
                del self.terms[pair]
            else:
                self.terms[pair] = s

    def items(self):
        return self.terms.items()

    def is_zero(self):
        return not self.terms

    def __add__(self, other):
        out = PairVector(self.terms)
        for p, c in other.terms.items():
            out.add_term(p, c)
        return out


class WordAlgebra:
    """Tensor-algebra arithmetic over an ordered list of module slots.

    Caches are per-instance; all methods are pure with respect to the
    immutable modules, so instances may be shared read-only.
    """

    def __init__(self, modules):
        if isinstance(modules, ModuleTuple):
            modules = list(modules.entries)
        elif isinstance(modules, YDModule):
            modules = [modules]
        if not modules:
            raise ValidationError("need at least one module slot")
        self.modules = list(modules)
        self.group = modules[0].group
        self.cocycle = modules[0].cocycle
        for m in modules:
            if m.group is not self.group or m.cocycle is not self.cocycle:
                raise ValidationError("slots share group and cocycle")
        self.theta = len(self.modules)
        self.letters = [(s, i) for s, m in enumerate(self.modules)
                        for i in range(m.dim)]
        self._deg_cache: dict = {}
        self._act_cache: dict = {}
        self._delta_cache: dict = {}
        self._split_cache: dict = {}

    # ---- degrees -------------------------------------------------------

    def letter_degree(self, letter) -> int:
        slot, idx = letter
        return self.modules[slot].degrees[idx]

    def word_degree(self, word: Word) -> int:
        d = self._deg_cache.get(word)
        if d is None:
            d = self.group.identity
            for letter in word:
                d = self.group.mul(d, self.letter_degree(letter))
            self._deg_cache[word] = d
        return d

    def multidegree(self, word: Word) -> tuple:
        counts = [0] * self.theta
        for slot, _ in word:
            counts[slot] += 1
        return tuple(counts)

    def word_str(self, word: Word) -> str:
        if not word:
            return "1"
        return "*".join(self.modules[s].basis_names[i] for s, i in word)

    # ---- coherence -----------------------------------------------------

    def flatten_scalar(self, u: Word, v: Word) -> CycScalar:
        """Scalar for rebracketing (leftcomb(u) (x) leftcomb(v)) to leftcomb(u+v)."""
        if not u or len(v) <= 1:
            return _ONE
        s = _ONE
        du = self.word_degree(u)
        degs = [self.letter_degree(l) for l in v]
        # Moves peel the last letter of the right factor; the accumulated
        # product is Phi(deg u, deg v[:j], deg v[j]) over j = 1..len(v)-1.
        for j in range(1, len(v)):
            s = s * self.cocycle.value(du, self.word_degree(v[:j]), degs[j])
        return s

    def tree_to_left_scalar(self, tree, leaf_degrees) -> tuple[CycScalar, int, int]:
        """Coherence scalar from `tree` to the left comb, with subtree degree.

        Trees are nested pairs over leaf positions 0..n-1 in order; a leaf is
        an int.  Returns (scalar, first_leaf, leaf_count).
        """
        if isinstance(tree, int):
            return _ONE, tree, 1
        left, right = tree
        sl, l0, ln = self.tree_to_left_scalar(left, leaf_degrees)
        sr, r0, rn = self.tree_to_left_scalar(right, leaf_degrees)
        if r0 != l0 + ln:
            raise ValidationError("tree leaves must appear in left-to-right order")
        g = self.group
        s = sl * sr
        du = _prod_degree(self.group, leaf_degrees, l0, ln)
        for j in range(1, rn):
            prefix = _prod_degree(g, leaf_degrees, r0, j)
            s = s * self.cocycle.value(du, prefix, leaf_degrees[r0 + j])
        return s, l0, ln + rn

    def rebracket_scalar(self, degrees, tree_from, tree_to) -> CycScalar:
        """Scalar of the unique coherence map tree_from -> tree_to.

        `degrees` lists the leaf degrees in order; both trees must cover
        leaves 0..len(degrees)-1.  Mac Lane coherence makes the value
        independent of the move path; this routes through the left comb.
        """
        degrees = list(degrees)
        sf, _, nf = self.tree_to_left_scalar(tree_from, degrees)
        st, _, nt = self.tree_to_left_scalar(tree_to, degrees)
        if nf != len(degrees) or nt != len(degrees):
            raise ValidationError("trees do not match the degree sequence")
        return sf / st

    # ---- action and braiding -------------------------------------------

    def act(self, g: int, word: Word) -> GradedVector:
        """g |> word via the iterated tensor-product action."""
        key = (g, word)
        cached = self._act_cache.get(key)
        if cached is not None:
            return cached
        if not word:
            out = GradedVector.from_word(())
        elif len(word) == 1:
            slot, idx = word[0]
            out = GradedVector()
            for i, c in self.modules[slot].act_column(g, idx):
                out.add_term(((slot, i),), c)
        else:
            prefix, last = word[:-1], word[-1:]
            s = tensor_action_scalar(self.cocycle, g,
                                     self.word_degree(prefix),
                                     self.word_degree(last))
            left = self.act(g, prefix)
            right = self.act(g, last)
            out = GradedVector()
            for wl, cl in left.items():
                for wr, cr in right.items():
                    out.add_term(wl + wr, s * cl * cr)
        self._act_cache[key] = out
        return out

    def act_vector(self, g: int, vec: GradedVector) -> GradedVector:
        out = GradedVector()
        for w, c in vec.items():
            for w2, c2 in self.act(g, w).items():
                out.add_term(w2, c * c2)
        return out

    def braid_words(self, u: Word, v: Word) -> GradedVector:
        """c(u (x) v) = (deg u |> v) (x) u, as words of the concatenation."""
        out = GradedVector()
        for w, c in self.act(self.word_degree(u), v).items():
            out.add_term(w + u, c)
        return out

    # ---- multiplication --------------------------------------------------

    def mult_words(self, u: Word, v: Word) -> GradedVector:
        """Product in T(V): concatenation times the flattening scalar."""
        return GradedVector.from_word(u + v, self.flatten_scalar(u, v))

    def mult(self, a: GradedVector, b: GradedVector) -> GradedVector:
        out = GradedVector()
        for u, cu in a.items():
            for v, cv in b.items():
                out.add_term(u + v, cu * cv * self.flatten_scalar(u, v))
        return out

    def pair_mult_terms(self, a: Word, b: Word, c: Word, d: Word) -> PairVector:
        """Product ((a (x) b)) * ((c (x) d)) in T(V) (x)bar T(V).

        Route: rebracket to isolate (b (x) c), braid it, rebracket to the
        split product, then flatten both factors; all scalars explicit.
        """
        g = self.group
        phi = self.cocycle
        da, db = self.word_degree(a), self.word_degree(b)
        dc, dd = self.word_degree(c), self.word_degree(d)
        s = _ONE
        # ((A.B).(C.D)) -> (A.(B.(C.D))): Phi(da, db, dc*dd)^-1
        s = s / phi.value(da, db, g.mul(dc, dd))
        # (B.(C.D)) -> ((B.C).D): Phi(db, dc, dd)
        s = s * phi.value(db, dc, dd)
        out = PairVector()
        braided = self.act(db, c)
        dc2 = g.conj(db, dc)
        # (A.((C'.B).D)) -> (A.(C'.(B.D))): Phi(dc2, db, dd)^-1
        # (A.(C'.(B.D))) -> ((A.C').(B.D)): Phi(da, dc2, db*dd)
        s = s / phi.value(dc2, db, dd)
        s = s * phi.value(da, dc2, g.mul(db, dd))
        sb = self.flatten_scalar(b, d)
        for cw, cc in braided.items():
            coeff = s * cc * self.flatten_scalar(a, cw) * sb
            out.add_term((a + cw, b + d), coeff)
        return out

    def pair_mult(self, x: PairVector, y: PairVector) -> PairVector:
        out = PairVector()
        for (a, b), cab in x.items():
            for (c, d), ccd in y.items():
                for pair, coeff in self.pair_mult_terms(a, b, c, d).items():
                    out.add_term(pair, cab * ccd * coeff)
        return out

    # ---- coproduct components ---------------------------------------------

    def delta_component(self, word: Word, i: int, j: int) -> PairVector:
        """The (i, j) component of Delta(word); requires i + j = len(word)."""
        n = len(word)
        if i < 0 or j < 0 or i + j != n:
            raise ValidationError(f"bad split ({i},{j}) for a word of length {n}")
        key = (word, i)
        cached = self._delta_cache.get(key)
        if cached is not None:
            return cached
        if n == 0:
            out = PairVector({((), ()): _ONE})
        else:
            prefix, last = word[:-1], word[-1:]
            out = PairVector()
            if i > 0:
                for (a, b), c in self.delta_component(prefix, i - 1, j).items():
                    for pair, s in self.pair_mult_terms(a, b, last, ()).items():
                        out.add_term(pair, c * s)
            if j > 0:
                for (a, b), c in self.delta_component(prefix, i, j - 1).items():
                    for pair, s in self.pair_mult_terms(a, b, (), last).items():
                        out.add_term(pair, c * s)
        self._delta_cache[key] = out
        return out

    def delta_fully_split(self, word: Word, order: str = "left") -> GradedVector:
        """Delta_{1^n}(word) as an endomorphism-style vector on n-letter words.

        order="left" peels Delta_{1,n-1} and recurses on the right leg,
        rebracketing the peeled letter onto the left comb; order="right"
        peels Delta_{n-1,1}.  Coassociativity makes the two agree.
        """
        n = len(word)
        if n <= 1:
            return GradedVector.from_word(word)
        key = (word, order)
        cached = self._split_cache.get(key)
        if cached is not None:
            return cached
        out = GradedVector()
        if order == "left":
            for (a, b), c in self.delta_component(word, 1, n - 1).items():
                for rest, c2 in self.delta_fully_split(b, order).items():
                    out.add_term(a + rest, c * c2 * self.flatten_scalar(a, rest))
        elif order == "right":
            for (a, b), c in self.delta_component(word, n - 1, 1).items():
                for rest, c2 in self.delta_fully_split(a, order).items():
                    # (leftcomb (x) leaf) is already the left comb.
                    out.add_term(rest + b, c * c2)
        else:
            raise ValidationError(f"unknown splitting order {order!r}")
        self._split_cache[key] = out
        return out

    def delta_1n(self, word: Word) -> GradedVector:
        return self.delta_fully_split(word, "left")


def _prod_degree(group, degrees, start, count) -> int:
    d = group.identity
    for k in range(start, start + count):
        d = group.mul(d, degrees[k])
    return d


def left_comb(n: int):
    """The canonical left-nested tree on n leaves (n >= 1)."""
    if n < 1:
        raise ValidationError("left_comb needs at least one leaf")
    tree = 0
    for k in range(1, n):
        tree = (tree, k)
    return tree


def right_comb(n: int):
    if n < 1:
        raise ValidationError("right_comb needs at least one leaf")
    tree = n - 1
    for k in range(n - 2, -1, -1):
        tree = (k, tree)
    return tree
