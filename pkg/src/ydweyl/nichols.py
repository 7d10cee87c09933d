"""Nichols algebra truncations: B(V) = T(V)/I(V) degree by degree.

The degree-n piece of the defining ideal is ker(Delta_{1^n}); kernels and
echelonized quotient bases are computed blockwise per Z^theta multidegree
(the fully split coproduct preserves the count of letters per slot), with
exact Gaussian elimination.  Words are enumerated in length-lexicographic
order over (slot, index) letters, so all outputs are reproducible
bit-for-bit.
"""

from __future__ import annotations

import os
from itertools import product

from .cyclo import CycScalar, nullspace, rref
from .errors import ResourceBoundError, ValidationError
from .freebraid import GradedVector, WordAlgebra

_ONE = CycScalar.one()


def _compositions(total: int, parts: int):
    """All multidegrees of a given total, lexicographic."""
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


class _Block:
    __slots__ = ("words", "index", "ideal", "pivots", "quotient_words")

    def __init__(self, words, ideal, pivots):
        self.words = words
        self.index = {w: k for k, w in enumerate(words)}
        self.ideal = ideal            # RREF rows over `words` coordinates
        self.pivots = pivots          # pivot positions into `words`
        pivot_set = set(pivots)
        self.quotient_words = [w for k, w in enumerate(words)
                               if k not in pivot_set]


class NicholsTruncation:
    """Exact per-degree data of B(V) up to max_degree.

    Blocks are materialized lazily per multidegree, so tuple computations
    that only touch a few slots (adjoint powers inside the full direct sum)
    never pay for the rest.
    """

    def __init__(self, modules, max_degree: int, workers: int | None = None):
        if max_degree < 0:
            raise ValidationError("max_degree must be >= 0")
        self.ctx = WordAlgebra(modules)
        self.max_degree = max_degree
        self.theta = self.ctx.theta
        self._blocks: dict[tuple, _Block] = {}
        self._workers = workers if workers is not None else _env_workers()

    # ---- block construction ---------------------------------------------

    def words_of_multidegree(self, md: tuple) -> list:
        letters = self.ctx.letters
        n = sum(md)
        words = [w for w in product(letters, repeat=n)
                 if self.ctx.multidegree(w) == md]
        return words

    def block(self, md: tuple) -> _Block:
        md = tuple(md)
        if len(md) != self.theta or any(x < 0 for x in md):
            raise ValidationError(f"bad multidegree {md}")
        if sum(md) > self.max_degree:
            raise ResourceBoundError(
                f"multidegree {md} exceeds the truncation degree {self.max_degree}")
        blk = self._blocks.get(md)
        if blk is not None:
            return blk
        words = self.words_of_multidegree(md)
        n = sum(md)
        if n <= 1:
            blk = _Block(words, [], [])
        else:
            index = {w: k for k, w in enumerate(words)}
            rows = [[CycScalar.zero()] * len(words) for _ in words]
            for col, w in enumerate(words):
                for tw, c in self.ctx.delta_1n(w).items():
                    rows[index[tw]][col] = c
            kernel = nullspace(rows, len(words))
            ideal, pivots = rref(kernel)
            blk = _Block(words, ideal, pivots)
        self._blocks[md] = blk
        return blk

    def multidegrees(self, n: int):
        return list(_compositions(n, self.theta))

    def prefetch(self, degrees=None):
        """Materialize all blocks for the given total degrees (default: all).

        Per-multidegree kernels are independent; with YDWEYL_WORKERS > 1 (or
        an explicit workers count) they are computed in a process pool and
        merged into this truncation.
        """
        if degrees is None:
            degrees = range(self.max_degree + 1)
        todo = [md for n in degrees for md in self.multidegrees(n)
                if md not in self._blocks]
        if self._workers <= 1 or len(todo) <= 1:
            for md in todo:
                self.block(md)
            return
        from concurrent.futures import ProcessPoolExecutor
        payload = (self.ctx.modules, self.max_degree)
        with ProcessPoolExecutor(max_workers=self._workers) as pool:
            for md, words, ideal, pivots in pool.map(
                    _build_block_remote, [(payload, md) for md in todo]):
                self._blocks[md] = _Block(words, ideal, pivots)

    # ---- dimensions -------------------------------------------------------

    def dim_multidegree(self, md) -> int:
        return len(self.block(md).quotient_words)

    def ideal_dim_multidegree(self, md) -> int:
        return len(self.block(md).ideal)

    def graded_dim(self, n: int) -> int:
        if n == 0:
            return 1
        return sum(self.dim_multidegree(md) for md in self.multidegrees(n))

    def graded_dims(self) -> tuple:
        return tuple(self.graded_dim(n) for n in range(self.max_degree + 1))

    def support(self) -> set:
        """All Z^theta points with nonzero quotient dimension, up to the bound."""
        pts = {tuple([0] * self.theta)}
        for n in range(1, self.max_degree + 1):
            for md in self.multidegrees(n):
                if self.dim_multidegree(md) > 0:
                    pts.add(md)
        return pts

    # ---- normal forms ------------------------------------------------------

    def normal_form(self, vec: GradedVector) -> GradedVector:
        """Canonical coset representative modulo the ideal; 0 iff vec in I(V)."""
        by_md: dict[tuple, dict] = {}
        for w, c in vec.items():
            by_md.setdefault(self.ctx.multidegree(w), {})[w] = c
        out = GradedVector()
        for md, terms in by_md.items():
            blk = self.block(md)
            coords = [CycScalar.zero()] * len(blk.words)
            for w, c in terms.items():
                coords[blk.index[w]] = c
            for row, p in zip(blk.ideal, blk.pivots):
                c = coords[p]
                if not c.is_zero():
                    coords = [x - c * y for x, y in zip(coords, row)]
            for k, c in enumerate(coords):
                if not c.is_zero():
                    out.add_term(blk.words[k], c)
        return out

    def is_in_ideal(self, vec: GradedVector) -> bool:
        return self.normal_form(vec).is_zero()

    # ---- coproduct on the quotient -----------------------------------------

    def delta_on_quotient(self, vec: GradedVector, i: int, j: int):
        """(i, j) component of Delta_B on a normal form, both legs reduced.

        Returns a dict {(word_left, word_right): scalar} with both legs
        canonical coset representatives.
        """
        out: dict = {}
        for w, c in vec.items():
            if len(w) != i + j:
                raise ValidationError("delta_on_quotient needs length-homogeneous input")
            for (a, b), s in self.ctx.delta_component(w, i, j).items():
                na = self.normal_form(GradedVector.from_word(a))
                nb = self.normal_form(GradedVector.from_word(b))
                for wa, ca in na.items():
                    for wb, cb in nb.items():
                        key = (wa, wb)
                        cur = out.get(key, CycScalar.zero())
                        cur = cur + c * s * ca * cb
                        if cur.is_zero():
                            out.pop(key, None)
                        else:
                            out[key] = cur
        return out

    def check_coideal(self, n: int) -> bool:
        """Delta_{i,n-i} maps the degree-n ideal into ideal(x)T + T(x)ideal."""
        for md in self.multidegrees(n):
            blk = self.block(md)
            for row in blk.ideal:
                vec = GradedVector()
                for k, c in enumerate(row):
                    if not c.is_zero():
                        vec.add_term(blk.words[k], c)
                for i in range(1, n):
                    if self.delta_on_quotient(vec, i, n - i):
                        return False
        return True

    def primitive_dim(self, n: int) -> int:
        """Dimension of the primitives of B(V) in degree n (n >= 2)."""
        if n < 2:
            raise ValidationError("primitive_dim is meaningful for degree >= 2")
        total = 0
        for md in self.multidegrees(n):
            blk = self.block(md)
            basis = blk.quotient_words
            if not basis:
                continue
            rows = []
            for col, w in enumerate(basis):
                vec = GradedVector.from_word(w)
                col_entries: dict = {}
                for i in range(1, n):
                    for pair, c in self.delta_on_quotient(vec, i, n - i).items():
                        col_entries[(i, pair)] = c
                rows.append(col_entries)
            keys = sorted({k for r in rows for k in r},
                          key=lambda k: (k[0], k[1]))
            eqs = [[rows[col].get(k, CycScalar.zero()) for col in range(len(basis))]
                   for k in keys]
            total += len(nullspace(eqs, len(basis)))
        return total


def nichols_truncate(V, max_degree: int, workers: int | None = None) -> NicholsTruncation:
    """Truncation of the Nichols algebra of a module, tuple, or slot list."""
    return NicholsTruncation(V, max_degree, workers=workers)


def normal_form(vec: GradedVector, trunc: NicholsTruncation) -> GradedVector:
    return trunc.normal_form(vec)


def support(trunc: NicholsTruncation) -> set:
    return trunc.support()


def _env_workers() -> int:
    try:
        return max(1, int(os.environ.get("YDWEYL_WORKERS", "1")))
    except ValueError:
        return 1


def _build_block_remote(job):
    (modules, max_degree), md = job
    trunc = NicholsTruncation(modules, max_degree, workers=1)
    blk = trunc.block(md)
    return md, blk.words, blk.ideal, blk.pivots
