"""Bosonization arithmetic, adjoint actions, ad-power levels and reflections.

The adjoint action of a degree-1 element X on a homogeneous Y is

    ad(X)(Y) = X Y - (deg X |> Y) X,

reduced in the ambient Nichols truncation of the full tuple direct sum, so
vanishing means vanishing in B(M).  The smash product B(N) # kG is carried
alongside for verification: its product and coproduct follow the
bosonization formulas, and ad by group-likes through the smash product must
agree with the module action.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .cyclo import CycScalar, coords_in_rref, rref
from .errors import UndecidedAtCutoff, ValidationError
from .freebraid import GradedVector
from .nichols import NicholsTruncation, nichols_truncate
from .ydcat import ModuleTuple, YDModule, dual, yd_axiom_check

_ONE = CycScalar.one()
_ZERO = CycScalar.zero()

DEFAULT_AD_CUTOFF = 8
DEFAULT_TRUNCATION_DEGREE = 8


def ad_group(trunc: NicholsTruncation, g: int, x: GradedVector) -> GradedVector:
    """ad(g) on normal forms equals the module action g |> x."""
    return trunc.normal_form(trunc.ctx.act_vector(g, x))


def ad_primitive(trunc: NicholsTruncation, x: GradedVector,
                 y: GradedVector) -> GradedVector:
    """ad(X)(Y) = XY - (deg X |> Y) X for degree-1 homogeneous X."""
    words = list(x.terms)
    if not words or any(len(w) != 1 for w in words):
        raise ValidationError("ad_primitive needs a degree-1 first argument")
    degs = {trunc.ctx.word_degree(w) for w in words}
    if len(degs) != 1:
        raise ValidationError("ad_primitive needs a G-homogeneous first argument")
    gx = next(iter(degs))
    ctx = trunc.ctx
    left = ctx.mult(x, y)
    right = ctx.mult(ctx.act_vector(gx, y), x)
    return trunc.normal_form(left - right)


@dataclass
class AdLevel:
    """One homogeneous layer ad(M_i)^n(M_j), with its YD-module structure."""
    n: int
    basis: list                      # RREF rows over block word coordinates
    words: list                      # the block's word list (shared)
    module: YDModule | None          # None only for the zero level


@dataclass
class AdLevels:
    """All levels of ad(M_i)^n(M_j) up to vanishing or cutoff."""
    tuple_: ModuleTuple
    i: int
    j: int
    levels: list = field(default_factory=list)  # nonzero levels, index = n
    m: int | None = None                        # top nonvanishing power
    undecided: bool = False
    cutoff: int = DEFAULT_AD_CUTOFF

    def dims(self) -> tuple:
        return tuple(len(l.basis) for l in self.levels)

    def top_module(self) -> YDModule:
        if self.undecided:
            raise UndecidedAtCutoff(
                f"ad-power of slots ({self.i},{self.j}) undecided at cutoff {self.cutoff}")
        return self.levels[self.m].module


def _level_vectors_to_module(trunc, md, vectors, name=None) -> tuple[list, YDModule]:
    """RREF the spanning vectors per G-degree and package as a YDModule."""
    ctx = trunc.ctx
    blk = trunc.block(md)
    by_degree: dict[int, list] = {}
    for vec in vectors:
        coords = [_ZERO] * len(blk.words)
        deg = None
        for w, c in vec.items():
            coords[blk.index[w]] = c
            deg = ctx.word_degree(w)
        if deg is None:
            continue
        by_degree.setdefault(deg, []).append(coords)
    basis_rows = []
    degrees = []
    for deg in sorted(by_degree):
        reduced, _ = rref(by_degree[deg])
        for row in reduced:
            basis_rows.append(row)
            degrees.append(deg)
    if not basis_rows:
        return [], None
    reduced_all, pivots = rref(basis_rows)
    # Degrees follow the pivot words (rows of an RREF across degree groups
    # keep homogeneous support because distinct degrees use disjoint words).
    degrees = [ctx.word_degree(blk.words[p]) for p in pivots]
    action = {}
    for g in ctx.group.elements():
        cols = []
        for row in reduced_all:
            vec = GradedVector()
            for k, c in enumerate(row):
                if not c.is_zero():
                    vec.add_term(blk.words[k], c)
            image = trunc.normal_form(ctx.act_vector(g, vec))
            coords = [_ZERO] * len(blk.words)
            for w, c in image.items():
                coords[blk.index[w]] = c
            col = coords_in_rref(reduced_all, pivots, coords)
            if col is None:
                raise ValidationError("ad level is not action-stable")
            cols.append(col)
        dim = len(reduced_all)
        action[g] = [[cols[j][i] for j in range(dim)] for i in range(dim)]
    module = YDModule(trunc.ctx.group, trunc.ctx.cocycle, degrees, action,
                      name=name)
    report = yd_axiom_check(module)
    if not report:
        raise ValidationError(f"ad level failed YD validation: {report.summary()}")
    return reduced_all, module


def ad_power_module(M: ModuleTuple, i: int, j: int,
                    cutoff: int = DEFAULT_AD_CUTOFF,
                    trunc: NicholsTruncation | None = None) -> AdLevels:
    """Levels ad(M_i)^n(M_j) inside B(M), up to first vanishing or cutoff."""
    if i == j:
        raise ValidationError("ad_power_module needs distinct slots")
    if trunc is None:
        trunc = nichols_truncate(M, min(DEFAULT_TRUNCATION_DEGREE, cutoff + 1))
    ctx = trunc.ctx
    result = AdLevels(tuple_=M, i=i, j=j, cutoff=cutoff)
    theta = M.theta
    mj = M[j]
    level_vecs = [GradedVector.from_word(((j, b),)) for b in range(mj.dim)]
    md = tuple(1 if s == j else 0 for s in range(theta))
    basis, module = _level_vectors_to_module(trunc, md, level_vecs,
                                             name=f"ad^0({M[i].name},{mj.name})")
    result.levels.append(AdLevel(0, basis, trunc.block(md).words, module))
    letters_i = [GradedVector.from_word(((i, b),)) for b in range(M[i].dim)]
    n = 0
    while True:
        n += 1
        if (n + 1) > trunc.max_degree:
            result.undecided = True
            return result
        prev = result.levels[-1]
        vectors = []
        for row in prev.basis:
            y = GradedVector()
            for k, c in enumerate(row):
                if not c.is_zero():
                    y.add_term(prev.words[k], c)
            for x in letters_i:
                v = ad_primitive(trunc, x, y)
                if not v.is_zero():
                    vectors.append(v)
        md = tuple(n if s == i else (1 if s == j else 0) for s in range(theta))
        if not vectors:
            result.m = n - 1
            return result
        basis, module = _level_vectors_to_module(
            trunc, md, vectors, name=f"ad^{n}({M[i].name},{mj.name})")
        if not basis:
            result.m = n - 1
            return result
        result.levels.append(AdLevel(n, basis, trunc.block(md).words, module))
        if n >= cutoff:
            result.undecided = True
            return result


def cartan_entry(M: ModuleTuple, i: int, j: int,
                 cutoff: int = DEFAULT_AD_CUTOFF,
                 trunc: NicholsTruncation | None = None) -> int:
    if i == j:
        return 2
    levels = ad_power_module(M, i, j, cutoff=cutoff, trunc=trunc)
    if levels.undecided:
        raise UndecidedAtCutoff(
            f"Cartan entry a[{i}][{j}] undecided at ad cutoff {cutoff}")
    return -levels.m


def cartan_matrix(M: ModuleTuple, cutoff: int = DEFAULT_AD_CUTOFF,
                  trunc: NicholsTruncation | None = None) -> list:
    theta = M.theta
    return [[cartan_entry(M, i, j, cutoff=cutoff, trunc=trunc)
             for j in range(theta)] for i in range(theta)]


def reflect(M: ModuleTuple, i: int, cutoff: int = DEFAULT_AD_CUTOFF,
            trunc: NicholsTruncation | None = None) -> ModuleTuple:
    """R_i(M): dual at slot i, top nonvanishing ad level elsewhere."""
    entries = []
    for j in range(M.theta):
        if j == i:
            entries.append(dual(M[i]))
        else:
            levels = ad_power_module(M, i, j, cutoff=cutoff, trunc=trunc)
            top = levels.top_module()
            top.name = f"R{i + 1}({M[i].name},{M[j].name})"
            entries.append(top)
    return ModuleTuple(entries)


def coinvariant_dims(trunc: NicholsTruncation, coinv_slots, max_total: int) -> dict:
    """Multigraded dimensions of the right coinvariants of B -> B(N).

    N is the direct sum of the slots in coinv_slots; an element x of the
    quotient is coinvariant iff every coproduct component whose right leg is
    a nonempty pure-N word vanishes.  Returns {multidegree: dim}.
    """
    coinv_slots = set(coinv_slots)
    theta = trunc.theta
    out = {}
    for total in range(max_total + 1):
        for md in trunc.multidegrees(total):
            basis = trunc.block(md).quotient_words
            if not basis:
                out[md] = 0
                continue
            n = total
            col_maps = []
            for w in basis:
                entries: dict = {}
                vec = GradedVector.from_word(w)
                for s in range(1, n + 1):
                    for (a, b), c in trunc.delta_on_quotient(vec, n - s, s).items():
                        bmd = trunc.ctx.multidegree(b)
                        if all(bmd[t] == 0 or t in coinv_slots
                               for t in range(theta)):
                            key = (s, a, b)
                            cur = entries.get(key, _ZERO) + c
                            if cur.is_zero():
                                entries.pop(key, None)
                            else:
                                entries[key] = cur
                col_maps.append(entries)
            keys = sorted({k for m in col_maps for k in m})
            rows = [[m.get(k, _ZERO) for m in col_maps] for k in keys]
            from .cyclo import nullspace
            out[md] = len(nullspace(rows, len(basis)))
    return out


# ---------------------------------------------------------------------------
# Smash product B # kG (bosonization), used for verification.
# ---------------------------------------------------------------------------

class SmashAlgebra:
    """B(V) # kG on normal forms; elements are {(word, g): scalar} dicts."""

    def __init__(self, trunc: NicholsTruncation):
        self.trunc = trunc
        self.ctx = trunc.ctx
        self.group = trunc.ctx.group
        self.phi = trunc.ctx.cocycle

    def unit(self):
        return {((), self.group.identity): _ONE}

    def element(self, word, g, coeff=_ONE):
        return {(tuple(word), g): coeff}

    def mult(self, x: dict, y: dict) -> dict:
        """(X # h)(Y # g) by the bosonization product formula."""
        G, phi = self.group, self.phi
        out: dict = {}
        for (w1, h), c1 in x.items():
            dx = self.ctx.word_degree(w1)
            for (w2, g), c2 in y.items():
                dy = self.ctx.word_degree(w2)
                hyh = G.conj(h, dy)
                scalar = (phi.value(h, dy, g) * phi.value(dx, hyh, G.mul(h, g))
                          / (phi.value(dx, h, G.mul(dy, g))
                             * phi.value(hyh, h, g)))
                core = self.trunc.normal_form(
                    self.ctx.mult(GradedVector.from_word(w1),
                                  self.ctx.act_vector(h, GradedVector.from_word(w2))))
                hg = G.mul(h, g)
                for w, c in core.items():
                    key = (w, hg)
                    cur = out.get(key, _ZERO) + c1 * c2 * scalar * c
                    if cur.is_zero():
                        out.pop(key, None)
                    else:
                        out[key] = cur
        return out

    def coproduct(self, x: dict) -> dict:
        """Delta(X # h) = Phi^-1(x1, x2, h) (X1 # x2 h) (x) (X2 # h)."""
        G, phi = self.group, self.phi
        out: dict = {}
        for (w, h), coeff in x.items():
            n = len(w)
            vec = GradedVector.from_word(w)
            for i in range(n + 1):
                for (a, b), c in self.trunc.delta_on_quotient(vec, i, n - i).items():
                    da = self.ctx.word_degree(a)
                    db = self.ctx.word_degree(b)
                    s = phi.value(da, db, h).inv()
                    key = ((a, G.mul(db, h)), (b, h))
                    cur = out.get(key, _ZERO) + coeff * c * s
                    if cur.is_zero():
                        out.pop(key, None)
                    else:
                        out[key] = cur
        return out

    def counit(self, x: dict) -> CycScalar:
        total = _ZERO
        for (w, _), c in x.items():
            if not w:
                total = total + c
        return total

    def preantipode_grouplike(self, g: int) -> dict:
        return {((), self.group.inv(g)):
                self.phi.value(g, self.group.inv(g), g).inv()}

    def ad_group_via_smash(self, g: int, x: GradedVector) -> GradedVector:
        """ad(g)(X) = [Phi(g x, g^-1, g)/Phi(g, g^-1, g)] (g X) g^-1."""
        G, phi = self.group, self.phi
        out = GradedVector()
        for w, c in self.trunc.normal_form(x).items():
            dx = self.ctx.word_degree(w)
            pre = phi.value(G.mul(g, dx), G.inv(g), g) / phi.value(g, G.inv(g), g)
            prod = self.mult(self.mult(self.element((), g),
                                       self.element(w, G.identity)),
                             self.element((), G.inv(g)))
            for (w2, h), c2 in prod.items():
                if h != G.identity:
                    raise ValidationError("ad(g) left the coinvariant part")
                out.add_term(w2, c * pre * c2)
        return out
