"""Semi-Cartan graphs, Weyl groupoids, real roots and finiteness criteria.

Vertices are isomorphism classes of module tuples, discovered by BFS over
reflection sequences with iso-class memoization: cheap invariant keys prune,
exact intertwiner tests decide.  Reflections of isomorphic pairs agree up to
isomorphism, so the expensive ad-level computations are cached per pair
class and only the degree bookkeeping runs per vertex.

Finiteness of the real root system is semi-decided with an explicit
coordinate bound; for standard graphs the finite-Cartan-type classifier
gives the definitive answer used by the infinite-dimensionality certificate.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

from .errors import ResourceBoundError, UndecidedAtCutoff, ValidationError
from .groupdata import Report
from .nichols import nichols_truncate
from .reflect import (DEFAULT_AD_CUTOFF, DEFAULT_TRUNCATION_DEGREE,
                      ad_power_module)
from .ydcat import ModuleTuple, dual, iso_test, module_canonical_key

DEFAULT_VERTEX_BOUND = 64
DEFAULT_ROOT_BOUND = 50


@dataclass
class Vertex:
    vid: int
    tuple_: ModuleTuple
    key: tuple
    cartan: list  # theta x theta integer matrix


@dataclass
class SemiCartanGraph:
    theta: int
    vertices: list = field(default_factory=list)
    reflections: dict = field(default_factory=dict)  # (i, vid) -> vid

    def vertex_count(self) -> int:
        return len(self.vertices)

    def r(self, i: int, vid: int) -> int:
        return self.reflections[(i, vid)]

    def cartan(self, vid: int) -> list:
        return self.vertices[vid].cartan

    def vertex_label(self, vid: int) -> str:
        return ",".join(self.vertices[vid].tuple_.degree_names())


class _PairCache:
    """Reflection data per iso class of an ordered module pair."""

    def __init__(self, ad_cutoff: int, max_degree: int):
        self.ad_cutoff = ad_cutoff
        self.max_degree = max_degree
        self._entries: dict = {}

    def lookup(self, a, b):
        key = (module_canonical_key(a), module_canonical_key(b))
        for cand_a, cand_b, m, top in self._entries.get(key, ()):
            if iso_test(a, cand_a) is not None and iso_test(b, cand_b) is not None:
                return m, top
        pair = ModuleTuple([a, b])
        trunc = nichols_truncate(pair, self.max_degree)
        levels = ad_power_module(pair, 0, 1, cutoff=self.ad_cutoff, trunc=trunc)
        if levels.undecided:
            raise UndecidedAtCutoff(
                f"ad-power of ({a.name},{b.name}) undecided at cutoff {self.ad_cutoff}")
        top = levels.top_module()
        self._entries.setdefault(key, []).append((a, b, levels.m, top))
        return levels.m, top


def build_cartan_graph(M: ModuleTuple, *, ad_cutoff: int = DEFAULT_AD_CUTOFF,
                       max_degree: int = DEFAULT_TRUNCATION_DEGREE,
                       vertex_bound: int = DEFAULT_VERTEX_BOUND) -> SemiCartanGraph:
    """BFS over reflection sequences with iso-class memoization."""
    theta = M.theta
    graph = SemiCartanGraph(theta=theta)
    cache = _PairCache(ad_cutoff, max_degree)
    key_index: dict = {}

    def tuple_key(t: ModuleTuple) -> tuple:
        return tuple(module_canonical_key(m) for m in t)

    def find_or_add(t: ModuleTuple) -> tuple[int, bool]:
        key = tuple_key(t)
        for vid in key_index.get(key, ()):
            other = graph.vertices[vid].tuple_
            if all(iso_test(a, b) is not None for a, b in zip(t, other)):
                return vid, False
        if len(graph.vertices) >= vertex_bound:
            raise ResourceBoundError(
                f"vertex bound {vertex_bound} exceeded while closing the graph")
        vid = len(graph.vertices)
        cartan = _cartan_via_cache(t, cache)
        graph.vertices.append(Vertex(vid, t, key, cartan))
        key_index.setdefault(key, []).append(vid)
        return vid, True

    root, _ = find_or_add(M)
    frontier = [root]
    while frontier:
        new = []
        for vid in frontier:
            t = graph.vertices[vid].tuple_
            for i in range(theta):
                refl = _reflect_via_cache(t, i, cache)
                rid, added = find_or_add(refl)
                graph.reflections[(i, vid)] = rid
                if added:
                    new.append(rid)
        frontier = new
    return graph


def _cartan_via_cache(t: ModuleTuple, cache: _PairCache) -> list:
    theta = t.theta
    A = [[2] * theta for _ in range(theta)]
    for i in range(theta):
        for j in range(theta):
            if i != j:
                m, _ = cache.lookup(t[i], t[j])
                A[i][j] = -m
    return A


def _reflect_via_cache(t: ModuleTuple, i: int, cache: _PairCache) -> ModuleTuple:
    entries = []
    for j in range(t.theta):
        if j == i:
            entries.append(dual(t[i]))
        else:
            _, top = cache.lookup(t[i], t[j])
            entries.append(top)
    return ModuleTuple(entries)


def check_axioms(graph: SemiCartanGraph) -> Report:
    """CG1 (r_i^2 = id), CG2 (i-th row agreement), and GCM conditions."""
    bad = []
    for (i, vid), rid in sorted(graph.reflections.items()):
        back = graph.reflections.get((i, rid))
        if back != vid:
            bad.append(f"CG1 fails: r_{i + 1}^2({vid}) = {back} != {vid}")
        arow = graph.cartan(vid)[i]
        brow = graph.cartan(rid)[i]
        if arow != brow:
            bad.append(
                f"CG2 fails at vertex {vid}, i={i + 1}: rows {arow} vs {brow}")
    for v in graph.vertices:
        rep = is_generalized_cartan(v.cartan)
        if not rep.ok:
            bad.append(f"vertex {v.vid}: {rep.summary()}")
    return Report(not bad, bad)


def is_generalized_cartan(A: list) -> Report:
    bad = []
    n = len(A)
    for i in range(n):
        if len(A[i]) != n:
            return Report(False, ["matrix is not square"])
        if A[i][i] != 2:
            bad.append(f"a[{i}][{i}] = {A[i][i]} != 2")
        for j in range(n):
            if i != j:
                if A[i][j] > 0:
                    bad.append(f"a[{i}][{j}] = {A[i][j]} > 0")
                if (A[i][j] == 0) != (A[j][i] == 0):
                    bad.append(f"zero symmetry fails at ({i},{j})")
    return Report(not bad, bad)


# ---------------------------------------------------------------------------
# Real roots.
# ---------------------------------------------------------------------------

def _s_matrix(A: list, i: int) -> tuple:
    """s_i^X as a matrix: alpha_j -> alpha_j - a_ij alpha_i (columns = images)."""
    n = len(A)
    return tuple(tuple((1 if r == c else 0) - (A[i][c] if r == i else 0)
                       for c in range(n)) for r in range(n))


def _mat_apply(mat, vec):
    return tuple(sum(mat[r][c] * vec[c] for c in range(len(vec)))
                 for r in range(len(vec)))


def _mat_compose(a, b):
    n = len(a)
    return tuple(tuple(sum(a[r][k] * b[k][c] for k in range(n))
                       for c in range(n)) for r in range(n))


@dataclass(frozen=True)
class GroupoidMorphism:
    """A morphism (target, f, source) of the Weyl groupoid."""
    target: int
    matrix: tuple  # theta x theta integer matrix, rows of tuples
    source: int

    def compose(self, other: "GroupoidMorphism") -> "GroupoidMorphism":
        """(Z, g, Y) o (Y, f, X) = (Z, gf, X)."""
        if self.source != other.target:
            raise ValidationError("morphism endpoints do not match")
        return GroupoidMorphism(self.target,
                                _mat_compose(self.matrix, other.matrix),
                                other.source)

    def apply(self, vec):
        return _mat_apply(self.matrix, vec)


def generator_morphism(graph: SemiCartanGraph, i: int, vid: int) -> GroupoidMorphism:
    """The generator (r_i(X), s_i^X, X) out of vertex X = vid."""
    return GroupoidMorphism(graph.r(i, vid), _s_matrix(graph.cartan(vid), i), vid)


def morphisms_into(graph: SemiCartanGraph, vid: int, bound: int):
    """BFS closure of groupoid morphisms with target vid.

    Returns (morphisms, truncated).  The search aborts as soon as a matrix
    entry exceeds bound * theta: the truncation flag is the result then, and
    the returned morphism list is partial.  This both bounds the state space
    (guaranteeing termination on infinite groupoids) and keeps truncated
    searches cheap.
    """
    theta = graph.theta
    ident = tuple(tuple(1 if r == c else 0 for c in range(theta))
                  for r in range(theta))
    start = GroupoidMorphism(vid, ident, vid)
    seen = {(start.source, start.matrix)}
    frontier = [start]
    out = [start]
    while frontier:
        new = []
        for mor in frontier:
            for i in range(theta):
                extended = mor.compose(
                    generator_morphism(graph, i, graph.r(i, mor.source)))
                if max(abs(x) for row in extended.matrix for x in row) > bound * theta:
                    return out, True
                state = (extended.source, extended.matrix)
                if state not in seen:
                    seen.add(state)
                    new.append(extended)
                    out.append(extended)
        frontier = new
    return out, False


def real_roots(graph: SemiCartanGraph, vid: int,
               bound: int = DEFAULT_ROOT_BOUND) -> tuple[list, bool]:
    """Real roots at a vertex: images of simple roots under morphisms into it.

    BFS over morphisms with target vid; aborts with the truncation flag as
    soon as any root coordinate exceeds the bound (the root list is partial
    then).  A closed search returns the complete root set.
    """
    theta = graph.theta
    simple = [tuple(1 if k == j else 0 for k in range(theta))
              for j in range(theta)]
    ident = tuple(tuple(1 if r == c else 0 for c in range(theta))
                  for r in range(theta))
    start = GroupoidMorphism(vid, ident, vid)
    seen = {(start.source, start.matrix)}
    frontier = [start]
    roots = set()

    def collect(mor) -> bool:
        for j in range(theta):
            root = mor.apply(simple[j])
            if any(abs(x) > bound for x in root):
                return False
            roots.add(root)
        return True

    if not collect(start):
        return sorted(roots), True
    while frontier:
        new = []
        for mor in frontier:
            for i in range(theta):
                extended = mor.compose(
                    generator_morphism(graph, i, graph.r(i, mor.source)))
                state = (extended.source, extended.matrix)
                if state in seen:
                    continue
                if not collect(extended):
                    return sorted(roots), True
                seen.add(state)
                new.append(extended)
        frontier = new
    return sorted(roots), False


@dataclass
class FinitenessResult:
    status: str                  # "finite" | "not-finite-within-bound"
    bound: int
    root_counts: dict            # vid -> count (complete only when finite)

    def is_finite(self) -> bool:
        return self.status == "finite"


def is_finite(graph: SemiCartanGraph,
              bound: int = DEFAULT_ROOT_BOUND) -> FinitenessResult:
    """Tri-state finiteness: never reports 'finite' from a truncated search."""
    counts = {}
    for v in graph.vertices:
        roots, truncated = real_roots(graph, v.vid, bound)
        if truncated:
            return FinitenessResult("not-finite-within-bound", bound, {})
        counts[v.vid] = len(roots)
    return FinitenessResult("finite", bound, counts)


def is_standard(graph: SemiCartanGraph) -> bool:
    mats = [v.cartan for v in graph.vertices]
    return all(m == mats[0] for m in mats)


# ---------------------------------------------------------------------------
# Finite-Cartan-type classification.
# ---------------------------------------------------------------------------

def _principal_minor_positive(A: list) -> bool:
    n = len(A)
    for size in range(1, n + 1):
        for subset in combinations(range(n), size):
            sub = [[Fraction(A[r][c]) for c in subset] for r in subset]
            if _det_fraction(sub) <= 0:
                return False
    return True


def _det_fraction(m: list) -> Fraction:
    n = len(m)
    m = [row[:] for row in m]
    result = Fraction(1)
    for c in range(n):
        pivot = next((i for i in range(c, n) if m[i][c] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != c:
            m[c], m[pivot] = m[pivot], m[c]
            result = -result
        result *= m[c][c]
        for i in range(c + 1, n):
            if m[i][c]:
                f = m[i][c] / m[c][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[c])]
    return result


def _components(A: list) -> list:
    n = len(A)
    seen = [False] * n
    comps = []
    for start in range(n):
        if seen[start]:
            continue
        comp = []
        stack = [start]
        seen[start] = True
        while stack:
            x = stack.pop()
            comp.append(x)
            for y in range(n):
                if not seen[y] and (A[x][y] != 0 or A[y][x] != 0):
                    seen[y] = True
                    stack.append(y)
        comps.append(sorted(comp))
    return comps


def _catalog(n: int) -> list:
    """Finite-type Cartan matrices of rank n, with their names."""
    def chain(n):
        return [[2 if i == j else (-1 if abs(i - j) == 1 else 0)
                 for j in range(n)] for i in range(n)]
    out = []
    out.append((f"A{n}", chain(n)))
    if n >= 2:
        b = chain(n)
        b[n - 2][n - 1] = -2
        out.append((f"B{n}", b))
    if n >= 3:
        c = chain(n)
        c[n - 1][n - 2] = -2
        out.append((f"C{n}", c))
    if n >= 4:
        d = chain(n - 1)
        for row in d:
            row.append(0)
        d.append([0] * n)
        d[n - 1][n - 1] = 2
        # nodes n-2 and n-1 both attach to node n-3
        d[n - 3][n - 1] = d[n - 1][n - 3] = -1
        out.append((f"D{n}", d))
    if n == 2:
        out.append(("G2", [[2, -1], [-3, 2]]))
    if n == 4:
        f = chain(4)
        f[1][2] = -2
        out.append(("F4", f))
    if n in (6, 7, 8):
        e = chain(n - 1)
        for row in e:
            row.append(0)
        e.append([0] * n)
        e[n - 1][n - 1] = 2
        # branch node: attach the last simple root to node 2 (0-indexed)
        e[2][n - 1] = e[n - 1][2] = -1
        out.append((f"E{n}", e))
    return out


def _permutation_match(A: list, B: list) -> bool:
    """Simultaneous row/column permutation equivalence of integer matrices."""
    n = len(A)
    if len(B) != n:
        return False

    def signature(M, k):
        offdiag = sorted((M[k][j], M[j][k]) for j in range(n) if j != k)
        return tuple(offdiag)

    siga = [signature(A, k) for k in range(n)]
    sigb = [signature(B, k) for k in range(n)]
    if sorted(siga) != sorted(sigb):
        return False

    assignment = [-1] * n
    used = [False] * n

    def backtrack(i):
        if i == n:
            return True
        for j in range(n):
            if used[j] or siga[i] != sigb[j]:
                continue
            ok = True
            for k in range(i):
                if A[i][k] != B[j][assignment[k]] or A[k][i] != B[assignment[k]][j]:
                    ok = False
                    break
            if ok:
                assignment[i] = j
                used[j] = True
                if backtrack(i + 1):
                    return True
                used[j] = False
        return False

    return backtrack(0)


@dataclass
class CartanTypeResult:
    is_finite_type: bool
    components: list | None  # sorted Dynkin component names when finite type

    def describe(self) -> str:
        if not self.is_finite_type:
            return "not finite type"
        return " + ".join(self.components)


def finite_cartan_type(A: list) -> CartanTypeResult:
    """Classify a generalized Cartan matrix: Dynkin components or not finite.

    Finite type iff all principal minors are positive; component names are
    then matched against the rank-n catalog under simultaneous permutation.
    """
    rep = is_generalized_cartan(A)
    if not rep.ok:
        raise ValidationError("not a generalized Cartan matrix: " + rep.summary())
    if not _principal_minor_positive(A):
        return CartanTypeResult(False, None)
    names = []
    for comp in _components(A):
        sub = [[A[r][c] for c in comp] for r in comp]
        n = len(comp)
        if n > 8:
            raise ValidationError(
                f"finite-type component of rank {n} > 8 cannot exist; "
                "classification inconsistency")
        name = next((nm for nm, cat in _catalog(n)
                     if _permutation_match(sub, cat)), None)
        if name is None:
            raise ValidationError(
                "positive-definite GCM matches no Dynkin diagram; "
                "classification inconsistency")
        names.append(name)
    return CartanTypeResult(True, sorted(names))


# ---------------------------------------------------------------------------
# Certificates.
# ---------------------------------------------------------------------------

@dataclass
class Certificate:
    verdict: str            # "infinite-dimensional" | "no conclusion from this criterion"
    standard: bool
    cartan: list
    cartan_type: CartanTypeResult | None
    vertex_count: int
    axioms: Report

    def lines(self) -> list:
        out = [f"verdict: {self.verdict}",
               f"semi-Cartan graph: {self.vertex_count} vertices, axioms "
               f"{'pass' if self.axioms.ok else 'FAIL'}",
               f"standard: {'yes' if self.standard else 'no'}",
               "Cartan matrix at the start vertex:"]
        for row in self.cartan:
            out.append("  [" + ", ".join(f"{x:>2}" for x in row) + "]")
        if self.cartan_type is not None:
            out.append(f"Cartan type: {self.cartan_type.describe()}")
        return out


def infinite_dim_certificate(M: ModuleTuple, *,
                             ad_cutoff: int = DEFAULT_AD_CUTOFF,
                             max_degree: int = DEFAULT_TRUNCATION_DEGREE,
                             vertex_bound: int = DEFAULT_VERTEX_BOUND) -> Certificate:
    """Contrapositive of the finite-dimensionality criterion.

    If the reflection graph closes, is standard, and its Cartan matrix is
    not of finite type, the Nichols algebra of the tuple is
    infinite-dimensional; otherwise this criterion is silent.
    """
    graph = build_cartan_graph(M, ad_cutoff=ad_cutoff, max_degree=max_degree,
                               vertex_bound=vertex_bound)
    axioms = check_axioms(graph)
    if not axioms.ok:
        raise ValidationError("semi-Cartan axioms failed: " + axioms.summary())
    standard = is_standard(graph)
    A = graph.cartan(0)
    ctype = finite_cartan_type(A)
    if standard and not ctype.is_finite_type:
        verdict = "infinite-dimensional"
    else:
        verdict = "no conclusion from this criterion"
    return Certificate(verdict, standard, A, ctype, graph.vertex_count(), axioms)


def to_dot(graph: SemiCartanGraph) -> str:
    """Deterministic Graphviz rendering: vertices carry degrees and Cartan data."""
    lines = ["graph semicartan {", "  node [shape=box, fontname=monospace];"]
    for v in graph.vertices:
        mat = "\\n".join(" ".join(f"{x:>2}" for x in row) for row in v.cartan)
        lines.append(f'  v{v.vid} [label="[{graph.vertex_label(v.vid)}]\\n{mat}"];')
    drawn = set()
    for (i, vid), rid in sorted(graph.reflections.items()):
        edge = (min(vid, rid), max(vid, rid), i)
        if edge in drawn:
            continue
        drawn.add(edge)
        lines.append(f'  v{vid} -- v{rid} [label="{i + 1}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
