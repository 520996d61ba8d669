"""Bound quotients of path algebras: kQ / <R>.

A quotient is presented by a degree-truncated two-sided noncommutative
Groebner basis of <R> under the length-then-lex path order.  The normal
basis consists of the paths of length < bound containing no leading
term as a (contiguous) subpath; admissibility is then verified by
checking that every path of length exactly `bound` reduces to zero, so
normal forms of shorter paths are exact and dim_k B = |normal basis|.

Relations must be uniform (all support paths of one relation share a
source and a target) and supported in lengths >= 2; both properties are
preserved by S-polynomials and reduction, which keeps splicing a
leading-term occurrence out of a path well defined.
"""

from __future__ import annotations

from .errors import (
    InvalidParameters,
    NonUniformRelation,
    NotAdmissibleAtBound,
    UnknownVertex,
)
from .linalg import QQ
from .quiver import Path, Quiver, compose_paths, vertex_path


class AlgebraElement:
    """A finitely supported map Path -> scalar; no zero coefficients."""

    __slots__ = ("field", "terms")

    def __init__(self, field, terms):
        self.field = field
        clean = {}
        for path, coeff in terms.items():
            coeff = field.coerce(coeff)
            if not field.is_zero(coeff):
                clean[path] = coeff
        self.terms = clean

    def is_zero(self):
        return not self.terms

    def support(self):
        return sorted(self.terms, key=Path.key)

    def __add__(self, other):
        f = self.field
        terms = dict(self.terms)
        for p, c in other.terms.items():
            terms[p] = f.add(terms.get(p, f.zero), c)
        return AlgebraElement(f, terms)

    def __sub__(self, other):
        f = self.field
        terms = dict(self.terms)
        for p, c in other.terms.items():
            terms[p] = f.sub(terms.get(p, f.zero), c)
        return AlgebraElement(f, terms)

    def scale(self, coeff):
        f = self.field
        coeff = f.coerce(coeff)
        return AlgebraElement(f, {p: f.mul(c, coeff) for p, c in self.terms.items()})

    def __eq__(self, other):
        return isinstance(other, AlgebraElement) and self.terms == other.terms

    def __repr__(self):
        if not self.terms:
            return "0"
        return " + ".join(f"{c}*{p}" for p, c in sorted(self.terms.items(), key=lambda t: t[0].key()))


def monomial(field, path, coeff=1) -> AlgebraElement:
    return AlgebraElement(field, {path: coeff})


def normalize_relations(quiver: Quiver, relations, field) -> tuple[AlgebraElement, ...]:
    """Coerce paths to monomial elements and enforce the RelationSet
    invariants: support lengths >= 2, one source and one target per
    relation, all arrows declared."""
    out = []
    for rel in relations:
        if isinstance(rel, Path):
            rel = monomial(field, rel)
        elif not isinstance(rel, AlgebraElement):
            raise InvalidParameters(f"relation {rel!r} is neither a Path nor an AlgebraElement")
        if rel.is_zero():
            continue
        sources = set()
        targets = set()
        for p in rel.terms:
            if p.length < 2:
                raise NonUniformRelation(f"relation term {p} has length < 2")
            quiver.path_from_arrows(p.arrows)  # validates arrows and composability
            sources.add(p.source)
            targets.add(p.target)
        if len(sources) != 1 or len(targets) != 1:
            raise NonUniformRelation(
                f"relation {rel} mixes sources {sorted(sources)} / targets {sorted(targets)}"
            )
        out.append(AlgebraElement(field, rel.terms))
    return tuple(out)


def is_inert(arrow_name: str, relations) -> bool:
    """True iff the arrow appears in no support path of any relation."""
    for rel in relations:
        paths = rel.terms if isinstance(rel, AlgebraElement) else [rel]
        for p in paths:
            if arrow_name in p.arrows:
                return False
    return True


def _splice(path: Path, pos: int, width: int, replacement: Path) -> Path:
    """Replace path.arrows[pos:pos+width] by the replacement's arrows.

    Valid because relations are uniform: the replacement shares the
    removed segment's endpoints, so the result is again composable with
    the same outer endpoints.
    """
    arrows = path.arrows[:pos] + replacement.arrows + path.arrows[pos + width:]
    return Path(path.source, path.target, arrows)


class _Groebner:
    """A reduced truncated Groebner basis: monic elements (lt, tail)
    with lt + tail in the ideal, sorted by leading term."""

    def __init__(self, field, elements):
        self.field = field
        self.elements = sorted(elements, key=lambda g: g[0].key())

    def find_occurrence(self, path: Path):
        for lt, tail in self.elements:
            width = lt.length
            if width > path.length:
                continue
            for pos in range(path.length - width + 1):
                if path.arrows[pos:pos + width] == lt.arrows:
                    return lt, tail, pos
        return None

    def reduce_terms(self, terms: dict) -> dict:
        """Full normal form: rewrite until no term contains a leading
        term; each rewrite strictly decreases the monomial order."""
        f = self.field
        terms = {p: c for p, c in terms.items() if not f.is_zero(c)}
        while True:
            hit = None
            for p in sorted(terms, key=Path.key, reverse=True):
                occ = self.find_occurrence(p)
                if occ is not None:
                    hit = (p, occ)
                    break
            if hit is None:
                return terms
            p, (lt, tail, pos) = hit
            coeff = terms.pop(p)
            for t, c in tail.items():
                spliced = _splice(p, pos, lt.length, t)
                nv = f.sub(terms.get(spliced, f.zero), f.mul(coeff, c))
                if f.is_zero(nv):
                    terms.pop(spliced, None)
                else:
                    terms[spliced] = nv


def _leading(terms: dict):
    return max(terms, key=Path.key)


def _monic(terms: dict, field):
    lt = _leading(terms)
    inv = field.inv(terms[lt])
    tail = {p: field.mul(c, inv) for p, c in terms.items() if p != lt}
    return lt, tail


def _overlap_spolys(g1, g2, bound, field):
    """S-polynomials of the proper overlaps suffix(lt1) == prefix(lt2),
    for overlap paths of length <= bound."""
    lt1, tail1 = g1
    lt2, tail2 = g2
    u, v = lt1.arrows, lt2.arrows
    out = []
    for k in range(1, min(len(u), len(v))):
        if u[-k:] != v[:k]:
            continue
        arrows = u + v[k:]
        if len(arrows) > bound:
            continue
        w = Path(lt1.source, lt2.target, arrows)
        # w with the lt1-occurrence rewritten, minus w with the
        # lt2-occurrence rewritten; the w terms cancel
        terms = {}
        for t, c in tail1.items():
            p = _splice(w, 0, len(u), t)
            nv = field.add(terms.get(p, field.zero), c)
            terms[p] = nv
        for t, c in tail2.items():
            p = _splice(w, len(u) - k, len(v), t)
            nv = field.sub(terms.get(p, field.zero), c)
            terms[p] = nv
        out.append({p: c for p, c in terms.items() if not field.is_zero(c)})
    return out


def _truncated_groebner(generators, bound, field):
    """Buchberger completion with all overlap paths capped at `bound`.

    The basis is kept reduced: no leading term divides another, and
    tails are in normal form.  A final verification pass re-checks that
    every capped S-polynomial reduces to zero.
    """
    queue = [dict(g.terms) for g in generators]
    basis: list[tuple[Path, dict]] = []

    def interreduce():
        changed = True
        while changed:
            changed = False
            for i, (lt, tail) in enumerate(list(basis)):
                others = _Groebner(field, basis[:i] + basis[i + 1:])
                reduced = others.reduce_terms({lt: field.one, **tail})
                if reduced != {lt: field.one, **tail}:
                    basis.pop(i)
                    if reduced:
                        queue.append(reduced)
                    changed = True
                    break

    while queue:
        terms = queue.pop()
        reduced = _Groebner(field, basis).reduce_terms(terms)
        if not reduced:
            continue
        new = _monic(reduced, field)
        basis.append(new)
        interreduce()
        if new in basis:
            for other in list(basis):
                queue.extend(_overlap_spolys(new, other, bound, field))
                if other != new:
                    queue.extend(_overlap_spolys(other, new, bound, field))

    # verification pass: the capped Buchberger criterion must hold
    gb = _Groebner(field, basis)
    for g1 in basis:
        for g2 in basis:
            for s in _overlap_spolys(g1, g2, bound, field):
                if gb.reduce_terms(s):
                    # an S-polynomial survived interreduction scheduling;
                    # fold it in and recurse
                    return _truncated_groebner(
                        [AlgebraElement(field, {g[0]: field.one, **g[1]}) for g in basis]
                        + [AlgebraElement(field, s)],
                        bound,
                        field,
                    )
    return gb


class QuotientAlgebra:
    """kQ / <R>, presented by a normal-form basis of paths.

    The vertices are a complete set of orthogonal primitive idempotents
    whose sum is the unit; the radical is spanned by the positive-length
    normal paths.
    """

    def __init__(self, quiver, relations, field, bound, groebner, basis):
        self.quiver = quiver
        self.relations = relations
        self.field = field
        self.bound = bound
        self.groebner = groebner
        self.basis = tuple(basis)
        self.index = {p: i for i, p in enumerate(self.basis)}
        self.vertex_index = {
            p.source: i for i, p in enumerate(self.basis) if p.length == 0
        }
        self.radical_indices = tuple(
            i for i, p in enumerate(self.basis) if p.length > 0
        )
        self._reduce_memo: dict[Path, dict] = {}
        self._mult_memo: dict[tuple[int, int], dict] = {}
        self._factorizations = None

    @property
    def dim(self):
        return len(self.basis)

    def element(self, terms) -> AlgebraElement:
        if isinstance(terms, Path):
            terms = {terms: self.field.one}
        return AlgebraElement(self.field, self.reduce_terms(terms))

    def unit(self) -> AlgebraElement:
        return AlgebraElement(
            self.field, {vertex_path(v): self.field.one for v in self.quiver.vertices}
        )

    def reduce_path(self, path: Path) -> dict:
        if path not in self._reduce_memo:
            self._reduce_memo[path] = self.groebner.reduce_terms({path: self.field.one})
        return self._reduce_memo[path]

    def reduce_terms(self, terms: dict) -> dict:
        f = self.field
        out = {}
        for p, c in terms.items():
            c = f.coerce(c)
            if f.is_zero(c):
                continue
            for q, d in self.reduce_path(p).items():
                nv = f.add(out.get(q, f.zero), f.mul(c, d))
                if f.is_zero(nv):
                    out.pop(q, None)
                else:
                    out[q] = nv
        return out

    def multiply(self, x: AlgebraElement, y: AlgebraElement) -> AlgebraElement:
        """Concatenation product x*y (y applied first), fully reduced."""
        f = self.field
        acc = {}
        for p, c in x.terms.items():
            for q, d in y.terms.items():
                r = compose_paths(p, q)
                if r is None:
                    continue
                coeff = f.mul(c, d)
                for s, e in self.reduce_path(r).items():
                    nv = f.add(acc.get(s, f.zero), f.mul(coeff, e))
                    if f.is_zero(nv):
                        acc.pop(s, None)
                    else:
                        acc[s] = nv
        return AlgebraElement(f, acc)

    def multiply_basis(self, i: int, j: int) -> dict:
        """Structure constants: basis_i * basis_j as {index: coeff}."""
        key = (i, j)
        if key not in self._mult_memo:
            r = compose_paths(self.basis[i], self.basis[j])
            if r is None:
                self._mult_memo[key] = {}
            else:
                self._mult_memo[key] = {
                    self.index[p]: c for p, c in self.reduce_path(r).items()
                }
        return self._mult_memo[key]

    def factorizations(self) -> dict:
        """For each basis index k, the list of (i, j, coeff) such that
        basis_i * basis_j contains coeff * basis_k.  Drives the inner
        terms of Hochschild (co)boundaries."""
        if self._factorizations is None:
            table = {k: [] for k in range(self.dim)}
            for i in range(self.dim):
                for j in range(self.dim):
                    for k, c in self.multiply_basis(i, j).items():
                        table[k].append((i, j, c))
            self._factorizations = table
        return self._factorizations

    def corner_dim(self, e: str, f: str) -> int:
        """dim of eBf: the normal paths from f to e (left action by e
        fixes target-e paths, right action by f fixes source-f paths)."""
        for v in (e, f):
            if v not in self.quiver.vertices:
                raise UnknownVertex(v)
        return sum(1 for p in self.basis if p.target == e and p.source == f)

    def corner_basis(self, e: str, f: str) -> list[Path]:
        return [p for p in self.basis if p.target == e and p.source == f]

    def is_vertex(self, i: int) -> bool:
        return self.basis[i].length == 0

    def vertex_of(self, i: int) -> str:
        return self.basis[i].source

    def vertex_basis_index(self, v: str) -> int:
        if v not in self.vertex_index:
            raise UnknownVertex(v)
        return self.vertex_index[v]

    # left grading of a basis path is its target (x * p = p iff x = t(p)),
    # right grading its source
    def basis_lgrade(self, i: int) -> str:
        return self.basis[i].target

    def basis_rgrade(self, i: int) -> str:
        return self.basis[i].source

    @property
    def vertices(self):
        return self.quiver.vertices

    def generator_indices(self):
        """Basis indices generating the algebra over the vertex span:
        the arrows."""
        return tuple(i for i in self.radical_indices if self.basis[i].length == 1)

    def __repr__(self):
        return f"QuotientAlgebra(dim {self.dim} over {self.field.name})"


def default_bound(quiver: Quiver, relations) -> int:
    """2 + (longest relation support path length) * |Q_1|, raised to
    (longest path + 1) on acyclic quivers where that crude formula can
    undershoot (e.g. R = {} on a hereditary quiver)."""
    longest_rel = 0
    for rel in relations:
        for p in rel.terms:
            longest_rel = max(longest_rel, p.length)
    bound = 2 + longest_rel * len(quiver.arrows)
    if not quiver.has_oriented_cycle():
        bound = max(bound, quiver.longest_path_length() + 1)
    return bound


def build_quotient(quiver: Quiver, relations, field=QQ, bound=None) -> QuotientAlgebra:
    """Build kQ/<R> with a verified admissibility bound.

    Raises NotAdmissibleAtBound with a witness path when some path of
    length `bound` does not reduce to zero (the algebra may be infinite
    dimensional, or the bound is too small).
    """
    relations = normalize_relations(quiver, relations, field)
    if bound is None:
        bound = default_bound(quiver, relations)
    if bound < 2:
        raise InvalidParameters("admissibility bound must be >= 2")
    gb = _truncated_groebner(relations, bound, field)
    basis = _normal_basis(quiver, gb, bound)
    alg = QuotientAlgebra(quiver, relations, field, bound, gb, basis)
    _check_admissible(alg)
    return alg


def _normal_basis(quiver, gb, bound):
    """Paths of length < bound containing no leading term as a subpath,
    enumerated by DFS (a new occurrence can only appear as a suffix)."""
    lts = [lt.arrows for lt, _ in gb.elements]
    basis = [vertex_path(v) for v in quiver.vertices]

    def suffix_hits(arrows):
        n = len(arrows)
        for lt in lts:
            if len(lt) <= n and arrows[n - len(lt):] == lt:
                return True
        return False

    def extend(start, names, at, depth):
        if depth == 0:
            return
        for arrow in quiver.arrows_from(at):
            names.append(arrow.name)
            if not suffix_hits(tuple(names)):
                basis.append(Path(start, arrow.target, tuple(names)))
                extend(start, names, arrow.target, depth - 1)
            names.pop()

    for v in quiver.vertices:
        extend(v, [], v, bound - 1)
    return sorted(basis, key=Path.key)


def _check_admissible(alg: QuotientAlgebra):
    """Verify that every path of length `bound` reduces to zero,
    pruning branches whose prefix already reduces to zero."""
    quiver, bound = alg.quiver, alg.bound

    def extend(start, names, at, depth):
        if depth == bound:
            path = Path(start, at, tuple(names))
            if alg.reduce_path(path):
                raise NotAdmissibleAtBound(path, bound)
            return
        for arrow in quiver.arrows_from(at):
            names.append(arrow.name)
            prefix = Path(start, arrow.target, tuple(names))
            if len(names) < 2 or alg.reduce_path(prefix):
                extend(start, names, arrow.target, depth + 1)
            names.pop()

    for v in quiver.vertices:
        extend(v, [], v, 0)
