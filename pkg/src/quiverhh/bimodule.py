"""Finite-dimensional bimodules and one-sided modules over a bound
quiver algebra: the regular bimodule, the projective bimodules Bf (x) eB,
simple bimodules, tensor products over the algebra, the tensor algebra
T_B(N) with its grading, relative-path combinatorics, and the
indecomposable one-sided modules P_x, I_x, S_x.

Conventions, fixed once for the whole package: composition is
right-to-left (the product p*q applies q first and vanishes unless
t(q) = s(p)), hence

    eB = span{normal q : t(q) = e},     Bf = span{normal p : s(p) = f},

and eBf is spanned by the normal paths from f to e.  Every basis label
of a (bi)module carries vertex gradings: x acts as identity on the left
of an (x, y)-graded label and y as identity on the right; actions of
vertices are implicit in the grading, only radical actions are stored.

Tensor products over the algebra are built in two steps: the E-balanced
pairs are selected combinatorially (E = span of the vertices), then the
middle radical-action relations are quotiented by exact row reduction.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InvalidParameters, NotNilpotent, UnknownVertex
from .linalg import RowSpace, SparseMatrix
from .quiver import vertex_path


class Bimodule:
    """A bimodule given by a graded basis and radical action columns.

    `left[r]` maps a basis index j to the expansion of basis_r * m_j,
    `right[r]` to m_j * basis_r, for every radical index r of the
    algebra with a nonzero action.
    """

    __slots__ = ("algebra", "labels", "lgrade", "rgrade", "left", "right")

    def __init__(self, algebra, labels, lgrade, rgrade, left, right):
        self.algebra = algebra
        self.labels = tuple(labels)
        self.lgrade = tuple(lgrade)
        self.rgrade = tuple(rgrade)
        self.left = left
        self.right = right
        for v in self.lgrade + self.rgrade:
            if v not in algebra.vertices:
                raise UnknownVertex(v)

    @property
    def dim(self):
        return len(self.labels)

    def act_left(self, i, vec):
        """basis_i . vec for an algebra basis index i."""
        alg = self.algebra
        if alg.is_vertex(i):
            v = alg.vertex_of(i)
            return {j: c for j, c in vec.items() if self.lgrade[j] == v}
        f = alg.field
        out = {}
        cols = self.left.get(i)
        if not cols:
            return out
        for j, c in vec.items():
            for k, w in cols.get(j, {}).items():
                nv = f.add(out.get(k, f.zero), f.mul(c, w))
                if f.is_zero(nv):
                    out.pop(k, None)
                else:
                    out[k] = nv
        return out

    def act_right(self, i, vec):
        """vec . basis_i."""
        alg = self.algebra
        if alg.is_vertex(i):
            v = alg.vertex_of(i)
            return {j: c for j, c in vec.items() if self.rgrade[j] == v}
        f = alg.field
        out = {}
        cols = self.right.get(i)
        if not cols:
            return out
        for j, c in vec.items():
            for k, w in cols.get(j, {}).items():
                nv = f.add(out.get(k, f.zero), f.mul(c, w))
                if f.is_zero(nv):
                    out.pop(k, None)
                else:
                    out[k] = nv
        return out

    def act_left_expansion(self, expansion, vec):
        """Action of an algebra element given as {basis index: coeff}."""
        f = self.algebra.field
        out = {}
        for i, c in expansion.items():
            for k, w in self.act_left(i, vec).items():
                nv = f.add(out.get(k, f.zero), f.mul(c, w))
                if f.is_zero(nv):
                    out.pop(k, None)
                else:
                    out[k] = nv
        return out

    def act_right_expansion(self, expansion, vec):
        f = self.algebra.field
        out = {}
        for i, c in expansion.items():
            for k, w in self.act_right(i, vec).items():
                nv = f.add(out.get(k, f.zero), f.mul(c, w))
                if f.is_zero(nv):
                    out.pop(k, None)
                else:
                    out[k] = nv
        return out

    def unit(self, j):
        return {j: self.algebra.field.one}

    def __repr__(self):
        return f"Bimodule(dim {self.dim} over {self.algebra!r})"


def _vec_eq(a, b, field):
    keys = set(a) | set(b)
    return all(
        field.is_zero(field.sub(a.get(k, field.zero), b.get(k, field.zero)))
        for k in keys
    )


def validate_bimodule(m: Bimodule):
    """Exhaustive generator check of the bimodule axioms: actions are
    associative on all algebra basis pairs and the two actions commute.
    Raises InvalidParameters on the first failure."""
    alg = m.algebra
    f = alg.field
    for j in range(m.dim):
        e_j = m.unit(j)
        for i1 in range(alg.dim):
            left1 = m.act_left(i1, e_j)
            right1 = m.act_right(i1, e_j)
            for i2 in range(alg.dim):
                # (p2 p1) . m = p2 . (p1 . m)
                composed = m.act_left_expansion(alg.multiply_basis(i2, i1), e_j)
                stepwise = m.act_left(i2, left1)
                if not _vec_eq(composed, stepwise, f):
                    raise InvalidParameters(
                        f"left action not associative at basis {j}, algebra ({i2},{i1})"
                    )
                # m . (p1 p2) = (m . p1) . p2
                composed = m.act_right_expansion(alg.multiply_basis(i1, i2), e_j)
                stepwise = m.act_right(i2, right1)
                if not _vec_eq(composed, stepwise, f):
                    raise InvalidParameters(
                        f"right action not associative at basis {j}, algebra ({i1},{i2})"
                    )
                # commuting actions
                lr = m.act_left(i1, m.act_right(i2, e_j))
                rl = m.act_right(i2, left1)
                if not _vec_eq(lr, rl, f):
                    raise InvalidParameters(
                        f"actions do not commute at basis {j}, algebra ({i1},{i2})"
                    )


def regular_bimodule(b) -> Bimodule:
    """B as a B-bimodule: the carrier of HH^*(B) and HH_*(B)."""
    left = {}
    right = {}
    for r in b.radical_indices:
        lcols = {}
        rcols = {}
        for j in range(b.dim):
            lj = b.multiply_basis(r, j)
            if lj:
                lcols[j] = lj
            rj = b.multiply_basis(j, r)
            if rj:
                rcols[j] = rj
        left[r] = lcols
        right[r] = rcols
    return Bimodule(
        b,
        b.basis,
        [b.basis_lgrade(i) for i in range(b.dim)],
        [b.basis_rgrade(i) for i in range(b.dim)],
        left,
        right,
    )


def projective_bimodule(b, f_vertex, e_vertex) -> Bimodule:
    """N = Bf (x) eB, the projective bimodule at the idempotent f (x) e.

    Basis {p (x) q : s(p) = f, t(q) = e}; the left action multiplies
    into p, the right action into q, so dim N = dim(Bf) * dim(eB).
    """
    for v in (f_vertex, e_vertex):
        if v not in b.vertices:
            raise UnknownVertex(v)
    p_indices = [i for i in range(b.dim) if b.basis_rgrade(i) == f_vertex]
    q_indices = [i for i in range(b.dim) if b.basis_lgrade(i) == e_vertex]
    labels = [(b.basis[i], b.basis[j]) for i in p_indices for j in q_indices]
    pos = {(i, j): k for k, (i, j) in enumerate(
        (i, j) for i in p_indices for j in q_indices
    )}
    lgrade = [b.basis_lgrade(i) for i in p_indices for _ in q_indices]
    rgrade = [b.basis_rgrade(j) for _ in p_indices for j in q_indices]
    left = {}
    right = {}
    for r in b.radical_indices:
        lcols = {}
        rcols = {}
        for (i, j), k in pos.items():
            ri = b.multiply_basis(r, i)
            if ri:
                lcols[k] = {pos[(i2, j)]: c for i2, c in ri.items()}
            jr = b.multiply_basis(j, r)
            if jr:
                rcols[k] = {pos[(i, j2)]: c for j2, c in jr.items()}
        left[r] = lcols
        right[r] = rcols
    return Bimodule(b, labels, lgrade, rgrade, left, right)


def simple_hom_bimodule(b, y_vertex, x_vertex) -> Bimodule:
    """The one-dimensional bimodule k(y, x): vertices act through the
    (y, x) bigrading and the radical acts as zero.  It realises
    Hom_k(S_x, S_y) as a bimodule of coefficients."""
    for v in (y_vertex, x_vertex):
        if v not in b.vertices:
            raise UnknownVertex(v)
    return Bimodule(b, [(y_vertex, x_vertex)], [y_vertex], [x_vertex], {}, {})


def direct_sum(mods) -> Bimodule:
    mods = list(mods)
    if not mods:
        raise InvalidParameters("direct sum of no bimodules")
    alg = mods[0].algebra
    labels = []
    lgrade = []
    rgrade = []
    offsets = []
    total = 0
    for t, m in enumerate(mods):
        if m.algebra is not alg:
            raise InvalidParameters("direct sum requires a common algebra")
        offsets.append(total)
        labels.extend((t, lab) for lab in m.labels)
        lgrade.extend(m.lgrade)
        rgrade.extend(m.rgrade)
        total += m.dim
    left = {}
    right = {}
    for r in alg.radical_indices:
        lcols = {}
        rcols = {}
        for t, m in enumerate(mods):
            off = offsets[t]
            for j, col in m.left.get(r, {}).items():
                lcols[off + j] = {off + k: c for k, c in col.items()}
            for j, col in m.right.get(r, {}).items():
                rcols[off + j] = {off + k: c for k, c in col.items()}
        left[r] = lcols
        right[r] = rcols
    return Bimodule(alg, labels, lgrade, rgrade, left, right)


def zero_bimodule(b) -> Bimodule:
    return Bimodule(b, [], [], [], {}, {})


def invariants_dim(m: Bimodule) -> int:
    """dim M^B = {m : bm = mb for all b}; for M = B this is the centre.

    It suffices to impose the vertex conditions (the label is
    diagonally graded) and commutation with a generating set of the
    algebra over the vertices.
    """
    alg = m.algebra
    diagonal = [j for j in range(m.dim) if m.lgrade[j] == m.rgrade[j]]
    entries = []
    row_index = {}
    f = alg.field
    for c, j in enumerate(diagonal):
        e_j = m.unit(j)
        for a in alg.generator_indices():
            diff = _vec_sub(m.act_left(a, e_j), m.act_right(a, e_j), f)
            for k, val in diff.items():
                row = row_index.setdefault((a, k), len(row_index))
                entries.append((row, c, val))
    mat = SparseMatrix(len(row_index), len(diagonal), entries, f)
    return mat.kernel_dim()


def coinvariants_dim(m: Bimodule) -> int:
    """dim M_B = M / span{bm - mb}; commutators with the vertices and a
    generating set span all commutators ([xy, m] = [x, ym] + [y, mx])."""
    alg = m.algebra
    f = alg.field
    generators = [i for i in range(alg.dim) if alg.is_vertex(i)] + list(
        alg.generator_indices()
    )
    space = RowSpace(f)
    for j in range(m.dim):
        e_j = m.unit(j)
        for g in generators:
            diff = _vec_sub(m.act_left(g, e_j), m.act_right(g, e_j), f)
            if diff:
                space.add(diff)
    return m.dim - space.rank


def _vec_sub(a, b, field):
    out = dict(a)
    for k, v in b.items():
        nv = field.sub(out.get(k, field.zero), v)
        if field.is_zero(nv):
            out.pop(k, None)
        else:
            out[k] = nv
    return out


class TensorProductBimodule(Bimodule):
    """M1 (x)_B M2, realised as the E-balanced pairs modulo the middle
    radical-action relations m1.b (x) m2 - m1 (x) b.m2.

    The quotient basis is the set of non-pivot pair coordinates of the
    reduced relation row space, so `embed_pair` sends a pure tensor to
    exact quotient coordinates; everything downstream (induced actions,
    canonical tensor-algebra products, the one-step resolution maps)
    goes through it.
    """

    __slots__ = ("factor1", "factor2", "pairs", "pair_pos", "reducer", "quotient_cols", "_col_of")

    def __init__(self, m1: Bimodule, m2: Bimodule):
        if m1.algebra is not m2.algebra:
            raise InvalidParameters("tensor factors live over different algebras")
        alg = m1.algebra
        f = alg.field
        pairs = [
            (i1, i2)
            for i1 in range(m1.dim)
            for i2 in range(m2.dim)
            if m1.rgrade[i1] == m2.lgrade[i2]
        ]
        pair_pos = {p: k for k, p in enumerate(pairs)}
        reducer = RowSpace(f)
        for r in alg.radical_indices:
            t_r = alg.basis_lgrade(r)
            s_r = alg.basis_rgrade(r)
            for i1 in range(m1.dim):
                if m1.rgrade[i1] != t_r:
                    continue
                m1r = m1.act_right(r, m1.unit(i1))
                for i2 in range(m2.dim):
                    if m2.lgrade[i2] != s_r:
                        continue
                    rm2 = m2.act_left(r, m2.unit(i2))
                    rel = {}
                    for k1, c in m1r.items():
                        rel[pair_pos[(k1, i2)]] = c
                    for k2, c in rm2.items():
                        key = pair_pos[(i1, k2)]
                        nv = f.sub(rel.get(key, f.zero), c)
                        if f.is_zero(nv):
                            rel.pop(key, None)
                        else:
                            rel[key] = nv
                    if rel:
                        reducer.add(rel)
        quotient_cols = [k for k in range(len(pairs)) if k not in reducer.pivots]
        col_of = {k: c for c, k in enumerate(quotient_cols)}

        labels = [(m1.labels[pairs[k][0]], m2.labels[pairs[k][1]]) for k in quotient_cols]
        lgrade = [m1.lgrade[pairs[k][0]] for k in quotient_cols]
        rgrade = [m2.rgrade[pairs[k][1]] for k in quotient_cols]

        self.factor1 = m1
        self.factor2 = m2
        self.pairs = pairs
        self.pair_pos = pair_pos
        self.reducer = reducer
        self.quotient_cols = quotient_cols
        self._col_of = col_of

        left = {}
        right = {}
        for r in alg.radical_indices:
            lcols = {}
            rcols = {}
            for c, k in enumerate(quotient_cols):
                i1, i2 = pairs[k]
                ri1 = m1.act_left(r, m1.unit(i1))
                if ri1:
                    col = self._project({(k1, i2): v for k1, v in ri1.items()})
                    if col:
                        lcols[c] = col
                i2r = m2.act_right(r, m2.unit(i2))
                if i2r:
                    col = self._project({(i1, k2): v for k2, v in i2r.items()})
                    if col:
                        rcols[c] = col
            left[r] = lcols
            right[r] = rcols
        super().__init__(alg, labels, lgrade, rgrade, left, right)

    def _project(self, pair_vec):
        """Reduce a vector over pair coordinates to quotient coords."""
        raw = {}
        for (i1, i2), v in pair_vec.items():
            pos = self.pair_pos.get((i1, i2))
            if pos is None:
                continue  # unbalanced pure tensor is zero in the quotient
            raw[pos] = v
        reduced = self.reducer.reduce(raw)
        return {self._col_of[k]: v for k, v in reduced.items()}

    def embed_pair(self, i1, i2):
        """Quotient coordinates of the pure tensor m1_{i1} (x) m2_{i2}."""
        return self._project({(i1, i2): self.algebra.field.one})

    def embed(self, vec1, vec2):
        """Bilinear extension of embed_pair."""
        f = self.algebra.field
        raw = {}
        for i1, c1 in vec1.items():
            for i2, c2 in vec2.items():
                pos = self.pair_pos.get((i1, i2))
                if pos is None:
                    continue
                nv = f.add(raw.get(pos, f.zero), f.mul(c1, c2))
                if f.is_zero(nv):
                    raw.pop(pos, None)
                else:
                    raw[pos] = nv
        reduced = self.reducer.reduce(raw)
        return {self._col_of[k]: v for k, v in reduced.items()}


def tensor_over_B(m1: Bimodule, m2: Bimodule) -> TensorProductBimodule:
    return TensorProductBimodule(m1, m2)


class TensorAlgebra:
    """T = T_B(N) = B + N + N(x)_B N + ..., finite because some tensor
    power of N vanishes.

    Basis labels are (0, i) for the algebra part and (d, j) for the
    degree-d piece; positive-degree basis elements are classes of pure
    words in N's basis, and the product concatenates words.  The class
    implements the same basis interface as QuotientAlgebra (gradings,
    radical, structure constants), so the Hochschild complexes can be
    built over T directly.
    """

    def __init__(self, base, generator: Bimodule, cap=None):
        if generator.algebra is not base:
            raise InvalidParameters("generator bimodule must live over the base algebra")
        self.base = base
        self.field = base.field
        self.generator = generator
        if cap is None:
            cap = base.dim + 1
        pieces = [regular_bimodule(base)]
        words = [[None] * base.dim]
        if generator.dim > 0:
            pieces.append(generator)
            words.append([(j,) for j in range(generator.dim)])
            while pieces[-1].dim > 0:
                if len(pieces) > cap:
                    raise NotNilpotent(len(pieces))
                nxt = TensorProductBimodule(pieces[-1], generator)
                if nxt.dim == 0:
                    break
                prev_words = words[-1]
                words.append(
                    [prev_words[self._pair_of(nxt, k)[0]] + (self._pair_of(nxt, k)[1],)
                     for k in range(nxt.dim)]
                )
                pieces.append(nxt)
        self.pieces = pieces
        self.words = words
        self.labels = []
        self.label_index = {}
        self.degrees = []
        self.piece_pos = []
        for d, piece in enumerate(pieces):
            for j in range(piece.dim):
                self.label_index[(d, j)] = len(self.labels)
                self.labels.append((d, piece.labels[j]) if d else ("B", base.basis[j]))
                self.degrees.append(d)
                self.piece_pos.append((d, j))
        self._product_memo = {}
        self._factorizations = None

    @staticmethod
    def _pair_of(piece: TensorProductBimodule, k):
        return piece.pairs[piece.quotient_cols[k]]

    # ---- algebra-like basis interface -------------------------------
    @property
    def dim(self):
        return len(self.labels)

    @property
    def vertices(self):
        return self.base.vertices

    @property
    def top_degree(self):
        return len(self.pieces) - 1

    def piece_dim(self, d):
        return self.pieces[d].dim if d < len(self.pieces) else 0

    def degree_of(self, i):
        return self.degrees[i]

    def is_vertex(self, i):
        d, j = self.piece_pos[i]
        return d == 0 and self.base.is_vertex(j)

    def vertex_of(self, i):
        d, j = self.piece_pos[i]
        return self.base.vertex_of(j)

    def vertex_basis_index(self, v):
        return self.label_index[(0, self.base.vertex_basis_index(v))]

    def basis_lgrade(self, i):
        d, j = self.piece_pos[i]
        return self.base.basis_lgrade(j) if d == 0 else self.pieces[d].lgrade[j]

    def basis_rgrade(self, i):
        d, j = self.piece_pos[i]
        return self.base.basis_rgrade(j) if d == 0 else self.pieces[d].rgrade[j]

    @property
    def radical_indices(self):
        return tuple(i for i in range(self.dim) if not self.is_vertex(i))

    def generator_indices(self):
        """The base algebra's generators (in degree 0) together with
        the whole degree-1 piece generate T over the vertex span."""
        out = [self.label_index[(0, i)] for i in self.base.generator_indices()]
        if len(self.pieces) > 1:
            out.extend(self.label_index[(1, j)] for j in range(self.pieces[1].dim))
        return tuple(out)

    def word_to_vec(self, d, word):
        """Coordinates in piece d of the class of a pure word in N's
        basis (the left-nested fold of the tensor embeddings)."""
        if d == 0:
            raise InvalidParameters("words have degree >= 1")
        if d == 1:
            return {word[0]: self.field.one}
        if d >= len(self.pieces):
            return {}
        piece = self.pieces[d]
        prefix = self.word_to_vec(d - 1, word[:-1])
        return piece.embed(prefix, {word[-1]: self.field.one})

    def _product_piece(self, d1, j1, d2, j2):
        """Product of piece basis elements, as {global index: coeff}."""
        f = self.field
        if d1 == 0 and d2 == 0:
            return {
                self.label_index[(0, k)]: c
                for k, c in self.base.multiply_basis(j1, j2).items()
            }
        if d1 == 0:
            vec = self.pieces[d2].act_left(j1, {j2: f.one})
            return {self.label_index[(d2, k)]: c for k, c in vec.items()}
        if d2 == 0:
            vec = self.pieces[d1].act_right(j2, {j1: f.one})
            return {self.label_index[(d1, k)]: c for k, c in vec.items()}
        d = d1 + d2
        if d >= len(self.pieces):
            return {}
        word = self.words[d1][j1] + self.words[d2][j2]
        vec = self.word_to_vec(d, word)
        return {self.label_index[(d, k)]: c for k, c in vec.items()}

    def multiply_basis(self, i1, i2):
        key = (i1, i2)
        if key not in self._product_memo:
            d1, j1 = self.piece_pos[i1]
            d2, j2 = self.piece_pos[i2]
            self._product_memo[key] = self._product_piece(d1, j1, d2, j2)
        return self._product_memo[key]

    def factorizations(self):
        if self._factorizations is None:
            table = {k: [] for k in range(self.dim)}
            for i in range(self.dim):
                for j in range(self.dim):
                    for k, c in self.multiply_basis(i, j).items():
                        table[k].append((i, j, c))
            self._factorizations = table
        return self._factorizations

    # ---- views ------------------------------------------------------
    def as_bimodule_over_base(self) -> Bimodule:
        """T as a B-bimodule (B acting through degree zero)."""
        left = {}
        right = {}
        for r in self.base.radical_indices:
            r_global = self.label_index[(0, r)]
            lcols = {}
            rcols = {}
            for i in range(self.dim):
                li = self.multiply_basis(r_global, i)
                if li:
                    lcols[i] = li
                ri = self.multiply_basis(i, r_global)
                if ri:
                    rcols[i] = ri
            left[r] = lcols
            right[r] = rcols
        return Bimodule(
            self.base,
            self.labels,
            [self.basis_lgrade(i) for i in range(self.dim)],
            [self.basis_rgrade(i) for i in range(self.dim)],
            left,
            right,
        )

    def regular_bimodule(self) -> Bimodule:
        """T as a T-bimodule (the coefficients of HH(T) and of the
        relative theory)."""
        left = {}
        right = {}
        for r in self.radical_indices:
            lcols = {}
            rcols = {}
            for i in range(self.dim):
                li = self.multiply_basis(r, i)
                if li:
                    lcols[i] = li
                ri = self.multiply_basis(i, r)
                if ri:
                    rcols[i] = ri
            left[r] = lcols
            right[r] = rcols
        return Bimodule(
            self,
            self.labels,
            [self.basis_lgrade(i) for i in range(self.dim)],
            [self.basis_rgrade(i) for i in range(self.dim)],
            left,
            right,
        )

    def __repr__(self):
        dims = "+".join(str(p.dim) for p in self.pieces)
        return f"TensorAlgebra(dim {self.dim} = {dims})"


def tensor_algebra(b, n: Bimodule, cap=None) -> TensorAlgebra:
    """T_B(N); raises NotNilpotent when no tensor power of N vanishes
    below the cap (default dim B + 1), which by the relative-cycle
    criterion happens exactly when a relative cycle exists."""
    return TensorAlgebra(b, n, cap)


# ---- relative paths ---------------------------------------------------


@dataclass(frozen=True)
class RelativePath:
    """A chain of new arrows linked through nonzero corner spaces.

    `arrows` are indices into the new-arrow list, in application order;
    dim is the product of the junction corner dimensions (1 for a
    single arrow)."""

    arrows: tuple[int, ...]
    source: str
    target: str
    dim: int
    is_cycle: bool

    @property
    def length(self):
        return len(self.arrows)


def alpha_arrow_list(vertices, alpha) -> list[tuple[str, str]]:
    """The (f, e) list of new arrows in surgery-id order: row-major over
    declared vertices, repeated by multiplicity."""
    out = []
    for f in vertices:
        for e in vertices:
            out.extend([(f, e)] * alpha.get((f, e), 0))
    return out


def relative_paths(b, new_arrows, max_len) -> list[RelativePath]:
    """All relative paths of length 1..max_len over the (f, e) arrow
    pairs, with their dimensions and cycle flags.

    Repetition of arrows is allowed during enumeration; when no
    relative cycle exists no arrow can repeat, so the enumeration is
    then automatically repetition-free.
    """
    new_arrows = list(new_arrows)
    n_arrows = len(new_arrows)
    corners = {}

    def corner(x, y):
        if (x, y) not in corners:
            corners[(x, y)] = b.corner_dim(x, y)
        return corners[(x, y)]

    out = []

    def extend(seq, dim):
        first = new_arrows[seq[0]]
        last = new_arrows[seq[-1]]
        # relative cycle: (a_1, a_n) linked, i.e. s(a_1) B t(a_n) != 0
        is_cycle = corner(first[1], last[0]) > 0
        out.append(RelativePath(tuple(seq), first[1], last[0], dim, is_cycle))
        if len(seq) == max_len:
            return
        for i in range(n_arrows):
            f_i, e_i = new_arrows[i]
            link = corner(e_i, last[0])  # s(a_next) B t(a_prev)
            if link > 0:
                extend(seq + [i], dim * link)

    if max_len >= 1:
        for i in range(n_arrows):
            extend([i], 1)
    return out


def find_relative_cycle(b, new_arrows):
    """A witness relative cycle, or None.  Only repetition-free paths
    need checking: a repetition inside a relative path always yields a
    shorter relative cycle."""
    new_arrows = list(new_arrows)
    n_arrows = len(new_arrows)

    def corner(x, y):
        return b.corner_dim(x, y)

    witness = []

    def search(seq, used):
        first = new_arrows[seq[0]]
        last = new_arrows[seq[-1]]
        if corner(first[1], last[0]) > 0:
            witness.append(tuple(seq))
            return True
        for i in range(n_arrows):
            if i in used:
                continue
            f_i, e_i = new_arrows[i]
            if corner(e_i, last[0]) > 0:
                if search(seq + [i], used | {i}):
                    return True
        return False

    for i in range(n_arrows):
        if search([i], {i}):
            return tuple(new_arrows[j] for j in witness[0])
    return None


def alpha_bimodule(b, alpha) -> Bimodule:
    """N^alpha: one projective bimodule Bf (x) eB per new arrow."""
    arrow_list = alpha_arrow_list(b.vertices, alpha)
    if not arrow_list:
        return zero_bimodule(b)
    return direct_sum([projective_bimodule(b, f, e) for f, e in arrow_list])


def graded_piece_dims(b, alpha, n) -> int:
    """dim (N^alpha)^{(x)_B n} by the relative-path formula: each
    length-n relative path contributes dim(gamma) * dim(B t(gamma)) *
    dim(s(gamma) B)."""
    if n < 0:
        raise InvalidParameters("degree must be >= 0")
    if n == 0:
        return b.dim
    arrow_list = alpha_arrow_list(b.vertices, alpha)
    total = 0
    for gamma in relative_paths(b, arrow_list, n):
        if gamma.length != n:
            continue
        dim_source_side = sum(
            1 for i in range(b.dim) if b.basis_rgrade(i) == gamma.target
        )  # dim B t(gamma): paths with source t(gamma)
        dim_target_side = sum(
            1 for i in range(b.dim) if b.basis_lgrade(i) == gamma.source
        )  # dim s(gamma) B: paths with target s(gamma)
        total += gamma.dim * dim_source_side * dim_target_side
    return total


def surgery_algebra(b, alpha, bound=None):
    """B^alpha = kQ^alpha / <R>_{Q^alpha}: the same relations over the
    enlarged quiver.  Infinite-dimensional inputs (relative cycles)
    surface as NotAdmissibleAtBound from the quotient construction."""
    from .algebra import build_quotient, default_bound

    q2 = b.quiver.add_arrows(alpha)
    if bound is None:
        bound = default_bound(q2, b.relations)
        if q2.has_oriented_cycle():
            # normal paths alternate B-segments and new arrows; without
            # relative cycles each new arrow appears at most once
            n_new = len(q2.arrows) - len(b.quiver.arrows)
            longest_segment = max((p.length for p in b.basis), default=0)
            bound = max(bound, (n_new + 1) * longest_segment + n_new + 1)
    return build_quotient(q2, b.relations, b.field, bound)


def tensor_iso_check(b, alpha):
    """Realise the canonical algebra map B^alpha -> T_B(N^alpha)
    (old arrows to degree 0, each new arrow to the f (x) e generator of
    its summand) on basis elements and check it is bijective and
    multiplicative.  Returns (bijective, multiplicative, dims_equal)."""
    b_alpha = surgery_algebra(b, alpha)
    n_mod = alpha_bimodule(b, alpha)
    t = tensor_algebra(b, n_mod)
    arrow_list = alpha_arrow_list(b.vertices, alpha)
    new_names = [
        a.name for a in b_alpha.quiver.arrows if a.name not in b.quiver.arrow_by_name
    ]
    f = b.field

    # image of each arrow of Q^alpha as a T-vector
    arrow_image = {}
    for a in b.quiver.arrows:
        idx = b.index[b.quiver.arrow_path(a.name)]
        arrow_image[a.name] = {t.label_index[(0, idx)]: f.one}
    for pos, name in enumerate(new_names):
        f_v, e_v = arrow_list[pos]
        summand_label = (pos, (vertex_path(f_v), vertex_path(e_v)))
        j = n_mod.labels.index(summand_label)
        arrow_image[name] = {t.label_index[(1, j)]: f.one}

    def t_mul(vec1, vec2):
        out = {}
        for i1, c1 in vec1.items():
            for i2, c2 in vec2.items():
                for k, w in t.multiply_basis(i1, i2).items():
                    nv = f.add(out.get(k, f.zero), f.mul(f.mul(c1, c2), w))
                    if f.is_zero(nv):
                        out.pop(k, None)
                    else:
                        out[k] = nv
        return out

    def phi_path(path):
        if path.length == 0:
            return {t.vertex_basis_index(path.source): f.one}
        vec = arrow_image[path.arrows[0]]
        for name in path.arrows[1:]:
            vec = t_mul(arrow_image[name], vec)
        return vec

    images = [phi_path(p) for p in b_alpha.basis]
    mat = SparseMatrix.from_columns(t.dim, images, f)
    dims_equal = b_alpha.dim == t.dim
    bijective = dims_equal and mat.rank() == t.dim

    def phi_vec(expansion):
        out = {}
        for i, c in expansion.items():
            for k, w in images[i].items():
                nv = f.add(out.get(k, f.zero), f.mul(c, w))
                if f.is_zero(nv):
                    out.pop(k, None)
                else:
                    out[k] = nv
        return out

    multiplicative = True
    for i in range(b_alpha.dim):
        for j in range(b_alpha.dim):
            lhs = phi_vec(b_alpha.multiply_basis(i, j))
            rhs = t_mul(images[i], images[j])
            if not _vec_eq(lhs, rhs, f):
                multiplicative = False
                break
        if not multiplicative:
            break
    return bijective, multiplicative, dims_equal


# ---- one-sided modules ------------------------------------------------


class OneSidedModule:
    """A left module over the algebra: graded basis plus radical action
    columns (action[r][j] = expansion of basis_r . m_j)."""

    __slots__ = ("algebra", "labels", "grade", "action")

    def __init__(self, algebra, labels, grade, action):
        self.algebra = algebra
        self.labels = tuple(labels)
        self.grade = tuple(grade)
        self.action = action

    @property
    def dim(self):
        return len(self.labels)

    def act(self, i, vec):
        alg = self.algebra
        if alg.is_vertex(i):
            v = alg.vertex_of(i)
            return {j: c for j, c in vec.items() if self.grade[j] == v}
        f = alg.field
        out = {}
        cols = self.action.get(i)
        if not cols:
            return out
        for j, c in vec.items():
            for k, w in cols.get(j, {}).items():
                nv = f.add(out.get(k, f.zero), f.mul(c, w))
                if f.is_zero(nv):
                    out.pop(k, None)
                else:
                    out[k] = nv
        return out

    def __repr__(self):
        return f"OneSidedModule(dim {self.dim})"


def indecomposables(b, x):
    """(P_x, I_x, S_x): the projective cover P_x = Bx, the injective
    hull I_x = (xB)' (dual of the right projective, with the transposed
    and side-flipped action), and the simple S_x."""
    if x not in b.vertices:
        raise UnknownVertex(x)
    # P_x: normal paths with source x, left multiplication
    p_idx = [i for i in range(b.dim) if b.basis_rgrade(i) == x]
    p_pos = {i: k for k, i in enumerate(p_idx)}
    p_action = {}
    for r in b.radical_indices:
        cols = {}
        for i in p_idx:
            ri = b.multiply_basis(r, i)
            if ri:
                cols[p_pos[i]] = {p_pos[k]: c for k, c in ri.items()}
        p_action[r] = cols
    p_x = OneSidedModule(
        b, [b.basis[i] for i in p_idx], [b.basis_lgrade(i) for i in p_idx], p_action
    )

    # I_x = (xB)': dual basis of the target-x paths; (r . q')(u) = q'(u r)
    q_idx = [i for i in range(b.dim) if b.basis_lgrade(i) == x]
    q_pos = {i: k for k, i in enumerate(q_idx)}
    i_action = {}
    f = b.field
    for r in b.radical_indices:
        cols = {}
        for u in q_idx:
            ur = b.multiply_basis(u, r)
            for j, c in ur.items():
                if j in q_pos:
                    cols.setdefault(q_pos[j], {})[q_pos[u]] = c
        i_action[r] = cols
    i_x = OneSidedModule(
        b,
        [("dual", b.basis[i]) for i in q_idx],
        [b.basis_rgrade(i) for i in q_idx],
        i_action,
    )

    s_x = OneSidedModule(b, [("simple", x)], [x], {})
    return p_x, i_x, s_x


@dataclass
class SocleTopReport:
    socle_dims: dict
    top_dims: dict
    socle_simple_at: str | None
    top_simple_at: str | None
    injective: bool
    projective: bool

    @property
    def socle_dim(self):
        return sum(self.socle_dims.values())

    @property
    def top_dim(self):
        return sum(self.top_dims.values())


def socle_top_report(m: OneSidedModule) -> SocleTopReport:
    """Socle (annihilator of the radical) and top (cokernel of the
    radical action) per vertex, plus the projective/injective verdicts
    by the simple-socle / simple-top + dimension-equality criteria."""
    b = m.algebra
    f = b.field
    # socle: kernel of the stacked radical action, which splits along
    # the vertex grading because every action column is graded
    entries = []
    row_index = {}
    for r in b.radical_indices:
        for j in range(m.dim):
            for k, c in m.act(r, {j: f.one}).items():
                row = row_index.setdefault((r, k), len(row_index))
                entries.append((row, j, c))
    mat = SparseMatrix(len(row_index), m.dim, entries, f)
    socle_dims = {}
    for v in b.vertices:
        cols = [j for j in range(m.dim) if m.grade[j] == v]
        socle_dims[v] = _submatrix_cols(mat, cols, f).kernel_dim()
    # top: M / rM gradewise
    image_by_grade = {v: [] for v in b.vertices}
    for r in b.radical_indices:
        grade = b.basis_lgrade(r)
        for j in range(m.dim):
            vec = m.act(r, {j: f.one})
            if vec:
                image_by_grade[grade].append(vec)
    top_dims = {}
    for v in b.vertices:
        total = sum(1 for j in range(m.dim) if m.grade[j] == v)
        space = RowSpace(f)
        for vec in image_by_grade[v]:
            space.add(vec)
        top_dims[v] = total - space.rank
    socle_simple_at = None
    if sum(socle_dims.values()) == 1:
        socle_simple_at = next(v for v, d in socle_dims.items() if d == 1)
    top_simple_at = None
    if sum(top_dims.values()) == 1:
        top_simple_at = next(v for v, d in top_dims.items() if d == 1)
    injective = False
    if socle_simple_at is not None:
        _, i_y, _ = indecomposables(b, socle_simple_at)
        injective = m.dim == i_y.dim
    projective = False
    if top_simple_at is not None:
        p_y, _, _ = indecomposables(b, top_simple_at)
        projective = m.dim == p_y.dim
    return SocleTopReport(
        socle_dims, top_dims, socle_simple_at, top_simple_at, injective, projective
    )


def _submatrix_cols(mat: SparseMatrix, cols, field):
    col_of = {j: c for c, j in enumerate(cols)}
    entries = [
        (i, col_of[j], v) for i, j, v in mat.entries if j in col_of
    ]
    return SparseMatrix(mat.rows, len(cols), entries, field)


def is_selfinjective(b) -> bool:
    """Every indecomposable projective is injective."""
    for x in b.vertices:
        p_x, _, _ = indecomposables(b, x)
        if not socle_top_report(p_x).injective:
            return False
    return True
