"""Quivers, paths, parallel-path counting, and arrow surgery.

Paths store their arrows in traversal order: `arrows[0]` is applied
first, so a path written a_n...a_1 in composition notation is the tuple
(a_1, ..., a_n).  The product of paths p*q (q first) concatenates the
traversal tuples q.arrows + p.arrows and is defined when q.target ==
p.source.  Length-0 paths are vertices with source == target.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import (
    InvalidAttachment,
    InvalidParameters,
    UnknownArrow,
    UnknownVertex,
)


@dataclass(frozen=True)
class Path:
    source: str
    target: str
    arrows: tuple[str, ...] = ()

    @property
    def length(self):
        return len(self.arrows)

    def key(self):
        """Length-first, then lexicographic on the arrow-id sequence.

        This is a monomial order: it is a total order compatible with
        path concatenation, which the truncated Groebner computation
        relies on.
        """
        return (len(self.arrows), self.arrows, self.source)

    def __repr__(self):
        if not self.arrows:
            return f"e({self.source})"
        return "*".join(reversed(self.arrows))


def vertex_path(v: str) -> Path:
    return Path(v, v, ())


def compose_paths(later: Path, earlier: Path) -> Path | None:
    """The product later*earlier (earlier applied first), or None when
    the endpoints do not match."""
    if earlier.target != later.source:
        return None
    return Path(earlier.source, later.target, earlier.arrows + later.arrows)


@dataclass(frozen=True)
class Arrow:
    name: str
    source: str
    target: str


class Quiver:
    """A finite directed multigraph with ordered vertex and arrow ids.

    The ordering is part of the data: path enumeration, surgery ids and
    every downstream basis are deterministic because of it.
    """

    def __init__(self, vertices, arrows):
        self.vertices = tuple(vertices)
        if len(set(self.vertices)) != len(self.vertices):
            raise InvalidParameters("duplicate vertex ids")
        self.arrows = tuple(
            a if isinstance(a, Arrow) else Arrow(*a) for a in arrows
        )
        names = [a.name for a in self.arrows]
        if len(set(names)) != len(names):
            raise InvalidParameters("duplicate arrow ids")
        if set(names) & set(self.vertices):
            raise InvalidParameters("arrow ids must not collide with vertex ids")
        vset = set(self.vertices)
        for a in self.arrows:
            if a.source not in vset or a.target not in vset:
                raise UnknownVertex(f"arrow {a.name}: {a.source}->{a.target} has undeclared endpoint")
        self.arrow_by_name = {a.name: a for a in self.arrows}
        self._arrows_from = {v: [] for v in self.vertices}
        for a in self.arrows:
            self._arrows_from[a.source].append(a)

    def arrow(self, name: str) -> Arrow:
        try:
            return self.arrow_by_name[name]
        except KeyError:
            raise UnknownArrow(name) from None

    def arrow_path(self, name: str) -> Path:
        a = self.arrow(name)
        return Path(a.source, a.target, (a.name,))

    def arrows_from(self, v: str):
        return tuple(self._arrows_from[v])

    def path_from_arrows(self, names) -> Path:
        """Build a path from arrow ids in traversal order, checking
        composability at every junction."""
        names = tuple(names)
        if not names:
            raise InvalidParameters("a positive-length path needs at least one arrow")
        arrows = [self.arrow(n) for n in names]
        for left, right in zip(arrows, arrows[1:]):
            if left.target != right.source:
                raise InvalidParameters(
                    f"arrows {left.name} and {right.name} are not composable"
                )
        return Path(arrows[0].source, arrows[-1].target, names)

    def paths_of_length(self, n: int) -> list[Path]:
        """All length-n paths in deterministic (vertex, arrow) order;
        n = 0 returns the vertices."""
        if n < 0:
            raise InvalidParameters("path length must be >= 0")
        if n == 0:
            return [vertex_path(v) for v in self.vertices]
        paths = []

        def extend(start, names, at, remaining):
            if remaining == 0:
                paths.append(Path(start, at, tuple(names)))
                return
            for arrow in self._arrows_from[at]:
                names.append(arrow.name)
                extend(start, names, arrow.target, remaining - 1)
                names.pop()

        for v in self.vertices:
            extend(v, [], v, n)
        return paths

    def paths_up_to(self, n: int) -> list[Path]:
        out = []
        for k in range(n + 1):
            out.extend(self.paths_of_length(k))
        return out

    def has_oriented_cycle(self) -> bool:
        WHITE, GREY, BLACK = 0, 1, 2
        colour = {v: WHITE for v in self.vertices}

        def visit(v):
            colour[v] = GREY
            for a in self._arrows_from[v]:
                w = a.target
                if colour[w] == GREY:
                    return True
                if colour[w] == WHITE and visit(w):
                    return True
            colour[v] = BLACK
            return False

        return any(visit(v) for v in self.vertices if colour[v] == WHITE)

    def is_connected(self) -> bool:
        """Connectivity of the underlying undirected graph."""
        if not self.vertices:
            return True
        adjacency = {v: set() for v in self.vertices}
        for a in self.arrows:
            adjacency[a.source].add(a.target)
            adjacency[a.target].add(a.source)
        seen = {self.vertices[0]}
        stack = [self.vertices[0]]
        while stack:
            for w in adjacency[stack.pop()]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return len(seen) == len(self.vertices)

    def longest_path_length(self) -> int:
        """Longest path length; only meaningful for acyclic quivers."""
        if self.has_oriented_cycle():
            raise InvalidParameters("longest path is undefined on a cyclic quiver")
        memo = {}

        def depth(v):
            if v not in memo:
                memo[v] = max(
                    (1 + depth(a.target) for a in self._arrows_from[v]), default=0
                )
            return memo[v]

        return max((depth(v) for v in self.vertices), default=0)

    def add_arrows(self, alpha) -> "Quiver":
        """The quiver with alpha(f, e) fresh arrows from e to f.

        Fresh ids are "+0", "+1", ... assigned in row-major declaration
        order over (f, e); existing "+k" ids are skipped.
        """
        for f, e in alpha:
            if f not in self.vertices:
                raise UnknownVertex(f)
            if e not in self.vertices:
                raise UnknownVertex(e)
        used = set(self.arrow_by_name)
        counter = 0
        new_arrows = list(self.arrows)
        for f in self.vertices:
            for e in self.vertices:
                for _ in range(alpha.get((f, e), 0)):
                    while f"+{counter}" in used:
                        counter += 1
                    name = f"+{counter}"
                    used.add(name)
                    new_arrows.append(Arrow(name, e, f))
        return Quiver(self.vertices, new_arrows)

    def add_arrow(self, e: str, f: str) -> "Quiver":
        """Special case Q^{+(f,e)}: one new arrow from e to f."""
        return self.add_arrows({(f, e): 1})

    def delete_arrow(self, name: str) -> "Quiver":
        self.arrow(name)
        return Quiver(self.vertices, [a for a in self.arrows if a.name != name])

    def extend(self, attachment: "AttachmentMap") -> "Quiver":
        return extend_quiver(self, attachment)

    def __repr__(self):
        return f"Quiver({len(self.vertices)} vertices, {len(self.arrows)} arrows)"


def parallel_count(xs, ys) -> int:
    """|{(g, b) in xs x ys : same source and same target}|."""
    buckets = {}
    for b in ys:
        key = (b.source, b.target)
        buckets[key] = buckets.get(key, 0) + 1
    return sum(buckets.get((g.source, g.target), 0) for g in xs)


@dataclass(frozen=True)
class AttachmentMap:
    """Attachment data (S, Y, X, u) for the extended quiver Q u_ S.

    S is acyclic, Y is a subset of S's vertices, X a subset of Q's, and
    u: X -> Y a bijection along which the two quivers are glued.  No
    arrow of S may have both endpoints in Y.
    """

    source: Quiver
    y: tuple[str, ...]
    x: tuple[str, ...]
    u: tuple[tuple[str, str], ...]  # pairs (x, u(x))

    @classmethod
    def build(cls, source, u_map) -> "AttachmentMap":
        pairs = tuple(sorted(u_map.items()))
        return cls(source, tuple(sorted(u_map.values())), tuple(sorted(u_map)), pairs)

    def validate(self, q: Quiver):
        u = dict(self.u)
        if sorted(u) != sorted(self.x) or sorted(u.values()) != sorted(self.y):
            raise InvalidAttachment("u must be defined exactly on X with image Y")
        if len(set(self.y)) != len(self.y) or len(self.y) != len(self.x):
            raise InvalidAttachment("u must be a bijection X -> Y")
        if not set(self.x) <= set(q.vertices):
            raise InvalidAttachment("X must consist of vertices of the base quiver")
        if not set(self.y) <= set(self.source.vertices):
            raise InvalidAttachment("Y must consist of vertices of S")
        if self.source.has_oriented_cycle():
            raise InvalidAttachment("S must have no oriented cycles")
        yset = set(self.y)
        for a in self.source.arrows:
            if a.source in yset and a.target in yset:
                raise InvalidAttachment(
                    f"arrow {a.name} of S has both endpoints in Y"
                )
        fresh = set(self.source.vertices) - yset
        if fresh & set(q.vertices):
            raise InvalidAttachment("vertex ids of S \\ Y must not collide with the base quiver")
        if set(a.name for a in self.source.arrows) & set(a.name for a in q.arrows):
            raise InvalidAttachment("arrow ids of S must not collide with the base quiver")


def extend_quiver(q: Quiver, attachment: AttachmentMap) -> Quiver:
    """The extended quiver: vertices Q_0 u S_0 modulo x ~ u(x), arrows
    the disjoint union with S-arrows re-targeted through u."""
    attachment.validate(q)
    u_inverse = {y: x for x, y in attachment.u}
    fresh = [v for v in attachment.source.vertices if v not in u_inverse]
    vertices = list(q.vertices) + fresh

    def glue(v):
        return u_inverse.get(v, v)

    arrows = list(q.arrows) + [
        Arrow(a.name, glue(a.source), glue(a.target))
        for a in attachment.source.arrows
    ]
    return Quiver(vertices, arrows)


def truncated_cycle(m: int, length: int) -> tuple[Quiver, list[Path]]:
    """Oriented m-cycle with arrows a_i: s_i -> s_{i+1 mod m}, together
    with all paths of the given length as monomial relations.

    Requires m >= 2 and 2 <= length < m; the quotient by these
    relations is a selfinjective algebra.
    """
    if m < 2 or length < 2 or length >= m:
        raise InvalidParameters(
            f"truncated cycle needs m >= 2 and 2 <= l < m, got (m, l) = ({m}, {length})"
        )
    vertices = [f"s{i}" for i in range(m)]
    arrows = [Arrow(f"a{i}", f"s{i}", f"s{(i + 1) % m}") for i in range(m)]
    q = Quiver(vertices, arrows)
    return q, q.paths_of_length(length)
