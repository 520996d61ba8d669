import random

import pytest

from quiverhh.errors import (
    InvalidAttachment,
    InvalidParameters,
    UnknownArrow,
    UnknownVertex,
)
from quiverhh.linalg import SparseMatrix
from quiverhh.quiver import (
    AttachmentMap,
    Path,
    Quiver,
    compose_paths,
    extend_quiver,
    parallel_count,
    truncated_cycle,
    vertex_path,
)


def a2():
    return Quiver(["e", "f"], [("a", "e", "f")])


def kronecker():
    return Quiver(["e", "f"], [("a", "e", "f"), ("b", "e", "f")])


def test_paths_of_length_single_vertex():
    q = Quiver(["v"], [])
    assert q.paths_of_length(1) == []
    assert q.paths_of_length(0) == [vertex_path("v")]


def test_paths_of_length_kronecker():
    q = kronecker()
    assert [p.arrows for p in q.paths_of_length(1)] == [("a",), ("b",)]


def test_paths_of_length_oriented_four_cycle():
    q, _ = truncated_cycle(4, 2)
    loops = q.paths_of_length(4)
    assert len(loops) == 4
    assert all(p.source == p.target for p in loops)


def test_path_count_matches_adjacency_power():
    rng = random.Random(5)
    for _ in range(15):
        nv = rng.randint(1, 4)
        vertices = [f"v{i}" for i in range(nv)]
        arrows = []
        for k in range(rng.randint(0, 5)):
            arrows.append((f"x{k}", rng.choice(vertices), rng.choice(vertices)))
        q = Quiver(vertices, arrows)
        adj = [[0] * nv for _ in range(nv)]
        for _, s, t in arrows:
            adj[vertices.index(s)][vertices.index(t)] += 1
        m = SparseMatrix.from_dense(adj)
        power = SparseMatrix.identity(nv)
        for n in range(4):
            count = sum(v for _, _, v in power.entries)
            paths = q.paths_of_length(n)
            assert len(paths) == count
            for p in paths:
                if p.arrows:
                    assert q.path_from_arrows(p.arrows) == p
            power = power.compose(m)


def test_parallel_count_kronecker():
    q = kronecker()
    assert parallel_count(q.paths_of_length(1), q.paths_of_length(1)) == 4


def test_parallel_count_vertices():
    q, _ = truncated_cycle(5, 2)
    verts = q.paths_of_length(0)
    assert parallel_count(verts, verts) == 5


def test_parallel_count_one_loop():
    q = Quiver(["v"], [("x", "v", "v")])
    for n in range(1, 5):
        assert parallel_count(q.paths_of_length(n), q.paths_of_length(1)) == 1


def test_parallel_count_symmetric():
    rng = random.Random(9)
    for _ in range(10):
        vertices = ["u", "v", "w"]
        arrows = [
            (f"x{k}", rng.choice(vertices), rng.choice(vertices)) for k in range(4)
        ]
        q = Quiver(vertices, arrows)
        xs, ys = q.paths_of_length(1), q.paths_of_length(2)
        assert parallel_count(xs, ys) == parallel_count(ys, xs)


def test_add_arrows_empty_alpha_is_identity():
    q = a2()
    q2 = q.add_arrows({})
    assert q2.vertices == q.vertices and q2.arrows == q.arrows


def test_add_arrow_a2_to_kronecker():
    q = a2().add_arrow("e", "f")
    assert len(q.arrows) == 2
    new = q.arrow("+0")
    assert (new.source, new.target) == ("e", "f")


def test_add_arrow_makes_two_cycle():
    q = a2().add_arrow("f", "e")
    new = q.arrow("+0")
    assert (new.source, new.target) == ("f", "e")
    assert q.has_oriented_cycle()


def test_add_arrows_unknown_vertex():
    with pytest.raises(UnknownVertex):
        a2().add_arrows({("f", "zzz"): 1})


def test_delete_arrow_kronecker_to_a2():
    q = kronecker().delete_arrow("b")
    assert [a.name for a in q.arrows] == ["a"]


def test_delete_arrow_keeps_loop_vertex():
    q = Quiver(["v"], [("x", "v", "v")]).delete_arrow("x")
    assert q.vertices == ("v",)


def test_delete_arrow_unknown():
    with pytest.raises(UnknownArrow):
        a2().delete_arrow("zzz")


def test_delete_after_add_round_trips():
    rng = random.Random(31)
    for _ in range(20):
        vertices = ["u", "v", "w"]
        arrows = [
            (f"x{k}", rng.choice(vertices), rng.choice(vertices))
            for k in range(rng.randint(0, 4))
        ]
        q = Quiver(vertices, arrows)
        e, f = rng.choice(vertices), rng.choice(vertices)
        added = q.add_arrow(e, f)
        new_names = [a.name for a in added.arrows if a.name not in q.arrow_by_name]
        assert len(new_names) == 1
        back = added.delete_arrow(new_names[0])
        assert back.vertices == q.vertices and back.arrows == q.arrows


def test_extend_quiver_empty_s():
    q = a2()
    att = AttachmentMap.build(Quiver([], []), {})
    out = extend_quiver(q, att)
    assert out.vertices == q.vertices and out.arrows == q.arrows


def test_extend_quiver_pendant_arrow():
    q = a2()
    s = Quiver(["y", "z"], [("p", "y", "z")])
    att = AttachmentMap.build(s, {"f": "y"})
    out = extend_quiver(q, att)
    assert set(out.vertices) == {"e", "f", "z"}
    p = out.arrow("p")
    assert (p.source, p.target) == ("f", "z")


def test_extend_quiver_vertex_count():
    rng = random.Random(41)
    for _ in range(10):
        q = kronecker()
        n_extra = rng.randint(1, 3)
        s_vertices = ["y"] + [f"z{i}" for i in range(n_extra)]
        s_arrows = [(f"p{i}", "y", f"z{i}") for i in range(n_extra)]
        s = Quiver(s_vertices, s_arrows)
        att = AttachmentMap.build(s, {"e": "y"})
        out = extend_quiver(q, att)
        assert len(out.vertices) == len(q.vertices) + len(s_vertices) - 1
        # no S-arrow may end up with both endpoints inside the image of X
        for name, _, _ in [(a.name, a.source, a.target) for a in s.arrows]:
            arr = out.arrow(name)
            assert not (arr.source == "e" and arr.target == "e")


def test_extend_quiver_rejects_cyclic_s():
    s = Quiver(["y", "z"], [("p", "y", "z"), ("q", "z", "y")])
    att = AttachmentMap.build(s, {"e": "y"})
    with pytest.raises(InvalidAttachment):
        extend_quiver(a2(), att)


def test_extend_quiver_rejects_arrow_inside_y():
    s = Quiver(["y", "z"], [("p", "y", "z")])
    att = AttachmentMap.build(s, {"e": "y", "f": "z"})
    with pytest.raises(InvalidAttachment):
        extend_quiver(a2(), att)


def test_truncated_cycle_4_2():
    q, rels = truncated_cycle(4, 2)
    assert len(q.vertices) == 4 and len(q.arrows) == 4
    assert len(rels) == 4
    assert all(r.length == 2 for r in rels)


def test_truncated_cycle_3_2():
    q, rels = truncated_cycle(3, 2)
    assert sorted(r.arrows for r in rels) == [
        ("a0", "a1"),
        ("a1", "a2"),
        ("a2", "a0"),
    ]


def test_truncated_cycle_rejects_bad_parameters():
    with pytest.raises(InvalidParameters):
        truncated_cycle(2, 2)
    with pytest.raises(InvalidParameters):
        truncated_cycle(4, 1)
    with pytest.raises(InvalidParameters):
        truncated_cycle(4, 4)


def test_compose_paths():
    q = a2()
    pa = q.arrow_path("a")
    assert compose_paths(pa, vertex_path("e")) == pa
    assert compose_paths(vertex_path("f"), pa) == pa
    assert compose_paths(pa, vertex_path("f")) is None


def test_path_order_is_length_then_lex():
    p1 = Path("e", "f", ("a",))
    p2 = Path("e", "f", ("b",))
    p3 = Path("e", "f", ("a", "b"))
    assert sorted([p3, p2, p1], key=Path.key) == [p1, p2, p3]


def test_oriented_cycle_detection():
    assert not a2().has_oriented_cycle()
    q, _ = truncated_cycle(3, 2)
    assert q.has_oriented_cycle()
    assert Quiver(["v"], [("x", "v", "v")]).has_oriented_cycle()


def test_connectivity():
    assert a2().is_connected()
    assert not Quiver(["u", "v"], []).is_connected()
