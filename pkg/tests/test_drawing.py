import itertools
import json
import random
from collections import Counter

import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from kpqdraw.drawing import (
    BipartiteContext,
    Drawing,
    InvalidDrawing,
    canonical_form,
    crn,
    crn_pair,
    delete_vertex,
    drawing_from_dict,
    drawing_to_dict,
    dumps,
    embeds_in,
    flatten,
    loads,
    mirror,
    pair_crossing_counts,
    realized_surface,
    relabel,
    star_load,
    switch_crossing,
    switch_vertex,
    trace_faces,
    validate_good,
)
from kpqdraw.duplication import planar_base, zarankiewicz_drawing
from kpqdraw.enumeration import enumerate_crossing_configs, realizing_drawings, sample_drawing
from kpqdraw.surface import SPHERE, TORUS, Surface
from oracles import brute_isomorphic, gem_surface


@st.composite
def drawings(draw, max_p=4, max_q=4, max_k=4):
    p = draw(st.integers(1, max_p))
    q = draw(st.integers(1, max_q))
    k = draw(st.integers(0, max_k))
    seed = draw(st.integers(0, 2**32 - 1))
    try:
        return sample_drawing(p, q, k, random.Random(seed))
    except ValueError:
        assume(False)


def planar_k23() -> Drawing:
    return zarankiewicz_drawing(2, 3)


def k22() -> Drawing:
    return planar_base(2)


def torus_k33() -> Drawing:
    ctx = BipartiteContext.standard(3, 3)
    cfg = next(enumerate_crossing_configs(3, 3, 0, ctx))
    return next(realizing_drawings(ctx, cfg, TORUS))


def codes(d):
    return {v.code for v in validate_good(d)}


# --- validation -----------------------------------------------------------------


def test_planar_k22_is_good():
    assert validate_good(k22()) == []


def test_adjacent_edges_cannot_cross():
    d = k22().replace(
        crossings=((("a1", "b1"), ("a1", "b2")),),
        edge_orders={("a1", "b1"): (0,), ("a1", "b2"): (0,)},
        crossing_orientations=(0,),
    )
    assert codes(d) == {"adjacent-edges-cross"}


def test_pair_listed_twice():
    e, f = ("a1", "b1"), ("a2", "b2")
    d = k22().replace(crossings=((e, f), (f, e)), edge_orders={e: (0, 1), f: (1, 0)}, crossing_orientations=(0, 0))
    assert codes(d) == {"pair-crosses-twice"}


def test_structural_violations():
    e, f = ("a1", "b1"), ("a2", "b2")
    good = k22().replace(crossings=((e, f),), edge_orders={e: (0,), f: (0,)}, crossing_orientations=(0,))
    assert validate_good(good) == []
    assert codes(good.replace(edge_orders={e: (0,)})) == {"order-mismatch"}
    assert codes(good.replace(crossing_orientations=(2,))) == {"bad-orientation"}
    assert codes(good.replace(crossing_orientations=())) == {"bad-orientation"}
    assert codes(good.replace(signs={(e, 5): -1})) == {"bad-sign"}
    assert codes(good.replace(signs={(e, 0): 3})) == {"bad-sign"}
    assert codes(good.replace(rotations={**good.rotations, "a1": ("b1",)})) == {"bad-rotation"}
    assert "unknown-edge" in codes(good.replace(crossings=((e, ("a9", "b1")),)))
    assert "self-crossing" in codes(good.replace(crossings=((e, e),)))
    with pytest.raises(InvalidDrawing):
        flatten(good.replace(edge_orders={e: (0,)}))


# --- flattening and faces -------------------------------------------------------------


def test_flatten_counts():
    z = zarankiewicz_drawing(3, 3)
    flat = flatten(z)
    assert (flat.num_vertices, flat.num_edges) == (7, 11)
    flat = flatten(k22())
    assert (flat.num_vertices, flat.num_edges) == (4, 4)
    d = zarankiewicz_drawing(3, 4)
    assert crn(d) == 2 and len({frozenset(c) for c in d.crossings}) == 2
    flat = flatten(d)
    assert (flat.num_vertices, flat.num_edges) == (9, 16)
    for v in flat.vertices:
        deg = flat.degree(v)
        if v in d.context.p_side:
            assert deg == d.q
        elif v in d.context.q_side:
            assert deg == d.p
        else:
            assert deg == 4
    for e, segs in flat.segment_map.items():
        assert len(segs) == len(d.edge_orders[e]) + 1


def test_planar_k23_faces():
    tr = trace_faces(planar_k23())
    assert tr.num_faces == 3
    assert tr.euler_characteristic == 2
    assert realized_surface(planar_k23()) == SPHERE


def test_k33_never_planar_without_crossings():
    ctx = BipartiteContext.standard(3, 3)
    base = {v: ctx.neighbors(v) for v in ctx.p_side + ctx.q_side}
    options = {v: [base[v], (base[v][0], base[v][2], base[v][1])] for v in base}
    seen = set()
    for choice in itertools.product((0, 1), repeat=6):
        rotations = {v: options[v][c] for v, c in zip(base, choice)}
        d = Drawing(ctx, (), {}, rotations, ())
        chi = trace_faces(d).euler_characteristic
        assert chi <= 0
        seen.add(realized_surface(d))
    assert all(s.orientable and s.genus >= 1 for s in seen)


def test_zarankiewicz_k33_is_spherical():
    d = zarankiewicz_drawing(3, 3)
    assert trace_faces(d).euler_characteristic == 2
    assert realized_surface(d) == SPHERE


def test_embeds_in_examples():
    assert embeds_in(zarankiewicz_drawing(3, 3), SPHERE)
    t = torus_k33()
    assert realized_surface(t) == TORUS
    assert not embeds_in(t, SPHERE)
    assert embeds_in(t, Surface(False, 3))
    assert not embeds_in(t, Surface(False, 2))


@given(drawings())
def test_face_trace_matches_flag_oracle(d):
    smap = flatten(d).signed_map
    v, e, f, orientable = gem_surface(smap.rotations, smap.signs)
    tr = trace_faces(d)
    assert (tr.num_vertices, tr.num_edges, tr.num_faces) == (v, e, f)
    assert tr.realized_orientable == orientable
    assert tr.euler_characteristic == realized_surface(d).euler_characteristic


@given(drawings())
def test_euler_formula_and_side_partition(d):
    flat = flatten(d)
    tr = trace_faces(d)
    assert flat.num_vertices == d.p + d.q + crn(d)
    assert flat.num_edges == d.p * d.q + 2 * crn(d)
    assert flat.num_vertices - flat.num_edges + tr.num_faces == realized_surface(d).euler_characteristic
    usage = tr.side_usage()
    assert len(usage) == 4 * flat.num_edges
    assert set(usage.values()) == {1}


@given(drawings(), st.data())
def test_switching_keeps_face_lengths(d, data):
    v = data.draw(st.sampled_from(d.context.p_side + d.context.q_side))
    before = trace_faces(d).face_lengths()
    s = switch_vertex(d, v)
    assert trace_faces(s).face_lengths() == before
    assert realized_surface(s) == realized_surface(d)
    if d.crossings:
        c = data.draw(st.integers(0, len(d.crossings) - 1))
        assert trace_faces(switch_crossing(d, c)).face_lengths() == before


# --- counters and deletion -------------------------------------------------------------


def test_crn_examples():
    assert crn(planar_k23()) == 0
    assert crn(zarankiewicz_drawing(3, 3)) == 1
    assert crn(zarankiewicz_drawing(4, 4)) == 4


def test_crn_pair_examples():
    d = planar_base(2)
    assert crn_pair(d, "b1", "b2") == 0
    z = zarankiewicz_drawing(3, 3)
    assert crn_pair(z, "b1", "b3") == 1
    z4 = zarankiewicz_drawing(3, 4)
    # the generator duplicates b1 into b3, then b2 into b4
    assert pair_crossing_counts(z4) == {
        ("b1", "b2"): 0,
        ("b1", "b3"): 1,
        ("b1", "b4"): 0,
        ("b2", "b3"): 0,
        ("b2", "b4"): 1,
        ("b3", "b4"): 0,
    }
    with pytest.raises(ValueError):
        crn_pair(z, "b1", "b1")
    with pytest.raises(ValueError):
        crn_pair(z, "a1", "b1")


@given(drawings())
def test_pair_counts_sum_to_crn(d):
    assert sum(pair_crossing_counts(d).values()) == crn(d)
    if d.q >= 2:
        for (u, v), c in pair_crossing_counts(d).items():
            assert crn_pair(d, u, v) == c


def test_delete_vertex_examples():
    z = zarankiewicz_drawing(3, 3)
    base = delete_vertex(z, "b3")
    assert crn(base) == 0 and base.q == 2
    assert realized_surface(base) == SPHERE
    assert crn(delete_vertex(planar_k23(), "b1")) == 0
    star = delete_vertex(planar_base(3), "b2")
    with pytest.raises(ValueError):
        delete_vertex(star, "b1")
    with pytest.raises(ValueError):
        delete_vertex(z, "a1")


@given(drawings(max_q=4), st.data())
def test_delete_vertex_counting_identity(d, data):
    assume(d.q >= 2)
    u = data.draw(st.sampled_from(d.context.q_side))
    r = delete_vertex(d, u)
    assert validate_good(r) == []
    assert crn(r) == crn(d) - star_load(d, u)
    # deleting a vertex of a cellular drawing can only lower Euler genus
    assert realized_surface(r).euler_genus <= realized_surface(d).euler_genus


# --- canonical form --------------------------------------------------------------------


def test_canonical_examples():
    d = planar_k23()
    r = relabel(d, {"a1": "a2", "a2": "a1", "b1": "b3", "b3": "b1"})
    assert canonical_form(r) == canonical_form(d)
    assert canonical_form(mirror(d)) == canonical_form(d)
    assert canonical_form(zarankiewicz_drawing(3, 3)) != canonical_form(torus_k33())


def _random_move(d, rng):
    kind = rng.randrange(4)
    if kind == 0:
        p = list(d.context.p_side)
        q = list(d.context.q_side)
        rng.shuffle(p)
        rng.shuffle(q)
        perm = list(range(len(d.crossings)))
        rng.shuffle(perm)
        return relabel(d, dict(zip(d.context.p_side + d.context.q_side, p + q)), perm)
    if kind == 1:
        return mirror(d)
    if kind == 2:
        return switch_vertex(d, rng.choice(d.context.p_side + d.context.q_side))
    if not d.crossings:
        return d
    return switch_crossing(d, rng.randrange(len(d.crossings)))


@given(drawings(), st.integers(0, 2**32 - 1))
def test_canonical_invariant_under_moves(d, seed):
    rng = random.Random(seed)
    key = canonical_form(d)
    cur = d
    for _ in range(6):
        cur = _random_move(cur, rng)
        assert canonical_form(cur) == key


def test_canonical_renaming_is_invisible():
    d = zarankiewicz_drawing(3, 4)
    r = relabel(d, {"a1": "x", "b2": "y"})
    assert canonical_form(r) == canonical_form(d)


def test_canonical_key_agrees_with_brute_force_isomorphism():
    rng = random.Random(7)
    pool = []
    for _ in range(12):
        d = sample_drawing(2, 3, rng.randint(0, 2), rng)
        pool.append(d)
        pool.append(_random_move(_random_move(d, rng), rng))
    ctx = BipartiteContext.standard(2, 3)
    for cfg in itertools.islice(enumerate_crossing_configs(2, 3, 1, ctx), 3):
        pool.extend(itertools.islice(realizing_drawings(ctx, cfg, Surface(False, 2)), 6))
    for a, b in itertools.combinations(pool, 2):
        assert (canonical_form(a) == canonical_form(b)) == brute_isomorphic(a, b)


# --- serialization ----------------------------------------------------------------------


@given(drawings())
def test_json_round_trip_is_byte_identical(d):
    text = dumps(d)
    again = loads(text)
    assert dumps(again) == text
    assert again == d


def test_json_layout():
    d = switch_vertex(zarankiewicz_drawing(3, 3), "b1")
    doc = json.loads(dumps(d))
    assert list(doc) == sorted(doc)
    assert doc["surface"] == "S0"
    assert doc["crossings"] == [{"e": list(d.crossings[0][0]), "f": list(d.crossings[0][1])}]
    assert set(doc["signs"].values()) == {-1}
    assert all(k.startswith(("a1-b1#", "a2-b1#", "a3-b1#")) for k in doc["signs"])
    assert all(name.count("-") == 1 for name in doc["edge_orders"])


def test_standard_sides_are_default():
    doc = drawing_to_dict(planar_base(2))
    del doc["p_side"], doc["q_side"]
    assert drawing_from_dict(doc) == planar_base(2)
    doc2 = drawing_to_dict(planar_base(2))
    doc2["p"] = 3
    with pytest.raises(ValueError):
        drawing_from_dict(doc2)


def test_signs_preserved_through_round_trip():
    rng = random.Random(3)
    for _ in range(20):
        d = sample_drawing(3, 3, 2, rng)
        assert Counter(loads(dumps(d)).signs.values()) == Counter(d.signs.values())
