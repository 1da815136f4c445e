"""Combinatorial good drawings of K_{p,q}.

A drawing records which independent edge pairs cross, the order of crossings
along each edge (read from the p-side end), a rotation at every real vertex, an
alternation class at every crossing, and signs on the segments of the
flattening. Together these form an embedding scheme of the flattening, which
determines a cellular embedding and hence the surface the drawing lives on.

At a crossing stored as ``(e, f)`` the cyclic order of the four half-segments
is ``(e_in, f_in, e_out, f_out)`` for class 0 and ``(e_in, f_out, e_out, f_in)``
for class 1, where ``*_in`` points toward the edge's p-side end.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Mapping

from ..surface import SPHERE, Surface, attachable
from .maps import SignedMap

Edge = tuple[str, str]  # (p-side vertex, q-side vertex)
Segment = tuple[Edge, int]


def edge_name(e: Edge) -> str:
    return f"{e[0]}-{e[1]}"


def parse_edge_name(text: str) -> Edge:
    a, sep, b = text.partition("-")
    if not sep or not a or not b:
        raise ValueError(f"bad edge name {text!r}")
    return a, b


def segment_name(seg: Segment) -> str:
    return f"{edge_name(seg[0])}#{seg[1]}"


def parse_segment_name(text: str) -> Segment:
    e, sep, idx = text.rpartition("#")
    if not sep:
        raise ValueError(f"bad segment name {text!r}")
    return parse_edge_name(e), int(idx)


@dataclass(frozen=True)
class BipartiteContext:
    p_side: tuple[str, ...]
    q_side: tuple[str, ...]

    @classmethod
    def standard(cls, p: int, q: int) -> "BipartiteContext":
        return cls(tuple(f"a{i}" for i in range(1, p + 1)), tuple(f"b{j}" for j in range(1, q + 1)))

    @property
    def p(self) -> int:
        return len(self.p_side)

    @property
    def q(self) -> int:
        return len(self.q_side)

    @property
    def edges(self) -> list[Edge]:
        return [(a, b) for a in self.p_side for b in self.q_side]

    def neighbors(self, v: str) -> tuple[str, ...]:
        if v in self.p_side:
            return self.q_side
        if v in self.q_side:
            return self.p_side
        raise KeyError(v)


@dataclass(frozen=True)
class Violation:
    code: str
    detail: str = ""

    def __str__(self):
        return f"{self.code}: {self.detail}" if self.detail else self.code


class InvalidDrawing(ValueError):
    def __init__(self, violations: list[Violation]):
        self.violations = violations
        super().__init__("; ".join(str(v) for v in violations))


@dataclass(frozen=True, eq=True)
class Drawing:
    """An immutable combinatorial drawing; treat the mapping fields as read-only."""

    context: BipartiteContext
    crossings: tuple[tuple[Edge, Edge], ...]
    edge_orders: Mapping[Edge, tuple[int, ...]]
    rotations: Mapping[str, tuple[str, ...]]
    crossing_orientations: tuple[int, ...]
    signs: Mapping[Segment, int] = field(default_factory=dict)
    surface: Surface = SPHERE

    def __post_init__(self):
        orders = {e: tuple(self.edge_orders.get(e, ())) for e in self.context.edges}
        for e in self.edge_orders:
            if e not in orders:
                orders[e] = tuple(self.edge_orders[e])
        object.__setattr__(self, "edge_orders", orders)
        object.__setattr__(self, "crossings", tuple((tuple(e), tuple(f)) for e, f in self.crossings))
        object.__setattr__(self, "rotations", {v: tuple(r) for v, r in self.rotations.items()})
        object.__setattr__(self, "crossing_orientations", tuple(self.crossing_orientations))
        object.__setattr__(self, "signs", {k: v for k, v in self.signs.items() if v != 1})

    @property
    def p(self) -> int:
        return self.context.p

    @property
    def q(self) -> int:
        return self.context.q

    def segment_sign(self, e: Edge, i: int) -> int:
        return self.signs.get((e, i), 1)

    def edge_signs(self, e: Edge) -> list[int]:
        return [self.segment_sign(e, i) for i in range(len(self.edge_orders[e]) + 1)]

    def star(self, v: str) -> list[Edge]:
        if v in self.context.q_side:
            return [(a, v) for a in self.context.p_side]
        return [(v, b) for b in self.context.q_side]

    def replace(self, **changes) -> "Drawing":
        fields = dict(
            context=self.context,
            crossings=self.crossings,
            edge_orders=self.edge_orders,
            rotations=self.rotations,
            crossing_orientations=self.crossing_orientations,
            signs=self.signs,
            surface=self.surface,
        )
        fields.update(changes)
        return Drawing(**fields)


def validate_good(d: Drawing) -> list[Violation]:
    out: list[Violation] = []
    ctx = d.context
    names = list(ctx.p_side) + list(ctx.q_side)
    if len(set(names)) != len(names):
        out.append(Violation("bad-context", "vertex names repeat or sides overlap"))
    for v in names:
        if not v or "-" in v or "#" in v:
            out.append(Violation("bad-context", f"illegal vertex name {v!r}"))
    if ctx.p < 1 or ctx.q < 1:
        out.append(Violation("bad-context", "both sides need at least one vertex"))
    edges = set(ctx.edges)

    seen_pairs: dict[frozenset, int] = {}
    for idx, (e, f) in enumerate(d.crossings):
        if e not in edges or f not in edges:
            out.append(Violation("unknown-edge", f"crossing {idx}"))
            continue
        if e == f:
            out.append(Violation("self-crossing", f"crossing {idx} on {edge_name(e)}"))
            continue
        if e[0] == f[0] or e[1] == f[1]:
            out.append(Violation("adjacent-edges-cross", f"{edge_name(e)} x {edge_name(f)}"))
        key = frozenset((e, f))
        if key in seen_pairs:
            out.append(Violation("pair-crosses-twice", f"{edge_name(e)} x {edge_name(f)} (crossings {seen_pairs[key]}, {idx})"))
        else:
            seen_pairs[key] = idx

    n = len(d.crossings)
    for e, order in d.edge_orders.items():
        if e not in edges:
            out.append(Violation("order-mismatch", f"order given for unknown edge {edge_name(e)}"))
            continue
        for c in order:
            if not (0 <= c < n) or e not in d.crossings[c]:
                out.append(Violation("order-mismatch", f"{edge_name(e)} lists crossing {c} which does not involve it"))
    for idx, (e, f) in enumerate(d.crossings):
        for g in (e, f):
            if g in edges and d.edge_orders.get(g, ()).count(idx) != 1:
                out.append(Violation("order-mismatch", f"crossing {idx} not listed exactly once on {edge_name(g)}"))

    for v in names:
        rot = d.rotations.get(v)
        if rot is None:
            out.append(Violation("bad-rotation", f"no rotation at {v}"))
        elif sorted(rot) != sorted(ctx.neighbors(v)):
            out.append(Violation("bad-rotation", f"rotation at {v} is not a cyclic order of its neighbors"))
    for v in d.rotations:
        if v not in names:
            out.append(Violation("bad-rotation", f"rotation given for unknown vertex {v}"))

    if len(d.crossing_orientations) != n:
        out.append(Violation("bad-orientation", f"{len(d.crossing_orientations)} classes for {n} crossings"))
    for idx, cls in enumerate(d.crossing_orientations):
        if cls not in (0, 1):
            out.append(Violation("bad-orientation", f"crossing {idx} has class {cls!r}"))

    for (e, i), sg in d.signs.items():
        if e not in edges or not (0 <= i <= len(d.edge_orders.get(e, ()))):
            out.append(Violation("bad-sign", f"no segment {e!r}#{i}"))
        elif sg not in (1, -1):
            out.append(Violation("bad-sign", f"segment {segment_name((e, i))} has sign {sg!r}"))
    return out


def require_good(d: Drawing) -> None:
    problems = validate_good(d)
    if problems:
        raise InvalidDrawing(problems)


@dataclass
class Skeleton:
    """Integer layout of a flattening: vertex ids, segments, and dart lookups.

    Vertices are numbered p-side first, then q-side, then one per crossing.
    """

    context: BipartiteContext
    crossings: tuple[tuple[Edge, Edge], ...]
    edge_orders: Mapping[Edge, tuple[int, ...]]
    vertex_names: list[str]
    segments: list[tuple[int, int]]
    segment_map: dict[Edge, list[int]]
    # darts at a real vertex keyed by the neighbor at the far end of the edge
    real_darts: list[dict[str, int]]
    # (e_in, e_out, f_in, f_out) darts at each crossing vertex
    crossing_darts: list[tuple[int, int, int, int]]

    @classmethod
    def build(cls, ctx: BipartiteContext, crossings, edge_orders) -> "Skeleton":
        p, q = ctx.p, ctx.q
        index = {v: i for i, v in enumerate(ctx.p_side + ctx.q_side)}
        names = list(ctx.p_side + ctx.q_side) + [f"x{c}" for c in range(len(crossings))]
        segments: list[tuple[int, int]] = []
        segment_map: dict[Edge, list[int]] = {}
        real_darts: list[dict[str, int]] = [dict() for _ in range(p + q)]
        at_crossing: dict[tuple[int, Edge], tuple[int, int]] = {}
        for e in ctx.edges:
            order = edge_orders.get(e, ())
            nodes = [index[e[0]]] + [p + q + c for c in order] + [index[e[1]]]
            segs = []
            for j in range(len(nodes) - 1):
                segs.append(len(segments))
                segments.append((nodes[j], nodes[j + 1]))
            segment_map[e] = segs
            real_darts[index[e[0]]][e[1]] = 2 * segs[0]
            real_darts[index[e[1]]][e[0]] = 2 * segs[-1] + 1
            for j, c in enumerate(order):
                at_crossing[(c, e)] = (2 * segs[j] + 1, 2 * segs[j + 1])
        crossing_darts = []
        for c, (e, f) in enumerate(crossings):
            e_in, e_out = at_crossing[(c, e)]
            f_in, f_out = at_crossing[(c, f)]
            crossing_darts.append((e_in, e_out, f_in, f_out))
        return cls(ctx, tuple(crossings), edge_orders, names, segments, segment_map, real_darts, crossing_darts)

    @property
    def num_real(self) -> int:
        return self.context.p + self.context.q

    def real_rotation(self, v: str, rotation: Iterable[str]) -> list[int]:
        darts = self.real_darts[self.vertex_names.index(v)]
        return [darts[w] for w in rotation]

    @staticmethod
    def crossing_rotation(darts: tuple[int, int, int, int], cls: int) -> list[int]:
        e_in, e_out, f_in, f_out = darts
        return [e_in, f_in, e_out, f_out] if cls == 0 else [e_in, f_out, e_out, f_in]

    def signed_map(self, rotations: Mapping[str, Iterable[str]], classes, seg_signs: list[int]) -> SignedMap:
        rots = [self.real_rotation(v, rotations[v]) for v in self.vertex_names[: self.num_real]]
        rots += [self.crossing_rotation(cd, cls) for cd, cls in zip(self.crossing_darts, classes)]
        return SignedMap(rots, list(seg_signs))


@dataclass
class Flattening:
    vertices: list[str]
    segments: list[tuple[str, str]]
    segment_map: dict[Edge, list[int]]
    signed_map: SignedMap = field(repr=False)

    @property
    def num_vertices(self) -> int:
        return len(self.vertices)

    @property
    def num_edges(self) -> int:
        return len(self.segments)

    def degree(self, v: str) -> int:
        return sum((a == v) + (b == v) for a, b in self.segments)


def _skeleton_and_signs(d: Drawing) -> tuple[Skeleton, list[int]]:
    sk = Skeleton.build(d.context, d.crossings, d.edge_orders)
    signs = [1] * len(sk.segments)
    for e, segs in sk.segment_map.items():
        for j, s in enumerate(segs):
            signs[s] = d.segment_sign(e, j)
    return sk, signs


def flatten(d: Drawing) -> Flattening:
    require_good(d)
    sk, signs = _skeleton_and_signs(d)
    smap = sk.signed_map(d.rotations, d.crossing_orientations, signs)
    segs = [(sk.vertex_names[a], sk.vertex_names[b]) for a, b in sk.segments]
    return Flattening(sk.vertex_names, segs, sk.segment_map, smap)


@dataclass
class FaceTrace:
    """Faces of the cellular embedding, as walks of ``(segment, direction, side)``.

    ``direction`` is +1 when a segment is walked from its p-side end and ``side``
    is the local orientation carried along the walk. The reverse walk of each
    face is implied and not listed.
    """

    faces: list[list[tuple[int, int, int]]]
    num_vertices: int
    num_edges: int
    realized_orientable: bool
    euler_characteristic: int
    reverse_faces: list[list[tuple[int, int, int]]] = field(repr=False, default_factory=list)

    @property
    def num_faces(self) -> int:
        return len(self.faces)

    def side_usage(self) -> Counter:
        """How often each directed segment-side occurs over faces and their reverses."""
        return Counter(st for walk in self.faces + self.reverse_faces for st in walk)

    def face_lengths(self) -> list[int]:
        return sorted(len(f) for f in self.faces)


def _as_side(state: tuple[int, int]) -> tuple[int, int, int]:
    d, s = state
    return d >> 1, 1 if d % 2 == 0 else -1, s


def trace_faces(d: Drawing) -> FaceTrace:
    flat = flatten(d)
    return trace_map(flat.signed_map)


def trace_map(smap: SignedMap) -> FaceTrace:
    faces = smap.faces()
    reverse = []
    for f in faces:
        rev = [smap.reverse_state(*st) for st in reversed(f)]
        reverse.append([_as_side(st) for st in rev])
    chi = smap.num_vertices - smap.num_edges + len(faces)
    return FaceTrace(
        faces=[[_as_side(st) for st in f] for f in faces],
        num_vertices=smap.num_vertices,
        num_edges=smap.num_edges,
        realized_orientable=smap.is_orientable(),
        euler_characteristic=chi,
        reverse_faces=reverse,
    )


def realized_surface(d: Drawing) -> Surface:
    smap = flatten(d).signed_map
    return Surface.from_euler(smap.euler_characteristic(), smap.is_orientable())


def embeds_in(d: Drawing, sigma: Surface) -> bool:
    return attachable(realized_surface(d), sigma)


def crn(d: Drawing) -> int:
    return len(d.crossings)


def crn_pair(d: Drawing, u: str, v: str) -> int:
    q_side = d.context.q_side
    if u == v:
        raise ValueError("crn_pair needs two distinct vertices")
    if u not in q_side or v not in q_side:
        raise ValueError(f"{u!r} and {v!r} must both be on the q-side")
    return sum(1 for e, f in d.crossings if {e[1], f[1]} == {u, v})


def pair_crossing_counts(d: Drawing) -> dict[tuple[str, str], int]:
    """crn_pair for every q-side pair, keyed in q-side order."""
    pos = {b: i for i, b in enumerate(d.context.q_side)}
    counts = {pair: 0 for pair in combinations(d.context.q_side, 2)}
    for e, f in d.crossings:
        u, v = sorted((e[1], f[1]), key=pos.__getitem__)
        counts[(u, v)] += 1
    return counts


def star_load(d: Drawing, v: str) -> int:
    """Number of crossings involving an edge incident with ``v``."""
    return sum(1 for e, f in d.crossings if v in e or v in f)


def delete_vertex(d: Drawing, u: str) -> Drawing:
    ctx = d.context
    if u not in ctx.q_side:
        raise ValueError(f"{u!r} is not a q-side vertex")
    if ctx.q < 2:
        raise ValueError("cannot delete the only q-side vertex")
    keep = [i for i, (e, f) in enumerate(d.crossings) if e[1] != u and f[1] != u]
    renum = {old: new for new, old in enumerate(keep)}
    new_ctx = BipartiteContext(ctx.p_side, tuple(b for b in ctx.q_side if b != u))
    orders = {}
    signs = {}
    for e in new_ctx.edges:
        old_order = d.edge_orders[e]
        old_signs = d.edge_signs(e)
        new_order = []
        merged = []
        cur = old_signs[0]
        for j, c in enumerate(old_order):
            if c in renum:
                new_order.append(renum[c])
                merged.append(cur)
                cur = old_signs[j + 1]
            else:
                cur *= old_signs[j + 1]
        merged.append(cur)
        orders[e] = tuple(new_order)
        for j, sg in enumerate(merged):
            if sg != 1:
                signs[(e, j)] = sg
    rotations = {}
    for v, rot in d.rotations.items():
        if v == u:
            continue
        rotations[v] = tuple(w for w in rot if w != u)
    return Drawing(
        context=new_ctx,
        crossings=tuple(d.crossings[i] for i in keep),
        edge_orders=orders,
        rotations=rotations,
        crossing_orientations=tuple(d.crossing_orientations[i] for i in keep),
        signs=signs,
        surface=d.surface,
    )
