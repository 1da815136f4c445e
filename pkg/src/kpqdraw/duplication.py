"""Vertex duplication, extension scripts, Zarankiewicz drawings, and the dipole oracle.

Duplicating a q-side vertex ``u`` places the new vertex ``v`` in a small disk
around ``u``, inside the angular gap ``gap`` of ``u``'s rotation. Reading the
rotation of ``u`` from that gap as ``e_1 .. e_p``, the edge of ``v`` towards
``e_i`` circles ``u`` over whichever of ``e_1..e_{i-1}`` or ``e_{i+1}..e_p`` is
shorter (ties go to the first), then runs alongside ``e_i`` to its p-side end,
picking up a copy of every crossing on ``e_i``. The disk contributes exactly
``zp(p)`` crossings.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from pathlib import Path

from .drawing import (
    BipartiteContext,
    Drawing,
    Edge,
    Skeleton,
    delete_vertex,
    drawing_from_dict,
    drawing_to_dict,
    require_good,
    star_load,
)
from .drawing.maps import SignedMap
from .surface import SPHERE


def zp(p: int) -> int:
    """Crossings forced between the stars of a vertex and its duplicate."""
    if p < 0:
        raise ValueError("p must be non-negative")
    return (p // 2) * ((p - 1) // 2)


def zarankiewicz_number(p: int, q: int) -> int:
    return zp(p) * zp(q)


@dataclass(frozen=True)
class DuplicationStep:
    target: str
    gap: int
    name: str


@dataclass(frozen=True)
class ExtensionScript:
    base: Drawing
    steps: tuple[DuplicationStep, ...] = ()

    def to_dict(self) -> dict:
        return {
            "base": drawing_to_dict(self.base),
            "steps": [{"target": s.target, "gap": s.gap, "name": s.name} for s in self.steps],
        }

    @classmethod
    def from_dict(cls, doc: dict) -> "ExtensionScript":
        steps = tuple(DuplicationStep(s["target"], int(s["gap"]), s["name"]) for s in doc["steps"])
        return cls(drawing_from_dict(doc["base"]), steps)

    def dumps(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n"

    def save(self, path) -> None:
        Path(path).write_text(self.dumps())

    @classmethod
    def load(cls, path) -> "ExtensionScript":
        return cls.from_dict(json.loads(Path(path).read_text()))


class ScriptError(ValueError):
    def __init__(self, index: int, cause: Exception):
        self.index = index
        self.cause = cause
        super().__init__(f"step {index} failed: {cause}")


# position of each half-segment in the cyclic order at a crossing, by class
_LAYOUT = {
    0: ((0, "in"), (1, "in"), (0, "out"), (1, "out")),
    1: ((0, "in"), (1, "out"), (0, "out"), (1, "in")),
}


@dataclass
class _Work:
    """Mutable copy of a drawing while it is being edited."""

    crossings: list[tuple[Edge, Edge]]
    classes: list[int]
    orders: dict[Edge, list[int]]
    signs: dict[Edge, list[int]]
    rotations: dict[str, list[str]]

    @classmethod
    def of(cls, d: Drawing) -> "_Work":
        return cls(
            crossings=list(d.crossings),
            classes=list(d.crossing_orientations),
            orders={e: list(o) for e, o in d.edge_orders.items()},
            signs={e: d.edge_signs(e) for e in d.edge_orders},
            rotations={v: list(r) for v, r in d.rotations.items()},
        )

    def add_crossing(self, e: Edge, f: Edge, cls: int) -> int:
        self.crossings.append((e, f))
        self.classes.append(cls)
        return len(self.crossings) - 1

    def insert_next_to(self, edge: Edge, anchor: int, new: int, before: bool) -> None:
        # the short piece between anchor and new is positive; the long piece keeps its sign
        order, signs = self.orders[edge], self.signs[edge]
        j = order.index(anchor)
        if before:
            order.insert(j, new)
            signs[j : j + 1] = [signs[j], 1]
        else:
            order.insert(j + 1, new)
            signs[j + 1 : j + 2] = [1, signs[j + 1]]

    def append_near_q_end(self, edge: Edge, new: int) -> None:
        self.orders[edge].append(new)
        self.signs[edge].append(1)

    def freeze(self, ctx: BipartiteContext, surface) -> Drawing:
        signs = {(e, j): sg for e, lst in self.signs.items() for j, sg in enumerate(lst) if sg != 1}
        return Drawing(
            context=ctx,
            crossings=tuple(self.crossings),
            edge_orders={e: tuple(o) for e, o in self.orders.items()},
            rotations={v: tuple(r) for v, r in self.rotations.items()},
            crossing_orientations=tuple(self.classes),
            signs=signs,
            surface=surface,
        )


def duplicate(d: Drawing, step: DuplicationStep) -> Drawing:
    require_good(d)
    ctx = d.context
    u, v = step.target, step.name
    if u not in ctx.q_side:
        raise ValueError(f"duplication target {u!r} is not a q-side vertex")
    p = ctx.p
    if not 0 <= step.gap < p:
        raise ValueError(f"gap {step.gap} out of range for a vertex of degree {p}")
    if v in ctx.p_side or v in ctx.q_side or not v or "-" in v or "#" in v:
        raise ValueError(f"name {v!r} is taken or illegal")

    rot_u = d.rotations[u]
    ws = [rot_u[(step.gap + t) % p] for t in range(p)]  # ws[i-1] is the p-side end of e_i
    m = (p + 1) // 2  # e_1..e_m are reached clockwise-first; ties go low
    work = _Work.of(d)
    new_orders: dict[Edge, list[int]] = {}
    new_signs: dict[Edge, list[int]] = {}

    for i, w in enumerate(ws, start=1):
        uw, vw = (w, u), (w, v)
        order = list(d.edge_orders[uw])
        signs = d.edge_signs(uw)
        # side of uw (looking from u toward w) on which vw runs: +1 right, -1 left
        side = 1 if i <= m else -1
        copies = []
        for j in range(len(order), 0, -1):
            side *= signs[j]
            c = order[j - 1]
            pair = d.crossings[c]
            mine = 0 if pair[0] == uw else 1
            layout = _LAYOUT[d.crossing_orientations[c]]
            a = layout.index((mine, "out"))
            slot, direction = layout[(a + 1) % 4] if side == 1 else layout[(a + 3) % 4]
            assert slot != mine
            copies.append((c, pair[slot], direction == "in", mine))
        side *= signs[0]
        copies.reverse()
        new_order = []
        for c, f, before, mine in copies:
            e0, e1 = d.crossings[c]
            new_pair = (vw, e1) if mine == 0 else (e0, vw)
            nc = work.add_crossing(*new_pair, d.crossing_orientations[c])
            work.insert_next_to(f, c, nc, before)
            new_order.append(nc)
        new_orders[vw] = new_order
        new_signs[vw] = list(signs)
        rot_w = work.rotations[w]
        k = rot_w.index(u)
        rot_w.insert(k + 1 if side == 1 else k, v)

    # crossings inside the disk around u; disk[i][k] is where vw_i meets e_k
    disk: dict[int, dict[int, int]] = {i: {} for i in range(1, p + 1)}
    for k in range(1, p + 1):
        uw = (ws[k - 1], u)
        # listed from the far end of e_k inward
        partners, cls = (range(k + 1, m + 1), 0) if k <= m else (range(k - 1, m, -1), 1)
        for i in partners:
            nc = work.add_crossing(uw, (ws[i - 1], v), cls)
            work.append_near_q_end(uw, nc)
            disk[i][k] = nc
    for i, w in enumerate(ws, start=1):
        vw = (w, v)
        ks = range(i - 1, 0, -1) if i <= m else range(i + 1, p + 1)
        tail = [disk[i][k] for k in ks]
        new_orders[vw] = new_orders[vw] + tail
        new_signs[vw] = new_signs[vw] + [1] * len(tail)

    work.orders.update(new_orders)
    work.signs.update(new_signs)
    work.rotations[v] = list(rot_u)
    new_ctx = BipartiteContext(ctx.p_side, ctx.q_side + (v,))
    return work.freeze(new_ctx, d.surface)


def run_script(script: ExtensionScript) -> Drawing:
    d = script.base
    for idx, step in enumerate(script.steps):
        try:
            d = duplicate(d, step)
        except ValueError as exc:
            raise ScriptError(idx, exc) from exc
    return d


def planar_base(p: int) -> Drawing:
    """Crossing-free spherical drawing of K_{p,2}."""
    if p < 1:
        raise ValueError("p must be at least 1")
    ctx = BipartiteContext.standard(p, 2)
    rotations = {a: ("b1", "b2") for a in ctx.p_side}
    rotations["b1"] = ctx.p_side
    rotations["b2"] = tuple(reversed(ctx.p_side))
    return Drawing(ctx, (), {}, rotations, (), {}, SPHERE)


def _fresh_name(d: Drawing) -> str:
    taken = set(d.context.p_side) | set(d.context.q_side)
    j = d.q + 1
    while f"b{j}" in taken:
        j += 1
    return f"b{j}"


def zarankiewicz_script(p: int, q: int) -> ExtensionScript:
    """Script growing planar K_{p,2} to K_{p,q}, always duplicating a least-loaded vertex."""
    if q < 2:
        raise ValueError("Zarankiewicz drawings need q >= 2")
    base = planar_base(p)
    d = base
    steps = []
    while d.q < q:
        target = min(d.context.q_side, key=lambda b: star_load(d, b))
        step = DuplicationStep(target, 0, _fresh_name(d))
        steps.append(step)
        d = duplicate(d, step)
    return ExtensionScript(base, tuple(steps))


def zarankiewicz_drawing(p: int, q: int) -> Drawing:
    return run_script(zarankiewicz_script(p, q))


def _dipole_realizable(m: int, pairs, orders, classes) -> bool:
    # vertices: u=0, v=1, crossing c -> 2 + c; edge i has segments in order from u
    segs: list[tuple[int, int]] = []
    first, last = [], []
    at = {}
    for i in range(m):
        nodes = [0] + [2 + c for c in orders[i]] + [1]
        ids = []
        for j in range(len(nodes) - 1):
            ids.append(len(segs))
            segs.append((nodes[j], nodes[j + 1]))
        first.append(2 * ids[0])
        last.append(2 * ids[-1] + 1)
        for j, c in enumerate(orders[i]):
            at[(c, i)] = (2 * ids[j] + 1, 2 * ids[j + 1])
    rots = [first, last]
    for c, (i, j) in enumerate(pairs):
        darts = at[(c, i)] + at[(c, j)]
        rots.append(Skeleton.crossing_rotation((darts[0], darts[1], darts[2], darts[3]), classes[c]))
    smap = SignedMap(rots, [1] * len(segs))
    return smap.euler_characteristic() == 2


def dipole_min_crossings(m: int, max_k: int) -> int | None:
    """Fewest crossings in a spherical drawing of the m-edge dipole with equal rotations.

    Both endpoints carry the rotation ``(1, .., m)`` in the same orientation.
    Parallel edges may cross each other here, at most once per pair. Returns
    None when no drawing with at most ``max_k`` crossings exists.
    """
    if not 2 <= m <= 5:
        raise ValueError("dipole search supports 2 <= m <= 5")
    all_pairs = list(itertools.combinations(range(m), 2))
    for k in range(max_k + 1):
        for pairs in itertools.combinations(all_pairs, k):
            on_edge = [[c for c, pr in enumerate(pairs) if i in pr] for i in range(m)]
            for orders in itertools.product(*(itertools.permutations(x) for x in on_edge)):
                for classes in itertools.product((0, 1), repeat=k):
                    if _dipole_realizable(m, pairs, orders, classes):
                        return k
    return None


def nested_dipole_witness(m: int) -> Drawing:
    """Duplicate of the planar star K_{m,1}: a subdivided dipole drawing with zp(m) crossings."""
    star = delete_vertex(planar_base(m), "b2")
    return duplicate(star, DuplicationStep("b1", 0, "b2"))
