"""Moves that leave a drawing's isomorphism class unchanged."""

from __future__ import annotations

from typing import Mapping, Sequence

from .model import BipartiteContext, Drawing


def relabel(d: Drawing, mapping: Mapping[str, str], crossing_perm: Sequence[int] | None = None) -> Drawing:
    """Rename vertices (side-preserving) and optionally renumber crossings.

    ``crossing_perm[old] = new``. The side lists are reordered to follow the
    images of the original order.
    """
    f = lambda v: mapping.get(v, v)  # noqa: E731
    images = [f(v) for v in d.context.p_side + d.context.q_side]
    if len(set(images)) != len(images):
        raise ValueError("mapping must be injective")
    fe = lambda e: (f(e[0]), f(e[1]))  # noqa: E731
    n = len(d.crossings)
    perm = list(crossing_perm) if crossing_perm is not None else list(range(n))
    if sorted(perm) != list(range(n)):
        raise ValueError("crossing_perm must be a permutation")
    crossings = [None] * n
    classes = [0] * n
    for old, (e, g) in enumerate(d.crossings):
        crossings[perm[old]] = (fe(e), fe(g))
        classes[perm[old]] = d.crossing_orientations[old]
    ctx = BipartiteContext(tuple(f(v) for v in d.context.p_side), tuple(f(v) for v in d.context.q_side))
    return Drawing(
        context=ctx,
        crossings=tuple(crossings),
        edge_orders={fe(e): tuple(perm[c] for c in order) for e, order in d.edge_orders.items()},
        rotations={f(v): tuple(f(w) for w in rot) for v, rot in d.rotations.items()},
        crossing_orientations=tuple(classes),
        signs={(fe(e), j): sg for (e, j), sg in d.signs.items()},
        surface=d.surface,
    )


def mirror(d: Drawing) -> Drawing:
    """Reflect: reverse every rotation, including the one at each crossing."""
    return d.replace(
        rotations={v: tuple(reversed(r)) for v, r in d.rotations.items()},
        crossing_orientations=tuple(1 - c for c in d.crossing_orientations),
    )


def switch_vertex(d: Drawing, v: str) -> Drawing:
    """Reverse the rotation at a real vertex and negate its incident segment signs."""
    signs = dict(d.signs)
    for e in d.star(v):
        j = 0 if v == e[0] else len(d.edge_orders[e])
        signs[(e, j)] = -d.segment_sign(e, j)
    rotations = dict(d.rotations)
    rotations[v] = tuple(reversed(d.rotations[v]))
    return d.replace(rotations=rotations, signs=signs)


def switch_crossing(d: Drawing, c: int) -> Drawing:
    """Reverse the rotation at crossing ``c`` and negate the four segments meeting there."""
    signs = dict(d.signs)
    for e in d.crossings[c]:
        j = d.edge_orders[e].index(c)
        for idx in (j, j + 1):
            signs[(e, idx)] = -d.segment_sign(e, idx)
    classes = list(d.crossing_orientations)
    classes[c] = 1 - classes[c]
    return d.replace(signs=signs, crossing_orientations=tuple(classes))
