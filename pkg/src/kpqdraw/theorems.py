"""Desk-scale execution of the q-side bound argument and the reduce/rebuild loop.

The bound argument colors each q-side pair ``{u, v}`` by the set of p-side
pairs ``{i, j}`` whose 4-cycle ``i u j v`` crosses itself; within a
monochromatic set, p-side pairs with color 0 form a triangle-free graph, so at
least ``zp(p)`` pairs are crossed. The reduction loop deletes one member of a
heavy pair (``crn_pair >= zp(p)``) until the floor is reached and rebuilds by
reinserting each deleted vertex as a duplicate of its partner.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from math import comb

import networkx as nx

from .drawing import Drawing, crn, crn_pair, delete_vertex, drawing_to_dict, pair_crossing_counts, require_good
from .duplication import DuplicationStep, duplicate, zp


@dataclass(frozen=True)
class ColorFunction:
    p_side: tuple[str, ...]
    bits: tuple[bool, ...]  # one per p-side pair, in combinations() order

    @property
    def p(self) -> int:
        return len(self.p_side)

    def __getitem__(self, pair: tuple[str, str]) -> bool:
        i, j = sorted(pair, key=self.p_side.index)
        return self.bits[list(combinations(self.p_side, 2)).index((i, j))]

    @property
    def code(self) -> int:
        return sum(1 << n for n, b in enumerate(self.bits) if b)


class TriangleFound(ValueError):
    """The non-crossing graph has a triangle: a crossing-free K_{3,|S|} sub-drawing."""

    def __init__(self, triangle: tuple[str, str, str]):
        self.triangle = triangle
        super().__init__(f"non-crossing graph contains triangle {triangle}")


class ReductionInequalityError(AssertionError):
    def __init__(self, trace: "ReductionTrace"):
        self.trace = trace
        super().__init__(f"rebuilt drawing has {trace.crn_rebuilt} crossings, original {trace.crn_original}")


def _check_q_pair(d: Drawing, u: str, v: str) -> None:
    if u == v or u not in d.context.q_side or v not in d.context.q_side:
        raise ValueError(f"need two distinct q-side vertices, got {u!r}, {v!r}")


def four_cycle_selfcross(d: Drawing, u: str, v: str, i: str, j: str) -> bool:
    _check_q_pair(d, u, v)
    if i == j or i not in d.context.p_side or j not in d.context.p_side:
        raise ValueError(f"need two distinct p-side vertices, got {i!r}, {j!r}")
    pairs = {frozenset(c) for c in d.crossings}
    return frozenset(((i, u), (j, v))) in pairs or frozenset(((i, v), (j, u))) in pairs


def color_fn(d: Drawing, u: str, v: str) -> ColorFunction:
    _check_q_pair(d, u, v)
    pairs = {frozenset(c) for c in d.crossings}
    bits = tuple(
        frozenset(((i, u), (j, v))) in pairs or frozenset(((i, v), (j, u))) in pairs
        for i, j in combinations(d.context.p_side, 2)
    )
    return ColorFunction(d.context.p_side, bits)


def noncrossing_graph(d: Drawing, S) -> nx.Graph:
    S = list(S)
    if len(S) < 2:
        raise ValueError("need at least two q-side vertices")
    g = nx.Graph()
    g.add_nodes_from(d.context.p_side)
    colors = [color_fn(d, u, v) for u, v in combinations(S, 2)]
    for n, (i, j) in enumerate(combinations(d.context.p_side, 2)):
        if not any(c.bits[n] for c in colors):
            g.add_edge(i, j)
    return g


def find_triangle(g: nx.Graph) -> tuple | None:
    for a, b in g.edges():
        common = set(g[a]) & set(g[b])
        if common:
            return tuple(sorted((a, b, min(common))))
    return None


def turan_deficit(g: nx.Graph) -> int:
    """Number of p-side pairs that are not edges; at least zp(p) when g is triangle-free."""
    tri = find_triangle(g)
    if tri is not None:
        raise TriangleFound(tri)
    return comb(g.number_of_nodes(), 2) - g.number_of_edges()


def heavy_pair(d: Drawing, threshold: int) -> tuple[str, str] | None:
    counts = pair_crossing_counts(d)
    if not counts:
        return None
    top = max(counts.values())
    if top < threshold:
        return None
    # pair_crossing_counts is keyed in q-side order, so the first maximizer is lexicographically least
    return next(pair for pair, c in counts.items() if c == top)


def largest_monochromatic_clique(d: Drawing, S) -> tuple[int, tuple[str, ...]]:
    """Largest subset of S whose pairs all share one color; exhaustive, |S| <= 6."""
    S = list(S)
    if len(S) > 6:
        raise ValueError("exhaustive clique search is limited to |S| <= 6")
    color = {frozenset(pr): color_fn(d, *pr).code for pr in combinations(S, 2)}
    for size in range(len(S), 1, -1):
        for sub in combinations(S, size):
            codes = {color[frozenset(pr)] for pr in combinations(sub, 2)}
            if len(codes) == 1:
                return codes.pop(), sub
    return 0, tuple(S[:1])


@dataclass
class HarnessReport:
    pair_crossings: dict
    colors: dict
    distinct_colors: int
    noncrossing_edges: list
    triangle: tuple | None
    deficit: int | None
    heavy: tuple | None
    monochromatic: tuple | None = None

    def to_dict(self) -> dict:
        return {
            "pair_crossings": {f"{u},{v}": c for (u, v), c in self.pair_crossings.items()},
            "colors": {f"{u},{v}": c for (u, v), c in self.colors.items()},
            "distinct_colors": self.distinct_colors,
            "noncrossing_edges": [list(e) for e in self.noncrossing_edges],
            "triangle": list(self.triangle) if self.triangle else None,
            "deficit": self.deficit,
            "heavy_pair": list(self.heavy) if self.heavy else None,
            "monochromatic": None
            if self.monochromatic is None
            else {"color": self.monochromatic[0], "vertices": list(self.monochromatic[1])},
        }


def qbsp_report(d: Drawing, S=None) -> HarnessReport:
    require_good(d)
    S = list(d.context.q_side if S is None else S)
    counts = {pr: c for pr, c in pair_crossing_counts(d).items() if pr[0] in S and pr[1] in S}
    colors = {pr: color_fn(d, *pr).code for pr in counts}
    g = noncrossing_graph(d, S)
    tri = find_triangle(g)
    return HarnessReport(
        pair_crossings=counts,
        colors=colors,
        distinct_colors=len(set(colors.values())),
        noncrossing_edges=sorted(g.edges()),
        triangle=tri,
        deficit=None if tri else turan_deficit(g),
        heavy=heavy_pair(d, zp(d.p)),
        monochromatic=largest_monochromatic_clique(d, S) if len(S) <= 6 else None,
    )


@dataclass
class ReductionTrace:
    original: Drawing
    floor_q: int
    deleted: list[tuple[str, str]] = field(default_factory=list)
    step_crn: list[int] = field(default_factory=list)
    base: Drawing | None = None
    rebuilt: Drawing | None = None
    crn_original: int = 0
    crn_rebuilt: int | None = None
    rule: str = "heavier"

    @property
    def reached_floor(self) -> bool:
        return self.base is not None and self.base.q <= self.floor_q

    @property
    def verdict(self) -> str:
        if self.crn_rebuilt is None:
            return "reduced" if self.reached_floor else "early-stop"
        if self.crn_rebuilt < self.crn_original:
            return "improved"
        if self.crn_rebuilt == self.crn_original:
            return "equal"
        return "violated"

    def to_dict(self, base_ref: str | None = None, rebuilt_ref: str | None = None) -> dict:
        return {
            "floor": self.floor_q,
            "rule": self.rule,
            "deletions": [{"deleted": u, "partner": v, "crn_after": c} for (u, v), c in zip(self.deleted, self.step_crn)],
            "crn_original": self.crn_original,
            "crn_base": crn(self.base) if self.base is not None else None,
            "crn_rebuilt": self.crn_rebuilt,
            "reached_floor": self.reached_floor,
            "base": base_ref if base_ref is not None else drawing_to_dict(self.base),
            "rebuilt": rebuilt_ref
            if rebuilt_ref is not None
            else (drawing_to_dict(self.rebuilt) if self.rebuilt is not None else None),
            "verdict": self.verdict,
        }


def _load_outside(d: Drawing, x: str, other: str) -> int:
    return sum(c for (a, b), c in pair_crossing_counts(d).items() if x in (a, b) and other not in (a, b))


def reduce_to_base(d: Drawing, floor_q: int, rule: str = "heavier") -> ReductionTrace:
    """Delete heavy-pair members until q reaches ``floor_q`` or no heavy pair is left.

    ``rule`` picks which member of the heavy pair goes: ``"first"`` always
    deletes the first; ``"heavier"`` deletes the one with more crossings
    against the remaining vertices (ties to the first), which is what makes a
    single reinsertion never cost more than the deletion saved.
    """
    if rule not in ("first", "heavier"):
        raise ValueError(f"unknown deletion rule {rule!r}")
    if floor_q < 1:
        raise ValueError("floor must be at least 1")
    require_good(d)
    trace = ReductionTrace(original=d, floor_q=floor_q, crn_original=crn(d), rule=rule)
    threshold = zp(d.p)
    cur = d
    while cur.q > floor_q:
        pair = heavy_pair(cur, threshold)
        if pair is None:
            break
        u, v = pair
        if rule == "heavier" and _load_outside(cur, v, u) > _load_outside(cur, u, v):
            u, v = v, u
        trace.deleted.append((u, v))
        cur = delete_vertex(cur, u)
        trace.step_crn.append(crn(cur))
    trace.base = cur
    return trace


def _best_duplicate(d: Drawing, target: str, name: str) -> Drawing:
    options = [duplicate(d, DuplicationStep(target, g, name)) for g in range(d.p)]
    return min(options, key=crn)  # min() keeps the first, i.e. the lowest gap, on ties


def rebuild_and_compare(d: Drawing, floor_q: int, rule: str = "heavier") -> ReductionTrace:
    trace = reduce_to_base(d, floor_q, rule)
    cur = trace.base
    for u, v in reversed(trace.deleted):
        cur = _best_duplicate(cur, v, u)
    trace.rebuilt = cur
    trace.crn_rebuilt = crn(cur)
    if trace.crn_rebuilt > trace.crn_original:
        raise ReductionInequalityError(trace)
    return trace
