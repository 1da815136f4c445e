"""Exhaustive generation of small good drawings and exact small crossing numbers.

A drawing splits into a crossing configuration (which independent edge pairs
cross and in what order along each edge) and an embedding scheme on the
resulting flattening. Configurations are enumerated in lexicographic order;
for each, the scheme space is walked and the traced cellular surface is
tested for attachability into the target surface. Non-cellular embeddings need
no separate treatment: a drawing lives in ``sigma`` iff its cellular surface
attaches into ``sigma``.

Scheme spaces pin the rotation of one maximum-degree vertex. That is sound
because relabeling the opposite side maps any rotation there to the pinned one
and the configuration enumeration is closed under relabeling. Signs are
normalized to +1 on a spanning tree rooted at the pinned vertex.
"""

from __future__ import annotations

import itertools
import json
import math
import random
import time
from collections import deque
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterator

import networkx as nx

from .drawing import (
    BipartiteContext,
    Drawing,
    Edge,
    Skeleton,
    canonical_form,
    dumps,
    realized_surface,
)
from .drawing.maps import count_faces_plain, count_faces_signed
from .surface import SPHERE, Surface, attachable, bipartite_euler_bound


@dataclass(frozen=True)
class EnumerationBudget:
    max_crossings: int = 6
    max_seconds: float = 60.0
    parallelism: int = 1

    def __post_init__(self):
        if self.max_crossings < 0 or self.max_seconds < 0 or self.parallelism < 0:
            raise ValueError("budget fields must be non-negative")


class _Clock:
    def __init__(self, budget: EnumerationBudget):
        self.start = time.monotonic()
        self.limit = budget.max_seconds

    @property
    def elapsed(self) -> float:
        return time.monotonic() - self.start

    def expired(self) -> bool:
        return self.elapsed > self.limit


@dataclass(frozen=True)
class CrossingConfig:
    crossings: tuple[tuple[Edge, Edge], ...]
    edge_orders: dict


def independent_pairs(ctx: BipartiteContext) -> list[tuple[Edge, Edge]]:
    edges = ctx.edges
    return [(e, f) for e, f in itertools.combinations(edges, 2) if e[0] != f[0] and e[1] != f[1]]


def enumerate_crossing_configs(p: int, q: int, k: int, ctx: BipartiteContext | None = None) -> Iterator[CrossingConfig]:
    ctx = ctx or BipartiteContext.standard(p, q)
    edges = ctx.edges
    for chosen in itertools.combinations(independent_pairs(ctx), k):
        on_edge = {e: [c for c, pair in enumerate(chosen) if e in pair] for e in edges}
        busy = [e for e in edges if len(on_edge[e]) > 1]
        for perms in itertools.product(*(itertools.permutations(on_edge[e]) for e in busy)):
            orders = {e: tuple(on_edge[e]) for e in edges}
            orders.update(zip(busy, perms))
            yield CrossingConfig(chosen, orders)


@dataclass(frozen=True)
class Scheme:
    rotations: dict
    classes: tuple[int, ...]
    signs: dict


class SchemeSpace:
    """All embedding schemes on one flattening skeleton, modulo the pinning above.

    ``pin`` is True for the default maximum-degree vertex, a vertex name to pin
    that vertex instead, or False for no pinning.
    """

    def __init__(self, sk: Skeleton, orientable_only: bool, pin: bool | str = True):
        self.sk = sk
        ctx = sk.context
        self.orientable_only = orientable_only
        real = list(ctx.p_side + ctx.q_side)
        degrees = [len(ctx.neighbors(v)) for v in real]
        if isinstance(pin, str):
            if pin not in real:
                raise ValueError(f"cannot pin unknown vertex {pin!r}")
            self.root = real.index(pin)
        else:
            self.root = max(range(len(real)), key=lambda i: (degrees[i], -i))
        # options per vertex: list of (names, darts)
        self.options: list[list[tuple[tuple, list[int]]]] = []
        for i, v in enumerate(real):
            nbrs = ctx.neighbors(v)
            if pin and i == self.root or len(nbrs) < 3:
                orders = [tuple(nbrs)]
            else:
                orders = [(nbrs[0],) + rest for rest in itertools.permutations(nbrs[1:])]
            self.options.append([(o, sk.real_rotation(v, o)) for o in orders])
        for cd in sk.crossing_darts:
            self.options.append([(cls, Skeleton.crossing_rotation(cd, cls)) for cls in (0, 1)])
        self.num_darts = 2 * len(sk.segments)
        self.cotree = [] if orientable_only else self._cotree()
        # per vertex option: flat (dart, succ, pred) triples
        self._links = [[_links(darts) for _, darts in opts] for opts in self.options]

    def _cotree(self) -> list[int]:
        n = len(self.sk.vertex_names)
        adj = [[] for _ in range(n)]
        for s, (a, b) in enumerate(self.sk.segments):
            adj[a].append((b, s))
            adj[b].append((a, s))
        seen = {self.root}
        tree = set()
        queue = deque([self.root])
        while queue:
            v = queue.popleft()
            for w, s in adj[v]:
                if w not in seen:
                    seen.add(w)
                    tree.add(s)
                    queue.append(w)
        return [s for s in range(len(self.sk.segments)) if s not in tree]

    def __len__(self) -> int:
        return math.prod(len(o) for o in self.options) * 2 ** len(self.cotree)

    def surfaces(self) -> Iterator[tuple[tuple, tuple, int, bool]]:
        """Yield ``(vertex choice, cotree signs, euler characteristic, orientable)``."""
        n_darts = self.num_darts
        nv = len(self.options)
        ne = len(self.sk.segments)
        succ = [0] * n_darts
        pred = [0] * n_darts
        patterns = list(itertools.product((1, -1), repeat=len(self.cotree)))
        for choice in itertools.product(*(range(len(o)) for o in self.options)):
            for links, c in zip(self._links, choice):
                for d, nx_, pv in links[c]:
                    succ[d] = nx_
                    pred[d] = pv
            for pattern in patterns:
                if all(x == 1 for x in pattern):
                    faces = count_faces_plain(succ)
                    orientable = True
                else:
                    signs = [1] * ne
                    for s, x in zip(self.cotree, pattern):
                        signs[s] = x
                    faces = count_faces_signed(succ, pred, signs)
                    orientable = False
                yield choice, pattern, nv - ne + faces, orientable

    def scheme(self, choice: tuple, pattern: tuple) -> Scheme:
        ctx = self.sk.context
        real = list(ctx.p_side + ctx.q_side)
        rotations = {v: self.options[i][choice[i]][0] for i, v in enumerate(real)}
        classes = tuple(self.options[len(real) + c][choice[len(real) + c]][0] for c in range(len(self.sk.crossings)))
        seg_sign = {s: x for s, x in zip(self.cotree, pattern) if x != 1}
        signs = {}
        for e, segs in self.sk.segment_map.items():
            for j, s in enumerate(segs):
                if s in seg_sign:
                    signs[(e, j)] = seg_sign[s]
        return Scheme(rotations, classes, signs)

    def drawing(self, choice: tuple, pattern: tuple, surface: Surface) -> Drawing:
        sch = self.scheme(choice, pattern)
        return Drawing(
            self.sk.context, self.sk.crossings, self.sk.edge_orders, sch.rotations, sch.classes, sch.signs, surface
        )


def _links(darts: list[int]) -> list[tuple[int, int, int]]:
    k = len(darts)
    return [(d, darts[(i + 1) % k], darts[(i - 1) % k]) for i, d in enumerate(darts)]


def enumerate_schemes(sk: Skeleton, orientable_only: bool, pin: bool | str = True) -> Iterator[Scheme]:
    space = SchemeSpace(sk, orientable_only, pin)
    patterns = list(itertools.product((1, -1), repeat=len(space.cotree)))
    for choice in itertools.product(*(range(len(o)) for o in space.options)):
        for pattern in patterns:
            yield space.scheme(choice, pattern)


def _config_skeleton(ctx: BipartiteContext, cfg: CrossingConfig) -> Skeleton:
    return Skeleton.build(ctx, cfg.crossings, cfg.edge_orders)


def realizing_drawings(
    ctx: BipartiteContext, cfg: CrossingConfig, sigma: Surface, pin: bool | str = True
) -> Iterator[Drawing]:
    """Drawings on this configuration whose cellular surface attaches into ``sigma``.

    With the default pinning this is complete only across a relabeling-closed
    family of configurations, which is how the searches use it. Pass
    ``pin=False`` for every scheme of this one configuration.
    """
    space = SchemeSpace(_config_skeleton(ctx, cfg), orientable_only=sigma.orientable, pin=pin)
    for choice, pattern, chi, orientable in space.surfaces():
        if (orientable or not sigma.orientable) and attachable(Surface.from_euler(chi, orientable), sigma):
            yield space.drawing(choice, pattern, sigma)


def realize_by_schemes(
    ctx: BipartiteContext, cfg: CrossingConfig, sigma: Surface, pin: bool | str = False
) -> Drawing | None:
    """Some drawing realizing ``cfg`` in ``sigma``, or None. Exact for the single configuration."""
    return next(realizing_drawings(ctx, cfg, sigma, pin), None)


def realize_on_sphere(ctx: BipartiteContext, cfg: CrossingConfig) -> Drawing | None:
    """Spherical realization via a planarity test.

    Each crossing becomes a wheel whose rim carries the four half-segments in
    alternating order; wheels embed rigidly up to reflection, so the gadget
    graph is planar iff the configuration has a spherical scheme.
    """
    g = nx.Graph()
    attach: dict[tuple[str, object], str] = {}

    def end_node(c: int | None, role: int | None, real: str):
        return real if c is None else ("r", c, role)

    for c in range(len(cfg.crossings)):
        rim = [("r", c, i) for i in range(4)]
        for i in range(4):
            g.add_edge(rim[i], rim[(i + 1) % 4])
            g.add_edge(("h", c), rim[i])
    for e in ctx.edges:
        order = cfg.edge_orders.get(e, ())
        # (crossing, role) of the nodes along e; roles 0/2 for the first edge of a pair, 1/3 otherwise
        stops: list[tuple[int | None, int | None, str]] = [(None, None, e[0])]
        for c in order:
            first = cfg.crossings[c][0] == e
            stops.append((c, 0 if first else 1, ""))
            stops.append((c, 2 if first else 3, ""))
        stops.append((None, None, e[1]))
        for j in range(0, len(stops), 2):
            a, b = stops[j], stops[j + 1]
            na, nb = end_node(*a), end_node(*b)
            g.add_edge(na, nb)
            if a[0] is None:
                attach[(e[0], nb)] = e[1]
            if b[0] is None:
                attach[(e[1], na)] = e[0]
    planar, emb = nx.check_planarity(g)
    if not planar:
        return None
    rotations = {}
    for v in ctx.p_side + ctx.q_side:
        rotations[v] = tuple(attach[(v, nb)] for nb in emb.neighbors_cw_order(v))
    classes = []
    for c in range(len(cfg.crossings)):
        around = [x for x in emb.neighbors_cw_order(("h", c))]
        start = around.index(("r", c, 0))
        roles = [around[(start + i) % 4][2] for i in range(4)]
        classes.append(0 if roles == [0, 1, 2, 3] else 1)
    d = Drawing(ctx, cfg.crossings, cfg.edge_orders, rotations, tuple(classes), {}, SPHERE)
    assert realized_surface(d) == SPHERE, "planar gadget embedding did not trace to a sphere"
    return d


def _realize(ctx, cfg, sigma, method):
    if method == "planarity":
        if sigma != SPHERE:
            raise ValueError("the planarity route only decides the sphere")
        return realize_on_sphere(ctx, cfg)
    # pinning is sound here because every relabeling of cfg is also scanned
    return realize_by_schemes(ctx, cfg, sigma, pin=True)


def _first_realizable(args) -> int | None:
    ctx, cfgs, sigma, method = args
    for i, cfg in enumerate(cfgs):
        if _realize(ctx, cfg, sigma, method) is not None:
            return i
    return None


def _chunks(items: list, n: int) -> list[list]:
    size = max(1, -(-len(items) // max(1, n * 4)))
    return [items[i : i + size] for i in range(0, len(items), size)]


def crossing_number(
    p: int, q: int, sigma: Surface, budget: EnumerationBudget = EnumerationBudget(), method: str = "auto"
) -> int | None:
    """Least k <= budget.max_crossings with a good drawing of K_{p,q} in sigma; None if unknown."""
    if method == "auto":
        method = "planarity" if sigma == SPHERE else "schemes"
    if method not in ("planarity", "schemes"):
        raise ValueError(f"unknown method {method!r}")
    ctx = BipartiteContext.standard(p, q)
    clock = _Clock(budget)
    for k in range(budget.max_crossings + 1):
        if budget.parallelism > 1:
            cfgs = list(enumerate_crossing_configs(p, q, k, ctx))
            with ProcessPoolExecutor(budget.parallelism) as pool:
                jobs = [(ctx, chunk, sigma, method) for chunk in _chunks(cfgs, budget.parallelism)]
                for hit in pool.map(_first_realizable, jobs):
                    if hit is not None:
                        return k
            if clock.expired():
                return None
            continue
        for cfg in enumerate_crossing_configs(p, q, k, ctx):
            if _realize(ctx, cfg, sigma, method) is not None:
                return k
            if clock.expired():
                return None
    return None


@dataclass
class EnumerationResult:
    p: int
    q: int
    surface: Surface
    k: int
    drawings: list[Drawing]
    keys: list[bytes]
    partial: bool
    elapsed: float
    configs_examined: int = 0

    def manifest(self) -> dict:
        return {
            "p": self.p,
            "q": self.q,
            "surface": str(self.surface),
            "counts": {str(self.k): len(self.drawings)},
            "configs_examined": self.configs_examined,
            "budget_status": "partial" if self.partial else "complete",
            "timing_s": round(self.elapsed, 3),
            "files": [f"drawing_{i:04d}.json" for i in range(len(self.drawings))],
        }

    def write(self, outdir) -> Path:
        out = Path(outdir)
        out.mkdir(parents=True, exist_ok=True)
        for name, d in zip(self.manifest()["files"], self.drawings):
            (out / name).write_text(dumps(d))
        path = out / "manifest.json"
        path.write_text(json.dumps(self.manifest(), indent=2, sort_keys=True) + "\n")
        return path


def _classes_of(args) -> dict[bytes, Drawing]:
    ctx, cfgs, sigma = args
    found: dict[bytes, Drawing] = {}
    for cfg in cfgs:
        # planarity decides sphere realizability much faster than the scheme walk
        if sigma == SPHERE and realize_on_sphere(ctx, cfg) is None:
            continue
        for d in realizing_drawings(ctx, cfg, sigma):
            key = canonical_form(d)
            if key not in found:
                found[key] = d
    return found


def enumerate_good_drawings(
    p: int, q: int, sigma: Surface, k: int, budget: EnumerationBudget = EnumerationBudget()
) -> EnumerationResult:
    """One representative per isomorphism class of good drawings with exactly k crossings."""
    ctx = BipartiteContext.standard(p, q)
    clock = _Clock(budget)
    found: dict[bytes, Drawing] = {}
    partial = False
    examined = 0
    if budget.parallelism > 1:
        cfgs = list(enumerate_crossing_configs(p, q, k, ctx))
        with ProcessPoolExecutor(budget.parallelism) as pool:
            jobs = [(ctx, chunk, sigma) for chunk in _chunks(cfgs, budget.parallelism)]
            for part in pool.map(_classes_of, jobs):
                for key, d in part.items():
                    found.setdefault(key, d)
        examined = len(cfgs)
        partial = clock.expired()
    else:
        for cfg in enumerate_crossing_configs(p, q, k, ctx):
            for key, d in _classes_of((ctx, [cfg], sigma)).items():
                found.setdefault(key, d)
            examined += 1
            if clock.expired():
                partial = True
                break
    keys = sorted(found)
    # representatives are re-picked by key so output is independent of traversal order
    return EnumerationResult(p, q, sigma, k, [found[key] for key in keys], keys, partial, clock.elapsed, examined)


def genus_search(m: int, n: int, non_orientable: bool = False, budget: EnumerationBudget = EnumerationBudget()) -> int | None:
    """Least genus (or crosscap number) over cellular embeddings of K_{m,n}; None on timeout."""
    ctx = BipartiteContext.standard(m, n)
    sk = Skeleton.build(ctx, (), {})
    space = SchemeSpace(sk, orientable_only=not non_orientable)
    bound = bipartite_euler_bound(m + n, m * n)
    floor = max(bound, 1) if non_orientable else bound + bound % 2
    clock = _Clock(budget)
    best = None
    for count, (_, _, chi, orientable) in enumerate(space.surfaces()):
        if count % 1024 == 0 and clock.expired():
            return None
        if orientable == non_orientable:
            continue
        eg = 2 - chi
        if best is None or eg < best:
            best = eg
            if best <= floor:
                break
    if best is None:
        return None
    return best if non_orientable else best // 2


def sample_drawing(
    p: int, q: int, k: int, rng: random.Random, orientable_only: bool = False, ctx: BipartiteContext | None = None
) -> Drawing:
    """A uniformly random configuration with k crossings and a random scheme on it.

    The drawing's surface is set to the surface its scheme realizes.
    """
    ctx = ctx or BipartiteContext.standard(p, q)
    pairs = independent_pairs(ctx)
    if k > len(pairs):
        raise ValueError(f"K_{{{p},{q}}} has only {len(pairs)} independent edge pairs")
    chosen = tuple(rng.sample(pairs, k))
    orders = {}
    for e in ctx.edges:
        mine = [c for c, pair in enumerate(chosen) if e in pair]
        rng.shuffle(mine)
        orders[e] = tuple(mine)
    rotations = {}
    for v in ctx.p_side + ctx.q_side:
        nbrs = list(ctx.neighbors(v))
        rng.shuffle(nbrs)
        rotations[v] = tuple(nbrs)
    classes = tuple(rng.randint(0, 1) for _ in chosen)
    signs = {}
    if not orientable_only:
        for e, order in orders.items():
            for j in range(len(order) + 1):
                if rng.random() < 0.5:
                    signs[(e, j)] = -1
    d = Drawing(ctx, chosen, orders, rotations, classes, signs, SPHERE)
    return d.replace(surface=realized_surface(d))


def sphere_drawings(p: int, q: int, k: int, limit: int | None = None, budget: EnumerationBudget = EnumerationBudget()):
    """Spherical drawings with exactly k crossings, one per configuration, deduplicated.

    Configurations are scanned in lexicographic order and realized through the
    planarity route. Returns ``(drawings sorted by canonical key, complete)``.
    """
    ctx = BipartiteContext.standard(p, q)
    clock = _Clock(budget)
    found: dict[bytes, Drawing] = {}
    complete = True
    for cfg in enumerate_crossing_configs(p, q, k, ctx):
        d = realize_on_sphere(ctx, cfg)
        if d is not None:
            found.setdefault(canonical_form(d), d)
            if limit is not None and len(found) >= limit:
                complete = False
                break
        if clock.expired():
            complete = False
            break
    return [found[key] for key in sorted(found)], complete
