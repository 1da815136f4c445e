"""Signed rotation systems on multigraphs, with face tracing.

Edges are numbered ``0..E-1``; edge ``s`` owns darts ``2s`` (at its tail) and
``2s + 1`` (at its head). A map is a rotation (cyclic list of darts) per vertex
plus a sign per edge. Face tracing walks states ``(dart, s)`` where ``s`` is the
current local orientation: leave along ``dart``, multiply ``s`` by the edge sign,
then continue with the ``s``-successor of the arriving dart. Every face shows up
as two state orbits, one per traversal direction.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field


@dataclass
class SignedMap:
    rotations: list[list[int]]
    signs: list[int]
    dart_vertex: list[int] = field(init=False, repr=False)
    dart_pos: list[int] = field(init=False, repr=False)

    def __post_init__(self):
        n_darts = 2 * len(self.signs)
        self.dart_vertex = [-1] * n_darts
        self.dart_pos = [-1] * n_darts
        for v, rot in enumerate(self.rotations):
            for i, d in enumerate(rot):
                if self.dart_vertex[d] != -1:
                    raise ValueError(f"dart {d} appears twice in the rotation system")
                self.dart_vertex[d] = v
                self.dart_pos[d] = i
        if -1 in self.dart_vertex:
            raise ValueError(f"dart {self.dart_vertex.index(-1)} missing from the rotation system")

    @property
    def num_vertices(self) -> int:
        return len(self.rotations)

    @property
    def num_edges(self) -> int:
        return len(self.signs)

    def step(self, dart: int, s: int) -> tuple[int, int]:
        other = dart ^ 1
        s2 = s * self.signs[dart >> 1]
        rot = self.rotations[self.dart_vertex[other]]
        return rot[(self.dart_pos[other] + s2) % len(rot)], s2

    def reverse_state(self, dart: int, s: int) -> tuple[int, int]:
        """The state traversing the same edge side in the opposite direction."""
        return dart ^ 1, -s * self.signs[dart >> 1]

    def orbits(self) -> list[list[tuple[int, int]]]:
        seen = set()
        out = []
        for d in range(2 * self.num_edges):
            for s in (1, -1):
                if (d, s) in seen:
                    continue
                orbit = []
                state = (d, s)
                while state not in seen:
                    seen.add(state)
                    orbit.append(state)
                    state = self.step(*state)
                out.append(orbit)
        return out

    def faces(self) -> list[list[tuple[int, int]]]:
        """One orbit per face; the paired reverse orbit is dropped."""
        orbits = self.orbits()
        owner = {}
        for k, orbit in enumerate(orbits):
            for st in orbit:
                owner[st] = k
        keep = []
        dropped = set()
        for k, orbit in enumerate(orbits):
            if k in dropped:
                continue
            partner = owner[self.reverse_state(*orbit[0])]
            if partner == k:
                raise RuntimeError("self-reverse face orbit; rotation system is inconsistent")
            dropped.add(partner)
            keep.append(orbit)
        return keep

    def num_faces(self) -> int:
        if all(x == 1 for x in self.signs):
            return _count_oriented_faces(self.rotations, 2 * self.num_edges)
        return len(self.orbits()) // 2

    def euler_characteristic(self) -> int:
        return self.num_vertices - self.num_edges + self.num_faces()

    def switching(self) -> list[int] | None:
        """Vertex switches making every edge positive, or None if non-orientable."""
        n = self.num_vertices
        sw = [0] * n
        adj = [[] for _ in range(n)]
        for e, sg in enumerate(self.signs):
            a, b = self.dart_vertex[2 * e], self.dart_vertex[2 * e + 1]
            adj[a].append((b, sg))
            adj[b].append((a, sg))
        for root in range(n):
            if sw[root]:
                continue
            sw[root] = 1
            queue = deque([root])
            while queue:
                v = queue.popleft()
                for w, sg in adj[v]:
                    want = sw[v] * sg
                    if sw[w] == 0:
                        sw[w] = want
                        queue.append(w)
                    elif sw[w] != want:
                        return None
        return sw

    def is_orientable(self) -> bool:
        return self.switching() is not None


def _count_oriented_faces(rotations: list[list[int]], n_darts: int) -> int:
    succ = [0] * n_darts
    for rot in rotations:
        k = len(rot)
        for i, d in enumerate(rot):
            succ[d] = rot[(i + 1) % k]
    seen = bytearray(n_darts)
    faces = 0
    for d0 in range(n_darts):
        if seen[d0]:
            continue
        faces += 1
        d = d0
        while not seen[d]:
            seen[d] = 1
            d = succ[d ^ 1]
    return faces


def count_faces_plain(succ: list[int]) -> int:
    """Face count for an all-positive map given as a successor array on darts."""
    n = len(succ)
    seen = bytearray(n)
    faces = 0
    for d0 in range(n):
        if seen[d0]:
            continue
        faces += 1
        d = d0
        while not seen[d]:
            seen[d] = 1
            d = succ[d ^ 1]
    return faces


def count_faces_signed(succ: list[int], pred: list[int], signs: list[int]) -> int:
    """Face count for a signed map given successor/predecessor arrays on darts."""
    n = len(succ)
    seen_pos = bytearray(n)
    seen_neg = bytearray(n)
    orbits = 0
    for d0 in range(n):
        for s0 in (1, -1):
            if (seen_pos if s0 == 1 else seen_neg)[d0]:
                continue
            orbits += 1
            d, s = d0, s0
            while True:
                seen = seen_pos if s == 1 else seen_neg
                if seen[d]:
                    break
                seen[d] = 1
                if signs[d >> 1] < 0:
                    s = -s
                d = succ[d ^ 1] if s == 1 else pred[d ^ 1]
    return orbits // 2
