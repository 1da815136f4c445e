"""Canonical keys for drawings up to relabeling, reflection and sign switching.

The key is the lexicographically least traversal code of the flattening over
all starting darts at p-side vertices and both starting orientations. A
traversal labels vertices in breadth-first order, reads each rotation in the
local orientation inherited along the discovery edge, and records every edge
by its relative sign. Relative signs and rotation readings are unchanged by
switching at a vertex, and trying both orientations at the root absorbs
reflection, so equal keys mean the drawings differ only by those moves.
"""

from __future__ import annotations

from array import array
from collections import deque

from .maps import SignedMap
from .model import Drawing, flatten

P_VERTEX, Q_VERTEX, CROSSING = 0, 1, 2


def _traverse(smap: SignedMap, kinds: list[int], start: int, eps: int, best: list[int] | None) -> list[int] | None:
    rotations = smap.rotations
    signs = smap.signs
    dart_vertex = smap.dart_vertex
    dart_pos = smap.dart_pos
    v0 = dart_vertex[start]
    label = {v0: 0}
    origin = {v0: dart_pos[start]}
    orient = {v0: eps}
    queue = deque([v0])
    code: list[int] = []
    tied = best is not None
    while queue:
        v = queue.popleft()
        rot = rotations[v]
        deg = len(rot)
        ov = orient[v]
        base = origin[v]
        chunk = [kinds[v], deg]
        for t in range(deg):
            d = rot[(base + ov * t) % deg]
            other = d ^ 1
            w = dart_vertex[other]
            s = ov * signs[d >> 1]
            if w not in label:
                label[w] = len(label)
                origin[w] = dart_pos[other]
                orient[w] = s
                queue.append(w)
            ow = orient[w]
            k = ((dart_pos[other] - origin[w]) * ow) % len(rotations[w])
            chunk.extend((label[w], k, s * ow))
        if tied:
            n = len(code)
            seg = best[n : n + len(chunk)]
            if chunk > seg:
                return None
            if chunk < seg:
                tied = False
        code.extend(chunk)
    return code


def canonical_form(d: Drawing) -> bytes:
    smap = flatten(d).signed_map
    p, q = d.p, d.q
    kinds = [P_VERTEX] * p + [Q_VERTEX] * q + [CROSSING] * len(d.crossings)
    best: list[int] | None = None
    for v in range(p):
        for start in smap.rotations[v]:
            for eps in (1, -1):
                code = _traverse(smap, kinds, start, eps, best)
                if code is not None and (best is None or code < best):
                    best = code
    header = array("i", [p, q, len(d.crossings)])
    return header.tobytes() + array("i", best).tobytes()
