"""JSON documents for drawings (one drawing per file)."""

from __future__ import annotations

import json
from pathlib import Path

from ..surface import Surface
from .model import BipartiteContext, Drawing, edge_name, parse_edge_name, parse_segment_name, segment_name


def drawing_to_dict(d: Drawing) -> dict:
    return {
        "p": d.p,
        "q": d.q,
        "p_side": list(d.context.p_side),
        "q_side": list(d.context.q_side),
        "surface": str(d.surface),
        "crossings": [{"e": list(e), "f": list(f)} for e, f in d.crossings],
        "edge_orders": {edge_name(e): list(order) for e, order in d.edge_orders.items()},
        "rotations": {v: list(r) for v, r in d.rotations.items()},
        "crossing_orientations": list(d.crossing_orientations),
        "signs": {segment_name(s): sg for s, sg in sorted(d.signs.items())},
    }


def drawing_from_dict(doc: dict) -> Drawing:
    p, q = int(doc["p"]), int(doc["q"])
    if "p_side" in doc or "q_side" in doc:
        ctx = BipartiteContext(tuple(doc["p_side"]), tuple(doc["q_side"]))
        if (ctx.p, ctx.q) != (p, q):
            raise ValueError(f"p/q ({p}, {q}) disagree with the listed sides ({ctx.p}, {ctx.q})")
    else:
        ctx = BipartiteContext.standard(p, q)
    return Drawing(
        context=ctx,
        crossings=tuple((tuple(c["e"]), tuple(c["f"])) for c in doc.get("crossings", [])),
        edge_orders={parse_edge_name(k): tuple(v) for k, v in doc.get("edge_orders", {}).items()},
        rotations={v: tuple(r) for v, r in doc["rotations"].items()},
        crossing_orientations=tuple(doc.get("crossing_orientations", [])),
        signs={parse_segment_name(k): int(v) for k, v in doc.get("signs", {}).items()},
        surface=Surface.parse(doc.get("surface", "S0")),
    )


def dumps(d: Drawing) -> str:
    return json.dumps(drawing_to_dict(d), indent=2, sort_keys=True) + "\n"


def loads(text: str) -> Drawing:
    return drawing_from_dict(json.loads(text))


def save(d: Drawing, path) -> None:
    Path(path).write_text(dumps(d))


def load(path) -> Drawing:
    return loads(Path(path).read_text())
