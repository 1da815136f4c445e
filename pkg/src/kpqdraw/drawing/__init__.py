from .canonical import canonical_form
from .io import drawing_from_dict, drawing_to_dict, dumps, load, loads, save
from .maps import SignedMap
from .moves import mirror, relabel, switch_crossing, switch_vertex
from .model import (
    BipartiteContext,
    Drawing,
    Edge,
    FaceTrace,
    Flattening,
    InvalidDrawing,
    Segment,
    Skeleton,
    Violation,
    crn,
    crn_pair,
    delete_vertex,
    edge_name,
    embeds_in,
    flatten,
    pair_crossing_counts,
    realized_surface,
    require_good,
    star_load,
    trace_faces,
    trace_map,
    validate_good,
)

__all__ = [
    "BipartiteContext",
    "Drawing",
    "Edge",
    "FaceTrace",
    "Flattening",
    "InvalidDrawing",
    "Segment",
    "SignedMap",
    "Skeleton",
    "Violation",
    "canonical_form",
    "crn",
    "crn_pair",
    "delete_vertex",
    "drawing_from_dict",
    "drawing_to_dict",
    "dumps",
    "edge_name",
    "embeds_in",
    "flatten",
    "load",
    "loads",
    "mirror",
    "relabel",
    "switch_crossing",
    "switch_vertex",
    "pair_crossing_counts",
    "realized_surface",
    "require_good",
    "save",
    "star_load",
    "trace_faces",
    "trace_map",
    "validate_good",
]
