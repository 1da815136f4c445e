"""Combinatorial engine for good drawings of complete bipartite graphs on surfaces."""

from .drawing import (
    BipartiteContext,
    Drawing,
    InvalidDrawing,
    canonical_form,
    crn,
    crn_pair,
    delete_vertex,
    embeds_in,
    realized_surface,
    trace_faces,
    validate_good,
)
from .duplication import (
    DuplicationStep,
    ExtensionScript,
    dipole_min_crossings,
    duplicate,
    run_script,
    zarankiewicz_drawing,
    zarankiewicz_number,
    zp,
)
from .enumeration import EnumerationBudget, crossing_number, enumerate_good_drawings, genus_search
from .surface import Surface, attachable, bipartite_euler_bound, kmn_demigenus, kmn_genus
from .theorems import qbsp_report, rebuild_and_compare, reduce_to_base

__version__ = "0.1.0"

__all__ = [
    "BipartiteContext",
    "Drawing",
    "DuplicationStep",
    "EnumerationBudget",
    "ExtensionScript",
    "InvalidDrawing",
    "Surface",
    "attachable",
    "bipartite_euler_bound",
    "canonical_form",
    "crn",
    "crn_pair",
    "crossing_number",
    "delete_vertex",
    "dipole_min_crossings",
    "duplicate",
    "embeds_in",
    "enumerate_good_drawings",
    "genus_search",
    "kmn_demigenus",
    "kmn_genus",
    "qbsp_report",
    "realized_surface",
    "rebuild_and_compare",
    "reduce_to_base",
    "run_script",
    "trace_faces",
    "validate_good",
    "zarankiewicz_drawing",
    "zarankiewicz_number",
    "zp",
]
