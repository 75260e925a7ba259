"""Topological genus of regular languages.

Minimize DFAs, compute exact orientable graph genus from rotation systems,
evaluate closed-form genus bounds, search directed emulators, and run the
decision procedure for languages without short simple cycles.
"""

from genuslab.errors import FormatError, GenusLabError
from genuslab.dfa import Dfa, accepts, complete, equivalent, minimize, trim
from genuslab.families import (
    exponential_cascade,
    generate,
    shuffle,
    two_letter_hierarchy,
    zmod,
    zmod_product,
)
from genuslab.graphs import (
    CycleWitness,
    Edge,
    Multigraph,
    SimpleDigraph,
    digraph_multigraph,
    girth,
    has_no_simple_cycle_up_to,
    simplify,
    underlying_multigraph,
)
from genuslab.embedding import (
    EmbeddingWitness,
    GenusInterval,
    RotationSystem,
    SearchBudget,
    face_census_genus,
    genus_exact,
    planar,
    trace_faces,
)
from genuslab.bounds import (
    complete_graph_genus,
    genus_lower_bound,
    genus_upper_bound,
    hierarchy_genus,
    rho,
    size_set_E,
)
from genuslab.emulator import (
    EmulatorMap,
    EmulatorSearchResult,
    fibered_product,
    girth_preserved,
    lift_cycle,
    lift_to_automaton,
    search_min_genus_emulator,
    verify_emulator,
)
from genuslab.decide import (
    DecisionReport,
    class_membership,
    decide_genus,
    finiteness_size_cap,
    two_letter_nonplanar_certificate,
)

__version__ = "0.1.0"

__all__ = [
    "Dfa",
    "accepts",
    "complete",
    "equivalent",
    "minimize",
    "trim",
    "generate",
    "zmod",
    "zmod_product",
    "shuffle",
    "two_letter_hierarchy",
    "exponential_cascade",
    "Edge",
    "Multigraph",
    "SimpleDigraph",
    "CycleWitness",
    "underlying_multigraph",
    "digraph_multigraph",
    "simplify",
    "girth",
    "has_no_simple_cycle_up_to",
    "RotationSystem",
    "EmbeddingWitness",
    "GenusInterval",
    "SearchBudget",
    "trace_faces",
    "genus_exact",
    "planar",
    "face_census_genus",
    "rho",
    "genus_lower_bound",
    "genus_upper_bound",
    "hierarchy_genus",
    "complete_graph_genus",
    "size_set_E",
    "EmulatorMap",
    "EmulatorSearchResult",
    "verify_emulator",
    "fibered_product",
    "lift_cycle",
    "girth_preserved",
    "search_min_genus_emulator",
    "lift_to_automaton",
    "DecisionReport",
    "class_membership",
    "decide_genus",
    "two_letter_nonplanar_certificate",
    "finiteness_size_cap",
    "GenusLabError",
    "FormatError",
]
