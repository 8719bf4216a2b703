"""Certificates that let single-round local verification recognize
geometric intersection graph classes.

The library has three layers: graphs and geometric models with strict
validators, per-class provers that turn a model into per-node
certificates, and per-node verifiers that accept or reject from one
neighborhood exchange. Recognition oracles, fuzzing campaigns, and a CLI
sit on top.
"""

from .errors import (
    DisconnectedGraphError,
    DuplicateEdgeError,
    EmptyBagSetError,
    FixtureProvenanceError,
    GeocertError,
    GraphFormatError,
    IdCollisionError,
    IdRangeError,
    InvalidWitnessError,
    LeaderChoiceError,
    LinePathError,
    MalformedModelError,
    NotChordalError,
    SearchTooLargeError,
    SeedExhaustedError,
    SelfLoopError,
    UnknownNodeError,
)
from .graphs import Graph, build_graph, parse_edge_list, write_edge_list
from .models import (
    ArcModel,
    CliqueTree,
    IntervalModel,
    PermutationModel,
    TrapezoidModel,
    parse_model,
    random_model,
    write_model,
)

__version__ = "0.1.0"

__all__ = [
    "ArcModel",
    "CliqueTree",
    "DisconnectedGraphError",
    "DuplicateEdgeError",
    "EmptyBagSetError",
    "FixtureProvenanceError",
    "GeocertError",
    "Graph",
    "GraphFormatError",
    "IdCollisionError",
    "IdRangeError",
    "IntervalModel",
    "InvalidWitnessError",
    "LeaderChoiceError",
    "LinePathError",
    "MalformedModelError",
    "NotChordalError",
    "PermutationModel",
    "SearchTooLargeError",
    "SeedExhaustedError",
    "SelfLoopError",
    "TrapezoidModel",
    "UnknownNodeError",
    "build_graph",
    "parse_edge_list",
    "parse_model",
    "random_model",
    "write_edge_list",
    "write_model",
    "__version__",
]
