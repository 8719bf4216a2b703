"""Exception types shared across the package."""


class GeocertError(Exception):
    """Base class for every error raised by this package."""


class GraphFormatError(GeocertError):
    """An edge-list or model file does not match the documented grammar."""


class SelfLoopError(GeocertError):
    """An edge connects a node to itself."""


class DuplicateEdgeError(GeocertError):
    """The same undirected edge appears twice."""


class UnknownNodeError(GeocertError):
    """An edge references an id that is not a node of the graph."""


class IdCollisionError(GeocertError):
    """Two nodes share the same id."""


class IdRangeError(GeocertError):
    """A node id falls outside the allowed id space."""


class DisconnectedGraphError(GeocertError):
    """The graph is not connected; every scheme here assumes connectivity."""


class MalformedModelError(GeocertError):
    """A geometric model violates its structural invariants."""


class EmptyBagSetError(GeocertError):
    """A trim partition class came out empty, so the input was not a clique tree."""


class NotChordalError(GeocertError):
    """A clique-tree construction was attempted on a non-chordal graph."""


class LeaderChoiceError(GeocertError):
    """No valid leader assignment exists for the given rooted clique tree."""


class SearchTooLargeError(GeocertError):
    """A brute-force search was invoked above its size cap."""


class SeedExhaustedError(GeocertError):
    """A rejection-sampling generator ran out of attempts."""


class InvalidWitnessError(GeocertError):
    """A prover refused to emit certificates because its witness fails validation."""


class LinePathError(GeocertError):
    """No graph path connects the owners of the extreme coordinates of a line."""


class FixtureProvenanceError(GeocertError):
    """A fixture verdict was registered without a provenance note."""


class CampaignConfigError(GeocertError):
    """A campaign configuration violates its invariants."""
