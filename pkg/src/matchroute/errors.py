"""Exception types shared across the package."""


class RoutingError(Exception):
    """Base class for routing-specific failures."""


class ResourceLimitError(RoutingError):
    """A requested structure exceeds a configured size cap."""


class InvalidMatchingError(RoutingError):
    """A step is not a matching of the host graph."""

    def __init__(self, kind: str, detail: str):
        super().__init__(f"{kind}: {detail}")
        self.kind = kind
        self.detail = detail


class TraceInvalidError(RoutingError):
    """A trace step failed to replay."""

    def __init__(self, step_index: int, kind: str, detail: str):
        super().__init__(f"{kind} at step {step_index}: {detail}")
        self.step_index = step_index
        self.kind = kind


class NotRoutedError(RoutingError):
    """Replay finished but some pebble is not on its home vertex."""

    def __init__(self, vertex: int, pebble: int):
        super().__init__(f"not-routed: pebble {pebble} rests on vertex {vertex}")
        self.vertex = vertex
        self.pebble = pebble


class ParallelConflictError(RoutingError):
    """Two supposedly disjoint traces touch the same vertex."""

    def __init__(self, vertex: int):
        super().__init__(f"parallel-conflict: vertex {vertex} is used by more than one trace")
        self.vertex = vertex


class InternalInvariantError(RoutingError):
    """A condition that should be unreachable was violated; firing one is a bug."""
