"""Exception hierarchy shared by all srp modules."""


class SRPError(Exception):
    """Base class for every error raised by srp."""


class HypergraphError(SRPError, ValueError):
    pass


class MorphismError(SRPError, ValueError):
    """A pair of maps is not a hypergraph monomorphism.

    The message names the first clause that failed.
    """


class SizeCapError(SRPError):
    """Exhaustive isomorphism search refused an instance above the size cap."""

    def __init__(self, size: int, cap: int):
        super().__init__(f"instance too large: |V|+|E| = {size} exceeds cap {cap}")
        self.size = size
        self.cap = cap


class FiltrationError(SRPError, ValueError):
    pass


class FeatureError(SRPError, ValueError):
    pass


class PersistenceAxiomError(SRPError, AssertionError):
    """A computed persistence function broke one of the three axioms.

    This is never expected for steady or ranging counts and indicates a bug.
    """


class IngestError(SRPError, ValueError):
    pass
