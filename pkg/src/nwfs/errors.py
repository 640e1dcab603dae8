class NwfsError(Exception):
    """Base class for all errors raised by the engine."""


class DomainMismatch(NwfsError):
    pass


class BackendMismatch(NwfsError):
    pass


class NotParallel(NwfsError):
    pass


class NotComposable(NwfsError):
    pass


class NotCompatible(NwfsError):
    """A cocone does not commute with the diagram it should factor through."""


class NotCommuting(NwfsError):
    """A square (h, k): f -> g with g.h != k.f."""


class CapExceeded(NwfsError):
    def __init__(self, cardinality, cap):
        self.cardinality = cardinality
        self.cap = cap
        super().__init__(f"enumeration of size {cardinality} exceeds cap {cap}")


class MissingComult(NwfsError):
    pass


class MissingMult(NwfsError):
    pass


class NotConverged(NwfsError):
    pass


class StageMismatch(NwfsError):
    pass


class IncompleteData(NwfsError):
    pass


class NotIso(NwfsError):
    pass


class NotContractible(NwfsError):
    def __init__(self, law):
        self.law = law
        super().__init__(f"contractible pair identity fails: {law}")


class StructureError(NwfsError):
    """Supplied (co)algebra data violates its axioms."""

    def __init__(self, kind, failed):
        self.kind = kind
        self.failed = list(failed)
        super().__init__(f"{kind} axioms fail: {', '.join(self.failed)}")


class InternalLawError(NwfsError):
    """A law guaranteed by construction failed; indicates an engine bug."""
