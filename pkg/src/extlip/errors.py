class ExtlipError(Exception):
    """Base class for all errors raised by extlip."""


class StructuralError(ExtlipError, ValueError):
    """Malformed input: wrong shapes, mismatched spaces, bad indices."""


class MetricAxiomError(ExtlipError, ValueError):
    def __init__(self, violations):
        self.violations = list(violations)
        head = "; ".join(str(v) for v in self.violations[:3])
        more = "" if len(self.violations) <= 3 else f" (+{len(self.violations) - 3} more)"
        super().__init__(f"metric axioms violated: {head}{more}")


class DomainError(ExtlipError, ValueError):
    """Argument outside the domain of the operation (t <= 0, p < 1, x1 == x2)."""


class BasePointError(ExtlipError, ValueError):
    """A map does not send the base point to the base point."""


class CapacityError(ExtlipError, RuntimeError):
    """Vertex enumeration would exceed the configured cap."""


class ClosureError(ExtlipError, ValueError):
    def __init__(self, missing):
        self.missing = list(missing)
        super().__init__(
            f"radial retraction leaves the ball sample at points {self.missing}"
        )


class LoadError(ExtlipError, ValueError):
    def __init__(self, location, message):
        self.location = location
        super().__init__(f"{location}: {message}")
