"""Exception types shared across the package."""


class DimensionMismatch(ValueError):
    """Point or coefficient shape does not match the function's domain."""


class MalformedPath(ValueError):
    """Path knots or times violate the path invariants."""


class NotADiffeomorphism(ValueError):
    """Circle map x + f(x) fails the orientation condition 1 + f' > 0."""


class EquivalenceViolation(RuntimeError):
    """Two formulations that must agree produced different verdicts."""


class CrossCheckMismatch(RuntimeError):
    """Independent verdicts disagree beyond tolerance (resolution diagnosis)."""


class ViolationReport(RuntimeError):
    """An inequality chain that must hold was violated (implementation bug)."""


class SpecParseError(ValueError):
    """A JSON document does not match the expected schema."""
