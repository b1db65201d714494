"""Exception and warning types shared across the package."""


class FormatError(ValueError):
    """An input document (space, multiset or point-set file) is malformed."""


class SpaceMismatchError(ValueError):
    """Operands belong to different ground spaces."""


class MetricAxiomError(ValueError):
    """A distance table fails identity, symmetry, positivity or the triangle inequality."""

    def __init__(self, violations):
        self.violations = list(violations)
        shown = "; ".join(str(v) for v in self.violations[:3])
        more = len(self.violations) - 3
        if more > 0:
            shown += f"; ... ({more} more)"
        super().__init__(f"distance table is not a metric: {shown}")


class EnumerationLimitError(ValueError):
    """A brute-force enumeration would exceed its configured bound."""


class ThetaThresholdWarning(UserWarning):
    """sup d / M is above the level at which the requested function is a metric."""
