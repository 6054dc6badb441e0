"""Exception types shared across the package.

The CLI maps these onto its exit-code contract: InputError -> 2,
PremiseError -> 1, CapacityError -> 3.
"""


class InputError(ValueError):
    """Malformed or mismatched input: bad field, parse failure, shape error,
    or a rejected construction condition."""


class CapacityError(Exception):
    """Problem size exceeds the configured enumeration caps."""


class PremiseError(Exception):
    """A construction's premises do not hold for the given inputs.

    Carries the structured report object (when one exists) as .report.
    """

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report
