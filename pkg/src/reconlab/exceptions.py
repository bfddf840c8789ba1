"""Exception hierarchy for reconlab."""


class ReconError(Exception):
    """Base class for all reconlab errors."""


class ShapeError(ReconError, ValueError):
    """Array or block dimensions do not match what an operation expects."""


class InvalidSystemError(ReconError, ValueError):
    """A family of blocks fails the reconstruction-system invariants."""


class NotHermitianError(ReconError, ValueError):
    pass


class GuardError(ReconError, ValueError):
    """A combinatorial computation exceeds the desk-scale guard."""


class NotProjectionError(ReconError, ValueError):
    """Input expected to be an orthogonal projection is not one."""
