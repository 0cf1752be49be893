"""Exception types shared across the package.

The hierarchy is intentionally shallow: anything raised for bad input,
malformed files, or violated structural invariants derives from
ValidationError; numerical failures (diverging trajectories, a power
iteration that cannot meet its tolerance) get their own classes so
callers can map them to distinct exit codes.
"""


class PlantbenchError(Exception):
    """Base class for all package errors."""


class ValidationError(PlantbenchError):
    """Invalid argument, malformed file, or violated structural invariant."""


class UnsupportedDimensionError(ValidationError):
    """Requested size is outside the range a construction supports."""


class CapacityError(ValidationError):
    """Requested count exceeds what the construction or solver can hold."""


class DegenerateSpectrumError(ValidationError):
    """Planted energies span a zero range, so relative bands are undefined."""


class DivergenceError(PlantbenchError):
    """A trajectory left the trust region during integration."""

    def __init__(self, step: int, max_abs: float):
        self.step = step
        self.max_abs = max_abs
        super().__init__(
            f"trajectory diverged at step {step} (max |x| = {max_abs:.3e})"
        )


class PowerIterationError(PlantbenchError):
    """Power iteration failed to reach the requested tolerance."""

    def __init__(self, estimate: float, residual: float, iterations: int):
        self.estimate = estimate
        self.residual = residual
        self.iterations = iterations
        super().__init__(
            f"power iteration stalled after {iterations} iterations "
            f"(estimate {estimate:.12g}, residual {residual:.3e})"
        )
