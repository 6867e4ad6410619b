"""Exceptions raised by the zgkn solver.

Every error derives from ZgknError so callers (and the CLI) can tell numerical
failures apart from programming errors. Errors that describe invalid input
also derive from ValueError.
"""


class ZgknError(Exception):
    """Base class for all solver errors."""


# integration

class IntegrationError(ZgknError):
    """The adaptive integrator could not complete the requested interval."""


class StepSizeUnderflow(IntegrationError):
    def __init__(self, t, step, span):
        self.t = t
        self.step = step
        super().__init__(
            f"step size {step:.3e} at t={t:.17g} fell below {1e-14 * span:.3e}; "
            "the field is close to singular there"
        )


class NonFiniteField(IntegrationError):
    def __init__(self, t, y, value):
        self.t = t
        self.y = y
        super().__init__(f"field returned {value!r} at t={t:.17g}, y={y:.17g}")


class MaxStepsExceeded(IntegrationError):
    pass


# windings and domains

class NotNearTarget(ZgknError):
    """A lift change is not within tolerance of any legal winding target."""

    def __init__(self, delta_lift, nearest, distance):
        self.delta_lift = delta_lift
        self.nearest = nearest
        self.distance = distance
        super().__init__(
            f"lift change {delta_lift:.12g} is {distance:.3g} rad from the nearest "
            f"target (winding {nearest}); no connector"
        )


class DomainBoundary(ZgknError, ValueError):
    pass


class ZeroN(ZgknError, ValueError):
    pass


class WindingMismatch(ZgknError):
    pass


# root finding

class BracketNotFound(ZgknError):
    pass


class CutoffTooSmall(ZgknError):
    pass


class NonDecayingTail(ZgknError):
    pass


class ScanFailed(ZgknError):
    """Every point of the energy scan failed, so the scan says nothing about existence."""


class NoRootInGap(ZgknError):
    """No sign change of the coupled miss was found in the scanned energy range."""


class MultipleRoots(ZgknError):
    """More than one bound state was found for a single winding class.

    All converged states are kept on the exception.
    """

    def __init__(self, message, states):
        self.states = list(states)
        super().__init__(message)


# hydrogen oracle

class ExcludedState(ZgknError, ValueError):
    pass


class NonTerminating(ZgknError, ValueError):
    pass


# labels

class InvalidIndex(ZgknError, ValueError):
    pass


class InvalidLabel(ZgknError, ValueError):
    pass
