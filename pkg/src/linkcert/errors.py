"""Exception hierarchy.

Input errors (bad words, unsupported surfaces, malformed matrices) map to CLI
exit code 2; computation failures (failed certificates, inconsistent models)
map to exit code 1.
"""


class LinkcertError(Exception):
    pass


class InputError(LinkcertError, ValueError):
    pass


class InvalidWordError(InputError):
    pass


class InvalidSurfaceError(InputError):
    pass


class UnsupportedSurfaceError(InputError):
    pass


class SameOrbitError(InputError):
    pass


class InvalidMatrixError(InputError):
    pass


class NotHyperbolicError(InputError):
    pass


class ParameterRangeError(InputError):
    pass


class ComputationError(LinkcertError):
    pass


class CalibrationError(ComputationError):
    pass


class ModelInconsistencyError(ComputationError):
    pass


class AmbiguityError(ComputationError):
    def __init__(self, message, candidates=()):
        super().__init__(message)
        self.candidates = list(candidates)


class CertificationFailedError(ComputationError):
    pass
