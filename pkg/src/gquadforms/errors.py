"""Exception taxonomy shared across the toolkit (and mapped to CLI exit codes)."""


class InputError(ValueError):
    """Malformed or inconsistent user-supplied data (CLI exit 2)."""


class CertificateError(RuntimeError):
    """An internal exact verification failed; results must not be trusted (CLI exit 3)."""


class UnsupportedCenterError(RuntimeError):
    """Component analysis would need to factor over an unsupported extension."""


class ExtractionError(RuntimeError):
    """A structure extraction (quaternion presentation, Clifford pair) failed."""
