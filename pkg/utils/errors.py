"""
Exception hierarchy shared by the schemes, the store and the CLI.
"""


class SpchsError(Exception):
    """Base class for every toolkit error."""


class MalformedElementError(SpchsError, ValueError):
    """A byte-string does not decode to a valid group element or scalar."""


class UnsupportedSecurityLevelError(SpchsError, ValueError):
    pass


class MalformedStoreError(SpchsError):
    """The ciphertext store cannot be searched safely (cycle, bad record, wrong backend)."""


class TagCollisionError(MalformedStoreError):
    """Two records share the same tag."""


class StoreFormatError(SpchsError):
    """A store file is not a valid SPCHSDB1 file."""


class KeyFileError(SpchsError):
    """A key file has the wrong magic, role, backend or length."""


class PriAuthenticationError(SpchsError):
    """A sealed structure private part failed authentication."""


class InvalidEncapsulationError(SpchsError, ValueError):
    pass


class InvalidCiphertextError(SpchsError, ValueError):
    pass


class BackendConformanceError(SpchsError):
    """An IBKEM/IBE pair violates one of the laws the generic construction needs."""

    def __init__(self, report):
        failed = ", ".join(law.name for law in report.failures)
        super().__init__(f"backend conformance failed: {failed}")
        self.report = report


class BenchConfigError(SpchsError, ValueError):
    pass


class BenchOutputError(SpchsError):
    pass
