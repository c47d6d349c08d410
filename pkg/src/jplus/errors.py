"""Exception hierarchy. Each class carries the short code the CLI reports."""


class JPlusError(Exception):
    code = "ERROR"


class ParseError(JPlusError, ValueError):
    code = "PARSE"


class CapExceeded(JPlusError):
    code = "CAP"


class GuardExceeded(JPlusError):
    code = "GUARD"


class CertificateError(JPlusError):
    code = "CERT"


class WitnessError(JPlusError):
    code = "WITNESS"


class OracleDisagreement(JPlusError):
    """Raised when two independent computations that must agree do not."""

    code = "ORACLE"
