"""Exception hierarchy shared by the library and the command line front end."""


class QuinncalcError(Exception):
    """Base class for all errors raised by this package."""

    exit_code = 1


class SchemaError(QuinncalcError):
    """An input file does not parse against its JSON schema."""

    exit_code = 2


class AxiomError(QuinncalcError):
    """A table fails the axioms of the structure it claims to present."""

    exit_code = 3


class BoundaryError(QuinncalcError):
    """Boundary data of two pieces does not match up."""

    exit_code = 4


class ExactnessError(QuinncalcError):
    """An exact result was requested but only a float channel is available."""

    exit_code = 1
