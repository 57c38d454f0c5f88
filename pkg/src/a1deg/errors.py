"""Exception hierarchy.

Every error raised on purpose by the library derives from :class:`A1Error`
and carries the process exit code the command-line front end reports for
it.  Codes 2-9 are the documented primary codes; the remaining typed
errors use 10 and up.
"""


class A1Error(Exception):
    exit_code = 1


class ParseError(A1Error, ValueError):
    exit_code = 2


class UnsupportedField(A1Error):
    exit_code = 3


class NotZeroDimensional(A1Error):
    exit_code = 4


class UnsupportedFiberPoint(A1Error):
    exit_code = 5


class CharDividesDim(A1Error):
    exit_code = 6


class GradeMismatch(A1Error, ValueError):
    exit_code = 7


class RewriteLimitExceeded(A1Error):
    exit_code = 8


class InseparableResidueField(A1Error):
    exit_code = 9


class DivisionByZero(A1Error, ZeroDivisionError):
    exit_code = 10


class DescriptorMismatch(A1Error, TypeError):
    exit_code = 11


class ZeroInput(A1Error, ValueError):
    exit_code = 12


class NotAnExtension(A1Error):
    exit_code = 13


class DegenerateForm(A1Error):
    exit_code = 14


class UnsupportedN(A1Error, ValueError):
    exit_code = 15


class UnitIdeal(A1Error):
    exit_code = 16


class NotAZero(A1Error, ValueError):
    exit_code = 17


class ZeroJacobianClass(A1Error):
    exit_code = 18


class DegenerateResult(A1Error):
    """Internal consistency failure; seeing this indicates a bug."""

    exit_code = 19


class NotEtale(A1Error):
    exit_code = 20


class ZeroSymbol(A1Error, ValueError):
    exit_code = 21


class ZeroFunctional(A1Error, ValueError):
    exit_code = 22


class InvalidDescriptor(A1Error, ValueError):
    """A field descriptor that does not define a supported field, e.g. F2 or F9."""

    exit_code = 23


def all_error_types():
    """Every concrete error class, in exit-code order."""
    seen = []
    stack = list(A1Error.__subclasses__())
    while stack:
        cls = stack.pop()
        if cls not in seen:
            seen.append(cls)
            stack.extend(cls.__subclasses__())
    return sorted(seen, key=lambda c: c.exit_code)
