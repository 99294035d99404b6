import logging

import six

log = logging.getLogger(__name__)


# --- Base exception ---
class CellPosetException(Exception):
    """Base exception for all cellposet raised exceptions"""

    #: process exit status used by the command line when this exception ends a run
    exit_code = 3


class DimensionMismatch(CellPosetException):
    """Two objects that must share a shape or a variable count do not"""


# --- Serialization exceptions ---
@six.python_2_unicode_compatible
class ValidationError(CellPosetException):
    """Schema validation failed"""

    exit_code = 2

    def __init__(self, raw, schema_name, errors, *args, **kwargs):
        super(ValidationError, self).__init__(*args, **kwargs)
        self.errors = errors
        self.raw = raw
        self.schema_name = schema_name

    def __str__(self):
        log.debug("Validation failure for data: {0}".format(self.raw))
        return "Validation failed for schema {0}. Errors: {1}".format(
            self.schema_name, self.errors
        )


class InvalidConfig(CellPosetException):
    """A run configuration value is out of range"""

    exit_code = 2


# --- Linear algebra exceptions ---
class LinearAlgebraException(CellPosetException):
    """Base exception for exact linear algebra problems"""


class SingularMatrix(LinearAlgebraException):
    """The matrix is not invertible"""


class NotSL(LinearAlgebraException):
    """The matrix does not have determinant 1"""


class NotUnimodular(LinearAlgebraException):
    """The integer matrix does not have determinant +1 or -1"""


# --- Monomial exceptions ---
@six.python_2_unicode_compatible
class ParseError(CellPosetException):
    """The ideal text does not match the grammar"""

    exit_code = 2

    def __init__(self, message, offset, expected=None):
        super(ParseError, self).__init__(message, offset, expected)
        self.message = message
        self.offset = offset
        self.expected = expected

    def __str__(self):
        if self.expected:
            return "{0} at offset {1} (expected {2})".format(
                self.message, self.offset, self.expected
            )
        return "{0} at offset {1}".format(self.message, self.offset)


class UnknownVariable(ParseError):
    """A variable name is not in the declared variable list"""


# --- Complex exceptions ---
class ComplexException(CellPosetException):
    """Base exception for chain complex problems"""


class GradingViolation(ComplexException):
    """A nonzero incidence connects cells whose multidegrees do not dominate"""


class NotExact(ComplexException):
    """The complex has homology where a resolution must not"""


class NotMinimalResolution(ComplexException):
    """The complex is not an exact, minimal complex"""


class InvalidPoset(ComplexException):
    """A cover relation skips a rank or closes a cycle"""


@six.python_2_unicode_compatible
class SearchExhausted(ComplexException):
    """No minimal-support system was found within the enumeration bound"""

    exit_code = 6

    def __init__(self, degree, mdeg, bound):
        super(SearchExhausted, self).__init__(degree, mdeg, bound)
        self.degree = degree
        self.mdeg = mdeg
        self.bound = bound

    def __str__(self):
        return "No minimal-support basis in degree {0} at multidegree {1} within {2} candidates".format(
            self.degree, list(self.mdeg), self.bound
        )


# --- Pipeline exceptions ---
class PipelineException(CellPosetException):
    """Base exception for pipeline aborts"""


class SizeMismatch(PipelineException):
    """A basis change does not fit the cells it is applied to"""


class LowDegreeChange(PipelineException):
    """A basis change touches homological degrees 0, 1 or 2"""


class NotSupported(PipelineException):
    """The CW data does not support the resolution"""

    exit_code = 4

    def __init__(self, report, *args):
        super(NotSupported, self).__init__(report.reason, report.detail, *args)
        self.report = report


class NotRegular(PipelineException):
    """The CW data fails the regular 2-skeleton check"""

    exit_code = 5

    def __init__(self, failures, *args):
        super(NotRegular, self).__init__(failures, *args)
        self.failures = failures


class PosetMismatch(PipelineException):
    """The face poset of the transformed complex differs from the incidence poset"""

    exit_code = 7

    def __init__(self, differences, *args):
        super(PosetMismatch, self).__init__(differences, *args)
        self.differences = differences
