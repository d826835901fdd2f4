"""Exception hierarchy.

Every engine error carries an ``exit_code`` used by the command line:
1 for data errors, 2 for failed certificates.
"""


class EquivLError(Exception):
    exit_code = 1


class DataError(EquivLError):
    exit_code = 1


class CertificateError(EquivLError):
    exit_code = 2


class InvalidSeries(DataError):
    pass


class RingMismatch(DataError):
    pass


class FailedAxiomCheck(DataError):
    def __init__(self, message, triple=None):
        super().__init__(message)
        self.triple = triple


class MalformedDocument(DataError):
    pass


class NotInvertible(DataError):
    pass


class UnsupportedCap(DataError):
    pass


class UnsupportedDuality(DataError):
    pass


class OddCodimensionUnsupported(DataError):
    pass


class OrientationRequired(DataError):
    pass


class MissingTangent(DataError):
    pass


class InvalidGroupData(DataError):
    pass


class CatalogueDepth(DataError):
    pass


class CatalogueError(DataError):
    pass


class UnresolvableStage(DataError):
    pass


class MissingVerticalBundle(DataError):
    pass


class UncataloguedPair(DataError):
    pass


class CompatibilityFailure(CertificateError):
    def __init__(self, message, k=None, degree=None):
        super().__init__(message)
        self.k = k
        self.degree = degree


class DegreeBoundViolation(CertificateError):
    def __init__(self, message, degree=None):
        super().__init__(message)
        self.degree = degree


class RouteDisagreement(CertificateError):
    pass
