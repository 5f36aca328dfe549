"""Exception hierarchy.

Every error carries an ``exit_code`` used by the command line front end:
2 for failed checks, 3 for bad input, 4 when a search ran out of candidates.
"""


class QRError(Exception):
    exit_code = 3


class NonFiniteSystem(QRError):
    """Reflection closure exceeded its element bound."""


class NotDominant(QRError):
    pass


class DegeneratePolarization(QRError):
    pass


class BoxTooSmall(QRError):
    pass


class InconsistentGKM(QRError):
    pass


class EmptyP(QRError):
    pass


class ZeroNotInDelta(QRError):
    pass


class NotWeaklyRegular(QRError):
    pass


class NotToricModel(QRError):
    pass


class NotInRegion(QRError):
    pass


class UnknownExample(QRError):
    pass


class GammaSearchExhausted(QRError):
    exit_code = 4


class NotQuasiPolynomial(QRError):
    exit_code = 2

    def __init__(self, period_bound, degree_bound, message=None):
        self.period_bound = period_bound
        self.degree_bound = degree_bound
        super().__init__(
            message
            or f"no quasi-polynomial with period <= {period_bound} "
            f"and degree <= {degree_bound} validates"
        )


class CheckFailed(QRError):
    """A verification compared two independent computations and they disagreed."""

    exit_code = 2

    def __init__(self, certificate):
        self.certificate = certificate
        n = len(certificate.mismatches)
        super().__init__(f"{n} mismatch(es); first: {certificate.mismatches[:3]}")
