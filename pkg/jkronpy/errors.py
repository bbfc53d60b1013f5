"""
Exceptions raised by jkronpy. Input problems derive from :class:`ValueError`,
numerical breakdowns from :class:`ArithmeticError`; every one of them is also a
:class:`JKronError` so callers (and the CLI) can catch the whole family.
"""


class JKronError(Exception):
    pass


class InputError(JKronError, ValueError):
    pass


class NotSymmetric(InputError):
    pass


class ZeroVector(InputError):
    pass


class DimMismatch(InputError):
    pass


class MixedSymmetryClass(InputError):
    pass


class NotInvolutory(InputError):
    pass


class BadLength(InputError):
    pass


class NotCommuting(InputError):
    pass


class NotRational(InputError):
    pass


class UnknownFixture(InputError):
    pass


class BadRank(InputError):
    pass


class BadBandIndex(InputError):
    pass


class BadMoveIndex(InputError):
    pass


class PreconditionFail(InputError):
    pass


class BadConfig(InputError):
    pass


class NoConvergence(JKronError, ArithmeticError):
    pass


class MuOverflow(JKronError, ArithmeticError):
    pass


class LeadingBlockSingularOrNotPD(JKronError, ArithmeticError):
    pass


class NoEmbedding(JKronError):
    pass


class ConstructionFailed(JKronError):
    pass


class CertificateFails(JKronError):
    """
    :param str stage: The certification step that did not go through,
                      one of ``skew_rayleigh`` or ``pd_evidence``.
    """

    def __init__(self, message, stage):
        super().__init__(message)
        self.stage = stage
