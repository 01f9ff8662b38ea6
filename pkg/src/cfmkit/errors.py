"""Exception hierarchy shared by all cfmkit modules."""


class CfmkitError(Exception):
    """Base class for all cfmkit errors."""


# -- field construction / arithmetic ----------------------------------------

class NotPrime(CfmkitError):
    def __init__(self, p):
        super().__init__(f"{p} is not prime")
        self.p = p


class DegreeZero(CfmkitError):
    pass


class CapExceeded(CfmkitError):
    pass


class DivisionByZero(CfmkitError):
    pass


class NotASubfield(CfmkitError):
    def __init__(self, k):
        super().__init__(f"degree {k} does not define a subfield here")
        self.k = k


class NotADivisor(CfmkitError):
    def __init__(self, m):
        super().__init__(f"{m} does not divide the unit-group order")
        self.m = m


class ZeroHasNoLog(CfmkitError):
    pass


class FieldMismatch(CfmkitError):
    pass


# -- exact linear algebra ----------------------------------------------------

class NotSquare(CfmkitError):
    pass


class Singular(CfmkitError):
    pass


# -- characters ----------------------------------------------------------------

class NotAUnit(CfmkitError):
    pass


class NotInSubgroup(CfmkitError):
    pass


# -- compressed matrices -------------------------------------------------------

class BadRepresentatives(CfmkitError):
    pass


class ParityError(CfmkitError):
    pass


# -- uncertainty ----------------------------------------------------------------

class NotSymmetric(CfmkitError):
    pass


class ZeroElement(CfmkitError):
    pass


class NvmNotEstablished(CfmkitError):
    pass


class ThresholdNotMet(CfmkitError):
    pass


class NotHClosed(CfmkitError):
    pass


class ZeroMembershipViolation(CfmkitError):
    pass


class RangeViolation(CfmkitError):
    pass
