"""Exception hierarchy.

Every domain error raised by the package derives from HFError and carries a
stable ``name`` used in CLI output, so callers can match on error kinds
without string-parsing messages.
"""


class HFError(Exception):
    """Base class for all domain errors."""

    name = "HFError"

    def __init__(self, message="", payload=None):
        super().__init__(message)
        self.payload = payload


def _make(name, base=HFError):
    return type(name, (base,), {"name": name})


# surface / diagram layer
DanglingReference = _make("DanglingReference")
EulerMismatch = _make("EulerMismatch")
FamilyOverlap = _make("FamilyOverlap")
IndependenceFailure = _make("IndependenceFailure")
NonPrimitiveSlope = _make("NonPrimitiveSlope")
CoincidentCurves = _make("CoincidentCurves")
MissingFamily = _make("MissingFamily")
ArityMismatch = _make("ArityMismatch")
InvalidDiagram = _make("InvalidDiagram")

# chain layer
NoClass = _make("NoClass")
NotCommensurable = _make("NotCommensurable")
CornerMismatch = _make("CornerMismatch")

# spin-c / grading layer
NonGenericSpider = _make("NonGenericSpider")
MalformedCorners = _make("MalformedCorners")
DifferentClass = _make("DifferentClass")
NonCanonicalBase = _make("NonCanonicalBase")
NonTorsionRestriction = _make("NonTorsionRestriction")

# floer engine
NotRigid = _make("NotRigid")
NotAdmissible = _make("NotAdmissible")
NotStandard = _make("NotStandard")
ExactnessFailure = _make("ExactnessFailure")

# cobordism arithmetic
NonTorsionBoundary = _make("NonTorsionBoundary")
UnsupportedBoundary = _make("UnsupportedBoundary")
IncompatibleRestrictions = _make("IncompatibleRestrictions")
DomainError = _make("DomainError")

# cli
ParseError = _make("ParseError")
