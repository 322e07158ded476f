"""Exception hierarchy shared by all primpoints modules."""


class PrimpointsError(Exception):
    """Base class for all library errors."""


class InvalidInput(PrimpointsError):
    """Malformed or out-of-contract argument."""


class DivisionByZero(PrimpointsError):
    """Inversion of zero in a field."""


class LiftObstruction(PrimpointsError):
    """Hensel lifting attempted on non-coprime factors."""


class NotAField(PrimpointsError):
    """A reducible polynomial was offered as a field modulus."""


class UnsupportedModel(PrimpointsError):
    """Curve model outside the supported imaginary form y^2 = h(x), deg h odd."""


class SingularModel(PrimpointsError):
    """h(x) with repeated roots does not define a smooth curve."""


class DegreeUndefined(PrimpointsError):
    """Degree requested for a constant function."""


class Unsupported(PrimpointsError):
    """Input shape outside the implemented scope."""


class NotPrincipal(PrimpointsError):
    """No function realizes the requested divisor."""


class PreconditionFailed(PrimpointsError):
    """Operation precondition violated (e.g. multiplicity-one required)."""


class OutOfTheoremRange(PrimpointsError):
    """Requested degree d <= 2g, where the search contract is void."""


class DegeneratePresentation(PrimpointsError):
    """No primitive-element presentation found within the search bound."""


class SearchBudgetExhausted(PrimpointsError):
    """A bounded search ran out of budget before succeeding."""


class VerificationFailure(PrimpointsError):
    """A certificate failed its independent re-verification."""
