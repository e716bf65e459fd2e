"""Exception hierarchy shared across the workbench.

Every error carries the CLI exit code of its category: 2 for bad input,
3 for exceeded budgets/bounds, 4 for internal invariant violations.
"""


class PilabError(Exception):
    exit_code = 4


class InputError(PilabError):
    exit_code = 2


class BudgetError(PilabError):
    exit_code = 3


# -- input errors -----------------------------------------------------------

class DimensionMismatch(InputError):
    pass


class SizeMismatch(InputError):
    pass


class InvalidParams(InputError):
    pass


class NotAssociative(InputError):
    pass


class NotSplit(InputError):
    pass


class NotInvariant(InputError):
    pass


class NotMultilinearInLayer(InputError):
    pass


class UnitRequired(InputError):
    pass


class NotPointed(InputError):
    pass


class DegenerateCone(InputError):
    pass


class InsufficientData(InputError):
    pass


class ParseError(InputError):
    pass


# -- budget errors ----------------------------------------------------------

class Overflow(BudgetError):
    pass


class TooLarge(BudgetError):
    pass


class BudgetExceeded(BudgetError):
    pass


# -- internal errors --------------------------------------------------------

class ValidationFailed(PilabError):
    pass
