import sys
from logging import (
    Logger,
    StreamHandler,
    WARNING,
    DEBUG,
)


class CheinError(Exception):
    """
    Base class for exceptions in this module.
    """


class GroupError(CheinError):
    """
    A group descriptor, Cayley file or Cayley table is not a valid group.
    """


class InadmissibleError(CheinError):
    """
    A star map or a g0 violates the admissibility conditions.
    """


class TermError(CheinError, ValueError):
    """
    Raised when an identity, a word, a theta token or a condition fails to parse.
    """


class NotStrictlyBalanced(CheinError):
    """
    The symbolic evaluation is only sound for strictly balanced identities.
    """


class GoldenError(CheinError):
    """
    Golden tables are missing, empty or malformed.
    """


log = Logger("chein", level=DEBUG)
_stderr = StreamHandler(sys.stderr)
_stderr.setLevel(WARNING)
log.addHandler(_stderr)
