"""Shared exception types with CLI exit codes attached."""


class CnfError(Exception):
    exit_code = 1


class ParseError(CnfError):
    """Malformed DIMACS input, tautological clause, bad literal."""
    exit_code = 2


class CapExceededError(CnfError):
    """A resource cap (variables, clauses, search nodes) was hit."""
    exit_code = 3


class IntegrityError(CnfError):
    """An internal cross-check failed; carries a witness description."""
    exit_code = 4

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness
