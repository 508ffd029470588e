"""Exception types shared by all orbitkit modules."""


class OrbitkitError(Exception):
    pass


class ParseError(OrbitkitError):
    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class UnknownSymbol(OrbitkitError):
    """A letter or state id that the automaton does not declare."""


class UnsupportedOperation(OrbitkitError):
    """Whole-automaton analysis requested on an oracle-backed automaton."""


class AlphabetMismatch(OrbitkitError):
    pass


class InvertibilityError(OrbitkitError):
    def __init__(self, witness):
        self.witness = witness
        (q, a, b, p), (q2, a2, b2, p2) = witness
        super().__init__(
            f"not invertible: {q} --{a}/{b}--> {p} and {q2} --{a2}/{b2}--> {p2} "
            f"share state and output letter")


class PreconditionError(OrbitkitError):
    pass


class BudgetExceeded(OrbitkitError):
    pass


class InvariantViolation(OrbitkitError):
    """An internal cross-check failed; this indicates a bug, never a verdict."""
