"""Exception hierarchy shared by the library and the CLI."""


class DufloError(Exception):
    pass


class AntisymmetryViolation(DufloError):
    def __init__(self, i, j, k, residue):
        self.i, self.j, self.k, self.residue = i, j, k, residue
        super().__init__(f"c^{k}_{{{i}{j}}} + c^{k}_{{{j}{i}}} = {residue} != 0")


class JacobiViolation(DufloError):
    def __init__(self, i, j, k, l, residue):
        self.i, self.j, self.k, self.l, self.residue = i, j, k, l, residue
        super().__init__(f"Jacobi sum at (i,j,k,l)=({i},{j},{k},{l}) is {residue}")


class UnknownName(DufloError, KeyError):
    pass


class OddPower(DufloError, ValueError):
    pass


class DimensionMismatch(DufloError, ValueError):
    pass


class AlgebraMismatch(DufloError, ValueError):
    pass


class BadConstantTerm(DufloError, ValueError):
    pass


class BadLeadingCoefficient(DufloError, ValueError):
    pass


class TruncationTooLow(DufloError, ValueError):
    pass


class AnsatzInfeasible(DufloError):
    """Raised when no operator of the requested shape reproduces the action.

    ``witness`` is the first inconsistent equation found by the solver,
    ``attempts`` lists every (order, slack) pair that was tried.
    """

    def __init__(self, message, witness=None, attempts=()):
        super().__init__(message)
        self.witness = witness
        self.attempts = tuple(attempts)


class ParseError(DufloError):
    def __init__(self, message, line=None, column=None):
        loc = f"line {line}" if line is not None else ""
        if column is not None:
            loc += f", column {column}"
        super().__init__(f"{loc}: {message}" if loc else message)
        self.line, self.column = line, column


class ConfigError(DufloError):
    pass
