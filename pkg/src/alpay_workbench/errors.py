"""Exception hierarchy shared by every workbench module."""


class WorkbenchError(Exception):
    """Base class for all errors raised by alpay_workbench."""


class UnknownIdentifierError(WorkbenchError, ValueError):
    def __init__(self, kind, ident):
        super().__init__(f"unknown {kind} identifier: {ident!r}")
        self.kind = kind
        self.ident = ident


class IllFormedError(WorkbenchError, ValueError):
    """Structural malformation: missing table entries, unresolved ids, order mismatch."""

    def __init__(self, problems):
        if isinstance(problems, str):
            problems = [problems]
        self.problems = list(problems)
        super().__init__("; ".join(self.problems))


class OrderMismatchError(WorkbenchError, TypeError):
    pass


class PreconditionError(WorkbenchError):
    """An operation refused its input because a stated precondition does not hold."""

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class SpecError(WorkbenchError):
    """A spec document could not be loaded."""

    def __init__(self, message, source=None):
        self.source = source
        if source is not None:
            message = f"{source}: {message}"
        super().__init__(message)


class FormulaSyntaxError(WorkbenchError, ValueError):
    def __init__(self, message, text, pos):
        self.text = text
        self.pos = pos
        before = text[:pos]
        self.line = before.count("\n") + 1
        self.column = pos - (before.rfind("\n") + 1) + 1
        super().__init__(f"{message} at line {self.line}, column {self.column}")
