"""Exception hierarchy shared by every module."""


class SetverseError(Exception):
    """Base class for all errors raised by this package."""


class GuardExceeded(SetverseError):
    """A configured resource ceiling would be exceeded."""

    def __init__(self, what: str, needed, limit):
        super().__init__(f"{what}: needs {needed}, guard is {limit}")
        self.what = what
        self.needed = needed
        self.limit = limit


class LiteralSyntaxError(SetverseError):
    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} at offset {offset}")
        self.offset = offset


class FormulaSyntaxError(SetverseError):
    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} at offset {offset}")
        self.offset = offset


class UnboundVariableError(SetverseError):
    pass


class UnknownConstantError(SetverseError):
    pass


class ArityError(SetverseError):
    pass


class UnknownAxiomError(SetverseError):
    pass


class ModelFileError(SetverseError):
    def __init__(self, message: str, line: int | None = None):
        where = f" (line {line})" if line is not None else ""
        super().__init__(message + where)
        self.line = line


class MalformedCategoryData(SetverseError):
    pass
