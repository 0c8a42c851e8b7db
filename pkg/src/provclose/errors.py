"""Exception hierarchy.

Everything raised on purpose by the package derives from ``ProvcloseError``.
The CLI maps ``ParseError`` to exit code 2 and every other subclass to 1.
"""


class ProvcloseError(Exception):
    pass


class ParseError(ProvcloseError, ValueError):
    def __init__(self, message, text=None, position=None):
        self.text = text
        self.position = position
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)


class RootOfIdentityError(ProvcloseError, ValueError):
    pass


class NotExtensionClosedError(ProvcloseError, ValueError):
    pass


class NoClosureFormulaError(ProvcloseError):
    pass


class UnsupportedCheckError(ProvcloseError):
    pass


class NotInKError(ProvcloseError, ValueError):
    pass


class CapExceededError(ProvcloseError):
    pass


class GroupLawError(ProvcloseError):
    pass
