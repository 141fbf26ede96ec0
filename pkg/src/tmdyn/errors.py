"""Exception hierarchy shared by every stage of the pipeline."""


class TmdynError(Exception):
    """Base class for all errors raised by this package."""


class MachineError(TmdynError, ValueError):
    """A transition table or machine declaration violates its contract."""


class UnknownState(MachineError):
    pass


class MalformedTape(TmdynError, ValueError):
    pass


class WindowTooSmall(TmdynError, ValueError):
    pass


class NotReversible(TmdynError, ValueError):
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class InitialReachable(TmdynError, ValueError):
    pass


class LoopingMachine(TmdynError, ValueError):
    """Raised when a halt-loop extended machine is handed to ``run``."""


class AlphabetMismatch(TmdynError, ValueError):
    pass


class NotInImage(TmdynError, ValueError):
    """A sequence or point does not encode any configuration."""


class NonBinaryAlphabet(TmdynError, ValueError):
    pass


class NoBlockMatches(TmdynError, LookupError):
    pass


class TypeMismatch(TmdynError, TypeError):
    pass


class FormatError(TmdynError, ValueError):
    """Unparseable artifact file."""
