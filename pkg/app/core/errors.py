"""
Jerarquía de excepciones de ITRFlow
"""
from typing import Optional


class ItrError(Exception):
    """Error base de la aplicación"""


class ParseError(ItrError, ValueError):
    """Entrada sintácticamente inválida"""

    def __init__(self, message: str, line: Optional[int] = None):
        self.line = line
        if line is not None:
            message = f"línea {line}: {message}"
        super().__init__(message)


class FormatError(ItrError, ValueError):
    """Contenedor o flujo de bits corrupto"""


class BadMagicError(FormatError):
    pass


class BadVersionError(FormatError):
    pass


class TruncatedStreamError(FormatError):
    pass


class SectionLengthError(FormatError):
    pass


class CorruptionError(FormatError):
    pass


class GrammarError(ItrError):
    """Gramática inconsistente"""


class UnknownNonterminalError(GrammarError, KeyError):
    pass


class RankMismatchError(GrammarError, ValueError):
    pass


class ConflictingLabelsError(ItrError, ValueError):
    """Un nodo tiene dos etiquetas distintas"""


class EmptyCountsError(ItrError, ValueError):
    pass


class SizeLimitError(ItrError, ValueError):
    pass


class NotMonotoneError(ItrError, ValueError):
    pass


class OutOfBoundsError(ItrError, IndexError):
    pass


class ModeError(ItrError):
    """Operación no disponible en el modo del contenedor"""


class DanglingIdError(ItrError, KeyError):
    pass


class MalformedPatternError(ItrError, ValueError):
    pass
