"""
Errores - Jerarquía de excepciones del motor semántico
"""

from typing import Iterable, Optional


class CognitiveSemanticsError(ValueError):
    """Error base del motor"""


class CrossTagComparisonError(CognitiveSemanticsError):
    """Comparación de orden entre valores de etiquetas distintas"""


class InvalidObservationError(CognitiveSemanticsError):
    """Una observación no cumple sus invariantes de construcción"""


class SegmentError(CognitiveSemanticsError):
    """Instante fuera del segmento o segmento mal formado"""


class IncompleteRegionMapError(CognitiveSemanticsError):
    """Falta la región de algún instante del segmento"""


class ConstancyError(CognitiveSemanticsError):
    """El procedimiento de representación no está definido sobre un miembro"""


class UnknownTokenError(CognitiveSemanticsError):
    """Token ausente del léxico"""


class EmptyDenotationSetError(CognitiveSemanticsError):
    pass


class DirectiveError(CognitiveSemanticsError):
    """Directiva de contexto que apunta a un candidato inexistente"""


class MixedHeadError(CognitiveSemanticsError):
    pass


class OperationUndefinedError(CognitiveSemanticsError):
    """La operación no está definida sobre el argumento"""


class UninterpretableNodeError(CognitiveSemanticsError):

    def __init__(self, node_id: str, message: Optional[str] = None):
        self.node_id = node_id
        super().__init__(message or f"Nodo no interpretable: {node_id}")


class QuoteError(CognitiveSemanticsError):
    """Cita directa sin cadena abstracta registrada"""


class AssignmentError(CognitiveSemanticsError):
    """Asignación de valores vacía, incompleta o fuera del modelo"""


class FreeVariableError(CognitiveSemanticsError):
    """El sentido tiene variables libres: es una fórmula, no una proposición"""


class NotAPropositionError(CognitiveSemanticsError):
    """El sentido no tiene una relación base sobre la que evaluar"""


class NonEffectiveInterpretationError(CognitiveSemanticsError):

    def __init__(self, ambiguous_nodes: Iterable[str]):
        self.ambiguous_nodes = tuple(ambiguous_nodes)
        super().__init__(
            "Interpretación no efectiva; nodos ambiguos: " + ", ".join(self.ambiguous_nodes)
        )


class ModalClauseError(CognitiveSemanticsError):
    """La cláusula de una conectiva modal no tiene significados"""


class MissingInterpretationHandleError(CognitiveSemanticsError):
    pass


class UnknownConnectiveError(CognitiveSemanticsError):
    pass


class InputFileError(CognitiveSemanticsError):
    """Error de lectura o de esquema en un archivo de entrada"""

    def __init__(self, path: str, message: str, line: Optional[int] = None, column: Optional[int] = None):
        self.path = path
        self.line = line
        self.column = column
        where = f"{path}"
        if line is not None:
            where += f":{line}"
            if column is not None:
                where += f":{column}"
        super().__init__(f"{where}: {message}")
