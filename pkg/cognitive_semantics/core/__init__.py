"""Núcleo: observaciones, modelo cognitivo, errores y registro de sentidos"""

from .errors import CognitiveSemanticsError, InputFileError
from .model import CognitiveModel, Process, Relation, process_at, validate_model
from .observation import CompositeObservation, PrimitiveObservation
from .sense_registry import SenseRegistry

__all__ = [
    "CognitiveSemanticsError",
    "InputFileError",
    "CognitiveModel",
    "Process",
    "Relation",
    "process_at",
    "validate_model",
    "CompositeObservation",
    "PrimitiveObservation",
    "SenseRegistry",
]
