"""Operaciones, léxico, contexto e interpretación recursiva"""

from .interp import Interpretation, Interpreter, interpret
from .lexicon import Context, Lexicon
from .operations import BUILTIN_OPERATIONS, OperationDef

__all__ = ["Interpretation", "Interpreter", "interpret", "Context", "Lexicon", "BUILTIN_OPERATIONS", "OperationDef"]
