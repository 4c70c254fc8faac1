"""
Cognitive Semantics - Modelos cognitivos, interpretación compositiva y verdad de cuatro valores
"""

from .core.errors import CognitiveSemanticsError
from .core.model import CognitiveModel, validate_model
from .semantics.interp import Interpreter, interpret
from .semantics.lexicon import Context, Lexicon
from .truth.evaluator import Evaluator
from .truth.values import Logic, TruthValue
from .core.run_config import RunConfig, setup_engine

__version__ = "1.0.0"
__all__ = [
    "CognitiveSemanticsError",
    "CognitiveModel",
    "validate_model",
    "Interpreter",
    "interpret",
    "Context",
    "Lexicon",
    "Evaluator",
    "Logic",
    "TruthValue",
    "RunConfig",
    "setup_engine",
]
