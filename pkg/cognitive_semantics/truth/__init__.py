"""Valores de verdad y evaluación de proposiciones"""

from .evaluator import Evaluator, PropositionKind, Verdict
from .values import Logic, TruthValue, apply_connective

__all__ = ["Evaluator", "PropositionKind", "Verdict", "Logic", "TruthValue", "apply_connective"]
