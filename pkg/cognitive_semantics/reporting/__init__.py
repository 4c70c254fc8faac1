"""Renderizado de trazas"""

from .trace import render_batch, render_interpretation, render_validation, render_verdict

__all__ = ["render_batch", "render_interpretation", "render_validation", "render_verdict"]
