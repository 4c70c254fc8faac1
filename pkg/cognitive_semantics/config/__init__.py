"""Configuración: settings, .env y carga de archivos de entrada"""

from .loaders import load_context, load_lexicon, load_model, load_trees
from .settings import find_settings_path, load_env_from_settings

__all__ = ["load_context", "load_lexicon", "load_model", "load_trees", "find_settings_path", "load_env_from_settings"]
