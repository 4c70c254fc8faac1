"""
Settings - Lectura de settings.json (bloque env) y de archivos .env
"""

import json
import logging
import os
from pathlib import Path
from typing import Dict, Mapping, Optional

from dotenv import dotenv_values

from ..core.errors import InputFileError

logger = logging.getLogger(__name__)

SETTINGS_DIR = ".cogsem"
SETTINGS_FILE = "settings.json"

# Claves reconocidas también a nivel raíz del settings
KNOWN_KEYS = ("COGSEM_LOGIC", "COGSEM_MOST_THRESHOLD", "COGSEM_FORMAT")


def find_settings_path(explicit: Optional[str] = None, project_dir: Optional[str] = None) -> Optional[Path]:
    """``--settings`` explícito, luego ./.cogsem/settings.json, luego ~/.cogsem/settings.json"""
    if explicit:
        return Path(explicit).expanduser().resolve()
    project_settings = Path(project_dir or Path.cwd()) / SETTINGS_DIR / SETTINGS_FILE
    home_settings = Path.home() / SETTINGS_DIR / SETTINGS_FILE
    if project_settings.exists():
        return project_settings
    if home_settings.exists():
        return home_settings
    return None


def load_env_from_settings(settings_path: Optional[Path]) -> Dict[str, str]:
    """Variables desde settings.json.
    Soporta dos formatos:
    - {"env": {"COGSEM_LOGIC": "kleene"}}
    - {"COGSEM_LOGIC": "kleene"}
    """
    env_vars: Dict[str, str] = {}
    if settings_path is None:
        return env_vars
    if not settings_path.exists():
        raise InputFileError(str(settings_path), "settings no encontrado")
    try:
        data = json.loads(settings_path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as e:
        raise InputFileError(str(settings_path), e.msg, e.lineno, e.colno) from e
    if not isinstance(data, dict):
        raise InputFileError(str(settings_path), "se esperaba un objeto JSON")
    # Preferir bloque 'env'
    candidate = data.get("env")
    if isinstance(candidate, dict):
        for k, v in candidate.items():
            if isinstance(v, (str, int, float, bool)):
                env_vars[k] = str(v)
    for k in KNOWN_KEYS:
        if k in data and k not in env_vars and isinstance(data[k], (str, int, float, bool)):
            env_vars[k] = str(data[k])
    logger.debug("📁 Settings cargados desde %s: %s", settings_path, sorted(env_vars))
    return env_vars


def load_dotenv_values(dotenv_path: Optional[str] = None) -> Dict[str, str]:
    """Valores de un archivo .env sin modificar ``os.environ``"""
    path = Path(dotenv_path) if dotenv_path else Path.cwd() / ".env"
    if not path.exists():
        return {}
    return {k: v for k, v in dotenv_values(path).items() if v is not None}


def environment_layer(dotenv_path: Optional[str] = None, environ: Optional[Mapping[str, str]] = None) -> Dict[str, str]:
    """Capa de entorno: .env debajo de las variables del proceso"""
    layer = load_dotenv_values(dotenv_path)
    source = os.environ if environ is None else environ
    layer.update({k: v for k, v in source.items() if k.startswith("COGSEM_")})
    return layer
