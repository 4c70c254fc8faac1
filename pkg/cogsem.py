#!/usr/bin/env python3
# -*- coding: utf-8 -*-
# IMPORTANTE: Ejecutar con: source .venv/bin/activate && python cogsem.py
"""
Cognitive Semantics - Punto de entrada del motor semántico
Uso: python cogsem.py {validate,interpret,eval} ...
"""

import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent))

from cognitive_semantics.cli import main


if __name__ == "__main__":
    sys.exit(main())
