"""
Sense Registry - Registro de sesión de los sentidos producidos y sus denotaciones
"""

import threading
import uuid
from datetime import datetime
from typing import Any, Dict, List

from .model import normalize


class SenseRegistry:
    """Registro de solo-anexado: cada denotación con los sentidos que la implican"""

    def __init__(self, session_id: str = ""):
        self.session_id = session_id or f"cogsem-{uuid.uuid4().hex[:8]}"
        self._lock = threading.Lock()
        self._senses: Dict[Any, List[Any]] = {}
        self.audit_data = {
            "session_id": self.session_id,
            "created_at": datetime.now().isoformat(),
            "senses_registered": 0,
            "denotations": 0,
        }

    def register(self, denotation: Any, sense: Any) -> None:
        key = normalize(denotation)
        with self._lock:
            bucket = self._senses.setdefault(key, [])
            if sense in bucket:
                return
            bucket.append(sense)
            self.audit_data["senses_registered"] += 1
            self.audit_data["denotations"] = len(self._senses)

    def register_triples(self, triples) -> None:
        for t in triples:
            self.register(t.denotation, t.sense)

    def senses_for(self, denotation: Any) -> List[Any]:
        with self._lock:
            return list(self._senses.get(normalize(denotation), ()))

    def __len__(self) -> int:
        with self._lock:
            return self.audit_data["senses_registered"]

    def get_session_summary(self) -> Dict[str, Any]:
        with self._lock:
            return dict(self.audit_data)
