"""
Run Configuration - Configurador del motor semántico y arranque en una llamada
"""

import logging
import uuid
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Mapping, Optional

from ..config.loaders import load_context, load_lexicon, load_model, load_trees, product_truths
from ..config.settings import environment_layer, find_settings_path, load_env_from_settings
from ..semantics.interp import DepTree, Interpreter
from ..semantics.lexicon import Context, Lexicon
from ..truth.evaluator import Evaluator, InterpretationHandle
from ..truth.values import Logic, TruthValue
from .errors import InputFileError
from .model import CognitiveModel, ProductKind
from .sense_registry import SenseRegistry

logger = logging.getLogger(__name__)

OUTPUT_FORMATS = ("text", "structured")

DEFAULTS = {
    "COGSEM_LOGIC": "kleene",
    "COGSEM_MOST_THRESHOLD": "0.5",
    "COGSEM_FORMAT": "text",
}


@dataclass(frozen=True)
class RunConfig:
    model_path: Optional[str] = None
    lexicon_path: Optional[str] = None
    context_path: Optional[str] = None
    tree_path: Optional[str] = None
    logic: Logic = Logic.KLEENE
    most_threshold: float = 0.5
    output_format: str = "text"
    verbose: bool = False
    settings_path: Optional[str] = None

    def __post_init__(self):
        if not 0 < self.most_threshold < 1:
            raise ValueError(f"El umbral de 'most' debe estar en (0,1): {self.most_threshold}")
        if self.output_format not in OUTPUT_FORMATS:
            raise ValueError(f"Formato de salida desconocido: {self.output_format}")


def _parse_threshold(raw: Any, source: str) -> float:
    try:
        return float(raw)
    except (TypeError, ValueError):
        raise ValueError(f"Umbral de 'most' inválido en {source}: {raw!r}") from None


def resolve_run_config(
    cli: Optional[Mapping[str, Any]] = None,
    settings_path: Optional[str] = None,
    project_dir: Optional[str] = None,
    environ: Optional[Mapping[str, str]] = None,
    dotenv_path: Optional[str] = None,
) -> RunConfig:
    """Flag de CLI > variable de entorno (.env incluido) > settings > valores por defecto"""
    cli = {k: v for k, v in (cli or {}).items() if v is not None}
    path = find_settings_path(settings_path, project_dir)
    layers: Dict[str, str] = dict(DEFAULTS)
    layers.update({k: v for k, v in load_env_from_settings(path).items() if k in DEFAULTS})
    layers.update({k: v for k, v in environment_layer(dotenv_path, environ).items() if k in DEFAULTS})

    logic = cli.get("logic", layers["COGSEM_LOGIC"])
    threshold = cli["most_threshold"] if "most_threshold" in cli else _parse_threshold(
        layers["COGSEM_MOST_THRESHOLD"], "COGSEM_MOST_THRESHOLD"
    )
    return RunConfig(
        model_path=cli.get("model_path"),
        lexicon_path=cli.get("lexicon_path"),
        context_path=cli.get("context_path"),
        tree_path=cli.get("tree_path"),
        logic=Logic.of(logic),
        most_threshold=float(threshold),
        output_format=cli.get("output_format", layers["COGSEM_FORMAT"]),
        verbose=bool(cli.get("verbose", False)),
        settings_path=str(path) if path else None,
    )


def product_truth_handle(model: CognitiveModel, table: Mapping[str, str]) -> Optional[InterpretationHandle]:
    """Handle de interpretación a partir de la tabla de productos del contexto"""
    if not table:
        return None
    values = {name: TruthValue(v) for name, v in table.items()}

    def handle(product: Any, kind: ProductKind) -> Optional[TruthValue]:
        name = model.name_of(product)
        return values.get(name) if name else None

    return handle


@dataclass
class EngineSetup:
    session_id: str
    config: RunConfig
    model: CognitiveModel
    lexicon: Optional[Lexicon]
    context: Context
    trees: List[DepTree]
    interpreter: Optional[Interpreter]
    evaluator: Evaluator
    registry: SenseRegistry
    session_info: Dict[str, Any] = field(default_factory=dict)


class EngineConfig:
    """Configurador completo del motor: carga entradas y crea intérprete y evaluador"""

    def __init__(self, config: RunConfig, session_id: Optional[str] = None):
        self.config = config
        stem = Path(config.model_path).stem if config.model_path else "cogsem"
        self.session_id = session_id or f"{stem.lower().replace(' ', '-')}-{uuid.uuid4().hex[:8]}"

    def load_model(self) -> CognitiveModel:
        if not self.config.model_path:
            raise InputFileError("<cli>", "falta el archivo de modelo")
        return load_model(self.config.model_path)

    def load_lexicon(self, model: CognitiveModel) -> Optional[Lexicon]:
        if not self.config.lexicon_path:
            return None
        return load_lexicon(self.config.lexicon_path, model)

    def load_context(self, model: CognitiveModel, lexicon: Optional[Lexicon]) -> Context:
        if not self.config.context_path:
            return Context(operations=dict(lexicon.operations)) if lexicon else Context()
        return load_context(self.config.context_path, model, lexicon)

    def load_trees(self) -> List[DepTree]:
        if not self.config.tree_path:
            return []
        return load_trees(self.config.tree_path)

    def create_evaluator(self, model: CognitiveModel, context: Context, registry: SenseRegistry) -> Evaluator:
        table = product_truths(self.config.context_path) if self.config.context_path else {}
        return Evaluator(
            model,
            context,
            logic=self.config.logic,
            most_threshold=self.config.most_threshold,
            registry=registry,
            interp_handle=product_truth_handle(model, table),
        )

    def get_session_info(self, model: CognitiveModel, lexicon: Optional[Lexicon], trees: List[DepTree]) -> Dict[str, Any]:
        return {
            "session_id": self.session_id,
            "logic": self.config.logic.value,
            "most_threshold": self.config.most_threshold,
            "output_format": self.config.output_format,
            "settings_path": self.config.settings_path,
            "observations": len(model.observations),
            "elements": len(model.elements),
            "lexicon_entries": len(lexicon) if lexicon else 0,
            "trees": len(trees),
        }


def setup_engine(config: RunConfig, session_id: Optional[str] = None) -> EngineSetup:
    """
    Setup completo del motor

    Args:
        config: Configuración resuelta
        session_id: Id de sesión (opcional)

    Returns:
        Bundle con modelo, léxico, contexto, árboles, intérprete y evaluador
    """
    engine = EngineConfig(config, session_id)
    logger.info("🚀 Inicializando motor semántico: %s", engine.session_id)

    model = engine.load_model()
    lexicon = engine.load_lexicon(model)
    context = engine.load_context(model, lexicon)
    trees = engine.load_trees()
    registry = SenseRegistry(engine.session_id)
    interpreter = Interpreter(model, lexicon, context) if lexicon is not None else None
    evaluator = engine.create_evaluator(model, context, registry)
    info = engine.get_session_info(model, lexicon, trees)

    logger.info("✅ Motor listo: %s", ", ".join(f"{k}={v}" for k, v in sorted(info.items()) if v is not None))
    return EngineSetup(
        session_id=engine.session_id,
        config=config,
        model=model,
        lexicon=lexicon,
        context=context,
        trees=trees,
        interpreter=interpreter,
        evaluator=evaluator,
        registry=registry,
        session_info=info,
    )
