"""
Cognitive Semantics CLI - validate / interpret / eval sobre archivos JSON
Uso: python cogsem.py eval -m modelo.json -l lexico.json -c contexto.json -t arboles.json
"""

import argparse
import asyncio
import logging
import sys
from typing import Any, Dict, List, Optional, Sequence

from .config.loaders import load_model
from .core.errors import CognitiveSemanticsError, InputFileError
from .core.model import validate_model
from .core.run_config import EngineSetup, RunConfig, resolve_run_config, setup_engine
from .core.sense_registry import SenseRegistry
from .reporting.trace import render_batch, render_interpretation, render_validation
from .semantics.interp import DepTree, Interpretation, Interpreter, render_tree
from .truth.evaluator import Evaluator

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_VIOLATION = 1
EXIT_INPUT_ERROR = 2


class CognitiveSemanticsCLI:
    """CLI del motor: valida modelos, interpreta árboles y evalúa oraciones"""

    def __init__(self, config: RunConfig):
        self.config = config
        self.verbose = config.verbose
        self.setup: Optional[EngineSetup] = None

    def _progress(self, message: str) -> None:
        print(message, file=sys.stderr)

    def _emit(self, text: str) -> None:
        print(text)

    # ------------------------------------------------------------------
    # validate
    # ------------------------------------------------------------------

    def run_validate(self) -> int:
        model = load_model(self.config.model_path)
        report = validate_model(model)
        self._emit(render_validation(report, self.config.output_format))
        if not report.ok:
            self._progress("⚠️ El modelo tiene violaciones")
            return EXIT_VIOLATION
        self._progress("✅ Modelo válido")
        return EXIT_OK

    # ------------------------------------------------------------------
    # interpret
    # ------------------------------------------------------------------

    def _require_engine(self) -> EngineSetup:
        if self.setup is None:
            self.setup = setup_engine(self.config)
        if self.setup.interpreter is None:
            raise InputFileError("<cli>", "falta el archivo de léxico (-l)")
        if not self.setup.trees:
            raise InputFileError(str(self.config.tree_path or "<cli>"), "no hay árboles que procesar")
        return self.setup

    def run_interpret(self) -> int:
        setup = self._require_engine()
        code = EXIT_OK
        blocks = []
        for i, tree in enumerate(setup.trees):
            try:
                interp = Interpreter(setup.model, setup.lexicon, setup.context).interpret(tree)
            except InputFileError:
                raise
            except CognitiveSemanticsError as e:
                blocks.append(f"#{i} {render_tree(tree)}\n❌ {e}")
                code = EXIT_VIOLATION
                continue
            if not interp.is_effective:
                code = EXIT_VIOLATION
            blocks.append(render_interpretation(interp, setup.model, self.config.output_format))
        separator = "\n" if self.config.output_format == "structured" else "\n\n"
        self._emit(separator.join(blocks))
        return code

    # ------------------------------------------------------------------
    # eval
    # ------------------------------------------------------------------

    def _evaluate_one(self, index: int, tree: DepTree) -> Dict[str, Any]:
        """Interpreta y evalúa un árbol con intérprete y registro propios"""
        setup = self.setup
        item: Dict[str, Any] = {"index": index, "tree": render_tree(tree), "verdict": None, "interpretation": None}
        try:
            interp: Interpretation = Interpreter(setup.model, setup.lexicon, setup.context).interpret(tree)
            evaluator = Evaluator(
                setup.model,
                setup.context,
                logic=self.config.logic,
                most_threshold=self.config.most_threshold,
                registry=SenseRegistry(f"{setup.session_id}#{index}"),
                interp_handle=setup.evaluator.interp_handle,
            )
            item["verdict"] = evaluator.eval_sentence(interp)
            item["interpretation"] = interp
        except InputFileError:
            raise
        except CognitiveSemanticsError as e:
            item["error"] = str(e)
        return item

    async def evaluate_batch(self, trees: Sequence[DepTree]) -> List[Dict[str, Any]]:
        """Evalúa los árboles en paralelo; el resultado sigue el orden de entrada"""
        tasks = [asyncio.to_thread(self._evaluate_one, i, tree) for i, tree in enumerate(trees)]
        items = await asyncio.gather(*tasks)
        for item in items:
            if item["interpretation"] is not None:
                self.setup.registry.register_triples(item["interpretation"].all_triples())
        return list(items)

    def run_eval(self) -> int:
        setup = self._require_engine()
        self._progress(f"🚀 Evaluando {len(setup.trees)} oración(es) con lógica {self.config.logic.value}")
        items = asyncio.run(self.evaluate_batch(setup.trees))
        self._emit(render_batch(items, self.config.output_format))
        failed = [item["index"] for item in items if item.get("verdict") is None]
        summary = setup.registry.get_session_summary()
        self._progress(f"📊 Sentidos registrados: {summary['senses_registered']}")
        if failed:
            self._progress(f"❌ Sin veredicto: {', '.join(f'#{i}' for i in failed)}")
            return EXIT_VIOLATION
        return EXIT_OK

    def run(self, command: str) -> int:
        handlers = {
            "validate": self.run_validate,
            "interpret": self.run_interpret,
            "eval": self.run_eval,
        }
        return handlers[command]()


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cogsem",
        description="Cognitive Semantics CLI - Modelos cognitivos, interpretación y valores de verdad",
        epilog="Ejemplo: python cogsem.py eval -m fixtures/tom_ran_model.json -l fixtures/tom_ran_lexicon.json "
        "-c fixtures/tom_ran_context.json -t fixtures/tom_ran_trees.json",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", dest="output_format", choices=["text", "structured"], help="Formato de salida (default: text)")
    common.add_argument("--settings", dest="settings_path", help="Ruta de settings.json. Default: ./.cogsem/settings.json o ~/.cogsem/settings.json")
    common.add_argument("--verbose", action="store_true", help="Habilita logs detallados en stderr")

    inputs = argparse.ArgumentParser(add_help=False)
    inputs.add_argument("-m", "--model", dest="model_path", required=True, help="Modelo cognitivo (JSON)")
    inputs.add_argument("-l", "--lexicon", dest="lexicon_path", required=True, help="Léxico (JSON)")
    inputs.add_argument("-c", "--context", dest="context_path", help="Contexto (JSON)")
    inputs.add_argument("-t", "--trees", dest="tree_path", required=True, help="Árbol o lista de árboles (JSON)")

    sub = parser.add_subparsers(dest="command", required=True)
    validate = sub.add_parser("validate", parents=[common], help="Valida consistencia y condiciones de objeto")
    validate.add_argument("model_path", help="Modelo cognitivo (JSON)")
    sub.add_parser("interpret", parents=[common, inputs], help="Interpreta árboles en ternas de significado")
    evaluate = sub.add_parser("eval", parents=[common, inputs], help="Evalúa la verdad de las oraciones")
    evaluate.add_argument("--logic", choices=["kleene", "lukasiewicz"], help="Tablas trivalentes (default: kleene)")
    evaluate.add_argument("--most", dest="most_threshold", type=float, help="Umbral de 'most' en (0,1) (default: 0.5)")
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Función principal del CLI"""
    parser = build_parser()
    args = parser.parse_args(argv)

    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )

    try:
        config = resolve_run_config(vars(args), settings_path=args.settings_path)
    except ValueError as e:
        print(f"❌ Configuración inválida: {e}", file=sys.stderr)
        return EXIT_INPUT_ERROR

    try:
        return CognitiveSemanticsCLI(config).run(args.command)
    except InputFileError as e:
        print(f"❌ {e}", file=sys.stderr)
        return EXIT_INPUT_ERROR
    except CognitiveSemanticsError as e:
        print(f"❌ {e}", file=sys.stderr)
        return EXIT_VIOLATION
    except KeyboardInterrupt:
        print("\n👋 Adiós!", file=sys.stderr)
        return EXIT_VIOLATION


if __name__ == "__main__":
    sys.exit(main())
