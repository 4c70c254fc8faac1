"""
Trace - Renderizado de validaciones, interpretaciones y veredictos

Dos formatos: 'text' (legible) y 'structured' (JSON con claves ordenadas).
La salida es determinista: todo conjunto se emite ordenado.
"""

from __future__ import annotations

import json
from typing import Any, Callable, Dict, List, Optional, Sequence

from ..core.model import CognitiveModel, Process, Relation, ValidationReport, element_key
from ..core.observation import CompositeObservation, PrimitiveObservation, sort_observations
from ..semantics.interp import (
    Explanation,
    ExplanationLeaf,
    Interpretation,
    iter_nodes,
    render_explanation,
    render_sense,
    render_tree,
)
from ..semantics.operations import OperationDef, PartialOperation
from ..truth.evaluator import Verdict

VACANT = "∅"


def _pair(pair) -> List[str]:
    return [a.label() for a in pair]


def is_vacant(e: Any) -> bool:
    """Denotación vacía: compuesto sin miembros, relación sin filas o conjunto vacío"""
    if isinstance(e, CompositeObservation):
        return not e.members
    if isinstance(e, Relation):
        return not e.rows
    return isinstance(e, (frozenset, tuple)) and not e


def _display(model: CognitiveModel, e: Any) -> str:
    name = model.name_of(e)
    if name:
        return name
    if is_vacant(e):
        return VACANT
    if isinstance(e, PrimitiveObservation):
        return e.label()
    if isinstance(e, Process):
        return _display(model, e.members)
    if isinstance(e, CompositeObservation):
        return "⟨" + ", ".join(a.label() for a in sort_observations(e.members)) + "⟩"
    if isinstance(e, Relation):
        rows = e.sorted_rows()
        return "{" + "; ".join("(" + ", ".join(_display(model, x) for x in r) + ")" for r in rows) + "}"
    if isinstance(e, frozenset):
        return "{" + ", ".join(_display(model, x) for x in sorted(e, key=element_key)) + "}"
    if isinstance(e, tuple):
        return "(" + ", ".join(_display(model, x) for x in e) + ")"
    if isinstance(e, OperationDef):
        return e.label()
    if isinstance(e, PartialOperation):
        return f"{e.op.label()}({_display(model, e.first)})"
    return str(e)


# ---------------------------------------------------------------------------
# Estructuras serializables
# ---------------------------------------------------------------------------


def validation_data(report: ValidationReport) -> Dict[str, Any]:
    return {
        "ok": report.ok,
        "summary": report.summary,
        "observation_axiom": [_pair(p) for p in report.axiom],
        "weak_consistency": [_pair(p) for p in report.weak],
        "strong_consistency": [_pair(p) for p in report.strong],
        "self_observation": [
            {"relation": v.relation, "agent": v.agent, "observation": v.observation.label()}
            for v in report.self_observation
        ],
        "objects": {name: cond.as_dict() for name, cond in sorted(report.objects.items())},
    }


def interpretation_data(interp: Interpretation, model: CognitiveModel) -> Dict[str, Any]:
    nodes = []
    for node in iter_nodes(interp.tree):
        triples = interp.meanings.get(node.node_id, ())
        nodes.append({
            "node": node.node_id,
            "candidates": interp.candidates.get(node.node_id, len(triples)),
            "meanings": [
                {
                    "denotation": _display(model, t.denotation),
                    "sense": render_sense(t.sense),
                    "explanation": render_explanation(t.explanation),
                }
                for t in triples
            ],
        })
    return {
        "tree": render_tree(interp.tree),
        "effective": interp.is_effective,
        "vacant_root": any(is_vacant(t.denotation) for t in interp.meanings.get(interp.tree.node_id, ())),
        "ambiguous_nodes": interp.ambiguous_nodes(),
        "modal_clause_nodes": sorted(interp.modal_clause_nodes),
        "nodes": nodes,
    }


def verdict_data(verdict: Verdict) -> Dict[str, Any]:
    data: Dict[str, Any] = {
        "value": verdict.value.value,
        "kind": verdict.kind.value,
        "sense": verdict.sense,
    }
    if verdict.content_size is not None:
        data["content_size"] = verdict.content_size
    if verdict.witnesses:
        data["witnesses"] = [
            {"imaginary": w.imaginary.label(), "actual": w.actual.label(), "relation": w.relation}
            for w in verdict.witnesses
        ]
    if verdict.note:
        data["note"] = verdict.note
    if verdict.children:
        data["children"] = [verdict_data(c) for c in verdict.children]
    return data


# ---------------------------------------------------------------------------
# Texto
# ---------------------------------------------------------------------------


def _validation_text(report: ValidationReport) -> str:
    s = report.summary
    lines = [
        f"{'✅' if report.ok else '❌'} modelo {'consistente' if report.ok else 'con violaciones'}",
        f"📊 observaciones={s['observations']} actuales={s['actual']} imaginarias={s['imaginary']} "
        f"elementos={s['elements']} objetos={s['objects']}",
    ]
    for world, count in sorted(s["worlds"].items()):
        lines.append(f"   mundo {world}: {count} observaciones")
    sections = (
        ("axioma de observación", report.axiom),
        ("consistencia débil", report.weak),
        ("consistencia fuerte", report.strong),
    )
    for title, pairs in sections:
        lines.append(f"{title}: {len(pairs)}")
        lines.extend(f"   {a.label()} ↔ {b.label()}" for a, b in pairs)
    lines.append(f"autoobservación: {len(report.self_observation)}")
    lines.extend(f"   {v.relation}: {v.observation.label()} no observado por {v.agent}" for v in report.self_observation)
    for name, cond in sorted(report.objects.items()):
        flags = " ".join(f"{k}={'sí' if v else 'no'}" for k, v in cond.as_dict().items())
        lines.append(f"objeto {name}: {flags}")
    return "\n".join(lines)


def explanation_outline(r: Explanation, depth: int = 0) -> List[str]:
    """Explicación como esquema indentado: cada nodo antes de sus hijos"""
    pad = "   " * depth
    if isinstance(r, ExplanationLeaf):
        sense = render_sense(r.sense) if r.sense is not None else VACANT
        return [f"{pad}{r.node_id} {r.token}: {sense}"]
    return (
        [f"{pad}{r.node_id} ⇐ {render_sense(r.sense)}"]
        + explanation_outline(r.modifier, depth + 1)
        + explanation_outline(r.head, depth + 1)
    )


def _interpretation_text(interp: Interpretation, model: CognitiveModel) -> str:
    data = interpretation_data(interp, model)
    lines = [f"🌳 {data['tree']}"]
    for node in iter_nodes(interp.tree):
        triples = interp.meanings.get(node.node_id, ())
        candidates = interp.candidates.get(node.node_id, len(triples))
        lines.append(f"[{node.node_id}] {len(triples)} significado(s) de {candidates} candidato(s)")
        for t in triples:
            lines.append(f"   {_display(model, t.denotation)} ⇐ {render_sense(t.sense)}")
            lines.extend("      " + line for line in explanation_outline(t.explanation))
    if data["vacant_root"]:
        lines.append(f"⚠️ {VACANT} denotación vacante en la raíz")
    if data["effective"]:
        lines.append("✅ interpretación efectiva")
    else:
        lines.append("⚠️ interpretación no efectiva en: " + ", ".join(data["ambiguous_nodes"]))
    return "\n".join(lines)


def _verdict_lines(verdict: Verdict, depth: int = 0) -> List[str]:
    pad = "   " * depth
    head = f"{pad}{verdict.value} [{verdict.kind.value}] {verdict.sense}"
    if verdict.content_size is not None:
        head += f" |contenido|={verdict.content_size}"
    if verdict.note:
        head += f" ({verdict.note})"
    lines = [head]
    lines.extend(f"{pad}   🔍 {w.describe()}" for w in verdict.witnesses)
    for child in verdict.children:
        lines.extend(_verdict_lines(child, depth + 1))
    return lines


def _verdict_text(verdict: Verdict) -> str:
    return "\n".join(_verdict_lines(verdict))


# ---------------------------------------------------------------------------
# Selección de formato
# ---------------------------------------------------------------------------


def _structured(data: Any) -> str:
    return json.dumps(data, ensure_ascii=False, sort_keys=True, indent=2)


_FORMAT_MAP: Dict[str, Dict[str, Callable[..., str]]] = {
    "text": {
        "validation": _validation_text,
        "interpretation": _interpretation_text,
        "verdict": _verdict_text,
    },
    "structured": {
        "validation": lambda r: _structured(validation_data(r)),
        "interpretation": lambda i, m: _structured(interpretation_data(i, m)),
        "verdict": lambda v: _structured(verdict_data(v)),
    },
}


def _renderer(fmt: str, what: str) -> Callable[..., str]:
    if fmt not in _FORMAT_MAP:
        raise ValueError(f"Formato de salida desconocido: {fmt}")
    return _FORMAT_MAP[fmt][what]


def render_validation(report: ValidationReport, fmt: str = "text") -> str:
    return _renderer(fmt, "validation")(report)


def render_interpretation(interp: Interpretation, model: CognitiveModel, fmt: str = "text") -> str:
    return _renderer(fmt, "interpretation")(interp, model)


def render_verdict(verdict: Verdict, fmt: str = "text") -> str:
    return _renderer(fmt, "verdict")(verdict)


def render_batch(items: Sequence[Dict[str, Any]], fmt: str = "text") -> str:
    """Resultados de un lote en orden de entrada.

    Cada item lleva 'index', 'tree' y 'verdict' o 'error'.
    """
    if fmt == "structured":
        out = []
        for item in items:
            entry: Dict[str, Any] = {"index": item["index"], "tree": item["tree"]}
            if item.get("verdict") is not None:
                entry["verdict"] = verdict_data(item["verdict"])
            else:
                entry["error"] = item["error"]
            out.append(entry)
        return _structured(out)
    blocks = []
    for item in items:
        header = f"#{item['index']} {item['tree']}"
        body: Optional[str] = render_verdict(item["verdict"]) if item.get("verdict") is not None else f"❌ {item['error']}"
        blocks.append(f"{header}\n{body}")
    return "\n\n".join(blocks)
