"""Serialisation of analysis reports (JSON and plain text).

Rationals are always written as exact ``"num/den"`` strings.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any, Dict

from .classify import AnalysisReport
from .poly import UniPoly
from .maps import DiagonalChange, GeneralisedStandardMap, PlanarPolyMap

SCHEMA_VERSION = 1


def q(v: Fraction) -> str:
    v = Fraction(v)
    return f"{v.numerator}/{v.denominator}"


def map_doc(L: GeneralisedStandardMap) -> Dict[str, str]:
    return {"p1": L.p1.format("y"), "p2": L.p2.format("x"), "text": str(L)}


def planar_doc(F: PlanarPolyMap) -> Dict[str, str]:
    return {"x": str(F.forward[0]), "y": str(F.forward[1])}


def change_text(T: DiagonalChange) -> str:
    return (f"x -> {UniPoly([T.beta, T.alpha]).format('x')}, "
            f"y -> {UniPoly([T.delta, T.gamma]).format('y')}")


def change_doc(T: DiagonalChange) -> Dict[str, str]:
    return {"alpha": q(T.alpha), "beta": q(T.beta), "gamma": q(T.gamma), "delta": q(T.delta)}


def report_document(r: AnalysisReport) -> Dict[str, Any]:
    L = r.map
    deg = (L.p1.degree if not L.p1.is_zero() else 0) * (L.p2.degree if not L.p2.is_zero() else 0)
    doc: Dict[str, Any] = {
        "schema_version": SCHEMA_VERSION,
        "input": map_doc(L),
        "degree": deg,
        "word_type": r.word.type.value,
        "word": list(r.word.names),
        "reversible": r.reversible,
        "nontrivial_symmetry": r.has_nontrivial_symmetry,
        "conditions": [
            {"id": m.id.value, "params": {k: q(v) for k, v in m.params}, "swapped": m.swapped}
            for m in r.matches
        ],
        "witnesses": [
            {
                "name": w.name,
                "kind": w.kind.value,
                "condition": w.condition.value,
                "map": planar_doc(w.map),
                "order": w.order_info.value,
                "companion_of": w.companion_of,
            }
            for w in r.witnesses
        ],
        "group_structure": {
            "reversing_group": r.structure.tag,
            "symmetry_group": r.structure.symmetry_tag,
            "symmetry_generators": list(r.structure.symmetry_generators),
            "reversing_generator": r.structure.reversing_generator,
            "description": r.structure.description,
        },
        "normal_form": None,
        "caveats": list(r.caveats),
    }
    if r.normal_form is not None:
        nf = r.normal_form
        doc["normal_form"] = {"row": nf.row.value, "change": change_doc(nf.change), "map": map_doc(nf.map)}
    return doc


def to_json(r: AnalysisReport) -> str:
    return json.dumps(report_document(r), indent=2, sort_keys=True, ensure_ascii=False)


def to_text(r: AnalysisReport) -> str:
    d = report_document(r)
    lines = [
        f"map:        {d['input']['text']}   (degree {d['degree']})",
        f"word:       {r.word.label()}",
        f"reversible: {'yes' if d['reversible'] else 'no'}",
        f"structure:  R(L) = {d['group_structure']['reversing_group']}  "
        f"[{d['group_structure']['description']}],  S(L) = {d['group_structure']['symmetry_group']}",
    ]
    if r.matches:
        lines.append("conditions:")
        lines += [f"  {m.label()}{'  [via swapped inverse]' if m.swapped else ''}" for m in r.matches]
    else:
        lines.append("conditions: none")
    if r.witnesses:
        lines.append("witnesses:")
        for w in r.witnesses:
            lines.append(f"  {w.name:<8} {w.kind.value:<9} {w.order_info.value:<20} {w.map}")
    nf = d["normal_form"]
    if nf:
        lines.append(f"normal form ({nf['row']}): {nf['map']['text']}")
        lines.append(f"  via {change_text(r.normal_form.change)}")
    for c in r.caveats:
        lines.append(f"caveat: {c}")
    return "\n".join(lines)
