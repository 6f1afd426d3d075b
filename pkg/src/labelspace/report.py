"""Structured and text renderings of analysis results, plus witness replay."""

from __future__ import annotations

import json

from .accommodating import bar_e, generalized_vertex, omega, smallest_accommodating, stable_partition
from .automaton import LassoWitness
from .cofinality import CofinalityWitness, replay_cofinality_witness
from .disagreeable import disagreeable_block
from .graph import LabelledGraph
from .verdict import SimplicityReport
from .wlr import WlrCounterexample


def graph_summary(g: LabelledGraph) -> dict:
    return {"vertices": list(g.vertices), "labels": list(g.labels), "edges": len(g.edges)}


def wlr_witnesses(g: LabelledGraph, verdict, family: str) -> list[dict]:
    out = []
    if verdict.holds:
        return out
    primary = verdict.counterexample
    out.append({"kind": "wlr", "family": family, "primary": True, **primary.as_dict(g)})
    for cex in verdict.all_counterexamples:
        if cex != primary:
            out.append({"kind": "wlr", "family": family, "primary": False, **cex.as_dict(g)})
    return out


def cofinality_witness(g: LabelledGraph, verdict) -> list[dict]:
    if verdict.holds:
        return []
    kind = "strong-cofinal" if verdict.kind == "strong" else "cofinal"
    return [{"kind": kind, "source_level": verdict.source_level, **verdict.witness.as_dict(g)}]


def disagreeable_witness(g: LabelledGraph, verdict) -> list[dict]:
    if verdict.space_disagreeable:
        return []
    v, level = verdict.failure
    ev = next((e for e in verdict.evidence if e.block == verdict.failure_block), None)
    out = {"kind": "not-disagreeable", "v": v, "level": level, "block": g.ids(verdict.failure_block)}
    if ev is not None:
        out["lassos"] = ev.as_dict(g).get("lassos", [])
    return [out]


def build_report(g: LabelledGraph, rep: SimplicityReport) -> dict:
    part, lstar = stable_partition(g)
    verdicts = {
        "verdict": rep.verdict,
        "rule": rep.rule,
        "wlr_bar_e": rep.wlr_bar_e.holds,
        "singleton": rep.singleton,
        "strong_cofinal": rep.strong_cofinal.holds,
        "cofinal": rep.cofinal.holds,
        "disagreeable": rep.disagreeable.space_disagreeable,
        "lstar": lstar,
        "limit_partition": [g.ids(b) for b in part.blocks],
        "disagreeable_evidence": [e.as_dict(g) for e in rep.disagreeable.evidence],
    }
    witnesses = (wlr_witnesses(g, rep.wlr_bar_e, "blocks")
                 + cofinality_witness(g, rep.strong_cofinal)
                 + cofinality_witness(g, rep.cofinal)
                 + disagreeable_witness(g, rep.disagreeable))
    return {"graph": graph_summary(g), "verdicts": verdicts, "witnesses": witnesses,
            "citations": [dict(c) for c in rep.citations]}


def dumps(report: dict) -> str:
    return json.dumps(report, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def load_report(text: str) -> dict:
    data = json.loads(text)
    for key in ("graph", "verdicts", "witnesses", "citations"):
        if key not in data:
            raise ValueError(f"report is missing {key!r}")
    return data


def render_witness(w: dict) -> str:
    kind = w["kind"]
    if kind == "wlr":
        return (f"wlr[{w['family']}] A={{{','.join(w['A'])}}} B={{{','.join(w['B'])}}} "
                f"word={w['word']}")
    if kind in ("strong-cofinal", "cofinal"):
        prefix = w["prefix"] or "ε"
        return (f"{kind} w={w['w']} block={{{','.join(w['block'])}}} "
                f"x={prefix} ({w['cycle']})^inf")
    if kind == "not-disagreeable":
        lassos = ", ".join(f"{x['prefix'] or 'ε'} ({x['cycle']})^inf" for x in w.get("lassos", []))
        return (f"not-disagreeable v={w['v']} level={w['level']} block={{{','.join(w['block'])}}}"
                + (f" sequences: {lassos}" if lassos else ""))
    return json.dumps(w, sort_keys=True)


def render_text(report: dict) -> str:
    v = report["verdicts"]
    g = report["graph"]
    lines = [
        f"graph: {len(g['vertices'])} vertices, {g['edges']} edges, labels {' '.join(g['labels'])}",
        f"limit partition (l*={v['lstar']}): "
        + " ".join("{" + ",".join(b) + "}" for b in v["limit_partition"]),
        f"weakly left-resolving (blocks): {v['wlr_bar_e']}",
        f"singleton condition: {v['singleton']}",
        f"strongly cofinal: {v['strong_cofinal']}",
        f"cofinal: {v['cofinal']}",
        f"disagreeable: {v['disagreeable']}",
        f"verdict: {v['verdict']} (rule {v['rule']})",
    ]
    for w in report["witnesses"]:
        lines.append("witness: " + render_witness(w))
    for c in report["citations"]:
        lines.append(f"cite [{c['tag']}]: {c['statement']}")
    return "\n".join(lines) + "\n"


def replay_witness(g: LabelledGraph, w: dict) -> bool:
    """Re-verify one serialized witness against ``g`` by direct computation."""
    kind = w["kind"]
    if kind == "wlr":
        A, B = g.mask(w["A"]), g.mask(w["B"])
        family = {"blocks": bar_e, "smallest": smallest_accommodating}.get(w.get("family"))
        if family is not None and (A not in family(g) or B not in family(g)):
            return False
        return WlrCounterexample(A, B, g.word(w["word"])).holds_on(g)
    if kind in ("strong-cofinal", "cofinal"):
        lasso = LassoWitness(g.word(w["prefix"]), g.word(w["cycle"]))
        if not lasso.cycle:
            return False
        cw = CofinalityWitness(w["w"], g.mask(w["block"]), lasso)
        if cw.block not in stable_partition(g)[0].blocks:
            return False
        return replay_cofinality_witness(g, cw, int(w["source_level"]))
    if kind == "not-disagreeable":
        level = int(w["level"])
        _, lstar = stable_partition(g)
        block = generalized_vertex(g, g.index(w["v"]), min(level, lstar))
        if block != g.mask(w["block"]):
            return False
        return not disagreeable_block(g, block, level).disagreeable
    raise ValueError(f"unknown witness kind {kind!r}")


def witnesses_from(data) -> list[dict]:
    """Accept a full report, a witness list or a single witness object."""
    if isinstance(data, dict) and "witnesses" in data:
        return list(data["witnesses"])
    if isinstance(data, list):
        return data
    return [data]


def omega_report(g: LabelledGraph) -> dict:
    part, lstar = stable_partition(g)
    return {"lstar": lstar,
            "levels": {str(l): [g.ids(b) for b in omega(g, l).blocks] for l in range(1, lstar + 1)},
            "limit_partition": [g.ids(b) for b in part.blocks]}
