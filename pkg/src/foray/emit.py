"""Model serialization: C-like loop-nest text and a JSON report.

The C-like form is a behavioral abstraction, not compilable code: each
surviving reference appears as an array access whose index expression is
its inferred affine function, nested under for loops bounded by the
maximum observed trip counts.  Iterator names derive from each loop's
begin-checkpoint id (``i12`` for begin id 12), array names from the
instruction address (``A4002a0``).
"""

from __future__ import annotations

import json
from typing import Dict, List, Optional

from .model import ForayModel, ReferenceResult

REPORT_SCHEMA = "foray-report"
REPORT_SCHEMA_VERSION = 1


class _Nest:
    __slots__ = ("node", "refs", "children")

    def __init__(self, node):
        self.node = node
        self.refs: List[ReferenceResult] = []
        self.children: Dict[int, "_Nest"] = {}


def emit_c(model: ForayModel) -> str:
    """C-like text for every surviving reference, deterministically.

    Loops shared by several surviving references are emitted once with
    all of them inside.  A partial expression is emitted under its
    covered innermost loops only, with a trailing marker comment.
    """
    top: Dict[int, _Nest] = {}
    loose: List[ReferenceResult] = []  # references with no covered loop
    for ref in model.surviving:
        chain = ref.expression.nest
        if not chain:
            loose.append(ref)
            continue
        level = top
        slot = None
        for node in chain:
            slot = level.get(id(node))
            if slot is None:
                slot = _Nest(node)
                level[id(node)] = slot
            level = slot.children
        slot.refs.append(ref)

    lines: List[str] = []
    for ref in loose:
        lines.append(_reference_line(ref, 0))
    for slot in top.values():
        _render(slot, 0, lines)
    if not lines:
        return ""
    return "\n".join(lines) + "\n"


def _render(slot: _Nest, indent: int, lines: List[str]) -> None:
    node = slot.node
    name = f"i{node.begin_id}"
    bound = node.trip_max if node.trip_max is not None else 0
    lines.append(f"{' ' * indent}for (int {name}=0; {name}<{bound}; {name}++)")
    for ref in slot.refs:
        lines.append(_reference_line(ref, indent + 1))
    for child in slot.children.values():
        _render(child, indent + 1, lines)


def _reference_line(ref: ReferenceResult, indent: int) -> str:
    expr = ref.expression
    base = ref.state.first_const if expr.partial else expr.base
    terms = []
    # innermost-iterator term first; expr.nest is outermost first
    for level, coeff in enumerate(expr.coeffs):
        if coeff == 0:
            continue
        loop = expr.nest[len(expr.nest) - 1 - level]
        sign = "+" if coeff >= 0 else "-"
        terms.append(f"{sign}{abs(coeff)}*i{loop.begin_id}")
    marker = " /* partial, base varies */" if expr.partial else ""
    return f"{' ' * indent}A{ref.instr:x}[{base}{''.join(terms)}]{marker}"


def report_dict(model: ForayModel) -> dict:
    """Structured report; field names are fixed by this module (schema v1)."""
    loops = [_loop_dict(child) for child in model.root.children.values()]
    references = [_reference_dict(ref) for ref in model.references]
    hints = [
        {
            "loop_id": hint.loop_id,
            "contexts": [
                {
                    "path": list(ctx.path),
                    "surviving": [
                        {"instr": f"{instr:x}", "expression": _expression_dict(expr, None)}
                        for instr, expr in ctx.surviving
                    ],
                }
                for ctx in hint.contexts
            ],
        }
        for hint in model.hints
    ]
    stats = model.stats
    return {
        "schema": REPORT_SCHEMA,
        "schema_version": REPORT_SCHEMA_VERSION,
        "filter": {
            "n_exec": model.config.n_exec,
            "n_loc": model.config.n_loc,
            "require_iterator": model.config.require_iterator,
        },
        "totals": stats.as_dict()["totals"],
        "categories": stats.as_dict()["categories"],
        "loops": loops,
        "references": references,
        "inlining_hints": hints,
        "notes": list(model.notes),
        "state_units": stats.state_units,
    }


def _loop_dict(node) -> dict:
    entry = {
        "loop_id": node.static_loop_id,
        "iterator": f"i{node.begin_id}",
        "entries": node.entry_count,
        "trip_min": node.trip_min,
        "trip_max": node.trip_max,
        "children": [_loop_dict(child) for child in node.children.values()],
    }
    if node.trip_max is not None and node.trip_max <= 1:
        entry["degenerate"] = True
    return entry


def _expression_dict(expr, first_const: Optional[int]) -> dict:
    out = {
        "base": expr.base,
        "coeffs": list(expr.coeffs),
        "levels": expr.levels,
        "partial": expr.partial,
        "iterators": [f"i{n.begin_id}" for n in expr.nest],
    }
    if expr.partial and first_const is not None:
        out["emitted_base"] = first_const
    return out


def _reference_dict(ref: ReferenceResult) -> dict:
    state = ref.state
    return {
        "instr": f"{ref.instr:x}",
        "context": list(ref.context),
        "category": ref.category,
        "purge_reason": ref.purge_reason,
        "exec_count": state.exec_count,
        "footprint": state.footprint,
        "reads": state.read_count,
        "writes": state.write_count,
        "mispredictions": state.miss_count,
        "expression": (_expression_dict(ref.expression, state.first_const)
                       if ref.expression is not None else None),
    }


def emit_report(model: ForayModel) -> str:
    """Canonical textual serialization of the report (JSON, 2-space indent)."""
    return json.dumps(report_dict(model), indent=2) + "\n"


def stats_from_report(text: str) -> dict:
    """Parse a report back and return its stats subset (round-trip check)."""
    doc = json.loads(text)
    return {"totals": doc["totals"], "categories": doc["categories"]}
