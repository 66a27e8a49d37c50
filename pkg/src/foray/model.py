"""Full analysis pipeline: trace stream -> loop tree -> filtered model.

``analyze`` makes a single pass over the record sequence, dispatching
checkpoints to the tree cursor and memory accesses to the per-reference
inference states, then finalizes everything, applies the purge filter and
computes the aggregate statistics and inlining hints.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Tuple

from .inference import (AffineExpression, ReferenceState, finalize_expression,
                        init_reference, observe_access)
from .loop_tree import CheckpointTable, LoopNode, StructuralTraceError, TreeCursor
from .trace import (AccessKind, CheckpointEvent, LoopDeclaration,
                    MemoryAccessEvent, TraceFormatError, TraceRecord)

log = logging.getLogger("foray.model")

CATEGORY_INCLUDED = "included"
CATEGORY_PURGED = "purged"
CATEGORY_NON_ANALYZABLE = "non_analyzable"

REASON_NON_ANALYZABLE = "non-analyzable"
REASON_NO_ITERATOR = "no-iterator"
REASON_TOO_FEW_EXECUTIONS = "too-few-executions"
REASON_TOO_FEW_LOCATIONS = "too-few-locations"

#: Notes on inference conventions, carried verbatim into every report.
INFERENCE_NOTES = (
    "coefficient recovery compensates already-known terms by their iterator "
    "deltas: adjust = sum c_i * (it_i - prev_it_i) over changed solved levels",
    "an inexact coefficient division leaves the slot unknown and is handled "
    "through the misprediction path (constant resync + level demotion)",
)


@dataclass(frozen=True)
class FilterConfig:
    """Purge thresholds; defaults keep only references worth placing in
    a scratch pad (enough executions, enough distinct locations)."""
    n_exec: int = 20
    n_loc: int = 10
    require_iterator: bool = True

    def __post_init__(self):
        if self.n_exec < 1 or self.n_loc < 1:
            raise ValueError("filter thresholds must be >= 1")


@dataclass
class ReferenceResult:
    """One reference in one loop-tree context, after finalization."""
    instr: int
    context: Tuple[int, ...]            # static loop ids, outermost first
    context_nodes: Tuple[LoopNode, ...]
    state: ReferenceState
    expression: Optional[AffineExpression]
    category: str = CATEGORY_INCLUDED
    purge_reason: Optional[str] = None

    @property
    def exec_count(self) -> int:
        return self.state.exec_count

    @property
    def footprint(self) -> int:
        return self.state.footprint

    @property
    def surviving(self) -> bool:
        return self.category == CATEGORY_INCLUDED


@dataclass(frozen=True)
class CategoryStats:
    references: int
    accesses: int
    footprint: int


@dataclass(frozen=True)
class ModelStats:
    total_references: int
    total_accesses: int
    total_footprint: int
    loop_count: int
    categories: Dict[str, CategoryStats]
    state_units: int

    def as_dict(self) -> dict:
        return {
            "totals": {
                "references": self.total_references,
                "accesses": self.total_accesses,
                "footprint": self.total_footprint,
                "loops": self.loop_count,
            },
            "categories": {
                name: {"references": c.references, "accesses": c.accesses,
                       "footprint": c.footprint}
                for name, c in self.categories.items()
            },
        }


@dataclass(frozen=True)
class HintContext:
    path: Tuple[int, ...]
    surviving: Tuple[Tuple[int, AffineExpression], ...]  # (instr, expression)


@dataclass(frozen=True)
class InliningHint:
    """A static loop observed in several dynamic contexts; duplicating the
    enclosing function would let each context be optimized separately."""
    loop_id: int
    contexts: Tuple[HintContext, ...]


@dataclass
class ForayModel:
    root: LoopNode
    references: List[ReferenceResult]
    config: FilterConfig
    stats: ModelStats = field(init=False)
    hints: List[InliningHint] = field(default_factory=list)
    notes: Tuple[str, ...] = INFERENCE_NOTES

    @property
    def surviving(self) -> List[ReferenceResult]:
        return [r for r in self.references if r.surviving]

    def loops(self) -> List[Tuple[Tuple[LoopNode, ...], LoopNode]]:
        return list(self.root.walk())


def analyze(records: Iterable[TraceRecord], config: Optional[FilterConfig] = None,
            footprint_cap: Optional[int] = None) -> ForayModel:
    """Run the whole pipeline over a record sequence (single pass).

    Structural errors carry the 0-based record index in ``record_index``;
    callers reading from a file can map that back to a line number via
    the stream's ``line`` attribute.
    """
    cfg = config or FilterConfig()
    cursor = TreeCursor()
    declarations: List[LoopDeclaration] = []
    table: Optional[CheckpointTable] = None
    access_events = 0

    for index, record in enumerate(records):
        if isinstance(record, LoopDeclaration):
            if table is not None:
                err = TraceFormatError("loop declaration after first event")
                err.record_index = index
                raise err
            declarations.append(record)
            continue
        if table is None:
            table = CheckpointTable(declarations)
        if isinstance(record, CheckpointEvent):
            try:
                cursor.apply_checkpoint(record, table)
            except StructuralTraceError as err:
                err.record_index = index
                raise
        elif isinstance(record, MemoryAccessEvent):
            access_events += 1
            state = cursor.locate_reference(record.instr)
            if state is None:
                state = init_reference(cursor.iterator_vector(), record.addr,
                                       footprint_cap=footprint_cap)
                cursor.bind_reference(record.instr, state)
            else:
                observe_access(state, cursor.iterator_vector(), record.addr)
            if record.kind is AccessKind.READ:
                state.read_count += 1
            else:
                state.write_count += 1
        else:
            raise TypeError(f"not a trace record: {record!r}")

    cursor.finish()
    model = _build_model(cursor.root, cfg, access_events)
    log.info("analyzed %d access events, %d references, %d loops",
             access_events, model.stats.total_references, model.stats.loop_count)
    return model


def _build_model(root: LoopNode, cfg: FilterConfig, access_events: int) -> ForayModel:
    results: List[ReferenceResult] = []
    for path, node in root.walk():
        for instr, state in node.references.items():
            expr = finalize_expression(state, path)
            results.append(ReferenceResult(
                instr=instr,
                context=tuple(n.static_loop_id for n in path),
                context_nodes=path,
                state=state,
                expression=expr,
            ))
    # References attached directly to the root (outside all loops).
    for instr, state in root.references.items():
        expr = finalize_expression(state, ())
        results.append(ReferenceResult(instr=instr, context=(), context_nodes=(),
                                       state=state, expression=expr))

    purge(results, cfg)
    model = ForayModel(root=root, references=results, config=cfg)
    model.stats = _compute_stats(model, access_events)
    model.hints = inlining_hints(model)
    return model


def purge(results: List[ReferenceResult], cfg: FilterConfig) -> Tuple[List[ReferenceResult], List[ReferenceResult]]:
    """Partition references into surviving / purged, recording the first
    failing condition in a fixed order as the purge reason."""
    kept, dropped = [], []
    for ref in results:
        reason = _purge_reason(ref, cfg)
        if reason is None:
            ref.category = CATEGORY_INCLUDED
            ref.purge_reason = None
            kept.append(ref)
        else:
            ref.category = (CATEGORY_NON_ANALYZABLE if reason == REASON_NON_ANALYZABLE
                            else CATEGORY_PURGED)
            ref.purge_reason = reason
            dropped.append(ref)
    return kept, dropped


def _purge_reason(ref: ReferenceResult, cfg: FilterConfig) -> Optional[str]:
    if ref.expression is None:
        return REASON_NON_ANALYZABLE
    if cfg.require_iterator and not ref.expression.has_iterator():
        return REASON_NO_ITERATOR
    if ref.state.exec_count < cfg.n_exec:
        return REASON_TOO_FEW_EXECUTIONS
    if ref.state.footprint < cfg.n_loc:
        return REASON_TOO_FEW_LOCATIONS
    return None


def _compute_stats(model: ForayModel, access_events: int) -> ModelStats:
    per_cat: Dict[str, List[ReferenceResult]] = {
        CATEGORY_INCLUDED: [], CATEGORY_PURGED: [], CATEGORY_NON_ANALYZABLE: []}
    for ref in model.references:
        per_cat[ref.category].append(ref)

    categories = {}
    all_addresses: set = set()
    total_refs = 0
    total_accesses = 0
    for name, refs in per_cat.items():
        addresses: set = set()
        accesses = 0
        for ref in refs:
            addresses |= ref.state.addresses
            accesses += ref.state.exec_count
        categories[name] = CategoryStats(len(refs), accesses, len(addresses))
        all_addresses |= addresses
        total_refs += len(refs)
        total_accesses += accesses

    # Conservation: every access event lands in exactly one category.
    assert total_accesses == access_events, \
        f"access conservation violated: {total_accesses} != {access_events}"

    loop_count = sum(1 for _ in model.root.walk())
    state_units = _live_state_units(model, loop_count)
    return ModelStats(
        total_references=total_refs,
        total_accesses=total_accesses,
        total_footprint=len(all_addresses),
        loop_count=loop_count,
        categories=categories,
        state_units=state_units,
    )


def _live_state_units(model: ForayModel, loop_count: int) -> int:
    """Size of the live analysis state, in bookkeeping units.

    Analysis state only ever grows (nodes, reference states and footprint
    sets are never released mid-trace), so the end-of-trace size equals
    the peak.  Counted per unit: one per loop node, and per reference one
    plus its per-level slots plus its recorded distinct addresses.
    """
    units = loop_count + 1  # + root
    for ref in model.references:
        units += 1 + 3 * ref.state.depth + len(ref.state.addresses)
    return units


def inlining_hints(model: ForayModel) -> List[InliningHint]:
    """Static loops that appear as two or more tree nodes, with each
    context's surviving expressions."""
    occurrences: Dict[int, List[Tuple[Tuple[int, ...], LoopNode]]] = {}
    for path, node in model.root.walk():
        ids = tuple(n.static_loop_id for n in path)
        occurrences.setdefault(node.static_loop_id, []).append((ids, node))

    surviving_by_node: Dict[int, List[Tuple[int, AffineExpression]]] = {}
    for ref in model.surviving:
        for node in ref.context_nodes:
            surviving_by_node.setdefault(id(node), []).append((ref.instr, ref.expression))

    hints = []
    for loop_id, occ in occurrences.items():
        if len(occ) < 2:
            continue
        contexts = tuple(
            HintContext(path=ids, surviving=tuple(surviving_by_node.get(id(node), ())))
            for ids, node in occ)
        hints.append(InliningHint(loop_id=loop_id, contexts=contexts))
    return hints
