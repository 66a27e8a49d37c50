"""Pipeline and purge filter: thresholds, conservation, hints, determinism."""

import pytest

from conftest import pointer_walk_spec, two_call_sites_spec
from foray import FilterConfig, analyze, generate_trace
from foray.model import (CATEGORY_INCLUDED, CATEGORY_NON_ANALYZABLE,
                         CATEGORY_PURGED, REASON_NO_ITERATOR,
                         REASON_TOO_FEW_EXECUTIONS, REASON_TOO_FEW_LOCATIONS)
from foray.synth import LoopSpec, RefSpec, WorkloadSpec
from foray.trace import (AccessKind, CheckpointEvent, LoopDeclaration,
                         MemoryAccessEvent, TraceFormatError)


def _single_loop(trips, coeff=1, instr=0x900, base=0x100000):
    return WorkloadSpec(
        loops=(LoopSpec(1, 10, 11, 12, trips=trips),),
        references=(RefSpec(instr=instr, loop_path=(1,), base=base, coeffs=(coeff,)),))


def _nested(outer_trips, inner_trips, coeffs, instr=0x900):
    return WorkloadSpec(
        loops=(LoopSpec(1, 10, 11, 12, trips=outer_trips, children=(
            LoopSpec(2, 20, 21, 22, trips=inner_trips),)),),
        references=(RefSpec(instr=instr, loop_path=(1, 2), base=0x100000,
                            coeffs=coeffs),))


def test_golden_survives_with_low_thresholds():
    model = analyze(generate_trace(pointer_walk_spec(), 0), FilterConfig(1, 1))
    assert len(model.surviving) == 1
    assert model.stats.total_accesses == 6


def test_golden_purged_at_default_thresholds():
    model = analyze(generate_trace(pointer_walk_spec(), 0))
    assert model.surviving == []
    ref = model.references[0]
    assert ref.purge_reason == REASON_TOO_FEW_EXECUTIONS  # 6 < 20


def test_filter_config_validation():
    with pytest.raises(ValueError):
        FilterConfig(n_exec=0)


@pytest.mark.parametrize("trips,survives", [(19, False), (20, True)])
def test_exec_count_boundary_is_inclusive(trips, survives):
    model = analyze(generate_trace(_single_loop(trips), 0))
    ref = model.references[0]
    assert ref.surviving == survives
    if not survives:
        assert ref.purge_reason == REASON_TOO_FEW_EXECUTIONS


@pytest.mark.parametrize("inner,survives", [(9, False), (10, True)])
def test_footprint_boundary_is_inclusive(inner, survives):
    # 3 x inner executions but only `inner` distinct addresses (outer coeff 0)
    model = analyze(generate_trace(_nested(3, inner, (1, 0)), 0))
    ref = model.references[0]
    assert ref.exec_count == 3 * inner and ref.footprint == inner
    assert ref.surviving == survives
    if not survives:
        assert ref.purge_reason == REASON_TOO_FEW_LOCATIONS


def test_constant_address_purged_as_no_iterator():
    model = analyze(generate_trace(_single_loop(50, coeff=0), 0))
    ref = model.references[0]
    assert ref.purge_reason == REASON_NO_ITERATOR
    assert ref.category == CATEGORY_PURGED


def test_reference_outside_loops_purged_as_no_iterator():
    records = [LoopDeclaration(1, 10, 11, 12),
               MemoryAccessEvent(0x42, 0x1000, AccessKind.READ),
               MemoryAccessEvent(0x42, 0x1008, AccessKind.READ)]
    model = analyze(iter(records), FilterConfig(1, 1))
    ref = model.references[0]
    assert ref.context == ()
    assert ref.purge_reason == REASON_NO_ITERATOR


def test_purge_reason_priority_and_partition():
    # one survivor, one scalar hot spot, one cold affine reference
    spec = WorkloadSpec(
        loops=(LoopSpec(1, 10, 11, 12, trips=100),
               LoopSpec(2, 20, 21, 22, trips=4)),
        references=(
            RefSpec(instr=0x1, loop_path=(1,), base=0x1000, coeffs=(4,)),
            RefSpec(instr=0x2, loop_path=(1,), base=0x9000, coeffs=(0,)),
            RefSpec(instr=0x3, loop_path=(2,), base=0x5000, coeffs=(4,)),
        ))
    model = analyze(generate_trace(spec, 0))
    by_instr = {r.instr: r for r in model.references}
    assert by_instr[0x1].category == CATEGORY_INCLUDED
    assert by_instr[0x2].purge_reason == REASON_NO_ITERATOR
    assert by_instr[0x3].purge_reason == REASON_TOO_FEW_EXECUTIONS
    assert len(model.surviving) == 1


def test_access_conservation_across_categories():
    spec = WorkloadSpec(
        loops=(LoopSpec(1, 10, 11, 12, trips=30),),
        references=(
            RefSpec(instr=0x1, loop_path=(1,), base=0x1000, coeffs=(4,)),
            RefSpec(instr=0x2, loop_path=(1,), base=0x9000, coeffs=(0,)),
        ))
    model = analyze(generate_trace(spec, 0))
    stats = model.stats
    assert stats.total_accesses == 60
    assert sum(c.accesses for c in stats.categories.values()) == stats.total_accesses
    assert sum(c.references for c in stats.categories.values()) == stats.total_references


def test_non_analyzable_counts_in_its_own_category():
    records = [
        LoopDeclaration(1, 10, 11, 12), LoopDeclaration(2, 20, 21, 22),
        CheckpointEvent(10), CheckpointEvent(11),
        CheckpointEvent(20), CheckpointEvent(21),
        MemoryAccessEvent(0x99, 0x1000, AccessKind.READ),
        CheckpointEvent(22), CheckpointEvent(12),
        CheckpointEvent(11),
        CheckpointEvent(20), CheckpointEvent(21),
        CheckpointEvent(22), CheckpointEvent(21),
        MemoryAccessEvent(0x99, 0x2000, AccessKind.READ),
    ]
    model = analyze(iter(records), FilterConfig(1, 1))
    assert model.references[0].category == CATEGORY_NON_ANALYZABLE
    assert model.stats.categories[CATEGORY_NON_ANALYZABLE].accesses == 2
    assert model.stats.categories[CATEGORY_INCLUDED].accesses == 0


def test_empty_event_section_yields_empty_model():
    records = [LoopDeclaration(1, 10, 11, 12)]
    model = analyze(iter(records))
    assert model.references == [] and model.stats.total_accesses == 0


def test_declaration_after_event_rejected():
    records = [LoopDeclaration(1, 10, 11, 12), CheckpointEvent(10),
               LoopDeclaration(2, 20, 21, 22)]
    with pytest.raises(TraceFormatError):
        analyze(iter(records))


def test_structural_error_carries_record_index():
    records = [LoopDeclaration(1, 10, 11, 12), CheckpointEvent(11)]
    from foray.loop_tree import StructuralTraceError
    with pytest.raises(StructuralTraceError) as exc:
        analyze(iter(records))
    assert exc.value.record_index == 1


def test_inlining_hint_for_two_call_sites():
    model = analyze(generate_trace(two_call_sites_spec(), 0))
    assert len(model.hints) == 1
    hint = model.hints[0]
    assert hint.loop_id == 3
    assert [c.path for c in hint.contexts] == [(1, 3), (2, 3)]
    assert all(len(c.surviving) == 1 for c in hint.contexts)


def test_no_hint_for_single_context_program():
    model = analyze(generate_trace(pointer_walk_spec(), 0), FilterConfig(1, 1))
    assert model.hints == []


def test_hint_lists_three_contexts():
    inner = LoopSpec(9, 90, 91, 92, trips=5)
    spec = WorkloadSpec(
        loops=(LoopSpec(1, 10, 11, 12, trips=2, children=(inner,)),
               LoopSpec(2, 20, 21, 22, trips=2, children=(inner,)),
               LoopSpec(3, 30, 31, 32, trips=2, children=(inner,))),
        references=tuple(RefSpec(instr=0xA00, loop_path=(p, 9), base=0x4000,
                                 coeffs=(1, 16)) for p in (1, 2, 3)))
    model = analyze(generate_trace(spec, 0), FilterConfig(1, 1))
    assert len(model.hints) == 1
    assert len(model.hints[0].contexts) == 3


def test_analyze_is_deterministic():
    records = list(generate_trace(two_call_sites_spec(), 3))
    first = analyze(iter(records))
    second = analyze(iter(records))
    from foray import emit_c, emit_report
    assert emit_c(first) == emit_c(second)
    assert emit_report(first) == emit_report(second)


def test_footprint_cap_flows_through_analyze():
    model = analyze(generate_trace(_single_loop(50), 0), FilterConfig(1, 1),
                    footprint_cap=8)
    ref = model.references[0]
    assert ref.footprint == 8 and ref.state.footprint_saturated
