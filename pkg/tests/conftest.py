"""Shared fixtures: canonical workloads used across the test suite."""

from __future__ import annotations

from foray import LoopSpec, Perturbation, RefSpec, WorkloadSpec

# Canonical two-level example: an outer while-style loop (2 iterations)
# around an inner for-style loop (3 iterations), one write walking
# base + 1*inner + 103*outer.  Iterator names in the emitted model derive
# from the begin-checkpoint ids (12 outer, 15 inner).
GOLDEN_BASE = 2147440948
GOLDEN_INSTR = 0x4002A0

GOLDEN_C = ("for (int i12=0; i12<2; i12++)\n"
            " for (int i15=0; i15<3; i15++)\n"
            "  A4002a0[2147440948+1*i15+103*i12]\n")


def pointer_walk_spec() -> WorkloadSpec:
    return WorkloadSpec(
        loops=(
            LoopSpec(loop_id=1, begin=12, body=13, end=17, trips=2, children=(
                LoopSpec(loop_id=2, begin=15, body=16, end=14, trips=3),)),
        ),
        references=(
            RefSpec(instr=GOLDEN_INSTR, loop_path=(1, 2),
                    base=GOLDEN_BASE, coeffs=(1, 103)),
        ),
    )


def two_call_sites_spec() -> WorkloadSpec:
    """The same static loop (id 3) reached from two different outer loops,
    with a different outer stride at each call site."""
    inner = LoopSpec(loop_id=3, begin=30, body=31, end=32, trips=10)
    return WorkloadSpec(
        loops=(
            LoopSpec(loop_id=1, begin=10, body=11, end=12, trips=10, children=(inner,)),
            LoopSpec(loop_id=2, begin=20, body=21, end=22, trips=20, children=(inner,)),
        ),
        references=(
            RefSpec(instr=0xA00, loop_path=(1, 3), base=1 << 30, coeffs=(1, 10)),
            RefSpec(instr=0xA00, loop_path=(2, 3), base=1 << 30, coeffs=(1, 2)),
        ),
    )


def perturbed_nest_spec(level: int, depth: int = 4,
                        trips: tuple = (4, 4, 4, 4)) -> WorkloadSpec:
    """Depth-N nest whose reference base shifts unpredictably every time
    the iterators at or above `level` (innermost-first) change."""
    loop: LoopSpec = None
    for d in range(depth, 0, -1):
        children = (loop,) if loop is not None else ()
        loop = LoopSpec(loop_id=d, begin=d * 10, body=d * 10 + 1, end=d * 10 + 2,
                        trips=trips[d - 1], children=children)
    coeffs = tuple(4 ** i for i in range(depth))
    return WorkloadSpec(
        loops=(loop,),
        references=(
            RefSpec(instr=0x500, loop_path=tuple(range(1, depth + 1)),
                    base=1 << 30, coeffs=coeffs,
                    perturb=Perturbation(level=level)),
        ),
    )
