"""Incremental affine index expression inference, one state per reference.

Every memory reference (instruction address within one loop-tree context)
is modelled as

    address = const + c_1 * it_1 + c_2 * it_2 + ... + c_N * it_N

where it_1..it_N are the enclosing loop iterators, innermost first, and N
is the nest depth where the reference was first seen.  Coefficients start
unknown and are solved one at a time: when exactly one iterator with an
unknown coefficient changed since the previous access, that coefficient
is the address delta divided by the iterator delta, after compensating
the deltas of iterators whose coefficients are already known.  A
coefficient is learned at most once and never revised.

If two or more unknown-coefficient iterators change simultaneously the
reference is marked non-analyzable, permanently.

After the solving step, the address predicted from the known coefficients
is compared with the actual one.  A mismatch (misprediction) means the
constant term moved underneath us, e.g. a data-dependent base that shifts
whenever some outer loop advances.  Each misprediction flags the levels
whose iterator did NOT change; the expression is then demoted to cover
only the innermost levels below the outermost level that changed in every
misprediction so far.  The result is a partial expression: affine in the
``affine_levels`` innermost iterators, with a constant term that varies
with the outer ones.

Two conventions this module commits to:

  * the compensation term sums c_i * (it_i - prev_it_i), i.e. iterator
    deltas, which keeps learned coefficients exact across inner-loop
    rollbacks while an outer coefficient is still being solved;
  * an inexact coefficient division leaves the slot unknown and falls
    through to misprediction handling (integer-addressed references never
    divide inexactly, so this only triggers on irregular patterns).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

#: Marker for a coefficient slot that has not been solved yet.
UNKNOWN = None


class ReferenceState:
    """Per-reference incremental inference state (one loop-tree context)."""

    __slots__ = ("depth", "affine_levels", "const_term", "first_const", "coeffs",
                 "prev_iters", "prev_addr", "unchanged_at_miss", "non_analyzable",
                 "exec_count", "miss_count", "read_count", "write_count",
                 "addresses", "footprint_cap", "footprint_saturated")

    def __init__(self, iterators: Sequence[int], address: int,
                 footprint_cap: Optional[int] = None):
        n = len(iterators)
        self.depth = n
        self.affine_levels = n
        self.const_term = address
        self.first_const = address
        self.coeffs: List[Optional[int]] = [UNKNOWN] * n
        self.prev_iters = list(iterators)
        self.prev_addr = address
        self.unchanged_at_miss = [False] * n
        self.non_analyzable = False
        self.exec_count = 1
        self.miss_count = 0
        self.read_count = 0
        self.write_count = 0
        self.addresses = {address}
        self.footprint_cap = footprint_cap
        self.footprint_saturated = False

    @property
    def footprint(self) -> int:
        return len(self.addresses)

    def known_coeffs(self) -> Tuple[int, ...]:
        """Coefficients of the covered levels; unsolved slots count as 0."""
        return tuple(c if c is not None else 0
                     for c in self.coeffs[:self.affine_levels])


@dataclass(frozen=True)
class AffineExpression:
    """Finalized (partial) affine expression over the innermost loops.

    ``coeffs`` pairs with ``nest`` innermost-first; ``nest`` holds handles
    of the covered enclosing loops, outermost first, and may be empty for
    a reference outside any loop.  ``partial`` is true when the expression
    covers fewer levels than the reference's nest depth: the base then
    only holds between changes of the uncovered outer iterators.
    """
    base: int
    coeffs: Tuple[int, ...]
    partial: bool
    nest: Tuple = ()

    @property
    def levels(self) -> int:
        return len(self.coeffs)

    def has_iterator(self) -> bool:
        return any(c != 0 for c in self.coeffs)


def init_reference(iterators: Sequence[int], address: int,
                   footprint_cap: Optional[int] = None) -> ReferenceState:
    """State after the first access: constant term set, nothing solved."""
    return ReferenceState(iterators, address, footprint_cap)


def observe_access(state: ReferenceState, iterators: Sequence[int],
                   address: int) -> ReferenceState:
    """Fold one access into the state; every anomaly is absorbed."""
    if state.non_analyzable:
        _bookkeep(state, iterators, address)
        return state

    n = state.depth
    assert len(iterators) == n, "access context changed depth"
    prev = state.prev_iters
    coeffs = state.coeffs

    changed_unknown = [i for i in range(n)
                       if iterators[i] != prev[i] and coeffs[i] is UNKNOWN]

    if len(changed_unknown) > 1:
        state.non_analyzable = True
        _bookkeep(state, iterators, address)
        return state

    if len(changed_unknown) == 1:
        k = changed_unknown[0]
        adjust = 0
        for i in range(n):
            c = coeffs[i]
            if c is not None and iterators[i] != prev[i]:
                adjust += c * (iterators[i] - prev[i])
        numer = address - adjust - state.prev_addr
        denom = iterators[k] - prev[k]
        if numer % denom == 0:
            coeffs[k] = numer // denom
        # else: inexact -> leave unknown, the misprediction path demotes us

    predicted = state.const_term
    for i in range(n):
        c = coeffs[i]
        if c is not None:
            predicted += c * iterators[i]

    if predicted != address:
        state.miss_count += 1
        flags = state.unchanged_at_miss
        for i in range(n):
            if iterators[i] == prev[i]:
                flags[i] = True
        state.const_term += address - predicted
        # Keep the levels strictly below the outermost level that changed
        # its iterator in every misprediction so far.
        m = 0
        for i in range(n):
            if not flags[i]:
                m = i
        state.affine_levels = min(state.affine_levels, m)

    _bookkeep(state, iterators, address)
    return state


def _bookkeep(state: ReferenceState, iterators: Sequence[int], address: int) -> None:
    state.prev_iters = list(iterators)
    state.prev_addr = address
    state.exec_count += 1
    cap = state.footprint_cap
    if cap is not None and len(state.addresses) >= cap:
        if address not in state.addresses:
            state.footprint_saturated = True
    else:
        state.addresses.add(address)


def finalize_expression(state: ReferenceState,
                        context: Sequence = ()) -> Optional[AffineExpression]:
    """Close out a reference once the trace is fully consumed.

    Returns None for a non-analyzable reference.  Unsolved coefficients
    among the covered levels mean the iterator never varied; they are
    emitted as 0 (their fixed contribution already sits in the constant
    term).  Coefficients above the covered levels are discarded.
    ``context`` is the full enclosing loop chain, outermost first; the
    expression keeps its ``affine_levels`` innermost entries.
    """
    if state.non_analyzable:
        return None
    m = state.affine_levels
    nest = tuple(context)[len(context) - m:] if m else ()
    return AffineExpression(
        base=state.const_term,
        coeffs=state.known_coeffs(),
        partial=m < state.depth,
        nest=nest,
    )
