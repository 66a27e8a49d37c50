"""Synthetic workload generation and the independent ground-truth oracle.

A workload describes a loop-nest program declaratively: a tree of loops
(static id, checkpoint triple, trip counts) plus memory references
attached to tree nodes with a true base address and true integer
coefficients, innermost first.  ``generate_trace`` interprets it into a
well-formed record stream; ``expected_results`` derives what the analyzer
must find for every reference, by brute force over the enumerated access
list rather than by mirroring the incremental algorithm.

Reference flavours:

  * plain       -- address = base + sum(coeffs[i] * it[i])
  * perturbed   -- additionally shifted by an offset that is redrawn each
                   time the iterators at or above ``level`` change; this
                   models a data-dependent base (local arrays, pointer
                   parameters) that defeats a single affine function but
                   leaves the inner levels regular
  * noise       -- uniformly random address per access

The canonical file format is JSON (see ``workload_from_dict``).
"""

from __future__ import annotations

import itertools
import json
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterator, List, Optional, Sequence, Tuple, Union

from .model import (CATEGORY_INCLUDED, CATEGORY_PURGED, FilterConfig, ForayModel,
                    REASON_NO_ITERATOR, REASON_TOO_FEW_EXECUTIONS,
                    REASON_TOO_FEW_LOCATIONS, analyze)
from .trace import (AccessKind, CheckpointEvent, LoopDeclaration, MAX_ADDRESS,
                    MemoryAccessEvent, TraceRecord)

WORKLOAD_VERSION = 1
DEFAULT_OFFSET_RANGE = (1, 1 << 20)


class WorkloadError(Exception):
    """Invalid workload; ``errors`` lists every violation with its path."""

    def __init__(self, errors: Sequence[str]):
        super().__init__("; ".join(errors))
        self.errors = list(errors)


@dataclass(frozen=True)
class Perturbation:
    level: int
    offsets: Optional[Tuple[int, ...]] = None
    offset_range: Tuple[int, int] = DEFAULT_OFFSET_RANGE


@dataclass(frozen=True)
class RefSpec:
    instr: int
    loop_path: Tuple[int, ...]
    base: int
    coeffs: Tuple[int, ...]
    kind: AccessKind = AccessKind.WRITE
    perturb: Optional[Perturbation] = None


@dataclass(frozen=True)
class NoiseSpec:
    instr: int
    loop_path: Tuple[int, ...]
    addr_range: Tuple[int, int] = (0, 1 << 32)
    kind: AccessKind = AccessKind.READ


@dataclass(frozen=True)
class LoopSpec:
    loop_id: int
    begin: int
    body: int
    end: int
    trips: Union[int, Tuple[int, ...]] = 1
    children: Tuple["LoopSpec", ...] = ()

    def trip_for_entry(self, entry: int) -> int:
        if isinstance(self.trips, int):
            return self.trips
        return self.trips[entry % len(self.trips)]


@dataclass(frozen=True)
class WorkloadSpec:
    loops: Tuple[LoopSpec, ...]
    references: Tuple[RefSpec, ...] = ()
    noise: Tuple[NoiseSpec, ...] = ()


# ---------------------------------------------------------------------------
# validation and (de)serialization

def validate_workload(spec: WorkloadSpec) -> List[str]:
    errors: List[str] = []
    decl_by_id: Dict[int, Tuple[int, int, int]] = {}
    seen_checkpoints: Dict[int, int] = {}  # checkpoint id -> loop id
    paths: set = set()

    def visit(loop: LoopSpec, path: Tuple[int, ...], where: str) -> None:
        if loop.loop_id in path:
            errors.append(f"{where}: loop {loop.loop_id} nested inside itself")
            return
        here = path + (loop.loop_id,)
        paths.add(here)
        triple = (loop.begin, loop.body, loop.end)
        if len(set(triple)) != 3:
            errors.append(f"{where}: checkpoint ids not pairwise distinct: {triple}")
        prior = decl_by_id.get(loop.loop_id)
        if prior is None:
            decl_by_id[loop.loop_id] = triple
            for cid in triple:
                owner = seen_checkpoints.get(cid)
                if owner is not None and owner != loop.loop_id:
                    errors.append(f"{where}: checkpoint id {cid} already used by loop {owner}")
                seen_checkpoints[cid] = loop.loop_id
        elif prior != triple:
            errors.append(f"{where}: loop {loop.loop_id} redeclared with different "
                          f"checkpoints {triple} (was {prior})")
        trips = loop.trips if isinstance(loop.trips, tuple) else (loop.trips,)
        if not trips or any(not isinstance(t, int) or t < 0 for t in trips):
            errors.append(f"{where}.trips: must be a non-negative int or non-empty list")
        child_ids = [c.loop_id for c in loop.children]
        if len(child_ids) != len(set(child_ids)):
            errors.append(f"{where}.children: duplicate child loop id")
        for i, child in enumerate(loop.children):
            visit(child, here, f"{where}.children[{i}]")

    top_ids = [l.loop_id for l in spec.loops]
    if len(top_ids) != len(set(top_ids)):
        errors.append("loops: duplicate top-level loop id")
    for i, loop in enumerate(spec.loops):
        visit(loop, (), f"loops[{i}]")

    seen_keys: set = set()
    for kind_name, items in (("references", spec.references), ("noise", spec.noise)):
        for i, ref in enumerate(items):
            where = f"{kind_name}[{i}]"
            if not ref.loop_path:
                errors.append(f"{where}.loop_path: must not be empty")
                continue
            if tuple(ref.loop_path) not in paths:
                errors.append(f"{where}.loop_path: no loop at path {list(ref.loop_path)}")
                continue
            key = (tuple(ref.loop_path), ref.instr)
            if key in seen_keys:
                errors.append(f"{where}: duplicate reference {ref.instr:#x} at this path")
            seen_keys.add(key)
            if not (0 <= ref.instr < MAX_ADDRESS):
                errors.append(f"{where}.instr: out of 64-bit range")
            if isinstance(ref, RefSpec):
                if len(ref.coeffs) != len(ref.loop_path):
                    errors.append(f"{where}.coeffs: length {len(ref.coeffs)} != "
                                  f"attachment depth {len(ref.loop_path)}")
                if not (0 <= ref.base < MAX_ADDRESS):
                    errors.append(f"{where}.base: out of 64-bit range")
                if ref.perturb is not None:
                    p = ref.perturb
                    if not (1 <= p.level <= len(ref.loop_path)):
                        errors.append(f"{where}.perturb.level: must be in 1..{len(ref.loop_path)}")
                    if p.offsets is not None and len(p.offsets) == 0:
                        errors.append(f"{where}.perturb.offsets: must not be empty")
                    if p.offsets is None and p.offset_range[0] >= p.offset_range[1]:
                        errors.append(f"{where}.perturb.range: empty range")
            else:
                lo, hi = ref.addr_range
                if not (0 <= lo < hi <= MAX_ADDRESS):
                    errors.append(f"{where}.range: invalid address range")
    return errors


def workload_from_dict(doc: dict) -> WorkloadSpec:
    errors: List[str] = []

    def intval(obj, key, where, default=None, hex_ok=False):
        if key not in obj:
            if default is not None:
                return default
            errors.append(f"{where}.{key}: missing")
            return 0
        v = obj[key]
        if hex_ok and isinstance(v, str):
            try:
                return int(v, 16)
            except ValueError:
                errors.append(f"{where}.{key}: not a hex string: {v!r}")
                return 0
        if not isinstance(v, int) or isinstance(v, bool):
            errors.append(f"{where}.{key}: expected integer")
            return 0
        return v

    def parse_loop(obj, where) -> LoopSpec:
        trips = obj.get("trips", 1)
        if isinstance(trips, list):
            trips = tuple(trips)
        children = tuple(parse_loop(c, f"{where}.children[{i}]")
                         for i, c in enumerate(obj.get("children", ())))
        return LoopSpec(
            loop_id=intval(obj, "loop_id", where),
            begin=intval(obj, "begin", where),
            body=intval(obj, "body", where),
            end=intval(obj, "end", where),
            trips=trips,
            children=children,
        )

    def parse_kind(obj, where) -> AccessKind:
        raw = obj.get("kind", "wr")
        try:
            return AccessKind(raw)
        except ValueError:
            errors.append(f"{where}.kind: expected 'rd' or 'wr', got {raw!r}")
            return AccessKind.WRITE

    loops = tuple(parse_loop(o, f"loops[{i}]") for i, o in enumerate(doc.get("loops", ())))

    references = []
    for i, obj in enumerate(doc.get("references", ())):
        where = f"references[{i}]"
        perturb = None
        if obj.get("perturb") is not None:
            p = obj["perturb"]
            offsets = tuple(p["offsets"]) if "offsets" in p else None
            rng = tuple(p.get("range", DEFAULT_OFFSET_RANGE))
            perturb = Perturbation(level=intval(p, "level", f"{where}.perturb"),
                                   offsets=offsets, offset_range=rng)
        references.append(RefSpec(
            instr=intval(obj, "instr", where, hex_ok=True),
            loop_path=tuple(obj.get("loop_path", ())),
            base=intval(obj, "base", where),
            coeffs=tuple(obj.get("coeffs", ())),
            kind=parse_kind(obj, where),
            perturb=perturb,
        ))

    noise = []
    for i, obj in enumerate(doc.get("noise", ())):
        where = f"noise[{i}]"
        noise.append(NoiseSpec(
            instr=intval(obj, "instr", where, hex_ok=True),
            loop_path=tuple(obj.get("loop_path", ())),
            addr_range=tuple(obj.get("range", (0, 1 << 32))),
            kind=parse_kind(obj, where),
        ))

    spec = WorkloadSpec(loops=loops, references=tuple(references), noise=tuple(noise))
    errors.extend(validate_workload(spec))
    if errors:
        raise WorkloadError(errors)
    return spec


def workload_to_dict(spec: WorkloadSpec) -> dict:
    def loop_dict(loop: LoopSpec) -> dict:
        out = {"loop_id": loop.loop_id, "begin": loop.begin, "body": loop.body,
               "end": loop.end,
               "trips": list(loop.trips) if isinstance(loop.trips, tuple) else loop.trips}
        if loop.children:
            out["children"] = [loop_dict(c) for c in loop.children]
        return out

    doc = {"version": WORKLOAD_VERSION,
           "loops": [loop_dict(l) for l in spec.loops]}
    if spec.references:
        doc["references"] = []
        for ref in spec.references:
            entry = {"instr": f"{ref.instr:x}", "loop_path": list(ref.loop_path),
                     "base": ref.base, "coeffs": list(ref.coeffs),
                     "kind": ref.kind.value}
            if ref.perturb:
                p = {"level": ref.perturb.level}
                if ref.perturb.offsets is not None:
                    p["offsets"] = list(ref.perturb.offsets)
                else:
                    p["range"] = list(ref.perturb.offset_range)
                entry["perturb"] = p
            doc["references"].append(entry)
    if spec.noise:
        doc["noise"] = [{"instr": f"{n.instr:x}", "loop_path": list(n.loop_path),
                         "range": list(n.addr_range), "kind": n.kind.value}
                        for n in spec.noise]
    return doc


def load_workload(path: str) -> WorkloadSpec:
    with open(path, "r", encoding="utf-8") as fp:
        return workload_from_dict(json.load(fp))


# ---------------------------------------------------------------------------
# trace generation

def _derive_seed(seed: int, index: int) -> int:
    return (seed * 1_000_003 + index * 7919 + 17) & (2**63 - 1)


class _RefGen:
    """Address generator for one attached reference."""

    def __init__(self, ref: Union[RefSpec, NoiseSpec], seed: int, index: int):
        self.ref = ref
        self.key = (tuple(ref.loop_path), ref.instr)
        if isinstance(ref, NoiseSpec):
            self._rng = random.Random(_derive_seed(seed, index))
        elif ref.perturb is not None:
            p = ref.perturb
            if p.offsets is not None:
                self._offsets = itertools.cycle(p.offsets)
                self._rng = None
            else:
                self._rng = random.Random(_derive_seed(seed, index))
            self._last = None
            self._current = 0

    def address(self, iterators: Tuple[int, ...]) -> int:
        ref = self.ref
        if isinstance(ref, NoiseSpec):
            return self._rng.randrange(*ref.addr_range)
        addr = ref.base + sum(c * v for c, v in zip(ref.coeffs, iterators))
        if ref.perturb is not None:
            outer = iterators[ref.perturb.level - 1:]
            if outer != self._last:
                self._last = outer
                if self._rng is not None:
                    self._current = self._rng.randrange(*ref.perturb.offset_range)
                else:
                    self._current = next(self._offsets)
            addr += self._current
        if not (0 <= addr < MAX_ADDRESS):
            raise WorkloadError([f"reference {ref.instr:#x}: generated address "
                                 f"{addr} outside 64-bit range"])
        return addr


def _walk(spec: WorkloadSpec, seed: int) -> Iterator[tuple]:
    """Yield ('c', checkpoint_id) and ('a', gen, iterators, addr) events."""
    attached: Dict[Tuple[int, ...], List[_RefGen]] = {}
    for index, ref in enumerate(tuple(spec.references) + tuple(spec.noise)):
        gen = _RefGen(ref, seed, index)
        attached.setdefault(tuple(ref.loop_path), []).append(gen)
    entries: Dict[Tuple[int, ...], int] = {}

    def run(loop: LoopSpec, outer: Tuple[int, ...], path: Tuple[int, ...]) -> Iterator[tuple]:
        here = path + (loop.loop_id,)
        yield ("c", loop.begin)
        entry = entries.get(here, 0)
        entries[here] = entry + 1
        for i in range(loop.trip_for_entry(entry)):
            yield ("c", loop.body)
            current = outer + (i,)
            iterators = current[::-1]  # innermost first
            for gen in attached.get(here, ()):
                yield ("a", gen, iterators, gen.address(iterators))
            for child in loop.children:
                yield from run(child, current, here)
            yield ("c", loop.end)

    for loop in spec.loops:
        yield from run(loop, (), ())


def loop_declarations(spec: WorkloadSpec) -> List[LoopDeclaration]:
    decls: List[LoopDeclaration] = []
    seen: set = set()

    def visit(loop: LoopSpec) -> None:
        if loop.loop_id not in seen:
            seen.add(loop.loop_id)
            decls.append(LoopDeclaration(loop.loop_id, loop.begin, loop.body, loop.end))
        for child in loop.children:
            visit(child)

    for loop in spec.loops:
        visit(loop)
    return decls


def generate_trace(spec: WorkloadSpec, seed: int = 0) -> Iterator[TraceRecord]:
    """Records of one profiling run: declarations header, then events.

    Deterministic for (spec, seed); lazy, so arbitrarily long workloads
    stream without materializing.
    """
    errors = validate_workload(spec)
    if errors:
        raise WorkloadError(errors)
    yield from loop_declarations(spec)
    for event in _walk(spec, seed):
        if event[0] == "c":
            yield CheckpointEvent(event[1])
        else:
            _, gen, _, addr = event
            yield MemoryAccessEvent(gen.ref.instr, addr, gen.ref.kind)


# ---------------------------------------------------------------------------
# brute-force oracle

@dataclass(frozen=True)
class ExpectedReference:
    instr: int
    context: Tuple[int, ...]
    category: str
    purge_reason: Optional[str]
    exec_count: int
    footprint: int
    # None when no affine fit of any width exists
    levels: Optional[int] = None
    coeffs: Optional[Tuple[int, ...]] = None
    base: Optional[int] = None
    partial: Optional[bool] = None


def _solve_exact(rows: List[Tuple[Tuple[int, ...], int]], width: int) -> Optional[List[Fraction]]:
    """Exact rational solution of rows (vec . x = rhs); free vars = 0."""
    pivots: List[Tuple[int, List[Fraction]]] = []
    for vec, rhs in rows:
        row = [Fraction(v) for v in vec] + [Fraction(rhs)]
        for col, prow in pivots:
            if row[col]:
                factor = row[col] / prow[col]
                row = [a - factor * b for a, b in zip(row, prow)]
        lead = next((j for j in range(width) if row[j]), None)
        if lead is None:
            if row[width]:
                return None
            continue
        pivots.append((lead, row))
    solution = [Fraction(0)] * width
    for col, row in sorted(pivots, reverse=True):
        rest = sum(row[j] * solution[j] for j in range(col + 1, width))
        solution[col] = (row[width] - rest) / row[col]
    return solution


def _try_fit(accesses: List[Tuple[Tuple[int, ...], int]], m: int) -> Optional[Tuple[Tuple[int, ...], int]]:
    """Fit addr = const(outer) + sum(c[i]*it[i], i<m) with shared integer
    coefficients and one constant per outer-iterator tuple; returns
    (coeffs, const of the first access's group) or None."""
    groups: Dict[Tuple[int, ...], List[Tuple[Tuple[int, ...], int]]] = {}
    for it, addr in accesses:
        groups.setdefault(it[m:], []).append((it[:m], addr))

    rows: List[Tuple[Tuple[int, ...], int]] = []
    for members in groups.values():
        it0, addr0 = members[0]
        for it, addr in members[1:]:
            rows.append((tuple(a - b for a, b in zip(it, it0)), addr - addr0))
    solution = _solve_exact(rows, m)
    if solution is None or any(c.denominator != 1 for c in solution):
        return None
    coeffs = tuple(int(c) for c in solution)

    first_const = None
    for key, members in groups.items():
        it0, addr0 = members[0]
        const = addr0 - sum(c * v for c, v in zip(coeffs, it0))
        if first_const is None:
            first_const = const  # insertion order: first group holds the first access
        for it, addr in members:
            if addr != const + sum(c * v for c, v in zip(coeffs, it)):
                return None
    return coeffs, first_const


def _affine_fit(accesses: List[Tuple[Tuple[int, ...], int]], depth: int):
    for m in range(depth, -1, -1):
        fit = _try_fit(accesses, m)
        if fit is not None:
            return m, fit[0], fit[1]
    return None


def expected_results(spec: WorkloadSpec, seed: int = 0,
                     config: Optional[FilterConfig] = None) -> Dict[tuple, ExpectedReference]:
    """Ground truth per reference, keyed by (loop path, instr).

    Category and purge reason apply the same three filter predicates the
    analyzer uses, to the brute-force fit.  References that never execute
    are absent (the analyzer never sees them).
    """
    cfg = config or FilterConfig()
    accesses: Dict[tuple, List[Tuple[Tuple[int, ...], int]]] = {}
    for event in _walk(spec, seed):
        if event[0] == "a":
            _, gen, iterators, addr = event
            accesses.setdefault(gen.key, []).append((iterators, addr))

    out: Dict[tuple, ExpectedReference] = {}
    for key, acc in accesses.items():
        path, instr = key
        depth = len(path)
        exec_count = len(acc)
        footprint = len({addr for _, addr in acc})
        fit = _affine_fit(acc, depth)
        if fit is None:
            out[key] = ExpectedReference(
                instr=instr, context=path, category=CATEGORY_PURGED,
                purge_reason=REASON_NO_ITERATOR,
                exec_count=exec_count, footprint=footprint)
            continue
        m, coeffs, base = fit
        reason = None
        if cfg.require_iterator and not any(c != 0 for c in coeffs):
            reason = REASON_NO_ITERATOR
        elif exec_count < cfg.n_exec:
            reason = REASON_TOO_FEW_EXECUTIONS
        elif footprint < cfg.n_loc:
            reason = REASON_TOO_FEW_LOCATIONS
        out[key] = ExpectedReference(
            instr=instr, context=path,
            category=CATEGORY_INCLUDED if reason is None else CATEGORY_PURGED,
            purge_reason=reason,
            exec_count=exec_count, footprint=footprint,
            levels=m, coeffs=coeffs, base=base, partial=m < depth)
    return out


def diff_model(model: ForayModel, expected: Dict[tuple, ExpectedReference]) -> List[str]:
    """Per-reference differences between analyzer output and the oracle."""
    got = {(r.context, r.instr): r for r in model.references}
    msgs: List[str] = []

    def label(key):
        path, instr = key
        return f"ref {instr:x} at {list(path)}"

    for key, exp in expected.items():
        ref = got.pop(key, None)
        if ref is None:
            msgs.append(f"{label(key)}: missing from model")
            continue
        if ref.category != exp.category:
            msgs.append(f"{label(key)}: category {ref.category} != expected {exp.category}")
        if exp.purge_reason is not None and ref.purge_reason != exp.purge_reason:
            msgs.append(f"{label(key)}: purge reason {ref.purge_reason} != "
                        f"expected {exp.purge_reason}")
        if ref.exec_count != exp.exec_count:
            msgs.append(f"{label(key)}: exec_count {ref.exec_count} != {exp.exec_count}")
        if ref.footprint != exp.footprint:
            msgs.append(f"{label(key)}: footprint {ref.footprint} != {exp.footprint}")
        if exp.levels is None:
            continue
        expr = ref.expression
        if expr is None:
            msgs.append(f"{label(key)}: non-analyzable but oracle fit {exp.levels} levels")
            continue
        if expr.levels != exp.levels:
            msgs.append(f"{label(key)}: levels {expr.levels} != expected {exp.levels}")
            continue
        if tuple(expr.coeffs) != tuple(exp.coeffs):
            msgs.append(f"{label(key)}: coeffs {list(expr.coeffs)} != {list(exp.coeffs)}")
        got_base = ref.state.first_const if expr.partial else expr.base
        if got_base != exp.base:
            msgs.append(f"{label(key)}: base {got_base} != expected {exp.base}")
        if expr.partial != exp.partial:
            msgs.append(f"{label(key)}: partial {expr.partial} != {exp.partial}")
    for key in got:
        msgs.append(f"{label(key)}: unexpected reference in model")
    return msgs


# ---------------------------------------------------------------------------
# randomized workload family (property tests / check harness)

def random_workload(seed: int, max_depth: int = 4,
                    trip_range: Tuple[int, int] = (2, 20),
                    coeff_range: Tuple[int, int] = (-256, 256),
                    iteration_budget: int = 2500) -> WorkloadSpec:
    """A seeded random workload: 1-2 loop nests with occasional sibling
    branches, plain/perturbed references, and sometimes a noise reference.

    Trip counts are drawn from trip_range but the per-nest iteration
    product is capped by iteration_budget to keep traces desk-sized.
    """
    rng = random.Random(seed)
    next_checkpoint = itertools.count(10)
    next_loop = itertools.count(1)
    next_instr = itertools.count(0x400000, 0x10)

    def make_loop(depth_left: int, product: int) -> LoopSpec:
        allowed = max(2, min(trip_range[1], iteration_budget // max(product, 1)))
        trip = rng.randint(trip_range[0], allowed) if allowed >= trip_range[0] else trip_range[0]
        if rng.random() < 0.15:
            trips: Union[int, Tuple[int, ...]] = tuple(
                rng.randint(trip_range[0], max(trip_range[0], trip))
                for _ in range(rng.randint(2, 3)))
            worst = max(trips)
        else:
            trips, worst = trip, trip
        children = []
        if depth_left > 1:
            n_children = rng.choices([0, 1, 2], weights=[2, 6, 1])[0]
            for _ in range(n_children):
                children.append(make_loop(depth_left - 1, product * worst))
        return LoopSpec(
            loop_id=next(next_loop),
            begin=next(next_checkpoint),
            body=next(next_checkpoint),
            end=next(next_checkpoint),
            trips=trips,
            children=tuple(children),
        )

    loops = tuple(make_loop(rng.randint(1, max_depth), 1)
                  for _ in range(rng.choices([1, 2], weights=[3, 1])[0]))

    node_paths: List[Tuple[int, ...]] = []

    def collect(loop: LoopSpec, path: Tuple[int, ...]) -> None:
        here = path + (loop.loop_id,)
        node_paths.append(here)
        for child in loop.children:
            collect(child, here)

    for loop in loops:
        collect(loop, ())

    references: List[RefSpec] = []
    for _ in range(rng.randint(1, 3)):
        path = rng.choice(node_paths)
        depth = len(path)
        coeffs = tuple(rng.randint(*coeff_range) for _ in range(depth))
        perturb = None
        if depth >= 2 and rng.random() < 0.3:
            perturb = Perturbation(level=rng.randint(2, depth))
        elif rng.random() < 0.05:
            perturb = Perturbation(level=1)
        references.append(RefSpec(
            instr=next(next_instr),
            loop_path=path,
            base=rng.randrange(1 << 20, 1 << 40),
            coeffs=coeffs,
            kind=rng.choice((AccessKind.READ, AccessKind.WRITE)),
            perturb=perturb,
        ))

    noise: List[NoiseSpec] = []
    if rng.random() < 0.25:
        lo = rng.randrange(1 << 20, 1 << 32)
        noise.append(NoiseSpec(instr=next(next_instr),
                               loop_path=rng.choice(node_paths),
                               addr_range=(lo, lo + (1 << 20))))

    return WorkloadSpec(loops=loops, references=tuple(references), noise=tuple(noise))


def check_workload(spec: WorkloadSpec, seed: int = 0,
                   config: Optional[FilterConfig] = None,
                   footprint_cap: Optional[int] = None) -> Tuple[ForayModel, List[str]]:
    """Generate, analyze, and diff against the oracle (cmd_check core)."""
    model = analyze(generate_trace(spec, seed), config, footprint_cap=footprint_cap)
    expected = expected_results(spec, seed, config)
    return model, diff_model(model, expected)
