"""Trace records and the text trace codec.

A trace file (conventionally ``*.ftrace``) is a line-oriented text format.
It opens with a header of loop declarations that map checkpoint ids to
their role in a loop, followed by the event stream the instrumented
program emitted:

    Loop: 1 begin=12 body=13 end=17
    Loop: 2 begin=15 body=16 end=14
    Checkpoint: 12
    Checkpoint: 13
    Instr: 4002a0 addr: 7fff5934 wr
    ...

Hex fields carry no ``0x`` prefix and are emitted lowercase.  Parsing is
case-insensitive for hex digits and tolerates surrounding whitespace.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from typing import Iterable, Iterator, Optional, Union

MAX_ADDRESS = 2**64


class TraceError(Exception):
    """Base class for trace-level failures; ``line`` is set when known."""

    def __init__(self, message: str, line: Optional[int] = None):
        super().__init__(message)
        self.line = line

    def __str__(self) -> str:
        msg = super().__str__()
        if self.line is not None:
            return f"line {self.line}: {msg}"
        return msg


class TraceParseError(TraceError):
    """A single line did not match the trace grammar."""


class TraceFormatError(TraceError):
    """Line parsed but violates the file-level rules (header section etc.)."""


class AccessKind(enum.Enum):
    READ = "rd"
    WRITE = "wr"


@dataclass(frozen=True)
class CheckpointEvent:
    checkpoint_id: int


@dataclass(frozen=True)
class MemoryAccessEvent:
    instr: int
    addr: int
    kind: AccessKind

    def __post_init__(self):
        if not (0 <= self.instr < MAX_ADDRESS and 0 <= self.addr < MAX_ADDRESS):
            raise ValueError("instruction/memory address out of 64-bit range")


@dataclass(frozen=True)
class LoopDeclaration:
    loop_id: int
    begin_id: int
    body_begin_id: int
    body_end_id: int

    def __post_init__(self):
        ids = (self.begin_id, self.body_begin_id, self.body_end_id)
        if len(set(ids)) != 3:
            raise ValueError(f"loop {self.loop_id}: checkpoint ids not pairwise distinct: {ids}")

    @property
    def checkpoint_ids(self) -> tuple[int, int, int]:
        return (self.begin_id, self.body_begin_id, self.body_end_id)


TraceRecord = Union[CheckpointEvent, MemoryAccessEvent, LoopDeclaration]

_CHECKPOINT_RE = re.compile(r"Checkpoint:\s+(\d+)$")
_ACCESS_RE = re.compile(r"Instr:\s+([0-9A-Fa-f]+)\s+addr:\s+([0-9A-Fa-f]+)\s+(wr|rd)$")
_LOOP_RE = re.compile(r"Loop:\s+(\d+)\s+begin=(\d+)\s+body=(\d+)\s+end=(\d+)$")


def parse_trace_line(line: str) -> Optional[TraceRecord]:
    """Decode one trace line; returns None for blank lines (skip signal)."""
    text = line.strip()
    if not text:
        return None
    m = _ACCESS_RE.fullmatch(text)
    if m:
        instr, addr = int(m.group(1), 16), int(m.group(2), 16)
        if instr >= MAX_ADDRESS or addr >= MAX_ADDRESS:
            raise TraceParseError(f"address out of 64-bit range: {text!r}")
        return MemoryAccessEvent(instr, addr, AccessKind(m.group(3)))
    m = _CHECKPOINT_RE.fullmatch(text)
    if m:
        return CheckpointEvent(int(m.group(1)))
    m = _LOOP_RE.fullmatch(text)
    if m:
        try:
            return LoopDeclaration(*(int(g) for g in m.groups()))
        except ValueError as exc:
            raise TraceParseError(f"bad declaration: {exc}") from None
    raise TraceParseError(f"malformed record: {text!r}")


def encode_record(record: TraceRecord) -> str:
    """Encode a record as one trace line; inverse of parse_trace_line."""
    if isinstance(record, CheckpointEvent):
        return f"Checkpoint: {record.checkpoint_id}"
    if isinstance(record, MemoryAccessEvent):
        return f"Instr: {record.instr:x} addr: {record.addr:x} {record.kind.value}"
    if isinstance(record, LoopDeclaration):
        return (f"Loop: {record.loop_id} begin={record.begin_id} "
                f"body={record.body_begin_id} end={record.body_end_id}")
    raise TypeError(f"not a trace record: {record!r}")


class TraceStream:
    """Single-pass record iterator over a line source.

    Enforces the file-level rules while streaming: the declaration header
    precedes all events, checkpoint ids are not shared between
    declarations, and every checkpoint event refers to a declared id.
    ``line`` tracks the line number of the most recently consumed line,
    so a consumer that fails on a record can report its position.
    """

    def __init__(self, source: Iterable[str]):
        self._lines = iter(source)
        self.line = 0
        self._in_events = False
        self._declared_ids: set[int] = set()

    def __iter__(self) -> "TraceStream":
        return self

    def __next__(self) -> TraceRecord:
        while True:
            line = next(self._lines)
            self.line += 1
            try:
                record = parse_trace_line(line)
            except TraceParseError as exc:
                exc.line = self.line
                raise
            if record is None:
                continue
            self._check(record)
            return record

    def _check(self, record: TraceRecord) -> None:
        if isinstance(record, LoopDeclaration):
            if self._in_events:
                raise TraceFormatError("loop declaration after first event", self.line)
            for cid in record.checkpoint_ids:
                if cid in self._declared_ids:
                    raise TraceFormatError(f"checkpoint id {cid} declared twice", self.line)
                self._declared_ids.add(cid)
        else:
            self._in_events = True
            if isinstance(record, CheckpointEvent):
                if record.checkpoint_id not in self._declared_ids:
                    raise TraceFormatError(
                        f"checkpoint {record.checkpoint_id} not declared in header", self.line)


def open_trace_stream(source: Iterable[str]) -> TraceStream:
    """Wrap a line source (file object, iterable of lines) as a record stream.

    Records are yielded lazily in input order; each input line is read
    exactly once and at most one line is buffered.
    """
    return TraceStream(source)


def write_trace(records: Iterable[TraceRecord], fp) -> int:
    """Write records as trace text; returns the number of lines written."""
    n = 0
    for record in records:
        fp.write(encode_record(record))
        fp.write("\n")
        n += 1
    return n


def iter_trace_lines(records: Iterable[TraceRecord]) -> Iterator[str]:
    for record in records:
        yield encode_record(record)
