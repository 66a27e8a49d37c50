"""Trace codec: grammar, round-trip, stream rules, single-pass contract."""

import io

import pytest
from hypothesis import given
from hypothesis import strategies as st

from foray.trace import (AccessKind, CheckpointEvent, LoopDeclaration,
                         MemoryAccessEvent, TraceFormatError, TraceParseError,
                         encode_record, iter_trace_lines, open_trace_stream,
                         parse_trace_line, write_trace)

# Mid-run excerpt: note the opening begin checkpoint (15) that is abandoned
# before its body ever starts -- the stream layer must pass it through
# untouched (tolerance is the tree builder's job).
EXCERPT_LINES = [
    "Checkpoint: 15",
    "Checkpoint: 12",
    "Checkpoint: 13",
    "Checkpoint: 15",
    "Checkpoint: 16",
    "Instr: 4002a0 addr: 7fff599b wr",
    "Checkpoint: 14",
    "Checkpoint: 16",
    "Instr: 4002a0 addr: 7fff5934 wr",
    "Checkpoint: 14",
    "Checkpoint: 16",
    "Instr: 4002a0 addr: 7fff5935 wr",
    "Checkpoint: 14",
    "Checkpoint: 16",
    "Instr: 4002a0 addr: 7fff5936 wr",
    "Checkpoint: 14",
    "Checkpoint: 17",
]

HEADER_LINES = [
    "Loop: 1 begin=12 body=13 end=17",
    "Loop: 2 begin=15 body=16 end=14",
]


def test_parse_checkpoint():
    assert parse_trace_line("Checkpoint: 15") == CheckpointEvent(15)


def test_parse_access():
    rec = parse_trace_line("Instr: 4002a0 addr: 7fff5934 wr")
    assert rec == MemoryAccessEvent(0x4002A0, 0x7FFF5934, AccessKind.WRITE)


def test_parse_access_read_and_case_insensitive_hex():
    rec = parse_trace_line("Instr: 4002A0 addr: 7FFF5934 rd")
    assert rec == MemoryAccessEvent(0x4002A0, 0x7FFF5934, AccessKind.READ)


def test_parse_declaration():
    rec = parse_trace_line("Loop: 1 begin=12 body=13 end=17")
    assert rec == LoopDeclaration(1, 12, 13, 17)


def test_parse_tolerates_surrounding_whitespace():
    assert parse_trace_line("  Checkpoint: 7  \n") == CheckpointEvent(7)


def test_parse_blank_line_is_skip():
    assert parse_trace_line("   \n") is None


@pytest.mark.parametrize("line", [
    "Chkpt 15",
    "Checkpoint: xyz",
    "Instr: 4002a0 addr: 7fff5934",       # missing kind
    "Instr: 4002a0 addr: 7fff5934 write",  # bad kind token
    "Loop: 1 begin=12 body=13",
    "Instr: 0x4002a0 addr: 7fff5934 wr",  # no 0x prefixes in the format
])
def test_parse_malformed(line):
    with pytest.raises(TraceParseError):
        parse_trace_line(line)


def test_parse_rejects_duplicate_roles_in_declaration():
    with pytest.raises(TraceParseError):
        parse_trace_line("Loop: 1 begin=5 body=5 end=7")


def test_parse_rejects_oversized_address():
    with pytest.raises(TraceParseError):
        parse_trace_line(f"Instr: 1 addr: {'f' * 17} wr")


def test_encode_examples():
    assert encode_record(CheckpointEvent(13)) == "Checkpoint: 13"
    assert encode_record(MemoryAccessEvent(0x4002A0, 0x7FFF5935, AccessKind.WRITE)) == \
        "Instr: 4002a0 addr: 7fff5935 wr"
    assert encode_record(LoopDeclaration(1, 12, 13, 17)) == \
        "Loop: 1 begin=12 body=13 end=17"


checkpoint_records = st.builds(CheckpointEvent, st.integers(0, 2**32))
access_records = st.builds(
    MemoryAccessEvent,
    st.integers(0, 2**64 - 1),
    st.integers(0, 2**64 - 1),
    st.sampled_from(list(AccessKind)),
)
declaration_records = st.builds(
    lambda ids, loop: LoopDeclaration(loop, *ids),
    st.lists(st.integers(0, 2**20), min_size=3, max_size=3, unique=True),
    st.integers(0, 2**20),
)


@given(st.one_of(checkpoint_records, access_records, declaration_records))
def test_codec_round_trip(record):
    assert parse_trace_line(encode_record(record)) == record


def test_stream_yields_records_in_order():
    records = list(open_trace_stream(iter(HEADER_LINES + EXCERPT_LINES)))
    assert len(records) == 19
    assert records[:2] == [LoopDeclaration(1, 12, 13, 17), LoopDeclaration(2, 15, 16, 14)]
    assert records[2] == CheckpointEvent(15)
    assert records[7] == MemoryAccessEvent(0x4002A0, 0x7FFF599B, AccessKind.WRITE)


def test_stream_empty_source():
    assert list(open_trace_stream(iter([]))) == []


def test_stream_skips_blank_lines():
    lines = HEADER_LINES + [""] + EXCERPT_LINES[:3] + ["   "]
    records = list(open_trace_stream(iter(lines)))
    assert len(records) == 5


def test_stream_parse_error_carries_line_number():
    lines = HEADER_LINES + ["Checkpoint: 12", "Chkpt 15"]
    with pytest.raises(TraceParseError) as exc:
        list(open_trace_stream(iter(lines)))
    assert exc.value.line == 4
    assert "malformed record" in str(exc.value)


def test_stream_rejects_declaration_after_event():
    lines = HEADER_LINES + ["Checkpoint: 12", "Loop: 3 begin=1 body=2 end=3"]
    with pytest.raises(TraceFormatError) as exc:
        list(open_trace_stream(iter(lines)))
    assert exc.value.line == 4


def test_stream_rejects_undeclared_checkpoint():
    lines = HEADER_LINES + ["Checkpoint: 99"]
    with pytest.raises(TraceFormatError) as exc:
        list(open_trace_stream(iter(lines)))
    assert exc.value.line == 3
    assert "not declared" in str(exc.value)


def test_stream_rejects_checkpoint_id_shared_between_declarations():
    lines = ["Loop: 1 begin=12 body=13 end=17", "Loop: 2 begin=15 body=13 end=14"]
    with pytest.raises(TraceFormatError):
        list(open_trace_stream(iter(lines)))


class _CountingSource:
    """Line iterator that counts how many lines have been served."""

    def __init__(self, lines):
        self._it = iter(lines)
        self.served = 0

    def __iter__(self):
        return self

    def __next__(self):
        line = next(self._it)
        self.served += 1
        return line


def test_stream_is_single_pass_and_lazy():
    source = _CountingSource(HEADER_LINES + EXCERPT_LINES)
    stream = open_trace_stream(source)
    for _ in range(4):
        next(stream)
    # one line consumed per record, none re-read, none read ahead
    assert source.served == 4
    rest = list(stream)
    assert source.served == len(HEADER_LINES) + len(EXCERPT_LINES)
    assert len(rest) == 15


def test_write_trace_round_trips_through_file(tmp_path):
    records = list(open_trace_stream(iter(HEADER_LINES + EXCERPT_LINES)))
    path = tmp_path / "sample.ftrace"
    with open(path, "w") as fp:
        assert write_trace(records, fp) == 19
    with open(path) as fp:
        again = list(open_trace_stream(fp))
    assert again == records


def test_iter_trace_lines_matches_encode():
    records = [CheckpointEvent(1)]
    assert list(iter_trace_lines(records)) == ["Checkpoint: 1"]
