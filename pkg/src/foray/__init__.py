"""foray: loop-nest and affine index expression recovery from memory traces.

The package turns a profiled checkpoint/access trace into a FORAY model:
a C-like abstraction holding only the for loops and array references
whose addresses follow (fully or partially) affine functions of the loop
iterators, plus filtering statistics and inlining hints.
"""

from .inference import AffineExpression, ReferenceState, UNKNOWN
from .model import FilterConfig, ForayModel, InliningHint, ModelStats, analyze
from .emit import emit_c, emit_report, report_dict
from .synth import (ExpectedReference, LoopSpec, NoiseSpec, Perturbation, RefSpec,
                    WorkloadError, WorkloadSpec, check_workload, expected_results,
                    generate_trace, load_workload, random_workload)
from .trace import (AccessKind, CheckpointEvent, LoopDeclaration, MemoryAccessEvent,
                    TraceError, TraceFormatError, TraceParseError, encode_record,
                    open_trace_stream, parse_trace_line, write_trace)
from .loop_tree import LoopNode, StructuralTraceError, TreeCursor

__version__ = "0.1.0"
