"""Dynamic loop/reference tree reconstruction from the checkpoint stream.

The tree is context-sensitive: one node per (parent node, static loop), so
the same static loop reached from two different enclosing contexts yields
two nodes.  A cursor tracks the stack of currently active loops and moves
on every checkpoint:

  * begin       -- enter the loop as a child of the innermost open loop,
                   closing any finished loops on the way;
  * body-begin  -- start the next iteration of the loop (counter +1);
  * body-end    -- close the current iteration.

There is no explicit loop-exit event; a loop is popped on demand when a
checkpoint arrives that cannot belong to it, and everything still open is
popped at end of trace.  Popping records the entry's trip count.
"""

from __future__ import annotations

import enum
from typing import Dict, Iterable, List, Optional

from .trace import CheckpointEvent, LoopDeclaration, TraceError, TraceFormatError


class StructuralTraceError(TraceError):
    """Checkpoint sequence is inconsistent with any loop nesting."""


class Role(enum.Enum):
    BEGIN = "begin"
    BODY_BEGIN = "body-begin"
    BODY_END = "body-end"


class CheckpointTable:
    """Maps checkpoint ids to (loop id, role), built from the header."""

    def __init__(self, declarations: Iterable[LoopDeclaration]):
        self.roles: Dict[int, tuple[int, Role]] = {}
        self.loops: Dict[int, LoopDeclaration] = {}
        for decl in declarations:
            for cid, role in ((decl.begin_id, Role.BEGIN),
                              (decl.body_begin_id, Role.BODY_BEGIN),
                              (decl.body_end_id, Role.BODY_END)):
                if cid in self.roles:
                    raise TraceFormatError(f"checkpoint id {cid} declared twice")
                self.roles[cid] = (decl.loop_id, role)
            self.loops.setdefault(decl.loop_id, decl)

    def lookup(self, checkpoint_id: int) -> tuple[int, Role]:
        try:
            return self.roles[checkpoint_id]
        except KeyError:
            raise StructuralTraceError(
                f"checkpoint {checkpoint_id} not declared in header") from None


class LoopNode:
    """One dynamic loop context; the root is a virtual node with id None."""

    __slots__ = ("static_loop_id", "begin_id", "children", "references",
                 "iter_value", "entry_count", "trip_min", "trip_max", "body_open")

    def __init__(self, static_loop_id: Optional[int], begin_id: Optional[int]):
        self.static_loop_id = static_loop_id
        self.begin_id = begin_id
        self.children: Dict[int, LoopNode] = {}
        self.references: dict = {}
        self.iter_value = -1
        self.entry_count = 0
        self.trip_min: Optional[int] = None
        self.trip_max: Optional[int] = None
        self.body_open = False

    @property
    def is_root(self) -> bool:
        return self.static_loop_id is None

    def record_trip(self, trips: int) -> None:
        if self.trip_min is None or trips < self.trip_min:
            self.trip_min = trips
        if self.trip_max is None or trips > self.trip_max:
            self.trip_max = trips

    def walk(self, path: tuple = ()):
        """Yield (path, node) depth-first; path excludes the root."""
        here = path if self.is_root else path + (self,)
        if not self.is_root:
            yield here, self
        for child in self.children.values():
            yield from child.walk(here)

    def __repr__(self) -> str:
        return f"LoopNode({self.static_loop_id}, entries={self.entry_count})"


class TreeCursor:
    """Builds the loop tree by replaying checkpoints in trace order."""

    def __init__(self):
        self.root = LoopNode(None, None)
        self.root.body_open = True  # top-level scope never closes
        self.stack: List[LoopNode] = [self.root]
        self.node_count = 0

    @property
    def current(self) -> LoopNode:
        return self.stack[-1]

    @property
    def depth(self) -> int:
        return len(self.stack) - 1

    def apply_checkpoint(self, event: CheckpointEvent, table: CheckpointTable) -> None:
        loop_id, role = table.lookup(event.checkpoint_id)
        if role is Role.BEGIN:
            self._enter(loop_id, table)
        elif role is Role.BODY_BEGIN:
            node = self._pop_to(loop_id, event.checkpoint_id)
            node.iter_value += 1
            node.body_open = True
        else:
            node = self._pop_to(loop_id, event.checkpoint_id)
            node.body_open = False

    def _enter(self, loop_id: int, table: CheckpointTable) -> None:
        # Re-entry without an intervening close: pop through the old node.
        while any(n.static_loop_id == loop_id for n in self.stack[1:]):
            self._pop()
        # Loops whose body is closed are finished; the new loop cannot
        # nest under them (this also retires begin-only abandoned loops).
        while not self.current.body_open:
            self._pop()
        parent = self.current
        node = parent.children.get(loop_id)
        if node is None:
            node = LoopNode(loop_id, table.loops[loop_id].begin_id)
            parent.children[loop_id] = node
            self.node_count += 1
        node.iter_value = -1
        node.body_open = False
        node.entry_count += 1
        self.stack.append(node)

    def _pop_to(self, loop_id: int, checkpoint_id: int) -> LoopNode:
        if not any(n.static_loop_id == loop_id for n in self.stack[1:]):
            raise StructuralTraceError(
                f"checkpoint {checkpoint_id} for loop {loop_id} which is not active")
        while self.current.static_loop_id != loop_id:
            self._pop()
        return self.current

    def _pop(self) -> None:
        node = self.stack.pop()
        node.record_trip(node.iter_value + 1)

    def finish(self) -> None:
        """End of trace: close everything still on the stack."""
        while len(self.stack) > 1:
            self._pop()

    def iterator_vector(self) -> List[int]:
        """Current iterator values, innermost first, excluding the root."""
        return [n.iter_value for n in reversed(self.stack[1:])]

    def locate_reference(self, instr: int):
        """Reference state for instr in the current context, or None."""
        return self.current.references.get(instr)

    def bind_reference(self, instr: int, state) -> None:
        self.current.references[instr] = state
