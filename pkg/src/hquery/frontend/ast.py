"""Syntax tree node types.

Nodes are frozen dataclasses compared structurally; the ``pos`` field
(line, column) is carried for diagnostics but ignored by ``==``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

Pos = Optional[tuple]


def _pos():
    return field(default=None, compare=False, repr=False)


class Node:
    __slots__ = ()


@dataclass(frozen=True)
class Script(Node):
    statements: tuple
    pos: Pos = _pos()


@dataclass(frozen=True)
class Assign(Node):
    name: str
    ttl: object  # seconds (int or float) for temporal variables, else None
    expr: Node
    pos: Pos = _pos()


@dataclass(frozen=True, eq=False)
class Literal(Node):
    value: object
    pos: Pos = _pos()

    def __eq__(self, other):
        if not isinstance(other, Literal):
            return NotImplemented
        return type(self.value) is type(other.value) and self.value == other.value

    def __hash__(self):
        return hash((type(self.value), self.value))


@dataclass(frozen=True)
class ListExpr(Node):
    items: tuple
    pos: Pos = _pos()


@dataclass(frozen=True)
class Var(Node):
    name: str
    pos: Pos = _pos()


@dataclass(frozen=True)
class ThisRef(Node):
    source: Optional[str] = None
    pos: Pos = _pos()


@dataclass(frozen=True)
class Call(Node):
    name: str
    args: tuple
    pos: Pos = _pos()


@dataclass(frozen=True)
class BinOp(Node):
    op: str
    left: Node
    right: Node
    pos: Pos = _pos()


@dataclass(frozen=True)
class UnOp(Node):
    op: str  # "-" or "NOT"
    operand: Node
    pos: Pos = _pos()


@dataclass(frozen=True)
class If(Node):
    cond: Node
    then: tuple
    orelse: Optional[tuple] = None
    pos: Pos = _pos()


@dataclass(frozen=True)
class Source(Node):
    name: Optional[str]
    expr: Node


@dataclass(frozen=True)
class OrderItem(Node):
    expr: Node
    descending: bool = False
    # explicit ASC is remembered so printing reproduces the input
    explicit: bool = field(default=False, compare=False)


@dataclass(frozen=True)
class Binding(Node):
    name: str
    expr: Node


@dataclass(frozen=True)
class Strategy(Node):
    kind: str  # "NO CYCLE" | "UNIQUE" | "MEMORIZE" | "MAXIMUM"
    n: Optional[int] = None


@dataclass(frozen=True)
class Hierarchy(Node):
    start: tuple
    strategies: tuple
    updates: tuple
    stop: Node


@dataclass(frozen=True)
class AsSpec(Node):
    name: str
    args: Optional[tuple] = None


@dataclass(frozen=True)
class Query(Node):
    select: tuple
    sources: tuple
    where: Optional[Node] = None
    group_by: Optional[tuple] = None
    order_by: Optional[tuple] = None
    hierarchy: Optional[Hierarchy] = None
    as_spec: Optional[AsSpec] = None
    pos: Pos = _pos()
