"""Lowering of syntax trees into the evaluated intermediate representation.

The IR is still a tree: the recursion engine re-evaluates CONNECT BY and
STOP WITH subtrees per search node, which a tree serves directly. The only
optimization is folding of literal-only arithmetic and list construction.
"""

from __future__ import annotations

import math
import sys
from dataclasses import dataclass, field
from typing import Optional

from . import values as V
from .errors import CompileError, EvalError
from .frontend import ast as A
from .frontend.parser import parse


class Ir:
    __slots__ = ()


def _pos():
    return field(default=None, compare=False, repr=False)


@dataclass(frozen=True, eq=False)
class Const(Ir):
    value: object

    def __eq__(self, other):
        if not isinstance(other, Const):
            return NotImplemented
        return V.serialize(self.value) == V.serialize(other.value)

    def __hash__(self):
        return hash(V.serialize(self.value))


@dataclass(frozen=True)
class MakeList(Ir):
    items: tuple


@dataclass(frozen=True)
class Load(Ir):
    name: str


@dataclass(frozen=True)
class This(Ir):
    source: Optional[str] = None


@dataclass(frozen=True)
class CallFn(Ir):
    name: str
    args: tuple


@dataclass(frozen=True)
class Binary(Ir):
    op: str
    left: Ir
    right: Ir


@dataclass(frozen=True)
class Unary(Ir):
    op: str
    operand: Ir


@dataclass(frozen=True)
class Cond(Ir):
    cond: Ir
    then: tuple
    orelse: Optional[tuple]


@dataclass(frozen=True)
class Hier(Ir):
    start: tuple  # ((name, Ir), ...)
    mode: str  # "dfs" | "nocycle" | "unique" | "memorize"
    max_len: Optional[int]
    maximum: Optional[int]
    updates: tuple  # ((name, Ir), ...)
    stop: Ir
    counters: frozenset  # update variables excluded from state keys


@dataclass(frozen=True)
class Select(Ir):
    items: tuple
    labels: tuple
    sources: tuple  # ((name or None, Ir), ...)
    where: Optional[Ir] = None
    group_by: Optional[tuple] = None
    order_by: Optional[tuple] = None  # ((Ir, descending), ...)
    hierarchy: Optional[Hier] = None
    as_name: str = "list"
    as_args: tuple = ()
    pos: object = _pos()


@dataclass(frozen=True)
class Store(Ir):
    name: str
    ttl: object
    expr: Ir


@dataclass(frozen=True)
class Program(Ir):
    statements: tuple
    positions: tuple = field(default=(), compare=False, repr=False)


_MODES = {"NO CYCLE": "nocycle", "UNIQUE": "unique", "MEMORIZE": "memorize"}


def column_label(item, index: int) -> str:
    if isinstance(item, (A.Call, CallFn)):
        return item.name
    if isinstance(item, A.Var):
        return item.name
    if isinstance(item, Load):
        return item.name
    if isinstance(item, (A.ThisRef, This)):
        return item.source or "this"
    return f"col{index}"


def _fold_binary(op, a, b):
    if op == "+":
        return V.add(a, b)
    if op == "-":
        return V.sub(a, b)
    if op == "*":
        return V.mul(a, b)
    if op == "/":
        return V.div(a, b)
    if op == "==":
        return V.deep_eq(a, b)
    if op == "!=":
        return not V.deep_eq(a, b)
    if op == "AND":
        return V.truthy(a) and V.truthy(b)
    if op == "OR":
        return V.truthy(a) or V.truthy(b)
    return V.compare(op, a, b)


def _finite(v) -> bool:
    if isinstance(v, float):
        return math.isfinite(v)
    if isinstance(v, list):
        return all(_finite(x) for x in v)
    return True


def _is_counter(name, expr) -> bool:
    return (
        isinstance(expr, Binary)
        and expr.op in ("+", "-")
        and isinstance(expr.left, Load)
        and expr.left.name == name
        and isinstance(expr.right, Const)
        and V.is_number(expr.right.value)
    )


class Compiler:
    def compile(self, node):
        if isinstance(node, A.Script):
            stmts = tuple(self.statement(s) for s in node.statements)
            return Program(stmts, tuple(s.pos for s in node.statements))
        return self.statement(node)

    def statement(self, node):
        if isinstance(node, A.Assign):
            return Store(sys.intern(node.name), node.ttl, self.expr(node.expr))
        return self.expr(node)

    def expr(self, node):
        method = getattr(self, "_" + type(node).__name__)
        return method(node)

    def _Literal(self, node):
        return Const(node.value)

    def _ListExpr(self, node):
        items = tuple(self.expr(e) for e in node.items)
        if all(isinstance(e, Const) for e in items):
            return Const([e.value for e in items])
        return MakeList(items)

    def _Var(self, node):
        return Load(sys.intern(node.name))

    def _ThisRef(self, node):
        return This(node.source)

    def _Call(self, node):
        return CallFn(sys.intern(node.name), tuple(self.expr(e) for e in node.args))

    def _BinOp(self, node):
        left, right = self.expr(node.left), self.expr(node.right)
        if isinstance(left, Const) and isinstance(right, Const):
            try:
                value = _fold_binary(node.op, left.value, right.value)
            except EvalError:
                pass
            else:
                if _finite(value):
                    return Const(value)
        return Binary(node.op, left, right)

    def _UnOp(self, node):
        operand = self.expr(node.operand)
        if isinstance(operand, Const):
            try:
                value = V.neg(operand.value) if node.op == "-" else not V.truthy(operand.value)
            except EvalError:
                pass
            else:
                return Const(value)
        return Unary(node.op, operand)

    def _If(self, node):
        orelse = None if node.orelse is None else tuple(self.expr(e) for e in node.orelse)
        return Cond(self.expr(node.cond), tuple(self.expr(e) for e in node.then), orelse)

    def _Query(self, node):
        seen = set()
        sources = []
        for s in node.sources:
            if s.name is not None:
                if s.name in seen:
                    raise CompileError(f"duplicate FROM source name {s.name!r}")
                seen.add(s.name)
            sources.append((s.name, self.expr(s.expr)))
        items = tuple(self.expr(e) for e in node.select)
        labels = tuple(column_label(e, i) for i, e in enumerate(node.select))
        where = None if node.where is None else self.expr(node.where)
        group_by = None if node.group_by is None else tuple(self.expr(e) for e in node.group_by)
        order_by = None
        if node.order_by is not None:
            order_by = tuple((self.expr(o.expr), o.descending) for o in node.order_by)
        hierarchy = None
        if node.hierarchy is not None:
            if group_by is not None or order_by is not None:
                raise CompileError("GROUP BY and ORDER BY cannot be combined with a hierarchical query")
            hierarchy = self.hierarchy(node.hierarchy)
        as_name, as_args = "list", ()
        if node.as_spec is not None:
            as_name = node.as_spec.name
            as_args = tuple(self.expr(e) for e in node.as_spec.args or ())
        return Select(items, labels, tuple(sources), where, group_by, order_by, hierarchy,
                      as_name, as_args, pos=node.pos)

    def _bindings(self, bindings, clause):
        seen = set()
        out = []
        for b in bindings:
            if b.name in seen:
                raise CompileError(f"duplicate name {b.name!r} in {clause}")
            seen.add(b.name)
            out.append((sys.intern(b.name), self.expr(b.expr)))
        return tuple(out)

    def hierarchy(self, h: A.Hierarchy) -> Hier:
        start = self._bindings(h.start, "START WITH")
        updates = self._bindings(h.updates, "CONNECT BY")
        mode, max_len, maximum = "dfs", None, None
        for s in h.strategies:
            if s.kind == "MAXIMUM":
                maximum = s.n
            else:
                mode = _MODES[s.kind]
                if s.kind == "MEMORIZE":
                    max_len = s.n
        counters = frozenset(name for name, e in updates if _is_counter(name, e))
        return Hier(start, mode, max_len, maximum, updates, self.expr(h.stop), counters)


def compile(ast) -> Program:  # noqa: A001 - mirrors the host API name
    """Lower a parsed tree (or source text) into IR."""
    if isinstance(ast, str):
        ast = parse(ast)
    return Compiler().compile(ast)


def compile_source(source: str) -> Program:
    return Compiler().compile(parse(source))


# -- IR back to syntax, for printing compiled programs -------------------


def _const_ast(v):
    if isinstance(v, list):
        return A.ListExpr(tuple(_const_ast(x) for x in v))
    if V.is_number(v) and (v < 0 or (isinstance(v, float) and math.copysign(1.0, v) < 0)):
        return A.UnOp("-", A.Literal(-v))
    return A.Literal(v)


def decompile(ir):
    """Rebuild a syntax tree equivalent to ``ir`` (labels and folding aside)."""
    if isinstance(ir, Program):
        return A.Script(tuple(decompile(s) for s in ir.statements))
    if isinstance(ir, Store):
        return A.Assign(ir.name, ir.ttl, decompile(ir.expr))
    if isinstance(ir, Const):
        return _const_ast(ir.value)
    if isinstance(ir, MakeList):
        return A.ListExpr(tuple(decompile(e) for e in ir.items))
    if isinstance(ir, Load):
        return A.Var(ir.name)
    if isinstance(ir, This):
        return A.ThisRef(ir.source)
    if isinstance(ir, CallFn):
        return A.Call(ir.name, tuple(decompile(e) for e in ir.args))
    if isinstance(ir, Binary):
        return A.BinOp(ir.op, decompile(ir.left), decompile(ir.right))
    if isinstance(ir, Unary):
        return A.UnOp(ir.op, decompile(ir.operand))
    if isinstance(ir, Cond):
        orelse = None if ir.orelse is None else tuple(decompile(e) for e in ir.orelse)
        return A.If(decompile(ir.cond), tuple(decompile(e) for e in ir.then), orelse)
    if isinstance(ir, Select):
        hierarchy = None
        if ir.hierarchy is not None:
            h = ir.hierarchy
            strategies = []
            if h.mode == "memorize":
                strategies.append(A.Strategy("MEMORIZE", h.max_len))
            elif h.mode != "dfs":
                strategies.append(A.Strategy({"nocycle": "NO CYCLE", "unique": "UNIQUE"}[h.mode]))
            if h.maximum is not None:
                strategies.append(A.Strategy("MAXIMUM", h.maximum))
            hierarchy = A.Hierarchy(
                tuple(A.Binding(n, decompile(e)) for n, e in h.start),
                tuple(strategies),
                tuple(A.Binding(n, decompile(e)) for n, e in h.updates),
                decompile(h.stop),
            )
        return A.Query(
            tuple(decompile(e) for e in ir.items),
            tuple(A.Source(n, decompile(e)) for n, e in ir.sources),
            None if ir.where is None else decompile(ir.where),
            None if ir.group_by is None else tuple(decompile(e) for e in ir.group_by),
            None if ir.order_by is None else tuple(A.OrderItem(decompile(e), d) for e, d in ir.order_by),
            hierarchy,
            A.AsSpec(ir.as_name, tuple(decompile(e) for e in ir.as_args) or None),
        )
    raise TypeError(f"cannot decompile {type(ir).__name__}")
