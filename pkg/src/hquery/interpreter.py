"""Environment, host-function registry and the expression evaluator."""

from __future__ import annotations

import re
import sys
import time
from dataclasses import dataclass, field
from typing import Callable, Optional

from . import values as V
from .compiler import (
    Binary, CallFn, Cond, Const, Load, MakeList, Program, Select, Store, This, Unary,
    compile_source,
)
from .errors import (
    EvalError, HostError, HQueryError, InvalidName, ScriptRuntimeError, UnknownFunction,
    UnknownVariable,
)
from .frontend.lexer import KEYWORDS

DEFAULT_BUDGET = 10_000_000

_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")
_MISSING = object()


@dataclass
class HostFunction:
    fn: Callable
    aggregate: bool = False
    pure: bool = False


def _members(args):
    if len(args) == 1 and isinstance(args[0], list):
        return args[0]
    return list(args)


def _count(*args):
    return len(_members(args))


def _sum(*args):
    total = 0
    for v in _members(args):
        total = V.add(total, v)
    return total


def _min(*args):
    items = _members(args)
    return min(items, key=V.sort_key) if items else None


def _max(*args):
    items = _members(args)
    return max(items, key=V.sort_key) if items else None


def _avg(*args):
    items = _members(args)
    if not items:
        return None
    return V.div(_sum(items), len(items))


def _print(*args):
    for v in args:
        sys.stdout.write(V.serialize(v) + "\n")
    return args[-1] if args else None


def check_name(name: str) -> None:
    if not isinstance(name, str) or not _IDENT.match(name) or name.upper() in KEYWORDS:
        raise InvalidName(f"{name!r} is not a valid function name")


class FunctionRegistry:
    """Named host callables and AS-formatters visible to scripts."""

    def __init__(self):
        self.functions: dict[str, HostFunction] = {}
        self.formatters: dict[str, Callable] = {}
        self.frozen = 0
        for name, fn in (("count", _count), ("sum", _sum), ("min", _min), ("max", _max), ("avg", _avg)):
            self.functions[name] = HostFunction(fn, aggregate=True, pure=True)
        self.functions["print"] = HostFunction(_print)

    def _check_open(self):
        if self.frozen:
            raise HQueryError("function registry is frozen while an evaluation is running")

    def add(self, name, fn, aggregate=False, pure=False):
        check_name(name)
        self._check_open()
        self.functions[name] = HostFunction(fn, aggregate, pure)

    def add_formatter(self, name, fn):
        check_name(name)
        self._check_open()
        self.formatters[name] = fn

    def get(self, name) -> Optional[HostFunction]:
        return self.functions.get(name)


@dataclass
class EngineOptions:
    budget: int = DEFAULT_BUDGET
    state_keys: Optional[tuple] = None  # overrides the counter heuristic


@dataclass
class Stats:
    rows: int = 0
    expansions: int = 0


@dataclass
class Environment:
    variables: dict = field(default_factory=dict)
    temporal: dict = field(default_factory=dict)  # name -> (value, expiry)
    clock: Callable[[], float] = time.monotonic
    registry: FunctionRegistry = field(default_factory=FunctionRegistry)
    worlds: dict = field(default_factory=dict)
    options: EngineOptions = field(default_factory=EngineOptions)
    stats: Stats = field(default_factory=Stats)

    def lookup(self, name):
        entry = self.temporal.get(name)
        if entry is not None and entry[1] > self.clock():
            return entry[0]
        try:
            return self.variables[name]
        except KeyError:
            raise UnknownVariable(f"unknown variable {name!r}") from None

    def set(self, name, value):
        self.temporal.pop(name, None)
        self.variables[name] = value

    def fresh_temporal(self, name):
        entry = self.temporal.get(name)
        if entry is not None and entry[1] > self.clock():
            return entry
        return None

    def set_temporal(self, name, value, ttl):
        self.variables.pop(name, None)
        self.temporal[name] = (value, self.clock() + ttl)


class EvalContext:
    """Per-evaluation name scope: FROM-row bindings plus recursion variables."""

    __slots__ = ("this", "named", "bindings")

    def __init__(self, this=_MISSING, named=None, bindings=None):
        self.this = this
        self.named = named if named is not None else {}
        self.bindings = bindings if bindings is not None else {}

    def with_bindings(self, bindings):
        return EvalContext(self.this, self.named, bindings)


EMPTY_CONTEXT = EvalContext()


def call_host(hf: HostFunction, name: str, args):
    try:
        result = hf.fn(*args)
    except HQueryError:
        raise
    except Exception as exc:
        raise HostError(f"{name}: {type(exc).__name__}: {exc}") from exc
    return V.to_value(result)


# -- evaluator -----------------------------------------------------------


def _const(ir, env, ctx):
    return ir.value


def _make_list(ir, env, ctx):
    return [eval_expr(e, env, ctx) for e in ir.items]


def _load(ir, env, ctx):
    name = ir.name
    named = ctx.named
    if name in named:
        return named[name]
    b = ctx.bindings
    if name in b:
        return b[name]
    return env.lookup(name)


def _this(ir, env, ctx):
    if ir.source is None:
        if ctx.this is _MISSING:
            raise UnknownVariable("'this' is not bound here")
        return ctx.this
    try:
        return ctx.named[ir.source]
    except KeyError:
        raise UnknownVariable(f"unknown source {ir.source!r} in {ir.source}.this") from None


def _call(ir, env, ctx):
    hf = env.registry.functions.get(ir.name)
    if hf is None:
        raise UnknownFunction(f"unknown function {ir.name!r}")
    return call_host(hf, ir.name, [eval_expr(e, env, ctx) for e in ir.args])


def _binary(ir, env, ctx):
    op = ir.op
    if op == "AND":
        return V.truthy(eval_expr(ir.left, env, ctx)) and V.truthy(eval_expr(ir.right, env, ctx))
    if op == "OR":
        return V.truthy(eval_expr(ir.left, env, ctx)) or V.truthy(eval_expr(ir.right, env, ctx))
    a = eval_expr(ir.left, env, ctx)
    b = eval_expr(ir.right, env, ctx)
    if op == "==":
        return V.deep_eq(a, b)
    if op == "!=":
        return not V.deep_eq(a, b)
    if op == "+":
        return V.add(a, b)
    if op == "-":
        return V.sub(a, b)
    if op == "*":
        return V.mul(a, b)
    if op == "/":
        return V.div(a, b)
    return V.compare(op, a, b)


def _unary(ir, env, ctx):
    v = eval_expr(ir.operand, env, ctx)
    if ir.op == "NOT":
        return not V.truthy(v)
    return V.neg(v)


def _cond(ir, env, ctx):
    c = eval_expr(ir.cond, env, ctx)
    if V.truthy(c):
        branch = ir.then
    elif ir.orelse is not None:
        branch = ir.orelse
    else:
        return c
    result = None
    for e in branch:
        result = eval_expr(e, env, ctx)
    return result


def _select(ir, env, ctx):
    from .query import eval_query

    return eval_query(ir, env, ctx)


def _store(ir, env, ctx):
    if ir.ttl is not None:
        entry = env.fresh_temporal(ir.name)
        if entry is not None:
            return entry[0]
        value = eval_expr(ir.expr, env, ctx)
        env.set_temporal(ir.name, value, ir.ttl)
        return value
    value = eval_expr(ir.expr, env, ctx)
    env.set(ir.name, value)
    return value


_DISPATCH = {
    Const: _const,
    MakeList: _make_list,
    Load: _load,
    This: _this,
    CallFn: _call,
    Binary: _binary,
    Unary: _unary,
    Cond: _cond,
    Select: _select,
    Store: _store,
}


def eval_expr(ir, env: Environment, ctx: EvalContext = EMPTY_CONTEXT):
    return _DISPATCH[type(ir)](ir, env, ctx)


def eval_script(ir, env: Environment):
    """Run every statement in order and return the last statement's value."""
    if not isinstance(ir, Program):
        ir = Program((ir,))
    result = None
    env.registry.frozen += 1
    try:
        for index, stmt in enumerate(ir.statements):
            try:
                result = eval_expr(stmt, env, EMPTY_CONTEXT)
            except EvalError as exc:
                pos = ir.positions[index] if index < len(ir.positions) else None
                line, column = pos if pos else (None, None)
                raise ScriptRuntimeError(index, exc, line, column) from exc
    finally:
        env.registry.frozen -= 1
    return result


class Interpreter:
    """Host embedding API: register functions, attach worlds, evaluate scripts.

    >>> ss = Interpreter()
    >>> ss.add_function("double", lambda x: 2 * x)
    >>> ss.eval("a = 4; double(a);")
    8
    """

    def __init__(self, clock=None, max_nodes: int = DEFAULT_BUDGET, state_keys=None):
        self.env = Environment(clock=clock or time.monotonic)
        self.env.options.budget = max_nodes
        self.env.options.state_keys = tuple(state_keys) if state_keys else None

    @property
    def registry(self) -> FunctionRegistry:
        return self.env.registry

    @property
    def stats(self) -> Stats:
        return self.env.stats

    def add_function(self, name, fn, aggregate=False, pure=False):
        self.registry.add(name, fn, aggregate, pure)

    def add_formatter(self, name, fn):
        self.registry.add_formatter(name, fn)

    def add_variable(self, name, value):
        self.env.set(name, V.to_value(value))

    def attach(self, world):
        world.attach(self)
        return world

    def compile(self, source: str) -> Program:
        return compile_source(source)

    def eval(self, ir):
        if isinstance(ir, str):
            ir = compile_source(ir)
        self.env.stats = Stats()
        return eval_script(ir, self.env)
