"""Flat (non-recursive) query evaluation: FROM, WHERE, GROUP BY, SELECT, ORDER BY, AS."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from . import values as V
from .compiler import CallFn, Load
from .errors import EvalError, HostError, HQueryError, UnknownFormatter
from .interpreter import _MISSING, EvalContext, call_host, eval_expr


@dataclass
class ResultTable:
    labels: list
    rows: list = field(default_factory=list)

    def __post_init__(self):
        for r in self.rows:
            if len(r) != len(self.labels):
                raise ValueError("row width does not match the label count")


def expand_source(v, env) -> list:
    """Turn a FROM value into the sequence of elements it iterates."""
    if isinstance(v, list):
        return v
    if isinstance(v, dict):
        return [v[k] for k in sorted(v)]
    if isinstance(v, V.Entity):
        world = env.worlds.get(v.world)
        if world is not None and world.is_root(v.handle):
            return list(world.entities())
    return [v]


def row_contexts(sources, env, outer: EvalContext):
    """Yield one context per row of the cartesian product of ``sources``.

    Rows are produced in declaration order with the rightmost source varying
    fastest.
    """
    names = []
    lists = []
    for name, expr in sources:
        names.append(name)
        lists.append(expand_source(eval_expr(expr, env, outer), env))
    anon_index = next((i for i, n in enumerate(names) if n is None), None)
    if anon_index is None and len(names) == 1:
        anon_index = 0
    base = outer.named
    bindings = outer.bindings
    stats = env.stats
    for combo in itertools.product(*lists):
        stats.rows += 1
        named = dict(base) if base else {}
        for n, value in zip(names, combo):
            if n is not None:
                named[n] = value
        this = combo[anon_index] if anon_index is not None else _MISSING
        yield EvalContext(this, named, bindings), combo


def member_value(ctx: EvalContext, combo):
    if ctx.this is not _MISSING:
        return ctx.this
    return list(combo)


def project_item(item, ctx: EvalContext, env, members=None):
    """Evaluate one SELECT item, applying the implicit-``this`` call rule.

    ``members`` is the list of (context, combo) pairs of the current group
    when the query is grouped; aggregates then see every member.
    """
    if isinstance(item, Load):
        hf = env.registry.functions.get(item.name)
        if hf is not None:
            if hf.aggregate and members is not None:
                return call_host(hf, item.name, [[member_value(c, k) for c, k in members]])
            if ctx.this is _MISSING:
                return eval_expr(item, env, ctx)
            return call_host(hf, item.name, [ctx.this])
        return eval_expr(item, env, ctx)
    if members is not None and isinstance(item, CallFn) and len(item.args) == 1:
        hf = env.registry.functions.get(item.name)
        if hf is not None and hf.aggregate:
            collected = [eval_expr(item.args[0], env, c) for c, _ in members]
            return call_host(hf, item.name, [collected])
    return eval_expr(item, env, ctx)


def project(items, ctx, env, members=None) -> list:
    return [project_item(e, ctx, env, members) for e in items]


def format_result(table: ResultTable, as_name: str, args, env):
    """Shape a result table according to the AS clause."""
    key = as_name.lower()
    if key == "value":
        return table.rows[0][0] if table.rows and table.labels else None
    if key == "list":
        if len(table.labels) == 1:
            return [r[0] for r in table.rows]
        return [list(r) for r in table.rows]
    if key == "dict":
        return [dict(zip(table.labels, r)) for r in table.rows]
    formatter = env.registry.formatters.get(as_name)
    if formatter is None:
        raise UnknownFormatter(f"unknown response format {as_name!r}")
    try:
        result = formatter(table, list(args))
    except HQueryError:
        raise
    except Exception as exc:
        raise HostError(f"formatter {as_name}: {type(exc).__name__}: {exc}") from exc
    return V.to_value(result)


def _annotate(exc: EvalError, text: str):
    context = getattr(exc, "context", None)
    if context is None:
        exc.context = context = []
    context.append(text)


def eval_query(q, env, ctx: EvalContext = None):
    if ctx is None:
        ctx = EvalContext()
    if q.hierarchy is not None:
        from .recursion import eval_hierarchical

        return eval_hierarchical(q, env, ctx)
    return eval_select(q, env, ctx)


def eval_select(q, env, ctx: EvalContext = None):
    """Evaluate a non-hierarchical query and format its result."""
    if ctx is None:
        ctx = EvalContext()
    kept = []
    index = -1
    try:
        for index, (row_ctx, combo) in enumerate(row_contexts(q.sources, env, ctx)):
            if q.where is None or V.truthy(eval_expr(q.where, env, row_ctx)):
                kept.append((row_ctx, combo))
    except EvalError as exc:
        _annotate(exc, f"row {index}")
        raise

    if q.group_by is not None:
        groups: dict[str, list] = {}
        for row_ctx, combo in kept:
            key = V.serialize([eval_expr(e, env, row_ctx) for e in q.group_by])
            groups.setdefault(key, []).append((row_ctx, combo))
        units = [(members[0][0], members) for members in groups.values()]
    else:
        units = [(row_ctx, None) for row_ctx, _ in kept]

    rows = []
    for i, (rep, members) in enumerate(units):
        try:
            rows.append(project(q.items, rep, env, members))
        except EvalError as exc:
            _annotate(exc, f"output row {i}")
            raise

    if q.order_by:
        order = list(range(len(rows)))
        for expr, descending in reversed(q.order_by):
            keys = [V.sort_key(eval_expr(expr, env, units[i][0])) for i in range(len(units))]
            order.sort(key=lambda i: keys[i], reverse=descending)
        rows = [rows[i] for i in order]

    table = ResultTable(list(q.labels), rows)
    args = [eval_expr(e, env, ctx) for e in q.as_args]
    return format_result(table, q.as_name, args, env)
