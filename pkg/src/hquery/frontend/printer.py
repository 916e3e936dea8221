"""Canonical source rendering for syntax trees.

Parentheses are emitted only where precedence requires them. Nested queries
are parenthesized unless they sit somewhere a closing token ends them
unambiguously (statement level, assignment right-hand side, last argument).
"""

from __future__ import annotations

from ..values import quote
from . import ast as A

_BINARY_PREC = {
    "OR": 1,
    "AND": 2,
    "==": 4, "!=": 4, "<": 4, "<=": 4, ">": 4, ">=": 4,
    "+": 5, "-": 5,
    "*": 6, "/": 6,
}
_PRIMARY = 8


def _prec(node) -> int:
    if isinstance(node, A.BinOp):
        return _BINARY_PREC[node.op]
    if isinstance(node, A.UnOp):
        return 3 if node.op == "NOT" else 7
    if isinstance(node, A.Query):
        return 0
    return _PRIMARY


def _literal(v) -> str:
    if v is None:
        return "None"
    if v is True:
        return "True"
    if v is False:
        return "False"
    if isinstance(v, str):
        return quote(v)
    if isinstance(v, float):
        return repr(v)
    if isinstance(v, int):
        return str(v)
    raise TypeError(f"cannot print literal of type {type(v).__name__}")


class Printer:
    def __init__(self, multiline=True):
        self.multiline = multiline

    def script(self, node: A.Script) -> str:
        return ";\n".join(self.statement(s) for s in node.statements) + ";"

    def statement(self, node) -> str:
        if isinstance(node, A.Assign):
            ttl = "" if node.ttl is None else "{" + _literal(node.ttl) + "}"
            return f"{node.name}{ttl} = {self.expr(node.expr, 0, top=True)}"
        return self.expr(node, 0, top=True)

    def args(self, items, last_bare=True) -> str:
        out = []
        for k, e in enumerate(items):
            bare = last_bare and k == len(items) - 1
            out.append(self.expr(e, 0 if bare else 1))
        return ", ".join(out)

    def expr(self, node, min_prec: int = 0, top=False) -> str:
        text = self._render(node, top)
        if _prec(node) < min_prec or (isinstance(node, A.Query) and min_prec > 0):
            return f"({text})"
        return text

    def _render(self, node, top=False) -> str:
        if isinstance(node, A.Literal):
            return _literal(node.value)
        if isinstance(node, A.ListExpr):
            return "[" + self.args(node.items) + "]"
        if isinstance(node, A.Var):
            return node.name
        if isinstance(node, A.ThisRef):
            return "this" if node.source is None else f"{node.source}.this"
        if isinstance(node, A.Call):
            return f"{node.name}(" + self.args(node.args) + ")"
        if isinstance(node, A.BinOp):
            p = _BINARY_PREC[node.op]
            if p == 4:
                left, right = self.expr(node.left, 5), self.expr(node.right, 5)
            else:
                left, right = self.expr(node.left, p), self.expr(node.right, p + 1)
            return f"{left} {node.op} {right}"
        if isinstance(node, A.UnOp):
            if node.op == "NOT":
                return "NOT " + self.expr(node.operand, 3)
            return "-" + self.expr(node.operand, 7)
        if isinstance(node, A.If):
            parts = [self.expr(node.cond, 1), self.args(node.then, last_bare=False)]
            if node.orelse is not None:
                parts.append(self.args(node.orelse, last_bare=False))
            return "IF(" + "; ".join(parts) + ")"
        if isinstance(node, A.Query):
            return self.query(node, top)
        raise TypeError(f"cannot print {type(node).__name__}")

    def query(self, q: A.Query, top=False) -> str:
        sep = "\n  " if (top and self.multiline) else " "
        clauses = ["SELECT " + self.args(q.select, last_bare=False)]
        sources = []
        for s in q.sources:
            e = self.expr(s.expr, 1)
            sources.append(e if s.name is None else f"{s.name}={e}")
        clauses.append("FROM " + ", ".join(sources))
        if q.where is not None:
            clauses.append("WHERE " + self.expr(q.where, 1))
        if q.group_by is not None:
            clauses.append("GROUP BY " + self.args(q.group_by, last_bare=False))
        if q.order_by is not None:
            items = []
            for o in q.order_by:
                e = self.expr(o.expr, 1)
                if o.descending:
                    e += " DESC"
                elif o.explicit:
                    e += " ASC"
                items.append(e)
            clauses.append("ORDER BY " + ", ".join(items))
        if q.hierarchy is not None:
            h = q.hierarchy
            clauses.append("START WITH " + self.bindings(h.start))
            strategies = []
            for s in h.strategies:
                strategies.append(s.kind if s.n is None else f"{s.kind} {s.n}")
            clauses.append("CONNECT BY " + " ".join(strategies + [self.bindings(h.updates)]))
            clauses.append("STOP WITH " + self.expr(h.stop, 1))
        if q.as_spec is not None:
            a = q.as_spec
            text = "AS " + a.name
            if a.args is not None:
                text += "(" + self.args(a.args) + ")"
            clauses.append(text)
        return sep.join(clauses)

    def bindings(self, items) -> str:
        return ", ".join(f"{b.name} = {self.expr(b.expr, 1)}" for b in items)


def pretty_print(node, multiline=True) -> str:
    """Render a node (usually a :class:`Script`) as canonical source text."""
    p = Printer(multiline)
    if isinstance(node, A.Script):
        return p.script(node)
    if isinstance(node, A.Assign):
        return p.statement(node)
    return p.expr(node, 0, top=True)
