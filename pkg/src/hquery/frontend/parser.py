"""Recursive-descent parser.

Grammar (keywords case-insensitive)::

    script    := stmt (";" stmt)* ";"?
    stmt      := IDENT ("{" NUMBER "}")? "=" expr | expr
    expr      := or
    or        := and ("OR" and)*
    and       := not ("AND" not)*
    not       := "NOT" not | cmp
    cmp       := sum (("=="|"!="|"<"|"<="|">"|">=") sum)?
    sum       := prod (("+"|"-") prod)*
    prod      := unary (("*"|"/") unary)*
    unary     := "-" unary | prim
    prim      := NUMBER | STRING | "true" | "false" | "none" | list | thisref
               | IDENT "(" arglist? ")" | IDENT | query | ifexpr | "(" expr ")"
    list      := "[" arglist? "]"
    thisref   := "this" | IDENT "." "this"
    ifexpr    := "IF" "(" expr ";" arglist (";" arglist)? ")"
    query     := "SELECT" arglist "FROM" fromlist ("WHERE" expr)?
                 ("GROUP" "BY" arglist)? ("ORDER" "BY" orderlist)?
                 hierarchy? ("AS" IDENT ("(" arglist? ")")?)?
    fromitem  := (IDENT "=")? expr
    orderlist := expr ("ASC"|"DESC")? ("," expr ("ASC"|"DESC")?)*
    hierarchy := "START" "WITH" bindlist "CONNECT" "BY" strategy* bindlist
                 "STOP" "WITH" expr
    bindlist  := IDENT "=" expr ("," IDENT "=" expr)*
    strategy  := "NO" "CYCLE" | "UNIQUE" | "MEMORIZE" INT | "MAXIMUM" INT
"""

from __future__ import annotations

from ..errors import ParseError
from . import ast as A
from .lexer import Token, tokenize

COMPARISONS = ("==", "!=", "<", "<=", ">", ">=")
SEARCH_MODES = ("NO CYCLE", "UNIQUE", "MEMORIZE")


def _describe(tok: Token) -> str:
    if tok.kind == "eof":
        return "end of input"
    return repr(tok.text)


class Parser:
    def __init__(self, tokens: list[Token]):
        self.tokens = tokens
        self.i = 0

    # -- token helpers -------------------------------------------------

    @property
    def tok(self) -> Token:
        return self.tokens[self.i]

    def look(self, k=1) -> Token:
        return self.tokens[min(self.i + k, len(self.tokens) - 1)]

    def advance(self) -> Token:
        t = self.tokens[self.i]
        if t.kind != "eof":
            self.i += 1
        return t

    def is_kw(self, word, tok=None):
        t = tok or self.tok
        return t.kind == "keyword" and t.text == word

    def is_punct(self, c, tok=None):
        t = tok or self.tok
        return t.kind == "punct" and t.text == c

    def is_op(self, o, tok=None):
        t = tok or self.tok
        return t.kind == "op" and t.text == o

    def fail(self, *expected):
        t = self.tok
        raise ParseError(t.line, t.column, expected, _describe(t))

    def expect_kw(self, word):
        if not self.is_kw(word):
            self.fail(word)
        return self.advance()

    def expect_punct(self, c):
        if not self.is_punct(c):
            self.fail(repr(c))
        return self.advance()

    def expect_op(self, o):
        if not self.is_op(o):
            self.fail(repr(o))
        return self.advance()

    def expect_ident(self):
        if self.tok.kind != "ident":
            self.fail("identifier")
        return self.advance()

    # -- statements ----------------------------------------------------

    def script(self) -> A.Script:
        first = self.tok
        stmts = [self.statement()]
        while self.is_punct(";"):
            self.advance()
            if self.tok.kind == "eof":
                break
            stmts.append(self.statement())
        if self.tok.kind != "eof":
            self.fail("';'", "end of input")
        return A.Script(tuple(stmts), pos=(first.line, first.column))

    def statement(self):
        t = self.tok
        if t.kind == "ident":
            nxt = self.look()
            if self.is_op("=", nxt):
                self.advance()
                self.advance()
                return A.Assign(t.text, None, self.expr(), pos=(t.line, t.column))
            if self.is_punct("{", nxt):
                self.advance()
                self.advance()
                if self.tok.kind not in ("int", "float"):
                    self.fail("number")
                ttl = self.advance().value
                self.expect_punct("}")
                self.expect_op("=")
                return A.Assign(t.text, ttl, self.expr(), pos=(t.line, t.column))
        return self.expr()

    # -- expressions ---------------------------------------------------

    def expr(self):
        return self.or_expr()

    def or_expr(self):
        left = self.and_expr()
        while self.is_kw("OR"):
            t = self.advance()
            left = A.BinOp("OR", left, self.and_expr(), pos=(t.line, t.column))
        return left

    def and_expr(self):
        left = self.not_expr()
        while self.is_kw("AND"):
            t = self.advance()
            left = A.BinOp("AND", left, self.not_expr(), pos=(t.line, t.column))
        return left

    def not_expr(self):
        if self.is_kw("NOT"):
            t = self.advance()
            return A.UnOp("NOT", self.not_expr(), pos=(t.line, t.column))
        return self.cmp_expr()

    def cmp_expr(self):
        left = self.sum_expr()
        if self.tok.kind == "op" and self.tok.text in COMPARISONS:
            t = self.advance()
            return A.BinOp(t.text, left, self.sum_expr(), pos=(t.line, t.column))
        return left

    def sum_expr(self):
        left = self.prod_expr()
        while self.is_op("+") or self.is_op("-"):
            t = self.advance()
            left = A.BinOp(t.text, left, self.prod_expr(), pos=(t.line, t.column))
        return left

    def prod_expr(self):
        left = self.unary_expr()
        while self.is_op("*") or self.is_op("/"):
            t = self.advance()
            left = A.BinOp(t.text, left, self.unary_expr(), pos=(t.line, t.column))
        return left

    def unary_expr(self):
        if self.is_op("-"):
            t = self.advance()
            return A.UnOp("-", self.unary_expr(), pos=(t.line, t.column))
        return self.primary()

    def arglist(self, closer=None):
        if closer is not None and self.is_punct(closer):
            return ()
        items = [self.expr()]
        while self.is_punct(","):
            self.advance()
            items.append(self.expr())
        return tuple(items)

    def primary(self):
        t = self.tok
        pos = (t.line, t.column)
        if t.kind in ("int", "float", "string"):
            self.advance()
            return A.Literal(t.value, pos=pos)
        if t.kind == "keyword":
            if t.text in ("TRUE", "FALSE", "NONE"):
                self.advance()
                return A.Literal({"TRUE": True, "FALSE": False, "NONE": None}[t.text], pos=pos)
            if t.text == "THIS":
                self.advance()
                return A.ThisRef(None, pos=pos)
            if t.text == "SELECT":
                return self.query()
            if t.text == "IF":
                return self.if_expr()
        if t.kind == "ident":
            nxt = self.look()
            if self.is_punct("(", nxt):
                self.advance()
                self.advance()
                args = self.arglist(")")
                self.expect_punct(")")
                return A.Call(t.text, args, pos=pos)
            if self.is_punct(".", nxt):
                self.advance()
                self.advance()
                self.expect_kw("THIS")
                return A.ThisRef(t.text, pos=pos)
            self.advance()
            return A.Var(t.text, pos=pos)
        if self.is_punct("["):
            self.advance()
            items = self.arglist("]")
            self.expect_punct("]")
            return A.ListExpr(items, pos=pos)
        if self.is_punct("("):
            self.advance()
            e = self.expr()
            self.expect_punct(")")
            return e
        self.fail("expression")

    def if_expr(self):
        t = self.expect_kw("IF")
        self.expect_punct("(")
        cond = self.expr()
        self.expect_punct(";")
        then = self.arglist()
        orelse = None
        if self.is_punct(";"):
            self.advance()
            orelse = self.arglist()
        self.expect_punct(")")
        return A.If(cond, then, orelse, pos=(t.line, t.column))

    # -- queries -------------------------------------------------------

    def query(self):
        t = self.expect_kw("SELECT")
        select = self.arglist()
        self.expect_kw("FROM")
        sources = [self.from_item()]
        while self.is_punct(","):
            self.advance()
            sources.append(self.from_item())
        where = group_by = order_by = hierarchy = as_spec = None
        if self.is_kw("WHERE"):
            self.advance()
            where = self.expr()
        if self.is_kw("GROUP"):
            self.advance()
            self.expect_kw("BY")
            group_by = self.arglist()
        if self.is_kw("ORDER"):
            self.advance()
            self.expect_kw("BY")
            order_by = self.order_list()
        if self.is_kw("START"):
            hierarchy = self.hierarchy()
        if self.is_kw("AS"):
            self.advance()
            name = self.expect_ident().text
            args = None
            if self.is_punct("("):
                self.advance()
                args = self.arglist(")")
                self.expect_punct(")")
            as_spec = A.AsSpec(name, args)
        return A.Query(select, tuple(sources), where, group_by, order_by, hierarchy, as_spec,
                       pos=(t.line, t.column))

    def from_item(self):
        if self.tok.kind == "ident" and self.is_op("=", self.look()):
            name = self.advance().text
            self.advance()
            return A.Source(name, self.expr())
        return A.Source(None, self.expr())

    def order_list(self):
        items = []
        while True:
            e = self.expr()
            desc, explicit = False, False
            if self.tok.kind == "ident" and self.tok.text.upper() in ("ASC", "DESC"):
                desc = self.advance().text.upper() == "DESC"
                explicit = True
            items.append(A.OrderItem(e, desc, explicit))
            if not self.is_punct(","):
                return tuple(items)
            self.advance()

    def bindlist(self):
        out = [self.binding()]
        while self.is_punct(","):
            self.advance()
            out.append(self.binding())
        return tuple(out)

    def binding(self):
        name = self.expect_ident().text
        self.expect_op("=")
        return A.Binding(name, self.expr())

    def hierarchy(self):
        self.expect_kw("START")
        self.expect_kw("WITH")
        start = self.bindlist()
        self.expect_kw("CONNECT")
        self.expect_kw("BY")
        strategies = []
        while True:
            t = self.tok
            if self.is_kw("NO"):
                self.advance()
                self.expect_kw("CYCLE")
                s = A.Strategy("NO CYCLE")
            elif self.is_kw("UNIQUE"):
                self.advance()
                s = A.Strategy("UNIQUE")
            elif self.is_kw("MEMORIZE") or self.is_kw("MAXIMUM"):
                kind = self.advance().text
                if self.tok.kind != "int":
                    self.fail("integer")
                n = self.advance().value
                if n < 1:
                    raise ParseError(t.line, t.column, ["positive integer"], str(n))
                s = A.Strategy(kind, n)
            else:
                break
            self._check_strategy(t, strategies, s)
            strategies.append(s)
        updates = self.bindlist()
        self.expect_kw("STOP")
        self.expect_kw("WITH")
        stop = self.expr()
        return A.Hierarchy(start, tuple(strategies), updates, stop)

    @staticmethod
    def _check_strategy(t, existing, s):
        if s.kind in SEARCH_MODES and any(e.kind in SEARCH_MODES for e in existing):
            raise ParseError(t.line, t.column, ["at most one of NO CYCLE, UNIQUE, MEMORIZE"], s.kind)
        if s.kind == "MAXIMUM" and any(e.kind == "MAXIMUM" for e in existing):
            raise ParseError(t.line, t.column, ["a single MAXIMUM"], s.kind)


def parse(tokens) -> A.Script:
    """Parse a token list (or raw source text) into a :class:`Script`."""
    if isinstance(tokens, str):
        tokens = tokenize(tokens)
    return Parser(list(tokens)).script()
