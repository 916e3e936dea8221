"""An SQL-flavoured query language with hierarchical queries over pluggable worlds.

>>> from hquery import Interpreter
>>> Interpreter().eval("SELECT this FROM [1, 2, 3] WHERE this > 1 AS list;")
[2, 3]
"""

from .compiler import compile, compile_source
from .errors import (
    BudgetExceeded, CompileError, EvalError, HostError, HQueryError, InvalidName, LexError,
    ParseError, ScriptRuntimeError, TypeMismatch, UnknownFormatter, UnknownFunction,
    UnknownVariable,
)
from .frontend import parse, pretty_print, tokenize
from .interpreter import Environment, EvalContext, Interpreter, eval_expr, eval_script
from .query import ResultTable, eval_select, expand_source, format_result
from .recursion import StateGraph, build_state_graph, enumerate_paths, eval_hierarchical, state_key
from .values import Entity, deep_eq, serialize, truthy

__all__ = [
    "BudgetExceeded", "CompileError", "Entity", "Environment", "EvalContext", "EvalError",
    "HQueryError", "HostError", "Interpreter", "InvalidName", "LexError", "ParseError",
    "ResultTable", "ScriptRuntimeError", "StateGraph", "TypeMismatch", "UnknownFormatter",
    "UnknownFunction", "UnknownVariable", "build_state_graph", "compile", "compile_source",
    "deep_eq", "enumerate_paths", "eval_expr", "eval_hierarchical", "eval_script", "eval_select",
    "expand_source", "format_result", "parse", "pretty_print", "serialize", "state_key",
    "tokenize", "truthy",
]
