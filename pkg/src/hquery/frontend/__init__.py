"""Lexing, parsing and pretty-printing of query scripts."""

from . import ast
from .lexer import KEYWORDS, Token, tokenize
from .parser import parse
from .printer import pretty_print

__all__ = ["KEYWORDS", "Token", "ast", "parse", "pretty_print", "tokenize"]
