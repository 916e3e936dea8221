"""Runtime value model.

Script values are plain Python objects: ``None``, ``bool``, ``int``,
``float``, ``str``, ``list``, ``dict`` (string keys) and :class:`Entity`.
Lists and dicts are never mutated by the interpreter once built, so they can
be shared freely between search nodes.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from numbers import Integral, Real

from .errors import EvalError, TypeMismatch


@dataclass(frozen=True)
class Entity:
    """Opaque handle issued by an attached world."""

    world: str
    handle: int

    def __repr__(self):
        return f"Entity({self.world!r}, {self.handle})"


def is_number(v) -> bool:
    return isinstance(v, (int, float)) and not isinstance(v, bool)


def _numeric_list(v) -> bool:
    return isinstance(v, list) and all(is_number(x) for x in v)


def type_name(v) -> str:
    if v is None:
        return "none"
    if isinstance(v, bool):
        return "bool"
    if isinstance(v, int):
        return "int"
    if isinstance(v, float):
        return "float"
    if isinstance(v, str):
        return "string"
    if isinstance(v, list):
        return "list"
    if isinstance(v, dict):
        return "dict"
    if isinstance(v, Entity):
        return "entity"
    return type(v).__name__


def to_value(x):
    """Normalize a host-side object into a script value.

    Tuples become lists and numpy scalars/arrays become Python numbers and
    lists. Anything unrecognized is passed through untouched so host
    functions can hand opaque objects to each other.
    """
    if x is None or isinstance(x, (bool, str, Entity)):
        return x
    if isinstance(x, int):
        return int(x)
    if isinstance(x, float):
        return float(x)
    if isinstance(x, (list, tuple)):
        return [to_value(e) for e in x]
    if isinstance(x, dict):
        return {str(k): to_value(v) for k, v in x.items()}
    if hasattr(x, "tolist") and hasattr(x, "dtype"):
        return to_value(x.tolist())
    if isinstance(x, Integral):
        return int(x)
    if isinstance(x, Real):
        return float(x)
    return x


def _mismatch(op, a, b):
    return TypeMismatch(f"unsupported operand types for {op}: {type_name(a)} and {type_name(b)}")


def _num_add(a, b):
    if isinstance(a, int) and isinstance(b, int):
        return a + b
    return float(a) + float(b)


def add(a, b):
    if is_number(a) and is_number(b):
        return _num_add(a, b)
    if isinstance(a, str) and isinstance(b, str):
        return a + b
    if isinstance(a, list) and isinstance(b, list):
        if len(a) == len(b) and _numeric_list(a) and _numeric_list(b):
            return [_num_add(x, y) for x, y in zip(a, b)]
        return a + b
    raise _mismatch("+", a, b)


def sub(a, b):
    if is_number(a) and is_number(b):
        if isinstance(a, int) and isinstance(b, int):
            return a - b
        return float(a) - float(b)
    if _numeric_list(a) and _numeric_list(b) and len(a) == len(b):
        return [sub(x, y) for x, y in zip(a, b)]
    raise _mismatch("-", a, b)


def mul(a, b):
    if is_number(a) and is_number(b):
        if isinstance(a, int) and isinstance(b, int):
            return a * b
        return float(a) * float(b)
    if is_number(a) and _numeric_list(b):
        return [mul(a, x) for x in b]
    if _numeric_list(a) and is_number(b):
        return [mul(x, b) for x in a]
    raise _mismatch("*", a, b)


def div(a, b):
    if is_number(a) and is_number(b):
        if b == 0:
            raise EvalError("division by zero")
        return float(a) / float(b)
    if _numeric_list(a) and is_number(b):
        return [div(x, b) for x in a]
    raise _mismatch("/", a, b)


def neg(a):
    if is_number(a):
        return -a
    if _numeric_list(a):
        return [-x for x in a]
    raise TypeMismatch(f"bad operand type for unary -: {type_name(a)}")


def truthy(v) -> bool:
    if v is None:
        return False
    if isinstance(v, bool):
        return v
    if isinstance(v, (int, float)):
        return v != 0
    if isinstance(v, (str, list, dict)):
        return len(v) > 0
    return True


def deep_eq(a, b) -> bool:
    if is_number(a):
        return is_number(b) and a == b
    if isinstance(a, bool):
        return isinstance(b, bool) and a is b
    if a is None:
        return b is None
    if isinstance(a, str):
        return isinstance(b, str) and a == b
    if isinstance(a, list):
        if not isinstance(b, list) or len(a) != len(b):
            return False
        return all(deep_eq(x, y) for x, y in zip(a, b))
    if isinstance(a, dict):
        if not isinstance(b, dict) or a.keys() != b.keys():
            return False
        return all(deep_eq(a[k], b[k]) for k in a)
    if isinstance(a, Entity):
        return isinstance(b, Entity) and a == b
    return a is b


def _rank(v) -> int:
    if v is None:
        return 0
    if isinstance(v, bool):
        return 1
    if isinstance(v, (int, float)):
        return 2
    if isinstance(v, str):
        return 3
    if isinstance(v, list):
        return 4
    if isinstance(v, dict):
        return 5
    return 6


def sort_key(v):
    """Total-order key: none < bool < numbers < strings < lists < dicts < entities."""
    r = _rank(v)
    if r == 0:
        return (0,)
    if r == 1:
        return (1, int(v))
    if r == 2:
        if isinstance(v, float) and math.isnan(v):
            return (2, 1, 0)
        return (2, 0, v)
    if r == 3:
        return (3, v)
    if r == 4:
        return (4, tuple(sort_key(x) for x in v))
    if r == 5:
        return (5, tuple((k, sort_key(v[k])) for k in sorted(v)))
    if isinstance(v, Entity):
        return (6, v.world, v.handle)
    return (7, repr(v))


def compare(op: str, a, b) -> bool:
    if is_number(a) and is_number(b):
        x, y = a, b
    elif _rank(a) == _rank(b) and _rank(a) in (1, 3, 4):
        x, y = sort_key(a), sort_key(b)
    else:
        raise _mismatch(op, a, b)
    if op == "<":
        return x < y
    if op == "<=":
        return x <= y
    if op == ">":
        return x > y
    if op == ">=":
        return x >= y
    raise ValueError(op)


def quote(s: str) -> str:
    return json.dumps(s, ensure_ascii=False)


def serialize(v) -> str:
    """Canonical, injective text rendering used for output and state keys.

    >>> serialize({"b": [1, 2.0], "a": None})
    '{"a": none, "b": [1, 2.0]}'
    """
    if v is None:
        return "none"
    if v is True:
        return "true"
    if v is False:
        return "false"
    if isinstance(v, int):
        return str(v)
    if isinstance(v, float):
        return repr(v)
    if isinstance(v, str):
        return quote(v)
    if isinstance(v, list):
        return "[" + ", ".join(serialize(x) for x in v) + "]"
    if isinstance(v, dict):
        items = (f"{quote(k)}: {serialize(v[k])}" for k in sorted(v))
        return "{" + ", ".join(items) + "}"
    if isinstance(v, Entity):
        return f"@{v.world}:{v.handle}"
    return f"<{type(v).__name__}>"
