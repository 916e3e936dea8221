from __future__ import annotations

from dataclasses import dataclass

from ..errors import LexError

KEYWORDS = frozenset(
    """
    SELECT FROM WHERE GROUP ORDER BY AS START CONNECT STOP WITH NO CYCLE
    UNIQUE MEMORIZE MAXIMUM IF AND OR NOT THIS TRUE FALSE NONE
    """.split()
)

OPERATORS = ("==", "!=", "<=", ">=", "<", ">", "=", "+", "-", "*", "/")
PUNCTUATION = "()[]{},;."

_ESCAPES = {
    '"': '"',
    "'": "'",
    "\\": "\\",
    "/": "/",
    "b": "\b",
    "f": "\f",
    "n": "\n",
    "r": "\r",
    "t": "\t",
    "0": "\0",
}


@dataclass(frozen=True)
class Token:
    kind: str  # keyword | ident | int | float | string | op | punct | eof
    text: str
    line: int
    column: int
    value: object = None

    def __repr__(self):
        return f"{self.kind}({self.text})"


def tokenize(source: str) -> list[Token]:
    """Split script text into tokens, dropping whitespace and ``#`` comments.

    Keywords are matched case-insensitively and their ``text`` is the
    upper-cased word. The list always ends with a single ``eof`` token.
    """
    tokens = []
    i, n = 0, len(source)
    line, col = 1, 1

    def advance(k):
        nonlocal i, line, col
        for _ in range(k):
            if source[i] == "\n":
                line += 1
                col = 1
            else:
                col += 1
            i += 1

    while i < n:
        c = source[i]
        if c in " \t\r\n\f\v":
            advance(1)
            continue
        if c == "#":
            while i < n and source[i] != "\n":
                advance(1)
            continue
        start_line, start_col = line, col

        if c.isalpha() or c == "_":
            j = i
            while j < n and (source[j].isalnum() or source[j] == "_"):
                j += 1
            word = source[i:j]
            upper = word.upper()
            if upper in KEYWORDS:
                tokens.append(Token("keyword", upper, start_line, start_col))
            else:
                tokens.append(Token("ident", word, start_line, start_col))
            advance(j - i)
            continue

        if c.isdigit():
            j = i
            while j < n and source[j].isdigit():
                j += 1
            is_float = False
            if j + 1 < n and source[j] == "." and source[j + 1].isdigit():
                is_float = True
                j += 1
                while j < n and source[j].isdigit():
                    j += 1
            if j < n and source[j] in "eE":
                k = j + 1
                if k < n and source[k] in "+-":
                    k += 1
                if k < n and source[k].isdigit():
                    is_float = True
                    j = k
                    while j < n and source[j].isdigit():
                        j += 1
            text = source[i:j]
            if j < n and (source[j].isalpha() or source[j] == "_"):
                raise LexError(start_line, start_col, f"malformed number {source[i:j + 1]!r}")
            if is_float:
                tokens.append(Token("float", text, start_line, start_col, float(text)))
            else:
                tokens.append(Token("int", text, start_line, start_col, int(text)))
            advance(j - i)
            continue

        if c in "\"'":
            quote = c
            j = i + 1
            chars = []
            while True:
                if j >= n or source[j] == "\n":
                    raise LexError(start_line, start_col, "unterminated string literal")
                ch = source[j]
                if ch == quote:
                    j += 1
                    break
                if ch == "\\":
                    if j + 1 >= n:
                        raise LexError(start_line, start_col, "unterminated string literal")
                    esc = source[j + 1]
                    if esc in _ESCAPES:
                        chars.append(_ESCAPES[esc])
                        j += 2
                    elif esc == "u":
                        digits = source[j + 2:j + 6]
                        if len(digits) != 4 or any(d not in "0123456789abcdefABCDEF" for d in digits):
                            raise LexError(line, col + (j - i), "bad \\u escape")
                        chars.append(chr(int(digits, 16)))
                        j += 6
                    else:
                        raise LexError(line, col + (j - i), f"unknown escape \\{esc}")
                    continue
                chars.append(ch)
                j += 1
            tokens.append(Token("string", source[i:j], start_line, start_col, "".join(chars)))
            advance(j - i)
            continue

        for op in OPERATORS:
            if source.startswith(op, i):
                tokens.append(Token("op", op, start_line, start_col))
                advance(len(op))
                break
        else:
            if c in PUNCTUATION:
                tokens.append(Token("punct", c, start_line, start_col))
                advance(1)
            else:
                raise LexError(start_line, start_col, f"unexpected character {c!r}")

    tokens.append(Token("eof", "", line, col))
    return tokens
