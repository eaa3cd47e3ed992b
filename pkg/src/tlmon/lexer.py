"""Tokenizer for the specification language."""

from dataclasses import dataclass
from fractions import Fraction

from .errors import LexError

KEYWORDS = {
    "not", "and", "or", "implies", "since", "once", "always", "pre",
    "exists", "forall", "true", "false",
}

# Single-letter aliases for the temporal operators.
ALIASES = {"H": "always", "P": "once", "Y": "pre", "S": "since"}

# Longest-match first.
SYMBOLS = [
    ("&&", "and"), ("||", "or"), ("->", "implies"),
    ("<=", "<="), (">=", ">="), ("==", "=="), ("!=", "!="),
    ("!", "not"), ("<", "<"), (">", ">"),
    ("{", "{"), ("}", "}"), ("[", "["), ("]", "]"),
    (":", ":"), (",", ","), (".", "."), ("*", "*"), ("$", "$"),
    ("(", "("), (")", ")"),
]


@dataclass(frozen=True)
class Token:
    kind: str        # keyword/symbol name, "number", "string", "ident", "end"
    text: str
    position: int
    value: object = None  # Fraction for numbers, str for strings/idents


def tokenize(text):
    """Split specification text into tokens; raises LexError on bad input."""
    tokens = []
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch == '"':
            value, end = _scan_string(text, i)
            tokens.append(Token("string", text[i:end], i, value))
            i = end
            continue
        if ch.isdigit() or (ch in ".-" and i + 1 < n and text[i + 1].isdigit()):
            value, end = _scan_number(text, i)
            tokens.append(Token("number", text[i:end], i, value))
            i = end
            continue
        if ch.isalpha() or ch == "_":
            end = i + 1
            while end < n and (text[end].isalnum() or text[end] == "_"):
                end += 1
            word = text[i:end]
            if word in ALIASES:
                tokens.append(Token(ALIASES[word], word, i))
            elif word in KEYWORDS:
                tokens.append(Token(word, word, i))
            else:
                tokens.append(Token("ident", word, i, word))
            i = end
            continue
        for sym, kind in SYMBOLS:
            if text.startswith(sym, i):
                tokens.append(Token(kind, sym, i))
                i += len(sym)
                break
        else:
            raise LexError(i, f"illegal character {ch!r}")
    return tokens


def _scan_string(text, start):
    i = start + 1
    out = []
    while i < len(text):
        ch = text[i]
        if ch == '"':
            return "".join(out), i + 1
        if ch == "\\":
            if i + 1 >= len(text):
                break
            esc = text[i + 1]
            out.append({"n": "\n", "t": "\t"}.get(esc, esc))
            i += 2
            continue
        out.append(ch)
        i += 1
    raise LexError(start, "unterminated string literal")


def _scan_number(text, start):
    i = start
    n = len(text)
    if text[i] == "-":
        i += 1
    while i < n and text[i].isdigit():
        i += 1
    if i < n and text[i] == "." and i + 1 < n and text[i + 1].isdigit():
        i += 1
        while i < n and text[i].isdigit():
            i += 1
    literal = text[start:i]
    return Fraction(literal), i
