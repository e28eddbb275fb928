"""
Shared tokenizer for Turtle documents and SPARQL queries.

Os dois parsers consomem a mesma sequência de tokens; cada um decide o que
é válido na sua gramática e converte LexError no seu próprio erro de sintaxe.
"""

import re
from dataclasses import dataclass

_TOKEN_SPEC = [
    ("WS", r"\s+"),
    ("COMMENT", r"#[^\n]*"),
    ("IRIREF", r"<[^<>\"{}|^`\\\s]*>"),
    ("STRING_LONG", r'"""(?:[^"\\]|\\.|"(?!""))*"""'),
    ("STRING", r'"(?:[^"\\\n\r]|\\.)*"|\'(?:[^\'\\\n\r]|\\.)*\''),
    ("BLANK", r"_:[A-Za-z0-9_](?:[\w.-]*[\w-])?"),
    ("PNAME", r"(?:[A-Za-z][\w-]*(?:\.[\w-]+)*)?:(?:[\w](?:[\w.-]*[\w-])?)?"),
    ("VAR", r"[?$][A-Za-z0-9_]+"),
    ("AT", r"@[A-Za-z]+(?:-[A-Za-z0-9]+)*"),
    ("NUMBER", r"[+-]?(?:\d+\.\d+|\.\d+|\d+)(?:[eE][+-]?\d+)?"),
    ("DTMARK", r"\^\^"),
    ("PUNCT", r"&&|\|\||!=|<=|>=|[=\[\](){};,.*!<>|]"),
    ("NAME", r"[A-Za-z_][\w-]*"),
]

_MASTER = re.compile("|".join(f"(?P<{name}>{pattern})" for name, pattern in _TOKEN_SPEC))

_ESCAPES = {"t": "\t", "n": "\n", "r": "\r", "b": "\b", "f": "\f", '"': '"', "'": "'", "\\": "\\"}
_ESCAPE_RE = re.compile(r"\\(u[0-9A-Fa-f]{4}|U[0-9A-Fa-f]{8}|.)", re.DOTALL)


@dataclass(frozen=True, slots=True)
class Token:
    kind: str
    text: str
    line: int
    column: int
    position: int


class LexError(Exception):
    """Erro léxico interno; convertido pelo parser chamador."""

    def __init__(self, line: int, column: int, position: int, message: str) -> None:
        self.line = line
        self.column = column
        self.position = position
        self.message = message
        super().__init__(message)


def tokenize(text: str) -> list[Token]:
    """
    Quebra o texto em tokens (ignora espaços e comentários).

    Raises:
        LexError: Caractere que não inicia nenhum token
    """
    tokens: list[Token] = []
    line, line_start, position = 1, 0, 0
    while position < len(text):
        found = _MASTER.match(text, position)
        if found is None:
            raise LexError(line, position - line_start + 1, position, f"caractere inesperado {text[position]!r}")
        kind = found.lastgroup or ""
        value = found.group()
        if kind not in ("WS", "COMMENT"):
            tokens.append(Token(kind, value, line, position - line_start + 1, position))
        newlines = value.count("\n")
        if newlines:
            line += newlines
            line_start = position + value.rindex("\n") + 1
        position = found.end()
    tokens.append(Token("EOF", "", line, position - line_start + 1, position))
    return tokens


def unescape(body: str) -> str:
    """Resolve escapes de string (\\n, \\", \\uXXXX, ...)."""

    def replace(found: re.Match) -> str:
        code = found.group(1)
        if code[0] in "uU" and len(code) > 1:
            return chr(int(code[1:], 16))
        if code in _ESCAPES:
            return _ESCAPES[code]
        raise ValueError(f"escape inválido: \\{code}")

    return _ESCAPE_RE.sub(replace, body)


def string_body(token: Token) -> str:
    """Conteúdo de um token STRING/STRING_LONG sem aspas e já sem escapes."""
    quote = 3 if token.kind == "STRING_LONG" else 1
    return unescape(token.text[quote:-quote])
