"""Product metrics for brace-delimited C/Java-like sources.

A small hand-written lexer blanks out string/char literals and comments so
that brace matching and decision counting only ever see real code. This is a
heuristic extractor, not a parser: generics, preprocessor macros and nested
classes are not modelled.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from statistics import mean
from typing import Literal

Aggregate = Literal["max", "sum", "mean"]

_CONTROL_KEYWORDS = frozenset(
    {"if", "for", "while", "switch", "catch", "do", "else", "return", "synchronized", "sizeof", "try", "new"}
)
_DECISION_WORDS = frozenset({"if", "for", "while", "do", "case", "catch"})
_TOKEN_RE = re.compile(r"[A-Za-z_]\w*|&&|\|\||\?|[{}<>,.]|\S")
_HEADER_RE = re.compile(
    r"([A-Za-z_]\w*)\s*\((?:[^()]|\([^()]*\))*\)"
    r"(?:\s*(?:const|noexcept|override|final))*"
    r"(?:\s*throws\s+[\w.]+(?:\s*,\s*[\w.]+)*)?\s*$"
)


class StructuralParseError(ValueError):
    def __init__(self, message: str, line: int) -> None:
        super().__init__(f"line {line}: {message}")
        self.line = line


@dataclass(frozen=True)
class LocCounts:
    total: int = 0
    blank: int = 0
    comment: int = 0
    code: int = 0

    def __add__(self, other: "LocCounts") -> "LocCounts":
        return LocCounts(
            self.total + other.total,
            self.blank + other.blank,
            self.comment + other.comment,
            self.code + other.code,
        )


@dataclass(frozen=True)
class MethodSpan:
    name: str
    start_line: int
    end_line: int
    decision_points: int = 0

    @property
    def length(self) -> int:
        return self.end_line - self.start_line + 1


@dataclass(frozen=True)
class PartMetrics:
    loc: int
    mean_method_length: float
    mccabe: int


def _split_lines(text: str) -> list[str]:
    if not text:
        return []
    lines = text.split("\n")
    if lines[-1] == "":
        lines.pop()
    return lines


def _lex(text: str) -> tuple[str, list[bool]]:
    """Return (masked_text, comment_lines).

    ``masked_text`` has the same length and line structure as ``text`` but
    every character inside a comment or a string/char literal is replaced by
    a space (literal delimiters are kept so the code still "looks" like an
    expression). ``comment_lines[i]`` is True when line i touches a comment.
    """
    out = list(text)
    comment_lines = [False] * (text.count("\n") + 1)
    line = 0
    i, n = 0, len(text)
    state = "code"
    while i < n:
        ch = text[i]
        nxt = text[i + 1] if i + 1 < n else ""
        if ch == "\n":
            line += 1
            if state in ("string", "char"):
                # unterminated literal, recover at end of line
                state = "code"
            elif state == "line_comment":
                state = "code"
            i += 1
            continue
        if state == "code":
            if ch == "/" and nxt == "/":
                state = "line_comment"
                comment_lines[line] = True
                out[i] = out[i + 1] = " "
                i += 2
                continue
            if ch == "/" and nxt == "*":
                state = "block_comment"
                comment_lines[line] = True
                out[i] = out[i + 1] = " "
                i += 2
                continue
            if ch == '"':
                state = "string"
            elif ch == "'":
                state = "char"
            i += 1
            continue
        if state == "line_comment":
            out[i] = " "
            i += 1
            continue
        if state == "block_comment":
            comment_lines[line] = True
            if ch == "*" and nxt == "/":
                out[i] = out[i + 1] = " "
                state = "code"
                i += 2
                continue
            out[i] = " "
            i += 1
            continue
        # inside a string or char literal
        quote = '"' if state == "string" else "'"
        if ch == "\\" and nxt and nxt != "\n":
            out[i] = out[i + 1] = " "
            i += 2
            continue
        if ch == quote:
            state = "code"
        else:
            out[i] = " "
        i += 1
    return "".join(out), comment_lines


def count_loc(source_text: str) -> LocCounts:
    """Classify every line as blank, comment-only or code.

    A line carrying code and a trailing comment counts as code. A final line
    without a newline is still a line.
    """
    raw_lines = _split_lines(source_text)
    masked, comment_lines = _lex(source_text)
    masked_lines = masked.split("\n")
    blank = comment = code = 0
    for idx, raw in enumerate(raw_lines):
        if not raw.strip():
            blank += 1
        elif not masked_lines[idx].strip() and comment_lines[idx]:
            comment += 1
        else:
            code += 1
    return LocCounts(len(raw_lines), blank, comment, code)


def _line_starts(text: str) -> list[int]:
    starts = [0]
    for m in re.finditer("\n", text):
        starts.append(m.end())
    return starts


def _line_of(starts: list[int], offset: int) -> int:
    lo, hi = 0, len(starts) - 1
    while lo < hi:
        mid = (lo + hi + 1) // 2
        if starts[mid] <= offset:
            lo = mid
        else:
            hi = mid - 1
    return lo + 1


def _method_header(prefix: str) -> tuple[str, int] | None:
    """Match a method header at the end of ``prefix``; return (name, name offset)."""
    m = _HEADER_RE.search(prefix)
    if m is None:
        return None
    name = m.group(1)
    if name in _CONTROL_KEYWORDS:
        return None
    before = prefix[: m.start(1)].rstrip()
    if before.endswith("new") and (len(before) == 3 or not (before[-4].isalnum() or before[-4] == "_")):
        # anonymous class instantiation, not a declaration
        return None
    if before.endswith((".", "=", "(", ",", "return")):
        return None
    return name, m.start(1)


def _count_decisions(masked_body: str) -> int:
    count = 0
    tokens = [m.group(0) for m in _TOKEN_RE.finditer(masked_body)]
    block_is_do: list[bool] = []
    prev = ""
    closed_do = False
    for idx, tok in enumerate(tokens):
        if tok == "{":
            block_is_do.append(prev == "do")
        elif tok == "}":
            closed_do = bool(block_is_do) and block_is_do.pop()
            prev = tok
            continue
        elif tok in _DECISION_WORDS:
            if not (tok == "while" and prev == "}" and closed_do):
                count += 1
        elif tok in ("&&", "||"):
            count += 1
        elif tok == "?":
            nxt = tokens[idx + 1] if idx + 1 < len(tokens) else ""
            # generic wildcard: List<?>, Map<? extends K, V>
            if prev not in ("<", ",") and nxt not in (">", "extends", "super"):
                count += 1
        closed_do = False
        prev = tok
    return count


def _scan(source_text: str) -> tuple[str, list[MethodSpan], list[tuple[int, int]]]:
    masked, _ = _lex(source_text)
    starts = _line_starts(masked)
    spans: list[MethodSpan] = []
    bodies: list[tuple[int, int]] = []
    stack: list[int] = []
    method_depth: int | None = None
    method_name = ""
    method_start = 0
    body_open = 0
    last_boundary = 0
    for i, ch in enumerate(masked):
        if ch == "{":
            if method_depth is None:
                header = _method_header(masked[last_boundary:i])
                if header is not None:
                    method_name, name_off = header
                    method_start = _line_of(starts, last_boundary + name_off)
                    method_depth = len(stack)
                    body_open = i
            stack.append(i)
            last_boundary = i + 1
        elif ch == "}":
            if not stack:
                raise StructuralParseError("unbalanced '}'", _line_of(starts, i))
            stack.pop()
            if method_depth is not None and len(stack) == method_depth:
                body = masked[body_open + 1 : i]
                spans.append(
                    MethodSpan(method_name, method_start, _line_of(starts, i), _count_decisions(body))
                )
                bodies.append((body_open + 1, i))
                method_depth = None
            last_boundary = i + 1
        elif ch == ";":
            last_boundary = i + 1
    if stack:
        raise StructuralParseError("unclosed '{'", _line_of(starts, stack[-1]))
    return masked, spans, bodies


def extract_methods(source_text: str) -> list[MethodSpan]:
    """Find method/function bodies at class or file level.

    A body is an identifier followed by a parenthesised parameter list and
    ``{``. Bodies nested inside another method (lambdas, local classes) are
    folded into the enclosing method.
    """
    return _scan(source_text)[1]


def cyclomatic(method: MethodSpan) -> int:
    return 1 + method.decision_points


def decision_points(body_text: str) -> int:
    """Count decision points in a raw code fragment (comments/strings ignored)."""
    return _count_decisions(_lex(body_text)[0])


def extract_part_metrics(source_text: str, aggregate: Aggregate = "max") -> PartMetrics:
    loc = count_loc(source_text).total
    methods = extract_methods(source_text)
    if not methods:
        return PartMetrics(loc, 0.0, 0)
    values = [cyclomatic(m) for m in methods]
    if aggregate == "max":
        cc = max(values)
    elif aggregate == "sum":
        cc = sum(values)
    elif aggregate == "mean":
        cc = round(mean(values))
    else:
        raise ValueError(f"unknown aggregate {aggregate!r}")
    return PartMetrics(loc, float(mean(m.length for m in methods)), cc)
