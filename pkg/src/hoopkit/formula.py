"""Propositional formulas over implication, additive conjunction and halving.

The connectives are written in ASCII as ``-o`` (implication, right
associative, loosest), ``+`` (conjunction, left associative) and a postfix
``/2`` (halving, tightest).  ``0`` is the true constant and ``1`` the false
one; under the dual reading used throughout this package, small truth values
are strong and ``1`` annihilates.  Schema patterns may additionally contain
metavariables written ``?A``.
"""

from __future__ import annotations

from dataclasses import dataclass


class ParseError(ValueError):
    """Raised on lexical or syntactic errors; carries the offending position."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


@dataclass(frozen=True, slots=True)
class Formula:
    pass


@dataclass(frozen=True, slots=True)
class Truth(Formula):
    """The constant 0."""


@dataclass(frozen=True, slots=True)
class Falsity(Formula):
    """The constant 1."""


@dataclass(frozen=True, slots=True)
class Var(Formula):
    name: str


@dataclass(frozen=True, slots=True)
class MetaVar(Formula):
    """Schema metavariable (``?A``); only legal in patterns."""

    name: str


@dataclass(frozen=True, slots=True)
class Imp(Formula):
    lhs: Formula
    rhs: Formula


@dataclass(frozen=True, slots=True)
class Conj(Formula):
    lhs: Formula
    rhs: Formula


@dataclass(frozen=True, slots=True)
class Half(Formula):
    body: Formula


def negate(f: Formula) -> Formula:
    """Negation as the derived operator f -o 1."""
    return Imp(f, Falsity())


# ---------------------------------------------------------------------------
# Lexer / parser
# ---------------------------------------------------------------------------

_TOKEN_IMP = "-o"
_TOKEN_CONJ = "+"
_TOKEN_HALF = "/2"


def _tokenize(text: str, allow_metavars: bool) -> list[tuple[str, str, int]]:
    """Return (kind, value, position) triples.

    Kinds: ``imp conj half lparen rparen zero one ident metavar``.
    """
    tokens = []
    i = 0
    n = len(text)
    while i < n:
        c = text[i]
        if c.isspace():
            i += 1
            continue
        if c == "(":
            tokens.append(("lparen", c, i))
            i += 1
        elif c == ")":
            tokens.append(("rparen", c, i))
            i += 1
        elif c == "+":
            tokens.append(("conj", c, i))
            i += 1
        elif c == "-":
            if text.startswith(_TOKEN_IMP, i):
                tokens.append(("imp", _TOKEN_IMP, i))
                i += 2
            else:
                raise ParseError("expected '-o'", i)
        elif c == "/":
            if text.startswith(_TOKEN_HALF, i):
                tokens.append(("half", _TOKEN_HALF, i))
                i += 2
            else:
                raise ParseError("expected '/2'", i)
        elif c == "0":
            tokens.append(("zero", c, i))
            i += 1
        elif c == "1":
            tokens.append(("one", c, i))
            i += 1
        elif c == "?":
            if not allow_metavars:
                raise ParseError("metavariables are not allowed here", i)
            j = i + 1
            if j >= n or not text[j].isupper():
                raise ParseError("metavariable must start with an uppercase letter", i)
            k = j
            while k < n and text[k].isalnum():
                k += 1
            tokens.append(("metavar", text[j:k], i))
            i = k
        elif c.isalpha():
            j = i
            while j < n and text[j].isalnum():
                j += 1
            tokens.append(("ident", text[i:j], i))
            i = j
        else:
            raise ParseError(f"unexpected character {c!r}", i)
    return tokens


class _Parser:
    def __init__(self, tokens: list[tuple[str, str, int]], length: int):
        self.tokens = tokens
        self.pos = 0
        self.length = length

    def peek(self) -> str | None:
        return self.tokens[self.pos][0] if self.pos < len(self.tokens) else None

    def here(self) -> int:
        return self.tokens[self.pos][2] if self.pos < len(self.tokens) else self.length

    def take(self) -> tuple[str, str, int]:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    # formula := conj ('-o' formula)?     right associative
    def formula(self) -> Formula:
        left = self.conj()
        if self.peek() == "imp":
            self.take()
            return Imp(left, self.formula())
        return left

    # conj := half ('+' half)*            left associative
    def conj(self) -> Formula:
        left = self.half()
        while self.peek() == "conj":
            self.take()
            left = Conj(left, self.half())
        return left

    # half := atom ('/2')*
    def half(self) -> Formula:
        f = self.atom()
        while self.peek() == "half":
            self.take()
            f = Half(f)
        return f

    def atom(self) -> Formula:
        kind = self.peek()
        if kind is None:
            raise ParseError("unexpected end of input", self.here())
        kind, value, position = self.take()
        if kind == "zero":
            return Truth()
        if kind == "one":
            return Falsity()
        if kind == "ident":
            return Var(value)
        if kind == "metavar":
            return MetaVar(value)
        if kind == "lparen":
            f = self.formula()
            if self.peek() != "rparen":
                raise ParseError("expected ')'", self.here())
            self.take()
            return f
        raise ParseError(f"unexpected token {value!r}", position)


def _parse(text: str, allow_metavars: bool) -> Formula:
    if not text.strip():
        raise ParseError("empty input", 0)
    parser = _Parser(_tokenize(text, allow_metavars), len(text))
    f = parser.formula()
    if parser.peek() is not None:
        raise ParseError(f"trailing input {parser.tokens[parser.pos][1]!r}", parser.here())
    return f


def parse(text: str) -> Formula:
    """Parse an object-language formula (no metavariables)."""
    return _parse(text, allow_metavars=False)


def parse_pattern(text: str) -> Formula:
    """Parse a schema pattern; ``?A`` style metavariables are permitted."""
    return _parse(text, allow_metavars=True)


# ---------------------------------------------------------------------------
# Printer
# ---------------------------------------------------------------------------

# Precedence levels used for minimal bracketing; higher binds tighter.
_LEVEL_IMP = 0
_LEVEL_CONJ = 1
_LEVEL_HALF = 2
_LEVEL_ATOM = 3


def _level(f: Formula) -> int:
    if isinstance(f, Imp):
        return _LEVEL_IMP
    if isinstance(f, Conj):
        return _LEVEL_CONJ
    if isinstance(f, Half):
        return _LEVEL_HALF
    return _LEVEL_ATOM


def _render(f: Formula, min_level: int) -> str:
    if isinstance(f, Truth):
        s = "0"
    elif isinstance(f, Falsity):
        s = "1"
    elif isinstance(f, Var):
        s = f.name
    elif isinstance(f, MetaVar):
        s = "?" + f.name
    elif isinstance(f, Imp):
        s = f"{_render(f.lhs, _LEVEL_CONJ)} -o {_render(f.rhs, _LEVEL_IMP)}"
    elif isinstance(f, Conj):
        s = f"{_render(f.lhs, _LEVEL_CONJ)} + {_render(f.rhs, _LEVEL_HALF)}"
    elif isinstance(f, Half):
        s = f"{_render(f.body, _LEVEL_HALF)}/2"
    else:
        raise TypeError(f"not a formula: {f!r}")
    if _level(f) < min_level:
        return f"({s})"
    return s


def pretty(f: Formula) -> str:
    """Minimal-bracket rendering; parse(pretty(f)) == f."""
    return _render(f, _LEVEL_IMP)


# ---------------------------------------------------------------------------
# Schema matching and substitution
# ---------------------------------------------------------------------------


def substitute(mapping: dict[str, Formula], pattern: Formula) -> Formula:
    """Replace each metavariable by its image; object variables are left alone."""
    if isinstance(pattern, MetaVar):
        try:
            return mapping[pattern.name]
        except KeyError:
            raise KeyError(f"unbound metavariable ?{pattern.name}") from None
    if isinstance(pattern, Imp):
        return Imp(substitute(mapping, pattern.lhs), substitute(mapping, pattern.rhs))
    if isinstance(pattern, Conj):
        return Conj(substitute(mapping, pattern.lhs), substitute(mapping, pattern.rhs))
    if isinstance(pattern, Half):
        return Half(substitute(mapping, pattern.body))
    return pattern


def match_schema(pattern: Formula, target: Formula) -> dict[str, Formula] | None:
    """First-order matching of a schema pattern against a concrete formula.

    Returns the substitution sigma with substitute(sigma, pattern) == target,
    or None if there is none.  Repeated metavariables must match equal
    subformulas.
    """
    sigma: dict[str, Formula] = {}

    def go(p: Formula, t: Formula) -> bool:
        if isinstance(p, MetaVar):
            bound = sigma.get(p.name)
            if bound is None:
                sigma[p.name] = t
                return True
            return bound == t
        if isinstance(p, Imp) and isinstance(t, Imp):
            return go(p.lhs, t.lhs) and go(p.rhs, t.rhs)
        if isinstance(p, Conj) and isinstance(t, Conj):
            return go(p.lhs, t.lhs) and go(p.rhs, t.rhs)
        if isinstance(p, Half) and isinstance(t, Half):
            return go(p.body, t.body)
        return p == t

    return sigma if go(pattern, target) else None


# ---------------------------------------------------------------------------
# Utilities
# ---------------------------------------------------------------------------


def variables(f: Formula) -> set[str]:
    """Names of the object variables occurring in f."""
    out: set[str] = set()

    def go(g: Formula):
        if isinstance(g, Var):
            out.add(g.name)
        elif isinstance(g, Imp) or isinstance(g, Conj):
            go(g.lhs)
            go(g.rhs)
        elif isinstance(g, Half):
            go(g.body)

    go(f)
    return out


def metavariables(f: Formula) -> set[str]:
    out: set[str] = set()

    def go(g: Formula):
        if isinstance(g, MetaVar):
            out.add(g.name)
        elif isinstance(g, Imp) or isinstance(g, Conj):
            go(g.lhs)
            go(g.rhs)
        elif isinstance(g, Half):
            go(g.body)

    go(f)
    return out


def contains_half(f: Formula) -> bool:
    if isinstance(f, Half):
        return True
    if isinstance(f, (Imp, Conj)):
        return contains_half(f.lhs) or contains_half(f.rhs)
    return False


def contains_falsity(f: Formula) -> bool:
    if isinstance(f, Falsity):
        return True
    if isinstance(f, (Imp, Conj)):
        return contains_falsity(f.lhs) or contains_falsity(f.rhs)
    if isinstance(f, Half):
        return contains_falsity(f.body)
    return False


def sort_key(f: Formula) -> str:
    """A total order on formulas, used to normalise multiset contexts."""
    return pretty(f)


# Nested tagged records, the canonical structural serialization.  This is the
# form used inside derivation files and by the command line tools.

def to_record(f: Formula) -> dict:
    if isinstance(f, Truth):
        return {"op": "truth"}
    if isinstance(f, Falsity):
        return {"op": "falsity"}
    if isinstance(f, Var):
        return {"op": "var", "name": f.name}
    if isinstance(f, MetaVar):
        return {"op": "metavar", "name": f.name}
    if isinstance(f, Imp):
        return {"op": "imp", "lhs": to_record(f.lhs), "rhs": to_record(f.rhs)}
    if isinstance(f, Conj):
        return {"op": "conj", "lhs": to_record(f.lhs), "rhs": to_record(f.rhs)}
    if isinstance(f, Half):
        return {"op": "half", "body": to_record(f.body)}
    raise TypeError(f"not a formula: {f!r}")


def from_record(record: dict) -> Formula:
    op = record.get("op")
    if op == "truth":
        return Truth()
    if op == "falsity":
        return Falsity()
    if op == "var":
        return Var(record["name"])
    if op == "metavar":
        return MetaVar(record["name"])
    if op == "imp":
        return Imp(from_record(record["lhs"]), from_record(record["rhs"]))
    if op == "conj":
        return Conj(from_record(record["lhs"]), from_record(record["rhs"]))
    if op == "half":
        return Half(from_record(record["body"]))
    raise ValueError(f"unknown formula record {record!r}")
