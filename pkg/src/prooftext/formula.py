"""Logical formulas as s-expression terms, plus lexicon-driven rendering.

Formulas are written in prefix s-expression syntax, e.g. ``(ELE a U)`` or
``(= (* u1 1U) u1)``.  Rendering turns a term into an English phrase
("a is an element of U") or math notation ("a ∈ U") using a lexicon
loaded from a small line-oriented text file.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from enum import Enum
from importlib import resources
from typing import Iterator, Union

from .errors import LexiconError, ParseError

CONNECTIVES = frozenset({"and", "or", "implies", "not", "forall", "exists", "equals"})
QUANTIFIERS = frozenset({"forall", "exists"})

# (prose, symbolic) forms of the built-in connectives
_CONNECTIVE_FORMS: dict[str, tuple[str, str]] = {
    "and": ("$1 and $2", "$1 ∧ $2"),
    "or": ("$1 or $2", "$1 ∨ $2"),
    "implies": ("if $1, then $2", "$1 → $2"),
    "not": ("it is not the case that $1", "¬$1"),
    "forall": ("for all $1, $2", "∀$1. $2"),
    "exists": ("there is an $1, $2", "∃$1. $2"),
    "equals": ("$1 equals $2", "$1 = $2"),
}
_CONNECTIVE_ARITY = {"not": 1}

_SLOT = re.compile(r"\$(\d+)")


@dataclass(frozen=True)
class Term:
    head: str
    args: tuple["Term", ...] = ()

    @property
    def is_atom(self) -> bool:
        return not self.args

    def __str__(self) -> str:
        return print_term(self)


def atom(symbol: str) -> Term:
    return Term(symbol)


def term(head: str, *args: Union[Term, str]) -> Term:
    """Build a term, promoting bare strings to atoms."""
    return Term(head, tuple(a if isinstance(a, Term) else Term(a) for a in args))


# --------------------------------------------------------------------------
# s-expression reading

Sexpr = Union[str, list]

_DELIMS = set("() \t\r\n")


@dataclass
class _Reader:
    text: str
    pos: int = 0
    line_offset: int = 0

    def skip_ws(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos] in " \t\r\n":
            self.pos += 1

    def error(self, message: str, pos: int | None = None) -> ParseError:
        return ParseError(message, position=self.pos if pos is None else pos)

    def read(self) -> Sexpr:
        self.skip_ws()
        if self.pos >= len(self.text):
            raise self.error("unexpected end of input")
        ch = self.text[self.pos]
        if ch == ")":
            raise self.error("unbalanced ')'")
        if ch == "(":
            start = self.pos
            self.pos += 1
            items: list = []
            while True:
                self.skip_ws()
                if self.pos >= len(self.text):
                    raise self.error("unclosed '(' opened", pos=start)
                if self.text[self.pos] == ")":
                    self.pos += 1
                    return items
                items.append(self.read())
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos] not in _DELIMS:
            self.pos += 1
        return self.text[start:self.pos]

    def at_end(self) -> bool:
        self.skip_ws()
        return self.pos >= len(self.text)


def read_sexprs(text: str) -> list[Sexpr]:
    """Read every top-level s-expression in ``text`` as nested lists of strings."""
    reader = _Reader(text)
    out = []
    while not reader.at_end():
        out.append(reader.read())
    return out


def sexpr_to_term(expr: Sexpr, position: int | None = None) -> Term:
    if isinstance(expr, str):
        return Term(expr)
    if not expr:
        raise ParseError("empty expression '()'", position=position)
    head, *rest = expr
    if not isinstance(head, str):
        raise ParseError("the head of a compound term must be a symbol", position=position)
    return Term(head, tuple(sexpr_to_term(a, position) for a in rest))


def parse_term(text: str) -> Term:
    """Parse exactly one term from s-expression text.

    >>> parse_term("(ELE a U)")
    Term(head='ELE', args=(Term(head='a', args=()), Term(head='U', args=())))
    """
    reader = _Reader(text)
    if reader.at_end():
        raise ParseError("empty expression", position=0)
    start = reader.pos
    expr = reader.read()
    if not reader.at_end():
        raise ParseError("trailing input after term", position=reader.pos)
    t = sexpr_to_term(expr, start)
    check_arities([t])
    return t


def check_arities(terms, known: dict[str, int] | None = None) -> dict[str, int]:
    """Check that every head symbol is used with one arity; returns the arity map."""
    arities = {} if known is None else known
    for t in terms:
        for sub in subterms(t):
            if sub.is_atom:
                continue
            seen = arities.setdefault(sub.head, len(sub.args))
            if seen != len(sub.args):
                raise ParseError(
                    f"symbol {sub.head!r} used with arity {len(sub.args)} and {seen}")
            if sub.head in CONNECTIVES:
                want = _CONNECTIVE_ARITY.get(sub.head, 2)
                if len(sub.args) != want:
                    raise ParseError(f"connective {sub.head!r} takes {want} arguments")
    return arities


def print_term(t: Term) -> str:
    if t.is_atom:
        return t.head
    return "(" + " ".join([t.head] + [print_term(a) for a in t.args]) + ")"


def subterms(t: Term) -> Iterator[Term]:
    yield t
    for a in t.args:
        yield from subterms(a)


def leaves(t: Term) -> set[str]:
    return {s.head for s in subterms(t) if s.is_atom}


def objects_of(t: Term) -> frozenset[str]:
    """Semantic objects mentioned in a formula: every non-head leaf symbol.

    Bound variables count as objects too; only set overlap is ever compared.
    """
    if t.is_atom:
        return frozenset({t.head})
    out: set[str] = set()
    stack = list(t.args)
    while stack:
        s = stack.pop()
        if s.is_atom:
            out.add(s.head)
        else:
            stack.extend(s.args)
    return frozenset(out)


# --------------------------------------------------------------------------
# lexicon

class RenderMode(str, Enum):
    PROSE = "prose"
    SYMBOLIC = "symbolic"
    # symbolic wherever the lexicon offers a symbolic form, prose otherwise
    AUTO = "auto"


def _check_template(template: str, arity: int, where: str) -> None:
    slots = [int(m) for m in _SLOT.findall(template)]
    if len(slots) != len(set(slots)):
        raise LexiconError(f"{where}: template uses an argument slot twice")
    bad = [s for s in slots if s < 1 or s > arity]
    if bad:
        raise LexiconError(f"{where}: slot ${bad[0]} out of range for arity {arity}")


@dataclass(frozen=True)
class LexiconEntry:
    predicate: str
    arity: int
    template: str
    symbolic_form: str | None = None

    def __post_init__(self):
        where = f"{self.predicate}/{self.arity}"
        _check_template(self.template, self.arity, where)
        if self.symbolic_form is not None:
            _check_template(self.symbolic_form, self.arity, where)


@dataclass
class Lexicon:
    entries: dict[tuple[str, int], LexiconEntry] = field(default_factory=dict)
    # inference method name -> phrase, e.g. "according to the definition of subset"
    methods: dict[str, str] = field(default_factory=dict)

    def add(self, entry: LexiconEntry) -> None:
        self.entries[(entry.predicate, entry.arity)] = entry

    def get(self, predicate: str, arity: int) -> LexiconEntry | None:
        return self.entries.get((predicate, arity))

    def method_phrase(self, method: str) -> str:
        try:
            return self.methods[method]
        except KeyError:
            raise LexiconError(f"no phrase for inference method {method!r}", symbol=method) from None


_ENTRY_LINE = re.compile(r"^(?P<pred>\S+)/(?P<arity>\d+)\s*:\s*(?P<body>.*)$")
_METHOD_LINE = re.compile(r"^method\s+(?P<name>\S+)\s*:\s*(?P<phrase>.+)$")


def parse_lexicon(text: str) -> Lexicon:
    """Parse lexicon text.

    Entry lines look like ``SUBSET/2: $1 is a subset of $2 ;; $1 ⊂ $2``;
    method lines look like ``method Ds: according to the definition of subset``.
    Blank lines and ``#`` comments are ignored.
    """
    lex = Lexicon()
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        m = _METHOD_LINE.match(line)
        if m:
            lex.methods[m["name"]] = m["phrase"].strip()
            continue
        m = _ENTRY_LINE.match(line)
        if not m:
            raise LexiconError(f"line {lineno}: cannot parse lexicon entry {line!r}")
        template, _, symbolic = m["body"].partition(";;")
        try:
            lex.add(LexiconEntry(m["pred"], int(m["arity"]), template.strip(),
                                 symbolic.strip() or None))
        except LexiconError as exc:
            raise LexiconError(f"line {lineno}: {exc}", symbol=m["pred"]) from None
    return lex


def load_lexicon(path) -> Lexicon:
    with open(path, encoding="utf-8") as fh:
        return parse_lexicon(fh.read())


def default_lexicon() -> Lexicon:
    text = resources.files("prooftext.data").joinpath("default.lex").read_text(encoding="utf-8")
    return parse_lexicon(text)


# --------------------------------------------------------------------------
# rendering

def _fill(template: str, parts: list[str]) -> str:
    return _SLOT.sub(lambda m: parts[int(m.group(1)) - 1], template)


def _is_relation(t: Term) -> bool:
    return t.head in ("=", "equals")


def render_term(t: Term, lex: Lexicon, mode: RenderMode | str = RenderMode.PROSE) -> str:
    """Render ``t`` as an English phrase or as math notation.

    Atoms render as themselves unless the lexicon has a ``sym/0`` entry.
    Raises LexiconError naming the first predicate without an entry.
    """
    mode = RenderMode(mode)
    if t.is_atom:
        entry = lex.get(t.head, 0)
        if entry is None:
            return t.head
        if mode is not RenderMode.PROSE and entry.symbolic_form:
            return entry.symbolic_form
        return entry.template

    if t.head in CONNECTIVES:
        prose, symbolic = _CONNECTIVE_FORMS[t.head]
        use_symbolic = mode is RenderMode.SYMBOLIC or (
            mode is RenderMode.AUTO and t.head not in QUANTIFIERS)
    else:
        entry = lex.get(t.head, len(t.args))
        if entry is None:
            raise LexiconError(f"no lexicon entry for {t.head}/{len(t.args)}", symbol=t.head)
        prose, symbolic = entry.template, entry.symbolic_form
        use_symbolic = mode is not RenderMode.PROSE and symbolic is not None

    if not use_symbolic:
        return _fill(prose, [render_term(a, lex, mode) for a in t.args])

    parts = []
    for a in t.args:
        text = render_term(a, lex, mode)
        # parenthesize nested compounds unless under an equation, or a
        # non-connective formula under a connective
        if not a.is_atom and not _is_relation(t) and not (
                t.head in CONNECTIVES and a.head not in CONNECTIVES):
            text = f"({text})"
        parts.append(text)
    return _fill(symbolic, parts)
