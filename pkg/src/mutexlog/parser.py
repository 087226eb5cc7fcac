"""Tokenizer, parser and printer for the .mw surface syntax.

Statement shape:

    mod(name).                     first statement only: module header
    head.                          fact
    head :- goal.                  rule
    clause & clause & ... .        choice group (mutually exclusive clauses)

Goal connectives: `,` conjunction (binds tightest), `clause => goal`
hypothetical implication (right associative, looser than `,`), and
`exists X. goal` whose body extends maximally to the right.  `&` binds
looser than `:-`, so the two clauses of a choice keep their own bodies.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .errors import LexError, MalformedModuleError, ParseError
from .terms import (
    CONS,
    Compound,
    Const,
    DAll,
    DAnd,
    DAtom,
    DChoice,
    DFormula,
    DImp,
    DModRef,
    GAnd,
    GAtom,
    GExists,
    GFormula,
    GImp,
    Int,
    NIL,
    Term,
    Var,
    desugar_clause,
    list_view,
    mk_list,
)

# ---------------------------------------------------------------------------
# tokens

ATOM = "ATOM"
VAR = "VAR"
INT = "INT"
LPAREN = "LPAREN"
RPAREN = "RPAREN"
LBRACKET = "LBRACKET"
RBRACKET = "RBRACKET"
COMMA = "COMMA"
PIPE = "PIPE"
PERIOD = "PERIOD"
AMP = "AMP"
TURNSTILE = "TURNSTILE"  # :-
IMPGOAL = "IMPGOAL"  # =>
EOF = "EOF"

_SINGLE = {
    "(": LPAREN,
    ")": RPAREN,
    "[": LBRACKET,
    "]": RBRACKET,
    ",": COMMA,
    "|": PIPE,
    ".": PERIOD,
    "&": AMP,
}


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    line: int
    col: int


def tokenize(text: str) -> list[Token]:
    toks: list[Token] = []
    i, line, col = 0, 1, 1
    n = len(text)
    while i < n:
        c = text[i]
        if c == "\n":
            i += 1
            line += 1
            col = 1
            continue
        if c in " \t\r":
            i += 1
            col += 1
            continue
        if c == "%":
            while i < n and text[i] != "\n":
                i += 1
            continue
        if c == ":":
            if i + 1 < n and text[i + 1] == "-":
                toks.append(Token(TURNSTILE, ":-", line, col))
                i += 2
                col += 2
                continue
            raise LexError("expected ':-'", line, col)
        if c == "=":
            if i + 1 < n and text[i + 1] == ">":
                toks.append(Token(IMPGOAL, "=>", line, col))
                i += 2
                col += 2
                continue
            raise LexError("expected '=>'", line, col)
        if c in _SINGLE:
            toks.append(Token(_SINGLE[c], c, line, col))
            i += 1
            col += 1
            continue
        if c.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            toks.append(Token(INT, text[i:j], line, col))
            col += j - i
            i = j
            continue
        if c.isalpha() or c == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            word = text[i:j]
            kind = VAR if (c == "_" or c.isupper()) else ATOM
            toks.append(Token(kind, word, line, col))
            col += j - i
            i = j
            continue
        raise LexError(f"unexpected character {c!r}", line, col)
    toks.append(Token(EOF, "", line, col))
    return toks


# ---------------------------------------------------------------------------
# parser


@dataclass
class ModuleFile:
    name: str | None
    clauses: list[DFormula] = field(default_factory=list)


class _Parser:
    def __init__(self, text: str):
        self.toks = tokenize(text)
        self.pos = 0

    # -- token plumbing

    def peek(self, ahead: int = 0) -> Token:
        return self.toks[min(self.pos + ahead, len(self.toks) - 1)]

    def next(self) -> Token:
        t = self.toks[self.pos]
        if t.kind != EOF:
            self.pos += 1
        return t

    def expect(self, kind: str) -> Token:
        t = self.peek()
        if t.kind != kind:
            raise ParseError(f"expected {kind}, found {t.kind} {t.text!r}", t.line, t.col)
        return self.next()

    # -- terms

    def term(self) -> Term:
        t = self.peek()
        if t.kind == VAR:
            self.next()
            return Var(t.text)
        if t.kind == INT:
            self.next()
            return Int(int(t.text))
        if t.kind == ATOM:
            return self.atom_term()
        if t.kind == LBRACKET:
            return self.list_term()
        raise ParseError(f"expected a term, found {t.kind} {t.text!r}", t.line, t.col)

    def atom_term(self) -> Term:
        t = self.expect(ATOM)
        if self.peek().kind != LPAREN:
            return Const(t.text)
        self.next()
        args = [self.term()]
        while self.peek().kind == COMMA:
            self.next()
            args.append(self.term())
        self.expect(RPAREN)
        return Compound(t.text, tuple(args))

    def list_term(self) -> Term:
        self.expect(LBRACKET)
        if self.peek().kind == RBRACKET:
            self.next()
            return NIL
        items = [self.term()]
        while self.peek().kind == COMMA:
            self.next()
            items.append(self.term())
        tail: Term = NIL
        if self.peek().kind == PIPE:
            self.next()
            tail = self.term()
        self.expect(RBRACKET)
        return mk_list(items, tail)

    # -- clauses

    def dclause(self) -> DFormula:
        t = self.peek()
        if t.kind == LPAREN:
            # parenthesized element: a rule used as one side of a choice, or
            # an explicitly grouped sub-choice
            self.next()
            d = self.dgroup()
            self.expect(RPAREN)
            return d
        if t.kind == ATOM and t.text == "mod" and self.peek(1).kind == LPAREN:
            self.next()
            self.next()
            inner = self.peek()
            if inner.kind != ATOM:
                raise MalformedModuleError(
                    f"mod(...) takes a plain atom, found {inner.kind} {inner.text!r}",
                    inner.line,
                    inner.col,
                )
            self.next()
            if self.peek().kind != RPAREN:
                bad = self.peek()
                raise MalformedModuleError(
                    "mod(...) takes exactly one atom", bad.line, bad.col
                )
            self.next()
            return DModRef(inner.text)
        head = self.atom_term()
        body: GFormula | None = None
        if self.peek().kind == TURNSTILE:
            self.next()
            body = self.goal()
        return desugar_clause(head, body)

    def dgroup(self) -> DFormula:
        items = [self.dclause()]
        while self.peek().kind == AMP:
            self.next()
            items.append(self.dclause())
        out = items[-1]
        for d in reversed(items[:-1]):
            out = DChoice(d, out)
        return out

    # -- goals

    def goal(self) -> GFormula:
        # A clause group followed by `=>` is a hypothetical implication;
        # anything else is a conjunction of primaries.
        mark = self.pos
        try:
            d = self._antecedent()
        except ParseError:
            d = None
            self.pos = mark
        if d is not None and self.peek().kind == IMPGOAL:
            self.next()
            return GImp(d, self.goal())
        self.pos = mark
        g = self.conj()
        if self.peek().kind == IMPGOAL:
            t = self.peek()
            raise ParseError(
                "left side of => must be a clause group (use parentheses)", t.line, t.col
            )
        return g

    def _antecedent(self) -> DFormula:
        if self.peek().kind == LPAREN:
            mark = self.pos
            self.next()
            try:
                d = self.dgroup()
                self.expect(RPAREN)
                return d
            except ParseError:
                self.pos = mark
                raise
        return self.dgroup()

    def conj(self) -> GFormula:
        items = [self.primary()]
        while self.peek().kind == COMMA:
            self.next()
            items.append(self.primary())
        out = items[-1]
        for g in reversed(items[:-1]):
            out = GAnd(g, out)
        return out

    def primary(self) -> GFormula:
        t = self.peek()
        if t.kind == LPAREN:
            self.next()
            g = self.goal()
            self.expect(RPAREN)
            return g
        if t.kind == ATOM and t.text == "exists" and self.peek(1).kind == VAR:
            self.next()
            v = self.next()
            self.expect(PERIOD)
            return GExists(v.text, self.goal())
        if t.kind == ATOM:
            return GAtom(self.atom_term())
        raise ParseError(f"expected a goal, found {t.kind} {t.text!r}", t.line, t.col)

    # -- files

    def program(self) -> ModuleFile:
        mf = ModuleFile(name=None)
        first = True
        while self.peek().kind != EOF:
            d = self.dgroup()
            self.expect(PERIOD)
            if first and isinstance(d, DModRef):
                mf.name = d.name
            else:
                mf.clauses.append(d)
            first = False
        return mf

    def goal_input(self) -> GFormula:
        g = self.goal()
        if self.peek().kind == PERIOD:
            self.next()
        t = self.peek()
        if t.kind != EOF:
            raise ParseError(f"trailing input: {t.kind} {t.text!r}", t.line, t.col)
        return g


def parse_program(text: str) -> ModuleFile:
    return _Parser(text).program()


def parse_goal(text: str) -> GFormula:
    return _Parser(text).goal_input()


# ---------------------------------------------------------------------------
# printer


def _print_term(t: Term) -> str:
    if isinstance(t, Var):
        return t.name if t.stamp == 0 else f"_G{t.stamp}"
    if isinstance(t, Const):
        return "[]" if t == NIL else t.name
    if isinstance(t, Int):
        return str(t.value)
    if isinstance(t, Compound):
        if t.functor == CONS and len(t.args) == 2:
            items, tail = list_view(t)
            inner = ",".join(_print_term(x) for x in items)
            if tail == NIL:
                return f"[{inner}]"
            return f"[{inner}|{_print_term(tail)}]"
        return f"{t.functor}({','.join(_print_term(a) for a in t.args)})"
    raise TypeError(f"not a term: {t!r}")


def _strip_alls(d: DFormula) -> DFormula:
    while isinstance(d, DAll):
        d = d.body
    return d


def _print_dclause(d: DFormula, parenthesize_compound: bool = False) -> str:
    d = _strip_alls(d)
    if isinstance(d, DModRef):
        return f"mod({d.name})"
    if isinstance(d, DAtom):
        return _print_term(d.term)
    if isinstance(d, DImp):
        if not isinstance(_strip_alls(d.head), DAtom):
            raise ValueError("cannot print a clause with a non-atomic head")
        head = _print_term(_strip_alls(d.head).term)  # type: ignore[union-attr]
        text = f"{head} :- {_print_goal(d.body, 0)}"
        return f"({text})" if parenthesize_compound else text
    if isinstance(d, DChoice):
        text = f"{_print_dclause(d.left, True)} & {_print_dclause(d.right, True)}"
        return f"({text})" if parenthesize_compound else text
    if isinstance(d, DAnd):
        raise ValueError("clause conjunction has no surface syntax")
    raise TypeError(f"not a clause: {d!r}")


def _print_antecedent(d: DFormula) -> str:
    d = _strip_alls(d)
    if isinstance(d, (DModRef, DAtom)):
        return _print_dclause(d)
    return _print_dclause(d, parenthesize_compound=True)


def _print_goal(g: GFormula, prec: int) -> str:
    # prec 0: loosest context; 1: right of a comma; 2: left of a comma.
    if isinstance(g, GAtom):
        return _print_term(g.term)
    if isinstance(g, GAnd):
        text = f"{_print_goal(g.left, 2)}, {_print_goal(g.right, 1)}"
        return f"({text})" if prec > 1 else text
    if isinstance(g, GImp):
        text = f"{_print_antecedent(g.antecedent)} => {_print_goal(g.consequent, 0)}"
        return f"({text})" if prec > 0 else text
    if isinstance(g, GExists):
        text = f"exists {g.var}. {_print_goal(g.body, 0)}"
        return f"({text})" if prec > 0 else text
    raise TypeError(f"not a goal: {g!r}")


def print_formula(f) -> str:
    """Concrete syntax for a term, goal or clause (statement period excluded)."""
    if isinstance(f, (Var, Const, Int, Compound)):
        return _print_term(f)
    if isinstance(f, (GAtom, GAnd, GImp, GExists)):
        return _print_goal(f, 0)
    if isinstance(f, (DAtom, DImp, DAll, DChoice, DAnd, DModRef)):
        return _print_dclause(f)
    raise TypeError(f"print_formula: unsupported value {f!r}")


def print_module(mf: ModuleFile) -> str:
    """Full .mw text of a module file (reparseable)."""
    lines = []
    if mf.name is not None:
        lines.append(f"mod({mf.name}).")
    for d in mf.clauses:
        lines.append(f"{print_formula(d)}.")
    return "\n".join(lines) + "\n"
