"""Terms, goal formulas and clause formulas.

Goals are what queries and clause bodies are made of; clause formulas are what
programs and modules are made of.  The two grammars are mutually recursive:
a goal may hypothesize a clause (``GImp``) and a clause body is a goal.

    goal    ::= atom | goal , goal | clause => goal | exists X. goal
    clause  ::= atom | goal :- clause (stored head-last as DImp)
              | forall X clause | clause & clause (choice) | clause and clause
              | mod(name)

All clause values stored in programs/modules are closed: ``desugar_clause``
universally closes every source clause over its free variables.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Mapping, Union

from .errors import MalformedClauseError

# ---------------------------------------------------------------------------
# terms


@dataclass(frozen=True)
class Var:
    """A logic variable.  stamp 0 = source-level; stamps > 0 are engine-fresh."""

    name: str
    stamp: int = 0


@dataclass(frozen=True)
class Const:
    name: str


@dataclass(frozen=True)
class Int:
    value: int


@dataclass(frozen=True)
class Compound:
    functor: str
    args: "tuple[Term, ...]"

    def __post_init__(self) -> None:
        if len(self.args) < 1:
            raise ValueError("zero-arity symbol must be a Const, not a Compound")


Term = Union[Var, Const, Int, Compound]

NIL = Const("nil")
CONS = "cons"


def cons(head: Term, tail: Term) -> Compound:
    return Compound(CONS, (head, tail))


def mk_list(items: "list[Term] | tuple[Term, ...]", tail: Term = NIL) -> Term:
    out = tail
    for item in reversed(items):
        out = cons(item, out)
    return out


def list_view(t: Term) -> "tuple[list[Term], Term]":
    """Peel cons cells: returns (elements, final tail)."""
    items: list[Term] = []
    while isinstance(t, Compound) and t.functor == CONS and len(t.args) == 2:
        items.append(t.args[0])
        t = t.args[1]
    return items, t


def atom_key(t: Term) -> "tuple[str, int]":
    """(functor, arity) of an atomic formula's term."""
    if isinstance(t, Const):
        return t.name, 0
    if isinstance(t, Compound):
        return t.functor, len(t.args)
    raise TypeError(f"not an atom: {t!r}")


# ---------------------------------------------------------------------------
# formulas


@dataclass(frozen=True)
class GAtom:
    term: Term

    def __post_init__(self) -> None:
        if not isinstance(self.term, (Const, Compound)):
            raise ValueError("atomic goal must be a Const or Compound term")


@dataclass(frozen=True)
class GAnd:
    left: "GFormula"
    right: "GFormula"


@dataclass(frozen=True)
class GImp:
    """antecedent => consequent: prove consequent with antecedent hypothesized."""

    antecedent: "DFormula"
    consequent: "GFormula"


@dataclass(frozen=True)
class GExists:
    var: str
    body: "GFormula"


GFormula = Union[GAtom, GAnd, GImp, GExists]


@dataclass(frozen=True)
class DAtom:
    term: Term

    def __post_init__(self) -> None:
        if not isinstance(self.term, (Const, Compound)):
            raise ValueError("atomic clause must be a Const or Compound term")


@dataclass(frozen=True)
class DImp:
    """body => head, i.e. the clause `head :- body`."""

    body: GFormula
    head: "DFormula"


@dataclass(frozen=True)
class DAll:
    var: str
    body: "DFormula"


@dataclass(frozen=True)
class DChoice:
    """Mutually exclusive pair: use one side, never both."""

    left: "DFormula"
    right: "DFormula"


@dataclass(frozen=True)
class DAnd:
    """Plain conjunction of clauses (arises from module expansion)."""

    left: "DFormula"
    right: "DFormula"


@dataclass(frozen=True)
class DModRef:
    name: str


DFormula = Union[DAtom, DImp, DAll, DChoice, DAnd, DModRef]


@dataclass(frozen=True)
class Program:
    clauses: "tuple[DFormula, ...]"


class FreshSource:
    """Monotone stamp supply; confined to one engine/oracle run."""

    def __init__(self, start: int = 1):
        self._next = start

    def var(self, name: str = "V") -> Var:
        v = Var(name, self._next)
        self._next += 1
        return v


# ---------------------------------------------------------------------------
# traversals


def term_vars(t: Term) -> Iterator[Var]:
    stack = [t]
    while stack:
        x = stack.pop()
        if isinstance(x, Var):
            yield x
        elif isinstance(x, Compound):
            stack.extend(reversed(x.args))


def free_vars(expr) -> "list[Var]":
    """Free variables of a term or formula, first occurrence first.

    Binders (DAll / GExists) bind source-level occurrences of their name,
    i.e. Var(name, 0); stamped variables are never binder-bound.
    """
    seen: list[Var] = []
    have: set[Var] = set()

    def go(x, bound: frozenset[Var]) -> None:
        if isinstance(x, Var):
            if x not in bound and x not in have:
                have.add(x)
                seen.append(x)
        elif isinstance(x, Compound):
            for a in x.args:
                go(a, bound)
        elif isinstance(x, (Const, Int)):
            pass
        elif isinstance(x, (GAtom, DAtom)):
            go(x.term, bound)
        elif isinstance(x, GAnd):
            go(x.left, bound)
            go(x.right, bound)
        elif isinstance(x, GImp):
            go(x.antecedent, bound)
            go(x.consequent, bound)
        elif isinstance(x, GExists):
            go(x.body, bound | {Var(x.var, 0)})
        elif isinstance(x, DImp):
            go(x.head, bound)
            go(x.body, bound)
        elif isinstance(x, DAll):
            go(x.body, bound | {Var(x.var, 0)})
        elif isinstance(x, (DChoice, DAnd)):
            go(x.left, bound)
            go(x.right, bound)
        elif isinstance(x, DModRef):
            pass
        else:
            raise TypeError(f"free_vars: unsupported node {x!r}")

    go(expr, frozenset())
    return seen


def apply_subst(expr, s: "Mapping[Var, Term] | object"):
    """Substitute through a term or formula, resolving bindings to a fixpoint.

    ``s`` is anything with a dict-style .get(Var) -> Term|None (a plain dict
    or a Substitution).  Respects binders: occurrences bound by an enclosing
    DAll/GExists are left alone.
    """
    get = s.get  # type: ignore[union-attr]

    def term(t: Term, shadow: frozenset[Var]) -> Term:
        if isinstance(t, Var):
            if t in shadow:
                return t
            b = get(t)
            if b is None:
                return t
            return term(b, shadow)
        if isinstance(t, Compound):
            return Compound(t.functor, tuple(term(a, shadow) for a in t.args))
        return t

    def go(x, shadow: frozenset[Var]):
        if isinstance(x, (Var, Const, Int, Compound)):
            return term(x, shadow)
        if isinstance(x, GAtom):
            return GAtom(term(x.term, shadow))
        if isinstance(x, GAnd):
            return GAnd(go(x.left, shadow), go(x.right, shadow))
        if isinstance(x, GImp):
            return GImp(go(x.antecedent, shadow), go(x.consequent, shadow))
        if isinstance(x, GExists):
            return GExists(x.var, go(x.body, shadow | {Var(x.var, 0)}))
        if isinstance(x, DAtom):
            return DAtom(term(x.term, shadow))
        if isinstance(x, DImp):
            return DImp(go(x.body, shadow), go(x.head, shadow))
        if isinstance(x, DAll):
            return DAll(x.var, go(x.body, shadow | {Var(x.var, 0)}))
        if isinstance(x, DChoice):
            return DChoice(go(x.left, shadow), go(x.right, shadow))
        if isinstance(x, DAnd):
            return DAnd(go(x.left, shadow), go(x.right, shadow))
        if isinstance(x, DModRef):
            return x
        raise TypeError(f"apply_subst: unsupported node {x!r}")

    return go(expr, frozenset())


def rename_fresh(d: DFormula, fresh: FreshSource) -> DFormula:
    """Strip the topmost run of universal binders, renaming to fresh variables."""
    binders: list[str] = []
    body = d
    while isinstance(body, DAll):
        binders.append(body.var)
        body = body.body
    if not binders:
        return d
    mapping = {Var(b, 0): fresh.var(b) for b in binders}
    return apply_subst(body, mapping)


def desugar_clause(head: Term, body: GFormula | None) -> DFormula:
    """Close a source clause: `head :- body` becomes foralls over DImp/DAtom.

    Closure order is first occurrence, head before body, so
    append([X|L1],L2,[X|L3]) :- append(L1,L2,L3) closes as
    DAll X (DAll L1 (DAll L2 (DAll L3 ...))).
    """
    if not isinstance(head, (Const, Compound)):
        raise MalformedClauseError(f"clause head must be an atom, got {head!r}")
    core: DFormula = DAtom(head) if body is None else DImp(body, DAtom(head))
    order = free_vars(core)
    for v in reversed(order):
        if v.stamp != 0:
            raise MalformedClauseError("source clause contains a stamped variable")
        core = DAll(v.name, core)
    return core
