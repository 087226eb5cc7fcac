"""The proof-search engine.

Search alternates two phases.  Goal reduction (`ex`) dispatches on the goal's
top connective: conjunctions split, hypothetical implications extend the
program, existentials get a fresh variable, and an atomic goal selects a
program clause and switches phase.  Backchaining (`bchain`) decomposes the
selected clause against that atomic goal: universal binders are renamed
fresh, implications are entered head-first (unify the head, then solve the
body), plain clause conjunctions offer both sides on backtracking, and a
*choice* pair offers the second side only if the first produced no answer.

Choice commitment modes:

  off     a choice behaves like a plain conjunction (reference semantics,
          complete enumeration);
  call    once the first side of a choice yields an answer for the current
          backchain invocation, the second side is pruned for that
          invocation; the first side's interior alternatives survive;
  global  as call, and the occurrence (clause origin + structural path)
          records which side was used; later invocations through the same
          occurrence in the same proof take the recorded side without
          trying the other.  Backtracking past the committing answer
          restores the previous record.

Depth accounting: each goal-reduction step costs one unit, each clause
selection costs one more; decomposing the selected clause is free.  When a
branch is cut by the limit the answer stream ends with a DepthExhausted
marker, distinguishing "unknown" from finite failure.

Builtin calls (`neq/2`, `lt/2`, `leq/2`) evaluate immediately when their
arguments are ground; otherwise the call is carried along and re-checked
when an answer is about to be emitted.  A call that is still non-ground at
that point raises InstantiationError and aborts the query.
"""
from __future__ import annotations

import sys
from dataclasses import dataclass, replace
from typing import Iterator, TextIO, Union

from .errors import CyclicModuleError, GoalError, InstantiationError, UnknownModuleError
from .modules import ModuleRegistry, resolve
from .parser import print_formula
from .terms import (
    DAll,
    DAnd,
    DAtom,
    DChoice,
    DFormula,
    DImp,
    DModRef,
    FreshSource,
    GAnd,
    GAtom,
    GExists,
    GFormula,
    GImp,
    Int,
    Program,
    Term,
    Var,
    apply_subst,
    atom_key,
    free_vars,
    rename_fresh,
    term_vars,
)
from .unify import EMPTY, Substitution, unify

BUILTINS = {("neq", 2), ("lt", 2), ("leq", 2)}


@dataclass
class Config:
    commit_mode: str = "call"  # off | call | global
    depth_limit: int | None = None
    occurs_check: bool = True
    trace: bool = False
    trace_out: TextIO | None = None  # defaults to stderr

    def __post_init__(self) -> None:
        if self.commit_mode not in ("off", "call", "global"):
            raise ValueError(f"unknown commit mode: {self.commit_mode}")


@dataclass(frozen=True)
class Answer:
    bindings: dict[str, Term]
    depth_used: int


@dataclass(frozen=True)
class DepthExhausted:
    """End-of-stream marker: some branch hit the depth limit."""


DEPTH_EXHAUSTED = DepthExhausted()

# Search state threaded through both phases.  All fields are treated as
# values: extending any of them builds a new state, so resuming an earlier
# generator frame *is* backtracking.
@dataclass(frozen=True)
class _State:
    subst: Substitution
    commits: dict  # choice occurrence -> 0|1 (global mode only)
    pending: tuple  # deferred builtin calls: (name, raw args)
    peak: int  # deepest level touched on this derivation


def is_ground(t: Term) -> bool:
    return next(term_vars(t), None) is None


def _eval_builtin(name: str, args: "tuple[Term, ...]") -> bool:
    a, b = args
    if name == "neq":
        return a != b
    if not (isinstance(a, Int) and isinstance(b, Int)):
        return False
    return a.value < b.value if name == "lt" else a.value <= b.value


def call_builtin(name: str, args: "tuple[Term, ...]", s: Substitution) -> Substitution | None:
    """Immediate builtin semantics: s unchanged on success, None on failure.

    Raises InstantiationError if any argument is non-ground after walking.
    Builtins never bind variables.
    """
    resolved = tuple(s.resolve(a) for a in args)
    bad = [r for r in resolved if not is_ground(r)]
    if bad:
        shown = ", ".join(print_formula(r) for r in resolved)
        raise InstantiationError(f"{name}({shown}): arguments must be ground")
    return s if _eval_builtin(name, resolved) else None


def _tlabel(t: Term) -> str:
    f, a = atom_key(t)
    return f"{f}/{a}"


def _dlabel(d: DFormula) -> str:
    while isinstance(d, DAll):
        d = d.body
    if isinstance(d, DAtom):
        return _tlabel(d.term)
    if isinstance(d, DImp):
        return _dlabel(d.head)
    if isinstance(d, DChoice):
        return "choice"
    if isinstance(d, DAnd):
        return "and"
    if isinstance(d, DModRef):
        return f"mod({d.name})"
    return "?"


class _Search:
    def __init__(self, program, cfg: Config, registry: ModuleRegistry | None):
        if isinstance(program, Program):
            clauses = program.clauses
        else:
            clauses = tuple(program)
        self.prog: tuple = tuple((("prog", i), c) for i, c in enumerate(clauses))
        self.cfg = cfg
        self.registry = registry
        self.fresh = FreshSource()
        self.truncated = False
        self.out = cfg.trace_out or sys.stderr

    def _trace(self, rule: int, phase: str, label: str, level: int) -> None:
        if self.cfg.trace:
            self.out.write(f"RULE{rule} {phase} {label} depth={level}\n")

    def _over(self, level: int) -> bool:
        if self.cfg.depth_limit is not None and level > self.cfg.depth_limit:
            self.truncated = True
            return True
        return False

    # -- goal reduction

    def ex(self, prog, g: GFormula, st: _State, level: int, base, gpath) -> Iterator[_State]:
        level += 1
        if self._over(level):
            return
        if st.peak < level:
            st = replace(st, peak=level)

        if isinstance(g, GAtom):
            key = atom_key(g.term)
            if key[0] == "mod":
                raise GoalError("mod(...) names a clause group; it is not a provable goal")
            if key in BUILTINS:
                yield from self._builtin(key[0], g.term.args, st)  # type: ignore[union-attr]
                return
            sel = level + 1
            if self._over(sel):
                return
            if st.peak < sel:
                st = replace(st, peak=sel)
            for cbase, d in prog:
                self._trace(7, "ex", _tlabel(g.term), sel)
                yield from self.bchain(d, cbase, (), prog, g.term, st, sel, frozenset())
            return

        if isinstance(g, GAnd):
            self._trace(8, "ex", "and", level)
            for st1 in self.ex(prog, g.left, st, level, base, gpath + ("l",)):
                yield from self.ex(prog, g.right, st1, level, base, gpath + ("r",))
            return

        if isinstance(g, GExists):
            self._trace(9, "ex", "exists", level)
            body = apply_subst(g.body, {Var(g.var, 0): self.fresh.var(g.var)})
            yield from self.ex(prog, body, st, level, base, gpath + ("e",))
            return

        if isinstance(g, GImp):
            self._trace(10, "ex", "imp", level)
            hyp_id = ("hyp", base, gpath)
            extended = ((hyp_id, g.antecedent),) + tuple(prog)
            yield from self.ex(extended, g.consequent, st, level, base, gpath + ("g",))
            return

        raise TypeError(f"not a goal: {g!r}")

    def _builtin(self, name: str, args: "tuple[Term, ...]", st: _State) -> Iterator[_State]:
        resolved = tuple(st.subst.resolve(a) for a in args)
        if all(is_ground(r) for r in resolved):
            if _eval_builtin(name, resolved):
                yield st
            return
        # not decidable yet: carry the call and re-check at answer time
        yield replace(st, pending=st.pending + ((name, args),))

    # -- backchaining

    def bchain(self, d: DFormula, base, path, prog, goal: Term, st: _State, level: int, expanding) -> Iterator[_State]:
        if isinstance(d, DAll):
            self._trace(3, "bchain", _dlabel(d), level)
            yield from self.bchain(rename_fresh(d, self.fresh), base, path, prog, goal, st, level, expanding)
            return

        if isinstance(d, DAtom):
            self._trace(1, "bchain", _dlabel(d), level)
            s2 = unify(d.term, goal, st.subst, self.cfg.occurs_check)
            if s2 is not None:
                yield replace(st, subst=s2)
            return

        if isinstance(d, DImp):
            # head-first: reach and unify the head, then run the body under
            # the unifier.
            self._trace(2, "bchain", _dlabel(d), level)
            for st1 in self.bchain(d.head, base, path + ("h",), prog, goal, st, level, expanding):
                yield from self.ex(prog, d.body, st1, level, base, path + ("b",))
            return

        if isinstance(d, DAnd):
            self._trace(4, "bchain", _dlabel(d.left), level)
            yield from self.bchain(d.left, base, path + (0,), prog, goal, st, level, expanding)
            self._trace(5, "bchain", _dlabel(d.right), level)
            yield from self.bchain(d.right, base, path + (1,), prog, goal, st, level, expanding)
            return

        if isinstance(d, DChoice):
            yield from self._choice(d, base, path, prog, goal, st, level, expanding)
            return

        if isinstance(d, DModRef):
            if d.name in expanding:
                raise CyclicModuleError(f"cyclic module reference: {d.name}")
            if self.registry is None:
                raise UnknownModuleError(f"unknown module: {d.name} (no modules loaded)")
            fold = resolve(self.registry, d.name)
            yield from self.bchain(fold, ("mod", d.name), (), prog, goal, st, level, expanding | {d.name})
            return

        raise TypeError(f"not a clause: {d!r}")

    def _choice(self, d: DChoice, base, path, prog, goal: Term, st: _State, level: int, expanding) -> Iterator[_State]:
        occurrence = (base, path)
        mode = self.cfg.commit_mode

        if mode == "off":
            self._trace(6, "bchain", _dlabel(d.left), level)
            yield from self.bchain(d.left, base, path + (0,), prog, goal, st, level, expanding)
            self._trace(6, "bchain", _dlabel(d.right), level)
            yield from self.bchain(d.right, base, path + (1,), prog, goal, st, level, expanding)
            return

        if mode == "global":
            locked = st.commits.get(occurrence)
            if locked is not None:
                side = d.left if locked == 0 else d.right
                self._trace(6, "bchain", _dlabel(side), level)
                yield from self.bchain(side, base, path + (locked,), prog, goal, st, level, expanding)
                return

        # call mode, or global before any record: first side wins if it
        # yields anything; its interior alternatives are kept, the second
        # side is pruned the moment the first answer appears.
        produced = False
        self._trace(6, "bchain", _dlabel(d.left), level)
        for st1 in self.bchain(d.left, base, path + (0,), prog, goal, st, level, expanding):
            produced = True
            st2 = self._record(st1, occurrence, 0) if mode == "global" else st1
            if st2 is not None:
                yield st2
        if produced:
            return
        self._trace(6, "bchain", _dlabel(d.right), level)
        for st1 in self.bchain(d.right, base, path + (1,), prog, goal, st, level, expanding):
            st2 = self._record(st1, occurrence, 1) if mode == "global" else st1
            if st2 is not None:
                yield st2

    @staticmethod
    def _record(st: _State, occurrence, side: int) -> _State | None:
        prior = st.commits.get(occurrence)
        if prior is None:
            commits = dict(st.commits)
            commits[occurrence] = side
            return replace(st, commits=commits)
        # an inner subproof already committed this occurrence; a proof that
        # used both sides is inconsistent and is dropped
        return st if prior == side else None


def _finalize(st: _State) -> Substitution | None:
    """Re-check deferred builtins under the final substitution."""
    non_ground = None
    for name, args in st.pending:
        resolved = tuple(st.subst.resolve(a) for a in args)
        if all(is_ground(r) for r in resolved):
            if not _eval_builtin(name, resolved):
                return None
        elif non_ground is None:
            shown = ", ".join(print_formula(r) for r in resolved)
            non_ground = f"{name}({shown}): arguments still unbound at answer time"
    if non_ground is not None:
        raise InstantiationError(non_ground)
    return st.subst


def solve(
    program,
    goal: GFormula,
    config: Config | None = None,
    registry: ModuleRegistry | None = None,
) -> Iterator[Union[Answer, DepthExhausted]]:
    """Answers for `goal` against `program`, then possibly a DepthExhausted marker.

    Free variables of the goal are implicitly existential; each Answer maps
    their names to the terms found for them.
    """
    cfg = config or Config()
    search = _Search(program, cfg, registry)
    qvars = free_vars(goal)
    inst = {v: search.fresh.var(v.name) for v in qvars}
    g = apply_subst(goal, inst) if inst else goal
    st0 = _State(EMPTY, {}, (), 0)
    for st in search.ex(search.prog, g, st0, 0, ("query",), ()):
        final = _finalize(st)
        if final is None:
            continue
        yield Answer({v.name: final.resolve(inst[v]) for v in qvars}, st.peak)
    if search.truncated:
        yield DEPTH_EXHAUSTED


def collect_answers(
    program,
    goal: GFormula,
    config: Config | None = None,
    registry: ModuleRegistry | None = None,
    limit: int | None = None,
) -> "tuple[list[Answer], bool]":
    """Drain the answer stream; returns (answers, hit_depth_limit)."""
    answers: list[Answer] = []
    exhausted = False
    for item in solve(program, goal, config, registry):
        if isinstance(item, DepthExhausted):
            exhausted = True
        else:
            answers.append(item)
            if limit is not None and len(answers) >= limit:
                break
    return answers, exhausted


def backchain(
    clause: DFormula,
    program,
    goal: Term,
    subst: Substitution = EMPTY,
    config: Config | None = None,
    registry: ModuleRegistry | None = None,
) -> Iterator[Substitution]:
    """Backchain one clause against an atomic goal; yields substitutions."""
    cfg = config or Config()
    search = _Search(program, cfg, registry)
    st0 = _State(subst, {}, (), 0)
    for st in search.bchain(clause, ("adhoc",), (), search.prog, goal, st0, 1, frozenset()):
        final = _finalize(st)
        if final is not None:
            yield final
