"""Bounded-depth reference prover and random program generator.

The reference prover enumerates *all* answers to a goal within a depth
budget, treating a choice pair exactly like a plain conjunction of clauses
(both sides always available).  It is written as a plain recursive
list-collector, deliberately sharing no control flow with the engine: only
the term/unification primitives are common.  Agreement between the two on
random programs is evidence for both.

Clause entry order is configurable: "head" (default) unifies an
implication's head before solving its body; "body" proves the body first
and unifies the head afterwards.  Both reach the same answer set whenever
the budget suffices, but body-first pays to search every selected clause's
body whether or not the head could match, so it exhausts a small depth
budget on most rule-bearing programs; it is kept as a cross-validation
variant, decisive mainly on fact-only programs.

Depth accounting matches the engine unit for unit: one per goal-reduction
step, one per clause selection, clause decomposition free.  A budget
overrun sets `truncated`; a verdict with no answers is then
"exhausted-unknown" rather than "not-provable-within-depth".
"""
from __future__ import annotations

import random
from dataclasses import dataclass

from .errors import CyclicModuleError, GoalError, InstantiationError, UnknownModuleError
from .modules import ModuleRegistry, resolve
from .parser import print_formula
from .terms import (
    Compound,
    Const,
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
    desugar_clause,
    free_vars,
    rename_fresh,
    term_vars,
)
from .unify import EMPTY, Substitution, unify

_BUILTINS = {("neq", 2), ("lt", 2), ("leq", 2)}


@dataclass(frozen=True)
class OracleVerdict:
    status: str  # provable | not-provable-within-depth | exhausted-unknown
    answers: tuple  # canonical binding forms, first-found order
    truncated: bool


class _Env:
    __slots__ = ("fresh", "registry", "order", "limit", "occurs_check", "truncated")

    def __init__(self, registry, order, limit, occurs_check):
        self.fresh = FreshSource()
        self.registry = registry
        self.order = order
        self.limit = limit
        self.occurs_check = occurs_check
        self.truncated = False


def _ground(t: Term) -> bool:
    return next(term_vars(t), None) is None


def _builtin_holds(name: str, a: Term, b: Term) -> bool:
    if name == "neq":
        return a != b
    if not (isinstance(a, Int) and isinstance(b, Int)):
        return False
    return a.value < b.value if name == "lt" else a.value <= b.value


# Each partial proof is (substitution, deferred builtin calls).
def _prove(g: GFormula, prog: tuple, s: Substitution, pending: tuple, level: int, env: _Env) -> list:
    level += 1
    if env.limit is not None and level > env.limit:
        env.truncated = True
        return []

    if isinstance(g, GAtom):
        key = atom_key(g.term)
        if key[0] == "mod":
            raise GoalError("mod(...) names a clause group; it is not a provable goal")
        if key in _BUILTINS:
            a, b = (s.resolve(t) for t in g.term.args)  # type: ignore[union-attr]
            if _ground(a) and _ground(b):
                return [(s, pending)] if _builtin_holds(key[0], a, b) else []
            return [(s, pending + ((key[0], g.term.args),))]
        sel = level + 1
        if env.limit is not None and sel > env.limit:
            env.truncated = True
            return []
        found = []
        for d in prog:
            found.extend(_clause(d, g.term, prog, s, pending, sel, env, frozenset()))
        return found

    if isinstance(g, GAnd):
        found = []
        for s1, p1 in _prove(g.left, prog, s, pending, level, env):
            found.extend(_prove(g.right, prog, s1, p1, level, env))
        return found

    if isinstance(g, GExists):
        body = apply_subst(g.body, {Var(g.var, 0): env.fresh.var(g.var)})
        return _prove(body, prog, s, pending, level, env)

    if isinstance(g, GImp):
        return _prove(g.consequent, (g.antecedent,) + prog, s, pending, level, env)

    raise TypeError(f"not a goal: {g!r}")


def _clause(d: DFormula, goal: Term, prog: tuple, s: Substitution, pending: tuple, level: int, env: _Env, expanding: frozenset) -> list:
    if isinstance(d, DAll):
        return _clause(rename_fresh(d, env.fresh), goal, prog, s, pending, level, env, expanding)

    if isinstance(d, DAtom):
        s2 = unify(d.term, goal, s, env.occurs_check)
        return [] if s2 is None else [(s2, pending)]

    if isinstance(d, DImp):
        found = []
        if env.order == "body":
            for s1, p1 in _prove(d.body, prog, s, pending, level, env):
                found.extend(_clause(d.head, goal, prog, s1, p1, level, env, expanding))
        else:
            for s1, p1 in _clause(d.head, goal, prog, s, pending, level, env, expanding):
                found.extend(_prove(d.body, prog, s1, p1, level, env))
        return found

    if isinstance(d, (DAnd, DChoice)):  # choice is not committed here
        both = _clause(d.left, goal, prog, s, pending, level, env, expanding)
        both.extend(_clause(d.right, goal, prog, s, pending, level, env, expanding))
        return both

    if isinstance(d, DModRef):
        if d.name in expanding:
            raise CyclicModuleError(f"cyclic module reference: {d.name}")
        if env.registry is None:
            raise UnknownModuleError(f"unknown module: {d.name} (no modules loaded)")
        fold = resolve(env.registry, d.name)
        return _clause(fold, goal, prog, s, pending, level, env, expanding | {d.name})

    raise TypeError(f"not a clause: {d!r}")


def _settle(s: Substitution, pending: tuple) -> "Substitution | None":
    """Re-check deferred builtins once a full proof is in hand."""
    stuck = None
    for name, args in pending:
        resolved = tuple(s.resolve(a) for a in args)
        if all(_ground(r) for r in resolved):
            if not _builtin_holds(name, *resolved):
                return None
        elif stuck is None:
            shown = ", ".join(print_formula(r) for r in resolved)
            stuck = f"{name}({shown}): arguments still unbound at answer time"
    if stuck is not None:
        raise InstantiationError(stuck)
    return s


def canonical_bindings(bindings: "dict[str, Term]") -> tuple:
    """Order-insensitive printable form; fresh variables renumbered _G1, _G2, ..."""
    seen: dict = {}
    out = []
    for name in sorted(bindings):
        out.append((name, print_formula(renumber_fresh(bindings[name], seen))))
    return tuple(out)


def renumber_fresh(t: Term, seen: dict) -> Term:
    if isinstance(t, Var):
        if t not in seen:
            seen[t] = Var("_G", len(seen) + 1)
        return seen[t]
    if isinstance(t, Compound):
        return Compound(t.functor, tuple(renumber_fresh(a, seen) for a in t.args))
    return t


def enumerate_answers(
    program,
    goal: GFormula,
    depth: int,
    registry: ModuleRegistry | None = None,
    rule2_order: str = "head",
    occurs_check: bool = True,
) -> OracleVerdict:
    if rule2_order not in ("body", "head"):
        raise ValueError(f"unknown clause entry order: {rule2_order}")
    clauses = program.clauses if isinstance(program, Program) else tuple(program)
    env = _Env(registry, rule2_order, depth, occurs_check)
    qvars = free_vars(goal)
    inst = {v: env.fresh.var(v.name) for v in qvars}
    g = apply_subst(goal, inst) if inst else goal

    answers = []
    for s, pending in _prove(g, clauses, EMPTY, (), 0, env):
        final = _settle(s, pending)
        if final is None:
            continue
        form = canonical_bindings({v.name: final.resolve(inst[v]) for v in qvars})
        if form not in answers:
            answers.append(form)
    answers.sort()  # deterministic order: lexicographic on printed form

    if answers:
        status = "provable"
    elif env.truncated:
        status = "exhausted-unknown"
    else:
        status = "not-provable-within-depth"
    return OracleVerdict(status, tuple(answers), env.truncated)


def provable(program, goal: GFormula, depth: int, **kw) -> bool:
    return enumerate_answers(program, goal, depth, **kw).status == "provable"


# ---------------------------------------------------------------------------
# Random instances for cross-checking the engine against the prover.


@dataclass(frozen=True)
class Instance:
    clauses: tuple
    goal: GFormula

    def program_text(self) -> str:
        from .parser import _print_dclause

        return "\n".join(_print_dclause(c) + "." for c in self.clauses)

    def goal_text(self) -> str:
        return print_formula(self.goal)


_CONSTS = ("a", "b", "c")


def random_instance(seed: int, size: int = 6) -> Instance:
    """A small stratified program plus a goal, deterministic in `seed`.

    Predicates are layered (facts at the bottom, rules only call downward)
    so every derivation is finite and a depth budget of 8 settles the goal
    under head-first clause entry.  A slice of the corpus is fact-only,
    which the body-first prover variant can also settle within the budget.
    Over half the instances contain a choice pair whose sides define the
    same predicate with different solutions, so commitment visibly prunes.
    Goals invoke at most one choice-bearing predicate chain: the second
    atom of a conjunctive goal sticks to the fact layer, keeping the
    per-occurrence commitment record consistent with per-call pruning.
    """
    rng = random.Random(seed)
    size = max(2, min(size, 6))

    def const() -> Term:
        return Const(rng.choice(_CONSTS))

    def leaf() -> Term:
        if rng.random() < 0.2:
            return Compound("f", (const(),))
        return const()

    clauses: list = []

    # layer 0: ground facts
    s_args = rng.sample(_CONSTS, k=min(size, rng.randint(2, 3)))
    for name in s_args:
        clauses.append(desugar_clause(Compound("s", (Const(name),)), None))
    for _ in range(rng.randint(1, size // 2)):
        clauses.append(desugar_clause(Compound("r", (leaf(), leaf())), None))

    def q_fact() -> DFormula:
        return desugar_clause(Compound("q", (leaf(),)), None)

    def q_rule() -> DFormula:
        x = Var("X")
        return desugar_clause(Compound("q", (x,)), GAtom(Compound("s", (x,))))

    def goal_atom(preds, var_bias: float) -> GAtom:
        pred = rng.choice(preds)
        arg: Term = Var("X") if rng.random() < var_bias else const()
        return GAtom(Compound(pred, (arg,)))

    def wrap(inner_preds, var_bias: float) -> GFormula:
        shape = rng.random()
        if shape < 0.12:
            # hypothetical: assume one extra fact while solving a single atom
            fact = desugar_clause(Compound("s", (const(),)), None)
            return GImp(fact, goal_atom(inner_preds, var_bias))
        if shape < 0.24:
            return GExists("X", goal_atom(inner_preds, var_bias))
        if shape < 0.72:
            return goal_atom(inner_preds, var_bias)
        # conjunctive goal: the second conjunct stays on the fact layer
        return GAnd(goal_atom(inner_preds, var_bias), GAtom(Compound("s", (Var("Y"),))))

    def q_choice() -> DFormula:
        # sides with distinct solution sets, so committing visibly prunes
        left, right = q_fact(), q_fact()
        while right == left:
            right = q_fact()
        if rng.random() < 0.5:
            return DChoice(left, q_rule()) if rng.random() < 0.5 else DChoice(q_rule(), right)
        return DChoice(left, right)

    if rng.random() < 0.3:
        # fact-only instance: cheap enough for the body-first prover variant
        first, second = q_fact(), q_fact()
        while second == first:
            second = q_fact()
        clauses.append(DChoice(first, second))
        if rng.random() < 0.5:
            clauses.append(q_fact())
        return Instance(tuple(clauses), wrap(("q", "q", "s"), 0.75))

    want_choice = rng.random() < 0.6

    # layer 1: q/1, possibly as a choice pair
    if want_choice:
        clauses.append(q_choice())
    else:
        for _ in range(rng.randint(1, 2)):
            clauses.append(q_rule() if rng.random() < 0.5 else q_fact())

    # layer 2: p/1 calls q or s, sometimes with two body atoms
    def p_body(x: Term) -> GFormula:
        first = GAtom(Compound(rng.choice(("q", "s")), (x,)))
        if rng.random() < 0.35:
            return GAnd(first, GAtom(Compound("q" if rng.random() < 0.5 else "s", (x,))))
        return first

    def p_clause() -> DFormula:
        x = Var("X")
        if rng.random() < 0.25:
            return desugar_clause(Compound("p", (leaf(),)), None)
        return desugar_clause(Compound("p", (x,)), p_body(x))

    if want_choice and rng.random() < 0.3:
        clauses.append(DChoice(p_clause(), p_clause()))
    else:
        for _ in range(rng.randint(1, 2)):
            clauses.append(p_clause())

    return Instance(tuple(clauses), wrap(("q", "q", "q", "p", "s"), 0.75))
