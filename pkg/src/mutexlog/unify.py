"""First-order unification over persistent substitutions.

Substitutions are triangular (a variable may map to a term containing further
bound variables) and never mutated: `extend` returns a new value, so the
engine backtracks simply by resuming from an earlier Substitution.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .terms import Compound, Term, Var, apply_subst

# Bound on resolution depth when the occurs check is disabled.  A binding
# whose resolved structure nests deeper than this is treated as cyclic and
# rejected, so X = f(X) fails in both modes.
NO_OCCURS_DEPTH_GUARD = 10_000


@dataclass(frozen=True)
class Substitution:
    bindings: dict[Var, Term] = field(default_factory=dict)

    def get(self, v: Var) -> Term | None:
        return self.bindings.get(v)

    def extend(self, v: Var, t: Term) -> "Substitution":
        d = dict(self.bindings)
        d[v] = t
        return Substitution(d)

    def walk(self, t: Term) -> Term:
        """Resolve a variable shallowly: follow links, do not enter compounds."""
        while isinstance(t, Var):
            b = self.bindings.get(t)
            if b is None:
                return t
            t = b
        return t

    def resolve(self, t: Term) -> Term:
        """Full resolution: substitute through compounds to a fixpoint."""
        return apply_subst(t, self)

    def __len__(self) -> int:
        return len(self.bindings)


EMPTY = Substitution()


def walk(t: Term, s: Substitution) -> Term:
    return s.walk(t)


def _occurs(v: Var, t: Term, s: Substitution) -> bool:
    stack = [t]
    while stack:
        x = s.walk(stack.pop())
        if isinstance(x, Var):
            if x == v:
                return True
        elif isinstance(x, Compound):
            stack.extend(x.args)
    return False


def _depth_ok(t: Term, s: Substitution, limit: int = NO_OCCURS_DEPTH_GUARD) -> bool:
    """Check the resolved structure of t stays shallower than `limit`.

    With the occurs check off this is what rejects cyclic bindings: resolving
    X through {X -> f(X)} grows without bound and trips the guard.
    """
    stack: list[tuple[Term, int]] = [(t, 0)]
    while stack:
        x, d = stack.pop()
        if d > limit:
            return False
        x = s.walk(x)
        if isinstance(x, Compound):
            for a in x.args:
                stack.append((a, d + 1))
    return True


def _bind(s: Substitution, v: Var, t: Term, occurs_check: bool) -> Substitution | None:
    if occurs_check:
        if _occurs(v, t, s):
            return None
        return s.extend(v, t)
    s2 = s.extend(v, t)
    if not _depth_ok(v, s2):
        return None
    return s2


def unify(t1: Term, t2: Term, s: Substitution = EMPTY, occurs_check: bool = True) -> Substitution | None:
    """Most general unifier of t1 and t2 under s, or None.

    Failure is pure: the input substitution is a value and is never touched,
    so a failed attempt leaves no binding behind.
    """
    pairs = [(t1, t2)]
    while pairs:
        a, b = pairs.pop()
        a = s.walk(a)
        b = s.walk(b)
        if a == b:
            continue
        if isinstance(a, Var):
            s2 = _bind(s, a, b, occurs_check)
            if s2 is None:
                return None
            s = s2
        elif isinstance(b, Var):
            s2 = _bind(s, b, a, occurs_check)
            if s2 is None:
                return None
            s = s2
        elif isinstance(a, Compound) and isinstance(b, Compound):
            if a.functor != b.functor or len(a.args) != len(b.args):
                return None
            pairs.extend(zip(a.args, b.args))
        else:
            return None
    return s
