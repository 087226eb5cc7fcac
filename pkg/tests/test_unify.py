import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mutexlog.terms import Compound, Const, Int, Var, term_vars
from mutexlog.unify import EMPTY, Substitution, unify


def f(*args):
    return Compound("f", tuple(args))


def g(*args):
    return Compound("g", tuple(args))


A, B = Const("a"), Const("b")
X, Y, Z = Var("X"), Var("Y"), Var("Z")


def test_identical_terms():
    s = unify(f(A, Int(2)), f(A, Int(2)))
    assert s is not None and len(s) == 0


def test_binds_either_side():
    for t1, t2 in ((X, A), (A, X)):
        s = unify(t1, t2)
        assert s is not None and s.resolve(X) == A


def test_structure_mismatch():
    assert unify(f(A), g(A)) is None
    assert unify(f(A), f(A, B)) is None
    assert unify(Int(1), Int(2)) is None
    assert unify(A, Int(1)) is None


def test_chained_variables():
    s = unify(f(X, Y), f(Y, A))
    assert s is not None
    assert s.resolve(X) == A and s.resolve(Y) == A


def test_failure_leaves_input_substitution_intact():
    s0 = unify(X, A)
    assert s0 is not None
    before = dict(s0.bindings)
    assert unify(f(X, B), f(A, A), s0) is None
    assert s0.bindings == before
    # still usable afterwards
    s1 = unify(Y, B, s0)
    assert s1 is not None and s1.resolve(f(X, Y)) == f(A, B)


def test_occurs_check_rejects_self_reference():
    assert unify(X, f(X)) is None
    assert unify(f(X), X) is None
    assert unify(f(X, A), f(g(X), A)) is None


def test_occurs_check_off_still_rejects_cycles():
    # without the occurs check a depth guard refuses to build the cyclic binding
    assert unify(X, f(X), occurs_check=False) is None


def test_occurs_check_via_indirection():
    s = unify(X, f(Y))
    assert s is not None
    assert unify(Y, X, s) is None  # Y = f(Y) via the chain


def test_shared_variable_both_sides():
    s = unify(f(X, X), f(Y, A))
    assert s is not None
    assert s.resolve(Y) == A and s.resolve(X) == A


# -- most-general-unifier check against brute-force ground enumeration

_GROUND = [A, B, f(A), f(B), g(A, B), g(B, A)]


def _random_term(rng, depth=2):
    r = rng.random()
    if depth == 0 or r < 0.35:
        return rng.choice([A, B, X, Y, Z])
    if r < 0.7:
        return f(_random_term(rng, depth - 1))
    return g(_random_term(rng, depth - 1), _random_term(rng, depth - 1))


def _matches(pattern, ground, binding):
    """One-sided match of ground term against pattern, extending binding."""
    if isinstance(pattern, Var):
        if pattern in binding:
            return binding[pattern] == ground
        binding[pattern] = ground
        return True
    if isinstance(pattern, Compound):
        return (
            isinstance(ground, Compound)
            and pattern.functor == ground.functor
            and len(pattern.args) == len(ground.args)
            and all(_matches(p, q, binding) for p, q in zip(pattern.args, ground.args))
        )
    return pattern == ground


def _ground_instances(t, rng, n=40):
    vs = sorted({v.name for v in term_vars(t)})
    for _ in range(n):
        env = {Var(name): rng.choice(_GROUND) for name in vs}
        yield env


def test_mgu_against_ground_enumeration():
    rng = random.Random(7)
    checked_success = checked_failure = 0
    for _ in range(300):
        t1, t2 = _random_term(rng), _random_term(rng)
        u = unify(t1, t2)
        names = sorted({v.name for v in term_vars(t1)} | {v.name for v in term_vars(t2)})
        grounds = [
            {Var(n): rng.choice(_GROUND) for n in names} for _ in range(30)
        ]
        if u is None:
            # no ground instantiation may make the two sides equal
            for env in grounds:
                assert apply(t1, env) != apply(t2, env)
            checked_failure += 1
        else:
            r1, r2 = u.resolve(t1), u.resolve(t2)
            assert r1 == r2
            # every ground unifier factors through the computed unifier
            for env in grounds:
                g1, g2 = apply(t1, env), apply(t2, env)
                if g1 == g2:
                    assert _matches(r1, g1, {})
            checked_success += 1
    assert checked_success and checked_failure


def apply(t, env):
    from mutexlog.terms import apply_subst

    return apply_subst(t, env)


# -- hypothesis properties

_consts = st.sampled_from([A, B, Int(0), Int(1)])
_vars = st.sampled_from([X, Y, Z])
_terms = st.recursive(
    _consts | _vars,
    lambda leaf: st.builds(lambda a: f(a), leaf)
    | st.builds(lambda a, b: g(a, b), leaf, leaf),
    max_leaves=6,
)


@given(_terms, _terms)
@settings(max_examples=300, deadline=None)
def test_unify_symmetric(t1, t2):
    s12 = unify(t1, t2)
    s21 = unify(t2, t1)
    assert (s12 is None) == (s21 is None)
    if s12 is not None:
        assert s12.resolve(t1) == s12.resolve(t2)
        assert s21.resolve(t1) == s21.resolve(t2)


@given(_terms)
@settings(max_examples=200, deadline=None)
def test_unify_reflexive_without_bindings(t):
    s = unify(t, t)
    assert s is not None
    assert s.resolve(t) == t


@given(_terms, _terms, _terms)
@settings(max_examples=200, deadline=None)
def test_unifier_is_a_unifier(t1, t2, t3):
    s = unify(t1, t2)
    if s is None:
        return
    s2 = unify(s.resolve(t1), t3, s)
    if s2 is not None:
        assert s2.resolve(t1) == s2.resolve(t2)


def test_substitution_is_persistent():
    s = EMPTY.extend(X, A)
    s2 = s.extend(Y, B)
    assert len(EMPTY) == 0 and len(s) == 1 and len(s2) == 2
    assert s.get(Y) is None and s2.get(Y) == B
    assert isinstance(s, Substitution)
