import pytest

from mutexlog.errors import GoalError
from mutexlog.oracle import (
    Instance,
    OracleVerdict,
    canonical_bindings,
    enumerate_answers,
    provable,
    random_instance,
)
from mutexlog.parser import parse_goal, parse_program, print_formula
from mutexlog.terms import Const, Var


def prog(text):
    return parse_program(text).clauses


def test_fact_is_provable():
    v = enumerate_answers(prog("q."), parse_goal("q"), 2)
    assert v.status == "provable"
    assert v.answers == ((),)
    assert not v.truncated


def test_empty_program_settles_failure():
    v = enumerate_answers([], parse_goal("q"), 5)
    assert v.status == "not-provable-within-depth"
    assert v.answers == () and not v.truncated


def test_self_recursion_is_unknown():
    v = enumerate_answers(prog("p :- p."), parse_goal("p"), 5)
    assert v.status == "exhausted-unknown"
    assert v.truncated


def test_provable_wrapper():
    assert provable(prog("q."), parse_goal("q"), 2)
    assert not provable([], parse_goal("q"), 2)


def test_choice_enumerated_as_plain_pair():
    text = "memb(X,[X|L]) & memb(X,[Y|L]) :- neq(X,Y), memb(X,L).\n"
    v = enumerate_answers(prog(text), parse_goal("memb(X,[1,2])"), 8)
    assert v.status == "provable"
    assert v.answers == ((("X", "1"),), (("X", "2"),))


def test_answers_sorted_lexicographically():
    v = enumerate_answers(prog("p(c).\np(a).\np(b)."), parse_goal("p(X)"), 4)
    assert [a[0][1] for a in v.answers] == ["a", "b", "c"]


def test_answers_deduplicated_modulo_renaming():
    v = enumerate_answers(prog("p(X).\np(Y)."), parse_goal("p(Z)"), 4)
    assert len(v.answers) == 1
    assert v.answers[0][0][1] == "_G1"


def test_status_matches_answers():
    for text, goal in [("p(a).", "p(a)"), ("p(a).", "p(b)"), ("p :- p.", "p")]:
        v = enumerate_answers(prog(text), parse_goal(goal), 6)
        assert (v.status == "provable") == bool(v.answers)


def test_depth_monotonicity():
    text = "q(a).\np(X) :- q(X).\n"
    for d in range(1, 10):
        lo = set(enumerate_answers(prog(text), parse_goal("p(X)"), d).answers)
        hi = set(enumerate_answers(prog(text), parse_goal("p(X)"), d + 1).answers)
        assert lo <= hi


def test_both_entry_orders_agree_when_decisive():
    # fact-only programs are decisive under either order
    text = "p(a) & p(b).\np(c).\n"
    head = enumerate_answers(prog(text), parse_goal("p(Y)"), 8, rule2_order="head")
    body = enumerate_answers(prog(text), parse_goal("p(Y)"), 8, rule2_order="body")
    assert not head.truncated and not body.truncated
    assert set(head.answers) == set(body.answers)


def test_body_first_never_settles_once_a_rule_exists():
    # body-first selection proves a candidate clause's body before looking at
    # its head, so a rule regresses through itself on every selection: the
    # verdict stays truncated at any depth, though the answers found agree
    text = "s(a).\ns(b).\nq(X) :- s(X).\n"
    head = enumerate_answers(prog(text), parse_goal("q(Y)"), 8, rule2_order="head")
    assert not head.truncated
    for depth in (8, 14, 20):
        body = enumerate_answers(prog(text), parse_goal("q(Y)"), depth,
                                 rule2_order="body")
        assert body.truncated
        assert set(body.answers) == set(head.answers)


def test_body_first_costs_more_depth():
    text = "s(a).\nq(X) :- s(X).\n"
    head = enumerate_answers(prog(text), parse_goal("q(Y)"), 6, rule2_order="head")
    body = enumerate_answers(prog(text), parse_goal("q(Y)"), 6, rule2_order="body")
    assert not head.truncated
    assert body.truncated  # body-first re-proves rule bodies at every selection


def test_rejects_unknown_order():
    with pytest.raises(ValueError):
        enumerate_answers([], parse_goal("p"), 3, rule2_order="sideways")


def test_mod_goal_is_an_error():
    with pytest.raises(GoalError):
        enumerate_answers([], parse_goal("mod(lists)"), 3)


def test_hypothetical_goals():
    v = enumerate_answers([], parse_goal("p(a) => p(a)"), 4)
    assert v.status == "provable"
    v = enumerate_answers([], parse_goal("(p(a) & p(b)) => p(X)"), 6)
    assert [a[0][1] for a in v.answers] == ["a", "b"]


def test_canonical_bindings_sorted_and_renumbered():
    got = canonical_bindings({"B": Var("T", 5), "A": Var("S", 9)})
    assert got == (("A", "_G1"), ("B", "_G2"))
    assert canonical_bindings({"X": Const("a")}) == (("X", "a"),)


# -- the corpus generator


def test_generator_deterministic():
    assert random_instance(11) == random_instance(11)
    assert random_instance(11) != random_instance(12)


def test_generator_round_trips_through_concrete_syntax(corpus):
    for inst in corpus[:60]:
        reparsed = parse_program(inst.program_text())
        assert tuple(reparsed.clauses) == inst.clauses
        assert parse_goal(inst.goal_text()) == inst.goal


def test_generator_instances_are_closed(corpus):
    from mutexlog.terms import free_vars

    for inst in corpus:
        for clause in inst.clauses:
            assert free_vars(clause) == []


def test_generator_emits_choices_often(corpus):
    with_choice = sum("&" in inst.program_text() for inst in corpus)
    assert with_choice >= 100


def test_generator_size_bounds(corpus):
    for inst in corpus:
        assert len(inst.clauses) <= 10
        assert inst.program_text().count("\n") <= 10


def test_instance_is_a_value():
    inst = random_instance(3)
    assert isinstance(inst, Instance)
    assert inst == Instance(inst.clauses, inst.goal)
