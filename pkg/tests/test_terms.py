import pytest

from mutexlog.errors import MalformedClauseError
from mutexlog.terms import (
    Compound,
    Const,
    DAll,
    DAtom,
    DChoice,
    DImp,
    FreshSource,
    GAnd,
    GAtom,
    GExists,
    GImp,
    Int,
    NIL,
    Var,
    apply_subst,
    atom_key,
    cons,
    desugar_clause,
    free_vars,
    list_view,
    mk_list,
    rename_fresh,
)


def atom(name, *args):
    return Compound(name, tuple(args)) if args else Const(name)


def test_terms_are_values():
    assert Var("X") == Var("X", 0)
    assert Var("X") != Var("X", 1)
    assert Compound("f", (Const("a"),)) == Compound("f", (Const("a"),))
    assert len({Int(3), Int(3), Const("a")}) == 2


def test_compound_requires_args():
    with pytest.raises(ValueError):
        Compound("f", ())


def test_atom_key():
    assert atom_key(Const("p")) == ("p", 0)
    assert atom_key(atom("p", Int(1), Int(2))) == ("p", 2)
    with pytest.raises(TypeError):
        atom_key(Var("X"))


def test_list_roundtrip():
    t = mk_list([Int(1), Int(2), Int(3)])
    items, tail = list_view(t)
    assert items == [Int(1), Int(2), Int(3)]
    assert tail == NIL


def test_list_improper_tail():
    t = cons(Int(1), Var("T"))
    items, tail = list_view(t)
    assert items == [Int(1)]
    assert tail == Var("T")


def test_free_vars_first_occurrence_order():
    g = GAnd(GAtom(atom("p", Var("B"), Var("A"))), GAtom(atom("q", Var("B"), Var("C"))))
    assert [v.name for v in free_vars(g)] == ["B", "A", "C"]


def test_free_vars_respect_binders():
    g = GExists("X", GAtom(atom("p", Var("X"), Var("Y"))))
    assert free_vars(g) == [Var("Y")]
    d = DAll("X", DAtom(atom("p", Var("X"), Var("Z"))))
    assert free_vars(d) == [Var("Z")]


def test_free_vars_binder_does_not_hide_stamped():
    # binders only capture the source-level (stamp 0) variable of that name
    g = GExists("X", GAtom(atom("p", Var("X", 3))))
    assert free_vars(g) == [Var("X", 3)]


def test_apply_subst_follows_chains():
    s = {Var("X"): Var("Y"), Var("Y"): Const("a")}
    assert apply_subst(atom("p", Var("X")), s) == atom("p", Const("a"))


def test_apply_subst_shadowing():
    g = GExists("X", GAtom(atom("p", Var("X"), Var("Y"))))
    out = apply_subst(g, {Var("X"): Const("a"), Var("Y"): Const("b")})
    assert out == GExists("X", GAtom(atom("p", Var("X"), Const("b"))))


def test_fresh_source_monotone():
    fresh = FreshSource()
    a, b = fresh.var("X"), fresh.var("X")
    assert a != b and a.name == b.name == "X"
    assert 0 < a.stamp < b.stamp


def test_rename_fresh_strips_binder_run():
    d = desugar_clause(atom("p", Var("X"), Var("Y")), GAtom(atom("q", Var("X"))))
    renamed = rename_fresh(d, FreshSource())
    assert isinstance(renamed, DImp)
    head_vars = free_vars(renamed.head)
    assert all(v.stamp > 0 for v in head_vars)
    # the body shares the head's renaming
    assert free_vars(renamed.body)[0] == head_vars[0]


def test_rename_fresh_no_binders():
    d = DAtom(atom("p", Const("a")))
    assert rename_fresh(d, FreshSource()) is d


def test_desugar_fact():
    assert desugar_clause(Const("q"), None) == DAtom(Const("q"))


def test_desugar_closure_order():
    # first occurrence, head before body: X, L1, L2, L3
    head = atom("append", cons(Var("X"), Var("L1")), Var("L2"), cons(Var("X"), Var("L3")))
    body = GAtom(atom("append", Var("L1"), Var("L2"), Var("L3")))
    d = desugar_clause(head, body)
    binders = []
    while isinstance(d, DAll):
        binders.append(d.var)
        d = d.body
    assert binders == ["X", "L1", "L2", "L3"]
    assert isinstance(d, DImp) and isinstance(d.head, DAtom)


def test_desugar_rejects_bad_heads():
    with pytest.raises(MalformedClauseError):
        desugar_clause(Var("X"), None)
    with pytest.raises(MalformedClauseError):
        desugar_clause(Int(3), None)
    with pytest.raises(MalformedClauseError):
        desugar_clause(atom("p", Var("X", 7)), None)


def test_formula_atom_validation():
    with pytest.raises(ValueError):
        GAtom(Var("X"))
    with pytest.raises(ValueError):
        DAtom(Int(1))


def test_goal_structures_are_values():
    g1 = GImp(DChoice(DAtom(Const("a")), DAtom(Const("b"))), GAtom(Const("c")))
    g2 = GImp(DChoice(DAtom(Const("a")), DAtom(Const("b"))), GAtom(Const("c")))
    assert g1 == g2 and hash(g1) == hash(g2)
