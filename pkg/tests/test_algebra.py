"""Pattern-set algebra: union, intersection, complement, ground oracle."""

import pytest

from strictpat import (Clause, Label, PreconditionViolated, clause_complement,
                       complement, enumerate_ground, extensional_eq,
                       make_pattern_set, member_set, parse_pattern_set,
                       parse_term, parse_type, pattern_sets_equal, print_term,
                       relative_complement, set_complement, set_intersect,
                       set_union, universal_pattern)

from conftest import (A, A_SIG, AB_SIG, EXP, LAM_SIG, STRICT_SIG,
                      BETA_REDEX, ground, pat)

X_A = (("x", A),)


def pset(sig, psi, a, texts):
    return parse_pattern_set(psi, sig, a, texts)


def test_make_pattern_set_dedups_and_renames():
    s = pset(A_SIG, X_A, A, ["E[x^1]", "F[x^1]", "E[x^0]"])
    assert len(s.members) == 2  # F[x^1] is E[x^1] up to renaming
    names = [t.name for t in s.members]
    assert len(set(names)) == 2  # the clash with E was renamed apart
    assert s.pattern(1).term.args == (("x", Label.ZERO),)


def test_universal_pattern():
    u = universal_pattern((), parse_type("exp ->u exp", LAM_SIG))
    assert print_term(u) == r"\x^u:exp. H1[x^u]"
    v = universal_pattern(X_A, A)
    assert print_term(v) == "H1[x^u]"
    with pytest.raises(PreconditionViolated):
        universal_pattern((), parse_type("exp ->1 exp", LAM_SIG))
    with pytest.raises(PreconditionViolated):
        universal_pattern((), parse_type("(exp ->u exp) ->0 exp", LAM_SIG))


def test_set_union():
    s1 = pset(A_SIG, X_A, A, ["E[x^1]"])
    s2 = pset(A_SIG, X_A, A, ["E[x^1]", "E[x^0]"])
    got = set_union(s1, s2)
    assert pattern_sets_equal(got, s2)
    with pytest.raises(PreconditionViolated):
        set_union(s1, pset(A_SIG, (("y", A),), A, ["E[y^1]"]))


def test_set_intersect_golden():
    s1 = pset(A_SIG, X_A, A, ["E[x^1]", "E[x^0]"])
    s2 = pset(A_SIG, X_A, A, ["F[x^u]"])
    got = set_intersect(A_SIG, s1, s2)
    assert pattern_sets_equal(got, s1)


def test_set_complement_of_empty_and_universal():
    empty = make_pattern_set(X_A, A, [])
    top = set_complement(STRICT_SIG, empty)
    assert [print_term(t) for t in top.members] == ["H1[x^u]"]
    assert pattern_sets_equal(set_complement(STRICT_SIG, top), empty)


def test_set_complement_xor_on_ground():
    s = pset(STRICT_SIG, X_A, A, ["c @1 E[x^u] @1 F[x^u]", "E[x^0]"])
    comp = set_complement(STRICT_SIG, s)
    for m in ground(STRICT_SIG, X_A, A, 6):
        assert member_set(STRICT_SIG, m, s) != member_set(STRICT_SIG, m, comp), \
            print_term(m)


def test_relative_complement():
    s1 = pset(A_SIG, X_A, A, ["E[x^u]"])
    s2 = pset(A_SIG, X_A, A, ["E[x^1]"])
    diff = relative_complement(A_SIG, s1, s2)
    # over a signature with no u-arrows, "not strict" means "unused"
    assert extensional_eq(A_SIG, diff, pset(A_SIG, X_A, A, ["E[x^0]"]), 6)
    nothing = relative_complement(A_SIG, s1, s1)
    assert not any(member_set(A_SIG, m, nothing)
                   for m in ground(A_SIG, X_A, A, 6))


def test_member_set():
    s = pset(STRICT_SIG, X_A, A, ["c @1 E[x^1] @1 F[x^0]"])
    member = {"c @1 x @1 b": True, "c @1 b @1 b": False,
              "c @1 b @1 x": False, "x": False}
    for text, want in member.items():
        assert member_set(STRICT_SIG, parse_term(text, STRICT_SIG), s) is want


def test_enumerate_ground_golden():
    e = enumerate_ground(X_A, AB_SIG, A, 2)
    assert [print_term(t) for t in e] == ["b", "x", "c @u b", "c @u x"]
    assert len(e) == 4
    assert [len(enumerate_ground(X_A, AB_SIG, A, d)) for d in (3, 4, 5)] == \
        [6, 8, 10]
    assert [len(enumerate_ground((), LAM_SIG, EXP, d))
            for d in (3, 4, 5, 6)] == [1, 1, 4, 4]
    with pytest.raises(ValueError):
        enumerate_ground(X_A, AB_SIG, A, 0)


def test_enumerate_ground_respects_binder_labels():
    strict_fun = parse_type("a ->1 a", A_SIG)
    got = [print_term(t) for t in enumerate_ground((), A_SIG, strict_fun, 3)]
    assert got == [r"\x^1:a. x"]  # a constant body never uses x strictly
    vac_fun = parse_type("a ->0 a", AB_SIG)
    got = [print_term(t) for t in enumerate_ground((), AB_SIG, vac_fun, 3)]
    assert got == [r"\x^0:a. b", r"\x^0:a. c @u b"]


def test_extensional_eq_distinguishes_structure():
    whole = pset(STRICT_SIG, X_A, A, ["E[x^u]"])
    split = pset(STRICT_SIG, X_A, A, ["E[x^1]", "E[x^0]"])
    assert extensional_eq(STRICT_SIG, whole, split, 7)
    assert not pattern_sets_equal(whole, split)
    # with an undetermined arrow in the signature the split has a gap:
    # terms that use x without a strict occurrence, such as c @u x
    whole_ab = pset(AB_SIG, X_A, A, ["E[x^u]"])
    split_ab = pset(AB_SIG, X_A, A, ["E[x^1]", "E[x^0]"])
    assert not extensional_eq(AB_SIG, whole_ab, split_ab, 4)


def test_clause_complement_golden():
    redex = pat(LAM_SIG, "", "exp", BETA_REDEX)
    got = clause_complement(LAM_SIG, [Clause("r1", "betardx", redex)])
    assert [c.name for c in got] == [f"n{i}" for i in range(1, len(got) + 1)]
    assert {c.pred for c in got} == {"non_betardx"}
    comp = complement(LAM_SIG, redex)
    heads = make_pattern_set((), EXP, [c.pattern.term for c in got])
    assert pattern_sets_equal(heads, comp)


def test_clause_complement_errors():
    redex = pat(LAM_SIG, "", "exp", BETA_REDEX)
    with pytest.raises(ValueError):
        clause_complement(LAM_SIG, [])
    with pytest.raises(ValueError):
        clause_complement(LAM_SIG, [Clause("r1", "p", redex),
                                    Clause("r2", "q", redex)])
    other = pat(LAM_SIG, "x:exp", "exp", "F[x^u]")
    with pytest.raises(PreconditionViolated):
        clause_complement(LAM_SIG, [Clause("r1", "p", redex),
                                    Clause("r2", "p", other)])


def test_pattern_sets_equal_modulo_order_and_renaming():
    s1 = pset(A_SIG, X_A, A, ["E[x^1]", "F[x^0]"])
    s2 = pset(A_SIG, X_A, A, ["G[x^0]", "H[x^1]"])
    assert pattern_sets_equal(s1, s2)
    assert not pattern_sets_equal(s1, pset(A_SIG, X_A, A, ["E[x^1]"]))
    assert not pattern_sets_equal(s1, pset(A_SIG, X_A, A,
                                           ["E[x^1]", "F[x^u]"]))
