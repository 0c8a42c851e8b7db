import itertools
from math import lcm

import pytest
from hypothesis import given, settings

from provclose.arith import PrimeSet, factorize, nu
from provclose.closure import (
    closure_cyclic,
    h_value,
    in_K,
    is_closed_cyclic,
    isolation_witness,
    membership_in_closure,
    root_exp_in_K,
    vtog_consistency_check,
)
from provclose.errors import NoClosureFormulaError, NotInKError, RootOfIdentityError
from provclose.freeword import Word, abelianization, parse_word, power, root_exp
from provclose.variety import Pseudovariety, cyclic_membership, parse_variety

from conftest import all_reduced_words, words

SUPPORTED = [parse_variety(s) for s in
             ["G", "GP:2", "GP:3", "GP:2,3", "GP:!2", "O", "N", "S", "Su", "Vp:2", "Vp:3",
              "Vp:5", "Vp:7"]]
SHORT = all_reduced_words(4)


def W(text):
    return parse_word(text)


def brute_h(w, p):
    f = abelianization(w)
    return next(r for r in range(1, p) if all(r * x % (p - 1) == 0 for x in f))


def brute_max_divisor(e, V):
    return max(k for k in range(1, e + 1) if e % k == 0 and cyclic_membership(k, V))


@pytest.mark.parametrize("w,V,m,gen", [
    ("(ab)^6", "GP:2", 2, "(ab)^2"),
    ("a^12", "O", 3, "a^3"),
    ("(ab)^4", "Vp:3", 2, "(ab)^2"),
    ("a^6", "Vp:5", 2, "a^2"),
    ("a^12", "GP:2,3", 12, "a^12"),
    ("a^10", "GP:!2", 5, "a^5"),
])
def test_closure_examples(w, V, m, gen):
    res = closure_cyclic(W(w), parse_variety(V))
    assert res.closure_exponent == m
    assert res.generator == W(gen)
    assert res.closed == (m == res.exponent)


def test_closure_v3_trace():
    res = closure_cyclic(W("(ab)^4"), parse_variety("Vp:3"))
    rules = [(s.rule, s.cites) for s in res.trace]
    assert rules == [("root-exponent", None), ("h-value", "Lemma 4.4"),
                     ("closure-exponent", "Cor 4.7")]
    assert res.trace[1].values["h_u"] == 2


def test_identity_closure():
    res = closure_cyclic(Word.identity(2), parse_variety("GP:2,3"))
    assert res.generator.is_identity and res.closed
    assert res.root is None and res.trace[0].cites == "Cor 3.5(i)"


def test_no_formula_for_abelian_exponent():
    with pytest.raises(NoClosureFormulaError, match=r"Ab\(m\): no closure formula in scope"):
        closure_cyclic(W("a^2"), parse_variety("Ab:6"))


def test_custom_descriptor_requires_flag():
    pred = lambda k: all(q in (2, 3) for q in factorize(k))
    with pytest.raises(NoClosureFormulaError):
        closure_cyclic(W("a^6"), Pseudovariety.custom("smooth", pred))
    V = Pseudovariety.custom("smooth", pred, extension_closed=True)
    res = closure_cyclic(W("a^30"), V)
    assert res.closure_exponent == 6 and res.trace[-1].cites == "Thm 3.2(iv)"


def test_n_closure_is_trivial():
    for w in SHORT:
        res = closure_cyclic(w, parse_variety("N"))
        assert res.closed and res.generator == w


@pytest.mark.parametrize("w,V,expected,reason", [
    ("(ab)^4", "GP:2", True, "Cor 3.5(ii)"),
    ("(ab)^2", "Vp:3", True, "Prop 4.6"),
    ("[a,b]^10", "S", True, "Cor 3.4(i)"),
    ("(ab)^4", "Vp:3", False, "Prop 4.6"),
    ("a^6", "O", False, "Cor 3.7(ii)"),
    ("a^5", "N", True, "Thm 4.1"),
    ("a^5", "G", True, "Cor 4.2(i)"),
])
def test_is_closed_examples(w, V, expected, reason):
    verdict = is_closed_cyclic(W(w), parse_variety(V))
    assert verdict.closed is expected and verdict.reason == reason


@pytest.mark.parametrize("V", SUPPORTED, ids=str)
def test_is_closed_agrees_with_closure(V):
    for w in SHORT + [W("a^12"), W("(ab)^6"), W("a^9"), W("(ab^2)^10")]:
        assert is_closed_cyclic(w, V).closed == closure_cyclic(w, V).closed


@pytest.mark.parametrize("V", SUPPORTED, ids=str)
def test_closure_invariants(V):
    for w in SHORT + [W("a^60"), W("(a b^-1)^42")]:
        res = closure_cyclic(w, V)
        assert res.generator == power(res.root, res.closure_exponent)
        assert res.exponent % res.closure_exponent == 0
        assert is_closed_cyclic(res.generator, V).closed
        assert membership_in_closure(w, w, V)


@pytest.mark.parametrize("V", [V for V in SUPPORTED if V.extension_closed], ids=str)
def test_extension_closed_exponent_oracle(V):
    for e in range(1, 200):
        assert closure_cyclic(W(f"a^{e}"), V).closure_exponent == brute_max_divisor(e, V)


@pytest.mark.parametrize("v,expected", [("(ab)^3", False), ("(ab)^-4", True), ("1", True),
                                        ("(ab)^2", True), ("(ba)^2", False), ("a", False)])
def test_membership_examples(v, expected):
    assert membership_in_closure(W(v), W("(ab)^6"), parse_variety("GP:2")) is expected


def test_membership_in_trivial_closure():
    V = parse_variety("GP:2")
    assert not membership_in_closure(W("a"), Word.identity(), V)
    assert membership_in_closure(Word.identity(), Word.identity(), V)


@pytest.mark.parametrize("w,p,h", [("a^2b^4", 5, 2), ("[a,b]", 3, 1), ("a", 5, 4), ("ab", 2, 1)])
def test_h_value_examples(w, p, h):
    assert h_value(W(w), p) == h


def test_h_value_is_least_power_in_K():
    for w, p in itertools.product(SHORT, (3, 5, 7)):
        h = h_value(w, p)
        assert h == brute_h(w, p)
        assert in_K(power(w, h), p)
        assert (p - 1) % h == 0


def test_h_value_rejects_composite():
    with pytest.raises(ValueError):
        h_value(W("a"), 4)


@pytest.mark.parametrize("w,p,root,e", [("(ab)^4", 3, "(ab)^2", 2), ("[a,b]^5", 3, "[a,b]", 5)])
def test_root_exp_in_K_examples(w, p, root, e):
    r = root_exp_in_K(W(w), p)
    assert r.root_in_K == W(root) and r.exponent_in_K == e


def test_root_exp_in_K_errors():
    with pytest.raises(NotInKError, match="not in K_n"):
        root_exp_in_K(W("ab"), 3)
    with pytest.raises(RootOfIdentityError):
        root_exp_in_K(Word.identity(), 3)


def test_root_exp_in_K_invariants():
    for w, p in itertools.product(SHORT, (3, 5)):
        w = power(w, p - 1)
        r = root_exp_in_K(w, p)
        assert power(r.root_in_K, r.exponent_in_K) == w
        assert in_K(r.root_in_K, p)


@pytest.mark.parametrize("w,P,expected", [("(ab)^6", PrimeSet.of(2), "(ab)^2"),
                                          ("a^4", PrimeSet.of(2), None),
                                          ("[a,b]", PrimeSet.of(3), None),
                                          ("a^30", PrimeSet.of(2, 3), "a^6")])
def test_isolation_witness(w, P, expected):
    v = isolation_witness(W(w), P)
    assert v == (None if expected is None else W(expected))


def test_isolation_witness_property():
    P = PrimeSet.of(2)
    for e in range(1, 60):
        w = power(W("ab"), e)
        v = isolation_witness(w, P)
        if v is None:
            assert nu(e, P) == e
            continue
        u, f = root_exp(v)
        # v^q lies in <w> but v does not
        q = e // f
        assert q not in P and e % f == 0 and f != e


@pytest.mark.parametrize("w,p", [("(ab)^4", 3), ("a^6", 5), ("a^12", 2), ("[a,b]^3", 7)])
def test_vtog_examples(w, p):
    assert vtog_consistency_check(W(w), p)


@settings(max_examples=60, deadline=None)
@given(words(rank=2, max_size=8))
def test_closure_hypothesis_laws(w):
    if w.is_identity:
        return
    for V in SUPPORTED:
        res = closure_cyclic(w, V)
        assert res.exponent % res.closure_exponent == 0
        assert closure_cyclic(w.with_rank(3), V).closure_exponent == res.closure_exponent
    e = root_exp(w).exponent
    n = closure_cyclic(w, parse_variety("N")).closure_exponent
    gp = [closure_cyclic(w, Pseudovariety.prime_set(q)).closure_exponent for q in factorize(e)]
    assert n == lcm(1, *gp)


def test_all_words_closed_iff_small_cyclics_belong():
    for text in ("GP:2", "GP:2,3", "O", "S"):
        V = parse_variety(text)
        all_closed = all(is_closed_cyclic(w, V).closed for w in all_reduced_words(6))
        assert all_closed == all(cyclic_membership(k, V) for k in range(1, 7))
