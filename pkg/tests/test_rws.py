import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from geodetic import (
    GeneratorAlphabet,
    GroupSpec,
    RewritingSystem,
    Rule,
    cayley_ball,
    check_confluence,
    cross_validate,
    extract_rws,
    find_critical_pairs,
    free_product_normal_form,
    normalize,
    rules_from_iec_word,
    words_equal,
)
from geodetic.errors import NotGeodeticError, PreconditionError, UnverifiedSystemError
from geodetic.rws import free_reduction_rules, normalize_random, parse_rws, parse_word

AB = GeneratorAlphabet(("a", "A", "b", "B"), {"a": "A", "A": "a", "b": "B", "B": "b"})


def rule(lhs, rhs):
    return Rule(parse_word(lhs), parse_word(rhs))


def system(spec, radius=4):
    return extract_rws(cayley_ball(spec, radius))


def test_rules_from_triangle():
    a = GeneratorAlphabet(("a", "A"), {"a": "A", "A": "a"})
    assert set(rules_from_iec_word(a, "a a a".split())) == {rule("a a", "A"), rule("A A", "a")}


def test_rules_from_pentagon():
    rules = rules_from_iec_word(AB, "a b a b a".split())
    assert all(len(r.lhs) == 3 and len(r.rhs) == 2 for r in rules)
    # every rule is sound: lhs rhs^-1 is a rotation of the circuit or its inverse
    ring = "ababa"
    words = {ring[k:] + ring[:k] for k in range(5)} | {"".join(AB.invert_word(ring))[k:] + "".join(AB.invert_word(ring))[:k] for k in range(5)}
    for r in rules:
        assert "".join(r.lhs + AB.invert_word(r.rhs)) in words
    with pytest.raises(PreconditionError):
        rules_from_iec_word(AB, "a b a b".split())


def test_extract_c3c3():
    r = system(GroupSpec.cyclic(3, 3))
    assert set(r.rules) == set(free_reduction_rules(AB)) | {
        rule("a a", "A"), rule("A A", "a"), rule("b b", "B"), rule("B B", "b"),
    }
    assert r.rules[:4] == tuple(free_reduction_rules(AB))
    assert r.confluence.confluent and not r.warnings


def test_extract_c2c2_is_free_reduction_only():
    r = system(GroupSpec.cyclic(2, 2))
    assert set(r.rules) == {rule("a a", "1"), rule("b b", "1")}
    assert r.confluence.confluent


def test_extract_c2c3():
    r = system(GroupSpec.cyclic(2, 3))
    assert rule("b b", "B") in r.rules and rule("B B", "b") in r.rules
    assert r.confluence.confluent


def test_extract_rejects_non_geodetic_ball():
    with pytest.raises(NotGeodeticError):
        system(GroupSpec.cyclic(4, 4), 3)


def test_extract_warns_on_small_radius():
    assert system(GroupSpec.cyclic(3, 3), 1).warnings


def test_critical_pairs_non_confluent():
    r = RewritingSystem(AB, (rule("a b", "1"), rule("b a", "1"), rule("a a", "b")))
    report = check_confluence(r)
    assert not report.confluent
    # aab: (aa)b -> bb, a(ab) -> a
    overlaps = {p.overlap for p in report.unresolved}
    assert ("a", "a", "b") in overlaps
    with pytest.raises(UnverifiedSystemError):
        words_equal(r, "a".split(), "a".split())


def test_critical_pairs_include_containments():
    r = RewritingSystem(AB, (rule("a b a", "b"), rule("b", "1")))
    pairs = find_critical_pairs(r)
    assert any(p.overlap == ("a", "b", "a") and p.rules == (0, 1) for p in pairs)


def test_non_length_reducing_rejected():
    with pytest.raises(PreconditionError):
        check_confluence(RewritingSystem(AB, (rule("a", "b"),)))


def test_normalize_examples():
    r = system(GroupSpec.cyclic(3, 3))
    assert normalize(r, "a a b b".split()) == ("A", "B")
    assert normalize(r, "a a a".split()) == ()
    assert normalize(r, "a b B A".split()) == ()
    assert words_equal(r, "a a".split(), ["A"])
    assert not words_equal(r, ["a"], ["b"])


def test_text_roundtrip():
    r = system(GroupSpec.cyclic(2, 3))
    text = r.to_text()
    assert text.startswith("[alphabet]\n") and "\n[rules]\n" in text
    back = parse_rws(text)
    assert back.rules == r.rules and back.alphabet == r.alphabet


def test_cross_validate_passes():
    spec = GroupSpec.cyclic(2, 3)
    cv = cross_validate(system(spec), spec, samples=200, max_len=10, seed=7, radius=8)
    assert cv.passed and cv.equality_checks == 400


def test_cross_validate_catches_wrong_system():
    spec = GroupSpec.cyclic(3, 3)
    wrong = RewritingSystem(spec.alphabet, tuple(free_reduction_rules(spec.alphabet)))
    cv = cross_validate(wrong, spec, samples=100, max_len=8, seed=1)
    assert not cv.passed


SPECS = [(2, 3), (3, 3), (3, 5), (2, 2, 3)]
SYSTEMS = {o: system(GroupSpec.cyclic(*o)) for o in SPECS}


@settings(max_examples=150, deadline=None)
@given(st.sampled_from(SPECS), st.lists(st.integers(0, 5), max_size=14), st.integers(0, 10**6))
def test_normal_form_properties(orders, idx, seed):
    r = SYSTEMS[orders]
    spec = GroupSpec.cyclic(*orders)
    syms = spec.alphabet.symbols
    w = tuple(syms[i % len(syms)] for i in idx)
    nf = normalize(r, w)
    # any rewriting strategy reaches the same normal form in a confluent system
    assert normalize_random(r, w, random.Random(seed)) == nf
    assert free_product_normal_form(spec, nf) == free_product_normal_form(spec, w)
    assert len(nf) == len(spec.spell(free_product_normal_form(spec, w)))
    assert normalize(r, nf) == nf


@pytest.mark.parametrize("orders", SPECS)
def test_rules_are_sound_and_closed(orders):
    spec = GroupSpec.cyclic(*orders)
    r = SYSTEMS[orders]
    alph = spec.alphabet
    rules = set(r.rules)
    for x in r.rules:
        assert free_product_normal_form(spec, x.lhs) == free_product_normal_form(spec, x.rhs)
        assert len(x.lhs) > len(x.rhs)
        if x.rhs:
            # every rotation and reversal of the circuit is present too
            assert set(rules_from_iec_word(alph, x.lhs + alph.invert_word(x.rhs))) <= rules
        else:
            assert Rule(alph.invert_word(x.lhs), ()) in rules
