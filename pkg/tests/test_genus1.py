import random

import pytest

from sdcalc.circuit import Diagram, generate, normalize, rotate_to_front
from sdcalc.genus1 import (
    CanonicalForm,
    SumForm,
    classify,
    duality_coefficients,
    normalize_sum,
    sigma_sequence,
)
from sdcalc.homology import add, pairing, scale, twist_matrix

from support import rand_chain, rand_closed

TRI = normalize([(1, 0), (1, -1), (0, 1)], True)
AB = normalize([(1, 0), (0, 1)], True)


def expected_forms(form):
    """Both closure readings of a generator sum form, deduplicated."""
    return {normalize_sum(form.with_closure("Spin0")),
            normalize_sum(form.with_closure("NonSpin1"))}


def test_duality_coefficients_examples():
    assert duality_coefficients(TRI) == [-1]
    st = normalize([(1, 0), (0, 1), (-1, 0), (0, -1)], True)
    assert duality_coefficients(st) == [0, 0]


def test_duality_relation_holds():
    rng = random.Random(41)
    for _ in range(50):
        ch = rand_chain(rng, 1, rng.randint(3, 9))
        ks = duality_coefficients(ch)
        for i in range(2, len(ch)):
            k = ks[i - 2]
            assert ch[i] == add(scale(k, ch[i - 1]), scale(-1, ch[i - 2]))
            assert k == pairing(ch[i - 2], ch[i])


def test_duality_needs_genus_one():
    with pytest.raises(ValueError):
        duality_coefficients(rand_chain(random.Random(0), 2, 4))


def test_sigma_sequence():
    assert sigma_sequence([-1]) == [0, 1, -1]
    assert sigma_sequence([2, 2]) == [0, 1, 2, 3]
    assert sigma_sequence([]) == [0, 1]


def test_sigma_tracks_first_pairing():
    # sigma_i = <g_1, g_i>, so closure is readable off the recursion
    rng = random.Random(42)
    for _ in range(100):
        ch = rand_chain(rng, 1, rng.randint(3, 10))
        sig = sigma_sequence(duality_coefficients(ch))
        for i, v in enumerate(ch):
            assert sig[i] == pairing(ch[0], v)


def test_normalize_sum():
    assert normalize_sum(SumForm(2, 0, 0, "Spin0")) == CanonicalForm(3, 0, 0)
    assert normalize_sum(SumForm(2, 0, 0, "NonSpin1")) == CanonicalForm(0, 3, 3)
    assert normalize_sum(SumForm(1, 2, 0, "Spin0")) == CanonicalForm(0, 4, 2)
    assert normalize_sum(SumForm(0, 0, 1, "NonSpin1")) == CanonicalForm(0, 1, 2)
    with pytest.raises(ValueError):
        normalize_sum(SumForm(0, 0, 0, "Unclosed"))


def test_canonical_form_pretty_and_signature():
    assert CanonicalForm(3, 0, 0).pretty() == "3*(S2xS2)"
    assert CanonicalForm(0, 1, 2).pretty() == "1*CP2 # 2*CP2bar"
    assert CanonicalForm(0, 1, 2).signature == -1
    assert CanonicalForm(2, 0, 0).signature == 0


def test_classify_triangle():
    cl = classify(TRI)
    assert {f.pretty() for f in cl.canonical_forms} == {"1*CP2 # 2*CP2bar"}
    assert (cl.counts.l, cl.counts.m, cl.counts.n) == (0, 0, 1)
    steps = [s for s, _, _ in cl.reduction_trace]
    assert steps == [1]


def test_classify_two_curves_keeps_both_closures():
    cl = classify(AB)
    assert {f.pretty() for f in cl.canonical_forms} == {"1*(S2xS2)", "1*CP2 # 1*CP2bar"}
    assert cl.reduction_trace == ()


def test_classify_rejections():
    with pytest.raises(ValueError, match="genus 1"):
        classify(normalize([(1, 0, 0, 0), (0, 1, 0, 0)], True))
    with pytest.raises(ValueError, match="closed"):
        classify(normalize([(1, 0), (0, 1)], False))
    with pytest.raises(ValueError, match="untwisted"):
        classify(Diagram(AB, twist_matrix((1, 0), 1)))


def test_classify_accepts_diagram_wrapper():
    cl = classify(Diagram(TRI, None))
    assert {f.pretty() for f in cl.canonical_forms} == {"1*CP2 # 2*CP2bar"}


def test_classify_matches_generator_forms():
    rng = random.Random(43)
    for _ in range(40):
        circ, form = generate(rng.randrange(2**32), rng.randint(0, 12))
        cl = classify(circ)
        assert cl.canonical_forms == frozenset(expected_forms(form))


def test_classify_euler_bookkeeping():
    # chi of the closed total space: 2 + c = 4 + 2l + m + n
    rng = random.Random(44)
    for _ in range(40):
        circ, _ = generate(rng.randrange(2**32), rng.randint(0, 10))
        cl = classify(circ)
        assert 2 + len(circ) == 4 + 2 * cl.counts.l + cl.counts.m + cl.counts.n


def test_classify_counts_relate_to_generator_counts():
    # reduction order may differ from construction order, but m - n and
    # the total curve bookkeeping are order-independent
    rng = random.Random(45)
    for _ in range(40):
        circ, form = generate(rng.randrange(2**32), rng.randint(0, 12))
        cl = classify(circ)
        assert cl.counts.m - cl.counts.n == form.m - form.n
        assert 2 * cl.counts.l + cl.counts.m + cl.counts.n == 2 * form.l + form.m + form.n


def test_classify_is_rotation_invariant():
    rng = random.Random(46)
    for _ in range(25):
        circ, _ = generate(rng.randrange(2**32), rng.randint(1, 8))
        r = rng.randrange(len(circ))
        rotated = rotate_to_front(circ, r)
        assert classify(circ).canonical_forms == classify(rotated).canonical_forms


def test_classify_trace_is_replayable():
    from sdcalc.subst import contract

    circ, _ = generate(7, 9)
    cl = classify(circ)
    cur = circ
    total = SumForm(0, 0, 0, "Unclosed")
    for _step, det, delta in cl.reduction_trace:
        cur, got = contract(cur, det)
        assert (got.l, got.m, got.n) == (delta.l, delta.m, delta.n)
        total = total + delta
    assert len(cur) == 2
    assert (total.l, total.m, total.n) == (cl.counts.l, cl.counts.m, cl.counts.n)


def test_sum_form_validation_and_add():
    with pytest.raises(ValueError):
        SumForm(-1, 0, 0, "Spin0")
    with pytest.raises(ValueError):
        SumForm(0, 0, 0, "Maybe")
    a = SumForm(1, 2, 0, "Unclosed")
    b = SumForm(0, 1, 1, "Spin0")
    s = a + b
    assert (s.l, s.m, s.n) == (1, 3, 1)
    assert s.closure == "Spin0"


def test_closed_genus1_circuits_always_classify():
    rng = random.Random(47)
    for _ in range(60):
        c = rand_closed(rng, 1, rng.randint(2, 9), lim=6)
        cl = classify(c)
        assert cl.canonical_forms
        for f in cl.canonical_forms:
            assert f.s2xs2 >= 0 and f.cp2 >= 0 and f.cp2bar >= 0
