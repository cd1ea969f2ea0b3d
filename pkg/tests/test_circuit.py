import random

import pytest

from sdcalc.circuit import (
    Circuit,
    Diagram,
    double,
    generate,
    generate_trace,
    normalize,
    rotate_to_front,
    switch,
    validate,
)
from sdcalc.homology import canon_sign, matvec, pairing, twist_matrix

from support import rand_closed

TRI = normalize([(1, 0), (1, -1), (0, 1)], True)
AB = normalize([(1, 0), (0, 1)], True)


def test_normalize_fixes_signs():
    assert TRI.curves == ((1, 0), (-1, 1), (0, -1))
    assert all(pairing(TRI[i], TRI[i + 1]) == 1 for i in range(2))


def test_normalize_keeps_first_curve():
    raw = [(-1, 2), (1, -1), (0, 1)]
    c = normalize(raw, False)
    assert c[0] == (-1, 2)


def test_normalize_errors():
    with pytest.raises(ValueError, match="curve 1: not primitive"):
        normalize([(2, 0), (0, 1)], True)
    with pytest.raises(ValueError, match="curves 1,2"):
        normalize([(1, 0), (1, 0)], True)
    with pytest.raises(ValueError, match="curves 1,2"):
        normalize([(1, 0), (1, 2)], False)
    # closing pairing must be a unit for closed circuits
    with pytest.raises(ValueError, match="closing"):
        normalize([(1, 0), (1, 1), (1, 2)], True)


def test_eps_exposed():
    assert TRI.eps == 1
    assert AB.eps == -1
    with pytest.raises(ValueError):
        _ = normalize([(1, 0), (0, 1)], False).eps
    with pytest.raises(ValueError):
        normalize([(1, 0)], True)  # a closed circuit needs two curves


def test_circuit_is_sequence_like():
    assert len(TRI) == 3
    assert TRI[1] == (-1, 1)
    assert list(TRI) == [(1, 0), (-1, 1), (0, -1)]
    assert TRI.genus == 1 and TRI.length == 3 and TRI.closed


def test_validate_good_diagram():
    rep = validate(Diagram(TRI, None))
    assert rep.ok and rep.exactness == "Exact" and rep.failures == ()


def test_validate_reports_genus_two_as_homological():
    c = rand_closed(random.Random(3), 2, 4)
    rep = validate(Diagram(c, None))
    assert rep.ok and rep.exactness == "HomologicalOnly"


def test_validate_collects_failures_without_raising():
    bad = Circuit(curves=((1, 0), (1, 0)), closed=True)
    rep = validate(Diagram(bad, None))
    assert not rep.ok
    assert rep.failures[0][0] == 1
    assert "pairing" in rep.failures[0][1]


def test_validate_twisted_closure():
    # closure of a twisted diagram goes through mu, not the raw pairing
    mu = twist_matrix((1, 0), 1)
    assert validate(Diagram(TRI, mu)).ok
    bad = twist_matrix((1, 1), 3)
    assert abs(pairing(matvec(bad, TRI[-1]), TRI[0])) != 1
    rep = validate(Diagram(TRI, bad))
    assert not rep.ok
    assert any("closing" in reason for _, reason in rep.failures)


def test_switch_rotates_and_renormalizes():
    out = switch(TRI)
    assert out.curves == ((0, -1), (1, 0), (-1, 1))


def test_switch_inverse_roundtrip():
    # roundtrip recovers the circuit up to a global sign (curves are
    # unoriented; the representative's sign depends on eps)
    rng = random.Random(7)
    for g in (1, 2):
        c = rand_closed(rng, g, 5)
        back = switch(switch(c, 1), -1)
        for u, v in zip(back.curves, c.curves):
            assert canon_sign(u) == canon_sign(v)
        assert switch(c, 0).curves == c.curves


def test_full_switch_cycle_is_identity_up_to_sign():
    rng = random.Random(9)
    for _ in range(20):
        c = rand_closed(rng, rng.randint(1, 2), rng.randint(2, 6))
        back = switch(c, c.length)
        assert len(back) == len(c)
        for u, v in zip(back.curves, c.curves):
            assert canon_sign(u) == canon_sign(v)


def test_switch_twisted_diagram():
    mu = twist_matrix((1, 0), 1)
    d = Diagram(TRI, mu)
    out = switch(d)
    assert isinstance(out, Diagram)
    assert out.switch_matrix == mu
    assert out.circuit.curves == ((-1, -1), (1, 0), (-1, 1))
    # the rotated circuit closes through mu even though its raw closing
    # pairing is not a unit
    assert pairing(out.circuit.curves[-1], out.circuit.curves[0]) == 2
    assert validate(out).ok


def test_switch_twisted_backward_uses_inverse():
    mu = twist_matrix((1, 0), 1)
    d = Diagram(TRI, mu)
    back = switch(switch(d, 1), -1)
    assert back.circuit.curves == TRI.curves


def test_switch_twisted_full_cycle_applies_mu_once():
    mu = twist_matrix((1, 0), 1)
    d = Diagram(TRI, mu)
    out = switch(d, len(TRI))
    expect = normalize([matvec(mu, v) for v in TRI], True, mu)
    for u, v in zip(out.circuit.curves, expect.curves):
        assert canon_sign(u) == canon_sign(v)


def test_switch_requires_closed():
    with pytest.raises(ValueError):
        switch(normalize([(1, 0), (0, 1)], False))


def test_rotate_to_front():
    r = rotate_to_front(TRI, 1)
    assert r.curves[0] == (-1, 1)
    assert r.closed and len(r) == 3
    assert rotate_to_front(TRI, 0).curves == TRI.curves


def test_double_of_two_curve_circuit_is_itself():
    assert double(AB).curves == AB.curves
    assert double(AB).closed


def test_double_of_triangle():
    d = double(TRI)
    assert d.curves == ((1, 0), (-1, 1), (0, -1), (1, -1))
    assert d.closed and len(d) == 2 * 3 - 2


def test_double_closes_open_chains():
    rng = random.Random(21)
    from support import rand_chain

    for g in (1, 2, 3):
        ch = rand_chain(rng, g, 5)
        d = double(ch)
        assert d.closed and len(d) == 2 * 5 - 2
        rep = validate(Diagram(d, None))
        assert rep.ok, rep.failures


def test_generate_deterministic():
    c1, f1 = generate(42, 10)
    c2, f2 = generate(42, 10)
    assert c1.curves == c2.curves
    assert f1 == f2
    c3, _ = generate(43, 10)
    assert c3.curves != c1.curves


def test_generate_zero_steps():
    c, form = generate(0, 0)
    assert c.curves == ((1, 0), (0, 1))
    assert (form.l, form.m, form.n) == (0, 0, 0)
    assert form.closure == "Unclosed"


def test_generate_trace_replays():
    from sdcalc.subst import apply_blowup, apply_stabilization

    circ, form, moves, states = generate_trace(17, 12)
    assert len(moves) == 12 and len(states) == 13
    cur = states[0]
    for (kind, pos, param), nxt in zip(moves, states[1:]):
        cur = apply_blowup(cur, pos, param) if kind == "blowup" else apply_stabilization(cur, pos, param)
        assert cur.curves == nxt.curves
    assert cur.curves == circ.curves


def test_generate_counts_match_moves():
    _, form, moves, _ = generate_trace(99, 20)
    l = sum(1 for k, _, p in moves if k == "stab" and p % 2 == 0)
    m = sum(1 for k, _, p in moves if (k == "blowup" and p == -1) or (k == "stab" and p % 2 == 1))
    n = sum(1 for k, _, p in moves if (k == "blowup" and p == 1) or (k == "stab" and p % 2 == 1))
    assert (form.l, form.m, form.n) == (l, m, n)


def test_generate_lengths():
    circ, _, moves, _ = generate_trace(3, 8)
    # each blow-up adds one curve, each stabilization two
    expect = 2 + sum(1 if k == "blowup" else 2 for k, _, _ in moves)
    assert len(circ) == expect
