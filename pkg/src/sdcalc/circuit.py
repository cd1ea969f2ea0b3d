"""Circuits of curves on a surface, as ordered primitive homology classes.

A circuit is a sequence (g_1, ..., g_c) of primitive classes in which
adjacent classes pair to +1; it is *closed* when additionally
|<g_c, g_1>| = 1.  The closing sign eps = <g_c, g_1> is kept explicit
and never normalized away.  A diagram is a circuit plus an optional
"switch" matrix carried at the homology level; absent means untwisted.
A twisted diagram closes through the switch matrix instead, so its
circuit may have |<mu g_c, g_1>| = 1 while the plain closing pairing
is not a unit; eps is only meaningful for untwisted circuits.

Curves are unoriented: every operation here treats a class and its
negative as the same curve, and `normalize` only adjusts signs.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Optional

from .homology import (
    genus_of,
    is_primitive,
    matvec,
    pairing,
    scale,
    sp_inv,
)


@dataclass(frozen=True)
class Circuit:
    curves: tuple
    closed: bool

    @property
    def genus(self) -> int:
        return genus_of(self.curves[0])

    @property
    def length(self) -> int:
        return len(self.curves)

    @property
    def eps(self) -> int:
        """Closing sign <g_c, g_1> of a closed circuit."""
        if not self.closed:
            raise ValueError("open circuit has no closing sign")
        return pairing(self.curves[-1], self.curves[0])

    def __iter__(self):
        return iter(self.curves)

    def __len__(self):
        return len(self.curves)

    def __getitem__(self, i):
        return self.curves[i]


@dataclass(frozen=True)
class Diagram:
    """A circuit with an optional switch matrix (None = untwisted)."""

    circuit: Circuit
    switch_matrix: Optional[tuple] = None


@dataclass(frozen=True)
class ValidationReport:
    ok: bool
    exactness: str  # "Exact" for genus 1, "HomologicalOnly" above
    failures: tuple = field(default_factory=tuple)  # (1-based index, reason)


def _as_circuit(obj) -> Circuit:
    return obj.circuit if isinstance(obj, Diagram) else obj


def normalize(raw, closed: bool, switch_matrix=None) -> Circuit:
    """Fix the orientation convention on a raw class list.

    Keeps the first class's sign and flips each successor whose pairing
    with its predecessor is -1.  The underlying unoriented sequence is
    unchanged.  Raises ValueError if any adjacent pairing is not +-1,
    any entry is non-primitive, genera disagree, or a closed circuit's
    final pairing is not +-1.  A twisted diagram closes through its
    switch matrix: pass it so the closing check reads <mu g_c, g_1>.
    """
    raw = [tuple(v) for v in raw]
    if not raw:
        raise ValueError("empty circuit")
    if closed and len(raw) < 2:
        raise ValueError("closed circuit needs at least 2 curves")
    g = genus_of(raw[0])
    for i, v in enumerate(raw):
        if genus_of(v) != g:
            raise ValueError("curve %d: genus mismatch" % (i + 1,))
        if not is_primitive(v):
            raise ValueError("curve %d: not primitive" % (i + 1,))
    out = [raw[0]]
    for i, v in enumerate(raw[1:], start=2):
        p = pairing(out[-1], v)
        if p == 1:
            out.append(v)
        elif p == -1:
            out.append(scale(-1, v))
        else:
            raise ValueError("curves %d,%d: adjacent pairing %d, need +-1" % (i - 1, i, p))
    if closed:
        last = out[-1] if switch_matrix is None else matvec(switch_matrix, out[-1])
        e = pairing(last, out[0])
        if abs(e) != 1:
            raise ValueError("closing pairing %d, need +-1 for a closed circuit" % e)
    return Circuit(tuple(out), closed)


def validate(d) -> ValidationReport:
    """Check circuit (and switch) invariants, reporting failures instead of raising.

    Genus 1 reports exactness "Exact": on the torus the homological data
    determines the curves.  Higher genus reports "HomologicalOnly" --
    every check is then a necessary condition, not a certificate.
    """
    circ = _as_circuit(d)
    mu = d.switch_matrix if isinstance(d, Diagram) else None
    failures = []
    curves = circ.curves
    c = len(curves)
    g = circ.genus
    if circ.closed and c < 2:
        failures.append((0, "closed circuit needs at least 2 curves"))
    for i, v in enumerate(curves, start=1):
        if len(v) != 2 * g:
            failures.append((i, "genus mismatch"))
        elif not is_primitive(v):
            failures.append((i, "not primitive"))
    if not any(reason == "genus mismatch" for _, reason in failures):
        for i in range(c - 1):
            p = pairing(curves[i], curves[i + 1])
            if p != 1:
                failures.append((i + 1, "adjacent pairing %d, need +1" % p))
        if circ.closed and c >= 2:
            last = curves[-1] if mu is None else matvec(mu, curves[-1])
            e = pairing(last, curves[0])
            if abs(e) != 1:
                failures.append((c, "closing pairing %d, need +-1" % e))
    exactness = "Exact" if g == 1 else "HomologicalOnly"
    return ValidationReport(ok=not failures, exactness=exactness, failures=tuple(failures))


def switch(d, k: int = 1):
    """Rotate the reference point of a closed diagram k times.

    One forward switch maps (g_1, ..., g_c) to (mu g_c, g_1, ..., g_{c-1})
    and renormalizes signs; negative k applies the inverse.  The switch
    matrix itself is unchanged.  Accepts a Circuit or a Diagram and
    returns the same kind.
    """
    circ = _as_circuit(d)
    mu = d.switch_matrix if isinstance(d, Diagram) else None
    if not circ.closed:
        raise ValueError("switch needs a closed circuit")
    cur = list(circ.curves)
    if k >= 0:
        for _ in range(k):
            last = cur[-1] if mu is None else matvec(mu, cur[-1])
            cur = [last] + cur[:-1]
            cur = list(normalize(cur, True, mu).curves)
    else:
        mu_inv = None if mu is None else sp_inv(mu)
        for _ in range(-k):
            first = cur[0] if mu_inv is None else matvec(mu_inv, cur[0])
            cur = cur[1:] + [first]
            cur = list(normalize(cur, True, mu).curves)
    out = normalize(cur, True, mu)
    if isinstance(d, Diagram):
        return Diagram(out, mu)
    return out


def rotate_to_front(circ: Circuit, j: int) -> Circuit:
    """Untwisted rotation putting 0-based entry j first, in one pass.

    Same unoriented circuit as switch(circ, (c - j) % c), but linear
    time, which the classifier relies on.
    """
    if not circ.closed:
        raise ValueError("rotation needs a closed circuit")
    cur = circ.curves
    return normalize(list(cur[j:]) + list(cur[:j]), True)


def double(c: Circuit) -> Circuit:
    """The closed circuit (g_1, ..., g_l, g_{l-1}, ..., g_2) of length 2l-2."""
    circ = _as_circuit(c)
    l = len(circ.curves)
    if l < 2:
        raise ValueError("double needs length >= 2")
    raw = list(circ.curves) + [circ.curves[i] for i in range(l - 2, 0, -1)]
    return normalize(raw, True)


def generate(seed: int, steps: int):
    """Seeded random closed genus-1 circuit with exactly known sum form.

    Starts from the standard dual pair and applies `steps` moves, each a
    blow-up insertion with exponent +-1 or a stabilization insertion
    with k in [-3, 3], at a random interior pair.  Interior positions
    keep the bookkeeping exact: each move changes the linking form by
    the corresponding standard block, so the returned SumForm counts
    are not just expected values but theorems about the output.

    Returns (circuit, SumForm) where the sum form has closure
    "Unclosed" (the closure summand is only chosen when classifying).
    """
    circ, form, _moves, _states = generate_trace(seed, steps)
    return circ, form


def generate_trace(seed: int, steps: int):
    """Like generate, but also return the per-move history.

    Returns (circuit, sum_form, moves, states) with moves a list of
    (kind, pos, param) and states the circuits before/after each move
    (len(states) = len(moves) + 1).
    """
    from .genus1 import SumForm
    from .subst import apply_blowup, apply_stabilization

    if steps < 0:
        raise ValueError("steps must be >= 0")
    rng = random.Random(seed)
    cur = Circuit(((1, 0), (0, 1)), closed=True)
    l = m = n = 0
    moves = []
    states = [cur]
    for _ in range(steps):
        c = cur.length
        pos = rng.randint(1, c - 1)
        if rng.random() < 0.5:
            e = rng.choice([1, -1])
            cur = apply_blowup(cur, pos, e)
            moves.append(("blowup", pos, e))
            if e == 1:
                n += 1
            else:
                m += 1
        else:
            k = rng.randint(-3, 3)
            cur = apply_stabilization(cur, pos, k)
            moves.append(("stab", pos, k))
            if k % 2 == 0:
                l += 1
            else:
                m += 1
                n += 1
        states.append(cur)
    return cur, SumForm(l=l, m=m, n=n, closure="Unclosed"), moves, states
