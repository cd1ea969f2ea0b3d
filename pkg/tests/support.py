"""Random circuit builders shared across the test modules.

Curves meeting the next curve once are produced by solving the pairing
equation over the integers, so chains and closed circuits of any genus
can be sampled without rejection storms.
"""

from math import gcd

from sdcalc._intlinalg import pairing_functional, solve_int
from sdcalc.circuit import Circuit, normalize
from sdcalc.homology import add, pairing, scale


def rand_primitive(rng, genus, lim=4):
    while True:
        v = tuple(rng.randint(-lim, lim) for _ in range(2 * genus))
        if any(v) and gcd(*v) == 1:
            return v


def rand_next(rng, x, lim=3):
    """A random y with pairing(x, y) == +1 (such y is always primitive)."""
    y, kernel = solve_int([pairing_functional(x)], [1])
    assert y is not None, "pairing functional of a primitive class is onto"
    for k in kernel:
        y = add(y, scale(rng.randint(-lim, lim), k))
    return y


def rand_chain(rng, genus, length, lim=3):
    curves = [rand_primitive(rng, genus, lim)]
    while len(curves) < length:
        curves.append(rand_next(rng, curves[-1], lim))
    return normalize(curves, False)


def rand_closed(rng, genus, length, lim=3) -> Circuit:
    """A random closed circuit; the last curve solves both closure pairings."""
    assert length >= 2
    for _ in range(1000):
        chain = rand_chain(rng, genus, length - 1, lim)
        eps = rng.choice((1, -1))
        rows = [pairing_functional(chain[-1]), pairing_functional(chain[0])]
        last, kernel = solve_int(rows, [1, eps])
        if last is None:
            continue
        for k in kernel:
            last = add(last, scale(rng.randint(-lim, lim), k))
        if pairing(chain[-1], last) != 1 or abs(pairing(last, chain[0])) != 1:
            continue
        return normalize(list(chain.curves) + [last], True)
    raise AssertionError("could not close a circuit (genus %d, length %d)" % (genus, length))
