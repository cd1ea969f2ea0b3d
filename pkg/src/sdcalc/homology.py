"""Exact arithmetic on H_1 of a closed oriented genus-g surface.

A class is a tuple of 2g integers, the coefficients
(n_{a1}, n_{b1}, ..., n_{ag}, n_{bg}) with respect to the standard
symplectic basis, so genus is implicit in the length.  The pairing is
fixed by <a_i, b_i> = +1 and all other basis pairings zero.

Matrices are tuples of row tuples acting on column vectors.  Twist
words are sequences of (axis, exponent) pairs composed rightmost-first:
word[0] acts first.  Everything here is plain big-int arithmetic --
no floats, no overflow.
"""

from __future__ import annotations

from math import gcd

HClass = tuple  # tuple of 2g ints
SpMatrix = tuple  # tuple of 2g row tuples


def genus_of(x) -> int:
    """Genus carried by a coefficient vector (half its length)."""
    if len(x) == 0 or len(x) % 2:
        raise ValueError("coefficient vector must have positive even length, got %d" % len(x))
    return len(x) // 2


def pairing(x, y) -> int:
    """Symplectic pairing <x,y> = sum of (n_{ai}(x) n_{bi}(y) - n_{bi}(x) n_{ai}(y))."""
    if len(x) != len(y):
        raise ValueError("genus mismatch: %d vs %d" % (len(x), len(y)))
    genus_of(x)
    s = 0
    for i in range(0, len(x), 2):
        s += x[i] * y[i + 1] - x[i + 1] * y[i]
    return s


def is_primitive(x) -> bool:
    """True iff gcd of the entries is 1 (zero vector gives False)."""
    g = 0
    for v in x:
        g = gcd(g, v)
    return g == 1


def add(x, y):
    return tuple(a + b for a, b in zip(x, y))


def scale(k, x):
    return tuple(k * a for a in x)


def canon_sign(x):
    """Flip the sign so the first nonzero entry is positive.

    Twist axes are unoriented (tau_v = tau_{-v}), so this picks a
    deterministic representative.
    """
    for v in x:
        if v:
            return x if v > 0 else scale(-1, x)
    return x


def twist_apply(v, k, x):
    """Image of x under the k-th power of the twist about v: x + k<v,x>v."""
    c = k * pairing(v, x)
    if c == 0:
        return tuple(x)
    return tuple(a + c * b for a, b in zip(x, v))


def _require_axis(v):
    if not is_primitive(v):
        raise ValueError("twist axis must be primitive, got %r" % (v,))


def ident(n) -> SpMatrix:
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def jmat(g) -> SpMatrix:
    """Block-diagonal pairing matrix J with blocks [[0,1],[-1,0]]."""
    n = 2 * g
    rows = []
    for i in range(n):
        row = [0] * n
        if i % 2 == 0:
            row[i + 1] = 1
        else:
            row[i - 1] = -1
        rows.append(tuple(row))
    return tuple(rows)


def matvec(m, x):
    return tuple(sum(r[j] * x[j] for j in range(len(x))) for r in m)


def matmul(a, b):
    n = len(a)
    bt = tuple(zip(*b))
    return tuple(tuple(sum(ra[t] * cb[t] for t in range(n)) for cb in bt) for ra in a)


def transpose(m):
    return tuple(zip(*m))


def is_symplectic(m) -> bool:
    """Check M^T J M = J for the pairing matrix of the right genus."""
    j = jmat(len(m) // 2)
    return matmul(matmul(transpose(m), j), m) == j


def sp_inv(m):
    """Inverse of a symplectic integer matrix, via M^{-1} = -J M^T J."""
    g = len(m) // 2
    j = jmat(g)
    inv = matmul(matmul(j, transpose(m)), j)
    return tuple(tuple(-e for e in row) for row in inv)


def twist_matrix(v, k) -> SpMatrix:
    """Matrix of the k-th twist power about v: x -> x + k<v,x>v.

    Independent of the sign of v; twist_matrix(v, k) and
    twist_matrix(v, -k) are inverse.
    """
    _require_axis(v)
    n = len(v)
    cols = []
    for j in range(n):
        e = tuple(1 if t == j else 0 for t in range(n))
        cols.append(twist_apply(v, k, e))
    return tuple(zip(*cols))


def apply_word(word, x):
    """Evaluate a twist word on a class, rightmost (index 0) first."""
    cur = tuple(x)
    for axis, exp in word:
        if len(axis) != len(cur):
            raise ValueError("genus mismatch in word: axis %r on %r" % (axis, x))
        if exp == 0:
            raise ValueError("word exponents must be nonzero")
        _require_axis(axis)
        cur = twist_apply(axis, exp, cur)
    return cur


def word_matrix(word, genus) -> SpMatrix:
    """Matrix of a twist word (rightmost factor applied first)."""
    m = ident(2 * genus)
    for axis, exp in word:
        if exp == 0:
            raise ValueError("word exponents must be nonzero")
        _require_axis(axis)
        m = matmul(twist_matrix(axis, exp), m)
    return m


def delta_twist(a, b) -> SpMatrix:
    """(T_a T_b)^3 for a dual pair: -identity on span(a,b), identity on its complement."""
    if abs(pairing(a, b)) != 1:
        raise ValueError("delta twist needs |<a,b>| = 1, got %d" % pairing(a, b))
    ab = matmul(twist_matrix(a, 1), twist_matrix(b, 1))
    return matmul(ab, matmul(ab, ab))
