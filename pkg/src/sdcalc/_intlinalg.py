"""Integer linear algebra helpers: column reduction with tracked
unimodular transforms, integer linear solving, lattice quotients, and
fraction-free symmetric congruence.

Everything is exact over Z.  These are internal tools; the public API
lives in the topical modules.
"""

from __future__ import annotations


def colreduce(rows):
    """Column-echelon reduction over Z.

    Returns (H, U, Uinv) with A*U = H, U unimodular, H in column
    echelon form with positive leading entries.  Rows of Uinv are the
    coordinates of the standard basis over U's columns.
    """
    m = len(rows)
    n = len(rows[0])
    H = [list(r) for r in rows]
    U = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    Ui = [[1 if i == j else 0 for j in range(n)] for i in range(n)]

    def colop_add(src, dst, c):
        # col dst += c * col src; inverse tracked on Ui rows
        for t in range(m):
            H[t][dst] += c * H[t][src]
        for t in range(n):
            U[t][dst] += c * U[t][src]
        for t in range(n):
            Ui[src][t] -= c * Ui[dst][t]

    def colop_swap(i, j):
        for t in range(m):
            H[t][i], H[t][j] = H[t][j], H[t][i]
        for t in range(n):
            U[t][i], U[t][j] = U[t][j], U[t][i]
        Ui[i], Ui[j] = Ui[j], Ui[i]

    def colop_neg(i):
        for t in range(m):
            H[t][i] = -H[t][i]
        for t in range(n):
            U[t][i] = -U[t][i]
        for t in range(n):
            Ui[i][t] = -Ui[i][t]

    row = 0
    col = 0
    while row < m and col < n:
        while True:
            nz = [j for j in range(col, n) if H[row][j] != 0]
            if not nz:
                break
            jmin = min(nz, key=lambda j: abs(H[row][j]))
            if jmin != col:
                colop_swap(col, jmin)
            if all(H[row][j] % H[row][col] == 0 for j in nz):
                for j in range(col, n):
                    if j != col and H[row][j] != 0:
                        colop_add(col, j, -(H[row][j] // H[row][col]))
                break
            for j in range(col, n):
                if j != col and H[row][j] != 0:
                    colop_add(col, j, -(H[row][j] // H[row][col]))
        if H[row][col] != 0:
            if H[row][col] < 0:
                colop_neg(col)
            col += 1
        row += 1
    return H, U, Ui


def solve_int(rows, b):
    """One integer solution of A x = b plus a kernel basis, or (None, None).

    Works by forward substitution on the column echelon form: with
    A U = H echelon, solve H y = b, then x = U y; the trailing columns
    of U span the kernel lattice.
    """
    m = len(rows)
    n = len(rows[0])
    H, U, _ = colreduce(rows)
    y = [0] * n
    used = 0
    for row in range(m):
        val = b[row] - sum(H[row][j] * y[j] for j in range(used))
        if used < n and H[row][used] != 0:
            if val % H[row][used] != 0:
                return None, None
            y[used] = val // H[row][used]
            used += 1
        elif val != 0:
            return None, None
    x = tuple(sum(U[i][j] * y[j] for j in range(n)) for i in range(n))
    kernel = [tuple(U[i][j] for i in range(n)) for j in range(used, n)]
    return x, kernel


def pairing_functional(x):
    """Row vector of <x, .> so that pairing(x, y) = row . y."""
    r = []
    for i in range(0, len(x), 2):
        r.extend([-x[i + 1], x[i]])
    return r


def quotient_basis(a):
    """Basis of the lattice a^perp / <a> for primitive a, with coordinates.

    Returns (qbasis, coords): qbasis is a list of len(a)-2 classes whose
    images form a basis of the quotient, and coords maps any x with
    <a,x> = 0 to its coefficient vector over that basis (discarding the
    a-component).  Deterministic: built from the echelon kernel of the
    pairing functional, then a unimodular completion putting a first.
    """
    n = len(a)
    H, U, Ui = colreduce([pairing_functional(a)])
    if H[0][0] != 1:
        # <a,.> is onto Z exactly when a is primitive
        raise ValueError("quotient base class must be primitive, got %r" % (a,))
    # write a in U-coordinates; it lies in the kernel part (columns 1..n-1)
    w = [sum(Ui[i][j] * a[j] for j in range(n)) for i in range(n)]
    assert w[0] == 0, "base class not in its own perp"
    wk = w[1:]
    m = n - 1

    # row-reduce wk to e1, tracking P (ops) and Pi = P^{-1}
    col = list(wk)
    P = [[1 if i == j else 0 for j in range(m)] for i in range(m)]
    Pi = [[1 if i == j else 0 for j in range(m)] for i in range(m)]

    def rowop_add(src, dst, c):
        col[dst] += c * col[src]
        for t in range(m):
            P[dst][t] += c * P[src][t]
        for t in range(m):
            Pi[t][src] -= c * Pi[t][dst]

    def rowop_swap(i, j):
        col[i], col[j] = col[j], col[i]
        P[i], P[j] = P[j], P[i]
        for t in range(m):
            Pi[t][i], Pi[t][j] = Pi[t][j], Pi[t][i]

    def rowop_neg(i):
        col[i] = -col[i]
        for t in range(m):
            P[i][t] = -P[i][t]
        for t in range(m):
            Pi[t][i] = -Pi[t][i]

    while True:
        nz = [i for i in range(m) if col[i] != 0]
        if nz == [0]:
            break
        imin = min(nz, key=lambda i: abs(col[i]))
        if imin != 0:
            rowop_swap(0, imin)
        changed = False
        for i in range(1, m):
            if col[i] != 0:
                rowop_add(0, i, -(col[i] // col[0]))
                changed = True
        if not changed and all(col[i] == 0 for i in range(1, m)):
            break
    if col[0] < 0:
        rowop_neg(0)
    assert col[0] == 1 and all(c == 0 for c in col[1:]), "completion failed"

    # kernel lattice basis K = U[:, 1:]; quotient basis = columns 1.. of K Pi
    # (column 0 of K Pi is a itself)
    K = [[U[i][1 + j] for j in range(m)] for i in range(n)]
    KP = [[sum(K[i][t] * Pi[t][j] for t in range(m)) for j in range(m)] for i in range(n)]
    first = tuple(KP[i][0] for i in range(n))
    assert first == tuple(a), "completion lost the base class"
    qbasis = [tuple(KP[i][j] for i in range(n)) for j in range(1, m)]

    def coords(x):
        if len(x) != n:
            raise ValueError("genus mismatch")
        w = [sum(Ui[i][j] * x[j] for j in range(n)) for i in range(n)]
        if w[0] != 0:
            raise ValueError("class %r does not pair to zero with %r" % (x, a))
        wk = w[1:]
        cc = [sum(P[i][t] * wk[t] for t in range(m)) for i in range(m)]
        return tuple(cc[1:])

    return qbasis, coords


def symmetric_invariants(entries):
    """(rank, signature) of an integer symmetric matrix.

    Fraction-free two-sided elimination: each step performs the exact
    Bareiss update (p*B[i][j] - B[i][k]*B[k][j]) / p_prev; zero diagonals
    are resolved by symmetric permutation, or by a row+column addition
    when the whole remaining diagonal vanishes (a hyperbolic block,
    which contributes one positive and one negative pivot).  The true
    k-th pivot has the sign of d_k * d_{k-1}.
    """
    n = len(entries)
    B = [list(row) for row in entries]
    D = 1
    rank = 0
    sig = 0
    act = 0
    while act < n:
        piv = next((j for j in range(act, n) if B[j][j] != 0), None)
        if piv is None:
            off = next(
                ((i, j) for i in range(act, n) for j in range(i + 1, n) if B[i][j] != 0),
                None,
            )
            if off is None:
                break  # remaining block is zero
            i, j = off
            for t in range(act, n):
                B[i][t] += B[j][t]
            for t in range(act, n):
                B[t][i] += B[t][j]
            piv = i
        if piv != act:
            B[act], B[piv] = B[piv], B[act]
            for t in range(n):
                B[t][act], B[t][piv] = B[t][piv], B[t][act]
        p = B[act][act]
        rank += 1
        sig += 1 if (p > 0) == (D > 0) else -1
        Ba = B[act]
        for i in range(act + 1, n):
            Bi = B[i]
            bia = Bi[act]
            for j in range(act + 1, n):
                q, r = divmod(p * Bi[j] - bia * Ba[j], D)
                assert r == 0, "inexact division in fraction-free congruence"
                Bi[j] = q
        D = p
        act += 1
    return rank, sig
