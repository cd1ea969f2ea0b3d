"""The boundary monodromy of a closed circuit, on homology.

The lift is the product of twists about the curves tau_{g_i}(g_{i+1}),
rightmost factor first, with the closing step using the eps-signed
first curve.  It fixes the first curve up to the sign (-1)^c eps, hence
descends to the rank-(2g-2) quotient of its perp lattice -- the
homology of the surgered surface.  A non-identity quotient action
obstructs trivial monodromy; the converse direction is not decided
here, so verdicts are worded as necessary conditions.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from ._intlinalg import quotient_basis
from .circuit import Circuit, Diagram, _as_circuit
from .homology import (
    canon_sign,
    add,
    ident,
    matvec,
    pairing,
    scale,
    word_matrix,
)


@dataclass(frozen=True)
class SurgeredAction:
    base_class: tuple
    quotient_rank: int  # 2g - 2
    matrix: tuple  # action on the quotient basis
    basis: tuple  # classes whose images form the quotient basis


@dataclass(frozen=True)
class Verdict:
    kind: str  # "HomologicallyTrivial" | "ObstructedOnHomology"
    witness: Optional[tuple] = None  # a basis class moved by the action

    @property
    def text(self) -> str:
        # necessary condition only -- never claim actual triviality
        if self.kind == "HomologicallyTrivial":
            return "not obstructed on homology"
        return "obstructed on homology: moves %r" % (self.witness,)


def _require_untwisted_closed(c) -> Circuit:
    if isinstance(c, Diagram) and c.switch_matrix is not None:
        raise ValueError("monodromy lift is only defined for untwisted diagrams")
    circ = _as_circuit(c)
    if not circ.closed:
        raise ValueError("monodromy lift needs a closed circuit")
    return circ


def mu_tilde_word(c):
    """Twist word of the lifted monodromy, rightmost factor first.

    The i-th axis is the class of tau_{g_i}(g_{i+1}), i.e.
    g_{i+1} + <g_i, g_{i+1}> g_i, taken cyclically with the eps-signed
    closing curve and sign-canonicalized (axes are unoriented).
    """
    circ = _require_untwisted_closed(c)
    cs = circ.curves
    n = len(cs)
    e = circ.eps
    word = []
    for i in range(n):
        nxt = cs[i + 1] if i + 1 < n else scale(e, cs[0])
        axis = add(nxt, scale(pairing(cs[i], nxt), cs[i]))
        word.append((canon_sign(axis), 1))
    return tuple(word)


def mu_tilde_matrix(c):
    """Matrix of the lifted monodromy; fixes g_1 up to (-1)^c eps."""
    circ = _require_untwisted_closed(c)
    return word_matrix(mu_tilde_word(circ), circ.genus)


def induced_action(a, m) -> SurgeredAction:
    """Action induced by a symplectic matrix on a^perp / <a>.

    Defined whenever m preserves the perp lattice of a and the line
    through a, e.g. for any matrix fixing a up to sign.  The basis is
    the deterministic echelon/completion basis, so matrices are
    reproducible across runs.
    """
    a = tuple(a)
    qb, coords = quotient_basis(a)
    cols = [coords(matvec(m, q)) for q in qb]
    r = len(qb)
    matrix = tuple(tuple(cols[j][i] for j in range(r)) for i in range(r))
    return SurgeredAction(
        base_class=a, quotient_rank=r, matrix=matrix, basis=tuple(qb)
    )


def surgered_action(c) -> SurgeredAction:
    """The lifted monodromy's action on the surgered surface's homology."""
    circ = _require_untwisted_closed(c)
    return induced_action(circ.curves[0], mu_tilde_matrix(circ))


def verdict(c) -> Verdict:
    """Necessary-condition check for trivial monodromy.

    HomologicallyTrivial when the induced quotient action is the
    identity (read: "not obstructed on homology"); otherwise the first
    moved basis class is returned as a witness.
    """
    act = surgered_action(c)
    idm = ident(act.quotient_rank)
    if act.matrix == idm:
        return Verdict(kind="HomologicallyTrivial")
    for j in range(act.quotient_rank):
        col = tuple(act.matrix[i][j] for i in range(act.quotient_rank))
        unit = tuple(1 if i == j else 0 for i in range(act.quotient_rank))
        if col != unit:
            return Verdict(kind="ObstructedOnHomology", witness=act.basis[j])
    raise AssertionError("non-identity matrix with no moved column")
