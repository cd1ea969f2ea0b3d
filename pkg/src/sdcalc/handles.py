"""Handle data for the 4-manifold a circuit presents over the disk.

The fiber framing of a curve, pairwise linking numbers of the fold
handles, the symmetric linking matrix with its rank/signature/parity,
Euler characteristic bookkeeping, Kirby-diagram data, and the
conversion to broken-fibration handle data (Lefschetz cycles plus a
round cycle).

Attachment angles are pure index order: curve i is attached before
curve j exactly when i < j.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from ._intlinalg import symmetric_invariants
from .circuit import _as_circuit
from .homology import pairing, twist_apply


@dataclass(frozen=True)
class LinkingMatrix:
    entries: tuple  # symmetric, size c x c

    @property
    def size(self) -> int:
        return len(self.entries)


@dataclass(frozen=True)
class FormInvariants:
    rank: int
    signature: int
    parity: str  # "Even" | "Odd"


@dataclass(frozen=True)
class KirbyData:
    genus: int
    one_handles: tuple  # 2g dotted-circle labels
    fiber_framing: int  # always 0
    fold_handles: tuple  # (class, framing, 1-based position)
    last_handle: Optional[int]  # section self-intersection, meridian handle
    linking: LinkingMatrix


@dataclass(frozen=True)
class BlfData:
    lefschetz_cycles: tuple  # (class, framing -1)
    round_cycle: tuple  # (class, framing 0)


def fiber_framing(v) -> int:
    """fr(v) = sum of n_{ai} * n_{bi}; sign-invariant in v."""
    if all(t == 0 for t in v):
        raise ValueError("zero class has no framing")
    return sum(v[i] * v[i + 1] for i in range(0, len(v), 2))


def _bsym(x, y):
    # the symmetric companion of the pairing; same parity as <x,y>
    return sum(x[i] * y[i + 1] + y[i] * x[i + 1] for i in range(0, len(x), 2))


def linking(x, i, y, j) -> int:
    """Linking number of curve x at attachment slot i with y at slot j.

    Half the signed pairing plus half the symmetric form; the two halves
    always have equal parity, so the result is an integer.  Symmetric
    under swapping (x,i) with (y,j).
    """
    if i == j:
        raise ValueError("linking needs distinct attachment slots")
    sgn = 1 if i > j else -1
    num = sgn * pairing(x, y) + _bsym(x, y)
    assert num % 2 == 0, "parity mismatch in linking number"
    return num // 2


def linking_matrix(c) -> LinkingMatrix:
    """Symmetric matrix with framings on the diagonal, linking numbers off it."""
    circ = _as_circuit(c)
    cs = circ.curves
    n = len(cs)
    rows = []
    for i in range(n):
        row = []
        for j in range(n):
            if i == j:
                row.append(fiber_framing(cs[i]))
            else:
                row.append(linking(cs[i], i + 1, cs[j], j + 1))
        rows.append(tuple(row))
    return LinkingMatrix(tuple(rows))


def form_invariants(m) -> FormInvariants:
    """Rank, signature and parity of a symmetric integer matrix.

    Exact congruence diagonalization (fraction-free); parity is Even iff
    every diagonal entry of the input is even.
    """
    entries = m.entries if isinstance(m, LinkingMatrix) else tuple(tuple(r) for r in m)
    rank, sig = symmetric_invariants(entries)
    parity = "Even" if all(entries[i][i] % 2 == 0 for i in range(len(entries))) else "Odd"
    return FormInvariants(rank=rank, signature=sig, parity=parity)


def euler_characteristics(c, closed=None):
    """(chi of the disk piece, chi of the closed total space or None).

    chi(Z) = 2 - 2g + c always; chi(X) = 6 - 4g + c when the circuit is
    closed (so 2 + c in genus 1), else None.
    """
    circ = _as_circuit(c)
    if closed is None:
        closed = circ.closed
    g = circ.genus
    n = circ.length
    chi_z = 2 - 2 * g + n
    chi_x = 6 - 4 * g + n if closed else None
    return chi_z, chi_x


def emit_kirby(c, section_k=None) -> KirbyData:
    """Handle set: 2g dotted circles, a 0-framed fiber handle, one
    fold handle per curve framed by its fiber framing, and optionally a
    k-framed meridian of the fiber handle (closed circuits only)."""
    circ = _as_circuit(c)
    if section_k is not None and not circ.closed:
        raise ValueError("meridian handle only applies to a closed circuit")
    g = circ.genus
    labels = []
    for i in range(1, g + 1):
        labels.extend(["a%d" % i, "b%d" % i])
    folds = tuple(
        (v, fiber_framing(v), i) for i, v in enumerate(circ.curves, start=1)
    )
    return KirbyData(
        genus=g,
        one_handles=tuple(labels),
        fiber_framing=0,
        fold_handles=folds,
        last_handle=section_k,
        linking=linking_matrix(circ),
    )


def to_blf(c) -> BlfData:
    """Broken-fibration handle data of a closed circuit.

    The i-th Lefschetz cycle is the image of the next curve under the
    twist about the current one (the closing step uses the eps-signed
    first curve), each framed -1 against the fiber; the round cycle is
    the first curve with framing 0.  Homologically the first Lefschetz
    cycle slides to the second curve: lambda_1 - rho = g_2.
    """
    circ = _as_circuit(c)
    if not circ.closed:
        raise ValueError("broken-fibration data needs a closed circuit")
    cs = circ.curves
    n = len(cs)
    e = circ.eps
    cycles = []
    for i in range(n):
        nxt = cs[i + 1] if i + 1 < n else tuple(e * t for t in cs[0])
        cycles.append((twist_apply(cs[i], 1, nxt), -1))
    return BlfData(lefschetz_cycles=tuple(cycles), round_cycle=(cs[0], 0))
