"""Substitution patterns in circuits: blow-up, stabilization, Hayano surgery.

A blow-up inserts tau_y^e(x) between an adjacent pair (x, y); a
stabilization inserts (tau_y^k(x), y) after the pair; a Hayano
substitution replaces a single curve x by the triple (x, tau_x^k(d), x)
for a chosen dual d.  Detection scans every cyclic window for these
shapes, matching curves up to sign, and recovers exponents from the
oriented normal form of the window.

On a genus-1 surface a detected pattern is the geometric configuration;
for genus >= 2 a match is a homological candidate only and is flagged
as such.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .circuit import Diagram, _as_circuit, normalize, rotate_to_front
from .homology import add, canon_sign, pairing, scale, twist_apply


@dataclass(frozen=True)
class Detection:
    kind: str  # "BlowUp" | "Stabilization" | "HayanoPattern"
    position: int  # 1-based cyclic index of the pattern's first curve
    exponent: Optional[int] = None  # blow-up twist exponent, +-1
    k: Optional[int] = None  # stabilization twist power (0 for a Hayano match)
    dual: Optional[tuple] = None  # Hayano: middle curve, canonical sign
    summand: Optional[str] = None  # "CP2" | "CP2bar" | "S2xS2" | "CP2+CP2bar"
    homological_only: bool = False


# summand bookkeeping: a +1 blow-up inserts a -1-framed curve (CP2bar),
# a -1 blow-up a +1-framed one (CP2); stabilization parity picks the
# S2-bundle type
def _blowup_summand(e):
    return "CP2bar" if e == 1 else "CP2"


def _stab_summand(k):
    return "S2xS2" if k % 2 == 0 else "CP2+CP2bar"


def _unpack(d):
    circ = _as_circuit(d)
    mu = d.switch_matrix if isinstance(d, Diagram) else None
    return circ, mu


def _repack(d, circ):
    if isinstance(d, Diagram):
        return Diagram(circ, d.switch_matrix)
    return circ


def _cyclic(circ, j):
    """1-based cyclic entry with the eps sign on wrap-around."""
    c = circ.length
    if j <= c:
        return circ.curves[j - 1]
    return scale(circ.eps, circ.curves[j - c - 1])


def _check_pos(circ, mu, pos, seam_ok=False):
    c = circ.length
    if not circ.closed:
        raise ValueError("substitutions need a closed circuit")
    if not 1 <= pos <= c:
        raise ValueError("position %d out of range 1..%d" % (pos, c))
    if mu is not None and pos == c and not seam_ok:
        raise ValueError("seam substitution on a twisted diagram is not supported")


def apply_blowup(d, pos: int, e: int):
    """Insert the e-twist of curve pos about its successor between the two.

    Length grows by 1.  The inserted curve carries framing -e in the
    standard position, so e = +1 adds a CP2bar summand and e = -1 a CP2.
    """
    if e not in (1, -1):
        raise ValueError("blow-up exponent must be +1 or -1")
    circ, mu = _unpack(d)
    _check_pos(circ, mu, pos)
    x = circ.curves[pos - 1]
    y = _cyclic(circ, pos + 1)
    xi = twist_apply(y, e, x)
    raw = list(circ.curves[:pos]) + [xi] + list(circ.curves[pos:])
    return _repack(d, normalize(raw, True, mu))


def apply_stabilization(d, pos: int, k: int):
    """Insert (tau_y^k(x), y) after the adjacent pair (x, y) at pos.

    Length grows by 2; the new pair contributes a hyperbolic block to
    the linking form, so the summand is S2xS2 for even k and
    CP2 # CP2bar for odd k.
    """
    circ, mu = _unpack(d)
    _check_pos(circ, mu, pos)
    c = circ.length
    x = circ.curves[pos - 1]
    y = _cyclic(circ, pos + 1)
    xi = twist_apply(y, k, x)
    if pos < c:
        raw = list(circ.curves[: pos + 1]) + [xi, y] + list(circ.curves[pos + 1 :])
    else:
        # the pattern wraps the seam: (..., g_c | g_1, xi, g_1', g_2, ...)
        raw = [circ.curves[0], xi, circ.curves[0]] + list(circ.curves[1:])
    return _repack(d, normalize(raw, True, mu))


def hayano_surgery(d, pos: int, dual, k: int):
    """Replace curve pos by (g_pos, tau_{g_pos}^k(dual), g_pos).

    Models fiber-framed surgery on the dual curve for even k and the
    opposite framing for odd k.  The dual must pair to +-1 with the
    curve at pos.
    """
    circ, mu = _unpack(d)
    _check_pos(circ, mu, pos, seam_ok=True)
    x = circ.curves[pos - 1]
    dual = tuple(dual)
    if abs(pairing(x, dual)) != 1:
        raise ValueError("dual class %r does not pair to +-1 with curve %d" % (dual, pos))
    mid = twist_apply(x, k, dual)
    raw = list(circ.curves[:pos]) + [mid, x] + list(circ.curves[pos:])
    return _repack(d, normalize(raw, True, mu))


def _norm_window(win):
    """Orient a window of curves so consecutive pairings are +1."""
    out = [win[0]]
    for v in win[1:]:
        p = pairing(out[-1], v)
        assert abs(p) == 1, "window from a valid circuit must chain with +-1"
        out.append(v if p == 1 else scale(-1, v))
    return out


def detect(d):
    """All substitution patterns in a closed diagram, ascending position.

    Matching is sign-insensitive; exponents are read off oriented
    windows.  A blow-up window (x, y, z) has y = <x,z>(x + z) and
    exponent -<x,z>; a stabilization window (x, y, z, w) has w = -y and
    z + x a multiple of y, the multiple being k; a Hayano window has
    z = -x, reported with the minimal-|k| representative (k = 0, dual =
    the middle curve).  Overlapping patterns are all reported.  For a
    twisted diagram only seam-free windows are scanned.
    """
    circ, mu = _unpack(d)
    if not circ.closed:
        raise ValueError("detection needs a closed circuit")
    c = circ.length
    homological = circ.genus >= 2
    last3 = c if mu is None else c - 2  # twisted: window must not wrap
    last4 = c if mu is None else c - 3
    out = []
    for pos in range(1, c + 1):
        if c >= 3 and pos <= last3:
            x, y, z = _norm_window([_cyclic(circ, pos + t) for t in range(3)])
            s = add(x, z)
            if y == s or y == scale(-1, s):
                cc = pairing(x, z)
                assert abs(cc) == 1
                e = -cc
                out.append(
                    Detection(
                        kind="BlowUp",
                        position=pos,
                        exponent=e,
                        summand=_blowup_summand(e),
                        homological_only=homological,
                    )
                )
            if z == scale(-1, x):
                out.append(
                    Detection(
                        kind="HayanoPattern",
                        position=pos,
                        k=0,
                        dual=canon_sign(y),
                        homological_only=homological,
                    )
                )
        if c >= 4 and pos <= last4:
            x, y, z, w = _norm_window([_cyclic(circ, pos + t) for t in range(4)])
            if w == scale(-1, y):
                num = add(z, x)
                k = None
                for i in range(len(y)):
                    if y[i] != 0:
                        k = num[i] // y[i]
                        break
                if k is not None and num == scale(k, y):
                    out.append(
                        Detection(
                            kind="Stabilization",
                            position=pos,
                            k=k,
                            summand=_stab_summand(k),
                            homological_only=homological,
                        )
                    )
    return out


def _stale(det):
    return ValueError("stale detection: pattern %s no longer matches at position %d"
                      % (det.kind, det.position))


def contract(d, det: Detection):
    """Undo a detected substitution, returning (diagram, SumForm delta).

    Removes the middle curve of a blow-up window or the inserted pair of
    a stabilization window; the input is recovered up to switching and
    signs.  Patterns that wrap the seam are rotated to the front first,
    so the result may be a switched representative.  Hayano patterns
    describe a surgery rather than a connected sum and cannot be
    contracted to a sum-form delta.
    """
    from .genus1 import SumForm

    circ, mu = _unpack(d)
    c = circ.length
    pos = det.position
    if not circ.closed or not 1 <= pos <= c:
        raise _stale(det)
    if det.kind == "HayanoPattern":
        raise ValueError("a Hayano pattern is a surgery, not a connected sum; "
                         "no sum-form delta to contract")
    if det.kind == "BlowUp":
        if c < 3 or (mu is not None and pos + 2 > c):
            raise _stale(det)  # seam windows are never detected on twisted input
        x, y, z = _norm_window([_cyclic(circ, pos + t) for t in range(3)])
        s = add(x, z)
        if not (y == s or y == scale(-1, s)) or det.exponent != -pairing(x, z):
            raise _stale(det)
        if pos + 2 <= c:
            raw = [v for i, v in enumerate(circ.curves) if i != pos]  # drop middle
            new = normalize(raw, True, mu)
        else:
            rc = rotate_to_front(circ, pos - 1)
            new = normalize([v for i, v in enumerate(rc.curves) if i != 1], True)
        delta = SumForm(l=0, m=int(det.exponent == -1), n=int(det.exponent == 1),
                        closure="Unclosed")
        return _repack(d, new), delta
    if det.kind == "Stabilization":
        if c < 4 or (mu is not None and pos + 3 > c):
            raise _stale(det)
        x, y, z, w = _norm_window([_cyclic(circ, pos + t) for t in range(4)])
        if w != scale(-1, y) or add(z, x) != scale(det.k, y):
            raise _stale(det)
        if pos + 3 <= c:
            drop = {pos + 1, pos + 2}  # 0-based indices of (z, w)
            raw = [v for i, v in enumerate(circ.curves) if i not in drop]
            new = normalize(raw, True, mu)
        else:
            rc = rotate_to_front(circ, pos - 1)
            new = normalize([v for i, v in enumerate(rc.curves) if i not in (2, 3)], True)
        odd = det.k % 2 != 0
        delta = SumForm(l=int(not odd), m=int(odd), n=int(odd), closure="Unclosed")
        return _repack(d, new), delta
    raise ValueError("unknown detection kind %r" % (det.kind,))
