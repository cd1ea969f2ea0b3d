"""Complete classification of the closed 4-manifolds presented by
closed genus-1 circuits.

On the torus, adjacent curves of a circuit form a basis, so every curve
satisfies g_i = k_i g_{i-1} - g_{i-2} for a unique integer k_i.  These
duality coefficients drive everything: the sigma recursion decides
closedness, coefficients with |k| <= 1 locate contractible blow-up and
stabilization patterns, and repeated contraction reduces any closed
circuit to length 2.  The final fiber can be capped off in exactly two
ways (a spin and a non-spin closure), so the result is one or two
connected sums of standard pieces.
"""

from __future__ import annotations

from dataclasses import dataclass

from .circuit import Circuit, Diagram, _as_circuit, validate
from .homology import add, pairing, scale
from .subst import Detection, _blowup_summand, _stab_summand, contract

_CLOSURES = ("Spin0", "NonSpin1", "Unclosed")


@dataclass(frozen=True)
class SumForm:
    """Connected-sum bookkeeping: l copies of S2xS2, m of CP2, n of CP2bar,
    plus which closure summand (if any) has been chosen."""

    l: int = 0
    m: int = 0
    n: int = 0
    closure: str = "Unclosed"

    def __post_init__(self):
        if self.l < 0 or self.m < 0 or self.n < 0:
            raise ValueError("summand counts must be >= 0")
        if self.closure not in _CLOSURES:
            raise ValueError("closure must be one of %s" % (_CLOSURES,))

    def with_closure(self, closure: str) -> "SumForm":
        return SumForm(self.l, self.m, self.n, closure)

    def __add__(self, other: "SumForm") -> "SumForm":
        if self.closure != "Unclosed" and other.closure != "Unclosed":
            raise ValueError("cannot add two closed sum forms")
        closure = self.closure if other.closure == "Unclosed" else other.closure
        return SumForm(self.l + other.l, self.m + other.m, self.n + other.n, closure)


@dataclass(frozen=True)
class CanonicalForm:
    """Either t*(S2xS2) or m*CP2 # n*CP2bar, never a mixture."""

    s2xs2: int = 0
    cp2: int = 0
    cp2bar: int = 0

    def __post_init__(self):
        spin = self.s2xs2 > 0
        if spin and (self.cp2 or self.cp2bar):
            raise ValueError("canonical form mixes bundle and projective summands")
        if not spin and (self.cp2 < 1 or self.cp2bar < 1):
            raise ValueError("non-spin canonical form needs both CP2 counts >= 1")

    @property
    def signature(self) -> int:
        return self.cp2 - self.cp2bar

    def pretty(self) -> str:
        if self.s2xs2:
            return "%d*(S2xS2)" % self.s2xs2
        return "%d*CP2 # %d*CP2bar" % (self.cp2, self.cp2bar)


@dataclass(frozen=True)
class Classification:
    canonical_forms: frozenset  # one or two CanonicalForm values
    reduction_trace: tuple  # (step, Detection, SumForm delta)
    counts: SumForm  # accumulated (l, m, n), closure Unclosed


def duality_coefficients(c) -> list:
    """The unique k_i with g_i = k_i g_{i-1} - g_{i-2}, for i = 3..c.

    Needs a normalized genus-1 circuit of length >= 3.  Computable as
    k_i = <g_{i-2}, g_i> since adjacent curves are a basis.
    """
    circ = _as_circuit(c)
    if circ.genus != 1:
        raise ValueError("duality coefficients need genus 1")
    cs = circ.curves
    if len(cs) < 3:
        raise ValueError("duality coefficients need length >= 3")
    ks = []
    for i in range(2, len(cs)):
        k = pairing(cs[i - 2], cs[i])
        if cs[i] != add(scale(k, cs[i - 1]), scale(-1, cs[i - 2])):
            raise ValueError(
                "curve %d does not satisfy the duality relation; "
                "is the circuit normalized?" % (i + 1,)
            )
        ks.append(k)
    return ks


def _cyclic_coefficients(circ: Circuit) -> list:
    """Duality coefficients of every cyclic window of a closed circuit.

    Index j (0-based) covers the window (g_j, g_{j+1}, g_{j+2}) with the
    eps-signed continuation past the seam; the relation
    g_{j+2} = k_j g_{j+1} - g_j holds cyclically."""
    cs = circ.curves
    c = len(cs)
    e = circ.eps
    ext = list(cs) + [scale(e, cs[0]), scale(e, cs[1])]
    ks = []
    for j in range(c):
        k = pairing(ext[j], ext[j + 2])
        assert ext[j + 2] == add(scale(k, ext[j + 1]), scale(-1, ext[j]))
        ks.append(k)
    return ks


def sigma_sequence(ks) -> list:
    """sigma_1 = 0, sigma_2 = 1, sigma_i = k_i sigma_{i-1} - sigma_{i-2}.

    A genus-1 circuit with these coefficients is closed exactly when the
    final value is +-1 (it equals <g_1, g_c>).
    """
    sig = [0, 1]
    for k in ks:
        sig.append(k * sig[-1] - sig[-2])
    return sig


def normalize_sum(f: SumForm) -> CanonicalForm:
    """Canonical connected sum for a closed sum form.

    All-spin input stays a sum of S2xS2's; any projective summand (or
    the odd closure) makes the total non-spin, and then every S2xS2 and
    the closure summand convert to CP2 # CP2bar pairs.  The conversion
    relation is the classical non-spin one, not specific to fibrations.
    """
    if f.closure == "Unclosed":
        raise ValueError("cannot normalize an unclosed sum form")
    if f.m == 0 and f.n == 0:
        if f.closure == "Spin0":
            return CanonicalForm(s2xs2=f.l + 1)
        return CanonicalForm(cp2=f.l + 1, cp2bar=f.l + 1)
    return CanonicalForm(cp2=f.m + f.l + 1, cp2bar=f.n + f.l + 1)


def classify(d) -> Classification:
    """Reduce a closed genus-1 circuit to length 2 and name the manifold.

    Prefers blow-up contractions (some cyclic coefficient is +-1) and
    falls back to stabilizations (a zero coefficient); a closed circuit
    of length >= 3 always admits one of the two, so anything else raises
    RuntimeError rather than guessing.  Both closures of the final
    length-2 circuit are materialized and deduplicated, giving one or
    two canonical forms.
    """
    if isinstance(d, Diagram) and d.switch_matrix is not None:
        raise ValueError("classifier requires an untwisted diagram")
    circ = _as_circuit(d)
    if circ.genus != 1:
        raise ValueError("classifier requires genus 1")
    if not circ.closed:
        raise ValueError("classifier requires a closed circuit")
    report = validate(circ)
    if not report.ok:
        raise ValueError("invalid circuit: %s" % (report.failures[0],))

    cur = circ
    total = SumForm()
    trace = []
    step = 0
    while cur.length > 2:
        c = cur.length
        ks = _cyclic_coefficients(cur)
        j = next((t for t in range(c) if abs(ks[t]) == 1), None)
        if j is not None:
            det = Detection(
                kind="BlowUp",
                position=j + 1,
                exponent=-ks[j],
                summand=_blowup_summand(-ks[j]),
            )
        else:
            j = next((t for t in range(c) if ks[(t + 1) % c] == 0), None)
            if j is None:
                raise RuntimeError(
                    "closed genus-1 circuit of length %d with no coefficient in "
                    "{-1, 0, 1}; this contradicts the reducibility guarantee: %r"
                    % (c, cur.curves)
                )
            det = Detection(
                kind="Stabilization",
                position=j + 1,
                k=ks[j],
                summand=_stab_summand(ks[j]),
            )
        cur, delta = contract(cur, det)
        total = total + delta
        step += 1
        trace.append((step, det, delta))

    forms = frozenset(
        {
            normalize_sum(total.with_closure("Spin0")),
            normalize_sum(total.with_closure("NonSpin1")),
        }
    )
    return Classification(
        canonical_forms=forms, reduction_trace=tuple(trace), counts=total
    )
