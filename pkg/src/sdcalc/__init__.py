"""sdcalc: surface-diagram calculus on first homology.

Circuits of dual curves on a closed oriented surface, the handle and
linking data of the 4-manifolds they present, substitution patterns
(blow-ups, stabilizations, Hayano surgeries), the complete genus-1
classifier, and the homological shadow of the boundary monodromy.

Quick start::

    >>> from sdcalc import circuit, genus1
    >>> d = circuit.normalize([(1, 0), (1, -1), (0, 1)], closed=True)
    >>> sorted(f.pretty() for f in genus1.classify(d).canonical_forms)
    ['1*CP2 # 2*CP2bar']

Everything is exact integer arithmetic; genus-1 answers are theorems,
higher-genus answers are necessary conditions and are flagged as such.
"""

from . import circuit, genus1, handles, homology, monodromy, subst
from .circuit import Circuit, Diagram, ValidationReport, double, generate, normalize, switch, validate
from .genus1 import Classification, SumForm, classify, duality_coefficients, normalize_sum, sigma_sequence
from .handles import (
    BlfData,
    FormInvariants,
    KirbyData,
    LinkingMatrix,
    emit_kirby,
    euler_characteristics,
    fiber_framing,
    form_invariants,
    linking,
    linking_matrix,
    to_blf,
)
from .homology import apply_word, delta_twist, is_primitive, pairing, twist_matrix
from .monodromy import SurgeredAction, Verdict, mu_tilde_matrix, mu_tilde_word, surgered_action, verdict
from .subst import Detection, apply_blowup, apply_stabilization, contract, detect, hayano_surgery

__version__ = "0.1.0"

__all__ = [
    "Circuit",
    "Diagram",
    "ValidationReport",
    "Classification",
    "SumForm",
    "BlfData",
    "FormInvariants",
    "KirbyData",
    "LinkingMatrix",
    "SurgeredAction",
    "Verdict",
    "Detection",
    "pairing",
    "is_primitive",
    "twist_matrix",
    "apply_word",
    "delta_twist",
    "normalize",
    "validate",
    "switch",
    "double",
    "generate",
    "fiber_framing",
    "linking",
    "linking_matrix",
    "form_invariants",
    "euler_characteristics",
    "emit_kirby",
    "to_blf",
    "apply_blowup",
    "apply_stabilization",
    "hayano_surgery",
    "detect",
    "contract",
    "duality_coefficients",
    "sigma_sequence",
    "classify",
    "normalize_sum",
    "mu_tilde_word",
    "mu_tilde_matrix",
    "surgered_action",
    "verdict",
    "circuit",
    "genus1",
    "handles",
    "homology",
    "monodromy",
    "subst",
]
