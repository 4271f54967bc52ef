"""Sequential products on effect intervals.

The standard product is a o b = Q_sqrt(a)(b), i.e. sqrt(a) b sqrt(a) on
matrices.  On complex Hermitian algebras (and their direct sums) there is
in addition a one-parameter family of twisted products

    a o_t b = sqrt(a) a^{it} b a^{-it} sqrt(a)

with a^{it} taken on the support of a and the identity on its kernel.
Twisted products satisfy the same finite-measurement axioms as the
standard one but differ from it for t != 0; the auditor uses them as the
non-standard foil for the uniqueness demonstrations.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .algebra import (
    KIND_COMPLEX,
    SUPPORT_TOL,
    AlgebraDescriptor,
    Element,
    LinearMap,
    assemble_map,
    check_same_algebra,
    min_eigenvalue,
    order_unit_norm,
    quadratic_rep,
)
from .errors import (
    CapabilityError,
    ConfigError,
    DescriptorMismatchError,
    PreconditionError,
)
from .spectral import pseudo_inverse, sqrt_pos

#: effects with min eigenvalue below this are rejected where an inverse is needed
INVERTIBILITY_TOL = 1e-6


@dataclass(frozen=True)
class SequentialProduct:
    """Product descriptor: standard, or twisted with parameter t."""

    algebra: AlgebraDescriptor
    twist: float | None = None  # None = standard

    def __post_init__(self):
        if self.twist is not None and not self.algebra.is_complex_kind():
            raise CapabilityError(
                f"twisted products need a complex Hermitian algebra, not {self.algebra}")

    @classmethod
    def standard(cls, alg: AlgebraDescriptor) -> "SequentialProduct":
        return cls(alg, None)

    @classmethod
    def twisted(cls, alg: AlgebraDescriptor, t: float) -> "SequentialProduct":
        return cls(alg, float(t))

    @property
    def is_standard(self) -> bool:
        return self.twist is None

    def descriptor(self) -> str:
        return "standard" if self.twist is None else f"twisted:{self.twist}"


def parse_product(text: str, alg: AlgebraDescriptor) -> SequentialProduct:
    """Parse "standard" or "twisted:<t>"."""
    t = text.strip()
    if t == "standard":
        return SequentialProduct.standard(alg)
    if t.startswith("twisted:"):
        try:
            val = float(t.split(":", 1)[1])
        except ValueError:
            raise ConfigError(f"bad product descriptor {text!r}") from None
        return SequentialProduct.twisted(alg, val)
    raise ConfigError(f"bad product descriptor {text!r}")


def _twist_factor(a: Element, t: float) -> np.ndarray:
    """sqrt(a) a^{it} as one complex matrix.

    The phase is taken on the support of a and the square root annihilates
    the kernel (spectrum <= support threshold), mirroring sqrt_pos.
    """
    w, vecs = np.linalg.eigh(a.data)
    on_support = w > SUPPORT_TOL
    coef = np.zeros_like(w, dtype=complex)
    coef[on_support] = np.sqrt(w[on_support]) * np.exp(1j * t * np.log(w[on_support]))
    return (vecs * coef) @ vecs.conj().T


def _seq_blocks(p: SequentialProduct, a: Element, b: Element) -> Element:
    alg = p.algebra
    if alg.kind == KIND_COMPLEX:
        m = _twist_factor(a, p.twist)
        return Element(alg, m @ b.data @ m.conj().T)
    sub = [_seq_blocks(SequentialProduct.twisted(s, p.twist), x, y)
           for s, x, y in zip(alg.summands, a.data, b.data)]
    return Element(alg, tuple(sub))


def seq_product(p: SequentialProduct, a: Element, b: Element) -> Element:
    """a o b.  The first argument must be positive; b may be any element."""
    check_same_algebra(a, b)
    if a.algebra != p.algebra:
        raise DescriptorMismatchError(
            f"product on {p.algebra} applied to elements of {a.algebra}")
    if p.is_standard:
        return quadratic_rep(sqrt_pos(a), b)
    return _seq_blocks(p, a, b)


def multiplication_operator(p: SequentialProduct, a: Element) -> LinearMap:
    """L_a: b -> a o b as a linear map (the square root is computed once)."""
    alg = p.algebra
    if p.is_standard:
        root = sqrt_pos(a)
        return assemble_map(alg, lambda b: quadratic_rep(root, b), "L_a")
    return assemble_map(alg, lambda b: _seq_blocks(p, a, b), "L_a")


def commutes(p: SequentialProduct, a: Element, b: Element, tol: float = 1e-8) -> bool:
    """True iff ||a o b - b o a|| <= tol."""
    return order_unit_norm(seq_product(p, a, b) - seq_product(p, b, a)) <= tol


def divide(p: SequentialProduct, q: Element, a: Element) -> Element:
    """The unique c below ceiling(q) with q o c = a, for a <= q.

    Uses the pseudo-inverse: c = q^{-1} o a, which is exact on the support
    of q and annihilates its kernel.
    """
    check_same_algebra(q, a)
    gap = min_eigenvalue(q - a)
    if gap < -SUPPORT_TOL:
        raise PreconditionError(
            f"divide needs a <= q; offending eigenvalue of q - a is {gap:.3e}")
    return seq_product(p, pseudo_inverse(q), a)


def homogeneity_iso(a: Element, b: Element) -> LinearMap:
    """Order isomorphism Phi = L_b L_{a^-1} mapping a to b (standard product).

    Both arguments must be invertible; the explicit inverse is
    L_a L_{b^-1}.
    """
    check_same_algebra(a, b)
    for name, x in (("a", a), ("b", b)):
        if min_eigenvalue(x) < INVERTIBILITY_TOL:
            raise PreconditionError(
                f"homogeneity_iso needs invertible inputs; {name} has min eigenvalue "
                f"{min_eigenvalue(x):.3e}")
    std = SequentialProduct.standard(a.algebra)
    l_b = multiplication_operator(std, b)
    l_ainv = multiplication_operator(std, pseudo_inverse(a))
    out = l_b.compose(l_ainv)
    return LinearMap(out.algebra, out.matrix, "Phi")


def _unitary_phase(q: Element, t: float) -> np.ndarray:
    """q^{it} as a complex matrix (identity on the kernel of q)."""
    w, vecs = np.linalg.eigh(q.data)
    phase = np.ones_like(w, dtype=complex)
    on_support = w > SUPPORT_TOL
    phase[on_support] = np.exp(1j * t * np.log(w[on_support]))
    return (vecs * phase) @ vecs.conj().T


def imaginary_power_conjugation(q: Element, t: float) -> LinearMap:
    """The conjugation b -> q^{it} b q^{-it} on a complex algebra."""
    alg = q.algebra
    if not alg.is_complex_kind():
        raise CapabilityError(f"imaginary powers need a complex algebra, not {alg}")

    def act(x: Element) -> Element:
        return _conjugate(q, x, t)

    def _conjugate(base: Element, x: Element, tt: float) -> Element:
        sub = base.algebra
        if sub.kind == KIND_COMPLEX:
            u = _unitary_phase(base, tt)
            return Element(sub, u @ x.data @ u.conj().T)
        return Element(sub, tuple(_conjugate(bb, xb, tt)
                                  for bb, xb in zip(base.data, x.data)))

    return assemble_map(alg, act, f"Ad(q^{{i{t}}})")


def theta_between(p: SequentialProduct, p2: SequentialProduct, q: Element) -> LinearMap:
    """Theta_q = (L_q)^-1 L'_q relating two products at an invertible q.

    For p standard and p2 twisted(t) on a complex algebra this is the
    conjugation b -> q^{it} b q^{-it}.
    """
    if p.algebra != p2.algebra or q.algebra != p.algebra:
        raise PreconditionError("theta_between needs both products and q on one algebra")
    if min_eigenvalue(q) <= SUPPORT_TOL:
        raise PreconditionError("theta_between needs an invertible q")
    l_q = multiplication_operator(p, q)
    l2_q = multiplication_operator(p2, q)
    out = l_q.invert().compose(l2_q)
    return LinearMap(out.algebra, out.matrix, "Theta_q")
