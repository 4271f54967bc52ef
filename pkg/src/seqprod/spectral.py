"""Spectral decomposition, functional calculus, floor/ceiling, pseudo-inverses.

Every self-adjoint element a decomposes as a = sum_i lambda_i p_i with the
lambda_i strictly decreasing and the p_i an orthogonal frame of sharp
effects summing to the identity (the kernel projection is kept, so the
functional calculus can evaluate f(0)).  Eigenvalues closer than the
clustering gap are merged into one idempotent, which keeps the projections
numerically exact when a degenerate eigenvalue is split by solver noise.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .algebra import (
    KIND_SPIN,
    MATRIX_KINDS,
    SUPPORT_TOL,
    AlgebraDescriptor,
    Element,
    identity,
    is_effect,
    is_positive,
    jordan_product,
    min_eigenvalue,
    order_unit_norm,
    trace,
    zero,
)
from .errors import DomainError, NumericalFailureError, PreconditionError

#: default eigenvalue clustering gap
DEFAULT_GAP = 1e-8
#: eigenvalues within this of 1 belong to the floor projection
FLOOR_TOL = 1e-9


@dataclass(frozen=True)
class SpectralDecomposition:
    """Distinct eigenvalues paired with their orthogonal sharp idempotents."""

    algebra: AlgebraDescriptor
    pairs: tuple[tuple[float, Element], ...]

    @property
    def eigenvalues(self) -> tuple[float, ...]:
        return tuple(lam for lam, _ in self.pairs)

    @property
    def idempotents(self) -> tuple[Element, ...]:
        return tuple(p for _, p in self.pairs)

    def rebuild(self, f) -> Element:
        """sum f(lambda_i) p_i, raising DomainError where f is undefined."""
        acc = zero(self.algebra)
        for lam, p in self.pairs:
            try:
                val = float(f(lam))
            except Exception as exc:
                raise DomainError(f"function undefined at eigenvalue {lam!r}: {exc}") from exc
            if not math.isfinite(val):
                raise DomainError(f"function not finite at eigenvalue {lam!r}")
            if val != 0.0:
                acc = acc + p * val
        return acc


def _cluster(values: np.ndarray, gap: float) -> list[np.ndarray]:
    """Indices of eigenvalues grouped by chaining gaps <= gap (ascending input)."""
    groups, start = [], 0
    for k in range(1, len(values) + 1):
        if k == len(values) or values[k] - values[k - 1] > gap:
            groups.append(np.arange(start, k))
            start = k
    return groups


def spectral_decompose(a: Element, gap: float = DEFAULT_GAP) -> SpectralDecomposition:
    """Full spectral frame of a, eigenvalues in strictly decreasing order."""
    if gap <= 0:
        raise PreconditionError("clustering gap must be positive")
    alg = a.algebra
    if alg.kind in MATRIX_KINDS:
        try:
            w, vecs = np.linalg.eigh(a.data)
        except np.linalg.LinAlgError as exc:
            raise NumericalFailureError(f"eigensolver failed on {alg}: {exc}") from exc
        pairs = []
        for idx in _cluster(w, gap):
            cols = vecs[:, idx]
            proj = Element(alg, cols @ cols.conj().T)
            pairs.append((float(np.mean(w[idx])), proj))
        pairs.reverse()
        return SpectralDecomposition(alg, tuple(pairs))
    if alg.kind == KIND_SPIN:
        v, t = a.data
        r = float(np.linalg.norm(v))
        if 2.0 * r <= gap:
            return SpectralDecomposition(alg, ((t, identity(alg)),))
        vhat = v / r
        plus = Element(alg, (0.5 * vhat, 0.5))
        minus = Element(alg, (-0.5 * vhat, 0.5))
        return SpectralDecomposition(alg, ((t + r, plus), (t - r, minus)))
    # direct sum: decompose blockwise, then merge eigenvalues across blocks
    per_block = [spectral_decompose(b, gap) for b in a.data]
    entries = []  # (eigenvalue, block index, projection, trace weight)
    for bi, dec in enumerate(per_block):
        for lam, p in dec.pairs:
            entries.append((lam, bi, p, trace(p)))
    entries.sort(key=lambda e: e[0])
    values = np.array([e[0] for e in entries])
    pairs = []
    for idx in _cluster(values, gap):
        chosen = [entries[i] for i in idx]
        blocks = [zero(s) for s in alg.summands]
        for _, bi, p, _ in chosen:
            blocks[bi] = blocks[bi] + p
        weight = sum(e[3] for e in chosen)
        lam = sum(e[0] * e[3] for e in chosen) / weight
        pairs.append((float(lam), Element(alg, tuple(blocks))))
    pairs.reverse()
    return SpectralDecomposition(alg, tuple(pairs))


def functional_calculus(a: Element, f, gap: float = DEFAULT_GAP) -> Element:
    """f(a) = sum f(lambda_i) p_i for a scalar function f on the spectrum."""
    return spectral_decompose(a, gap).rebuild(f)


def sqrt_pos(a: Element) -> Element:
    """Square root of a positive element.

    Spectrum at or below the support threshold is treated as kernel and
    mapped to 0 (sqrt would amplify kernel noise eps to sqrt(eps));
    negative round-off is clamped.  The root therefore lives exactly on
    the support projection, and ||sqrt(a)*sqrt(a) - a|| <= 1e-9.
    """
    if not is_positive(a, SUPPORT_TOL):
        raise PreconditionError(
            f"square root needs a positive element; min eigenvalue {min_eigenvalue(a):.3e}")
    return functional_calculus(a, lambda x: math.sqrt(x) if x > SUPPORT_TOL else 0.0)


def floor_effect(a: Element) -> Element:
    """Largest sharp effect below a: the eigenvalue-1 spectral projection."""
    dec = spectral_decompose(a)
    acc = zero(a.algebra)
    for lam, p in dec.pairs:
        if lam >= 1.0 - FLOOR_TOL:
            acc = acc + p
    return acc


def ceiling_effect(a: Element) -> Element:
    """Smallest sharp effect above a: the support projection."""
    dec = spectral_decompose(a)
    acc = zero(a.algebra)
    for lam, p in dec.pairs:
        if lam > SUPPORT_TOL:
            acc = acc + p
    return acc


def is_sharp(a: Element, tol: float = SUPPORT_TOL) -> bool:
    """True iff a*a = a within tol (order-unit norm)."""
    return order_unit_norm(jordan_product(a, a) - a) <= tol


def pseudo_inverse(b: Element) -> Element:
    """Positive c with b o c = c o b = ceiling(b); inverts the support spectrum."""
    dec = spectral_decompose(b)
    acc = zero(b.algebra)
    for lam, p in dec.pairs:
        if lam > SUPPORT_TOL:
            acc = acc + p * (1.0 / lam)
    return acc


def dyadic_approximation(a: Element, n_max: int) -> list[Element]:
    """Increasing simple approximants q_{2^1}, ..., q_{2^n_max} below a.

    q_n = sum_{k=1}^{n} (1/n) p_n^k where p_n^k is the spectral projection
    onto eigenvalues strictly above k/n (with a 1e-12 guard band), so
    ||a - q_{2^m}|| <= 2^(1-m).
    """
    if not is_effect(a):
        raise PreconditionError("dyadic approximation expects an effect")
    if n_max < 1:
        raise PreconditionError("n_max must be >= 1")
    dec = spectral_decompose(a)
    out = []
    for m in range(1, n_max + 1):
        n = 2 ** m
        acc = zero(a.algebra)
        for lam, p in dec.pairs:
            count = sum(1 for k in range(1, n + 1) if lam > k / n + 1e-12)
            if count:
                acc = acc + p * (count / n)
        out.append(acc)
    return out
