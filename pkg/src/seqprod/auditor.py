"""Seeded property-based auditing of the kernel's structural laws.

Each law is a (generate, evaluate) pair: ``generate`` manufactures inputs
satisfying the law's hypotheses from a per-trial RNG, ``evaluate``
computes a residual from the inputs alone.  A trial fails when its
residual exceeds the row tolerance; the first failing trial's inputs are
serialized as a witness, so any reported violation can be replayed
standalone through the module operations.

Expected-fail rows turn the suite into a two-sided oracle: the twisted
products are expected to break invariance under the transpose
isomorphism, symmetry of the trace inner product, and invertibility
preservation, and a demo that silently starts passing fails the run.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from . import serialize
from .algebra import (
    KIND_SPIN,
    KIND_SUM,
    MATRIX_KINDS,
    SUPPORT_TOL,
    AlgebraDescriptor,
    Element,
    LinearMap,
    identity,
    jordan_mult_operator,
    jordan_product,
    make_order_iso,
    map_distance,
    min_eigenvalue,
    order_unit_norm,
    parse_algebra,
    quadratic_operator,
    quadratic_rep,
    random_effect,
    random_element,
    random_projection,
    rel_residual,
    trace_inner_product,
)
from .errors import CapabilityError, ConfigError
from .products import (
    SequentialProduct,
    divide,
    homogeneity_iso,
    imaginary_power_conjugation,
    multiplication_operator,
    parse_product,
    seq_product,
    theta_between,
)
from .spectral import (
    ceiling_effect,
    dyadic_approximation,
    floor_effect,
    functional_calculus,
    pseudo_inverse,
    spectral_decompose,
)

#: verdict threshold shared by the four commutation tests
COMMUTE_VERDICT_TOL = 1e-8


class LawId(str, Enum):
    SEA1 = "SEA1"
    SEA2 = "SEA2"
    SEA3 = "SEA3"
    SEA4 = "SEA4"
    SEA5 = "SEA5"
    SCALAR_LINEARITY = "SCALAR_LINEARITY"
    PRODUCT_LE_LEFT = "PRODUCT_LE_LEFT"
    MONOTONE_RIGHT = "MONOTONE_RIGHT"
    SHARP_PROPS = "SHARP_PROPS"
    FLOOR_LIMIT = "FLOOR_LIMIT"
    DYADIC_BOUND = "DYADIC_BOUND"
    SPECTRAL_RECON = "SPECTRAL_RECON"
    FUNDAMENTAL_EQ = "FUNDAMENTAL_EQ"
    COMMUTE_EQUIV = "COMMUTE_EQUIV"
    SELF_DUALITY = "SELF_DUALITY"
    HOMOGENEITY = "HOMOGENEITY"
    PSEUDO_INVERSE = "PSEUDO_INVERSE"
    DIVIDE = "DIVIDE"
    INVARIANCE = "INVARIANCE"
    SYMMETRY = "SYMMETRY"
    INVERTIBILITY_PRES = "INVERTIBILITY_PRES"
    QUADRATIC_LAW = "QUADRATIC_LAW"
    THETA_STRUCTURE = "THETA_STRUCTURE"


ALL_LAWS = list(LawId)
_LAW_ORDINAL = {law: k for k, law in enumerate(ALL_LAWS)}

#: per-law default (trials, tolerance)
LAW_DEFAULTS: dict[LawId, tuple[int, float]] = {
    LawId.SEA1: (200, 1e-8),
    LawId.SEA2: (200, 1e-8),
    LawId.SEA3: (200, 1e-8),
    LawId.SEA4: (200, 1e-8),
    LawId.SEA5: (200, 1e-8),
    LawId.SCALAR_LINEARITY: (200, 1e-8),
    LawId.PRODUCT_LE_LEFT: (100, 1e-9),
    LawId.MONOTONE_RIGHT: (100, 1e-9),
    LawId.SHARP_PROPS: (50, 1e-8),
    LawId.FLOOR_LIMIT: (50, 1e-9),
    LawId.DYADIC_BOUND: (50, 1e-9),
    LawId.SPECTRAL_RECON: (100, 1e-9),
    LawId.FUNDAMENTAL_EQ: (100, 1e-9),
    LawId.COMMUTE_EQUIV: (100, 1e-8),
    LawId.SELF_DUALITY: (50, 1e-10),
    LawId.HOMOGENEITY: (50, 1e-8),
    LawId.PSEUDO_INVERSE: (50, 1e-8),
    LawId.DIVIDE: (50, 1e-8),
    LawId.INVARIANCE: (50, 1e-8),
    LawId.SYMMETRY: (100, 1e-8),
    LawId.INVERTIBILITY_PRES: (50, 1e-7),
    LawId.QUADRATIC_LAW: (50, 1e-8),
    LawId.THETA_STRUCTURE: (25, 1e-7),
}

#: reference algebras covered by the default suite
REFERENCE_ALGEBRAS = ("real:4", "complex:4", "quat:3", "spin:5", "sum(complex:2,real:3)")


# ---------------------------------------------------------------------------
# Input manufacturing
# ---------------------------------------------------------------------------

def _poly_effect(rng: np.random.Generator, a: Element) -> Element:
    """Random clipped quadratic of a; commutes with a, spectrum in [0.05, 0.95]."""
    c0, c1, c2 = rng.uniform(-1.0, 1.0, 3)
    return functional_calculus(a, lambda x: min(0.95, max(0.05, c0 + c1 * x + c2 * x * x)))


def _pinch(frame, x: Element) -> Element:
    acc = quadratic_rep(frame[0], x)
    for p in frame[1:]:
        acc = acc + quadratic_rep(p, x)
    return acc


def _ambient_commutator(a: Element, b: Element) -> float:
    alg = a.algebra
    if alg.kind in MATRIX_KINDS:
        return float(np.linalg.norm(a.data @ b.data - b.data @ a.data))
    if alg.kind == KIND_SPIN:
        v, _ = a.data
        w, _ = b.data
        return float(np.linalg.norm(np.outer(v, w) - np.outer(w, v)))
    return max(_ambient_commutator(x, y) for x, y in zip(a.data, b.data))


def _iso_kinds(alg: AlgebraDescriptor) -> list[str]:
    if alg.kind == KIND_SPIN:
        return ["spin_rotation"]
    kinds = []
    if alg.kind in MATRIX_KINDS or (
            alg.kind == KIND_SUM and all(s.kind in MATRIX_KINDS for s in alg.summands)):
        kinds.append("unitary_conjugation")
    if alg.is_complex_kind():
        kinds.append("transpose")
    if not kinds:
        raise CapabilityError(f"no order isomorphism family is available on {alg}")
    return kinds


def _gen_sea1(rng, p, alg, trial, params):
    return {"a": random_effect(alg, rng),
            "b": random_effect(alg, rng) * 0.5,
            "c": random_effect(alg, rng) * 0.5}


def _gen_single(rng, p, alg, trial, params):
    return {"a": random_effect(alg, rng)}


def _gen_orthogonal_supports(rng, p, alg, trial, params):
    proj = random_projection(alg, rng, proper=True)
    x = random_effect(alg, rng, "invertible")
    y = random_effect(alg, rng, "invertible")
    return {"a": quadratic_rep(proj, x),
            "b": quadratic_rep(identity(alg) - proj, y)}


def _gen_commuting_triple(rng, p, alg, trial, params):
    a = random_effect(alg, rng, "invertible")
    return {"a": a, "b": _poly_effect(rng, a), "c": random_effect(alg, rng)}


def _gen_pinched(rng, p, alg, trial, params):
    base = random_effect(alg, rng, "invertible")
    frame = spectral_decompose(base).idempotents
    alphas = rng.uniform(0.05, 0.95, len(frame))
    c = frame[0] * float(alphas[0])
    for coeff, proj in zip(alphas[1:], frame[1:]):
        c = c + proj * float(coeff)
    x = random_effect(alg, rng, "invertible")
    y = random_effect(alg, rng, "invertible")
    return {"c": c, "a": _pinch(frame, x) * 0.5, "b": _pinch(frame, y) * 0.5}


def _gen_pair(rng, p, alg, trial, params):
    return {"a": random_effect(alg, rng), "b": random_effect(alg, rng)}


def _gen_monotone(rng, p, alg, trial, params):
    b = random_effect(alg, rng)
    x = random_effect(alg, rng)
    return {"a": seq_product(p, b, x), "b": b, "c": random_effect(alg, rng)}


def _gen_sharp(rng, p, alg, trial, params):
    proj = random_projection(alg, rng, proper=True)
    comp = identity(alg) - proj
    x = random_effect(alg, rng, "invertible")
    y = random_effect(alg, rng, "invertible")
    return {"p": proj,
            "a_up": proj + quadratic_rep(comp, x),
            "a_dn": quadratic_rep(proj, y),
            "a_neg": proj * 0.9 + quadratic_rep(comp, x)}


def _gen_floor(rng, p, alg, trial, params):
    frame = spectral_decompose(random_effect(alg, rng, "invertible")).idempotents
    acc = None
    for proj in frame:
        lam = 1.0 if rng.uniform() < 0.4 else float(rng.uniform(0.05, 0.7))
        term = proj * lam
        acc = term if acc is None else acc + term
    return {"a": acc}


_PROFILES = ("generic", "singular", "sharp")


def _gen_profiled(rng, p, alg, trial, params):
    return {"a": random_effect(alg, rng, _PROFILES[trial % 3])}


def _gen_commute_pair(rng, p, alg, trial, params):
    expected = "commuting" if trial % 2 == 0 else "generic"
    if expected == "commuting":
        a = random_effect(alg, rng, "invertible")
        return {"a": a, "b": _poly_effect(rng, a), "expected": expected}
    for _ in range(50):
        a = random_effect(alg, rng)
        b = random_effect(alg, rng)
        if _ambient_commutator(a, b) >= 1e-3:
            return {"a": a, "b": b, "expected": expected}
    raise CapabilityError(f"could not draw a non-commuting pair on {alg}")


def _gen_self_duality(rng, p, alg, trial, params):
    def scaled_square():
        e = random_element(alg, rng)
        sq = jordan_product(e, e)
        return sq * (1.0 / max(1.0, order_unit_norm(sq)))

    g = random_element(alg, rng)
    g = g * (1.0 / max(1.0, order_unit_norm(g)))
    a = g - identity(alg) * (min_eigenvalue(g) + 0.2)
    return {"x": scaled_square(), "y": scaled_square(), "a": a}


def _gen_homogeneity(rng, p, alg, trial, params):
    inputs = {"a": random_effect(alg, rng, "invertible"),
              "b": random_effect(alg, rng, "invertible")}
    for k in range(3):
        e = random_element(alg, rng)
        sq = jordan_product(e, e)
        inputs[f"s{k}"] = sq * (1.0 / max(1.0, order_unit_norm(sq)))
    inputs["s3"] = random_effect(alg, rng)
    inputs["s4"] = identity(alg)
    return inputs


def _gen_singular(rng, p, alg, trial, params):
    return {"b": random_effect(alg, rng, "singular")}


def _gen_divide(rng, p, alg, trial, params):
    q = random_effect(alg, rng, ("generic", "singular")[trial % 2])
    x = random_effect(alg, rng)
    return {"q": q, "a": seq_product(p, q, x)}


def _gen_invariance(rng, p, alg, trial, params):
    kinds = _iso_kinds(alg)
    requested = params.get("iso") if params else None
    if requested is not None:
        if requested not in kinds:
            raise CapabilityError(f"isomorphism kind {requested!r} is not available on {alg}")
        kind = requested
    else:
        kind = kinds[trial % len(kinds)]
    phi = make_order_iso(alg, kind, seed=int(rng.integers(2 ** 31)))
    return {"a": random_effect(alg, rng), "b": random_effect(alg, rng), "phi": phi}


def _gen_triple(rng, p, alg, trial, params):
    return {"a": random_effect(alg, rng), "b": random_effect(alg, rng),
            "c": random_effect(alg, rng)}


def _gen_invertible_pair(rng, p, alg, trial, params):
    return {"a": random_effect(alg, rng, "invertible"),
            "b": random_effect(alg, rng, "invertible")}


def _gen_theta(rng, p, alg, trial, params):
    a = random_effect(alg, rng, "invertible")
    return {"q": random_effect(alg, rng, "invertible"), "a": a, "b": _poly_effect(rng, a)}


# ---------------------------------------------------------------------------
# Law evaluations (residual from inputs alone)
# ---------------------------------------------------------------------------

def _ev_sea1(p, alg, inp):
    a, b, c = inp["a"], inp["b"], inp["c"]
    return rel_residual(seq_product(p, a, b + c), seq_product(p, a, b) + seq_product(p, a, c))


def _ev_sea2(p, alg, inp):
    return rel_residual(seq_product(p, identity(alg), inp["a"]), inp["a"])


def _ev_sea3(p, alg, inp):
    a, b = inp["a"], inp["b"]
    return max(order_unit_norm(seq_product(p, a, b)), order_unit_norm(seq_product(p, b, a)))


def _ev_sea4(p, alg, inp):
    a, b, c = inp["a"], inp["b"], inp["c"]
    b_perp = identity(alg) - b
    return max(
        rel_residual(seq_product(p, a, b), seq_product(p, b, a)),
        rel_residual(seq_product(p, a, b_perp), seq_product(p, b_perp, a)),
        rel_residual(seq_product(p, a, seq_product(p, b, c)),
                     seq_product(p, seq_product(p, a, b), c)))


def _ev_sea5(p, alg, inp):
    c, a, b = inp["c"], inp["a"], inp["b"]
    ab = seq_product(p, a, b)
    return max(
        rel_residual(seq_product(p, c, a), seq_product(p, a, c)),
        rel_residual(seq_product(p, c, b), seq_product(p, b, c)),
        rel_residual(seq_product(p, c, ab), seq_product(p, ab, c)),
        rel_residual(seq_product(p, c, a + b), seq_product(p, a + b, c)))


def _ev_scalar(p, alg, inp):
    a, b = inp["a"], inp["b"]
    ab = seq_product(p, a, b)
    worst = 0.0
    for lam in (0.0, 0.25, 0.5, 1.0):
        worst = max(worst,
                    rel_residual(seq_product(p, a * lam, b), ab * lam),
                    rel_residual(seq_product(p, a, b * lam), ab * lam))
    return worst


def _ev_product_le(p, alg, inp):
    a, b = inp["a"], inp["b"]
    return max(0.0, -min_eigenvalue(a - seq_product(p, a, b)))


def _ev_monotone(p, alg, inp):
    a, b, c = inp["a"], inp["b"], inp["c"]
    hyp = max(0.0, -min_eigenvalue(b - a))
    return max(hyp, -min_eigenvalue(seq_product(p, c, b) - seq_product(p, c, a)), 0.0)


def _ev_sharp(p, alg, inp):
    proj, a_up, a_dn, a_neg = inp["p"], inp["a_up"], inp["a_dn"], inp["a_neg"]
    res = max(
        rel_residual(seq_product(p, proj, a_up), proj),
        rel_residual(seq_product(p, a_up, proj), proj),
        rel_residual(seq_product(p, proj, a_dn), a_dn),
        rel_residual(seq_product(p, a_dn, proj), a_dn),
        max(0.0, -min_eigenvalue(a_up - proj)),
        max(0.0, -min_eigenvalue(proj - a_dn)))
    # two-sided: p <= a_neg fails, so p o a_neg must stay away from p
    if order_unit_norm(seq_product(p, proj, a_neg) - proj) < 0.05:
        res = max(res, 1.0)
    return res


def _ev_floor(p, alg, inp):
    a = inp["a"]
    fl = floor_effect(a)
    power = a
    monotone = 0.0
    for _ in range(6):
        nxt = seq_product(p, power, power)
        monotone = max(monotone, -min_eigenvalue(power - nxt), 0.0)
        power = nxt
    sharpness = order_unit_norm(jordan_product(fl, fl) - fl)
    return max(rel_residual(power, fl), monotone, sharpness)


def _ev_dyadic(p, alg, inp):
    a = inp["a"]
    approx = dyadic_approximation(a, 8)
    worst = 0.0
    prev = None
    for m, q in enumerate(approx, start=1):
        worst = max(worst, order_unit_norm(a - q) - 2.0 ** (1 - m))
        worst = max(worst, -min_eigenvalue(a - q))
        if prev is not None:
            worst = max(worst, -min_eigenvalue(q - prev))
        prev = q
        # eigenvalues sit on the grid l/2^m
        n = 2 ** m
        for lam in spectral_decompose(q).eigenvalues:
            worst = max(worst, abs(lam * n - round(lam * n)) / n)
    return max(worst, 0.0)


def _ev_spectral_recon(p, alg, inp):
    a = inp["a"]
    dec = spectral_decompose(a)
    recon = None
    for lam, proj in dec.pairs:
        term = proj * lam
        recon = term if recon is None else recon + term
    worst = rel_residual(recon, a)
    frame_sum = None
    for proj in dec.idempotents:
        frame_sum = proj if frame_sum is None else frame_sum + proj
        worst = max(worst, order_unit_norm(jordan_product(proj, proj) - proj))
    worst = max(worst, order_unit_norm(frame_sum - identity(alg)))
    idem = dec.idempotents
    for i in range(len(idem)):
        for j in range(i + 1, len(idem)):
            worst = max(worst, order_unit_norm(jordan_product(idem[i], idem[j])))
    eigs = dec.eigenvalues
    if any(eigs[i] <= eigs[i + 1] for i in range(len(eigs) - 1)):
        worst = max(worst, 1.0)
    return worst


def _ev_fundamental(p, alg, inp):
    a, b = inp["a"], inp["b"]
    q_a = quadratic_operator(a)
    q_b = quadratic_operator(b)
    lhs = quadratic_operator(quadratic_rep(a, b))
    rhs = q_a.compose(q_b).compose(q_a)
    square_law = map_distance(q_a.compose(q_a),
                              quadratic_operator(jordan_product(a, a)))
    return max(map_distance(lhs, rhs), square_law)


def _ev_commute_equiv(p, alg, inp):
    a, b, expected = inp["a"], inp["b"], inp["expected"]
    want = expected == "commuting"
    verdicts = [
        order_unit_norm(seq_product(p, a, b) - seq_product(p, b, a)) <= COMMUTE_VERDICT_TOL,
        map_distance(quadratic_operator(a).compose(quadratic_operator(b)),
                     quadratic_operator(b).compose(quadratic_operator(a))) <= COMMUTE_VERDICT_TOL,
        map_distance(jordan_mult_operator(a).compose(jordan_mult_operator(b)),
                     jordan_mult_operator(b).compose(jordan_mult_operator(a))) <= COMMUTE_VERDICT_TOL,
        _ambient_commutator(a, b) <= COMMUTE_VERDICT_TOL,
    ]
    return 0.0 if all(v == want for v in verdicts) else 1.0


def _ev_self_duality(p, alg, inp):
    x, y, a = inp["x"], inp["y"], inp["a"]
    worst = max(0.0, -trace_inner_product(x, y))
    dec = spectral_decompose(a)
    lam, witness = min(dec.pairs, key=lambda pair: pair[0])
    if lam >= -SUPPORT_TOL or trace_inner_product(a, witness) >= -1e-10:
        worst = max(worst, 1.0)
    return worst


def _ev_homogeneity(p, alg, inp):
    a, b = inp["a"], inp["b"]
    phi = homogeneity_iso(a, b)
    std = SequentialProduct.standard(alg)
    phi_inv = multiplication_operator(std, a).compose(
        multiplication_operator(std, pseudo_inverse(b)))
    worst = max(rel_residual(phi.apply(a), b),
                map_distance(phi.compose(phi_inv), LinearMap.identity(alg)))
    for key in ("s0", "s1", "s2", "s3", "s4"):
        sample = inp[key]
        worst = max(worst,
                    -min_eigenvalue(phi.apply(sample)),
                    -min_eigenvalue(phi_inv.apply(sample)), 0.0)
    return worst


def _ev_pseudo_inverse(p, alg, inp):
    b = inp["b"]
    b_inv = pseudo_inverse(b)
    ceil = ceiling_effect(b)
    return max(rel_residual(seq_product(p, b, b_inv), ceil),
               rel_residual(ceiling_effect(b_inv), ceil),
               max(0.0, -min_eigenvalue(b_inv)))


def _ev_divide(p, alg, inp):
    q, a = inp["q"], inp["a"]
    c = divide(p, q, a)
    return max(rel_residual(seq_product(p, q, c), a),
               max(0.0, -min_eigenvalue(ceiling_effect(q) - c)))


def _ev_invariance(p, alg, inp):
    a, b, phi = inp["a"], inp["b"], inp["phi"]
    return order_unit_norm(phi.apply(seq_product(p, a, b))
                           - seq_product(p, phi.apply(a), phi.apply(b)))


def _ev_symmetry(p, alg, inp):
    a, b, c = inp["a"], inp["b"], inp["c"]
    lhs = trace_inner_product(seq_product(p, a, b), c)
    rhs = trace_inner_product(b, seq_product(p, a, c))
    return abs(lhs - rhs)


def _ev_invertibility(p, alg, inp):
    a, b = inp["a"], inp["b"]
    lhs = pseudo_inverse(seq_product(p, a, b))
    rhs = seq_product(p, pseudo_inverse(a), pseudo_inverse(b))
    return order_unit_norm(lhs - rhs)


def _ev_quadratic(p, alg, inp):
    a, b = inp["a"], inp["b"]
    ab = seq_product(p, a, b)
    lhs = multiplication_operator(p, jordan_product(ab, ab))
    l_a = multiplication_operator(p, a)
    rhs = l_a.compose(multiplication_operator(p, jordan_product(b, b))).compose(l_a)
    return map_distance(lhs, rhs)


def _ev_theta(p, alg, inp):
    q, a, b = inp["q"], inp["a"], inp["b"]
    std = SequentialProduct.standard(alg)
    th_q = theta_between(std, p, q)
    worst = rel_residual(th_q.apply(identity(alg)), identity(alg))
    if not p.is_standard:
        worst = max(worst, map_distance(th_q, imaginary_power_conjugation(q, p.twist)))
    th_a = theta_between(std, p, a)
    th_b = theta_between(std, p, b)
    th_ab = theta_between(std, p, seq_product(std, a, b))
    worst = max(worst,
                map_distance(th_ab, th_a.compose(th_b)),
                map_distance(th_a.compose(th_b), th_b.compose(th_a)),
                map_distance(theta_between(std, p, pseudo_inverse(a)), th_a.invert()))
    return worst


_REGISTRY = {
    LawId.SEA1: (_gen_sea1, _ev_sea1),
    LawId.SEA2: (_gen_single, _ev_sea2),
    LawId.SEA3: (_gen_orthogonal_supports, _ev_sea3),
    LawId.SEA4: (_gen_commuting_triple, _ev_sea4),
    LawId.SEA5: (_gen_pinched, _ev_sea5),
    LawId.SCALAR_LINEARITY: (_gen_pair, _ev_scalar),
    LawId.PRODUCT_LE_LEFT: (_gen_pair, _ev_product_le),
    LawId.MONOTONE_RIGHT: (_gen_monotone, _ev_monotone),
    LawId.SHARP_PROPS: (_gen_sharp, _ev_sharp),
    LawId.FLOOR_LIMIT: (_gen_floor, _ev_floor),
    LawId.DYADIC_BOUND: (_gen_profiled, _ev_dyadic),
    LawId.SPECTRAL_RECON: (_gen_profiled, _ev_spectral_recon),
    LawId.FUNDAMENTAL_EQ: (_gen_pair, _ev_fundamental),
    LawId.COMMUTE_EQUIV: (_gen_commute_pair, _ev_commute_equiv),
    LawId.SELF_DUALITY: (_gen_self_duality, _ev_self_duality),
    LawId.HOMOGENEITY: (_gen_homogeneity, _ev_homogeneity),
    LawId.PSEUDO_INVERSE: (_gen_singular, _ev_pseudo_inverse),
    LawId.DIVIDE: (_gen_divide, _ev_divide),
    LawId.INVARIANCE: (_gen_invariance, _ev_invariance),
    LawId.SYMMETRY: (_gen_triple, _ev_symmetry),
    LawId.INVERTIBILITY_PRES: (_gen_invertible_pair, _ev_invertibility),
    LawId.QUADRATIC_LAW: (_gen_pair, _ev_quadratic),
    LawId.THETA_STRUCTURE: (_gen_theta, _ev_theta),
}


# ---------------------------------------------------------------------------
# Rows, configs, reports
# ---------------------------------------------------------------------------

@dataclass
class SuiteRow:
    law: str
    product: str = "standard"
    algebra: str = "complex:3"
    trials: int | None = None
    tol: float | None = None
    expect: str = "pass"
    seed: int | None = None
    params: dict = field(default_factory=dict)


@dataclass
class SuiteConfig:
    rows: list[SuiteRow]
    seed: int = 42
    schema: int = 1

    def to_json(self) -> dict:
        rows = []
        for r in self.rows:
            row = {"law": r.law, "product": r.product, "algebra": r.algebra,
                   "expect": r.expect}
            if r.trials is not None:
                row["trials"] = r.trials
            if r.tol is not None:
                row["tol"] = r.tol
            if r.seed is not None:
                row["seed"] = r.seed
            if r.params:
                row["params"] = r.params
            rows.append(row)
        return {"schema": self.schema, "seed": self.seed, "rows": rows}

    @classmethod
    def from_json(cls, obj: dict) -> "SuiteConfig":
        if not isinstance(obj, dict) or "rows" not in obj:
            raise ConfigError("suite config must be an object with a 'rows' array")
        rows = []
        for i, raw in enumerate(obj["rows"]):
            try:
                row = SuiteRow(
                    law=str(raw["law"]),
                    product=str(raw.get("product", "standard")),
                    algebra=str(raw.get("algebra", "complex:3")),
                    trials=None if raw.get("trials") is None else int(raw["trials"]),
                    tol=None if raw.get("tol") is None else float(raw["tol"]),
                    expect=str(raw.get("expect", "pass")),
                    seed=None if raw.get("seed") is None else int(raw["seed"]),
                    params=dict(raw.get("params", {})),
                )
            except (KeyError, TypeError, ValueError) as exc:
                raise ConfigError(f"row {i}: malformed ({exc})") from exc
            if row.law not in LawId._value2member_map_:
                raise ConfigError(f"row {i}: unknown law {row.law!r}")
            if row.expect not in ("pass", "fail", "error"):
                raise ConfigError(f"row {i}: expect must be pass, fail or error")
            rows.append(row)
        return cls(rows=rows, seed=int(obj.get("seed", 42)),
                   schema=int(obj.get("schema", 1)))


@dataclass
class AuditEntry:
    law: str
    product: str
    algebra: str
    trials: int
    seed: int
    verdict: str          # pass | fail | error
    expected: str
    max_residual: float
    witness: dict | None = None
    elapsed_ms: float = 0.0
    error: str | None = None

    @property
    def as_expected(self) -> bool:
        return self.verdict == self.expected

    def to_json(self) -> dict:
        out = {"law": self.law, "product": self.product, "algebra": self.algebra,
               "trials": self.trials, "seed": self.seed, "verdict": self.verdict,
               "expected": self.expected, "max_residual": self.max_residual,
               "elapsed_ms": self.elapsed_ms}
        if self.witness is not None:
            out["witness"] = self.witness
        if self.error is not None:
            out["error"] = self.error
        return out

    @classmethod
    def from_json(cls, obj: dict) -> "AuditEntry":
        return cls(law=obj["law"], product=obj["product"], algebra=obj["algebra"],
                   trials=obj["trials"], seed=obj["seed"], verdict=obj["verdict"],
                   expected=obj["expected"], max_residual=obj["max_residual"],
                   witness=obj.get("witness"), elapsed_ms=obj.get("elapsed_ms", 0.0),
                   error=obj.get("error"))


@dataclass
class AuditReport:
    entries: list[AuditEntry]
    seed: int
    schema: int = 1

    @property
    def status(self) -> str:
        return "pass" if all(e.as_expected for e in self.entries) else "fail"

    def to_json(self) -> dict:
        return {"schema": self.schema, "seed": self.seed, "status": self.status,
                "entries": [e.to_json() for e in self.entries]}

    @classmethod
    def from_json(cls, obj: dict) -> "AuditReport":
        return cls(entries=[AuditEntry.from_json(e) for e in obj["entries"]],
                   seed=obj["seed"], schema=obj.get("schema", 1))


# ---------------------------------------------------------------------------
# Execution
# ---------------------------------------------------------------------------

def audit_law(law: LawId | str, product: SequentialProduct, alg: AlgebraDescriptor,
              trials: int, seed: int, tol: float, params: dict | None = None,
              expected: str = "pass") -> AuditEntry:
    """Run one law for ``trials`` seeded trials; stop at the first violation."""
    law = LawId(law)
    generate, evaluate = _REGISTRY[law]
    ordinal = _LAW_ORDINAL[law]
    start = time.perf_counter()
    max_residual = 0.0
    witness = None
    verdict = "pass"
    for i in range(trials):
        rng = np.random.default_rng((seed, ordinal, i))
        inputs = generate(rng, product, alg, i, params or {})
        residual = float(evaluate(product, alg, inputs))
        max_residual = max(max_residual, residual)
        if residual > tol:
            witness = {"trial": i, "residual": residual,
                       "inputs": serialize.inputs_to_json(inputs)}
            verdict = "fail"
            max_residual = residual
            break
    elapsed = (time.perf_counter() - start) * 1000.0
    return AuditEntry(law=law.value, product=product.descriptor(),
                      algebra=alg.shorthand(), trials=trials, seed=seed,
                      verdict=verdict, expected=expected,
                      max_residual=max_residual, witness=witness,
                      elapsed_ms=round(elapsed, 3))


def replay_witness(law: LawId | str, product_desc: str, algebra_desc: str,
                   witness: dict) -> float:
    """Recompute a witness residual standalone from its serialized inputs."""
    law = LawId(law)
    alg = parse_algebra(algebra_desc)
    product = parse_product(product_desc, alg)
    inputs = serialize.inputs_from_json(witness["inputs"])
    _, evaluate = _REGISTRY[law]
    return float(evaluate(product, alg, inputs))


def _row_seed(config_seed: int, index: int, row: SuiteRow) -> int:
    if row.seed is not None:
        return row.seed
    return (config_seed * 1_000_003 + index) % (2 ** 31)


def run_full_suite(config: SuiteConfig) -> AuditReport:
    """Run every config row; capability errors become entries, not crashes."""
    entries = []
    for i, row in enumerate(config.rows):
        if row.law not in LawId._value2member_map_:
            raise ConfigError(f"row {i}: unknown law {row.law!r}")
        law = LawId(row.law)
        trials, tol = LAW_DEFAULTS[law]
        trials = row.trials if row.trials is not None else trials
        tol = row.tol if row.tol is not None else tol
        seed = _row_seed(config.seed, i, row)
        try:
            alg = parse_algebra(row.algebra)
            product = parse_product(row.product, alg)
            entry = audit_law(law, product, alg, trials, seed, tol,
                              params=row.params, expected=row.expect)
        except CapabilityError as exc:
            entry = AuditEntry(law=row.law, product=row.product, algebra=row.algebra,
                               trials=0, seed=seed, verdict="error",
                               expected=row.expect, max_residual=0.0,
                               error=str(exc))
        entries.append(entry)
    return AuditReport(entries=entries, seed=config.seed)


def characterization_rows(trials: int = 10, tol: float = 1e-3) -> list[SuiteRow]:
    """The three falsification demos on the twisted product."""
    return [
        SuiteRow(LawId.INVARIANCE.value, "twisted:1.0", "complex:3", trials, tol,
                 expect="fail", params={"iso": "transpose"}),
        SuiteRow(LawId.SYMMETRY.value, "twisted:1.0", "complex:3", trials, tol,
                 expect="fail"),
        SuiteRow(LawId.INVERTIBILITY_PRES.value, "twisted:1.0", "complex:3", trials, tol,
                 expect="fail"),
    ]


def default_config(seed: int = 42) -> SuiteConfig:
    """Every law x standard product x the five reference algebras, the
    twisted products' axiom rows, and the three falsification demos."""
    rows = [SuiteRow(law.value, "standard", alg)
            for law in ALL_LAWS for alg in REFERENCE_ALGEBRAS]
    sea_and_scalar = [LawId.SEA1, LawId.SEA2, LawId.SEA3, LawId.SEA4, LawId.SEA5,
                      LawId.SCALAR_LINEARITY]
    for t in ("0.5", "1.0"):
        rows.extend(SuiteRow(law.value, f"twisted:{t}", "complex:3")
                    for law in sea_and_scalar)
    rows.append(SuiteRow(LawId.THETA_STRUCTURE.value, "twisted:1.0", "complex:3"))
    rows.extend(characterization_rows())
    return SuiteConfig(rows=rows, seed=seed)


def demo_characterizations(seed: int = 42) -> AuditReport:
    """Standard-product controls at 1e-7 plus the three twisted falsifications."""
    control = [SuiteRow(r.law, "standard", "complex:3", 25, 1e-7, expect="pass",
                        params=r.params)
               for r in characterization_rows()]
    return run_full_suite(SuiteConfig(rows=control + characterization_rows(), seed=seed))
