"""
Momentum Maps, Classical and Quantum
====================================
Certifies J : M → G* as a momentum map for a Poisson action of ax+b, builds
the modified exponential for the coadjoint example and checks the pullback
J* against the twist-deformed products on both sides.

Usage:
    cert = hamiltonian_certificate(dressing_example(), order=2)
    cert.is_hamiltonian
    cert.report().summary()

Design decisions:
    - Equivariance is checked on functions, φ(X)(J*f) = J*(ℓ_X f), so maps
      without an inverse (constants, projections) are handled.
    - The Poisson-map condition is checked on functions too:
      π_M♯(J*α)(J*u) = J*(π_G*♯(α)(u)) for α ∈ {dx, dy}, u ∈ {x, y}.
    - Exp contracts r on its second leg, j(ξ) = ξ − r(·, ξ), and projects on
      the G* factor of the D = G*·G factorization.
"""

import logging
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from axbdouble import (
    GSTAR_CHART,
    DressingGeneratorSet,
    decompose,
    double_exp,
    dressing_fundamental_fields,
    dressing_lambda_generators,
    eta_to_musical,
    pi_ell_from_fields,
    random_rational,
)
from exprcas import ZERO, Scalar
from liebialg import (
    FLAT_E,
    FLAT_H,
    LieAlgebraData,
    RMatrix,
    axb_r_matrix,
    basis_elt,
    cobracket,
    load_algebra,
)
from poissongeom import (
    Chart,
    ChartMap,
    Multivector,
    bivector_from_fields,
    identity_map,
    one_form,
    pullback,
    pushforward_at_point,
    sharp,
    vector_field,
)
from quantizeudf import (
    Coaction,
    HopfAction,
    StarProduct,
    act,
    comodule_check,
    deformed_comodule_check,
    dressing_coaction,
    dressing_hopf_action,
    monomials,
)
from ueahopf import Enveloping, TwistSeries, jordanian_twist
from verification import VerificationReport, combine

logger = logging.getLogger(__name__)

GDUAL_CHART = Chart("gdual", ("p", "q"))   # p = ξ_H, q = ξ_E

EQUIVARIANCE_SAMPLES = ("x", "y", "x*y")
EXP_POINT_SAMPLES = 20

# table basis of the double in (a, vE, vF, z) model coordinates
TABLE_TO_MODEL = {
    "H": (1, 0, 0, 0),
    "E": (0, 1, 0, 0),
    FLAT_H: (1, 0, -1, 0),
    FLAT_E: (0, 1, 0, Fraction(1, 2)),
}


@dataclass
class MomentumMap:
    """A chart map J from M into G*, certified by the checks below."""
    name: str
    J: ChartMap

    @property
    def components(self) -> Tuple[Scalar, ...]:
        return self.J.components

    def pull(self, f: Scalar) -> Scalar:
        return pullback(self.J, f)


# ----------------------------------------------------------------------
# Coadjoint action
# ----------------------------------------------------------------------

def coadjoint_fields(algebra: Optional[LieAlgebraData] = None,
                     chart: Chart = GDUAL_CHART) -> HopfAction:
    """φ(X_i) with components (ad*_{X_i} ξ)_k = −Σ_j c^j_{ik} ξ_j."""
    algebra = algebra or load_algebra("axb")
    xi = [Scalar.coord(c) for c in chart.coords]
    fields = {}
    for i, label in enumerate(algebra.basis):
        comps = {}
        for k, coord in enumerate(chart.coords):
            total = ZERO
            for j, c in algebra.c(i, k).items():
                total = total - xi[j] * Scalar(c)
            comps[coord] = total
        fields[label] = vector_field(chart, comps)
    return HopfAction("coadjoint", chart, algebra, fields)


def pi_r(action: HopfAction, r: Optional[RMatrix] = None) -> Multivector:
    """Σ_{i<j} r^{ij} φ(X_i) ∧ φ(X_j)."""
    algebra = action.algebra
    r = r or axb_r_matrix(algebra)
    coeffs = {(algebra.basis[i], algebra.basis[j]): c for (i, j), c in r.coeffs.items() if i < j}
    return bivector_from_fields(coeffs, action.fields)


def linear_poisson(algebra: LieAlgebraData, chart: Chart = GDUAL_CHART) -> Multivector:
    """{ξ_i, ξ_j} = Σ_k c^k_ij ξ_k."""
    xi = [Scalar.coord(c) for c in chart.coords]
    coeffs = {}
    for i in range(algebra.dim):
        for j in range(i + 1, algebra.dim):
            total = ZERO
            for k, c in algebra.c(i, j).items():
                total = total + xi[k] * Scalar(c)
            if not total.is_zero():
                coeffs[(i, j)] = total
    return Multivector(chart, 2, coeffs)


def coadjoint_group_action(point: Tuple[Scalar, Scalar], s: Tuple[Scalar, Scalar]) -> Tuple[Scalar, Scalar]:
    """(a, n) ▷ (p, q) = (p + 2nq, e^{−2a} q)."""
    p, q = point
    a, n = s
    return p + n * q * 2, Scalar.exp(a * -2) * q


def coadjoint_coaction() -> Coaction:
    return Coaction("coadjoint", GDUAL_CHART, coadjoint_group_action)


# ----------------------------------------------------------------------
# Modified exponential
# ----------------------------------------------------------------------

def j_map(p, q, algebra: Optional[LieAlgebraData] = None) -> Dict[str, Scalar]:
    """j(ξ) = ξ − r(·, ξ) over the double's table basis, ξ = p H* + q E*."""
    algebra = algebra or load_algebra("axb")
    p, q = Scalar(p), Scalar(q)
    r = axb_r_matrix(algebra)
    xi = {"H": p, "E": q}
    # H* = −♭E, E* = ♭H
    out = {"H": ZERO, "E": ZERO, FLAT_H: q, FLAT_E: -p}
    for (i, j), c in r.coeffs.items():
        out[algebra.basis[i]] = out[algebra.basis[i]] - xi[algebra.basis[j]] * Scalar(c)
    return out


def to_model(element: Mapping[str, Scalar]) -> Tuple[Scalar, Scalar, Scalar, Scalar]:
    comps = [ZERO] * 4
    for label, coeff in element.items():
        for k, m in enumerate(TABLE_TO_MODEL[label]):
            if m:
                comps[k] = comps[k] + coeff * Scalar(m)
    return tuple(comps)


def exp_modified(p, q) -> Tuple[Scalar, Scalar]:
    """Exp(ξ) on the gstar chart: G*-factor of exp(j(ξ))."""
    a0, vE, vF, z0 = to_model(j_map(p, q))
    dual, _ = decompose(double_exp(a0, vE, vF, z0))
    musical = eta_to_musical(dual)
    return musical.x, musical.y


def exp_map() -> MomentumMap:
    p, q = Scalar.coord("p"), Scalar.coord("q")
    x, y = exp_modified(p, q)
    inverse = None
    if x == p and y == q * 2:
        inverse = (Scalar.coord("x"), Scalar.coord("y") / 2)
    return MomentumMap("Exp", ChartMap(GDUAL_CHART, GSTAR_CHART, (x, y), inverse, "Exp"))


def exp_pointwise_check(J: MomentumMap, phi: HopfAction, seed: int,
                        samples: int = EXP_POINT_SAMPLES) -> VerificationReport:
    """(Exp_* φ(X))(ξ) = ℓ_X(Exp ξ) at seeded rational points."""
    report = VerificationReport("exp-pointwise")
    rng = random.Random(seed)
    ell = dressing_fundamental_fields(GSTAR_CHART)
    coords = J.J.source.coords
    for label in phi.algebra.basis:
        pushed = pushforward_at_point(J.J, phi.fields[label])
        bad = []
        for _ in range(samples):
            point = {c: Scalar(random_rational(rng)) for c in coords}
            image = {t: v.subs(point) for t, v in zip(GSTAR_CHART.coords, J.components)}
            for k, coord in enumerate(GSTAR_CHART.coords):
                lhs = pushed[k].subs(point)
                rhs = ell[label].component(coord).subs(image)
                if lhs != rhs:
                    bad.append(f"{point}")
        report.add(f"intertwine[{label}]", not bad, detail=f"{samples} points" if not bad else bad[0])
    return report


# ----------------------------------------------------------------------
# Classical checks
# ----------------------------------------------------------------------

def check_momentum_condition(J: MomentumMap, phi: HopfAction, pi_M: Multivector,
                             alpha: DressingGeneratorSet) -> VerificationReport:
    """φ(X) = π_M♯(J*α_X) for every generator."""
    report = VerificationReport(f"momentum-condition:{J.name}")
    for label in phi.algebra.basis:
        image = sharp(pi_M, pullback(J.J, alpha.forms[label]))
        report.add(f"momentum[{label}]", image == phi.fields[label],
                   detail=f"pi#(J*alpha) = {image}; phi = {phi.fields[label]}")
    return report


def check_ell_equivariance(J: MomentumMap, phi: HopfAction,
                           ell: Optional[Mapping[str, Multivector]] = None,
                           functions: Sequence[str] = EQUIVARIANCE_SAMPLES) -> VerificationReport:
    """φ(X)(J*f) = J*(ℓ_X f) on sampled f."""
    ell = ell or dressing_fundamental_fields(GSTAR_CHART)
    report = VerificationReport(f"equivariance:{J.name}")
    for label in phi.algebra.basis:
        for text in functions:
            f = GSTAR_CHART.parse(text)
            lhs = phi.fields[label](J.pull(f))
            rhs = J.pull(ell[label](f))
            report.add(f"equivariant[{label}; {text}]", lhs == rhs, detail=f"{lhs} vs {rhs}")
    return report


def check_poisson_map(J: MomentumMap, pi_M: Multivector, pi_G: Multivector) -> VerificationReport:
    """π_M♯(J*α)(J*u) = J*(π_G*♯(α)(u)) for α ∈ {dx, dy}, u ∈ {x, y}."""
    report = VerificationReport(f"poisson-map:{J.name}")
    chart = pi_G.chart
    for a in chart.coords:
        alpha = one_form(chart, {a: 1})
        lifted = sharp(pi_M, pullback(J.J, alpha))
        pushed = sharp(pi_G, alpha)
        for u in chart.coords:
            fu = Scalar.coord(u)
            lhs = lifted(J.pull(fu))
            rhs = J.pull(pushed(fu))
            report.add(f"poisson-map[d{a}; {u}]", lhs == rhs, detail=f"{lhs} vs {rhs}")
    return report


def poisson_eq_equivalence(J: MomentumMap, phi: HopfAction, pi_M: Multivector,
                           pi_G: Multivector, alpha: DressingGeneratorSet) -> VerificationReport:
    """ℓ-equivariant ⟺ Poisson, whenever J satisfies the momentum condition."""
    report = VerificationReport(f"poisson-equivalence:{J.name}")
    momentum = check_momentum_condition(J, phi, pi_M, alpha).passed
    equivariant = check_ell_equivariance(J, phi).passed
    poisson = check_poisson_map(J, pi_M, pi_G).passed
    report.constants.update({
        "momentum": str(momentum).lower(),
        "equivariant": str(equivariant).lower(),
        "poisson_map": str(poisson).lower(),
    })
    if momentum:
        report.add("equivalence", equivariant == poisson,
                   detail=f"equivariant={equivariant}, poisson={poisson}")
    else:
        report.add("equivalence", True,
                   detail=f"momentum condition fails; equivariant={equivariant}, poisson={poisson}")
    return report


def lie_derivative_bivector(V: Multivector, P: Multivector) -> Multivector:
    """(L_V P)^{ij} = V(P^{ij}) − P^{kj} ∂_k V^i − P^{ik} ∂_k V^j."""
    chart = P.chart
    coeffs = {}
    for i in range(chart.dim):
        for j in range(i + 1, chart.dim):
            total = V(P[(i, j)])
            for k in range(chart.dim):
                total = total - P[(k, j)] * chart.d(V.component(i), k)
                total = total - P[(i, k)] * chart.d(V.component(j), k)
            coeffs[(i, j)] = total
    return Multivector(chart, 2, {k: v for k, v in coeffs.items() if not v.is_zero()})


def poisson_action_check(phi: HopfAction, pi_M: Multivector,
                         r: Optional[RMatrix] = None) -> VerificationReport:
    """L_{φ(X)} π_M = Σ_{i<j} δ(X)^{ij} φ(X_i) ∧ φ(X_j) for every generator."""
    algebra = phi.algebra
    r = r or axb_r_matrix(algebra)
    report = VerificationReport(f"poisson-action:{phi.name}")
    for label in algebra.basis:
        lhs = lie_derivative_bivector(phi.fields[label], pi_M)
        delta = cobracket(algebra, r, basis_elt(algebra, label))
        coeffs = {(algebra.basis[i], algebra.basis[j]): c
                  for (i, j), c in delta.coeffs.items() if i < j}
        rhs = bivector_from_fields(coeffs, phi.fields) if coeffs else Multivector(pi_M.chart, 2, {})
        report.add(f"poisson-action[{label}]", lhs == rhs, detail=f"{lhs} vs {rhs}")
    return report


def lambda_lie_check(alpha: DressingGeneratorSet, pi: Multivector,
                     action: Optional[HopfAction] = None,
                     functions: Sequence[str] = ("x", "y", "x*y", "x**2")) -> VerificationReport:
    """Λ(X, f) = L_{π♯(α_X)} f on sampled functions."""
    action = action or dressing_hopf_action()
    U = Enveloping(action.algebra)
    report = VerificationReport(f"lambda-lie:{alpha.name}")
    for label in action.algebra.basis:
        field_ = sharp(pi, alpha.forms[label])
        for text in functions:
            f = action.chart.parse(text)
            report.add(f"lambda[{label}; {text}]", act(action, U.gen(label), f) == field_(f))
    return report


def rsharp_intertwine_check(algebra: Optional[LieAlgebraData] = None,
                            r: Optional[RMatrix] = None) -> VerificationReport:
    """r♯(ad*_X ξ) = ad_X(r♯ ξ) with r♯(ξ) = r(·, ξ), over both bases."""
    algebra = algebra or load_algebra("axb")
    r = axb_r_matrix(algebra) if r is None else r
    n = algebra.dim
    report = VerificationReport("rsharp-intertwine")

    def rsharp(xi: List[Fraction]) -> List[Fraction]:
        out = [Fraction(0)] * n
        for (i, j), c in r.coeffs.items():
            out[i] += c * xi[j]
        return out

    def coad(x: int, xi: List[Fraction]) -> List[Fraction]:
        return [-sum((c * xi[j] for j, c in algebra.c(x, k).items()), Fraction(0)) for k in range(n)]

    def ad(x: int, v: List[Fraction]) -> List[Fraction]:
        out = [Fraction(0)] * n
        for j, vj in enumerate(v):
            for k, c in algebra.c(x, j).items():
                out[k] += c * vj
        return out

    for x in range(n):
        for m in range(n):
            xi = [Fraction(int(k == m)) for k in range(n)]
            lhs, rhs = rsharp(coad(x, xi)), ad(x, rsharp(xi))
            report.add(f"intertwine[{algebra.basis[x]}; {algebra.basis[m]}*]", lhs == rhs,
                       detail=f"{lhs} vs {rhs}")
    report.constants["adjoint_action_certified"] = str(report.passed).lower()
    return report


# ----------------------------------------------------------------------
# Quantum check
# ----------------------------------------------------------------------

def quantum_momentum_check(J: MomentumMap, F: TwistSeries, action_M: HopfAction,
                           action_G: Optional[HopfAction] = None,
                           order: Optional[int] = None,
                           max_degree: int = 2) -> VerificationReport:
    """J*(f ⋆_ℓ g) = (J*f) ⋆_φ (J*g) per ħ-order on monomials of the gstar chart."""
    action_G = action_G or dressing_hopf_action()
    star_G = StarProduct(F, action_G, order)
    star_M = StarProduct(F, action_M, order)
    report = VerificationReport(f"quantum-momentum:{J.name}")
    failing: Dict[int, List[str]] = {}
    funcs = monomials(GSTAR_CHART, max_degree)
    for f in funcs:
        for g in funcs:
            lhs = star_G(f, g).map(J.pull)
            rhs = star_M(J.pull(f), J.pull(g))
            for k in range(star_G.order + 1):
                if lhs.coeffs[k] != rhs.coeffs[k]:
                    failing.setdefault(k, []).append(f"({f}, {g})")
    for k in range(star_G.order + 1):
        bad = failing.get(k, [])
        report.add("morphism", not bad, order=k,
                   detail=f"{len(funcs) ** 2} pairs" if not bad else "; ".join(bad[:5]))
    return report


# ----------------------------------------------------------------------
# Examples and certificates
# ----------------------------------------------------------------------

@dataclass
class MomentumExample:
    """M-side data for a candidate momentum map into (G*, π_ℓ)."""
    J: MomentumMap
    phi: HopfAction
    pi_M: Multivector
    alpha: DressingGeneratorSet
    coaction: Optional[Coaction] = None


def dressing_example() -> MomentumExample:
    action = dressing_hopf_action()
    return MomentumExample(MomentumMap("id", identity_map(GSTAR_CHART)), action,
                           pi_ell_from_fields(chart=GSTAR_CHART), dressing_lambda_generators(),
                           dressing_coaction())


def coadjoint_example() -> MomentumExample:
    action = coadjoint_fields()
    return MomentumExample(exp_map(), action, pi_r(action), dressing_lambda_generators(),
                           coadjoint_coaction())


def scaled_example() -> MomentumExample:
    """J = (x, 2y) on the dressing example; fails every check."""
    x, y = Scalar.coord("x"), Scalar.coord("y")
    J = ChartMap(GSTAR_CHART, GSTAR_CHART, (x, y * 2), (x, y / 2), "scaled")
    base = dressing_example()
    return MomentumExample(MomentumMap("scaled", J), base.phi, base.pi_M, base.alpha, base.coaction)


def constant_example() -> MomentumExample:
    J = ChartMap(GSTAR_CHART, GSTAR_CHART, (Scalar(1), Scalar(Fraction(1, 2))), None, "constant")
    base = dressing_example()
    return MomentumExample(MomentumMap("constant", J), base.phi, base.pi_M, base.alpha, base.coaction)


@dataclass
class HamiltonianCertificate:
    """Per-check reports for one momentum map candidate."""
    name: str
    momentum: VerificationReport
    equivariance: VerificationReport
    poisson_map: VerificationReport
    poisson_action: VerificationReport
    quantum: Optional[VerificationReport] = None
    extras: List[VerificationReport] = field(default_factory=list)

    @property
    def is_hamiltonian(self) -> bool:
        return self.momentum.passed and self.equivariance.passed

    @property
    def quantum_failure_order(self) -> Optional[int]:
        return self.quantum.first_failing_order() if self.quantum else None

    def report(self) -> VerificationReport:
        parts = [self.momentum, self.equivariance, self.poisson_map, self.poisson_action]
        parts += ([self.quantum] if self.quantum else []) + self.extras
        out = combine(f"certificate:{self.name}", parts)
        out.constants["hamiltonian"] = str(self.is_hamiltonian).lower()
        return out


def hamiltonian_certificate(example: MomentumExample, F: Optional[TwistSeries] = None,
                            order: Optional[int] = None) -> HamiltonianCertificate:
    """Classical checks, plus the quantum morphism check when a twist is given."""
    pi_G = pi_ell_from_fields(chart=GSTAR_CHART)
    J = example.J
    logger.debug("certifying %s", J.name)
    cert = HamiltonianCertificate(
        J.name,
        check_momentum_condition(J, example.phi, example.pi_M, example.alpha),
        check_ell_equivariance(J, example.phi),
        check_poisson_map(J, example.pi_M, pi_G),
        poisson_action_check(example.phi, example.pi_M),
    )
    if F is not None:
        cert.quantum = quantum_momentum_check(J, F, example.phi, order=order)
        if example.coaction is not None:
            cert.extras.append(comodule_check(example.coaction, dressing_coaction(),
                                              J.components, monomials(GSTAR_CHART, 2)))
    return cert


def default_twist(order: int) -> TwistSeries:
    return jordanian_twist(Enveloping(load_algebra("axb")), order)


def deformed_comodule_report(example: MomentumExample, F: TwistSeries) -> VerificationReport:
    """δ is an algebra map of the deformed algebras on coordinate pairs."""
    coords = [Scalar.coord(c) for c in example.phi.chart.coords]
    pairs = [(coords[0], coords[1]), (coords[1], coords[0])]
    return deformed_comodule_check(F, example.phi, example.coaction, pairs)
