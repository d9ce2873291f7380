"""
Verification Suites
===================
Named suites over the modules, each returning a VerificationReport, and the
RunReport assembled for the CLI.

Usage:
    config = SuiteConfig(suite="udf", order=2)
    run = run_suite(config)
    run.passed, run.to_dict()

Design decisions:
    - Registry order fixes report order, so reports are deterministic for a
      fixed (config, seed).
    - Mutations (corrupted twist, broken momentum maps) are checked as
      "failure detected at the expected place", so a healthy run is all green.
    - Timings are kept out of the JSON document.
"""

import logging
import time
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Callable, Dict, List, Optional

from axbdouble import (
    GSTAR_CHART,
    double_group_report,
    dressing_generators_report,
    dressing_lambda_generators,
    dressing_star_generators,
    poisson_report,
    poisson_structures,
)
from config import SuiteConfig
from exprcas import ZERO, Scalar, TwistlabError
from liebialg import (
    axb_r_matrix,
    basis_elt,
    build_double_axb,
    cobracket,
    cocycle_check,
    dual_algebra,
    cobracket_table,
    dual_check,
    flat_check,
    heisenberg_check,
    jacobi_check,
    load_algebra,
    rho_check,
    same_constants,
    schouten_cybe,
    wedge,
)
from momentum import (
    coadjoint_example,
    coadjoint_fields,
    constant_example,
    deformed_comodule_report,
    dressing_example,
    exp_modified,
    exp_pointwise_check,
    hamiltonian_certificate,
    j_map,
    lambda_lie_check,
    linear_poisson,
    pi_r,
    poisson_eq_equivalence,
    quantum_momentum_check,
    rsharp_intertwine_check,
    scaled_example,
)
from poissongeom import LEDGER, pi_component
from quantizeudf import (
    CocycleGamma,
    StarProduct,
    assoc_check,
    dressing_coaction,
    dressing_hopf_action,
    gamma_cocycle_check,
    gamma_normalization_check,
    m_gamma_duality_check,
    module_algebra_check,
    monomials,
    pairing_duality_check,
    representation_check,
    semiclassical_check,
    star_cocycle,
    star_udf,
)
from ueahopf import (
    Enveloping,
    HSeries,
    corrupt_twist,
    hopf_axioms_check,
    identity_twist,
    jordanian_twist,
    load_twist,
    semiclassical_constant,
    twist_check,
    twist_semiclassical,
    twisted_hopf_check,
)
from verification import VerificationReport, combine

logger = logging.getLogger(__name__)

UDF_MAX_ORDER = 3          # associativity and duality are run through ħ³
QUANTUM_MAX_ORDER = 2      # momentum and comodule checks through ħ²
COCYCLE_MAX_ORDER = 2


def _twist(config: SuiteConfig, order: int):
    U = Enveloping(load_algebra("axb"))
    if config.twist == "jordanian":
        return jordanian_twist(U, order)
    return load_twist(config.twist, U).truncate(order)


# ----------------------------------------------------------------------
# Suites
# ----------------------------------------------------------------------

def lie_bialgebra_suite(config: SuiteConfig) -> VerificationReport:
    report = VerificationReport("lie-bialgebra")
    g = load_algebra("axb")
    r = axb_r_matrix(g)
    report.extend(jacobi_check(g))
    report.extend(jacobi_check(load_algebra("axb_dual")))
    double = build_double_axb()
    report.extend(jacobi_check(double))
    report.add("CYBE [r,r] = 0", schouten_cybe(g, r).is_zero())
    h, e = basis_elt(g, "H"), basis_elt(g, "E")
    delta_h = cobracket(g, r, h)
    report.add("delta(H) = -2 H^E", (delta_h - wedge(h, e).scale(-2)).is_zero(), detail=str(delta_h))
    report.add("delta(E) = 0", cobracket(g, r, e).is_zero())
    report.extend(cocycle_check(g, r))
    report.extend(dual_check(g, r))
    gstar = dual_algebra(g, cobracket_table(g, r), labels=("H*", "E*"), name="axb_dual")
    report.add("[H*,E*] = -2H*", same_constants(gstar, load_algebra("axb_dual")))
    report.extend(flat_check(g, gstar))
    report.extend(heisenberg_check(double))
    report.extend(rho_check(double))
    return report


def double_group_suite(config: SuiteConfig) -> VerificationReport:
    return double_group_report(config.seed, config.samples)


def poisson_suite(config: SuiteConfig) -> VerificationReport:
    return poisson_report()


def dressing_generators_suite(config: SuiteConfig) -> VerificationReport:
    report = dressing_generators_report()
    structures = poisson_structures()
    report.extend(lambda_lie_check(dressing_lambda_generators(), structures["pi_ell"]))
    report.extend(lambda_lie_check(dressing_star_generators(), structures["pi_star"]), "lambda-lie:star")
    return report


def twist_axioms_suite(config: SuiteConfig) -> VerificationReport:
    report = VerificationReport("twist-axioms")
    U = Enveloping(load_algebra("axb"))
    N = config.order
    F = _twist(config, N)
    report.extend(hopf_axioms_check(U))
    report.extend(twist_check(F))
    report.extend(twist_check(identity_twist(U, N)), "identity")
    fixture = load_twist("jordanian", U).truncate(N)
    report.add("fixture matches generated series", fixture == jordanian_twist(U, N))
    report.extend(twisted_hopf_check(F))
    if N >= 1:
        r_tensor, semi = twist_semiclassical(F)
        report.extend(semi)
        r = axb_r_matrix(U.g)
        lam = semiclassical_constant(F, r)
        report.add("semiclassical part is alternating", r_tensor.is_alternating())
        report.add("semiclassical part is proportional to H^E", lam is not None)
        report.add("semiclassical part solves CYBE", schouten_cybe(U.g, r_tensor).is_zero())
        report.constants["semiclassical_constant"] = str(lam)
    if N >= 2:
        broken = twist_check(corrupt_twist(F, 2))
        first = broken.first_failing_order()
        report.add("corrupted F_2 detected at order 2", first == 2, detail=f"first failure at {first}")
        report.constants["corrupted_first_failure"] = str(first)
    return report


def udf_suite(config: SuiteConfig) -> VerificationReport:
    report = VerificationReport("udf")
    N = min(config.order, UDF_MAX_ORDER)
    U = Enveloping(load_algebra("axb"))
    F = _twist(config, N)
    action = dressing_hopf_action()
    x, y = Scalar.coord("x"), Scalar.coord("y")
    report.extend(representation_check(action, U, x * y))
    star = StarProduct(F, action)
    funcs = monomials(GSTAR_CHART, 2)
    report.extend(assoc_check(star, product(funcs, repeat=3)))
    lam = semiclassical_constant(F, axb_r_matrix(U.g)) if N >= 1 else Fraction(0)
    report.extend(semiclassical_check(star, poisson_structures()["pi_ell"], lam))
    coad = coadjoint_fields()
    report.extend(semiclassical_check(StarProduct(F, coad), pi_r(coad), lam), "semiclassical:coadjoint")
    report.extend(module_algebra_check(F, action, x, y))
    one = Scalar(1)
    for f in funcs:
        lifted = HSeries((f,) + (ZERO,) * star.order)
        report.add(f"unit[{f}]", star(f, one) == lifted and star(one, f) == lifted)
    if N >= 2:
        broken = StarProduct(corrupt_twist(F, 2), action, verify=False)
        linear = monomials(GSTAR_CHART, 1)
        first = assoc_check(broken, product(linear, repeat=3)).first_failing_order()
        report.add("corrupted F_2 breaks associativity at order 2", first == 2,
                   detail=f"first failure at {first}")
    report.constants["semiclassical_constant"] = str(lam)
    return report


def duality_suite(config: SuiteConfig) -> VerificationReport:
    report = VerificationReport("duality")
    N = min(config.order, UDF_MAX_ORDER)
    U = Enveloping(load_algebra("axb"))
    F = _twist(config, N)
    action = dressing_hopf_action()
    coaction = dressing_coaction()
    gamma = CocycleGamma(F)
    funcs = monomials(GSTAR_CHART, 2)
    bad = []
    for f, g in product(funcs, repeat=2):
        if star_cocycle(gamma, coaction, f, g) != star_udf(F, action, f, g):
            bad.append(f"({f}, {g})")
    report.add("star_cocycle = star_udf", not bad, detail="; ".join(bad[:5]) or f"{len(funcs) ** 2} pairs")
    report.add("coaction counit", all(coaction.counit_check(f) for f in funcs))

    a, n = Scalar.coord("a"), Scalar.coord("n")
    s_funcs = [a, n, a * n]
    words = [U.gen("H"), U.gen("E"), U.gen("H") * U.gen("E")]
    report.extend(pairing_duality_check(U, words, s_funcs))
    gamma2 = CocycleGamma(F.truncate(min(N, COCYCLE_MAX_ORDER)))
    report.extend(gamma_normalization_check(gamma2, s_funcs))
    report.extend(gamma_cocycle_check(gamma2, [(a, n, a * n), (n, a, n)]))
    report.extend(m_gamma_duality_check(gamma2, a, n))
    return report


def classical_momentum_suite(config: SuiteConfig) -> VerificationReport:
    report = VerificationReport("classical-momentum")
    dressing, coadjoint = dressing_example(), coadjoint_example()
    for example in (dressing, coadjoint):
        cert = hamiltonian_certificate(example)
        report.extend(cert.report())
        report.add(f"{example.J.name} is hamiltonian", cert.is_hamiltonian)
    report.extend(exp_pointwise_check(coadjoint.J, coadjoint.phi, config.seed, config.exp_samples))
    x0, y0 = exp_modified(0, 0)
    report.add("Exp(0) = (0, 0)", x0.is_zero() and y0.is_zero())
    p, q = Scalar.coord("p"), Scalar.coord("q")
    j = j_map(p, q)
    report.constants["j_map"] = ", ".join(f"{k}: {v}" for k, v in j.items())
    report.constants["exp_components"] = ", ".join(str(c) for c in coadjoint.J.components)
    report.constants["coadjoint_handedness"] = coadjoint.phi.handedness
    lin = linear_poisson(coadjoint.phi.algebra)
    report.add("pi_r differs from the linear structure", pi_r(coadjoint.phi) != lin,
               detail=f"pi_r = {pi_component(pi_r(coadjoint.phi), 0, 1)}, linear = {pi_component(lin, 0, 1)}")

    for example in (dressing, coadjoint, scaled_example(), constant_example()):
        report.extend(poisson_eq_equivalence(example.J, example.phi, example.pi_M,
                                             poisson_structures()["pi_ell"], example.alpha))
    for example in (scaled_example(), constant_example()):
        cert = hamiltonian_certificate(example)
        report.add(f"{example.J.name} fails the momentum condition", not cert.momentum.passed)

    rsharp = rsharp_intertwine_check()
    report.constants["rsharp_intertwines"] = str(rsharp.passed).lower()
    report.constants["rsharp_failures"] = ", ".join(rsharp.failed_names())
    zero_r = axb_r_matrix(load_algebra("axb")).scale(0)
    report.add("r = 0 intertwines", rsharp_intertwine_check(r=zero_r).passed)
    return report


def quantum_momentum_suite(config: SuiteConfig) -> VerificationReport:
    report = VerificationReport("quantum-momentum")
    N = min(config.order, QUANTUM_MAX_ORDER)
    F = _twist(config, N)
    for example in (dressing_example(), coadjoint_example()):
        cert = hamiltonian_certificate(example, F)
        report.extend(cert.report())
        report.extend(deformed_comodule_report(example, F), f"deformed-comodule:{example.J.name}")
    for example in (scaled_example(), constant_example()):
        quantum = quantum_momentum_check(example.J, F, example.phi)
        first = quantum.first_failing_order()
        if N >= 1:
            report.add(f"{example.J.name} fails at first order", first == 1, detail=f"first failure at {first}")
        report.add(f"{example.J.name} order 0 is an algebra map", first != 0)
    return report


def _composite(name: str, parts: List[str]) -> Callable[[SuiteConfig], VerificationReport]:
    def run(config: SuiteConfig) -> VerificationReport:
        return combine(name, (SUITES[p](config) for p in parts))
    return run


SUITES: Dict[str, Callable[[SuiteConfig], VerificationReport]] = {
    "lie-bialgebra": lie_bialgebra_suite,
    "double-group": double_group_suite,
    "poisson": poisson_suite,
    "dressing-generators": dressing_generators_suite,
    "twist-axioms": twist_axioms_suite,
    "udf": udf_suite,
    "duality": duality_suite,
    "classical-momentum": classical_momentum_suite,
    "quantum-momentum": quantum_momentum_suite,
}
SUITES["appendix-a"] = _composite("appendix-a", ["lie-bialgebra", "double-group", "poisson",
                                                 "dressing-generators"])

BASE_SUITES = [name for name in SUITES if name != "appendix-a"]


class UnknownSuiteError(TwistlabError):
    """Suite name not in the registry."""


def resolve_suites(name: str) -> List[str]:
    if name == "all":
        return list(BASE_SUITES)
    if not name:
        return []
    names = [n.strip() for n in name.split(",") if n.strip()]
    unknown = [n for n in names if n not in SUITES]
    if unknown:
        raise UnknownSuiteError(f"unknown suite(s): {', '.join(unknown)}; known: {', '.join(SUITES)}")
    return names


# ----------------------------------------------------------------------
# Run report
# ----------------------------------------------------------------------

@dataclass
class RunReport:
    config: SuiteConfig
    reports: List[VerificationReport] = field(default_factory=list)
    timings: Dict[str, float] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.reports)

    def constants(self) -> Dict[str, str]:
        out: Dict[str, str] = {}
        for r in self.reports:
            for k, v in r.constants.items():
                out[f"{r.name}.{k}"] = v
        return out

    def to_dict(self) -> dict:
        return {
            "config": self.config.model_dump(exclude={"report", "report_dir"}),
            "passed": self.passed,
            "conventions": LEDGER.snapshot(),
            "constants": self.constants(),
            "suites": [r.to_dict() for r in self.reports],
        }


def run_suite(config: SuiteConfig, progress: Optional[Callable[[str], None]] = None) -> RunReport:
    """Runs the named suite(s) in registry order."""
    run = RunReport(config)
    for name in resolve_suites(config.suite):
        if progress:
            progress(name)
        start = time.perf_counter()
        report = SUITES[name](config)
        run.timings[name] = time.perf_counter() - start
        logger.debug("suite %s: passed=%s in %.2fs", name, report.passed, run.timings[name])
        run.reports.append(report)
    return run
