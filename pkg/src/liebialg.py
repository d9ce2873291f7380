"""
Lie Bialgebras from Structure Constants
=======================================
Finite-dimensional Lie algebras given by sparse structure constants,
triangular r-matrices, the induced cobracket, the dual algebra and the
4-dimensional double of ax+b.  Every identity is checked, never assumed.

Usage:
    from liebialg import load_algebra, axb_r_matrix, cobracket, basis_elt

    s = load_algebra("axb")
    r = axb_r_matrix(s)
    cobracket(r, basis_elt(s, "H"))     # → -2 H∧E

Design decisions:
    - Wedge convention X∧Y := X⊗Y − Y⊗X, no 1/2.  δ(H) = −2 H∧E is read in
      this convention.
    - The cobracket of a triangular r is δ(X) = [r, X⊗1 + 1⊗X], i.e.
      −(ad_X⊗1 + 1⊗ad_X) r.
    - Fixtures are JSON documents under data/fixtures/ listing the basis and
      sparse (i, j, k, c^k_ij) triples by label.
"""

import json
import logging
import os
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, product
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from exprcas import TwistlabError
from verification import VerificationReport

logger = logging.getLogger(__name__)

FIXTURE_DIR = os.path.join(os.path.dirname(__file__), "data", "fixtures")

FLAT_H = "♭H"
FLAT_E = "♭E"


class BasisMismatchError(TwistlabError):
    """Elements or tables built over different bases."""


Index = Tuple[int, ...]


def _frac(value) -> Fraction:
    return value if isinstance(value, Fraction) else Fraction(value)


@dataclass(frozen=True)
class LieAlgebraData:
    """
    Lie algebra by structure constants: [X_i, X_j] = Σ_k c^k_ij X_k.

    `constants[(i, j)]` maps k -> c^k_ij and is stored for both orders of
    (i, j).  Zero entries are dropped.
    """
    name: str
    basis: Tuple[str, ...]
    constants: Mapping[Tuple[int, int], Mapping[int, Fraction]] = field(default_factory=dict)

    @classmethod
    def from_triples(cls, name: str, basis: Sequence[str],
                     triples: Iterable[Tuple[str, str, str, object]]) -> "LieAlgebraData":
        """Build from (X_i, X_j, X_k, c) label triples; [X_j, X_i] is filled in."""
        basis = tuple(basis)
        if len(set(basis)) != len(basis):
            raise BasisMismatchError(f"duplicate basis labels in {basis}")
        idx = {b: n for n, b in enumerate(basis)}
        table: Dict[Tuple[int, int], Dict[int, Fraction]] = {}
        try:
            for xi, xj, xk, c in triples:
                i, j, k = idx[xi], idx[xj], idx[xk]
                c = _frac(c)
                table.setdefault((i, j), {})[k] = table.get((i, j), {}).get(k, 0) + c
                table.setdefault((j, i), {})[k] = table.get((j, i), {}).get(k, 0) - c
        except KeyError as e:
            raise BasisMismatchError(f"unknown label {e} in {name}") from e
        clean = {key: {k: v for k, v in row.items() if v} for key, row in table.items()}
        return cls(name, basis, {key: row for key, row in clean.items() if row})

    @property
    def dim(self) -> int:
        return len(self.basis)

    def index(self, label: str) -> int:
        try:
            return self.basis.index(label)
        except ValueError:
            raise BasisMismatchError(f"{label} is not a basis element of {self.name}")

    def c(self, i: int, j: int) -> Mapping[int, Fraction]:
        return self.constants.get((i, j), {})

    def triples(self) -> List[Tuple[str, str, str, Fraction]]:
        """Sparse i<j listing, the fixture format."""
        out = []
        for (i, j), row in sorted(self.constants.items()):
            if i < j:
                for k, v in sorted(row.items()):
                    out.append((self.basis[i], self.basis[j], self.basis[k], v))
        return out


@dataclass(frozen=True)
class TensorElt:
    """Element of g^{⊗k}: exact coefficients over k-tuples of basis indices."""
    basis: Tuple[str, ...]
    degree: int
    coeffs: Mapping[Index, Fraction] = field(default_factory=dict)

    @classmethod
    def make(cls, basis: Sequence[str], degree: int, coeffs: Mapping[Index, object]) -> "TensorElt":
        clean = {tuple(k): _frac(v) for k, v in coeffs.items() if v}
        for k in clean:
            if len(k) != degree:
                raise BasisMismatchError(f"index {k} has wrong degree for a {degree}-tensor")
        return cls(tuple(basis), degree, clean)

    def _check(self, other: "TensorElt") -> None:
        if self.basis != other.basis or self.degree != other.degree:
            raise BasisMismatchError("tensors over different bases or degrees")

    def __add__(self, other: "TensorElt") -> "TensorElt":
        self._check(other)
        out = dict(self.coeffs)
        for k, v in other.coeffs.items():
            out[k] = out.get(k, 0) + v
        return TensorElt.make(self.basis, self.degree, out)

    def __neg__(self) -> "TensorElt":
        return self.scale(-1)

    def __sub__(self, other: "TensorElt") -> "TensorElt":
        return self + (-other)

    def scale(self, c) -> "TensorElt":
        c = _frac(c)
        return TensorElt.make(self.basis, self.degree, {k: c * v for k, v in self.coeffs.items()})

    def tensor(self, other: "TensorElt") -> "TensorElt":
        if self.basis != other.basis:
            raise BasisMismatchError("tensors over different bases")
        out = {a + b: u * v for a, u in self.coeffs.items() for b, v in other.coeffs.items()}
        return TensorElt.make(self.basis, self.degree + other.degree, out)

    def permute(self, perm: Sequence[int]) -> "TensorElt":
        """Leg permutation: output leg p carries input leg perm[p]."""
        out = {tuple(k[p] for p in perm): v for k, v in self.coeffs.items()}
        return TensorElt.make(self.basis, self.degree, out)

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_alternating(self) -> bool:
        for k, v in self.coeffs.items():
            for a, b in combinations(range(self.degree), 2):
                swapped = list(k)
                swapped[a], swapped[b] = swapped[b], swapped[a]
                if self.coeffs.get(tuple(swapped), 0) != -v:
                    return False
        return True

    def component(self, *labels: str) -> Fraction:
        return self.coeffs.get(tuple(self.basis.index(l) for l in labels), Fraction(0))

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for k, v in sorted(self.coeffs.items()):
            word = "⊗".join(self.basis[i] for i in k) if k else "1"
            parts.append(f"{v}*{word}")
        return " + ".join(parts)


RMatrix = TensorElt


# ----------------------------------------------------------------------
# Constructors
# ----------------------------------------------------------------------

def basis_elt(g: LieAlgebraData, label: str) -> TensorElt:
    return TensorElt.make(g.basis, 1, {(g.index(label),): 1})


def vector(g: LieAlgebraData, coeffs: Mapping[str, object]) -> TensorElt:
    return TensorElt.make(g.basis, 1, {(g.index(l),): c for l, c in coeffs.items()})


def wedge(x: TensorElt, y: TensorElt) -> TensorElt:
    """X∧Y := X⊗Y − Y⊗X."""
    return x.tensor(y) - y.tensor(x)


def load_algebra(name: str, fixture_dir: Optional[str] = None) -> LieAlgebraData:
    """Read a structure-constant fixture (`axb`, `axb_dual`, `axb_double`)."""
    path = os.path.join(fixture_dir or FIXTURE_DIR, f"{name}.json")
    try:
        with open(path, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
    except FileNotFoundError as e:
        raise BasisMismatchError(f"no structure-constant fixture named {name!r}") from e
    triples = [(i, j, k, Fraction(c)) for i, j, k, c in doc["brackets"]]
    g = LieAlgebraData.from_triples(doc.get("name", name), doc["basis"], triples)
    logger.debug("loaded %s: basis=%s, %d brackets", g.name, g.basis, len(triples))
    return g


def axb_r_matrix(g: LieAlgebraData) -> RMatrix:
    """r = H∧E over any algebra containing H and E."""
    return wedge(basis_elt(g, "H"), basis_elt(g, "E"))


# ----------------------------------------------------------------------
# Brackets and checks
# ----------------------------------------------------------------------

def bracket(g: LieAlgebraData, x: TensorElt, y: TensorElt) -> TensorElt:
    if x.basis != g.basis or y.basis != g.basis:
        raise BasisMismatchError(f"bracket arguments are not over {g.name}")
    if x.degree != 1 or y.degree != 1:
        raise BasisMismatchError("bracket takes degree-1 elements")
    out: Dict[Index, Fraction] = {}
    for (i,), u in x.coeffs.items():
        for (j,), v in y.coeffs.items():
            for k, c in g.c(i, j).items():
                out[(k,)] = out.get((k,), 0) + u * v * c
    return TensorElt.make(g.basis, 1, out)


def ad_tensor(g: LieAlgebraData, x: TensorElt, t: TensorElt) -> TensorElt:
    """Adjoint action of X on g^{⊗k}, as a derivation on every leg."""
    out: Dict[Index, Fraction] = {}
    for (i,), u in x.coeffs.items():
        for key, v in t.coeffs.items():
            for leg in range(t.degree):
                for k, c in g.c(i, key[leg]).items():
                    new = key[:leg] + (k,) + key[leg + 1:]
                    out[new] = out.get(new, 0) + u * v * c
    return TensorElt.make(g.basis, t.degree, out)


def jacobiator(g: LieAlgebraData, i: int, j: int, k: int) -> TensorElt:
    x, y, z = (TensorElt.make(g.basis, 1, {(n,): 1}) for n in (i, j, k))
    return (bracket(g, x, bracket(g, y, z)) + bracket(g, y, bracket(g, z, x))
            + bracket(g, z, bracket(g, x, y)))


def jacobi_check(g: LieAlgebraData) -> VerificationReport:
    """Antisymmetry of the table plus the Jacobiator of every basis triple."""
    report = VerificationReport(f"jacobi:{g.name}")
    for i, j in product(range(g.dim), repeat=2):
        row, col = g.c(i, j), g.c(j, i)
        if any(row.get(k, 0) != -col.get(k, 0) for k in set(row) | set(col)):
            report.add(f"antisymmetry[{g.basis[i]},{g.basis[j]}]", False)
    for i, j, k in combinations(range(g.dim), 3):
        jac = jacobiator(g, i, j, k)
        label = f"jacobi[{g.basis[i]},{g.basis[j]},{g.basis[k]}]"
        report.add(label, jac.is_zero(), detail="" if jac.is_zero() else str(jac))
    if not report.checks:
        report.add("jacobi[trivial]", True, detail="fewer than three basis elements")
    return report


def schouten_cybe(g: LieAlgebraData, r: RMatrix) -> TensorElt:
    """
    Algebraic Schouten square of r written as the classical Yang-Baxter
    expression [r12, r13] + [r12, r23] + [r13, r23] in g^{⊗3}.
    """
    out: Dict[Index, Fraction] = {}

    def acc(key: Index, v: Fraction) -> None:
        out[key] = out.get(key, 0) + v

    for (i, j), u in r.coeffs.items():
        for (k, l), v in r.coeffs.items():
            for m, c in g.c(i, k).items():
                acc((m, j, l), u * v * c)
            for m, c in g.c(j, k).items():
                acc((i, m, l), u * v * c)
            for m, c in g.c(j, l).items():
                acc((i, k, m), u * v * c)
    return TensorElt.make(g.basis, 3, out)


def cobracket(g: LieAlgebraData, r: RMatrix, x: TensorElt) -> TensorElt:
    """δ(X) = [r, X⊗1 + 1⊗X] = −(ad_X⊗1 + 1⊗ad_X) r."""
    if r.basis != g.basis:
        raise BasisMismatchError("r-matrix is not over this algebra")
    return -ad_tensor(g, x, r)


def cobracket_table(g: LieAlgebraData, r: RMatrix) -> Dict[str, TensorElt]:
    return {label: cobracket(g, r, basis_elt(g, label)) for label in g.basis}


def cocycle_check(g: LieAlgebraData, r: RMatrix) -> VerificationReport:
    """δ([X,Y]) = X·δ(Y) − Y·δ(X) on all basis pairs."""
    report = VerificationReport(f"cocycle:{g.name}")
    for i, j in combinations(range(g.dim), 2):
        x, y = basis_elt(g, g.basis[i]), basis_elt(g, g.basis[j])
        lhs = cobracket(g, r, bracket(g, x, y))
        rhs = ad_tensor(g, x, cobracket(g, r, y)) - ad_tensor(g, y, cobracket(g, r, x))
        report.add(f"cocycle[{g.basis[i]},{g.basis[j]}]", (lhs - rhs).is_zero())
    return report


def dual_algebra(g: LieAlgebraData, delta: Mapping[str, TensorElt],
                 labels: Optional[Sequence[str]] = None, name: Optional[str] = None) -> LieAlgebraData:
    """
    Dualize a cobracket: [ξ_i, ξ_j] = Σ_k δ(X_k)^{ij} ξ_k.

    The result is only a Lie algebra when δ satisfies co-Jacobi; run
    jacobi_check on it (dual_check does both).
    """
    labels = tuple(labels) if labels else tuple(f"{b}*" for b in g.basis)
    if len(labels) != g.dim or set(delta) - set(g.basis):
        raise BasisMismatchError("cobracket table does not match the algebra")
    triples = []
    for k_label, t in delta.items():
        if t.degree != 2 or t.basis != g.basis:
            raise BasisMismatchError(f"δ({k_label}) is not a 2-tensor over {g.name}")
        if not t.is_alternating():
            raise BasisMismatchError(f"δ({k_label}) is not alternating")
        k = g.index(k_label)
        for (i, j), c in t.coeffs.items():
            if i < j:
                triples.append((labels[i], labels[j], labels[k], c))
    return LieAlgebraData.from_triples(name or f"{g.name}*", labels, triples)


def bracket_as_cobracket(g: LieAlgebraData, dual_labels: Optional[Sequence[str]] = None) -> Tuple[LieAlgebraData, Dict[str, TensorElt]]:
    """
    The cobracket on g* obtained by dualizing g's bracket:
    δ'(ξ_k)^{ij} = c^k_ij.  Returns (abelian carrier on g*, table).
    """
    dual_labels = tuple(dual_labels) if dual_labels else tuple(f"{b}*" for b in g.basis)
    carrier = LieAlgebraData(f"{g.name}*", dual_labels, {})
    table = {}
    for k, label in enumerate(dual_labels):
        coeffs = {}
        for (i, j), row in g.constants.items():
            if k in row:
                coeffs[(i, j)] = row[k]
        table[label] = TensorElt.make(dual_labels, 2, coeffs)
    return carrier, table


def same_constants(g: LieAlgebraData, h: LieAlgebraData) -> bool:
    """Equal structure constants index-by-index (labels ignored)."""
    return g.dim == h.dim and dict(g.constants) == dict(h.constants)


def dual_check(g: LieAlgebraData, r: RMatrix) -> VerificationReport:
    report = VerificationReport(f"dual:{g.name}")
    gstar = dual_algebra(g, cobracket_table(g, r))
    report.extend(jacobi_check(gstar), "co-jacobi")
    carrier, table = bracket_as_cobracket(g)
    back = dual_algebra(carrier, table, labels=g.basis, name=g.name)
    report.add("re-dualization", same_constants(back, g))
    return report


# ----------------------------------------------------------------------
# ax+b specifics: musical map, double, Heisenberg subalgebra
# ----------------------------------------------------------------------

def omega_axb(g: LieAlgebraData) -> Dict[Tuple[int, int], Fraction]:
    """Bilinear symplectic form with ω(H, E) = 1."""
    h, e = g.index("H"), g.index("E")
    return {(h, e): Fraction(1), (e, h): Fraction(-1)}


def flat_map(g: LieAlgebraData, gstar: LieAlgebraData, x: TensorElt) -> TensorElt:
    """♭X := ι_X ω, expanded in the dual basis: (♭X)_j = ω(X, X_j)."""
    omega = omega_axb(g)
    out: Dict[Index, Fraction] = {}
    for (i,), u in x.coeffs.items():
        for j in range(g.dim):
            w = omega.get((i, j), 0)
            if w:
                out[(j,)] = out.get((j,), 0) + u * w
    return TensorElt.make(gstar.basis, 1, out)


def flat_check(g: LieAlgebraData, gstar: LieAlgebraData) -> VerificationReport:
    """♭[X,Y] = [♭X, ♭Y] on the basis, plus the values ♭H = E*, ♭E = −H*."""
    report = VerificationReport("flat")
    h, e = basis_elt(g, "H"), basis_elt(g, "E")
    report.add("flat(H) = E*", flat_map(g, gstar, h) == basis_elt(gstar, "E*"))
    report.add("flat(E) = -H*", flat_map(g, gstar, e) == -basis_elt(gstar, "H*"))
    for i, j in combinations(range(g.dim), 2):
        x, y = basis_elt(g, g.basis[i]), basis_elt(g, g.basis[j])
        lhs = flat_map(g, gstar, bracket(g, x, y))
        rhs = bracket(gstar, flat_map(g, gstar, x), flat_map(g, gstar, y))
        report.add(f"flat[{g.basis[i]},{g.basis[j]}]", lhs == rhs)
    return report


def build_double_axb(fixture_dir: Optional[str] = None) -> LieAlgebraData:
    """The double on (H, E, ♭H, ♭E); refuses a table failing Jacobi."""
    d = load_algebra("axb_double", fixture_dir)
    report = jacobi_check(d)
    if not report.passed:
        raise BasisMismatchError(f"double table fails Jacobi: {report.failed_names()}")
    return d


def heisenberg_basis(d: LieAlgebraData) -> Dict[str, TensorElt]:
    """E, F := ♭H − H, Z := 2E − 2♭E inside the double."""
    e = basis_elt(d, "E")
    f = basis_elt(d, FLAT_H) - basis_elt(d, "H")
    z = e.scale(2) - basis_elt(d, FLAT_E).scale(2)
    return {"E": e, "F": f, "Z": z}


def _proportionality(x: TensorElt, y: TensorElt) -> Optional[Fraction]:
    """λ with x = λ·y, or None."""
    if y.is_zero():
        return Fraction(0) if x.is_zero() else None
    key = next(iter(y.coeffs))
    lam = x.coeffs.get(key, Fraction(0)) / y.coeffs[key]
    return lam if (x - y.scale(lam)).is_zero() else None


def heisenberg_check(d: LieAlgebraData) -> VerificationReport:
    """
    Derived-algebra table [E,F] = Z, [E,Z] = [F,Z] = 0, and the scale λ of Z
    for which [v, v'] = Ω(v, v')·λZ with Ω(E, F) = 1.
    """
    report = VerificationReport("heisenberg")
    hb = heisenberg_basis(d)
    e, f, z = hb["E"], hb["F"], hb["Z"]
    ef = bracket(d, e, f)
    report.add("[E,F] = Z", ef == z, detail=str(ef))
    report.add("[E,Z] = 0", bracket(d, e, z).is_zero())
    report.add("[F,Z] = 0", bracket(d, f, z).is_zero())
    lam = _proportionality(ef, z)
    report.add("z-scale consistent with Omega(E,F) = 1", lam is not None and lam != 0)
    report.constants["z_scale"] = str(lam)
    return report


def rho_matrix(d: LieAlgebraData) -> List[List[Fraction]]:
    """ad_H restricted to span(E, F, Z), columns are images of E, F, Z."""
    hb = heisenberg_basis(d)
    h = basis_elt(d, "H")
    cols = []
    for name in ("E", "F", "Z"):
        cols.append(heisenberg_coordinates(d, bracket(d, h, hb[name])))
    return [[cols[c][r] for c in range(3)] for r in range(3)]


def heisenberg_coordinates(d: LieAlgebraData, x: TensorElt) -> List[Fraction]:
    """(α, β, γ) with x = αE + βF + γZ; BasisMismatchError outside the span."""
    hb = heisenberg_basis(d)
    beta = x.component(FLAT_H)
    gamma = -x.component(FLAT_E) / 2
    alpha = x.component("E") - 2 * gamma
    rebuilt = hb["E"].scale(alpha) + hb["F"].scale(beta) + hb["Z"].scale(gamma)
    if rebuilt != x:
        raise BasisMismatchError(f"{x} is not in the derived algebra")
    return [alpha, beta, gamma]


def rho_check(d: LieAlgebraData) -> VerificationReport:
    """ρ(H) = diag(2, −2, 0) and it is a derivation of the Heisenberg table."""
    report = VerificationReport("rho")
    rho = rho_matrix(d)
    expected = [[2, 0, 0], [0, -2, 0], [0, 0, 0]]
    report.add("rho(H) = diag(2,-2,0)", rho == [[Fraction(v) for v in row] for row in expected],
               detail=str([[str(v) for v in row] for row in rho]))
    hb = heisenberg_basis(d)
    h = basis_elt(d, "H")
    for a, b in combinations(["E", "F", "Z"], 2):
        lhs = bracket(d, h, bracket(d, hb[a], hb[b]))
        rhs = bracket(d, bracket(d, h, hb[a]), hb[b]) + bracket(d, hb[a], bracket(d, h, hb[b]))
        report.add(f"derivation[{a},{b}]", lhs == rhs)
    return report
