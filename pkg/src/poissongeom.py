"""
Chart Differential Geometry
===========================
Vector fields, differential forms and multivectors on a single coordinate
chart, with Scalar (exprcas) coefficients, and the bracket calculus used by
the momentum-map and dressing checks: Lie, Schouten, Koszul, Poisson, plus
pullbacks and pushforwards along chart maps.

Storage:
    Multivectors and forms are Grassmann polynomials: a coefficient per
    strictly increasing index tuple.  π = 2y² ∂x∧∂y is {(0, 1): 2y²}.

Design decisions:
    - One convention ledger (LEDGER below) fixes every sign choice once; the
      checks downstream report identities relative to it.
    - The Lie derivative of one-forms uses the component formula
      (L_V b)_j = V^i ∂_i b_j + b_i ∂_j V^i, which agrees with Cartan's.
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, List, Mapping, Optional, Tuple, Union

from exprcas import (
    ONE,
    ZERO,
    Scalar,
    TwistlabError,
    differentiate,
    parse,
)
from verification import VerificationReport

logger = logging.getLogger(__name__)


class ChartMismatchError(TwistlabError):
    """Objects living on different charts were combined."""


@dataclass(frozen=True)
class ConventionLedger:
    """Every sign convention the geometry and the suites depend on."""
    wedge: str = "X∧Y := X⊗Y − Y⊗X (no 1/2)"
    sharp_slot: str = "(π♯α)^j = Σ_i π^{ji} α_i"
    poisson_bracket: str = "{f,g} = Σ_{i<j} π^{ij}(∂_i f ∂_j g − ∂_j f ∂_i g)"
    koszul: str = "[a,b]_π = L_{π♯a} b − L_{π♯b} a − d⟨π♯a, b⟩"
    fundamental_fields: str = "ℓ_X = d/dt|0 of the action along exp(tX); X ↦ ℓ_X is an anti-homomorphism"
    pi_from_fields: str = "π = Σ_{i<j} r^{ij} X_i ∧ X_j"
    udf_leg_order: str = "right actions use F, left actions use F⁻¹; PBW words act first letter first"

    def snapshot(self) -> Dict[str, str]:
        return dict(self.__dict__)


LEDGER = ConventionLedger()


@dataclass(frozen=True)
class Chart:
    """Ordered coordinates of a local model."""
    name: str
    coords: Tuple[str, ...]

    def __post_init__(self):
        if not self.coords:
            raise ChartMismatchError(f"chart {self.name} has no coordinates")
        if len(set(self.coords)) != len(self.coords):
            raise ChartMismatchError(f"duplicate coordinates in chart {self.name}")

    @property
    def dim(self) -> int:
        return len(self.coords)

    def index(self, coord: str) -> int:
        try:
            return self.coords.index(coord)
        except ValueError:
            raise ChartMismatchError(f"{coord} is not a coordinate of {self.name}")

    def coord(self, name: str) -> Scalar:
        self.index(name)
        return Scalar.coord(name)

    def parse(self, text: str) -> Scalar:
        return parse(text, self.coords)

    def d(self, f: Scalar, coord: Union[int, str]) -> Scalar:
        name = self.coords[coord] if isinstance(coord, int) else coord
        return differentiate(f, name, self.coords)


# ----------------------------------------------------------------------
# Grassmann storage
# ----------------------------------------------------------------------

Index = Tuple[int, ...]


def _merge_sign(a: Index, b: Index) -> Tuple[int, Optional[Index]]:
    """Sign of the sort permutation of a+b, or (0, None) on repetition."""
    seq = list(a + b)
    if len(set(seq)) != len(seq):
        return 0, None
    inversions = sum(1 for i in range(len(seq)) for j in range(i + 1, len(seq)) if seq[i] > seq[j])
    return (-1 if inversions % 2 else 1), tuple(sorted(seq))


def _clean(coeffs: Mapping[Index, Scalar]) -> Dict[Index, Scalar]:
    return {k: v for k, v in coeffs.items() if not v.is_zero()}


@dataclass(frozen=True, eq=False)
class _Grassmann:
    chart: Chart
    degree: int
    coeffs: Mapping[Index, Scalar] = field(default_factory=dict)

    def _like(self, degree: int, coeffs: Mapping[Index, Scalar]):
        return type(self)(self.chart, degree, _clean(coeffs))

    def _same(self, other: "_Grassmann") -> None:
        if not isinstance(other, type(self)) or other.chart != self.chart:
            raise ChartMismatchError(f"cannot combine objects on {self.chart.name} and "
                                     f"{getattr(other, 'chart', None)}")

    def __getitem__(self, key: Union[Index, str, Tuple[str, ...]]) -> Scalar:
        """Coefficient by sorted index tuple or coordinate names (sign-adjusted)."""
        if isinstance(key, str):
            key = (key,)
        idx = tuple(self.chart.index(k) if isinstance(k, str) else k for k in key)
        sign, sorted_idx = _merge_sign(idx, ())
        if sign == 0:
            return ZERO
        value = self.coeffs.get(sorted_idx, ZERO)
        return value if sign > 0 else -value

    def __add__(self, other):
        self._same(other)
        if other.degree != self.degree:
            raise ChartMismatchError("degree mismatch")
        out = dict(self.coeffs)
        for k, v in other.coeffs.items():
            out[k] = out.get(k, ZERO) + v
        return self._like(self.degree, out)

    def __neg__(self):
        return self._like(self.degree, {k: -v for k, v in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, f: Union[Scalar, int]):
        f = f if isinstance(f, Scalar) else Scalar(f)
        return self._like(self.degree, {k: f * v for k, v in self.coeffs.items()})

    def __rmul__(self, f):
        return self.scale(f)

    def wedge(self, other):
        self._same(other)
        out: Dict[Index, Scalar] = {}
        for a, u in self.coeffs.items():
            for b, v in other.coeffs.items():
                sign, key = _merge_sign(a, b)
                if sign:
                    out[key] = out.get(key, ZERO) + (u * v if sign > 0 else -(u * v))
        return self._like(self.degree + other.degree, out)

    def __xor__(self, other):
        return self.wedge(other)

    def d_coord(self, i: int):
        """Componentwise ∂/∂x_i."""
        return self._like(self.degree, {k: self.chart.d(v, i) for k, v in self.coeffs.items()})

    def subs(self, mapping: Mapping[str, Scalar]):
        return self._like(self.degree, {k: v.subs(mapping) for k, v in self.coeffs.items()})

    def is_zero(self) -> bool:
        return all(v.is_zero() for v in self.coeffs.values())

    def __eq__(self, other) -> bool:
        if not isinstance(other, _Grassmann) or type(other) is not type(self):
            return NotImplemented
        if other.chart != self.chart or other.degree != self.degree:
            return False
        return (self - other).is_zero()

    __hash__ = None

    def _basis_symbol(self) -> str:
        raise NotImplementedError

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        sym = self._basis_symbol()
        parts = []
        for k, v in sorted(self.coeffs.items()):
            basis = "∧".join(f"{sym}{self.chart.coords[i]}" for i in k)
            parts.append(f"({v})" + (f"*{basis}" if basis else ""))
        return " + ".join(parts)

    __repr__ = __str__


class Multivector(_Grassmann):
    """Degree-k multivector; degree 1 is a vector field."""

    def _basis_symbol(self) -> str:
        return "∂"

    def component(self, coord: Union[int, str]) -> Scalar:
        i = self.chart.index(coord) if isinstance(coord, str) else coord
        return self.coeffs.get((i,), ZERO)

    def __call__(self, f: Scalar) -> Scalar:
        """Directional derivative of a function along a vector field."""
        if self.degree != 1:
            raise ChartMismatchError("only vector fields act on functions")
        total = ZERO
        for (i,), v in self.coeffs.items():
            total = total + v * self.chart.d(f, i)
        return total


class Form(_Grassmann):
    """Degree-k differential form."""

    def _basis_symbol(self) -> str:
        return "d"

    def component(self, coord: Union[int, str]) -> Scalar:
        i = self.chart.index(coord) if isinstance(coord, str) else coord
        return self.coeffs.get((i,), ZERO)


VectorField = Multivector
OneForm = Form


def vector_field(chart: Chart, components: Mapping[str, Union[Scalar, str, int]]) -> Multivector:
    return Multivector(chart, 1, _clean({(chart.index(c),): _to_scalar(chart, v)
                                         for c, v in components.items()}))


def one_form(chart: Chart, components: Mapping[str, Union[Scalar, str, int]]) -> Form:
    return Form(chart, 1, _clean({(chart.index(c),): _to_scalar(chart, v)
                                  for c, v in components.items()}))


def bivector(chart: Chart, a: str, b: str, coeff: Union[Scalar, str, int]) -> Multivector:
    """coeff·∂a∧∂b."""
    i, j = chart.index(a), chart.index(b)
    sign, key = _merge_sign((i,), (j,))
    value = _to_scalar(chart, coeff)
    if not sign:
        return Multivector(chart, 2, {})
    return Multivector(chart, 2, _clean({key: value if sign > 0 else -value}))


def function_form(chart: Chart, f: Scalar) -> Form:
    return Form(chart, 0, _clean({(): f}))


def zero_multivector(chart: Chart, degree: int) -> Multivector:
    return Multivector(chart, degree, {})


def _to_scalar(chart: Chart, v: Union[Scalar, str, int]) -> Scalar:
    if isinstance(v, Scalar):
        return v
    if isinstance(v, str):
        return chart.parse(v)
    return Scalar(v)


def _check_chart(*objs) -> Chart:
    chart = objs[0].chart
    for o in objs[1:]:
        if o.chart != chart:
            raise ChartMismatchError(f"{chart.name} vs {o.chart.name}")
    return chart


# ----------------------------------------------------------------------
# Brackets
# ----------------------------------------------------------------------

def lie_bracket_vf(X: Multivector, Y: Multivector) -> Multivector:
    """[X,Y]^j = X(Y^j) − Y(X^j)."""
    chart = _check_chart(X, Y)
    comps = {}
    for j in range(chart.dim):
        comps[(j,)] = X(Y.component(j)) - Y(X.component(j))
    return Multivector(chart, 1, _clean(comps))


def pi_component(pi: Multivector, i: int, j: int) -> Scalar:
    """π^{ij} with π^{ji} = −π^{ij}."""
    if i == j:
        return ZERO
    if i < j:
        return pi.coeffs.get((i, j), ZERO)
    return -pi.coeffs.get((j, i), ZERO)


def sharp(pi: Multivector, alpha: Form) -> Multivector:
    """(π♯α)^j = Σ_i π^{ji} α_i."""
    chart = _check_chart(pi, alpha)
    if pi.degree != 2 or alpha.degree != 1:
        raise ChartMismatchError("sharp takes a bivector and a one-form")
    comps = {}
    for j in range(chart.dim):
        total = ZERO
        for (i,), a in alpha.coeffs.items():
            total = total + pi_component(pi, j, i) * a
        comps[(j,)] = total
    return Multivector(chart, 1, _clean(comps))


def pair(alpha: Form, X: Multivector) -> Scalar:
    """⟨α, X⟩ for a one-form and a vector field."""
    _check_chart(alpha, X)
    total = ZERO
    for (i,), a in alpha.coeffs.items():
        total = total + a * X.component(i)
    return total


def de_rham_d(omega: Union[Form, Scalar], chart: Optional[Chart] = None) -> Form:
    """Exterior derivative; a bare Scalar needs its chart."""
    if isinstance(omega, Scalar):
        if chart is None:
            raise ChartMismatchError("d of a function needs a chart")
        omega = function_form(chart, omega)
    chart = omega.chart
    out: Dict[Index, Scalar] = {}
    for key, v in omega.coeffs.items():
        for i in range(chart.dim):
            sign, merged = _merge_sign((i,), key)
            if sign:
                dv = chart.d(v, i)
                out[merged] = out.get(merged, ZERO) + (dv if sign > 0 else -dv)
    return Form(chart, omega.degree + 1, _clean(out))


def lie_derivative_form(V: Multivector, b: Form) -> Form:
    """(L_V b)_j = V^i ∂_i b_j + b_i ∂_j V^i."""
    chart = _check_chart(V, b)
    if b.degree != 1:
        raise ChartMismatchError("lie_derivative_form takes a one-form")
    comps = {}
    for j in range(chart.dim):
        total = V(b.component(j))
        for (i,), bi in b.coeffs.items():
            total = total + bi * chart.d(V.component(i), j)
        comps[(j,)] = total
    return Form(chart, 1, _clean(comps))


def koszul_bracket(pi: Multivector, a: Form, b: Form) -> Form:
    """[a,b]_π = L_{π♯a} b − L_{π♯b} a − d⟨π♯a, b⟩."""
    chart = _check_chart(pi, a, b)
    pa, pb = sharp(pi, a), sharp(pi, b)
    return (lie_derivative_form(pa, b) - lie_derivative_form(pb, a)
            - de_rham_d(pair(b, pa), chart))


def poisson_bracket(pi: Multivector, f: Scalar, g: Scalar) -> Scalar:
    chart = pi.chart
    total = ZERO
    for (i, j), p in pi.coeffs.items():
        total = total + p * (chart.d(f, i) * chart.d(g, j) - chart.d(f, j) * chart.d(g, i))
    return total


def _theta_left(P: Multivector, i: int) -> Multivector:
    """Left derivative ∂/∂θ_i: sign (−1)^position."""
    out = {}
    for k, v in P.coeffs.items():
        if i in k:
            pos = k.index(i)
            out[k[:pos] + k[pos + 1:]] = v if pos % 2 == 0 else -v
    return Multivector(P.chart, P.degree - 1, _clean(out))


def _theta_right(P: Multivector, i: int) -> Multivector:
    """Right derivative: sign (−1)^(len − 1 − position)."""
    out = {}
    for k, v in P.coeffs.items():
        if i in k:
            pos = k.index(i)
            out[k[:pos] + k[pos + 1:]] = v if (len(k) - 1 - pos) % 2 == 0 else -v
    return Multivector(P.chart, P.degree - 1, _clean(out))


def schouten_bracket(P: Multivector, Q: Multivector) -> Multivector:
    """
    [P,Q] = Σ_i (P ∂⃖/∂θ_i) ∧ ∂_{x_i}Q − ∂_{x_i}P ∧ (∂⃗/∂θ_i Q).

    Degree 0 multivectors are functions; [X, f] = X(f).
    """
    chart = _check_chart(P, Q)
    total = zero_multivector(chart, P.degree + Q.degree - 1) if P.degree + Q.degree >= 1 else None
    if total is None:
        return zero_multivector(chart, 0)
    for i in range(chart.dim):
        total = total + _theta_right(P, i).wedge(Q.d_coord(i))
        total = total - P.d_coord(i).wedge(_theta_left(Q, i))
    return total


def as_multivector(chart: Chart, f: Scalar) -> Multivector:
    return Multivector(chart, 0, _clean({(): f}))


def wedge_sharp(pi: Multivector, omega: Form) -> Multivector:
    """∧^k π♯ applied to a k-form."""
    chart = _check_chart(pi, omega)
    images = [sharp(pi, one_form(chart, {c: 1})) for c in chart.coords]
    total = zero_multivector(chart, omega.degree)
    for key, v in omega.coeffs.items():
        term = as_multivector(chart, ONE)
        for i in key:
            term = term.wedge(images[i])
        total = total + term.scale(v)
    return total


def sharp_compat_check(pi: Multivector, xi: Form, label: str = "") -> VerificationReport:
    """[π, π♯ξ] = ∧²π♯(dξ)."""
    report = VerificationReport(f"sharp-compat{':' + label if label else ''}")
    lhs = schouten_bracket(pi, sharp(pi, xi))
    rhs = wedge_sharp(pi, de_rham_d(xi))
    report.add("[pi, pi#xi] = wedge2 pi#(d xi)", lhs == rhs, detail=f"lhs={lhs}; rhs={rhs}")
    return report


def jacobi_tensor(pi: Multivector) -> Multivector:
    return schouten_bracket(pi, pi)


def bivector_from_fields(coefficients: Mapping[Tuple[str, str], object],
                         fields: Mapping[str, Multivector]) -> Multivector:
    """Σ_{i<j} r^{ij} X_i∧X_j from r components keyed by label pairs."""
    first = next(iter(fields.values()))
    total = zero_multivector(first.chart, 2)
    for (a, b), c in coefficients.items():
        total = total + fields[a].wedge(fields[b]).scale(Scalar(c))
    return total


# ----------------------------------------------------------------------
# Chart maps
# ----------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class ChartMap:
    """
    Smooth map given by target-coordinate expressions over the source chart.

    `inverse` (optional) expresses the source coordinates over the target
    chart; it is only trusted after verify_inverse.
    """
    source: Chart
    target: Chart
    components: Tuple[Scalar, ...]
    inverse: Optional[Tuple[Scalar, ...]] = None
    name: str = ""

    def __post_init__(self):
        if len(self.components) != self.target.dim:
            raise ChartMismatchError("one expression per target coordinate is required")
        if self.inverse is not None and len(self.inverse) != self.source.dim:
            raise ChartMismatchError("inverse needs one expression per source coordinate")

    def substitution(self) -> Dict[str, Scalar]:
        return dict(zip(self.target.coords, self.components))

    def inverse_substitution(self) -> Dict[str, Scalar]:
        if self.inverse is None:
            raise ChartMismatchError(f"chart map {self.name or self.source.name} has no inverse")
        return dict(zip(self.source.coords, self.inverse))

    def jacobian(self) -> List[List[Scalar]]:
        """J[a][i] = ∂J_a/∂x_i."""
        return [[self.source.d(c, i) for i in range(self.source.dim)] for c in self.components]

    def compose(self, inner: "ChartMap") -> "ChartMap":
        """self ∘ inner."""
        if inner.target != self.source:
            raise ChartMismatchError("composition across different charts")
        comps = tuple(c.subs(inner.substitution()) for c in self.components)
        inv = None
        if self.inverse is not None and inner.inverse is not None:
            inv = tuple(c.subs(self.inverse_substitution()) for c in inner.inverse)
        return ChartMap(inner.source, self.target, comps, inv, f"{self.name}∘{inner.name}")

    def verify_inverse(self) -> bool:
        if self.inverse is None:
            return False
        back = [c.subs(self.inverse_substitution()) for c in self.components]
        forth = [c.subs(self.substitution()) for c in self.inverse]
        return (all(b == Scalar.coord(t) for b, t in zip(back, self.target.coords))
                and all(f == Scalar.coord(s) for f, s in zip(forth, self.source.coords)))


def identity_map(chart: Chart) -> ChartMap:
    coords = tuple(Scalar.coord(c) for c in chart.coords)
    return ChartMap(chart, chart, coords, coords, "id")


def pullback(J: ChartMap, omega: Union[Form, Scalar]) -> Union[Form, Scalar]:
    """J* of a function or a form (through the Jacobian)."""
    sub = J.substitution()
    if isinstance(omega, Scalar):
        return omega.subs(sub)
    if omega.chart != J.target:
        raise ChartMismatchError("form is not on the map's target chart")
    dJ = [de_rham_d(c, J.source) for c in J.components]
    total = Form(J.source, omega.degree, {})
    for key, v in omega.coeffs.items():
        term = function_form(J.source, v.subs(sub))
        for a in key:
            term = term.wedge(dJ[a])
        total = total + term
    return total


def pushforward_vf(J: ChartMap, X: Multivector) -> Multivector:
    """(J_*X)^a = (Σ_i ∂_iJ_a X^i) ∘ J⁻¹."""
    if X.chart != J.source:
        raise ChartMismatchError("field is not on the map's source chart")
    inv = J.inverse_substitution()
    jac = J.jacobian()
    comps = {}
    for a in range(J.target.dim):
        total = ZERO
        for (i,), v in X.coeffs.items():
            total = total + jac[a][i] * v
        comps[(a,)] = total.subs(inv)
    return Multivector(J.target, 1, _clean(comps))


def pushforward_at_point(J: ChartMap, X: Multivector) -> List[Scalar]:
    """Σ_i ∂_iJ_a X^i as functions on the source chart (no inverse needed)."""
    jac = J.jacobian()
    return [sum((jac[a][i] * X.component(i) for i in range(J.source.dim)), ZERO)
            for a in range(J.target.dim)]
