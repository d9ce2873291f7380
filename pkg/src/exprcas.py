"""
Exact Scalar Engine
===================
Rational functions in chart coordinates extended by exponential atoms
e^{q1*c1 + ... + qk*ck} with exact rational q's.  This is the coefficient
field every other module computes in.

Representation:
    A Scalar wraps a sympy expression.  Canonical forms are obtained by
    rewriting every exponential into primitive per-coordinate atoms
    t_c = e^{c/D_c} (D_c the lcm of the denominators of c's exponent
    coefficients), cancelling the resulting rational function, and
    substituting the atoms back.

Design decisions:
    - Exponents must be linear forms without constant term.  Anything else
      (nested exp, exp(x*y), exp(1)) raises ExprError.
    - Equality is decided by cancelling the atomized difference; primitive
      atoms over distinct coordinates are algebraically independent over
      the rational-function field, so this is exact.
    - No floats anywhere.  Parsed floats are rejected.
"""

import re
from dataclasses import dataclass
from functools import reduce
from math import lcm
from tokenize import TokenError
from typing import Dict, Iterable, Mapping, Optional, Tuple, Union

import sympy as sp
from sympy.parsing.sympy_parser import (
    auto_number,
    auto_symbol,
    convert_xor,
    parse_expr,
)


class TwistlabError(Exception):
    """Root of every error raised by the library."""


class ExprError(TwistlabError):
    """Malformed or unsupported expression."""


class DivisionByZeroError(TwistlabError):
    """Division by a Scalar that canonicalizes to 0."""


class PoleError(TwistlabError):
    """Evaluation at a point where a denominator vanishes."""


class UnknownCoordinateError(TwistlabError):
    """Coordinate not part of the chart in use."""


ATOM_PREFIX = "__e_"
# e^{c/DEFAULT_ATOM_ROOT} is sampled as 1 + v_c^2 when no atom values are given
DEFAULT_ATOM_ROOT = 12

_IDENTIFIER = re.compile(r"^[A-Za-z][A-Za-z0-9_]*$")

Number = Union[int, sp.Rational, "Scalar"]


@dataclass(frozen=True)
class Coordinate:
    """A named chart coordinate."""
    name: str
    chart: str

    def __post_init__(self):
        if not _IDENTIFIER.match(self.name):
            raise ExprError(f"invalid coordinate name: {self.name!r}")


# ----------------------------------------------------------------------
# Atomization
# ----------------------------------------------------------------------

def _exponent_terms(arg: sp.Expr) -> Dict[sp.Symbol, sp.Rational]:
    terms = sp.expand(arg).as_coefficients_dict()
    out: Dict[sp.Symbol, sp.Rational] = {}
    for key, coeff in terms.items():
        if key == 1:
            if coeff != 0:
                raise ExprError(f"exponent with constant term: exp({arg})")
            continue
        if not isinstance(key, sp.Symbol) or not coeff.is_Rational:
            raise ExprError(f"exponent is not a rational linear form: exp({arg})")
        if key.name.startswith(ATOM_PREFIX):
            raise ExprError(f"reserved name in exponent: {key.name}")
        out[key] = coeff
    return out


def _atomize(expr: sp.Expr) -> Tuple[sp.Expr, Dict[sp.Symbol, Tuple[sp.Symbol, int]]]:
    """Replace exponentials by integer powers of primitive atoms."""
    exps = expr.atoms(sp.exp)
    if not exps:
        return expr, {}
    parsed = {e: _exponent_terms(e.args[0]) for e in exps}
    denominators: Dict[sp.Symbol, int] = {}
    for terms in parsed.values():
        for c, q in terms.items():
            denominators[c] = lcm(denominators.get(c, 1), int(q.q))
    atoms = {c: sp.Symbol(f"{ATOM_PREFIX}{c.name}") for c in denominators}
    replacement = {}
    for e, terms in parsed.items():
        replacement[e] = sp.Mul(*[atoms[c] ** int(q * denominators[c]) for c, q in terms.items()])
    table = {atoms[c]: (c, denominators[c]) for c in denominators}
    return expr.xreplace(replacement), table


def _deatomize(expr: sp.Expr, table: Mapping[sp.Symbol, Tuple[sp.Symbol, int]]) -> sp.Expr:
    if not table:
        return expr
    return expr.xreplace({t: sp.exp(c / d) for t, (c, d) in table.items()})


def _canonical(expr: sp.Expr) -> sp.Expr:
    if expr.has(sp.Float):
        raise ExprError("floating point values are not supported")
    if expr.has(sp.E):
        raise ExprError("exponent with constant term: E")
    atomized, table = _atomize(sp.sympify(expr))
    return _deatomize(sp.cancel(atomized), table)


def _is_zero(expr: sp.Expr) -> bool:
    atomized, _ = _atomize(expr)
    numerator, _ = sp.fraction(sp.cancel(atomized))
    return numerator == 0


# ----------------------------------------------------------------------
# Scalar
# ----------------------------------------------------------------------

class Scalar:
    """Immutable exact scalar.  Arithmetic returns canonical forms."""

    __slots__ = ("expr",)

    def __init__(self, value: Union[int, str, sp.Expr, "Scalar"] = 0, _canonical_form: bool = False):
        if isinstance(value, Scalar):
            expr = value.expr
        elif isinstance(value, str):
            expr = sp.Symbol(value)
        else:
            expr = sp.sympify(value)
        object.__setattr__(self, "expr", expr if _canonical_form else _canonical(expr))

    def __setattr__(self, name, value):
        raise AttributeError("Scalar is immutable")

    # constructors ------------------------------------------------------
    @classmethod
    def coord(cls, c: Union[str, Coordinate]) -> "Scalar":
        name = c.name if isinstance(c, Coordinate) else c
        return cls(sp.Symbol(name), _canonical_form=True)

    @classmethod
    def rational(cls, p: int, q: int = 1) -> "Scalar":
        return cls(sp.Rational(p, q), _canonical_form=True)

    @classmethod
    def exp(cls, s: "Scalar") -> "Scalar":
        return cls(sp.exp(_as_scalar(s).expr))

    # arithmetic ------------------------------------------------------
    def __add__(self, other: Number) -> "Scalar":
        return Scalar(self.expr + _as_scalar(other).expr)

    __radd__ = __add__

    def __sub__(self, other: Number) -> "Scalar":
        return Scalar(self.expr - _as_scalar(other).expr)

    def __rsub__(self, other: Number) -> "Scalar":
        return Scalar(_as_scalar(other).expr - self.expr)

    def __mul__(self, other: Number) -> "Scalar":
        return Scalar(self.expr * _as_scalar(other).expr)

    __rmul__ = __mul__

    def __truediv__(self, other: Number) -> "Scalar":
        other = _as_scalar(other)
        if other.is_zero():
            raise DivisionByZeroError(f"division of {self} by zero")
        return Scalar(self.expr / other.expr)

    def __rtruediv__(self, other: Number) -> "Scalar":
        return _as_scalar(other) / self

    def __neg__(self) -> "Scalar":
        return Scalar(-self.expr, _canonical_form=True)

    def __pow__(self, k: int) -> "Scalar":
        if not isinstance(k, int):
            raise ExprError("only integer powers are supported")
        if k < 0 and self.is_zero():
            raise DivisionByZeroError("negative power of zero")
        return Scalar(self.expr ** k)

    # comparison ------------------------------------------------------
    def is_zero(self) -> bool:
        return _is_zero(self.expr)

    def __eq__(self, other) -> bool:
        try:
            other = _as_scalar(other)
        except (ExprError, TypeError, sp.SympifyError):
            return NotImplemented
        return equals(self, other)

    def __hash__(self) -> int:
        # equal values share their genuine coordinate dependence
        return hash(frozenset(s.name for s in self.expr.free_symbols))

    # inspection ------------------------------------------------------
    @property
    def coordinates(self) -> frozenset:
        return frozenset(s.name for s in self.expr.free_symbols)

    def is_rational(self) -> bool:
        return self.expr.is_Rational is True

    def to_rational(self) -> sp.Rational:
        if not self.is_rational():
            raise ExprError(f"not a rational constant: {self}")
        return sp.Rational(self.expr)

    def exponent_if_atom(self) -> Optional["Scalar"]:
        """L when this Scalar is exactly e^L (L = 0 for the constant 1)."""
        if self.expr == 1:
            return Scalar(0)
        factors = sp.Mul.make_args(self.expr)
        if all(isinstance(f, sp.exp) for f in factors):
            return Scalar(sp.Add(*[f.args[0] for f in factors]))
        return None

    def subs(self, mapping: Mapping[Union[str, Coordinate], Number]) -> "Scalar":
        """Simultaneous substitution of coordinates by Scalars."""
        table = {}
        for key, value in mapping.items():
            name = key.name if isinstance(key, Coordinate) else key
            table[sp.Symbol(name)] = _as_scalar(value).expr
        return Scalar(self.expr.xreplace(table))

    def __str__(self) -> str:
        return sp.sstr(self.expr)

    def __repr__(self) -> str:
        return f"Scalar({self})"


def _as_scalar(value) -> Scalar:
    if isinstance(value, Scalar):
        return value
    if isinstance(value, float):
        raise ExprError("floating point values are not supported")
    return Scalar(sp.Rational(value) if not isinstance(value, sp.Expr) else value)


ZERO = Scalar(0)
ONE = Scalar(1)


# ----------------------------------------------------------------------
# Operations
# ----------------------------------------------------------------------

def arithmetic(f: Scalar, g: Scalar, op: str) -> Scalar:
    ops = {
        "add": lambda: f + g,
        "sub": lambda: f - g,
        "mul": lambda: f * g,
        "div": lambda: f / g,
    }
    if op not in ops:
        raise ExprError(f"unknown operation: {op}")
    return ops[op]()


def differentiate(f: Scalar, c: Union[str, Coordinate],
                  known: Optional[Iterable[Union[str, Coordinate]]] = None) -> Scalar:
    """Partial derivative; `known` restricts c to a chart's coordinates."""
    name = c.name if isinstance(c, Coordinate) else c
    if known is not None:
        names = {k.name if isinstance(k, Coordinate) else k for k in known}
        if name not in names:
            raise UnknownCoordinateError(f"{name} is not a coordinate of this chart")
    return Scalar(sp.diff(_as_scalar(f).expr, sp.Symbol(name)))


def equals(f: Scalar, g: Scalar) -> bool:
    return _is_zero(_as_scalar(f).expr - _as_scalar(g).expr)


def eval_at(f: Scalar, point: Mapping[str, Number],
            atoms: Optional[Mapping[str, Number]] = None,
            root: Optional[int] = None) -> sp.Rational:
    """
    Evaluate at an exact rational point.

    Args:
        point: coordinate name -> rational value.
        atoms: coordinate name -> rational value taken by e^{c/R_c}.  Each
               primitive atom is an independent sample; by default
               e^{c/R_c} = 1 + v_c^2.
        root:  common root R; R_c is the lcm of R and the exponent
               denominators of c in f.  Two Scalars evaluate
               multiplicatively when they share R_c, which holds whenever
               their denominators divide R (12 unless given).
    """
    f = _as_scalar(f)
    base_root = DEFAULT_ATOM_ROOT if root is None else int(root)
    if base_root <= 0:
        raise ExprError(f"atom root must be positive, got {root}")
    atomized, table = _atomize(f.expr)
    values = {sp.Symbol(k): sp.Rational(_as_scalar(v).to_rational()) for k, v in point.items()}
    for t, (c, d) in table.items():
        r_c = lcm(base_root, d)
        if atoms is not None and c.name in atoms:
            base = sp.Rational(_as_scalar(atoms[c.name]).to_rational())
        else:
            if c not in values:
                raise PoleError(f"no value for coordinate {c}")
            base = 1 + values[c] ** 2
        if base == 0:
            raise PoleError(f"exponential atom of {c} sampled at 0")
        values[t] = base ** (r_c // d)
    # cancel only when the unreduced denominator vanishes (removable 0/0)
    numerator, denominator = sp.fraction(sp.together(atomized))
    missing = (numerator.free_symbols | denominator.free_symbols) - set(values)
    if missing:
        raise PoleError(f"no value for {sorted(str(m) for m in missing)}")
    den = denominator.xreplace(values)
    if den == 0:
        numerator, denominator = sp.fraction(sp.cancel(atomized))
        den = denominator.xreplace(values)
    if den == 0:
        raise PoleError(f"pole of {f} at {dict(point)}")
    return sp.Rational(numerator.xreplace(values)) / sp.Rational(den)



# ----------------------------------------------------------------------
# Textual grammar
# ----------------------------------------------------------------------

_GLOBALS = {
    "Integer": sp.Integer,
    "Rational": sp.Rational,
    "Symbol": sp.Symbol,
    "Function": sp.Function,
    "exp": sp.exp,
}


def parse(text: str, coordinates: Optional[Iterable[Union[str, Coordinate]]] = None) -> Scalar:
    """
    Parse `p/q`, identifiers, exp(<linear form>), + - * / ^ and parentheses.
    """
    if not text or not text.strip():
        raise ExprError("empty expression")
    if re.search(r"\d\.\d|\.\d|\d\.", text):
        raise ExprError(f"floating point literal in {text!r}")
    try:
        expr = parse_expr(text, global_dict=dict(_GLOBALS), local_dict={},
                          transformations=(auto_symbol, auto_number, convert_xor), evaluate=True)
    except (SyntaxError, TypeError, ValueError, NameError, TokenError, sp.SympifyError) as e:
        raise ExprError(f"cannot parse {text!r}: {e}") from e
    if not isinstance(expr, sp.Expr):
        raise ExprError(f"not an expression: {text!r}")
    allowed_funcs = {sp.exp}
    for node in sp.preorder_traversal(expr):
        if isinstance(node, sp.Function) and node.func not in allowed_funcs:
            raise ExprError(f"unsupported function {node.func} in {text!r}")
        if isinstance(node, sp.Pow) and not node.exp.is_Integer and node.base is not sp.E:
            raise ExprError(f"only integer powers are supported: {text!r}")
    if coordinates is not None:
        names = {c.name if isinstance(c, Coordinate) else c for c in coordinates}
        unknown = {s.name for s in expr.free_symbols} - names
        if unknown:
            raise UnknownCoordinateError(f"unknown coordinates {sorted(unknown)} in {text!r}")
    return Scalar(expr)


def to_text(f: Scalar) -> str:
    return str(f)


def scalar_sum(items: Iterable[Scalar]) -> Scalar:
    return Scalar(reduce(lambda acc, s: acc + _as_scalar(s).expr, items, sp.Integer(0)))
