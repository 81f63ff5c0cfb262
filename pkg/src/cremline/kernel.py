"""Exact polynomial arithmetic over the rationals.

Everything downstream works with sparse polynomials whose coefficients are
exact rationals.  Three shapes recur:

* trivariate homogeneous forms in (x, y, z) — curve equations and map
  components;
* binary forms in (s, t) — parametrized curves;
* univariate polynomials in t — arc germs.

One class covers all of them; the arity is the length of the exponent
tuples.  Coefficients are stored as ``int`` whenever the value is integral
and as ``fractions.Fraction`` otherwise; the two interoperate transparently
and the integer fast path matters for composition-heavy workloads.

Heavy gcd / exact-division / factorisation work is delegated to sympy's
polynomial domain (exact, over ZZ) through thin converters; all other
arithmetic is done directly on dicts, which benchmarks an order of magnitude
faster than building sympy expressions.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Union

import sympy as sp

from .errors import (
    InternalInconsistency,
    InvalidMap,
    IsAPoint,
    NotOnCenter,
    PreconditionViolated,
    ResourceLimit,
)

Scalar = Union[int, Fraction]

__all__ = [
    "Scalar",
    "Limits",
    "DEFAULT_LIMITS",
    "HomPoly",
    "INFINITY",
    "Direction",
    "RatFunc",
    "ParamCurve",
    "ImplicitCurve",
    "AffineChart",
    "affine_chart",
    "localize",
    "origin_multiplicity",
    "blowup_strict_transform",
    "chart_substitute",
    "normalize_triple",
    "canonical_triple",
    "implicitize",
    "poly_gcd",
    "poly_gcd_list",
    "poly_divexact",
    "poly_factor_list",
    "poly_resultant",
    "binary_rational_roots",
    "int_matrix_kernel",
    "monomials",
    "frac_gcd",
]


# --------------------------------------------------------------------------
# limits


@dataclass(frozen=True)
class Limits:
    """Resource caps threaded through every potentially expensive operation."""

    max_degree: int = 4096
    max_bits: int = 1 << 20
    depth_cap: int = 64
    retry_limit: int = 10000
    sampler_bound: int = 101


DEFAULT_LIMITS = Limits()


# --------------------------------------------------------------------------
# scalar helpers


def _norm_coeff(c: Scalar) -> Scalar:
    """Collapse integral Fractions to int; reject non-rationals."""
    if type(c) is int:
        return c
    if isinstance(c, Fraction):
        return c.numerator if c.denominator == 1 else c
    if isinstance(c, int):  # bool and int subclasses
        return int(c)
    raise TypeError(f"coefficient must be rational, got {type(c).__name__}")


def frac_gcd(values: Iterable[Scalar]) -> Fraction:
    """Positive rational g with value/g integral for all values, maximal."""
    num_g = 0
    den_l = 1
    for c in values:
        if isinstance(c, Fraction):
            n, d = c.numerator, c.denominator
        else:
            n, d = c, 1
        num_g = math.gcd(num_g, abs(n))
        den_l = den_l * d // math.gcd(den_l, d)
    if num_g == 0:
        return Fraction(1)
    return Fraction(num_g, den_l)


def _as_fraction(c: Scalar) -> Fraction:
    return c if isinstance(c, Fraction) else Fraction(c)


# --------------------------------------------------------------------------
# sparse polynomials


_VAR_NAMES = {1: ("t",), 2: ("s", "t"), 3: ("x", "y", "z")}


class HomPoly:
    """Sparse polynomial with exact rational coefficients.

    ``terms`` maps exponent tuples to nonzero coefficients.  The class does
    not force homogeneity — arcs are ordinary univariate polynomials — but
    provides the check, and every operation below that requires homogeneity
    asserts it at the boundary.
    """

    __slots__ = ("terms", "arity", "_hash")

    def __init__(self, terms: dict, arity: int):
        clean = {}
        for e, c in terms.items():
            c = _norm_coeff(c)
            if c:
                clean[tuple(e)] = c
        self.terms = clean
        self.arity = arity
        self._hash = None

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, arity: int) -> "HomPoly":
        return cls({}, arity)

    @classmethod
    def constant(cls, c: Scalar, arity: int) -> "HomPoly":
        return cls({(0,) * arity: c}, arity)

    @classmethod
    def variable(cls, index: int, arity: int, degree: int = 1) -> "HomPoly":
        e = [0] * arity
        e[index] = degree
        return cls({tuple(e): 1}, arity)

    @classmethod
    def from_pairs(cls, pairs: Iterable[tuple[Sequence[int], Scalar]], arity: int) -> "HomPoly":
        acc: dict = {}
        for e, c in pairs:
            e = tuple(e)
            if len(e) != arity:
                raise InvalidMap(f"exponent {e} has arity {len(e)}, expected {arity}")
            acc[e] = acc.get(e, 0) + c
        return cls(acc, arity)

    # -- basic queries -----------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def is_homogeneous(self) -> bool:
        degs = {sum(e) for e in self.terms}
        return len(degs) <= 1

    def lex_leading(self) -> tuple[tuple[int, ...], Scalar]:
        e = max(self.terms)
        return e, self.terms[e]

    def coeff(self, exponent: Sequence[int]) -> Fraction:
        return _as_fraction(self.terms.get(tuple(exponent), 0))

    def max_coeff_bits(self) -> int:
        bits = 0
        for c in self.terms.values():
            if isinstance(c, Fraction):
                bits = max(bits, c.numerator.bit_length(), c.denominator.bit_length())
            else:
                bits = max(bits, c.bit_length())
        return bits

    # -- ring operations ---------------------------------------------------

    def __add__(self, other) -> "HomPoly":
        if isinstance(other, (int, Fraction)):
            other = HomPoly.constant(other, self.arity)
        if self.arity != other.arity:
            raise InvalidMap("arity mismatch in addition")
        acc = dict(self.terms)
        for e, c in other.terms.items():
            v = acc.get(e, 0) + c
            if v:
                acc[e] = v
            elif e in acc:
                del acc[e]
        out = HomPoly.__new__(HomPoly)
        out.terms = acc
        out.arity = self.arity
        out._hash = None
        return out

    __radd__ = __add__

    def __neg__(self) -> "HomPoly":
        out = HomPoly.__new__(HomPoly)
        out.terms = {e: -c for e, c in self.terms.items()}
        out.arity = self.arity
        out._hash = None
        return out

    def __sub__(self, other) -> "HomPoly":
        if isinstance(other, (int, Fraction)):
            other = HomPoly.constant(other, self.arity)
        return self + (-other)

    def __rsub__(self, other) -> "HomPoly":
        return (-self) + other

    def __mul__(self, other) -> "HomPoly":
        if isinstance(other, (int, Fraction)):
            other = _norm_coeff(other)
            if not other:
                return HomPoly.zero(self.arity)
            out = HomPoly.__new__(HomPoly)
            out.terms = {e: c * other for e, c in self.terms.items()}
            out.arity = self.arity
            out._hash = None
            return out
        if self.arity != other.arity:
            raise InvalidMap("arity mismatch in multiplication")
        a, b = self.terms, other.terms
        if len(a) > len(b):
            a, b = b, a
        acc: dict = {}
        for e1, c1 in a.items():
            for e2, c2 in b.items():
                e = tuple(x + y for x, y in zip(e1, e2))
                v = acc.get(e, 0) + c1 * c2
                if v:
                    acc[e] = v
                elif e in acc:
                    del acc[e]
        out = HomPoly.__new__(HomPoly)
        out.terms = acc
        out.arity = self.arity
        out._hash = None
        return out

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "HomPoly":
        if n < 0:
            raise ValueError("negative power of a polynomial")
        out = HomPoly.constant(1, self.arity)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base if n > 1 else base
            n >>= 1
        return out

    # -- evaluation and substitution ----------------------------------------

    def eval(self, values: Sequence[Scalar]) -> Fraction:
        if len(values) != self.arity:
            raise InvalidMap("evaluation point arity mismatch")
        total = Fraction(0)
        for e, c in self.terms.items():
            prod = _as_fraction(c)
            for v, k in zip(values, e):
                if k:
                    prod *= _as_fraction(v) ** k
            total += prod
        return total

    def subst(self, images: Sequence["HomPoly"]) -> "HomPoly":
        """Substitute images[i] for variable i.  Images share one arity."""
        if len(images) != self.arity:
            raise InvalidMap("substitution image count mismatch")
        out_arity = images[0].arity
        if self.is_zero:
            return HomPoly.zero(out_arity)
        maxe = [0] * self.arity
        for e in self.terms:
            for i, k in enumerate(e):
                if k > maxe[i]:
                    maxe[i] = k
        powers: list[list[HomPoly]] = []
        for i in range(self.arity):
            row = [HomPoly.constant(1, out_arity)]
            for _ in range(maxe[i]):
                row.append(row[-1] * images[i])
            powers.append(row)
        acc: dict = {}
        for e, c in self.terms.items():
            prod = None
            for i, k in enumerate(e):
                if k:
                    prod = powers[i][k] if prod is None else prod * powers[i][k]
            if prod is None:
                key = (0,) * out_arity
                v = acc.get(key, 0) + c
                if v:
                    acc[key] = v
                elif key in acc:
                    del acc[key]
            else:
                for ee, cc in prod.terms.items():
                    v = acc.get(ee, 0) + c * cc
                    if v:
                        acc[ee] = v
                    elif ee in acc:
                        del acc[ee]
        return HomPoly(acc, out_arity)

    def set_var(self, index: int, value: Scalar) -> "HomPoly":
        """Substitute a constant for one variable (arity preserved)."""
        value = _norm_coeff(value)
        acc: dict = {}
        for e, c in self.terms.items():
            k = e[index]
            if k and not value:
                continue
            ee = e[:index] + (0,) + e[index + 1:]
            cc = c * (value ** k) if k else c
            v = acc.get(ee, 0) + cc
            if v:
                acc[ee] = v
            elif ee in acc:
                del acc[ee]
        return HomPoly(acc, self.arity)

    def drop_var(self, index: int) -> "HomPoly":
        """Remove a variable that does not occur, lowering the arity."""
        acc = {}
        for e, c in self.terms.items():
            if e[index]:
                raise PreconditionViolated("drop_var on an occurring variable")
            acc[e[:index] + e[index + 1:]] = c
        return HomPoly(acc, self.arity - 1)

    def insert_var(self, index: int) -> "HomPoly":
        """Add a fresh (absent) variable at the given slot, raising arity."""
        acc = {}
        for e, c in self.terms.items():
            acc[e[:index] + (0,) + e[index:]] = c
        return HomPoly(acc, self.arity + 1)

    def divide_by_var_power(self, index: int, power: int) -> "HomPoly":
        """Exact division by variable**power."""
        acc = {}
        for e, c in self.terms.items():
            if e[index] < power:
                raise InternalInconsistency("monomial division is not exact")
            acc[e[:index] + (e[index] - power,) + e[index + 1:]] = c
        return HomPoly(acc, self.arity)

    def var_valuation(self, index: int) -> int:
        """Smallest exponent of the variable (order of vanishing); -1 if zero."""
        if not self.terms:
            return -1
        return min(e[index] for e in self.terms)

    # -- normalisation -------------------------------------------------------

    def content_scale(self) -> Fraction:
        """Factor q > 0 (or < 0 fixing the sign) with q*self integer-primitive
        and lex-leading coefficient positive.  Zero polynomial: q = 1."""
        if not self.terms:
            return Fraction(1)
        g = frac_gcd(self.terms.values())
        lead = self.terms[max(self.terms)]
        q = 1 / g
        return -q if lead < 0 else q

    def canonical(self) -> "HomPoly":
        q = self.content_scale()
        return self if q == 1 else self * q

    # -- equality / hashing / repr -------------------------------------------

    def __eq__(self, other) -> bool:
        if not isinstance(other, HomPoly):
            return NotImplemented
        return self.arity == other.arity and self.terms == other.terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.arity, tuple(sorted(self.terms.items()))))
        return self._hash

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        names = _VAR_NAMES.get(self.arity) or tuple(f"v{i}" for i in range(self.arity))
        parts = []
        for e in sorted(self.terms, reverse=True):
            c = self.terms[e]
            mono = "*".join(
                (names[i] if k == 1 else f"{names[i]}^{k}") for i, k in enumerate(e) if k
            )
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append(f"-{mono}")
            else:
                parts.append(f"{c}*{mono}")
        s = " + ".join(parts).replace("+ -", "- ")
        return s


def monomials(arity: int, degree: int) -> list[tuple[int, ...]]:
    """All exponent tuples of the given total degree, lex-descending."""
    if arity == 1:
        return [(degree,)]
    out = []
    for k in range(degree, -1, -1):
        for rest in monomials(arity - 1, degree - k):
            out.append((k,) + rest)
    return out


# --------------------------------------------------------------------------
# sympy bridge (gcd / division / factorisation / resultants only)


_GENS_CACHE: dict[int, tuple] = {}


def _gens(arity: int):
    if arity not in _GENS_CACHE:
        _GENS_CACHE[arity] = sp.symbols(f"w:{arity}")
    return _GENS_CACHE[arity]


def _to_int_poly(p: HomPoly) -> sp.Poly:
    """Primitive-integer sympy Poly proportional to p (content discarded)."""
    q = p.content_scale()
    terms = p.terms if q == 1 else {e: c * q for e, c in p.terms.items()}
    d = {e: int(c) for e, c in terms.items()}
    return sp.Poly.from_dict(d, *_gens(p.arity), domain=sp.ZZ)


def _from_sympy_poly(P: sp.Poly, arity: int) -> HomPoly:
    acc = {}
    for e, c in P.terms():
        q = sp.Rational(c)
        acc[tuple(int(k) for k in e)] = Fraction(int(q.p), int(q.q))
    return HomPoly(acc, arity)


def poly_gcd(a: HomPoly, b: HomPoly) -> HomPoly:
    """Canonical gcd; content is deliberately ignored (primitive result)."""
    if a.is_zero:
        return b.canonical()
    if b.is_zero:
        return a.canonical()
    G = _to_int_poly(a).gcd(_to_int_poly(b))
    return _from_sympy_poly(G, a.arity).canonical()


def poly_gcd_list(ps: Sequence[HomPoly]) -> HomPoly:
    g = None
    for p in ps:
        if p.is_zero:
            continue
        g = p.canonical() if g is None else poly_gcd(g, p)
        if g.degree() == 0:
            break
    if g is None:
        return HomPoly.zero(ps[0].arity)
    return g


def poly_divexact(a: HomPoly, b: HomPoly) -> HomPoly:
    """Exact quotient a/b; raises if the division leaves a remainder."""
    if b.is_zero:
        raise InternalInconsistency("division by the zero polynomial")
    if a.is_zero:
        return HomPoly.zero(a.arity)
    qa = a.content_scale()
    qb = b.content_scale()
    Q, R = _to_int_poly(a).div(_to_int_poly(b))
    if not R.is_zero:
        raise InternalInconsistency("expected exact polynomial division")
    out = _from_sympy_poly(Q, a.arity)
    # a = (A/qa), b = (B/qb)  with A = Q*B  =>  a/b = (qb/qa) * Q
    return out * (qb / qa)


def poly_factor_list(p: HomPoly) -> tuple[Fraction, list[tuple[HomPoly, int]]]:
    """Rational factorisation: (unit, [(irreducible canonical factor, mult)])."""
    if p.is_zero:
        return Fraction(0), []
    q = p.content_scale()
    const, factors = _to_int_poly(p).factor_list()
    out = []
    unit = Fraction(int(const)) / q
    for F, k in factors:
        f = _from_sympy_poly(F, p.arity)
        fq = f.content_scale()
        out.append((f * fq, int(k)))
        unit /= fq ** int(k)
    return unit, out


def poly_resultant(a: HomPoly, b: HomPoly, index: int) -> HomPoly:
    """Resultant eliminating the given variable."""
    gens = _gens(a.arity)
    A = _to_int_poly(a).as_expr()
    B = _to_int_poly(b).as_expr()
    R = sp.resultant(A, B, gens[index])
    P = sp.Poly(R, *gens, domain=sp.QQ)
    return _from_sympy_poly(P, a.arity)


def binary_rational_roots(form: HomPoly) -> tuple[list[tuple[tuple[Fraction, Fraction], int]], int]:
    """Projective rational roots of a binary form.

    Returns ([((s0, t0), multiplicity), ...], degree_of_irrational_part)
    with each root normalized so its first nonzero coordinate is 1.
    """
    if form.arity != 2 or form.is_zero:
        raise PreconditionViolated("binary_rational_roots needs a nonzero binary form")
    _, factors = poly_factor_list(form)
    roots = []
    other = 0
    for f, k in factors:
        if f.degree() == 1:
            a = f.coeff((1, 0))
            b = f.coeff((0, 1))
            # a*s + b*t vanishes at (s:t) = (-b : a)
            s0, t0 = -b, a
            if s0:
                root = (Fraction(1), _as_fraction(t0) / _as_fraction(s0))
            else:
                root = (Fraction(0), Fraction(1))
            roots.append((root, k))
        else:
            other += f.degree() * k
    return roots, other


# --------------------------------------------------------------------------
# exact integer linear algebra


_SCREEN_PRIME = (1 << 61) - 1


def _mod_rank(rows: Sequence[Sequence[int]], ncols: int, prime: int = _SCREEN_PRIME) -> int:
    """Rank of the matrix over GF(prime); lower bound for the true rank."""
    pivots: list[tuple[int, list[int]]] = []
    rank = 0
    for row in rows:
        r = [x % prime for x in row]
        for c, pr in pivots:
            f = r[c]
            if f:
                r = [(a - f * b) % prime for a, b in zip(r, pr)]
        piv = next((i for i, a in enumerate(r) if a), None)
        if piv is None:
            continue
        inv = pow(r[piv], prime - 2, prime)
        r = [(a * inv) % prime for a in r]
        pivots.append((piv, r))
        pivots.sort()
        rank += 1
        if rank == ncols:
            break
    return rank


def int_matrix_kernel(rows: Sequence[Sequence[int]], ncols: int) -> list[list[int]]:
    """Basis of the right kernel of an integer matrix, primitive vectors.

    A full-rank result from the modular screen certifies an empty kernel
    (rank can only drop modulo a prime), in which case the exact elimination
    is skipped entirely.
    """
    if _mod_rank(rows, ncols) == ncols:
        return []
    pivrows: list[tuple[int, list[int]]] = []
    for row in rows:
        r = list(row)
        for c, pr in pivrows:
            if r[c]:
                m1, m2 = pr[c], r[c]
                r = [a * m1 - b * m2 for a, b in zip(r, pr)]
        g = 0
        for a in r:
            g = math.gcd(g, abs(a))
        if g == 0:
            continue
        if g > 1:
            r = [a // g for a in r]
        piv = next(i for i, a in enumerate(r) if a)
        if r[piv] < 0:
            r = [-a for a in r]
        pivrows.append((piv, r))
        pivrows.sort()
    pivcols = {c for c, _ in pivrows}
    basis = []
    for f in range(ncols):
        if f in pivcols:
            continue
        v: list[Fraction] = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for c, pr in sorted(pivrows, reverse=True):
            s = Fraction(0)
            for j in range(c + 1, ncols):
                if pr[j] and v[j]:
                    s += Fraction(pr[j]) * v[j]
            v[c] = -s / pr[c]
        den = 1
        for x in v:
            den = den * x.denominator // math.gcd(den, x.denominator)
        ints = [int(x * den) for x in v]
        g = 0
        for a in ints:
            g = math.gcd(g, abs(a))
        ints = [a // g for a in ints]
        lead = next(a for a in ints if a)
        if lead < 0:
            ints = [-a for a in ints]
        basis.append(ints)
    return basis


# --------------------------------------------------------------------------
# triples and parametrized curves


def canonical_triple(triple: Sequence[HomPoly]) -> tuple[HomPoly, ...]:
    """Scale a component tuple jointly so that coefficients are integral and
    primitive across all components, with the lex-leading coefficient of the
    first nonzero component positive."""
    coeffs: list[Scalar] = []
    for p in triple:
        coeffs.extend(p.terms.values())
    if not coeffs:
        return tuple(triple)
    g = frac_gcd(coeffs)
    first = next(p for p in triple if not p.is_zero)
    lead = first.terms[max(first.terms)]
    q = 1 / g
    if lead < 0:
        q = -q
    if q == 1:
        return tuple(triple)
    return tuple(p * q for p in triple)


def remove_common_factor(triple: Sequence[HomPoly]) -> tuple[tuple[HomPoly, ...], int]:
    """Divide out the polynomial gcd of the components; returns its degree."""
    g = poly_gcd_list(list(triple))
    d = g.degree()
    if d <= 0:
        return tuple(triple), 0
    return tuple(poly_divexact(p, g) for p in triple), d


def normalize_triple(triple: Sequence[HomPoly]) -> tuple[tuple[HomPoly, HomPoly, HomPoly], int]:
    """Validate and reduce a component triple of a plane rational map.

    Checks: exactly three trivariate components, homogeneous of one common
    degree, not all zero.  Removes the common polynomial factor and scales to
    the canonical integer-primitive representative.  Returns the reduced
    triple and the degree of the removed factor.
    """
    if len(triple) != 3:
        raise InvalidMap("a plane map needs exactly three components")
    for p in triple:
        if not isinstance(p, HomPoly) or p.arity != 3:
            raise InvalidMap("components must be trivariate polynomials")
        if not p.is_homogeneous():
            raise InvalidMap("components must be homogeneous")
    degs = {p.degree() for p in triple if not p.is_zero}
    if not degs:
        raise InvalidMap("all three components are zero")
    if len(degs) != 1:
        raise InvalidMap("components must share one degree")
    reduced, removed = remove_common_factor(triple)
    out = canonical_triple(reduced)
    return (out[0], out[1], out[2]), removed


class ParamCurve:
    """Projectively parametrized plane curve (c0(s,t) : c1(s,t) : c2(s,t)).

    The constructor removes the common binary-form factor and scales to the
    canonical integer-primitive representative, so two parametrizations are
    equal as objects iff their reduced component triples coincide.  A reduced
    degree of zero means the parametrization is constant (a single point).

    The same container carries curves living in an affine blowup chart: then
    the components are read as (U : V : W) with chart coordinates u = U/W,
    v = V/W.
    """

    __slots__ = ("c",)

    def __init__(self, c0: HomPoly, c1: HomPoly, c2: HomPoly):
        comps = (c0, c1, c2)
        for p in comps:
            if p.arity != 2:
                raise InvalidMap("curve components must be binary forms")
            if not p.is_homogeneous():
                raise InvalidMap("curve components must be homogeneous")
        degs = {p.degree() for p in comps if not p.is_zero}
        if not degs:
            raise InvalidMap("all three curve components are zero")
        if len(degs) != 1:
            raise InvalidMap("curve components must share one degree")
        reduced, _ = remove_common_factor(comps)
        self.c = canonical_triple(reduced)

    @property
    def degree(self) -> int:
        return max(p.degree() for p in self.c)

    @property
    def is_point(self) -> bool:
        return self.degree == 0

    def point(self) -> tuple[Fraction, Fraction, Fraction]:
        if not self.is_point:
            raise PreconditionViolated("parametrization is not constant")
        return tuple(_as_fraction(p.terms.get((0, 0), 0)) for p in self.c)  # type: ignore

    def eval(self, s0: Scalar, t0: Scalar) -> tuple[Fraction, Fraction, Fraction]:
        vals = (s0, t0)
        return tuple(p.eval(vals) for p in self.c)  # type: ignore

    def __eq__(self, other) -> bool:
        if not isinstance(other, ParamCurve):
            return NotImplemented
        return self.c == other.c

    def __hash__(self) -> int:
        return hash(self.c)

    def __repr__(self) -> str:
        return f"ParamCurve({self.c[0]!r} : {self.c[1]!r} : {self.c[2]!r})"


@dataclass(frozen=True)
class ImplicitCurve:
    """Implicit equation of the image of a parametrized curve.

    ``poly`` is the minimal-degree form vanishing on the image, normalized so
    its lex-leading coefficient is 1; ``map_degree`` is the degree of the
    parametrizing map onto the image (1 means birational parametrization).
    """

    poly: HomPoly
    map_degree: int


def _divisors(n: int) -> list[int]:
    out = [d for d in range(1, n + 1) if n % d == 0]
    return out


def implicitize(curve: ParamCurve, limits: Limits = DEFAULT_LIMITS) -> ImplicitCurve:
    """Minimal implicit equation of the image, by exact linear algebra.

    For each candidate degree d dividing the parametrization degree n
    (ascending), the condition F(c0,c1,c2) = 0 is linear in the coefficients
    of F; the kernel of the coefficient matrix is computed exactly (with a
    modular full-rank screen to skip empty kernels cheaply).  The first
    nontrivial kernel is one-dimensional and gives the irreducible image
    equation; the parametrization maps with degree m = n/d onto it.
    """
    if curve.is_point:
        raise IsAPoint("cannot implicitize a constant parametrization")
    n = curve.degree
    if n > limits.max_degree:
        raise ResourceLimit(f"parametrization degree {n} exceeds cap {limits.max_degree}")
    for d in _divisors(n):
        monos = monomials(3, d)
        cols = []
        power_cache: dict[tuple[int, int, int], HomPoly] = {}

        def composed_power(expo: tuple[int, int, int]) -> HomPoly:
            if expo in power_cache:
                return power_cache[expo]
            a, b, g = expo
            out = HomPoly.constant(1, 2)
            if a:
                out = out * (curve.c[0] ** a)
            if b:
                out = out * (curve.c[1] ** b)
            if g:
                out = out * (curve.c[2] ** g)
            power_cache[expo] = out
            return out

        for expo in monos:
            cols.append(composed_power(expo))
        st_monos = monomials(2, d * n)
        rows = []
        for em in st_monos:
            rows.append([int(col.terms.get(em, 0)) for col in cols])
        kern = int_matrix_kernel(rows, len(cols))
        if not kern:
            continue
        if len(kern) != 1:
            raise InternalInconsistency(
                f"implicitization kernel at degree {d} has dimension {len(kern)}"
            )
        F = HomPoly({e: c for e, c in zip(monos, kern[0]) if c}, 3)
        check = F.subst(list(curve.c))
        if not check.is_zero:
            raise InternalInconsistency("implicit equation fails to vanish on the curve")
        _, lead = F.lex_leading()
        F = F * (Fraction(1) / _as_fraction(lead))
        if n % d:
            raise InternalInconsistency("image degree does not divide parametrization degree")
        return ImplicitCurve(F, n // d)
    raise InternalInconsistency("no implicit equation found up to the parametrization degree")


# --------------------------------------------------------------------------
# affine charts and blowup substitution


class _Infinity:
    """Direction sentinel: tangent to the previous exceptional curve."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "INFINITY"

    def __reduce__(self):
        return (_Infinity, ())


INFINITY = _Infinity()

Direction = Union[Fraction, int, _Infinity]


def is_infinity(d) -> bool:
    return isinstance(d, _Infinity)


@dataclass(frozen=True)
class AffineChart:
    """Canonical affine chart at a projective point.

    i0 is the first nonzero coordinate of the centre; after scaling that
    coordinate to 1, the chart coordinates are u = x_j/x_i0 - c_j and
    v = x_k/x_i0 - c_k where j < k are the remaining indices and (c_j, c_k)
    the centre's affine coordinates.  The centre sits at the chart origin.
    """

    center: tuple[Fraction, Fraction, Fraction]
    i0: int
    j: int
    k: int


def affine_chart(center: Sequence[Scalar]) -> AffineChart:
    cs = [_as_fraction(c) for c in center]
    if len(cs) != 3 or all(c == 0 for c in cs):
        raise InvalidMap("chart centre must be a nonzero coordinate triple")
    i0 = next(i for i, c in enumerate(cs) if c != 0)
    scale = cs[i0]
    cs = [c / scale for c in cs]
    j, k = [i for i in range(3) if i != i0]
    return AffineChart(center=(cs[0], cs[1], cs[2]), i0=i0, j=j, k=k)


def localize(F: HomPoly, chart: AffineChart) -> HomPoly:
    """Restrict a trivariate form to the chart: bivariate polynomial in (u, v)
    vanishing at the origin iff the curve passes through the chart centre."""
    if F.arity != 3:
        raise PreconditionViolated("localize expects a trivariate form")
    u = HomPoly.variable(0, 2)
    v = HomPoly.variable(1, 2)
    images: list[HomPoly] = [None, None, None]  # type: ignore
    images[chart.i0] = HomPoly.constant(1, 2)
    images[chart.j] = u + chart.center[chart.j]
    images[chart.k] = v + chart.center[chart.k]
    return F.subst(images)


def origin_multiplicity(f: HomPoly) -> int:
    """Multiplicity at the chart origin = minimal total degree of a term."""
    if f.is_zero:
        raise PreconditionViolated("zero polynomial has no multiplicity")
    return min(sum(e) for e in f.terms)


def blowup_strict_transform(f: HomPoly, direction: Direction) -> tuple[HomPoly, int]:
    """One blowup step for a bivariate local equation.

    Recentres at the infinitely-near point of the given direction in the
    first neighbourhood of the origin and divides out the exceptional factor.
    Finite slope d: (u, v) = (u', u'*(d + v')), exceptional {u' = 0}.
    Infinite slope:  (u, v) = (u'*v', v'),      exceptional {v' = 0}.
    Returns (strict transform, multiplicity at the blown-up origin).
    """
    if f.arity != 2:
        raise PreconditionViolated("blowup step expects a bivariate polynomial")
    m = origin_multiplicity(f)
    if m == 0:
        raise NotOnCenter("curve does not pass through the blowup centre")
    u = HomPoly.variable(0, 2)
    v = HomPoly.variable(1, 2)
    if is_infinity(direction):
        g = f.subst([u * v, v])
        g = g.divide_by_var_power(1, m)
    else:
        g = f.subst([u, u * (v + direction)])
        g = g.divide_by_var_power(0, m)
    return g, m


# --------------------------------------------------------------------------
# reduced rational functions (germ bookkeeping)


class RatFunc:
    """Reduced fraction of polynomials of one shared arity."""

    __slots__ = ("num", "den")

    def __init__(self, num: HomPoly, den: HomPoly, reduce: bool = True):
        if den.is_zero:
            raise InternalInconsistency("rational function with zero denominator")
        if reduce and not num.is_zero:
            g = poly_gcd(num, den)
            if g.degree() > 0:
                num = poly_divexact(num, g)
                den = poly_divexact(den, g)
        q = den.content_scale()
        self.num = num * q
        self.den = den * q

    @classmethod
    def of_poly(cls, p: HomPoly) -> "RatFunc":
        return cls(p, HomPoly.constant(1, p.arity), reduce=False)

    @classmethod
    def const(cls, c: Scalar, arity: int) -> "RatFunc":
        return cls(HomPoly.constant(c, arity), HomPoly.constant(1, arity), reduce=False)

    @property
    def is_zero(self) -> bool:
        return self.num.is_zero

    def __add__(self, other) -> "RatFunc":
        if isinstance(other, (int, Fraction)):
            return RatFunc(self.num + other * self.den, self.den)
        return RatFunc(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self) -> "RatFunc":
        return RatFunc(-self.num, self.den, reduce=False)

    def __sub__(self, other) -> "RatFunc":
        return self + (-other if isinstance(other, RatFunc) else -_as_fraction(other))

    def __mul__(self, other) -> "RatFunc":
        if isinstance(other, (int, Fraction)):
            return RatFunc(self.num * other, self.den)
        return RatFunc(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "RatFunc":
        if isinstance(other, (int, Fraction)):
            return RatFunc(self.num, self.den * other)
        if other.is_zero:
            raise InternalInconsistency("division by a zero rational function")
        return RatFunc(self.num * other.den, self.den * other.num)

    def at_var_zero(self, index: int) -> tuple[HomPoly, HomPoly]:
        """Numerator and denominator with one variable set to zero (no
        re-reduction; the caller distinguishes the vanishing cases)."""
        return self.num.set_var(index, 0), self.den.set_var(index, 0)

    def __eq__(self, other) -> bool:
        if not isinstance(other, RatFunc):
            return NotImplemented
        return (self.num * other.den) == (other.num * self.den)

    def __repr__(self) -> str:
        return f"({self.num!r})/({self.den!r})"


# --------------------------------------------------------------------------
# chart substitution for parametrized curves


def _family_lift(
    triple: Sequence[HomPoly], chart: AffineChart, direction: Direction
) -> tuple[HomPoly, HomPoly, HomPoly]:
    """Shared core: lift (U, V, W) chart data one level up the tower."""
    A, B, W = triple
    if is_infinity(direction):
        # (u, v) -> (u/v, v) = (A/B, B/W)
        return A * W, B * B, B * W
    # (u, v) -> (u, v/u - direction) = (A/W, (B - direction*A)/A)
    return A * A, (B - direction * A) * W, A * W


def chart_substitute(
    curve: Union[ParamCurve, Sequence[HomPoly]],
    center: Sequence[Scalar],
    direction: Direction,
) -> ParamCurve:
    """Strict transform of a parametrized curve past one blowup centre.

    The curve must pass through ``center`` (any points of the parameter line,
    rational or not, count).  The result lives in the chart above the given
    infinitely-near direction and is returned as chart components (U : V : W),
    u = U/W, v = V/W — see ParamCurve.

    A parametrization that is *constant* at the centre carries no direction
    information of its own; pass a one-parameter family instead — a triple of
    polynomials in (s, t, eps), homogeneous in (s, t), whose eps = 0 member
    degenerates to the centre.  The returned curve is then the eps -> 0 limit
    of the lifted family (for a curve contracted to the centre by a map this
    is the image of the exceptional direction line, which is exactly what the
    degeneration machinery needs).
    """
    chart = affine_chart(center)
    cj = chart.center[chart.j]
    ck = chart.center[chart.k]

    if isinstance(curve, ParamCurve):
        A = curve.c[chart.j] - cj * curve.c[chart.i0]
        B = curve.c[chart.k] - ck * curve.c[chart.i0]
        W = curve.c[chart.i0]
        if W.is_zero:
            raise NotOnCenter("curve lies in the coordinate line missing the chart")
        if curve.is_point:
            if A.is_zero and B.is_zero:
                raise PreconditionViolated(
                    "constant parametrization at the centre: pass a family in (s, t, eps)"
                )
            raise NotOnCenter("constant parametrization away from the centre")
        if A.is_zero and B.is_zero:
            # curve collapses onto the centre identically: cannot happen after
            # reduction unless the parametrization is constant (handled above)
            raise InternalInconsistency("reduced curve vanishes at every parameter")
        g = poly_gcd(A if not A.is_zero else B, B if not B.is_zero else A)
        if not (A.is_zero or B.is_zero) and g.degree() <= 0:
            raise NotOnCenter("curve does not pass through the centre")
        lifted = _family_lift((A, B, W), chart, direction)
        return ParamCurve(*lifted)

    # family input: (s, t, eps)-polynomials
    comps = list(curve)
    if len(comps) != 3 or any(p.arity != 3 for p in comps):
        raise PreconditionViolated("family input must be three (s, t, eps)-polynomials")
    A = comps[chart.j] - cj * comps[chart.i0]
    B = comps[chart.k] - ck * comps[chart.i0]
    W = comps[chart.i0]
    if W.is_zero:
        raise NotOnCenter("family lies in the coordinate line missing the chart")
    a0 = A.set_var(2, 0)
    b0 = B.set_var(2, 0)
    w0 = W.set_var(2, 0)
    if not (a0.is_zero and b0.is_zero):
        if w0.is_zero:
            raise NotOnCenter("family member escapes the chart at eps = 0")
        # the eps = 0 member is an honest curve through the centre; lift it
        lifted = _family_lift((A, B, W), chart, direction)
    else:
        lifted = _family_lift((A, B, W), chart, direction)
    red, _ = remove_common_factor(lifted)
    red0 = [p.set_var(2, 0) for p in red]
    if all(p.is_zero for p in red0):
        raise InternalInconsistency("family lift vanishes identically at eps = 0")
    return ParamCurve(*(p.drop_var(2) for p in red0))
