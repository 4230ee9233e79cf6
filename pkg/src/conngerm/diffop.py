"""Differential-operator rewriting in one variable, with subalgebra
membership tests for operators generated by constrained vector fields.

Operators live in the Weyl algebra Q[z]<d> with the single relation
d*f = f*d + f' (so d*z - z*d = 1).  Normal form: all coefficients moved
left of the powers of d, i.e. L = sum_k f_k(z) d^k.  Products are
computed by the Leibniz expansion

    (f d^a)(g d^b) = sum_j C(a,j) * f * g^(j) * d^(a+b-j).

Filtration: Lambda_i = operators of d-order <= i; the order of a product
is the sum of orders whenever both leading coefficients are nonzero.

Membership criterion.  Fix d >= 1 and let W be the subalgebra generated
by the polynomial coefficients and the single field w = z^d*d (poles of
multiplicity d; d = 1 is the logarithmic case, fields preserving the
ideal (z)).  Write S = { sum_k f_k d^k : z^(k*d) divides f_k for all k }.

* S is closed under products: for f d^a and g d^b with z^(a*d) | f and
  z^(b*d) | g, each Leibniz term has coefficient f*g^(j), divisible by
  z^(a*d + b*d - j); the required bound for order a+b-j is (a+b-j)*d,
  and the surplus is j*(d-1) >= 0.  Hence W is contained in S.
* Conversely every element of S is reached greedily: if z^(k*d) | f_k at
  the top order k, subtracting (f_k / z^(k*d)) * w^k kills the top term
  (w^k = z^(k*d) d^k + lower order) and the remainder stays in S, since
  S is closed under subtraction and contains both operands.  Recursing
  downward terminates at order 0 with an explicit certificate
  L = sum_k c_k * w^k, c_k polynomial.

So membership in W is decided coefficient-by-coefficient in linear time,
and a positive answer always comes with a certificate that normalizes
back to the input.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .poly import MPoly

ZVARS = ("z",)
NEG_INF = float("-inf")


def z_const(c):
    return MPoly.const(ZVARS, c)

def z_gen():
    return MPoly.gen(ZVARS, "z")

def z_power(k, c=1):
    return MPoly(ZVARS, {(k,): Fraction(c)})


class DiffOp:
    """Normal-form operator: map from d-power k >= 0 to a nonzero
    coefficient polynomial in z."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=None):
        clean = {}
        for k, f in (coeffs or {}).items():
            if not isinstance(k, int) or k < 0:
                raise ValueError("d-powers must be nonnegative integers")
            if isinstance(f, (int, Fraction)):
                f = z_const(f)
            if f:
                clean[k] = f
        self.coeffs = clean

    @classmethod
    def zero(cls):
        return cls({})

    @classmethod
    def one(cls):
        return cls({0: z_const(1)})

    @classmethod
    def d(cls):
        return cls({1: z_const(1)})

    @classmethod
    def coefficient(cls, f):
        return cls({0: f})

    def _coerce(self, other):
        if isinstance(other, DiffOp):
            return other
        if isinstance(other, (int, Fraction)):
            return DiffOp({0: z_const(other)})
        if isinstance(other, MPoly):
            return DiffOp({0: other})
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        coeffs = dict(self.coeffs)
        for k, f in other.coeffs.items():
            s = coeffs.get(k, z_const(0)) + f
            if s:
                coeffs[k] = s
            else:
                coeffs.pop(k, None)
        return DiffOp(coeffs)

    __radd__ = __add__

    def __neg__(self):
        return DiffOp({k: -f for k, f in self.coeffs.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        coeffs = {}
        for a, f in self.coeffs.items():
            for b, g in other.coeffs.items():
                gj = g
                for j in range(a + 1):
                    if not gj:
                        break
                    c = f * gj * math.comb(a, j)
                    k = a + b - j
                    s = coeffs.get(k, z_const(0)) + c
                    if s:
                        coeffs[k] = s
                    else:
                        coeffs.pop(k, None)
                    gj = gj.derivative("z")
        return DiffOp(coeffs)

    __rmul__ = __mul__

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            raise ValueError("exponent must be a nonnegative integer")
        result = DiffOp.one()
        for _ in range(n):
            result = result * self
        return result

    def __eq__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self.coeffs == other.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def order(self):
        """Filtration order: top d-power, -inf for the zero operator."""
        return max(self.coeffs) if self.coeffs else NEG_INF

    def coeff(self, k):
        return self.coeffs.get(k, z_const(0))

    def __str__(self):
        return render(self)

    def __repr__(self):
        return f"DiffOp({render(self)})"


def normalize(letters):
    """Fold a raw word (list of letters) into normal form.

    Letters are "d", polynomials in z, or plain rationals; the word is
    their noncommutative product read left to right.
    """
    result = DiffOp.one()
    for letter in letters:
        if isinstance(letter, str):
            if letter != "d":
                raise ValueError(f"unknown letter {letter!r}")
            result = result * DiffOp.d()
        else:
            result = result * letter
    return result


def multiply(a, b, variant=None):
    """Normalized product.  The variant flag is accepted for interface
    fidelity: with one coordinate, d commutes with itself, so integrable
    and nonintegrable products have identical normal forms."""
    return a * b


def filtration_order(a):
    return a.order()


@dataclass(frozen=True)
class LambdaVariant:
    """Which subalgebra of operators is meant.

    kind: "full" (no constraint), "meromorphic" (fields vanishing on the
    divisor d*[z=0], generated by z^pole_mult * d), or "logarithmic"
    (fields preserving the ideal (z), generated by z*d).  The integrable
    flag records the symmetric-vs-tensor algebra distinction; in one
    variable it does not affect normal forms.
    """

    kind: str
    pole_mult: int = 1
    integrable: bool = True

    def __post_init__(self):
        if self.kind not in ("full", "meromorphic", "logarithmic"):
            raise ValueError(f"unknown variant kind {self.kind!r}")
        if self.kind == "meromorphic" and self.pole_mult < 1:
            raise ValueError("meromorphic variant needs pole multiplicity >= 1")
        if self.kind == "logarithmic" and self.pole_mult != 1:
            raise ValueError("logarithmic variant has pole multiplicity 1")


@dataclass(frozen=True)
class Membership:
    """Outcome of a membership test, with certificate when positive.

    certificate is a tuple of (cofactor polynomial, power) pairs meaning
    sum cofactor * (z^d * d)^power; it normalizes back to the input.
    """

    member: bool
    variant: LambdaVariant
    certificate: tuple | None
    failing_order: int | None

    def certificate_str(self):
        if not self.member:
            return None
        d = self.variant.pole_mult
        gen = "z*d" if d == 1 else f"z^{d}*d"
        parts = []
        for cof, k in self.certificate:
            if k == 0:
                parts.append(_wrap_coeff(str(cof)))
                continue
            g = f"({gen})" if k == 1 else f"({gen})^{k}"
            cstr = str(cof)
            if cstr == "1":
                parts.append(g)
            else:
                parts.append(f"{_wrap_coeff(cstr)}*{g}")
        return " + ".join(parts) if parts else "0"


def _wrap_coeff(s):
    return f"({s})" if (" " in s or s.startswith("-")) else s


def _poly_valuation(f):
    return min(e[0] for e in f.terms)


def _shift_down(f, m):
    return MPoly(ZVARS, {(e[0] - m,): c for e, c in f.terms.items()})


def lambda_membership(a, variant):
    """Decide membership of a normalized operator in the subalgebra
    generated by the coefficients and z^d*d (see module docstring).

    Greedy top-down elimination; returns a Membership whose certificate,
    when present, has been verified by renormalization.
    """
    if variant.kind == "full":
        raise ValueError("membership is only constrained for the "
                         "meromorphic and logarithmic variants")
    d = variant.pole_mult
    remainder = a
    certificate = []
    while remainder and remainder.order() >= 1:
        k = remainder.order()
        f = remainder.coeff(k)
        if _poly_valuation(f) < k * d:
            return Membership(False, variant, None, k)
        cof = _shift_down(f, k * d)
        certificate.append((cof, k))
        generator_power = DiffOp({1: z_power(d)}) ** k
        remainder = remainder - DiffOp.coefficient(cof) * generator_power
    if remainder:
        certificate.append((remainder.coeff(0), 0))
    result = Membership(True, variant, tuple(certificate), None)
    # soundness: the certificate must reproduce the input exactly
    rebuilt = DiffOp.zero()
    for cof, k in result.certificate:
        rebuilt = rebuilt + DiffOp.coefficient(cof) * DiffOp({1: z_power(d)}) ** k
    if rebuilt != a:
        raise AssertionError("membership certificate failed to verify")
    return result


# -- printing -----------------------------------------------------------


def render(op):
    """Bit-exact normal-form printing: monomial terms sorted by
    descending d-order, then ascending z-degree."""
    if not op.coeffs:
        return "0"
    items = []
    for k in sorted(op.coeffs, reverse=True):
        f = op.coeffs[k]
        for exp in sorted(f.terms):
            items.append((k, exp[0], f.terms[exp]))
    out = []
    for i, (k, j, c) in enumerate(items):
        body = _term_body(k, j, c)
        if i == 0:
            out.append(body if c > 0 else "-" + body)
        else:
            out.append(("+ " if c > 0 else "- ") + body)
    return " ".join(out)


def _term_body(k, j, c):
    factors = []
    if j == 1:
        factors.append("z")
    elif j > 1:
        factors.append(f"z^{j}")
    if k == 1:
        factors.append("d")
    elif k > 1:
        factors.append(f"d^{k}")
    mag = abs(c)
    if not factors or mag != 1:
        factors.insert(0, str(mag))
    return "*".join(factors)


# -- parsing ------------------------------------------------------------


class DiffOpParseError(ValueError):
    def __init__(self, message, position):
        super().__init__(f"{message} (at position {position})")
        self.position = position


def _tokenize(text):
    tokens = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch.isdigit():
            j = i
            while j < len(text) and text[j].isdigit():
                j += 1
            tokens.append(("int", int(text[i:j]), i))
            i = j
            continue
        if ch in "dz+-*^()":
            tokens.append((ch, ch, i))
            i += 1
            continue
        raise DiffOpParseError(f"unexpected character {ch!r}", i)
    tokens.append(("end", None, len(text)))
    return tokens


class _Parser:
    """Recursive descent for: expr := term (('+'|'-') term)*;
    term := factor ('*' factor)*; factor := atom ('^' int)?;
    atom := 'd' | 'z' | int | '(' expr ')' | '-' atom."""

    def __init__(self, tokens):
        self.tokens = tokens
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos][0]

    def next(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect(self, kind):
        tok = self.next()
        if tok[0] != kind:
            raise DiffOpParseError(f"expected {kind!r}, got {tok[0]!r}", tok[2])
        return tok

    def expr(self):
        result = self.term()
        while self.peek() in ("+", "-"):
            op = self.next()[0]
            rhs = self.term()
            result = result + rhs if op == "+" else result - rhs
        return result

    def term(self):
        result = self.factor()
        while self.peek() == "*":
            self.next()
            result = result * self.factor()
        return result

    def factor(self):
        base = self.atom()
        if self.peek() == "^":
            self.next()
            tok = self.expect("int")
            base = base**tok[1]
        return base

    def atom(self):
        kind, value, pos = self.next()
        if kind == "d":
            return DiffOp.d()
        if kind == "z":
            return DiffOp.coefficient(z_gen())
        if kind == "int":
            return DiffOp.coefficient(z_const(value))
        if kind == "(":
            inner = self.expr()
            self.expect(")")
            return inner
        if kind == "-":
            return -self.atom()
        raise DiffOpParseError(f"unexpected token {kind!r}", pos)


def parse_diffop(text):
    """Parse the tiny infix grammar (tokens: d, z, integers, + - * ^ and
    parentheses) into a normalized operator."""
    parser = _Parser(_tokenize(text))
    result = parser.expr()
    end = parser.next()
    if end[0] != "end":
        raise DiffOpParseError(f"trailing input {end[0]!r}", end[2])
    return result
