"""Exact multivariate polynomial arithmetic over the rationals.

Polynomials are stored sparsely as a map from exponent tuples to nonzero
Fraction coefficients, relative to a fixed ordered tuple of variable
names.  This is the coefficient substrate for the rest of the package:
quadric ideals, commutator identities, Laurent-series coefficients,
differential-operator coefficients.

Monomial orders are lex and degrevlex, with variable priority given by
the order's variable tuple.  Multivariate division (``normal_form``) and
Buchberger's algorithm provide ideal-membership tests for the small
determinantal-type ideals that occur here (at most eight variables,
quadratic generators), so no external computer-algebra system is needed.
"""

from __future__ import annotations

from fractions import Fraction

Rational = Fraction

_COEFF_TYPES = (int, Fraction)


def _to_coeff(c):
    if isinstance(c, Fraction):
        return c
    if isinstance(c, int):
        return Fraction(c)
    raise TypeError(f"coefficient must be rational, got {type(c).__name__}")


class MonomialOrder:
    """A total, multiplicative, well-founded order on monomials.

    kind is "lex" or "degrevlex".  The variable priority defaults to the
    given variable tuple; pass ``priority`` to reorder.  ``key`` maps an
    exponent tuple to a sort key whose maximum picks the leading term.
    """

    __slots__ = ("kind", "variables", "_perm")

    def __init__(self, kind, variables, priority=None):
        if kind not in ("lex", "degrevlex"):
            raise ValueError(f"unknown monomial order kind: {kind!r}")
        self.kind = kind
        self.variables = tuple(variables)
        if priority is None:
            self._perm = tuple(range(len(self.variables)))
        else:
            priority = tuple(priority)
            if sorted(priority) != sorted(self.variables):
                raise ValueError("priority must be a permutation of the variables")
            self._perm = tuple(self.variables.index(v) for v in priority)

    def key(self, exponent):
        e = tuple(exponent[i] for i in self._perm)
        if self.kind == "lex":
            return e
        # degrevlex: higher total degree wins; ties broken by the
        # smallest last-variable share (reversed, negated exponents).
        return (sum(e), tuple(-x for x in reversed(e)))

    def leading(self, poly):
        """Leading (exponent, coefficient) of a nonzero polynomial."""
        if not poly.terms:
            raise ValueError("zero polynomial has no leading term")
        exp = max(poly.terms, key=self.key)
        return exp, poly.terms[exp]

    def sorted_exponents(self, poly, reverse=True):
        return sorted(poly.terms, key=self.key, reverse=reverse)

    def __repr__(self):
        return f"MonomialOrder({self.kind!r}, {self.variables!r})"


class MPoly:
    """Multivariate polynomial with exact rational coefficients.

    terms maps exponent tuples (one entry per variable) to nonzero
    Fraction coefficients.  Instances are immutable by convention: no
    method mutates ``self`` after construction.
    """

    __slots__ = ("variables", "terms")

    def __init__(self, variables, terms=None):
        self.variables = tuple(variables)
        n = len(self.variables)
        clean = {}
        for exp, c in (terms or {}).items():
            exp = tuple(exp)
            if len(exp) != n:
                raise ValueError(
                    f"exponent {exp} does not match {n} variables"
                )
            c = _to_coeff(c)
            if c:
                clean[exp] = clean.get(exp, Fraction(0)) + c
                if not clean[exp]:
                    del clean[exp]
        self.terms = clean

    # -- constructors -------------------------------------------------

    @classmethod
    def zero(cls, variables):
        return cls(variables, {})

    @classmethod
    def const(cls, variables, c):
        c = _to_coeff(c)
        if not c:
            return cls(variables, {})
        return cls(variables, {(0,) * len(tuple(variables)): c})

    @classmethod
    def gen(cls, variables, name):
        variables = tuple(variables)
        i = variables.index(name)
        exp = tuple(1 if j == i else 0 for j in range(len(variables)))
        return cls(variables, {exp: Fraction(1)})

    # -- ring structure -----------------------------------------------

    def _coerce(self, other):
        if isinstance(other, MPoly):
            if other.variables != self.variables:
                raise ValueError(
                    f"variable mismatch: {self.variables} vs {other.variables}"
                )
            return other
        if isinstance(other, _COEFF_TYPES):
            return MPoly.const(self.variables, other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        terms = dict(self.terms)
        for exp, c in other.terms.items():
            s = terms.get(exp, Fraction(0)) + c
            if s:
                terms[exp] = s
            else:
                terms.pop(exp, None)
        return MPoly(self.variables, terms)

    __radd__ = __add__

    def __neg__(self):
        return MPoly(self.variables, {e: -c for e, c in self.terms.items()})

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
        terms = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                exp = tuple(a + b for a, b in zip(e1, e2))
                s = terms.get(exp, Fraction(0)) + c1 * c2
                if s:
                    terms[exp] = s
                else:
                    del terms[exp]
        return MPoly(self.variables, terms)

    __rmul__ = __mul__

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            raise ValueError("exponent must be a nonnegative integer")
        result = MPoly.const(self.variables, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, _COEFF_TYPES):
            other = MPoly.const(self.variables, other)
        if not isinstance(other, MPoly):
            return NotImplemented
        return self.variables == other.variables and self.terms == other.terms

    def __hash__(self):
        return hash((self.variables, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    # -- queries ------------------------------------------------------

    def degree(self):
        """Total degree; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def degree_in(self, name):
        i = self.variables.index(name)
        if not self.terms:
            return -1
        return max(e[i] for e in self.terms)

    def coeff(self, exponent):
        return self.terms.get(tuple(exponent), Fraction(0))

    def involves(self, name):
        i = self.variables.index(name)
        return any(e[i] for e in self.terms)

    def is_const(self):
        return all(not any(e) for e in self.terms)

    def const_value(self):
        if not self.is_const():
            raise ValueError("not a constant polynomial")
        zero = (0,) * len(self.variables)
        return self.terms.get(zero, Fraction(0))

    # -- calculus and substitution -------------------------------------

    def derivative(self, name):
        i = self.variables.index(name)
        terms = {}
        for exp, c in self.terms.items():
            if exp[i]:
                new = list(exp)
                new[i] -= 1
                terms[tuple(new)] = c * exp[i]
        return MPoly(self.variables, terms)

    def evaluate(self, values):
        """Fully evaluate; values maps every occurring variable name to a
        Fraction/int or to an element of another (duck-typed) ring."""
        total = Fraction(0)
        for exp, c in self.terms.items():
            part = c
            for i, e in enumerate(exp):
                if e:
                    name = self.variables[i]
                    if name not in values:
                        raise KeyError(f"no value supplied for {name!r}")
                    part = part * values[name] ** e
            total = part + total
        return total

    def subs(self, values):
        """Partial substitution; unsubstituted variables stay symbolic.
        Values may be scalars or polynomials in the same ring."""
        result = MPoly.zero(self.variables)
        gens = {v: MPoly.gen(self.variables, v) for v in self.variables}
        for exp, c in self.terms.items():
            part = MPoly.const(self.variables, c)
            for i, e in enumerate(exp):
                if e:
                    name = self.variables[i]
                    base = values.get(name, gens[name])
                    if not isinstance(base, MPoly):
                        base = MPoly.const(self.variables, base)
                    part = part * base ** e
            result = result + part
        return result

    # -- printing ------------------------------------------------------

    def _term_str(self, exp, c):
        factors = []
        mag = abs(c)
        for name, e in zip(self.variables, exp):
            if e == 1:
                factors.append(name)
            elif e > 1:
                factors.append(f"{name}^{e}")
        if not factors or mag != 1:
            factors.insert(0, str(mag))
        return "*".join(factors)

    def __str__(self):
        if not self.terms:
            return "0"
        # graded-lex descending: stable across runs and platforms
        exps = sorted(self.terms, key=lambda e: (sum(e), e), reverse=True)
        out = []
        for i, exp in enumerate(exps):
            c = self.terms[exp]
            body = self._term_str(exp, c)
            if i == 0:
                out.append(body if c > 0 else "-" + body)
            else:
                out.append(("+ " if c > 0 else "- ") + body)
        return " ".join(out)

    def __repr__(self):
        return f"MPoly({str(self)})"


def ring(names):
    """Generators of a polynomial ring: ring("x,y") -> (x, y)."""
    if isinstance(names, str):
        names = tuple(n.strip() for n in names.split(","))
    else:
        names = tuple(names)
    return tuple(MPoly.gen(names, n) for n in names)


def poly_arith(a, b, op):
    """Dispatch-style arithmetic entry point: op in {add, sub, mul}."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown op: {op!r}")


# -- division and Groebner bases ---------------------------------------


def _monomial_divides(d, e):
    return all(a <= b for a, b in zip(d, e))


def _monomial_lcm(d, e):
    return tuple(max(a, b) for a, b in zip(d, e))


def _monomial_mul_poly(exp, c, p):
    terms = {}
    for e, pc in p.terms.items():
        terms[tuple(a + b for a, b in zip(exp, e))] = c * pc
    return MPoly(p.variables, terms)


def normal_form(f, basis, order):
    """Remainder of f under multivariate division by basis.

    Every term of the remainder is divisible by no leading monomial of
    the basis.  When basis is a Groebner basis, the remainder is the
    canonical representative of f modulo the ideal, and f lies in the
    ideal iff the remainder is zero.
    """
    basis = [g for g in basis if g]
    if not basis:
        raise ValueError("basis must contain a nonzero polynomial")
    for g in basis:
        if g.variables != f.variables:
            raise ValueError("basis/argument variable mismatch")
    leads = [order.leading(g) for g in basis]
    p = f
    remainder = MPoly.zero(f.variables)
    while p:
        exp, c = order.leading(p)
        for g, (gexp, gc) in zip(basis, leads):
            if _monomial_divides(gexp, exp):
                q = tuple(a - b for a, b in zip(exp, gexp))
                p = p - _monomial_mul_poly(q, c / gc, g)
                break
        else:
            t = MPoly(f.variables, {exp: c})
            remainder = remainder + t
            p = p - t
    return remainder


def s_polynomial(f, g, order):
    fe, fc = order.leading(f)
    ge, gc = order.leading(g)
    lcm = _monomial_lcm(fe, ge)
    uf = tuple(a - b for a, b in zip(lcm, fe))
    ug = tuple(a - b for a, b in zip(lcm, ge))
    return _monomial_mul_poly(uf, Fraction(1) / fc, f) - _monomial_mul_poly(
        ug, Fraction(1) / gc, g
    )


def _monic(f, order):
    _, c = order.leading(f)
    return f * (Fraction(1) / c)


def buchberger(generators, order):
    """Reduced monic Groebner basis of the ideal the generators span.

    Plain Buchberger with first-found pair selection and the product
    criterion (coprime leading monomials are skipped).  Termination is
    Dickson's lemma.  Adequate for the ideals in scope: few variables,
    low degree.  The output is inter-reduced, monic, and sorted by
    leading monomial, so it is canonical for the given order.
    """
    basis = [_monic(g, order) for g in generators if g]
    if not basis:
        raise ValueError("no nonzero generators")
    pairs = [(i, j) for i in range(len(basis)) for j in range(i + 1, len(basis))]
    while pairs:
        i, j = pairs.pop(0)
        ei, _ = order.leading(basis[i])
        ej, _ = order.leading(basis[j])
        if _monomial_lcm(ei, ej) == tuple(a + b for a, b in zip(ei, ej)):
            continue  # product criterion: coprime leads never yield new elements
        r = normal_form(s_polynomial(basis[i], basis[j], order), basis, order)
        if r:
            basis.append(_monic(r, order))
            k = len(basis) - 1
            pairs.extend((i2, k) for i2 in range(k))
    return _reduce_basis(basis, order)


def _reduce_basis(basis, order):
    # minimal: drop any element whose lead is divisible by another's lead
    minimal = []
    for i, g in enumerate(basis):
        ge, _ = order.leading(g)
        if any(
            _monomial_divides(order.leading(h)[0], ge)
            for j, h in enumerate(basis)
            if j != i and (j < i or order.leading(h)[0] != ge)
        ):
            continue
        minimal.append(g)
    # reduced: tail-reduce every element against the others
    reduced = []
    for i, g in enumerate(minimal):
        others = minimal[:i] + minimal[i + 1 :]
        if others:
            g = normal_form(g, others, order)
        if g:
            reduced.append(_monic(g, order))
    reduced.sort(key=lambda g: order.key(order.leading(g)[0]))
    return reduced


def is_groebner(basis, order):
    """Check the Buchberger criterion: all S-polynomials reduce to 0."""
    for i in range(len(basis)):
        for j in range(i + 1, len(basis)):
            s = s_polynomial(basis[i], basis[j], order)
            if s and normal_form(s, basis, order):
                return False
    return True
