"""Sparse multivariate polynomials with exact rational coefficients.

A monomial is a sorted tuple of ``(variable, exponent)`` pairs with positive
exponents, the empty tuple being the constant monomial.  Variables are any
mutually comparable hashable objects; the tower of semiroots uses the strings
``"x1"``, ``"x2"``, ``"z"`` and the jet equations use pairs such as
``("z", 3)`` for the coefficient of ``t^3`` in ``z(t)``.
"""

from fractions import Fraction
from numbers import Rational


def _mono_mul(a, b):
    if not a:
        return b
    if not b:
        return a
    out = []
    i = j = 0
    while i < len(a) and j < len(b):
        va, ea = a[i]
        vb, eb = b[j]
        if va == vb:
            out.append((va, ea + eb))
            i += 1
            j += 1
        elif va < vb:
            out.append(a[i])
            i += 1
        else:
            out.append(b[j])
            j += 1
    out.extend(a[i:])
    out.extend(b[j:])
    return tuple(out)


class Polynomial:
    __slots__ = ("terms",)

    def __init__(self, terms=None):
        clean = {}
        if terms:
            for mono, c in terms.items():
                c = Fraction(c)
                if c:
                    clean[mono] = c
        self.terms = clean

    # construction -----------------------------------------------------
    @classmethod
    def const(cls, c):
        return cls({(): c})

    @classmethod
    def var(cls, v, power=1):
        if power == 0:
            return cls.const(1)
        return cls({((v, power),): 1})

    @classmethod
    def monomial(cls, powers, coeff=1):
        mono = tuple(sorted((v, e) for v, e in powers.items() if e))
        return cls({mono: coeff})

    @staticmethod
    def _coerce(other):
        if isinstance(other, Polynomial):
            return other
        if isinstance(other, (Rational, int)):
            return Polynomial.const(other)
        return NotImplemented

    # arithmetic -------------------------------------------------------
    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for mono, c in other.terms.items():
            out[mono] = out.get(mono, 0) + c
        return Polynomial(out)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = {}
        for ma, ca in self.terms.items():
            for mb, cb in other.terms.items():
                m = _mono_mul(ma, mb)
                out[m] = out.get(m, 0) + ca * cb
        return Polynomial(out)

    __rmul__ = __mul__

    def __pow__(self, k):
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a nonnegative integer")
        result = Polynomial.const(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    # comparison -------------------------------------------------------
    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return False
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    # inspection -------------------------------------------------------
    def variables(self):
        out = set()
        for mono in self.terms:
            out.update(v for v, _ in mono)
        return out

    def degree(self, v=None):
        """Total degree, or the degree in the variable ``v``."""
        if not self.terms:
            return -1
        if v is None:
            return max(sum(e for _, e in m) for m in self.terms)
        return max(dict(m).get(v, 0) for m in self.terms)

    def weights(self, weight):
        """Set of weighted degrees of the monomials."""
        return {sum(weight(v) * e for v, e in m) for m in self.terms}

    def coefficient(self, powers):
        mono = tuple(sorted((v, e) for v, e in powers.items() if e))
        return self.terms.get(mono, Fraction(0))

    def substitute(self, values):
        """Replace variables by polynomials or numbers (partial substitution)."""
        out = Polynomial()
        cache = {}
        for mono, c in self.terms.items():
            term = Polynomial.const(c)
            keep = []
            for v, e in mono:
                if v in values:
                    key = (v, e)
                    if key not in cache:
                        cache[key] = self._coerce(values[v]) ** e
                    term = term * cache[key]
                else:
                    keep.append((v, e))
            if keep:
                term = term * Polynomial({tuple(keep): 1})
            out = out + term
        return out

    def drop(self, vanishing):
        """Set every variable for which ``vanishing(v)`` is true to zero."""
        return Polynomial({
            m: c for m, c in self.terms.items()
            if not any(vanishing(v) for v, _ in m)
        })

    def evaluate(self, values):
        """Numeric evaluation; ``values`` maps every variable to a number."""
        total = 0
        for mono, c in self.terms.items():
            term = c
            for v, e in mono:
                term = term * values[v] ** e
            total = total + term
        return total

    # display ----------------------------------------------------------
    @staticmethod
    def _vname(v):
        if isinstance(v, tuple):
            return f"{v[0]}({v[1]})"
        return str(v)

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for mono in sorted(self.terms, key=lambda m: (-sum(e for _, e in m), m), reverse=False):
            c = self.terms[mono]
            factors = "*".join(
                self._vname(v) + (f"^{e}" if e > 1 else "") for v, e in mono
            )
            if not factors:
                text = str(abs(c))
            elif abs(c) == 1:
                text = factors
            else:
                text = f"{abs(c)}*{factors}"
            parts.append(("-" if c < 0 else "+", text))
        head = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        return head + "".join(f" {s} {t}" for s, t in parts[1:])


X1, X2, Z = (Polynomial.var(v) for v in ("x1", "x2", "z"))


def jet_var(name, k):
    """The jet coordinate ``name^(k)`` as a polynomial."""
    return Polynomial.var((name, k))
