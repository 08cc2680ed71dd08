"""Exact scalar rings, sparse monomial algebra, and a modular determinant kernel.

Scalars come in four flavours: plain ``int``/``Fraction`` (handled by the
stdlib), ``Golden`` for the ring Q(phi) needed by the H types, ``CycReal``
for the real cyclotomic ring Q(2cos(pi/m)) used by generic dihedral groups,
and ``Mod`` for prime-field evaluation.  Everything is immutable and exact;
no floating point appears anywhere in this module.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .errors import (
    DivisionByZero,
    MixedRings,
    UnassignedVariable,
)


class Golden:
    """Element a + b*phi of Q(phi), with phi**2 = phi + 1."""

    __slots__ = ("a", "b")

    def __init__(self, a=0, b=0):
        self.a = Fraction(a)
        self.b = Fraction(b)

    @staticmethod
    def _coerce(x):
        if isinstance(x, Golden):
            return x
        if isinstance(x, (int, Fraction)):
            return Golden(x, 0)
        if isinstance(x, CycReal):
            raise MixedRings("cannot mix Golden and CycReal operands")
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Golden(self.a + o.a, self.b + o.b)

    __radd__ = __add__

    def __neg__(self):
        return Golden(-self.a, -self.b)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Golden(self.a - o.a, self.b - o.b)

    def __rsub__(self, other):
        return -self + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        # (a1 + b1 phi)(a2 + b2 phi) with phi^2 = phi + 1
        return Golden(
            self.a * o.a + self.b * o.b,
            self.a * o.b + self.b * o.a + self.b * o.b,
        )

    __rmul__ = __mul__

    def inverse(self):
        # conjugate of phi is 1 - phi; norm = a^2 + a b - b^2
        norm = self.a * self.a + self.a * self.b - self.b * self.b
        if norm == 0:
            raise DivisionByZero("inverse of zero in Q(phi)")
        return Golden((self.a + self.b) / norm, -self.b / norm)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.a == o.a and self.b == o.b

    def __hash__(self):
        return hash((self.a, self.b))

    def __repr__(self):
        return f"Golden({self.a}, {self.b})"


@lru_cache(maxsize=None)
def minimal_polynomial_2cos(m: int) -> tuple[int, ...]:
    """Monic minimal polynomial of 2cos(pi/m), descending integer coefficients."""
    if m < 3:
        raise ValueError("m must be >= 3")
    import sympy

    x = sympy.Symbol("x")
    poly = sympy.minimal_polynomial(2 * sympy.cos(sympy.pi / m), x, polys=True)
    coeffs = tuple(int(c) for c in poly.all_coeffs())
    assert coeffs[0] == 1
    return coeffs


def _poly_mod(coeffs, minpoly):
    """Reduce a low-degree-first coefficient list modulo monic minpoly."""
    d = len(minpoly) - 1
    coeffs = list(coeffs)
    # minpoly descending: x^d = -(minpoly[1] x^(d-1) + ... + minpoly[d])
    tail = [Fraction(-c) for c in minpoly[1:]]  # descending, degree d-1 .. 0
    while len(coeffs) > d:
        top = coeffs.pop()
        k = len(coeffs) - d  # shift for x^(d+k)
        for i, c in enumerate(tail):
            # tail[i] multiplies x^(d-1-i)
            coeffs[k + d - 1 - i] += top * c
    while len(coeffs) < d:
        coeffs.append(Fraction(0))
    return tuple(Fraction(c) for c in coeffs)


class CycReal:
    """Element of Q(theta), theta = 2cos(pi/m), coefficients low-degree first."""

    __slots__ = ("m", "coeffs")

    def __init__(self, m, coeffs=(0,)):
        self.m = m
        self.coeffs = _poly_mod([Fraction(c) for c in coeffs],
                                minimal_polynomial_2cos(m))

    @classmethod
    def theta(cls, m):
        return cls(m, (0, 1))

    def _coerce(self, x):
        if isinstance(x, CycReal):
            if x.m != self.m:
                raise MixedRings("CycReal operands from different rings")
            return x
        if isinstance(x, (int, Fraction)):
            return CycReal(self.m, (x,))
        if isinstance(x, Golden):
            raise MixedRings("cannot mix CycReal and Golden operands")
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return CycReal(self.m, [a + b for a, b in zip(self.coeffs, o.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        return CycReal(self.m, [-a for a in self.coeffs])

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return -self + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        d = len(self.coeffs)
        prod = [Fraction(0)] * (2 * d - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(o.coeffs):
                    prod[i + j] += a * b
        return CycReal(self.m, prod)

    __rmul__ = __mul__

    def inverse(self):
        # extended Euclid against the (irreducible) minimal polynomial
        if not any(self.coeffs):
            raise DivisionByZero("inverse of zero in Q(theta)")
        minpoly = minimal_polynomial_2cos(self.m)
        a = [Fraction(c) for c in reversed(minpoly)]  # low-first
        b = list(self.coeffs)
        # invariants: s_a*self + t_a*minpoly = a  (t coefficients irrelevant)
        s_a, s_b = [Fraction(0)], [Fraction(1)]

        def deg(p):
            for i in range(len(p) - 1, -1, -1):
                if p[i]:
                    return i
            return -1

        def sub_scaled(p, q, c, k):
            res = list(p) + [Fraction(0)] * max(0, len(q) + k - len(p))
            for i, qc in enumerate(q):
                res[i + k] -= c * qc
            return res

        while deg(b) > 0:
            while deg(a) >= deg(b):
                da, db = deg(a), deg(b)
                c = a[da] / b[db]
                a = sub_scaled(a, b, c, da - db)
                s_a = sub_scaled(s_a, s_b, c, da - db)
            a, b, s_a, s_b = b, a, s_b, s_a
        db = deg(b)
        if db < 0:
            raise DivisionByZero("inverse of zero divisor in Q(theta)")
        lead = b[db]
        return CycReal(self.m, [c / lead for c in s_b])

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.coeffs == o.coeffs

    def __hash__(self):
        return hash((self.m, self.coeffs))

    def __repr__(self):
        return f"CycReal(m={self.m}, {self.coeffs})"


@dataclass(frozen=True)
class Mod:
    """Residue in the prime field of p elements."""

    value: int
    p: int

    def __post_init__(self):
        object.__setattr__(self, "value", self.value % self.p)

    def _check(self, other):
        if isinstance(other, int):
            return Mod(other, self.p)
        if isinstance(other, Mod):
            if other.p != self.p:
                raise MixedRings("Mod operands with different moduli")
            return other
        return None

    def __add__(self, other):
        o = self._check(other)
        if o is None:
            return NotImplemented
        return Mod(self.value + o.value, self.p)

    __radd__ = __add__

    def __neg__(self):
        return Mod(-self.value, self.p)

    def __sub__(self, other):
        o = self._check(other)
        if o is None:
            return NotImplemented
        return Mod(self.value - o.value, self.p)

    def __rsub__(self, other):
        return -self + other

    def __mul__(self, other):
        o = self._check(other)
        if o is None:
            return NotImplemented
        return Mod(self.value * o.value, self.p)

    __rmul__ = __mul__

    def inverse(self):
        if self.value == 0:
            raise DivisionByZero("inverse of 0 mod p")
        return Mod(pow(self.value, self.p - 2, self.p), self.p)

    def __truediv__(self, other):
        o = self._check(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __pow__(self, e):
        return Mod(pow(self.value, e, self.p), self.p)


def det_mod_p(matrix, p: int) -> Mod:
    """Determinant over the field of p elements.

    Accepts nested int lists, Mod entries, or an integer ndarray.  Gaussian
    elimination with first-nonzero pivoting; deterministic for fixed input.
    Requires p < 2**31.5 so products stay within int64.
    """
    if isinstance(matrix, np.ndarray):
        M = matrix.astype(np.int64) % p
    else:
        rows = [[e.value if isinstance(e, Mod) else int(e) for e in row]
                for row in matrix]
        M = np.array(rows, dtype=np.int64) % p
    n = M.shape[0]
    assert M.shape == (n, n)
    det = 1
    for k in range(n):
        col = M[k:, k]
        nz = np.nonzero(col)[0]
        if len(nz) == 0:
            return Mod(0, p)
        piv = k + int(nz[0])
        if piv != k:
            M[[k, piv]] = M[[piv, k]]
            det = -det
        pivval = int(M[k, k])
        det = det * pivval % p
        if k + 1 < n:
            inv = pow(pivval, p - 2, p)
            factors = M[k + 1:, k] * inv % p
            M[k + 1:, k:] = (M[k + 1:, k:] - np.outer(factors, M[k, k:])) % p
    return Mod(det, p)


@dataclass(frozen=True, order=True)
class Monomial:
    """Sparse monomial: sorted tuple of (variable, exponent) pairs."""

    exps: tuple[tuple[str, int], ...] = ()

    @classmethod
    def from_vars(cls, variables):
        """Product of the given variables (repeats accumulate exponents)."""
        acc = {}
        for v in variables:
            acc[v] = acc.get(v, 0) + 1
        return cls.from_dict(acc)

    @classmethod
    def from_dict(cls, d):
        return cls(tuple(sorted((v, e) for v, e in d.items() if e)))

    def __mul__(self, other):
        acc = dict(self.exps)
        for v, e in other.exps:
            acc[v] = acc.get(v, 0) + e
        return Monomial.from_dict(acc)

    def __pow__(self, k):
        return Monomial(tuple((v, e * k) for v, e in self.exps)) if k else Monomial()

    @property
    def degree(self):
        return sum(e for _, e in self.exps)

    def variables(self):
        return [v for v, _ in self.exps]

    def eval_mod(self, point, p) -> int:
        r = 1
        for v, e in self.exps:
            if v not in point:
                raise UnassignedVariable(v)
            val = point[v]
            if isinstance(val, Mod):
                val = val.value
            r = r * pow(val % p, e, p) % p
        return r

    def sort_key(self):
        return (self.degree, self.exps)

    def __str__(self):
        if not self.exps:
            return "1"
        return "*".join(v if e == 1 else f"{v}^{e}" for v, e in self.exps)


@dataclass(frozen=True)
class Factorization:
    """Product of (1 - m_i**2)**e_i over stored (monomial, exponent) pairs.

    Stores the edge weight itself, not its square; squaring happens at
    render/evaluation time.  ``normalize`` gives the canonical sorted,
    merged form.
    """

    factors: tuple[tuple[Monomial, int], ...] = ()

    def normalize(self) -> "Factorization":
        acc = {}
        for m, e in self.factors:
            acc[m] = acc.get(m, 0) + e
        items = [(m, e) for m, e in acc.items() if e != 0]
        items.sort(key=lambda me: me[0].sort_key())
        return Factorization(tuple(items))

    def __mul__(self, other):
        return Factorization(self.factors + other.factors).normalize()

    def scale_exponents(self, k: int) -> "Factorization":
        return Factorization(tuple((m, e * k) for m, e in self.factors))

    def eval_mod(self, point, p) -> Mod:
        r = 1
        for m, e in self.factors:
            val = m.eval_mod(point, p)
            r = r * pow((1 - val * val) % p, e, p) % p
        return Mod(r, p)

    @property
    def total_degree(self) -> int:
        return sum(e * 2 * m.degree for m, e in self.factors)

    def variables(self):
        vs = set()
        for m, _ in self.factors:
            vs.update(m.variables())
        return sorted(vs)

    def to_sympy(self):
        import sympy

        expr = sympy.Integer(1)
        for m, e in self.factors:
            term = sympy.Integer(1)
            for v, k in m.exps:
                term *= sympy.Symbol(v) ** k
            expr *= (1 - term**2) ** e
        return expr

    def __str__(self):
        if not self.factors:
            return "1"
        parts = []
        for m, e in self.factors:
            ms = str(m)
            sq = "1" if ms == "1" else "".join(
                v + ("^%d" % (2 * k) if 2 * k != 1 else "") for v, k in m.exps
            )
            parts.append(f"(1-{sq})^{e}")
        return " ".join(parts)
