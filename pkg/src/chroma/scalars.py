"""Exact scalar arithmetic.

Two layers:

* ``Scalar`` -- the multiplicative group of monomials zeta * prod(v**e),
  a root of unity times a Laurent monomial in named generic variables.
  Every structure constant handled symbolically by the braiding-matrix
  machinery is such a monomial; the generic variables carry no relations
  among themselves or with the roots of unity.

* ``Cyclo`` -- elements of the cyclotomic field Q(zeta_N), stored as
  residues modulo the N-th cyclotomic polynomial.  Linear algebra over
  these is exact and zero-testing is canonical.

Roots of unity are represented additively by ``Rational01``: the reduced
fraction k/N in [0, 1) stands for exp(2*pi*i*k/N).
"""

from __future__ import annotations

import functools
import math
import re
from fractions import Fraction


class ParseError(ValueError):
    """Raised on malformed scalar text; carries the offending position."""

    def __init__(self, message: str, pos: int):
        super().__init__(f"{message} (at position {pos})")
        self.pos = pos


# ---------------------------------------------------------------------------
# roots of unity
# ---------------------------------------------------------------------------


class Rational01:
    """A rational residue mod 1, i.e. the root of unity exp(2*pi*i*num/den).

    Always stored reduced with 0 <= num < den, so equality is structural.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: int = 0, den: int = 1):
        if den == 0:
            raise ZeroDivisionError("zero denominator")
        if den < 0:
            num, den = -num, -den
        num %= den
        g = math.gcd(num, den)
        self.num = num // g
        self.den = den // g

    @classmethod
    def from_fraction(cls, f: Fraction) -> "Rational01":
        return cls(f.numerator, f.denominator)

    def __add__(self, other: "Rational01") -> "Rational01":
        return Rational01(self.num * other.den + other.num * self.den,
                          self.den * other.den)

    def __sub__(self, other: "Rational01") -> "Rational01":
        return Rational01(self.num * other.den - other.num * self.den,
                          self.den * other.den)

    def __neg__(self) -> "Rational01":
        return Rational01(-self.num, self.den)

    def scale(self, k: int) -> "Rational01":
        return Rational01(self.num * k, self.den)

    def is_zero(self) -> bool:
        return self.num == 0

    @property
    def order(self) -> int:
        """Multiplicative order of the root of unity."""
        return self.den

    def as_fraction(self) -> Fraction:
        return Fraction(self.num, self.den)

    def __eq__(self, other) -> bool:
        return (isinstance(other, Rational01)
                and self.num == other.num and self.den == other.den)

    def __hash__(self):
        return hash((self.num, self.den))

    def __repr__(self):
        return f"Rational01({self.num}, {self.den})"

    def __str__(self):
        return f"{self.num}/{self.den}"

    @classmethod
    def parse(cls, text: str) -> "Rational01":
        """Parse the "num/den" serialization (a bare integer is allowed)."""
        text = text.strip()
        if "/" in text:
            a, b = text.split("/", 1)
            return cls(int(a), int(b))
        return cls(int(text), 1)


R01_ZERO = Rational01(0, 1)
R01_HALF = Rational01(1, 2)


# ---------------------------------------------------------------------------
# monomial scalars
# ---------------------------------------------------------------------------

_VAR_RE = re.compile(r"[a-z][a-z0-9]*\Z")


class Scalar:
    """A nonzero monomial: root of unity times a product of variable powers.

    Two scalars are equal iff their root and all exponents agree; the
    variables are mutually independent generics, so there are no hidden
    relations to normalize away beyond dropping zero exponents.
    Immutable and hashable.
    """

    __slots__ = ("root", "exps")

    def __init__(self, root: Rational01 = R01_ZERO, exps=()):
        if isinstance(exps, dict):
            exps = exps.items()
        cleaned = []
        for name, e in sorted(exps):
            if not _VAR_RE.match(name) or name == "zeta":
                raise ValueError(f"bad variable name {name!r}")
            if e != 0:
                cleaned.append((name, int(e)))
        self.root = root
        self.exps = tuple(cleaned)

    # -- constructors ------------------------------------------------------

    @classmethod
    def one(cls) -> "Scalar":
        return cls()

    @classmethod
    def minus_one(cls) -> "Scalar":
        return cls(R01_HALF)

    @classmethod
    def from_root(cls, root: Rational01) -> "Scalar":
        return cls(root)

    @classmethod
    def zeta(cls, n: int, k: int = 1) -> "Scalar":
        return cls(Rational01(k, n))

    @classmethod
    def variable(cls, name: str, exp: int = 1) -> "Scalar":
        return cls(R01_ZERO, ((name, exp),))

    # -- group structure ---------------------------------------------------

    def __mul__(self, other: "Scalar") -> "Scalar":
        merged = dict(self.exps)
        for name, e in other.exps:
            merged[name] = merged.get(name, 0) + e
        return Scalar(self.root + other.root, merged)

    def inverse(self) -> "Scalar":
        return Scalar(-self.root, tuple((n, -e) for n, e in self.exps))

    def __pow__(self, k: int) -> "Scalar":
        return Scalar(self.root.scale(k), tuple((n, e * k) for n, e in self.exps))

    def is_one(self) -> bool:
        return self.root.is_zero() and not self.exps

    def exponent_of(self, name: str) -> int:
        for n, e in self.exps:
            if n == name:
                return e
        return 0

    def __eq__(self, other) -> bool:
        return (isinstance(other, Scalar)
                and self.root == other.root and self.exps == other.exps)

    def __hash__(self):
        return hash((self.root, self.exps))

    def __repr__(self):
        return f"Scalar({self!s})"

    # -- text form ---------------------------------------------------------

    def __str__(self):
        """Emit in the scalar grammar, root first, variables alphabetically.

        "1" stands for the empty product; the rest follows
        ``factor := "-1" | "zeta(N,k)" | var("^"int)?`` joined by "*".
        """
        parts = []
        if self.root == R01_HALF:
            parts.append("-1")
        elif not self.root.is_zero():
            parts.append(f"zeta({self.root.den},{self.root.num})")
        for name, e in self.exps:
            parts.append(name if e == 1 else f"{name}^{e}")
        return "*".join(parts) if parts else "1"


_ZETA_RE = re.compile(r"zeta\((\d+),(-?\d+)\)\Z")
_FACTOR_RE = re.compile(r"([a-z][a-z0-9]*)(?:\^(-?\d+))?\Z")


def parse_scalar(text: str) -> Scalar:
    """Parse the scalar grammar; inverse of ``str(scalar)``."""
    pos = 0
    result = Scalar.one()
    seen = False
    for piece in text.split("*"):
        factor = piece.strip()
        offset = pos + piece.index(factor) if factor else pos
        pos += len(piece) + 1
        if factor == "":
            raise ParseError("empty factor", offset)
        seen = True
        if factor == "1":
            continue
        if factor == "-1":
            result = result * Scalar.minus_one()
            continue
        m = _ZETA_RE.match(factor)
        if m:
            n, k = int(m.group(1)), int(m.group(2))
            if n <= 0:
                raise ParseError("zeta needs a positive order", offset)
            result = result * Scalar.zeta(n, k)
            continue
        m = _FACTOR_RE.match(factor)
        if m and m.group(1) != "zeta":
            e = int(m.group(2)) if m.group(2) else 1
            result = result * Scalar.variable(m.group(1), e)
            continue
        raise ParseError(f"cannot parse factor {factor!r}", offset)
    if not seen:
        raise ParseError("empty scalar", 0)
    return result


def order_of(a: Scalar) -> int | None:
    """Multiplicative order of ``a``; None when infinite (generic variables)."""
    if a.exps:
        return None
    return a.root.den


def solve_power(a: Scalar, b: Scalar) -> int | None:
    """Least n >= 0 with a**n == b, or None when no such n exists.

    Variable exponents pin n down over the integers; the root parts add
    the congruence n*root(a) == root(b) (mod 1).
    """
    n_from_vars: int | None = None
    names = {n for n, _ in a.exps} | {n for n, _ in b.exps}
    for name in names:
        av, bv = a.exponent_of(name), b.exponent_of(name)
        if av == 0:
            if bv != 0:
                return None
            continue
        if bv % av != 0:
            return None
        n = bv // av
        if n < 0:
            return None
        if n_from_vars is not None and n != n_from_vars:
            return None
        n_from_vars = n
    if n_from_vars is not None:
        return n_from_vars if a.root.scale(n_from_vars) == b.root else None
    # pure roots of unity: scan one period of the cyclic group <root(a)>
    if b.exps:
        return None
    for n in range(a.root.den):
        if a.root.scale(n) == b.root:
            return n
    return None


# ---------------------------------------------------------------------------
# cyclotomic fields
# ---------------------------------------------------------------------------


def _poly_divmod_int(num: list[int], den: list[int]) -> tuple[list[int], list[int]]:
    # exact division of integer polynomials by a monic divisor
    num = list(num)
    deg_d = len(den) - 1
    quot = [0] * max(len(num) - deg_d, 0)
    for i in range(len(num) - 1, deg_d - 1, -1):
        c = num[i]
        if c == 0:
            continue
        quot[i - deg_d] = c
        for j, dj in enumerate(den):
            num[i - deg_d + j] -= c * dj
    while len(num) > 1 and num[-1] == 0:
        num.pop()
    return quot, num


@functools.lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Integer coefficients of Phi_n, low degree first."""
    if n < 1:
        raise ValueError("conductor must be positive")
    if n == 1:
        return (-1, 1)
    poly = [0] * n + [1]
    poly[0] = -1  # x^n - 1
    for d in range(1, n):
        if n % d == 0:
            poly, rem = _poly_divmod_int(poly, list(cyclotomic_polynomial(d)))
            assert all(c == 0 for c in rem)
    return tuple(poly)


@functools.lru_cache(maxsize=None)
def _power_table(n: int) -> tuple[tuple[Fraction, ...], ...]:
    # x^k mod Phi_n for 0 <= k < n
    phi = cyclotomic_polynomial(n)
    deg = len(phi) - 1
    table = []
    current = [Fraction(0)] * deg
    current[0] = Fraction(1)
    for _ in range(n):
        table.append(tuple(current))
        # multiply by x
        carry = current[-1]
        current = [Fraction(0)] + current[:-1]
        if carry:
            for j in range(deg):
                current[j] -= carry * phi[j]
    return tuple(table)


class Cyclo:
    """An element of Q(zeta_N), reduced modulo the N-th cyclotomic polynomial."""

    __slots__ = ("N", "coeffs")

    def __init__(self, N: int, coeffs):
        phi = cyclotomic_polynomial(N)
        deg = len(phi) - 1
        coeffs = list(coeffs)
        if len(coeffs) > deg:
            # reduce high-degree terms using x^deg = -sum phi_j x^j
            for i in range(len(coeffs) - 1, deg - 1, -1):
                c = coeffs[i]
                if c:
                    for j in range(deg):
                        coeffs[i - deg + j] -= c * phi[j]
                coeffs[i] = Fraction(0)
            coeffs = coeffs[:deg]
        while len(coeffs) < deg:
            coeffs.append(Fraction(0))
        self.N = N
        self.coeffs = tuple(Fraction(c) for c in coeffs)

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, N: int) -> "Cyclo":
        return cls(N, ())

    @classmethod
    def one(cls, N: int) -> "Cyclo":
        return cls(N, (Fraction(1),))

    @classmethod
    def from_rational(cls, q, N: int) -> "Cyclo":
        return cls(N, (Fraction(q),))

    @classmethod
    def embed(cls, r: Rational01, N: int) -> "Cyclo":
        """The root of unity exp(2*pi*i*r) as an element of Q(zeta_N)."""
        if N % r.den != 0:
            raise ValueError(f"order {r.den} does not divide conductor {N}")
        k = (N // r.den) * r.num
        return cls(N, _power_table(N)[k % N])

    # -- ring/field operations ----------------------------------------------

    def _check(self, other: "Cyclo"):
        if self.N != other.N:
            raise ValueError(f"conductor mismatch: {self.N} vs {other.N}")

    def __add__(self, other: "Cyclo") -> "Cyclo":
        self._check(other)
        return Cyclo(self.N, (a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "Cyclo") -> "Cyclo":
        self._check(other)
        return Cyclo(self.N, (a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> "Cyclo":
        return Cyclo(self.N, (-a for a in self.coeffs))

    def __mul__(self, other: "Cyclo") -> "Cyclo":
        self._check(other)
        a, b = self.coeffs, other.coeffs
        out = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    if bj:
                        out[i + j] += ai * bj
        return Cyclo(self.N, out)

    def scale(self, q) -> "Cyclo":
        q = Fraction(q)
        return Cyclo(self.N, (a * q for a in self.coeffs))

    def inverse(self) -> "Cyclo":
        """Multiplicative inverse via extended Euclid against Phi_N."""
        if self.is_zero():
            raise ZeroDivisionError("inverting zero cyclotomic element")
        phi = [Fraction(c) for c in cyclotomic_polynomial(self.N)]
        a = list(self.coeffs)
        while len(a) > 1 and a[-1] == 0:
            a.pop()
        # extended euclid: s*a + t*phi = gcd; Phi_N irreducible so gcd is a unit
        r0, r1 = phi, a
        s0, s1 = [Fraction(0)], [Fraction(1)]
        while any(c != 0 for c in r1):
            q, r = _poly_divmod_frac(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, _poly_sub(s0, _poly_mul(q, s1))
        # r0 is the gcd (a nonzero constant since len(r0) == 1)
        assert len(r0) == 1 and r0[0] != 0, "cyclotomic polynomial not coprime"
        inv_c = 1 / r0[0]
        return Cyclo(self.N, (c * inv_c for c in s0))

    def __truediv__(self, other: "Cyclo") -> "Cyclo":
        return self * other.inverse()

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def __eq__(self, other) -> bool:
        return (isinstance(other, Cyclo)
                and self.N == other.N and self.coeffs == other.coeffs)

    def __hash__(self):
        return hash((self.N, self.coeffs))

    def __repr__(self):
        return f"Cyclo({self.N}, {[str(c) for c in self.coeffs]})"


def _poly_divmod_frac(num: list[Fraction], den: list[Fraction]):
    num = list(num)
    while len(den) > 1 and den[-1] == 0:
        den = den[:-1]
    deg_d = len(den) - 1
    lead = den[-1]
    quot = [Fraction(0)] * max(len(num) - deg_d, 1)
    for i in range(len(num) - 1, deg_d - 1, -1):
        c = num[i] / lead
        if c == 0:
            continue
        quot[i - deg_d] = c
        for j, dj in enumerate(den):
            num[i - deg_d + j] -= c * dj
    while len(num) > 1 and num[-1] == 0:
        num.pop()
    return quot, num


def _poly_mul(a, b):
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
    return out


def _poly_sub(a, b):
    n = max(len(a), len(b))
    out = [Fraction(0)] * n
    for i, c in enumerate(a):
        out[i] += c
    for i, c in enumerate(b):
        out[i] -= c
    return out
