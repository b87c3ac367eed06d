"""Exact arithmetic in the Eisenstein integers Z[w], w = exp(2*pi*i/3).

An element a + b*w is stored as the integer pair (a, b), with w^2 = -1 - w.
The module provides prime factorization, residue rings Z[w]/(m) with
canonical representatives, unit groups, admissible scalar subgroups, and
the vertex-count formula for the medial layer graphs built elsewhere in
this package.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable


@dataclass(frozen=True, order=True)
class EisensteinInt:
    """The Eisenstein integer a + b*w."""

    a: int
    b: int

    def __add__(self, other: "EisensteinInt") -> "EisensteinInt":
        return EisensteinInt(self.a + other.a, self.b + other.b)

    def __sub__(self, other: "EisensteinInt") -> "EisensteinInt":
        return EisensteinInt(self.a - other.a, self.b - other.b)

    def __neg__(self) -> "EisensteinInt":
        return EisensteinInt(-self.a, -self.b)

    def __mul__(self, other: "EisensteinInt") -> "EisensteinInt":
        # (a + bw)(c + dw) = ac + (ad + bc)w + bd*w^2,  w^2 = -1 - w
        a, b, c, d = self.a, self.b, other.a, other.b
        return EisensteinInt(a * c - b * d, a * d + b * c - b * d)

    def conjugate(self) -> "EisensteinInt":
        return EisensteinInt(self.a - self.b, -self.b)

    def norm(self) -> int:
        return self.a * self.a - self.a * self.b + self.b * self.b

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0

    def is_unit(self) -> bool:
        return self.norm() == 1

    def __bool__(self) -> bool:
        return not self.is_zero()

    def __pow__(self, n: int) -> "EisensteinInt":
        if n < 0:
            raise ValueError("negative powers are not integral")
        result = ONE
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __str__(self) -> str:
        return format_eisenstein(self)

    def __repr__(self) -> str:
        return f"EisensteinInt({self.a}, {self.b})"


ZERO = EisensteinInt(0, 0)
ONE = EisensteinInt(1, 0)
W = EisensteinInt(0, 1)

#: The six units of Z[w]: 1, -w^2, -w^2*-w^2=... enumerated as powers of -w^2
#: (a primitive sixth root of unity), i.e. all a+bw of norm 1.
UNITS = (
    EisensteinInt(1, 0),
    EisensteinInt(1, 1),
    EisensteinInt(0, 1),
    EisensteinInt(-1, 0),
    EisensteinInt(-1, -1),
    EisensteinInt(0, -1),
)


def norm(x: EisensteinInt) -> int:
    """a^2 - ab + b^2; multiplicative and nonnegative."""
    return x.norm()


_TERM = re.compile(r"([+-]?)\s*(\d*)\s*(w?)", re.IGNORECASE)


def parse_eisenstein(text: str) -> EisensteinInt:
    """Parse text like ``2-2w``, ``w``, ``-1+3w`` or ``3``."""
    s = text.replace(" ", "")
    if not s:
        raise ValueError("empty Eisenstein integer literal")
    a = b = 0
    pos = 0
    seen = False
    while pos < len(s):
        m = _TERM.match(s, pos)
        if m is None or m.end() == pos:
            raise ValueError(f"cannot parse Eisenstein integer: {text!r}")
        sign = -1 if m.group(1) == "-" else 1
        digits, omega = m.group(2), m.group(3)
        if not digits and not omega:
            raise ValueError(f"cannot parse Eisenstein integer: {text!r}")
        coeff = sign * (int(digits) if digits else 1)
        if omega:
            b += coeff
        else:
            a += coeff
        pos = m.end()
        seen = True
    if not seen:
        raise ValueError(f"cannot parse Eisenstein integer: {text!r}")
    return EisensteinInt(a, b)


def format_eisenstein(x: EisensteinInt) -> str:
    """Serialize as ``a+bw`` text, e.g. ``2-2w``."""
    if x.b == 0:
        return str(x.a)
    if x.b == 1:
        wpart = "w"
    elif x.b == -1:
        wpart = "-w"
    else:
        wpart = f"{x.b}w"
    if x.a == 0:
        return wpart
    sign = "+" if x.b > 0 else ""
    return f"{x.a}{sign}{wpart}"


def divmod_nearest(x: EisensteinInt, y: EisensteinInt) -> tuple[EisensteinInt, EisensteinInt]:
    """Division with remainder; norm(r) < norm(y) by nearest-lattice rounding."""
    if y.is_zero():
        raise ZeroDivisionError("division by zero in Z[w]")
    n = y.norm()
    num = x * y.conjugate()
    qa = Fraction(num.a, n)
    qb = Fraction(num.b, n)
    q = EisensteinInt(_round_half(qa), _round_half(qb))
    r = x - q * y
    assert r.norm() < n
    return q, r


def _round_half(f: Fraction) -> int:
    return (2 * f.numerator + f.denominator) // (2 * f.denominator)


def euclid_gcd(x: EisensteinInt, y: EisensteinInt) -> EisensteinInt:
    while y:
        _, r = divmod_nearest(x, y)
        x, y = y, r
    return x


def extended_gcd(
    x: EisensteinInt, y: EisensteinInt
) -> tuple[EisensteinInt, EisensteinInt, EisensteinInt]:
    """Return (g, u, v) with u*x + v*y = g."""
    r0, r1 = x, y
    u0, u1 = ONE, ZERO
    v0, v1 = ZERO, ONE
    while r1:
        q, r = divmod_nearest(r0, r1)
        r0, r1 = r1, r
        u0, u1 = u1, u0 - q * u1
        v0, v1 = v1, v0 - q * v1
    return r0, u0, v0


def exact_divide(x: EisensteinInt, y: EisensteinInt) -> EisensteinInt | None:
    """x / y when the quotient is integral, else None."""
    q, r = divmod_nearest(x, y)
    return q if r.is_zero() else None


def canonical_associate(x: EisensteinInt) -> tuple[EisensteinInt, EisensteinInt]:
    """Return (p, u) with p = u*x the canonical associate: a > 0, b >= 0,
    minimal b (then minimal a). Units canonicalize to 1."""
    if x.is_zero():
        raise ValueError("zero has no canonical associate")
    best = None
    best_u = None
    for u in UNITS:
        cand = u * x
        if cand.a > 0 and cand.b >= 0:
            key = (cand.b, cand.a)
            if best is None or key < (best.b, best.a):
                best = cand
                best_u = u
    assert best is not None and best_u is not None
    return best, best_u


@dataclass(frozen=True)
class Factorization:
    """unit * prod(prime^exponent), primes canonical and pairwise non-associated."""

    unit: EisensteinInt
    parts: tuple[tuple[EisensteinInt, int], ...]

    def value(self) -> EisensteinInt:
        result = self.unit
        for p, e in self.parts:
            result = result * p**e
        return result

    def __str__(self) -> str:
        items = [f"({p})^{e}" for p, e in self.parts]
        return " * ".join([str(self.unit)] + items) if items else str(self.unit)


def _rational_factor(n: int) -> list[tuple[int, int]]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            e = 0
            while n % d == 0:
                n //= d
                e += 1
            out.append((d, e))
        d += 1 if d == 2 else 2
    if n > 1:
        out.append((n, 1))
    return out


def _split_prime(p: int) -> EisensteinInt:
    """For a rational prime p = 1 (mod 3), find a canonical prime above p."""
    # A cube root of unity mod p gives x with p | x^2 + x + 1 = N(x - w).
    for g in range(2, p):
        x = pow(g, (p - 1) // 3, p)
        if x != 1 and (x * x + x + 1) % p == 0:
            pi = euclid_gcd(EisensteinInt(p, 0), EisensteinInt(x, -1))
            assert pi.norm() == p
            return canonical_associate(pi)[0]
    raise ArithmeticError(f"no cube root of unity mod {p}")


RAMIFIED_PRIME = canonical_associate(EisensteinInt(1, -1))[0]  # associate of 1 - w


def factor(m: EisensteinInt) -> Factorization:
    """Prime factorization in Z[w] with canonical non-associated primes.

    Rational primes p = 1 (mod 3) split, p = 2 (mod 3) stay inert,
    and 3 ramifies as a unit times (1-w)^2.
    """
    if m.is_zero():
        raise ValueError("cannot factor 0")
    rest = m
    parts: list[tuple[EisensteinInt, int]] = []
    for p, _ in _rational_factor(m.norm()):
        if p == 3:
            candidates = [RAMIFIED_PRIME]
        elif p % 3 == 2:
            candidates = [EisensteinInt(p, 0)]
        else:
            pi = _split_prime(p)
            candidates = [pi, canonical_associate(pi.conjugate())[0]]
        for pi in candidates:
            e = 0
            while True:
                q = exact_divide(rest, pi)
                if q is None:
                    break
                rest = q
                e += 1
            if e:
                parts.append((pi, e))
    assert rest.is_unit(), f"incomplete factorization of {m}"
    parts.sort(key=lambda pe: (pe[0].norm(), pe[0].b, pe[0].a))
    return Factorization(unit=rest, parts=tuple(parts))


class ResidueRing:
    """The residue class ring Z[w]/(m) on canonical representatives.

    The canonical representative of a class is its member of minimal norm,
    ties broken lexicographically on (a, b).
    """

    def __init__(self, modulus: EisensteinInt):
        if modulus.is_zero():
            raise ValueError("modulus must be nonzero")
        self.modulus = modulus
        self.elements: list[EisensteinInt] = []
        self.index: dict[EisensteinInt, int] = {}
        self._enumerate()
        n = modulus.norm()
        assert len(self.elements) == n, (len(self.elements), n)

    # -- canonical reduction ------------------------------------------------

    def reduce(self, x: EisensteinInt) -> EisensteinInt:
        _, r = divmod_nearest(x, self.modulus)
        # The nearest-division remainder has norm < norm(m); the minimal-norm
        # class member differs from it by a small unit multiple of m.
        best = r
        bkey = (r.norm(), r.a, r.b)
        for ea in range(-2, 3):
            for eb in range(-2, 3):
                cand = r - EisensteinInt(ea, eb) * self.modulus
                key = (cand.norm(), cand.a, cand.b)
                if key < bkey:
                    best, bkey = cand, key
        return best

    def _enumerate(self) -> None:
        # The ideal (m) is the Z-lattice spanned by m and m*w; a column
        # Hermite form gives one representative per class before reduction.
        m = self.modulus
        v1 = (m.a, m.b)
        v2 = (-m.b, m.a - m.b)
        while v2[0] != 0:
            q = v1[0] // v2[0]
            v1, v2 = v2, (v1[0] - q * v2[0], v1[1] - q * v2[1])
        d1, d2 = abs(v1[0]), abs(v2[1])
        assert d1 * d2 == m.norm()
        seen: dict[EisensteinInt, None] = {}
        for a in range(d1):
            for b in range(d2):
                seen.setdefault(self.reduce(EisensteinInt(a, b)), None)
        self.elements = sorted(seen, key=lambda x: (x.norm(), x.a, x.b))
        self.index = {x: i for i, x in enumerate(self.elements)}

    # -- arithmetic on canonical representatives ----------------------------

    def add(self, x: EisensteinInt, y: EisensteinInt) -> EisensteinInt:
        return self.reduce(x + y)

    def mul(self, x: EisensteinInt, y: EisensteinInt) -> EisensteinInt:
        return self.reduce(x * y)

    def neg(self, x: EisensteinInt) -> EisensteinInt:
        return self.reduce(-x)

    def one(self) -> EisensteinInt:
        return self.reduce(ONE)

    def inverse(self, x: EisensteinInt) -> EisensteinInt | None:
        """Multiplicative inverse of x mod m, or None when x is not a unit."""
        g, u, _ = extended_gcd(x, self.modulus)
        if not g.is_unit():
            return None
        # g is a unit: 1 = g^-1 * (u*x + v*m), and unit inverses are conjugates
        # of associates; solve by scaling u with the unit inverse of g.
        ginv = next(v for v in UNITS if (v * g) == ONE)
        return self.reduce(ginv * u)

    def unit_group(self) -> list[EisensteinInt]:
        """All invertible residues, in canonical element order."""
        return [x for x in self.elements if self.inverse(x) is not None]


class ScalarGroup:
    """An admissible group of unit scalars mod m (always contains -1)."""

    def __init__(self, ring: ResidueRing, gens: Iterable[EisensteinInt] = ()):
        self.ring = ring
        start = [ring.reduce(g) for g in gens]
        for g in start:
            if ring.inverse(g) is None:
                raise ValueError(f"scalar generator {g} is not a unit mod {ring.modulus}")
        members = {ring.one(), ring.reduce(-ONE)}
        frontier = list(members | set(start))
        while frontier:
            x = frontier.pop()
            members.add(x)
            for g in set(start) | {ring.reduce(-ONE)}:
                y = ring.mul(x, g)
                if y not in members:
                    members.add(y)
                    frontier.append(y)
        self.members = sorted(members, key=lambda x: (x.norm(), x.a, x.b))
        self._memberset = set(self.members)

    def __len__(self) -> int:
        return len(self.members)

    def __contains__(self, x: EisensteinInt) -> bool:
        return self.ring.reduce(x) in self._memberset

    def conjugated(self) -> "ScalarGroup":
        return ScalarGroup(self.ring, [m.conjugate() for m in self.members])

    def same_members(self, other: "ScalarGroup") -> bool:
        return self._memberset == other._memberset


def admissible_subgroups(ring: ResidueRing) -> list[ScalarGroup]:
    """All admissible scalar subgroups of the unit group of the ring.

    Brute-force closure over generator subsets; intended for small moduli.
    """
    units = ring.unit_group()
    found: dict[frozenset[EisensteinInt], ScalarGroup] = {}
    base = ScalarGroup(ring)
    found[frozenset(base.members)] = base
    grew = True
    while grew:
        grew = False
        for key in list(found):
            for u in units:
                if u in found[key]._memberset:
                    continue
                bigger = ScalarGroup(ring, list(key) + [u])
                bkey = frozenset(bigger.members)
                if bkey not in found:
                    found[bkey] = bigger
                    grew = True
    return sorted(found.values(), key=lambda s: (len(s), [(m.a, m.b) for m in s.members]))


def vertex_count(m: EisensteinInt, A: ScalarGroup) -> int:
    """Vertex count of the medial layer graph attached to (m, A).

    N = 2 * [ norm(m)^3 / (12*|A|) * prod over non-associated primes pi | m
    of (1 - norm(pi)^-2) ].  Raises when the hypothesis norm(m) = 3k, k > 1
    fails or the result is not integral (which signals an invalid A).
    """
    if m.is_zero():
        raise ValueError("m must be nonzero")
    n = m.norm()
    if n % 3 != 0 or n // 3 <= 1:
        raise ValueError(f"norm(m) = {n} does not satisfy norm(m) = 3k with k > 1")
    total = Fraction(n**3, 12 * len(A))
    for pi, _ in factor(m).parts:
        total *= 1 - Fraction(1, pi.norm() ** 2)
    total *= 2
    if total.denominator != 1:
        raise ArithmeticError(f"non-integral vertex count {total} for m={m}, |A|={len(A)}")
    return int(total)
