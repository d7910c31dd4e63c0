"""The cyclotomic Frobenius/psi operator pair on integer power series in T.

Frobenius substitutes (1+T)^p - 1 for T. Its one-sided inverse psi extracts
the component x_0 of x = sum_{i<p} (1+T)^i phi(x_i); on polynomials both
directions are exact integer-linear maps, so no division by p ever occurs.
"""

from dataclasses import dataclass
from math import comb

from .exactmath import binom, is_prime


@dataclass(frozen=True, eq=False)
class TruncPoly:
    """Integer polynomial in T; coeffs[i] is the coefficient of T^i.

    The tuple length records the tracked degree bound; trailing zeros are
    allowed and ignored by equality, which compares the underlying
    polynomials. All arithmetic here is exact over the integers.
    """

    coeffs: tuple[int, ...]

    @classmethod
    def of(cls, values) -> "TruncPoly":
        coeffs = tuple(int(v) for v in values)
        return cls(coeffs if coeffs else (0,))

    @classmethod
    def zero(cls) -> "TruncPoly":
        return cls((0,))

    @classmethod
    def one(cls) -> "TruncPoly":
        return cls((1,))

    @classmethod
    def monomial(cls, n: int, c: int = 1) -> "TruncPoly":
        if n < 0:
            raise ValueError(f"degree must be >= 0, got {n}")
        return cls((0,) * n + (c,))

    @classmethod
    def one_plus_t_power(cls, e: int, through: int | None = None) -> "TruncPoly":
        """(1+T)^e. For e < 0 the series is infinite, so a truncation degree
        is required; coefficients are the generalized binomials binom(e, i)."""
        if through is None:
            if e < 0:
                raise ValueError("negative exponent needs a truncation degree")
            through = e
        return cls(tuple(binom(e, i) for i in range(through + 1)))

    @property
    def degree_bound(self) -> int:
        return len(self.coeffs) - 1

    def coeff(self, i: int) -> int:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def _stripped(self) -> tuple[int, ...]:
        last = len(self.coeffs)
        while last > 0 and self.coeffs[last - 1] == 0:
            last -= 1
        return self.coeffs[:last]

    def __eq__(self, other):
        if not isinstance(other, TruncPoly):
            return NotImplemented
        return self._stripped() == other._stripped()

    def __hash__(self):
        return hash(self._stripped())

    def agreement(self, other: "TruncPoly") -> tuple[bool, int]:
        """Compare up to the smaller degree bound; returns (equal, compared_through)."""
        through = min(self.degree_bound, other.degree_bound)
        ok = all(self.coeff(i) == other.coeff(i) for i in range(through + 1))
        return ok, through

    def __add__(self, other):
        if isinstance(other, int):
            other = TruncPoly((other,))
        if not isinstance(other, TruncPoly):
            return NotImplemented
        size = max(len(self.coeffs), len(other.coeffs))
        return TruncPoly(tuple(self.coeff(i) + other.coeff(i) for i in range(size)))

    __radd__ = __add__

    def __neg__(self):
        return TruncPoly(tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        if isinstance(other, int):
            other = TruncPoly((other,))
        if not isinstance(other, TruncPoly):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return TruncPoly(tuple(c * other for c in self.coeffs))
        if not isinstance(other, TruncPoly):
            return NotImplemented
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return TruncPoly(tuple(out))

    __rmul__ = __mul__

    def truncated(self, through: int) -> "TruncPoly":
        """Coefficients 0..through, padding with zeros beyond the stored bound."""
        if through < 0:
            raise ValueError(f"truncation degree must be >= 0, got {through}")
        return TruncPoly(tuple(self.coeff(i) for i in range(through + 1)))

    def __repr__(self):
        return f"TruncPoly({list(self.coeffs)!r})"


@dataclass(frozen=True)
class PsiResult:
    """A truncated series together with the largest degree certified exact."""

    series: TruncPoly
    valid_degree: int

    def __post_init__(self):
        if self.valid_degree > self.series.degree_bound:
            raise ValueError("valid_degree exceeds the stored degree bound")

    def coefficients(self) -> tuple[int, ...]:
        return tuple(self.series.coeff(i) for i in range(self.valid_degree + 1))


def phi_apply(x: TruncPoly, p: int) -> TruncPoly:
    """Frobenius: substitute (1+T)^p - 1 for T, exactly. Degree grows p-fold."""
    if not is_prime(p):
        raise ValueError(f"p must be prime, got {p}")
    u = TruncPoly(tuple(comb(p, i) for i in range(p + 1))) - 1
    acc = TruncPoly.zero()
    for c in reversed(x.coeffs):
        acc = acc * u + c
    return acc.truncated(max(p * x.degree_bound, 0))


def psi_apply(x: TruncPoly, p: int) -> TruncPoly:
    """Extract x_0 from x = sum_{i=0}^{p-1} (1+T)^i phi(x_i).

    Two triangular integer basis changes, writing S = 1+T:

      1. T-basis to S-basis: c_m = sum_{i >= m} (-1)^(i-m) binom(i, m) a_i,
         since T^i = (S-1)^i.
      2. In the mixed basis S^i (S^p - 1)^j the exponent i + p j' of each
         S-monomial determines (i, j') uniquely for i < p, and binomial
         inversion of S^(p j') = sum (S^p - 1)^j terms gives the residue-0
         row directly: b_j = sum_{j' >= j} binom(j', j) c_{p j'}.

    The output sum_j b_j T^j has degree bound floor(D/p).
    """
    if not is_prime(p):
        raise ValueError(f"p must be prime, got {p}")
    a = x.coeffs
    d = len(a) - 1
    c = [
        sum(-binom(i, m) * a[i] if (i - m) & 1 else binom(i, m) * a[i] for i in range(m, d + 1))
        for m in range(d + 1)
    ]
    top = d // p
    b = [
        sum(comb(jp, j) * c[p * jp] for jp in range(j, top + 1))
        for j in range(top + 1)
    ]
    return TruncPoly(tuple(b))


def psi_power(x: TruncPoly, p: int, a: int) -> TruncPoly:
    """a-fold application of psi; degree bound floor(D / p^a)."""
    if a < 1:
        raise ValueError(f"iteration count must be >= 1, got {a}")
    for _ in range(a):
        x = psi_apply(x, p)
    return x


def monomial_twisted(n: int, r: int, p: int, a: int, l_max: int) -> PsiResult:
    """psi^a applied to T^n (1+T)^(-r), exact through degree l_max.

    For r > 0 the argument is an infinite series, so it is rewritten as
    T^n (1+T)^e times a Frobenius-power image: with r1 = ceil(r / p^a) and
    e = p^a r1 - r in [0, p^a), the projection rule psi(x phi(y)) = psi(x) y
    iterates to

        psi^a(T^n (1+T)^(-r)) = psi^a(T^n (1+T)^e) * (1+T)^(-r1).

    The inner argument is a polynomial, so psi^a of it is exact, and the
    final multiplication by the unit (1+T)^(-r1) is exact coefficient by
    coefficient through l_max.
    """
    if n < 0:
        raise ValueError(f"n must be >= 0, got {n}")
    if a < 1:
        raise ValueError(f"a must be >= 1, got {a}")
    if l_max < 0:
        raise ValueError(f"l_max must be >= 0, got {l_max}")
    if not is_prime(p):
        raise ValueError(f"p must be prime, got {p}")
    pa = p ** a
    r1 = -((-r) // pa)
    e = pa * r1 - r
    inner = TruncPoly.monomial(n) * TruncPoly.one_plus_t_power(e)
    core = psi_power(inner, p, a)
    unit = TruncPoly.one_plus_t_power(-r1, through=l_max)
    series = (core * unit).truncated(l_max)
    return PsiResult(series=series, valid_degree=l_max)


def projection_rule_check(x: TruncPoly, y: TruncPoly, p: int) -> bool:
    """Whether psi(x * phi(y)) equals psi(x) * y; true for all exact polynomials.

    Both sides carry the same degree bound floor(deg x / p) + deg y, so the
    comparison is plain polynomial equality.
    """
    return psi_apply(x * phi_apply(y, p), p) == psi_apply(x, p) * y
