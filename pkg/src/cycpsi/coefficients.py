"""Fleck-type alternating binomial sums, their prime-power normalizations, and
the exact reduction identities they satisfy."""

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb

from .exactmath import binom, factorial, is_prime


class IntegrityError(RuntimeError):
    """A divisibility guaranteed by the integrality theorem failed; implementation bug."""


def totient_prime_power(p: int, a: int) -> int:
    """Euler totient of p^a, i.e. p^(a-1) (p-1)."""
    return p ** (a - 1) * (p - 1)


@dataclass(frozen=True)
class CoeffQuery:
    """Parameter tuple naming one coefficient: prime p, power a, row n, class r, order l."""

    p: int
    a: int
    n: int
    r: int
    l: int

    def __post_init__(self):
        if not is_prime(self.p):
            raise ValueError(f"p must be prime, got {self.p}")
        if self.a < 1:
            raise ValueError(f"a must be >= 1, got {self.a}")
        if self.n < 0:
            raise ValueError(f"n must be >= 0, got {self.n}")
        if self.l < 0:
            raise ValueError(f"l must be >= 0, got {self.l}")


@dataclass(frozen=True)
class NormalizedCoeff:
    """A Fleck sum together with its extracted power of p.

    raw_sum = p^exponent * normalized when exponent >= 0; for a negative
    exponent the normalized value is raw_sum scaled up by p^(-exponent),
    so it is a multiple of p whenever raw_sum is nonzero.
    """

    query: CoeffQuery
    raw_sum: int
    exponent: int
    normalized: int


@lru_cache(maxsize=None)
def fleck_sum_general(n: int, r: int, m: int, l: int) -> int:
    """Sum of (-1)^k binom(n,k) binom((k-r)/m, l) over k = r (mod m).

    Only k in [0, n] contribute since binom(n, k) vanishes outside; the
    modulus m is any positive integer, not only a prime power.
    """
    if n < 0:
        raise ValueError(f"n must be >= 0, got {n}")
    if l < 0:
        raise ValueError(f"l must be >= 0, got {l}")
    if m < 1:
        raise ValueError(f"modulus must be positive, got {m}")
    total = 0
    for k in range(r % m, n + 1, m):
        term = comb(n, k) * binom((k - r) // m, l)
        total += -term if k & 1 else term
    return total


def fleck_sum(q: CoeffQuery) -> int:
    """Fleck sum of a coefficient query, modulus p^a."""
    return fleck_sum_general(q.n, q.r, q.p ** q.a, q.l)


@lru_cache(maxsize=None)
def normalized_parts(p: int, a: int, n: int, r: int, l: int) -> tuple[int, int, int]:
    """(raw_sum, exponent, normalized) for one coefficient.

    exponent = floor((n - p^(a-1) - l p^a) / totient(p^a)) and may be
    negative; the integrality theorem makes the division by p^exponent exact
    when exponent >= 0, and a violation raises IntegrityError as a bug trap.
    """
    if not is_prime(p):
        raise ValueError(f"p must be prime, got {p}")
    if a < 1:
        raise ValueError(f"a must be >= 1, got {a}")
    raw = fleck_sum_general(n, r, p ** a, l)
    exponent = (n - p ** (a - 1) - l * p ** a) // totient_prime_power(p, a)
    if exponent >= 0:
        normalized, rem = divmod(raw, p ** exponent)
        if rem:
            raise IntegrityError(
                f"p^{exponent} does not divide the sum {raw} "
                f"(p={p}, a={a}, n={n}, r={r}, l={l})"
            )
    else:
        normalized = raw * p ** (-exponent)
    return raw, exponent, normalized


def normalized_coeff(q: CoeffQuery) -> NormalizedCoeff:
    """Normalized coefficient: the Fleck sum with its guaranteed power of p removed."""
    raw, exponent, normalized = normalized_parts(q.p, q.a, q.n, q.r, q.l)
    return NormalizedCoeff(query=q, raw_sum=raw, exponent=exponent, normalized=normalized)


def t_coeff(q: CoeffQuery) -> Fraction:
    """Factorial-normalized rational coefficient l! p^l / floor(n/p^(a-1))! times the Fleck sum."""
    scale = Fraction(factorial(q.l) * q.p ** q.l, factorial(q.n // q.p ** (q.a - 1)))
    return scale * fleck_sum(q)


def recurrence_residue(q: CoeffQuery) -> int:
    """Mod-p residue of the order-lowering recurrence for a normalized coefficient.

    Requires n >= 1 and l >= 1. Sums -binom(n,j) <j,r>_0 <n-j-1, r-j+p^a-1>_(l-1)
    over the j in [0, n-1] whose totient-residue test keeps the carried power
    of p at zero; the result agrees with the normalized coefficient mod p.
    """
    if q.l < 1:
        raise ValueError(f"recurrence needs l >= 1, got {q.l}")
    if q.n < 1:
        raise ValueError(f"recurrence needs n >= 1, got {q.n}")
    p, a, n, r, l = q.p, q.a, q.n, q.r, q.l
    pa = p ** a
    phi = totient_prime_power(p, a)
    threshold = (n - (l + 1) * p ** (a - 1)) % phi
    acc = 0
    for j in range(n):
        if (j - p ** (a - 1)) % phi >= threshold:
            acc -= (
                comb(n, j)
                * normalized_parts(p, a, j, r, 0)[2]
                * normalized_parts(p, a, n - j - 1, r - j + pa - 1, l - 1)[2]
            )
    return acc % p


def index_reduction_identity(n: int, r: int, l: int, m: int) -> tuple[int, int]:
    """Both sides of the exact identity lowering the order index l by one.

    left  = S(n,r,l) - binom(floor((n-r)/m), l) S(n,r,0)
    right = -sum_j binom(n,j) S(j,r,0) S(n-j-1, r-j+m-1, l-1)

    with S the general Fleck sum; holds for every modulus m >= 1, composite
    included, and for every integer r. Returns (left, right).
    """
    if n < 1 or l < 1 or m < 1:
        raise ValueError(f"need n, l, m >= 1, got n={n}, l={l}, m={m}")
    left = fleck_sum_general(n, r, m, l) - binom((n - r) // m, l) * fleck_sum_general(
        n, r, m, 0
    )
    right = 0
    for j in range(n):
        rj = r - j + m - 1
        right -= (
            comb(n, j)
            * fleck_sum_general(j, r, m, 0)
            * fleck_sum_general(n - j - 1, rj, m, l - 1)
        )
    return left, right


def modulus_factorization_identity(
    d: int, q: int, n: int, r: int, t: int, l: int
) -> tuple[int, int]:
    """Both sides of the exact convolution collapsing moduli d and q into dq.

    lhs = sum_j (-1)^j S_d(n,t,j) S_q(j,r,l), rhs = S_dq(n, dr+t, l), where
    S_m(n,c,i) is the general Fleck sum. Requires t < d so the inner index
    (k-t)/d is a nonnegative integer for every contributing k; the j-sum is
    finite and its truncation point is asserted, not assumed.
    """
    if d < 1 or q < 1:
        raise ValueError(f"moduli must be positive, got d={d}, q={q}")
    if n < 0 or l < 0:
        raise ValueError(f"need n, l >= 0, got n={n}, l={l}")
    if t >= d:
        raise ValueError(f"need t < d, got t={t}, d={d}")
    ks = range(t % d, n + 1, d)
    j_max = max(((k - t) // d for k in ks), default=-1)
    lhs = 0
    for j in range(j_max + 1):
        term = fleck_sum_general(n, t, d, j) * fleck_sum_general(j, r, q, l)
        lhs += -term if j & 1 else term
    # every term beyond j_max has a vanishing first factor
    assert j_max < 0 or fleck_sum_general(n, t, d, j_max + 1) == 0
    rhs = fleck_sum_general(n, d * r + t, d * q, l)
    return lhs, rhs


def clear_caches() -> None:
    """Drop memoized sums; sweeps call this to bound memory between runs."""
    fleck_sum_general.cache_clear()
    normalized_parts.cache_clear()
