"""Independent brute-force routes used as test oracles.

Deliberately naive and separate from the library: binomials come from the
literal falling product divided by k!, and the alternating sums iterate k
over a window wider than [0, n] so the finite-support property is exercised
rather than assumed.
"""


def binom_product(x: int, k: int) -> int:
    if k < 0:
        return 0
    num = 1
    for i in range(k):
        num *= x - i
    den = 1
    for i in range(1, k + 1):
        den *= i
    q, rem = divmod(num, den)
    assert rem == 0, f"product {num} not divisible by {den}"
    return q


def fleck_oracle(n: int, r: int, m: int, l: int) -> int:
    total = 0
    for k in range(-2 * m, n + 2 * m + 1):
        if (k - r) % m:
            continue
        sign = 1 if k % 2 == 0 else -1
        total += sign * binom_product(n, k) * binom_product((k - r) // m, l)
    return total
