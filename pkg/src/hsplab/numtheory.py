"""Exact integer arithmetic used both inside the quantum drivers and as
brute-force ground truth for checking them.

Everything here is a pure function on Python ints. The order and
primality routines are deliberately naive: they are the classical oracles,
not performance paths.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import isqrt

from .errors import NotCoprime, NotInvertible, NotPrime

__all__ = [
    "Convergent",
    "OrderResult",
    "gcd",
    "lcm",
    "extended_gcd",
    "mod_inverse",
    "mod_exp",
    "multiplicative_order",
    "convergents",
    "euler_phi",
    "find_generator",
    "is_primitive_root",
    "is_prime",
    "trial_division_factor",
    "prime_factors",
    "integer_root",
    "perfect_power",
]


@dataclass(frozen=True)
class Convergent:
    numerator: int
    denominator: int

    def __post_init__(self):
        if self.denominator <= 0 or self.numerator < 0:
            raise ValueError("convergent needs numerator >= 0 and denominator > 0")

    def __float__(self) -> float:
        return self.numerator / self.denominator


@dataclass(frozen=True)
class OrderResult:
    a: int
    N: int
    r: int


def gcd(a: int, b: int) -> int:
    """Greatest common divisor by Euclid's algorithm."""
    a, b = abs(a), abs(b)
    if a == 0 and b == 0:
        raise ValueError("gcd(0, 0) is undefined")
    while b:
        a, b = b, a % b
    return a


def lcm(a: int, b: int) -> int:
    if a == 0 or b == 0:
        return 0
    return abs(a * b) // gcd(a, b)


def extended_gcd(a: int, b: int) -> tuple[int, int, int]:
    """Return ``(g, s, t)`` with ``s*a + t*b == g == gcd(a, b)``."""
    if a == 0 and b == 0:
        raise ValueError("extended_gcd(0, 0) is undefined")
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_r, old_s, old_t


def mod_inverse(x: int, m: int) -> int:
    if m < 2:
        raise ValueError("modulus must be at least 2")
    g, s, _ = extended_gcd(x % m, m)
    if g != 1:
        raise NotInvertible(f"{x} has no inverse modulo {m} (gcd {g})")
    return s % m


def mod_exp(a: int, e: int, m: int) -> int:
    """Right-to-left square-and-multiply; O(log e) multiplications."""
    if e < 0:
        raise ValueError("exponent must be nonnegative")
    if m < 2:
        raise ValueError("modulus must be at least 2")
    result = 1
    base = a % m
    while e:
        if e & 1:
            result = result * base % m
        base = base * base % m
        e >>= 1
    return result


def multiplicative_order(a: int, N: int) -> OrderResult:
    """Least ``r >= 1`` with ``a**r = 1 (mod N)``, found by walking the powers."""
    if N < 2:
        raise ValueError("modulus must be at least 2")
    if gcd(a % N, N) != 1:
        raise NotCoprime(f"{a} is not coprime to {N}; no power of it is 1 mod {N}")
    base = a % N
    power, r = base, 1
    while power != 1:
        power = power * base % N
        r += 1
    return OrderResult(a, N, r)


def convergents(c: int, q: int) -> list[Convergent]:
    """All continued-fraction convergents of ``c/q``, by increasing denominator.

    The last entry is ``c/q`` in lowest terms.
    """
    if q <= 0 or c < 0 or c >= q:
        raise ValueError("need 0 <= c < q")
    out: list[Convergent] = []
    # h/k recurrences seeded with h_{-2}/k_{-2} = 0/1, h_{-1}/k_{-1} = 1/0
    h_prev2, h_prev1 = 0, 1
    k_prev2, k_prev1 = 1, 0
    num, den = c, q
    while True:
        a = num // den
        h = a * h_prev1 + h_prev2
        k = a * k_prev1 + k_prev2
        # [0; 1, ...] yields 0/1 then 1/1; keep the later one so denominators strictly increase
        if out and k == out[-1].denominator:
            out[-1] = Convergent(h, k)
        else:
            out.append(Convergent(h, k))
        h_prev2, h_prev1 = h_prev1, h
        k_prev2, k_prev1 = k_prev1, k
        num, den = den, num - a * den
        if den == 0:
            break
    return out


def euler_phi(r: int) -> int:
    if r < 1:
        raise ValueError("euler_phi needs a positive integer")
    return sum(1 for k in range(1, r + 1) if gcd(k, r) == 1)


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    return trial_division_factor(n) is None


def trial_division_factor(n: int) -> int | None:
    """Smallest nontrivial factor of ``n`` or ``None`` when ``n`` is prime."""
    if n < 2:
        raise ValueError("n must be at least 2")
    if n % 2 == 0:
        return 2 if n > 2 else None
    d = 3
    while d * d <= n:
        if n % d == 0:
            return d
        d += 2
    return None


def prime_factors(n: int) -> list[int]:
    """Distinct prime factors of ``n`` in increasing order."""
    out = []
    while n > 1:
        p = trial_division_factor(n) or n
        out.append(p)
        while n % p == 0:
            n //= p
    return out


def is_primitive_root(g: int, p: int) -> bool:
    if g % p == 0:
        return False
    return multiplicative_order(g, p).r == p - 1


def find_generator(p: int) -> int:
    """Least primitive root modulo the prime ``p``."""
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    if p == 2:
        return 1
    for g in range(2, p):
        if is_primitive_root(g, p):
            return g
    raise AssertionError("every prime has a primitive root")


def integer_root(n: int, k: int) -> int:
    """Floor of the real k-th root of ``n >= 0``."""
    if n < 0 or k < 1:
        raise ValueError("need n >= 0 and k >= 1")
    if n < 2 or k == 1:
        return n
    if k == 2:
        return isqrt(n)
    x = 1 << ((n.bit_length() + k - 1) // k)
    while True:
        y = ((k - 1) * x + n // x ** (k - 1)) // k
        if y >= x:
            break
        x = y
    while x**k > n:
        x -= 1
    while (x + 1) ** k <= n:
        x += 1
    return x


def perfect_power(n: int) -> tuple[int, int] | None:
    """Return ``(b, k)`` with ``b**k == n`` and ``k >= 2`` maximal, else ``None``."""
    if n < 4:
        return None
    for k in range(n.bit_length(), 1, -1):
        b = integer_root(n, k)
        if b > 1 and b**k == n:
            return b, k
    return None
