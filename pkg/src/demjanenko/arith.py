"""Integer and modular arithmetic kernels.

Primality, factorization, multiplicative orders with their 2-adic and
3-adic valuations, canonical representatives, and discrete-log tables.
All functions here are pure and safe to call concurrently.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import NoPrimitiveRoot, NotPrime, NotUnit, RangeExceeded

MACHINE_LIMIT = 1 << 63

# Sorenson & Webster witness set: Miller-Rabin with these bases is
# exhaustive (no pseudoprime) below 3.317e24.
_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
DETERMINISTIC_PRIME_LIMIT = 3_317_044_064_679_887_385_961_981

_TRIAL_LIMIT = 1_000_000
_WHEEL = (4, 2, 4, 2, 4, 6, 2, 6)  # increments mod 30 starting from 7


@dataclass(frozen=True)
class PrimeContext:
    """A prime ell together with the factorization ell-1 = 2^alpha 3^beta m."""

    ell: int
    alpha: int
    beta: int
    m: int
    factors: tuple[tuple[int, int], ...]

    def __post_init__(self):
        n = 1
        for p, e in self.factors:
            n *= p**e
        if n != self.ell - 1:
            raise ValueError("factor list does not reconstruct ell-1")


@dataclass(frozen=True)
class OrderProfile:
    """Multiplicative order of a residue with its 2- and 3-adic valuations."""

    residue: int
    order: int
    nu2: int
    nu3: int


def valuation(n: int, p: int) -> int:
    """Largest v with p^v dividing n (n > 0)."""
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def _miller_rabin(n: int, bases=_WITNESSES) -> bool:
    d = n - 1
    r = (d & -d).bit_length() - 1
    d >>= r
    for a in bases:
        a %= n
        if a == 0:
            continue
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def probable_prime(n: int) -> bool:
    """Primality without the machine-range guard.

    Deterministic below DETERMINISTIC_PRIME_LIMIT; above it the fixed
    witness set is heuristic (no counterexample known).
    """
    if n < 2:
        return False
    for p in _WITNESSES:
        if n % p == 0:
            return n == p
    return _miller_rabin(n)


def is_prime(n: int) -> bool:
    """Deterministic primality for 2 <= n <= 2^63."""
    if n > MACHINE_LIMIT:
        raise RangeExceeded(f"is_prime argument {n} exceeds 2^63")
    return probable_prime(n)


def _brent_rho(n: int) -> int:
    """A nontrivial factor of composite odd n (Brent's cycle variant)."""
    if n % 2 == 0:
        return 2
    c = 1
    while True:
        y, m, g, r, q = 2, 128, 1, 1, 1
        x = ys = y
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += m
            r <<= 1
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if g != n:
            return g
        c += 1  # cycle degenerated; retry with the next polynomial


def factorize(n: int) -> tuple[tuple[int, int], ...]:
    """Prime factorization of n >= 1, sorted by prime.

    Trial division up to 10^6 followed by Brent-Pollard rho; handles
    arbitrary-precision n (resultants factored downstream can exceed 2^63).
    """
    if n < 1:
        raise ValueError("factorize requires n >= 1")
    out: dict[int, int] = {}
    for p in (2, 3, 5):
        while n % p == 0:
            n //= p
            out[p] = out.get(p, 0) + 1
    p, i = 7, 0
    while p <= _TRIAL_LIMIT and p * p <= n:
        while n % p == 0:
            n //= p
            out[p] = out.get(p, 0) + 1
        p += _WHEEL[i]
        i = (i + 1) & 7
    stack = [n] if n > 1 else []
    while stack:
        m = stack.pop()
        if m == 1:
            continue
        if probable_prime(m):
            out[m] = out.get(m, 0) + 1
            continue
        d = _brent_rho(m)
        stack.append(d)
        stack.append(m // d)
    return tuple(sorted(out.items()))


def make_context(ell: int) -> PrimeContext:
    """Build the PrimeContext for an odd prime ell."""
    if ell < 3 or not probable_prime(ell):
        raise NotPrime(f"{ell} is not an odd prime")
    factors = factorize(ell - 1)
    fd = dict(factors)
    alpha = fd.get(2, 0)
    beta = fd.get(3, 0)
    m = (ell - 1) // (2**alpha * 3**beta)
    return PrimeContext(ell=ell, alpha=alpha, beta=beta, m=m, factors=factors)


def canonical_rep(j: int, ell: int) -> int:
    """The representative of j mod ell in {1, ..., ell-1}."""
    r = j % ell
    if r == 0:
        raise NotUnit(f"{j} is divisible by {ell}")
    return r


def mod_inverse(u: int, ell: int) -> int:
    """Inverse of u modulo the prime ell."""
    if u % ell == 0:
        raise NotUnit(f"{u} is divisible by {ell}")
    return pow(u, -1, ell)


def mult_order(u: int, ctx: PrimeContext) -> OrderProfile:
    """Order of u mod ell by stripping prime factors from ell-1."""
    ell = ctx.ell
    r = u % ell
    if r == 0:
        raise NotUnit(f"{u} is divisible by {ell}")
    t = ell - 1
    for p, _ in ctx.factors:
        while t % p == 0 and pow(r, t // p, ell) == 1:
            t //= p
    return OrderProfile(residue=r, order=t, nu2=valuation(t, 2), nu3=valuation(t, 3))


def primitive_root(ctx: PrimeContext) -> int:
    """Smallest primitive root modulo ctx.ell."""
    ell = ctx.ell
    exponents = [(ell - 1) // p for p, _ in ctx.factors]
    for g in range(2, ell):
        if all(pow(g, e, ell) != 1 for e in exponents):
            return g
    raise NoPrimitiveRoot(f"no generator mod {ell}")


def index_table(ctx: PrimeContext, g: int | None = None) -> np.ndarray:
    """Discrete logs to base g: table ind with g^ind[x] = x for x in [1, ell-1].

    ind[0] is unused. Requires ell < 2^31 so products fit in int64.
    """
    ell = ctx.ell
    if ell >= 1 << 31:
        raise RangeExceeded(f"index table needs ell < 2^31, got {ell}")
    if g is None:
        g = primitive_root(ctx)
    n = ell - 1
    powers = np.empty(n, dtype=np.int64)
    powers[0] = 1
    size = 1
    while size < n:
        step = int(powers[size - 1]) * g % ell
        chunk = min(size, n - size)
        powers[size:size + chunk] = powers[:chunk] * step % ell
        size += chunk
    ind = np.empty(ell, dtype=np.int64)
    ind[0] = -1
    ind[powers] = np.arange(n, dtype=np.int64)
    return ind
