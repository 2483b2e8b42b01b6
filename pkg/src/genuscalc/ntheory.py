"""Small number-theory helpers shared by the matrix and group code."""

from __future__ import annotations

from functools import reduce
from math import gcd, prod


def factorize(n: int) -> dict[int, int]:
    """Prime factorization of ``n >= 1`` by trial division."""
    if n < 1:
        raise ValueError(f"cannot factor {n}")
    out: dict[int, int] = {}
    p = 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1 if p == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def totient(n: int) -> int:
    return prod(p ** (e - 1) * (p - 1) for p, e in factorize(n).items())


def lcm(*values: int) -> int:
    return reduce(lambda a, b: a * b // gcd(a, b) if a and b else 0, values, 1)


def crt(residues: list[int], moduli: list[int]) -> int:
    """Solve ``x = r_i (mod m_i)`` for pairwise coprime moduli; result in [0, prod)."""
    x, m = 0, 1
    for r, n in zip(residues, moduli):
        # x + m*k = r (mod n)
        k = ((r - x) * pow(m, -1, n)) % n if n > 1 else 0
        x += m * k
        m *= n
    return x % m if m > 1 else 0


def unit_combination(pivot: int, others: list[int], m: int) -> list[int]:
    """Multipliers ``x`` with ``pivot + sum(x_k * others_k)`` a unit mod ``m``.

    Requires ``gcd(pivot, *others, m) == 1``. Works one prime at a time and
    glues the choices together with CRT.
    """
    if m == 1:
        return [0] * len(others)
    primes = list(factorize(m))
    choice: dict[int, list[int]] = {}
    for p in primes:
        row = [0] * len(others)
        if pivot % p == 0:
            for k, w in enumerate(others):
                if w % p:
                    row[k] = 1
                    break
            else:
                raise ValueError(f"entries are not unimodular modulo {p}")
        choice[p] = row
    return [crt([choice[p][k] for p in primes], primes) for k in range(len(others))]
