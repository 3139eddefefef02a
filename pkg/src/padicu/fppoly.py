"""Polynomial arithmetic and factorization over F_p.

Polynomials are dense ascending coefficient lists of ints in [0, p),
with no trailing zeros; [] is the zero polynomial.  Factorization is
squarefree + distinct-degree + Cantor-Zassenhaus equal-degree splitting,
driven by a seeded generator so runs are reproducible.
"""

from __future__ import annotations

import random

DEFAULT_SEED = 1729


def trim(c: list[int]) -> list[int]:
    while c and c[-1] == 0:
        c.pop()
    return c


def add(a: list[int], b: list[int], p: int) -> list[int]:
    n = max(len(a), len(b))
    out = [0] * n
    for i, v in enumerate(a):
        out[i] = v
    for i, v in enumerate(b):
        out[i] = (out[i] + v) % p
    return trim(out)


def sub(a: list[int], b: list[int], p: int) -> list[int]:
    n = max(len(a), len(b))
    out = [0] * n
    for i, v in enumerate(a):
        out[i] = v
    for i, v in enumerate(b):
        out[i] = (out[i] - v) % p
    return trim(out)


def mul(a: list[int], b: list[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return trim(out)


def scale(a: list[int], c: int, p: int) -> list[int]:
    return trim([(v * c) % p for v in a])


def divmod_poly(a: list[int], b: list[int], p: int) -> tuple[list[int], list[int]]:
    if not b:
        raise ZeroDivisionError("division by zero polynomial")
    a = list(a)
    inv_lead = pow(b[-1], -1, p)
    q = [0] * max(0, len(a) - len(b) + 1)
    while len(a) >= len(b):
        c = (a[-1] * inv_lead) % p
        d = len(a) - len(b)
        q[d] = c
        for i, bv in enumerate(b):
            a[d + i] = (a[d + i] - c * bv) % p
        trim(a)
        if not a:
            break
    return trim(q), a


def monic(a: list[int], p: int) -> list[int]:
    if not a:
        return []
    return scale(a, pow(a[-1], -1, p), p)


def gcd(a: list[int], b: list[int], p: int) -> list[int]:
    while b:
        a, b = b, divmod_poly(a, b, p)[1]
    return monic(a, p)


def ext_gcd(a: list[int], b: list[int], p: int) -> tuple[list[int], list[int], list[int]]:
    """Return (g, s, t) with s*a + t*b = g and g monic."""
    r0, r1 = list(a), list(b)
    s0, s1 = [1], []
    t0, t1 = [], [1]
    while r1:
        q, r = divmod_poly(r0, r1, p)
        r0, r1 = r1, r
        s0, s1 = s1, sub(s0, mul(q, s1, p), p)
        t0, t1 = t1, sub(t0, mul(q, t1, p), p)
    if not r0:
        return [], s0, t0
    c = pow(r0[-1], -1, p)
    return scale(r0, c, p), scale(s0, c, p), scale(t0, c, p)


def pow_mod(a: list[int], e: int, f: list[int], p: int) -> list[int]:
    r = [1]
    b = divmod_poly(a, f, p)[1]
    while e:
        if e & 1:
            r = divmod_poly(mul(r, b, p), f, p)[1]
        b = divmod_poly(mul(b, b, p), f, p)[1]
        e >>= 1
    return r


def evaluate(a: list[int], x: int, p: int) -> int:
    y = 0
    for c in reversed(a):
        y = (y * x + c) % p
    return y


def derivative(a: list[int], p: int) -> list[int]:
    return trim([(i * a[i]) % p for i in range(1, len(a))])


def is_irreducible(f: list[int], p: int) -> bool:
    m = len(f) - 1
    if m <= 0:
        return False
    if m == 1:
        return True
    x_mod = divmod_poly([0, 1], f, p)[1]
    if pow_mod([0, 1], p**m, f, p) != x_mod:
        return False
    primes = set()
    mm = m
    q = 2
    while q * q <= mm:
        if mm % q == 0:
            primes.add(q)
            while mm % q == 0:
                mm //= q
        q += 1
    if mm > 1:
        primes.add(mm)
    return all(pow_mod([0, 1], p ** (m // q), f, p) != x_mod for q in primes)


def _squarefree_parts(f: list[int], p: int) -> list[tuple[list[int], int]]:
    """Squarefree decomposition of monic f: [(monic squarefree product, multiplicity)]."""
    out: list[tuple[list[int], int]] = []
    if len(f) <= 1:
        return out
    d = derivative(f, p)
    if not d:
        # f = g(x^p); in F_p the p-th root is coefficient decimation
        root = trim([f[i] for i in range(0, len(f), p)])
        return [(g, k * p) for g, k in _squarefree_parts(root, p)]
    c = gcd(f, d, p)
    w = divmod_poly(f, c, p)[0]
    i = 1
    while len(w) > 1:
        y = gcd(w, c, p)
        z = divmod_poly(w, y, p)[0]
        if len(z) > 1:
            out.append((monic(z, p), i))
        w = y
        c = divmod_poly(c, y, p)[0]
        i += 1
    if len(c) > 1:
        root = trim([c[j] for j in range(0, len(c), p)])
        out.extend((g, k * p) for g, k in _squarefree_parts(root, p))
    return out


def _distinct_degree(f: list[int], p: int) -> list[tuple[list[int], int]]:
    """Split squarefree monic f into (product of same-degree irreducibles, degree)."""
    out = []
    h = [0, 1]
    d = 0
    rem = f
    while len(rem) - 1 >= 2 * (d + 1):
        d += 1
        h = pow_mod(h, p, rem, p)
        g = gcd(sub(h, [0, 1], p), rem, p)
        if len(g) > 1:
            rem = divmod_poly(rem, g, p)[0]
            out.append((g, d))
            h = divmod_poly(h, rem, p)[1]
    if len(rem) > 1:
        out.append((rem, len(rem) - 1))
    return out


def _equal_degree_split(f: list[int], d: int, p: int, rng: random.Random) -> list[list[int]]:
    """Cantor-Zassenhaus split of squarefree f whose irreducible factors all have degree d."""
    n = len(f) - 1
    if n == d:
        return [f]
    while True:
        a = trim([rng.randrange(p) for _ in range(n)])
        if len(a) <= 1:
            continue
        g = gcd(a, f, p)
        if len(g) <= 1:
            b = pow_mod(a, (p**d - 1) // 2, f, p)
            g = gcd(sub(b, [1], p), f, p)
            if not 1 < len(g) < len(f):
                continue
        out = []
        for piece in (g, divmod_poly(f, g, p)[0]):
            out.extend(_equal_degree_split(monic(piece, p), d, p, rng))
        return out


def factor(f: list[int], p: int, seed: int = DEFAULT_SEED) -> tuple[int, list[tuple[list[int], int]]]:
    """Factor f over F_p into (leading unit, [(monic irreducible, multiplicity), ...]).

    Factors come back sorted by (degree, coefficient tuple), so the output is
    canonical regardless of the splitting randomness.
    """
    f = trim(list(f))
    if not f:
        raise ValueError("cannot factor the zero polynomial")
    lead = f[-1]
    f = monic(f, p)
    rng = random.Random(seed)
    merged: dict[tuple[int, ...], int] = {}
    for sqf, mult in _squarefree_parts(f, p):
        for prod, d in _distinct_degree(sqf, p):
            for irr in _equal_degree_split(prod, d, p, rng):
                key = tuple(irr)
                merged[key] = merged.get(key, 0) + mult
    ordered = sorted(merged.items(), key=lambda it: (len(it[0]), it[0]))
    return lead, [(list(g), k) for g, k in ordered]


def roots_in_prime_field(f: list[int], p: int) -> list[int]:
    return [x for x in range(p) if evaluate(f, x, p) == 0]
