"""Shipped table of Conway-style defining polynomials and their canonical lifts.

The residue-field moduli (version "cw1") are the standard Conway polynomials
for p in {3, 5, 7} and degrees m <= 4: monic, irreducible mod p, primitive.
At working precision K each entry is lifted to the unique monic polynomial
over Z/p^K whose roots are Teichmuller elements; in the quotient ring the
class of X is then an exact Teichmuller generator and X -> X^p induces the
exact Frobenius endomorphism.

The table can be overridden with the PADICU_MODULUS_TABLE environment
variable pointing at a JSON file of {"p,m": [c0, c1, ..., 1]} entries.
"""

from __future__ import annotations

import json
import os
from functools import lru_cache

from . import fppoly
from .errors import InputError

TABLE_VERSION = "cw1"

_ENV_TABLE = "PADICU_MODULUS_TABLE"

# Ascending coefficients, leading coefficient 1.  Verified primitive and
# irreducible by tests/test_moduli.py.
_CONWAY: dict[tuple[int, int], tuple[int, ...]] = {
    (3, 1): (1, 1),
    (3, 2): (2, 2, 1),
    (3, 3): (1, 2, 0, 1),
    (3, 4): (2, 0, 0, 2, 1),
    (5, 1): (3, 1),
    (5, 2): (2, 4, 1),
    (5, 3): (3, 3, 0, 1),
    (5, 4): (2, 4, 4, 0, 1),
    (7, 1): (4, 1),
    (7, 2): (3, 6, 1),
    (7, 3): (4, 0, 6, 1),
    (7, 4): (3, 4, 5, 0, 1),
}


def _load_table() -> dict[tuple[int, int], tuple[int, ...]]:
    path = os.environ.get(_ENV_TABLE)
    if not path:
        return _CONWAY
    with open(path, encoding="utf-8") as fh:
        raw = json.load(fh)
    table = {}
    for key, coeffs in raw.items():
        p_str, m_str = key.split(",")
        table[(int(p_str), int(m_str))] = tuple(int(c) for c in coeffs)
    return table


def has_entry(p: int, m: int) -> bool:
    return (p, m) in _load_table()


def residue_modulus(p: int, m: int) -> tuple[int, ...]:
    """Defining polynomial of F_{p^m} over F_p from the shipped table."""
    table = _load_table()
    try:
        poly = table[(p, m)]
    except KeyError:
        raise InputError(
            f"no modulus shipped for p={p}, m={m}; table covers p in {{3,5,7}}, m <= 4"
        ) from None
    if poly[-1] != 1 or not fppoly.is_irreducible([c % p for c in poly], p):
        raise InputError(f"modulus table entry for p={p}, m={m} is not monic irreducible")
    return poly


def modulus_id(p: int, m: int) -> str:
    return f"{TABLE_VERSION}-p{p}-m{m}"


def _polmul_mod(a, b, f, pk):
    m = len(f) - 1
    res = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                res[i + j] = (res[i + j] + ai * bj) % pk
    for i in range(len(res) - 1, m - 1, -1):
        c = res[i]
        if c:
            res[i] = 0
            for j in range(m):
                res[i - m + j] = (res[i - m + j] - c * f[j]) % pk
    out = res[:m]
    out += [0] * (m - len(out))
    return out


def _polpow_mod(a, e, f, pk):
    m = len(f) - 1
    r = [1] + [0] * (m - 1)
    b = list(a)
    while e:
        if e & 1:
            r = _polmul_mod(r, b, f, pk)
        b = _polmul_mod(b, b, f, pk)
        e >>= 1
    return r


@lru_cache(maxsize=None)
def canonical_modulus(p: int, m: int, K: int) -> tuple[int, ...]:
    """Monic degree-m polynomial over Z/p^K whose roots are Teichmuller units.

    Built by moving the naive lift's generator to its Teichmuller representative
    and expanding the product over its Frobenius orbit; the coefficients come
    out Galois-fixed, i.e. plain integers mod p^K.
    """
    if m == 1:
        base = residue_modulus(p, 1)
        # root is the table's primitive residue; lift it to its Teichmuller unit
        r = (-base[0]) % p
        pk = p**K
        y = r
        while True:
            y2 = pow(y, p, pk)
            if y2 == y:
                break
            y = y2
        return ((-y) % pk, 1)
    base = residue_modulus(p, m)
    pk = p**K
    naive = [c % pk for c in base]
    x = [0, 1] + [0] * (m - 2)
    y = list(x)
    for _ in range(K + 2):
        y2 = _polpow_mod(y, p**m, naive, pk)
        if y2 == y:
            break
        y = y2
    if _polpow_mod(y, p**m, naive, pk) != y:
        raise RuntimeError("Teichmuller iteration failed to stabilize")
    conjugates = [y]
    for _ in range(1, m):
        conjugates.append(_polpow_mod(conjugates[-1], p, naive, pk))
    # expand prod (X - conj) with coefficients in the scaffold ring
    coeffs = [[1] + [0] * (m - 1)]
    for c in conjugates:
        neg = [(-v) % pk for v in c]
        new = [[0] * m for _ in range(len(coeffs) + 1)]
        for i, gc in enumerate(coeffs):
            new[i + 1] = [(new[i + 1][t] + gc[t]) % pk for t in range(m)]
            prod = _polmul_mod(gc, neg, naive, pk)
            new[i] = [(new[i][t] + prod[t]) % pk for t in range(m)]
        coeffs = new
    flat = []
    for vec in coeffs:
        if any(v != 0 for v in vec[1:]):
            raise RuntimeError("orbit product has a non-constant coefficient")
        flat.append(vec[0])
    if flat[-1] != 1 or [c % p for c in flat] != [c % p for c in base]:
        raise RuntimeError("canonical modulus failed its reduction audit")
    return tuple(flat)
