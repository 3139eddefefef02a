"""Unit polynomials on the multiplicative formal group and their splittings.

Laurent polynomials with O_p coefficients carry the spectral bookkeeping:
orthogonality of two unit polynomials is a unit resultant, splitting
idempotents come from the Bezout identity, and grouped factorizations lift
from the residue field by quadratic Hensel iteration.  Shift sums realize the
coefficient functionals picked out by reduction modulo t^d - 1.

Laurent units t^k are factored out before any resultant or quotient-ring
computation; t is invertible, so the ideals do not change.  The certificates
record the shifts.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import fppoly
from .errors import NotOrthogonal, NotUnitary, PrecisionMismatch, ZeroPolynomial
from .matrices import PadicMatrix, residue_matrix_order
from .scalars import PadicScalar, Zp


class LaurentPoly:
    """Finitely supported sum of a_e t^e with coefficients exact mod p^K."""

    __slots__ = ("ring", "terms", "_dense")

    def __init__(self, ring: Zp, terms: dict[int, int]):
        self.ring = ring
        self.terms = {e: c % ring.pk for e, c in terms.items() if c % ring.pk}
        self._dense = None

    @classmethod
    def from_coeffs(cls, ring: Zp, coeffs, low: int = 0) -> "LaurentPoly":
        return cls(ring, {low + i: int(c) for i, c in enumerate(coeffs)})

    def coeff(self, e: int) -> PadicScalar:
        return self.ring.scalar(self.terms.get(e, 0))

    @property
    def support(self) -> list[int]:
        return sorted(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    @property
    def low(self) -> int:
        if not self.terms:
            raise ZeroPolynomial("zero polynomial has no degree")
        return min(self.terms)

    @property
    def high(self) -> int:
        if not self.terms:
            raise ZeroPolynomial("zero polynomial has no degree")
        return max(self.terms)

    def shift(self, k: int) -> "LaurentPoly":
        return LaurentPoly(self.ring, {e + k: c for e, c in self.terms.items()})

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return LaurentPoly(self.ring, out)

    def __sub__(self, other: "LaurentPoly") -> "LaurentPoly":
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) - c
        return LaurentPoly(self.ring, out)

    def __mul__(self, other: "LaurentPoly") -> "LaurentPoly":
        out: dict[int, int] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                key = e1 + e2
                out[key] = out.get(key, 0) + c1 * c2
        return LaurentPoly(self.ring, out)

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly(self.ring, {e: -c for e, c in self.terms.items()})

    def __eq__(self, other):
        return (
            isinstance(other, LaurentPoly)
            and self.ring == other.ring
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.ring, tuple(sorted(self.terms.items()))))

    def reduce(self, j: int) -> "LaurentPoly":
        if j == self.ring.K:
            return self
        return LaurentPoly(self.ring.at_precision(j), dict(self.terms))

    def polynomial_part(self) -> tuple[list[int], int]:
        """Return (ascending dense coefficients, shift) with f = t^shift * poly."""
        if self._dense is None:
            if not self.terms:
                raise ZeroPolynomial("zero polynomial")
            lo, hi = self.low, self.high
            self._dense = ([self.terms.get(e, 0) for e in range(lo, hi + 1)], lo)
        return self._dense[0][:], self._dense[1]

    def is_unit_polynomial(self) -> bool:
        if not self.terms:
            return False
        p = self.ring.p
        return self.terms[self.low] % p != 0 and self.terms[self.high] % p != 0

    def evaluate_matrix(self, U: PadicMatrix) -> PadicMatrix:
        """f(U) = sum a_e U^e; negative exponents use the inverse.

        Coefficients are base-ring scalars; the matrix may live in an
        unramified extension at the same (p, K).
        """
        if (self.ring.p, self.ring.K) != (U.ring.p, U.ring.K):
            raise PrecisionMismatch(
                f"polynomial over {self.ring} evaluated on matrix over {U.ring}"
            )
        n = U.n
        acc = PadicMatrix.zeros(U.ring, n)
        if not self.terms:
            return acc
        inv = None
        powers: dict[int, PadicMatrix] = {0: PadicMatrix.identity(U.ring, n)}

        def power(e: int) -> PadicMatrix:
            nonlocal inv
            if e in powers:
                return powers[e]
            if e > 0:
                powers[e] = power(e - 1) @ U
            else:
                if inv is None:
                    inv = U.inverse()
                powers[e] = power(e + 1) @ inv
            return powers[e]

        for e in sorted(self.terms):
            acc = acc + power(e).scale(self.terms[e])
        return acc

    def __repr__(self):
        body = " + ".join(f"{c}*t^{e}" for e, c in sorted(self.terms.items())) or "0"
        return f"LaurentPoly({body} over {self.ring})"


class UnitPolynomial(LaurentPoly):
    """Laurent polynomial whose extreme coefficients are units.

    Over O_p this is equivalent to every root having norm 1, which is what
    makes the resultant/orthogonality calculus work.
    """

    def __init__(self, ring: Zp, terms: dict[int, int]):
        super().__init__(ring, terms)
        if not self.is_unit_polynomial():
            raise NotUnitary(
                "unit polynomial needs nonzero unit extreme coefficients"
            )


# -- dense helpers mod an integer --------------------------------------------


def _ptrim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _padd(a, b, mod):
    out = [0] * max(len(a), len(b))
    for i, v in enumerate(a):
        out[i] = v
    for i, v in enumerate(b):
        out[i] = (out[i] + v) % mod
    return _ptrim(out)


def _psub(a, b, mod):
    out = [0] * max(len(a), len(b))
    for i, v in enumerate(a):
        out[i] = v
    for i, v in enumerate(b):
        out[i] = (out[i] - v) % mod
    return _ptrim(out)


def _pmul(a, b, mod):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % mod
    return _ptrim(out)


def _pdivmod(a, b, mod, inv_lead=None):
    """Division with remainder; leading coefficient of b must be a unit mod p."""
    a = [v % mod for v in a]
    _ptrim(a)
    if inv_lead is None:
        inv_lead = pow(b[-1], -1, mod)
    q = [0] * max(0, len(a) - len(b) + 1)
    while len(a) >= len(b):
        c = (a[-1] * inv_lead) % mod
        d = len(a) - len(b)
        q[d] = c
        for i, bv in enumerate(b):
            a[d + i] = (a[d + i] - c * bv) % mod
        _ptrim(a)
        if not a:
            break
    return _ptrim(q), a


def _det_int(rows: list[list[int]], mod: int) -> int:
    n = len(rows)
    if n == 0:
        return 1 % mod
    if n == 1:
        return rows[0][0] % mod
    if n == 2:
        return (rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0]) % mod
    if n == 3:
        (a, b, c), (d, e, f), (g, h, i) = rows
        return (a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g)) % mod
    total = 0
    for j in range(n):
        if rows[0][j]:
            minor = [r[:j] + r[j + 1 :] for r in rows[1:]]
            sign = -1 if j % 2 else 1
            total += sign * rows[0][j] * _det_int(minor, mod)
    return total % mod


def _adjugate_int(rows: list[list[int]], mod: int) -> list[list[int]]:
    n = len(rows)
    adj = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            minor = [r[:i] + r[i + 1 :] for k, r in enumerate(rows) if k != j]
            sign = -1 if (i + j) % 2 else 1
            adj[i][j] = (sign * _det_int(minor, mod)) % mod
    return adj


def _adjugate_last_row(rows: list[list[int]], mod: int) -> list[int]:
    """Only the last adjugate row is needed for the Bezout coefficients."""
    n = len(rows)
    if n == 4:
        # unrolled cofactors along the last column (the dominant sweep case)
        (a0, a1, a2, _), (b0, b1, b2, _), (c0, c1, c2, _), (d0, d1, d2, _) = rows
        cd0 = c1 * d2 - c2 * d1
        cd1 = c0 * d2 - c2 * d0
        cd2 = c0 * d1 - c1 * d0
        bd0 = b1 * d2 - b2 * d1
        bd1 = b0 * d2 - b2 * d0
        bd2 = b0 * d1 - b1 * d0
        bc0 = b1 * c2 - b2 * c1
        bc1 = b0 * c2 - b2 * c0
        bc2 = b0 * c1 - b1 * c0
        return [
            (-(b0 * cd0 - b1 * cd1 + b2 * cd2)) % mod,
            (a0 * cd0 - a1 * cd1 + a2 * cd2) % mod,
            (-(a0 * bd0 - a1 * bd1 + a2 * bd2)) % mod,
            (a0 * bc0 - a1 * bc1 + a2 * bc2) % mod,
        ]
    out = [0] * n
    for j in range(n):
        minor = [r[:-1] for k, r in enumerate(rows) if k != j]
        sign = -1 if (n - 1 + j) % 2 else 1
        out[j] = (sign * _det_int(minor, mod)) % mod
    return out


def _sylvester(fc: list[int], gc: list[int]) -> list[list[int]]:
    """Sylvester matrix; rows are shifted descending coefficient vectors."""
    m, n = len(fc) - 1, len(gc) - 1
    size = m + n
    rows = [[0] * size for _ in range(size)]
    fdesc = fc[::-1]
    gdesc = gc[::-1]
    for i in range(n):
        for k, c in enumerate(fdesc):
            rows[i][i + k] = c
    for i in range(m):
        for k, c in enumerate(gdesc):
            rows[n + i][i + k] = c
    return rows


def resultant(f: LaurentPoly, g: LaurentPoly) -> PadicScalar:
    """Sylvester determinant of the polynomial parts (Laurent shifts dropped)."""
    if f.is_zero() or g.is_zero():
        raise ZeroPolynomial("resultant of the zero polynomial is undefined")
    ring = f.ring
    fc, _ = f.polynomial_part()
    gc, _ = g.polynomial_part()
    m, n = len(fc) - 1, len(gc) - 1
    if m == 0:
        return ring.scalar(pow(fc[0], n, ring.pk))
    if n == 0:
        return ring.scalar(pow(gc[0], m, ring.pk))
    return ring.scalar(_det_int(_sylvester(fc, gc), ring.pk))


@dataclass(frozen=True)
class OrthogonalityCertificate:
    """Unit-resultant test with the Bezout pair k*f + l*g = res over Z/p^j."""

    orthogonal: bool
    res: PadicScalar
    bezout_k: LaurentPoly | None
    bezout_l: LaurentPoly | None
    shifts: tuple[int, int]

    def __bool__(self):
        return self.orthogonal


def orthogonality_test(f: LaurentPoly, g: LaurentPoly, j: int) -> OrthogonalityCertificate:
    """True iff res(f, g) is a unit; then k, l with k*f + l*g = res are attached.

    The pair comes from the adjugate row of the Sylvester matrix (the
    subresultant Bezout coefficients), computed exactly over Z/p^j.
    """
    ring_j = f.ring.at_precision(j)
    pj = ring_j.pk
    p = f.ring.p
    fc, kf = f.reduce(j).polynomial_part()
    gc, kg = g.reduce(j).polynomial_part()
    m, n = len(fc) - 1, len(gc) - 1
    if m == 0 or n == 0:
        res = ring_j.scalar(pow(fc[0], n, pj) if m == 0 else pow(gc[0], m, pj))
        if res.lift() % p == 0:
            return OrthogonalityCertificate(False, res, None, None, (kf, kg))
        # constant unit side: k or l is just the scaled inverse
        if m == 0:
            k = LaurentPoly.from_coeffs(ring_j, [(res.lift() * pow(fc[0], -1, pj)) % pj])
            l = LaurentPoly(ring_j, {})
        else:
            k = LaurentPoly(ring_j, {})
            l = LaurentPoly.from_coeffs(ring_j, [(res.lift() * pow(gc[0], -1, pj)) % pj])
    else:
        syl = [[v % pj for v in row] for row in _sylvester(fc, gc)]
        adj_last_row = _adjugate_last_row(syl, pj)
        size = m + n
        # cofactor expansion along the last column recovers the determinant
        res_val = sum(adj_last_row[r] * syl[r][size - 1] for r in range(size)) % pj
        res = ring_j.scalar(res_val)
        if res_val % p == 0:
            return OrthogonalityCertificate(False, res, None, None, (kf, kg))
        # entries pair with rows of S: first n rows shift f, last m rows shift g;
        # row i of the f block contributes t^(n-1-i), similarly for g
        k = LaurentPoly(
            ring_j, {n - 1 - i: adj_last_row[i] for i in range(n)}
        )
        l = LaurentPoly(
            ring_j, {m - 1 - i: adj_last_row[n + i] for i in range(m)}
        )
    combo = _padd(
        _pmul(_dense_from_laurent(k), fc, pj), _pmul(_dense_from_laurent(l), gc, pj), pj
    )
    if combo != _ptrim([res.lift() % pj]):
        raise ArithmeticError("Bezout certificate failed self-check")
    return OrthogonalityCertificate(True, res, k, l, (kf, kg))


@dataclass(frozen=True)
class BezoutIdempotents:
    """P1 + P2 = 1 splitting of the quotient by (p^j, f*g)."""

    ring: Zp
    modulus: list[int]  # dense fg, unit leading coefficient
    f_dense: list[int]
    g_dense: list[int]
    p1: list[int]
    p2: list[int]
    certificate: OrthogonalityCertificate

    def _mul(self, a, b):
        return _pdivmod(_pmul(a, b, self.ring.pk), self.modulus, self.ring.pk)[1]

    def p1_poly(self) -> LaurentPoly:
        return LaurentPoly.from_coeffs(self.ring, self.p1)

    def p2_poly(self) -> LaurentPoly:
        return LaurentPoly.from_coeffs(self.ring, self.p2)

    def verify(self) -> bool:
        """All six splitting properties, exactly mod (p^j, fg).

        The quotient ring is commutative, so the P2 statements are evaluated
        through P2 = 1 - P1 (exact list arithmetic on the same ring elements),
        and the resolution of the identity for arbitrary h follows from
        P1 + P2 = 1 by linearity; one monomial is spot-checked.
        """
        pj = self.ring.pk
        fg = self.modulus
        inv_lead = pow(fg[-1], -1, pj)

        def qmul(a, b):
            prod = _pmul(a, b, pj)
            if len(prod) >= len(fg):
                prod = _pdivmod(prod, fg, pj, inv_lead)[1]
            return prod

        p1, p2 = self.p1, self.p2
        if _padd(p1, p2, pj) != [1]:
            return False
        p1sq = qmul(p1, p1)
        if p1sq != p1:
            return False
        if qmul(p1, p2) != []:  # = P2 P1 in the commutative quotient
            return False
        # P2^2 = (1 - P1)^2 = 1 - 2 P1 + P1^2
        p2sq = _padd(_psub([1], _padd(p1, p1, pj), pj), p1sq, pj)
        if p2sq != p2:
            return False
        f = _pdivmod(self.f_dense, fg, pj, inv_lead)[1]
        g = _pdivmod(self.g_dense, fg, pj, inv_lead)[1]
        p1f = qmul(p1, f)
        if p1f != f or _psub(f, p1f, pj) != []:  # P1 f = f and P2 f = 0
            return False
        p1g = qmul(p1, g)
        if p1g != [] or _psub(g, p1g, pj) != g:  # P1 g = 0 and P2 g = g
            return False
        h = [0, 1] if len(fg) > 2 else [1]
        return _padd(qmul(p1, h), qmul(p2, h), pj) == h


def bezout_idempotents(
    f: LaurentPoly,
    g: LaurentPoly,
    j: int,
    certificate: OrthogonalityCertificate | None = None,
) -> BezoutIdempotents:
    """Split the quotient by (p^j, f*g) as P1 + P2 = 1 with P1*P2 = 0.

    P1 = k*f/res and P2 = l*g/res reduced mod (p^j, fg); requires the
    resultant to be a unit.  Pass an already-computed certificate for (f, g, j)
    to skip recomputing it.
    """
    cert = certificate if certificate is not None else orthogonality_test(f, g, j)
    if not cert.orthogonal:
        raise NotOrthogonal(f"resultant {cert.res!r} is not a unit")
    ring_j = cert.res.ring
    pj = ring_j.pk
    fc, _ = f.reduce(j).polynomial_part()
    gc, _ = g.reduce(j).polynomial_part()
    fg = _pmul(fc, gc, pj)
    inv_res = pow(cert.res.lift(), -1, pj)
    k_dense = _dense_from_laurent(cert.bezout_k)
    l_dense = _dense_from_laurent(cert.bezout_l)
    p1 = _ptrim([(v * inv_res) % pj for v in _pmul(k_dense, fc, pj)])
    p2 = _ptrim([(v * inv_res) % pj for v in _pmul(l_dense, gc, pj)])
    if len(p1) >= len(fg):
        p1 = _pdivmod(p1, fg, pj)[1]
    if len(p2) >= len(fg):
        p2 = _pdivmod(p2, fg, pj)[1]
    result = BezoutIdempotents(ring_j, fg, fc, gc, p1, p2, cert)
    if not result.verify():
        raise ArithmeticError("idempotent construction failed its audit")
    return result


def _dense_from_laurent(poly: LaurentPoly) -> list[int]:
    if poly.is_zero():
        return []
    dense, low = poly.polynomial_part()
    if low < 0:
        raise ValueError("negative exponents in dense conversion")
    return [0] * low + dense


# -- Hensel lifting of grouped factorizations ---------------------------------


def _hensel_pair(f, g0, h0, p, j):
    """Lift f = g0*h0 (mod p) to mod p^j with quadratic Newton iteration.

    f, g0, h0 monic; g0, h0 coprime mod p.  Each round doubles the precision
    and refreshes the Bezout cofactors s*g + t*h = 1 alongside.
    """
    one, s, t = fppoly.ext_gcd(g0, h0, p)
    if one != [1]:
        raise ArithmeticError("factors are not coprime mod p")
    g, h = list(g0), list(h0)
    prec = 1
    while prec < j:
        prec = min(2 * prec, j)
        mod = p**prec
        e = _psub([v % mod for v in f], _pmul(g, h, mod), mod)
        qq, r = _pdivmod(_pmul(t, e, mod), g, mod)
        g_new = _padd(g, r, mod)
        h_new, rem = _pdivmod([v % mod for v in f], g_new, mod)
        if rem:
            raise ArithmeticError("Hensel division left a nonzero remainder")
        # cofactor refresh: s*g + t*h = 1 at the new precision
        b = _psub(_padd(_pmul(s, g_new, mod), _pmul(t, h_new, mod), mod), [1], mod)
        cq, cr = _pdivmod(_pmul(s, b, mod), h_new, mod)
        s_new = _psub(s, cr, mod)
        t_new = _psub(_psub(t, _pmul(b, t, mod), mod), _pmul(cq, g_new, mod), mod)
        # normalize degrees: t mod g, then s = (1 - t*h) / g exactly
        _, t_new = _pdivmod(t_new, g_new, mod)
        s_new, srem = _pdivmod(_psub([1], _pmul(t_new, h_new, mod), mod), g_new, mod)
        if srem:
            raise ArithmeticError("cofactor refresh failed")
        g, h, s, t = g_new, h_new, s_new, t_new
    return g, h


def _hensel_lift_list(f, residue_factors, p, j):
    """Lift a pairwise-coprime monic factorization of f mod p to mod p^j."""
    if j == 1:
        return [list(r) for r in residue_factors]
    if len(residue_factors) == 1:
        return [[v % p**j for v in f]]
    half = len(residue_factors) // 2
    left = residue_factors[:half]
    right = residue_factors[half:]
    lres = left[0]
    for extra in left[1:]:
        lres = fppoly.mul(lres, extra, p)
    rres = right[0]
    for extra in right[1:]:
        rres = fppoly.mul(rres, extra, p)
    lf, rf = _hensel_pair(f, lres, rres, p, j)
    return _hensel_lift_list(lf, left, p, j) + _hensel_lift_list(rf, right, p, j)


@dataclass(frozen=True)
class TeichFactorization:
    """f = unit * t^shift * prod factors over Z/p^j, one factor per orbit."""

    ring: Zp
    unit: PadicScalar
    shift: int
    factors: dict[tuple[int, ...], list[int]]  # residue irreducible -> lifted factor

    def product(self) -> LaurentPoly:
        pj = self.ring.pk
        acc = [self.unit.lift() % pj]
        for factor in self.factors.values():
            acc = _pmul(acc, factor, pj)
        return LaurentPoly.from_coeffs(self.ring, acc, low=self.shift)

    def orbit_degrees(self) -> dict[tuple[int, ...], int]:
        return {label: len(label) - 1 for label in self.factors}


def teich_factor(f: LaurentPoly, j: int, seed: int = fppoly.DEFAULT_SEED) -> TeichFactorization:
    """Group f by Teichmuller disc cluster and lift the grouped factorization.

    The reduction of f is factored over F_p; each distinct irreducible (one
    Frobenius orbit of residue roots) keeps its full multiplicity as a single
    grouped factor, the groups are pairwise coprime mod p, and Hensel lifting
    recovers the factorization exactly mod p^j.
    """
    if not f.is_unit_polynomial():
        raise NotUnitary("teich_factor needs a unit polynomial")
    ring_j = f.ring.at_precision(j)
    pj = ring_j.pk
    p = f.ring.p
    dense, shift = f.reduce(j).polynomial_part()
    lead = dense[-1]
    inv_lead = pow(lead, -1, pj)
    monic = [(v * inv_lead) % pj for v in dense]
    residue = [v % p for v in monic]
    _, residue_factors = fppoly.factor(residue, p, seed=seed)
    grouped = []
    labels = []
    for irr, mult in residue_factors:
        group = [1]
        for _ in range(mult):
            group = fppoly.mul(group, irr, p)
        grouped.append(group)
        labels.append(tuple(irr))
    lifted = _hensel_lift_list(monic, grouped, p, j)
    factors = dict(zip(labels, lifted))
    result = TeichFactorization(ring_j, ring_j.scalar(lead), shift, factors)
    if result.product() != f.reduce(j):
        raise ArithmeticError("teich_factor product audit failed")
    return result


# -- principal ideals, shift sums, volumes -------------------------------------


@dataclass(frozen=True)
class PrincipalIdealIndex:
    """Label (j, n) for the ideal generated by p^j and t^n - 1."""

    j: int
    n: int

    def __post_init__(self):
        if self.j < 1 or self.n < 1:
            raise ValueError("principal ideal index needs j >= 1 and n >= 1")


@dataclass(frozen=True)
class PrincipalExponent:
    """n = p^l * N with t^n - 1 in the ideal: U^n = I mod p^j."""

    n: int
    l: int
    N: int

    def as_index(self, j: int) -> PrincipalIdealIndex:
        return PrincipalIdealIndex(j, self.n)


def principal_exponent(arg, j: int) -> PrincipalExponent:
    """Least p^l * N with the reduction order N such that U^(p^l N) = I mod p^j.

    Accepts a unitary matrix or a unit polynomial (taken through its companion
    matrix).  l <= j - 1 always suffices because 1 + p M_n has exponent
    p^(j-1) for p >= 3.
    """
    if isinstance(arg, LaurentPoly):
        if not arg.is_unit_polynomial():
            raise NotUnitary("principal exponent needs a unit polynomial")
        dense, _ = arg.polynomial_part()
        ring = arg.ring
        inv_lead = pow(dense[-1], -1, ring.pk)
        monic = [(v * inv_lead) % ring.pk for v in dense]
        U = PadicMatrix.companion(ring, monic[:-1])
    elif isinstance(arg, PadicMatrix):
        U = arg
        if not U.is_unitary():
            raise NotUnitary("principal exponent needs a unitary matrix")
    else:
        raise TypeError("expected a unit polynomial or a unitary matrix")
    N = residue_matrix_order(U)
    reduced = U.reduce(j)
    p = reduced.ring.p
    identity = PadicMatrix.identity(reduced.ring, reduced.n)
    for l in range(j + U.n + 2):
        if reduced.matrix_power(p**l * N) == identity:
            return PrincipalExponent(p**l * N, l, N)
    raise ArithmeticError("principal exponent search failed; precision exhausted")


def ideal_lattice(n1: int, n2: int) -> tuple[int, int]:
    """Sum and intersection indexes of principal unit ideals: (gcd, lcm)."""
    if n1 < 1 or n2 < 1:
        raise ValueError("principal indexes must be >= 1")
    from math import gcd

    g = gcd(n1, n2)
    return g, n1 * n2 // g


def shift_sum(f: LaurentPoly, c: int, d: int) -> PadicScalar:
    """Sum of coefficients along the progression c + dZ."""
    if d == 0:
        raise ValueError("progression step d must be nonzero")
    d = abs(d)
    total = 0
    for e, coeff in f.terms.items():
        if (e - c) % d == 0:
            total += coeff
    return f.ring.scalar(total)


def project_mod(f: LaurentPoly, d: int) -> tuple[PadicScalar, ...]:
    """Image of f in O_p[t]/(t^d - 1): component c is the shift sum at c + dZ."""
    if d < 1:
        raise ValueError("d must be >= 1")
    return tuple(shift_sum(f, c, d) for c in range(d))


def additivity_check(f: LaurentPoly, c: int, d: int, dstar: int) -> bool:
    """S_{c+dZ} equals the sum of its d* refinements."""
    if d < 1 or dstar < 1:
        raise ValueError("d and d* must be >= 1")
    total = f.ring.scalar(0)
    for cstar in range(1, dstar + 1):
        total = total + shift_sum(f, c + cstar * d, d * dstar)
    return total == shift_sum(f, c, d)


def haar_volume(c: int, d: int) -> Fraction:
    """Volume of the progression c + dZ in the profinite completion: 1/|d|."""
    if d == 0:
        raise ValueError("d must be nonzero")
    return Fraction(1, abs(d))


def profinite_volume(quotient_order: int) -> Fraction:
    """Volume of an open normal subgroup with the given quotient order."""
    if quotient_order < 1:
        raise ValueError("quotient order must be >= 1")
    return Fraction(1, quotient_order)
