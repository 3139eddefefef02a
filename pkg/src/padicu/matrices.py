"""Dense exact matrices over Z_p or an unramified extension at precision K.

Entries are stored as the rings' raw values (ints, or coefficient tuples),
so the inner loops run on plain integers; scalar objects only appear at the
API boundary.  Everything is exact modulo p^K: the characteristic polynomial
is computed division-free (Berkowitz), inversion goes through the
Cayley-Hamilton adjugate, and the Smith form uses minimal-valuation pivoting,
which is enough over the local ring Z/p^j.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import NotInvertible, PrecisionMismatch
from .scalars import AnyRing, AnyScalar, PadicScalar, UnramScalar, Zp, wrap


@dataclass(frozen=True)
class Norm:
    """Ultrametric size p^-val; val = K only means 'at most p^-K' at this precision."""

    p: int
    K: int
    val: int

    @property
    def at_floor(self) -> bool:
        return self.val >= self.K

    def value(self) -> Fraction:
        return Fraction(1, self.p**self.val)

    def __eq__(self, other):
        return isinstance(other, Norm) and (self.p, self.K, self.val) == (
            other.p,
            other.K,
            other.val,
        )

    def __lt__(self, other):
        return self.val > other.val

    def __le__(self, other):
        return self.val >= other.val

    def __str__(self):
        if self.at_floor:
            return f"<=1/{self.p**self.K}"
        if self.val == 0:
            return "1"
        return f"1/{self.p**self.val}"


@dataclass(frozen=True)
class SeminormResult:
    """Limit behavior of |A^k|^(1/k): exponent pair (val, k) means value p^(-val/k)."""

    p: int
    K: int
    is_zero: bool
    nilpotency_k: int | None
    best_k: int
    val: int

    def value(self) -> Fraction | float:
        if self.is_zero:
            return Fraction(0)
        if self.val % self.best_k == 0:
            return Fraction(1, self.p ** (self.val // self.best_k))
        return float(self.p) ** (-self.val / self.best_k)


def _coerce_raw(ring: AnyRing, value):
    if isinstance(value, (PadicScalar, UnramScalar)):
        return ring.scalar(value).residue if isinstance(ring, Zp) else ring.scalar(value).coeff_ints
    if isinstance(ring, Zp):
        return ring.rfrom_int(int(value))
    if isinstance(value, int):
        return ring.rfrom_int(value)
    return ring.scalar(value).coeff_ints


class PadicMatrix:
    """Immutable n x n matrix with sup norm; unitary means unit determinant."""

    __slots__ = ("ring", "n", "rows")

    def __init__(self, ring: AnyRing, rows):
        self.ring = ring
        self.rows = tuple(tuple(r) for r in rows)
        self.n = len(self.rows)
        for r in self.rows:
            if len(r) != self.n:
                raise ValueError("matrix must be square")

    # -- construction ---------------------------------------------------
    @classmethod
    def from_rows(cls, ring: AnyRing, rows) -> "PadicMatrix":
        return cls(ring, [[_coerce_raw(ring, v) for v in row] for row in rows])

    @classmethod
    def identity(cls, ring: AnyRing, n: int) -> "PadicMatrix":
        z, o = ring.zero, ring.one
        return cls(ring, [[o if i == j else z for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, ring: AnyRing, n: int) -> "PadicMatrix":
        z = ring.zero
        return cls(ring, [[z] * n for _ in range(n)])

    @classmethod
    def diagonal(cls, ring: AnyRing, values) -> "PadicMatrix":
        raws = [_coerce_raw(ring, v) for v in values]
        z = ring.zero
        n = len(raws)
        return cls(ring, [[raws[i] if i == j else z for j in range(n)] for i in range(n)])

    @classmethod
    def companion(cls, ring: AnyRing, monic_coeffs) -> "PadicMatrix":
        """Companion matrix of t^n + c_{n-1} t^{n-1} + ... + c_0 (ascending c, no lead)."""
        coeffs = [_coerce_raw(ring, c) for c in monic_coeffs]
        n = len(coeffs)
        z, o = ring.zero, ring.one
        rows = [[z] * n for _ in range(n)]
        for i in range(1, n):
            rows[i][i - 1] = o
        for i in range(n):
            rows[i][n - 1] = ring.rneg(coeffs[i])
        return cls(ring, rows)

    # -- basics -----------------------------------------------------------
    def entry(self, i: int, j: int) -> AnyScalar:
        return wrap(self.ring, self.rows[i][j])

    def entries(self) -> list[list[AnyScalar]]:
        return [[wrap(self.ring, v) for v in row] for row in self.rows]

    def _check(self, other: "PadicMatrix"):
        if self.ring != other.ring:
            raise PrecisionMismatch(f"{self.ring} vs {other.ring}")
        if self.n != other.n:
            raise ValueError("dimension mismatch")

    def __eq__(self, other):
        return (
            isinstance(other, PadicMatrix)
            and self.ring == other.ring
            and self.rows == other.rows
        )

    def __hash__(self):
        return hash((self.ring, self.rows))

    def __add__(self, other):
        self._check(other)
        add = self.ring.radd
        return PadicMatrix(
            self.ring,
            [
                [add(a, b) for a, b in zip(ra, rb)]
                for ra, rb in zip(self.rows, other.rows)
            ],
        )

    def __sub__(self, other):
        self._check(other)
        sub = self.ring.rsub
        return PadicMatrix(
            self.ring,
            [
                [sub(a, b) for a, b in zip(ra, rb)]
                for ra, rb in zip(self.rows, other.rows)
            ],
        )

    def __neg__(self):
        neg = self.ring.rneg
        return PadicMatrix(self.ring, [[neg(a) for a in row] for row in self.rows])

    def scale(self, c) -> "PadicMatrix":
        raw = _coerce_raw(self.ring, c)
        mul = self.ring.rmul
        return PadicMatrix(self.ring, [[mul(raw, a) for a in row] for row in self.rows])

    def __matmul__(self, other):
        self._check(other)
        return PadicMatrix(self.ring, _matmul(self.ring, self.rows, other.rows))

    def __mul__(self, other):
        if isinstance(other, PadicMatrix):
            return self.__matmul__(other)
        return self.scale(other)

    def apply(self, vector: Sequence) -> tuple:
        """Matrix-vector product; returns scalar objects."""
        raws = [_coerce_raw(self.ring, v) for v in vector]
        ring = self.ring
        out = []
        for row in self.rows:
            acc = ring.zero
            for a, x in zip(row, raws):
                acc = ring.radd(acc, ring.rmul(a, x))
            out.append(acc)
        return tuple(wrap(ring, v) for v in out)

    def transpose(self) -> "PadicMatrix":
        return PadicMatrix(self.ring, list(zip(*self.rows)))

    def trace(self) -> AnyScalar:
        acc = self.ring.zero
        for i in range(self.n):
            acc = self.ring.radd(acc, self.rows[i][i])
        return wrap(self.ring, acc)

    # -- norms ------------------------------------------------------------
    def min_valuation(self) -> int:
        return min(
            (self.ring.rval(v) for row in self.rows for v in row),
            default=self.ring.K,
        )

    def sup_norm(self) -> Norm:
        return Norm(self.ring.p, self.ring.K, self.min_valuation())

    def is_zero(self) -> bool:
        z = self.ring.zero
        return all(v == z for row in self.rows for v in row)

    def is_unitary(self) -> bool:
        """|U| = |U^-1| = 1: integral entries (always true here) and unit determinant."""
        return self.ring.runit(self._det_raw())

    # -- char poly / det / inverse -----------------------------------------
    def char_poly_raw(self) -> list:
        """Ascending coefficients of det(tI - A), computed division-free (Berkowitz)."""
        ring, rows, n = self.ring, self.rows, self.n
        if n == 0:
            return [ring.one]
        c = [ring.one]  # descending during the loop
        for r in range(1, n + 1):
            pivot = rows[r - 1][r - 1]
            row_part = rows[r - 1][: r - 1]
            col_part = [rows[i][r - 1] for i in range(r - 1)]
            q = [pivot]
            v = col_part
            for _ in range(1, r):
                acc = ring.zero
                for a, x in zip(row_part, v):
                    acc = ring.radd(acc, ring.rmul(a, x))
                q.append(acc)
                v = [
                    _dot(ring, rows[i][: r - 1], v) for i in range(r - 1)
                ]
            new_c = []
            for i in range(r + 1):
                acc = c[i] if i < len(c) else ring.zero
                for j in range(max(0, i - len(q)), i):
                    acc = ring.rsub(acc, ring.rmul(q[i - j - 1], c[j]))
                new_c.append(acc)
            c = new_c
        return list(reversed(c))

    def char_poly(self) -> list[AnyScalar]:
        return [wrap(self.ring, v) for v in self.char_poly_raw()]

    def _det_raw(self):
        c0 = self.char_poly_raw()[0]
        return c0 if self.n % 2 == 0 else self.ring.rneg(c0)

    def det(self) -> AnyScalar:
        return wrap(self.ring, self._det_raw())

    def inverse(self) -> "PadicMatrix":
        ring, n = self.ring, self.n
        chi = self.char_poly_raw()
        if not ring.runit(chi[0]):
            raise NotInvertible("determinant is not a unit")
        # A * (A^{n-1} + c_{n-1} A^{n-2} + ... + c_1 I) = -c_0 I
        acc = PadicMatrix.identity(ring, n)
        for k in range(n - 1, 0, -1):
            acc = self @ acc
            acc = acc + PadicMatrix.identity(ring, n).scale(wrap(ring, chi[k]))
        factor = ring.rneg(ring.rinv(chi[0]))
        return acc.scale(wrap(ring, factor))

    def matrix_power(self, e: int) -> "PadicMatrix":
        """A^e by binary exponentiation; negative e inverts first."""
        if e < 0:
            return self.inverse().matrix_power(-e)
        result = PadicMatrix.identity(self.ring, self.n)
        base = self
        while e:
            if e & 1:
                result = result @ base
            base = base @ base
            e >>= 1
        return result

    # -- precision / residue / Galois ---------------------------------------
    def reduce(self, j: int) -> "PadicMatrix":
        target = self.ring.at_precision(j)
        return PadicMatrix(
            target, [[self.ring.rreduce(v, j) for v in row] for row in self.rows]
        )

    def residue_rows(self) -> tuple:
        """Entries reduced into the residue field (ints for Zp, tuples otherwise)."""
        return tuple(
            tuple(self.ring.rresidue(v) for v in row) for row in self.rows
        )

    def frobenius_map(self) -> "PadicMatrix":
        frob = self.ring.rfrob
        return PadicMatrix(self.ring, [[frob(v) for v in row] for row in self.rows])

    # -- smith form ----------------------------------------------------------
    def smith_form(self, j: int | None = None) -> "SmithProfile":
        """Diagonalize over Z/p^j: L @ A @ R = diag(p^d_i) with unit transforms.

        Minimal-valuation pivoting works because Z/p^j is local: every entry
        of the remaining block is divisible by the pivot, so elimination is
        exact integer arithmetic.
        """
        ring = self.ring if j is None else self.ring.at_precision(j)
        j = ring.K
        p = ring.p
        n = self.n
        reduced = self if ring == self.ring else self.reduce(j)
        A = [list(row) for row in reduced.rows]
        L = [list(row) for row in PadicMatrix.identity(ring, n).rows]
        R = [list(row) for row in PadicMatrix.identity(ring, n).rows]
        divisors = [j] * n
        for k in range(n):
            pos, dmin = None, j
            for i in range(k, n):
                for jj in range(k, n):
                    v = ring.rval(A[i][jj])
                    if v < dmin:
                        dmin, pos = v, (i, jj)
            if pos is None:
                break  # remaining block vanishes mod p^j
            divisors[k] = dmin
            i0, j0 = pos
            if i0 != k:
                A[i0], A[k] = A[k], A[i0]
                L[i0], L[k] = L[k], L[i0]
            if j0 != k:
                for row in A:
                    row[j0], row[k] = row[k], row[j0]
                for row in R:
                    row[j0], row[k] = row[k], row[j0]
            pd = p**dmin
            unit = _exact_div(ring, A[k][k], pd)
            inv_unit = ring.rinv(unit)
            A[k] = [ring.rmul(inv_unit, v) for v in A[k]]
            L[k] = [ring.rmul(inv_unit, v) for v in L[k]]
            for i in range(k + 1, n):
                if A[i][k] == ring.zero:
                    continue
                m = _exact_div(ring, A[i][k], pd)
                A[i] = [ring.rsub(a, ring.rmul(m, b)) for a, b in zip(A[i], A[k])]
                L[i] = [ring.rsub(a, ring.rmul(m, b)) for a, b in zip(L[i], L[k])]
            for jj in range(k + 1, n):
                if A[k][jj] == ring.zero:
                    continue
                m = _exact_div(ring, A[k][jj], pd)
                for row, rrow in zip(A, R):
                    row[jj] = ring.rsub(row[jj], ring.rmul(m, row[k]))
                    rrow[jj] = ring.rsub(rrow[jj], ring.rmul(m, rrow[k]))
        return SmithProfile(
            ring=ring,
            j=j,
            matrix=reduced,
            left=PadicMatrix(ring, L),
            right=PadicMatrix(ring, R),
            divisors=tuple(divisors),
        )

    # -- spectral seminorm ------------------------------------------------------
    def spectral_seminorm(self, k_max: int = 16) -> SeminormResult:
        """min over 1 <= k <= k_max of |A^k|^(1/k), with a nilpotency fast path."""
        ring = self.ring
        best_v, best_k = self.min_valuation(), 1
        power = self
        for k in range(1, k_max + 1):
            if k > 1:
                power = power @ self
            if power.is_zero():
                return SeminormResult(ring.p, ring.K, True, k, k, ring.K)
            v = power.min_valuation()
            if v * best_k > best_v * k:  # v/k > best_v/best_k
                best_v, best_k = v, k
        return SeminormResult(ring.p, ring.K, False, None, best_k, best_v)

    def __repr__(self):
        return f"PadicMatrix({self.n}x{self.n} over {self.ring})"


def _dot(ring, xs, ys):
    acc = ring.zero
    for a, b in zip(xs, ys):
        acc = ring.radd(acc, ring.rmul(a, b))
    return acc


def _matmul(ring, A, B, n=None):
    n = len(A) if n is None else n
    if isinstance(ring, Zp):
        pk = ring.pk
        Bt = list(zip(*B))
        return tuple(
            tuple(sum(a * b for a, b in zip(row, col)) % pk for col in Bt) for row in A
        )
    Bt = list(zip(*B))
    return tuple(tuple(_dot(ring, row, col) for col in Bt) for row in A)


def _exact_div(ring, value, pd: int):
    """Divide a raw value by p^d; every coordinate is divisible by construction."""
    if pd == 1:
        return value
    if isinstance(ring, Zp):
        if value % pd:
            raise ArithmeticError("inexact division in smith elimination")
        return value // pd
    if any(c % pd for c in value):
        raise ArithmeticError("inexact division in smith elimination")
    return tuple(c // pd for c in value)


@dataclass(frozen=True)
class SmithProfile:
    """left @ matrix @ right = diag(p^divisors) exactly over Z/p^j."""

    ring: AnyRing
    j: int
    matrix: PadicMatrix
    left: PadicMatrix
    right: PadicMatrix
    divisors: tuple[int, ...]

    def diagonal(self) -> PadicMatrix:
        p = self.ring.p
        return PadicMatrix.diagonal(
            self.ring, [p**d if d < self.j else 0 for d in self.divisors]
        )

    def verify(self) -> bool:
        return (
            self.left @ self.matrix @ self.right == self.diagonal()
            and self.left.is_unitary()
            and self.right.is_unitary()
            and list(self.divisors) == sorted(self.divisors)
        )

    def kernel_basis(self) -> list[tuple]:
        """Generators of ker(A) on (Z/p^j)^n: p^(j-d) * (column of right) per d > 0."""
        p, j = self.ring.p, self.j
        out = []
        for i, d in enumerate(self.divisors):
            if d > 0:
                col = [self.right.rows[r][i] for r in range(self.matrix.n)]
                scalef = p ** (j - d)
                out.append(
                    tuple(
                        wrap(self.ring, self.ring.rmul(self.ring.rfrom_int(scalef), v))
                        for v in col
                    )
                )
        return out

    def kernel_dimension(self) -> int:
        return sum(1 for d in self.divisors if d > 0)

    def cokernel_divisors(self) -> tuple[int, ...]:
        return self.divisors


def vector_norm(ring: AnyRing, vector: Sequence) -> Norm:
    raws = [_coerce_raw(ring, v) for v in vector]
    val = min((ring.rval(v) for v in raws), default=ring.K)
    return Norm(ring.p, ring.K, val)


def residue_matrix_order(U: PadicMatrix) -> int:
    """Multiplicative order of the reduction of U in GL_n over the residue field.

    Found by factoring the (small) group order through its q^k - 1 pieces and
    descending through divisors, so no power enumeration is needed.
    """
    from .arith import factorize, merge_factorizations

    n = U.n
    reduced = U.reduce(1)
    if not reduced.is_unitary():
        raise NotInvertible("matrix is singular modulo p")
    q = U.ring.residue_cardinality
    exponent_fac: dict[int, int] = {}
    for k in range(1, n + 1):
        exponent_fac = merge_factorizations(exponent_fac, factorize(q**k - 1))
    # p-part of the exponent: unipotent order is p^ceil(log_p n)
    p = U.ring.p
    a = 0
    while p**a < n:
        a += 1
    if a:
        exponent_fac = merge_factorizations(exponent_fac, {p: a})
    order = 1
    for prime, e in exponent_fac.items():
        order *= prime**e
    identity = PadicMatrix.identity(reduced.ring, n)
    for prime in exponent_fac:
        while order % prime == 0 and reduced.matrix_power(order // prime) == identity:
            order //= prime
    return order
