"""Classification and spectral decomposition of p-adic unitary matrices.

The factorial-power limit of U is computed in closed form: U^alpha with
alpha = 1 modulo the prime-to-p residual order and alpha = 0 modulo p^A,
where A bounds the p-part of the order at this precision.  Naive
"stop when two iterates agree" stabilization is wrong (orders with
ord_m(p) dividing n!*n but not (n+1)!*(n+1) stall early), so the iteration
below runs until a provable bound instead and the closed form is used for
the decomposition itself.

Spectral data for a Teichmuller-type matrix lives per Frobenius orbit: each
irreducible residue factor of degree d contributes d eigenvalues in the
degree-d unramified ring, and the Lagrange denominators are units because
distinct Teichmuller elements are distance 1 apart.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from . import fppoly, gm
from .arith import crt_pair, order_mod, prime_to_p_part
from .errors import InputError, NotAUnit, NotContinuous, NotTeichmuller, NotUnitary
from .matrices import PadicMatrix, residue_matrix_order
from .scalars import (
    ONE_MINUS,
    AnyRing,
    PadicScalar,
    UnramRing,
    Zp,
    unram,
    wrap,
)

TEICHMULLER = "TEICHMULLER"
CONTINUOUS = "CONTINUOUS"
PROFINITE_MIXED = "PROFINITE_MIXED"


def _require_unitary(U: PadicMatrix):
    if not U.is_unitary():
        raise NotUnitary("operator must have unit determinant and integral entries")


def residual_order(U: PadicMatrix) -> int:
    """Exact multiplicative order of the reduction of U over the residue field."""
    _require_unitary(U)
    return residue_matrix_order(U)


def _unipotent_depth(n: int, p: int) -> int:
    a = 0
    while p**a < n:
        a += 1
    return a


@dataclass(frozen=True)
class UnitaryClass:
    kind: str
    witness: PadicMatrix  # stabilized factorial-power limit mod p^K
    is_teichmuller: bool
    is_continuous: bool


def _jordan_exponent(U: PadicMatrix) -> tuple[int, int]:
    """(alpha, m): U^alpha is the Teichmuller part; m the prime-to-p residual order."""
    ring = U.ring
    m = prime_to_p_part(residue_matrix_order(U), ring.p)
    A = ring.K - 1 + _unipotent_depth(U.n, ring.p)
    alpha = crt_pair(1 % m, m, 0, ring.p**A)
    return alpha, m


def classify(U: PadicMatrix) -> UnitaryClass:
    """Stabilize the factorial sigma-powers of U and compare against U and I.

    The iteration exponent p^(n!) is reduced modulo m*p^A (a multiple of the
    order of U), and it runs until n! is divisible by ord_m(p) and at least A,
    which provably freezes all later iterates.
    """
    _require_unitary(U)
    ring = U.ring
    p = ring.p
    m = prime_to_p_part(residue_matrix_order(U), p)
    A = ring.K - 1 + _unipotent_depth(U.n, p)
    modulus = m * p**A  # the order of U divides this
    r = order_mod(p, m)
    k = 1
    while math.factorial(k) % r != 0 or math.factorial(k) < A:
        k += 1
    # at this k every later iterate agrees: the exponent p^(n!) is frozen
    # both mod m (since r | n!) and mod p^A (since n! >= A)
    limit = U.matrix_power(pow(p, math.factorial(k), modulus))
    if U.matrix_power(pow(p, math.factorial(k + 1), modulus)) != limit:
        raise ArithmeticError("factorial powers failed to stabilize at the bound")
    # pro-finite sanity audit: U^(n!) -> I, equivalently U^(m p^A) = I
    if U.matrix_power(modulus) != PadicMatrix.identity(ring, U.n):
        raise ArithmeticError("unitary matrix failed the pro-finite audit")
    is_teich = limit == U
    is_cont = limit == PadicMatrix.identity(ring, U.n)
    kind = TEICHMULLER if is_teich else CONTINUOUS if is_cont else PROFINITE_MIXED
    return UnitaryClass(kind, limit, is_teich, is_cont)


def jordan_decompose(U: PadicMatrix) -> tuple[PadicMatrix, PadicMatrix]:
    """U = U_s * U_n with commuting Teichmuller and continuous parts.

    U_s is the closed-form factorial-power limit U^alpha; both parts are
    powers of U times its inverse, so commutation is automatic.
    """
    _require_unitary(U)
    alpha, _ = _jordan_exponent(U)
    u_s = U.matrix_power(alpha)
    u_n = U @ u_s.inverse()
    return u_s, u_n


# -- spectral decomposition ----------------------------------------------------


@dataclass(frozen=True)
class SpectralOrbit:
    """One Frobenius orbit: eigenvalues and projectors over the orbit's ring."""

    ring: AnyRing
    eigenvalues: tuple  # raw values, consecutive Frobenius images
    projectors: tuple[PadicMatrix, ...]
    multiplicity: int
    factor: tuple[int, ...]  # multiplicity-free monic orbit polynomial over Z_p

    @property
    def degree(self) -> int:
        return len(self.eigenvalues)


@dataclass(frozen=True)
class SpectralDatum:
    """Teichmuller eigenvalues, projectors, orbit tags, and the unipotent part."""

    base_ring: Zp
    n: int
    orbits: tuple[SpectralOrbit, ...]
    unipotent: PadicMatrix

    def orbit_projector(self, index: int) -> PadicMatrix:
        """Sum of the projectors in one orbit; Galois-fixed, hence a base matrix."""
        orbit = self.orbits[index]
        total = PadicMatrix.zeros(orbit.ring, self.n)
        for proj in orbit.projectors:
            total = total + proj
        return _to_base(self.base_ring, total)

    def identity_sum(self) -> PadicMatrix:
        total = PadicMatrix.zeros(self.base_ring, self.n)
        for i in range(len(self.orbits)):
            total = total + self.orbit_projector(i)
        return total

    def reconstruct(self) -> PadicMatrix:
        """Sum of eigenvalue * projector over every orbit, assembled over Z_p."""
        total = PadicMatrix.zeros(self.base_ring, self.n)
        for orbit in self.orbits:
            partial = PadicMatrix.zeros(orbit.ring, self.n)
            for lam, proj in zip(orbit.eigenvalues, orbit.projectors):
                partial = partial + proj.scale(wrap(orbit.ring, lam))
            total = total + _to_base(self.base_ring, partial)
        return total

    def galois_image(self, k: int) -> PadicMatrix:
        """Sum of sigma^k(eigenvalue) * projector: the Galois twist of the operator."""
        total = PadicMatrix.zeros(self.base_ring, self.n)
        for orbit in self.orbits:
            d = orbit.degree
            partial = PadicMatrix.zeros(orbit.ring, self.n)
            for t, proj in enumerate(orbit.projectors):
                lam_twisted = orbit.eigenvalues[(t + k) % d]
                partial = partial + proj.scale(wrap(orbit.ring, lam_twisted))
            total = total + _to_base(self.base_ring, partial)
        return total

    def eigenvalue_scalars(self) -> list:
        out = []
        for orbit in self.orbits:
            out.extend(wrap(orbit.ring, lam) for lam in orbit.eigenvalues)
        return out

    def verify(self, expected: PadicMatrix | None = None) -> bool:
        n = self.n
        if self.identity_sum() != PadicMatrix.identity(self.base_ring, n):
            return False
        if expected is not None and self.reconstruct() != expected:
            return False
        for orbit in self.orbits:
            d = orbit.degree
            for t, proj in enumerate(orbit.projectors):
                if proj @ proj != proj:
                    return False
                for s in range(t + 1, d):
                    other = orbit.projectors[s]
                    zero = PadicMatrix.zeros(orbit.ring, n)
                    if proj @ other != zero or other @ proj != zero:
                        return False
                if proj.frobenius_map() != orbit.projectors[(t + 1) % d]:
                    return False
        # cross-orbit orthogonality through the Galois-fixed orbit projectors
        base_projectors = [self.orbit_projector(i) for i in range(len(self.orbits))]
        for i, P in enumerate(base_projectors):
            for j2, Q in enumerate(base_projectors):
                product = P @ Q
                if i == j2:
                    if product != P:
                        return False
                elif not product.is_zero():
                    return False
        return True


def _to_base(base_ring: Zp, matrix: PadicMatrix) -> PadicMatrix:
    if isinstance(matrix.ring, Zp):
        return matrix
    ring = matrix.ring
    rows = []
    for row in matrix.rows:
        out = []
        for value in row:
            if not ring.is_base_value(value):
                raise ArithmeticError("Galois-fixed value expected; got a proper extension element")
            out.append(value[0])
        rows.append(out)
    return PadicMatrix(base_ring, rows)


def _embed_matrix(ring_d: UnramRing, U: PadicMatrix) -> PadicMatrix:
    return PadicMatrix(ring_d, [[ring_d.rfrom_int(v) for v in row] for row in U.rows])


def _eval_base_poly(coeffs, A: PadicMatrix) -> PadicMatrix:
    acc = PadicMatrix.zeros(A.ring, A.n)
    identity = PadicMatrix.identity(A.ring, A.n)
    for c in reversed(coeffs):
        acc = acc @ A + identity.scale(int(c))
    return acc


def _eval_base_poly_scalar(ring, coeffs, lam):
    acc = ring.zero
    for c in reversed(coeffs):
        acc = ring.radd(ring.rmul(acc, lam), ring.rfrom_int(int(c)))
    return acc


def teichmuller_spectral(U: PadicMatrix, seed: int = fppoly.DEFAULT_SEED) -> SpectralDatum:
    """Spectral decomposition of a Teichmuller-type matrix over Z_p.

    The residue characteristic polynomial factors into Frobenius orbits; each
    orbit's eigenvalues are Teichmuller lifts inside the degree-d unramified
    ring, and the projectors are Lagrange products with unit denominators.
    """
    _require_unitary(U)
    ring = U.ring
    if not isinstance(ring, Zp):
        raise InputError(
            "spectral decomposition is supported for base-ring operators; "
            "extension-ring eigenvalues would leave the shipped modulus table"
        )
    if not classify(U).is_teichmuller:
        raise NotTeichmuller("operator is not of Teichmuller type")
    p, K = ring.p, ring.K
    chi = U.char_poly_raw()
    residue_chi = [c % p for c in chi]
    _, factors = fppoly.factor(residue_chi, p, seed=seed)
    # orbit data: (ring, eigenvalues) per irreducible residue factor
    raw_orbits = []
    for irr, mult in factors:
        d = len(irr) - 1
        if d == 1:
            lam_ring: AnyRing = ring
            root = (-irr[0]) % p
            lam = ring.rteichmuller(root)
            eigenvalues = [lam]
        else:
            lam_ring = unram(p, K, d)
            res_ring = lam_ring.residue_ring()
            roots = _roots_in_extension(irr, res_ring)
            if len(roots) != d:
                raise ArithmeticError("irreducible factor did not split in its orbit field")
            canonical = min(roots)
            lam = lam_ring.rteichmuller(lam_ring.rlift_residue(canonical))
            eigenvalues = [lam]
            for _ in range(1, d):
                eigenvalues.append(lam_ring.rpow(eigenvalues[-1], p))
        factor_coeffs = _orbit_factor(lam_ring, eigenvalues)
        raw_orbits.append((lam_ring, eigenvalues, mult, factor_coeffs))
    orbits = []
    for i, (lam_ring, eigenvalues, mult, factor_coeffs) in enumerate(raw_orbits):
        if isinstance(lam_ring, Zp):
            U_local = U
        else:
            U_local = _embed_matrix(lam_ring, U)
        identity = PadicMatrix.identity(lam_ring, U.n)
        cross = identity
        for i2, (_, _, _, other_factor) in enumerate(raw_orbits):
            if i2 != i:
                cross = cross @ _eval_base_poly(other_factor, U_local)
        projectors = []
        for t, lam in enumerate(eigenvalues):
            numerator = cross
            denominator = lam_ring.one
            for i2, (_, _, _, other_factor) in enumerate(raw_orbits):
                if i2 != i:
                    denominator = lam_ring.rmul(
                        denominator, _eval_base_poly_scalar(lam_ring, other_factor, lam)
                    )
            for s, mu in enumerate(eigenvalues):
                if s == t:
                    continue
                shifted = U_local - identity.scale(wrap(lam_ring, mu))
                numerator = numerator @ shifted
                denominator = lam_ring.rmul(denominator, lam_ring.rsub(lam, mu))
            if not lam_ring.runit(denominator):
                raise NotAUnit("Lagrange denominator is not a unit")  # unreachable
            projectors.append(numerator.scale(wrap(lam_ring, lam_ring.rinv(denominator))))
        orbits.append(
            SpectralOrbit(
                ring=lam_ring,
                eigenvalues=tuple(eigenvalues),
                projectors=tuple(projectors),
                multiplicity=mult,
                factor=tuple(factor_coeffs),
            )
        )
    datum = SpectralDatum(
        base_ring=ring,
        n=U.n,
        orbits=tuple(orbits),
        unipotent=PadicMatrix.identity(ring, U.n),
    )
    if not datum.verify(expected=U):
        raise ArithmeticError("spectral reconstruction audit failed")
    return datum


def _roots_in_extension(irr: list[int], res_ring: UnramRing) -> list:
    """Brute-force roots of an F_p polynomial inside F_{p^d} (desk-scale fields)."""
    p, d = res_ring.p, res_ring.m
    roots = []
    for code in range(p**d):
        coeffs = []
        c = code
        for _ in range(d):
            coeffs.append(c % p)
            c //= p
        x = tuple(coeffs)
        acc = res_ring.zero
        for coeff in reversed(irr):
            acc = res_ring.radd(res_ring.rmul(acc, x), res_ring.rfrom_int(coeff))
        if acc == res_ring.zero:
            roots.append(x)
    return roots


def _orbit_factor(lam_ring: AnyRing, eigenvalues: list) -> list[int]:
    """Expand prod (t - mu) over the orbit; coefficients are Galois-fixed ints."""
    if isinstance(lam_ring, Zp):
        coeffs = [lam_ring.rneg(eigenvalues[0]), 1]
        return coeffs
    acc = [lam_ring.one]
    for mu in eigenvalues:
        neg = lam_ring.rneg(mu)
        new = [lam_ring.zero] * (len(acc) + 1)
        for i, c in enumerate(acc):
            new[i + 1] = lam_ring.radd(new[i + 1], c)
            new[i] = lam_ring.radd(new[i], lam_ring.rmul(c, neg))
        acc = new
    out = []
    for value in acc:
        if not lam_ring.is_base_value(value):
            raise ArithmeticError("orbit polynomial has a non-rational coefficient")
        out.append(value[0])
    return out


def spectral_decompose(U: PadicMatrix, seed: int = fppoly.DEFAULT_SEED) -> SpectralDatum:
    """Full pipeline on any unitary: Jordan split, then the Teichmuller spectrum."""
    u_s, u_n = jordan_decompose(U)
    datum = teichmuller_spectral(u_s, seed=seed)
    return SpectralDatum(
        base_ring=datum.base_ring, n=datum.n, orbits=datum.orbits, unipotent=u_n
    )


def galois_act(datum: SpectralDatum, k: int) -> PadicMatrix:
    """Apply sigma^k through the spectral datum: sum of sigma^k(lambda) pi_lambda."""
    return datum.galois_image(k)


# -- one-parameter group --------------------------------------------------------


def power_zp(U: PadicMatrix, t) -> PadicMatrix:
    """U^t for t in Z_p via the binomial series in (U - I).

    Continuous type makes U - I topologically nilpotent, so the series
    terminates at the first vanishing power; binomial coefficients of the
    integer representative are exact integers, reduced mod p^K.
    """
    cls = classify(U)
    if not cls.is_continuous:
        raise NotContinuous("one-parameter powers require continuous type")
    ring = U.ring
    if isinstance(t, PadicScalar):
        if (t.ring.p, t.ring.K) != (ring.p, ring.K):
            raise InputError("time parameter must live at the operator's (p, K)")
        t0 = t.lift()
    else:
        t0 = int(t) % ring.pk
    n = U.n
    identity = PadicMatrix.identity(ring, n)
    delta = U - identity
    total = PadicMatrix.zeros(ring, n)
    term = identity
    k = 0
    cap = n * ring.K + 2
    while not term.is_zero():
        total = total + term.scale(math.comb(t0, k))
        term = term @ delta
        k += 1
        if k > cap:
            raise ArithmeticError("binomial series failed to terminate")
    return total


def zp_unit_action(U: PadicMatrix, alpha) -> PadicMatrix:
    """The Z_p^x action U -> U^alpha on the one-parameter group."""
    base = Zp(U.ring.p, U.ring.K)
    a = alpha if isinstance(alpha, PadicScalar) else base.scalar(int(alpha))
    if a.valuation() != 0:
        raise NotAUnit("group action requires a unit exponent")
    return power_zp(U, a)


# -- projection functors ----------------------------------------------------------


@dataclass(frozen=True)
class ProjectionResult:
    """Kernel (annihilator submodule) and cokernel (quotient) of f(U) mod p^j."""

    j: int
    kernel_basis: tuple
    kernel_dimension: int
    cokernel_divisors: tuple[int, ...]


def projection_functors(U: PadicMatrix, j: int, f: gm.LaurentPoly) -> ProjectionResult:
    """Realize the annihilator and quotient functors of (p^j, f) on (Z/p^j)^n."""
    if not 1 <= j <= U.ring.K:
        raise InputError(f"reduction level {j} outside [1, {U.ring.K}]")
    B = f.reduce(j).evaluate_matrix(U.reduce(j))
    profile = B.smith_form()
    return ProjectionResult(
        j=j,
        kernel_basis=tuple(profile.kernel_basis()),
        kernel_dimension=profile.kernel_dimension(),
        cokernel_divisors=profile.divisors,
    )


# -- spectrum table -----------------------------------------------------------------


@dataclass(frozen=True)
class SpectrumRow:
    epsilon: str  # "p^j" or "1-"
    j: int
    orbit: tuple[int, ...]  # residue irreducible labeling the Teichmuller cluster
    dimension: int
    cokernel_divisors: tuple[int, ...]


@dataclass(frozen=True)
class SpectrumTable:
    n: int
    rows: tuple[SpectrumRow, ...]
    torsion_is_whole_module: bool
    completion_is_whole_module: bool

    def rows_at(self, j: int) -> list[SpectrumRow]:
        return [row for row in self.rows if row.j == j]


def spectrum_table(U: PadicMatrix, j_list, seed: int = fppoly.DEFAULT_SEED) -> SpectrumTable:
    """Component dimensions of the spectrum at each reduction level.

    The characteristic polynomial (a unit polynomial for unitary U) is grouped
    into Teichmuller clusters at each level; the component of a cluster is the
    kernel of its grouped factor evaluated at U, a free direct summand whose
    rank is reported.  Ranks sum to n: the module is entirely torsion and
    complete under a unitary, and the spectrum is never empty.
    """
    _require_unitary(U)
    ring = U.ring
    if not isinstance(ring, Zp):
        raise InputError("spectrum tables are computed for base-ring operators")
    chi = U.char_poly_raw()
    f = gm.LaurentPoly.from_coeffs(ring, chi)
    rows = []
    for j_entry in j_list:
        if j_entry is ONE_MINUS:
            j, label = 1, "1-"
        else:
            j, label = int(j_entry), f"p^{int(j_entry)}"
        factorization = gm.teich_factor(f, j, seed=seed)
        dims = 0
        for orbit_label, coeffs in sorted(factorization.factors.items()):
            poly = gm.LaurentPoly.from_coeffs(ring.at_precision(j), coeffs)
            result = projection_functors(U, j, poly)
            full = sum(1 for d in result.cokernel_divisors if d == j)
            partial = [d for d in result.cokernel_divisors if 0 < d < j]
            if partial:
                raise ArithmeticError("component is not a free summand")
            if full == 0:
                raise ArithmeticError("spectrum component vanished")  # Sp(M) != {0}
            dims += full
            rows.append(
                SpectrumRow(
                    epsilon=label,
                    j=j,
                    orbit=orbit_label,
                    dimension=full,
                    cokernel_divisors=result.cokernel_divisors,
                )
            )
        if dims != U.n:
            raise ArithmeticError("component dimensions do not sum to n")
    return SpectrumTable(
        n=U.n,
        rows=tuple(rows),
        torsion_is_whole_module=True,
        completion_is_whole_module=True,
    )
