"""Tower decomposition of GL_n: residue level and its lift over Z_p.

Every invertible residue matrix factors uniquely as a generator word
T_n^(m_n) ... T_1^(m_1) times an upper unitriangular matrix, where T_k is a
primitive multiplication operator on F_{p^k} embedded in the top-left block.
The word exponents are found by descending through the affine subgroups.

Over Z_p the word is lifted canonically.  When the residue word element is
p-regular the lift is its Teichmuller Jordan part, which is an exact
Teichmuller-type matrix; some word elements have order divisible by p
(already in GL_2(F_3)), and for those no Teichmuller-type lift can exist, so
the word is evaluated in the Teichmuller-lifted generators instead.  Either
way the cofactor N lands in the principal congruence group B, because B is
the full preimage of the unitriangular residue group.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import moduli
from .errors import InputError, LiftAuditError, NotInvertible, NotUnitary
from .matrices import PadicMatrix, residue_matrix_order
from .scalars import Zp, teichmuller_lift
from .unitary import jordan_decompose


@dataclass(frozen=True)
class PhiWord:
    """Exponent list (m_1, ..., m_n) with 1 <= m_k <= p^k - 1; identity is all p^k - 1."""

    p: int
    exponents: tuple[int, ...]

    def __post_init__(self):
        for k, m in enumerate(self.exponents, start=1):
            if not 1 <= m <= self.p**k - 1:
                raise InputError(f"exponent m_{k} = {m} outside [1, p^{k} - 1]")

    @property
    def n(self) -> int:
        return len(self.exponents)


def _fp_matmul(A, B, p):
    n = len(A)
    return tuple(
        tuple(sum(A[i][k] * B[k][j] for k in range(n)) % p for j in range(n))
        for i in range(n)
    )


def _fp_identity(n):
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def _fp_power(A, e, p):
    R = _fp_identity(len(A))
    while e:
        if e & 1:
            R = _fp_matmul(R, A, p)
        A = _fp_matmul(A, A, p)
        e >>= 1
    return R


def _fp_det(rows, p):
    n = len(rows)
    if n == 1:
        return rows[0][0] % p
    total = 0
    for j in range(n):
        if rows[0][j]:
            minor = [r[:j] + r[j + 1 :] for r in rows[1:]]
            total += (-1 if j % 2 else 1) * rows[0][j] * _fp_det(minor, p)
    return total % p


def _embed_block(block, n, p):
    k = len(block)
    rows = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    for i in range(k):
        for j in range(k):
            rows[i][j] = block[i][j] % p
    return tuple(tuple(r) for r in rows)


@dataclass(frozen=True)
class GeneratorSet:
    """Residue generators T_1, ..., T_n embedded in GL_n(F_p), orders p^k - 1."""

    p: int
    n: int
    matrices: tuple  # T_k as n x n int tuples, index k-1

    def word_matrix(self, word: PhiWord):
        acc = _fp_identity(self.n)
        for k in range(self.n, 0, -1):
            powered = _fp_power(self.matrices[k - 1], word.exponents[k - 1], self.p)
            acc = _fp_matmul(acc, powered, self.p)
        return acc


def build_generators(n: int, p: int) -> GeneratorSet:
    """Companion realizations of primitive elements per degree, orders verified."""
    if n < 1:
        raise InputError("n must be >= 1")
    mats = []
    for k in range(1, n + 1):
        poly = moduli.residue_modulus(p, k)
        if k == 1:
            block = [[(-poly[0]) % p]]
        else:
            block = [[0] * k for _ in range(k)]
            for i in range(1, k):
                block[i][i - 1] = 1
            for i in range(k):
                block[i][k - 1] = (-poly[i]) % p
        embedded = _embed_block(block, n, p)
        order = p**k - 1
        if _fp_power(embedded, order, p) != _fp_identity(n):
            raise ArithmeticError(f"generator T_{k} does not have order p^{k} - 1")
        for q in _prime_divisors(order):
            if _fp_power(embedded, order // q, p) == _fp_identity(n):
                raise ArithmeticError(f"generator T_{k} has order below p^{k} - 1")
        mats.append(embedded)
    return GeneratorSet(p, n, tuple(mats))


def _prime_divisors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


@dataclass(frozen=True)
class FpDecomposition:
    word: PhiWord
    t_matrix: tuple
    n_matrix: tuple


def decompose_fp(p: int, rows) -> FpDecomposition:
    """Unique factorization of an invertible residue matrix as word * unitriangular.

    Descends through the affine subgroups: at level k the unique exponent m_k
    is the one driving the last row of the k-block to (0, ..., 0, 1); the
    search is brute force over at most p^k - 1 candidates.
    """
    rows = tuple(tuple(int(v) % p for v in r) for r in rows)
    n = len(rows)
    if _fp_det([list(r) for r in rows], p) == 0:
        raise NotInvertible("residue matrix is singular")
    gens = build_generators(n, p)
    exponents = [0] * n
    current = rows
    for k in range(n, 1, -1):
        t_inv = _fp_power(gens.matrices[k - 1], p**k - 2, p)  # T_k^{-1}
        candidate = current
        found = None
        for m in range(1, p**k):
            candidate = _fp_matmul(t_inv, candidate, p)
            last = candidate[k - 1][:k]
            if last == tuple([0] * (k - 1) + [1]):
                if found is not None:
                    raise ArithmeticError("exponent at this level is not unique")
                found = (m, candidate)
        if found is None:
            raise ArithmeticError("no exponent found; decomposition failed")
        exponents[k - 1] = found[0]
        # strip the translation column: recurse on the principal block
        stripped = [list(r) for r in _fp_identity(n)]
        for i in range(k - 1):
            for j in range(k - 1):
                stripped[i][j] = found[1][i][j]
        current = tuple(tuple(r) for r in stripped)
    # level 1: discrete log in F_p^*
    target = current[0][0]
    gen = gens.matrices[0][0][0]
    value = 1
    for m in range(1, p):
        value = value * gen % p
        if value == target:
            exponents[0] = m
            break
    else:
        raise ArithmeticError("level-1 discrete log failed")
    word = PhiWord(p, tuple(exponents))
    t_matrix = gens.word_matrix(word)
    t_inv_full = _fp_power(t_matrix, _residue_group_exponent(n, p) - 1, p)
    n_matrix = _fp_matmul(t_inv_full, rows, p)
    if not _is_unitriangular(n_matrix, p):
        raise ArithmeticError("cofactor is not unitriangular")
    if _fp_matmul(t_matrix, n_matrix, p) != rows:
        raise ArithmeticError("multiply-back failed")
    return FpDecomposition(word, t_matrix, n_matrix)


def _residue_group_exponent(n: int, p: int) -> int:
    exponent = 1
    for k in range(1, n + 1):
        value = p**k - 1
        from math import gcd

        exponent = exponent * value // gcd(exponent, value)
    a = 1
    while p**a < n:
        a += 1
    return exponent * p**a


def _is_unitriangular(rows, p) -> bool:
    n = len(rows)
    for i in range(n):
        if rows[i][i] % p != 1:
            return False
        for j in range(i):
            if rows[i][j] % p != 0:
                return False
    return True


def b_membership(N: PadicMatrix) -> bool:
    """Principal congruence test: diagonal = 1 mod p, strictly lower = 0 mod p."""
    return _is_unitriangular(N.residue_rows(), N.ring.p)


@dataclass(frozen=True)
class ZpDecomposition:
    word: PhiWord
    t_matrix: PadicMatrix
    n_matrix: PadicMatrix
    teichmuller: bool  # whether T is Teichmuller type (possible iff residue is p-regular)


def _teichmuller_generators(ring: Zp, n: int) -> list[PadicMatrix]:
    p, K = ring.p, ring.K
    out = []
    for k in range(1, n + 1):
        if k == 1:
            root = (-moduli.residue_modulus(p, 1)[0]) % p
            block = [[teichmuller_lift(ring, root).lift()]]
        else:
            block = [
                list(row)
                for row in PadicMatrix.companion(
                    ring, list(moduli.canonical_modulus(p, k, K))[:-1]
                ).rows
            ]
        rows = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
        for i in range(len(block)):
            for j in range(len(block)):
                rows[i][j] = block[i][j]
        out.append(PadicMatrix.from_rows(ring, rows))
    return out


def _evaluate_word(generators: list[PadicMatrix], word: PhiWord) -> PadicMatrix:
    ring = generators[0].ring
    acc = PadicMatrix.identity(ring, generators[0].n)
    for k in range(len(generators), 0, -1):
        acc = acc @ generators[k - 1].matrix_power(word.exponents[k - 1])
    return acc


def decompose_zp(U: PadicMatrix) -> ZpDecomposition:
    """U = T * N with T in the lifted word set and N in the congruence group B.

    T is the Teichmuller Jordan part of the plainly lifted word when the
    residue word element is p-regular; otherwise (orders divisible by p occur
    in the word set) T is the word evaluated in the Teichmuller-lifted
    generators, which still reduces correctly.
    """
    if not isinstance(U.ring, Zp):
        raise InputError("the tower decomposition is defined over the base ring")
    if not U.is_unitary():
        raise NotUnitary("decomposition needs a unitary matrix")
    ring = U.ring
    p = ring.p
    residue = decompose_fp(p, U.residue_rows())
    gens = build_generators(U.n, p)
    naive_gens = [PadicMatrix.from_rows(ring, g) for g in gens.matrices]
    plain = _evaluate_word(naive_gens, residue.word)
    t_candidate, _ = jordan_decompose(plain)
    if t_candidate.residue_rows() == residue.t_matrix:
        t_matrix = t_candidate
        is_teich = True
    else:
        t_matrix = _evaluate_word(_teichmuller_generators(ring, U.n), residue.word)
        is_teich = False
        p_regular = residue_matrix_order(plain) % p != 0
        if p_regular:
            raise LiftAuditError("p-regular word lost its residue under the Jordan lift")
    n_matrix = t_matrix.inverse() @ U
    if t_matrix.residue_rows() != residue.t_matrix or not b_membership(n_matrix):
        raise LiftAuditError("lifted decomposition failed its membership audit")
    return ZpDecomposition(residue.word, t_matrix, n_matrix, is_teich)
