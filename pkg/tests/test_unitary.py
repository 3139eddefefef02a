"""Classification, Jordan split, spectral data, one-parameter groups, projections."""

import math
import random

import pytest

from padicu import gm, unitary
from padicu.errors import InputError, NotAUnit, NotContinuous, NotTeichmuller, NotUnitary
from padicu.matrices import PadicMatrix, vector_norm
from padicu.sampling import (
    random_continuous,
    random_teichmuller,
    random_unit_scalar,
    random_unitary,
)
from padicu.scalars import ONE_MINUS, UnramRing, Zp, teichmuller_lift


def M(ring, rows):
    return PadicMatrix.from_rows(ring, rows)


def test_residual_order_examples():
    ring = Zp(3, 3)
    assert unitary.residual_order(M(ring, [[1, 1], [0, 1]])) == 3
    assert unitary.residual_order(PadicMatrix.identity(ring, 2)) == 1
    assert unitary.residual_order(M(ring, [[1, 1], [1, 0]])) == 8
    with pytest.raises(NotUnitary):
        unitary.residual_order(M(ring, [[3, 0], [0, 1]]))


def test_residual_order_matches_enumeration():
    ring = Zp(3, 2)
    rng = random.Random(2)
    for _ in range(15):
        u = random_unitary(ring, 2, rng)
        reduced = u.reduce(1)
        identity = PadicMatrix.identity(reduced.ring, 2)
        power, order = reduced, 1
        while power != identity:
            power = power @ reduced
            order += 1
        assert unitary.residual_order(u) == order


def test_classify_examples():
    ring = Zp(3, 3)
    assert unitary.classify(M(ring, [[1, 1], [0, 1]])).kind == "CONTINUOUS"
    assert unitary.classify(M(ring, [[0, -1], [1, 0]])).kind == "TEICHMULLER"
    assert unitary.classify(M(ring, [[1, 1], [1, 0]])).kind == "PROFINITE_MIXED"
    identity_class = unitary.classify(PadicMatrix.identity(ring, 2))
    assert identity_class.kind == "TEICHMULLER" and identity_class.is_continuous


def test_classify_witness_is_factorial_limit():
    # independent oracle: literal U^(p^(n!)) powers for a case with order 16
    # (naive consecutive-equality stopping would stall on U^9 here)
    from padicu.moduli import canonical_modulus

    ring = Zp(3, 2)
    comp = PadicMatrix.companion(ring, list(canonical_modulus(3, 4, 2))[:-1])
    u = comp.matrix_power(5)  # Teichmuller element of order 16
    witness = unitary.classify(u).witness
    seq = [u.matrix_power(pow(3, math.factorial(k), 16 * 81)) for k in range(1, 8)]
    assert seq[-1] == seq[-2] == witness
    assert witness == u  # Teichmuller: the limit returns U itself
    # the first agreeing pair in the literal sequence is a false plateau
    assert seq[1] == seq[2] != witness


def test_jordan_examples():
    ring = Zp(3, 2)
    rot = M(ring, [[0, -1], [1, 0]])
    u_s, u_n = unitary.jordan_decompose(rot)
    assert (u_s, u_n) == (rot, PadicMatrix.identity(ring, 2))
    unip = M(ring, [[1, 1], [0, 1]])
    u_s, u_n = unitary.jordan_decompose(unip)
    assert (u_s, u_n) == (PadicMatrix.identity(ring, 2), unip)
    mixed = M(ring, [[1, 1], [1, 0]])
    u_s, u_n = unitary.jordan_decompose(mixed)
    assert u_s == mixed.matrix_power(9)
    assert u_n == mixed @ u_s.inverse()
    assert u_s.matrix_power(3**2) == u_s
    assert unitary.classify(u_n).is_continuous


@pytest.mark.parametrize("n,p,K", [(2, 3, 4), (3, 5, 3)])
def test_jordan_audit_random(n, p, K):
    ring = Zp(p, K)
    rng = random.Random(100 * n + p)
    for _ in range(20):
        u = random_unitary(ring, n, rng)
        u_s, u_n = unitary.jordan_decompose(u)
        assert u_s @ u_n == u and u_n @ u_s == u
        assert unitary.classify(u_s).is_teichmuller
        assert unitary.classify(u_n).is_continuous
        # reduction of U_n is unipotent: (U_n - I)^n = 0 mod p
        delta = u_n.reduce(1) - PadicMatrix.identity(ring.at_precision(1), n)
        assert delta.matrix_power(n).is_zero()


def test_spectral_diagonal_example():
    ring = Zp(5, 3)
    u = M(ring, [[1, 0], [0, -1]])
    datum = unitary.teichmuller_spectral(u)
    assert datum.verify(expected=u)
    projectors = {}
    for orbit in datum.orbits:
        for lam, proj in zip(orbit.eigenvalues, orbit.projectors):
            projectors[lam] = proj
    assert projectors[1] == M(ring, [[1, 0], [0, 0]])
    assert projectors[ring.pk - 1] == M(ring, [[0, 0], [0, 1]])


def test_spectral_rotation_example():
    ring = Zp(5, 2)
    u = M(ring, [[0, -1], [1, 0]])
    datum = unitary.teichmuller_spectral(u)
    eigen = sorted(s.lift() for s in datum.eigenvalue_scalars())
    assert eigen == [7, 18]  # the Teichmuller square roots of -1 mod 25
    for orbit in datum.orbits:
        lam = orbit.eigenvalues[0]
        two_lam_inv = ring.scalar(2 * lam).inverse()
        expected = (u + PadicMatrix.identity(ring, 2).scale(lam)).scale(two_lam_inv)
        assert orbit.projectors[0] == expected


def test_spectral_irreducible_orbit():
    ring = Zp(3, 2)
    mixed = M(ring, [[1, 1], [1, 0]])
    u_s, _ = unitary.jordan_decompose(mixed)
    datum = unitary.teichmuller_spectral(u_s)
    assert len(datum.orbits) == 1
    orbit = datum.orbits[0]
    assert orbit.degree == 2
    assert isinstance(orbit.ring, UnramRing)
    # Frobenius swaps the two projectors
    p0, p1 = orbit.projectors
    assert p0.frobenius_map() == p1 and p1.frobenius_map() == p0


def test_spectral_requires_teichmuller():
    ring = Zp(3, 2)
    with pytest.raises(NotTeichmuller):
        unitary.teichmuller_spectral(M(ring, [[1, 1], [0, 1]]))


def test_spectral_random_audit():
    rng = random.Random(41)
    ring = Zp(3, 3)
    for _ in range(10):
        u = random_teichmuller(ring, 3, rng)
        datum = unitary.teichmuller_spectral(u)
        assert datum.verify(expected=u)
        assert sum(o.degree * o.multiplicity for o in datum.orbits) == 3


def test_galois_act_examples():
    ring = Zp(5, 3)
    u = M(ring, [[1, 0], [0, -1]])
    datum = unitary.teichmuller_spectral(u)
    assert unitary.galois_act(datum, 0) == u
    assert unitary.galois_act(datum, 1) == u  # -1 is Frobenius-fixed
    mixed_ring = Zp(3, 2)
    u_s, _ = unitary.jordan_decompose(M(mixed_ring, [[1, 1], [1, 0]]))
    datum2 = unitary.teichmuller_spectral(u_s)
    assert unitary.galois_act(datum2, 2) == u_s  # full orbit degree
    twisted = unitary.galois_act(datum2, 1)
    assert twisted != u_s
    assert unitary.galois_act(datum2, 1) @ u_s == u_s @ twisted  # commuting family


def test_spectral_decompose_attaches_unipotent():
    ring = Zp(3, 2)
    mixed = M(ring, [[1, 1], [1, 0]])
    datum = unitary.spectral_decompose(mixed)
    u_s, u_n = unitary.jordan_decompose(mixed)
    assert datum.unipotent == u_n
    assert datum.reconstruct() == u_s


def test_power_zp_examples():
    ring = Zp(3, 4)
    u = M(ring, [[1, 1], [0, 1]])
    assert unitary.power_zp(u, 0) == PadicMatrix.identity(ring, 2)
    assert unitary.power_zp(u, 1) == u
    h = ring.scalar(2).inverse()  # 2h = 1 mod 3^4
    half = unitary.power_zp(u, h)
    assert half == M(ring, [[1, h], [0, 1]])
    assert half @ half == u


def test_power_zp_group_law():
    rng = random.Random(17)
    ring = Zp(3, 3)
    for _ in range(8):
        u = random_continuous(ring, 2, rng)
        t, s = rng.randrange(ring.pk), rng.randrange(ring.pk)
        lhs = unitary.power_zp(u, (t + s) % ring.pk)
        assert lhs == unitary.power_zp(u, t) @ unitary.power_zp(u, s)
        k = rng.randrange(6)
        assert unitary.power_zp(u, k) == u.matrix_power(k)


def test_power_zp_requires_continuous():
    ring = Zp(3, 3)
    with pytest.raises(NotContinuous):
        unitary.power_zp(M(ring, [[0, -1], [1, 0]]), 2)


def test_zp_unit_action():
    rng = random.Random(29)
    ring = Zp(3, 3)
    u = random_continuous(ring, 2, rng)
    assert unitary.zp_unit_action(u, 1) == u
    alpha = random_unit_scalar(ring, rng)
    forward = unitary.zp_unit_action(u, alpha)
    assert unitary.zp_unit_action(forward, alpha.inverse()) == u
    assert unitary.zp_unit_action(u, -1) == u.inverse()
    with pytest.raises(NotAUnit):
        unitary.zp_unit_action(u, 3)


def test_norm_preservation():
    rng = random.Random(37)
    ring = Zp(3, 3)
    for _ in range(10):
        u = random_unitary(ring, 3, rng)
        x = [rng.randrange(ring.pk) for _ in range(3)]
        assert vector_norm(ring, u.apply(x)) == vector_norm(ring, x)


def test_projection_functors_examples():
    ring = Zp(5, 3)
    t_minus_1 = gm.LaurentPoly.from_coeffs(ring, [-1, 1])
    full = unitary.projection_functors(PadicMatrix.identity(ring, 2), 2, t_minus_1)
    assert full.kernel_dimension == 2
    assert full.cokernel_divisors == (2, 2)

    u = M(ring, [[1, 0], [0, -1]])
    result = unitary.projection_functors(u, 1, t_minus_1)
    assert result.kernel_dimension == 1
    assert sorted(result.cokernel_divisors) == [0, 1]

    # resultant of f with char poly a unit -> f(U) invertible -> trivial functors
    f = gm.LaurentPoly.from_coeffs(ring, [-2, 1])
    chi = gm.LaurentPoly.from_coeffs(ring, [c.lift() for c in u.char_poly()])
    assert gm.orthogonality_test(f, chi, 2)
    result2 = unitary.projection_functors(u, 2, f)
    assert result2.kernel_dimension == 0
    assert result2.cokernel_divisors == (0, 0)


def test_projection_kernel_vectors_annihilate():
    ring = Zp(3, 3)
    rng = random.Random(43)
    for _ in range(6):
        u = random_unitary(ring, 2, rng)
        chi = u.char_poly()
        f = gm.LaurentPoly.from_coeffs(ring, [c.lift() for c in chi])
        result = unitary.projection_functors(u, 2, f)
        fu = f.reduce(2).evaluate_matrix(u.reduce(2))
        for vec in result.kernel_basis:
            assert all(s.lift() == 0 for s in fu.apply([v.lift() for v in vec]))


def test_spectrum_table_examples():
    ring = Zp(5, 3)
    table = unitary.spectrum_table(PadicMatrix.identity(ring, 2), [1, 2])
    assert all(row.dimension == 2 for row in table.rows)
    assert len(table.rows_at(1)) == 1

    u = M(ring, [[1, 0], [0, -1]])
    table2 = unitary.spectrum_table(u, [1, 2, ONE_MINUS])
    for j in (1, 2):
        dims = sorted(r.dimension for r in table2.rows if r.epsilon == f"p^{j}")
        assert dims == [1, 1]
    assert sorted(r.dimension for r in table2.rows if r.epsilon == "1-") == [1, 1]

    mixed_ring = Zp(3, 3)
    table3 = unitary.spectrum_table(M(mixed_ring, [[1, 1], [1, 0]]), [1, 2])
    for j in (1, 2):
        rows = table3.rows_at(j)
        assert len(rows) == 1 and rows[0].dimension == 2
    assert table3.torsion_is_whole_module


def test_spectral_rejects_extension_base():
    ring = UnramRing(3, 2, 2)
    u = PadicMatrix.identity(ring, 2)
    with pytest.raises(InputError):
        unitary.teichmuller_spectral(u)


def test_classify_works_over_extension():
    ring = UnramRing(3, 2, 2)
    gen = teichmuller_lift(ring, (0, 1))
    u = PadicMatrix.diagonal(ring, [gen, gen**3])
    assert unitary.classify(u).is_teichmuller
    u_s, u_n = unitary.jordan_decompose(u)
    assert u_s == u and u_n == PadicMatrix.identity(ring, 2)


def test_power_zp_equals_integer_power_oracle():
    """Independent oracle: the binomial series must equal plain matrix powers."""
    rng = random.Random(53)
    ring = Zp(3, 3)
    for _ in range(10):
        u = random_continuous(ring, 2, rng)
        t = rng.randrange(ring.pk)
        assert unitary.power_zp(u, t) == u.matrix_power(t)


def test_galois_twist_preserves_char_poly():
    ring = Zp(3, 2)
    u_s, _ = unitary.jordan_decompose(M(ring, [[1, 1], [1, 0]]))
    datum = unitary.teichmuller_spectral(u_s)
    twisted = unitary.galois_act(datum, 1)
    assert twisted.char_poly() == u_s.char_poly()
    assert unitary.classify(twisted).is_teichmuller
