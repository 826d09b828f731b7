import math
from fractions import Fraction

import numpy as np
import pytest

from geodiag.catalog import space
from geodiag.tableaux import ProductSpace, classify, diagonal_curvature
from geodiag.lieverify import (
    ProductModel,
    SubspaceBasis,
    bracket,
    bracket_relation_residuals,
    calibration_constant,
    check_element,
    construct_diagonal_cp,
    construct_grassmannian_product,
    grassmannian_decomp,
    is_lie_triple_system,
    kahler_angle_of,
    random_special_unitary,
    sectional_curvature,
    sphere_decomp,
    verify_classification_entry,
)

SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)


def full_p_basis(decomp):
    model = ProductModel.single(decomp)
    return SubspaceBasis(model, tuple(model.p_basis_elements()))


class TestBracket:
    def test_antisymmetry_on_equal_arguments(self):
        x = 1j * SIGMA_X / 2
        assert np.allclose(bracket(x, x), 0)

    def test_su2_generators_against_direct_multiplication(self):
        e, f = 1j * SIGMA_X / 2, 1j * SIGMA_Y / 2
        # oracle: multiply the 2x2 matrices by hand
        oracle = e @ f - f @ e
        assert np.allclose(oracle, -1j * SIGMA_Z / 2)
        assert np.allclose(bracket(e, f), oracle)

    def test_jacobi_identity(self):
        rng = np.random.default_rng(3)

        def rand_su(n):
            z = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
            a = (z - z.conj().T) / 2
            return a - np.trace(a) / n * np.eye(n)

        x, y, z = (rand_su(4) for _ in range(3))
        lhs = bracket(x, bracket(y, z)) + bracket(y, bracket(z, x)) + bracket(z, bracket(x, y))
        assert np.linalg.norm(lhs) <= 1e-12 * max(
            np.linalg.norm(m) for m in (x, y, z)
        ) ** 3 * 10

    def test_size_mismatch_rejected(self):
        with pytest.raises(ValueError):
            bracket(np.eye(2, dtype=complex), np.eye(3, dtype=complex))

    def test_element_validation(self):
        check_element(1j * SIGMA_Z)
        with pytest.raises(ValueError):
            check_element(SIGMA_X)  # Hermitian, not skew
        with pytest.raises(ValueError):
            check_element(1j * np.eye(2))  # skew-Hermitian but has trace


class TestCartanDecompositions:
    @pytest.mark.parametrize("k,n", [(1, 1), (1, 2), (1, 5), (2, 2), (2, 3), (3, 3), (2, 10)])
    def test_grassmannian_bracket_relations(self, k, n):
        res = bracket_relation_residuals(grassmannian_decomp(k, n))
        assert max(res.values()) <= 1e-10

    @pytest.mark.parametrize("m", [2, 3, 5, 11])
    def test_sphere_bracket_relations(self, m):
        res = bracket_relation_residuals(sphere_decomp(m))
        assert max(res.values()) <= 1e-10

    @pytest.mark.parametrize("k,n", [(1, 1), (1, 3), (2, 2), (3, 3)])
    def test_dimensions(self, k, n):
        d = grassmannian_decomp(k, n)
        assert d.p_dim == 2 * k * n
        assert len(d.k_basis) == k * k + n * n - 1

    def test_complex_structure_squares_to_minus_one(self):
        d = grassmannian_decomp(3, 3)
        for v in d.p_basis:
            jjv = bracket(d.J_generator, bracket(d.J_generator, v))
            assert np.linalg.norm(jjv + v) <= 1e-10


class TestLieTripleSystem:
    @pytest.mark.parametrize("k,n", [(1, 2), (2, 2)])
    def test_full_p_is_a_triple_system(self, k, n):
        ok, residual = is_lie_triple_system(full_p_basis(grassmannian_decomp(k, n)), 1e-12)
        assert ok and residual <= 1e-12

    def test_single_vector_is_a_triple_system(self):
        d = grassmannian_decomp(2, 2)
        model = ProductModel.single(d)
        V = SubspaceBasis.orthonormalized(model, [model.embed(0, d.p_basis[0])])
        ok, residual = is_lie_triple_system(V)
        assert ok and residual == 0.0

    def test_random_plane_is_generically_not_a_triple_system(self):
        # seed recorded; every small seed gives residual far above tolerance
        d = grassmannian_decomp(2, 2)
        model = ProductModel.single(d)
        rng = np.random.default_rng(0)
        basis = model.p_basis_elements()
        raw = []
        for _ in range(2):
            coeffs = rng.standard_normal(len(basis))
            v = model.zero()
            for c, b in zip(coeffs, basis):
                v = model.add(v, model.scale(float(c), b))
            raw.append(v)
        W = SubspaceBasis.orthonormalized(model, raw)
        ok, residual = is_lie_triple_system(W, 1e-9)
        assert not ok
        assert residual > 0.1

    def test_degenerate_family_rejected(self):
        d = grassmannian_decomp(1, 2)
        model = ProductModel.single(d)
        v = model.embed(0, d.p_basis[0])
        with pytest.raises(ValueError):
            SubspaceBasis.orthonormalized(model, [v, model.scale(2.0, v)])


class TestSectionalCurvature:
    def test_projective_line_reads_the_anchor_value(self):
        V = full_p_basis(grassmannian_decomp(1, 1))
        sec = sectional_curvature(V, V.vectors[0], V.vectors[1])
        assert abs(sec - 4.0) <= 1e-12
        assert abs(calibration_constant() - 2.0) <= 1e-12

    def test_holomorphic_to_real_pinching_ratio(self):
        d = grassmannian_decomp(1, 3)
        V = full_p_basis(d)
        model = V.ambient
        x = model.embed(0, d.p_basis[0])
        hol = sectional_curvature(V, x, model.J(x))
        real = sectional_curvature(V, x, model.embed(0, d.p_basis[2]))
        assert abs(hol / real - 4.0) <= 1e-10
        assert abs(hol - 4.0) <= 1e-12
        assert abs(real - 1.0) <= 1e-12

    def test_sphere_model_reads_one(self):
        V = full_p_basis(sphere_decomp(4))
        for i in range(V.dim):
            for j in range(i + 1, V.dim):
                assert abs(sectional_curvature(V, V.vectors[i], V.vectors[j]) - 1.0) <= 1e-12

    def test_diagonal_sphere_halves_the_curvature(self):
        V = construct_diagonal_cp(2, 2, 1)
        sec = sectional_curvature(V, V.vectors[0], V.vectors[1])
        assert abs(sec - 2.0) <= 1e-8  # half the projective-line anchor 4

    def test_dependent_plane_rejected(self):
        V = full_p_basis(grassmannian_decomp(1, 1))
        with pytest.raises(ValueError):
            sectional_curvature(V, V.vectors[0], V.vectors[0])

    def test_two_diagonal_curvatures_stay_in_the_pinched_interval(self):
        rng = np.random.default_rng(11)
        anchor = 4.0
        for s in (0, 1, 2):
            V = construct_diagonal_cp(2, s, 2)
            for _ in range(25):
                x = V.random_unit_vector(rng)
                y = V.random_unit_vector(rng)
                y = V.ambient.add(y, V.ambient.scale(-V.ambient.inner(x, y), x))
                ny = V.ambient.norm(y)
                if ny < 1e-6:
                    continue
                sec = sectional_curvature(V, x, V.ambient.scale(1 / ny, y))
                assert anchor / 8 - 1e-8 <= sec <= anchor / 2 + 1e-8


class TestKahlerAngle:
    def test_full_p_is_complex(self):
        d = grassmannian_decomp(2, 3)
        V = full_p_basis(d)
        v = V.random_unit_vector(np.random.default_rng(5))
        assert kahler_angle_of(V, v) <= 1e-12

    def test_totally_real_plane(self):
        d = grassmannian_decomp(1, 3)
        model = ProductModel.single(d)
        V = SubspaceBasis.orthonormalized(
            model, [model.embed(0, d.p_basis[0]), model.embed(0, d.p_basis[2])]
        )
        assert abs(kahler_angle_of(V, V.vectors[0]) - math.pi / 2) <= 1e-12

    def test_three_diagonal_with_one_conjugation(self):
        V = construct_diagonal_cp(3, 1, 1)
        rng = np.random.default_rng(9)
        expected = math.acos(1 / 3)
        for _ in range(20):
            assert abs(kahler_angle_of(V, V.random_unit_vector(rng)) - expected) <= 1e-9

    def test_zero_vector_rejected(self):
        V = full_p_basis(grassmannian_decomp(1, 1))
        with pytest.raises(ValueError):
            kahler_angle_of(V, V.ambient.zero())

    def test_sphere_model_has_no_complex_structure(self):
        V = full_p_basis(sphere_decomp(3))
        with pytest.raises(ValueError):
            kahler_angle_of(V, V.vectors[0])


class TestDiagonalCp:
    def test_one_copy_is_the_full_tangent_space(self):
        for s in (0, 1):
            V = construct_diagonal_cp(1, s, 2)
            assert V.dim == 4
            ok, _ = is_lie_triple_system(V, 1e-12)
            assert ok
            assert kahler_angle_of(V, V.vectors[0]) <= 1e-12

    def test_two_copies_complex_versus_totally_real(self):
        rng = np.random.default_rng(4)
        complex_diag = construct_diagonal_cp(2, 2, 1)
        real_diag = construct_diagonal_cp(2, 1, 1)
        for _ in range(10):
            assert kahler_angle_of(complex_diag, complex_diag.random_unit_vector(rng)) <= 1e-12
            assert (
                abs(kahler_angle_of(real_diag, real_diag.random_unit_vector(rng)) - math.pi / 2)
                <= 1e-12
            )

    @pytest.mark.parametrize("k", [1, 2, 3, 4, 5])
    def test_sweep_matches_the_cosine_formula(self, k):
        rng = np.random.default_rng(k)
        for s in range(k + 1):
            for n in (1, 2):
                V = construct_diagonal_cp(k, s, n)
                ok, residual = is_lie_triple_system(V, 1e-9)
                assert ok, (k, s, n, residual)
                expected = math.acos(abs(2 * s - k) / k)
                for _ in range(10):
                    v = V.random_unit_vector(rng)
                    assert abs(kahler_angle_of(V, v) - expected) <= 1e-9


class TestRealizationsAgreeNumerically:
    # every rational cosine whose minimal realization fits in k <= 5
    @pytest.mark.parametrize(
        "q", [Fraction(0), Fraction(1), Fraction(1, 2), Fraction(1, 3), Fraction(1, 5), Fraction(3, 5)]
    )
    @pytest.mark.parametrize("m", [1, 2])
    def test_realized_cosine_matches_measured_angle(self, q, m):
        from geodiag.kahler import realize_angle

        r = realize_angle(q, m)
        assert r.k <= 5
        V = construct_diagonal_cp(r.k, r.s, r.m)
        rng = np.random.default_rng(int(q * 30) + m)
        expected = math.acos(float(q))
        for _ in range(10):
            v = V.random_unit_vector(rng)
            assert abs(kahler_angle_of(V, v) - expected) <= 1e-9


class TestGrassmannianProducts:
    def test_disjoint_lines_commute(self):
        for k in (2, 3):
            ambient = grassmannian_decomp(k, k)
            V = construct_grassmannian_product((1,) * k, ambient)
            ok, residual = is_lie_triple_system(V, 1e-10)
            assert ok, residual
            model = V.ambient
            for i in range(k):
                for j in range(i + 1, k):
                    for a in range(2):
                        for b in range(2):
                            br = model.bracket(V.vectors[2 * i + a], V.vectors[2 * j + b])
                            assert model.norm(br) <= 1e-12

    def test_single_part_is_full_p(self):
        ambient = grassmannian_decomp(1, 4)
        V = construct_grassmannian_product((4,), ambient)
        assert V.dim == ambient.p_dim

    def test_two_one_partition_in_g2c5(self):
        ambient = grassmannian_decomp(2, 3)
        V = construct_grassmannian_product((2, 1), ambient)
        assert V.dim == 6
        ok, residual = is_lie_triple_system(V, 1e-10)
        assert ok, residual
        for v in V.vectors:
            assert V.span_residual(V.ambient.J(v)) <= 1e-10

    def test_shape_mismatch_rejected(self):
        ambient = grassmannian_decomp(2, 3)
        with pytest.raises(ValueError):
            construct_grassmannian_product((3,), ambient)
        with pytest.raises(ValueError):
            construct_grassmannian_product((2, 2), ambient)
        with pytest.raises(ValueError):
            construct_grassmannian_product((1, 2), ambient)


class TestIsometryInvariance:
    def test_conjugating_the_configuration_changes_nothing(self):
        rng = np.random.default_rng(21)
        V = construct_diagonal_cp(2, 1, 2)
        ok0, res0 = is_lie_triple_system(V)
        angle0 = kahler_angle_of(V, V.vectors[0])
        gs = [random_special_unitary(3, rng) for _ in range(2)]
        W = V.conjugated(gs)
        ok1, res1 = is_lie_triple_system(W)
        angle1 = kahler_angle_of(W, W.vectors[0])
        assert ok0 and ok1
        assert abs(res0 - res1) <= 1e-10
        assert abs(angle0 - angle1) <= 1e-10

    def test_conjugated_grassmannian_product(self):
        rng = np.random.default_rng(22)
        ambient = grassmannian_decomp(2, 3)
        V = construct_grassmannian_product((2, 1), ambient)
        g = random_special_unitary(5, rng)
        W = V.conjugated([g])
        ok, residual = is_lie_triple_system(W, 1e-9)
        assert ok
        x = W.vectors[0]
        assert abs(
            sectional_curvature(W, x, W.ambient.J(x))
            - sectional_curvature(V, V.vectors[0], V.ambient.J(V.vectors[0]))
        ) <= 1e-10


class TestVerifyClassification:
    def test_diagonal_sphere_product(self):
        M = ProductSpace((space("R", 2, 1), space("R", 2, 1)))
        diag = [
            e
            for e in classify(M)
            if len(e.tableau.rows) == 1 and len(e.tableau.rows[0]) == 2 and e.flat_dim == 0
        ]
        assert len(diag) == 1
        report = verify_classification_entry(diag[0], M)
        assert report.status == "pass"
        assert abs(report.rows[0].curvature_measured - 0.5) <= 1e-8

    def test_three_diagonal_projective_line(self):
        M = ProductSpace(tuple(space("R", 2, 1) for _ in range(3)))
        diag = [
            e
            for e in classify(M)
            if len(e.tableau.rows) == 1 and len(e.tableau.rows[0]) == 3 and e.flat_dim == 0
        ]
        assert len(diag) == 1
        report = verify_classification_entry(diag[0], M)
        assert report.status == "pass"
        assert abs(report.rows[0].curvature_measured - 1 / 3) <= 1e-8

    def test_octonionic_factor_is_flagged_not_skipped(self):
        M = ProductSpace((space("O", 2, 1),))
        improper = [
            e for e in classify(M) if len(e.tableau.rows) == 1 and e.tableau.rows[0][0].inclusion.improper
        ]
        report = verify_classification_entry(improper[0], M)
        assert report.status == "unsupported"
        assert report.rows[0].status == "unsupported"
        assert "OH2" in report.rows[0].reason

    def test_whole_stream_on_complex_pair_passes(self):
        M = ProductSpace((space("C", 2, 1), space("C", 3, Fraction(1, 2))))
        rng = np.random.default_rng(1)
        for e in classify(M):
            report = verify_classification_entry(e, M, rng=rng)
            assert report.status == "pass", (e.isometry_type(), report.to_dict())

    def test_mixed_product_verifies_supported_rows(self):
        M = ProductSpace((space("R", 3, 1), space("C", 3, 2), space("H", 3, 1)))
        statuses = set()
        for e in classify(M):
            report = verify_classification_entry(e, M)
            assert not report.failed, (e.isometry_type(), report.to_dict())
            statuses.add(report.status)
        assert statuses == {"pass", "unsupported"}

    def test_measured_curvatures_match_the_exact_formula(self):
        M = ProductSpace((space("R", 2, Fraction(5, 3)), space("C", 2, Fraction(7, 4))))
        for e in classify(M):
            report = verify_classification_entry(e, M)
            assert report.status == "pass"
            for row, verdict in zip(e.tableau.rows, report.rows):
                expected = float(diagonal_curvature([b.inclusion.sub.curvature for b in row]))
                assert abs(verdict.curvature_measured - expected) <= 1e-8

    def test_compact_dual_products_verify_identically(self):
        M = ProductSpace((space("R", 2, 1, compact_dual=True), space("R", 2, 1, compact_dual=True)))
        for e in classify(M):
            assert verify_classification_entry(e, M).status == "pass"

    def test_report_status_aggregation(self):
        from geodiag.lieverify import EntryVerification, RowVerification

        M = ProductSpace((space("R", 2, 1),))
        entry = next(iter(classify(M)))  # the point
        ok_row = RowVerification(0, "r", "ok", None, 0.0, 1.0, 1.0, 0.0)
        bad_row = RowVerification(0, "r", "fail", "curvature off", 0.0, 1.0, 2.0, 1.0)
        unsup_row = RowVerification(0, "r", "unsupported", "no model", None, None, None, None)

        assert EntryVerification(entry, (ok_row,), 0, True, 0.0, True, ()).status == "pass"
        assert EntryVerification(entry, (bad_row,), 0, True, 0.0, True, ()).status == "fail"
        report = EntryVerification(entry, (unsup_row,), 0, True, None, True, ("no model",))
        assert report.status == "unsupported" and not report.failed
        # a bad total residual fails even when every row is fine
        assert EntryVerification(entry, (ok_row,), 0, True, 1.0, False, ()).status == "fail"

    def test_entry_must_belong_to_the_product(self):
        M1 = ProductSpace((space("R", 2, 1), space("R", 2, 1)))
        M2 = ProductSpace((space("R", 3, 1), space("R", 3, 1)))
        entries1 = [e for e in classify(M1) if e.tableau.rows]
        with pytest.raises(ValueError):
            verify_classification_entry(entries1[0], M2)
