import numpy as np
import pytest

from damplab import qmat
from damplab.errors import (
    MatrixFormatError,
    NonTracePreservingError,
    NotHermitianError,
    NotPositiveError,
    NotUnitTraceError,
    ValidationError,
)
from damplab.channels import kraus_ops, two_qubit_kraus
from damplab.states import bell_phi_plus, random_density
from damplab.tolerances import TOL_STRUCT

I2 = np.eye(2, dtype=complex)
KET0 = np.diag([1.0, 0.0]).astype(complex)
KET1 = np.diag([0.0, 1.0]).astype(complex)


class TestTensor:
    def test_identity(self):
        assert np.array_equal(qmat.tensor(I2, I2), np.eye(4))

    def test_basis_bookkeeping(self):
        # |0><0| (x) |1><1| lives at the |01> slot, index 1 (0-based)
        m = qmat.tensor(KET0, KET1)
        expected = np.zeros((4, 4))
        expected[1, 1] = 1.0
        assert np.array_equal(m, expected)

    def test_full_damping_flip_targets_first_qubit(self):
        # E1(gamma=1) (x) I sends |10> to |00> and |11> to |01>
        _, e1 = kraus_ops("ad", 1.0)
        m = qmat.tensor(e1, I2)
        basis = np.eye(4)
        assert np.allclose(m @ basis[2], basis[0])
        assert np.allclose(m @ basis[3], basis[1])
        by_hand = np.zeros((4, 4))
        by_hand[0, 2] = by_hand[1, 3] = 1.0
        assert np.allclose(m, by_hand, atol=1e-15)

    def test_mixed_product_identity(self):
        rng = np.random.default_rng(42)
        for _ in range(50):
            a, b, c, d = (rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2))
                          for _ in range(4))
            lhs = qmat.tensor(a, b) @ qmat.tensor(c, d)
            rhs = qmat.tensor(a @ c, b @ d)
            assert np.abs(lhs - rhs).max() <= 1e-12

    def test_bilinearity(self):
        rng = np.random.default_rng(43)
        a, b, c = (rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2))
                   for _ in range(3))
        alpha = 0.7 - 1.3j
        assert np.abs(qmat.tensor(alpha * a + c, b)
                      - alpha * qmat.tensor(a, b) - qmat.tensor(c, b)).max() <= 1e-12
        assert np.abs(qmat.tensor(b, alpha * a + c)
                      - alpha * qmat.tensor(b, a) - qmat.tensor(b, c)).max() <= 1e-12


class TestApplyKraus:
    def test_identity_channel(self):
        rho = random_density(5)
        out = qmat.apply_kraus(rho, [np.eye(4)])
        assert np.abs(out - rho).max() <= 1e-15

    def test_zero_damping_is_identity(self):
        rho = random_density(6)
        out = qmat.apply_kraus(rho, two_qubit_kraus("ad", 0.0, "left"))
        assert np.abs(out - rho).max() <= 1e-15

    def test_bell_under_full_left_damping(self):
        out = qmat.apply_kraus(bell_phi_plus(), two_qubit_kraus("ad", 1.0, "left"))
        assert np.allclose(out, np.diag([0.5, 0.5, 0.0, 0.0]), atol=1e-15)

    def test_rejects_incomplete_kraus_set(self):
        e0, _ = kraus_ops("ad", 0.4)
        with pytest.raises(NonTracePreservingError) as err:
            qmat.apply_kraus(random_density(7), [qmat.tensor(e0, I2)])
        assert err.value.residual > TOL_STRUCT

    def test_preserves_trace_and_hermiticity(self):
        rng = np.random.default_rng(44)
        for k in range(25):
            rho = random_density(100 + k)
            side = ("left", "right", "both")[k % 3]
            out = qmat.apply_kraus(rho, two_qubit_kraus("ad", float(rng.random()), side))
            assert qmat.trace_residual(out) <= 1e-12
            assert qmat.hermiticity_residual(out) <= 1e-12

    def test_output_is_readonly(self):
        out = qmat.apply_kraus(random_density(8), two_qubit_kraus("pd", 0.3, "right"))
        with pytest.raises(ValueError):
            out[0, 0] = 0.0


class TestValidateDensity:
    def test_maximally_mixed(self):
        out = qmat.validate_density(np.eye(4) / 4.0)
        assert np.array_equal(out, np.eye(4) / 4.0)

    def test_trace_violation(self):
        with pytest.raises(NotUnitTraceError) as err:
            qmat.validate_density(np.diag([1.0, 0.0, 0.0, 0.01]))
        assert err.value.residual == pytest.approx(0.01)

    def test_negative_eigenvalue(self):
        # 2x2 block [[0.5, 0.6], [0.6, 0.5]] has eigenvalues 0.5 +/- 0.6
        m = np.zeros((4, 4), dtype=complex)
        m[0, 0] = m[1, 1] = 0.5
        m[0, 1] = m[1, 0] = 0.6
        with pytest.raises(NotPositiveError) as err:
            qmat.validate_density(m)
        assert err.value.residual == pytest.approx(-0.1, abs=1e-12)

    def test_hermiticity_violation(self):
        m = np.array(random_density(9))
        m[0, 1] += 1e-6
        with pytest.raises(NotHermitianError):
            qmat.validate_density(m)

    def test_ginibre_accepted_and_perturbed_rejected(self):
        for seed in range(40):
            rho = np.array(random_density(200 + seed))
            qmat.validate_density(rho)
            bumped = rho.copy()
            bumped[0, 1] += 10.0 * TOL_STRUCT  # leaves [1, 0] behind -> not Hermitian
            with pytest.raises(ValidationError):
                qmat.validate_density(bumped)

    def test_rejects_nonfinite(self):
        m = np.eye(4, dtype=complex) / 4.0
        m[2, 2] = np.nan
        with pytest.raises(ValidationError):
            qmat.validate_density(m)

    def test_rejects_wrong_shape(self):
        with pytest.raises(ValidationError):
            qmat.validate_density(np.eye(3) / 3.0)


class TestJsonFormat:
    def test_roundtrip(self):
        rho = random_density(10)
        again = qmat.matrix_from_json(qmat.matrix_to_json(rho))
        assert np.abs(again - rho).max() <= 1e-16

    def test_accepts_bytes(self):
        text = qmat.matrix_to_json(np.eye(4) / 4.0).encode()
        assert np.allclose(qmat.matrix_from_json(text), np.eye(4) / 4.0)

    @pytest.mark.parametrize(
        "doc",
        [
            '{"matrix": [[[1, 0]]]}',  # too few rows
            '{"matrix": [[[1, 0], [0, 0], [0, 0]], [], [], []]}',  # short rows
            '{"matrix": [[[1, 0, 0], [0, 0], [0, 0], [0, 0]], [], [], []]}',  # bad pair
            '{"rows": []}',  # missing field
        ],
    )
    def test_wrong_shape_names_expected_layout(self, doc):
        with pytest.raises(MatrixFormatError) as err:
            qmat.matrix_from_json(doc)
        assert "4x4" in str(err.value) or "matrix" in str(err.value)

    def test_invalid_json(self):
        with pytest.raises(MatrixFormatError):
            qmat.matrix_from_json("{not json")

    def test_non_numeric_entry(self):
        doc = qmat.matrix_to_json(np.eye(4) / 4.0).replace("0.25", '"x"', 1)
        with pytest.raises(MatrixFormatError):
            qmat.matrix_from_json(doc)
