import math
import random
from fractions import Fraction

import numpy as np
import pytest
import scipy.linalg

from bateman.classical import BatemanParams
from bateman.field import Coeff
from bateman.fock import (
    build_fock,
    commutator_residual,
    hamiltonian_equiv_residual,
    hermite_coefficients,
    hermite_decompose,
    hermite_state,
    interior_projector,
    joint_null_experiment,
    null_experiment_csv,
    squeeze_csv,
    squeeze_factored_action,
    squeeze_truncated_norms,
)
from bateman.operators import commutator, make_ladder, make_pseudo, op_apply
from bateman.radicals import SqrtRational, factorial_sqrt

THETA = 7 * math.pi / 8


def default_params():
    return BatemanParams.from_omega(1, Fraction(1, 5), 1)


# ---------------------------------------------------------------------------
# matrix builders
# ---------------------------------------------------------------------------

def test_annihilation_matrix_entries():
    a = build_fock("a", 3)
    assert a.matrix[0, 1] == 1.0
    assert abs(a.matrix[1, 2] - math.sqrt(2)) < 1e-15
    assert np.count_nonzero(a.matrix) == 2


def test_two_mode_kron_structure():
    op = build_fock("A1", 4)
    assert op.matrix.shape == (16, 16)
    a = np.diag(np.sqrt(np.arange(1.0, 4)), 1)
    eye = np.eye(4)
    manual = (np.kron(a, eye) - np.kron(eye, a).T) / math.sqrt(2)
    assert np.allclose(op.matrix, manual)


def test_squeeze_generator_symmetric_real():
    x = build_fock("X_squeeze", 6).matrix
    assert np.allclose(x, x.T)
    assert np.allclose(x.imag, 0)


def test_position_momentum_commutator():
    n = 14
    x = build_fock("x", n)
    p = build_fock("p", n)
    res = commutator_residual(x, p, 1j, n - 2)
    assert res < 1e-12


def test_build_fock_errors():
    with pytest.raises(ValueError):
        build_fock("a", 1)
    with pytest.raises(ValueError):
        build_fock("nothere", 8)
    with pytest.raises(ValueError):
        build_fock("H", 8)  # params missing


# ---------------------------------------------------------------------------
# interior commutator residuals
# ---------------------------------------------------------------------------

def test_ladder_commutator_interior_exact():
    res = commutator_residual(build_fock("a", 20), build_fock("adag", 20), 1, 18)
    assert res < 1e-12


def test_pseudo_commutators_at_cutoff():
    assert commutator_residual(build_fock("A1", 12), build_fock("B1", 12), 1, 10) < 1e-10
    assert commutator_residual(build_fock("A1", 12), build_fock("B2", 12), 0, 10) < 1e-10


def test_interior_bound_validated():
    with pytest.raises(ValueError):
        commutator_residual(build_fock("a", 8), build_fock("adag", 8), 1, 7)
    with pytest.raises(ValueError):
        commutator_residual(build_fock("a", 8), build_fock("adag", 10), 1, 6)


def test_all_scalar_commutator_pairs_small_on_interior():
    # interior exactness for every pair whose symbolic commutator is scalar
    names = ("a1", "a2", "adag1", "adag2", "A1", "A2", "B1", "B2")
    symbolic = {
        "a1": make_ladder(0, "lower", 2),
        "a2": make_ladder(1, "lower", 2),
        "adag1": make_ladder(0, "raise", 2),
        "adag2": make_ladder(1, "raise", 2),
        "A1": make_pseudo("A1"),
        "A2": make_pseudo("A2"),
        "B1": make_pseudo("B1"),
        "B2": make_pseudo("B2"),
    }
    cutoff, bound = 10, 8
    for ln in names:
        for rn in names:
            scalar = commutator(symbolic[ln], symbolic[rn]).as_scalar()
            if scalar is None:
                continue
            res = commutator_residual(
                build_fock(ln, cutoff), build_fock(rn, cutoff), complex(scalar), bound
            )
            assert res < 1e-10, (ln, rn, res)


def test_interior_projector_counts():
    proj = interior_projector(2, 6, 4)
    assert int(np.trace(proj)) == 10  # pairs with n1 + n2 < 4


# ---------------------------------------------------------------------------
# Hamiltonian equivalence at finite cutoff
# ---------------------------------------------------------------------------

def test_hamiltonian_equiv_gamma_zero_machine_exact():
    res = hamiltonian_equiv_residual(BatemanParams.from_omega(1, 0, 1), 10, 8)
    assert res < 1e-13


def test_hamiltonian_equiv_default_parameters():
    assert hamiltonian_equiv_residual(default_params(), 12, 10) < 1e-10


def test_hamiltonian_equiv_other_parameters():
    params = BatemanParams.from_omega(2, 1, Fraction(3, 2))
    assert hamiltonian_equiv_residual(params, 16, 14) < 1e-10


def test_hamiltonian_fock_forms_match_symbolic_action():
    # cross-check the matrix H against the symbolic H through the Hermite map
    params = default_params()
    h_sym = None
    from bateman.operators import hamiltonian_build

    h_sym = hamiltonian_build(params, "bosonic")
    state = {(1, 0): Coeff(1), (0, 2): Coeff(Fraction(1, 3))}
    applied = hermite_decompose(op_apply(h_sym, hermite_state(state)))

    n = 12
    h_mat = build_fock("H", n, params=params, form="bosonic").matrix
    vec = np.zeros(n * n, dtype=complex)
    for (n1, n2), c in state.items():
        vec[n1 * n + n2] = complex(c) * _norm_scale(n1, n2)
    out = h_mat @ vec
    sym_vec = np.zeros(n * n, dtype=complex)
    for (n1, n2), c in applied.items():
        sym_vec[n1 * n + n2] = complex(c) * _norm_scale(n1, n2)
    assert np.max(np.abs(out - sym_vec)) < 1e-10


def _norm_scale(n1: int, n2: int) -> float:
    return math.sqrt(2.0 ** (n1 + n2) * math.factorial(n1) * math.factorial(n2))


# ---------------------------------------------------------------------------
# joint null-vector experiment
# ---------------------------------------------------------------------------

def test_null_experiment_trends():
    sweep = joint_null_experiment([8, 12, 16], "pseudo")
    sig = sweep.sigma_mins()
    assert all(s > 0 for s in sig)
    assert all(x > y for x, y in zip(sig, sig[1:]))
    masses = sweep.tail_masses()
    assert all(x <= y for x, y in zip(masses, masses[1:]))


def test_null_experiment_bosonic_control():
    sweep = joint_null_experiment([8, 12], "bosonic")
    assert sweep.sigma_mins() == [0.0, 0.0]
    # minimizer is the Fock vacuum
    for record in sweep.records:
        assert abs(abs(record.minimizer[0]) - 1.0) < 1e-10


def test_null_experiment_minimizers_normalized():
    sweep = joint_null_experiment([8, 12], "pseudo")
    for record in sweep.records:
        assert abs(np.linalg.norm(record.minimizer) - 1.0) < 1e-12


def test_null_experiment_validation():
    with pytest.raises(ValueError):
        joint_null_experiment([12, 8], "pseudo")
    with pytest.raises(ValueError):
        joint_null_experiment([4, 8], "pseudo")
    with pytest.raises(ValueError):
        joint_null_experiment([8, 12], "fermionic")


def test_null_experiment_csv_shape():
    sweep = joint_null_experiment([8, 12], "pseudo")
    lines = null_experiment_csv(sweep).strip().splitlines()
    assert lines[0] == "cutoff,sigma_min,tail_mass"
    assert len(lines) == 3


# ---------------------------------------------------------------------------
# squeeze experiments
# ---------------------------------------------------------------------------

def test_factored_action_first_amplitudes():
    amps = squeeze_factored_action(2)
    assert amps[0] == SqrtRational(1)
    assert amps[1] == SqrtRational(Fraction(-1, 2), 2)
    assert amps[2] == SqrtRational(Fraction(1, 4), 6)


def test_factored_action_matches_closed_form():
    amps = squeeze_factored_action(50)
    for k, amp in enumerate(amps):
        closed = factorial_sqrt(2 * k) * Fraction((-1) ** k, 2**k * math.factorial(k))
        assert amp == closed


def test_factored_action_requires_positive_kmax():
    with pytest.raises(ValueError):
        squeeze_factored_action(0)


def test_truncated_norms_strictly_increase():
    report = squeeze_truncated_norms(THETA, [16, 32, 64])
    logs = report.log_norms()
    assert all(x < y for x, y in zip(logs, logs[1:]))
    assert all(n > 1 for n in report.norms())


def test_truncated_norm_matches_direct_expm_small_cutoff():
    report = squeeze_truncated_norms(THETA, [16])
    x = np.real(build_fock("X_squeeze", 16).matrix)
    direct = float(np.linalg.norm(scipy.linalg.expm(THETA * x)[:, 0]))
    assert abs(report.norms()[0] / direct - 1.0) < 1e-8


def test_theta_zero_is_identity():
    report = squeeze_truncated_norms(0.0, [8, 16])
    assert all(abs(n - 1.0) < 1e-12 for n in report.norms())


def test_unitary_control_keeps_norm_one():
    report = squeeze_truncated_norms(0.1, [16, 32], generator="antihermitian")
    assert all(abs(n - 1.0) < 1e-8 for n in report.norms())


def test_squeeze_validation():
    with pytest.raises(ValueError):
        squeeze_truncated_norms(THETA, [32, 16])
    with pytest.raises(ValueError):
        squeeze_truncated_norms(THETA, [16], generator="other")


def test_squeeze_csv_shape():
    report = squeeze_truncated_norms(THETA, [16, 32])
    lines = squeeze_csv(report).strip().splitlines()
    assert lines[0] == "cutoff,norm,log_norm"
    assert len(lines) == 3


# ---------------------------------------------------------------------------
# Hermite-basis isomorphism
# ---------------------------------------------------------------------------

def test_hermite_coefficients_table():
    assert hermite_coefficients(0) == {0: 1}
    assert hermite_coefficients(1) == {1: 2}
    assert hermite_coefficients(2) == {2: 4, 0: -2}
    assert hermite_coefficients(3) == {3: 8, 1: -12}
    assert hermite_coefficients(4) == {4: 16, 2: -48, 0: 12}


def test_hermite_decompose_roundtrip():
    state = {(2, 1): Coeff(1), (0, 0): Coeff(Fraction(1, 3)), (3, 3): Coeff(0, 1)}
    assert hermite_decompose(hermite_state(state)) == state


def test_hermite_decompose_requires_standard_weight():
    from bateman.operators import PolyGauss

    with pytest.raises(ValueError):
        hermite_decompose(PolyGauss.gaussian([[2, 0], [0, 1]]))


def test_matrix_action_matches_symbolic_action_on_random_states():
    # ten seeded random low-degree states, both pseudo lowering operators
    rng = random.Random(123)
    n = 12
    for name in ("A1", "A2"):
        op_sym = make_pseudo(name)
        op_mat = build_fock(name, n).matrix
        for _ in range(5):
            state = {}
            for _ in range(rng.randint(1, 4)):
                key = (rng.randint(0, 6), rng.randint(0, 6))
                state[key] = Coeff(
                    Fraction(rng.randint(-3, 3), rng.randint(1, 3)),
                    0,
                    Fraction(rng.randint(-2, 2), rng.randint(1, 2)),
                    0,
                )
            if all(c.is_zero() for c in state.values()):
                continue
            applied = hermite_decompose(op_apply(op_sym, hermite_state(state)))
            vec = np.zeros(n * n, dtype=complex)
            for (n1, n2), c in state.items():
                vec[n1 * n + n2] = complex(c) * _norm_scale(n1, n2)
            out = op_mat @ vec
            sym_vec = np.zeros(n * n, dtype=complex)
            for (n1, n2), c in applied.items():
                sym_vec[n1 * n + n2] = complex(c) * _norm_scale(n1, n2)
            scale = max(1.0, float(np.max(np.abs(out))))
            assert np.max(np.abs(out - sym_vec)) / scale < 1e-8
