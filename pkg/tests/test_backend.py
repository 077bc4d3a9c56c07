import numpy as np
import pytest

from src.backend.base import JITTER_LADDER, LedgerCounts
from src.backend.factory import create_backend
from src.backend.parallel import ParallelBackend
from src.backend.reference import ReferenceBackend
from src.core.errors import BackendUnavailableError, NotPositiveDefiniteError
from src.core.types import Hyperparameters
from tests.conftest import cofactor_det, relative_error

HALF = np.array([[1.0, 0.5], [0.5, 1.0]])


def _random_spd(rng, n: int) -> np.ndarray:
    X = rng.random((n, 2))
    R = np.exp(-3.0 * ((X[:, None, :] - X[None, :, :]) ** 2).sum(-1))
    return R + 1e-3 * np.eye(n)


@pytest.fixture(params=["reference", "parallel"])
def backend(request):
    with create_backend(request.param, "double", workers=2) as engine:
        yield engine


def test_identity_factor(backend):
    factor = backend.factorize(np.eye(2))
    np.testing.assert_array_equal(factor.factor_data, np.eye(2))
    assert factor.log_det == 0.0
    assert factor.jitter_used == 0.0


def test_two_by_two_factor(backend):
    factor = backend.factorize(HALF)
    np.testing.assert_allclose(factor.factor_data, [[1.0, 0.0], [0.5, np.sqrt(0.75)]])
    assert factor.log_det == pytest.approx(np.log(0.75), rel=1e-12)


def test_singular_matrix_takes_jitter(backend):
    factor = backend.factorize(np.ones((2, 2)))
    assert factor.jitter_used in JITTER_LADDER[1:]


def test_ladder_exhausted(backend):
    with pytest.raises(NotPositiveDefiniteError):
        backend.factorize(np.array([[1.0, 2.0], [2.0, 1.0]]))


def test_solve_lower_examples(backend):
    identity = backend.factorize(np.eye(3))
    b = np.array([3.0, -1.0, 2.0])
    np.testing.assert_array_equal(backend.solve_lower(identity, b), b)

    factor = backend.factorize(HALF)
    np.testing.assert_allclose(
        backend.solve_lower(factor, [1.0, 1.0]), [1.0, 0.5 / np.sqrt(0.75)], rtol=1e-12
    )
    np.testing.assert_array_equal(backend.solve_lower(factor, np.zeros(2)), 0.0)


def test_solve_full_examples(backend):
    factor = backend.factorize(HALF)
    np.testing.assert_allclose(backend.solve_full(factor, [1.0, 1.0]), [2 / 3, 2 / 3], rtol=1e-12)
    np.testing.assert_array_equal(backend.solve_full(factor, np.zeros(2)), 0.0)


def test_fresh_ledger_is_empty(backend):
    assert backend.op_ledger() == LedgerCounts()


def test_ledger_counts(backend, rng):
    X = rng.random((5, 2))
    R = backend.build_correlation(X, Hyperparameters(theta=[1.0, 1.0]))
    factor = backend.factorize(R)
    backend.solve_lower(factor, np.ones(5))
    backend.solve_full(factor, np.ones(5))
    assert backend.op_ledger() == LedgerCounts(r_builds=1, factorizations=1, triangular_solves=3)


def test_jitter_retries_count_one_factorization(backend):
    backend.factorize(np.ones((3, 3)))
    assert backend.op_ledger().factorizations == 1


@pytest.mark.parametrize("n", [1, 2, 5, 8])
def test_cofactor_oracle(backend, rng, n):
    R = _random_spd(rng, n)
    b = rng.normal(size=n)
    factor = backend.factorize(R)
    assert factor.jitter_used == 0.0
    assert relative_error(factor.log_det, np.log(cofactor_det(R))) < 1e-9
    assert relative_error(backend.solve_full(factor, b), np.linalg.inv(R) @ b) < 1e-9


def test_reconstruction(backend, rng):
    R = _random_spd(rng, 30)
    factor = backend.factorize(R)
    L = factor.factor_data
    x = rng.normal(size=30)
    assert relative_error(backend.solve_full(factor, L @ L.T @ x), x) < 1e-8


@pytest.mark.parametrize("n", [3, 17, 64])
def test_reference_and_parallel_agree(rng, n):
    R = _random_spd(rng, n)
    b = rng.normal(size=n)
    with ReferenceBackend() as ref, ParallelBackend(workers=3, block_size=8) as par:
        f_ref, f_par = ref.factorize(R), par.factorize(R)
        assert relative_error(f_par.log_det, f_ref.log_det) < 1e-10
        assert relative_error(par.solve_full(f_par, b), ref.solve_full(f_ref, b)) < 1e-10


def test_single_precision_agrees(rng):
    R = _random_spd(rng, 20) + 0.05 * np.eye(20)
    b = rng.normal(size=20)
    with ReferenceBackend("double") as ref, ParallelBackend("single", workers=2) as par:
        f_ref, f_par = ref.factorize(R), par.factorize(R)
        assert f_par.factor_data.dtype == np.float32
        assert relative_error(par.solve_full(f_par, b), ref.solve_full(f_ref, b)) < 1e-2
        assert relative_error(f_par.log_det, f_ref.log_det) < 1e-3


def test_reference_and_parallel_agree_in_single(rng):
    R = _random_spd(rng, 20) + 0.05 * np.eye(20)
    b = rng.normal(size=20)
    with ReferenceBackend("single") as ref, ParallelBackend(
        "single", workers=2, block_size=8
    ) as par:
        f_ref, f_par = ref.factorize(R), par.factorize(R)
        assert f_ref.factor_data.dtype == f_par.factor_data.dtype == np.float32
        assert relative_error(par.solve_full(f_par, b), ref.solve_full(f_ref, b)) < 1e-4
        assert relative_error(f_par.log_det, f_ref.log_det) < 1e-4


def test_parallel_factor_independent_of_workers(rng):
    R = _random_spd(rng, 50)
    with ParallelBackend(workers=1, block_size=8) as one, ParallelBackend(
        workers=4, block_size=8
    ) as four:
        np.testing.assert_array_equal(
            one.factorize(R).factor_data, four.factorize(R).factor_data
        )


def test_reference_is_single_threaded():
    assert ReferenceBackend(workers=8).workers == 1


def test_workers_from_environment(monkeypatch):
    monkeypatch.setenv("GP_BENCH_WORKERS", "3")
    with ParallelBackend() as backend:
        assert backend.workers == 3


def test_unknown_backend():
    with pytest.raises(ValueError, match="not found"):
        create_backend("gpu")


def test_accelerated_without_numba(monkeypatch):
    monkeypatch.setattr("src.backend.accelerated.njit", None)
    with pytest.raises(BackendUnavailableError):
        create_backend("accelerated")


def test_accelerated_matches_parallel(rng):
    pytest.importorskip("numba")
    X = rng.random((20, 3))
    params = Hyperparameters(theta=[0.5, 3.0, 8.0])
    with create_backend("accelerated", workers=2) as acc, ParallelBackend(workers=2) as par:
        np.testing.assert_allclose(
            acc.build_correlation(X, params).values,
            par.build_correlation(X, params).values,
            rtol=1e-12,
        )
