"""Kriging point prediction and sum of squared prediction errors."""

from dataclasses import dataclass

import numpy as np

from src.core.errors import DimensionMismatchError
from src.core.types import GpModel
from src.correlation.power_exp import corr_cross


@dataclass(frozen=True)
class PredictionSet:
    """Predictions at test inputs, with SSPE when the truth is known."""

    test_inputs: np.ndarray
    predictions: np.ndarray
    sspe: float | None = None


def predict(model: GpModel, Xtest: np.ndarray, workers: int = 1) -> np.ndarray:
    """
    Kriging predictor mu-hat + r(x*)' alpha at each test point.

    Reuses the cached alpha, so no factorization or solve is needed.

    Args:
        model: fitted model
        Xtest: N x d test inputs on the unit cube
        workers: threads for the cross-correlation blocks

    Returns:
        N predictions

    Raises:
        DimensionMismatchError: Xtest has the wrong number of columns
    """
    Xtest = np.asarray(Xtest, dtype=np.float64)
    if Xtest.ndim == 1:
        Xtest = Xtest[None, :]
    if Xtest.shape[1] != model.dataset.d:
        raise DimensionMismatchError(
            f"model has d={model.dataset.d} but test inputs have {Xtest.shape[1]} columns"
        )
    cross = corr_cross(Xtest, model.dataset.inputs, model.params, workers=workers)
    return model.mu_hat + cross @ model.alpha


def sspe(predictions: np.ndarray, truth: np.ndarray) -> float:
    """Sum of squared prediction errors."""
    predictions = np.asarray(predictions, dtype=np.float64)
    truth = np.asarray(truth, dtype=np.float64)
    if predictions.shape != truth.shape:
        raise DimensionMismatchError(
            f"{predictions.shape[0]} predictions but {truth.shape[0]} true values"
        )
    return float(np.sum((truth - predictions) ** 2))


def predict_set(
    model: GpModel,
    Xtest: np.ndarray,
    truth: np.ndarray | None = None,
    workers: int = 1,
) -> PredictionSet:
    """Predictions bundled with their SSPE against `truth`, if given."""
    predictions = predict(model, Xtest, workers=workers)
    return PredictionSet(
        test_inputs=np.asarray(Xtest, dtype=np.float64),
        predictions=predictions,
        sspe=None if truth is None else sspe(predictions, truth),
    )
