"""Kriging prediction."""

from src.predictor.kriging import PredictionSet, predict, predict_set, sspe

__all__ = ["PredictionSet", "predict", "predict_set", "sspe"]
