"""Profile likelihood and GP fitting."""

from src.likelihood.fit import fit_gp, likelihood_surface, model_at_theta, refine_theta
from src.likelihood.profile import ProfileEval, mu_hat, neg2_log_profile, sigma2_hat

__all__ = [
    "ProfileEval",
    "fit_gp",
    "likelihood_surface",
    "model_at_theta",
    "mu_hat",
    "neg2_log_profile",
    "refine_theta",
    "sigma2_hat",
]
