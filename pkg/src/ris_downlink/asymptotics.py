"""Closed-form oracles for the randomized scheme under homogeneous LoS users.

With a pure-LoS TX-to-surface link and common per-user path losses, the best
per-slot squared composite gain is the maximum of K i.i.d. exponentials of
mean theta = sigma_h^2 + sigma_f^2 * sigma_g^2 * Q.  This module evaluates
the exact max-of-exponentials law, its Gumbel limit, the resulting average
capacity, and the average receive SNR.
"""

from dataclasses import dataclass

import warnings

import numpy as np
from scipy import integrate

EULER_GAMMA = float(np.euler_gamma)


@dataclass(frozen=True)
class HomogeneousModel:
    """Parameters of the homogeneous-user LoS analysis."""

    theta_mean: float   # sigma_h^2 + sigma_f^2 * sigma_g^2 * Q
    users: int
    p_tx: float
    xi_par: float = 1.0

    def __post_init__(self):
        if self.theta_mean <= 0:
            raise ValueError("theta_mean must be positive")
        if self.users < 1:
            raise ValueError("need at least one user")


@dataclass(frozen=True)
class GumbelConstants:
    """Normalizing constants of the limiting law: location theta*ln(K), scale theta."""

    location: float  # b_K
    scale: float     # a_K

    @classmethod
    def from_model(cls, model: HomogeneousModel) -> "GumbelConstants":
        return cls(location=model.theta_mean * np.log(model.users),
                   scale=model.theta_mean)


def max_exp_pdf(alpha, model: HomogeneousModel) -> np.ndarray:
    """Density of the max of K i.i.d. Exp(theta): (K/theta) e^(-a/t) (1-e^(-a/t))^(K-1)."""
    alpha = np.asarray(alpha, dtype=float)
    theta, k = model.theta_mean, model.users
    z = np.exp(-alpha / theta)
    pdf = (k / theta) * z * (1.0 - z) ** (k - 1)
    return np.where(alpha < 0, 0.0, pdf)


def max_exp_cdf(alpha, model: HomogeneousModel) -> np.ndarray:
    """CDF of the max of K i.i.d. Exp(theta): (1 - e^(-a/theta))^K."""
    alpha = np.asarray(alpha, dtype=float)
    theta, k = model.theta_mean, model.users
    cdf = (1.0 - np.exp(-alpha / theta)) ** k
    return np.where(alpha < 0, 0.0, cdf)


def gumbel_cdf(alpha, consts: GumbelConstants) -> np.ndarray:
    """Limiting CDF exp(-e^(-(alpha - b_K)/a_K))."""
    alpha = np.asarray(alpha, dtype=float)
    with np.errstate(over="ignore"):
        # the inner exp may overflow far in the lower tail; exp(-inf) = 0 is exact
        return np.exp(-np.exp(-(alpha - consts.location) / consts.scale))


def gumbel_pdf(alpha, consts: GumbelConstants) -> np.ndarray:
    alpha = np.asarray(alpha, dtype=float)
    z = (alpha - consts.location) / consts.scale
    return np.exp(-z - np.exp(-z)) / consts.scale


def _quad_or_raise(fn, lo: float, hi: float, abs_tol: float, split: float = None) -> float:
    """Adaptive quadrature with an optional interval split at the density mode.

    Raises with the achieved error estimate when the requested absolute
    tolerance is not certified.
    """
    edges = [lo, hi] if split is None or not lo < split < hi else [lo, split, hi]
    value = 0.0
    err = 0.0
    with warnings.catch_warnings():
        # the error bound is enforced explicitly below
        warnings.simplefilter("ignore", integrate.IntegrationWarning)
        for a, b in zip(edges[:-1], edges[1:]):
            piece, piece_err = integrate.quad(fn, a, b, epsabs=abs_tol / (len(edges) - 1),
                                              epsrel=1e-10, limit=400)
            value += piece
            err += piece_err
    if err > abs_tol:
        raise RuntimeError(
            f"quadrature did not converge: achieved {err:.3e}, requested {abs_tol:.3e}")
    return value


def avg_capacity_exact(model: HomogeneousModel, abs_tol: float = 1e-8) -> float:
    """Average net capacity xi * E[log2(1 + P_TX * alpha)] under the exact law.

    Adaptive quadrature up to theta*(ln K + 40); the exponential tail beyond
    that point carries less than 1e-12 of the mass.  The integral is taken
    in the normalized variable x = alpha/theta so the quadrature stays well
    conditioned for physical theta values of order 1e-6.
    """
    if model.p_tx == 0.0:
        return 0.0
    unit = HomogeneousModel(theta_mean=1.0, users=model.users, p_tx=model.p_tx)
    scale = model.p_tx * model.theta_mean

    def integrand(x):
        return np.log2(1.0 + scale * x) * max_exp_pdf(x, unit)

    upper = np.log(model.users) + 40.0
    mode = np.log(model.users)  # density peak of the max-of-exponentials law
    return model.xi_par * _quad_or_raise(integrand, 0.0, upper, abs_tol, split=mode)


def avg_capacity_gumbel(model: HomogeneousModel, abs_tol: float = 1e-8) -> float:
    """Same capacity integral against the limiting Gumbel density.

    Integrated in the standardized variable z = (alpha - b_K)/a_K over
    [max(-ln K, -20), 40] (the lower cut is alpha = 0), where the density is
    exp(-z - e^(-z)).
    """
    if model.p_tx == 0.0:
        return 0.0
    consts = GumbelConstants.from_model(model)

    def integrand(z):
        alpha = consts.location + consts.scale * z
        return np.log2(1.0 + model.p_tx * alpha) * np.exp(-z - np.exp(-z))

    lo = max(-np.log(model.users), -20.0)
    return model.xi_par * _quad_or_raise(integrand, lo, 40.0, abs_tol, split=0.0)


def avg_snr(model: HomogeneousModel) -> float:
    """Average receive SNR P_TX * theta * (ln K + C), C the Euler-Mascheroni constant."""
    return model.p_tx * model.theta_mean * (np.log(model.users) + EULER_GAMMA)
