"""Geometry, path-loss variances, and block-fading channel sampling.

All channels follow the block-fading convention: one draw of (h, g, F) is
held fixed for a whole coherence block.  The transmitter-to-surface vector g
is Ricean with a planar-wavefront line-of-sight term along the array steering
vector; the direct links h_k and the surface-to-user vectors f_k are
zero-mean circular complex Gaussians.  Noise is normalized to unit variance,
so every variance produced here is a pure path-loss number and the transmit
power takes the meaning of a transmit SNR.
"""

from dataclasses import dataclass

import numpy as np

SPEED_OF_LIGHT = 299_792_458.0


def db_to_linear(value_db: float) -> float:
    return 10.0 ** (value_db / 10.0)


def complex_gaussian(shape, rng: np.random.Generator) -> np.ndarray:
    """Unit-variance circular complex Gaussian samples (Re, Im ~ N(0, 1/2))."""
    return (rng.standard_normal(shape) + 1j * rng.standard_normal(shape)) / np.sqrt(2.0)


@dataclass(frozen=True)
class Geometry:
    """Planar layout of transmitter, reflecting surface, and user cluster."""

    tx_position: np.ndarray
    ris_position: np.ndarray
    user_positions: np.ndarray  # (K, 2)
    cluster_center: np.ndarray
    cluster_radius: float

    def __post_init__(self):
        tx = np.asarray(self.tx_position, dtype=float)
        ris = np.asarray(self.ris_position, dtype=float)
        users = np.atleast_2d(np.asarray(self.user_positions, dtype=float))
        object.__setattr__(self, "tx_position", tx)
        object.__setattr__(self, "ris_position", ris)
        object.__setattr__(self, "user_positions", users)
        object.__setattr__(self, "cluster_center", np.asarray(self.cluster_center, dtype=float))
        if np.linalg.norm(ris - tx) <= 0.0:
            raise ValueError("degenerate geometry: TX and RIS coincide")
        for name, pts in (("TX", tx), ("RIS", ris)):
            d = np.linalg.norm(users - pts, axis=1)
            if np.any(d <= 0.0):
                raise ValueError(f"degenerate geometry: a user coincides with the {name}")
        radial = np.linalg.norm(users - self.cluster_center, axis=1)
        if np.any(radial > self.cluster_radius * (1.0 + 1e-12) + 1e-12):
            raise ValueError("user positions fall outside the cluster disk")

    def tx_user_distances(self) -> np.ndarray:
        return np.linalg.norm(self.user_positions - self.tx_position, axis=1)

    def ris_user_distances(self) -> np.ndarray:
        return np.linalg.norm(self.user_positions - self.ris_position, axis=1)

    def tx_ris_distance(self) -> float:
        return float(np.linalg.norm(self.ris_position - self.tx_position))


@dataclass(frozen=True)
class ChannelParams:
    """Per-link large-scale parameters (all linear, noise-normalized)."""

    carrier_wavelength: float
    ricean_factor: float
    pathloss_exponent: float
    ris_element_gain: float
    ue_gain: float
    sigma_g_sq: float
    sigma_h_sq: np.ndarray  # (K,)
    sigma_f_sq: np.ndarray  # (K,)

    def __post_init__(self):
        object.__setattr__(self, "sigma_h_sq", np.atleast_1d(np.asarray(self.sigma_h_sq, dtype=float)))
        object.__setattr__(self, "sigma_f_sq", np.atleast_1d(np.asarray(self.sigma_f_sq, dtype=float)))
        if self.ricean_factor < 0:
            raise ValueError("Ricean factor must be >= 0")
        if self.sigma_g_sq <= 0 or np.any(self.sigma_h_sq < 0) or np.any(self.sigma_f_sq < 0):
            raise ValueError("channel variances must be positive")

    @property
    def num_users(self) -> int:
        return self.sigma_h_sq.size


@dataclass(frozen=True)
class SpatialSignatureParams:
    """Rectangular-grid array response parameters."""

    qx: int
    qy: int
    element_spacing: float  # meters
    azimuth: float          # radians, [0, 2*pi)
    elevation: float        # radians, [-pi/2, pi/2)

    def __post_init__(self):
        if self.qx < 1 or self.qy < 1:
            raise ValueError("grid dimensions must be positive")
        if self.element_spacing <= 0:
            raise ValueError("element spacing must be positive")

    @property
    def num_elements(self) -> int:
        return self.qx * self.qy


@dataclass(frozen=True)
class ChannelRealization:
    """One coherence block's channel draw."""

    h: np.ndarray  # (K,) direct TX -> user gains
    g: np.ndarray  # (Q,) TX -> RIS vector
    F: np.ndarray  # (Q, K), column k is f_k (RIS -> user k)

    def __post_init__(self):
        h = np.atleast_1d(np.asarray(self.h, dtype=complex))
        g = np.atleast_1d(np.asarray(self.g, dtype=complex))
        F = np.asarray(self.F, dtype=complex).reshape(g.size, h.size)
        object.__setattr__(self, "h", h)
        object.__setattr__(self, "g", g)
        object.__setattr__(self, "F", F)
        if not (np.all(np.isfinite(h.view(float))) and np.all(np.isfinite(g.view(float)))
                and np.all(np.isfinite(F.view(float)))):
            raise ValueError("channel realization contains non-finite entries")

    @property
    def num_users(self) -> int:
        return self.h.size

    @property
    def num_elements(self) -> int:
        return self.g.size


def spatial_signature(p: SpatialSignatureParams, wavelength: float) -> np.ndarray:
    """Array steering vector: Kronecker product of the x- and y-axis vectors.

    Entry phases accumulate as exp(j*2*pi/lambda * q * d * u) with directional
    cosines u_x = sin(az)cos(el), u_y = sin(az)sin(el); every entry has unit
    modulus.
    """
    u_x = np.sin(p.azimuth) * np.cos(p.elevation)
    u_y = np.sin(p.azimuth) * np.sin(p.elevation)
    k0 = 2.0 * np.pi / wavelength
    ax = np.exp(1j * k0 * p.element_spacing * u_x * np.arange(p.qx))
    ay = np.exp(1j * k0 * p.element_spacing * u_y * np.arange(p.qy))
    return np.kron(ax, ay)


def pathloss_variance(gain: float, distance: float, exponent: float, wavelength: float) -> float:
    """Large-scale path-loss variance G * d^(-eta) * lambda^2 / (4*pi)^2."""
    if distance <= 0:
        raise ValueError("degenerate geometry: nonpositive link distance")
    if gain <= 0:
        raise ValueError("antenna/aperture gain must be positive")
    return gain * distance ** (-exponent) * wavelength**2 / (16.0 * np.pi**2)


def ris_aperture_gain(num_elements: int, wavelength: float) -> float:
    """Aperture gain 4*pi*A/lambda^2 of a half-wavelength-pitch surface (= pi*Q)."""
    area = num_elements * (wavelength / 2.0) ** 2
    return 4.0 * np.pi * area / wavelength**2


def sample_geometry(config, rng: np.random.Generator) -> Geometry:
    """Draw K user positions uniformly over the cluster disk.

    Uniformity over the disk uses radius = R*sqrt(U), angle = 2*pi*U'.  The
    two uniforms of user k are drawn consecutively, so the first K' users of
    a K-user draw coincide with a K'-user draw from the same stream.
    """
    k_users = config.users
    center = np.asarray(config.cluster_center, dtype=float)
    radius = float(config.cluster_radius)
    u = rng.random((k_users, 2))
    r = radius * np.sqrt(u[:, 0])
    phi = 2.0 * np.pi * u[:, 1]
    users = center + np.stack([r * np.cos(phi), r * np.sin(phi)], axis=1)
    return Geometry(
        tx_position=np.array([0.0, 0.0]),
        ris_position=np.array([10.0, 0.0]),
        user_positions=users,
        cluster_center=center,
        cluster_radius=radius,
    )


def sample_ris_orientation(rng: np.random.Generator) -> tuple[float, float]:
    """Azimuth ~ U[0, 2*pi), elevation ~ U[-pi/2, pi/2), one draw per block."""
    azimuth = rng.uniform(0.0, 2.0 * np.pi)
    elevation = rng.uniform(-np.pi / 2.0, np.pi / 2.0)
    return azimuth, elevation


def sample_tx_ris_channel(params: ChannelParams, sig: np.ndarray,
                          rng: np.random.Generator, pure_los: bool = False) -> np.ndarray:
    """Ricean TX->RIS vector sigma_g*(sqrt(k/(k+1)) + sqrt(1/(k+1))*g_dif)*a.

    g_dif is a scalar CN(0,1); the whole vector shares it because the
    wavefront is planar across the array.  ``pure_los`` replaces the kappa ->
    infinity limit without the overflow.
    """
    sigma_g = np.sqrt(params.sigma_g_sq)
    if pure_los:
        return sigma_g * sig
    kappa = params.ricean_factor
    g_dif = complex_gaussian((), rng)
    mix = np.sqrt(kappa / (kappa + 1.0)) + np.sqrt(1.0 / (kappa + 1.0)) * g_dif
    return sigma_g * mix * sig


def sample_user_channels(params: ChannelParams, k_users: int, q_atoms: int,
                         rng: np.random.Generator) -> tuple[np.ndarray, np.ndarray]:
    """Draw direct gains h (K,) and RIS->user matrix F (Q, K).

    h_k ~ CN(0, sigma_h_k^2), f_k ~ CN(0, sigma_f_k^2 * I_Q), independent
    across users.  Draws are interleaved per user (h_k then f_k) so that the
    first K' users of a draw coincide with a smaller K'-user draw.
    """
    h = np.zeros(k_users, dtype=complex)
    F = np.zeros((q_atoms, k_users), dtype=complex)
    sigma_h = np.sqrt(params.sigma_h_sq)
    sigma_f = np.sqrt(params.sigma_f_sq)
    for k in range(k_users):
        h[k] = sigma_h[k] * complex_gaussian((), rng)
        F[:, k] = sigma_f[k] * complex_gaussian(q_atoms, rng)
    return h, F


def channel_params_from_geometry(geometry: Geometry, wavelength: float,
                                 ricean_factor: float, pathloss_exponent: float,
                                 ris_gain: float, ue_gain: float) -> ChannelParams:
    """Map link distances to the three path-loss variances.

    The TX->RIS link uses the surface aperture gain; both user-side links
    (TX->user and RIS->user) use the UE antenna gain.
    """
    sigma_g_sq = pathloss_variance(ris_gain, geometry.tx_ris_distance(),
                                   pathloss_exponent, wavelength)
    sigma_h_sq = np.array([
        pathloss_variance(ue_gain, d, pathloss_exponent, wavelength)
        for d in geometry.tx_user_distances()
    ])
    sigma_f_sq = np.array([
        pathloss_variance(ue_gain, d, pathloss_exponent, wavelength)
        for d in geometry.ris_user_distances()
    ])
    return ChannelParams(
        carrier_wavelength=wavelength,
        ricean_factor=ricean_factor,
        pathloss_exponent=pathloss_exponent,
        ris_element_gain=ris_gain,
        ue_gain=ue_gain,
        sigma_g_sq=sigma_g_sq,
        sigma_h_sq=sigma_h_sq,
        sigma_f_sq=sigma_f_sq,
    )
