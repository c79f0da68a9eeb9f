"""Walk through the channel model: geometry, path loss, and fading moments.

The transmitter sits at the origin, the reflecting surface 10 m away, and
the users in a disk cluster.  Path-loss variances come from the link
budget G * d^-eta * lambda^2/(4 pi)^2; the TX->surface link is Ricean with
a planar line-of-sight component, everything else is Rayleigh.
"""

import numpy as np

from ris_downlink.channel import (channel_params_from_geometry, db_to_linear,
                                  ris_aperture_gain, sample_geometry,
                                  sample_ris_orientation, sample_tx_ris_channel,
                                  sample_user_channels, spatial_signature,
                                  SpatialSignatureParams)
from ris_downlink.harness import SystemConfig


def main():
    cfg = SystemConfig(users=6)
    rng = np.random.default_rng(1)

    geometry = sample_geometry(cfg, rng)
    print("user positions (m):")
    for k, pos in enumerate(geometry.user_positions, 1):
        print(f"  user {k}: ({pos[0]:7.2f}, {pos[1]:7.2f})"
              f"   d_tx = {np.linalg.norm(pos):5.1f} m"
              f"   d_ris = {np.linalg.norm(pos - [10, 0]):5.1f} m")

    params = channel_params_from_geometry(
        geometry, cfg.wavelength, cfg.ricean_factor, cfg.pathloss_exponent,
        ris_gain=ris_aperture_gain(cfg.q_atoms, cfg.wavelength),
        ue_gain=db_to_linear(cfg.ue_gain_dbi))
    print(f"\nsigma_g^2 (TX->RIS, aperture gain pi*Q): {params.sigma_g_sq:.3e}")
    print(f"sigma_h^2 per user: {np.array2string(params.sigma_h_sq, precision=2)}")
    print(f"sigma_f^2 per user: {np.array2string(params.sigma_f_sq, precision=2)}")

    azimuth, elevation = sample_ris_orientation(rng)
    sig = spatial_signature(SpatialSignatureParams(
        qx=cfg.qx, qy=cfg.qy, element_spacing=cfg.element_spacing,
        azimuth=azimuth, elevation=elevation), cfg.wavelength)
    print(f"\nsteering vector: {sig.size} unit-modulus entries, "
          f"azimuth {np.degrees(azimuth):.1f} deg, elevation {np.degrees(elevation):.1f} deg")

    n = 20_000
    norm = 0.0
    for _ in range(n):
        g = sample_tx_ris_channel(params, sig, rng)
        norm += np.sum(np.abs(g) ** 2)
    print(f"E||g||^2 over {n} draws: {norm / n:.4e}"
          f"   (sigma_g^2 * Q = {params.sigma_g_sq * cfg.q_atoms:.4e})")

    h, F = sample_user_channels(params, cfg.users, cfg.q_atoms, rng)
    print(f"\none block draw: |h| = {np.array2string(np.abs(h), precision=2)}")
    print(f"F shape {F.shape}, mean |f|^2 = {np.mean(np.abs(F) ** 2):.3e}")


if __name__ == "__main__":
    main()
