"""Simulation and optimization library for a multiuser downlink assisted by a
phase-quantized reflecting surface that can switch its state once per slot.

Submodules
----------
channel       geometry, path loss, block-fading channel sampling
reflection    discrete phase alphabet, reflection schedules, composite gain
waterfilling  multi-slot water-filling, SINR, time-averaged rate
phase_opt     coordinate-ascent phase optimization and the exhaustive oracle
schedulers    the five scheduling schemes, EWMA/PFS machinery, fairness
asymptotics   max-of-exponentials law, Gumbel limit, capacity/SNR oracles
harness       config, Monte Carlo orchestration, sweeps, CSV persistence
"""

from .channel import (ChannelParams, ChannelRealization, Geometry,
                      SpatialSignatureParams, channel_params_from_geometry,
                      pathloss_variance, ris_aperture_gain, sample_geometry,
                      sample_tx_ris_channel, sample_user_channels,
                      spatial_signature)
from .reflection import (PhaseAlphabet, ReflectionSchedule, constant_schedule,
                         overall_gain, random_schedule, slot_gains)
from .waterfilling import WaterfillResult, sinr, time_averaged_rate, waterfill
from .phase_opt import (PhaseIterate, QuadraticFormTerms, coordinate_update,
                        exhaustive_oracle, objective, optimize_phases,
                        quadratic_form_terms)
from .schedulers import (EwmaState, OverheadParams, SchemeConfig, SchemeResult,
                         ewma_update, fairness_index, overhead_full,
                         overhead_partial, pfs_select, run_no_ris, run_pfs_full,
                         run_pfs_rand, run_rtv_rand, run_stv_opt)
from .asymptotics import (GumbelConstants, HomogeneousModel, avg_capacity_exact,
                          avg_capacity_gumbel, avg_snr, gumbel_cdf, max_exp_cdf,
                          max_exp_pdf)
from .harness import (ConfigError, RunRecord, SystemConfig, run_monte_carlo,
                      sweep, write_records_csv, write_sweep_csv)

__version__ = "0.1.0"
