"""Configuration, Monte Carlo orchestration, sweeps, and CSV persistence.

Every run owns deterministic named substreams (geometry / ris / users /
schedule) derived from base_seed XOR splitmix64(run_index), so results are
independent of execution order, reproducible byte-for-byte, and user draws
are common random numbers across sweep points that share a base seed.
"""

import json
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace

import numpy as np

from . import channel
from .channel import (ChannelRealization, SpatialSignatureParams, db_to_linear,
                      ris_aperture_gain, sample_geometry, sample_ris_orientation,
                      sample_tx_ris_channel, sample_user_channels, spatial_signature)
from .reflection import PhaseAlphabet, random_schedule, save_schedule_csv
from .schedulers import (OverheadParams, SchemeConfig, overhead_full,
                         overhead_partial, run_no_ris, run_pfs_full,
                         run_pfs_rand, run_rtv_rand, run_stv_opt)
from . import asymptotics

SCHEME_NAMES = ("stv_opt", "rtv_rand", "pfs_full", "pfs_rand", "no_ris")
RNG_NAMES = ("philox", "pcg64")

RESULTS_HEADER = ("run,scheme,K,Q,M,seed,net_sum_capacity_bps_hz,fairness,"
                  "user_index,user_rate_bps_hz")
SWEEP_HEADER = ("scheme,K,Q,M,runs,net_sum_capacity_mean_bps_hz,"
                "net_sum_capacity_std_bps_hz,fairness_mean,fairness_std")
ANALYZE_HEADER = ("K,Q,theta_mean,avg_snr_linear,avg_capacity_exact_bps_hz,"
                  "avg_capacity_gumbel_bps_hz")

_MASK64 = (1 << 64) - 1


class ConfigError(Exception):
    """Invalid or infeasible configuration."""


@dataclass(frozen=True)
class SystemConfig:
    """All simulation parameters; physical quantities in SI units."""

    users: int = 16
    qx: int = 10
    qy: int = 10
    phase_bits: int = 2
    element_spacing_fraction: float = 0.5   # of the carrier wavelength
    pure_los_tx_ris: bool = False
    slots_per_block: int = 100              # M
    symbols_per_slot: int = 2000            # P; L_c = M * P
    carrier_frequency_hz: float = 1.5e9
    eirp_dbm: float = 33.0
    noise_power_dbm: float = -100.0
    ricean_factor: float = 3.0
    pathloss_exponent: float = 1.6
    ue_gain_dbi: float = 5.0
    cluster_center: tuple = (40.0, -10.0)
    cluster_radius: float = 10.0
    cluster_homogeneous: bool = True
    n_down_full: int = 1
    n_par: int = 2
    runs: int = 200
    base_seed: int = 20240121
    rng_name: str = "philox"
    schemes: tuple = SCHEME_NAMES
    floor_epsilon: float = 1e-3
    phase_opt_max_sweeps: int = 20
    phase_opt_rel_tol: float = 1e-9
    waterfill_tol: float = 1e-10

    def __post_init__(self):
        if self.users < 1:
            raise ConfigError("users must be >= 1")
        if self.qx < 1 or self.qy < 1:
            raise ConfigError("RIS grid dimensions must be >= 1")
        if self.phase_bits < 1:
            raise ConfigError("phase_bits must be a positive integer")
        if self.slots_per_block < 1 or self.symbols_per_slot < 1:
            raise ConfigError("slot structure counts must be >= 1")
        if self.runs < 1:
            raise ConfigError("runs must be >= 1")
        if self.carrier_frequency_hz <= 0:
            raise ConfigError("carrier frequency must be positive")
        if self.cluster_radius < 0:
            raise ConfigError("cluster radius must be nonnegative")
        if self.ricean_factor < 0:
            raise ConfigError("Ricean factor must be >= 0")
        if self.floor_epsilon <= 0:
            raise ConfigError("floor_epsilon must be positive")
        if not (math.isfinite(self.eirp_dbm) and math.isfinite(self.noise_power_dbm)):
            raise ConfigError("EIRP and noise power must be finite")
        if self.rng_name not in RNG_NAMES:
            raise ConfigError(f"unknown rng '{self.rng_name}'; choose from {RNG_NAMES}")
        unknown = [s for s in self.schemes if s not in SCHEME_NAMES]
        if unknown:
            raise ConfigError(f"unknown schemes {unknown}; choose from {SCHEME_NAMES}")
        if not self.schemes:
            raise ConfigError("at least one scheme must be selected")
        object.__setattr__(self, "schemes", tuple(self.schemes))
        object.__setattr__(self, "cluster_center", tuple(float(v) for v in self.cluster_center))

    # -- derived quantities -------------------------------------------------

    @property
    def q_atoms(self) -> int:
        return self.qx * self.qy

    @property
    def l_c(self) -> int:
        return self.slots_per_block * self.symbols_per_slot

    @property
    def wavelength(self) -> float:
        return channel.SPEED_OF_LIGHT / self.carrier_frequency_hz

    @property
    def p_tx(self) -> float:
        # noise is normalized away, so this is the transmit SNR
        return 10.0 ** ((self.eirp_dbm - self.noise_power_dbm) / 10.0)

    @property
    def element_spacing(self) -> float:
        return self.element_spacing_fraction * self.wavelength

    @property
    def n_up_full(self) -> int:
        return self.users * (self.q_atoms + 1)

    @property
    def alphabet(self) -> PhaseAlphabet:
        return PhaseAlphabet(bits=self.phase_bits)

    def overhead_params(self) -> OverheadParams:
        return OverheadParams(n_up_full=self.n_up_full, n_down_full=self.n_down_full,
                              n_par=self.n_par, l_c=self.l_c,
                              m_slots=self.slots_per_block,
                              p_symbols=self.symbols_per_slot)

    def overhead_factors(self) -> tuple[float, float, float]:
        """(xi_full, xi_par, xi_no_ris); raises ConfigError when infeasible."""
        params = self.overhead_params()
        try:
            xi_full = overhead_full(params)
            xi_par = overhead_partial(params)
            xi_no_ris = overhead_full(replace(params, n_up_full=self.users))
        except ValueError as exc:
            raise ConfigError(f"infeasible overhead: {exc}") from exc
        return xi_full, xi_par, xi_no_ris

    def scheme_config(self) -> SchemeConfig:
        xi_full, xi_par, xi_no_ris = self.overhead_factors()
        return SchemeConfig(
            p_tx=self.p_tx,
            alphabet=self.alphabet,
            m_slots=self.slots_per_block,
            xi_full=xi_full,
            xi_par=xi_par,
            xi_no_ris=xi_no_ris,
            i_max=self.phase_opt_max_sweeps,
            bcd_rel_tol=self.phase_opt_rel_tol,
            floor_epsilon=self.floor_epsilon,
            wf_tol=self.waterfill_tol,
        )

    # -- loading ------------------------------------------------------------

    @classmethod
    def from_dict(cls, raw: dict) -> "SystemConfig":
        data = dict(raw)
        kwargs = {}

        ris = data.pop("ris", {})
        for src, dst in (("qx", "qx"), ("qy", "qy"), ("phase_bits", "phase_bits"),
                         ("element_spacing_fraction", "element_spacing_fraction"),
                         ("pure_los_tx_ris", "pure_los_tx_ris")):
            if src in ris:
                kwargs[dst] = ris[src]

        cluster = data.pop("cluster", {})
        if "center_m" in cluster:
            kwargs["cluster_center"] = tuple(cluster["center_m"])
        if "homogeneous" in cluster:
            kwargs["cluster_homogeneous"] = bool(cluster["homogeneous"])
        if "radius_m" in cluster:
            kwargs["cluster_radius"] = cluster["radius_m"]
        elif "homogeneous" in cluster:
            # default geometry: 10 m homogeneous cluster, 100 m heterogeneous
            kwargs["cluster_radius"] = 10.0 if cluster["homogeneous"] else 100.0

        overhead = data.pop("overhead", {})
        if "n_down_full" in overhead:
            kwargs["n_down_full"] = overhead["n_down_full"]
        if "n_par" in overhead:
            kwargs["n_par"] = overhead["n_par"]

        renames = {
            "slots_per_block": "slots_per_block",
            "symbols_per_slot": "symbols_per_slot",
            "users": "users",
            "carrier_frequency_hz": "carrier_frequency_hz",
            "eirp_dbm": "eirp_dbm",
            "noise_power_dbm": "noise_power_dbm",
            "ricean_factor": "ricean_factor",
            "pathloss_exponent": "pathloss_exponent",
            "ue_gain_dbi": "ue_gain_dbi",
            "runs": "runs",
            "base_seed": "base_seed",
            "rng": "rng_name",
            "schemes": "schemes",
            "floor_epsilon_rate": "floor_epsilon",
            "phase_opt_max_sweeps": "phase_opt_max_sweeps",
            "phase_opt_rel_tol": "phase_opt_rel_tol",
            "waterfill_tol": "waterfill_tol",
        }
        for src, dst in renames.items():
            if src in data:
                value = data.pop(src)
                kwargs[dst] = tuple(value) if dst == "schemes" else value
        if data:
            raise ConfigError(f"unknown config keys: {sorted(data)}")
        try:
            return cls(**kwargs)
        except TypeError as exc:
            raise ConfigError(str(exc)) from exc

    @classmethod
    def from_json(cls, path) -> "SystemConfig":
        try:
            with open(path) as fh:
                raw = json.load(fh)
        except OSError as exc:
            raise ConfigError(f"cannot read config: {exc}") from exc
        except json.JSONDecodeError as exc:
            raise ConfigError(f"config is not valid JSON: {exc}") from exc
        if not isinstance(raw, dict):
            raise ConfigError("config JSON must be an object")
        return cls.from_dict(raw)

    def to_dict(self) -> dict:
        return {
            "users": self.users,
            "ris": {"qx": self.qx, "qy": self.qy, "phase_bits": self.phase_bits,
                    "element_spacing_fraction": self.element_spacing_fraction,
                    "pure_los_tx_ris": self.pure_los_tx_ris},
            "slots_per_block": self.slots_per_block,
            "symbols_per_slot": self.symbols_per_slot,
            "carrier_frequency_hz": self.carrier_frequency_hz,
            "eirp_dbm": self.eirp_dbm,
            "noise_power_dbm": self.noise_power_dbm,
            "ricean_factor": self.ricean_factor,
            "pathloss_exponent": self.pathloss_exponent,
            "ue_gain_dbi": self.ue_gain_dbi,
            "cluster": {"center_m": list(self.cluster_center),
                        "radius_m": self.cluster_radius,
                        "homogeneous": self.cluster_homogeneous},
            "overhead": {"n_down_full": self.n_down_full, "n_par": self.n_par},
            "runs": self.runs,
            "base_seed": self.base_seed,
            "rng": self.rng_name,
            "schemes": list(self.schemes),
            "floor_epsilon_rate": self.floor_epsilon,
            "phase_opt_max_sweeps": self.phase_opt_max_sweeps,
            "phase_opt_rel_tol": self.phase_opt_rel_tol,
            "waterfill_tol": self.waterfill_tol,
        }


@dataclass(frozen=True)
class RunRecord:
    """One (run, scheme) outcome, reproducible from (config, seed)."""

    run_index: int
    scheme: str
    k_users: int
    q_atoms: int
    m_slots: int
    seed: int
    net_sum_capacity: float
    fairness: float
    per_user_rates: np.ndarray
    winner_histogram: np.ndarray


# -- RNG substreams ---------------------------------------------------------

def _splitmix64(x: int) -> int:
    x = (x + 0x9E3779B97F4A7C15) & _MASK64
    z = x
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return (z ^ (z >> 31)) & _MASK64


def _fnv1a64(text: str) -> int:
    h = 0xCBF29CE484222325
    for b in text.encode("utf-8"):
        h = ((h ^ b) * 0x100000001B3) & _MASK64
    return h


def run_seed(base_seed: int, run_index: int) -> int:
    """Per-run substream seed: base_seed XOR splitmix64(run_index)."""
    return (base_seed ^ _splitmix64(run_index)) & _MASK64


def make_generator(rng_name: str, seed: int) -> np.random.Generator:
    if rng_name == "philox":
        return np.random.Generator(np.random.Philox(seed))
    if rng_name == "pcg64":
        return np.random.Generator(np.random.PCG64(seed))
    raise ConfigError(f"unknown rng '{rng_name}'")


def substream(rng_name: str, seed: int, tag: str) -> np.random.Generator:
    return make_generator(rng_name, _splitmix64(seed ^ _fnv1a64(tag)))


# -- Monte Carlo ------------------------------------------------------------

def sample_block(config: SystemConfig, rng_seed: int):
    """Draw one coherence block: channels plus the shared random schedule.

    Per-purpose substreams keep user k's draws identical across runs that
    differ only in K (the paired-draw discipline behind the sweeps).
    """
    name = config.rng_name
    rng_geometry = substream(name, rng_seed, "geometry")
    rng_ris = substream(name, rng_seed, "ris")
    rng_users = substream(name, rng_seed, "users")
    rng_schedule = substream(name, rng_seed, "schedule")

    geometry = sample_geometry(config, rng_geometry)
    azimuth, elevation = sample_ris_orientation(rng_ris)
    sig_params = SpatialSignatureParams(qx=config.qx, qy=config.qy,
                                        element_spacing=config.element_spacing,
                                        azimuth=azimuth, elevation=elevation)
    sig = spatial_signature(sig_params, config.wavelength)
    params = channel.channel_params_from_geometry(
        geometry, config.wavelength, config.ricean_factor, config.pathloss_exponent,
        ris_gain=ris_aperture_gain(config.q_atoms, config.wavelength),
        ue_gain=db_to_linear(config.ue_gain_dbi))
    g = sample_tx_ris_channel(params, sig, rng_ris, pure_los=config.pure_los_tx_ris)
    h, F = sample_user_channels(params, config.users, config.q_atoms, rng_users)
    chan = ChannelRealization(h=h, g=g, F=F)
    schedule = random_schedule(config.q_atoms, config.slots_per_block,
                               config.alphabet, rng_schedule)
    return chan, schedule, geometry


_SCHEME_RUNNERS = {
    "stv_opt": lambda chan, schedule, cfg: run_stv_opt(chan, cfg),
    "rtv_rand": lambda chan, schedule, cfg: run_rtv_rand(chan, schedule, cfg),
    "pfs_full": lambda chan, schedule, cfg: run_pfs_full(chan, cfg),
    "pfs_rand": lambda chan, schedule, cfg: run_pfs_rand(chan, schedule, cfg),
    "no_ris": lambda chan, schedule, cfg: run_no_ris(chan, cfg),
}


def run_single(config: SystemConfig, run_index: int,
               dump_schedule_dir=None) -> list:
    """Execute every selected scheme on one shared coherence-block draw."""
    seed = run_seed(config.base_seed, run_index)
    chan, schedule, _ = sample_block(config, seed)
    if dump_schedule_dir is not None:
        save_schedule_csv(schedule, os.path.join(
            str(dump_schedule_dir), f"run_{run_index:05d}_schedule.csv"))
    scfg = config.scheme_config()
    records = []
    for scheme in config.schemes:
        result = _SCHEME_RUNNERS[scheme](chan, schedule, scfg)
        records.append(RunRecord(
            run_index=run_index,
            scheme=scheme,
            k_users=config.users,
            q_atoms=config.q_atoms,
            m_slots=config.slots_per_block,
            seed=seed,
            net_sum_capacity=result.net_sum_capacity,
            fairness=result.fairness,
            per_user_rates=result.per_user_rate,
            winner_histogram=result.winner_histogram(config.users),
        ))
    return records


def _worker(args):
    config, run_index = args
    return run_single(config, run_index)


def num_workers() -> int:
    raw = os.environ.get("RIS_SIM_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def run_monte_carlo(config: SystemConfig, dump_schedule_dir=None) -> list:
    """Independent runs, each with fresh geometry/channels/schedule.

    Output is a deterministic fold ordered by run_index regardless of how
    many workers executed the runs.
    """
    config.overhead_factors()  # fail fast on infeasible overhead
    workers = num_workers()
    if workers > 1 and config.runs > 1 and dump_schedule_dir is None:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            per_run = list(pool.map(_worker, ((config, r) for r in range(config.runs)),
                                    chunksize=max(1, config.runs // (4 * workers))))
    else:
        per_run = [run_single(config, r, dump_schedule_dir) for r in range(config.runs)]
    return [record for records in per_run for record in records]


# -- persistence ------------------------------------------------------------

def _fmt(value: float) -> str:
    return repr(float(value))


def write_records_csv(records: list, path, config: SystemConfig = None) -> None:
    """One row per (run, scheme, user) under the pinned header."""
    with open(path, "w", newline="") as fh:
        fh.write(RESULTS_HEADER + "\n")
        for rec in records:
            prefix = (f"{rec.run_index},{rec.scheme},{rec.k_users},{rec.q_atoms},"
                      f"{rec.m_slots},{rec.seed},{_fmt(rec.net_sum_capacity)},"
                      f"{_fmt(rec.fairness)}")
            for k in range(rec.k_users):
                fh.write(f"{prefix},{k + 1},{_fmt(rec.per_user_rates[k])}\n")
    if config is not None:
        write_meta(path, config)


def write_meta(csv_path, config: SystemConfig) -> None:
    """Provenance sidecar: RNG identifier and the full config echo."""
    meta = {"rng": config.rng_name, "base_seed": config.base_seed,
            "config": config.to_dict()}
    with open(str(csv_path) + ".meta.json", "w") as fh:
        json.dump(meta, fh, indent=2, sort_keys=True)
        fh.write("\n")


def config_for_axis(config: SystemConfig, axis: str, value: int) -> SystemConfig:
    if axis == "users":
        return replace(config, users=int(value))
    if axis == "atoms":
        q = int(value)
        root = math.isqrt(q)
        if root * root == q:
            return replace(config, qx=root, qy=root)
        return replace(config, qx=q, qy=1)
    raise ConfigError(f"unknown sweep axis '{axis}' (use 'users' or 'atoms')")


def sweep(config: SystemConfig, axis: str, values) -> list:
    """Monte Carlo at each axis value; mean and std per scheme.

    Returns a list of dict rows matching SWEEP_HEADER order.
    """
    values = list(values)
    if not values:
        raise ConfigError("sweep values must be a non-empty ascending list")
    if any(int(v) < 1 for v in values):
        raise ConfigError("sweep values must be positive integers")
    if sorted(values) != values:
        raise ConfigError("sweep values must be sorted ascending")
    rows = []
    for value in values:
        cfg = config_for_axis(config, axis, value)
        records = run_monte_carlo(cfg)
        for scheme in cfg.schemes:
            caps = np.array([r.net_sum_capacity for r in records if r.scheme == scheme])
            fair = np.array([r.fairness for r in records if r.scheme == scheme])
            rows.append({
                "scheme": scheme,
                "K": cfg.users,
                "Q": cfg.q_atoms,
                "M": cfg.slots_per_block,
                "runs": cfg.runs,
                "net_sum_capacity_mean_bps_hz": float(caps.mean()),
                "net_sum_capacity_std_bps_hz": float(caps.std(ddof=1)) if caps.size > 1 else 0.0,
                "fairness_mean": float(fair.mean()),
                "fairness_std": float(fair.std(ddof=1)) if fair.size > 1 else 0.0,
            })
    return rows


def write_sweep_csv(rows: list, path, config: SystemConfig = None) -> None:
    columns = SWEEP_HEADER.split(",")
    with open(path, "w", newline="") as fh:
        fh.write(SWEEP_HEADER + "\n")
        for row in rows:
            cells = []
            for col in columns:
                value = row[col]
                cells.append(_fmt(value) if isinstance(value, float) else str(value))
            fh.write(",".join(cells) + "\n")
    if config is not None:
        write_meta(path, config)


# -- analytical table -------------------------------------------------------

def cluster_center_model(config: SystemConfig, k_users: int, q_atoms: int
                         ) -> asymptotics.HomogeneousModel:
    """Homogeneous model with the representative user at the cluster center."""
    wavelength = config.wavelength
    ue_gain = db_to_linear(config.ue_gain_dbi)
    center = np.asarray(config.cluster_center)
    d_h = float(np.linalg.norm(center - np.array([0.0, 0.0])))
    d_f = float(np.linalg.norm(center - np.array([10.0, 0.0])))
    sigma_h_sq = channel.pathloss_variance(ue_gain, d_h, config.pathloss_exponent, wavelength)
    sigma_f_sq = channel.pathloss_variance(ue_gain, d_f, config.pathloss_exponent, wavelength)
    sigma_g_sq = channel.pathloss_variance(ris_aperture_gain(q_atoms, wavelength), 10.0,
                                           config.pathloss_exponent, wavelength)
    theta = sigma_h_sq + sigma_f_sq * sigma_g_sq * q_atoms
    _, xi_par, _ = config.overhead_factors()
    return asymptotics.HomogeneousModel(theta_mean=theta, users=k_users,
                                        p_tx=config.p_tx, xi_par=xi_par)


def analyze_table(config: SystemConfig, users_values=None, atoms_values=None) -> list:
    """Rows of (K, Q, theta, avg SNR, exact capacity, Gumbel capacity)."""
    users_values = list(users_values) if users_values else [config.users]
    atoms_values = list(atoms_values) if atoms_values else [config.q_atoms]
    rows = []
    for q in atoms_values:
        for k in users_values:
            model = cluster_center_model(config, int(k), int(q))
            rows.append({
                "K": int(k),
                "Q": int(q),
                "theta_mean": model.theta_mean,
                "avg_snr_linear": asymptotics.avg_snr(model),
                "avg_capacity_exact_bps_hz": asymptotics.avg_capacity_exact(model),
                "avg_capacity_gumbel_bps_hz": asymptotics.avg_capacity_gumbel(model),
            })
    return rows


def write_analyze_csv(rows: list, path) -> None:
    columns = ANALYZE_HEADER.split(",")
    with open(path, "w", newline="") as fh:
        fh.write(ANALYZE_HEADER + "\n")
        for row in rows:
            cells = [_fmt(row[c]) if isinstance(row[c], float) else str(row[c])
                     for c in columns]
            fh.write(",".join(cells) + "\n")
