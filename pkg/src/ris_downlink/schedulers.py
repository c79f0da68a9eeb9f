"""The five downlink schemes, EWMA recursion, PFS selection, and fairness.

Every scheme serves at most one user per slot (the composite channel is a
degraded broadcast channel, so splitting a slot's power across users never
helps), which keeps the interference term of the SINR identically zero in
all produced allocations.
"""

from dataclasses import dataclass

import numpy as np

from .channel import ChannelRealization
from .phase_opt import optimize_phases, quadratic_form_terms
from .reflection import PhaseAlphabet, ReflectionSchedule, slot_gains
from .waterfilling import waterfill

PFS_ALPHA_MIN = 1e-12
PFS_ALPHA_MAX = 1e12


@dataclass(frozen=True)
class OverheadParams:
    """Pilot bookkeeping for one coherence block of L_c = M * P symbols."""

    n_up_full: int
    n_down_full: int
    n_par: int
    l_c: int
    m_slots: int
    p_symbols: int

    def __post_init__(self):
        if self.l_c != self.m_slots * self.p_symbols:
            raise ValueError("L_c must equal M * P")
        if min(self.m_slots, self.p_symbols) < 1:
            raise ValueError("slot structure counts must be positive")
        if min(self.n_up_full, self.n_down_full, self.n_par) < 0:
            raise ValueError("pilot counts must be nonnegative")


def overhead_full(p: OverheadParams) -> float:
    """Fraction of the block left after full-CSIT pilots: 1 - (N_up + M*N_down)/L_c."""
    xi = 1.0 - (p.n_up_full + p.m_slots * p.n_down_full) / p.l_c
    if xi <= 0.0:
        raise ValueError("overhead exceeds frame: N_up_full + M*N_down_full >= L_c")
    return xi


def overhead_partial(p: OverheadParams) -> float:
    """Fraction left after per-slot best-user discovery: 1 - N_par/P."""
    xi = 1.0 - p.n_par / p.p_symbols
    if xi <= 0.0:
        raise ValueError("overhead exceeds frame: N_par >= P")
    return xi


@dataclass(frozen=True)
class SchemeConfig:
    """Everything a scheme needs beyond the channel draw."""

    p_tx: float
    alphabet: PhaseAlphabet
    m_slots: int
    xi_full: float
    xi_par: float
    xi_no_ris: float
    i_max: int = 20
    bcd_rel_tol: float = 1e-9
    floor_epsilon: float = 1e-3
    wf_tol: float = 1e-10

    @property
    def scaled_wf_tol(self) -> float:
        # absolute budget tolerance; scaled because p_tx can be ~1e13
        return self.wf_tol * max(1.0, self.p_tx)


@dataclass(frozen=True)
class SchemeResult:
    """Per-block outcome of one scheme.

    per_user_rate is overhead-scaled so that its sum equals
    net_sum_capacity; slot_users[m] == -1 marks an idle slot.
    """

    per_user_rate: np.ndarray
    net_sum_capacity: float
    fairness: float
    slot_users: np.ndarray
    slot_powers: np.ndarray

    def winner_histogram(self, k_users: int) -> np.ndarray:
        counts = np.zeros(k_users, dtype=np.int64)
        served = self.slot_users[self.slot_users >= 0]
        np.add.at(counts, served, 1)
        return counts


@dataclass(frozen=True)
class EwmaState:
    """Running exponentially weighted average rates, floored away from zero."""

    avg_rates: np.ndarray
    slot_counter: int
    floor_epsilon: float


def ewma_bootstrap(instantaneous_rates: np.ndarray, floor_epsilon: float) -> EwmaState:
    """Slot-0 state: the average rate starts at the realized slot-0 rate, floored."""
    rates = np.maximum(np.asarray(instantaneous_rates, dtype=float), floor_epsilon)
    return EwmaState(avg_rates=rates, slot_counter=0, floor_epsilon=floor_epsilon)


def ewma_update(state: EwmaState, instantaneous_rates: np.ndarray) -> EwmaState:
    """One recursion step: R_avg <- (1 - 1/(m+1)) R_avg + 1/(m+1) R_inst.

    With these weights the recursion unrolls to the running arithmetic mean
    of the instantaneous rates; the floor only guards later divisions.
    """
    m = state.slot_counter + 1
    w = 1.0 / (m + 1.0)
    avg = (1.0 - w) * state.avg_rates + w * np.asarray(instantaneous_rates, dtype=float)
    return EwmaState(avg_rates=np.maximum(avg, state.floor_epsilon),
                     slot_counter=m, floor_epsilon=state.floor_epsilon)


def pfs_select(avg_rates: np.ndarray, gains_sq: np.ndarray) -> int:
    """Proportional-fair pick: argmax (1/R_avg_k) * ln(gain_k).

    Log-domain version of argmax gain^(1/R_avg); users with zero gain score
    -inf and are excluded unless every user does.  Ties go to the lowest
    index.
    """
    avg_rates = np.asarray(avg_rates, dtype=float)
    gains_sq = np.asarray(gains_sq, dtype=float)
    scores = np.full(gains_sq.shape, -np.inf)
    positive = gains_sq > 0
    scores[positive] = np.log(gains_sq[positive]) / avg_rates[positive]
    return int(np.argmax(scores))


def fairness_index(rates: np.ndarray) -> float:
    """Jain index (sum r)^2 / (K * sum r^2); 1 when all equal, 1/K one-hot."""
    rates = np.asarray(rates, dtype=float)
    total = rates.sum()
    square_sum = float(np.sum(rates**2))
    if square_sum == 0.0:
        raise ValueError("undefined fairness: all rates are zero")
    return float(total * total / (rates.size * square_sum))


def _check_slots(schedule: ReflectionSchedule, cfg: SchemeConfig) -> None:
    if schedule.num_slots != cfg.m_slots:
        raise ValueError(
            f"schedule spans {schedule.num_slots} slots, config expects {cfg.m_slots}")


def optimize_user_gains(chan: ChannelRealization, cfg: SchemeConfig) -> tuple[np.ndarray, list]:
    """Best squared composite gain per user via coordinate ascent.

    The physical channels are constant within the block, so each user's
    optimized reflection vector is slot-invariant; the K problems are
    independent.
    """
    gains = np.zeros(chan.num_users)
    thetas = []
    for k in range(chan.num_users):
        terms = quadratic_form_terms(chan.h[k], chan.g, chan.F[:, k])
        it = optimize_phases(terms, cfg.alphabet, i_max=cfg.i_max, rel_tol=cfg.bcd_rel_tol)
        gains[k] = it.objective
        thetas.append(it.theta_indices)
    return gains, thetas


def _result_from_per_slot(winners: np.ndarray, powers: np.ndarray,
                          winner_gains: np.ndarray, xi: float,
                          k_users: int) -> SchemeResult:
    """Aggregate per-slot (winner, power, gain) triples into a SchemeResult."""
    m_slots = winners.size
    rates = np.log2(1.0 + powers * winner_gains)
    per_user = np.zeros(k_users)
    np.add.at(per_user, winners, rates / m_slots)
    per_user *= xi
    return SchemeResult(
        per_user_rate=per_user,
        net_sum_capacity=float(per_user.sum()),
        fairness=fairness_index(per_user),
        slot_users=winners.astype(np.int64),
        slot_powers=powers,
    )


def run_stv_opt(chan: ChannelRealization, cfg: SchemeConfig) -> SchemeResult:
    """Full CSIT, slowly-varying optimized surface.

    Optimizes each user's reflection vector, serves only the best user for
    the whole block at power p_tx (a constant schedule attains the sum-rate
    optimum), and scales by the full-CSIT overhead.
    """
    gains, _ = optimize_user_gains(chan, cfg)
    winner = int(np.argmax(gains))
    rate = float(np.log2(1.0 + cfg.p_tx * gains[winner]))
    per_user = np.zeros(chan.num_users)
    per_user[winner] = cfg.xi_full * rate
    return SchemeResult(
        per_user_rate=per_user,
        net_sum_capacity=cfg.xi_full * rate,
        # exactly one served user: the Jain index is 1/K by construction
        fairness=1.0 / chan.num_users,
        slot_users=np.full(cfg.m_slots, winner, dtype=np.int64),
        slot_powers=np.full(cfg.m_slots, cfg.p_tx),
    )


def run_no_ris(chan: ChannelRealization, cfg: SchemeConfig) -> SchemeResult:
    """Baseline without the surface: best direct user served all block."""
    gains = np.abs(chan.h) ** 2
    winner = int(np.argmax(gains))
    rate = float(np.log2(1.0 + cfg.p_tx * gains[winner]))
    per_user = np.zeros(chan.num_users)
    per_user[winner] = cfg.xi_no_ris * rate
    return SchemeResult(
        per_user_rate=per_user,
        net_sum_capacity=cfg.xi_no_ris * rate,
        fairness=1.0 / chan.num_users,
        slot_users=np.full(cfg.m_slots, winner, dtype=np.int64),
        slot_powers=np.full(cfg.m_slots, cfg.p_tx),
    )


def run_rtv_rand(chan: ChannelRealization, schedule: ReflectionSchedule,
                 cfg: SchemeConfig) -> SchemeResult:
    """Partial CSIT, randomized rapidly-varying surface.

    Per slot, the user with the best composite gain is served at power p_tx
    (equal power across slots - the transmitter only knows the winner, not
    the gains), scaled by the partial-CSIT overhead.
    """
    _check_slots(schedule, cfg)
    gains_sq = np.abs(slot_gains(chan.h, chan.g, chan.F, schedule)) ** 2  # (M, K)
    winners = np.argmax(gains_sq, axis=1)
    winner_gains = gains_sq[np.arange(winners.size), winners]
    powers = np.full(winners.size, cfg.p_tx)
    return _result_from_per_slot(winners, powers, winner_gains, cfg.xi_par,
                                 chan.num_users)


def _pfs_schedule(gains_sq_per_slot, cfg: SchemeConfig):
    """Common PFS pass: winners, PFS couplings, and the final EWMA state.

    gains_sq_per_slot maps slot index m -> (K,) squared composite gains.
    Slot 0 is scheduled by the plain gain argmax (the EWMA has no history
    yet); its coupling uses the bootstrapped slot-0 average so a constant
    single-user scenario yields a constant coupling.  Selection and the
    water-fill coupling alpha_pfs act on the slot SNR p_tx * |c|^2 (the
    high-SNR rate-ratio form); raw |c|^2 < 1 would invert the fairness
    pressure at physical path-loss scales.
    """
    m_slots = cfg.m_slots
    winners = np.zeros(m_slots, dtype=np.int64)
    alpha_pfs = np.zeros(m_slots)

    gains0 = gains_sq_per_slot(0)
    snr0 = cfg.p_tx * gains0
    w = int(np.argmax(gains0))
    winners[0] = w
    inst = np.zeros(gains0.size)
    inst[w] = np.log2(1.0 + snr0[w])
    state = ewma_bootstrap(inst, cfg.floor_epsilon)
    alpha_pfs[0] = _pfs_coupling(snr0[w], state.avg_rates[w])

    for m in range(1, m_slots):
        gains = gains_sq_per_slot(m)
        snr = cfg.p_tx * gains
        w = pfs_select(state.avg_rates, snr)
        winners[m] = w
        alpha_pfs[m] = _pfs_coupling(snr[w], state.avg_rates[w])
        inst = np.zeros(gains.size)
        inst[w] = np.log2(1.0 + snr[w])
        state = ewma_update(state, inst)
    return winners, alpha_pfs, state


def _pfs_coupling(snr: float, avg_rate: float) -> float:
    """Clamped snr^(1/avg_rate), evaluated (and clamped) in the log domain."""
    if snr <= 0.0:
        return PFS_ALPHA_MIN
    exponent = np.log(snr) / avg_rate
    exponent = np.clip(exponent, np.log(PFS_ALPHA_MIN), np.log(PFS_ALPHA_MAX))
    return float(np.exp(exponent))


def run_pfs_full(chan: ChannelRealization, cfg: SchemeConfig) -> SchemeResult:
    """Full CSIT with proportional-fair selection and water-filled power.

    Each user's reflection optimization is the unweighted one (the PFS
    exponent is a per-user monotone transform, so the inner maximizer is
    unchanged); only the cross-user comparison is PFS-weighted.  Pass 1
    evolves the EWMA under provisional equal power to fix winners and the
    per-slot couplings; pass 2 water-fills those couplings and realizes the
    rates with the winners' true gains.
    """
    gains_opt, _ = optimize_user_gains(chan, cfg)
    winners, alpha_pfs, _ = _pfs_schedule(lambda m: gains_opt, cfg)
    wf = waterfill(alpha_pfs, cfg.p_tx, tol=cfg.scaled_wf_tol)
    winner_gains = gains_opt[winners]
    return _result_from_per_slot(winners, wf.powers, winner_gains, cfg.xi_full,
                                 chan.num_users)


def run_pfs_rand(chan: ChannelRealization, schedule: ReflectionSchedule,
                 cfg: SchemeConfig) -> SchemeResult:
    """Partial CSIT with proportional-fair selection over the random surface.

    Power stays uniform at p_tx (no gain feedback); the randomized schedule
    supplies the per-slot gain fluctuations the PFS rule arbitrates.
    """
    _check_slots(schedule, cfg)
    gains_sq = np.abs(slot_gains(chan.h, chan.g, chan.F, schedule)) ** 2  # (M, K)
    winners, _, _ = _pfs_schedule(lambda m: gains_sq[m], cfg)
    winner_gains = gains_sq[np.arange(winners.size), winners]
    powers = np.full(winners.size, cfg.p_tx)
    return _result_from_per_slot(winners, powers, winner_gains, cfg.xi_par,
                                 chan.num_users)
