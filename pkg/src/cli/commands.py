"""Command bodies. Each returns a CommandResult; writing and exit codes are left to main."""
import logging
from dataclasses import dataclass, field
from typing import Optional, Tuple

import numpy as np
import pandas as pd

from src.dynamics.decoherence import EXACT, PRINTED, exponential_time, gaussian_time
from src.dynamics.solvation import trajectory
from src.errors import EXIT_OK, ChromoEnvError, ConfigError, FitNotConvergedError
from src.fitting.couplings import QUICK_COEFFICIENT, couplings_from_fit
from src.fitting.datasets import (load_energy_scales, load_reference_datasets, load_timescales,
                                  records_frame)
from src.fitting.multiexp import MAX_COMPONENTS, MIN_STARTS, fit_multiexponential, load_correlation_file
from src.spectral.crossover import crossover_bound_bulk, crossover_protein_solvent
from src.spectral.density import reorganization_energy
from src.spectral.lorentzian import (COMPONENT_LABELS, bound_to_solvent_ratio, eval_lorentzian, lorentzian_params,
                                     printed_alpha_over_tau, scale_separation_diagnostics)
from src.spectral.models import TOTAL, j_model, j_three_component
from src.spectral.regimes import classify_regime, relevant_component

logger = logging.getLogger(__name__)

SOLVATION = "solvation"
ENERGY = "energy"
TIMESCALES = "timescales"
DATASET_TABLES = (SOLVATION, ENERGY, TIMESCALES)


@dataclass
class CommandResult:
    table: pd.DataFrame
    notes: Tuple[str, ...] = field(default=())
    error: Optional[ChromoEnvError] = None  # raised by main once the table is written

    @property
    def exit_code(self):
        return EXIT_OK if self.error is None else self.error.exit_code


def _three_component(config, command):
    if not config.is_three_component:
        raise ConfigError("model", f"'{command}' needs model 'three_component', got '{config.model}'")
    return config.environment()


def _omega(config, env):
    if not env.rates and (config.omega_min is None or config.omega_max is None):
        raise ConfigError("omega_min", "the media have no relaxation rates; give omega_min and omega_max")
    return config.omega_grid(env.rates)


def cmd_spectral(config):
    env = config.environment()
    omega = _omega(config, env)
    columns = {"omega_rad_per_ps": omega}
    if config.is_three_component and config.spectral_source == "lorentzian":
        terms = lorentzian_params(env)
        columns["J_rad_per_ps"] = eval_lorentzian(terms, omega)
        for term in terms:
            columns[f"J_{term.label}_rad_per_ps"] = term.evaluate(omega)
    elif config.is_three_component:
        parts = j_three_component(env, omega)
        columns["J_rad_per_ps"] = parts[TOTAL]
        for label in COMPONENT_LABELS:
            columns[f"J_{label}_rad_per_ps"] = parts[label]
    else:
        columns["J_rad_per_ps"] = j_model(env, omega)
    logger.info("evaluated J on %d frequencies", omega.size)
    return CommandResult(pd.DataFrame(columns))


def cmd_lorentzian(config):
    env = _three_component(config, "lorentzian")
    terms = lorentzian_params(env)
    printed = printed_alpha_over_tau(env)
    rows = [{
        "component": term.label,
        "alpha": term.alpha,
        "tau_ps": term.tau,
        "E_R_cm1": term.reorganization_energy,
        "omega_peak_rad_per_ps": term.rate,
        "alpha_over_tau_printed": printed[term.label],
    } for term in terms]
    notes = [f"total E_R = {terms.reorganization_energy:.6g} cm^-1",
             f"alpha_b / alpha_s = {bound_to_solvent_ratio(env):.6g}"]
    notes.extend(scale_separation_diagnostics(terms))
    return CommandResult(pd.DataFrame(rows), tuple(notes))


def _ohmic_slope(J):
    w = 1e-3 * J.omega_low
    return float(J(w)) / w


def cmd_dynamics(config):
    env = config.environment()
    J = config.spectral_density(env)
    times = config.time_grid()
    table = trajectory(config.state(), J, config.temperature_K, times, convention=config.stokes_convention,
                       rtol=config.rtol)
    e_r = reorganization_energy(J)
    tau_g = gaussian_time(J, config.temperature_K, rtol=config.rtol)
    notes = [f"E_R = {e_r:.6g} cm^-1",
             f"tau_g = {tau_g.tau_g:.6g} ps (integral truncated at {tau_g.cutoff:.3g} rad/ps)"]
    if tau_g.tau_g_high_t is not None:
        notes.append(f"tau_g (high temperature) = {tau_g.tau_g_high_t:.6g} ps")
    alpha = _ohmic_slope(J)
    if config.temperature_K > 0 and alpha > 0:
        notes.append(f"tau_d = {exponential_time(alpha, config.temperature_K, PRINTED):.6g} ps "
                     f"(exact long-time slope: {exponential_time(alpha, config.temperature_K, EXACT):.6g} ps)")
    return CommandResult(table, tuple(notes))


def cmd_fit(input_path, n, e_r=None, seed=0, n_starts=MIN_STARTS):
    if not 1 <= n <= MAX_COMPONENTS:
        raise ConfigError("n", f"must be in 1..{MAX_COMPONENTS}, got {n}")
    if e_r is not None and not e_r > 0:
        raise ConfigError("energy_cm1", f"must be positive, got {e_r} cm^-1")
    data = load_correlation_file(input_path)
    if len(data) < 2 * n + 1:
        raise ConfigError("n", f"{n} components need at least {2 * n + 1} samples, '{input_path}' has {len(data)}")
    fit = fit_multiexponential(data, n, n_starts=n_starts, seed=seed)
    table = pd.DataFrame({
        "component": np.arange(1, len(fit.components) + 1),
        "A": fit.amplitudes,
        "tau_ps": fit.taus,
    })
    notes = [f"residual_rms = {fit.residual_rms:.3e}", f"converged = {fit.converged}",
             f"starts = {fit.n_starts}"]
    if fit.flags:
        notes.append(f"flags = {', '.join(fit.flags)}")
    if e_r is not None:
        report = couplings_from_fit(e_r, fit)
        table["alpha"] = report.alphas
        table["alpha_quick"] = report.quick_estimates
        table["E_R_cm1"] = e_r * fit.amplitudes
        notes.append(f"alpha = 2 E_R A tau / (pi hbar); alpha_quick = {QUICK_COEFFICIENT} A E_R tau "
                     "(rule of thumb, not reproducible from the constants)")
    error = None
    if not fit.converged:
        error = FitNotConvergedError(f"{n}-component fit of '{input_path}' did not converge"
                                     + (f" ({', '.join(fit.flags)})" if fit.flags else ""))
    return CommandResult(table, tuple(notes), error)


def cmd_crossover(config):
    env = _three_component(config, "crossover")
    terms = lorentzian_params(env)
    rows = []
    notes = []
    for crossover in (crossover_protein_solvent(terms), crossover_bound_bulk(terms)):
        pair = f"{crossover.slow}/{crossover.fast}"
        rows.append(("crossover_analytic", pair, crossover.analytic, "rad/ps", ""))
        if crossover.numeric is not None:
            rows.append(("crossover_numeric", pair, crossover.numeric, "rad/ps", ""))
        rows.append(("crossover_printed", pair, crossover.printed, "rad/ps", ""))
        if crossover.note:
            notes.append(crossover.note)
    for term in terms:
        regime = classify_regime(term.alpha, config.temperature_K, config.delta_cm1, term.rate)
        rows.append(("regime", term.label, term.alpha, "alpha", regime.regime.value))
        if regime.note:
            notes.append(f"{term.label}: {regime.note}")
    relevant = terms.term(relevant_component(terms, config.delta_cm1))
    rows.append(("relevant_component", relevant.label, relevant.rate, "rad/ps", ""))
    table = pd.DataFrame(rows, columns=["quantity", "component", "value", "unit", "label"])
    return CommandResult(table, tuple(notes))


def _matches(frame, text, columns):
    if not text:
        return frame
    mask = np.zeros(len(frame), dtype=bool)
    for column in columns:
        mask |= frame[column].astype(str).str.contains(text, case=False, regex=False).to_numpy()
    return frame[mask].reset_index(drop=True)


def cmd_datasets(table=SOLVATION, filter_text=None):
    if table not in DATASET_TABLES:
        raise ConfigError("table", f"must be one of {', '.join(DATASET_TABLES)}, got '{table}'")
    if table == ENERGY:
        frame = pd.DataFrame([{
            "process": s.process, "delta_min_meV": s.delta_min_meV, "delta_max_meV": s.delta_max_meV,
            "delta_min_cm1": s.delta_min_cm1, "delta_max_cm1": s.delta_max_cm1, "source": s.source,
        } for s in load_energy_scales()])
        return CommandResult(_matches(frame, filter_text, ["process"]))
    if table == TIMESCALES:
        frame = pd.DataFrame([{"process": t.process, "min_ps": t.min_ps, "max_ps": t.max_ps, "source": t.source}
                              for t in load_timescales()])
        return CommandResult(_matches(frame, filter_text, ["process"]))

    records = load_reference_datasets()
    frame = records_frame(records)
    for j in (1, 2, 3):
        frame[f"alpha{j}"] = np.nan
    for i, record in enumerate(records):
        if record.E_R is None:
            continue
        first = 2 if record.unresolved_window else 1
        for offset, alpha in enumerate(couplings_from_fit(record.E_R, record.as_fit())):
            frame.loc[i, f"alpha{first + offset}"] = alpha
    notes = ("alpha_j = 2 E_R A_j tau_j / (pi hbar); blank where E_R or the component is not reported",)
    return CommandResult(_matches(frame, filter_text, ["chromophore", "protein", "solvent"]), notes)
