"""One evaluator per scenario: resolved parameters in, :class:`Report` out."""

from __future__ import annotations

import math

import numpy as np

from .. import coupling as cp
from .. import cryo_budget as cb
from .. import dynamics as dy
from .. import electrostatics as es
from .. import lc_circuit as lc
from .. import modulation as mo
from .. import trap_geometry as tg
from ..errors import ConfigError, DomainError
from ..quantities import lookup_ion
from .report import PLUMBING, PlotSpec, Report

TWO_PI = 2 * math.pi

# formula tags cited in report provenance
F_HEIGHT = "h = sqrt(a b c (a+b+c)) / (b+c)"
F_WIDTHS = "b = 4.90 a, c = b/2, w_outer = 3.66 a"
F_HEATING = "rate = rate0 (r0/r1)^3.5"
F_OMEGA = "omega_r = 1/sqrt(L0 C0)"
F_Z = "Z = sqrt(L0/C0)"
F_DQ0 = "dq0 = sqrt(hbar / 2Z)"
F_DPHI0 = "dphi0 = sqrt(hbar Z / 2)"
F_STUB = "X = Z0 tan(2 pi l / lambda) (short), -Z0 cot(2 pi l / lambda) (open)"
F_IDC = "C ~ n_par (n-1) eps0 eps_eff t l / gap (low fidelity)"
F_COULOMB = "uniform-charge plates, Coulomb superposition"
F_WAVE = "C = C0 alpha / (alpha + beta sin(nu t)); paired: C0/2 [alpha/(alpha+beta sin) + alpha/(alpha+beta cos)]"
F_DFT = "DFT of the capacitance waveform over one period"
F_ETA = "eta = beta / alpha"
F_BESSEL = "P0 = J0(m)^2, Pn = 2 Jn(m)^2"
F_FLEX = "f = (beta_n L)^2 / (2 pi L^2) sqrt(E t^2 / 12 rho)"
F_FMINDEX = "m = eta f_c / (2 f_m)"
F_Z0 = "z0 = sqrt(hbar / 2 m omega_i)"
F_G0 = "g0 = e zeta z0 dq0 / (r C0 hbar)"
F_GTEXT = "g = eta g0"
F_GHAM = "G = 2 eta g0 / 3"
F_M1 = "g = mu_B g_s <1|S|0> B / (sqrt(2) hbar)"
F_ENS = "g_N = sqrt(N) g"
F_KAPPA = "kappa = 2 pi f / Q"
F_SWAP = "t_swap = pi / (2 G)"
F_STEP = "dt <= 0.01 * 2 pi / max(|G|, |Delta|, kappa, gamma)"
F_HINT = "H/hbar = i G exp(-i Delta t) a b^dag + h.c., RK4"
F_NOISE = "P/bw = k_B T"
F_CHAIN = "T_out = T_in / A + T_stage (1 - 1/A), cascaded"


def _need(params, *names):
    missing = [n for n in names if params.get(n) is None]
    if missing:
        raise ConfigError(f"missing parameter(s): {', '.join(missing)}")


def run_geometry(p) -> Report:
    _need(p, "a")
    a = p["a"]
    b_opt, c_opt, w_opt = tg.optimum_widths(a)
    b = p["b"] if p["b"] is not None else b_opt
    c = p["c"] if p["c"] is not None else (b / 2 if p["b"] is not None else c_opt)
    geo = tg.TrapGeometry(a, b, c, p["w_outer"] if p["w_outer"] is not None else w_opt)
    row = {
        "a_m": a, "b_m": b, "c_m": c, "w_outer_m": geo.w_outer, "h_m": geo.h,
        "h_over_a": geo.h / a, "b_over_a": b / a, "c_over_b": c / b,
        "asymmetric": geo.asymmetric, "near_optimum_ratios": tg.matches_optimum_ratios(a, b, c),
    }
    prov = {"a_m": PLUMBING, "b_m": F_WIDTHS, "c_m": F_WIDTHS, "w_outer_m": F_WIDTHS, "h_m": F_HEIGHT,
            "h_over_a": F_HEIGHT, "b_over_a": PLUMBING, "c_over_b": PLUMBING}
    if p["heating_rate0"] is not None:
        row["heating_rate_per_s"] = tg.heating_rate_scaled(p["heating_rate0"], p["reference_height"], geo.h,
                                                           p["heating_exponent"])
        prov["heating_rate_per_s"] = F_HEATING
    return Report("geometry", {"geometry": [row]}, prov)


def run_circuit(p) -> Report:
    _need(p, "C0", "L0")
    c = lc.derive_circuit(p["C0"], p["L0"], p["Z"])
    row = {
        "C0_F": c.C0, "L0_H": c.L0, "f_r_Hz": c.f_r, "omega_r_rad_per_s": c.omega_r, "Z_ohm": c.Z,
        "Z_used_ohm": c.Z if p["Z"] is None else p["Z"], "dq0_C": c.dq0, "dphi0_Wb": c.dphi0,
        "dq0_dphi0_over_half_hbar": c.uncertainty_product / (lc.hbar / 2),
    }
    prov = {"C0_F": PLUMBING, "L0_H": PLUMBING, "f_r_Hz": F_OMEGA, "omega_r_rad_per_s": F_OMEGA, "Z_ohm": F_Z,
            "Z_used_ohm": PLUMBING, "dq0_C": F_DQ0, "dphi0_Wb": F_DPHI0, "dq0_dphi0_over_half_hbar": F_DQ0}
    if p["stub_Z0"] is not None:
        _need(p, "stub_length", "stub_wavelength")
        x, kind = lc.stub_reactance(p["stub_Z0"], p["stub_length"], p["stub_wavelength"], p["stub_termination"])
        row["stub_X_ohm"] = x
        row["stub_character"] = kind
        prov["stub_X_ohm"] = F_STUB
    if p["interdigital"]:
        g = lc.InterdigitalGeometry(p["idc_fingers"], p["idc_finger_length"], p["idc_finger_width"],
                                    p["idc_finger_thickness"], p["idc_gap"], p["idc_eps_eff"], p["idc_parallel"])
        row["idc_estimate_low_fidelity_F"] = lc.interdigital_capacitance_estimate(g)
        prov["idc_estimate_low_fidelity_F"] = F_IDC
    return Report("circuit", {"circuit": [row]}, prov)


def run_plates(p) -> Report:
    if p["n_points"] < 1:
        raise ConfigError("parameters.n_points must be >= 1")
    pair = es.PlatePair(p["plate_length"], p["plate_width"], max(p["sep_start"], p["plate_length"]),
                        p["charge"], p["grid_resolution"])
    seps = np.linspace(p["sep_start"], p["sep_stop"], p["n_points"])
    seps = seps[seps >= p["plate_length"]]
    if len(seps) == 0:
        raise DomainError("no separation in the sweep avoids overlapping plates")
    seps, rel = es.separation_sweep(pair, p["ion_height"], seps)
    rows = [{"separation_m": float(d), "field_rel": float(v)} for d, v in zip(seps, rel)]
    summary = {}
    if p["charge"] != 0 and p["sep_stop"] > p["plate_length"]:
        summary["optimum_separation_m"] = es.optimum_plate_separation(
            pair, p["ion_height"], (p["sep_start"], p["sep_stop"]))
    prov = {"separation_m": PLUMBING, "field_rel": F_COULOMB, "optimum_separation_m": F_COULOMB}
    return Report("plates", {"separation": rows}, prov,
                  summary, plot=PlotSpec("separation_m", "field_rel"))


def run_modulation(p) -> Report:
    spec = mo.ModulationSpec(p["C0"], p["alpha"], p["beta_amp"], TWO_PI * p["f_drive"], p["scheme"])
    t = np.arange(p["n_wave"]) * spec.period / p["n_wave"]
    wave = [{"t_s": float(ti), "C_F": float(ci)} for ti, ci in zip(t, mo.capacitance_waveform(spec, t))]
    spectrum = mo.harmonic_spectrum(spec, p["n_samples"])[: p["n_harmonics"] + 1]
    harm = [{"harmonic": k, "amplitude_rel_C0": a} for k, a in spectrum]
    powers, cpf = mo.fm_sideband_powers(p["fm_index"], p["n_max"])
    side = [{"sideband": n, "power_fraction": v} for n, v in enumerate(powers)]
    dims = dict(youngs_modulus=p["youngs_modulus"], density=p["density"], boundary=p["boundary"])
    beam = mo.BawBeam(p["beam_length"], p["beam_width"], p["beam_thickness"], mode_number=p["mode_number"], **dims)
    f1 = mo.flexural_mode_frequency(mo.BawBeam(p["beam_length"], p["beam_width"], p["beam_thickness"],
                                               mode_number=1, **dims))
    f_beam = mo.flexural_mode_frequency(beam)
    checks = mo.mode_separation_check(p["beam_length"], p["beam_width"], p["beam_thickness"])
    summary = {
        "eta": spec.eta,
        "fm_index": p["fm_index"],
        "carrier_plus_first": cpf,
        "max_index_for_threshold": mo.max_index_for_power_fraction(p["threshold"]),
        "fm_index_from_eta": mo.fm_index_from_capacitance_modulation(spec.eta, p["f_carrier"], p["f_drive"]),
        "flexural_frequency_Hz": f_beam,
        "mode_ratio_to_first": f_beam / f1,
        "commensurate_pairs": [f"{c.pair}~{c.nearest}" for c in checks if c.flagged],
    }
    prov = {"t_s": PLUMBING, "C_F": F_WAVE, "harmonic": PLUMBING, "amplitude_rel_C0": F_DFT,
            "sideband": PLUMBING, "power_fraction": F_BESSEL, "eta": F_ETA, "fm_index": PLUMBING,
            "carrier_plus_first": F_BESSEL,
            "max_index_for_threshold": F_BESSEL, "fm_index_from_eta": F_FMINDEX, "flexural_frequency_Hz": F_FLEX,
            "mode_ratio_to_first": F_FLEX}
    return Report("modulation", {"waveform": wave, "harmonics": harm, "sidebands": side}, prov, summary,
                  plot=PlotSpec("t_s", "C_F"))


def _dq0(p) -> float:
    if p["dq0"] is not None:
        return p["dq0"]
    if p["Z"] is not None:
        return lc.zero_point_charge(p["Z"])
    if p["L0"] is not None:
        return lc.derive_circuit(p["C0"], p["L0"]).dq0
    _need(p, "f_lc")
    return lc.zero_point_charge(1 / (TWO_PI * p["f_lc"] * p["C0"]))


def run_coupling(p) -> Report:
    ion = lookup_ion(p["species"])
    omega_i = TWO_PI * p["f_i"]
    z0 = p["z0"] if p["z0"] is not None else cp.harmonic_oscillator_length(ion.mass, omega_i)
    dq0 = _dq0(p)
    inp = cp.MotionalCouplingInput(p["zeta"], p["r"], p["C0"], z0, dq0, p["eta"], omega_i,
                                   TWO_PI * (p["f_lc"] or lc.REFERENCE_F_R), 0.0, p["kappa"], p["decoherence"])
    res = cp.motional_coupling(inp)
    row = {
        "species": ion.symbol, "C0_F": p["C0"], "z0_m": z0, "dq0_C": dq0,
        "g0_over_2pi_Hz": res.g0 / TWO_PI, "g_text_over_2pi_Hz": res.g_text / TWO_PI,
        "g_hamiltonian_over_2pi_Hz": res.g_hamiltonian / TWO_PI, "regime": res.regime,
    }
    prov = {"C0_F": PLUMBING, "z0_m": F_Z0, "dq0_C": F_DQ0, "g0_over_2pi_Hz": F_G0,
            "g_text_over_2pi_Hz": F_GTEXT, "g_hamiltonian_over_2pi_Hz": F_GHAM}
    if p["B_trans"] is not None:
        g_m = cp.magnetic_dipole_coupling(p["B_trans"], p["matrix_element"])
        row["g_magnetic_over_2pi_Hz"] = g_m / TWO_PI
        prov["g_magnetic_over_2pi_Hz"] = F_M1
        if p["N"] is not None:
            row["g_ensemble_over_2pi_Hz"] = cp.ensemble_coupling(g_m, p["N"]) / TWO_PI
            prov["g_ensemble_over_2pi_Hz"] = F_ENS
    if p["f_cpw"] is not None:
        _need(p, "Q")
        row["kappa_cpw_over_2pi_Hz"] = cp.cavity_decay_rate(p["f_cpw"], p["Q"]) / TWO_PI
        prov["kappa_cpw_over_2pi_Hz"] = F_KAPPA
    tables = {"result": [row]}
    plot = None
    if p["curve_species"]:
        _need(p, "f_lc")
        curve = []
        for sym in p["curve_species"]:
            caps, g = cp.coupling_vs_capacitance(lookup_ion(sym), (p["C_start"], p["C_stop"]), p["n_points"],
                                                 TWO_PI * p["f_lc"], p["zeta"], p["r"], omega_i)
            curve += [{"C_F": float(c), "species": sym, "g0_over_2pi_Hz": float(v)} for c, v in zip(caps, g)]
        tables["curve"] = curve
        prov["C_F"] = PLUMBING
        plot = PlotSpec("C_F", "g0_over_2pi_Hz", "species", log_x=True, table="curve")
    return Report("coupling", tables, prov, plot=plot)


def run_dynamics(p) -> Report:
    if p["G"] is not None:
        G = TWO_PI * p["G"]
    else:
        _need(p, "g0", "eta")
        res = cp.CouplingResult(TWO_PI * p["g0"], p["eta"], None, None)
        if p["convention"] not in ("hamiltonian", "text"):
            raise ConfigError("parameters.convention must be 'hamiltonian' or 'text'")
        G = res.g_hamiltonian if p["convention"] == "hamiltonian" else res.g_text
    init = p["initial"].replace(",", "").replace(" ", "")
    if len(init) != 2 or not init.isdigit():
        raise ConfigError(f"parameters.initial must be two digits n_lc n_ion, got {p['initial']!r}")
    damped = p["kappa"] > 0 or p["gamma_ion"] > 0
    cfg = dy.DynamicsConfig(G, TWO_PI * p["delta"], p["kappa"], p["gamma_ion"], p["t_end"], p["dt"],
                            "rk4_density" if damped else "rk4_state", p["record_every"])
    state = dy.TwoModeState.fock(int(init[0]), int(init[1]), p["n_trunc"], "density" if damped else "pure")
    traj = dy.evolve(state, cfg)
    rows = [{"t_s": float(t), "n_lc": float(a), "n_ion": float(b), "p_swap": float(s)}
            for t, a, b, s in zip(traj.t, traj.n_lc, traj.n_ion, traj.p_swap)]
    t_peak, p_peak = traj.peak_swap
    summary = {"G_over_2pi_Hz": G / TWO_PI, "swap_time_s": dy.swap_time(G) if G else None,
               "peak_time_s": t_peak, "peak_fidelity": p_peak, "dt_s": cfg.dt}
    prov = {"t_s": PLUMBING, "n_lc": F_HINT, "n_ion": F_HINT, "p_swap": F_HINT,
            "G_over_2pi_Hz": PLUMBING if p["G"] is not None else (F_GHAM if p["convention"] == "hamiltonian"
                                                                   else F_GTEXT),
            "swap_time_s": F_SWAP, "peak_time_s": F_HINT, "peak_fidelity": F_HINT, "dt_s": F_STEP}
    return Report("dynamics", {"trajectory": rows}, prov, summary, plot=PlotSpec("t_s", "p_swap"))


def run_budget(p) -> Report:
    if p["stages"] is None:
        stages = list(cb.DEFAULT_STAGES)
    else:
        stages = []
        for i, s in enumerate(p["stages"]):
            if "name" not in s or "temperature" not in s:
                raise ConfigError(f"parameters.stages[{i}] needs name and temperature")
            stages.append(cb.Stage(s["name"], s["temperature"], s.get("cooling_power", math.inf)))
    items = []
    for i, it in enumerate(p["items"]):
        if not {"source", "load", "sink"} <= set(it):
            raise ConfigError(f"parameters.items[{i}] needs source, load and sink")
        items.append(cb.BudgetItem(it["source"], it["load"], it["sink"]))
    report = cb.aggregate_budget(items, stages)
    rows = [{"stage": s.name, "temperature_K": s.temperature, "cooling_power_W": s.cooling_power,
             "load_W": s.load, "margin_W": s.margin, "pass": s.passed} for s in report.stages]
    summary = {"passed": report.passed, "outside_load_W": report.outside_load,
               "input_noise_density_J_per_Hz": cb.thermal_noise_density(p["input_noise_temp"]),
               "base_noise_density_J_per_Hz": cb.thermal_noise_density(min(s.temperature for s in stages))}
    if p["attenuators"]:
        by_name = {s.name: s for s in stages}
        chain = []
        for i, a in enumerate(p["attenuators"]):
            if a.get("stage") not in by_name:
                raise ConfigError(f"parameters.attenuators[{i}].stage: unknown stage {a.get('stage')!r}")
            chain.append((by_name[a["stage"]], a["attenuation"]))
        res = cb.attenuation_chain(p["input_noise_temp"], chain, p["input_power"])
        summary.update({"output_noise_temp_K": res.output_noise_temp, "total_attenuation": res.total_attenuation,
                        "attenuator_dissipation_W": res.dissipated})
    prov = {"temperature_K": PLUMBING, "cooling_power_W": PLUMBING, "load_W": "sum of sunk loads",
            "margin_W": PLUMBING, "outside_load_W": "sum of loads sunk outside the fridge",
            "input_noise_density_J_per_Hz": F_NOISE,
            "base_noise_density_J_per_Hz": F_NOISE}
    if p["attenuators"]:
        prov.update(dict.fromkeys(("output_noise_temp_K", "total_attenuation", "attenuator_dissipation_W"), F_CHAIN))
    return Report("budget", {"stages": rows}, prov, summary)


RUNNERS = {
    "geometry": run_geometry,
    "circuit": run_circuit,
    "plates": run_plates,
    "modulation": run_modulation,
    "coupling": run_coupling,
    "dynamics": run_dynamics,
    "budget": run_budget,
}


def run_scenario(scenario: str, params: dict) -> Report:
    try:
        runner = RUNNERS[scenario]
    except KeyError:
        raise ConfigError(f"scenario {scenario!r} cannot be run directly") from None
    return runner(params)
