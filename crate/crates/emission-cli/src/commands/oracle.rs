//! `oracle`: independent discrete mode-bath integration — no rotating-wave
//! window, no exponential ansatz — producing three tables: the decay
//! trajectory, the late-time photon spectrum with its Lorentzian fit, and a
//! one-row summary of the fitted rate, line shape, and bookkeeping checks.

use crate::config::Resolved;
use crate::output::{Meta, Table};
use crate::CliError;
use emission_core::modebath::{
    fitted_decay_rate, simulate, spectrum_lorentzian_check, wwa_deviation,
};

pub fn run(cfg: &Resolved) -> Result<Vec<(&'static str, Table)>, CliError> {
    let (grid, tau_end, dt, profile_name) = cfg.oracle()?;
    let traj = simulate(&grid, tau_end, dt).map_err(CliError::Core)?;
    let gamma_fit = fitted_decay_rate(&traj).map_err(CliError::Core)?;
    let (strict_dev, shape_dev) = wwa_deviation(&traj).map_err(CliError::Core)?;
    let fit = spectrum_lorentzian_check(&traj).map_err(CliError::Core)?;

    let metadata = vec![
        ("n_modes", Meta::Integer(grid.n_modes() as u64)),
        ("half_span_in_gamma", Meta::Number(grid.half_span())),
        ("density_profile", Meta::Text(profile_name.into())),
        ("tau_end", Meta::Number(tau_end)),
        ("dt", Meta::Number(dt)),
        ("omega0_over_gamma", Meta::Number(cfg.ratio())),
    ];

    let trajectory = Table {
        command: "oracle",
        metadata: metadata.clone(),
        columns: vec!["tau", "excited_pop", "field_energy"],
        rows: traj
            .times
            .iter()
            .zip(&traj.excited_pop)
            .zip(&traj.field_energy)
            .map(|((&t, &p), &e)| vec![Some(t), Some(p), Some(e)])
            .collect(),
    };

    let spectrum = Table {
        command: "oracle",
        metadata: metadata.clone(),
        columns: vec!["detuning", "population", "lorentzian_fit"],
        rows: traj
            .mode_detunings
            .iter()
            .zip(&traj.mode_pops)
            .map(|(&d, &p)| {
                let r = (d - fit.center) / fit.width;
                vec![Some(d), Some(p), Some(fit.peak / (1.0 + r * r))]
            })
            .collect(),
    };

    let summary = Table {
        command: "oracle",
        metadata,
        columns: vec![
            "gamma_fit",
            "lorentzian_center",
            "lorentzian_width",
            "spectrum_max_rel_dev",
            "norm_drift",
            "wwa_strict_dev",
            "wwa_shape_dev",
        ],
        rows: vec![vec![
            Some(gamma_fit),
            Some(fit.center),
            Some(fit.width),
            Some(fit.max_rel_dev),
            Some(traj.norm_drift),
            Some(strict_dev),
            Some(shape_dev),
        ]],
    };

    Ok(vec![
        ("trajectory", trajectory),
        ("spectrum", spectrum),
        ("summary", summary),
    ])
}
