//! `density`: scaled radial energy density w·c/(ħω₀γ) on the radial grid,
//! one block of rows per requested τ. Four columns are computed at each
//! radius: the closed near-zone form, the windowed quadrature, the retarded
//! far-field envelope, and the classical dipole reference (empty at x = 0,
//! where it diverges).

use crate::config::Resolved;
use crate::output::{Meta, Table};
use crate::CliError;
use emission_core::radial::{radial_profile, RadialProfile};
use rayon::prelude::*;

pub fn run(cfg: &Resolved) -> Result<Table, CliError> {
    let scheme = cfg.scheme()?;
    let ratio = cfg.ratio();
    let taus = cfg.time_grid()?;
    let xs = cfg.radial_grid()?;

    let profiles: Vec<RadialProfile> = taus
        .par_iter()
        .map(|&tau| radial_profile(&xs, tau, scheme, ratio).map_err(CliError::Core))
        .collect::<Result<_, CliError>>()?;

    let mut rows = Vec::new();
    let mut warnings: Vec<String> = Vec::new();
    for profile in &profiles {
        for w in &profile.warnings {
            if !warnings.contains(w) {
                warnings.push(w.clone());
            }
        }
        for p in &profile.points {
            rows.push(vec![
                Some(profile.tau),
                Some(p.x),
                Some(p.closed),
                Some(p.quadrature),
                Some(p.farfield),
                p.classical,
            ]);
        }
    }
    for w in &warnings {
        eprintln!("warning: {w}");
    }

    let mut metadata = super::scheme_meta(scheme);
    metadata.push(("omega0_over_gamma", Meta::Number(ratio)));
    Ok(Table {
        command: "density",
        metadata,
        columns: vec!["tau", "x", "w_closed", "w_quadrature", "w_farfield", "w_classical"],
        rows,
    })
}
