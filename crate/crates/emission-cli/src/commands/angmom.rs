//! `angmom`: z angular-momentum budget — atomic share, field share (closed
//! and quadrature), and the field's spin/orbital split — over the time grid.

use crate::config::Resolved;
use crate::output::{Meta, Table};
use crate::CliError;
use emission_core::observables::{angular_momentum_breakdown, HgCoefficient};
use rayon::prelude::*;

pub fn run(cfg: &Resolved) -> Result<Table, CliError> {
    let spec = cfg.transition()?;
    let state = cfg.state(&spec)?;
    let hg = cfg.hg_coefficient();
    let taus = cfg.time_grid()?;

    let rows: Vec<Vec<Option<f64>>> = taus
        .par_iter()
        .map(|&tau| {
            let b = angular_momentum_breakdown(&spec, &state, tau, hg).map_err(CliError::Core)?;
            Ok(vec![
                Some(tau),
                Some(b.atom_z),
                Some(b.field_z_closed),
                Some(b.field_z_numeric),
                Some(b.spin_z),
                Some(b.orbital_z),
                Some(b.conservation_residual),
            ])
        })
        .collect::<Result<_, CliError>>()?;

    Ok(Table {
        command: "angmom",
        metadata: vec![
            ("h", Meta::Text(spec.h().to_string())),
            ("g", Meta::Text(spec.g().to_string())),
            ("omega0_over_gamma", Meta::Number(spec.ratio())),
            (
                "hg_coefficient",
                Meta::Text(
                    match hg {
                        HgCoefficient::ConservationConsistent => "conservation-consistent",
                        HgCoefficient::AsPrinted => "as-printed",
                    }
                    .into(),
                ),
            ),
            ("initial_mean_m", Meta::Number(state.mean_m())),
        ],
        columns: vec![
            "tau",
            "atom_z",
            "field_z_closed",
            "field_z_numeric",
            "spin_z",
            "orbital_z",
            "conservation_residual",
        ],
        rows,
    })
}
