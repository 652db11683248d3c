//! `cyclotron`: Landau-level decay analogue over the time grid — energy
//! budget in units of ħω_c plus the field angular momentum, which carries
//! exactly twice the classical Larmor value per unit emitted energy.

use crate::config::Resolved;
use crate::output::{Meta, Table};
use crate::CliError;

pub fn run(cfg: &Resolved) -> Result<Table, CliError> {
    let spec = cfg.cyclotron()?;
    let taus = cfg.time_grid()?;

    let rows: Vec<Vec<Option<f64>>> = taus
        .iter()
        .map(|&tau| {
            let e = spec.energies(tau);
            vec![
                Some(tau),
                Some(e.atom),
                Some(e.field),
                Some(spec.field_angmom_z_closed(tau)),
                Some(spec.classical_field_angmom_z(tau)),
            ]
        })
        .collect();

    Ok(Table {
        command: "cyclotron",
        metadata: vec![
            ("q_charge", Meta::Number(spec.charge())),
            ("b_field", Meta::Number(spec.b_field())),
            ("mass", Meta::Number(spec.mass())),
            ("omega_c", Meta::Number(spec.omega_c())),
            ("gamma_c", Meta::Number(spec.decay_rate())),
            ("oscillator_length", Meta::Number(spec.oscillator_length())),
        ],
        columns: vec![
            "tau",
            "charge_energy",
            "field_energy",
            "field_angmom_z",
            "classical_field_angmom_z",
        ],
        rows,
    })
}
