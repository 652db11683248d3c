//! Independent decay oracle: one excited state coupled to a discretized
//! mode continuum, integrated in the Schrödinger picture.
//!
//! This module shares no mathematics with the closed forms elsewhere in the
//! crate — no kernel, no line integral — so it can arbitrate them. A flat
//! (or ω³-corrected "cubic") band of `n_modes` modes spanning detunings
//! [−S, S] couples to the excited state with the golden-rule-normalized
//! strength g_j = √(w(Δ_j) δΔ / π), which makes the ideal amplitude decay
//! rate exactly 1 in τ units.
//!
//! The integrator is a 4th-order Yoshida composition of exactly unitary
//! Strang substeps (half-step free phases, closed-form rotation in the
//! excited/bright-state plane, half-step phases), so norm error is pure
//! round-off (~1e-13 over thousands of steps) rather than a growing drift.
//!
//! Physics of the finite band, for interpreting results: the discrete
//! band's resolvent pole sits at rate 1 + 2/(πS) + O(S⁻²), so the fitted
//! rate at S = 200 is ≈ 1.0032 and the trajectory deviates from e^{-2τ} by
//! a few percent at late τ while following its *own* exponential to ~0.1%.
//! Halving the grid spacing at fixed S changes none of this; enlarging S
//! shrinks it proportionally.

use crate::error::{Error, Result};
use crate::tolerances::ORACLE_NORM_DRIFT;
use num_complex::Complex64;

/// Spectral weight profile of the discretized band.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DensityProfile {
    /// w(Δ) = 1: the pure flat band.
    Flat,
    /// w(Δ) = (1 + Δ/ratio)³: the ω³ free-space weighting across the band.
    Cubic,
}

/// Discretization of the mode continuum.
#[derive(Clone, Copy, Debug)]
pub struct ModeGridSpec {
    n_modes: usize,
    half_span: f64,
    profile: DensityProfile,
    ratio: f64,
}

impl ModeGridSpec {
    /// Validated grid: n ≥ 100 modes, half-span S ≥ 50 (in γ units) with
    /// S < ratio so cubic weights stay positive, spacing δΔ = 2S/n ≤ 0.2
    /// so the band resolves the linewidth.
    pub fn new(n_modes: usize, half_span: f64, profile: DensityProfile, ratio: f64) -> Result<Self> {
        if n_modes < 100 {
            return Err(Error::InvalidGrid(format!(
                "need at least 100 modes, got {n_modes}"
            )));
        }
        if !(half_span.is_finite() && half_span >= 50.0) {
            return Err(Error::InvalidGrid(format!(
                "half-span must be >= 50 gamma, got {half_span}"
            )));
        }
        if !(ratio.is_finite() && ratio >= 1e3) || half_span >= ratio {
            return Err(Error::InvalidGrid(format!(
                "need 1e3 <= omega0/gamma and half-span < omega0/gamma, got S={half_span}, ratio={ratio}"
            )));
        }
        let spacing = 2.0 * half_span / n_modes as f64;
        if spacing > 0.2 {
            return Err(Error::InvalidGrid(format!(
                "mode spacing {spacing:.3} exceeds 0.2 gamma; increase n_modes"
            )));
        }
        Ok(Self { n_modes, half_span, profile, ratio })
    }

    /// Reference grid used by the acceptance checks: flat, n = 4000, S = 200.
    pub fn reference(ratio: f64) -> Result<Self> {
        Self::new(4000, 200.0, DensityProfile::Flat, ratio)
    }

    /// Mode spacing δΔ = 2S/n.
    #[inline]
    pub fn spacing(&self) -> f64 {
        2.0 * self.half_span / self.n_modes as f64
    }

    /// Half-span S.
    #[inline]
    pub fn half_span(&self) -> f64 {
        self.half_span
    }

    /// Number of modes.
    #[inline]
    pub fn n_modes(&self) -> usize {
        self.n_modes
    }

    /// Recurrence horizon 2π/δΔ: beyond this time the discrete band
    /// re-feeds the excited state and the continuum picture breaks.
    #[inline]
    pub fn recurrence_time(&self) -> f64 {
        2.0 * std::f64::consts::PI / self.spacing()
    }

    /// Midpoint detuning grid Δ_j = −S + δΔ (j + 1/2).
    fn detunings(&self) -> Vec<f64> {
        let d = self.spacing();
        (0..self.n_modes)
            .map(|j| -self.half_span + d * (j as f64 + 0.5))
            .collect()
    }

    /// Couplings g_j = √(w(Δ_j) δΔ / π).
    fn couplings(&self, detunings: &[f64]) -> Vec<f64> {
        let d = self.spacing();
        detunings
            .iter()
            .map(|&dd| {
                let w = match self.profile {
                    DensityProfile::Flat => 1.0,
                    DensityProfile::Cubic => (1.0 + dd / self.ratio).powi(3),
                };
                (w * d / std::f64::consts::PI).sqrt()
            })
            .collect()
    }
}

/// Result of one mode-bath simulation.
#[derive(Clone, Debug)]
pub struct DecayTrajectory {
    /// Sample times τ (step boundaries, starting at 0).
    pub times: Vec<f64>,
    /// Excited population |c_e(τ)|².
    pub excited_pop: Vec<f64>,
    /// Field energy Σ_j |c_j|² (1 + Δ_j/ratio) in units of ħω₀.
    pub field_energy: Vec<f64>,
    /// Mode detunings Δ_j.
    pub mode_detunings: Vec<f64>,
    /// Final mode populations |c_j(τ_end)|².
    pub mode_pops: Vec<f64>,
    /// max |norm − 1| observed over the run.
    pub norm_drift: f64,
}

/// Integrate the excited state + mode band from |e⟩ at τ = 0 to `tau_end`
/// with fixed step `dt`.
///
/// Preconditions: 0 ≤ τ_end ≤ 10, τ_end below the recurrence horizon
/// 2π/δΔ, dt > 0 with dt·S ≤ 1.1 (the splitting-accuracy condition — the
/// fastest band phase must be resolved). A norm drift beyond 1e-8 aborts
/// with a step-size diagnostic; the unitary construction keeps the actual
/// drift at round-off level.
pub fn simulate(grid: &ModeGridSpec, tau_end: f64, dt: f64) -> Result<DecayTrajectory> {
    if !(tau_end.is_finite() && (0.0..=10.0).contains(&tau_end)) {
        return Err(Error::InvalidGrid(format!(
            "tau_end must lie in [0, 10], got {tau_end}"
        )));
    }
    if tau_end > grid.recurrence_time() {
        return Err(Error::InvalidGrid(format!(
            "tau_end {tau_end} exceeds the recurrence horizon {:.3} of this grid",
            grid.recurrence_time()
        )));
    }
    if !(dt.is_finite() && dt > 0.0 && dt * grid.half_span() <= 1.1) {
        return Err(Error::InvalidGrid(format!(
            "need 0 < dt with dt * S <= 1.1 to resolve the band edge, got dt={dt}, S={}",
            grid.half_span()
        )));
    }

    let detunings = grid.detunings();
    let couplings = grid.couplings(&detunings);
    let g_total = couplings.iter().map(|g| g * g).sum::<f64>().sqrt();
    let bright: Vec<f64> = couplings.iter().map(|g| g / g_total).collect();
    let omega_weight: Vec<f64> = detunings.iter().map(|d| 1.0 + d / grid.ratio).collect();

    let mut c_e = Complex64::new(1.0, 0.0);
    let mut c = vec![Complex64::new(0.0, 0.0); grid.n_modes()];

    let n_steps = (tau_end / dt).round().max(0.0) as usize;
    let n_steps = if (n_steps as f64 * dt - tau_end).abs() > 1e-12 * tau_end.max(1.0) {
        (tau_end / dt).ceil() as usize
    } else {
        n_steps
    };

    let mut times = Vec::with_capacity(n_steps + 1);
    let mut excited_pop = Vec::with_capacity(n_steps + 1);
    let mut field_energy = Vec::with_capacity(n_steps + 1);
    times.push(0.0);
    excited_pop.push(1.0);
    field_energy.push(0.0);

    // Yoshida-4 composition coefficients over the Strang kernel.
    let w1 = 1.0 / (2.0 - 2f64.cbrt());
    let w0 = 1.0 - 2.0 * w1;

    // One exactly-unitary Strang substep of size h: half-phase, closed-form
    // rotation by g_total·h in the (excited, bright) plane, half-phase.
    let strang = |h: f64,
                  c_e: &mut Complex64,
                  c: &mut [Complex64],
                  half_phase: &[Complex64]| {
        for (cj, ph) in c.iter_mut().zip(half_phase) {
            *cj *= ph;
        }
        let (sin_phi, cos_phi) = (g_total * h).sin_cos();
        let b: Complex64 = c.iter().zip(&bright).map(|(cj, u)| cj * u).sum();
        let e_new = cos_phi * *c_e - Complex64::new(0.0, sin_phi) * b;
        let b_new = -Complex64::new(0.0, sin_phi) * *c_e + cos_phi * b;
        let db = b_new - b;
        for (cj, u) in c.iter_mut().zip(&bright) {
            *cj += db * u;
        }
        *c_e = e_new;
        for (cj, ph) in c.iter_mut().zip(half_phase) {
            *cj *= ph;
        }
    };

    let phases_for = |h: f64| -> Vec<Complex64> {
        detunings
            .iter()
            .map(|&d| Complex64::new(0.0, -d * h / 2.0).exp())
            .collect()
    };
    let phase_w1 = phases_for(w1 * dt);
    let phase_w0 = phases_for(w0 * dt);

    let mut norm_drift = 0.0f64;
    let mut t = 0.0;
    for step in 0..n_steps {
        let h_step = if (step + 1) == n_steps { tau_end - t } else { dt };
        if (h_step - dt).abs() < 1e-15 {
            strang(w1 * dt, &mut c_e, &mut c, &phase_w1);
            strang(w0 * dt, &mut c_e, &mut c, &phase_w0);
            strang(w1 * dt, &mut c_e, &mut c, &phase_w1);
        } else {
            // Ragged final step: rebuild phases once.
            let p1 = phases_for(w1 * h_step);
            let p0 = phases_for(w0 * h_step);
            strang(w1 * h_step, &mut c_e, &mut c, &p1);
            strang(w0 * h_step, &mut c_e, &mut c, &p0);
            strang(w1 * h_step, &mut c_e, &mut c, &p1);
        }
        t += h_step;

        let pop = c_e.norm_sqr();
        let mode_norm: f64 = c.iter().map(|cj| cj.norm_sqr()).sum();
        norm_drift = norm_drift.max((pop + mode_norm - 1.0).abs());
        if norm_drift > ORACLE_NORM_DRIFT {
            return Err(Error::Convergence(format!(
                "norm drift {norm_drift:.3e} exceeds {ORACLE_NORM_DRIFT:.0e} at tau = {t:.3}; \
                 reduce dt (currently {dt}) or the band half-span"
            )));
        }
        times.push(t);
        excited_pop.push(pop);
        field_energy.push(
            c.iter()
                .zip(&omega_weight)
                .map(|(cj, w)| cj.norm_sqr() * w)
                .sum(),
        );
    }

    Ok(DecayTrajectory {
        times,
        excited_pop,
        field_energy,
        mode_detunings: detunings,
        mode_pops: c.iter().map(|cj| cj.norm_sqr()).collect(),
        norm_drift,
    })
}

/// Least-squares slope of ln p over [t_lo, t_hi]; returns (intercept, slope).
fn log_linear_fit(traj: &DecayTrajectory, t_lo: f64, t_hi: f64) -> Result<(f64, f64)> {
    let t_end = *traj.times.last().unwrap_or(&0.0);
    if t_end < t_hi - 1e-6 {
        return Err(Error::InvalidGrid(format!(
            "decay fit over [{t_lo}, {t_hi}] needs the run to reach tau = {t_hi}, got {t_end}"
        )));
    }
    let pts: Vec<(f64, f64)> = traj
        .times
        .iter()
        .zip(&traj.excited_pop)
        .filter(|(t, _)| (t_lo..=t_hi).contains(*t))
        .map(|(&t, &p)| (t, p))
        .collect();
    if pts.len() < 10 {
        return Err(Error::InvalidGrid(format!(
            "decay fit needs the trajectory sampled across [{t_lo}, {t_hi}]"
        )));
    }
    if pts.iter().any(|&(_, p)| p <= 0.0) {
        return Err(Error::Convergence("population hit zero inside the fit window".into()));
    }
    // The continuum trajectory is monotone; oscillation here means the
    // band has begun recurring and the fit would be meaningless.
    if pts.windows(2).any(|w| w[1].1 > w[0].1 * (1.0 + 1e-9)) {
        return Err(Error::Convergence(
            "population not monotone in the fit window (band recurrence?)".into(),
        ));
    }
    let n = pts.len() as f64;
    let (mut st, mut sy, mut stt, mut sty) = (0.0, 0.0, 0.0, 0.0);
    for &(t, p) in &pts {
        let y = p.ln();
        st += t;
        sy += y;
        stt += t * t;
        sty += t * y;
    }
    let slope = (n * sty - st * sy) / (n * stt - st * st);
    let intercept = (sy - slope * st) / n;
    Ok((intercept, slope))
}

/// Fitted amplitude decay rate: −slope/2 of ln|c_e|² over τ ∈ [0.5, 3]
/// (early transient and late band-edge tail excluded). Ideal value 1;
/// the finite band shifts it to ≈ 1 + 2/(πS).
pub fn fitted_decay_rate(traj: &DecayTrajectory) -> Result<f64> {
    let (_, slope) = log_linear_fit(traj, 0.5, 3.0)?;
    Ok(-slope / 2.0)
}

/// Deviation of the population trajectory from exponential decay over
/// τ ∈ [0.5, 5]: `strict` compares against the ideal e^{-2τ} (picks up the
/// physical band-edge rate shift ≈ 2/(πS)); `shape` compares against the
/// trajectory's own fitted exponential (isolates non-exponential shape).
pub fn wwa_deviation(traj: &DecayTrajectory) -> Result<(f64, f64)> {
    let (intercept, slope) = log_linear_fit(traj, 0.5, 5.0)?;
    let mut strict = 0.0f64;
    let mut shape = 0.0f64;
    for (&t, &p) in traj.times.iter().zip(&traj.excited_pop) {
        if !(0.5..=5.0).contains(&t) {
            continue;
        }
        let ideal = (-2.0 * t).exp();
        let own = (intercept + slope * t).exp();
        strict = strict.max((p - ideal).abs() / ideal);
        shape = shape.max((p - own).abs() / own);
    }
    Ok((strict, shape))
}

/// Lorentzian fit of the final mode spectrum.
#[derive(Clone, Copy, Debug)]
pub struct LorentzianFit {
    /// Fitted line center (γ units; ideal 0).
    pub center: f64,
    /// Fitted half-width (γ units; ideal 1).
    pub width: f64,
    /// Fitted peak population.
    pub peak: f64,
    /// max |population − fit| over the fit window, relative to the peak.
    pub max_rel_dev: f64,
}

/// Fit A / [1 + (Δ − Δ₀)²/w²] to the final mode populations on |Δ| ≤ 10 by
/// quadratic least squares on the reciprocal. Requires the trajectory to
/// have decayed out (τ_end ≥ 5), otherwise the spectrum is still
/// time-broadened and the fit is rejected as degenerate.
pub fn spectrum_lorentzian_check(traj: &DecayTrajectory) -> Result<LorentzianFit> {
    let t_end = *traj.times.last().unwrap_or(&0.0);
    if t_end < 5.0 - 1e-6 {
        return Err(Error::Convergence(format!(
            "spectrum fit needs the decay completed (tau_end >= 5), got {t_end}"
        )));
    }
    let pts: Vec<(f64, f64)> = traj
        .mode_detunings
        .iter()
        .zip(&traj.mode_pops)
        .filter(|(d, _)| d.abs() <= 10.0)
        .map(|(&d, &p)| (d, p))
        .collect();
    if pts.len() < 20 || pts.iter().any(|&(_, p)| p <= 0.0) {
        return Err(Error::Convergence("too few populated modes for a spectrum fit".into()));
    }
    // Normal equations for 1/p = c0 + c1 Δ + c2 Δ².
    let mut s = [0.0f64; 5];
    let mut b = [0.0f64; 3];
    for &(d, p) in &pts {
        let y = 1.0 / p;
        let mut dk = 1.0;
        for k in 0..5 {
            s[k] += dk;
            if k < 3 {
                b[k] += dk * y;
            }
            dk *= d;
        }
    }
    let m = [[s[0], s[1], s[2]], [s[1], s[2], s[3]], [s[2], s[3], s[4]]];
    let c = solve3(m, b).ok_or_else(|| {
        Error::Convergence("degenerate normal equations in spectrum fit".into())
    })?;
    let (c0, c1, c2) = (c[0], c[1], c[2]);
    if c2 <= 0.0 {
        return Err(Error::Convergence("spectrum fit is not peaked (degenerate)".into()));
    }
    let center = -c1 / (2.0 * c2);
    let inv_peak = c0 - c1 * c1 / (4.0 * c2);
    if inv_peak <= 0.0 {
        return Err(Error::Convergence("spectrum fit peak is non-positive (degenerate)".into()));
    }
    let peak = 1.0 / inv_peak;
    let width = (inv_peak / c2).sqrt();
    let mut max_dev = 0.0f64;
    for &(d, p) in &pts {
        let fit = peak / (1.0 + (d - center).powi(2) / (width * width));
        max_dev = max_dev.max((p - fit).abs());
    }
    Ok(LorentzianFit { center, width, peak, max_rel_dev: max_dev / peak })
}

/// Solve a symmetric 3×3 system by Cramer's rule; None if singular.
fn solve3(m: [[f64; 3]; 3], b: [f64; 3]) -> Option<[f64; 3]> {
    let det = |a: [[f64; 3]; 3]| -> f64 {
        a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1])
            - a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0])
            + a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0])
    };
    let d = det(m);
    if d.abs() < 1e-300 {
        return None;
    }
    let mut out = [0.0; 3];
    for k in 0..3 {
        let mut mk = m;
        for row in 0..3 {
            mk[row][k] = b[row];
        }
        out[k] = det(mk) / d;
    }
    Some(out)
}
