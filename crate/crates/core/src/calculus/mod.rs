//! Spectral functional calculus on a finite model: eigendecomposition,
//! cutoffs, kernels `f(δ√L)` and measured localization.

mod cutoff;
pub mod jet;
mod localization;
mod spectral;
mod window;

pub use cutoff::{gamma, gamma_jet, phi, phi_jet, psi, psi_jet, smooth_step, smooth_step_jet, Cutoff, CutoffKind};
pub use localization::{
    calibrate_speed, check_finite_speed, effective_radius, measure_holder, measure_localization,
    FiniteSpeedReport, HolderProfile, LocalizationReport, SpeedCalibration, SUPPORT_THRESHOLD,
};
pub use spectral::{apply_l_power, apply_symbol, eigendecompose, Kernel, SpectralData};
pub use window::{level_symbol, level_window, littlewood_paley_sum};
