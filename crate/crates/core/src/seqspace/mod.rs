//! Besov and Triebel–Lizorkin norms on functions and on net-indexed
//! coefficient sequences, the maximal operator `M_t`, Hardy sums and the
//! frame-characterization checks.

mod characterization;
mod function;
mod hardy;
mod maximal;
mod params;
mod sequence;

pub use characterization::{check_frame_characterization, CharacterizationReport};
pub use function::{besov_norm, function_norm, tl_norm, validate_phi};
pub use hardy::{hardy_check, hardy_constant, HardyReport};
pub use maximal::{fs_maximal_probe, maximal_mt, ProbeRatio};
pub use params::{Family, Flavor, SpaceParams};
pub use sequence::{seq_norm, seq_norm_f_via_b};
