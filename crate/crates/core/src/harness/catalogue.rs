use super::context::Context;
use super::report::Fields;
use super::suites::{analysis, applications, calculus, frames, geometry};
use crate::error::Result;

/// Execution order: suites run stage by stage, in catalogue order within a stage.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Stage {
    Space,
    Calculus,
    Frames,
    Analysis,
    Applications,
}

impl Stage {
    pub fn as_str(self) -> &'static str {
        match self {
            Stage::Space => "space",
            Stage::Calculus => "calculus",
            Stage::Frames => "frames",
            Stage::Analysis => "seqspace/addiag",
            Stage::Applications => "molecules/multiplier",
        }
    }
}

/// What a suite returns: the hard verdict plus the measured values.
#[derive(Clone, Debug, Default)]
pub struct Outcome {
    pub pass: bool,
    /// `Some(reason)` when the suite does not apply to this configuration.
    pub skipped: Option<String>,
    pub fields: Fields,
    pub note: String,
}

impl Outcome {
    pub fn new(pass: bool, fields: Fields) -> Self {
        Self { pass, fields, ..Self::default() }
    }

    pub fn skip(reason: impl Into<String>) -> Self {
        Self { skipped: Some(reason.into()), ..Self::default() }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = note.into();
        self
    }
}

pub type SuiteFn = fn(&mut Context) -> Result<Outcome>;

pub struct Suite {
    pub name: &'static str,
    /// The library operation the suite exercises.
    pub anchor: &'static str,
    pub stage: Stage,
    /// Hard suites decide the exit code; the others only record constants.
    pub hard: bool,
    /// Suites that must pass first when they are part of the same run.
    pub deps: &'static [&'static str],
    pub description: &'static str,
    pub run: SuiteFn,
}

macro_rules! suite {
    ($name:expr, $anchor:expr, $stage:ident, $hard:expr, [$($dep:expr),*], $desc:expr, $run:path) => {
        Suite {
            name: $name,
            anchor: $anchor,
            stage: Stage::$stage,
            hard: $hard,
            deps: &[$($dep),*],
            description: $desc,
            run: $run,
        }
    };
}

pub static SUITES: &[Suite] = &[
    suite!("doubling", "space::measure_doubling", Space, false, [],
        "Doubling and reverse doubling constants c0, d, c2, d* over every radius.", geometry::doubling),
    suite!("nets-partition", "space::check_net", Space, true, [],
        "Separation, maximality and ball sandwich of every net and partition in the hierarchy.", geometry::nets_partition),
    suite!("lemma9.1", "space::check_net_count", Space, true, [],
        "Counting bound for net points in a ball, at every point and several radii.", geometry::net_count),
    suite!("lemma9.2", "space::check_one_sided_sum", Space, true, [],
        "One-sided decay sum over net points against its explicit bound.", geometry::one_sided_sum),
    suite!("lemma2.3-discrete-sum", "space::check_discrete_sum", Space, true, [],
        "Two-point discrete product sum over net points against its explicit constant.", geometry::discrete_sum),
    suite!("lemma2.1-peetre", "space::check_peetre_integrals", Space, true, [],
        "Discrete Peetre-type sums of decay factors at one and two scales.", geometry::peetre),
    suite!("thm3.4-telescoping", "calculus::littlewood_paley_sum", Calculus, true, [],
        "Level pieces over the window sum back to every mean-zero function.", calculus::telescoping),
    suite!("calculus-commutativity", "calculus::SpectralData::apply_fn", Calculus, true, [],
        "Functions of the operator commute.", calculus::commutativity),
    suite!("kernel-symmetry", "calculus::apply_symbol", Calculus, true, [],
        "Kernels of real even symbols are symmetric.", calculus::kernel_symmetry),
    suite!("thm2.2-localization", "calculus::measure_localization", Calculus, false, [],
        "Effective polynomial localization constants of level kernels.", calculus::localization),
    suite!("prop2.1-finite-speed", "calculus::calibrate_speed", Calculus, false, [],
        "Propagation constants calibrated from the heat kernel.", calculus::finite_speed),
    suite!("lemma4.1-sampling", "frames::accept_gamma", Frames, true, [],
        "Sampling constants of every level stay below 1/2 at the accepted net scale.", frames::sampling),
    suite!("thm4.2-reconstruction", "frames::reconstruct", Frames, true, ["lemma4.1-sampling"],
        "Both reconstruction directions on a random battery, plus frame bounds.", frames::reconstruction),
    suite!("thm4.2-localization", "frames::check_frame_properties", Frames, true, ["lemma4.1-sampling"],
        "Spectral band leaks of both frames, with space decay fits and norm bands recorded.", frames::properties),
    suite!("prop6.6-theta", "frames::build_band_limited_theta", Frames, true, [],
        "Band-limited approximant of the level symbol and the support of its kernels.", frames::theta),
    suite!("thm6.7-compact-frame", "frames::build_compact_frame", Frames, true, ["prop6.6-theta", "thm4.2-reconstruction"],
        "Compactly supported frame and its dual reconstruct the battery.", frames::compact),
    suite!("thm5.5-besov-characterization", "seqspace::check_frame_characterization", Analysis, true, ["thm4.2-reconstruction"],
        "Besov norms against coefficient norms over the parameter grid, with refinement stability.", analysis::besov_characterization),
    suite!("thm5.6-tl-characterization", "seqspace::check_frame_characterization", Analysis, true, ["thm4.2-reconstruction"],
        "Triebel-Lizorkin norms against coefficient norms over the parameter grid, with refinement stability.", analysis::tl_characterization),
    suite!("maximal-fs", "seqspace::fs_maximal_probe", Analysis, false, [],
        "Vector-valued maximal inequality ratios on the battery.", analysis::maximal),
    suite!("lemma9.4-hardy", "seqspace::hardy_check", Analysis, true, [],
        "Both discrete Hardy inequalities on random windowed sequences.", analysis::hardy),
    suite!("omega-identities", "addiag::omega2", Analysis, true, [],
        "Diagonal value, coincidence and monotonicity of the decay weights.", analysis::omega_identities),
    suite!("lemma6.4-W-bound", "addiag::product_weight_check", Analysis, true, [],
        "Products of decay weights summed over the hierarchy, divided by the target weight.", analysis::w_bound),
    suite!("thm6.2-probe", "addiag::boundedness_probe", Analysis, true, [],
        "Almost-diagonal operators of norm one on random sequences in all four spaces.", analysis::boundedness),
    suite!("thm6.3-neumann", "addiag::neumann_invert", Analysis, true, [],
        "Neumann inversion of a small weight perturbation of the identity.", analysis::neumann),
    suite!("lemma7.2-molecules", "molecules::validate_molecule", Applications, true, ["thm4.2-reconstruction"],
        "Frame elements as synthesis and analysis molecules; scaled families pass.", applications::molecules),
    suite!("lemma7.3-gram", "molecules::gram_certificate", Applications, true, ["lemma7.2-molecules"],
        "Gram matrix of primal and dual frames is almost diagonal.", applications::gram),
    suite!("thm7.4-synthesis", "molecules::molecular_synthesis", Applications, false, ["lemma7.2-molecules"],
        "Function norm of molecular sums over coefficient norm.", applications::synthesis),
    suite!("thm7.5-analysis", "molecules::molecular_analysis", Applications, true, ["lemma7.2-molecules"],
        "Molecular coefficients via the frame expansion match direct pairings.", applications::analysis),
    suite!("thm7.9-atomic", "molecules::atomic_decompose", Applications, true, ["thm6.7-compact-frame"],
        "Atomic decomposition from the compact frame, with the atom certificate.", applications::atomic),
    suite!("mihlin-symbols", "multiplier::check_mihlin", Applications, false, [],
        "Mihlin constants, range restriction and grid stability of the built-in symbols.", applications::mihlin),
    suite!("thm8.1-multiplier", "multiplier::boundedness_report", Applications, true, ["thm4.2-reconstruction"],
        "Route equivalence, L2 ceiling and refinement stability of a rational multiplier.", applications::multiplier),
    suite!("thm8.1-oscillatory", "multiplier::boundedness_report", Applications, false, ["thm4.2-reconstruction"],
        "Multiplier norms along a family of increasingly oscillatory symbols.", applications::oscillatory),
];

pub fn find_suite(name: &str) -> Option<&'static Suite> {
    SUITES.iter().find(|s| s.name == name)
}
