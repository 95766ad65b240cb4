use std::cell::OnceCell;
use std::collections::BTreeMap;
use std::rc::Rc;

use super::config::SuiteConfig;
use crate::addiag::NetGeometry;
use crate::calculus::{
    calibrate_speed, eigendecompose, level_window, Cutoff, CutoffKind, SpectralData, SpeedCalibration,
};
use crate::error::{Error, Result};
use crate::frames::{
    accept_gamma, build_band_limited_theta, build_compact_dual, build_compact_frame, build_dual_frame, build_frame1,
    BandLimitedTheta, CompactDualReport, CompactFrameReport, DualBuildReport, Frame, SamplingReport, ThetaReport,
};
use crate::linalg::{rng, uniform_vec, Vector};
use crate::seqspace::{Family, Flavor, SpaceParams};
use crate::space::{DoublingProfile, ModelSpace, ModelSpec, NetHierarchy};

/// Frames and the hierarchy they live on.
pub struct FrameSet {
    pub h: NetHierarchy,
    pub sampling: Vec<SamplingReport>,
    pub primal: Frame,
    pub dual: Frame,
    pub dual_report: DualBuildReport,
    pub geometry: NetGeometry,
}

/// Order `N` of the band-limited approximant.
pub const THETA_ORDER_N: usize = 3;
/// Order `K` of the band-limited approximant (vanishing of `Θ(u)/u^{2K}` at 0).
pub const THETA_ORDER_K: usize = 2;
pub const THETA_EPS: f64 = 0.1;
pub const THETA_MAX_RADIUS: f64 = 512.0;

/// Band-limited approximant, compact frame and its dual.
pub struct CompactSet {
    pub theta: BandLimitedTheta,
    pub theta_report: ThetaReport,
    pub speed: SpeedCalibration,
    pub compact: Frame,
    pub compact_report: CompactFrameReport,
    pub compact_dual: Frame,
    pub dual_report: CompactDualReport,
}

/// Everything derived from one model, built on first use.
pub struct Fixture {
    pub model: ModelSpec,
    pub space: ModelSpace,
    pub profile: DoublingProfile,
    pub spec: SpectralData,
    pub window: (i32, i32),
    frames: OnceCell<std::result::Result<Rc<FrameSet>, String>>,
    compact: OnceCell<std::result::Result<Rc<CompactSet>, String>>,
}

impl Fixture {
    pub fn build(model: &ModelSpec, cfg: &SuiteConfig) -> Result<Self> {
        let space = ModelSpace::build(model)?;
        let profile = DoublingProfile::full(&space)?;
        let spec = eigendecompose(&space)?;
        let window = level_window(&spec, cfg.b, cfg.mode)?;
        Ok(Self { model: model.clone(), space, profile, spec, window, frames: OnceCell::new(), compact: OnceCell::new() })
    }

    pub fn frames(&self, cfg: &SuiteConfig) -> Result<Rc<FrameSet>> {
        self.frames
            .get_or_init(|| self.build_frames(cfg).map(Rc::new).map_err(|e| e.to_string()))
            .clone()
            .map_err(|e| Error::Precondition(format!("frame construction failed: {e}")))
    }

    fn build_frames(&self, cfg: &SuiteConfig) -> Result<FrameSet> {
        let (h, sampling) = accept_gamma(&self.space, &self.spec, cfg.b, cfg.gamma, self.window, cfg.mode)?;
        let primal = build_frame1(&self.spec, &h, &Cutoff::new(CutoffKind::LowPass, cfg.b)?)?;
        let (dual, dual_report) = build_dual_frame(&self.spec, &h, &sampling)?;
        let geometry = NetGeometry::new(&self.space, &h);
        Ok(FrameSet { h, sampling, primal, dual, dual_report, geometry })
    }

    /// Largest `u` at which a level symbol is evaluated on the spectrum.
    pub fn u_max(&self, b: f64) -> f64 {
        b.powi(-self.window.0) * self.spec.nonzero_range().1
    }

    pub fn compact(&self, cfg: &SuiteConfig, seed: u64) -> Result<Rc<CompactSet>> {
        self.compact
            .get_or_init(|| self.build_compact(cfg, seed).map(Rc::new).map_err(|e| e.to_string()))
            .clone()
            .map_err(|e| Error::Precondition(format!("compact frame construction failed: {e}")))
    }

    fn build_compact(&self, cfg: &SuiteConfig, seed: u64) -> Result<CompactSet> {
        let fs = self.frames(cfg)?;
        let (theta, theta_report) =
            build_band_limited_theta(cfg.b, THETA_ORDER_N, THETA_ORDER_K, THETA_EPS, self.u_max(cfg.b), THETA_MAX_RADIUS)?;
        let deltas: Vec<f64> = (self.window.0..=self.window.1).map(|j| cfg.b.powi(-j)).collect();
        let speed = calibrate_speed(&self.space, &self.spec, &deltas)?;
        let (compact, compact_report) = build_compact_frame(&self.space, &self.spec, &fs.h, &theta, speed.c_tilde)?;
        let battery = self.battery(seed, cfg.battery);
        let (compact_dual, dual_report) = build_compact_dual(&self.spec, &fs.primal, &fs.dual, &compact, &battery)?;
        Ok(CompactSet { theta, theta_report, speed, compact, compact_report, compact_dual, dual_report })
    }

    /// Space parameters with the measured `d` and `d*` (a positive floor keeps
    /// `d* > 0` on models whose reverse doubling constant is 1).
    pub fn params(&self, s: f64, p: f64, q: f64, flavor: Flavor, family: Family) -> Result<SpaceParams> {
        SpaceParams::new(s, p, q, flavor, family, self.profile.d, self.profile.dstar.max(1e-3))
    }

    /// `count` uniform random functions projected onto the mean-zero subspace.
    pub fn battery(&self, seed: u64, count: usize) -> Vec<Vector> {
        let mut r = rng(seed);
        (0..count).map(|_| self.spec.project_mean_zero(&uniform_vec(&mut r, self.space.n()))).collect()
    }
}

/// Run-wide state: the configuration and the fixtures built so far.
pub struct Context {
    pub cfg: SuiteConfig,
    fixtures: BTreeMap<String, Rc<Fixture>>,
}

impl Context {
    pub fn new(cfg: SuiteConfig) -> Self {
        Self { cfg, fixtures: BTreeMap::new() }
    }

    pub fn fixture_for(&mut self, model: &ModelSpec) -> Result<Rc<Fixture>> {
        let key = format!("{model:?}");
        if let Some(f) = self.fixtures.get(&key) {
            return Ok(f.clone());
        }
        let f = Rc::new(Fixture::build(model, &self.cfg)?);
        self.fixtures.insert(key, f.clone());
        Ok(f)
    }

    /// The configured model.
    pub fn fixture(&mut self) -> Result<Rc<Fixture>> {
        let m = self.cfg.model.clone();
        self.fixture_for(&m)
    }

    /// The configured model with every linear size doubled.
    pub fn refined(&mut self) -> Result<Rc<Fixture>> {
        let m = self.cfg.model.refined()?;
        self.fixture_for(&m)
    }

    /// A seed derived from the run seed and a suite-specific salt.
    pub fn seed(&self, salt: &str) -> u64 {
        // FNV-1a, stable across platforms and releases
        let mut h: u64 = 0xcbf2_9ce4_8422_2325;
        for b in salt.bytes() {
            h ^= b as u64;
            h = h.wrapping_mul(0x0100_0000_01b3);
        }
        h ^ self.cfg.seed
    }

    pub fn phi(&self) -> Result<Cutoff> {
        Cutoff::new(CutoffKind::BandPass, self.cfg.b)
    }
}
