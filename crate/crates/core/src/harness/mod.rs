//! Configuration-driven verification runs: a catalogue of suites, each
//! exercising one library operation on a model and recording what it measured.

mod catalogue;
mod config;
mod context;
mod report;
pub mod suites;

use std::time::Instant;

pub use catalogue::{find_suite, Outcome, Stage, Suite, SuiteFn, SUITES};
pub use config::{GridConfig, SuiteConfig, TOLERANCES};
pub use context::{
    CompactSet, Context, Fixture, FrameSet, THETA_EPS, THETA_MAX_RADIUS, THETA_ORDER_K, THETA_ORDER_N,
};
pub use report::{format_num, Field, Fields, Record, Report, Status};

/// The suites a configuration selects, in catalogue order.
pub fn selected(cfg: &SuiteConfig) -> Vec<&'static Suite> {
    match &cfg.suites {
        None => SUITES.iter().collect(),
        Some(names) => SUITES.iter().filter(|s| names.iter().any(|n| n == s.name)).collect(),
    }
}

fn manifest(ctx: &mut Context) -> Fields {
    let cfg = ctx.cfg.clone();
    let mut f = Fields::default();
    f.text("model", cfg.model.label())
        .int("n", cfg.model.n as i64)
        .text("mode", cfg.mode_name())
        .int("seed", cfg.seed as i64)
        .num("b", cfg.b)
        .num("gamma_requested", cfg.gamma);
    let fx = match ctx.fixture() {
        Ok(fx) => fx,
        Err(e) => {
            f.text("fixture_error", e.to_string());
            return f;
        }
    };
    let (lo, hi) = fx.spec.nonzero_range();
    f.int("points", fx.space.n() as i64)
        .num("sqrt_lambda_min", lo)
        .num("sqrt_lambda_max", hi)
        .int("window_min", fx.window.0 as i64)
        .int("window_max", fx.window.1 as i64)
        .num("doubling_d", fx.profile.d)
        .num("doubling_dstar", fx.profile.dstar);
    // frames are only built when a selected suite needs them
    if selected(&cfg).iter().any(|s| s.stage >= Stage::Frames) {
        if let Ok(fs) = fx.frames(&cfg) {
            let eps = fs.sampling.iter().map(|r| r.epsilon).fold(0.0, f64::max);
            f.num("frame_gamma", fs.dual_report.gamma).num("max_epsilon", eps).int("indices", fs.h.len() as i64);
        }
    }
    f
}

/// Runs every selected suite. A suite whose selected dependency did not pass
/// is skipped; an error inside a suite is recorded as a failure.
pub fn run(cfg: SuiteConfig) -> Report {
    let mut ctx = Context::new(cfg);
    let manifest = manifest(&mut ctx);
    let suites = selected(&ctx.cfg);
    let mut records: Vec<Record> = Vec::with_capacity(suites.len());
    for suite in suites {
        let start = Instant::now();
        let blocked = suite.deps.iter().find(|d| {
            records.iter().any(|r| r.name == **d && !matches!(r.status, Status::Pass | Status::Recorded))
        });
        let (status, fields, note) = if let Some(dep) = blocked {
            (Status::Skipped, Fields::default(), format!("dependency {dep} did not pass"))
        } else {
            match (suite.run)(&mut ctx) {
                Err(e) => (Status::Fail, Fields::default(), e.to_string()),
                Ok(Outcome { skipped: Some(reason), fields, .. }) => (Status::Skipped, fields, reason),
                Ok(o) => {
                    let status = match (suite.hard, o.pass) {
                        (false, _) => Status::Recorded,
                        (true, true) => Status::Pass,
                        (true, false) => Status::Fail,
                    };
                    (status, o.fields, o.note)
                }
            }
        };
        records.push(Record {
            name: suite.name.into(),
            anchor: suite.anchor.into(),
            hard: suite.hard,
            status,
            fields,
            note,
            runtime: start.elapsed(),
        });
    }
    Report { manifest, records }
}
