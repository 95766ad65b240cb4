use crate::calculus::check_finite_speed;
use crate::error::Result;
use crate::frames::{check_frame_properties, frame_bounds, reconstruct};
use crate::harness::catalogue::Outcome;
use crate::harness::context::Context;
use crate::harness::report::Fields;
use crate::linalg::norm2;
use crate::space::HierarchyMode;

pub fn sampling(ctx: &mut Context) -> Result<Outcome> {
    let fx = ctx.fixture()?;
    let fs = fx.frames(&ctx.cfg)?;
    let eps = fs.sampling.iter().map(|r| r.epsilon).fold(0.0, f64::max);
    let mut f = Fields::default();
    f.num("gamma", fs.dual_report.gamma)
        .num("max_epsilon", eps)
        .int("levels", fs.sampling.len() as i64)
        .int("indices", fs.h.len() as i64);
    Ok(Outcome::new(eps < 0.5, f))
}

pub fn reconstruction(ctx: &mut Context) -> Result<Outcome> {
    let fx = ctx.fixture()?;
    let fs = fx.frames(&ctx.cfg)?;
    let tol = ctx.cfg.tolerance("reconstruction");
    let mu = &fx.space.mu;
    let battery = fx.battery(ctx.seed("reconstruction"), ctx.cfg.battery);
    let (mut fwd, mut bwd) = (0.0f64, 0.0f64);
    for f in &battery {
        let nf = norm2(f, mu);
        fwd = fwd.max(norm2(&(reconstruct(&fs.primal, &fs.dual, f, mu) - f), mu) / nf);
        bwd = bwd.max(norm2(&(reconstruct(&fs.dual, &fs.primal, f, mu) - f), mu) / nf);
    }
    let pb = frame_bounds(&fs.primal, mu, &battery);
    let db = frame_bounds(&fs.dual, mu, &battery);
    let mut f = Fields::default();
    f.num("residual_primal_synthesis", fwd)
        .num("residual_dual_synthesis", bwd)
        .num("tolerance", tol)
        .num("primal_lower", pb.lower)
        .num("primal_upper", pb.upper)
        .num("dual_lower", db.lower)
        .num("dual_upper", db.upper);
    let finite = [pb.lower, pb.upper, db.lower, db.upper].iter().all(|v| v.is_finite() && *v > 0.0);
    Ok(Outcome::new(fwd <= tol && bwd <= tol && finite, f))
}

pub fn properties(ctx: &mut Context) -> Result<Outcome> {
    let fx = ctx.fixture()?;
    let fs = fx.frames(&ctx.cfg)?;
    let tol = ctx.cfg.tolerance("band_leak");
    let r = check_frame_properties(&fx.space, &fx.spec, &fs.h, &fs.primal, &fs.dual);
    let mut f = Fields::default();
    f.num("primal_band_leak", r.primal_band_leak).num("dual_band_leak", r.dual_band_leak).num("tolerance", tol);
    for (tag, fits) in [("primal", &r.primal_decay), ("dual", &r.dual_decay)] {
        for fit in fits {
            f.num(format!("{tag}_decay_m{}_c", fit.m), fit.c);
        }
    }
    for (tag, bands) in [("primal", &r.primal_norms), ("dual", &r.dual_norms)] {
        for b in bands {
            f.num(format!("{tag}_norm_p{}_min", b.p), b.min).num(format!("{tag}_norm_p{}_max", b.p), b.max);
        }
    }
    Ok(Outcome::new(r.primal_band_leak <= tol && r.dual_band_leak <= tol, f))
}

pub fn theta(ctx: &mut Context) -> Result<Outcome> {
    if ctx.cfg.mode == HierarchyMode::Inhomogeneous {
        return Ok(Outcome::skip("compact frames use homogeneous windows"));
    }
    let fx = ctx.fixture()?;
    let cs = fx.compact(&ctx.cfg, ctx.seed("compact"))?;
    let mut f = Fields::default();
    f.num("radius", cs.theta.radius)
        .num("eps", cs.theta_report.eps)
        .num("achieved", cs.theta_report.achieved)
        .num("c_tilde", cs.speed.c_tilde);
    // kernels of Θ(δ√L) are supported in B(x, c̃ δ R)
    let (mut pass, mut worst) = (cs.theta_report.pass, 0.0f64);
    for j in fx.window.0..=fx.window.1 {
        let delta = ctx.cfg.b.powi(-j);
        let r = check_finite_speed(&fx.space, &fx.spec, |u| cs.theta.eval(u), Some(cs.theta.radius), delta, cs.speed.c_tilde)?;
        pass &= r.pass;
        worst = worst.max(r.effective_radius / r.bound);
    }
    f.num("max_support_ratio", worst);
    Ok(Outcome::new(pass, f))
}

pub fn compact(ctx: &mut Context) -> Result<Outcome> {
    if ctx.cfg.mode == HierarchyMode::Inhomogeneous {
        return Ok(Outcome::skip("compact frames use homogeneous windows"));
    }
    let fx = ctx.fixture()?;
    let cs = fx.compact(&ctx.cfg, ctx.seed("compact"))?;
    let tol = ctx.cfg.tolerance("atomic_residual");
    let worst = cs.compact_report.support.iter().map(|(_, r, b)| r / b).fold(0.0, f64::max);
    let mut f = Fields::default();
    f.num("d_norm", cs.dual_report.d_norm)
        .int("neumann_terms", cs.dual_report.neumann_terms as i64)
        .num("residual", cs.dual_report.residual)
        .num("tolerance", tol)
        .num("max_support_ratio", worst);
    Ok(Outcome::new(cs.dual_report.residual <= tol && cs.compact_report.support_pass, f))
}
