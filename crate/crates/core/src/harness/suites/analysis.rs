use rand::Rng;

use crate::addiag::{ad_norm, boundedness_probe, composition_constant, neumann_invert, omega, omega2, omega_matrix, product_weight_grid};
use crate::calculus::{level_symbol, Cutoff, CutoffKind};
use crate::error::Result;
use crate::harness::catalogue::Outcome;
use crate::harness::context::{Context, Fixture};
use crate::harness::report::Fields;
use crate::linalg::{rng, Mat, Vector};
use crate::seqspace::{check_frame_characterization, fs_maximal_probe, hardy_check, Family, Flavor, SpaceParams};

/// `max(a/b, b/a)`; infinite when either side is not a positive finite number.
fn change(a: f64, b: f64) -> f64 {
    if a > 0.0 && b > 0.0 && a.is_finite() && b.is_finite() {
        (a / b).max(b / a)
    } else {
        f64::INFINITY
    }
}

fn flavor_tag(f: Flavor) -> &'static str {
    match f {
        Flavor::Classical => "classical",
        Flavor::Tilde => "tilde",
    }
}

fn grid_key(s: f64, p: f64, q: f64, flavor: Flavor) -> String {
    format!("s{s}_p{p}_q{q}_{}", flavor_tag(flavor))
}

/// Characterization widths (`max/min` of coefficient norm over function norm)
/// at every grid point, plus the worst identity residual.
fn widths(ctx: &Context, fx: &Fixture, family: Family, salt: &str) -> Result<(Vec<(String, f64)>, f64)> {
    let fs = fx.frames(&ctx.cfg)?;
    let b = ctx.cfg.b;
    let phis = (Cutoff::new(CutoffKind::BandPass, b)?, Cutoff::new(CutoffKind::Partition, b)?);
    let battery = fx.battery(ctx.seed(salt), ctx.cfg.norm_battery);
    let g = &ctx.cfg.grid;
    let (mut out, mut residual) = (Vec::new(), 0.0f64);
    for &flavor in &g.flavors {
        for &s in &g.s {
            for &p in &g.p {
                for &q in &g.q {
                    let params = fx.params(s, p, q, flavor, family)?;
                    let r = check_frame_characterization(
                        &battery, &params, &fx.space, &fx.spec, &fs.h, &fs.primal, &fs.dual, (&phis.0, &phis.1), b,
                    )?;
                    residual = residual.max(r.identity_residual).max(r.swapped_identity_residual);
                    out.push((grid_key(s, p, q, flavor), r.width()));
                }
            }
        }
    }
    Ok((out, residual))
}

fn characterization(ctx: &mut Context, family: Family, salt: &str) -> Result<Outcome> {
    let fx = ctx.fixture()?;
    let tol = ctx.cfg.tolerance("identity");
    let (base, residual) = widths(ctx, &fx, family, salt)?;
    let mut f = Fields::default();
    f.num("identity_residual", residual).num("tolerance", tol);
    let mut pass = residual <= tol;
    for (k, w) in &base {
        f.num(format!("width_{k}"), *w);
        pass &= w.is_finite() && *w >= 1.0;
    }
    if ctx.cfg.refine {
        let fine = ctx.refined()?;
        let (refined, _) = widths(ctx, &fine, family, salt)?;
        let mut worst = 0.0f64;
        for ((k, w), (_, w2)) in base.iter().zip(&refined) {
            f.num(format!("refined_width_{k}"), *w2);
            worst = worst.max(change(*w, *w2));
        }
        f.num("max_width_change", worst);
        pass &= worst < 2.0;
    }
    Ok(Outcome::new(pass, f))
}

pub fn besov_characterization(ctx: &mut Context) -> Result<Outcome> {
    characterization(ctx, Family::Besov, "besov")
}

pub fn tl_characterization(ctx: &mut Context) -> Result<Outcome> {
    characterization(ctx, Family::TriebelLizorkin, "triebel-lizorkin")
}

pub fn maximal(ctx: &mut Context) -> Result<Outcome> {
    let fx = ctx.fixture()?;
    let b = ctx.cfg.b;
    let f0 = fx.battery(ctx.seed("maximal"), 1).remove(0);
    let family: Vec<Vector> = (fx.window.0..=fx.window.1)
        .map(|j| fx.spec.apply_fn(&f0, level_symbol(j, b, ctx.cfg.mode)))
        .collect();
    let mut f = Fields::default();
    let mut finite = true;
    for (p, q, t) in [(2.0, 2.0, 1.0), (2.0, 1.0, 0.5), (1.0, 2.0, 0.5), (3.0, 2.0, 1.5)] {
        let r = fs_maximal_probe(&family, p, q, t, &fx.space)?;
        finite &= r.ratio.is_finite();
        f.num(format!("ratio_p{p}_q{q}_t{t}"), r.ratio);
    }
    Ok(Outcome::new(finite, f))
}

pub fn hardy(ctx: &mut Context) -> Result<Outcome> {
    let b = ctx.cfg.b;
    let mut r = rng(ctx.seed("hardy"));
    let mut f = Fields::default();
    let mut pass = true;
    for q in [0.5, 1.0, 2.0] {
        for len in [10usize, 20, 40] {
            let mut worst = 0.0f64;
            let mut constant = 0.0;
            for _ in 0..ctx.cfg.samples {
                let a: Vec<f64> = (0..len).map(|_| r.gen::<f64>()).collect();
                let rep = hardy_check(&a, 0.5, q, b)?;
                pass &= rep.pass;
                worst = worst.max(rep.lhs_up.max(rep.lhs_down) / rep.rhs);
                constant = rep.constant;
            }
            f.num(format!("ratio_q{q}_len{len}"), worst);
            if len == 10 {
                f.num(format!("constant_q{q}"), constant);
            }
        }
    }
    Ok(Outcome::new(pass, f))
}

fn tl(fx: &Fixture, flavor: Flavor) -> Result<SpaceParams> {
    fx.params(0.0, 2.0, 2.0, flavor, Family::TriebelLizorkin)
}

pub fn omega_identities(ctx: &mut Context) -> Result<Outcome> {
    let fx = ctx.fixture()?;
    let fs = fx.frames(&ctx.cfg)?;
    let g = &fs.geometry;
    let n = g.len();
    let mut r = rng(ctx.seed("omega"));
    let (mut diag, mut coincide, mut monotone) = (0i64, 0.0f64, 0i64);
    for flavor in [Flavor::Classical, Flavor::Tilde] {
        let p = tl(&fx, flavor)?;
        for delta in [0.3, 0.7, 1.1] {
            diag += (0..n).filter(|&xi| omega(g, xi, xi, delta, &p) != 1.0).count() as i64;
        }
        for _ in 0..ctx.cfg.samples {
            let (xi, eta) = (r.gen_range(0..n), r.gen_range(0..n));
            let eps = r.gen_range(0.05..1.5);
            let (beta, gamma) = (eps * r.gen::<f64>(), eps * r.gen::<f64>());
            let w = omega(g, xi, eta, eps, &p);
            coincide = coincide.max((omega2(g, xi, eta, eps, eps, &p) - w).abs() / w);
            if w > omega2(g, xi, eta, beta, gamma, &p) * (1.0 + 1e-12) {
                monotone += 1;
            }
        }
    }
    let mut f = Fields::default();
    f.int("diagonal_violations", diag).num("max_coincidence_error", coincide).int("monotonicity_violations", monotone);
    Ok(Outcome::new(diag == 0 && coincide <= 1e-14 && monotone == 0, f))
}

const W_GRID: [f64; 3] = [0.3, 0.7, 1.1];

fn w_max(ctx: &Context, fx: &Fixture) -> Result<(f64, usize)> {
    let fs = fx.frames(&ctx.cfg)?;
    let reps = product_weight_grid(&fs.geometry, &W_GRID, &tl(fx, Flavor::Classical)?);
    Ok((reps.iter().map(|r| r.max_ratio).fold(0.0, f64::max), reps.len()))
}

pub fn w_bound(ctx: &mut Context) -> Result<Outcome> {
    let fx = ctx.fixture()?;
    let (m, triples) = w_max(ctx, &fx)?;
    let mut f = Fields::default();
    f.int("triples", triples as i64).num("max_ratio", m);
    let mut pass = m.is_finite();
    if ctx.cfg.refine {
        let fine = ctx.refined()?;
        let (m2, _) = w_max(ctx, &fine)?;
        f.num("refined_max_ratio", m2).num("change", change(m, m2));
        pass &= change(m, m2) < 2.0;
    }
    Ok(Outcome::new(pass, f))
}

const PROBE_DELTA: f64 = 0.5;

/// Max ratio per `(family, flavor, grid point)` for a random operator with `‖A‖_δ = 1`.
fn probe(ctx: &Context, fx: &Fixture, salt: &str) -> Result<Vec<(String, f64)>> {
    let fs = fx.frames(&ctx.cfg)?;
    let n = fs.h.len();
    let mut r = rng(ctx.seed(salt));
    let battery: Vec<Vector> = (0..ctx.cfg.sequence_battery).map(|_| Vector::from_fn(n, |_, _| r.gen_range(-1.0..1.0))).collect();
    let signs = Mat::from_fn(n, n, |_, _| r.gen_range(-1.0..1.0));
    let mut out = Vec::new();
    let g = &ctx.cfg.grid;
    for &s in &g.s {
        for &p in &g.p {
            for &q in &g.q {
                let params = fx.params(s, p, q, Flavor::Classical, Family::TriebelLizorkin)?;
                let w = omega_matrix(&fs.geometry, PROBE_DELTA, PROBE_DELTA, &params);
                let mut a = w.component_mul(&signs);
                a /= ad_norm(&a, &fs.geometry, PROBE_DELTA, &params)?.value;
                let rep = boundedness_probe(&a, &fs.geometry, &fx.space, &fs.h, &params, PROBE_DELTA, &battery)?;
                for (family, flavor, _, ratio) in rep.entries {
                    let fam = match family {
                        Family::Besov => "b",
                        Family::TriebelLizorkin => "f",
                    };
                    out.push((format!("{fam}_{}", grid_key(s, p, q, flavor)), ratio));
                }
            }
        }
    }
    Ok(out)
}

pub fn boundedness(ctx: &mut Context) -> Result<Outcome> {
    let fx = ctx.fixture()?;
    let base = probe(ctx, &fx, "probe")?;
    let mut f = Fields::default();
    let mut pass = true;
    for (k, v) in &base {
        f.num(format!("ratio_{k}"), *v);
        pass &= v.is_finite();
    }
    if ctx.cfg.refine {
        let fine = ctx.refined()?;
        let refined = probe(ctx, &fine, "probe")?;
        let worst = base.iter().zip(&refined).map(|((_, a), (_, b))| change(*a, *b)).fold(0.0, f64::max);
        f.num("max_change", worst);
        pass &= worst < 2.0;
    }
    Ok(Outcome::new(pass, f))
}

pub fn neumann(ctx: &mut Context) -> Result<Outcome> {
    let fx = ctx.fixture()?;
    let fs = fx.frames(&ctx.cfg)?;
    let tol = ctx.cfg.tolerance("neumann_residual");
    let g = &fs.geometry;
    let p = tl(&fx, Flavor::Classical)?;
    let n = g.len();
    let eps = 0.6;
    let a = Mat::identity(n, n) + omega_matrix(g, eps, eps, &p) * 0.01;
    let c = composition_constant(g, eps, eps / 2.0, &p);
    let (_, rep) = neumann_invert(&a, g, &p, eps, None, 0.5 / c)?;
    let mut f = Fields::default();
    f.num("delta", rep.delta)
        .num("c_star", rep.c_star)
        .int("terms", rep.terms as i64)
        .num("residual", rep.residual)
        .num("tolerance", tol)
        .int("decay_ok", rep.decay_ok as i64)
        .num("inverse_ad_norm", rep.inverse_ad_norm);
    Ok(Outcome::new(rep.residual <= tol && rep.decay_ok, f))
}
