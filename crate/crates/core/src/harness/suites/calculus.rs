use crate::calculus::{apply_symbol, calibrate_speed, level_symbol, littlewood_paley_sum, measure_localization, psi};
use crate::error::Result;
use crate::harness::catalogue::Outcome;
use crate::harness::context::Context;
use crate::harness::report::Fields;
use crate::linalg::norm2;

pub fn telescoping(ctx: &mut Context) -> Result<Outcome> {
    let fx = ctx.fixture()?;
    let tol = ctx.cfg.tolerance("telescoping");
    let mut worst = 0.0f64;
    for f in fx.battery(ctx.seed("telescoping"), ctx.cfg.battery) {
        let g = littlewood_paley_sum(&fx.spec, &f, ctx.cfg.b, fx.window, ctx.cfg.mode);
        worst = worst.max(norm2(&(&g - &f), &fx.space.mu) / norm2(&f, &fx.space.mu));
    }
    let mut fields = Fields::default();
    fields.num("max_residual", worst).num("tolerance", tol);
    Ok(Outcome::new(worst <= tol, fields))
}

pub fn commutativity(ctx: &mut Context) -> Result<Outcome> {
    let fx = ctx.fixture()?;
    let tol = ctx.cfg.tolerance("commutativity");
    let b = ctx.cfg.b;
    let mut worst = 0.0f64;
    for f in fx.battery(ctx.seed("commutativity"), ctx.cfg.battery) {
        for j in fx.window.0..=fx.window.1 {
            let piece = level_symbol(j, b, ctx.cfg.mode);
            let heat = |u: f64| (-u * u).exp();
            let a = fx.spec.apply_fn(&fx.spec.apply_fn(&f, &piece), heat);
            let c = fx.spec.apply_fn(&fx.spec.apply_fn(&f, heat), &piece);
            worst = worst.max((&a - &c).amax() / f.amax());
        }
    }
    let mut fields = Fields::default();
    fields.num("max_difference", worst).num("tolerance", tol);
    Ok(Outcome::new(worst <= tol, fields))
}

pub fn kernel_symmetry(ctx: &mut Context) -> Result<Outcome> {
    let fx = ctx.fixture()?;
    let tol = ctx.cfg.tolerance("kernel_symmetry");
    let b = ctx.cfg.b;
    let mut worst = 0.0f64;
    for j in fx.window.0..=fx.window.1 {
        let k = apply_symbol(&fx.spec, |u| psi(u, b), b.powi(-j));
        let scale = k.table.amax().max(f64::MIN_POSITIVE);
        worst = worst.max((&k.table - k.table.transpose()).amax() / scale);
    }
    let mut fields = Fields::default();
    fields.num("max_asymmetry", worst).num("tolerance", tol);
    Ok(Outcome::new(worst <= tol, fields))
}

pub fn localization(ctx: &mut Context) -> Result<Outcome> {
    let fx = ctx.fixture()?;
    let b = ctx.cfg.b;
    let orders = [1u32, 2, 3];
    let mut worst = [0.0f64; 3];
    for j in fx.window.0..=fx.window.1 {
        let delta = b.powi(-j);
        let k = apply_symbol(&fx.spec, |u| psi(u, b), delta);
        let r = measure_localization(&k, delta, &orders, &fx.space);
        for (w, a) in worst.iter_mut().zip(&r.a_eff) {
            *w = w.max(*a);
        }
    }
    let mut fields = Fields::default();
    for (n, a) in orders.iter().zip(worst) {
        fields.num(format!("a_eff_n{n}"), a);
    }
    Ok(Outcome::new(worst.iter().all(|a| a.is_finite()), fields))
}

pub fn finite_speed(ctx: &mut Context) -> Result<Outcome> {
    let fx = ctx.fixture()?;
    let deltas: Vec<f64> = (fx.window.0..=fx.window.1).map(|j| ctx.cfg.b.powi(-j)).collect();
    let cal = calibrate_speed(&fx.space, &fx.spec, &deltas)?;
    let mut fields = Fields::default();
    fields.num("big_c", cal.big_c).num("c_star", cal.c_star).num("c_tilde", cal.c_tilde);
    Ok(Outcome::new(cal.c_tilde.is_finite(), fields))
}
