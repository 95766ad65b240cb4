use crate::error::Result;
use crate::harness::catalogue::Outcome;
use crate::harness::context::Context;
use crate::harness::report::Fields;
use crate::space::{
    build_hierarchy, check_discrete_sum, check_net, check_net_count, check_one_sided_sum, check_peetre_integrals,
    NetHierarchy,
};

fn hierarchy(ctx: &mut Context) -> Result<NetHierarchy> {
    let fx = ctx.fixture()?;
    build_hierarchy(&fx.space, ctx.cfg.b, ctx.cfg.gamma, fx.window, ctx.cfg.mode)
}

/// `(δ, centres)` of every level net plus the full point set at the smallest distance.
fn nets(ctx: &mut Context) -> Result<Vec<(f64, Vec<usize>)>> {
    let fx = ctx.fixture()?;
    let h = hierarchy(ctx)?;
    let mut out: Vec<(f64, Vec<usize>)> = h.levels.iter().map(|n| (n.delta, n.centers.clone())).collect();
    out.push((fx.space.min_positive_distance(), (0..fx.space.n()).collect()));
    Ok(out)
}

pub fn doubling(ctx: &mut Context) -> Result<Outcome> {
    let fx = ctx.fixture()?;
    let p = &fx.profile;
    let mut f = Fields::default();
    f.num("c0", p.c0).num("d", p.d).num("c2", p.c2).num("dstar", p.dstar).int("truncated", p.truncated as i64);
    Ok(Outcome::new(p.c0.is_finite() && p.d > 0.0, f))
}

pub fn nets_partition(ctx: &mut Context) -> Result<Outcome> {
    let fx = ctx.fixture()?;
    let h = hierarchy(ctx)?;
    let violations: usize = h.levels.iter().map(|n| check_net(&fx.space, n).len()).sum();
    let mut f = Fields::default();
    f.int("levels", h.levels.len() as i64).int("indices", h.len() as i64).int("violations", violations as i64);
    Ok(Outcome::new(violations == 0, f))
}

pub fn net_count(ctx: &mut Context) -> Result<Outcome> {
    let fx = ctx.fixture()?;
    let (mut checks, mut failures, mut worst) = (0i64, 0i64, 0.0f64);
    for (delta, centers) in nets(ctx)? {
        for k in [1.0, 2.0, 4.0] {
            let r = check_net_count(&fx.space, &centers, delta, k * delta, &fx.profile)?;
            checks += 1;
            failures += !r.pass as i64;
            worst = worst.max(r.lhs_max as f64 / r.rhs);
        }
    }
    let mut f = Fields::default();
    f.int("checks", checks).int("violations", failures).num("max_ratio", worst);
    Ok(Outcome::new(failures == 0, f))
}

pub fn one_sided_sum(ctx: &mut Context) -> Result<Outcome> {
    let fx = ctx.fixture()?;
    let d = fx.profile.d;
    let (mut checks, mut failures, mut worst) = (0i64, 0i64, 0.0f64);
    for (delta, centers) in nets(ctx)? {
        for sigma in [d + 0.5, d + 1.0, d + 2.0] {
            for k in [1.0, 2.0] {
                let r = check_one_sided_sum(&fx.space, &centers, delta, k * delta, sigma, &fx.profile)?;
                checks += 1;
                failures += !r.pass as i64;
                worst = worst.max(r.lhs_max / r.rhs);
            }
        }
    }
    let mut f = Fields::default();
    f.int("checks", checks).int("violations", failures).num("max_ratio", worst);
    Ok(Outcome::new(failures == 0, f))
}

pub fn discrete_sum(ctx: &mut Context) -> Result<Outcome> {
    let fx = ctx.fixture()?;
    let sigma = fx.profile.d + 1.0;
    let (mut checks, mut failures, mut worst, mut explicit) = (0i64, 0i64, 0.0f64, 0.0f64);
    for (delta, centers) in nets(ctx)? {
        for (k1, k2) in [(1.0, 1.0), (1.0, 2.0), (2.0, 4.0)] {
            let r = check_discrete_sum(&fx.space, &centers, delta, sigma, k1 * delta, k2 * delta, &fx.profile)?;
            checks += 1;
            failures += !r.pass as i64;
            worst = worst.max(r.ratio);
            explicit = r.explicit;
        }
    }
    let mut f = Fields::default();
    f.int("checks", checks).int("violations", failures).num("max_ratio", worst).num("explicit", explicit);
    Ok(Outcome::new(failures == 0, f))
}

pub fn peetre(ctx: &mut Context) -> Result<Outcome> {
    let fx = ctx.fixture()?;
    let sigma = fx.profile.d + 1.0;
    let unit = fx.space.min_positive_distance();
    let (mut pass, mut single, mut two) = (true, 0.0f64, 0.0f64);
    for (k1, k2) in [(1.0, 1.0), (1.0, 4.0), (4.0, 2.0)] {
        let r = check_peetre_integrals(&fx.space, sigma, sigma, k1 * unit, k2 * unit, &fx.profile)?;
        pass &= r.pass;
        single = single.max(r.single / r.single_explicit);
        two = two.max(r.two_term);
    }
    let mut f = Fields::default();
    f.num("single_ratio", single).num("two_term", two);
    Ok(Outcome::new(pass, f))
}
