use rand::Rng;

use crate::error::Result;
use crate::harness::catalogue::Outcome;
use crate::harness::context::{Context, Fixture, THETA_ORDER_K};
use crate::harness::report::Fields;
use crate::linalg::{rng, Vector};
use crate::molecules::{
    atom_orders, atomic_decompose, compute_orders, gram as gram_matrix, gram_certificate, molecular_analysis, molecular_synthesis,
    validate_atoms, validate_molecule, MoleculeCertificate, MoleculeKind,
};
use crate::multiplier::{boundedness_report, check_mihlin, mihlin_threshold, Symbol};
use crate::seqspace::{Family, Flavor, SpaceParams};
use crate::space::HierarchyMode;

/// Budget for the Gram matrix certificate.
pub const GRAM_BUDGET: f64 = 100.0;
pub const GRAM_DELTAS: [f64; 7] = [0.05, 0.1, 0.2, 0.3, 0.5, 0.7, 1.0];

fn base_params(fx: &Fixture) -> Result<SpaceParams> {
    fx.params(0.0, 2.0, 2.0, Flavor::Classical, Family::TriebelLizorkin)
}

fn record_certificate(f: &mut Fields, tag: &str, c: &MoleculeCertificate) {
    f.num(format!("{tag}_max_constant"), c.max_constant)
        .num(format!("{tag}_c_star"), c.c_star)
        .num(format!("{tag}_factorization_residual"), c.factorization_residual);
    for cond in &c.conditions {
        f.num(format!("{tag}_{}_nu{}", cond.name, cond.nu), cond.constant);
    }
}

pub fn molecules(ctx: &mut Context) -> Result<Outcome> {
    let fx = ctx.fixture()?;
    let fs = fx.frames(&ctx.cfg)?;
    let p = base_params(&fx)?;
    let decay = compute_orders(&p).m_threshold + 1.0;
    let mut f = Fields::default();
    f.num("decay", decay);
    let mut pass = true;
    for (tag, family, kind) in
        [("synthesis", &fs.primal.elements, MoleculeKind::Synthesis), ("analysis", &fs.dual.elements, MoleculeKind::Analysis)]
    {
        let c = validate_molecule(family, kind, &p, &fx.space, &fx.spec, &fs.h, decay, None, 1.0)?;
        record_certificate(&mut f, tag, &c);
        let finite = c.max_constant.is_finite() && c.max_constant > 0.0;
        pass &= finite;
        if finite {
            let scaled = family * c.c_star;
            let c2 = validate_molecule(&scaled, kind, &p, &fx.space, &fx.spec, &fs.h, decay, None, 1.0)?;
            f.int(format!("{tag}_scaled_pass"), c2.pass as i64);
            pass &= c2.pass;
        }
    }
    Ok(Outcome::new(pass, f))
}

pub fn gram(ctx: &mut Context) -> Result<Outcome> {
    let fx = ctx.fixture()?;
    let fs = fx.frames(&ctx.cfg)?;
    let p = base_params(&fx)?;
    let a = gram_matrix(&fs.primal.elements, &fs.dual.elements, &fx.space.mu)?;
    let cert = gram_certificate(&a, &fs.geometry, &p, &GRAM_DELTAS, GRAM_BUDGET)?;
    let mut f = Fields::default();
    for (delta, c) in &cert.scan {
        f.num(format!("constant_delta{delta}"), *c);
    }
    if let Some((delta, c)) = cert.best {
        f.num("best_delta", delta).num("best_constant", c);
    }
    f.num("budget", GRAM_BUDGET);
    Ok(Outcome::new(cert.pass(), f))
}

pub fn synthesis(ctx: &mut Context) -> Result<Outcome> {
    let fx = ctx.fixture()?;
    let fs = fx.frames(&ctx.cfg)?;
    let phi = ctx.phi()?;
    let b = ctx.cfg.b;
    let mut r = rng(ctx.seed("synthesis"));
    let n = fs.h.len();
    let mut f = Fields::default();
    let mut finite = true;
    for s in [0.0, 1.0] {
        let p = fx.params(s, 2.0, 2.0, Flavor::Classical, Family::TriebelLizorkin)?;
        let decay = compute_orders(&p).m_threshold + 1.0;
        let c = validate_molecule(&fs.primal.elements, MoleculeKind::Synthesis, &p, &fx.space, &fx.spec, &fs.h, decay, None, 1.0)?;
        let family = &fs.primal.elements * c.c_star;
        let mut worst = 0.0f64;
        for _ in 0..ctx.cfg.sequence_battery {
            let t = Vector::from_fn(n, |_, _| r.gen_range(-1.0..1.0));
            let (_, ratio) = molecular_synthesis(&t, &family, &p, &fx.space, &fx.spec, &fs.h, &phi, b)?;
            worst = worst.max(ratio);
        }
        finite &= worst.is_finite();
        f.num(format!("max_ratio_s{s}"), worst);
    }
    Ok(Outcome::new(finite, f))
}

pub fn analysis(ctx: &mut Context) -> Result<Outcome> {
    let fx = ctx.fixture()?;
    let fs = fx.frames(&ctx.cfg)?;
    let phi = ctx.phi()?;
    let tol = ctx.cfg.tolerance("identity");
    let p = base_params(&fx)?;
    let decay = compute_orders(&p).m_threshold + 1.0;
    let c = validate_molecule(&fs.dual.elements, MoleculeKind::Analysis, &p, &fx.space, &fx.spec, &fs.h, decay, None, 1.0)?;
    let family = &fs.dual.elements * c.c_star;
    let (mut diff, mut worst) = (0.0f64, 0.0f64);
    for g in fx.battery(ctx.seed("analysis"), ctx.cfg.battery) {
        let (coeffs, rep) =
            molecular_analysis(&g, &family, &fs.primal, &fs.dual, &p, &fx.space, &fx.spec, &fs.h, &phi, ctx.cfg.b)?;
        diff = diff.max(rep.direct_diff / coeffs.amax().max(1.0));
        worst = worst.max(rep.ratio);
    }
    let mut f = Fields::default();
    f.num("max_direct_difference", diff).num("tolerance", tol).num("max_ratio", worst);
    Ok(Outcome::new(diff <= tol && worst.is_finite(), f))
}

pub fn atomic(ctx: &mut Context) -> Result<Outcome> {
    if ctx.cfg.mode == HierarchyMode::Inhomogeneous {
        return Ok(Outcome::skip("compact frames use homogeneous windows"));
    }
    let fx = ctx.fixture()?;
    let fs = fx.frames(&ctx.cfg)?;
    let cs = fx.compact(&ctx.cfg, ctx.seed("compact"))?;
    let tol = ctx.cfg.tolerance("atomic_residual");
    let p = base_params(&fx)?;
    let orders = atom_orders(&p);
    let mut f = Fields::default();
    f.int("k", orders.0 as i64).int("k_tilde", orders.1 as i64);
    if orders.0 as usize > THETA_ORDER_K {
        return Ok(Outcome::new(false, f).with_note("approximant vanishes to too low an order at the origin"));
    }
    // supp θ_ξ ⊂ B(ξ, c̃Rb^{-j}); the certificate measures radii in units of δ_j
    let scale = fs.h.levels.iter().map(|net| net.ell / net.delta).fold(0.0, f64::max);
    let support_budget = cs.speed.c_tilde * cs.theta.radius * scale;
    let c = validate_atoms(&cs.compact.elements, &p, &fx.space, &fx.spec, &fs.h, orders, None, 1.0, support_budget)?;
    let scaled = &cs.compact.elements * c.c_star;
    let c2 = validate_atoms(&scaled, &p, &fx.space, &fx.spec, &fs.h, orders, None, 1.0, support_budget)?;
    f.num("max_constant", c.max_constant)
        .num("c_star", c.c_star)
        .num("support_constant", c.support_constant)
        .num("support_budget", support_budget)
        .int("certificate_pass", c2.pass as i64);
    let phi = ctx.phi()?;
    let (mut residual, mut coef, mut synth) = (0.0f64, 0.0f64, 0.0f64);
    for g in fx.battery(ctx.seed("atomic"), ctx.cfg.battery) {
        let d = atomic_decompose(&g, &cs.compact, &cs.compact_dual, c.c_star, &p, &fx.space, &fx.spec, &fs.h, &phi, ctx.cfg.b)?;
        residual = residual.max(d.residual);
        coef = coef.max(d.coefficient_ratio);
        synth = synth.max(d.synthesis_ratio);
    }
    f.num("max_residual", residual)
        .num("tolerance", tol)
        .num("max_coefficient_ratio", coef)
        .num("max_synthesis_ratio", synth);
    Ok(Outcome::new(residual <= tol && c2.pass, f))
}

const MIHLIN_SYMBOLS: [&str; 6] = ["one", "heat", "rational", "linear", "oscillatory:1", "oscillatory:4"];

/// Smallest integer order above the unrelaxed threshold.
fn order_for(p: &SpaceParams) -> usize {
    mihlin_threshold(p, false).floor() as usize + 1
}

pub fn mihlin(ctx: &mut Context) -> Result<Outcome> {
    let fx = ctx.fixture()?;
    let p = base_params(&fx)?;
    let ell = order_for(&p);
    let mut f = Fields::default();
    f.int("ell", ell as i64);
    let mut finite = true;
    for name in MIHLIN_SYMBOLS {
        let m = check_mihlin(&Symbol::resolve(name)?, ell, &p, &fx.space, &fx.spec, ctx.cfg.b, ctx.cfg.ahlfors_factor)?;
        finite &= m.mihlin_sup.is_finite();
        f.num(format!("{name}_sup"), m.mihlin_sup)
            .int(format!("{name}_range_restricted"), m.range_restricted as i64)
            .num(format!("{name}_refinement_change"), m.refinement_change);
        if name == "one" {
            f.num("ahlfors_width", m.ahlfors_width).int("relaxed", m.relaxed as i64);
        }
    }
    Ok(Outcome::new(finite, f))
}

fn tag(family: Family, flavor: Flavor) -> &'static str {
    match (family, flavor) {
        (Family::TriebelLizorkin, Flavor::Classical) => "f",
        (Family::TriebelLizorkin, Flavor::Tilde) => "f_tilde",
        (Family::Besov, Flavor::Classical) => "b",
        (Family::Besov, Flavor::Tilde) => "b_tilde",
    }
}

struct MultiplierRatios {
    /// `(key, ratio)` per grid point and space.
    ratios: Vec<(String, f64)>,
    /// Largest L² ratio at (0,2,2) stays under the sup of the symbol on the spectrum.
    ceiling: bool,
    l2: f64,
    route: f64,
}

fn multiplier_ratios(ctx: &Context, fx: &Fixture, symbol: &Symbol) -> Result<MultiplierRatios> {
    let fs = fx.frames(&ctx.cfg)?;
    let phi = ctx.phi()?;
    let b = ctx.cfg.b;
    let battery = fx.battery(ctx.seed("multiplier"), ctx.cfg.battery);
    let sup = (fx.spec.nullspace_dim..fx.spec.n()).map(|i| symbol.eval(fx.spec.sqrt_eigenvalue(i)).abs()).fold(0.0, f64::max);
    let mut out = Vec::new();
    let mut route = 0.0f64;
    let g = &ctx.cfg.grid;
    for &s in &g.s {
        for &p in &g.p {
            for &q in &g.q {
                let params = fx.params(s, p, q, Flavor::Classical, Family::TriebelLizorkin)?;
                let rep = boundedness_report(symbol, &params, &battery, &fx.space, &fx.spec, &fs.primal, &fs.dual, &phi, b)?;
                route = route.max(rep.max_route_diff);
                for (family, flavor, r) in rep.entries {
                    out.push((format!("{}_s{s}_p{p}_q{q}", tag(family, flavor)), r));
                }
            }
        }
    }
    let params = fx.params(0.0, 2.0, 2.0, Flavor::Classical, Family::TriebelLizorkin)?;
    let rep = boundedness_report(symbol, &params, &battery, &fx.space, &fx.spec, &fs.primal, &fs.dual, &phi, b)?;
    let l2 = [rep.ratio(Family::Besov, Flavor::Classical), rep.ratio(Family::TriebelLizorkin, Flavor::Classical)]
        .into_iter()
        .flatten()
        .fold(0.0, f64::max);
    Ok(MultiplierRatios { ratios: out, ceiling: l2 <= sup + 1e-9, l2, route: route.max(rep.max_route_diff) })
}

pub fn multiplier(ctx: &mut Context) -> Result<Outcome> {
    let fx = ctx.fixture()?;
    let symbol = Symbol::resolve("rational")?;
    let p = base_params(&fx)?;
    let m = check_mihlin(&symbol, order_for(&p), &p, &fx.space, &fx.spec, ctx.cfg.b, ctx.cfg.ahlfors_factor)?;
    let tol = ctx.cfg.tolerance("route");
    let MultiplierRatios { ratios: base, ceiling, l2, route } = multiplier_ratios(ctx, &fx, &symbol)?;
    let mut f = Fields::default();
    f.num("mihlin_sup", m.mihlin_sup)
        .num("spectrum_sup", m.spectrum_sup)
        .num("l2_ratio", l2)
        .num("max_route_difference", route)
        .num("tolerance", tol);
    let mut pass = ceiling && route <= tol;
    for (k, v) in &base {
        f.num(format!("ratio_{k}"), *v);
        pass &= v.is_finite();
    }
    if ctx.cfg.refine {
        let fine = ctx.refined()?;
        let MultiplierRatios { ratios: refined, route: route2, .. } = multiplier_ratios(ctx, &fine, &symbol)?;
        let worst = base
            .iter()
            .zip(&refined)
            .map(|((_, a), (_, b))| if *a > 0.0 && *b > 0.0 { (a / b).max(b / a) } else { f64::INFINITY })
            .fold(0.0, f64::max);
        f.num("max_change", worst).num("refined_route_difference", route2);
        pass &= worst < 2.0 && route2 <= tol;
    }
    Ok(Outcome::new(pass, f))
}

pub fn oscillatory(ctx: &mut Context) -> Result<Outcome> {
    let fx = ctx.fixture()?;
    let fs = fx.frames(&ctx.cfg)?;
    let phi = ctx.phi()?;
    let base = base_params(&fx)?;
    let params = fx.params(1.0, 1.0, 2.0, Flavor::Classical, Family::TriebelLizorkin)?;
    let battery = fx.battery(ctx.seed("oscillatory"), ctx.cfg.battery);
    let mut f = Fields::default();
    let mut finite = true;
    for a in [0.5, 1.0, 2.0, 4.0, 8.0] {
        let symbol = Symbol::oscillatory(a);
        let m = check_mihlin(&symbol, order_for(&base), &base, &fx.space, &fx.spec, ctx.cfg.b, ctx.cfg.ahlfors_factor)?;
        let rep = boundedness_report(&symbol, &params, &battery, &fx.space, &fx.spec, &fs.primal, &fs.dual, &phi, ctx.cfg.b)?;
        let r = rep.ratio(Family::TriebelLizorkin, Flavor::Classical).unwrap_or(f64::NAN);
        finite &= r.is_finite();
        f.num(format!("a{a}_mihlin_sup"), m.mihlin_sup).num(format!("a{a}_ratio"), r);
    }
    Ok(Outcome::new(finite, f))
}
