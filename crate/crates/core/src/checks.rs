//! Runnable invariant suites, one per module family. The CLI `check`
//! subcommand executes these and maps any failure to a nonzero exit code.
//! All randomness is seeded, so runs are reproducible byte for byte.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::extremal::ParametricExtremal;
use crate::field::{ClosureField, Domain2, Field2};
use crate::grid::Grid2D;
use crate::lorentz::{self, CausalType, Grad2, Vec3L};
use crate::profile::{BoundaryData, RadialProfile};
use crate::resistance::{self, LagrangianSpec};
use crate::ssc;
use crate::tol;
use crate::variational;

/// Which invariant family to run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Core,
    Resistance,
    Variational,
    Ssc,
    All,
}

impl Suite {
    pub fn parse(name: &str) -> Option<Suite> {
        match name {
            "core" => Some(Suite::Core),
            "resistance" => Some(Suite::Resistance),
            "variational" => Some(Suite::Variational),
            "ssc" => Some(Suite::Ssc),
            "all" => Some(Suite::All),
            _ => None,
        }
    }
}

/// One named invariant check.
#[derive(Debug, Clone)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl CheckOutcome {
    fn of(name: &'static str, passed: bool, detail: String) -> Self {
        CheckOutcome {
            name,
            passed,
            detail,
        }
    }
}

/// Environment hook that corrupts a tolerance, for exercising the failure
/// exit path end to end.
pub const CORRUPT_TOL_ENV: &str = "MINKRES_CORRUPT_TOL";

/// Run a suite; `All` concatenates every family in a fixed order.
pub fn run_suite(suite: Suite) -> Vec<CheckOutcome> {
    let mut out = match suite {
        Suite::Core => core_suite(),
        Suite::Resistance => resistance_suite(),
        Suite::Variational => variational_suite(),
        Suite::Ssc => ssc_suite(),
        Suite::All => {
            let mut all = core_suite();
            all.extend(resistance_suite());
            all.extend(variational_suite());
            all.extend(ssc_suite());
            all
        }
    };
    if std::env::var(CORRUPT_TOL_ENV).is_ok() {
        out.push(CheckOutcome::of(
            "corrupted-tolerance hook",
            false,
            format!("{CORRUPT_TOL_ENV} is set: forcing an invariant failure"),
        ));
    }
    out
}

fn rng() -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(0x6d6e6b72)
}

fn random_spacelike_grad(rng: &mut ChaCha8Rng) -> Grad2<f64> {
    let d: f64 = rng.gen_range(0.0f64..0.98).sqrt();
    let phi: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
    Grad2::new(d * phi.cos(), d * phi.sin())
}

fn random_timelike(rng: &mut ChaCha8Rng) -> Vec3L<f64> {
    let x: f64 = rng.gen_range(-2.0..2.0);
    let y: f64 = rng.gen_range(-2.0..2.0);
    let bump: f64 = rng.gen_range(0.01..2.0);
    let sign = if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
    Vec3L::new(x, y, sign * ((x * x + y * y).sqrt() + bump))
}

fn canonical_profiles() -> Vec<RadialProfile<f64>> {
    vec![
        RadialProfile::flat(1.0).unwrap(),
        RadialProfile::hyperbolic_cap(1.0, 1.0).unwrap(),
        RadialProfile::hyperbolic_cap(1.0, 0.1).unwrap(),
        RadialProfile::cone(1.0, 0.5).unwrap(),
        RadialProfile::cone(1.0, 0.9).unwrap(),
        RadialProfile::truncated_cone(1.0, 0.5, 4).unwrap(),
        RadialProfile::truncated_cap(1.0, 0.5, 4).unwrap(),
    ]
}

fn extremal_profile() -> RadialProfile<f64> {
    let b = BoundaryData::new(1.0, 0.5).unwrap();
    ParametricExtremal::solve(&b, tol::ROOT_TOL)
        .unwrap()
        .to_profile()
}

fn core_suite() -> Vec<CheckOutcome> {
    let mut out = Vec::new();
    let mut rng = rng();

    // unit normal: timelike, future-oriented, ⟨N,N⟩ = −1
    let mut worst = 0.0f64;
    let mut ok = true;
    for _ in 0..1000 {
        let du = random_spacelike_grad(&mut rng);
        let g = lorentz::graph_point(du).unwrap();
        worst = worst.max((g.normal.inner(&g.normal) + 1.0).abs());
        ok &= g.normal.classify() == CausalType::Timelike && g.normal.is_future_timelike();
        ok &= g.cosh_theta >= 1.0;
    }
    out.push(CheckOutcome::of(
        "graph normal unit-timelike",
        ok && worst <= tol::UNIT_NORM_TOL,
        format!("max |<N,N>+1| = {worst:.3e} over 1000 spacelike gradients"),
    ));

    // reverse Cauchy-Schwarz for timelike pairs
    let mut ok = true;
    for _ in 0..1000 {
        let v = random_timelike(&mut rng);
        let w = random_timelike(&mut rng);
        ok &= v.inner(&w).powi(2) > v.inner(&v) * w.inner(&w);
    }
    out.push(CheckOutcome::of(
        "reverse Cauchy-Schwarz",
        ok,
        "<v,w>^2 > <v,v><w,w> on 1000 timelike pairs".into(),
    ));

    // cosh(theta) monotone divergence toward the light cone
    let mut prev = 0.0;
    let mut ok = true;
    for k in 1..45 {
        let du = Grad2::new(1.0 - (2.0f64).powi(-k), 0.0);
        let c = lorentz::graph_point(du).unwrap().cosh_theta;
        ok &= c > prev;
        prev = c;
    }
    out.push(CheckOutcome::of(
        "cosh theta diverges at light cone",
        ok && prev > 1e4,
        format!("cosh theta reaches {prev:.3e} along Du_k = (1-2^-k, 0)"),
    ));

    // reflection preserves the unit timelike norm and the frame split
    let mut worst = 0.0f64;
    for _ in 0..1000 {
        let du = random_spacelike_grad(&mut rng);
        let vf = lorentz::reflect_particle(du).unwrap();
        worst = worst.max((vf.inner(&vf) + 1.0).abs());
        if du.norm() > 1e-8 {
            let (t, _) = lorentz::graph_frame(du).unwrap();
            let cosh = 1.0 / (1.0 - du.norm_sq()).sqrt();
            let sinh = (cosh * cosh - 1.0).sqrt();
            let sum = vf.add(&Vec3L::e3());
            let expect = t.scale(-2.0 * sinh);
            worst = worst.max((sum.x - expect.x).abs() + (sum.z - expect.z).abs());
        }
    }
    out.push(CheckOutcome::of(
        "reflection involution",
        worst <= 1e-9,
        format!("max deviation {worst:.3e}"),
    ));

    // profile eval/deriv consistency + kink continuity + height bound
    let mut worst = 0.0f64;
    for p in canonical_profiles() {
        worst = worst.max(p.fd_consistency_max_dev(1000));
    }
    out.push(CheckOutcome::of(
        "profile eval/deriv consistency",
        worst <= tol::PROFILE_FD_TOL,
        format!("max FD deviation {worst:.3e}"),
    ));

    let mut ok = true;
    for n in [2u32, 3, 8, 32] {
        let tc: RadialProfile<f64> = RadialProfile::truncated_cone(1.0, 0.5, n).unwrap();
        let th: RadialProfile<f64> = RadialProfile::truncated_cap(1.0, 0.5, n).unwrap();
        ok &= (tc.eval(tc.kinks()[0]) - 0.5).abs() <= tol::KINK_CONTINUITY_TOL;
        ok &= (th.eval(th.kinks()[0]) - 0.5).abs() <= tol::KINK_CONTINUITY_TOL;
    }
    out.push(CheckOutcome::of(
        "kink continuity",
        ok,
        "value match at knee within 1e-12".into(),
    ));

    let ok = [
        RadialProfile::flat(1.0).unwrap(),
        RadialProfile::cone(1.0, 0.9).unwrap(),
        RadialProfile::hyperbolic_cap(1.0, 0.1).unwrap(),
    ]
    .iter()
    .all(|p| p.is_certified_spacelike() && p.height_bound_check());
    out.push(CheckOutcome::of(
        "height bound |u| < R - r",
        ok,
        "boundary-zero spacelike profiles".into(),
    ));

    out
}

fn resistance_suite() -> Vec<CheckOutcome> {
    let mut out = Vec::new();
    let mut rng = rng();
    let quad_tol = tol::DEFAULT_QUAD_TOL;

    // closed form vs quadrature over random parameter draws
    let mut worst_rel = 0.0f64;
    let mut run = |p: RadialProfile<f64>| -> Result<()> {
        let c = resistance::resistance_closed_form(&p)?.value;
        let q = resistance::resistance_radial(&p, quad_tol)?.value;
        worst_rel = worst_rel.max((q - c).abs() / c);
        Ok(())
    };
    let mut ok = true;
    for _ in 0..50 {
        let radius = rng.gen_range(0.3..3.0);
        ok &= run(RadialProfile::flat(radius).unwrap()).is_ok();
        let lam = rng.gen_range(0.05..0.95);
        ok &= run(RadialProfile::cone(radius, lam).unwrap()).is_ok();
        let rho = rng.gen_range(0.2..3.0);
        ok &= run(RadialProfile::hyperbolic_cap(radius, rho).unwrap()).is_ok();
    }
    out.push(CheckOutcome::of(
        "closed form vs quadrature",
        ok && worst_rel <= 1e-8,
        format!("worst relative gap {worst_rel:.3e} over 150 draws"),
    ));

    // cap/disk ratio
    let cap: f64 =
        resistance::resistance_closed_form(&RadialProfile::hyperbolic_cap(1.0, 1.0).unwrap())
            .unwrap()
            .value;
    let disk: f64 = resistance::resistance_closed_form(&RadialProfile::flat(1.0).unwrap())
        .unwrap()
        .value;
    out.push(CheckOutcome::of(
        "cap/disk ratio 3/2",
        (cap / disk - 1.5).abs() <= 1e-10,
        format!("ratio {}", cap / disk),
    ));

    // dilation invariance on three kinds
    let mut ok = true;
    let mut worst = 0.0f64;
    for c in [0.5, 2.0, 3.0] {
        for p in [
            RadialProfile::cone(1.0, 0.5).unwrap(),
            RadialProfile::hyperbolic_cap(1.0, 1.0).unwrap(),
            RadialProfile::truncated_cap(1.0, 0.5, 3).unwrap(),
        ] {
            match resistance::dilation_check(&p, c, quad_tol) {
                Ok(d) => worst = worst.max((d.ratio - c * c).abs()),
                Err(_) => ok = false,
            }
        }
    }
    out.push(CheckOutcome::of(
        "dilation ratio c^2",
        ok && worst <= 1e-6,
        format!("worst |ratio - c^2| = {worst:.3e}"),
    ));

    // cone resistance strictly increasing in slope
    let mut prev = 0.0;
    let mut ok = true;
    for k in 1..60 {
        let lam = k as f64 / 60.0;
        let e = resistance::resistance_closed_form(&RadialProfile::cone(1.0, lam).unwrap())
            .unwrap()
            .value;
        ok &= e > prev;
        prev = e;
    }
    out.push(CheckOutcome::of(
        "cone resistance monotone in slope",
        ok,
        "strictly increasing on a 59-point grid".into(),
    ));

    // E >= area with equality for the flat disk
    let flat = resistance::resistance_radial(&RadialProfile::flat(1.0).unwrap(), quad_tol)
        .unwrap()
        .value;
    let mut ok = (flat - std::f64::consts::PI).abs() <= 1e-9;
    for p in canonical_profiles() {
        let e = resistance::resistance_radial(&p, quad_tol).unwrap().value;
        ok &= e >= std::f64::consts::PI * p.radius() * p.radius() - 1e-9;
    }
    out.push(CheckOutcome::of(
        "resistance bounded below by area",
        ok,
        "density >= 1 pointwise for eps = -1".into(),
    ));

    // 2D quadrature cross-validates the polar route
    let cone = RadialProfile::cone(1.0, 0.5).unwrap();
    let rep2 = resistance::resistance_2d(
        &cone,
        &Domain2::unit_disk(),
        &LagrangianSpec::lorentzian(),
        1e-6,
    )
    .unwrap();
    let rep1 = resistance::resistance_radial(&cone, quad_tol).unwrap();
    out.push(CheckOutcome::of(
        "2D vs radial quadrature",
        (rep2.value - rep1.value).abs() <= 2e-6,
        format!("gap {:.3e}", (rep2.value - rep1.value).abs()),
    ));

    // divergent sequence: strictly increasing with closed/quad agreement
    let rows = resistance::divergence_scan(1.0, 0.5, &[1, 2, 4, 8, 16], quad_tol).unwrap();
    let increasing = rows
        .windows(2)
        .all(|w| w[1].closed_total > w[0].closed_total);
    let agree = rows
        .iter()
        .all(|r| (r.quadrature - r.closed_total).abs() <= 1e-8);
    out.push(CheckOutcome::of(
        "divergent sequence grows",
        increasing && agree && rows[4].closed_total / rows[0].closed_total > 2.0,
        format!(
            "E(16)/E(1) = {:.4}",
            rows[4].closed_total / rows[0].closed_total
        ),
    ));

    out
}

fn variational_suite() -> Vec<CheckOutcome> {
    let mut out = Vec::new();
    let mut rng = rng();

    // ellipticity eigenvalues vs closed forms, both eps
    let mut worst = 0.0f64;
    let mut pos_ok = true;
    for _ in 0..1000 {
        let du = random_spacelike_grad(&mut rng);
        for spec in [LagrangianSpec::lorentzian(), LagrangianSpec::euclidean()] {
            let rep = variational::ellipticity(du, &spec).unwrap();
            let (lo, hi) = variational::ellipticity_closed_form(du, &spec);
            worst = worst.max((rep.lambda_min - lo).abs().max((rep.lambda_max - hi).abs()));
            if spec == LagrangianSpec::lorentzian() {
                pos_ok &= rep.lambda_min > 0.0 && rep.lambda_max >= rep.lambda_min;
            }
        }
    }
    let mixed =
        variational::ellipticity(Grad2::new(0.5f64.sqrt(), 0.0), &LagrangianSpec::euclidean())
            .unwrap();
    out.push(CheckOutcome::of(
        "ellipticity eigenvalues",
        worst <= 1e-12 && pos_ok && mixed.lambda_min < 0.0,
        format!(
            "worst closed-form gap {worst:.3e}; Euclidean lambda_min(0.5) = {}",
            mixed.lambda_min
        ),
    ));

    // linear functions solve the 2D equation exactly
    let g = Grid2D::from_fn(-1.0, -1.0, 21, 21, 0.1, |x, y| 0.3 * x + 0.4 * y + 1.0);
    let res = variational::el_residual_2d(&g, &LagrangianSpec::lorentzian()).unwrap();
    let linear_max = variational::residual_max_abs(&res);
    out.push(CheckOutcome::of(
        "linear 2D residual zero",
        linear_max <= 1e-12,
        format!("max |residual| = {linear_max:.3e}"),
    ));

    // separable candidates
    let grid = variational::separable_default_grid::<f64>(10);
    let ok = variational::separable_falsify(0.1, 0.0, &grid)
        && variational::separable_falsify(0.2, -0.2, &grid)
        && !variational::separable_falsify(0.0, 0.0, &grid);
    out.push(CheckOutcome::of(
        "separable falsification",
        ok,
        "quadratics falsified, linear candidates stationary".into(),
    ));

    // Legendre and Weierstrass on random admissible draws
    let mut ok = true;
    let mut worst = 0.0f64;
    for _ in 0..10_000 {
        let r: f64 = rng.gen_range(0.01..2.0);
        let up: f64 = rng.gen_range(-0.95..0.95);
        let vp: f64 = rng.gen_range(-0.95..0.95);
        ok &= variational::legendre_check(r, up).unwrap() > 0.0;
        let defn = variational::weierstrass_excess(r, up, vp).unwrap();
        let closed = variational::weierstrass_excess_closed_form(r, up, vp).unwrap();
        worst = worst.max((defn - closed).abs() / 1.0f64.max(defn.abs()));
        if (up - vp).abs() > 1e-12 {
            ok &= closed > 0.0;
        }
    }
    out.push(CheckOutcome::of(
        "Legendre/Weierstrass positivity",
        ok && worst <= 1e-12,
        format!("two-path worst gap {worst:.3e} over 1e4 draws"),
    ));

    // 1D residuals: flat exact, extremal tiny, caps far from stationary
    let samples = variational::default_residual_samples(1.0, 100);
    let flat = variational::el_residual_1d(&RadialProfile::flat(1.0).unwrap(), &samples);
    let ext = variational::el_residual_1d(&extremal_profile(), &samples);
    let cap =
        variational::el_residual_1d(&RadialProfile::hyperbolic_cap(1.0, 1.0).unwrap(), &samples);
    out.push(CheckOutcome::of(
        "1D Euler-Lagrange residuals",
        flat == 0.0 && ext < 1e-6 && cap > 0.1,
        format!("flat {flat:.1e}, extremal {ext:.3e}, cap {cap:.3}"),
    ));

    // quick direct-minimize sanity at modest resolution
    let b = BoundaryData::new(1.0, 0.5).unwrap();
    match variational::direct_minimize(&b, 64, 50_000) {
        Ok(dm) => {
            let monotone = dm.energy_trace.windows(2).all(|w| w[1] <= w[0] + 1e-12);
            let e = ParametricExtremal::solve(&b, tol::ROOT_TOL)
                .unwrap()
                .resistance();
            out.push(CheckOutcome::of(
                "direct minimizer",
                monotone && (dm.energy - e).abs() < 5e-2,
                format!("energy {} vs closed form {e}", dm.energy),
            ));
        }
        Err(err) => out.push(CheckOutcome::of(
            "direct minimizer",
            false,
            format!("failed: {err}"),
        )),
    }

    // maximum-principle probe
    let ok = variational::max_principle_probe(&extremal_profile())
        && variational::max_principle_probe(&RadialProfile::flat(1.0).unwrap());
    out.push(CheckOutcome::of(
        "maximum-principle probe",
        ok,
        "extremal and flat profiles monotone/constant".into(),
    ));

    out
}

fn ssc_suite() -> Vec<CheckOutcome> {
    let mut out = Vec::new();
    let mut rng = rng();
    let domain = Domain2::unit_disk();
    let t_max = 4.0 * domain.diameter();

    // mean-value identity to machine precision
    let mut worst = 0.0f64;
    let mut pos = true;
    for _ in 0..10_000 {
        let ux: f64 = rng.gen_range(-0.999..0.999);
        let uxi: f64 = rng.gen_range(-0.999..0.999);
        let id = ssc::ssc_identity_check(ux, uxi);
        worst = worst.max(id.difference.abs());
        pos &= id.value > 0.0;
    }
    out.push(CheckOutcome::of(
        "shock identity",
        worst <= 1e-14 && pos,
        format!("max |LHS-RHS| = {worst:.3e} over 1e4 draws"),
    ));

    // final slope exceeds every spacelike slope
    let mut ok = true;
    for k in 1..200 {
        let d = k as f64 / 200.0;
        ok &= ssc::final_slope(Grad2::new(d, 0.0)).unwrap() > 1.0;
    }
    out.push(CheckOutcome::of(
        "reflected ray slope > 1",
        ok,
        "s_p = (1+d^2)/(2d) on a 199-point grid".into(),
    ));

    // worst margin over the profile corpus
    let points: Vec<(f64, f64)> = (0..20)
        .map(|_| {
            let ang = rng.gen_range(0.0..std::f64::consts::TAU);
            let r = rng.gen_range(0.01..0.99f64).sqrt();
            (r * ang.cos(), r * ang.sin())
        })
        .collect();
    let mut worst = f64::INFINITY;
    let mut ok = true;
    let mut corpus: Vec<RadialProfile<f64>> = canonical_profiles();
    corpus.push(extremal_profile());
    for p in &corpus {
        match ssc::worst_margin_sweep(
            p,
            &domain,
            &points,
            t_max,
            64,
            ssc::ExtensionPolicy::Natural,
        ) {
            Ok(w) => worst = worst.min(w),
            Err(_) => ok = false,
        }
    }
    // oscillatory spacelike fields (amplitude·frequency < 1)
    let trig = ClosureField::new(
        |x: f64, _y: f64| 0.15 * (5.0 * x).sin(),
        |x: f64, _y: f64| Grad2::new(0.75 * (5.0 * x).cos(), 0.0),
    );
    let trig2 = ClosureField::new(
        |x: f64, y: f64| 0.3 * (2.0 * x).sin() + 0.1 * (3.0 * y).cos(),
        |x: f64, y: f64| Grad2::new(0.6 * (2.0 * x).cos(), -0.3 * (3.0 * y).sin()),
    );
    for field in [&trig as &dyn Field2<f64>, &trig2] {
        match ssc::worst_margin_sweep(
            field,
            &domain,
            &points,
            t_max,
            64,
            ssc::ExtensionPolicy::Natural,
        ) {
            Ok(w) => worst = worst.min(w),
            Err(_) => ok = false,
        }
    }
    out.push(CheckOutcome::of(
        "SSC margin sweep",
        ok && worst >= -1e-12,
        format!("worst margin {worst:.3e} over corpus x 20 points x 64 t"),
    ));

    out
}
