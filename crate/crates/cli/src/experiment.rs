use std::path::PathBuf;

use clap::Args;
use hyplab::domains::DomainSpec;
use hyplab::lengths::{ell, euclidean_length_radial, fit_growth_exponent, image_hyperbolic_length, radial_lp_norm, GrowthFit};
use hyplab::verify::{
    annulus_cover_radius, check_example_exponents, crosscut_gap_bound, random_polynomial, ExampleRow, ExampleSpec,
    DEFAULT_SEED,
};
use hyplab::{AnnulusCover, InequalityReport, PowerSeriesFunction};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::output::{csv_writer, finish_csv, num, write_atomic};
use crate::Format;

pub const HELP: &str = "\
Experiments:
  cusp           --eps (1) --points (30)   lengths along the cusp axis, t in [2, 1e4]
  slits          --eps (1) --n (50)        paths through the slit rectangle
  chain          --beta (1) --n (10000) --points (30)
                                           geodesic through a chain of N annuli
  growth-ladder  --n degree (10) --p (2) --points depth (20) --seed
                                           seeded polynomial on r = 1 - 2^-j, j = 1..depth
  annulus-cover  --r list (0.1,0.5,0.9,0.99,0.999)
                                           covering map of the standard annulus

CSV schema (header row, ',' separator, '.' decimal, LF line endings):
  param,ell,E,H,bound
    param  t (cusp), k (slits), N (chain) or r (growth-ladder, annulus-cover)
    ell    hyperbolic length of the parameter path
    E      Euclidean length of the image path
    H      hyperbolic length of the image path in the target domain
    bound  the bound the row is held to
  followed by footer lines
    # fit,exponent=..,intercept=..,residual=..,samples=..,decades=..   (when a fit is made)
    # check,NAME,pass|fail,lhs=..,rhs=..
With --format json the same data is one object {experiment, rows, fit, checks}.
Output goes to stdout unless --out is given. Exit status 0 iff every check passes.";

#[derive(Debug, Args)]
pub struct ExperimentArgs {
    /// cusp, slits, chain, growth-ladder or annulus-cover.
    name: String,
    #[arg(long)]
    eps: Option<f64>,
    #[arg(long)]
    beta: Option<f64>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    p: Option<f64>,
    #[arg(long)]
    d: Option<f64>,
    #[arg(long)]
    points: Option<usize>,
    /// Radii for annulus-cover, comma separated.
    #[arg(long, value_delimiter = ',')]
    r: Option<Vec<f64>>,
    #[arg(long)]
    seed: Option<u64>,
    /// Output file.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
}

#[derive(Debug, Serialize)]
struct Table {
    experiment: String,
    rows: Vec<ExampleRow>,
    fit: Option<GrowthFit>,
    checks: Vec<InequalityReport>,
}

impl Table {
    fn pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

const NAMES: [&str; 5] = ["cusp", "slits", "chain", "growth-ladder", "annulus-cover"];

impl ExperimentArgs {
    /// Rejects flags the experiment has no use for.
    fn only_flags(&self, allowed: &[&str]) -> Result<(), String> {
        let given = [
            ("eps", self.eps.is_some()),
            ("beta", self.beta.is_some()),
            ("n", self.n.is_some()),
            ("p", self.p.is_some()),
            ("d", self.d.is_some()),
            ("points", self.points.is_some()),
            ("r", self.r.is_some()),
            ("seed", self.seed.is_some()),
        ];
        match given.iter().find(|(flag, set)| *set && !allowed.contains(flag)) {
            Some((flag, _)) => Err(format!("--{flag} does not apply to the {} experiment", self.name)),
            None => Ok(()),
        }
    }
}

fn example(name: &str, spec: ExampleSpec) -> Result<Table, String> {
    let out = check_example_exponents(&spec).map_err(|e| e.to_string())?;
    Ok(Table { experiment: name.into(), rows: out.rows, fit: out.fit, checks: vec![out.report] })
}

/// Degree-`degree` seeded polynomial scaled so that `|f| < 1/2` on the disc.
fn ladder_polynomial(seed: u64, degree: usize) -> Result<PowerSeriesFunction, String> {
    let f = random_polynomial(&mut ChaCha8Rng::seed_from_u64(seed), degree);
    let s = 0.5 / f.coefficient_l1().max(1e-300);
    PowerSeriesFunction::new(f.coeffs().iter().map(|a| a * s).collect()).map_err(|e| e.to_string())
}

/// `E(r) ≤ ‖f'/λ‖_{p,[0,r]} ℓ(r)^{1−1/p}` by Hölder, and `H ≤ ℓ` by Schwarz–Pick.
fn growth_ladder(degree: usize, p: f64, depth: usize, seed: u64) -> Result<Table, String> {
    if !(1..=200).contains(&degree) {
        return Err(format!("degree {degree} must lie in 1..=200"));
    }
    if !(p >= 1.0 && p.is_finite()) {
        return Err(format!("p = {p} must be at least 1"));
    }
    if !(3..=40).contains(&depth) {
        return Err(format!("depth {depth} must lie in 3..=40"));
    }
    let f = ladder_polynomial(seed, degree)?;
    let disc = DomainSpec::UnitDisc;
    let mut rows = Vec::with_capacity(depth);
    let mut checks = Vec::new();
    for j in 1..=depth {
        let r = 1.0 - 0.5f64.powi(j as i32);
        let run = || -> hyplab::Result<ExampleRow> {
            let l = ell(r)?;
            let e = euclidean_length_radial(&f, r, 0.0, 1e-12)?;
            let h = image_hyperbolic_length(&f, &disc, r, 0.0, 1e-12)?.hyperbolic_upper;
            let bound = radial_lp_norm(&f, p, 0.0, Some(r))? * l.powf(1.0 - 1.0 / p);
            Ok(ExampleRow { param: r, ell: l, e, h, bound })
        };
        let row = run().map_err(|e| e.to_string())?;
        checks.push(InequalityReport::new("holder", row.e, row.bound, 1e-9 * (1.0 + row.bound)).param("r", r));
        checks.push(InequalityReport::new("schwarz_pick", row.h, row.ell, 1e-9 * (1.0 + row.ell)).param("r", r));
        rows.push(row);
    }
    let fit = fit_growth_exponent(&rows.iter().map(|r| (r.ell, r.e)).collect::<Vec<_>>()).map_err(|e| e.to_string())?;
    let checks = vec![
        InequalityReport::combine("holder", &checks.iter().filter(|c| c.name == "holder").cloned().collect::<Vec<_>>())
            .param("p", p),
        InequalityReport::combine(
            "schwarz_pick",
            &checks.iter().filter(|c| c.name == "schwarz_pick").cloned().collect::<Vec<_>>(),
        ),
    ];
    Ok(Table { experiment: "growth-ladder".into(), rows, fit: Some(fit), checks })
}

/// `E = ℓ = H` along the real diameter, held to `E ≤ (M/2) ℓ`.
fn annulus_cover(radii: &[f64]) -> Result<Table, String> {
    if radii.is_empty() {
        return Err("--r needs at least one radius".into());
    }
    let f = AnnulusCover::standard();
    let domain = DomainSpec::Annulus { outer_radius: f.outer_radius() };
    let half_m = 0.5 * annulus_cover_radius();
    let mut rows = Vec::with_capacity(radii.len());
    let mut parts = Vec::new();
    for &r in radii {
        if !(0.0..1.0).contains(&r) {
            return Err(format!("radius {r} not in [0, 1)"));
        }
        let run = || -> hyplab::Result<ExampleRow> {
            let l = ell(r)?;
            let e = euclidean_length_radial(&f, r, 0.0, 1e-10)?;
            let h = image_hyperbolic_length(&f, &domain, r, 0.0, 1e-10)?.hyperbolic_upper;
            Ok(ExampleRow { param: r, ell: l, e, h, bound: half_m * l })
        };
        let row = run().map_err(|e| e.to_string())?;
        parts.push(InequalityReport::new("annulus_identity", (row.e - row.ell).abs(), 1e-8, 0.0).param("r", r));
        parts.push(InequalityReport::new("annulus_upper", row.e, row.bound, 1e-9).param("r", r));
        parts.push(InequalityReport::new("annulus_isometry", (row.h - row.ell).abs(), 1e-6 * (1.0 + row.ell), 0.0).param("r", r));
        rows.push(row);
    }
    let fit = if rows.iter().filter(|r| r.ell > 0.0).count() >= 3 {
        fit_growth_exponent(&rows.iter().filter(|r| r.ell > 0.0).map(|r| (r.ell, r.e)).collect::<Vec<_>>()).ok()
    } else {
        None
    };
    let checks = vec![InequalityReport::combine("annulus_cover", &parts)];
    Ok(Table { experiment: "annulus-cover".into(), rows, fit, checks })
}

fn build(args: &ExperimentArgs) -> Result<Table, String> {
    let seed = args.seed.unwrap_or(DEFAULT_SEED);
    match args.name.as_str() {
        "cusp" => {
            args.only_flags(&["eps", "points"])?;
            let spec = ExampleSpec::Cusp { eps: args.eps.unwrap_or(1.0), points: args.points.unwrap_or(30), t_max: 1e4 };
            example("cusp", spec)
        }
        "slits" => {
            args.only_flags(&["eps", "n", "seed"])?;
            let (m_gap, _, _) = crosscut_gap_bound(seed, 20, 1.0 / 32.0).map_err(|e| e.to_string())?;
            let spec = ExampleSpec::SlitRectangle { eps: args.eps.unwrap_or(1.0), n: args.n.unwrap_or(50), m_gap };
            example("slits", spec)
        }
        "chain" => {
            args.only_flags(&["beta", "n", "points"])?;
            let spec = ExampleSpec::Chain {
                beta: args.beta.unwrap_or(1.0),
                n: args.n.unwrap_or(10_000),
                points: args.points.unwrap_or(30),
            };
            example("chain", spec)
        }
        "growth-ladder" => {
            args.only_flags(&["n", "p", "points", "seed"])?;
            growth_ladder(args.n.unwrap_or(10), args.p.unwrap_or(2.0), args.points.unwrap_or(20), seed)
        }
        "annulus-cover" => {
            args.only_flags(&["r"])?;
            let default = [0.1, 0.5, 0.9, 0.99, 0.999];
            annulus_cover(args.r.as_deref().unwrap_or(&default))
        }
        other => Err(format!("unknown experiment {other}; known: {}", NAMES.join(", "))),
    }
}

fn render_csv(table: &Table) -> Result<Vec<u8>, String> {
    let mut w = csv_writer();
    w.write_record(["param", "ell", "E", "H", "bound"]).map_err(|e| e.to_string())?;
    for r in &table.rows {
        w.write_record([num(r.param), num(r.ell), num(r.e), num(r.h), num(r.bound)]).map_err(|e| e.to_string())?;
    }
    let mut bytes = finish_csv(w)?;
    if let Some(fit) = &table.fit {
        bytes.extend(
            format!(
                "# fit,exponent={},intercept={},residual={},samples={},decades={}\n",
                num(fit.exponent),
                num(fit.intercept),
                num(fit.residual),
                fit.sample_count,
                num(fit.decades)
            )
            .bytes(),
        );
    }
    for c in &table.checks {
        let status = if c.pass { "pass" } else { "fail" };
        bytes.extend(format!("# check,{},{status},lhs={},rhs={}\n", c.name, num(c.lhs), num(c.rhs)).bytes());
    }
    Ok(bytes)
}

pub fn run(args: &ExperimentArgs) -> Result<bool, String> {
    let table = build(args)?;
    let bytes = match args.format {
        Format::Csv => render_csv(&table)?,
        Format::Json => {
            let mut b = serde_json::to_vec_pretty(&table).map_err(|e| e.to_string())?;
            b.push(b'\n');
            b
        }
    };
    match &args.out {
        Some(path) => write_atomic(path, &bytes)?,
        None => {
            use std::io::Write;
            std::io::stdout().write_all(&bytes).map_err(|e| e.to_string())?;
        }
    }
    for c in table.checks.iter().filter(|c| !c.pass) {
        eprintln!("failed: {}: lhs {} rhs {} {}", c.name, num(c.lhs), num(c.rhs), c.notes);
    }
    Ok(table.pass())
}
