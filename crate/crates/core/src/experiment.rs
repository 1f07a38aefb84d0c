//! Experiment configurations and the dispatcher behind `disco-top experiment`.

use std::f64::consts::{PI, SQRT_2, TAU};
use std::path::PathBuf;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::bounds::{bound_oracle, c_constant, covering_lower_bound, r_constant, Scenario, COVERING_BUDGET, COVERING_SEED};
use crate::complex::{chain_complex, deleted_join2, deleted_product, simplex_skeleton};
use crate::error::{Error, Result};
use crate::homology::{betti_numbers, BettiVector};
use crate::metric::ngon_sample;
use crate::moduli::{
    alpha_r_hat_ladder, default_ladder, delta_hat_ladder, kappa0_holds, kappa_r, verify_lemma_chain, CodomainMetric,
    ConfigSample, ModulusEstimate,
};
use crate::report::{Check, Comparison, Format, Report};
use crate::rng::SeededRng;
use crate::vietoris_rips::{vr_complex, Convention, VRThreshold};
use crate::moduli::alpha_hat_ladder;
use crate::witnesses::{k5_jump_drawing, random_piecewise_constant, tverberg_one_point, Witness, WitnessKind};

/// Allowance for sampled moduli against theorem bounds, in radians.
/// `π − 2·cov` and the closed-form constants round independently.
pub const COVERING_ROUNDING: f64 = 1e-12;

pub const ANGLE_TOLERANCE: f64 = 0.05;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum ExperimentId {
    Vkf,
    Tverberg,
    SphereHomology,
    VrLadder,
    LemmaSuite,
    Constants,
    Bound,
}

impl ExperimentId {
    pub fn name(self) -> &'static str {
        match self {
            ExperimentId::Vkf => "vkf",
            ExperimentId::Tverberg => "tverberg",
            ExperimentId::SphereHomology => "sphere-homology",
            ExperimentId::VrLadder => "vr-ladder",
            ExperimentId::LemmaSuite => "lemma-suite",
            ExperimentId::Constants => "constants",
            ExperimentId::Bound => "bound",
        }
    }
}

/// Parameters for one experiment. Unset fields take per-experiment
/// defaults; `out` and `format` are not echoed into reports.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ExperimentConfig {
    pub experiment: Option<ExperimentId>,
    pub d: Option<usize>,
    pub r: Option<u64>,
    pub n: Option<usize>,
    pub k: Option<usize>,
    pub k_max: Option<usize>,
    pub grid: Option<usize>,
    pub rho_ladder: Option<Vec<f64>>,
    pub sep: Option<f64>,
    pub seed: Option<u64>,
    pub offset: Option<f64>,
    pub functions: Option<usize>,
    pub cells: Option<usize>,
    pub pairs: Option<usize>,
    pub scenario: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub out: Option<PathBuf>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub format: Option<Format>,
}

macro_rules! merge_fields {
    ($dst:ident, $src:ident; $($f:ident),*) => {
        $( if $src.$f.is_some() { $dst.$f = $src.$f.clone(); } )*
    };
}

impl ExperimentConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::invalid(format!("config: {e}")))
    }

    /// Fields set in `other` replace those in `self`.
    pub fn merge(&mut self, other: &ExperimentConfig) {
        merge_fields!(self, other; experiment, d, r, n, k, k_max, grid, rho_ladder, sep, seed, offset,
            functions, cells, pairs, scenario, out, format);
    }

    fn echo(&self) -> serde_json::Value {
        let mut c = self.clone();
        c.out = None;
        c.format = None;
        serde_json::to_value(c).expect("config serializes")
    }
}

fn field_err(field: &str, msg: impl std::fmt::Display) -> Error {
    Error::invalid(format!("field `{field}`: {msg}"))
}

fn positive(field: &str, v: Option<usize>, default: usize) -> Result<usize> {
    match v.unwrap_or(default) {
        0 => Err(field_err(field, "must be positive")),
        x => Ok(x),
    }
}

fn ladder(cfg: &ExperimentConfig, default: Vec<f64>) -> Result<Vec<f64>> {
    let l = cfg.rho_ladder.clone().unwrap_or(default);
    if l.is_empty() || l.iter().any(|x| !(*x > 0.0) || !x.is_finite()) {
        return Err(field_err("rho_ladder", "needs positive finite scales"));
    }
    Ok(l)
}

/// Value at the smallest scale of the ladder.
pub fn finest(e: &ModulusEstimate) -> f64 {
    e.ladder.last().map_or(e.value, |r| r.value)
}

fn betti_of_join(d: usize) -> Result<(BettiVector, Vec<usize>)> {
    let k = simplex_skeleton(2 * d + 2, d)?;
    let j = deleted_join2(&k)?;
    Ok((betti_numbers(&chain_complex(&j)?)?, j.f_vector()))
}

/// Runs one experiment. Fails on invalid configuration; theorem checks that
/// do not hold are reported as failed checks rather than errors.
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<Report> {
    let id = cfg.experiment.ok_or_else(|| field_err("experiment", "missing"))?;
    let start = Instant::now();
    let mut rep = Report::new(id.name(), cfg.echo(), cfg.seed);
    match id {
        ExperimentId::Vkf => vkf(cfg, &mut rep)?,
        ExperimentId::Tverberg => tverberg(cfg, &mut rep)?,
        ExperimentId::SphereHomology => sphere_homology(cfg, &mut rep)?,
        ExperimentId::VrLadder => vr_ladder(cfg, &mut rep)?,
        ExperimentId::LemmaSuite => lemma_suite(cfg, &mut rep)?,
        ExperimentId::Constants => constants(cfg, &mut rep)?,
        ExperimentId::Bound => bound(cfg, &mut rep)?,
    }
    rep.set_wall_time(start.elapsed());
    Ok(rep)
}

fn vkf(cfg: &ExperimentConfig, rep: &mut Report) -> Result<()> {
    let d = positive("d", cfg.d, 1)?;
    if d > 2 {
        return Err(field_err("d", "supported values are 1 and 2"));
    }
    let oracle = bound_oracle(Scenario::VanKampenFlores { d })?;
    let (betti, faces) = betti_of_join(d)?;
    let sphere = BettiVector::sphere(2 * d + 1);
    rep.checks.push(
        Check::exact(
            "deleted_join_is_sphere",
            f64::from(u8::from(betti.trimmed() == sphere.trimmed())),
            Comparison::Eq,
            1.0,
            0.0,
            "the deleted join of sk_d(Delta_{2d+2}) is a (2d+1)-sphere",
        )
        .with_detail(format!("betti {:?}, faces per dimension {:?}", betti.as_slice(), faces)),
    );
    if d != 1 {
        return Ok(());
    }
    let grid = positive("grid", cfg.grid, 400)?;
    let offset = cfg.offset.unwrap_or(0.01);
    let w = k5_jump_drawing(offset, grid).map_err(|e| match e {
        Error::InvalidArgument(m) => field_err("offset", m),
        other => other,
    })?;
    let f = &w.function;
    rep.checks.push(
        Check::exact(
            "witness_almost_injective",
            w.verification.min_separation.unwrap_or(0.0),
            Comparison::Ge,
            f64::MIN_POSITIVE,
            0.0,
            "almost injectivity: images of disjoint faces are disjoint",
        )
        .with_detail(w.verification.detail.clone()),
    );
    let configs = ConfigSample::deleted_product(f, 2)?;
    let kappa = kappa_r(f, &configs)?;
    rep.checks.push(
        Check::exact("kappa2_positive", kappa, Comparison::Ge, f64::MIN_POSITIVE, 0.0, "kappa^(r)(f) > 0 iff f is almost r-injective")
            .with_detail(format!("{} configurations", configs.len())),
    );
    let rhos = ladder(cfg, default_ladder(4.0 * SQRT_2 / grid as f64))?;
    let e = alpha_r_hat_ladder(f, &configs, &rhos)?;
    rep.checks.push(
        Check::sampled("alpha2_vkf", finest(&e), e.ladder.clone(), Comparison::Ge, oracle.bound, ANGLE_TOLERANCE, &oracle.citation)
            .with_detail(format!("witness center {:?}", e.witness)),
    );
    Ok(())
}

fn tverberg(cfg: &ExperimentConfig, rep: &mut Report) -> Result<()> {
    let r = cfg.r.unwrap_or(2);
    let d = positive("d", cfg.d, 1)?;
    let oracle = bound_oracle(Scenario::Tverberg { r, d })?;
    let ratio = bound_oracle(Scenario::TverbergKappaDelta { r, d })?;
    if (r, d) != (2, 1) {
        rep.checks.push(
            Check::exact("tverberg_bound", oracle.bound, Comparison::Eq, (-1.0 / (d as f64 * (r - 1) as f64)).acos(), 0.0, &oracle.citation)
                .with_detail("no witness construction for these parameters; bound only"),
        );
        return Ok(());
    }
    let grid = positive("grid", cfg.grid, 40)?;
    let w = tverberg_one_point(grid).map_err(|e| match e {
        Error::InvalidArgument(m) => field_err("grid", m),
        other => other,
    })?;
    let f = &w.function;
    rep.checks.push(
        Check::exact(
            "witness_almost_2_injective",
            w.verification.min_separation.unwrap_or(0.0),
            Comparison::Ge,
            f64::MIN_POSITIVE,
            0.0,
            "almost r-injectivity: no r points from pairwise disjoint faces share a value",
        )
        .with_detail(w.verification.detail.clone()),
    );
    let configs = ConfigSample::deleted_product(f, 2)?;
    let rhos = ladder(cfg, default_ladder(2.0 / grid as f64))?;
    let e = alpha_r_hat_ladder(f, &configs, &rhos)?;
    rep.checks.push(
        Check::sampled("alpha2_tverberg", finest(&e), e.ladder.clone(), Comparison::Eq, oracle.bound, 0.0, &oracle.citation)
            .with_detail(format!("witness center {:?}", e.witness)),
    );
    let delta = delta_hat_ladder(f, &rhos, CodomainMetric::Euclidean)?;
    let kappa = kappa_r(f, &configs)?;
    let rho_min = rhos.iter().copied().fold(f64::INFINITY, f64::min);
    rep.checks.push(
        Check::sampled(
            "delta_over_kappa",
            finest(&delta) / kappa,
            delta.ladder.clone(),
            Comparison::Ge,
            ratio.bound,
            0.0,
            &ratio.citation,
        )
        .with_detail(format!("kappa^(2) = {kappa:?}")),
    );
    // Slope of the affine part in the barycentric metric is sqrt(2).
    let jump = 1.0 - crate::witnesses::tverberg::MIDPOINT_VALUE;
    rep.checks.push(Check::sampled(
        "delta_converges_to_jump",
        finest(&delta),
        delta.ladder,
        Comparison::Eq,
        jump,
        2.0 * SQRT_2 * rho_min + 1e-12,
        "modulus of discontinuity of a function continuous off one jump point",
    ));
    Ok(())
}

fn sphere_homology(cfg: &ExperimentConfig, rep: &mut Report) -> Result<()> {
    let d = positive("d", cfg.d, 1)?;
    if d > 2 {
        return Err(field_err("d", "supported values are 1 and 2"));
    }
    for dd in 1..=d {
        let (betti, faces) = betti_of_join(dd)?;
        let ok = betti.trimmed() == BettiVector::sphere(2 * dd + 1).trimmed();
        rep.checks.push(
            Check::exact(
                &format!("deleted_join_sk{dd}_sphere"),
                f64::from(u8::from(ok)),
                Comparison::Eq,
                1.0,
                0.0,
                "the deleted join of sk_d(Delta_{2d+2}) is a (2d+1)-sphere",
            )
            .with_detail(format!("betti {:?}, faces per dimension {:?}", betti.as_slice(), faces)),
        );
    }
    let n_max = cfg.n.unwrap_or(3);
    if n_max > 5 {
        return Err(field_err("n", "at most 5"));
    }
    for n in 0..=n_max {
        let j = deleted_join2(&simplex_skeleton(n, n)?)?;
        let betti = betti_numbers(&chain_complex(&j)?)?;
        let ok = betti.trimmed() == BettiVector::sphere(n).trimmed();
        rep.checks.push(
            Check::exact(
                &format!("deleted_join_simplex{n}_sphere"),
                f64::from(u8::from(ok)),
                Comparison::Eq,
                1.0,
                0.0,
                "the deleted join of Delta_N is the boundary of the (N+1)-cross-polytope",
            )
            .with_detail(format!("betti {:?}", betti.as_slice())),
        );
    }
    let k5 = deleted_product(&simplex_skeleton(4, 1)?, 2)?;
    let betti = betti_numbers(&chain_complex(&k5)?)?;
    let chi: i64 = k5.cell_counts().iter().enumerate().map(|(i, &c)| if i % 2 == 0 { c as i64 } else { -(c as i64) }).sum();
    rep.checks.push(
        Check::exact(
            "deleted_product_k5_euler",
            betti.euler_characteristic() as f64,
            Comparison::Eq,
            chi as f64,
            0.0,
            "Euler characteristic from cell counts equals alternating Betti sum",
        )
        .with_detail(format!("betti {:?}, cells {:?}", betti.as_slice(), k5.cell_counts())),
    );
    Ok(())
}

fn vr_ladder(cfg: &ExperimentConfig, rep: &mut Report) -> Result<()> {
    let n = cfg.n.unwrap_or(6);
    if !(3..=64).contains(&n) {
        return Err(field_err("n", "polygon size must lie in 3..=64"));
    }
    let max_dim = cfg.k.unwrap_or(3);
    let m = ngon_sample(n)?;
    for j in 1..=n / 2 {
        let t = TAU * j as f64 / n as f64;
        for conv in [Convention::Weak, Convention::Strict] {
            let vr = vr_complex(&m, VRThreshold::new(t, conv)?, max_dim)?;
            let betti = betti_numbers(&chain_complex(&vr)?)?;
            let name = format!("vr_{n}gon_{j}_{}", if conv == Convention::Weak { "weak" } else { "strict" });
            let expected: Option<Vec<usize>> = match (n, j, conv) {
                (6, 2, Convention::Weak) => Some(vec![1, 0, 1]),
                (6, 1, Convention::Weak) => Some(vec![1, 1]),
                _ => None,
            };
            let check = match expected {
                Some(exp) => Check::exact(
                    &name,
                    f64::from(u8::from(betti.trimmed() == BettiVector(exp).trimmed())),
                    Comparison::Eq,
                    1.0,
                    0.0,
                    "Vietoris-Rips complexes of the circle",
                ),
                None => Check::exact(&name, betti.euler_characteristic() as f64, Comparison::Eq, vr.euler_characteristic() as f64, 0.0, "Euler-Poincare formula"),
            };
            rep.checks.push(check.with_detail(format!("t = {t:?}, betti {:?}, f-vector {:?}", betti.as_slice(), vr.f_vector())));
        }
    }
    Ok(())
}

fn lemma_suite(cfg: &ExperimentConfig, rep: &mut Report) -> Result<()> {
    let seed = cfg.seed.ok_or_else(|| field_err("seed", "required for sampled experiments"))?;
    let functions = positive("functions", cfg.functions, 100)?;
    let grid = positive("grid", cfg.grid, 24)?;
    let cells = positive("cells", cfg.cells, 6)?;
    let pairs = positive("pairs", cfg.pairs, 100_000)?;
    let rho = *ladder(cfg, vec![1.5 / grid as f64])?.first().expect("nonempty");

    let mut rng = SeededRng::substream(seed, 0);
    let mut random_violations = 0usize;
    for _ in 0..pairs {
        let s = 10f64.powf(rng.uniform_range(-3.0, 3.0));
        let t = 10f64.powf(rng.uniform_range(-3.0, 3.0));
        let p: Vec<f64> = (0..4).map(|_| s * rng.gaussian()).collect();
        let q: Vec<f64> = (0..4).map(|_| t * rng.gaussian()).collect();
        if !kappa0_holds(&p, &q, 1e-9) {
            random_violations += 1;
        }
    }
    rep.checks.push(
        Check::exact("kappa0_random_pairs", random_violations as f64, Comparison::Eq, 0.0, 0.0, "lemma: |p - q| >= min(|p|,|q|) |p/|p| - q/|q||")
            .with_detail(format!("{pairs} pairs in R^4, tolerance 1e-9")),
    );

    let names = ["pairwise_norm_inequality", "conf_modulus_bound", "kappa_identity", "kappa_theorem"];
    let citations = [
        "lemma: |p - q| >= min(|p|,|q|) |p/|p| - q/|q||, on centered tuples",
        "lemma: delta(Conf_r(f)) <= sqrt(r) delta(f)",
        "lemma: sqrt(2) kappa(Conf_r(f)) = sqrt(r) kappa^(r)(f)",
        "theorem: delta(f) >= sqrt(2) sin(alpha^(r)(f)/2) kappa^(r)(f)",
    ];
    let mut violations = [0usize; 4];
    let mut identity_dev = 0.0f64;
    let mut configs_total = 0usize;
    for i in 0..functions {
        let fseed = seed.wrapping_add((i as u64 + 1).wrapping_mul(0x9e37_79b9_7f4a_7c15));
        let f = random_piecewise_constant(grid, cells, fseed)?;
        let configs = ConfigSample::deleted_product(&f, 2)?;
        let lr = verify_lemma_chain(&f, &configs, rho)?;
        configs_total += lr.configurations;
        for (slot, c) in violations.iter_mut().zip(&lr.checks) {
            if !c.passed {
                *slot += 1;
            }
        }
        identity_dev = identity_dev.max((lr.checks[2].lhs - lr.checks[2].rhs).abs());
    }
    for (j, name) in names.iter().enumerate() {
        let mut c = Check::exact(name, violations[j] as f64, Comparison::Eq, 0.0, 0.0, citations[j])
            .with_detail(format!("{functions} functions, {configs_total} configurations, rho = {rho:?}"));
        if j == 2 {
            c.detail.push_str(&format!(", max deviation {identity_dev:?}"));
        }
        rep.checks.push(c);
    }
    Ok(())
}

fn constants(cfg: &ExperimentConfig, rep: &mut Report) -> Result<()> {
    let n = cfg.n.unwrap_or(1);
    let k_max = cfg.k_max.or(cfg.k).unwrap_or(9).max(n);
    for k in n..=k_max {
        let c = c_constant(n, k)?;
        let name = format!("c_{n}_{k}");
        let check = match (n, c.exact) {
            (1, Some(v)) => {
                let m = (k / 2) as f64;
                Check::exact(&name, v, Comparison::Eq, 2.0 * PI * m / (2.0 * m + 1.0), 0.0, "c_{1,2m} = c_{1,2m+1} = 2 pi m/(2m+1)")
            }
            (_, Some(v)) => Check::exact(&name, v, Comparison::Ge, 0.0, 0.0, "exact value"),
            (_, None) => Check::exact(&name, c.lower, Comparison::Ge, r_constant(n), 0.0, "c_{n,k} >= c_{n,n+1} = r_n for k >= n+1"),
        };
        rep.checks.push(check.with_detail(c.provenance.join("; ")));
        if k > n && n >= 1 {
            let cover = covering_lower_bound(n, k, COVERING_BUDGET, COVERING_SEED)?;
            rep.checks.push(Check::exact(
                &format!("covering_bound_{n}_{k}"),
                cover,
                Comparison::Le,
                c.best_lower(),
                COVERING_ROUNDING,
                "c_{n,k} >= pi - 2 cov_{RP^n}(k)",
            ));
        }
    }
    let decreasing = (0..20).all(|m| r_constant(m + 1) < r_constant(m)) && (0..=20).all(|m| r_constant(m) <= PI);
    rep.checks.push(Check::exact(
        "r_n_monotone",
        f64::from(u8::from(decreasing)),
        Comparison::Eq,
        1.0,
        0.0,
        "r_n = arccos(-1/(n+1)) decreases strictly from pi, n <= 20",
    ));
    Ok(())
}

/// Measures the modulus that a witness is built to exhibit. Returns named
/// estimates; scales default to a ladder matched to the witness sampling.
pub fn measure_witness(w: &Witness, rhos: Option<Vec<f64>>, sep: Option<f64>) -> Result<Vec<(String, ModulusEstimate)>> {
    let f = &w.function;
    let grid = w.spec.parameters.get("grid").copied().unwrap_or(1.0);
    let h = 1.0 / grid;
    let pick = |default: Vec<f64>| -> Result<Vec<f64>> {
        let cfg = ExperimentConfig { rho_ladder: rhos.clone(), ..Default::default() };
        ladder(&cfg, default)
    };
    let sep_for = |l: &[f64]| sep.unwrap_or(2.0 * l.iter().copied().fold(0.0, f64::max));
    Ok(match w.spec.kind {
        WitnessKind::DigitInterleave => {
            let l = pick(vec![2.0 * h])?;
            vec![("alpha".into(), alpha_hat_ladder(f, &l, sep_for(&l))?)]
        }
        WitnessKind::MonotoneStep | WitnessKind::NonmonotoneStep => {
            let l = pick(vec![2.0 * h])?;
            vec![
                ("alpha".into(), alpha_hat_ladder(f, &l, sep_for(&l))?),
                ("delta".into(), delta_hat_ladder(f, &default_ladder(l[0]), CodomainMetric::Euclidean)?),
            ]
        }
        WitnessKind::K5Jump => {
            let l = pick(default_ladder(4.0 * SQRT_2 * h))?;
            let configs = ConfigSample::deleted_product(f, 2)?;
            vec![("alpha2".into(), alpha_r_hat_ladder(f, &configs, &l)?)]
        }
        WitnessKind::TverbergOnePoint => {
            let l = pick(default_ladder(2.0 * h))?;
            let configs = ConfigSample::deleted_product(f, 2)?;
            vec![
                ("alpha2".into(), alpha_r_hat_ladder(f, &configs, &l)?),
                ("delta".into(), delta_hat_ladder(f, &l, CodomainMetric::Euclidean)?),
            ]
        }
        WitnessKind::EquatorialOdd => {
            let l = pick(default_ladder(0.1))?;
            vec![("delta".into(), delta_hat_ladder(f, &l, CodomainMetric::Geodesic)?)]
        }
    })
}

/// Parses `name` or `name:key=value,...` scenario strings, e.g.
/// `tverberg:r=3,d=2`.
pub fn parse_scenario(spec: &str, cfg: &ExperimentConfig) -> Result<Scenario> {
    let (name, rest) = spec.split_once(':').unwrap_or((spec, ""));
    let mut c = cfg.clone();
    for kv in rest.split(',').filter(|s| !s.is_empty()) {
        let (key, val) = kv.split_once('=').ok_or_else(|| field_err("scenario", format!("bad parameter `{kv}`")))?;
        let num: u64 = val.parse().map_err(|_| field_err("scenario", format!("bad value `{val}`")))?;
        match key {
            "d" => c.d = Some(num as usize),
            "r" => c.r = Some(num),
            "n" => c.n = Some(num as usize),
            "k" => c.k = Some(num as usize),
            _ => return Err(field_err("scenario", format!("unknown parameter `{key}`"))),
        }
    }
    let need = |v: Option<usize>, f: &str| v.ok_or_else(|| field_err(f, format!("required by scenario `{name}`")));
    Ok(match name {
        "general-conf2" => Scenario::GeneralConf2 { d: need(c.d, "d")? },
        "haefliger-weber" => Scenario::HaefligerWeber { n: need(c.n, "n")?, d: need(c.d, "d")? },
        "projective" => Scenario::ProjectivePowerOfTwo { k: need(c.k, "k")? as u32 },
        "sphere" => Scenario::SphereToEuclidean { k: need(c.k, "k")?, d: need(c.d, "d")? },
        "euclidean" => Scenario::EuclideanToEuclidean { k_plus_1: need(c.k, "k")?, d: need(c.d, "d")? },
        "vkf" => Scenario::VanKampenFlores { d: need(c.d, "d")? },
        "tverberg" => Scenario::Tverberg { r: c.r.ok_or_else(|| field_err("r", "required"))?, d: need(c.d, "d")? },
        "tverberg-kappa" => Scenario::TverbergKappaDelta { r: c.r.ok_or_else(|| field_err("r", "required"))?, d: need(c.d, "d")? },
        _ => return Err(field_err("scenario", format!("unknown scenario `{name}`"))),
    })
}

fn bound(cfg: &ExperimentConfig, rep: &mut Report) -> Result<()> {
    let spec = cfg.scenario.as_deref().ok_or_else(|| field_err("scenario", "missing"))?;
    let s = parse_scenario(spec, cfg)?;
    let b = bound_oracle(s)?;
    let conds: Vec<String> =
        b.conditions.iter().map(|c| format!("{}: {}", c.name, if c.assumed { "assumed" } else { "ok" })).collect();
    rep.checks.push(
        Check::exact("bound", b.bound, Comparison::Ge, 0.0, 0.0, &b.citation)
            .with_detail(format!("{:?}; {}", b.quantity, conds.join("; "))),
    );
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(id: ExperimentId) -> ExperimentConfig {
        ExperimentConfig { experiment: Some(id), ..Default::default() }
    }

    #[test]
    fn flags_override_file() {
        let mut base = ExperimentConfig::from_json(r#"{"experiment": "lemma-suite", "grid": 6, "seed": 1}"#).unwrap();
        base.merge(&ExperimentConfig { seed: Some(9), ..Default::default() });
        assert_eq!(base.seed, Some(9));
        assert_eq!(base.grid, Some(6));
        assert!(ExperimentConfig::from_json(r#"{"gird": 6}"#).is_err());
    }

    #[test]
    fn lemma_suite_requires_seed() {
        let err = run_experiment(&cfg(ExperimentId::LemmaSuite)).unwrap_err();
        assert!(err.to_string().contains("seed"));
    }

    #[test]
    fn constants_report_passes() {
        let rep = run_experiment(&cfg(ExperimentId::Constants)).unwrap();
        assert!(rep.passed(), "{:#?}", rep.summary_lines());
    }

    #[test]
    fn vr_ladder_hexagon() {
        let rep = run_experiment(&cfg(ExperimentId::VrLadder)).unwrap();
        assert!(rep.passed(), "{:#?}", rep.summary_lines());
        assert_eq!(rep.checks.len(), 6);
    }

    #[test]
    fn bound_scenarios() {
        let mut c = cfg(ExperimentId::Bound);
        c.scenario = Some("tverberg:r=2,d=1".into());
        assert_eq!(run_experiment(&c).unwrap().checks[0].value, PI);
        c.scenario = Some("tverberg:r=6,d=19".into());
        assert!(matches!(run_experiment(&c), Err(Error::InapplicableTheorem { .. })));
        c.scenario = Some("nonsense".into());
        assert!(run_experiment(&c).unwrap_err().to_string().contains("scenario"));
    }
}
