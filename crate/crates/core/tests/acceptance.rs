//! Acceptance suite. Runs every criterion in sequence (so wall-clock limits
//! are not distorted by other tests), prints one line per criterion and
//! exits nonzero if any fails.

use std::f64::consts::{FRAC_PI_4, PI, TAU};
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use disco_top::bounds::{bound_oracle, c_constant, covering_lower_bound, r_constant, Scenario, COVERING_BUDGET, COVERING_SEED};
use disco_top::complex::{chain_complex, deleted_join2, simplex_skeleton};
use disco_top::experiment::{finest, measure_witness, run_experiment, ExperimentConfig, ExperimentId, ANGLE_TOLERANCE};
use disco_top::homology::betti_numbers;
use disco_top::metric::ngon_sample;
use disco_top::moduli::ModulusEstimate;
use disco_top::vietoris_rips::{vr_complex, VRThreshold};
use disco_top::witnesses::{digit_interleave, equatorial_odd, k5_jump_drawing, step_witnesses, tverberg_one_point, Witness};
use disco_top::Error;

/// Absolute slack for comparing a covering bound with its closed form.
const CLOSED_FORM_TOL: f64 = 1e-12;

type Outcome = Result<String, String>;

/// Id, title, time limit in seconds, check.
type Criterion = (&'static str, &'static str, u64, fn() -> Outcome);

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn lift<T>(r: disco_top::Result<T>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn estimate(w: &Witness, name: &str) -> Result<ModulusEstimate, String> {
    lift(measure_witness(w, None, None))?
        .into_iter()
        .find(|(n, _)| n == name)
        .map(|(_, e)| e)
        .ok_or_else(|| format!("no {name} estimate"))
}

fn betti(k: &disco_top::complex::SimplicialComplex) -> Result<Vec<usize>, String> {
    Ok(lift(betti_numbers(&lift(chain_complex(k))?))?.trimmed().to_vec())
}

fn sphere_identification() -> Outcome {
    let j = lift(deleted_join2(&lift(simplex_skeleton(4, 1))?))?;
    let b = betti(&j)?;
    ensure(b == [1, 0, 0, 1], format!("betti {b:?}"))?;
    Ok(format!("betti {b:?}, f-vector {:?}", j.f_vector()))
}

fn sphere_identification_d2() -> Outcome {
    let j = lift(deleted_join2(&lift(simplex_skeleton(6, 2))?))?;
    let b = betti(&j)?;
    ensure(b == [1, 0, 0, 0, 0, 1], format!("betti {b:?}"))?;
    Ok(format!("betti {b:?}, f-vector {:?}", j.f_vector()))
}

fn vr_hexagon() -> Outcome {
    let hex = lift(ngon_sample(6))?;
    let wide = betti(&lift(vr_complex(&hex, VRThreshold::weak(TAU / 3.0), 3))?)?;
    let narrow = betti(&lift(vr_complex(&hex, VRThreshold::weak(PI / 3.0), 3))?)?;
    ensure(wide == [1, 0, 1], format!("weak 2pi/3: {wide:?}"))?;
    ensure(narrow == [1, 1], format!("weak pi/3: {narrow:?}"))?;
    Ok(format!("weak 2pi/3 {wide:?}, weak pi/3 {narrow:?}"))
}

fn van_kampen_flores() -> Outcome {
    let w = lift(k5_jump_drawing(0.01, 400))?;
    ensure(w.verification.passed, format!("almost injectivity: {}", w.verification.detail))?;
    let e = estimate(&w, "alpha2")?;
    let v = finest(&e);
    let bound = TAU / 3.0;
    ensure(v >= bound - ANGLE_TOLERANCE, format!("alpha2 {v} < 2pi/3 - {ANGLE_TOLERANCE}"))?;
    Ok(format!(
        "{} points, {}; alpha2 {v:.6} >= {:.6} at rho {:.2e}",
        w.function.len(),
        w.verification.detail,
        bound - ANGLE_TOLERANCE,
        e.ladder.last().map_or(e.rho, |r| r.rho)
    ))
}

fn tverberg() -> Outcome {
    let w = lift(tverberg_one_point(40))?;
    ensure(w.verification.passed, w.verification.detail.clone())?;
    let e = estimate(&w, "alpha2")?;
    ensure(e.ladder.iter().all(|r| r.value == PI), format!("ladder {:?}", e.ladder))?;
    Ok(format!("alpha2 = pi at every rho in {:?}", e.ladder.iter().map(|r| r.rho).collect::<Vec<_>>()))
}

fn digit() -> Outcome {
    let w = lift(digit_interleave(8, 256))?;
    ensure(w.verification.passed, w.verification.detail.clone())?;
    let e = estimate(&w, "alpha")?;
    ensure(e.value == PI, format!("alpha {}", e.value))?;
    Ok(format!("alpha = pi on {} points, rho {}, sep {:?}", w.function.len(), e.rho, e.separation))
}

fn monotonicity() -> Outcome {
    let mono = estimate(&lift(step_witnesses(true, 100))?, "alpha")?;
    let non = estimate(&lift(step_witnesses(false, 100))?, "alpha")?;
    ensure(mono.value == 0.0, format!("monotone alpha {}", mono.value))?;
    ensure(non.value == PI, format!("nonmonotone alpha {}", non.value))?;
    Ok("monotone alpha = 0, nonmonotone alpha = pi".into())
}

fn lemma_suite() -> Outcome {
    let cfg = ExperimentConfig { experiment: Some(ExperimentId::LemmaSuite), seed: Some(7), ..Default::default() };
    let rep = lift(run_experiment(&cfg))?;
    let expected = ["kappa0_random_pairs", "pairwise_norm_inequality", "conf_modulus_bound", "kappa_identity", "kappa_theorem"];
    for name in expected {
        let c = rep.checks.iter().find(|c| c.name == name).ok_or_else(|| format!("missing check {name}"))?;
        ensure(c.passed && c.value == 0.0, format!("{name}: {} violations ({})", c.value, c.detail))?;
    }
    let detail = &rep.checks.iter().find(|c| c.name == "kappa_identity").expect("checked").detail;
    ensure(detail.starts_with("100 functions"), format!("function count: {detail}"))?;
    let pairs = &rep.checks[0].detail;
    ensure(pairs.starts_with("100000 pairs"), format!("pair count: {pairs}"))?;
    Ok(format!("zero violations; {detail}"))
}

fn constants() -> Outcome {
    for k in 1..=9usize {
        let m = (k / 2) as f64;
        let want = TAU * m / (2.0 * m + 1.0);
        let c = lift(c_constant(1, k))?;
        ensure(c.exact == Some(want), format!("c_1_{k} = {:?}, want {want}", c.exact))?;
    }
    let cover = lift(covering_lower_bound(1, 4, COVERING_BUDGET, COVERING_SEED))?;
    ensure((cover - 3.0 * FRAC_PI_4).abs() <= CLOSED_FORM_TOL, format!("covering bound (1,4) = {cover}"))?;
    ensure(cover <= 4.0 * PI / 5.0, format!("covering bound (1,4) = {cover} > 4pi/5"))?;
    let r: Vec<f64> = (0..=20).map(r_constant).collect();
    ensure(r.windows(2).all(|w| w[1] < w[0]), "r_n not strictly decreasing")?;
    ensure(r.iter().all(|&x| x <= PI), "r_n exceeds pi")?;
    Ok(format!("c_1_k exact for k <= 9; covering (1,4) = {cover:.15}; r_n strictly decreasing for n <= 20"))
}

fn odd_map() -> Outcome {
    let w = lift(equatorial_odd(2, 1, 400, 1))?;
    let e = estimate(&w, "delta")?;
    let v = finest(&e);
    let bound = TAU / 3.0;
    ensure(v >= bound - ANGLE_TOLERANCE, format!("delta {v}"))?;
    Ok(format!("delta {v:.6} >= {:.6}", bound - ANGLE_TOLERANCE))
}

fn oracle_negatives() -> Outcome {
    let cases = [Scenario::Tverberg { r: 6, d: 19 }, Scenario::HaefligerWeber { n: 1, d: 3 }, Scenario::HaefligerWeber { n: 3, d: 6 }];
    let mut seen = Vec::new();
    for s in cases {
        match bound_oracle(s) {
            Err(Error::InapplicableTheorem { condition, .. }) => seen.push(condition),
            other => return Err(format!("{s:?}: {other:?}")),
        }
    }
    Ok(format!("inapplicable: {}", seen.join("; ")))
}

fn determinism() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let run = |name: &str| -> Result<String, String> {
        let path = dir.path().join(name);
        let status = Command::new(env!("CARGO_BIN_EXE_disco-top"))
            .args(["experiment", "lemma-suite", "--seed", "7", "--out"])
            .arg(&path)
            .output()
            .map_err(|e| e.to_string())?;
        ensure(status.status.success(), format!("exit {:?}", status.status.code()))?;
        let text = std::fs::read_to_string(&path).map_err(|e| e.to_string())?;
        Ok(text.lines().filter(|l| !l.contains("\"wall_time_seconds\"")).collect::<Vec<_>>().join("\n"))
    };
    let a = run("a.json")?;
    let b = run("b.json")?;
    ensure(a == b, "reports differ")?;
    Ok(format!("{} bytes identical apart from wall time", a.len()))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 12] = [
        ("1", "deleted join of sk_1(Delta_4) is a 3-sphere", 10, sphere_identification),
        ("1s", "deleted join of sk_2(Delta_6) is a 5-sphere", 600, sphere_identification_d2),
        ("2", "Vietoris-Rips hexagon", 1, vr_hexagon),
        ("3", "quantified van Kampen-Flores, K5 jump drawing", 60, van_kampen_flores),
        ("4", "quantified Tverberg r=2 d=1", 5, tverberg),
        ("5", "digit interleaving alpha = pi", 10, digit),
        ("6", "monotonicity of step functions", 5, monotonicity),
        ("7", "kappa lemma suite, seed 7", 120, lemma_suite),
        ("8", "constants c_{1,k}, covering bound, r_n", 5, constants),
        ("9", "odd map S^2 -> S^1 modulus", 30, odd_map),
        ("10", "bound oracle negative cases", 1, oracle_negatives),
        ("11", "lemma-suite reports are deterministic", 600, determinism),
    ];
    let mut failed = 0;
    for (id, title, limit, run) in criteria {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let outcome = match outcome {
            Ok(d) if elapsed > Duration::from_secs(limit) => Err(format!("{d}; over time limit")),
            o => o,
        };
        let (tag, detail) = match &outcome {
            Ok(d) => ("PASS", d),
            Err(d) => ("FAIL", d),
        };
        if outcome.is_err() {
            failed += 1;
        }
        println!("acceptance {id:>2} {tag} {title} [{:.2}s / {limit}s]: {detail}", elapsed.as_secs_f64());
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
