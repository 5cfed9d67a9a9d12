//! Acceptance criteria. Each prints one PASS/FAIL line with its wall time.

use std::time::{Duration, Instant};

use num_bigint::BigInt;
use twistcalc::commands::{cmd_verify, verify_samples, AlgebraSource, Format, RunConfig};
use twisted_calculus::calculus::{form_basis, star_pairs};
use twisted_calculus::{CheckReport, Exec, OrderingSpec, Rational, RealizationContext, StructureConstants, UFormElement};

const TRUNC: u32 = 6;
const DEGREE: u32 = 4;
const CATALOG: [&str; 5] = ["heisenberg", "su2", "sl2", "axb", "kappa:3:1"];

fn half() -> Rational {
    Rational::new(BigInt::from(1), BigInt::from(2))
}

fn context(id: &str, ordering: &OrderingSpec) -> RealizationContext {
    let lie = StructureConstants::from_catalog(id).unwrap();
    RealizationContext::new(lie, ordering, TRUNC, DEGREE, Exec::default()).unwrap()
}

fn symmetric(id: &str) -> RealizationContext {
    context(id, &OrderingSpec::Symmetric)
}

struct Outcome {
    pass: bool,
    detail: String,
}

fn from_reports(reports: &[CheckReport]) -> Outcome {
    let failed: Vec<String> =
        reports.iter().filter(|r| !r.pass).map(|r| format!("{} on {}", r.check, r.algebra)).collect();
    Outcome { pass: failed.is_empty(), detail: failed.join(", ") }
}

fn criterion(results: &mut Vec<bool>, id: u32, name: &str, limit: Option<Duration>, f: impl FnOnce() -> Outcome) {
    let start = Instant::now();
    let out = f();
    let elapsed = start.elapsed();
    let in_time = limit.is_none_or(|l| elapsed < l);
    let pass = out.pass && in_time;
    let limit_text = limit.map_or(String::new(), |l| format!(" (limit {:.0?})", l));
    let mut line = format!("{} {id:>2} {name}: {:.2?}{limit_text}", if pass { "PASS" } else { "FAIL" }, elapsed);
    if !out.detail.is_empty() {
        line += &format!(" [{}]", out.detail);
    }
    if !in_time {
        line += " [over time limit]";
    }
    println!("{line}");
    results.push(pass);
}

fn golden_dhat() -> Outcome {
    let mut bad = Vec::new();
    for id in ["heisenberg", "su2"] {
        let lie = StructureConstants::from_catalog(id).unwrap();
        let n = lie.dim();
        for i in 0..n {
            for j in i + 1..n {
                let mut want = UFormElement::dx(n, i)
                    .mul(&UFormElement::gen(n, j), &lie)
                    .add(&UFormElement::dx(n, j).mul(&UFormElement::gen(n, i), &lie));
                for (k, c) in lie.bracket(i, j) {
                    want = want.add(&UFormElement::dx(n, k).scale(&(&c * &half())));
                }
                let expr = format!("X{}*X{}", i + 1, j + 1);
                let (code, out, _) = twistcalc::run(["twistcalc", "--algebra", id, "dhat", &expr]);
                if code != 0 || out.trim() != want.to_string() {
                    bad.push(format!("{id} {expr}: {}", out.trim()));
                }
            }
        }
    }
    let (_, out, _) = twistcalc::run(["twistcalc", "dhat", "X1*X2"]);
    if out.trim() != "X2 dx1 + X1 dx2 + 1/2 dx3" {
        bad.push(format!("heisenberg rendering: {}", out.trim()));
    }
    Outcome { pass: bad.is_empty(), detail: bad.join("; ") }
}

fn per_catalog(f: impl Fn(&RealizationContext) -> Vec<CheckReport>) -> Outcome {
    let reports: Vec<CheckReport> = CATALOG.iter().flat_map(|id| f(&symmetric(id))).collect();
    from_reports(&reports)
}

fn abelian_verify() -> Outcome {
    let (code, out, err) =
        twistcalc::run(["twistcalc", "--algebra", "abelian:4", "--ordering", "classical", "--format", "json", "verify"]);
    let v: serde_json::Value = match serde_json::from_str(&out) {
        Ok(v) => v,
        Err(e) => return Outcome { pass: false, detail: format!("bad json ({e}): {err}") },
    };
    let checks = v["checks"].as_array().cloned().unwrap_or_default();
    let degeneration = checks.iter().any(|c| c["check"] == "abelian_degeneration" && c["pass"] == true);
    let all = checks.iter().all(|c| c["pass"] == true);
    let mut detail = Vec::new();
    if code != 0 {
        detail.push(format!("exit {code}"));
    }
    if !degeneration {
        detail.push("abelian_degeneration missing or failing".to_string());
    }
    Outcome { pass: code == 0 && all && degeneration, detail: detail.join(", ") }
}

fn determinism() -> Outcome {
    let mut bad = Vec::new();
    for id in ["heisenberg", "kappa:3:1", "axb"] {
        let mut config = RunConfig::new(AlgebraSource::Catalog(id.into()), OrderingSpec::Symmetric, TRUNC, DEGREE);
        config.format = Format::Json;
        let first = cmd_verify(&config).unwrap().render(Format::Json);
        let second = cmd_verify(&config).unwrap().render(Format::Json);
        config.exec = Exec::Sequential;
        let sequential = cmd_verify(&config).unwrap().render(Format::Json);
        if first != second {
            bad.push(format!("{id}: repeated run differs"));
        }
        if first != sequential {
            bad.push(format!("{id}: sequential run differs"));
        }
    }
    Outcome { pass: bad.is_empty(), detail: bad.join("; ") }
}

fn main() {
    let secs = Duration::from_secs;
    let mut results = Vec::new();
    criterion(&mut results, 1, "golden dhat(Xi*Xj) on heisenberg and su2", Some(secs(1)), golden_dhat);
    criterion(&mut results, 2, "phi equation residual at N = 6", Some(secs(10)), || {
        per_catalog(|ctx| vec![ctx.phi_equation_report()])
    });
    criterion(&mut results, 3, "commutation relations to order N - 1", Some(secs(30)), || {
        per_catalog(|ctx| vec![ctx.check_relations()])
    });
    criterion(&mut results, 4, "phi-tilde homomorphism to order N - 2", Some(secs(30)), || {
        per_catalog(|ctx| vec![ctx.check_phitilde_homomorphism()])
    });
    criterion(&mut results, 5, "dhat^2 = 0 on basis forms of U-degree <= 4", Some(secs(30)), || {
        per_catalog(|ctx| vec![ctx.check_dhat_squared(&form_basis(ctx.dim(), DEGREE))])
    });
    criterion(&mut results, 6, "xi round trip, graded rule, vacuum compatibility", Some(secs(30)), || {
        per_catalog(|ctx| {
            let samples = verify_samples(ctx.dim(), DEGREE, twistcalc::commands::DEFAULT_SEED);
            vec![
                ctx.check_xi_round_trip(DEGREE + 1),
                ctx.check_graded_rule(&samples),
                ctx.check_vacuum_compat(&samples),
            ]
        })
    });
    criterion(&mut results, 7, "closed 0-forms of degree <= 4 are constants", Some(secs(20)), || {
        per_catalog(|ctx| vec![ctx.check_closed_kernel(DEGREE)])
    });
    criterion(&mut results, 8, "star associativity and star Leibniz", Some(secs(30)), || {
        per_catalog(|ctx| vec![ctx.check_star_associativity(2), ctx.check_star_leibniz(&star_pairs(ctx.dim(), 3))])
    });
    criterion(&mut results, 9, "full verify on abelian:4 degenerates", Some(secs(5)), abelian_verify);
    criterion(&mut results, 10, "verify JSON is byte-identical across runs", None, determinism);
    let passed = results.iter().filter(|&&p| p).count();
    println!("{passed}/{} acceptance criteria passed", results.len());
    if passed != results.len() {
        std::process::exit(1);
    }
}
