use std::path::PathBuf;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use twisted_calculus::calculus::{form_basis, star_pairs};
use twisted_calculus::envelope::UFormElement;
use twisted_calculus::weyl::ClassicalForm;
use twisted_calculus::{
    CheckReport, Exec, OrderingSpec, Rational, RealizationContext, StructureConstants, WeylFormElement,
};

use crate::error::{CliError, CliResult};
use crate::expr::{parse, Algebra, Expr, GenKind};

pub const DEFAULT_SEED: u64 = 20_240_601;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AlgebraSource {
    Catalog(String),
    File(PathBuf),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
}

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub algebra: AlgebraSource,
    pub ordering: OrderingSpec,
    pub trunc: u32,
    pub degree: u32,
    pub seed: u64,
    pub format: Format,
    pub exec: Exec,
}

impl RunConfig {
    pub fn new(algebra: AlgebraSource, ordering: OrderingSpec, trunc: u32, degree: u32) -> Self {
        RunConfig { algebra, ordering, trunc, degree, seed: DEFAULT_SEED, format: Format::Text, exec: Exec::default() }
    }

    pub fn load_algebra(&self) -> CliResult<StructureConstants> {
        match &self.algebra {
            AlgebraSource::Catalog(id) => Ok(StructureConstants::from_catalog(id)?),
            AlgebraSource::File(path) => {
                let text = std::fs::read_to_string(path)?;
                let v: Value = serde_json::from_str(&text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
                let name = path.file_stem().map_or("custom".into(), |s| s.to_string_lossy().into_owned());
                Ok(StructureConstants::from_json(&v, &name)?)
            }
        }
    }

    pub fn context(&self) -> CliResult<RealizationContext> {
        if self.degree == 0 || self.degree > self.trunc {
            return Err(CliError::Input(format!(
                "need N >= D >= 1, got N = {} and D = {}",
                self.trunc, self.degree
            )));
        }
        Ok(RealizationContext::new(self.load_algebra()?, &self.ordering, self.trunc, self.degree, self.exec)?)
    }
}

/// Rendered result of a command.
#[derive(Clone, Debug, PartialEq)]
pub struct Outcome {
    pub text: String,
    pub json: Value,
    pub exit: i32,
}

impl Outcome {
    fn ok(text: String, json: Value) -> Self {
        Outcome { text, json, exit: 0 }
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Text => self.text.clone(),
            Format::Json => serde_json::to_string_pretty(&self.json).expect("json value") + "\n",
        }
    }
}

fn out_of_range(pos: usize, index: usize, dim: usize) -> CliError {
    CliError::parse(pos, format!("index {} out of range 1..={dim}", index + 1))
}

/// `Λ*(𝔤) ⊗ U(𝔤)`: `X` and `dx`.
struct UForms<'a>(&'a RealizationContext);

impl Algebra for UForms<'_> {
    type Elem = UFormElement;
    fn constant(&self, c: Rational) -> UFormElement {
        UFormElement::one(self.0.dim()).scale(&c)
    }
    fn generator(&self, kind: GenKind, i: usize, pos: usize) -> CliResult<UFormElement> {
        let n = self.0.dim();
        if i >= n {
            return Err(out_of_range(pos, i, n));
        }
        match kind {
            GenKind::UHat => Ok(UFormElement::gen(n, i)),
            GenKind::Dx => Ok(UFormElement::dx(n, i)),
            _ => Err(CliError::parse(pos, "only X and dx generators are allowed here")),
        }
    }
    fn add(&self, a: &UFormElement, b: &UFormElement) -> UFormElement {
        a.add(b)
    }
    fn sub(&self, a: &UFormElement, b: &UFormElement) -> UFormElement {
        a.sub(b)
    }
    fn mul(&self, a: &UFormElement, b: &UFormElement) -> CliResult<UFormElement> {
        Ok(a.mul(b, self.0.lie()))
    }
    fn neg(&self, a: &UFormElement) -> UFormElement {
        a.scale(&-Rational::from_integer(1.into()))
    }
}

/// Classical forms: `x` and `dx`.
struct Classical(usize);

impl Algebra for Classical {
    type Elem = ClassicalForm;
    fn constant(&self, c: Rational) -> ClassicalForm {
        ClassicalForm::one(self.0).scale(&c)
    }
    fn generator(&self, kind: GenKind, i: usize, pos: usize) -> CliResult<ClassicalForm> {
        if i >= self.0 {
            return Err(out_of_range(pos, i, self.0));
        }
        match kind {
            GenKind::Coord => Ok(ClassicalForm::x(self.0, i)),
            GenKind::Dx => Ok(ClassicalForm::dx(self.0, i)),
            _ => Err(CliError::parse(pos, "only x and dx generators are allowed here")),
        }
    }
    fn add(&self, a: &ClassicalForm, b: &ClassicalForm) -> ClassicalForm {
        a.add(b)
    }
    fn sub(&self, a: &ClassicalForm, b: &ClassicalForm) -> ClassicalForm {
        a.sub(b)
    }
    fn mul(&self, a: &ClassicalForm, b: &ClassicalForm) -> CliResult<ClassicalForm> {
        Ok(a.mul(b))
    }
    fn neg(&self, a: &ClassicalForm) -> ClassicalForm {
        a.scale(&-Rational::from_integer(1.into()))
    }
}

/// The φ-realization in the truncated Weyl algebra; every generator kind is allowed.
struct Realized<'a>(&'a RealizationContext);

impl Algebra for Realized<'_> {
    type Elem = WeylFormElement;
    fn constant(&self, c: Rational) -> WeylFormElement {
        WeylFormElement::constant(self.0.dim(), self.0.trunc(), c)
    }
    fn generator(&self, kind: GenKind, i: usize, pos: usize) -> CliResult<WeylFormElement> {
        let (n, trunc) = (self.0.dim(), self.0.trunc());
        if i >= n {
            return Err(out_of_range(pos, i, n));
        }
        Ok(match kind {
            GenKind::UHat => self.0.realize_x(i)?,
            GenKind::Coord => WeylFormElement::x(n, trunc, i),
            GenKind::Partial => self.0.realize_partial(i)?,
            GenKind::Dx => WeylFormElement::dx(n, trunc, i),
            GenKind::DxHat => self.0.realize_dx_hat(i)?,
        })
    }
    fn add(&self, a: &WeylFormElement, b: &WeylFormElement) -> WeylFormElement {
        a + b
    }
    fn sub(&self, a: &WeylFormElement, b: &WeylFormElement) -> WeylFormElement {
        a - b
    }
    fn mul(&self, a: &WeylFormElement, b: &WeylFormElement) -> CliResult<WeylFormElement> {
        Ok(a.checked_mul(b)?)
    }
    fn neg(&self, a: &WeylFormElement) -> WeylFormElement {
        -a
    }
}

fn only(e: &Expr, allowed: &[GenKind]) -> bool {
    e.kinds().iter().all(|k| allowed.contains(k))
}

fn header(config: &RunConfig, ctx: &RealizationContext) -> Value {
    json!({"algebra": ctx.lie().name(), "ordering": config.ordering.to_string(), "N": ctx.trunc(), "D": ctx.degree()})
}

fn with(mut base: Value, extra: Value) -> Value {
    if let (Value::Object(b), Value::Object(e)) = (&mut base, extra) {
        b.extend(e);
    }
    base
}

pub fn cmd_phi(config: &RunConfig) -> CliResult<Outcome> {
    let ctx = config.context()?;
    let text = format!("phi:\n{}phi^-1:\n{}", ctx.phi(), ctx.phi_inv());
    let json = with(header(config, &ctx), json!({"command": "phi", "phi": ctx.phi().to_json(), "phi_inv": ctx.phi_inv().to_json()}));
    Ok(Outcome::ok(text, json))
}

pub fn cmd_dhat(config: &RunConfig, src: &str) -> CliResult<Outcome> {
    let ctx = config.context()?;
    let e = parse(src)?;
    if !only(&e, &[GenKind::UHat, GenKind::Dx]) {
        return Err(CliError::Input("dhat acts on expressions in X and dx".into()));
    }
    let w = e.eval(&UForms(&ctx))?;
    let d = ctx.dhat(&w)?;
    let json = with(header(config, &ctx), json!({"command": "dhat", "input": src, "result": d.to_json(), "text": d.to_string()}));
    Ok(Outcome::ok(format!("{d}\n"), json))
}

pub fn cmd_star(config: &RunConfig, f: &str, g: &str) -> CliResult<Outcome> {
    let ctx = config.context()?;
    let alg = Classical(ctx.dim());
    let mut forms = Vec::new();
    for src in [f, g] {
        let e = parse(src)?;
        if !only(&e, &[GenKind::Coord, GenKind::Dx]) {
            return Err(CliError::Input("star acts on expressions in x and dx".into()));
        }
        forms.push(e.eval(&alg)?);
    }
    let s = ctx.star_forms(&forms[0], &forms[1])?;
    let json = with(header(config, &ctx), json!({"command": "star", "f": f, "g": g, "result": s.to_json(), "text": s.to_string()}));
    Ok(Outcome::ok(format!("{s}\n"), json))
}

/// PBW normal form for `X`/`dx` input, plain polynomial form for `x`/`dx` input,
/// and the normal-ordered realization otherwise.
pub fn cmd_normal_form(config: &RunConfig, src: &str) -> CliResult<Outcome> {
    let ctx = config.context()?;
    let e = parse(src)?;
    let (kind, text, value) = if only(&e, &[GenKind::UHat, GenKind::Dx]) {
        let w = e.eval(&UForms(&ctx))?;
        ("pbw", w.to_string(), w.to_json())
    } else if only(&e, &[GenKind::Coord, GenKind::Dx]) {
        let f = e.eval(&Classical(ctx.dim()))?;
        ("classical", f.to_string(), f.to_json())
    } else {
        let w = e.eval(&Realized(&ctx))?;
        ("realized", w.to_string(), w.to_json())
    };
    let json = with(header(config, &ctx), json!({"command": "normal-form", "input": src, "kind": kind, "result": value, "text": text}));
    Ok(Outcome::ok(format!("{text}\n"), json))
}

/// `ab − ba` in the realization, reported up to ∂-order `N − 1`.
pub fn cmd_commutator(config: &RunConfig, a: &str, b: &str) -> CliResult<Outcome> {
    let ctx = config.context()?;
    let alg = Realized(&ctx);
    let x = parse(a)?.eval(&alg)?;
    let y = parse(b)?.eval(&alg)?;
    let c = x.commutator(&y)?.truncate_order(ctx.trunc().saturating_sub(1));
    let json = with(header(config, &ctx), json!({"command": "commutator", "a": a, "b": b, "result": c.to_json(), "text": c.to_string()}));
    Ok(Outcome::ok(format!("{c}\n"), json))
}

/// Basis monomials plus a few seeded random combinations of them.
pub fn verify_samples(dim: usize, degree: u32, seed: u64) -> Vec<UFormElement> {
    let basis = form_basis(dim, degree);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut samples = basis.clone();
    for _ in 0..6 {
        let mut w = UFormElement::zero(dim);
        for _ in 0..3 {
            let pick = &basis[rng.random_range(0..basis.len())];
            let mut c: i64 = rng.random_range(1..=3);
            if rng.random_bool(0.5) {
                c = -c;
            }
            w = w.add(&pick.scale(&Rational::from_integer(c.into())));
        }
        samples.push(w);
    }
    samples
}

/// Runs every checker. The compatibility equation goes first; if it fails the
/// rest is skipped, since every other identity presupposes it.
pub fn run_verify(config: &RunConfig, ctx: &RealizationContext) -> (Vec<CheckReport>, Vec<&'static str>) {
    let n = ctx.dim();
    let d = ctx.degree();
    let trunc = ctx.trunc();
    let phi = ctx.phi_equation_report();
    let later: [&'static str; 17] = [
        "relations",
        "phitilde_homomorphism",
        "golden_example",
        "dhat_bridge",
        "xi_round_trip",
        "xi_symmetric",
        "dhat_squared",
        "graded_rule",
        "vacuum_compat",
        "closed_kernel",
        "star_associativity",
        "star_leibniz",
        "deformed_leibniz",
        "partials_commute",
        "membership_phi_forms",
        "adjoint_action",
        "abelian_degeneration",
    ];
    if !phi.pass {
        return (vec![phi], later.to_vec());
    }
    let samples = verify_samples(n, d, config.seed);
    let mut reports = vec![
        phi,
        ctx.check_relations(),
        ctx.check_phitilde_homomorphism(),
        ctx.check_golden_example(),
        ctx.check_dhat_bridge(),
        ctx.check_xi_round_trip((d + 1).min(trunc)),
    ];
    let mut skipped = Vec::new();
    if config.ordering == OrderingSpec::Symmetric {
        reports.push(ctx.check_xi_symmetric((d + 1).min(trunc)));
    } else {
        skipped.push("xi_symmetric");
    }
    reports.extend([
        ctx.check_dhat_squared(&samples),
        ctx.check_graded_rule(&samples),
        ctx.check_vacuum_compat(&samples),
        ctx.check_closed_kernel(d),
        ctx.check_star_associativity(2),
        ctx.check_star_leibniz(&star_pairs(n, 3.min(d))),
        ctx.check_deformed_leibniz(3.min(d)),
        ctx.check_partials_commute(d),
        ctx.check_membership_phi_forms(2.min(d as usize)),
        ctx.check_adjoint_action(2),
    ]);
    if ctx.lie().is_abelian() {
        reports.push(ctx.check_abelian_degeneration(&samples));
    } else {
        skipped.push("abelian_degeneration");
    }
    (reports, skipped)
}

pub fn cmd_verify(config: &RunConfig) -> CliResult<Outcome> {
    let ctx = config.context()?;
    let (reports, skipped) = run_verify(config, &ctx);
    let pass = reports.iter().all(|r| r.pass);
    let mut text = format!(
        "verify {} ordering={} N={} D={} seed={}\n",
        ctx.lie().name(),
        config.ordering,
        ctx.trunc(),
        ctx.degree(),
        config.seed
    );
    for r in &reports {
        text.push_str(&r.summary());
        text.push('\n');
    }
    for s in &skipped {
        text.push_str(&format!("SKIP {s}\n"));
    }
    text.push_str(if pass { "all checks passed\n" } else { "some checks failed\n" });
    let json = with(
        header(config, &ctx),
        json!({
            "command": "verify",
            "seed": config.seed,
            "pass": pass,
            "checks": reports.iter().map(CheckReport::to_json).collect::<Vec<_>>(),
            "skipped": skipped,
        }),
    );
    Ok(Outcome { text, json, exit: if pass { 0 } else { 1 } })
}
