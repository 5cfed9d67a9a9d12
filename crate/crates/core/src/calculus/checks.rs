//! Checkers. Each returns a [`CheckReport`]; loops over index grids and
//! sample sets go through the context's [`Exec`](crate::exec::Exec).

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde_json::{json, Value};

use super::{uform_as_classical, CheckReport, RealizationContext};
use crate::envelope::{xi_symm, SPoly, UElement, UFormElement};
use crate::exterior::ExteriorMonomial;
use crate::linalg::RationalMatrix;
use crate::matrix::SeriesMatrix;
use crate::multi_index::MultiIndex;
use crate::rational::Rational;
use crate::series::PowerSeries;
use crate::weyl::{ClassicalForm, WeylFormElement, WeylKey};

/// A pair of classical forms for the star-product checks.
pub type StarPair = (ClassicalForm, ClassicalForm);

/// `dx_E ⊗ x̂^α` for every exterior monomial and every `|α| <= max_u_degree`.
pub fn form_basis(dim: usize, max_u_degree: u32) -> Vec<UFormElement> {
    let monos = MultiIndex::up_to_degree(dim, max_u_degree);
    ExteriorMonomial::all(dim)
        .into_iter()
        .flat_map(|e| monos.iter().map(move |a| UFormElement::term(e, a.clone(), Rational::one())))
        .collect()
}

/// Monomial forms of exterior degree `<= 1` paired so that the polynomial degrees sum to at most `max_total`.
pub fn star_pairs(dim: usize, max_total: u32) -> Vec<StarPair> {
    let exts: Vec<ExteriorMonomial> =
        std::iter::once(ExteriorMonomial::ONE).chain((0..dim).map(ExteriorMonomial::generator)).collect();
    let monos = MultiIndex::up_to_degree(dim, max_total);
    let forms: Vec<ClassicalForm> = exts
        .iter()
        .flat_map(|e| monos.iter().map(move |a| ClassicalForm::term(dim, *e, a.clone(), Rational::one())))
        .collect();
    let mut out = Vec::new();
    for f in &forms {
        for g in &forms {
            if f.degree() + g.degree() <= max_total {
                out.push((f.clone(), g.clone()));
            }
        }
    }
    out
}

const RELATIONS: [&str; 5] = ["[X_i,X_j]", "[D_i,D_j]", "[D_j,X_i]", "[D_j,dX_i]", "[dX_i,X_j]"];

/// A letter of a realized word.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Letter {
    X(usize),
    Dx(usize),
}

fn word_label(word: &[Letter]) -> String {
    word.iter()
        .map(|l| match l {
            Letter::X(i) => format!("X{}", i + 1),
            Letter::Dx(i) => format!("dX{}", i + 1),
        })
        .collect::<Vec<_>>()
        .join("*")
}

fn mono_u(a: &MultiIndex) -> UElement {
    UElement::monomial(a.clone(), Rational::one())
}

fn mono_s(a: &MultiIndex) -> SPoly {
    SPoly::monomial(a.clone(), Rational::one())
}

fn unit_form(n: usize, trunc: u32, l: usize) -> Vec<PowerSeries> {
    (0..n).map(|k| if k == l { PowerSeries::one(n, trunc) } else { PowerSeries::zero(n, trunc) }).collect()
}

impl RealizationContext {
    /// The compatibility equation for φ, truncated at `N − 1`.
    pub fn phi_equation_report(&self) -> CheckReport {
        let v = self.check_phi_equation().into_iter().map(|r| Some(serde_json::to_value(r).unwrap())).collect();
        self.report("phi_equation", v, vec![])
    }

    /// The five relation families in the realization, compared up to ∂-order `N − 1`.
    pub fn check_relations(&self) -> CheckReport {
        let n = self.dim();
        let keep = self.trunc().saturating_sub(1);
        let grid: Vec<(usize, usize, usize)> =
            (0..5).flat_map(|f| (0..n).flat_map(move |i| (0..n).map(move |j| (f, i, j)))).collect();
        let zero = WeylFormElement::zero(n, self.trunc());
        let v = self.exec().map(&grid, |&(f, i, j)| {
            let x = &self.x_hat;
            let d = |k: usize| self.realize_partial(k).unwrap();
            let r = match f {
                0 => {
                    let mut r = x[i].commutator(&x[j]).unwrap();
                    for (k, c) in self.lie().bracket(i, j) {
                        r = &r - &x[k].scale(&c);
                    }
                    r
                }
                1 => d(i).commutator(&d(j)).unwrap(),
                2 => &d(j).commutator(&x[i]).unwrap() - &self.series_element(self.phi().get(j, i)),
                3 => d(j).commutator(&self.dx_hat[i]).unwrap(),
                _ => &self.dx_hat[i].commutator(&x[j]).unwrap() - &self.phi_tilde_on_dx(j, i).unwrap(),
            };
            let r = r.truncate_order(keep);
            (r != zero).then(|| json!({"relation": RELATIONS[f], "i": i + 1, "j": j + 1, "residual": r.to_string()}))
        });
        self.report("relations", v, vec![])
    }

    /// `φ̃(x̂ᵢ)` on a 1-form `Σ_l dx̂_l f_l(∂)`. The series part is `−Σₐ φᵃᵢ ∂ₐ`;
    /// `dx_sign` multiplies `[dx̂ₗ, x̂ᵢ]` in the `dx̂` action (`−1` is the adopted convention).
    fn phi_tilde_action(&self, ms: &[Vec<Vec<PowerSeries>>], omega: &[PowerSeries], i: usize, dx_sign: i64) -> Vec<PowerSeries> {
        let s = Rational::from_integer(BigInt::from(dx_sign));
        let mut out: Vec<PowerSeries> = omega.iter().map(|f| -&self.series_bracket(f, i)).collect();
        for (l, fl) in omega.iter().enumerate() {
            if fl.is_zero() {
                continue;
            }
            for (k, m) in ms[i][l].iter().enumerate() {
                out[k] = &out[k] + &(m * fl).scale(&s);
            }
        }
        out
    }

    fn phi_tilde_tables(&self) -> Vec<Vec<Vec<PowerSeries>>> {
        let n = self.dim();
        (0..n).map(|i| (0..n).map(|l| self.phi_tilde_series(i, l)).collect()).collect()
    }

    /// `[φ̃(x̂ᵢ), φ̃(x̂ⱼ)](dx̂ₗ) − Cᵏᵢⱼ φ̃(x̂ₖ)(dx̂ₗ)` with `φ̃` acting as a derivation,
    /// up to order `N − 2`.
    pub fn check_phitilde_homomorphism(&self) -> CheckReport {
        let n = self.dim();
        let trunc = self.trunc();
        let keep = trunc.saturating_sub(2);
        let ms = self.phi_tilde_tables();
        let residual = |i: usize, j: usize, l: usize, sign: i64| -> Vec<PowerSeries> {
            let e = unit_form(n, trunc, l);
            let ij = self.phi_tilde_action(&ms, &self.phi_tilde_action(&ms, &e, j, sign), i, sign);
            let ji = self.phi_tilde_action(&ms, &self.phi_tilde_action(&ms, &e, i, sign), j, sign);
            let mut r: Vec<PowerSeries> = ij.iter().zip(&ji).map(|(a, b)| a - b).collect();
            for (k, c) in self.lie().bracket(i, j) {
                let t = self.phi_tilde_action(&ms, &e, k, sign);
                for (rk, tk) in r.iter_mut().zip(&t) {
                    *rk = &*rk - &tk.scale(&c);
                }
            }
            r.into_iter().map(|s| s.truncate(keep)).collect()
        };
        let grid: Vec<(usize, usize, usize)> =
            (0..n).flat_map(|i| (i + 1..n).flat_map(move |j| (0..n).map(move |l| (i, j, l)))).collect();
        let v: Vec<Option<Value>> = self
            .exec()
            .map(&grid, |&(i, j, l)| {
                let bad: Vec<Value> = residual(i, j, l, -1)
                    .iter()
                    .enumerate()
                    .filter(|(_, s)| !s.is_zero())
                    .map(|(k, s)| json!({"dX": k + 1, "residual": s.to_string()}))
                    .collect();
                (!bad.is_empty()).then(|| json!({"i": i + 1, "j": j + 1, "l": l + 1, "components": bad}))
            });
        let literal = self
            .exec()
            .map(&grid, |&(i, j, l)| residual(i, j, l, 1).iter().filter(|s| !s.is_zero()).count())
            .into_iter()
            .sum::<usize>();
        let notes = vec![
            "convention: phi~(X_i) w = -[w, X_i]; on series -sum_a phi^a_i d_a, on dX_l -[dX_l, X_i]".to_string(),
            format!("opposite dX sign with the same series action: {literal} nonzero residual components"),
        ];
        self.report("phitilde_homomorphism", v, notes)
    }

    /// `d̂(x̂ᵢx̂ⱼ) = x̂ⱼdxᵢ + x̂ᵢdxⱼ + ½ Σₖ Cᵏᵢⱼ dxₖ` for all `i < j`.
    pub fn check_golden_example(&self) -> CheckReport {
        let n = self.dim();
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
        let half = Rational::new(BigInt::one(), BigInt::from(2));
        let v = self.exec().map(&pairs, |&(i, j)| {
            let u = MultiIndex::unit(n, i).add(&MultiIndex::unit(n, j));
            let got = self.dhat(&UFormElement::term(ExteriorMonomial::ONE, u, Rational::one())).unwrap();
            let mut want = UFormElement::dx(n, i)
                .mul(&UFormElement::gen(n, j), self.lie())
                .add(&UFormElement::dx(n, j).mul(&UFormElement::gen(n, i), self.lie()));
            for (k, c) in self.lie().bracket(i, j) {
                want = want.add(&UFormElement::dx(n, k).scale(&(&c * &half)));
            }
            (got != want).then(|| json!({"i": i + 1, "j": j + 1, "got": got.to_string(), "expected": want.to_string()}))
        });
        self.report("golden_example", v, vec![])
    }

    /// `Σₖ dx̂ₖ (φ⁻¹)ᵏⱼ = dxⱼ` up to order `N`.
    pub fn check_dhat_bridge(&self) -> CheckReport {
        let n = self.dim();
        let idx: Vec<usize> = (0..n).collect();
        let v = self.exec().map(&idx, |&j| {
            let mut s = WeylFormElement::zero(n, self.trunc());
            for k in 0..n {
                s = &s + &(&self.dx_hat[k] * &self.series_element(self.phi_inv().get(k, j)));
            }
            let r = &s - &WeylFormElement::dx(n, self.trunc(), j);
            (!r.is_zero()).then(|| json!({"j": j + 1, "residual": r.to_string()}))
        });
        self.report("dhat_bridge", v, vec![])
    }

    /// `ξ ∘ ξ⁻¹ = id` and `ξ⁻¹ ∘ ξ = id` on monomials of degree `<= max_degree`,
    /// with `ξ⁻¹` evaluated as the vacuum of the realization and compared to the Fock tables.
    pub fn check_xi_round_trip(&self, max_degree: u32) -> CheckReport {
        let n = self.dim();
        let max_degree = max_degree.min(self.trunc());
        let monos = MultiIndex::up_to_degree(n, max_degree);
        let v = self.exec().map(&monos, |a| {
            let u = mono_u(a);
            let f = mono_s(a);
            let vac = self.vacuum_of(&u).unwrap();
            let mut bad = Vec::new();
            if vac != self.xi_inverse(&u).unwrap() {
                bad.push("vacuum projection disagrees with the Fock action");
            }
            if self.xi_phi(&vac).unwrap() != u {
                bad.push("xi(xi^-1(X^a)) != X^a");
            }
            if self.vacuum_of(&self.xi_phi(&f).unwrap()).unwrap() != f {
                bad.push("xi^-1(xi(x^a)) != x^a");
            }
            (!bad.is_empty()).then(|| json!({"monomial": a.render("x"), "failures": bad}))
        });
        self.report("xi_round_trip", v, vec![format!("monomials of degree <= {max_degree}")])
    }

    /// `ξ_φ = ξ_symm` on monomials of degree `<= max_degree`; meaningful for the symmetric ordering.
    pub fn check_xi_symmetric(&self, max_degree: u32) -> CheckReport {
        let monos = MultiIndex::up_to_degree(self.dim(), max_degree.min(self.trunc()));
        let v = self.exec().map(&monos, |a| {
            let f = mono_s(a);
            let (got, want) = (self.xi_phi(&f).unwrap(), xi_symm(&f, self.lie()));
            (got != want).then(|| json!({"monomial": a.render("x"), "xi_phi": got.to_string(), "xi_symm": want.to_string()}))
        });
        self.report("xi_symmetric", v, vec![])
    }

    /// `d̂² = 0` on every sample.
    pub fn check_dhat_squared(&self, samples: &[UFormElement]) -> CheckReport {
        let v = self.exec().map(samples, |w| {
            let dd = self.dhat(&self.dhat(w).unwrap()).unwrap();
            (!dd.is_zero()).then(|| json!({"sample": w.to_string(), "dhat2": dd.to_string()}))
        });
        self.report("dhat_squared", v, vec![format!("{} samples", samples.len())])
    }

    /// `d̂(dxₛ f̂) = −dxₛ d̂f̂` exactly, and `d̂(dx̂ₛ f̂) = −dx̂ₛ d̂f̂` in the realization
    /// (exterior degree of `f̂` at most 1), where `d̂` passes the series factor of
    /// `dx̂ₛ = Σⱼ dxⱼ φʲₛ` unchanged.
    pub fn check_graded_rule(&self, samples: &[UFormElement]) -> CheckReport {
        let n = self.dim();
        let lie = self.lie();
        let v = self.exec().map(samples, |f| {
            let df = self.dhat(f).unwrap();
            let mut bad = Vec::new();
            for s in 0..n {
                let dxs = UFormElement::dx(n, s);
                let lhs = self.dhat(&dxs.mul(f, lie)).unwrap();
                let rhs = dxs.mul(&df, lie).scale(&-Rational::one());
                if lhs != rhs {
                    bad.push(json!({"variant": "dx", "s": s + 1, "lhs": lhs.to_string(), "rhs": rhs.to_string()}));
                }
            }
            let ext_degree = f.terms().keys().map(|(e, _)| e.degree()).max().unwrap_or(0);
            if ext_degree <= 1 {
                let keep = self.certified_excess(f.u_degree());
                let rdf = self.realize_uform(&df).unwrap();
                let inner: Vec<WeylFormElement> = (0..n)
                    .map(|j| self.realize_uform(&self.dhat(&UFormElement::dx(n, j).mul(f, lie)).unwrap()).unwrap())
                    .collect();
                for s in 0..n {
                    let mut lhs = WeylFormElement::zero(n, self.trunc());
                    for (j, r) in inner.iter().enumerate() {
                        let phi_js = self.phi().get(j, s);
                        if !phi_js.is_zero() {
                            lhs = &lhs + &self.series_element(phi_js).mul_filtered(r, keep).unwrap();
                        }
                    }
                    let rhs = -&self.dx_hat[s].mul_filtered(&rdf, keep).unwrap();
                    if lhs != rhs {
                        bad.push(json!({"variant": "dX", "s": s + 1, "lhs": lhs.to_string(), "rhs": rhs.to_string()}));
                    }
                }
            }
            (!bad.is_empty()).then(|| json!({"sample": f.to_string(), "failures": bad}))
        });
        self.report("graded_rule", v, vec![format!("{} samples", samples.len())])
    }

    /// `(d̂f̂)|0⟩ = d(f̂|0⟩)`.
    pub fn check_vacuum_compat(&self, samples: &[UFormElement]) -> CheckReport {
        let v = self.exec().map(samples, |f| {
            let lhs = self.realize_uform(&self.dhat(f).unwrap()).unwrap().vacuum();
            let rhs = self.realize_uform(f).unwrap().vacuum().d();
            (lhs != rhs).then(|| json!({"sample": f.to_string(), "lhs": lhs.to_string(), "rhs": rhs.to_string()}))
        });
        self.report("vacuum_compat", v, vec![format!("{} samples", samples.len())])
    }

    /// Exact kernel of `d̂` on 0-forms of degree `<= max_degree` equals the constants,
    /// and vacuum projection maps it onto the kernel of the classical `d`.
    pub fn check_closed_kernel(&self, max_degree: u32) -> CheckReport {
        let n = self.dim();
        let max_degree = max_degree.min(self.trunc());
        let monos = MultiIndex::up_to_degree(n, max_degree);
        let images = self.exec().map(&monos, |a| {
            let w = self.dhat(&UFormElement::from_u(&mono_u(a))).unwrap();
            let classical = mono_s(a).as_form().d();
            (uform_as_classical(&w), classical)
        });
        let kernel = |forms: Vec<&ClassicalForm>| {
            let mut rows = BTreeMap::new();
            for f in &forms {
                for k in f.terms().keys() {
                    let next = rows.len();
                    rows.entry(k.clone()).or_insert(next);
                }
            }
            let mut m = RationalMatrix::zeros(rows.len(), forms.len());
            for (c, f) in forms.iter().enumerate() {
                for (k, v) in f.terms() {
                    m.set(rows[k], c, v.clone());
                }
            }
            m.nullspace()
        };
        let hat_kernel = kernel(images.iter().map(|(h, _)| h).collect());
        let classical_kernel = kernel(images.iter().map(|(_, c)| c).collect());
        let is_constants = |ker: &[Vec<Rational>]| ker.len() == 1 && ker[0].iter().skip(1).all(Zero::is_zero);
        let mut v = Vec::new();
        if !is_constants(&hat_kernel) {
            v.push(Some(json!({"kernel": "dhat", "dimension": hat_kernel.len()})));
        }
        if !is_constants(&classical_kernel) {
            v.push(Some(json!({"kernel": "d", "dimension": classical_kernel.len()})));
        }
        for vec in &hat_kernel {
            let mut u = UElement::zero(n);
            for (a, c) in monos.iter().zip(vec) {
                u = u.add(&mono_u(a).scale(c));
            }
            let vac = self.vacuum_of(&u).unwrap();
            if !vac.as_form().d().is_zero() {
                v.push(Some(json!({"kernel": "vacuum image not closed", "element": u.to_string()})));
            }
        }
        let notes = vec![
            format!("0-forms of degree <= {max_degree}; kernel of dhat has dimension {}", hat_kernel.len()),
            "the unrestricted statement (dhat f = 0 implies f = 0) fails for f = 1 and is not asserted".to_string(),
        ];
        self.report("closed_kernel", v, notes)
    }

    /// `(f ⋆ g) ⋆ h = f ⋆ (g ⋆ h)` on monomial triples of degree `<= max_degree`.
    pub fn check_star_associativity(&self, max_degree: u32) -> CheckReport {
        let n = self.dim();
        let max_degree = max_degree.min(self.trunc() / 3);
        let monos = MultiIndex::up_to_degree(n, max_degree);
        let pairs: Vec<(usize, usize)> = (0..monos.len()).flat_map(|a| (0..monos.len()).map(move |b| (a, b))).collect();
        let v = self.exec().map(&pairs, |&(a, b)| {
            let (f, g) = (mono_s(&monos[a]), mono_s(&monos[b]));
            let fg = self.star(&f, &g).unwrap();
            let mut bad = Vec::new();
            for c in &monos {
                let h = mono_s(c);
                let left = self.star(&fg, &h).unwrap();
                let right = self.star(&f, &self.star(&g, &h).unwrap()).unwrap();
                if left != right {
                    bad.push(json!({"h": h.to_string(), "left": left.to_string(), "right": right.to_string()}));
                }
            }
            (!bad.is_empty()).then(|| json!({"f": f.to_string(), "g": g.to_string(), "failures": bad}))
        });
        self.report("star_associativity", v, vec![format!("monomials of degree <= {max_degree}")])
    }

    /// `d̂(ξ̃f · ξ̃g) = ξ̃(d(f ⋆ g))`.
    pub fn check_star_leibniz(&self, pairs: &[StarPair]) -> CheckReport {
        let v = self.exec().map(pairs, |(f, g)| {
            let prod = self.xi_tilde(f).unwrap().mul(&self.xi_tilde(g).unwrap(), self.lie());
            let lhs = self.dhat(&prod).unwrap();
            let rhs = self.xi_tilde(&self.star_forms(f, g).unwrap().d()).unwrap();
            (lhs != rhs).then(|| {
                json!({"f": f.to_string(), "g": g.to_string(), "lhs": lhs.to_string(), "rhs": rhs.to_string()})
            })
        });
        self.report("star_leibniz", v, vec![format!("{} pairs", pairs.len())])
    }

    /// `∂̂ⁱ(ξf · ξg) = ξ(∂ⁱ(f ⋆ g))`, the product in the middle taken in `U(𝔤)`.
    pub fn check_deformed_leibniz(&self, max_total: u32) -> CheckReport {
        let n = self.dim();
        let monos = MultiIndex::up_to_degree(n, max_total.min(self.trunc()));
        let pairs: Vec<(&MultiIndex, &MultiIndex)> = monos
            .iter()
            .flat_map(|a| monos.iter().map(move |b| (a, b)))
            .filter(|(a, b)| a.degree() + b.degree() <= max_total)
            .collect();
        let v = self.exec().map(&pairs, |&(a, b)| {
            let (f, g) = (mono_s(a), mono_s(b));
            let prod = self.u_mul(&self.xi_phi(&f).unwrap(), &self.xi_phi(&g).unwrap());
            let fg = self.star(&f, &g).unwrap();
            let bad: Vec<usize> = (0..n)
                .filter(|&i| self.deformed_partial(i, &prod).unwrap() != self.xi_phi(&fg.partial(i)).unwrap())
                .map(|i| i + 1)
                .collect();
            (!bad.is_empty()).then(|| json!({"f": f.to_string(), "g": g.to_string(), "i": bad}))
        });
        self.report("deformed_leibniz", v, vec![])
    }

    /// `∂̂ⁱ∂̂ʲ = ∂̂ʲ∂̂ⁱ` on PBW monomials of degree `<= max_degree`.
    pub fn check_partials_commute(&self, max_degree: u32) -> CheckReport {
        let n = self.dim();
        let monos = MultiIndex::up_to_degree(n, max_degree.min(self.trunc()));
        let v = self.exec().map(&monos, |a| {
            let u = mono_u(a);
            let first: Vec<UElement> = (0..n).map(|i| self.deformed_partial(i, &u).unwrap()).collect();
            let mut bad = Vec::new();
            for i in 0..n {
                for j in i + 1..n {
                    if self.deformed_partial(i, &first[j]).unwrap() != self.deformed_partial(j, &first[i]).unwrap() {
                        bad.push((i + 1, j + 1));
                    }
                }
            }
            (!bad.is_empty()).then(|| json!({"monomial": a.render("X"), "pairs": bad}))
        });
        self.report("partials_commute", v, vec![])
    }

    /// Product of realized generators, keeping only the part certified at `max_excess`.
    fn realize_word(&self, word: &[Letter], max_excess: i64) -> WeylFormElement {
        let n = self.dim();
        let mut w = WeylFormElement::one(n, self.trunc());
        for (pos, l) in word.iter().enumerate() {
            let g = match *l {
                Letter::X(i) => &self.x_hat[i],
                Letter::Dx(i) => &self.dx_hat[i],
            };
            let remaining = (word.len() - pos - 1) as i64;
            w = w.mul_filtered(g, max_excess + remaining).expect("same shape");
        }
        w
    }

    /// `d(x̂ word)` lies in the span of words with one `dx̂` and fewer `x̂`, compared on
    /// coefficients of excess `<= N − max_word`. Words have length `<= max_word`.
    pub fn check_membership_phi_forms(&self, max_word: usize) -> CheckReport {
        let n = self.dim();
        let excess = self.trunc() as i64 - max_word as i64;
        let mut notes = vec![format!("x-words of length <= {max_word}, coefficients of excess <= {excess}")];
        if excess < 2 {
            notes.push("truncation too small for a meaningful comparison; needs N >= D + 2".to_string());
        }
        let words_of = |len: usize| -> Vec<Vec<usize>> {
            (0..len).fold(vec![vec![]], |acc, _| {
                acc.into_iter().flat_map(|w| (0..n).map(move |i| [w.clone(), vec![i]].concat())).collect()
            })
        };
        let samples: Vec<Vec<Letter>> =
            (1..=max_word).flat_map(words_of).map(|w| w.into_iter().map(Letter::X).collect()).collect();
        let mut spanning: Vec<Vec<Letter>> = Vec::new();
        for m in 0..max_word {
            for xs in words_of(m) {
                for pos in 0..=m {
                    for s in 0..n {
                        let mut w: Vec<Letter> = xs.iter().map(|&i| Letter::X(i)).collect();
                        w.insert(pos, Letter::Dx(s));
                        spanning.push(w);
                    }
                }
            }
        }
        let span_elems = self.exec().map(&spanning, |w| self.realize_word(w, excess));
        let targets =
            self.exec().map(&samples, |w| self.realize_word(w, excess).d_usual().filter_excess(excess));
        let mut rows: BTreeMap<WeylKey, usize> = BTreeMap::new();
        for e in span_elems.iter().chain(&targets) {
            for k in e.terms().keys() {
                let next = rows.len();
                rows.entry(k.clone()).or_insert(next);
            }
        }
        let mut m = RationalMatrix::zeros(rows.len(), spanning.len());
        for (c, e) in span_elems.iter().enumerate() {
            for (k, v) in e.terms() {
                m.set(rows[k], c, v.clone());
            }
        }
        let v = self.exec().map(&(0..samples.len()).collect::<Vec<_>>(), |&t| {
            let mut b = vec![Rational::zero(); rows.len()];
            for (k, val) in targets[t].terms() {
                b[rows[k]] = val.clone();
            }
            match m.solve(&b) {
                Ok(_) => None,
                Err(left) => Some(json!({
                    "sample": word_label(&samples[t]),
                    "residual_entries": left.iter().filter(|x| !x.is_zero()).count(),
                })),
            }
        });
        self.report("membership_phi_forms", v, notes)
    }

    /// `[[dx̂ₗ, x̂_a], x̂_b]` (and the single bracket) against `φ̃(γ(x̂_a x̂_b))(dx̂ₗ)`,
    /// where `φ̃(γ x̂ᵢ) = −φ̃(x̂ᵢ)`; compared up to order `N − k` for words of length `k`.
    pub fn check_adjoint_action(&self, max_len: usize) -> CheckReport {
        let n = self.dim();
        let trunc = self.trunc();
        let ms = self.phi_tilde_tables();
        let mut grid: Vec<(Vec<usize>, usize)> = Vec::new();
        for l in 0..n {
            for a in 0..n {
                grid.push((vec![a], l));
                if max_len >= 2 {
                    for b in 0..n {
                        grid.push((vec![a, b], l));
                    }
                }
            }
        }
        let v = self.exec().map(&grid, |(word, l)| {
            let keep = trunc.saturating_sub(word.len() as u32);
            let mut realized = self.dx_hat[*l].clone();
            let mut omega = unit_form(n, trunc, *l);
            for &a in word {
                realized = realized.commutator(&self.x_hat[a]).unwrap();
                omega = self.phi_tilde_action(&ms, &omega, a, -1).into_iter().map(|s| -&s).collect();
            }
            let lhs = realized.truncate_order(keep);
            let rhs = self.realize_one_form(&omega).truncate_order(keep);
            (lhs != rhs).then(|| {
                json!({"word": word.iter().map(|a| a + 1).collect::<Vec<_>>(), "l": l + 1,
                       "commutator": lhs.to_string(), "phi_tilde": rhs.to_string()})
            })
        });
        let notes = vec![
            "[..[dX_l, X_a1], .., X_ak] = phi~(gamma(X_a1 .. X_ak))(dX_l), gamma(X_i) = -X_i; words of length <= 2".to_string(),
        ];
        self.report("adjoint_action", v, notes)
    }

    /// For abelian 𝔤: φ = I, `d̂ = d`, `⋆` is the product and `∂̂ = ∂`.
    pub fn check_abelian_degeneration(&self, samples: &[UFormElement]) -> CheckReport {
        let n = self.dim();
        let mut v: Vec<Option<Value>> = Vec::new();
        if !self.lie().is_abelian() {
            v.push(Some(json!({"property": "algebra is not abelian"})));
            return self.report("abelian_degeneration", v, vec![]);
        }
        if *self.phi() != SeriesMatrix::identity(n, self.trunc()) {
            v.push(Some(json!({"property": "phi = I"})));
        }
        v.extend(self.exec().map(samples, |w| {
            let lhs = uform_as_classical(&self.dhat(w).unwrap());
            let rhs = uform_as_classical(w).d();
            (lhs != rhs).then(|| json!({"property": "dhat = d", "sample": w.to_string()}))
        }));
        let monos = MultiIndex::up_to_degree(n, (self.trunc() / 2).min(2));
        for a in &monos {
            for b in &monos {
                let (f, g) = (mono_s(a), mono_s(b));
                if self.star(&f, &g).unwrap() != f.mul(&g) {
                    v.push(Some(json!({"property": "star = product", "f": f.to_string(), "g": g.to_string()})));
                }
            }
        }
        for a in MultiIndex::up_to_degree(n, self.degree()) {
            for i in 0..n {
                let got = self.deformed_partial(i, &mono_u(&a)).unwrap();
                let want = mono_s(&a).partial(i).as_u();
                if got != want {
                    v.push(Some(json!({"property": "dhat^i = d^i", "monomial": a.render("X"), "i": i + 1})));
                }
            }
        }
        self.report("abelian_degeneration", v, vec!["dhat coincides with d".to_string()])
    }
}
