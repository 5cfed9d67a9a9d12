//! Normal-ordered arithmetic in `Λ*(𝔤) ⊗ Â_n`, the exterior algebra tensored
//! with the completed Weyl algebra `[∂ʲ, xᵢ] = δʲᵢ`, and its Fock action on
//! classical forms `Λ*(𝔤) ⊗ S(𝔤)`.
//!
//! A term is `dx_E · x^α · ∂^β`. Exterior generators commute with both `x` and
//! `∂`; signs only arise between exterior factors. Products discard every term
//! of ∂-order above the truncation order `N`.
//!
//! Because `deg_∂ − deg_x` is additive under multiplication, a term dropped at
//! ∂-order `> N` can only feed terms whose ∂-order exceeds their x-degree by
//! more than `N − D` when the inputs have total x-degree `≤ D`. Comparisons of
//! truncated results therefore filter by that excess (see [`WeylFormElement::filter_excess`]).

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::One;
use serde_json::{json, Value};

use crate::error::{AlgebraError, Result};
use crate::exterior::{BasisLabel, ExteriorMonomial};
use crate::multi_index::MultiIndex;
use crate::rational::{binomial, falling, format_rational, render_sum, Rational};
use crate::series::PowerSeries;
use crate::terms::Terms;

/// `(exterior part, x-exponents, ∂-exponents)`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct WeylKey {
    pub ext: ExteriorMonomial,
    pub x: MultiIndex,
    pub d: MultiIndex,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct WeylFormElement {
    dim: usize,
    trunc: u32,
    label: BasisLabel,
    terms: Terms<WeylKey>,
}

impl WeylFormElement {
    pub fn zero(dim: usize, trunc: u32) -> Self {
        WeylFormElement { dim, trunc, label: BasisLabel::Dx, terms: Terms::new() }
    }

    pub fn constant(dim: usize, trunc: u32, c: Rational) -> Self {
        let mut w = Self::zero(dim, trunc);
        w.push(ExteriorMonomial::ONE, MultiIndex::zero(dim), MultiIndex::zero(dim), c);
        w
    }

    pub fn one(dim: usize, trunc: u32) -> Self {
        Self::constant(dim, trunc, Rational::one())
    }

    /// `c · dx_E x^α ∂^β`.
    pub fn term(dim: usize, trunc: u32, ext: ExteriorMonomial, x: MultiIndex, d: MultiIndex, c: Rational) -> Self {
        let mut w = Self::zero(dim, trunc);
        w.push(ext, x, d, c);
        w
    }

    /// The coordinate `x_{i+1}`.
    pub fn x(dim: usize, trunc: u32, i: usize) -> Self {
        Self::term(dim, trunc, ExteriorMonomial::ONE, MultiIndex::unit(dim, i), MultiIndex::zero(dim), Rational::one())
    }

    /// The derivative `∂^{i+1}`.
    pub fn partial(dim: usize, trunc: u32, i: usize) -> Self {
        Self::term(dim, trunc, ExteriorMonomial::ONE, MultiIndex::zero(dim), MultiIndex::unit(dim, i), Rational::one())
    }

    /// The differential `dx_{i+1}`.
    pub fn dx(dim: usize, trunc: u32, i: usize) -> Self {
        Self::term(dim, trunc, ExteriorMonomial::generator(i), MultiIndex::zero(dim), MultiIndex::zero(dim), Rational::one())
    }

    /// `dx_E · x^α · P(∂)`.
    pub fn from_series(ext: ExteriorMonomial, x: MultiIndex, series: &PowerSeries) -> Self {
        let mut w = Self::zero(series.dim(), series.trunc());
        for (e, c) in series.terms() {
            w.push(ext, x.clone(), e.clone(), c.clone());
        }
        w
    }

    pub fn from_classical(form: &ClassicalForm, trunc: u32) -> Self {
        let mut w = Self::zero(form.dim, trunc);
        for ((ext, x), c) in &form.terms {
            w.push(*ext, x.clone(), MultiIndex::zero(form.dim), c.clone());
        }
        w
    }

    fn push(&mut self, ext: ExteriorMonomial, x: MultiIndex, d: MultiIndex, c: Rational) {
        if d.degree() <= self.trunc {
            self.terms.add_term(WeylKey { ext, x, d }, c);
        }
    }

    pub fn with_label(mut self, label: BasisLabel) -> Self {
        self.label = label;
        self
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn trunc(&self) -> u32 {
        self.trunc
    }

    pub fn label(&self) -> BasisLabel {
        self.label
    }

    pub fn terms(&self) -> &Terms<WeylKey> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_zero()
    }

    /// Largest x-degree present.
    pub fn x_degree(&self) -> u32 {
        self.terms.keys().map(|k| k.x.degree()).max().unwrap_or(0)
    }

    fn compatible(&self, other: &Self) -> Result<()> {
        if self.dim != other.dim {
            return Err(AlgebraError::DimMismatch { left: self.dim, right: other.dim });
        }
        if self.trunc != other.trunc {
            return Err(AlgebraError::TruncMismatch { left: self.trunc, right: other.trunc });
        }
        if self.label != other.label {
            return Err(AlgebraError::LabelMismatch);
        }
        Ok(())
    }

    fn with_terms(&self, terms: Terms<WeylKey>) -> Self {
        WeylFormElement { dim: self.dim, trunc: self.trunc, label: self.label, terms }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.compatible(other)?;
        let mut t = self.terms.clone();
        t.add_assign(&other.terms);
        Ok(self.with_terms(t))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.compatible(other)?;
        let mut t = self.terms.clone();
        t.sub_assign(&other.terms);
        Ok(self.with_terms(t))
    }

    pub fn scale(&self, s: &Rational) -> Self {
        self.with_terms(self.terms.scaled(s))
    }

    /// Normal-ordered product. Per coordinate,
    /// `∂^p x^q = Σ_k binom(p, k) (q)_k x^{q-k} ∂^{p-k}`.
    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.compatible(other)?;
        let mut out = Terms::new();
        for (ka, ca) in &self.terms {
            for (kb, cb) in &other.terms {
                let Some((sign, ext)) = ka.ext.mul(kb.ext) else { continue };
                let coeff = if sign > 0 { ca * cb } else { -(ca * cb) };
                let top = ka.d.degree() + kb.d.degree();
                // |κ| must be at least top - N to survive truncation
                let min_kappa = top.saturating_sub(self.trunc);
                let x_sum = ka.x.add(&kb.x);
                let d_sum = ka.d.add(&kb.d);
                for_each_contraction(&ka.d, &kb.x, |kappa, weight| {
                    if kappa.degree() < min_kappa {
                        return;
                    }
                    let x = x_sum.checked_sub(kappa).unwrap();
                    let d = d_sum.checked_sub(kappa).unwrap();
                    out.add_term(WeylKey { ext, x, d }, &coeff * Rational::from_integer(weight));
                });
            }
        }
        Ok(self.with_terms(out))
    }

    /// Plain commutator `ab − ba`; graded signs enter only through exterior products.
    pub fn commutator(&self, other: &Self) -> Result<Self> {
        self.checked_mul(other)?.checked_sub(&other.checked_mul(self)?)
    }

    /// `a|0⟩`: the terms with no ∂.
    pub fn vacuum(&self) -> ClassicalForm {
        let mut f = ClassicalForm::zero(self.dim);
        for (k, c) in &self.terms {
            if k.d.is_zero() {
                f.terms.add_term((k.ext, k.x.clone()), c.clone());
            }
        }
        f
    }

    /// Fock action on classical forms: `∂ⁱ` differentiates, `xᵢ` multiplies,
    /// exterior factors multiply from the left.
    pub fn apply(&self, f: &ClassicalForm) -> Result<ClassicalForm> {
        if self.dim != f.dim {
            return Err(AlgebraError::DimMismatch { left: self.dim, right: f.dim });
        }
        let mut out = ClassicalForm::zero(self.dim);
        for (k, c) in &self.terms {
            for ((fe, fx), fc) in &f.terms {
                let Some(rest) = fx.checked_sub(&k.d) else { continue };
                let Some((sign, ext)) = k.ext.mul(*fe) else { continue };
                let weight: BigInt = (0..self.dim).map(|i| falling(fx.get(i) as u32, k.d.get(i) as u32)).product();
                let mut coeff = c * fc * Rational::from_integer(weight);
                if sign < 0 {
                    coeff = -coeff;
                }
                out.terms.add_term((ext, k.x.add(&rest)), coeff);
            }
        }
        Ok(out)
    }

    /// Usual exterior derivative `Σ_k dx_k ∧ [∂^k, ·]`; new differentials enter on the left.
    pub fn d_usual(&self) -> Self {
        let mut out = Terms::new();
        for (key, c) in &self.terms {
            for k in 0..self.dim {
                let a = key.x.get(k);
                if a == 0 {
                    continue;
                }
                let Some((sign, ext)) = ExteriorMonomial::generator(k).mul(key.ext) else { continue };
                let coeff = c * Rational::from_integer(BigInt::from(a));
                let coeff = if sign > 0 { coeff } else { -coeff };
                out.add_term(WeylKey { ext, x: key.x.with_decremented(k).unwrap(), d: key.d.clone() }, coeff);
            }
        }
        self.with_terms(out)
    }

    /// Keeps terms of ∂-order `<= order`.
    pub fn truncate_order(&self, order: u32) -> Self {
        self.with_terms(self.terms.filtered(|k| k.d.degree() <= order))
    }

    /// Keeps terms with `deg_∂ − deg_x <= max_excess`.
    pub fn filter_excess(&self, max_excess: i64) -> Self {
        self.with_terms(self.terms.filtered(|k| excess(k) <= max_excess))
    }

    fn min_excess(&self) -> Option<i64> {
        self.terms.keys().map(excess).min()
    }

    /// `(self · other).filter_excess(max_excess)`. Excess is additive over every
    /// term of a product, so factor terms that cannot reach the bound are skipped.
    pub fn mul_filtered(&self, other: &Self, max_excess: i64) -> Result<Self> {
        let (Some(lo_self), Some(lo_other)) = (self.min_excess(), other.min_excess()) else {
            return Ok(self.with_terms(Terms::new()));
        };
        let a = self.filter_excess(max_excess - lo_other);
        let b = other.filter_excess(max_excess - lo_self);
        Ok(a.checked_mul(&b)?.filter_excess(max_excess))
    }

    pub fn to_json(&self) -> Value {
        json!({
            "dim": self.dim,
            "trunc": self.trunc,
            "label": self.label.prefix(),
            "terms": self.terms.iter().map(|(k, c)| json!({
                "ext": k.ext.mask(),
                "x": k.x.exponents(),
                "exp": k.d.exponents(),
                "coeff": format_rational(c),
            })).collect::<Vec<_>>(),
        })
    }
}

fn excess(k: &WeylKey) -> i64 {
    k.d.degree() as i64 - k.x.degree() as i64
}

/// Calls `f(κ, Π_i binom(p_i, κ_i)·(q_i)_{κ_i})` for every `κ ≤ min(p, q)`.
fn for_each_contraction(p: &MultiIndex, q: &MultiIndex, mut f: impl FnMut(&MultiIndex, BigInt)) {
    let n = p.dim();
    let bounds: Vec<u16> = (0..n).map(|i| p.get(i).min(q.get(i))).collect();
    let mut kappa = vec![0u16; n];
    loop {
        let weight: BigInt = (0..n)
            .map(|i| binomial(p.get(i) as u32, kappa[i] as u32) * falling(q.get(i) as u32, kappa[i] as u32))
            .product();
        f(&MultiIndex::from_slice(&kappa), weight);
        // odometer increment
        let mut i = 0;
        loop {
            if i == n {
                return;
            }
            if kappa[i] < bounds[i] {
                kappa[i] += 1;
                break;
            }
            kappa[i] = 0;
            i += 1;
        }
    }
}

/// Display order: exterior ascending, then x descending, then ∂ ascending.
fn display_cmp(a: &WeylKey, b: &WeylKey) -> Ordering {
    a.ext.cmp(&b.ext).then_with(|| b.x.cmp(&a.x)).then_with(|| a.d.cmp(&b.d))
}

impl fmt::Display for WeylFormElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut items: Vec<(&WeylKey, &Rational)> = self.terms.iter().collect();
        items.sort_by(|a, b| display_cmp(a.0, b.0));
        let s = render_sum(items.into_iter().map(|(k, c)| {
            let parts: Vec<String> = [k.ext.render(self.label), k.x.render("x"), k.d.render("D")]
                .into_iter()
                .filter(|s| !s.is_empty())
                .collect();
            (c, parts.join(" "))
        }));
        f.write_str(&s)
    }
}

macro_rules! weyl_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait for &WeylFormElement {
            type Output = WeylFormElement;
            fn $method(self, rhs: &WeylFormElement) -> WeylFormElement {
                self.$checked(rhs).expect("Weyl element shape mismatch")
            }
        }
    };
}

weyl_binop!(Add, add, checked_add);
weyl_binop!(Sub, sub, checked_sub);
weyl_binop!(Mul, mul, checked_mul);

impl Neg for &WeylFormElement {
    type Output = WeylFormElement;
    fn neg(self) -> WeylFormElement {
        self.with_terms(self.terms.neg())
    }
}

/// An element of `Λ*(𝔤) ⊗ S(𝔤)`: classical differential forms with polynomial coefficients.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ClassicalForm {
    dim: usize,
    terms: Terms<(ExteriorMonomial, MultiIndex)>,
}

impl ClassicalForm {
    pub fn zero(dim: usize) -> Self {
        ClassicalForm { dim, terms: Terms::new() }
    }

    pub fn one(dim: usize) -> Self {
        Self::term(dim, ExteriorMonomial::ONE, MultiIndex::zero(dim), Rational::one())
    }

    pub fn term(dim: usize, ext: ExteriorMonomial, x: MultiIndex, c: Rational) -> Self {
        let mut f = Self::zero(dim);
        f.terms.add_term((ext, x), c);
        f
    }

    pub fn x(dim: usize, i: usize) -> Self {
        Self::term(dim, ExteriorMonomial::ONE, MultiIndex::unit(dim, i), Rational::one())
    }

    pub fn dx(dim: usize, i: usize) -> Self {
        Self::term(dim, ExteriorMonomial::generator(i), MultiIndex::zero(dim), Rational::one())
    }

    pub fn from_terms(dim: usize, terms: Terms<(ExteriorMonomial, MultiIndex)>) -> Self {
        ClassicalForm { dim, terms }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn terms(&self) -> &Terms<(ExteriorMonomial, MultiIndex)> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_zero()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut t = self.terms.clone();
        t.add_assign(&other.terms);
        ClassicalForm { dim: self.dim, terms: t }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut t = self.terms.clone();
        t.sub_assign(&other.terms);
        ClassicalForm { dim: self.dim, terms: t }
    }

    pub fn scale(&self, s: &Rational) -> Self {
        ClassicalForm { dim: self.dim, terms: self.terms.scaled(s) }
    }

    /// Graded-commutative product.
    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Terms::new();
        for ((ea, xa), ca) in &self.terms {
            for ((eb, xb), cb) in &other.terms {
                let Some((sign, ext)) = ea.mul(*eb) else { continue };
                let c = ca * cb;
                out.add_term((ext, xa.add(xb)), if sign > 0 { c } else { -c });
            }
        }
        ClassicalForm { dim: self.dim, terms: out }
    }

    /// Usual exterior derivative `Σ_k dx_k ∧ ∂f/∂x_k`.
    pub fn d(&self) -> Self {
        let mut out = Terms::new();
        for ((ext, x), c) in &self.terms {
            for k in 0..self.dim {
                let a = x.get(k);
                if a == 0 {
                    continue;
                }
                let Some((sign, e)) = ExteriorMonomial::generator(k).mul(*ext) else { continue };
                let coeff = c * Rational::from_integer(BigInt::from(a));
                out.add_term((e, x.with_decremented(k).unwrap()), if sign > 0 { coeff } else { -coeff });
            }
        }
        ClassicalForm { dim: self.dim, terms: out }
    }

    /// Largest polynomial degree present.
    pub fn degree(&self) -> u32 {
        self.terms.keys().map(|(_, x)| x.degree()).max().unwrap_or(0)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "dim": self.dim,
            "terms": self.terms.iter().map(|((e, x), c)| json!({
                "ext": e.mask(),
                "x": x.exponents(),
                "coeff": format_rational(c),
            })).collect::<Vec<_>>(),
        })
    }
}

/// Renders `Σ c · mono ext` in display order (exterior ascending, monomial descending).
pub(crate) fn render_form(
    terms: &Terms<(ExteriorMonomial, MultiIndex)>,
    var: &str,
    label: BasisLabel,
) -> String {
    let mut items: Vec<_> = terms.iter().collect();
    items.sort_by(|a, b| a.0 .0.cmp(&b.0 .0).then_with(|| b.0 .1.cmp(&a.0 .1)));
    render_sum(items.into_iter().map(|((e, x), c)| {
        let parts: Vec<String> = [x.render(var), e.render(label)].into_iter().filter(|s| !s.is_empty()).collect();
        (c, parts.join(" "))
    }))
}

impl fmt::Display for ClassicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render_form(&self.terms, "x", BasisLabel::Dx))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};

    const N: usize = 3;
    const T: u32 = 4;

    fn x(i: usize) -> WeylFormElement {
        WeylFormElement::x(N, T, i - 1)
    }
    fn p(i: usize) -> WeylFormElement {
        WeylFormElement::partial(N, T, i - 1)
    }
    fn dx(i: usize) -> WeylFormElement {
        WeylFormElement::dx(N, T, i - 1)
    }
    fn one() -> WeylFormElement {
        WeylFormElement::one(N, T)
    }

    #[test]
    fn canonical_commutation() {
        assert_eq!(&p(1) * &x(1), &(&x(1) * &p(1)) + &one());
        let x1sq = &x(1) * &x(1);
        assert_eq!(&p(1) * &x1sq, &(&x1sq * &p(1)) + &x(1).scale(&int(2)));
        assert_eq!(p(1).commutator(&x(2)).unwrap(), WeylFormElement::zero(N, T));
        assert_eq!(p(1).commutator(&x(1)).unwrap(), one());
    }

    #[test]
    fn disjoint_exterior_factors() {
        let a = &dx(1) * &x(2);
        let prod = &a * &dx(2);
        let expected = WeylFormElement::term(
            N,
            T,
            ExteriorMonomial::from_indices(&[0, 1]).unwrap(),
            MultiIndex::unit(N, 1),
            MultiIndex::zero(N),
            int(1),
        );
        assert_eq!(prod, expected);
        assert_eq!(prod.to_string(), "dx1^dx2 x2");
    }

    #[test]
    fn commutator_with_form() {
        // [dx3 · ∂²/2, x2] = dx3/2
        let a = (&dx(3) * &p(2)).scale(&frac(1, 2));
        assert_eq!(a.commutator(&x(2)).unwrap(), dx(3).scale(&frac(1, 2)));
    }

    #[test]
    fn partials_commute_with_everything_but_x() {
        for i in 1..=3 {
            for j in 1..=3 {
                assert!(p(i).commutator(&p(j)).unwrap().is_zero());
                assert!(p(j).commutator(&dx(i)).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn truncation_drops_high_order() {
        let t1 = WeylFormElement::partial(N, 1, 0);
        let prod = &t1 * &t1;
        assert!(prod.is_zero());
    }

    #[test]
    fn vacuum_examples() {
        assert!((&x(1) * &p(1)).vacuum().is_zero());
        let a = &(&(&x(1) * &x(2)) + &x(3).scale(&frac(1, 2))) + &(&(&x(3) * &p(1)) * &p(2));
        let expected = ClassicalForm::x(N, 0).mul(&ClassicalForm::x(N, 1)).add(&ClassicalForm::x(N, 2).scale(&frac(1, 2)));
        assert_eq!(a.vacuum(), expected);
        let b = &dx(1) * &x(2);
        assert_eq!(b.vacuum(), ClassicalForm::dx(N, 0).mul(&ClassicalForm::x(N, 1)));
    }

    #[test]
    fn apply_examples() {
        let cx = |i: usize| ClassicalForm::x(N, i - 1);
        assert_eq!(p(1).apply(&cx(1).mul(&cx(1))).unwrap(), cx(1).scale(&int(2)));
        assert_eq!((&x(1) * &p(1)).apply(&cx(1)).unwrap(), cx(1));
        let a = &dx(1) * &p(1);
        assert_eq!(a.apply(&cx(1).mul(&cx(2))).unwrap(), ClassicalForm::dx(N, 0).mul(&cx(2)));
        let w = &(&x(2) * &p(1)) + &x(3);
        assert_eq!(w.apply(&ClassicalForm::one(N)).unwrap(), w.vacuum());
    }

    #[test]
    fn usual_derivative() {
        let f = ClassicalForm::x(N, 0).mul(&ClassicalForm::x(N, 1));
        assert_eq!(f.d().to_string(), "x2 dx1 + x1 dx2");
        assert!(ClassicalForm::one(N).d().is_zero());
        let w = &x(1) * &x(2);
        assert_eq!(w.d_usual().vacuum(), f.d());
    }
}
