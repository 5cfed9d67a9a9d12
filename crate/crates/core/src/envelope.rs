//! `U(𝔤)` in PBW normal form, the symmetric algebra `S(𝔤)`, and the maps
//! between them.
//!
//! `ξ⁻¹` is computed by vacuum projection of the φ-realization, evaluated
//! through the Fock action `x̂ᵢ^φ = Σⱼ xⱼ φʲᵢ(∂)` on polynomials. Its matrix in
//! graded monomial bases is the identity plus strictly lower-degree
//! corrections, so `ξ` follows by back-substitution degree by degree.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::One;
use serde_json::{json, Value};

use crate::error::{AlgebraError, Result};
use crate::exec::Exec;
use crate::exterior::{BasisLabel, ExteriorMonomial};
use crate::lie::StructureConstants;
use crate::matrix::SeriesMatrix;
use crate::multi_index::MultiIndex;
use crate::rational::{factorial, falling, format_rational, render_sum, Rational};
use crate::terms::Terms;
use crate::weyl::{render_form, ClassicalForm};

macro_rules! poly_type {
    ($name:ident, $var:expr, $kind:expr) => {
        #[derive(Clone, PartialEq, Eq, Debug)]
        pub struct $name {
            dim: usize,
            terms: Terms<MultiIndex>,
        }

        impl $name {
            pub fn zero(dim: usize) -> Self {
                $name { dim, terms: Terms::new() }
            }

            pub fn one(dim: usize) -> Self {
                Self::monomial(MultiIndex::zero(dim), Rational::one())
            }

            pub fn constant(dim: usize, c: Rational) -> Self {
                Self::monomial(MultiIndex::zero(dim), c)
            }

            /// Generator with 0-based slot `i`.
            pub fn gen(dim: usize, i: usize) -> Self {
                Self::monomial(MultiIndex::unit(dim, i), Rational::one())
            }

            pub fn monomial(exp: MultiIndex, c: Rational) -> Self {
                let dim = exp.dim();
                $name { dim, terms: Terms::single(exp, c) }
            }

            pub fn from_terms(dim: usize, terms: Terms<MultiIndex>) -> Self {
                $name { dim, terms }
            }

            pub fn dim(&self) -> usize {
                self.dim
            }

            pub fn terms(&self) -> &Terms<MultiIndex> {
                &self.terms
            }

            pub fn is_zero(&self) -> bool {
                self.terms.is_zero()
            }

            pub fn degree(&self) -> u32 {
                self.terms.keys().map(MultiIndex::degree).max().unwrap_or(0)
            }

            pub fn add(&self, other: &Self) -> Self {
                let mut t = self.terms.clone();
                t.add_assign(&other.terms);
                $name { dim: self.dim, terms: t }
            }

            pub fn sub(&self, other: &Self) -> Self {
                let mut t = self.terms.clone();
                t.sub_assign(&other.terms);
                $name { dim: self.dim, terms: t }
            }

            pub fn scale(&self, s: &Rational) -> Self {
                $name { dim: self.dim, terms: self.terms.scaled(s) }
            }

            pub fn to_json(&self) -> Value {
                json!({
                    "kind": $kind,
                    "dim": self.dim,
                    "terms": self.terms.iter().map(|(e, c)| json!({
                        "exp": e.exponents(),
                        "coeff": format_rational(c),
                    })).collect::<Vec<_>>(),
                })
            }
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                let s = render_sum(self.terms.iter().rev().map(|(e, c)| (c, e.render($var))));
                f.write_str(&s)
            }
        }
    };
}

poly_type!(UElement, "X", "U");
poly_type!(SPoly, "x", "S");

impl SPoly {
    /// Coordinate derivative `∂f/∂x_{i+1}`.
    pub fn partial(&self, i: usize) -> SPoly {
        let mut out = Terms::new();
        for (e, c) in &self.terms {
            let k = e.get(i);
            if k > 0 {
                out.add_term(e.with_decremented(i).unwrap(), c * Rational::from_integer(BigInt::from(k)));
            }
        }
        SPoly { dim: self.dim, terms: out }
    }

    pub fn mul(&self, other: &SPoly) -> SPoly {
        let mut out = Terms::new();
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                out.add_term(a.add(b), ca * cb);
            }
        }
        SPoly { dim: self.dim, terms: out }
    }

    pub fn as_form(&self) -> ClassicalForm {
        ClassicalForm::from_terms(self.dim, self.terms.map_keys(|e| (ExteriorMonomial::ONE, e.clone())))
    }

    /// The 0-form part of a classical form.
    pub fn from_form(f: &ClassicalForm) -> SPoly {
        let mut out = Terms::new();
        for ((e, x), c) in f.terms() {
            if *e == ExteriorMonomial::ONE {
                out.add_term(x.clone(), c.clone());
            }
        }
        SPoly { dim: f.dim(), terms: out }
    }

    /// Identity on coefficients, reading `xᵢ` as `x̂ᵢ`; meaningful only for abelian 𝔤.
    pub fn as_u(&self) -> UElement {
        UElement { dim: self.dim, terms: self.terms.clone() }
    }
}

/// PBW rewriting `x̂ⱼ x̂ᵢ → x̂ᵢ x̂ⱼ + Σₖ Cᵏⱼᵢ x̂ₖ` for `j > i`, memoized per
/// (monomial, generator).
pub struct PbwMultiplier<'a> {
    lie: &'a StructureConstants,
    cache: HashMap<(MultiIndex, usize), Terms<MultiIndex>>,
}

impl<'a> PbwMultiplier<'a> {
    pub fn new(lie: &'a StructureConstants) -> Self {
        PbwMultiplier { lie, cache: HashMap::new() }
    }

    /// `x̂^α · x̂ⱼ` in normal form.
    pub fn mono_times_gen(&mut self, alpha: &MultiIndex, j: usize) -> Terms<MultiIndex> {
        let t = match alpha.last_nonzero() {
            Some(t) if t > j => t,
            _ => return Terms::single(alpha.with_incremented(j), Rational::one()),
        };
        let key = (alpha.clone(), j);
        if let Some(hit) = self.cache.get(&key) {
            return hit.clone();
        }
        // x̂^β x̂_t x̂_j = (x̂^β x̂_j) x̂_t + Σ_k C^k_{tj} x̂^β x̂_k
        let beta = alpha.with_decremented(t).unwrap();
        let left = self.mono_times_gen(&beta, j);
        let mut out = self.terms_times_gen(&left, t);
        for (k, ck) in self.lie.bracket(t, j) {
            let extra = self.mono_times_gen(&beta, k);
            out.add_scaled(&extra, &ck);
        }
        self.cache.insert(key, out.clone());
        out
    }

    pub fn terms_times_gen(&mut self, u: &Terms<MultiIndex>, j: usize) -> Terms<MultiIndex> {
        let mut out = Terms::new();
        for (m, c) in u {
            let prod = self.mono_times_gen(m, j);
            out.add_scaled(&prod, c);
        }
        out
    }

    /// `u · x̂_{w₁} ⋯ x̂_{w_k}`.
    pub fn times_word(&mut self, u: &Terms<MultiIndex>, word: &[usize]) -> Terms<MultiIndex> {
        word.iter().fold(u.clone(), |acc, &j| self.terms_times_gen(&acc, j))
    }

    pub fn mul_terms(&mut self, a: &Terms<MultiIndex>, b: &Terms<MultiIndex>) -> Terms<MultiIndex> {
        let mut out = Terms::new();
        for (m, c) in b {
            let prod = self.times_word(a, &m.word());
            out.add_scaled(&prod, c);
        }
        out
    }

    pub fn mul(&mut self, a: &UElement, b: &UElement) -> UElement {
        UElement { dim: a.dim, terms: self.mul_terms(&a.terms, &b.terms) }
    }

    /// Normal form of the word `x̂_{w₁} ⋯ x̂_{w_k}`.
    pub fn word(&mut self, dim: usize, word: &[usize]) -> UElement {
        UElement { dim, terms: self.times_word(&Terms::single(MultiIndex::zero(dim), Rational::one()), word) }
    }
}

/// Product in `U(𝔤)`.
pub fn u_mul(a: &UElement, b: &UElement, lie: &StructureConstants) -> UElement {
    PbwMultiplier::new(lie).mul(a, b)
}

/// Symmetrization `x_{i₁}⋯x_{i_k} ↦ (1/k!) Σ_σ x̂_{i_σ(1)}⋯x̂_{i_σ(k)}`.
pub fn xi_symm(f: &SPoly, lie: &StructureConstants) -> UElement {
    let mut pbw = PbwMultiplier::new(lie);
    let mut out = UElement::zero(f.dim);
    for (m, c) in &f.terms {
        let mut word = m.word();
        let mut acc = Terms::new();
        let mut count = 0u64;
        // distinct permutations of the multiset; each occurs Π αᵢ! times among all k!
        loop {
            acc.add_assign(&pbw.word(f.dim, &word).terms);
            count += 1;
            if !next_permutation(&mut word) {
                break;
            }
        }
        debug_assert_eq!(
            BigInt::from(count) * m.exponents().iter().map(|&e| factorial(e as u32)).product::<BigInt>(),
            factorial(m.degree())
        );
        out.terms.add_scaled(&acc, &(c / Rational::from_integer(BigInt::from(count))));
    }
    out
}

fn next_permutation(v: &mut [usize]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// Fock action of the realized generator `x̂ᵢ^φ = Σⱼ xⱼ φʲᵢ(∂)` on a polynomial.
pub fn apply_realized_generator(phi: &SeriesMatrix, i: usize, f: &SPoly) -> SPoly {
    let n = phi.dim();
    let mut out = Terms::new();
    for j in 0..n {
        let xj = MultiIndex::unit(n, j);
        for (beta, cb) in phi.get(j, i).terms() {
            for (gamma, cg) in &f.terms {
                let Some(rest) = gamma.checked_sub(beta) else { continue };
                let w: BigInt = (0..n).map(|s| falling(gamma.get(s) as u32, beta.get(s) as u32)).product();
                out.add_term(rest.add(&xj), cb * cg * Rational::from_integer(w));
            }
        }
    }
    SPoly { dim: n, terms: out }
}

/// Cached `ξ⁻¹(x̂^α)` and `ξ(x^α)` for every monomial up to a degree bound.
#[derive(Clone, Debug)]
pub struct XiTables {
    dim: usize,
    max_degree: u32,
    inv: HashMap<MultiIndex, SPoly>,
    fwd: HashMap<MultiIndex, UElement>,
}

impl XiTables {
    /// Requires `max_degree <= N` so that the vacuum projection is exact.
    pub fn build(phi: &SeriesMatrix, max_degree: u32, exec: Exec) -> Result<Self> {
        if max_degree > phi.trunc() {
            return Err(AlgebraError::TruncationTooSmall { trunc: phi.trunc(), degree: max_degree });
        }
        let n = phi.dim();
        let mut inv: HashMap<MultiIndex, SPoly> = HashMap::new();
        let mut fwd: HashMap<MultiIndex, UElement> = HashMap::new();
        inv.insert(MultiIndex::zero(n), SPoly::one(n));
        fwd.insert(MultiIndex::zero(n), UElement::one(n));
        for d in 1..=max_degree {
            let level = MultiIndex::of_degree(n, d);
            // x̂^α |0⟩ = x̂_first (x̂^{α - e_first} |0⟩)
            let inv_level = exec.map(&level, |alpha| {
                let first = alpha.exponents().iter().position(|&e| e > 0).unwrap();
                let rest = alpha.with_decremented(first).unwrap();
                apply_realized_generator(phi, first, &inv[&rest])
            });
            for (alpha, v) in level.iter().zip(inv_level) {
                inv.insert(alpha.clone(), v);
            }
            let fwd_level = exec.map(&level, |alpha| {
                let image = &inv[alpha];
                debug_assert_eq!(image.terms.coeff(alpha), Rational::one());
                let mut out = UElement::monomial(alpha.clone(), Rational::one());
                for (beta, c) in &image.terms {
                    if beta.degree() < d {
                        out.terms.add_scaled(&fwd[beta].terms, &-c.clone());
                    } else {
                        debug_assert!(beta == alpha, "vacuum image not unitriangular");
                    }
                }
                out
            });
            for (alpha, v) in level.iter().zip(fwd_level) {
                fwd.insert(alpha.clone(), v);
            }
        }
        Ok(XiTables { dim: n, max_degree, inv, fwd })
    }

    pub fn max_degree(&self) -> u32 {
        self.max_degree
    }

    fn check(&self, degree: u32) -> Result<()> {
        if degree > self.max_degree {
            return Err(AlgebraError::DegreeBound { degree, bound: self.max_degree });
        }
        Ok(())
    }

    /// `ξ⁻¹(u) = u^φ|0⟩`.
    pub fn xi_inverse(&self, u: &UElement) -> Result<SPoly> {
        self.check(u.degree())?;
        let mut out = SPoly::zero(self.dim);
        for (m, c) in &u.terms {
            out.terms.add_scaled(&self.inv[m].terms, c);
        }
        Ok(out)
    }

    pub fn xi_phi(&self, f: &SPoly) -> Result<UElement> {
        self.check(f.degree())?;
        let mut out = UElement::zero(self.dim);
        for (m, c) in &f.terms {
            out.terms.add_scaled(&self.fwd[m].terms, c);
        }
        Ok(out)
    }

    /// `∂̂ⁱ = ξ ∘ ∂ⁱ ∘ ξ⁻¹`.
    pub fn deformed_partial(&self, i: usize, u: &UElement) -> Result<UElement> {
        if i >= self.dim {
            return Err(AlgebraError::IndexOutOfRange { index: i + 1, dim: self.dim });
        }
        self.xi_phi(&self.xi_inverse(u)?.partial(i))
    }

    /// `ξ̃ = id ⊗ ξ` on `Λ*(𝔤) ⊗ S(𝔤)`.
    pub fn xi_tilde(&self, f: &ClassicalForm) -> Result<UFormElement> {
        let mut out = UFormElement::zero(self.dim);
        for ((e, x), c) in f.terms() {
            self.check(x.degree())?;
            for (m, cm) in &self.fwd[x].terms {
                out.terms.add_term((*e, m.clone()), c * cm);
            }
        }
        Ok(out)
    }

    pub fn xi_tilde_inverse(&self, w: &UFormElement) -> Result<ClassicalForm> {
        let mut out = Terms::new();
        for ((e, m), c) in &w.terms {
            self.check(m.degree())?;
            for (x, cx) in &self.inv[m].terms {
                out.add_term((*e, x.clone()), c * cx);
            }
        }
        Ok(ClassicalForm::from_terms(self.dim, out))
    }

    /// `f ⋆ g = ξ⁻¹(ξ(f) · ξ(g))`.
    pub fn star(&self, f: &SPoly, g: &SPoly, lie: &StructureConstants) -> Result<SPoly> {
        self.check(f.degree() + g.degree())?;
        let prod = u_mul(&self.xi_phi(f)?, &self.xi_phi(g)?, lie);
        self.xi_inverse(&prod)
    }

    /// Star product on forms through `ξ̃`, with the product of `Λ*(𝔤) ⊗ U(𝔤)` in the middle.
    pub fn star_forms(&self, f: &ClassicalForm, g: &ClassicalForm, lie: &StructureConstants) -> Result<ClassicalForm> {
        self.check(f.degree() + g.degree())?;
        let prod = self.xi_tilde(f)?.mul(&self.xi_tilde(g)?, lie);
        self.xi_tilde_inverse(&prod)
    }
}

/// `ξ⁻¹(u)` for a one-off computation; requires `deg u <= N`.
pub fn xi_inverse(u: &UElement, phi: &SeriesMatrix) -> Result<SPoly> {
    XiTables::build(phi, u.degree(), Exec::Sequential)?.xi_inverse(u)
}

pub fn xi_phi(f: &SPoly, phi: &SeriesMatrix) -> Result<UElement> {
    XiTables::build(phi, f.degree(), Exec::Sequential)?.xi_phi(f)
}

pub fn deformed_partial(i: usize, u: &UElement, phi: &SeriesMatrix) -> Result<UElement> {
    XiTables::build(phi, u.degree(), Exec::Sequential)?.deformed_partial(i, u)
}

pub fn star(f: &SPoly, g: &SPoly, phi: &SeriesMatrix, lie: &StructureConstants) -> Result<SPoly> {
    XiTables::build(phi, f.degree() + g.degree(), Exec::Sequential)?.star(f, g, lie)
}

pub fn star_forms(f: &ClassicalForm, g: &ClassicalForm, phi: &SeriesMatrix, lie: &StructureConstants) -> Result<ClassicalForm> {
    XiTables::build(phi, f.degree() + g.degree(), Exec::Sequential)?.star_forms(f, g, lie)
}

/// An element of `Λ*_U(𝔤) = Λ*(𝔤) ⊗ U(𝔤)`; the `dx` generators commute with `U(𝔤)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct UFormElement {
    dim: usize,
    terms: Terms<(ExteriorMonomial, MultiIndex)>,
}

impl UFormElement {
    pub fn zero(dim: usize) -> Self {
        UFormElement { dim, terms: Terms::new() }
    }

    pub fn term(ext: ExteriorMonomial, u: MultiIndex, c: Rational) -> Self {
        UFormElement { dim: u.dim(), terms: Terms::single((ext, u), c) }
    }

    pub fn one(dim: usize) -> Self {
        Self::term(ExteriorMonomial::ONE, MultiIndex::zero(dim), Rational::one())
    }

    pub fn gen(dim: usize, i: usize) -> Self {
        Self::term(ExteriorMonomial::ONE, MultiIndex::unit(dim, i), Rational::one())
    }

    pub fn dx(dim: usize, i: usize) -> Self {
        Self::term(ExteriorMonomial::generator(i), MultiIndex::zero(dim), Rational::one())
    }

    pub fn from_u(u: &UElement) -> Self {
        UFormElement { dim: u.dim, terms: u.terms.map_keys(|m| (ExteriorMonomial::ONE, m.clone())) }
    }

    pub fn from_terms(dim: usize, terms: Terms<(ExteriorMonomial, MultiIndex)>) -> Self {
        UFormElement { dim, terms }
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

    pub fn u_degree(&self) -> u32 {
        self.terms.keys().map(|(_, m)| m.degree()).max().unwrap_or(0)
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut t = self.terms.clone();
        t.add_assign(&other.terms);
        UFormElement { dim: self.dim, terms: t }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut t = self.terms.clone();
        t.sub_assign(&other.terms);
        UFormElement { dim: self.dim, terms: t }
    }

    pub fn scale(&self, s: &Rational) -> Self {
        UFormElement { dim: self.dim, terms: self.terms.scaled(s) }
    }

    /// Exterior sign times the PBW product.
    pub fn mul(&self, other: &Self, lie: &StructureConstants) -> Self {
        self.mul_with(other, &mut PbwMultiplier::new(lie))
    }

    pub fn mul_with(&self, other: &Self, pbw: &mut PbwMultiplier<'_>) -> Self {
        let mut out = Terms::new();
        for ((ea, ma), ca) in &self.terms {
            for ((eb, mb), cb) in &other.terms {
                let Some((sign, e)) = ea.mul(*eb) else { continue };
                let c = if sign > 0 { ca * cb } else { -(ca * cb) };
                let prod = pbw.times_word(&Terms::single(ma.clone(), Rational::one()), &mb.word());
                for (m, cm) in &prod {
                    out.add_term((e, m.clone()), &c * cm);
                }
            }
        }
        UFormElement { dim: self.dim, terms: out }
    }

    /// Groups terms by exterior part: `Σ_E dx_E ⊗ u_E`.
    pub fn components(&self) -> Vec<(ExteriorMonomial, UElement)> {
        let mut out: Vec<(ExteriorMonomial, UElement)> = Vec::new();
        for ((e, m), c) in &self.terms {
            match out.last_mut() {
                Some((last, u)) if last == e => u.terms.add_term(m.clone(), c.clone()),
                _ => out.push((*e, UElement::monomial(m.clone(), c.clone()))),
            }
        }
        out
    }

    pub fn to_json(&self) -> Value {
        json!({
            "kind": "UForm",
            "dim": self.dim,
            "terms": self.terms.iter().map(|((e, m), c)| json!({
                "ext": e.mask(),
                "exp": m.exponents(),
                "coeff": format_rational(c),
            })).collect::<Vec<_>>(),
        })
    }
}

impl fmt::Display for UFormElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render_form(&self.terms, "X", BasisLabel::Dx))
    }
}
