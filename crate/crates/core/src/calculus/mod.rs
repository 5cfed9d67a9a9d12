//! Realizations in the Weyl algebra, the twisted exterior derivative and the
//! checkers for the identities relating them.
//!
//! Generator images under a φ datum:
//! `x̂ᵢ ↦ Σⱼ xⱼ φʲᵢ`, `∂ⁱ ↦ ∂ⁱ`, `dx̂ᵢ ↦ Σⱼ dxⱼ φʲᵢ`.
//!
//! `d̂` is evaluated on `Λ*(𝔤) ⊗ U(𝔤)` as `Σⱼ dxⱼ ∂̂ʲ`, acting on the `U(𝔤)`
//! factor with the new differential entering on the left. Nothing here is
//! truncated; the realization is only used to cross-check.
//!
//! Sign convention for `φ̃`: the derivation `ω ↦ [ω, x̂ᵢ]` of the realized
//! algebra is an anti-homomorphism in `i`, so the Lie homomorphism is
//! `φ̃(x̂ᵢ) = −[ω, x̂ᵢ]`, acting on series by `−Σₐ φᵃᵢ ∂ₐ`.
//! [`RealizationContext::phi_tilde_on_dx`] returns `[dx̂ₗ, x̂ᵢ]`, i.e. the
//! action of `φ̃(γ x̂ᵢ)`.

mod checks;
mod report;

use std::collections::HashMap;
use std::sync::OnceLock;

use num_traits::One;

use crate::envelope::{PbwMultiplier, SPoly, UElement, UFormElement, XiTables};
use crate::error::{AlgebraError, Result};
use crate::exec::Exec;
use crate::exterior::ExteriorMonomial;
use crate::lie::{OrderingSpec, StructureConstants};
use crate::matrix::SeriesMatrix;
use crate::multi_index::MultiIndex;
use crate::phi::{check_phi_equation, make_phi, PhiResidual};
use crate::rational::Rational;
use crate::series::PowerSeries;
use crate::terms::Terms;
use crate::weyl::{ClassicalForm, WeylFormElement};

pub use checks::{form_basis, star_pairs, StarPair};
pub use report::CheckReport;

/// Everything derived from `(C, φ, N, D)`, with lazily built caches.
pub struct RealizationContext {
    lie: StructureConstants,
    ordering: String,
    phi: SeriesMatrix,
    phi_inv: SeriesMatrix,
    degree: u32,
    exec: Exec,
    /// `dphi[r][s * n + l] = ∂ᵣ φˢₗ`.
    dphi: Vec<Vec<PowerSeries>>,
    x_hat: Vec<WeylFormElement>,
    dx_hat: Vec<WeylFormElement>,
    xi: OnceLock<XiTables>,
    hat_partials: OnceLock<HashMap<(usize, MultiIndex), UElement>>,
    /// `realized[d]`: the certified part of `x̂^α` for `|α| = d`.
    realized: Vec<OnceLock<HashMap<MultiIndex, WeylFormElement>>>,
}

impl RealizationContext {
    /// φ from an ordering spec. Fails on an invalid algebra or `N < D`.
    pub fn new(lie: StructureConstants, ordering: &OrderingSpec, trunc: u32, degree: u32, exec: Exec) -> Result<Self> {
        let phi = make_phi(&lie, ordering, trunc)?;
        Self::with_phi(lie, phi, ordering.to_string(), degree, exec)
    }

    /// Uses a given φ. Whether it satisfies the compatibility equation is left to
    /// [`RealizationContext::check_phi_equation`].
    pub fn with_phi(lie: StructureConstants, phi: SeriesMatrix, ordering: String, degree: u32, exec: Exec) -> Result<Self> {
        lie.validate().map_err(|v| AlgebraError::InvalidAlgebra(v.to_string()))?;
        if phi.dim() != lie.dim() {
            return Err(AlgebraError::DimMismatch { left: lie.dim(), right: phi.dim() });
        }
        let trunc = phi.trunc();
        if degree == 0 || degree > trunc {
            return Err(AlgebraError::TruncationTooSmall { trunc, degree });
        }
        if !phi.is_close_to_identity() {
            return Err(AlgebraError::SingularMatrix);
        }
        let phi_inv = phi.invert()?;
        let n = lie.dim();
        let dphi = (0..n)
            .map(|r| (0..n * n).map(|sl| phi.get(sl / n, sl % n).dvar(r).expect("slot in range")).collect())
            .collect();
        let column = |i: usize, ext: &dyn Fn(usize) -> (ExteriorMonomial, MultiIndex)| {
            let mut w = WeylFormElement::zero(n, trunc);
            for j in 0..n {
                let (e, x) = ext(j);
                w = &w + &WeylFormElement::from_series(e, x, phi.get(j, i));
            }
            w
        };
        let x_hat = (0..n).map(|i| column(i, &|j| (ExteriorMonomial::ONE, MultiIndex::unit(n, j)))).collect();
        let dx_hat = (0..n).map(|i| column(i, &|j| (ExteriorMonomial::generator(j), MultiIndex::zero(n)))).collect();
        Ok(RealizationContext {
            lie,
            ordering,
            phi,
            phi_inv,
            degree,
            exec,
            dphi,
            x_hat,
            dx_hat,
            xi: OnceLock::new(),
            hat_partials: OnceLock::new(),
            realized: (0..=trunc).map(|_| OnceLock::new()).collect(),
        })
    }

    pub fn lie(&self) -> &StructureConstants {
        &self.lie
    }

    pub fn dim(&self) -> usize {
        self.lie.dim()
    }

    pub fn phi(&self) -> &SeriesMatrix {
        &self.phi
    }

    pub fn phi_inv(&self) -> &SeriesMatrix {
        &self.phi_inv
    }

    pub fn trunc(&self) -> u32 {
        self.phi.trunc()
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn exec(&self) -> Exec {
        self.exec
    }

    pub fn set_exec(&mut self, exec: Exec) {
        self.exec = exec;
    }

    pub fn ordering(&self) -> &str {
        &self.ordering
    }

    pub fn check_phi_equation(&self) -> Vec<PhiResidual> {
        check_phi_equation(&self.phi, &self.lie, self.exec)
    }

    fn index(&self, i: usize) -> Result<()> {
        if i >= self.dim() {
            return Err(AlgebraError::IndexOutOfRange { index: i + 1, dim: self.dim() });
        }
        Ok(())
    }

    /// `ξ` and `ξ⁻¹` tables for every monomial of degree `<= N`.
    pub fn xi(&self) -> &XiTables {
        self.xi.get_or_init(|| XiTables::build(&self.phi, self.trunc(), self.exec).expect("degree within truncation"))
    }

    pub fn pbw(&self) -> PbwMultiplier<'_> {
        PbwMultiplier::new(&self.lie)
    }

    /// Realized `x̂ᵢ` (0-based `i`).
    pub fn realize_x(&self, i: usize) -> Result<WeylFormElement> {
        self.index(i)?;
        Ok(self.x_hat[i].clone())
    }

    /// Realized `dx̂ᵢ`; its exterior slots are plain `dx`.
    pub fn realize_dx_hat(&self, i: usize) -> Result<WeylFormElement> {
        self.index(i)?;
        Ok(self.dx_hat[i].clone())
    }

    pub fn realize_partial(&self, i: usize) -> Result<WeylFormElement> {
        self.index(i)?;
        Ok(WeylFormElement::partial(self.dim(), self.trunc(), i))
    }

    /// A pure series `P(∂)` as a Weyl element.
    pub fn series_element(&self, s: &PowerSeries) -> WeylFormElement {
        WeylFormElement::from_series(ExteriorMonomial::ONE, MultiIndex::zero(self.dim()), s)
    }

    /// Certified excess for inputs of x-degree `deg`: terms with
    /// `deg_∂ − deg_x` above it may be affected by truncation.
    pub fn certified_excess(&self, deg: u32) -> i64 {
        self.trunc() as i64 - deg as i64
    }

    fn realized_level(&self, d: u32) -> &HashMap<MultiIndex, WeylFormElement> {
        self.realized[d as usize].get_or_init(|| {
            let n = self.dim();
            if d == 0 {
                return HashMap::from([(MultiIndex::zero(n), WeylFormElement::one(n, self.trunc()))]);
            }
            let prev = self.realized_level(d - 1);
            let level = MultiIndex::of_degree(n, d);
            let keep = self.certified_excess(d);
            let images = self.exec.map(&level, |alpha| {
                let last = alpha.last_nonzero().unwrap();
                let prefix = &prev[&alpha.with_decremented(last).unwrap()];
                prefix.mul_filtered(&self.x_hat[last], keep).expect("same shape")
            });
            level.into_iter().zip(images).collect()
        })
    }

    /// `u^φ`, the product of generator images along each PBW word. Only the part
    /// certified by the truncation (excess `<= N − deg u`) is returned; that part
    /// contains the vacuum component.
    pub fn realize_u(&self, u: &UElement) -> Result<WeylFormElement> {
        let deg = u.degree();
        if deg > self.trunc() {
            return Err(AlgebraError::DegreeBound { degree: deg, bound: self.trunc() });
        }
        let mut out = WeylFormElement::zero(self.dim(), self.trunc());
        for (m, c) in u.terms() {
            out = &out + &self.realized_level(m.degree())[m].scale(c);
        }
        Ok(out.filter_excess(self.certified_excess(deg)))
    }

    pub fn realize_uform(&self, w: &UFormElement) -> Result<WeylFormElement> {
        let deg = w.u_degree();
        if deg > self.trunc() {
            return Err(AlgebraError::DegreeBound { degree: deg, bound: self.trunc() });
        }
        let (n, trunc) = (self.dim(), self.trunc());
        let keep = self.certified_excess(deg);
        let mut out = WeylFormElement::zero(n, trunc);
        for (e, u) in w.components() {
            let ext = WeylFormElement::term(n, trunc, e, MultiIndex::zero(n), MultiIndex::zero(n), Rational::one());
            out = &out + &ext.mul_filtered(&self.realize_u(&u)?, keep)?;
        }
        Ok(out)
    }

    /// `ξ⁻¹(u)` as the vacuum of the realization, independent of the Fock tables.
    pub fn vacuum_of(&self, u: &UElement) -> Result<SPoly> {
        Ok(SPoly::from_form(&self.realize_u(u)?.vacuum()))
    }

    /// `Σ_k (φ⁻¹)ᵏₛ (∂ᵣ φˢₗ) φʳᵢ` for each `k`: the `dx̂_k` coefficients of `[dx̂ₗ, x̂ᵢ]`.
    pub fn phi_tilde_series(&self, i: usize, l: usize) -> Vec<PowerSeries> {
        let n = self.dim();
        let mut inner = vec![PowerSeries::zero(n, self.trunc()); n];
        for (s, acc) in inner.iter_mut().enumerate() {
            for r in 0..n {
                *acc = &*acc + &(&self.dphi[r][s * n + l] * self.phi.get(r, i));
            }
        }
        (0..n)
            .map(|k| {
                let mut out = PowerSeries::zero(n, self.trunc());
                for (s, v) in inner.iter().enumerate() {
                    out = &out + &(self.phi_inv.get(k, s) * v);
                }
                out
            })
            .collect()
    }

    /// `Σ_k dx̂_k (φ⁻¹)ᵏₛ (∂ᵣ φˢₗ) φʳᵢ`, realized. Equals `[dx̂ₗ, x̂ᵢ]` up to order `N − 1`.
    pub fn phi_tilde_on_dx(&self, i: usize, l: usize) -> Result<WeylFormElement> {
        self.index(i)?;
        self.index(l)?;
        Ok(self.realize_one_form(&self.phi_tilde_series(i, l)))
    }

    /// `Σ_k dx̂_k^φ · f_k(∂)`.
    pub fn realize_one_form(&self, coeffs: &[PowerSeries]) -> WeylFormElement {
        let mut out = WeylFormElement::zero(self.dim(), self.trunc());
        for (k, f) in coeffs.iter().enumerate() {
            out = &out + &(&self.dx_hat[k] * &self.series_element(f));
        }
        out
    }

    /// `[ω, x̂ᵢ]` on `ω = Σ_l dx̂ₗ f_l(∂)`, computed from φ alone:
    /// `dx̂ₗ ↦ Σ_k dx̂_k M^k_{il}` and `f ↦ Σₐ φᵃᵢ ∂ₐ f`.
    pub fn bracket_with_x_hat(&self, omega: &[PowerSeries], i: usize) -> Vec<PowerSeries> {
        let n = self.dim();
        let mut out: Vec<PowerSeries> = omega.iter().map(|f| self.series_bracket(f, i)).collect();
        for (l, fl) in omega.iter().enumerate() {
            if fl.is_zero() {
                continue;
            }
            for (k, m) in self.phi_tilde_series(i, l).into_iter().enumerate() {
                out[k] = &out[k] + &(&m * fl);
            }
        }
        debug_assert_eq!(out.len(), n);
        out
    }

    /// `[f(∂), x̂ᵢ] = Σₐ φᵃᵢ ∂ₐ f`.
    pub fn series_bracket(&self, f: &PowerSeries, i: usize) -> PowerSeries {
        let mut out = PowerSeries::zero(self.dim(), self.trunc());
        for a in 0..self.dim() {
            out = &out + &(self.phi.get(a, i) * &f.dvar(a).expect("slot in range"));
        }
        out
    }

    fn hat_partials(&self) -> &HashMap<(usize, MultiIndex), UElement> {
        self.hat_partials.get_or_init(|| {
            let n = self.dim();
            let xi = self.xi();
            let keys: Vec<(usize, MultiIndex)> = MultiIndex::up_to_degree(n, self.trunc())
                .into_iter()
                .flat_map(|a| (0..n).map(move |j| (j, a.clone())))
                .collect();
            let vals = self.exec.map(&keys, |(j, a)| {
                xi.deformed_partial(*j, &UElement::monomial(a.clone(), Rational::one())).expect("within table bound")
            });
            keys.into_iter().zip(vals).collect()
        })
    }

    /// `∂̂ʲ u`.
    pub fn deformed_partial(&self, j: usize, u: &UElement) -> Result<UElement> {
        self.index(j)?;
        let deg = u.degree();
        if deg > self.trunc() {
            return Err(AlgebraError::DegreeBound { degree: deg, bound: self.trunc() });
        }
        let table = self.hat_partials();
        let mut out = Terms::new();
        for (m, c) in u.terms() {
            out.add_scaled(table[&(j, m.clone())].terms(), c);
        }
        Ok(UElement::from_terms(self.dim(), out))
    }

    /// `d̂ = Σⱼ dxⱼ ∂̂ʲ` on `Λ*(𝔤) ⊗ U(𝔤)`.
    pub fn dhat(&self, w: &UFormElement) -> Result<UFormElement> {
        let deg = w.u_degree();
        if deg > self.trunc() {
            return Err(AlgebraError::DegreeBound { degree: deg, bound: self.trunc() });
        }
        let n = self.dim();
        let table = self.hat_partials();
        let mut out = Terms::new();
        for ((e, m), c) in w.terms() {
            for j in 0..n {
                let Some((sign, ext)) = ExteriorMonomial::generator(j).mul(*e) else { continue };
                let c = if sign > 0 { c.clone() } else { -c.clone() };
                for (b, cb) in table[&(j, m.clone())].terms() {
                    out.add_term((ext, b.clone()), &c * cb);
                }
            }
        }
        Ok(UFormElement::from_terms(n, out))
    }

    /// `ξ̃` on classical forms.
    pub fn xi_tilde(&self, f: &ClassicalForm) -> Result<UFormElement> {
        self.xi().xi_tilde(f)
    }

    pub fn xi_tilde_inverse(&self, w: &UFormElement) -> Result<ClassicalForm> {
        self.xi().xi_tilde_inverse(w)
    }

    pub fn xi_phi(&self, f: &SPoly) -> Result<UElement> {
        self.xi().xi_phi(f)
    }

    pub fn xi_inverse(&self, u: &UElement) -> Result<SPoly> {
        self.xi().xi_inverse(u)
    }

    pub fn star(&self, f: &SPoly, g: &SPoly) -> Result<SPoly> {
        self.xi().star(f, g, &self.lie)
    }

    pub fn star_forms(&self, f: &ClassicalForm, g: &ClassicalForm) -> Result<ClassicalForm> {
        self.xi().star_forms(f, g, &self.lie)
    }

    pub fn u_mul(&self, a: &UElement, b: &UElement) -> UElement {
        self.pbw().mul(a, b)
    }
}

/// Coordinate exterior derivative of a classical form.
pub fn d_usual(f: &ClassicalForm) -> ClassicalForm {
    f.d()
}

/// `Σₖ dxₖ ∧ [∂ᵏ, ·]` on a Weyl element.
pub fn d_usual_weyl(w: &WeylFormElement) -> WeylFormElement {
    w.d_usual()
}

/// Identifies `Λ*(𝔤) ⊗ U(𝔤)` with classical forms termwise; an algebra map only when 𝔤 is abelian.
pub fn uform_as_classical(w: &UFormElement) -> ClassicalForm {
    ClassicalForm::from_terms(w.dim(), w.terms().clone())
}
