//! The φ datum: the adjoint-type series matrix, φ for a chosen ordering, and
//! the compatibility equation
//! `φˡⱼ ∂ₗ(φᵏᵢ) − φˡᵢ ∂ₗ(φᵏⱼ) = Cˢᵢⱼ φᵏₛ`.
//!
//! The symmetric ordering is `φ = g(𝒞)` with `g(t) = t / (1 − e^{−t})` and
//! `𝒞ᵏᵢ = Σₛ Cᵏᵢₛ ∂ˢ`. The sign of the linear coefficient (`+1/2`) is the one
//! for which the realized generators `x̂ᵢ = Σⱼ xⱼ φʲᵢ` close under the bracket;
//! the tests pin it against the Heisenberg commutator.

use serde::Serialize;

use crate::error::Result;
use crate::exec::Exec;
use crate::lie::{OrderingSpec, StructureConstants};
use crate::matrix::SeriesMatrix;
use crate::rational::Rational;
use crate::series::{bernoulli_like_series, PowerSeries};

/// `𝒞ᵏᵢ = Σₛ Cᵏᵢₛ ∂ˢ`, homogeneous of order one.
pub fn adjoint_series_matrix(c: &StructureConstants, trunc: u32) -> SeriesMatrix {
    let n = c.dim();
    SeriesMatrix::from_fn(n, trunc, |k, i| {
        let mut e = PowerSeries::zero(n, trunc);
        for s in 0..n {
            let v = c.get(k, i, s);
            e = &e + &PowerSeries::var(n, trunc, s).scale(v);
        }
        e
    })
}

/// `φ = g(𝒞)` for the ordering's generating function `g`.
pub fn make_phi(c: &StructureConstants, spec: &OrderingSpec, trunc: u32) -> Result<SeriesMatrix> {
    let n = c.dim();
    let coeffs = bernoulli_like_series(spec, trunc)?;
    let adj = adjoint_series_matrix(c, trunc);
    let mut phi = SeriesMatrix::identity(n, trunc).scale(&coeffs[0]);
    let mut power = SeriesMatrix::identity(n, trunc);
    for ck in coeffs.iter().skip(1) {
        power = power.checked_mul(&adj)?;
        phi = phi.add(&power.scale(ck));
    }
    Ok(phi)
}

/// A nonzero entry of the compatibility residual (1-based indices).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PhiResidual {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub residual: String,
    /// Lowest total order at which the residual is nonzero.
    pub order: u32,
}

/// LHS − RHS of the compatibility equation for every `i < j` and `k`
/// (the residual is antisymmetric in `i, j`), truncated at `N − 1` because
/// each term carries one formal derivative. An empty result means φ passes.
pub fn check_phi_equation(phi: &SeriesMatrix, c: &StructureConstants, exec: Exec) -> Vec<PhiResidual> {
    let n = c.dim();
    assert_eq!(phi.dim(), n, "φ and structure constants disagree on dimension");
    let keep = phi.trunc().saturating_sub(1);
    // derivatives[l][row * n + col] = ∂ₗ φ^row_col
    let derivatives: Vec<Vec<PowerSeries>> = (0..n)
        .map(|l| {
            (0..n * n)
                .map(|rc| phi.get(rc / n, rc % n).dvar(l).expect("slot in range"))
                .collect()
        })
        .collect();
    let grid: Vec<(usize, usize, usize)> = (0..n)
        .flat_map(|i| (i + 1..n).flat_map(move |j| (0..n).map(move |k| (i, j, k))))
        .collect();
    let residuals = exec.map(&grid, |&(i, j, k)| {
        let mut r = PowerSeries::zero(n, phi.trunc());
        for l in 0..n {
            r = &r + &(phi.get(l, j) * &derivatives[l][k * n + i]);
            r = &r - &(phi.get(l, i) * &derivatives[l][k * n + j]);
        }
        for s in 0..n {
            let cs: &Rational = c.get(s, i, j);
            r = &r - &phi.get(k, s).scale(cs);
        }
        let r = r.truncate(keep);
        (!r.is_zero()).then(|| PhiResidual {
            i: i + 1,
            j: j + 1,
            k: k + 1,
            order: r.order().unwrap_or(0),
            residual: r.to_string(),
        })
    });
    residuals.into_iter().flatten().collect()
}
