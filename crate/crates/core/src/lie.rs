//! Finite-dimensional Lie algebras given by structure constants, the built-in
//! catalog, and ordering specifications.

use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{AlgebraError, Result};
use crate::rational::{frac, int, parse_rational, Rational};

/// Structure constants `C^k_{ij}` with `[x̂_i, x̂_j] = Σ_k C^k_{ij} x̂_k` (0-based slots).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct StructureConstants {
    name: String,
    dim: usize,
    basis: Vec<String>,
    c: Vec<Rational>,
}

/// First violated invariant found by [`StructureConstants::validate`] (1-based indices).
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub enum Violation {
    Antisymmetry { k: usize, i: usize, j: usize },
    Jacobi { i: usize, j: usize, k: usize, m: usize, value: String },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Antisymmetry { k, i, j } => write!(f, "C^{k}_{i}{j} != -C^{k}_{j}{i}"),
            Violation::Jacobi { i, j, k, m, value } => {
                write!(f, "Jacobi identity fails at (i,j,k,m)=({i},{j},{k},{m}): {value}")
            }
        }
    }
}

impl StructureConstants {
    pub fn new(name: impl Into<String>, dim: usize) -> Self {
        StructureConstants {
            name: name.into(),
            dim,
            basis: (1..=dim).map(|i| format!("x{i}")).collect(),
            c: vec![Rational::zero(); dim * dim * dim],
        }
    }

    fn idx(&self, k: usize, i: usize, j: usize) -> usize {
        (k * self.dim + i) * self.dim + j
    }

    /// Sets `C^k_{ij} = v` and `C^k_{ji} = -v`.
    pub fn set_bracket(&mut self, i: usize, j: usize, k: usize, v: Rational) {
        let a = self.idx(k, i, j);
        let b = self.idx(k, j, i);
        self.c[b] = -v.clone();
        self.c[a] = v;
    }

    /// Sets a single entry without completing antisymmetry.
    pub fn set_raw(&mut self, k: usize, i: usize, j: usize, v: Rational) {
        let a = self.idx(k, i, j);
        self.c[a] = v;
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn basis(&self) -> &[String] {
        &self.basis
    }

    /// `C^k_{ij}`.
    pub fn get(&self, k: usize, i: usize, j: usize) -> &Rational {
        &self.c[self.idx(k, i, j)]
    }

    /// Nonzero `(k, C^k_{ij})`.
    pub fn bracket(&self, i: usize, j: usize) -> Vec<(usize, Rational)> {
        (0..self.dim)
            .filter_map(|k| {
                let v = self.get(k, i, j);
                (!v.is_zero()).then(|| (k, v.clone()))
            })
            .collect()
    }

    pub fn is_abelian(&self) -> bool {
        self.c.iter().all(Zero::is_zero)
    }

    /// Checks antisymmetry and the Jacobi identity exactly, reporting the first failure.
    pub fn validate(&self) -> std::result::Result<(), Violation> {
        let n = self.dim;
        for k in 0..n {
            for i in 0..n {
                for j in 0..n {
                    if *self.get(k, i, j) != -self.get(k, j, i) {
                        return Err(Violation::Antisymmetry { k: k + 1, i: i + 1, j: j + 1 });
                    }
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    for m in 0..n {
                        let mut v = Rational::zero();
                        for s in 0..n {
                            v += self.get(s, i, j) * self.get(m, s, k);
                            v += self.get(s, j, k) * self.get(m, s, i);
                            v += self.get(s, k, i) * self.get(m, s, j);
                        }
                        if !v.is_zero() {
                            return Err(Violation::Jacobi {
                                i: i + 1,
                                j: j + 1,
                                k: k + 1,
                                m: m + 1,
                                value: v.to_string(),
                            });
                        }
                    }
                }
            }
        }
        Ok(())
    }

    pub fn abelian(n: usize) -> Self {
        Self::new(format!("abelian:{n}"), n)
    }

    /// `[x̂1, x̂2] = x̂3`.
    pub fn heisenberg() -> Self {
        let mut c = Self::new("heisenberg", 3);
        c.set_bracket(0, 1, 2, int(1));
        c
    }

    /// `[x̂i, x̂j] = ε_{ijk} x̂k`.
    pub fn su2() -> Self {
        let mut c = Self::new("su2", 3);
        c.set_bracket(0, 1, 2, int(1));
        c.set_bracket(1, 2, 0, int(1));
        c.set_bracket(2, 0, 1, int(1));
        c
    }

    /// Basis `(h, e, f)`: `[h,e] = 2e`, `[h,f] = -2f`, `[e,f] = h`.
    pub fn sl2() -> Self {
        let mut c = Self::new("sl2", 3);
        c.basis = vec!["h".into(), "e".into(), "f".into()];
        c.set_bracket(0, 1, 1, int(2));
        c.set_bracket(0, 2, 2, int(-2));
        c.set_bracket(1, 2, 0, int(1));
        c
    }

    /// `[x̂1, x̂2] = x̂2`.
    pub fn axb() -> Self {
        let mut c = Self::new("axb", 2);
        c.set_bracket(0, 1, 1, int(1));
        c
    }

    /// `[x̂i, x̂n] = a x̂i` for `i < n`.
    pub fn kappa(n: usize, a: Rational) -> Self {
        let mut c = Self::new(format!("kappa:{n}:{a}"), n);
        for i in 0..n.saturating_sub(1) {
            c.set_bracket(i, n - 1, i, a.clone());
        }
        c
    }

    /// Catalog ids: `abelian:n`, `heisenberg`, `su2`, `sl2`, `axb`, `kappa:n:a`.
    pub fn from_catalog(id: &str) -> Result<Self> {
        let unknown = || AlgebraError::UnknownAlgebra(id.to_string());
        let parts: Vec<&str> = id.trim().split(':').collect();
        match parts.as_slice() {
            ["abelian", n] => Ok(Self::abelian(n.parse().map_err(|_| unknown())?)),
            ["heisenberg"] => Ok(Self::heisenberg()),
            ["su2"] => Ok(Self::su2()),
            ["sl2"] => Ok(Self::sl2()),
            ["axb"] => Ok(Self::axb()),
            ["kappa", n, a] => {
                let n: usize = n.parse().map_err(|_| unknown())?;
                if n == 0 {
                    return Err(unknown());
                }
                Ok(Self::kappa(n, parse_rational(a)?))
            }
            _ => Err(unknown()),
        }
    }

    /// Parses `{"dim", "basis", "brackets": [{"i", "j", "coeffs": {"k": "p/q"}}]}`
    /// with 1-based indices and `i < j`.
    pub fn from_json(v: &Value, name: &str) -> Result<Self> {
        let spec: AlgebraJson = serde_json::from_value(v.clone())?;
        let invalid = |m: String| AlgebraError::InvalidAlgebra(m);
        let mut c = Self::new(name, spec.dim);
        if let Some(basis) = spec.basis {
            if basis.len() != spec.dim {
                return Err(invalid(format!("basis has {} names for dim {}", basis.len(), spec.dim)));
            }
            c.basis = basis;
        }
        for b in spec.brackets {
            if !(1 <= b.i && b.i < b.j && b.j <= spec.dim) {
                return Err(invalid(format!("bracket pair ({}, {}) must satisfy 1 <= i < j <= dim", b.i, b.j)));
            }
            for (k, v) in b.coeffs {
                let k: usize = k.parse().map_err(|_| invalid(format!("bad basis index {k:?}")))?;
                if !(1..=spec.dim).contains(&k) {
                    return Err(invalid(format!("basis index {k} out of range")));
                }
                let v = match v {
                    Value::String(s) => parse_rational(&s)?,
                    Value::Number(n) => parse_rational(&n.to_string())?,
                    other => return Err(invalid(format!("bad coefficient {other}"))),
                };
                c.set_bracket(b.i - 1, b.j - 1, k - 1, v);
            }
        }
        Ok(c)
    }

    pub fn to_json(&self) -> Value {
        let mut brackets = Vec::new();
        for i in 0..self.dim {
            for j in i + 1..self.dim {
                let coeffs: serde_json::Map<String, Value> = self
                    .bracket(i, j)
                    .into_iter()
                    .map(|(k, v)| ((k + 1).to_string(), Value::String(v.to_string())))
                    .collect();
                if !coeffs.is_empty() {
                    brackets.push(serde_json::json!({"i": i + 1, "j": j + 1, "coeffs": coeffs}));
                }
            }
        }
        serde_json::json!({"dim": self.dim, "basis": self.basis, "brackets": brackets})
    }
}

#[derive(Deserialize)]
struct AlgebraJson {
    dim: usize,
    #[serde(default)]
    basis: Option<Vec<String>>,
    #[serde(default)]
    brackets: Vec<BracketJson>,
}

#[derive(Deserialize)]
struct BracketJson {
    i: usize,
    j: usize,
    coeffs: serde_json::Map<String, Value>,
}

/// Which coalgebra isomorphism `S(𝔤) → U(𝔤)` the φ datum realizes.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum OrderingSpec {
    /// `φ = I`.
    Classical,
    /// Symmetrization (coexponential) map.
    Symmetric,
    /// `φ = g(𝒞)` for `g(t) = Σ c_k t^k` with `c_0 = 1`.
    Series(Vec<Rational>),
}

impl OrderingSpec {
    /// Parses `classical`, `symmetric` or `series:c0,c1,...`.
    pub fn parse(s: &str) -> Result<Self> {
        let bad = || AlgebraError::BadOrdering(s.to_string());
        match s.trim() {
            "classical" => Ok(OrderingSpec::Classical),
            "symmetric" => Ok(OrderingSpec::Symmetric),
            other => {
                let list = other.strip_prefix("series:").ok_or_else(bad)?;
                let cs = list.split(',').map(parse_rational).collect::<Result<Vec<_>>>()?;
                match cs.first() {
                    Some(c0) if c0.is_one() => Ok(OrderingSpec::Series(cs)),
                    Some(c0) => Err(AlgebraError::BadLeadingCoefficient(c0.to_string())),
                    None => Err(bad()),
                }
            }
        }
    }
}

impl fmt::Display for OrderingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OrderingSpec::Classical => f.write_str("classical"),
            OrderingSpec::Symmetric => f.write_str("symmetric"),
            OrderingSpec::Series(cs) => {
                let s: Vec<String> = cs.iter().map(|c| c.to_string()).collect();
                write!(f, "series:{}", s.join(","))
            }
        }
    }
}

/// The catalog used by the acceptance suite.
pub fn nonabelian_catalog() -> Vec<StructureConstants> {
    vec![
        StructureConstants::heisenberg(),
        StructureConstants::su2(),
        StructureConstants::sl2(),
        StructureConstants::axb(),
        StructureConstants::kappa(3, frac(1, 1)),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_validates() {
        for c in nonabelian_catalog() {
            assert_eq!(c.validate(), Ok(()), "{}", c.name());
        }
        assert_eq!(StructureConstants::abelian(4).validate(), Ok(()));
        assert_eq!(StructureConstants::kappa(4, frac(-2, 3)).validate(), Ok(()));
    }

    #[test]
    fn tampered_su2_violates_jacobi() {
        // A sign flip that keeps antisymmetry leaves a 3-dimensional algebra of this
        // diagonal shape a Lie algebra, so tamper with an extra term instead:
        // [x1, x2] = x3 + x1.
        let mut c = StructureConstants::su2();
        c.set_bracket(0, 1, 0, int(1));
        let err = c.validate().unwrap_err();
        // independent evaluation of the reported tuple
        let Violation::Jacobi { i, j, k, m, .. } = err.clone() else { panic!("{err:?}") };
        let (i, j, k, m) = (i - 1, j - 1, k - 1, m - 1);
        let v: Rational = (0..3)
            .map(|s| {
                c.get(s, i, j) * c.get(m, s, k) + c.get(s, j, k) * c.get(m, s, i) + c.get(s, k, i) * c.get(m, s, j)
            })
            .sum();
        assert!(!v.is_zero());
    }

    #[test]
    fn sign_flip_breaks_antisymmetry() {
        let mut c = StructureConstants::su2();
        c.set_raw(2, 0, 1, int(-1));
        assert_eq!(c.validate(), Err(Violation::Antisymmetry { k: 3, i: 1, j: 2 }));
    }

    #[test]
    fn antisymmetry_violation() {
        let mut c = StructureConstants::new("broken", 2);
        c.set_raw(1, 0, 1, int(1));
        assert_eq!(c.validate(), Err(Violation::Antisymmetry { k: 2, i: 1, j: 2 }));
    }

    #[test]
    fn catalog_ids() {
        assert_eq!(StructureConstants::from_catalog("abelian:4").unwrap().dim(), 4);
        let k = StructureConstants::from_catalog("kappa:3:1/2").unwrap();
        assert_eq!(k.get(0, 0, 2), &frac(1, 2));
        assert!(StructureConstants::from_catalog("so5").is_err());
    }

    #[test]
    fn json_round_trip() {
        let v: Value = serde_json::from_str(
            r#"{"dim": 3, "basis": ["x1","x2","x3"], "brackets": [{"i":1,"j":2,"coeffs":{"3":"1"}}]}"#,
        )
        .unwrap();
        let c = StructureConstants::from_json(&v, "heisenberg").unwrap();
        assert_eq!(c, StructureConstants::heisenberg());
        assert_eq!(StructureConstants::from_json(&c.to_json(), "heisenberg").unwrap(), c);
        let bad: Value = serde_json::from_str(r#"{"dim": 2, "brackets": [{"i":2,"j":1,"coeffs":{"1":"1"}}]}"#).unwrap();
        assert!(StructureConstants::from_json(&bad, "x").is_err());
    }

    #[test]
    fn ordering_parse() {
        assert_eq!(OrderingSpec::parse("symmetric").unwrap(), OrderingSpec::Symmetric);
        let s = OrderingSpec::parse("series:1,1,1").unwrap();
        assert_eq!(s.to_string(), "series:1,1,1");
        assert!(OrderingSpec::parse("series:2,1").is_err());
        assert!(OrderingSpec::parse("weird").is_err());
    }
}
