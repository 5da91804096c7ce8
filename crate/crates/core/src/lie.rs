//! Lie pairs `(g, h)` given by structure constants in an adapted basis.
//!
//! The subalgebra `h` is spanned by the first `sub_dim` basis vectors; the
//! images of the remaining ones form the canonical basis of `g/h`. The base
//! is a point, so the anchor is zero and the enveloping algebras are the
//! classical ones.

use std::fmt;
use std::path::Path;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::DenseMatrix;
use crate::rational::{self, Rational};

/// Unvalidated structure-constant table: `table[i][j][k]` is the coefficient
/// of `x_k` in `[x_i, x_j]`.
#[derive(Clone, Debug)]
pub struct RawPair {
    pub names: Vec<String>,
    pub sub_dim: usize,
    pub table: Vec<Vec<Vec<Rational>>>,
}

/// A constraint violated by a raw structure-constant table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    Antisymmetry {
        i: usize,
        j: usize,
        k: usize,
        defect: String,
    },
    Jacobi {
        triple: [usize; 3],
        names: [String; 3],
        defect: Vec<String>,
    },
    Closure {
        i: usize,
        j: usize,
        leaking: usize,
        value: String,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Antisymmetry { i, j, k, defect } => {
                write!(f, "antisymmetry fails: c[{i}][{j}][{k}] + c[{j}][{i}][{k}] = {defect}")
            }
            Violation::Jacobi { triple, names, defect } => write!(
                f,
                "Jacobi identity fails on triple ({}, {}, {}) = ({}, {}, {}): defect [{}]",
                triple[0],
                triple[1],
                triple[2],
                names[0],
                names[1],
                names[2],
                defect.join(", ")
            ),
            Violation::Closure { i, j, leaking, value } => write!(
                f,
                "subalgebra not closed: [x{i}, x{j}] has coordinate {value} on x{leaking}"
            ),
        }
    }
}

/// A validated Lie pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiePair {
    names: Vec<String>,
    sub_dim: usize,
    table: Vec<Vec<Vec<Rational>>>,
}

pub fn validate_pair(raw: RawPair) -> Result<LiePair> {
    let n = raw.names.len();
    if raw.sub_dim > n {
        return Err(Error::Format(format!(
            "subalgebra dimension {} exceeds dimension {n}",
            raw.sub_dim
        )));
    }
    if raw.table.len() != n
        || raw
            .table
            .iter()
            .any(|row| row.len() != n || row.iter().any(|v| v.len() != n))
    {
        return Err(Error::Format(format!("structure-constant table must be {n}×{n}×{n}")));
    }
    let c = &raw.table;
    let mut violations = Vec::new();

    for i in 0..n {
        for j in i..n {
            for k in 0..n {
                let defect = &c[i][j][k] + &c[j][i][k];
                if !defect.is_zero() {
                    violations.push(Violation::Antisymmetry {
                        i,
                        j,
                        k,
                        defect: defect.to_string(),
                    });
                }
            }
        }
    }

    // [x_i,[x_j,x_l]] + [x_j,[x_l,x_i]] + [x_l,[x_i,x_j]]
    for i in 0..n {
        for j in i + 1..n {
            for l in j + 1..n {
                let mut defect = vec![Rational::zero(); n];
                for (a, b, d) in [(i, j, l), (j, l, i), (l, i, j)] {
                    for m in 0..n {
                        if c[b][d][m].is_zero() {
                            continue;
                        }
                        for (t, v) in defect.iter_mut().enumerate() {
                            *v += &c[b][d][m] * &c[a][m][t];
                        }
                    }
                }
                if defect.iter().any(|v| !v.is_zero()) {
                    violations.push(Violation::Jacobi {
                        triple: [i, j, l],
                        names: [raw.names[i].clone(), raw.names[j].clone(), raw.names[l].clone()],
                        defect: defect.iter().map(ToString::to_string).collect(),
                    });
                }
            }
        }
    }

    for i in 0..raw.sub_dim {
        for j in i + 1..raw.sub_dim {
            for k in raw.sub_dim..n {
                if !c[i][j][k].is_zero() {
                    violations.push(Violation::Closure {
                        i,
                        j,
                        leaking: k,
                        value: c[i][j][k].to_string(),
                    });
                }
            }
        }
    }

    if violations.is_empty() {
        Ok(LiePair {
            names: raw.names,
            sub_dim: raw.sub_dim,
            table: raw.table,
        })
    } else {
        Err(Error::InvalidPair(violations))
    }
}

impl LiePair {
    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn sub_dim(&self) -> usize {
        self.sub_dim
    }

    /// `dim g − dim h`.
    pub fn quotient_dim(&self) -> usize {
        self.dim() - self.sub_dim
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn quotient_names(&self) -> &[String] {
        &self.names[self.sub_dim..]
    }

    pub fn structure_constant(&self, i: usize, j: usize, k: usize) -> &Rational {
        &self.table[i][j][k]
    }

    /// Coordinates of `[x_i, x_j]`.
    pub fn basis_bracket(&self, i: usize, j: usize) -> &[Rational] {
        &self.table[i][j]
    }

    pub fn to_raw(&self) -> RawPair {
        RawPair {
            names: self.names.clone(),
            sub_dim: self.sub_dim,
            table: self.table.clone(),
        }
    }

    fn check_len(&self, v: &[Rational], n: usize) -> Result<()> {
        if v.len() == n {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                expected: n,
                found: v.len(),
            })
        }
    }

    pub fn bracket(&self, x: &[Rational], y: &[Rational]) -> Result<Vec<Rational>> {
        let n = self.dim();
        self.check_len(x, n)?;
        self.check_len(y, n)?;
        let mut out = vec![Rational::zero(); n];
        for i in (0..n).filter(|&i| !x[i].is_zero()) {
            for j in (0..n).filter(|&j| !y[j].is_zero()) {
                let s = &x[i] * &y[j];
                for (k, o) in out.iter_mut().enumerate() {
                    if !self.table[i][j][k].is_zero() {
                        *o += &s * &self.table[i][j][k];
                    }
                }
            }
        }
        Ok(out)
    }

    /// Checks that `x` (a `g`-vector) lies in `h`.
    pub fn check_in_subalgebra(&self, x: &[Rational]) -> Result<()> {
        self.check_len(x, self.dim())?;
        match (self.sub_dim..self.dim()).find(|&i| !x[i].is_zero()) {
            Some(index) => Err(Error::NotInSubalgebra {
                index,
                value: x[index].to_string(),
            }),
            None => Ok(()),
        }
    }

    /// Action of `X ∈ h` on `g/h`: the class of `[X, q̃]` for any lift `q̃`.
    pub fn quotient_action(&self, x: &[Rational], q: &[Rational]) -> Result<Vec<Rational>> {
        self.check_in_subalgebra(x)?;
        self.check_len(q, self.quotient_dim())?;
        let mut lift = vec![Rational::zero(); self.sub_dim];
        lift.extend_from_slice(q);
        let b = self.bracket(x, &lift)?;
        Ok(b[self.sub_dim..].to_vec())
    }

    /// Matrix of the action of the basis vector `x_i` (`i < dim h`) on `g/h`.
    pub fn quotient_action_matrix(&self, i: usize) -> DenseMatrix {
        assert!(i < self.sub_dim);
        let k = self.quotient_dim();
        let mut m = DenseMatrix::zeros(k, k);
        for col in 0..k {
            for row in 0..k {
                m[(row, col)] = self.table[i][self.sub_dim + col][self.sub_dim + row].clone();
            }
        }
        m
    }

    /// Projection `g → g/h` on coordinates.
    pub fn project(&self, x: &[Rational]) -> Vec<Rational> {
        x[self.sub_dim..].to_vec()
    }

    pub fn basis_vector(&self, i: usize) -> Vec<Rational> {
        let mut v = vec![Rational::zero(); self.dim()];
        v[i] = rational::one();
        v
    }
}

/// On-disk pair format.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PairFile {
    pub dim: usize,
    pub subalgebra_dim: usize,
    pub basis: Vec<String>,
    #[serde(default)]
    pub brackets: Vec<BracketEntry>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BracketEntry {
    pub i: usize,
    pub j: usize,
    pub coeffs: Vec<String>,
}

impl PairFile {
    pub fn to_raw(&self) -> Result<RawPair> {
        let n = self.dim;
        if self.basis.len() != n {
            return Err(Error::Format(format!(
                "basis has {} names but dim is {n}",
                self.basis.len()
            )));
        }
        let mut table = vec![vec![vec![Rational::zero(); n]; n]; n];
        let mut seen = std::collections::BTreeSet::new();
        for e in &self.brackets {
            if e.i >= e.j || e.j >= n {
                return Err(Error::Format(format!(
                    "bracket entry ({}, {}) must satisfy i < j < {n}",
                    e.i, e.j
                )));
            }
            if !seen.insert((e.i, e.j)) {
                return Err(Error::Format(format!("duplicate bracket entry ({}, {})", e.i, e.j)));
            }
            if e.coeffs.len() != n {
                return Err(Error::Format(format!(
                    "bracket ({}, {}) has {} coefficients, expected {n}",
                    e.i,
                    e.j,
                    e.coeffs.len()
                )));
            }
            for (k, s) in e.coeffs.iter().enumerate() {
                let v = rational::parse(s)?;
                table[e.j][e.i][k] = -v.clone();
                table[e.i][e.j][k] = v;
            }
        }
        Ok(RawPair {
            names: self.basis.clone(),
            sub_dim: self.subalgebra_dim,
            table,
        })
    }

    pub fn from_pair(p: &LiePair) -> Self {
        let n = p.dim();
        let mut brackets = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                if p.table[i][j].iter().any(|v| !v.is_zero()) {
                    brackets.push(BracketEntry {
                        i,
                        j,
                        coeffs: p.table[i][j].iter().map(ToString::to_string).collect(),
                    });
                }
            }
        }
        Self {
            dim: n,
            subalgebra_dim: p.sub_dim,
            basis: p.names.clone(),
            brackets,
        }
    }
}

pub fn parse_pair_json(text: &str) -> Result<LiePair> {
    let file: PairFile = serde_json::from_str(text)?;
    validate_pair(file.to_raw()?)
}

pub fn load_pair(path: &Path) -> Result<LiePair> {
    parse_pair_json(&std::fs::read_to_string(path)?)
}

/// The pairs shipped in `corpus/`.
pub mod corpus {
    use super::{parse_pair_json, LiePair};

    pub const SL2_BOREL: &str = include_str!("../corpus/sl2_borel.json");
    pub const HEISENBERG_CENTER: &str = include_str!("../corpus/heisenberg_center.json");
    pub const SOLVABLE2_SUB1: &str = include_str!("../corpus/solvable2_sub1.json");
    pub const ABELIAN2_SUB1: &str = include_str!("../corpus/abelian2_sub1.json");
    pub const JACOBI_BROKEN: &str = include_str!("../corpus/jacobi_broken.json");

    pub const ALL: [(&str, &str); 4] = [
        ("sl2_borel", SL2_BOREL),
        ("heisenberg_center", HEISENBERG_CENTER),
        ("solvable2_sub1", SOLVABLE2_SUB1),
        ("abelian2_sub1", ABELIAN2_SUB1),
    ];

    fn load(text: &str) -> LiePair {
        parse_pair_json(text).expect("bundled pair is valid")
    }

    pub fn sl2_borel() -> LiePair {
        load(SL2_BOREL)
    }

    pub fn heisenberg_center() -> LiePair {
        load(HEISENBERG_CENTER)
    }

    pub fn solvable2_sub1() -> LiePair {
        load(SOLVABLE2_SUB1)
    }

    pub fn abelian2_sub1() -> LiePair {
        load(ABELIAN2_SUB1)
    }

    pub fn all() -> Vec<(&'static str, LiePair)> {
        ALL.iter().map(|(n, t)| (*n, load(t))).collect()
    }
}
