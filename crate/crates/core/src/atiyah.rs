//! Connections on `g/h` extending the `h`-action, their curvature, and the
//! Atiyah cocycle in `Λ¹h* ⊗ (g/h)* ⊗ End(g/h)`.

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::ce::{ce_differential, coboundary_witness, cohomology_dim, CECochain, HModule};
use crate::error::{Error, Result};
use crate::lie::LiePair;
use crate::linalg::DenseMatrix;
use crate::rational::{int, Rational};

/// `∇_{x_i}` as a `k×k` matrix on the complement basis of `g/h`, for every
/// basis index `i` of `g`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Connection {
    nabla: Vec<DenseMatrix>,
}

impl Connection {
    /// Checks shapes and that `∇_X` is the quotient action for `X ∈ h`.
    pub fn new(pair: &LiePair, nabla: Vec<DenseMatrix>) -> Result<Self> {
        let k = pair.quotient_dim();
        if nabla.len() != pair.dim() {
            return Err(Error::InvalidConnection(format!(
                "expected {} matrices, got {}",
                pair.dim(),
                nabla.len()
            )));
        }
        if nabla.iter().any(|m| m.rows() != k || m.cols() != k) {
            return Err(Error::InvalidConnection(format!("matrices must be {k}×{k}")));
        }
        for i in 0..pair.sub_dim() {
            if nabla[i] != pair.quotient_action_matrix(i) {
                return Err(Error::InvalidConnection(format!(
                    "∇ along {} does not extend the h-action",
                    pair.names()[i]
                )));
            }
        }
        Ok(Self { nabla })
    }

    pub fn matrix(&self, i: usize) -> &DenseMatrix {
        &self.nabla[i]
    }

    /// `∇_x = Σᵢ xᵢ ∇_{x_i}`.
    pub fn along(&self, x: &[Rational]) -> DenseMatrix {
        let k = self.nabla[0].rows();
        x.iter()
            .zip(&self.nabla)
            .filter(|(c, _)| !c.is_zero())
            .fold(DenseMatrix::zeros(k, k), |acc, (c, m)| acc.add(&m.scaled(c)))
    }
}

/// The connection forced on `h` by the quotient action, with the given
/// matrices (default zero) along the complement directions.
pub fn canonical_connection(pair: &LiePair, free_params: Option<&[DenseMatrix]>) -> Result<Connection> {
    let k = pair.quotient_dim();
    let complement: Vec<DenseMatrix> = match free_params {
        None => vec![DenseMatrix::zeros(k, k); k],
        Some(p) if p.len() == k => p.to_vec(),
        Some(p) => {
            return Err(Error::InvalidConnection(format!(
                "expected {k} complement matrices, got {}",
                p.len()
            )))
        }
    };
    let nabla = (0..pair.sub_dim())
        .map(|i| pair.quotient_action_matrix(i))
        .chain(complement)
        .collect();
    Connection::new(pair, nabla)
}

/// Complement parameters with entries drawn from `−3..=3`.
pub fn random_params(pair: &LiePair, rng: &mut ChaCha8Rng) -> Vec<DenseMatrix> {
    let k = pair.quotient_dim();
    (0..k)
        .map(|_| {
            DenseMatrix::from_rows(
                (0..k)
                    .map(|_| (0..k).map(|_| int(rng.gen_range(-3..=3))).collect())
                    .collect(),
            )
        })
        .collect()
}

/// `R(x, y) = ∇_x∇_y − ∇_y∇_x − ∇_{[x,y]}`.
pub fn curvature(pair: &LiePair, conn: &Connection, x: &[Rational], y: &[Rational]) -> Result<DenseMatrix> {
    let (nx, ny) = (conn.along(x), conn.along(y));
    let nxy = conn.along(&pair.bracket(x, y)?);
    Ok(nx.commutator(&ny).sub(&nxy))
}

/// `(g/h)* ⊗ End(g/h)`, coordinate `a·k² + i·k + j` for `b_a* ⊗ E_ij`.
pub fn atiyah_module(pair: &LiePair) -> HModule {
    let q = HModule::quotient(pair);
    q.dual().tensor(&q.endomorphisms())
}

/// Splits a module vector into the matrices `φ(b_a)`.
pub fn to_matrices(k: usize, v: &[Rational]) -> Vec<DenseMatrix> {
    (0..k)
        .map(|a| {
            DenseMatrix::from_rows(
                (0..k)
                    .map(|i| (0..k).map(|j| v[a * k * k + i * k + j].clone()).collect())
                    .collect(),
            )
        })
        .collect()
}

fn from_matrices(k: usize, ms: &[DenseMatrix]) -> Vec<Rational> {
    let mut v = vec![Rational::zero(); k * k * k];
    for (a, m) in ms.iter().enumerate() {
        for i in 0..k {
            for j in 0..k {
                v[a * k * k + i * k + j] = m[(i, j)].clone();
            }
        }
    }
    v
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AtiyahCocycle {
    /// `values[X][a] = R(x_X, b_a)` for `X` an `h`-basis index.
    pub values: Vec<Vec<DenseMatrix>>,
    pub cochain: CECochain,
}

impl AtiyahCocycle {
    /// `R(X)(b_a)(b_c)` as a complement vector.
    pub fn apply(&self, x: usize, a: usize, c: usize) -> Vec<Rational> {
        let m = &self.values[x][a];
        (0..m.rows()).map(|i| m[(i, c)].clone()).collect()
    }
}

/// `R[X](b̄) = R(X, b)` with `b` the canonical lift; certified to be a cocycle.
pub fn atiyah_cocycle(pair: &LiePair, conn: &Connection) -> Result<AtiyahCocycle> {
    let (m, k) = (pair.sub_dim(), pair.quotient_dim());
    for i in 0..m {
        for j in 0..m {
            if !curvature(pair, conn, &pair.basis_vector(i), &pair.basis_vector(j))?.is_zero() {
                return Err(Error::InvalidConnection("curvature does not vanish on h × h".into()));
            }
        }
    }
    let mut values = Vec::with_capacity(m);
    let mut cochain = CECochain::zero(1);
    for x in 0..m {
        let row: Vec<DenseMatrix> = (0..k)
            .map(|a| curvature(pair, conn, &pair.basis_vector(x), &pair.basis_vector(m + a)))
            .collect::<Result<_>>()?;
        cochain.values.insert(vec![x], from_matrices(k, &row));
        values.push(row);
    }
    if !ce_differential(pair, &atiyah_module(pair), &cochain)?.is_zero() {
        return Err(Error::CocycleCertification);
    }
    Ok(AtiyahCocycle { values, cochain })
}

/// Whether the Atiyah class is nonzero; otherwise a degree-0 witness `φ` with `dφ = R`.
pub fn class_is_nonzero(pair: &LiePair, conn: &Connection) -> Result<(bool, Option<CECochain>)> {
    let r = atiyah_cocycle(pair, conn)?;
    let w = coboundary_witness(pair, &atiyah_module(pair), &r.cochain)?;
    Ok((w.is_none(), w))
}

/// A degree-0 `φ` with `dφ = R₁ − R₂`.
pub fn independence_check(pair: &LiePair, c1: &Connection, c2: &Connection) -> Result<CECochain> {
    let (r1, r2) = (atiyah_cocycle(pair, c1)?, atiyah_cocycle(pair, c2)?);
    let mut diff = r1.cochain.clone();
    for (key, v) in &r2.cochain.values {
        let e = diff
            .values
            .entry(key.clone())
            .or_insert_with(|| vec![Rational::zero(); v.len()]);
        for (a, b) in e.iter_mut().zip(v) {
            *a -= b;
        }
    }
    coboundary_witness(pair, &atiyah_module(pair), &diff)?.ok_or(Error::IndependenceFailed)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CocycleEntry {
    pub x: String,
    pub b: String,
    pub matrix: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IndependenceEntry {
    pub params: Vec<Vec<Vec<String>>>,
    pub witness_found: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AtiyahReport {
    pub cocycle: Vec<CocycleEntry>,
    pub is_cocycle: bool,
    pub class_nonzero: bool,
    pub witness: Option<Vec<CocycleEntry>>,
    pub h1_dim: usize,
    pub independence: Vec<IndependenceEntry>,
    pub all_pass: bool,
}

fn strings(m: &DenseMatrix) -> Vec<Vec<String>> {
    m.to_rows()
        .iter()
        .map(|r| r.iter().map(ToString::to_string).collect())
        .collect()
}

/// Cocycle of the zero-parameter connection, its class, `dim H¹`, and
/// independence against `samples` seeded random connections.
pub fn atiyah_report(pair: &LiePair, seed: u64, samples: usize) -> Result<AtiyahReport> {
    let k = pair.quotient_dim();
    let base = canonical_connection(pair, None)?;
    let cocycle = atiyah_cocycle(pair, &base);
    let is_cocycle = cocycle.is_ok();
    let cocycle = cocycle?;
    let entries = |ms: &[Vec<DenseMatrix>], xs: &[String]| -> Vec<CocycleEntry> {
        ms.iter()
            .zip(xs)
            .flat_map(|(row, x)| {
                row.iter().enumerate().map(move |(a, m)| CocycleEntry {
                    x: x.clone(),
                    b: pair.quotient_names()[a].clone(),
                    matrix: strings(m),
                })
            })
            .collect()
    };
    let (class_nonzero, witness) = class_is_nonzero(pair, &base)?;
    let witness = witness.map(|w| {
        let v = w.eval(&[], k * k * k);
        entries(&[to_matrices(k, &v)], &["∅".to_string()])
    });
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut independence = Vec::new();
    for _ in 0..samples {
        let params = random_params(pair, &mut rng);
        let other = canonical_connection(pair, Some(&params))?;
        let witness_found = match independence_check(pair, &base, &other) {
            Ok(_) => true,
            Err(Error::IndependenceFailed) => false,
            Err(e) => return Err(e),
        };
        independence.push(IndependenceEntry {
            params: params.iter().map(strings).collect(),
            witness_found,
        });
    }
    let h1_dim = cohomology_dim(pair, &atiyah_module(pair), 1)?;
    let all_pass = is_cocycle && independence.iter().all(|e| e.witness_found);
    Ok(AtiyahReport {
        cocycle: entries(&cocycle.values, &pair.names()[..pair.sub_dim()]),
        is_cocycle,
        class_nonzero,
        witness,
        h1_dim,
        independence,
        all_pass,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::corpus;

    fn scalar(c: i64) -> DenseMatrix {
        DenseMatrix::from_rows(vec![vec![int(c)]])
    }

    fn v(xs: &[i64]) -> Vec<Rational> {
        xs.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn borel_connection_and_curvature() {
        let p = corpus::sl2_borel();
        let conn = canonical_connection(&p, Some(&[scalar(5)])).unwrap();
        assert_eq!(conn.matrix(0), &scalar(-2));
        assert_eq!(conn.matrix(1), &scalar(0));
        assert_eq!(conn.matrix(2), &scalar(5));
        let (h, e, f) = (v(&[1, 0, 0]), v(&[0, 1, 0]), v(&[0, 0, 1]));
        // matrix oracle: 1×1 matrices commute, so R(e,f) = −∇_h, R(h,f) = 2∇_f
        assert_eq!(curvature(&p, &conn, &e, &f).unwrap(), scalar(2));
        assert_eq!(curvature(&p, &conn, &h, &f).unwrap(), scalar(10));
        assert!(curvature(&p, &conn, &h, &e).unwrap().is_zero());
        assert_eq!(
            curvature(&p, &conn, &f, &e).unwrap(),
            curvature(&p, &conn, &e, &f).unwrap().scaled(&int(-1))
        );
        assert!(canonical_connection(&p, Some(&[scalar(1), scalar(2)])).is_err());
        let bad = vec![scalar(0), scalar(0), scalar(0)];
        assert!(Connection::new(&p, bad).is_err());
    }

    #[test]
    fn borel_cocycle_and_class() {
        let p = corpus::sl2_borel();
        let conn = canonical_connection(&p, None).unwrap();
        let r = atiyah_cocycle(&p, &conn).unwrap();
        assert_eq!(r.values[1][0], scalar(2));
        assert!(r.values[0][0].is_zero());
        // dR(h,e) = h·R(e) − e·R(h) − R([h,e]) with h acting by +2 on M
        let m = atiyah_module(&p);
        assert_eq!(m.action(0), &scalar(2));
        assert_eq!(m.action(1), &scalar(0));
        let lhs = int(2) * int(2) - int(0) - int(2) * int(2);
        assert!(lhs.is_zero());
        assert!(ce_differential(&p, &m, &r.cochain).unwrap().is_zero());
        let (nonzero, w) = class_is_nonzero(&p, &conn).unwrap();
        assert!(nonzero && w.is_none());
        assert_eq!(cohomology_dim(&p, &m, 1).unwrap(), 1);
    }

    #[test]
    fn independence_witness_for_borel() {
        let p = corpus::sl2_borel();
        for (c1, c2) in [(0, 0), (3, -1), (-2, 5)] {
            let a = canonical_connection(&p, Some(&[scalar(c1)])).unwrap();
            let b = canonical_connection(&p, Some(&[scalar(c2)])).unwrap();
            let phi = independence_check(&p, &a, &b).unwrap();
            // R₁ − R₂ lives on h with value 2(c₁ − c₂); φ = (c₁ − c₂) f̄*⊗id
            assert_eq!(phi.eval(&[], 1), vec![int(c1 - c2)]);
        }
    }

    #[test]
    fn abelian_and_trivial_subalgebra() {
        let p = corpus::abelian2_sub1();
        let conn = canonical_connection(&p, None).unwrap();
        assert!(atiyah_cocycle(&p, &conn).unwrap().cochain.is_zero());
        let (nonzero, w) = class_is_nonzero(&p, &conn).unwrap();
        assert!(!nonzero);
        assert!(w.unwrap().is_zero());
        let mut raw = p.to_raw();
        raw.sub_dim = 0;
        let p0 = crate::lie::validate_pair(raw).unwrap();
        let (nonzero, _) = class_is_nonzero(&p0, &canonical_connection(&p0, None).unwrap()).unwrap();
        assert!(!nonzero);
    }

    #[test]
    fn reports_for_corpus() {
        for (name, p) in corpus::all() {
            let r = atiyah_report(&p, 7, 3).unwrap();
            assert!(r.all_pass, "{name}");
            assert_eq!(r.independence.len(), 3);
            let again = atiyah_report(&p, 7, 3).unwrap();
            assert_eq!(r, again);
            let conn = canonical_connection(&p, Some(&random_params(&p, &mut ChaCha8Rng::seed_from_u64(1)))).unwrap();
            assert_eq!(class_is_nonzero(&p, &conn).unwrap().0, r.class_nonzero, "{name}");
        }
        assert!(atiyah_report(&corpus::sl2_borel(), 0, 3).unwrap().class_nonzero);
        assert!(!atiyah_report(&corpus::abelian2_sub1(), 0, 3).unwrap().class_nonzero);
    }
}
