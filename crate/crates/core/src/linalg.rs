//! Exact sparse linear algebra over ℚ.
//!
//! Elimination is fraction-free: every row is scaled to a primitive integer
//! vector, and a row is reduced against a pivot row `p` by
//! `r ← (p₀/g)·r − (r₀/g)·p` with `g = gcd(p₀, r₀)`, followed by removal of
//! the content. Pivots are claimed by the first row (in row order) whose
//! leading column is still free, so results are reproducible.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rational::Rational;

/// Sparse rational matrix with no stored zeros.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SparseMatrix {
    rows: usize,
    cols: usize,
    entries: BTreeMap<(usize, usize), Rational>,
}

impl SparseMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            entries: BTreeMap::new(),
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    pub fn from_dense(rows: &[Vec<Rational>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        let mut m = Self::zeros(rows.len(), cols);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), cols, "ragged dense matrix");
            for (j, v) in row.iter().enumerate() {
                m.set(i, j, v.clone());
            }
        }
        m
    }

    /// Builds a matrix whose `j`-th column is `columns[j]` (sparse, by row index).
    pub fn from_columns(rows: usize, columns: &[BTreeMap<usize, Rational>]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            for (&i, v) in col {
                m.set(i, j, v.clone());
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> impl Iterator<Item = (&(usize, usize), &Rational)> {
        self.entries.iter()
    }

    pub fn set(&mut self, r: usize, c: usize, v: Rational) {
        assert!(r < self.rows && c < self.cols, "index ({r}, {c}) out of bounds");
        if v.is_zero() {
            self.entries.remove(&(r, c));
        } else {
            self.entries.insert((r, c), v);
        }
    }

    pub fn add_to(&mut self, r: usize, c: usize, v: &Rational) {
        let cur = self.get(r, c);
        self.set(r, c, cur + v);
    }

    pub fn get(&self, r: usize, c: usize) -> Rational {
        self.entries.get(&(r, c)).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Result<Vec<Rational>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: v.len(),
            });
        }
        let mut out = vec![Rational::zero(); self.rows];
        for (&(r, c), a) in &self.entries {
            if !v[c].is_zero() {
                out[r] += a * &v[c];
            }
        }
        Ok(out)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for (&(r, c), v) in &self.entries {
            t.entries.insert((c, r), v.clone());
        }
        t
    }

    /// Appends the columns of `other` to the right of `self`.
    pub fn hstack(&self, other: &SparseMatrix) -> Result<Self> {
        if other.rows != self.rows {
            return Err(Error::DimensionMismatch {
                expected: self.rows,
                found: other.rows,
            });
        }
        let mut m = self.clone();
        m.cols += other.cols;
        for (&(r, c), v) in &other.entries {
            m.entries.insert((r, c + self.cols), v.clone());
        }
        Ok(m)
    }

    fn row_lists(&self) -> Vec<Vec<(usize, Rational)>> {
        let mut rows = vec![Vec::new(); self.rows];
        for (&(r, c), v) in &self.entries {
            rows[r].push((c, v.clone()));
        }
        rows
    }
}

type IntRow = Vec<(usize, BigInt)>;

/// Scales a sorted rational row to a primitive integer row.
fn integer_row(row: &[(usize, Rational)]) -> IntRow {
    let lcm = row.iter().fold(BigInt::one(), |acc, (_, v)| acc.lcm(v.denom()));
    let ints: IntRow = row.iter().map(|(c, v)| (*c, v.numer() * (&lcm / v.denom()))).collect();
    primitive(ints)
}

fn primitive(mut row: IntRow) -> IntRow {
    let g = row.iter().fold(BigInt::zero(), |acc, (_, v)| acc.gcd(v));
    if !g.is_zero() && !g.is_one() {
        for (_, v) in row.iter_mut() {
            *v /= &g;
        }
    }
    row
}

/// `a·r − b·p` for sorted sparse rows, dropping cancelled entries.
fn combine(a: &BigInt, r: &IntRow, b: &BigInt, p: &IntRow) -> IntRow {
    let mut out = Vec::with_capacity(r.len() + p.len());
    let (mut i, mut j) = (0, 0);
    while i < r.len() || j < p.len() {
        let take_r = j >= p.len() || (i < r.len() && r[i].0 < p[j].0);
        let take_p = i >= r.len() || (j < p.len() && p[j].0 < r[i].0);
        if take_r {
            out.push((r[i].0, a * &r[i].1));
            i += 1;
        } else if take_p {
            out.push((p[j].0, -(b * &p[j].1)));
            j += 1;
        } else {
            let v = a * &r[i].1 - b * &p[j].1;
            if !v.is_zero() {
                out.push((r[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    primitive(out)
}

/// Eliminates column `col` from `row` using `pivot` (whose entry at `col` is nonzero).
fn eliminate(row: &IntRow, pivot: &IntRow, col: usize) -> IntRow {
    let Some(rv) = row.iter().find(|(c, _)| *c == col).map(|(_, v)| v.clone()) else {
        return row.clone();
    };
    let pv = &pivot
        .iter()
        .find(|(c, _)| *c == col)
        .expect("pivot row must contain its pivot column")
        .1;
    let g = pv.gcd(&rv);
    combine(&(pv / &g), row, &(&rv / &g), pivot)
}

/// Row echelon form keyed by leading column.
struct Echelon {
    pivots: BTreeMap<usize, IntRow>,
}

impl Echelon {
    fn new() -> Self {
        Self {
            pivots: BTreeMap::new(),
        }
    }

    /// Reduces `row` against the current pivots; returns the new pivot
    /// column if the row was independent.
    fn insert(&mut self, mut row: IntRow) -> Option<usize> {
        loop {
            let lead = row.first()?.0;
            match self.pivots.get(&lead) {
                None => {
                    self.pivots.insert(lead, row);
                    return Some(lead);
                }
                Some(p) => row = eliminate(&row, p, lead),
            }
        }
    }

    fn from_matrix(m: &SparseMatrix) -> Self {
        let mut e = Self::new();
        for row in m.row_lists() {
            if !row.is_empty() {
                e.insert(integer_row(&row));
            }
        }
        e
    }

    /// Reduced row echelon form as rational rows with unit pivots.
    fn reduced(mut self) -> BTreeMap<usize, BTreeMap<usize, Rational>> {
        let cols: Vec<usize> = self.pivots.keys().copied().collect();
        for &c in cols.iter().rev() {
            let p = self.pivots[&c].clone();
            for &lower in cols.iter().take_while(|&&x| x < c) {
                let row = &self.pivots[&lower];
                if row.iter().any(|(cc, _)| *cc == c) {
                    let r = eliminate(row, &p, c);
                    self.pivots.insert(lower, r);
                }
            }
        }
        self.pivots
            .into_iter()
            .map(|(c, row)| {
                let lead = Rational::from_integer(row[0].1.clone());
                let r = row
                    .into_iter()
                    .map(|(cc, v)| (cc, Rational::from_integer(v) / &lead))
                    .collect();
                (c, r)
            })
            .collect()
    }
}

pub fn rank(m: &SparseMatrix) -> usize {
    // Eliminate along the shorter side; rank is transpose-invariant.
    if m.rows > m.cols {
        Echelon::from_matrix(&m.transpose()).pivots.len()
    } else {
        Echelon::from_matrix(m).pivots.len()
    }
}

/// A basis of `ker m`, one vector per free column in increasing column order.
pub fn nullspace_basis(m: &SparseMatrix) -> Vec<Vec<Rational>> {
    let rref = Echelon::from_matrix(m).reduced();
    let mut basis = Vec::new();
    for free in (0..m.cols).filter(|c| !rref.contains_key(c)) {
        let mut v = vec![Rational::zero(); m.cols];
        v[free] = Rational::one();
        for (&pc, row) in &rref {
            if let Some(x) = row.get(&free) {
                v[pc] = -x;
            }
        }
        basis.push(v);
    }
    basis
}

/// Some `x` with `m·x = b`, or `None` when the system is inconsistent.
/// Free variables are set to zero.
pub fn solve(m: &SparseMatrix, b: &[Rational]) -> Result<Option<Vec<Rational>>> {
    if b.len() != m.rows {
        return Err(Error::DimensionMismatch {
            expected: m.rows,
            found: b.len(),
        });
    }
    let mut aug = m.clone();
    aug.cols += 1;
    for (i, v) in b.iter().enumerate() {
        aug.set(i, m.cols, v.clone());
    }
    let ech = Echelon::from_matrix(&aug);
    if ech.pivots.contains_key(&m.cols) {
        return Ok(None);
    }
    let rref = ech.reduced();
    let mut x = vec![Rational::zero(); m.cols];
    for (&pc, row) in &rref {
        if let Some(v) = row.get(&m.cols) {
            x[pc] = v.clone();
        }
    }
    assert!(m.mul_vec(&x)? == b, "elimination produced a non-solution");
    Ok(Some(x))
}

/// Small dense rational matrix, used for module actions and connections.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DenseMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl DenseMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rational::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let data: Vec<Rational> = rows.into_iter().flatten().collect();
        assert_eq!(data.len(), r * c, "ragged matrix");
        Self { rows: r, cols: c, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn to_rows(&self) -> Vec<Vec<Rational>> {
        self.data.chunks(self.cols.max(1)).map(<[_]>::to_vec).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn scaled(&self, s: &Rational) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|v| v * s).collect(),
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&o.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&o.data).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.cols, o.rows);
        let mut out = Self::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for l in 0..self.cols {
                let a = &self[(i, l)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    if !o[(l, j)].is_zero() {
                        out[(i, j)] += a * &o[(l, j)];
                    }
                }
            }
        }
        out
    }

    pub fn commutator(&self, o: &Self) -> Self {
        self.mul(o).sub(&o.mul(self))
    }

    pub fn apply(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                (0..self.cols)
                    .filter(|&j| !v[j].is_zero())
                    .map(|j| &self[(i, j)] * &v[j])
                    .sum()
            })
            .collect()
    }

    pub fn to_sparse(&self) -> SparseMatrix {
        SparseMatrix::from_dense(&self.to_rows())
    }
}

impl std::ops::Index<(usize, usize)> for DenseMatrix {
    type Output = Rational;
    fn index(&self, (i, j): (usize, usize)) -> &Rational {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for DenseMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rational {
        &mut self.data[i * self.cols + j]
    }
}

pub fn is_zero_vec(v: &[Rational]) -> bool {
    v.iter().all(Zero::is_zero)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};
    use proptest::prelude::*;

    fn m(rows: &[&[i64]]) -> SparseMatrix {
        SparseMatrix::from_dense(
            &rows
                .iter()
                .map(|r| r.iter().map(|&x| int(x)).collect())
                .collect::<Vec<_>>(),
        )
    }

    #[test]
    fn rank_examples() {
        assert_eq!(rank(&SparseMatrix::zeros(3, 3)), 0);
        assert_eq!(rank(&SparseMatrix::identity(3)), 3);
        assert_eq!(rank(&m(&[&[1, 2], &[2, 4]])), 1);
    }

    #[test]
    fn nullspace_examples() {
        assert!(nullspace_basis(&SparseMatrix::identity(2)).is_empty());
        let z = nullspace_basis(&SparseMatrix::zeros(1, 2));
        assert_eq!(z.len(), 2);
        assert_eq!(rank(&SparseMatrix::from_dense(&z)), 2);
        let k = nullspace_basis(&m(&[&[1, 2], &[2, 4]]));
        assert_eq!(k.len(), 1);
        // proportional to (2, -1)
        assert_eq!(&k[0][0] * int(-1), &k[0][1] * int(2));
        assert!(!is_zero_vec(&k[0]));
    }

    #[test]
    fn solve_examples() {
        let id = SparseMatrix::identity(2);
        assert_eq!(solve(&id, &[int(3), int(4)]).unwrap(), Some(vec![int(3), int(4)]));
        assert_eq!(solve(&SparseMatrix::zeros(2, 2), &[int(1), int(0)]).unwrap(), None);
        assert_eq!(solve(&m(&[&[2]]), &[int(1)]).unwrap(), Some(vec![ratio(1, 2)]));
        assert!(matches!(solve(&id, &[int(1)]), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn rational_entries() {
        let a = SparseMatrix::from_dense(&[vec![ratio(1, 2), ratio(1, 3)], vec![ratio(3, 2), int(1)]]);
        assert_eq!(rank(&a), 1);
        let x = solve(&a, &[ratio(1, 6), ratio(1, 2)]).unwrap().unwrap();
        assert_eq!(a.mul_vec(&x).unwrap(), vec![ratio(1, 6), ratio(1, 2)]);
    }

    fn small_matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
        (1usize..6, 1usize..6).prop_flat_map(|(r, c)| prop::collection::vec(prop::collection::vec(-3i64..4, c), r))
    }

    proptest! {
        #[test]
        fn rank_nullity(rows in small_matrix()) {
            let a = SparseMatrix::from_dense(
                &rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect::<Vec<_>>(),
            );
            let ker = nullspace_basis(&a);
            prop_assert_eq!(rank(&a) + ker.len(), a.cols());
            for v in &ker {
                prop_assert!(is_zero_vec(&a.mul_vec(v).unwrap()));
            }
            prop_assert_eq!(rank(&a), rank(&a.transpose()));
        }

        #[test]
        fn solve_consistency(rows in small_matrix(), seed in prop::collection::vec(-3i64..4, 6)) {
            let a = SparseMatrix::from_dense(
                &rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect::<Vec<_>>(),
            );
            // a feasible right-hand side
            let x0: Vec<Rational> = seed.iter().take(a.cols()).map(|&v| int(v)).collect();
            let b = a.mul_vec(&x0).unwrap();
            let x = solve(&a, &b).unwrap().expect("b is in the image");
            prop_assert_eq!(a.mul_vec(&x).unwrap(), b.clone());
            // perturb one coordinate and compare feasibility with the augmented rank
            let mut b2 = b;
            b2[0] += int(1);
            let col = SparseMatrix::from_dense(&b2.iter().map(|v| vec![v.clone()]).collect::<Vec<_>>());
            let feasible = rank(&a.hstack(&col).unwrap()) == rank(&a);
            prop_assert_eq!(solve(&a, &b2).unwrap().is_some(), feasible);
        }
    }
}
