//! The free graded Lie algebra `L(D¹) ⊂ D•` on odd generators, its
//! Lyndon-type basis, the symmetrization `I: S(L(D¹)) → D•`, and the
//! chain-level compatibility of the bracket with the Atiyah cocycle.
//!
//! Generators have tensor degree one, so they are odd and `[a, a] = 2·a⊗a`
//! does not vanish. A basis of the free Lie superalgebra is given by the
//! standard bracketings of Lyndon words together with the squares `[u, u]`
//! of odd-length Lyndon words; the rank checks below certify this rather
//! than rely on it.

use std::collections::HashMap;
use std::fmt;

use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::atiyah::{atiyah_cocycle, canonical_connection};
use crate::dpoly::{degree, from_d1, DComplex, DTensor, TruncationSpec, Word};
use crate::error::Result;
use crate::lie::LiePair;
use crate::linalg::{self, SparseMatrix};
use crate::lincomb::LinComb;
use crate::pbw::{d1_basis_up_to_weight, D1Element, Monomial};
use crate::rational::{self, factorial, ratio, Rational};

/// Tensors over an alphabet of letter indices.
pub type LetterTensor = LinComb<Vec<usize>>;

fn concat<T: Ord + Clone>(a: &LinComb<Vec<T>>, b: &LinComb<Vec<T>>) -> LinComb<Vec<T>> {
    let mut out = LinComb::zero();
    for (x, cx) in a {
        for (y, cy) in b {
            let mut w = x.clone();
            w.extend(y.iter().cloned());
            out.add_term(w, cx * cy);
        }
    }
    out
}

fn graded_bracket<T: Ord + Clone>(u: &LinComb<Vec<T>>, i: usize, v: &LinComb<Vec<T>>, j: usize) -> LinComb<Vec<T>> {
    concat(u, v).minus(&concat(v, u).scaled(&rational::sign(i * j)))
}

/// `[u, v] = u⊗̃v − (−1)^{ij} v⊗̃u` for `u ∈ Dⁱ`, `v ∈ Dʲ`.
pub fn lie_bracket_tensor(u: &DTensor, v: &DTensor) -> Result<DTensor> {
    Ok(graded_bracket(u, degree(u)?, v, degree(v)?))
}

/// A bracket expression over letter indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BracketWord {
    Leaf(usize),
    Bracket(Box<BracketWord>, Box<BracketWord>),
}

impl BracketWord {
    pub fn bracket(a: BracketWord, b: BracketWord) -> Self {
        Self::Bracket(Box::new(a), Box::new(b))
    }

    /// Number of leaves, equal to the tensor degree.
    pub fn degree(&self) -> usize {
        match self {
            Self::Leaf(_) => 1,
            Self::Bracket(a, b) => a.degree() + b.degree(),
        }
    }

    pub fn expand_letters(&self) -> LetterTensor {
        match self {
            Self::Leaf(i) => LetterTensor::basis(vec![*i]),
            Self::Bracket(a, b) => graded_bracket(&a.expand_letters(), a.degree(), &b.expand_letters(), b.degree()),
        }
    }

    pub fn expand(&self, alphabet: &[Monomial]) -> DTensor {
        letters_to_tensor(&self.expand_letters(), alphabet)
    }
}

impl fmt::Display for BracketWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Leaf(i) => write!(f, "{i}"),
            Self::Bracket(a, b) => write!(f, "[{a},{b}]"),
        }
    }
}

pub fn letters_to_tensor(t: &LetterTensor, alphabet: &[Monomial]) -> DTensor {
    t.iter()
        .map(|(w, c)| (w.iter().map(|&i| alphabet[i].clone()).collect::<Word>(), c.clone()))
        .collect()
}

/// Lyndon words of length exactly `n` over `0..q`, in lexicographic order
/// (Duval's generation).
pub fn lyndon_words(q: usize, n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if q == 0 || n == 0 {
        return out;
    }
    let mut w: Vec<usize> = vec![0];
    loop {
        if w.len() == n {
            out.push(w.clone());
        }
        let m = w.len();
        while w.len() < n {
            w.push(w[w.len() - m]);
        }
        while w.last() == Some(&(q - 1)) {
            w.pop();
        }
        match w.last_mut() {
            None => return out,
            Some(x) => *x += 1,
        }
    }
}

fn is_lyndon(w: &[usize]) -> bool {
    !w.is_empty() && (1..w.len()).all(|i| w < &w[i..])
}

/// Standard bracketing: `w = uv` with `v` the longest proper Lyndon suffix.
pub fn standard_bracketing(w: &[usize]) -> BracketWord {
    if w.len() == 1 {
        return BracketWord::Leaf(w[0]);
    }
    let split = (1..w.len())
        .find(|&i| is_lyndon(&w[i..]))
        .expect("a single letter is Lyndon");
    BracketWord::bracket(standard_bracketing(&w[..split]), standard_bracketing(&w[split..]))
}

/// Basis of the degree-`n` part of the free Lie superalgebra on `q` odd
/// generators: Lyndon brackets, plus `[u, u]` for Lyndon `u` of odd length `n/2`.
pub fn lyndon_basis(q: usize, n: usize) -> Vec<BracketWord> {
    let mut out: Vec<BracketWord> = lyndon_words(q, n).iter().map(|w| standard_bracketing(w)).collect();
    if n.is_multiple_of(2) && (n / 2) % 2 == 1 {
        for u in lyndon_words(q, n / 2) {
            let b = standard_bracketing(&u);
            out.push(BracketWord::bracket(b.clone(), b));
        }
    }
    out
}

/// Right-nested brackets `[a₁,[a₂,[…,aₙ]]]` over all letter sequences.
pub fn right_nested_spanning_set(q: usize, n: usize) -> Vec<BracketWord> {
    let mut out: Vec<BracketWord> = (0..q).map(BracketWord::Leaf).collect();
    for _ in 1..n {
        out = out
            .into_iter()
            .flat_map(|b| (0..q).map(move |a| BracketWord::bracket(BracketWord::Leaf(a), b.clone())))
            .collect();
    }
    out
}

/// Koszul sign of listing graded factors in the order `perm`: each inverted
/// pair of odd factors contributes `−1`.
pub fn koszul_sign(degrees: &[usize], perm: &[usize]) -> Rational {
    let mut odd_inversions = 0;
    for a in 0..perm.len() {
        for b in a + 1..perm.len() {
            if perm[a] > perm[b] && degrees[perm[a]] % 2 == 1 && degrees[perm[b]] % 2 == 1 {
                odd_inversions += 1;
            }
        }
    }
    rational::sign(odd_inversions)
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

/// `I(z₁⊙…⊙zₙ) = (1/n!) Σ_σ sgn(σ; z) z_{σ(1)}⊗̃…⊗̃z_{σ(n)}`.
pub fn symmetrization_i(factors: &[BracketWord]) -> LetterTensor {
    let n = factors.len();
    let expansions: Vec<LetterTensor> = factors.iter().map(BracketWord::expand_letters).collect();
    let degrees: Vec<usize> = factors.iter().map(BracketWord::degree).collect();
    let mut out = LetterTensor::zero();
    for perm in permutations(n) {
        let term = perm
            .iter()
            .fold(LetterTensor::basis(vec![]), |acc, &i| concat(&acc, &expansions[i]));
        out.add_scaled(&term, &koszul_sign(&degrees, &perm));
    }
    out.scaled(&(rational::one() / factorial(n)))
}

/// Canonical `⊙`-monomials of total degree `n` over `basis` (indices into it,
/// nondecreasing; odd-degree factors at most once).
pub fn sym_monomials(basis: &[BracketWord], n: usize) -> Vec<Vec<usize>> {
    fn rec(basis: &[BracketWord], start: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for i in start..basis.len() {
            let d = basis[i].degree();
            if d > left {
                continue;
            }
            cur.push(i);
            let next = if d % 2 == 1 { i + 1 } else { i };
            rec(basis, next, left - d, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(basis, 0, n, &mut Vec::new(), &mut out);
    out
}

fn letter_words(q: usize, n: usize) -> Vec<Vec<usize>> {
    let mut words = vec![vec![]];
    for _ in 0..n {
        words = words
            .into_iter()
            .flat_map(|w: Vec<usize>| {
                (0..q).map(move |a| {
                    let mut v = w.clone();
                    v.push(a);
                    v
                })
            })
            .collect();
    }
    words
}

fn column_matrix<K: Ord + Clone + std::hash::Hash>(rows: &[K], cols: &[LinComb<K>]) -> SparseMatrix {
    let index: HashMap<&K, usize> = rows.iter().enumerate().map(|(i, w)| (w, i)).collect();
    let mut m = SparseMatrix::zeros(rows.len(), cols.len());
    for (j, c) in cols.iter().enumerate() {
        for (w, x) in c {
            m.set(index[w], j, x.clone());
        }
    }
    m
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IsoRow {
    pub degree: usize,
    pub sym_monomials: usize,
    pub tensor_dim: usize,
    pub rank: usize,
    pub iso_pass: bool,
}

/// Rank of `I` on all `⊙`-monomials of degree `n ≤ N` over the Lyndon basis of
/// `L(F_w D¹)`; an isomorphism iff rank = #monomials = |V|ⁿ.
pub fn verify_i_iso(k: usize, spec: &TruncationSpec) -> Vec<IsoRow> {
    let q = d1_basis_up_to_weight(k, spec.max_weight).len();
    let basis: Vec<BracketWord> = (1..=spec.max_degree).flat_map(|n| lyndon_basis(q, n)).collect();
    (1..=spec.max_degree)
        .map(|n| {
            let monomials = sym_monomials(&basis, n);
            let images: Vec<LetterTensor> = monomials
                .iter()
                .map(|m| symmetrization_i(&m.iter().map(|&i| basis[i].clone()).collect::<Vec<_>>()))
                .collect();
            let rows = letter_words(q, n);
            let rank = linalg::rank(&column_matrix(&rows, &images));
            IsoRow {
                degree: n,
                sym_monomials: monomials.len(),
                tensor_dim: rows.len(),
                rank,
                iso_pass: rank == rows.len() && rank == monomials.len(),
            }
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StabilityRow {
    pub degree: usize,
    pub words: usize,
    /// `d(u) ∈ L` for every basis word `u` of this degree.
    pub d_member_pass: bool,
    /// `X·u ∈ L` for every `h`-basis `X`.
    pub action_member_pass: bool,
    pub offending: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SampledCheck {
    pub seed: u64,
    pub sampled: usize,
    pub pass: bool,
    pub offending: Option<String>,
}

/// Indices of `targets` that are not in the column span of `span`.
fn non_members(span: &SparseMatrix, targets: &[Vec<Rational>]) -> Result<Vec<usize>> {
    let base = linalg::rank(span);
    let cols: Vec<_> = targets
        .iter()
        .map(|t| t.iter().cloned().enumerate().filter(|(_, x)| !x.is_zero()).collect())
        .collect();
    let all = span.hstack(&SparseMatrix::from_columns(span.rows(), &cols))?;
    if linalg::rank(&all) == base {
        return Ok(Vec::new());
    }
    let mut bad = Vec::new();
    for (i, t) in targets.iter().enumerate() {
        if linalg::solve(span, t)?.is_none() {
            bad.push(i);
        }
    }
    Ok(bad)
}

/// `d(u)` and `X·u` lie in `L(D¹)` for every Lyndon basis word `u` of degree `≤ N − 1`.
pub fn d_stability_check(dc: &DComplex, spec: &TruncationSpec) -> Result<Vec<StabilityRow>> {
    let alphabet = d1_basis_up_to_weight(dc.k(), spec.max_weight);
    let q = alphabet.len();
    let index_of: HashMap<&Monomial, usize> = alphabet.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let to_letters = |t: &DTensor| -> LetterTensor {
        t.iter()
            .map(|(w, c)| (w.iter().map(|m| index_of[m]).collect(), c.clone()))
            .collect()
    };
    let mut rows = Vec::new();
    for n in 1..spec.max_degree {
        let words = lyndon_basis(q, n);
        let span_cols: Vec<LetterTensor> = lyndon_basis(q, n + 1).iter().map(BracketWord::expand_letters).collect();
        let target_rows = letter_words(q, n + 1);
        let span = column_matrix(&target_rows, &span_cols);
        let index: HashMap<&Vec<usize>, usize> = target_rows.iter().enumerate().map(|(i, w)| (w, i)).collect();
        let vec_of = |t: &LetterTensor| {
            let mut v = vec![Rational::zero(); target_rows.len()];
            for (w, c) in t {
                v[index[w]] = c.clone();
            }
            v
        };
        let d_targets: Vec<Vec<Rational>> = words
            .iter()
            .map(|u| vec_of(&to_letters(&dc.differential(&u.expand(&alphabet)))))
            .collect();
        let d_bad = non_members(&span, &d_targets)?;
        // the h-action preserves degree: test against the degree-n span
        let same_rows = letter_words(q, n);
        let same_span = column_matrix(
            &same_rows,
            &words.iter().map(BracketWord::expand_letters).collect::<Vec<_>>(),
        );
        let same_index: HashMap<&Vec<usize>, usize> = same_rows.iter().enumerate().map(|(i, w)| (w, i)).collect();
        let mut act_targets = Vec::new();
        for u in &words {
            let e = u.expand(&alphabet);
            for x in 0..dc.pair().sub_dim() {
                let t = to_letters(&e.map_linear(|w| dc.act_word(x, w)));
                let mut v = vec![Rational::zero(); same_rows.len()];
                for (w, c) in &t {
                    v[same_index[w]] = c.clone();
                }
                act_targets.push(v);
            }
        }
        let act_bad = non_members(&same_span, &act_targets)?;
        let offending = d_bad.first().map(|&i| format!("d({})", words[i])).or_else(|| {
            act_bad
                .first()
                .map(|&i| format!("action on {}", words[i / dc.pair().sub_dim().max(1)]))
        });
        rows.push(StabilityRow {
            degree: n,
            words: words.len(),
            d_member_pass: d_bad.is_empty(),
            action_member_pass: act_bad.is_empty(),
            offending,
        });
    }
    Ok(rows)
}

/// `d[u,v] = [du,v] + (−1)^{|u|}[u,dv]` on `samples` seeded pairs of basis
/// words with `|u| + |v| ≤ N − 1`.
pub fn chain_map_sample(dc: &DComplex, spec: &TruncationSpec, seed: u64, samples: usize) -> Result<SampledCheck> {
    let alphabet = d1_basis_up_to_weight(dc.k(), spec.max_weight);
    let q = alphabet.len();
    let pool: Vec<BracketWord> = (1..spec.max_degree).flat_map(|n| lyndon_basis(q, n)).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pairs = Vec::new();
    for u in &pool {
        for v in &pool {
            if u.degree() + v.degree() < spec.max_degree {
                pairs.push((u.clone(), v.clone()));
            }
        }
    }
    pairs.shuffle(&mut rng);
    pairs.truncate(samples);
    let mut offending = None;
    for (u, v) in &pairs {
        let (eu, ev) = (u.expand(&alphabet), v.expand(&alphabet));
        let lhs = dc.differential(&lie_bracket_tensor(&eu, &ev)?);
        let du = dc.differential(&eu);
        let dv = dc.differential(&ev);
        let mut rhs = DTensor::zero();
        if !du.is_zero() {
            rhs.add_assign(&graded_bracket(&du, u.degree() + 1, &ev, v.degree()));
        }
        if !dv.is_zero() {
            rhs.add_scaled(
                &graded_bracket(&eu, u.degree(), &dv, v.degree() + 1),
                &rational::sign(u.degree()),
            );
        }
        if lhs != rhs {
            offending = Some(format!("u = {u}, v = {v}"));
            break;
        }
    }
    Ok(SampledCheck {
        seed,
        sampled: pairs.len(),
        pass: offending.is_none(),
        offending,
    })
}

/// Graded antisymmetry and Jacobi on `samples` seeded triples of basis words
/// of degree `≤ 2` over `q` letters.
pub fn jacobi_sample(q: usize, seed: u64, samples: usize) -> SampledCheck {
    let pool: Vec<BracketWord> = (1..=2).flat_map(|n| lyndon_basis(q, n)).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut offending = None;
    let mut sampled = 0;
    for _ in 0..samples {
        let Some(t) = (0..3).map(|_| pool.choose(&mut rng)).collect::<Option<Vec<_>>>() else {
            break;
        };
        sampled += 1;
        let (i, j, l) = (t[0].degree(), t[1].degree(), t[2].degree());
        let (u, v, w) = (t[0].expand_letters(), t[1].expand_letters(), t[2].expand_letters());
        let antisym = graded_bracket(&u, i, &v, j).plus(&graded_bracket(&v, j, &u, i).scaled(&rational::sign(i * j)));
        let jacobi = graded_bracket(&u, i, &graded_bracket(&v, j, &w, l), j + l)
            .scaled(&rational::sign(i * l))
            .plus(&graded_bracket(&v, j, &graded_bracket(&w, l, &u, i), l + i).scaled(&rational::sign(j * i)))
            .plus(&graded_bracket(&w, l, &graded_bracket(&u, i, &v, j), i + j).scaled(&rational::sign(l * j)));
        if !antisym.is_zero() || !jacobi.is_zero() {
            offending = Some(format!("({}, {}, {})", t[0], t[1], t[2]));
            break;
        }
    }
    SampledCheck {
        seed,
        sampled,
        pass: offending.is_none(),
        offending,
    }
}

/// `β(q)`: the weight-one element of `D¹` with complement coordinates `q`.
pub fn beta(q: &[Rational]) -> D1Element {
    let k = q.len();
    q.iter()
        .enumerate()
        .map(|(i, c)| (Monomial::variable(k, i), c.clone()))
        .collect()
}

/// `s(b₁⊙b₂) = ½ reduce(b̃₁b̃₂ + b̃₂b̃₁)`, extended bilinearly.
pub fn section(dc: &DComplex, q1: &[Rational], q2: &[Rational]) -> D1Element {
    let env = dc.env();
    let lift = |q: &[Rational]| env.lift(&beta(q));
    let (a, b) = (lift(q1), lift(q2));
    let sum = env.multiply(&a, &b).plus(&env.multiply(&b, &a));
    env.reduce(&sum).scaled(&ratio(1, 2))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityRow {
    pub identity: String,
    pub sign: Option<i8>,
    pub residual_zero: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CompatibilityReport {
    pub rows: Vec<IdentityRow>,
    /// The global sign `ε′` in identity (ii), if one sign fits every case.
    pub sign: Option<i8>,
    pub failure: Option<String>,
    pub all_pass: bool,
}

fn unit_vec(k: usize, i: usize) -> Vec<Rational> {
    let mut v = vec![Rational::zero(); k];
    v[i] = rational::one();
    v
}

/// Equivariance defect `δ(X; b₁, b₂) = X·s(b₁⊙b₂) − s(X·(b₁⊙b₂))`.
pub fn equivariance_defect(dc: &DComplex, x: usize, a: usize, b: usize) -> Result<D1Element> {
    let pair = dc.pair();
    let k = pair.quotient_dim();
    let (ea, eb) = (unit_vec(k, a), unit_vec(k, b));
    let xv = pair.basis_vector(x);
    let lhs = dc.env().act_d1(&xv, &section(dc, &ea, &eb))?;
    let xa = pair.quotient_action(&xv, &ea)?;
    let xb = pair.quotient_action(&xv, &eb)?;
    let rhs = section(dc, &xa, &eb).plus(&section(dc, &ea, &xb));
    Ok(lhs.minus(&rhs))
}

/// Identities (i) `d∘s = −[β, β]` and (ii) `δ = ε′·β∘R_s` for every ordered
/// complement pair and every `h`-basis direction, with `R_s` the Atiyah
/// cocycle of the zero-parameter connection.
pub fn bracket_compatibility_check(dc: &DComplex) -> Result<CompatibilityReport> {
    let pair: &LiePair = dc.pair();
    let (m, k) = (pair.sub_dim(), pair.quotient_dim());
    let r = atiyah_cocycle(pair, &canonical_connection(pair, None)?)?;
    let qn = pair.quotient_names();
    let mut rows = Vec::new();
    let mut failure = None;
    for a in 0..k {
        for b in 0..k {
            let (ea, eb) = (unit_vec(k, a), unit_vec(k, b));
            let ds = dc.differential(&from_d1(&section(dc, &ea, &eb)));
            let br = lie_bracket_tensor(&from_d1(&beta(&ea)), &from_d1(&beta(&eb)))?;
            let ok = ds.plus(&br).is_zero();
            if !ok && failure.is_none() {
                failure = Some(format!("identity (i) at ({}, {})", qn[a], qn[b]));
            }
            rows.push(IdentityRow {
                identity: format!("d s({}⊙{}) = -[{}, {}]", qn[a], qn[b], qn[a], qn[b]),
                sign: None,
                residual_zero: ok,
            });
        }
    }
    let mut cases = Vec::new();
    for x in 0..m {
        for a in 0..k {
            for b in 0..k {
                let delta = equivariance_defect(dc, x, a, b)?;
                let rv = beta(&r.apply(x, a, b));
                cases.push((x, a, b, delta, rv));
            }
        }
    }
    let fits = |s: i8| {
        cases
            .iter()
            .all(|(_, _, _, d, rv)| *d == rv.scaled(&Rational::from_integer(s.into())))
    };
    let sign = [-1i8, 1].into_iter().find(|&s| fits(s));
    for (x, a, b, d, rv) in &cases {
        let s = sign.unwrap_or(-1);
        let ok = *d == rv.scaled(&Rational::from_integer(s.into()));
        if !ok && failure.is_none() {
            failure = Some(format!(
                "identity (ii) at (X, b₁, b₂) = ({}, {}, {})",
                pair.names()[*x],
                qn[*a],
                qn[*b]
            ));
        }
        rows.push(IdentityRow {
            identity: format!(
                "δ({}; {}, {}) = ε′·β(R({})({})({}))",
                pair.names()[*x],
                qn[*a],
                qn[*b],
                pair.names()[*x],
                qn[*a],
                qn[*b]
            ),
            sign,
            residual_zero: ok && sign.is_some(),
        });
    }
    let all_pass = failure.is_none() && sign.is_some();
    Ok(CompatibilityReport {
        rows,
        sign,
        failure,
        all_pass,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FreeLieReport {
    pub spec: TruncationSpec,
    pub iso: Vec<IsoRow>,
    pub d_stability: Vec<StabilityRow>,
    pub jacobi: SampledCheck,
    pub chain_map: SampledCheck,
    pub compatibility: CompatibilityReport,
    pub all_pass: bool,
}

pub fn free_lie_report(dc: &DComplex, spec: &TruncationSpec, seed: u64) -> Result<FreeLieReport> {
    let iso = verify_i_iso(dc.k(), spec);
    let d_stability = d_stability_check(dc, spec)?;
    let q = d1_basis_up_to_weight(dc.k(), spec.max_weight).len();
    let jacobi = jacobi_sample(q, seed, 24);
    let chain_map = chain_map_sample(dc, spec, seed, 24)?;
    let compatibility = bracket_compatibility_check(dc)?;
    let all_pass = iso.iter().all(|r| r.iso_pass)
        && d_stability.iter().all(|r| r.d_member_pass && r.action_member_pass)
        && jacobi.pass
        && chain_map.pass
        && compatibility.all_pass;
    Ok(FreeLieReport {
        spec: *spec,
        iso,
        d_stability,
        jacobi,
        chain_map,
        compatibility,
        all_pass,
    })
}
