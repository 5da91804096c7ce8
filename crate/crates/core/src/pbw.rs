//! `U(g)` in a PBW basis, its coproduct, and the quotient coalgebra
//! `D¹ = U(g) / U(g)·h`.
//!
//! Normal order puts the complement generators `x_m, …, x_{n−1}` first and
//! the subalgebra generators `x_0, …, x_{m−1}` last. A normal monomial with a
//! nonzero `h`-exponent then ends in an element of `h`, so `U(g)·h` is
//! spanned by exactly those monomials and the quotient map is a coordinate
//! projection. Exponents of a [`PbwMonomial`] are indexed by *position* in
//! this order, not by basis index.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::sync::RwLock;

use num_traits::{One, Signed, Zero};
use smallvec::SmallVec;

use crate::error::Result;
use crate::lie::LiePair;
use crate::lincomb::LinComb;
use crate::rational::Rational;

pub type Exponents = SmallVec<[u16; 8]>;

/// Exponent vector, ordered graded-lexicographically: by total degree, then
/// with larger exponents on earlier variables first (`1 < x < y < x² < xy < y²`).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(Exponents);

impl Monomial {
    pub fn one(vars: usize) -> Self {
        Self(SmallVec::from_elem(0, vars))
    }

    pub fn from_exponents(e: &[u16]) -> Self {
        Self(SmallVec::from_slice(e))
    }

    pub fn variable(vars: usize, i: usize) -> Self {
        let mut m = Self::one(vars);
        m.0[i] = 1;
        m
    }

    pub fn exponents(&self) -> &[u16] {
        &self.0
    }

    pub fn vars(&self) -> usize {
        self.0.len()
    }

    pub fn weight(&self) -> usize {
        self.0.iter().map(|&e| e as usize).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    fn last_position(&self) -> Option<usize> {
        self.0.iter().rposition(|&e| e > 0)
    }

    fn incremented(&self, pos: usize) -> Self {
        let mut m = self.clone();
        m.0[pos] += 1;
        m
    }

    fn decremented(&self, pos: usize) -> Self {
        let mut m = self.clone();
        m.0[pos] -= 1;
        m
    }

    /// Positions of the factors, with multiplicity, in order.
    fn factor_positions(&self) -> impl Iterator<Item = usize> + '_ {
        self.0
            .iter()
            .enumerate()
            .flat_map(|(p, &e)| std::iter::repeat_n(p, e as usize))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.weight().cmp(&other.weight()).then_with(|| other.0.cmp(&self.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A normal-ordered monomial of `U(g)`, exponents indexed by position.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PbwMonomial(pub Monomial);

pub type UeaElement = LinComb<PbwMonomial>;
pub type UeaTensor = LinComb<(PbwMonomial, PbwMonomial)>;

/// Element of `D¹`; keys are monomials in the complement generators only.
pub type D1Element = LinComb<Monomial>;
pub type D1Tensor = LinComb<(Monomial, Monomial)>;

/// Enveloping algebra of a validated pair, with a memo table for
/// straightening `monomial · generator`.
#[derive(Debug)]
pub struct Enveloping {
    pair: LiePair,
    memo: RwLock<HashMap<(PbwMonomial, usize), UeaElement>>,
}

impl Enveloping {
    pub fn new(pair: LiePair) -> Self {
        Self {
            pair,
            memo: RwLock::new(HashMap::new()),
        }
    }

    pub fn pair(&self) -> &LiePair {
        &self.pair
    }

    fn k(&self) -> usize {
        self.pair.quotient_dim()
    }

    /// PBW position of basis generator `g`.
    pub fn position_of(&self, g: usize) -> usize {
        let m = self.pair.sub_dim();
        if g >= m {
            g - m
        } else {
            self.k() + g
        }
    }

    /// Basis generator at PBW position `p`.
    pub fn generator_at(&self, p: usize) -> usize {
        if p < self.k() {
            self.pair.sub_dim() + p
        } else {
            p - self.k()
        }
    }

    pub fn unit(&self) -> UeaElement {
        UeaElement::basis(PbwMonomial(Monomial::one(self.pair.dim())))
    }

    pub fn generator(&self, g: usize) -> UeaElement {
        UeaElement::basis(PbwMonomial(Monomial::variable(self.pair.dim(), self.position_of(g))))
    }

    /// Embeds a `g`-vector as a degree-one element.
    pub fn from_vector(&self, x: &[Rational]) -> UeaElement {
        x.iter()
            .enumerate()
            .map(|(g, c)| {
                (
                    PbwMonomial(Monomial::variable(self.pair.dim(), self.position_of(g))),
                    c.clone(),
                )
            })
            .collect()
    }

    /// Normal form of `mono · x_g`, using `yx = xy + [y, x]` on the last factor.
    pub fn mul_generator(&self, mono: &PbwMonomial, g: usize) -> UeaElement {
        let q = self.position_of(g);
        let last = match mono.0.last_position() {
            Some(l) if l > q => l,
            _ => return UeaElement::basis(PbwMonomial(mono.0.incremented(q))),
        };
        let key = (mono.clone(), g);
        if let Some(hit) = self.memo.read().expect("memo poisoned").get(&key) {
            return hit.clone();
        }
        let gl = self.generator_at(last);
        let prefix = PbwMonomial(mono.0.decremented(last));
        // prefix·x_gl·x_g = (prefix·x_g)·x_gl + prefix·[x_gl, x_g]
        let mut out = UeaElement::zero();
        for (m2, c) in &self.mul_generator(&prefix, g) {
            out.add_scaled(&self.mul_generator(m2, gl), c);
        }
        for (t, c) in self.pair.basis_bracket(gl, g).iter().enumerate() {
            if !c.is_zero() {
                out.add_scaled(&self.mul_generator(&prefix, t), c);
            }
        }
        self.memo.write().expect("memo poisoned").insert(key, out.clone());
        out
    }

    fn right_mul_generator(&self, u: &UeaElement, g: usize) -> UeaElement {
        u.map_linear(|m| self.mul_generator(m, g))
    }

    /// Associative product in normal form.
    pub fn multiply(&self, u: &UeaElement, v: &UeaElement) -> UeaElement {
        let mut out = UeaElement::zero();
        for (mv, cv) in v {
            let mut acc = u.clone();
            for p in mv.0.factor_positions() {
                acc = self.right_mul_generator(&acc, self.generator_at(p));
            }
            out.add_scaled(&acc, cv);
        }
        out
    }

    /// `Δ(x) = x⊗1 + 1⊗x` on generators, extended multiplicatively.
    pub fn coproduct_u(&self, u: &UeaElement) -> UeaTensor {
        let one = PbwMonomial(Monomial::one(self.pair.dim()));
        let mut out = UeaTensor::zero();
        for (mono, c) in u {
            let mut acc = UeaTensor::basis((one.clone(), one.clone()));
            for p in mono.0.factor_positions() {
                let g = self.generator_at(p);
                let mut next = UeaTensor::zero();
                for ((a, b), coef) in &acc {
                    for (a2, c2) in &self.mul_generator(a, g) {
                        next.add_term((a2.clone(), b.clone()), coef * c2);
                    }
                    for (b2, c2) in &self.mul_generator(b, g) {
                        next.add_term((a.clone(), b2.clone()), coef * c2);
                    }
                }
                acc = next;
            }
            out.add_scaled(&acc, c);
        }
        out
    }

    fn reduce_monomial(&self, m: &PbwMonomial) -> Option<Monomial> {
        let k = self.k();
        let e = m.0.exponents();
        e[k..]
            .iter()
            .all(|&x| x == 0)
            .then(|| Monomial::from_exponents(&e[..k]))
    }

    /// Projection `U(g) → D¹`: drops monomials with a nonzero `h`-exponent.
    pub fn reduce(&self, u: &UeaElement) -> D1Element {
        u.iter()
            .filter_map(|(m, c)| self.reduce_monomial(m).map(|r| (r, c.clone())))
            .collect()
    }

    /// Canonical section `D¹ → U(g)`.
    pub fn lift(&self, p: &D1Element) -> UeaElement {
        let n = self.pair.dim();
        p.iter()
            .map(|(m, c)| {
                let mut e: Exponents = SmallVec::from_slice(m.exponents());
                e.resize(n, 0);
                (PbwMonomial(Monomial(e)), c.clone())
            })
            .collect()
    }

    /// Action of `X ∈ h` on `D¹` by left multiplication.
    pub fn act_d1(&self, x: &[Rational], p: &D1Element) -> Result<D1Element> {
        self.pair.check_in_subalgebra(x)?;
        Ok(self.reduce(&self.multiply(&self.from_vector(x), &self.lift(p))))
    }

    /// Action of the basis vector `x_i ∈ h` on a `D¹` monomial.
    pub fn act_d1_basis(&self, i: usize, m: &Monomial) -> D1Element {
        let x = self.pair.basis_vector(i);
        self.act_d1(&x, &D1Element::basis(m.clone()))
            .expect("basis vector of h")
    }

    /// Coproduct on `D¹`: coproduct of the lift, then projection of each leg.
    pub fn coproduct_d1(&self, p: &D1Element) -> D1Tensor {
        self.coproduct_u(&self.lift(p))
            .iter()
            .filter_map(|((a, b), c)| Some(((self.reduce_monomial(a)?, self.reduce_monomial(b)?), c.clone())))
            .collect()
    }
}

pub fn counit_d1(p: &D1Element) -> Rational {
    p.iter()
        .find(|(m, _)| m.is_one())
        .map_or_else(Rational::zero, |(_, c)| c.clone())
}

pub fn weight(p: &D1Element) -> usize {
    p.keys().map(Monomial::weight).max().unwrap_or(0)
}

/// All monomials in `k` variables of weight `≤ w`, in graded-lex order.
pub fn d1_basis_up_to_weight(k: usize, w: usize) -> Vec<Monomial> {
    let mut out = Vec::new();
    for total in 0..=w {
        out.extend(monomials_of_weight(k, total));
    }
    out
}

/// Monomials of exact weight `w`, in graded-lex order.
pub fn monomials_of_weight(k: usize, w: usize) -> Vec<Monomial> {
    fn rec(i: usize, left: u16, cur: &mut Vec<u16>, out: &mut Vec<Monomial>) {
        if i + 1 == cur.len() {
            cur[i] = left;
            out.push(Monomial::from_exponents(cur));
            return;
        }
        for e in (0..=left).rev() {
            cur[i] = e;
            rec(i + 1, left - e, cur, out);
        }
    }
    if k == 0 {
        return if w == 0 { vec![Monomial::one(0)] } else { vec![] };
    }
    let mut out = Vec::new();
    rec(0, w as u16, &mut vec![0; k], &mut out);
    out
}

fn format_monomial(m: &Monomial, names: impl Fn(usize) -> String) -> String {
    m.exponents()
        .iter()
        .enumerate()
        .filter(|(_, &e)| e > 0)
        .map(|(i, &e)| if e == 1 { names(i) } else { format!("{}^{e}", names(i)) })
        .collect::<Vec<_>>()
        .join("·")
}

pub(crate) fn format_terms<'a>(terms: impl Iterator<Item = (String, &'a Rational)>) -> String {
    let mut out = String::new();
    for (i, (body, c)) in terms.enumerate() {
        let neg = c.is_negative();
        let abs = c.abs();
        let piece = if body.is_empty() {
            abs.to_string()
        } else if abs.is_one() {
            body
        } else {
            format!("{abs}·{body}")
        };
        match (i, neg) {
            (0, false) => out.push_str(&piece),
            (0, true) => out.push_str(&format!("-{piece}")),
            (_, false) => out.push_str(&format!(" + {piece}")),
            (_, true) => out.push_str(&format!(" - {piece}")),
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// Prints a `D¹` monomial with the complement basis names; `1` for the unit.
pub fn format_d1_monomial(pair: &LiePair, m: &Monomial) -> String {
    if m.is_one() {
        "1".to_string()
    } else {
        format_monomial(m, |i| pair.quotient_names()[i].clone())
    }
}

/// `"3/2·f^2·h + f"`, highest terms first.
pub fn format_uea(env: &Enveloping, u: &UeaElement) -> String {
    let names = env.pair().names();
    format_terms(
        u.iter()
            .rev()
            .map(|(m, c)| (format_monomial(&m.0, |p| names[env.generator_at(p)].clone()), c)),
    )
}

pub fn format_d1(pair: &LiePair, p: &D1Element) -> String {
    format_terms(
        p.iter()
            .rev()
            .map(|(m, c)| (format_monomial(m, |i| pair.quotient_names()[i].clone()), c)),
    )
}
