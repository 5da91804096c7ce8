use proptest::prelude::*;

use liehopf::atiyah::atiyah_module;
use liehopf::ce::{ce_differential, cochain_dim, vec_to_cochain, HModule};
use liehopf::dpoly::{antipode, cup, Convention, DComplex, DTensor, Word};
use liehopf::free_lie::{koszul_sign, lyndon_basis, symmetrization_i, BracketWord};
use liehopf::lie::{corpus, LiePair};
use liehopf::pbw::{D1Element, Enveloping, Monomial, PbwMonomial, UeaElement, UeaTensor};
use liehopf::rational::{self, int, ratio, Rational};

fn pair(i: usize) -> LiePair {
    corpus::all().swap_remove(i % 4).1
}

fn coeff() -> impl Strategy<Value = Rational> {
    (-4i64..5, 1i64..4).prop_map(|(n, d)| ratio(n, d))
}

/// A word of `n` legs in `k ≤ 2` variables, each exponent below 3.
fn word(k: usize, n: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec(prop::collection::vec(0u16..3, 2), n)
        .prop_map(move |legs| legs.iter().map(|e| Monomial::from_exponents(&e[..k])).collect())
}

fn homogeneous(k: usize, n: usize) -> impl Strategy<Value = DTensor> {
    prop::collection::vec((word(k, n), coeff()), 1..4).prop_map(|ts| ts.into_iter().collect())
}

fn pair_and(n: usize) -> impl Strategy<Value = (usize, DTensor)> {
    (0usize..4).prop_flat_map(move |i| (Just(i), homogeneous(pair(i).quotient_dim(), n)))
}

fn vector(len: usize) -> impl Strategy<Value = Vec<Rational>> {
    prop::collection::vec(coeff(), len)
}

fn uea(dim: usize) -> impl Strategy<Value = UeaElement> {
    prop::collection::vec((prop::collection::vec(0u16..3, dim), coeff()), 1..3).prop_map(|ts| {
        ts.into_iter()
            .map(|(e, c)| (PbwMonomial(Monomial::from_exponents(&e)), c))
            .collect()
    })
}

fn tensor_product(env: &Enveloping, s: &UeaTensor, t: &UeaTensor) -> UeaTensor {
    let mut out = UeaTensor::zero();
    for ((a, b), x) in s {
        for ((c, d), y) in t {
            let ac = env.multiply(&UeaElement::basis(a.clone()), &UeaElement::basis(c.clone()));
            let bd = env.multiply(&UeaElement::basis(b.clone()), &UeaElement::basis(d.clone()));
            for (l, u) in &ac {
                for (r, v) in &bd {
                    out.add_term((l.clone(), r.clone()), x * y * u * v);
                }
            }
        }
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn rational_roundtrip(n in -1000i64..1000, d in 1i64..50) {
        let r = ratio(n, d);
        prop_assert_eq!(rational::parse(&rational::to_string(&r)).unwrap(), r);
    }

    #[test]
    fn bracket_is_a_lie_bracket(i in 0usize..4, x in vector(3), y in vector(3), z in vector(3)) {
        let p = pair(i);
        let (x, y, z) = (&x[..p.dim()], &y[..p.dim()], &z[..p.dim()]);
        let xy = p.bracket(x, y).unwrap();
        let yx = p.bracket(y, x).unwrap();
        prop_assert!(xy.iter().zip(&yx).all(|(a, b)| a + b == int(0)));
        let mut jacobi = vec![int(0); p.dim()];
        for (a, b, c) in [(x, y, z), (y, z, x), (z, x, y)] {
            let t = p.bracket(a, &p.bracket(b, c).unwrap()).unwrap();
            for (j, v) in jacobi.iter_mut().zip(t) {
                *j += v;
            }
        }
        prop_assert!(jacobi.iter().all(|v| *v == int(0)));
    }

    #[test]
    fn pbw_product_is_associative(u in uea(3), v in uea(3), w in uea(3)) {
        let env = Enveloping::new(corpus::sl2_borel());
        let left = env.multiply(&env.multiply(&u, &v), &w);
        let right = env.multiply(&u, &env.multiply(&v, &w));
        prop_assert_eq!(left, right);
    }

    #[test]
    fn pbw_coproduct_is_multiplicative(u in uea(3), v in uea(3)) {
        let env = Enveloping::new(corpus::sl2_borel());
        let lhs = env.coproduct_u(&env.multiply(&u, &v));
        let rhs = tensor_product(&env, &env.coproduct_u(&u), &env.coproduct_u(&v));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn reduce_inverts_lift(i in 0usize..4, t in prop::collection::vec((prop::collection::vec(0u16..4, 2), coeff()), 1..4)) {
        let p = pair(i);
        let k = p.quotient_dim();
        let q: D1Element = t.into_iter().map(|(e, c)| (Monomial::from_exponents(&e[..k]), c)).collect();
        let env = Enveloping::new(p);
        prop_assert_eq!(env.reduce(&env.lift(&q)), q);
    }

    #[test]
    fn d1_action_is_flat(x in vector(2), y in vector(2), e in prop::collection::vec(0u16..4, 1)) {
        let p = corpus::sl2_borel();
        let lift = |v: &[Rational]| vec![v[0].clone(), v[1].clone(), int(0)];
        let (x, y) = (lift(&x), lift(&y));
        let env = Enveloping::new(p.clone());
        let q = D1Element::basis(Monomial::from_exponents(&e));
        let xy = env.act_d1(&x, &env.act_d1(&y, &q).unwrap()).unwrap();
        let yx = env.act_d1(&y, &env.act_d1(&x, &q).unwrap()).unwrap();
        let br = env.act_d1(&p.bracket(&x, &y).unwrap(), &q).unwrap();
        prop_assert_eq!(xy.minus(&yx), br);
    }

    #[test]
    fn d_squared_vanishes((i, t) in (1usize..4).prop_flat_map(pair_and)) {
        let dc = DComplex::new(pair(i));
        prop_assert!(dc.differential(&dc.differential(&t)).is_zero());
    }

    #[test]
    fn leibniz_rule((i, np, a, b) in (0usize..4, 0usize..3, 0usize..3).prop_flat_map(|(i, np, nq)| {
        let k = pair(i).quotient_dim();
        (Just(i), Just(np), homogeneous(k, np), homogeneous(k, nq))
    })) {
        let dc = DComplex::new(pair(i));
        let lhs = dc.differential(&cup(&a, &b));
        let rhs = cup(&dc.differential(&a), &b).plus(&cup(&a, &dc.differential(&b)).scaled(&rational::sign(np)));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn antipode_is_an_involutive_antihomomorphism(a in homogeneous(2, 1), b in homogeneous(2, 3)) {
        for c in [Convention::Alternate, Convention::Standard] {
            prop_assert_eq!(antipode(&antipode(&a, c), c), a.clone());
            let lhs = antipode(&cup(&a, &b), c);
            let rhs = cup(&antipode(&b, c), &antipode(&a, c)).scaled(&rational::sign(3));
            prop_assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn symmetrization_is_graded_symmetric(picks in prop::collection::vec(0usize..12, 1..4), perm_seed in any::<u64>()) {
        let pool: Vec<BracketWord> = (1..=2).flat_map(|n| lyndon_basis(3, n)).collect();
        let factors: Vec<BracketWord> = picks.iter().map(|&i| pool[i % pool.len()].clone()).collect();
        let degrees: Vec<usize> = factors.iter().map(BracketWord::degree).collect();
        let mut perm: Vec<usize> = (0..factors.len()).collect();
        let mut s = perm_seed;
        for i in (1..perm.len()).rev() {
            perm.swap(i, (s % (i as u64 + 1)) as usize);
            s /= i as u64 + 1;
        }
        let reordered: Vec<BracketWord> = perm.iter().map(|&i| factors[i].clone()).collect();
        prop_assert_eq!(
            symmetrization_i(&reordered),
            symmetrization_i(&factors).scaled(&koszul_sign(&degrees, &perm))
        );
    }

    #[test]
    fn ce_differential_squares_to_zero(i in 0usize..4, deg in 0usize..2, raw in vector(64)) {
        let p = pair(i);
        for module in [HModule::quotient(&p), atiyah_module(&p)] {
            let dim = cochain_dim(&p, &module, deg);
            let v: Vec<Rational> = raw.iter().cloned().chain(std::iter::repeat(int(0))).take(dim).collect();
            let c = vec_to_cochain(&p, &module, deg, &v);
            let dd = ce_differential(&p, &module, &ce_differential(&p, &module, &c).unwrap()).unwrap();
            prop_assert!(dd.is_zero());
        }
    }
}
