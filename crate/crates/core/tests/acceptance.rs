//! End-to-end acceptance checks. Runs without the libtest harness so that
//! every criterion prints its own PASS/FAIL line; exits nonzero if any fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use liehopf::atiyah::{atiyah_cocycle, atiyah_report, canonical_connection};
use liehopf::cli::{cmd_report, render, OutputFormat, RunConfig};
use liehopf::dpoly::{
    cohomology_report, expected_graded_betti, graded_oracle_betti, hopf_axiom_report, AntipodeChoice, Convention,
    DComplex, TruncationSpec,
};
use liehopf::free_lie::{beta, bracket_compatibility_check, d_stability_check, equivariance_defect, verify_i_iso};
use liehopf::hkr::hkr_report;
use liehopf::lie::{corpus, parse_pair_json};
use liehopf::pbw::{d1_basis_up_to_weight, D1Element, D1Tensor, Enveloping, Monomial};
use liehopf::rational::int;
use liehopf::Error;

type Check = std::result::Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn spec(w: usize, n: usize) -> TruncationSpec {
    TruncationSpec::new(w, n).unwrap()
}

fn validation() -> Check {
    let start = Instant::now();
    for (name, text) in corpus::ALL {
        parse_pair_json(text).map_err(|e| format!("{name}: {e}"))?;
    }
    match parse_pair_json(corpus::JACOBI_BROKEN) {
        Err(Error::InvalidPair(v)) => {
            let msg = v.iter().map(ToString::to_string).collect::<Vec<_>>().join("; ");
            ensure(msg.contains("triple (0, 1, 2)"), || {
                format!("mutant rejected without the triple: {msg}")
            })?;
        }
        other => return Err(format!("Jacobi-broken mutant not rejected: {other:?}")),
    }
    let t = start.elapsed();
    ensure(t < Duration::from_secs(1), || format!("took {t:?}"))?;
    Ok("4 corpus pairs valid; mutant rejected on triple (x1, x2, x3)".into())
}

fn d_squared() -> Check {
    let s = spec(4, 4);
    let mut checked = 0;
    for (name, p) in corpus::all() {
        let r = DComplex::new(p).check_d_squared(&s);
        ensure(r.strict_pass, || format!("{name}: {:?}", r.counterexample))?;
        checked += r.checked;
    }
    Ok(format!("{checked} basis tensors at w = 4, N = 4"))
}

fn leibniz() -> Check {
    let s = spec(4, 4);
    let mut checked = 0;
    for (name, p) in corpus::all() {
        let r = DComplex::new(p).check_leibniz(&s);
        ensure(r.strict_pass, || format!("{name}: {:?}", r.counterexample))?;
        checked += r.checked;
    }
    Ok(format!("{checked} basis pairs with |P| + |Q| ≤ 4"))
}

fn hopf_suite() -> Check {
    let s = spec(3, 3);
    for (name, p) in corpus::all() {
        let r = hopf_axiom_report(&DComplex::new(p), &s, AntipodeChoice::Auto).map_err(|e| e.to_string())?;
        for a in &r.axioms {
            match a.convention {
                None => ensure(a.strict_pass, || {
                    format!("{name}: {} fails: {:?}", a.name, a.counterexample)
                })?,
                Some(Convention::Standard) => ensure(a.strict_pass, || format!("{name}: standard antipode fails"))?,
                Some(Convention::Alternate) => ensure(a.homotopy_note.is_some() || a.strict_pass, || {
                    format!("{name}: alternate antipode outcome not recorded")
                })?,
            }
        }
        ensure(r.selected_convention == Some(Convention::Standard), || {
            format!("{name}: selected {:?}", r.selected_convention)
        })?;
        ensure(r.all_pass, || format!("{name}: verdict fails"))?;
    }
    Ok("all axioms strict at w = 3, N = 3; standard antipode strict, alternate sign recorded".into())
}

fn coproduct_equivariance() -> Check {
    for (name, p) in corpus::all() {
        let env = Enveloping::new(p.clone());
        let m = p.sub_dim();
        let leibniz_on = |i: usize, t: &D1Tensor| -> D1Tensor {
            let mut out = D1Tensor::zero();
            for ((a, b), c) in t {
                for (x, cx) in &env.act_d1_basis(i, a) {
                    out.add_term((x.clone(), b.clone()), c * cx);
                }
                for (y, cy) in &env.act_d1_basis(i, b) {
                    out.add_term((a.clone(), y.clone()), c * cy);
                }
            }
            out
        };
        let act = |i: usize, q: &D1Element| -> D1Element { q.map_linear(|mono| env.act_d1_basis(i, mono)) };
        for mono in d1_basis_up_to_weight(p.quotient_dim(), 4) {
            let basis = D1Element::basis(mono.clone());
            for i in 0..m {
                let lhs = env.coproduct_d1(&act(i, &basis));
                let rhs = leibniz_on(i, &env.coproduct_d1(&basis));
                ensure(lhs == rhs, || {
                    format!("{name}: ∇Δ ≠ Δ∇ at X = {}, p = {mono:?}", p.names()[i])
                })?;
                for j in 0..m {
                    let comm = act(i, &act(j, &basis)).minus(&act(j, &act(i, &basis)));
                    let bracket = env.act_d1(p.basis_bracket(i, j), &basis).map_err(|e| e.to_string())?;
                    ensure(comm == bracket, || {
                        format!("{name}: action not flat at ({i}, {j}), p = {mono:?}")
                    })?;
                }
            }
        }
        let r = DComplex::new(p).check_equivariance(&spec(4, 3));
        ensure(r.strict_pass, || {
            format!("{name}: d not h-equivariant: {:?}", r.counterexample)
        })?;
    }
    Ok("coproduct equivariance and flatness on weight ≤ 4; d h-equivariant at w = 4, N = 3".into())
}

fn hkr() -> Check {
    let s = spec(4, 3);
    for (name, p) in corpus::all() {
        let k = p.quotient_dim();
        let dc = DComplex::new(p);
        let r = hkr_report(&dc, &s).map_err(|e| e.to_string())?;
        ensure(r.all_pass, || format!("{name}: {r:?}"))?;
        let bound = k.min(2);
        ensure(
            r.rows
                .iter()
                .filter(|row| row.n <= bound)
                .all(|row| row.independent_pass == Some(true)),
            || format!("{name}: independence not decided in range"),
        )?;
        for e in graded_oracle_betti(k, 4, 3) {
            ensure(e.dim_h == expected_graded_betti(k, e.weight, e.degree), || {
                format!("{name}: oracle {e:?}")
            })?;
        }
    }
    let dc = DComplex::new(corpus::sl2_borel());
    let h: Vec<usize> = cohomology_report(&dc, &s)
        .map_err(|e| e.to_string())?
        .iter()
        .map(|r| r.dim_h)
        .collect();
    ensure(h[..3] == [1, 1, 0], || format!("sl2/Borel H = {h:?}"))?;
    Ok("images exact cocycles, classes independent, dim Hⁿ = C(k, n); sl2/Borel H⁰ = 1, H¹ = 1, H² = 0".into())
}

fn symmetrization() -> Check {
    for w in 1..=2 {
        let s = spec(w, 3);
        for (name, p) in corpus::all() {
            let k = p.quotient_dim();
            let q = d1_basis_up_to_weight(k, w).len();
            for row in verify_i_iso(k, &s) {
                ensure(row.iso_pass && row.tensor_dim == q.pow(row.degree as u32), || {
                    format!("{name}, w = {w}: {row:?}")
                })?;
            }
            for row in d_stability_check(&DComplex::new(p), &s).map_err(|e| e.to_string())? {
                ensure(row.d_member_pass && row.action_member_pass, || {
                    format!("{name}, w = {w}: {row:?}")
                })?;
            }
        }
    }
    Ok("rank I = #monomials = |V|ⁿ for w ≤ 2, n ≤ 3; Lyndon words d-stable".into())
}

fn bracket_compatibility() -> Check {
    for (name, p) in corpus::all() {
        let r = bracket_compatibility_check(&DComplex::new(p)).map_err(|e| e.to_string())?;
        ensure(r.all_pass, || format!("{name}: {:?}", r.failure))?;
    }
    let pair = corpus::sl2_borel();
    let dc = DComplex::new(pair.clone());
    let r = bracket_compatibility_check(&dc).map_err(|e| e.to_string())?;
    ensure(r.sign == Some(-1), || format!("ε′ = {:?}", r.sign))?;
    let f = D1Element::basis(Monomial::variable(1, 0));
    let defect = equivariance_defect(&dc, 1, 0, 0).map_err(|e| e.to_string())?;
    ensure(defect == f.scaled(&int(-2)), || "δ(e; f̄, f̄) ≠ −2f̄".into())?;
    let cocycle = atiyah_cocycle(&pair, &canonical_connection(&pair, None).map_err(|e| e.to_string())?)
        .map_err(|e| e.to_string())?;
    ensure(beta(&cocycle.apply(1, 0, 0)) == f.scaled(&int(2)), || {
        "R(e)(f̄)(f̄) ≠ 2f̄".into()
    })?;
    Ok("identities (i), (ii) on all pairs with ε′ = −1; δ(e; f̄, f̄) = −2f̄, R(e)(f̄)(f̄) = 2f̄".into())
}

fn atiyah() -> Check {
    let pair = corpus::sl2_borel();
    let r = atiyah_report(&pair, 0, 3).map_err(|e| e.to_string())?;
    ensure(r.is_cocycle && r.class_nonzero && r.h1_dim == 1, || {
        format!("sl2/Borel: {r:?}")
    })?;
    let e = r.cocycle.iter().find(|c| c.x == "e").ok_or("no R[e] entry")?;
    ensure(e.matrix == vec![vec!["2".to_string()]], || {
        format!("R[e](f̄) = {:?}", e.matrix)
    })?;
    ensure(
        r.independence.len() >= 3 && r.independence.iter().all(|i| i.witness_found),
        || "independence witnesses missing".into(),
    )?;
    let abelian = atiyah_report(&corpus::abelian2_sub1(), 0, 3).map_err(|e| e.to_string())?;
    ensure(!abelian.class_nonzero, || "abelian class nonzero".into())?;
    Ok("R[e](f̄) = 2·id, dR = 0, class nonzero, 3/3 independence witnesses, H¹ = 1; abelian class zero".into())
}

fn determinism() -> Check {
    let dir = concat!(env!("CARGO_MANIFEST_DIR"), "/corpus");
    for name in ["sl2_borel", "heisenberg_center"] {
        let mut cfg = RunConfig::new(format!("{dir}/{name}.json"));
        cfg.seed = 11;
        for format in [OutputFormat::Text, OutputFormat::Json] {
            let a = render(&cmd_report(&cfg).map_err(|e| e.to_string())?, format);
            let b = render(&cmd_report(&cfg).map_err(|e| e.to_string())?, format);
            ensure(a == b, || format!("{name}: {format:?} reports differ"))?;
        }
    }
    Ok("text and JSON reports byte-identical across runs".into())
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("validation", validation),
        ("d² = 0", d_squared),
        ("Leibniz rule", leibniz),
        ("Hopf axioms", hopf_suite),
        ("D¹ coproduct equivariance and flatness", coproduct_equivariance),
        ("HKR quasi-isomorphism", hkr),
        ("symmetrization isomorphism", symmetrization),
        ("bracket compatibility", bracket_compatibility),
        ("Atiyah class", atiyah),
        ("determinism", determinism),
    ];
    let mut failures = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match result {
            Ok(detail) => println!("PASS criterion {}: {name} ({detail}) [{secs:.2}s]", i + 1),
            Err(why) => {
                failures += 1;
                println!("FAIL criterion {}: {name}: {why} [{secs:.2}s]", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failures, criteria.len());
    if failures > 0 {
        std::process::exit(1);
    }
}
