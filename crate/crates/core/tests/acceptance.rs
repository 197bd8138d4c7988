//! One pass/fail line per acceptance criterion, all at exact equality.
//! Run with `cargo test --test acceptance`.

use std::sync::Arc;
use std::time::Instant;

use num::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use thetaklr::characters::{ch_projective, ch_projective_pbw, verify_ef_commutation, Character};
use thetaklr::fmod::{build_crystal, etilde, induce_f, CrystalGraph, GradedModule};
use thetaklr::ground::{int, rat, LaurentV, Matrix, Poly, Rational};
use thetaklr::hecke::{check_ei_compat, inverse_transport, transport, HeckeModule, HeckeParams};
use thetaklr::klr::{verify_relations, Flavor, GenKind, PbwElement, Shape, SkewElement};
use thetaklr::quiver::{DimVector, Quiver, Seq};

fn window(values: &[Rational], params: &HeckeParams) -> Arc<Quiver> {
    Arc::new(Quiver::build_from_params(values, params).unwrap())
}

fn w_b(q: i64) -> (Arc<Quiver>, HeckeParams) {
    let params = HeckeParams::B { p: int(2), q: int(q) };
    (window(&[int(2), int(8), rat(1, 2), rat(1, 8)], &params), params)
}

/// Every dimension vector of rank ≤ m (θ-symmetric for flavor B).
fn all_nus(q: &Quiver, flavor: Flavor, m: usize) -> Vec<DimVector> {
    let mut out: Vec<Vec<u32>> = vec![vec![0; q.n()]];
    let mut layer = out.clone();
    for _ in 0..m {
        let mut next = Vec::new();
        for nu in &layer {
            for i in 0..q.n() {
                let mut x = nu.clone();
                x[i] += 1;
                if flavor == Flavor::B {
                    x[q.theta(i)] += 1;
                }
                if !next.contains(&x) {
                    next.push(x);
                }
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out.sort();
    out.dedup();
    out.into_iter().map(DimVector).collect()
}

fn shapes(q: &Arc<Quiver>, flavor: Flavor, m: usize) -> Vec<Arc<Shape>> {
    all_nus(q, flavor, m).into_iter().map(|nu| Shape::new(q.clone(), flavor, nu).unwrap()).collect()
}

fn report(n: usize, ok: bool, detail: String) -> bool {
    println!("criterion {n:>2}: {} {detail}", if ok { "PASS" } else { "FAIL" });
    ok
}

fn c1() -> (bool, String) {
    let t = Instant::now();
    let (mut checked, mut failed) = (0, 0);
    for qq in [2, 5] {
        let (q, _) = w_b(qq);
        for (flavor, m) in [(Flavor::B, 3), (Flavor::A, 3)] {
            for sh in shapes(&q, flavor, m) {
                let r = verify_relations(&sh).unwrap();
                checked += r.checked;
                failed += r.failures.len();
            }
        }
    }
    // the negative control must fail somewhere
    let (q, _) = w_b(2);
    let bad = Arc::new(q.with_corrupted_q());
    let caught = shapes(&bad, Flavor::B, 2).iter().any(|sh| !verify_relations(sh).unwrap().passed());
    (failed == 0 && caught, format!("relation suite: {checked} instances, {failed} failed, corrupted Q caught: {caught}, {:.1?}", t.elapsed()))
}

fn c2() -> (bool, String) {
    let (q, _) = w_b(2);
    let mut ok = true;
    let mut sizes = 0;
    let all: Vec<Arc<Shape>> = shapes(&q, Flavor::B, 3);
    for sh in &all {
        let m = sh.rank();
        let expect = sh.seqs().len() * (1..=m).product::<usize>() * (1 << m);
        ok &= sh.basis().len() == expect;
        sizes += 1;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let ranked: Vec<&Arc<Shape>> = all.iter().filter(|s| s.rank() >= 1).collect();
    let mut products = 0;
    let mut round = 0;
    for _ in 0..100 {
        let sh = ranked[rng.gen_range(0..ranked.len())];
        let m = sh.rank();
        let mono = |rng: &mut ChaCha8Rng| {
            let mut p = Poly::one(m);
            for v in 0..m {
                p = &p * &Poly::var(m, v).pow(rng.gen_range(0..2));
            }
            p
        };
        let elems = sh.elems();
        let (j, w2) = (rng.gen_range(0..sh.seqs().len()), elems[rng.gen_range(0..elems.len())]);
        let w1 = elems[rng.gen_range(0..elems.len())];
        let i = sh.act(w2, j);
        let y = PbwElement::basis_element(sh, j, w2, mono(&mut rng));
        let x = PbwElement::basis_element(sh, i, w1, mono(&mut rng));
        match x.mul(&y) {
            Ok(z) => {
                products += 1;
                let back = PbwElement::to_pbw(&z.from_pbw()).map(|b| b == z).unwrap_or(false);
                round += usize::from(back);
                ok &= back;
            }
            Err(_) => ok = false,
        }
    }
    (ok, format!("PBW: {sizes} basis counts, {products}/100 products normalized, {round}/100 round trips"))
}

fn c3() -> (bool, String) {
    let mut ok = true;
    let mut lines = Vec::new();
    for qq in [2, 5] {
        let (q, _) = w_b(qq);
        for i in 0..q.n() {
            let mut nu = DimVector::zero(q.n());
            nu.add_vertex(i, 1);
            nu.add_vertex(q.theta(i), 1);
            let sh = Shape::new(q.clone(), Flavor::B, nu).unwrap();
            let b = sh.seq_index(&Seq(vec![i])).unwrap();
            let e = SkewElement::idempotent(&sh, b);
            // the block (i) is the full sequence θ(i)i, so the sign is (−1)^{λ_θ(i)}
            let (li, lt) = (q.lambda(i), q.lambda(q.theta(i)));
            let k1 = Poly::var(1, 0);
            let sign = if lt % 2 == 0 { Rational::one() } else { -Rational::one() };
            let lhs = e.left_gen(GenKind::Pi).unwrap().left_gen(GenKind::Pi).unwrap();
            let rhs = e.left_poly(&k1.pow(li + lt).scale(&sign));
            let anti_l = e.left_poly(&k1).left_gen(GenKind::Pi).unwrap();
            let anti_r = e.left_gen(GenKind::Pi).unwrap().left_poly(&-&k1);
            ok &= lhs == rhs && anti_l == anti_r;
            lines.push(li + lt);
        }
    }
    lines.sort();
    lines.dedup();
    (ok && lines == vec![0, 1], format!("pi^2 and pi kappa1 = -kappa1 pi at m=1 for lambda sums {lines:?}"))
}

fn c4() -> (bool, String) {
    let mut ok = true;
    let mut words = 0;
    for qq in [2, 5] {
        let (q, _) = w_b(qq);
        for sh in shapes(&q, Flavor::B, 3) {
            let g = sh.group();
            for k in 0..g.len() {
                let rw = g.all_reduced_words(k);
                for j in 0..sh.seqs().len() {
                    let d0 = sh.word_degree_of(&rw[0], j);
                    for w in &rw {
                        words += 1;
                        ok &= sh.word_degree_of(w, j) == d0;
                    }
                }
            }
        }
    }
    (ok, format!("word degree independent of the reduced word ({words} word/sequence pairs)"))
}

fn c5() -> (bool, String) {
    let mut ok = true;
    let mut n = 0;
    for qq in [2, 5] {
        let (q, _) = w_b(qq);
        for sh in shapes(&q, Flavor::B, 3) {
            for j in sh.seqs() {
                let a = ch_projective(&q, j).unwrap();
                let b = ch_projective_pbw(&sh, j).unwrap();
                ok &= a == b && a.denom() as usize == sh.rank() && a.parity_ok();
                n += 1;
            }
        }
    }
    (ok, format!("shuffle route = PBW route with parity dichotomy for {n} projectives"))
}

fn single(s: usize, c: LaurentV) -> Character {
    Character::single(true, Seq(vec![s]), c, 0)
}

fn c6() -> (bool, String) {
    let mut ok = true;
    let mut notes = Vec::new();
    for qq in [2, 5] {
        let (q, _) = w_b(qq);
        let g = build_crystal(q.clone(), 2).unwrap();
        let triv = GradedModule::trivial(q.clone(), Flavor::B).unwrap();
        for i in 0..q.n() {
            let t = q.theta(i);
            let lam = q.lambda(i) + q.lambda(t);
            // L_i has i_1 = θ(i): the full sequence is (i, θ(i))
            let li = single(t, LaurentV::one());
            let lti = single(i, LaurentV::one());
            if lam != 0 {
                let (a, b) = (g.node_of(&li), g.node_of(&lti));
                ok &= a.is_some() && b.is_some();
                if let Some(a) = a {
                    for j in 0..q.n() {
                        ok &= a.witness.epsilon(j) == usize::from(j == t);
                        let e = etilde(&a.witness, j).unwrap();
                        ok &= e.map(|x| x.character() == Character::unit()).unwrap_or(false) == (j == t);
                    }
                }
                let f = induce_f(&triv, i).unwrap().character();
                let mut vl = LaurentV::zero();
                vl.add_term(lam as i64, 1.into());
                ok &= f == single(t, vl).add(&lti).unwrap();
            } else {
                let both = li.add(&lti).unwrap();
                let a = g.node_of(&both);
                ok &= a.is_some() && g.node_of(&li).is_none();
                if let Some(a) = a {
                    for j in 0..q.n() {
                        ok &= a.witness.epsilon(j) == usize::from(j == i || j == t);
                    }
                }
            }
        }
        let dims_ok = g.nodes.iter().filter(|n| n.rank <= 1).all(|n| {
            (0..q.n()).all(|i| induce_f(&n.witness, i).unwrap().dim() == 2 * (n.rank + 1) * n.witness.dim())
        });
        ok &= dims_ok;
        notes.push(format!("q={qq}: {} rank-one nodes, {} nodes to rank 2, {} E~ checks", g.nodes_at(1).len(), g.nodes.len(), g.etilde_checks));
        ok &= g.nodes_at(1).len() == if qq == 2 { 3 } else { 2 };
    }
    (ok, format!("crystal: {}", notes.join("; ")))
}

/// Whether D⁻¹ T₀ D equals the target for the diagonal D = diag(1, d) fixing the (0,1) entry.
fn diagonal_match(t: &Matrix, target: &Matrix) -> bool {
    if t[(0, 1)].is_zero() || target[(0, 1)].is_zero() {
        return *t == *target;
    }
    let d = &target[(0, 1)] / &t[(0, 1)];
    let dm = Matrix::from_rows(vec![vec![Rational::one(), Rational::zero()], vec![Rational::zero(), d]]);
    let conj = &(&dm.inverse().unwrap() * t) * &dm;
    conj == *target
}

fn rank_one_table(g: &CrystalGraph, params: &HeckeParams) -> bool {
    let HeckeParams::B { q, .. } = params else { return false };
    let mut ok = true;
    for n in g.nodes_at(1) {
        let h = transport(&n.witness, params).unwrap();
        if h.dim() == 1 {
            let (x, t) = (&h.x[0][(0, 0)], &h.t[0][(0, 0)]);
            let i = x.recip();
            if i == q.recip() || i == -q.recip() {
                ok &= *t == *q;
            } else if i == *q || i == -q.clone() {
                ok &= *t == -q.recip();
            } else {
                ok = false;
            }
        } else {
            // order the basis so that X1 = diag(i, i⁻¹)
            let perm = if h.x[0][(0, 0)].abs() > Rational::one() {
                Matrix::identity(2)
            } else {
                Matrix::from_rows(vec![vec![int(0), int(1)], vec![int(1), int(0)]])
            };
            let h = h.conjugate(&perm).unwrap();
            let i = h.x[0][(0, 0)].clone();
            let a = q - &q.recip();
            let b = Rational::one() - &i * &i;
            let i2 = &i * &i;
            let expect = Matrix::from_rows(vec![
                vec![-(&i2 * &a) / &b, &a * &a - &(&b * &b) / &i2],
                vec![-(&i2 / &(&b * &b)), &a / &b],
            ]);
            ok &= h.x[0][(1, 1)] == i.recip() && h.x[0][(0, 1)].is_zero() && diagonal_match(&h.t[0], &expect);
        }
    }
    ok
}

fn round_trip(h: &HeckeModule, m: &GradedModule, q: &Arc<Quiver>) -> bool {
    let inv = inverse_transport(h, q.clone()).unwrap();
    let back = transport(&inv.module, &h.params).unwrap() == h.conjugate(&inv.basis).unwrap();
    let chars = (0..m.shape().seqs().len()).all(|k| m.block_dim(k) == inv.module.block_dim(k));
    back && chars
}

fn c7() -> (bool, String) {
    let t = Instant::now();
    let mut ok = true;
    let mut count = 0;
    let b37 = HeckeParams::B { p: int(3), q: int(7) };
    let cases = vec![w_b(2), w_b(5), (window(&[int(7), int(63), rat(1, 7), rat(1, 63)], &b37), b37)];
    for (q, params) in cases {
        let g = build_crystal(q.clone(), 3).unwrap();
        ok &= rank_one_table(&g, &params);
        for n in &g.nodes {
            let h = transport(&n.witness, &params).unwrap();
            ok &= h.verify().passed();
            if n.rank >= 1 {
                ok &= round_trip(&h, &n.witness, &q);
            }
            count += 1;
        }
    }
    (ok, format!("type B transport of {count} witnesses at m <= 3, rank-one table, round trips, {:.1?}", t.elapsed()))
}

fn c_cases() -> Vec<(Arc<Quiver>, HeckeParams)> {
    let a = HeckeParams::C { p: int(2), q0: int(3), q1: int(5) };
    let b = HeckeParams::C { p: int(2), q0: int(-3), q1: int(3) };
    vec![
        (window(&[int(-3), int(-12), rat(-1, 3), rat(-1, 12)], &a), a.clone()),
        (window(&[int(5), int(20), rat(1, 5), rat(1, 20)], &a), a),
        (window(&[int(3), int(12), rat(1, 3), rat(1, 12)], &b), b),
    ]
}

fn c8() -> (bool, String) {
    let mut ok = true;
    let mut count = 0;
    for (q, params) in c_cases() {
        let g = build_crystal(q.clone(), 3).unwrap();
        for n in &g.nodes {
            let h = transport(&n.witness, &params).unwrap();
            ok &= h.verify().passed();
            count += 1;
        }
    }
    let (q, b) = w_b(2);
    let c = HeckeParams::C { p: int(2), q0: int(2), q1: int(2) };
    let g = build_crystal(q, 3).unwrap();
    let same = g.nodes.iter().all(|n| {
        let (x, y) = (transport(&n.witness, &b).unwrap(), transport(&n.witness, &c).unwrap());
        x.x == y.x && x.t == y.t && y.verify().passed()
    });
    (ok && same, format!("type C transport of {count} witnesses, q0 = q1 coincides with type B: {same}"))
}

fn c9() -> (bool, String) {
    let mut ok = true;
    let mut checked = 0;
    let mut caught = true;
    for qq in [2, 5] {
        let (q, _) = w_b(qq);
        for sh in shapes(&q, Flavor::B, 2) {
            for j in sh.seqs() {
                let p = ch_projective(&q, j).unwrap();
                let r = verify_ef_commutation(&q, &p, 0).unwrap();
                checked += r.checked;
                ok &= r.failures.is_empty();
                if sh.rank() >= 1 {
                    caught &= !verify_ef_commutation(&q, &p, 1).unwrap().failures.is_empty();
                }
            }
        }
    }
    (ok && caught, format!("e'_i f_j commutation: {checked} identities, perturbed shift caught: {caught}"))
}

fn c10() -> (bool, String) {
    let mut ok = true;
    let mut n = 0;
    let mut cases = vec![w_b(2), w_b(5)];
    cases.extend(c_cases());
    for (q, params) in cases {
        let g = build_crystal(q, 2).unwrap();
        for node in g.nodes.iter().filter(|x| x.rank >= 1) {
            ok &= check_ei_compat(&node.witness, &params).unwrap().iter().all(|e| e.ok());
            n += 1;
        }
    }
    (ok, format!("E_i eigenspaces match restrictions for {n} witnesses"))
}

// Runs without the libtest harness so the lines always reach stdout.
fn main() {
    let checks: Vec<fn() -> (bool, String)> = vec![c1, c2, c3, c4, c5, c6, c7, c8, c9, c10];
    let mut all = true;
    for (k, f) in checks.into_iter().enumerate() {
        let (ok, detail) = f();
        all &= report(k + 1, ok, detail);
    }
    println!("acceptance: {}", if all { "all criteria pass" } else { "FAILED" });
    if !all {
        std::process::exit(1);
    }
}

