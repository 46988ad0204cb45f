use leeyang::rational::{q, qi};
use leeyang::zeros::schur_cohn::strictly_inside_unit_disk;
use leeyang::zeros::sturm::{count_distinct_real_roots, is_real_rooted};
use leeyang::zeros::{certify_squarefree, certify_unit_circle, find_roots};
use leeyang::{UniPoly, Q};
use num::{One, Signed};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// A polynomial with planted roots whose squared moduli are known exactly.
struct Planted {
    p: UniPoly,
    mod_sq: Vec<Q>,
    real_roots: Vec<Q>,
    has_complex: bool,
}

fn rational_near(rng: &mut ChaCha8Rng, lo: f64, hi: f64) -> Q {
    let den = [1i64, 2, 3, 7, 10, 1000, 1_000_000, 100_000_000][rng.gen_range(0..8)];
    let x = rng.gen_range(lo..hi);
    Q::new(((x * den as f64).round() as i64).into(), den.into())
}

/// Real roots `r` and conjugate pairs `a +- ib` (as `x^2 - 2ax + a^2 + b^2`),
/// some deliberately within 1e-5 of the unit circle.
fn planted(rng: &mut ChaCha8Rng, max_deg: usize) -> Planted {
    let mut p = UniPoly::one();
    let (mut mod_sq, mut real_roots) = (Vec::new(), Vec::new());
    let mut has_complex = false;
    let target = rng.gen_range(1..=max_deg);
    while p.degree().unwrap() < target {
        let near = rng.gen_bool(0.2);
        if target - p.degree().unwrap() >= 2 && rng.gen_bool(0.5) {
            let (a, b) = if near {
                // a^2 + b^2 = (1 + eps)^2 exactly via a Pythagorean triple.
                let eps = q(
                    rng.gen_range(10..1000) * if rng.gen_bool(0.5) { 1 } else { -1 },
                    1_000_000,
                );
                let s = qi(1) + eps;
                (&s * q(3, 5), &s * q(4, 5))
            } else {
                let b = rational_near(rng, 0.01, 1.5);
                (rational_near(rng, -1.5, 1.5), if b.is_positive() { b } else { q(1, 2) })
            };
            let m = &a * &a + &b * &b;
            p = &p * &UniPoly::new(vec![m.clone(), -(&a + &a), qi(1)]);
            mod_sq.push(m);
            has_complex = true;
        } else {
            let r = if near {
                let s = q(1_000_000 + rng.gen_range(-999..1000), 1_000_000);
                if rng.gen_bool(0.5) {
                    s
                } else {
                    -s
                }
            } else {
                rational_near(rng, -2.0, 2.0)
            };
            p = &p * &UniPoly::new(vec![-r.clone(), qi(1)]);
            mod_sq.push(&r * &r);
            real_roots.push(r);
        }
    }
    Planted {
        p,
        mod_sq,
        real_roots,
        has_complex,
    }
}

fn away_from_circle(m: &Q) -> bool {
    // | |z| - 1 | >= 1e-6  iff  |z|^2 outside ((1 - 1e-6)^2, (1 + 1e-6)^2).
    let lo = q(999_999, 1_000_000);
    let hi = q(1_000_001, 1_000_000);
    *m <= &lo * &lo || *m >= &hi * &hi
}

#[test]
fn schur_cohn_agrees_with_root_moduli() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let (mut cases, mut inside) = (0, 0);
    while cases < 1000 {
        let t = planted(&mut rng, 12);
        if !t.mod_sq.iter().all(away_from_circle) {
            continue;
        }
        let expected = t.mod_sq.iter().all(|m| *m < Q::one());
        assert_eq!(strictly_inside_unit_disk(&t.p), expected, "{:?}", t.p);
        let roots = find_roots(&t.p, 128).unwrap_or_else(|e| panic!("{e:?} {:?}", t.p));
        assert_eq!(roots.count(), t.p.degree().unwrap());
        assert_eq!(roots.max_modulus() < 1.0, expected, "{:?}", t.p);
        // Scaling by a nonzero constant changes nothing.
        assert_eq!(strictly_inside_unit_disk(&t.p.scale(&q(-7, 3))), expected);
        inside += expected as usize;
        cases += 1;
    }
    // Both verdicts are well represented.
    assert!(inside > 100 && inside < 900, "{inside}");
}

#[test]
fn sturm_counts_planted_real_roots() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..300 {
        let t = planted(&mut rng, 10);
        let mut distinct = t.real_roots.clone();
        distinct.sort();
        distinct.dedup();
        assert_eq!(count_distinct_real_roots(&t.p), distinct.len());
        assert_eq!(is_real_rooted(&t.p), !t.has_complex);
    }
}

#[test]
fn squarefree_certificate_detects_planted_squares() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for _ in 0..200 {
        let t = planted(&mut rng, 6);
        let sq = &t.p * &t.p;
        assert!(!certify_squarefree(&sq).unwrap().verdict);
        let sf = t.p.squarefree_part();
        assert!(certify_squarefree(&sf).unwrap().verdict);
    }
}

#[test]
fn unit_circle_certificate_on_cyclotomic_products() {
    // Products of x^k + 1 have all roots on the circle.
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for _ in 0..50 {
        let mut p = UniPoly::one();
        for _ in 0..rng.gen_range(1..4) {
            let k = rng.gen_range(1..5);
            let mut cs = vec![qi(0); k + 1];
            cs[0] = qi(1);
            cs[k] = qi(1);
            p = &p * &UniPoly::new(cs);
        }
        assert!(certify_unit_circle(&p, 1e-25, 256).unwrap().verdict);
        // Moving one root off the circle is noticed.
        let off = &p * &UniPoly::new(vec![q(-101, 100), qi(1)]);
        assert!(!certify_unit_circle(&off, 1e-25, 256).unwrap().verdict);
        assert!(off.coeffs().iter().any(|c| c.is_negative()));
    }
}
