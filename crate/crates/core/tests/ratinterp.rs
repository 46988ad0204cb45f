use leeyang::ratinterp::{interpolate, normalize, SampleSet, Side};
use leeyang::rational::{q, qi};
use leeyang::{Error, UniPoly, Q};
use num::Zero;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_poly(rng: &mut ChaCha8Rng, deg: usize, lead: bool) -> UniPoly {
    let mut cs: Vec<Q> = (0..=deg)
        .map(|_| q(rng.gen_range(-9..=9), rng.gen_range(1..=4)))
        .collect();
    if lead && cs[deg].is_zero() {
        cs[deg] = qi(1);
    }
    UniPoly::new(cs)
}

/// Coprime `(p, q)` with `deg q = n` exactly, so the solution ray is unique.
fn random_pair(rng: &mut ChaCha8Rng, n: usize) -> (UniPoly, UniPoly) {
    loop {
        let p = random_poly(rng, n, false);
        let d = random_poly(rng, n, true);
        if !p.is_zero() && p.gcd(&d).is_constant() {
            return (p, d);
        }
    }
}

fn sample(rng: &mut ChaCha8Rng, p: &UniPoly, d: &UniPoly, count: usize) -> Vec<(Q, Q)> {
    let mut xs: Vec<Q> = (-40..=40).flat_map(|a| [qi(a), q(a, 3)]).collect();
    xs.sort();
    xs.dedup();
    xs.shuffle(rng);
    xs.into_iter()
        .filter(|x| !d.eval(x).is_zero())
        .take(count)
        .map(|x| {
            let y = p.eval(&x) / d.eval(&x);
            (x, y)
        })
        .collect()
}

#[test]
fn five_hundred_round_trips() {
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    for case in 0..500 {
        let n = case % 7;
        let (p, d) = random_pair(&mut rng, n);
        let extra = rng.gen_range(0..3);
        let pts = sample(&mut rng, &p, &d, 2 * n + 2 + extra);
        let rep = interpolate(&SampleSet::new(pts.clone(), n).unwrap()).unwrap();
        // Same ray: p * q' = p' * q.
        assert_eq!(&rep.p * &d, &p * &rep.q, "case {case}");
        for (x, y) in &pts {
            assert_eq!(rep.eval(x).as_ref(), Some(y));
        }
        // Pin the leading denominator coefficient and recover (p, d) exactly.
        let pinned = normalize(&rep, Side::Denominator, n, &d.coeff(n)).unwrap();
        assert_eq!((pinned.p, pinned.q), (p, d));
    }
}

#[test]
fn planted_common_factor_is_rank_deficient() {
    let mut rng = ChaCha8Rng::seed_from_u64(78);
    for _ in 0..50 {
        let n = rng.gen_range(1..5);
        let (p, d) = random_pair(&mut rng, n - 1);
        let c = UniPoly::new(vec![qi(rng.gen_range(1..5)), qi(1)]);
        let (pc, dc) = (&p * &c, &d * &c);
        let pts = sample(&mut rng, &pc, &dc, 2 * n + 2);
        match interpolate(&SampleSet::new(pts, n).unwrap()) {
            Err(Error::RankDeficient { nullity }) => assert_eq!(nullity, 2),
            other => panic!("expected a rank-deficient error, got {other:?}"),
        }
    }
}

#[test]
fn overstated_degree_is_rank_deficient() {
    let mut rng = ChaCha8Rng::seed_from_u64(79);
    let (p, d) = random_pair(&mut rng, 2);
    let pts = sample(&mut rng, &p, &d, 10);
    assert!(matches!(
        interpolate(&SampleSet::new(pts, 4).unwrap()),
        Err(Error::RankDeficient { nullity: 3 })
    ));
}

#[test]
fn too_few_or_repeated_samples_are_rejected() {
    let pts = vec![(qi(0), qi(1)), (qi(1), qi(2)), (qi(2), qi(3))];
    assert!(SampleSet::new(pts.clone(), 1).is_err());
    let mut dup = pts;
    dup.push((qi(0), qi(1)));
    assert!(SampleSet::new(dup, 1).is_err());
}
