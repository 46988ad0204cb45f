use leeyang::graphs::family::{connected_graphs_up_to, random_connected_graph};
use leeyang::partition::weighted::weighted_ising_eval_exact;
use leeyang::partition::{enumerate, observables, transfer, EnumCaps, VertexWeights};
use leeyang::rational::{q, qi};
use leeyang::zeros::probes::newman_check_exact;
use leeyang::Q;
use num::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn polynomial_matches_weighted_evaluation() {
    let beta = q(2, 5);
    for g in connected_graphs_up_to(5) {
        let z = transfer::ising_poly(&g, &beta);
        assert_eq!(z, enumerate::ising_poly(&g, &beta).unwrap());
        for lam in [q(1, 3), qi(1), q(7, 2)] {
            let (zw, dzw) =
                weighted_ising_eval_exact(&g, &beta, &vec![lam.clone(); g.n()], &VertexWeights::unit(g.n())).unwrap();
            assert_eq!(zw, z.eval(&lam));
            // D = lambda d/dlambda.
            assert_eq!(dzw, z.x_derivative().eval(&lam));
        }
    }
}

#[test]
fn spin_flip_symmetry_at_unit_activity() {
    for g in connected_graphs_up_to(6) {
        for beta in [q(1, 4), q(3, 4)] {
            let z = transfer::ising_poly(&g, &beta);
            let n = g.n();
            assert!((0..=n).all(|k| z.coeff(k) == z.coeff(n - k)));
            let m = observables::magnetization(&g, &beta, &qi(1)).unwrap();
            assert_eq!(m, q(n as i64, 2));
        }
    }
}

#[test]
fn matching_parity_and_counts() {
    for g in connected_graphs_up_to(6) {
        let z = transfer::matching_poly(&g);
        assert_eq!(z, enumerate::matching_poly(&g).unwrap());
        let n = g.n();
        assert!((0..=n).filter(|k| (n - k) % 2 == 1).all(|k| z.coeff(k).is_zero()));
        assert!(z.coeff(n).is_one());
        // The lambda^(n-2) coefficient counts edges.
        if n >= 2 {
            assert_eq!(z.coeff(n - 2), qi(g.edge_count() as i64));
        }
        let u = observables::monomer_count(&g, &qi(1)).unwrap();
        assert!(u >= Q::zero() && u <= qi(n as i64));
    }
}

#[test]
fn observables_agree_with_the_polynomial() {
    let caps = EnumCaps::default();
    for g in connected_graphs_up_to(5) {
        let beta = q(1, 3);
        let lam = q(5, 4);
        let z = transfer::ising_poly(&g, &beta);
        let dz = z.x_derivative();
        let d2z = dz.x_derivative();
        let (zv, d1, d2) = (z.eval(&lam), dz.eval(&lam), d2z.eval(&lam));
        assert_eq!(observables::magnetization(&g, &beta, &lam).unwrap(), &d1 / &zv);
        let m = &d1 / &zv;
        assert_eq!(
            observables::susceptibility(&g, &beta, &lam).unwrap(),
            &d2 / &zv - &m * &m
        );
        assert!(observables::susceptibility(&g, &beta, &lam).unwrap() >= Q::zero());
        let e = observables::mean_energy(&g, &beta, &lam, &caps).unwrap();
        assert!(e >= Q::zero() && e <= qi(g.edge_count() as i64));
    }
}

#[test]
fn griffiths_case_of_newman_bound() {
    let mut checked = 0;
    for g in connected_graphs_up_to(4) {
        for beta in [q(1, 5), q(1, 2), q(9, 10)] {
            for zs in [vec![qi(1); g.n()], vec![q(3, 2); g.n()]] {
                for w in [
                    VertexWeights::degrees(&g),
                    VertexWeights::uniform(g.n(), g.max_degree().max(1) + 1),
                ] {
                    assert!(newman_check_exact(&g, &beta, &zs, &w).unwrap());
                    checked += 1;
                }
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..500 {
        let n = rng.gen_range(2..=6);
        let g = random_connected_graph(n, 0.4, &mut rng);
        let beta = q(rng.gen_range(1..10), 10);
        let zs: Vec<Q> = (0..n).map(|_| q(rng.gen_range(10..40), 10)).collect();
        let w = VertexWeights(g.degrees().iter().map(|&d| d.max(1) + rng.gen_range(0..2)).collect());
        assert!(newman_check_exact(&g, &beta, &zs, &w).unwrap());
        checked += 1;
    }
    assert!(checked > 500);
}

#[test]
fn caps_are_reported() {
    let g = leeyang::MultiGraph::path(30).unwrap();
    let caps = EnumCaps::default();
    assert!(matches!(
        enumerate::ising_poly_with(&g, &q(1, 2), &caps),
        Err(leeyang::Error::CapExceeded { .. })
    ));
    // The transfer method has no such cap.
    assert_eq!(transfer::ising_poly(&g, &q(1, 2)).degree(), Some(30));
}

#[test]
fn unit_activity_is_the_newman_boundary_for_unit_weights() {
    for g in connected_graphs_up_to(5) {
        let (zz, dz) =
            weighted_ising_eval_exact(&g, &q(1, 2), &vec![qi(1); g.n()], &VertexWeights::unit(g.n())).unwrap();
        assert_eq!(dz / zz, q(g.n() as i64, 2));
        assert!(newman_check_exact(&g, &q(1, 2), &vec![qi(1); g.n()], &VertexWeights::unit(g.n())).unwrap());
    }
}
