use leeyang::graphs::{bipartite_double, DirectedWeightedGraph};
use leeyang::partition::transfer::matching_poly;
use leeyang::satgadgets::gadgets::{GadgetTemplate, XOR_A, XOR_B, XOR_C, XOR_D};
use leeyang::satgadgets::hamilton::exhaustive_search;
use leeyang::satgadgets::permanent::{cycle_cover_weight, minor_permanent, ryser};
use leeyang::satgadgets::{
    compile, replace_arcs_with_chains, validate_certificate, verify_gadget_properties, Mode, MonotoneTwoCnf,
};
use leeyang::zeros::certify_squarefree;
use num::{BigInt, Integer, One};

fn corpus() -> Vec<MonotoneTwoCnf> {
    (0..=3)
        .flat_map(|nu| (0..=2).flat_map(move |mu| MonotoneTwoCnf::enumerate(nu, mu)))
        .collect()
}

#[test]
fn keep_mode_counts_every_small_formula() {
    for phi in corpus() {
        let out = compile(&phi, Mode::KeepMinusOne).unwrap();
        let w = cycle_cover_weight(&out.gadget_graph).unwrap();
        let s = phi.count_satisfying().unwrap();
        let (reduced, _) = phi.strip_unused();
        assert_eq!(w, out.expected_weight(&reduced.count_satisfying().unwrap()), "{phi}");
        assert_eq!(out.extract(&w).unwrap(), s, "{phi}");
        assert!(out.degree_audit().passes(), "{phi}");
        assert!(
            validate_certificate(&out.gadget_graph, &out.hamiltonian_certificate),
            "{phi}"
        );
    }
}

#[test]
fn chain_mode_on_single_clauses() {
    for phi in MonotoneTwoCnf::enumerate(2, 1)
        .into_iter()
        .chain(MonotoneTwoCnf::enumerate(1, 1))
    {
        let out = compile(&phi, Mode::ChainReplaced).unwrap();
        assert!(out.gadget_graph.weights().iter().all(|w| [1, 2, 3].contains(w)));
        let w = cycle_cover_weight(&out.gadget_graph).unwrap();
        assert_eq!(out.extract(&w).unwrap(), phi.count_satisfying().unwrap(), "{phi}");
        assert!(out.degree_audit().passes());
        assert!(validate_certificate(&out.gadget_graph, &out.hamiltonian_certificate));
    }
}

#[test]
fn chain_mode_certificates_for_two_clauses() {
    for phi in MonotoneTwoCnf::enumerate(3, 2) {
        let out = compile(&phi, Mode::ChainReplaced).unwrap();
        assert_eq!(out.kappa, Some(11));
        assert!(out.degree_audit().passes());
        assert!(
            validate_certificate(&out.gadget_graph, &out.hamiltonian_certificate),
            "{phi}"
        );
    }
}

#[test]
fn gadget_properties_hold() {
    let report = verify_gadget_properties(&leeyang::satgadgets::gadgets::standard_templates(&[1, 2, 3, 4])).unwrap();
    assert!(report.passed());
}

fn xor_graph() -> DirectedWeightedGraph {
    DirectedWeightedGraph::from_arcs(4, &GadgetTemplate::xor().arcs).unwrap()
}

/// Closure rows/cols for the port flags (a in, a out, d in, d out).
fn closures() -> Vec<(Vec<usize>, Vec<usize>)> {
    let mut v = Vec::new();
    for mask in 0u8..16 {
        let mut rows = Vec::new();
        let mut cols = Vec::new();
        if mask & 1 != 0 {
            cols.push(XOR_A);
        }
        if mask & 2 != 0 {
            rows.push(XOR_A);
        }
        if mask & 4 != 0 {
            cols.push(XOR_D);
        }
        if mask & 8 != 0 {
            rows.push(XOR_D);
        }
        v.push((rows, cols));
    }
    v
}

#[test]
fn chain_replacement_is_minus_one_modulo() {
    let keep = xor_graph().matrix();
    for kappa in [2usize, 3, 5] {
        let modulus = (BigInt::one() << (kappa + 1)) + 1;
        for arcs in [
            vec![(XOR_B, XOR_A)],
            vec![(XOR_C, XOR_C)],
            vec![(XOR_B, XOR_A), (XOR_C, XOR_C)],
        ] {
            let mut g = xor_graph();
            replace_arcs_with_chains(&mut g, &arcs, kappa).unwrap();
            let m = g.matrix();
            for (rows, cols) in closures() {
                let w0 = minor_permanent(&keep, &rows, &cols).unwrap();
                let w1 = minor_permanent(&m, &rows, &cols).unwrap();
                assert_eq!(
                    w0.mod_floor(&modulus),
                    w1.mod_floor(&modulus),
                    "kappa {kappa} {arcs:?} {rows:?} {cols:?}"
                );
            }
        }
        // A lone -1 arc inside a 2-cycle: the chained version is 1 + 2^(kappa+1).
        let mut g = DirectedWeightedGraph::from_arcs(2, &[(0, 0, 1), (1, 1, 1), (0, 1, 1), (1, 0, -1)]).unwrap();
        assert_eq!(cycle_cover_weight(&g).unwrap(), BigInt::from(0));
        replace_arcs_with_chains(&mut g, &[(1, 0)], kappa).unwrap();
        let w = cycle_cover_weight(&g).unwrap();
        assert_eq!(w, BigInt::one() + (BigInt::one() << (kappa + 1)));
        assert_eq!(w.mod_floor(&modulus), BigInt::from(0));
    }
}

#[test]
fn each_xor_doubles_paired_covers() {
    // Two 2-cycles with loops, each carrying one dotted edge e_i→f_i. Of the
    // four covers, two use exactly one dotted edge.
    let (e1, f1, e2, f2) = (0, 1, 2, 3);
    let base = [
        (e1, e1, 1),
        (f1, f1, 1),
        (f1, e1, 1),
        (e2, e2, 1),
        (f2, f2, 1),
        (f2, e2, 1),
    ];
    let mut plain = DirectedWeightedGraph::from_arcs(4, &base).unwrap();
    plain.add_arc(e1, f1, 1).unwrap();
    plain.add_arc(e2, f2, 1).unwrap();
    assert_eq!(cycle_cover_weight(&plain).unwrap(), BigInt::from(4));
    let mut g = DirectedWeightedGraph::from_arcs(8, &base).unwrap();
    let x = [4, 5, 6, 7];
    for &(s, t, w) in &GadgetTemplate::xor().arcs {
        g.add_arc(x[s], x[t], w).unwrap();
    }
    g.add_arc(e1, x[XOR_A], 1).unwrap();
    g.add_arc(x[XOR_D], f1, 1).unwrap();
    g.add_arc(e2, x[XOR_D], 1).unwrap();
    g.add_arc(x[XOR_A], f2, 1).unwrap();
    assert_eq!(cycle_cover_weight(&g).unwrap(), BigInt::from(2 * 2));
}

#[test]
fn exhaustive_search_finds_paths_the_builder_finds() {
    let phi = MonotoneTwoCnf::new(0, vec![]).unwrap();
    let out = compile(&phi, Mode::KeepMinusOne).unwrap();
    assert!(exhaustive_search(&out.gadget_graph, 10_000).unwrap().is_some());
    let phi = MonotoneTwoCnf::new(1, vec![(1, 1)]).unwrap();
    let out = compile(&phi, Mode::KeepMinusOne).unwrap();
    let found = exhaustive_search(&out.gadget_graph, 50_000_000)
        .expect("search budget")
        .expect("a path");
    assert!(validate_certificate(&out.gadget_graph, &found));
    assert!(validate_certificate(&out.gadget_graph, &out.hamiltonian_certificate));
}

#[test]
fn smallest_chain_output_has_squarefree_matching_polynomial() {
    let phi = MonotoneTwoCnf::new(1, vec![(1, 1)]).unwrap();
    let out = compile(&phi, Mode::ChainReplaced).unwrap();
    let bip = bipartite_double(&out.gadget_graph);
    let zm = matching_poly(&bip);
    assert!(certify_squarefree(&zm).unwrap().verdict);
}

#[test]
fn ryser_and_frontier_agree_on_compiled_graphs() {
    let phi = MonotoneTwoCnf::new(2, vec![(1, 2)]).unwrap();
    let out = compile(&phi, Mode::KeepMinusOne).unwrap();
    assert_eq!(ryser(&out.gadget_graph.matrix()).unwrap(), BigInt::from(56));
    assert_eq!(cycle_cover_weight(&out.gadget_graph).unwrap(), BigInt::from(56));
}
