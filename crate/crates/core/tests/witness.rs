//! Witness operator identities and the negativity/contextuality equivalence.

mod common;

use common::random_state;
use qudit_msd::dense::CMatrix;
use qudit_msd::wigner::wigner_from_density;
use qudit_msd::witness::{
    build_graph, sigma_closed_form, sigma_identity_check, witness_from_sigma, OntologicalModel,
};
use qudit_msd::zd::Prime;

fn p3() -> Prime {
    Prime::new(3).unwrap()
}

#[test]
fn sigma_identity_holds_at_d5() {
    let d = Prime::new(5).unwrap();
    let g = build_graph(d, 2, 3);
    assert_eq!(g.num_vertices(), 5 * 24 + 125 * 24);
    assert!(g.sigma().max_abs_diff(&sigma_closed_form(d, 2, 3)) <= 1e-9);
}

#[test]
fn sigma_deviation_is_face_independent() {
    let devs: Vec<f64> = (0..9)
        .map(|k| sigma_identity_check(p3(), k / 3, k % 3))
        .collect();
    for dev in &devs {
        assert!(*dev <= 1e-9);
        assert!((dev - devs[0]).abs() <= 1e-12);
    }
    assert!(build_graph(p3(), 1, 1).sigma().is_hermitian(1e-12));
}

#[test]
fn graph_is_simple_and_covariant() {
    let g = build_graph(p3(), 0, 0);
    assert!(g.edges.iter().all(|&(i, j)| i < j));
    let mut sorted = g.edges.clone();
    sorted.dedup();
    assert_eq!(sorted.len(), g.edges.len());
    for face in [(1, 0), (2, 2)] {
        let h = build_graph(p3(), face.0, face.1);
        assert_eq!((h.num_vertices(), h.num_edges()), (240, 7116));
    }
}

#[test]
fn dimacs_lists_every_edge() {
    let g = build_graph(p3(), 0, 0);
    let text = g.to_dimacs();
    assert!(text.lines().any(|l| l == "p edge 240 7116"));
    assert_eq!(text.lines().filter(|l| l.starts_with("e ")).count(), 7116);
    let (i, j) = g.edges[0];
    assert!(text.contains(&format!("e {} {}\n", i + 1, j + 1)));
}

#[test]
fn closed_form_and_negativity_equivalence() {
    let d = p3();
    let sums: Vec<_> = (0..9)
        .map(|k| build_graph(d, k / 3, k % 3).sigma())
        .collect();
    let mut contextual = 0;
    for seed in 0..100 {
        let rho = random_state(d, seed).matrix;
        // push some states towards a pure, possibly negative, state
        let rho = if seed % 2 == 0 { sharpen(&rho) } else { rho };
        let sigma = random_state(d, 500 + seed).matrix;
        let w = wigner_from_density(&rho, d, 1).unwrap();
        for k in 0..9u32 {
            let face = (k / 3, k % 3);
            let r = witness_from_sigma(&sums[k as usize], &rho, &sigma, d, face);
            assert!((r.value - r.closed_form).abs() <= 1e-9);
            assert_eq!(
                r.contextual,
                w.at(face.0, face.1) < -1e-9,
                "seed {seed} face {face:?}"
            );
            contextual += usize::from(r.contextual);
        }
    }
    assert!(contextual > 0);
}

/// `rho^8` renormalized: the same eigenvectors with a dominant top eigenvalue.
fn sharpen(rho: &CMatrix<f64>) -> CMatrix<f64> {
    let mut m = rho.clone();
    for _ in 0..3 {
        m = &m * &m;
    }
    let tr = m.trace().re;
    m.scale_real(1.0 / tr)
}

#[test]
fn witness_ignores_the_ancilla() {
    let d = p3();
    let sum = build_graph(d, 0, 0).sigma();
    let rho = random_state(d, 3).matrix;
    let base = witness_from_sigma(&sum, &rho, &random_state(d, 4).matrix, d, (0, 0)).value;
    for seed in 5..15 {
        let v = witness_from_sigma(&sum, &rho, &random_state(d, seed).matrix, d, (0, 0)).value;
        assert!((v - base).abs() <= 1e-10);
    }
}

#[test]
fn ontological_sets_are_independent_and_translation_covariant() {
    let g = build_graph(p3(), 0, 0);
    let model = OntologicalModel::new(&g);
    let mut state = 12345u64;
    let mut next = || {
        state = state.wrapping_mul(6364136223846793005).wrapping_add(1);
        ((state >> 33) % 3) as u32
    };
    for _ in 0..100 {
        let (sys, anc) = ((next(), next()), (next(), next()));
        let set = model.independent_set(sys, anc);
        assert!(g.is_independent(&set));
        assert!(set.len() <= 27);
        // the ancilla is unconstrained by the face, so translating it is a symmetry
        let moved = model.independent_set(sys, ((anc.0 + 1) % 3, (anc.1 + 2) % 3));
        assert_eq!(set.len(), moved.len());
    }
}
