use circaut_core::autsolver::{aut_pq, aut_prime, aut_squarefree};
use circaut_core::oracle::{brute_force_aut, symmetric_connection_sets};
use circaut_core::{aut, Adjacency, CirculantGraph, PermGroup, Permutation, SearchBudget, SolverConfig};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn oracle(x: &CirculantGraph) -> PermGroup {
    brute_force_aut(x, &SearchBudget::default()).unwrap()
}

fn assert_same(x: &CirculantGraph, g: &PermGroup, what: &str) {
    assert!(
        g.generators().iter().all(|h| x.preserved_by(h.images())),
        "{what}: non-automorphism for {x}"
    );
    let o = oracle(x);
    assert_eq!(g.order(), o.order(), "{what}: order for {x}");
    assert!(g.same_group(&o), "{what}: groups differ for {x}");
}

#[test]
fn every_graph_up_to_fifteen() {
    let config = SolverConfig::default();
    for n in 1..=15 {
        for set in symmetric_connection_sets(n) {
            let x = CirculantGraph::undirected(n, &set).unwrap();
            let solution = aut(&x, &config).unwrap();
            let g = solution.description.realize().unwrap();
            assert_same(&x, &g, solution.method.name());
            assert!(g.contains(&Permutation::rotation(n)));
            assert!(g.contains(&Permutation::reflection(n)));
        }
    }
}

#[test]
fn specific_solvers_on_their_orders() {
    for p in [2, 3, 5, 7, 11, 13] {
        for set in symmetric_connection_sets(p) {
            let x = CirculantGraph::undirected(p, &set).unwrap();
            assert_same(&x, &aut_prime(&x).unwrap().realize().unwrap(), "prime");
        }
    }
    for n in [6, 10, 14, 15] {
        for set in symmetric_connection_sets(n) {
            let x = CirculantGraph::undirected(n, &set).unwrap();
            let a = aut_pq(&x).unwrap().realize().unwrap();
            let b = aut_squarefree(&x).unwrap().realize().unwrap();
            assert_same(&x, &a, "pq");
            assert!(a.same_group(&b), "pq and square-free differ for {x}");
        }
    }
}

#[test]
fn random_graphs_on_thirty() {
    let mut rng = ChaCha8Rng::seed_from_u64(30);
    for _ in 0..25 {
        let mut set = Vec::new();
        for d in 1..=15 {
            if rng.gen_bool(0.5) {
                set.push(d);
                if d != 15 {
                    set.push(30 - d);
                }
            }
        }
        set.sort_unstable();
        let x = CirculantGraph::undirected(30, &set).unwrap();
        assert_same(&x, &aut_squarefree(&x).unwrap().realize().unwrap(), "square-free");
    }
}

#[test]
fn multiplier_images_have_equal_groups() {
    let config = SolverConfig::default();
    for n in [9, 12, 14, 15] {
        let m = circaut_core::Modulus::new(n).unwrap();
        for set in symmetric_connection_sets(n) {
            let x = CirculantGraph::undirected(n, &set).unwrap();
            let base = aut(&x, &config).unwrap().description.realize().unwrap().order();
            for a in m.units() {
                let scaled: Vec<usize> = set.iter().map(|s| a * s % n).collect();
                let y = CirculantGraph::undirected(n, &scaled).unwrap();
                assert_eq!(aut(&y, &config).unwrap().description.realize().unwrap().order(), base);
            }
        }
    }
}
