//! Corpus-driven soundness checks for the logic layer: game wins must imply
//! sentence agreement, and evaluation must be isomorphism-invariant.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use maxdeg::graph::isomorphic;
use maxdeg::logic::{ef_game, eval, parse_sentence, Formula, Winner};
use maxdeg::oracle::enumerate_graphs;
use maxdeg::Graph;

fn rank_bounded_corpus(max_rank: u32, count: usize, seed: u64) -> Vec<Formula> {
    let mut corpus: Vec<Formula> = [
        "exists x. exists y. E(x,y)",
        "forall x. exists y. E(x,y)",
        "exists x. deg(x) = 0",
        "exists x. exists y. exists z. (E(x,y) & E(y,z) & E(z,x))",
        "forall x. forall y. (E(x,y) -> E(y,x))",
        "exists x. forall y. (x = y | E(x,y))",
        "forall x. deg(x) <= 1",
        "exists x. deg(x) >= 2",
    ]
    .iter()
    .map(|t| parse_sentence(t).unwrap())
    .filter(|f| f.qrank() <= max_rank)
    .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    while corpus.len() < count {
        let f = random_sentence(&mut rng, 3);
        if f.qrank() <= max_rank && f.free_vars().is_empty() {
            corpus.push(f);
        }
    }
    corpus
}

fn random_sentence(rng: &mut ChaCha8Rng, depth: u32) -> Formula {
    let name = format!("v{}", rng.gen_range(0..3));
    let body = random_body(rng, std::slice::from_ref(&name), depth);
    if rng.gen_bool(0.5) {
        Formula::Exists(name, Box::new(body))
    } else {
        Formula::Forall(name, Box::new(body))
    }
}

fn random_body(rng: &mut ChaCha8Rng, vars: &[String], depth: u32) -> Formula {
    if depth == 0 || rng.gen_bool(0.35) {
        let a = vars[rng.gen_range(0..vars.len())].clone();
        let b = vars[rng.gen_range(0..vars.len())].clone();
        return match rng.gen_range(0..4) {
            0 => Formula::Edge(a, b),
            1 => Formula::Eq(a, b),
            2 => Formula::Deg(a, maxdeg::logic::CmpOp::Eq, rng.gen_range(0..3)),
            _ => Formula::Deg(a, maxdeg::logic::CmpOp::Ge, rng.gen_range(1..3)),
        };
    }
    match rng.gen_range(0..6) {
        0 => Formula::Not(Box::new(random_body(rng, vars, depth - 1))),
        1 => Formula::And(
            Box::new(random_body(rng, vars, depth - 1)),
            Box::new(random_body(rng, vars, depth - 1)),
        ),
        2 => Formula::Or(
            Box::new(random_body(rng, vars, depth - 1)),
            Box::new(random_body(rng, vars, depth - 1)),
        ),
        3 => Formula::Implies(
            Box::new(random_body(rng, vars, depth - 1)),
            Box::new(random_body(rng, vars, depth - 1)),
        ),
        _ => {
            let name = format!("v{}", rng.gen_range(0..3));
            let mut inner = vars.to_vec();
            if !inner.contains(&name) {
                inner.push(name.clone());
            }
            let body = random_body(rng, &inner, depth - 1);
            if rng.gen_bool(0.5) {
                Formula::Exists(name, Box::new(body))
            } else {
                Formula::Forall(name, Box::new(body))
            }
        }
    }
}

fn random_bounded_graph(rng: &mut ChaCha8Rng, n: usize, r: usize) -> Graph {
    let mut edges = Vec::new();
    let mut degrees = vec![0usize; n];
    for u in 0..n {
        for v in u + 1..n {
            if degrees[u] < r && degrees[v] < r && rng.gen_bool(0.3) {
                edges.push((u, v));
                degrees[u] += 1;
                degrees[v] += 1;
            }
        }
    }
    Graph::new(n, r, &edges).unwrap()
}

#[test]
fn duplicator_wins_imply_sentence_agreement() {
    let corpus = rank_bounded_corpus(3, 40, 99);
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut duplicator_positions = 0u32;
    for _ in 0..120 {
        let n = rng.gen_range(2..=7);
        let g = random_bounded_graph(&mut rng, n, 3);
        let n2 = rng.gen_range(2..=7);
        let h = random_bounded_graph(&mut rng, n2, 3);
        for k in 0..=3u32 {
            if ef_game(&g, &h, k).unwrap() == Winner::Duplicator {
                duplicator_positions += 1;
                for f in corpus.iter().filter(|f| f.qrank() <= k) {
                    assert_eq!(
                        eval(&g, f).unwrap(),
                        eval(&h, f).unwrap(),
                        "rank-{} sentence {f} disagrees after Duplicator win at k={k}",
                        f.qrank()
                    );
                }
            }
        }
    }
    assert!(duplicator_positions > 50, "corpus should hit real game wins");
}

#[test]
fn eval_respects_isomorphism() {
    let corpus = rank_bounded_corpus(3, 25, 5);
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for _ in 0..60 {
        let n = rng.gen_range(2..=6);
        let g = random_bounded_graph(&mut rng, n, 3);
        // Random relabelling of g.
        let mut perm: Vec<usize> = (0..n).collect();
        for i in (1..n).rev() {
            perm.swap(i, rng.gen_range(0..=i));
        }
        let edges: Vec<(usize, usize)> = g
            .edges()
            .iter()
            .map(|&(u, v)| (perm[u].min(perm[v]), perm[u].max(perm[v])))
            .collect();
        let h = Graph::new(n, 3, &edges).unwrap();
        assert!(isomorphic(&g, &h).unwrap());
        for f in &corpus {
            assert_eq!(eval(&g, f).unwrap(), eval(&h, f).unwrap(), "{f}");
        }
    }
}

#[test]
fn ef_agreement_on_enumerated_pairs() {
    // Exhaustive sweep at tiny scale: all pairs of graphs on 3 vertices.
    let table = enumerate_graphs(3, 2).unwrap();
    let graphs: Vec<Graph> = table.iter().collect();
    let corpus = rank_bounded_corpus(2, 15, 3);
    for g in &graphs {
        for h in &graphs {
            for k in 0..=2u32 {
                if ef_game(g, h, k).unwrap() == Winner::Duplicator {
                    for f in corpus.iter().filter(|f| f.qrank() <= k) {
                        assert_eq!(eval(g, f).unwrap(), eval(h, f).unwrap());
                    }
                }
            }
        }
    }
}
