//! Model checking by recursive evaluation over variable assignments, with a
//! step budget and guard-based domain restriction.
//!
//! On bounded-degree graphs most quantifiers in practice are guarded by an
//! edge, equality or degree atom that must hold for the body to come out
//! true; iterating only over the guard's candidates (neighbors of a bound
//! vertex, a degree bucket, a singleton) drops the n-fold blowup per
//! quantifier to the degree bound for such formulas. Guards are collected
//! only along conjunctions (and, for existentials, nested existentials),
//! which keeps the restriction sound; everything else falls back to the full
//! domain.

use std::collections::HashMap;

use super::{CmpOp, Formula, LogicError};
use crate::graph::Graph;

pub const DEFAULT_EVAL_BUDGET: u64 = 1_000_000_000;

/// Evaluates a sentence on a graph with the default step budget.
pub fn eval(g: &Graph, sentence: &Formula) -> Result<bool, LogicError> {
    eval_with_budget(g, sentence, DEFAULT_EVAL_BUDGET)
}

pub fn eval_with_budget(g: &Graph, sentence: &Formula, budget: u64) -> Result<bool, LogicError> {
    if let Some(free) = sentence.free_vars().into_iter().next() {
        return Err(LogicError::FreeVariable(free));
    }
    let mut buckets: Vec<Vec<usize>> = vec![Vec::new(); g.max_degree() + 1];
    for v in 0..g.n() {
        buckets[g.degree(v)].push(v);
    }
    let mut ev = Evaluator {
        g,
        buckets,
        env: HashMap::new(),
        steps: 0,
        budget,
    };
    ev.eval(sentence)
}

struct Evaluator<'g> {
    g: &'g Graph,
    buckets: Vec<Vec<usize>>,
    env: HashMap<String, usize>,
    steps: u64,
    budget: u64,
}

enum Domain {
    Full,
    List(Vec<usize>),
    Empty,
}

impl Domain {
    fn size(&self, n: usize) -> usize {
        match self {
            Domain::Full => n,
            Domain::List(xs) => xs.len(),
            Domain::Empty => 0,
        }
    }
}

impl Evaluator<'_> {
    fn tick(&mut self) -> Result<(), LogicError> {
        self.steps += 1;
        if self.steps > self.budget {
            return Err(LogicError::BudgetExceeded);
        }
        Ok(())
    }

    fn eval(&mut self, f: &Formula) -> Result<bool, LogicError> {
        self.tick()?;
        match f {
            Formula::Edge(a, b) => {
                let (a, b) = (self.lookup(a), self.lookup(b));
                Ok(self.g.has_edge(a, b))
            }
            Formula::Eq(a, b) => Ok(self.lookup(a) == self.lookup(b)),
            Formula::Deg(v, op, c) => {
                let d = self.g.degree(self.lookup(v)) as u32;
                Ok(match op {
                    CmpOp::Eq => d == *c,
                    CmpOp::Ge => d >= *c,
                    CmpOp::Le => d <= *c,
                })
            }
            Formula::Not(inner) => Ok(!self.eval(inner)?),
            Formula::And(a, b) => Ok(self.eval(a)? && self.eval(b)?),
            Formula::Or(a, b) => Ok(self.eval(a)? || self.eval(b)?),
            Formula::Implies(a, b) => Ok(!self.eval(a)? || self.eval(b)?),
            Formula::Exists(v, body) => self.eval_quantifier(v, body, true),
            Formula::Forall(v, body) => self.eval_quantifier(v, body, false),
        }
    }

    fn eval_quantifier(
        &mut self,
        v: &str,
        body: &Formula,
        existential: bool,
    ) -> Result<bool, LogicError> {
        let domain = if existential {
            self.existential_domain(v, body)
        } else {
            self.universal_domain(v, body)
        };
        // Vertices outside a restricted domain cannot make an existential
        // body true (resp. a universal body false).
        let saved = self.env.get(v).copied();
        let candidates: Box<dyn Iterator<Item = usize>> = match domain {
            Domain::Empty => Box::new(std::iter::empty()),
            Domain::Full => Box::new(0..self.g.n()),
            Domain::List(xs) => Box::new(xs.into_iter()),
        };
        let mut result = Ok(!existential);
        for x in candidates {
            self.env.insert(v.to_string(), x);
            match self.eval(body) {
                Ok(b) if b == existential => {
                    result = Ok(existential);
                    break;
                }
                Ok(_) => {}
                Err(e) => {
                    result = Err(e);
                    break;
                }
            }
        }
        match saved {
            Some(x) => {
                self.env.insert(v.to_string(), x);
            }
            None => {
                self.env.remove(v);
            }
        }
        result
    }

    fn lookup(&self, var: &str) -> usize {
        *self
            .env
            .get(var)
            .expect("sentences have no free variables")
    }

    /// Smallest guard domain among the conjuncts required for the body of an
    /// existential to hold. Descends through conjunctions and nested
    /// existentials; stops at any rebinding of `v` and ignores atoms whose
    /// other variable is shadowed on the way down.
    fn existential_domain(&self, v: &str, body: &Formula) -> Domain {
        let mut best = Domain::Full;
        let mut shadowed: Vec<&str> = Vec::new();
        self.collect_guards(v, body, true, &mut shadowed, &mut best);
        best
    }

    /// For universals of the shape `forall v. A -> B`, only candidates
    /// satisfying every guard conjunct of `A` can violate the body.
    fn universal_domain(&self, v: &str, body: &Formula) -> Domain {
        if let Formula::Implies(ante, _) = body {
            let mut best = Domain::Full;
            let mut shadowed: Vec<&str> = Vec::new();
            self.collect_guards(v, ante, false, &mut shadowed, &mut best);
            best
        } else {
            Domain::Full
        }
    }

    fn collect_guards<'f>(
        &self,
        v: &str,
        f: &'f Formula,
        descend_exists: bool,
        shadowed: &mut Vec<&'f str>,
        best: &mut Domain,
    ) {
        match f {
            Formula::And(a, b) => {
                self.collect_guards(v, a, descend_exists, shadowed, best);
                self.collect_guards(v, b, descend_exists, shadowed, best);
            }
            Formula::Exists(w, inner) if descend_exists => {
                if w != v {
                    shadowed.push(w);
                    self.collect_guards(v, inner, true, shadowed, best);
                    shadowed.pop();
                }
            }
            atom => self.consider_guard(v, atom, shadowed, best),
        }
    }

    fn consider_guard(&self, v: &str, atom: &Formula, shadowed: &[&str], best: &mut Domain) {
        let candidate = match atom {
            Formula::Edge(a, b) => {
                if a == v && b == v {
                    // E(v, v) is always false on simple graphs.
                    Some(Domain::Empty)
                } else if a == v {
                    self.bound_value(b, shadowed)
                        .map(|x| Domain::List(self.g.neighbors(x).to_vec()))
                } else if b == v {
                    self.bound_value(a, shadowed)
                        .map(|x| Domain::List(self.g.neighbors(x).to_vec()))
                } else {
                    None
                }
            }
            Formula::Eq(a, b) => {
                if a == v && b == v {
                    None
                } else if a == v {
                    self.bound_value(b, shadowed).map(|x| Domain::List(vec![x]))
                } else if b == v {
                    self.bound_value(a, shadowed).map(|x| Domain::List(vec![x]))
                } else {
                    None
                }
            }
            Formula::Deg(x, op, c) if x == v => {
                let max = self.g.max_degree() as u32;
                let collect = |range: std::ops::RangeInclusive<u32>| -> Domain {
                    let mut out = Vec::new();
                    for d in range {
                        if d <= max {
                            out.extend_from_slice(&self.buckets[d as usize]);
                        }
                    }
                    Domain::List(out)
                };
                Some(match op {
                    CmpOp::Eq => {
                        if *c > max {
                            Domain::Empty
                        } else {
                            Domain::List(self.buckets[*c as usize].clone())
                        }
                    }
                    CmpOp::Ge => {
                        if *c > max {
                            Domain::Empty
                        } else {
                            collect(*c..=max)
                        }
                    }
                    // deg <= c prunes nothing once c covers every degree.
                    CmpOp::Le => {
                        if *c >= max {
                            return;
                        }
                        collect(0..=*c)
                    }
                })
            }
            _ => None,
        };
        if let Some(domain) = candidate {
            if domain.size(self.g.n()) < best.size(self.g.n()) {
                *best = domain;
            }
        }
    }

    /// Env value of a variable, unless the name was rebound between the
    /// quantifier being restricted and the atom.
    fn bound_value(&self, var: &str, shadowed: &[&str]) -> Option<usize> {
        if shadowed.contains(&var) {
            return None;
        }
        self.env.get(var).copied()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::parse_sentence;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn cycle(n: usize) -> Graph {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::new(n, 2, &edges).unwrap()
    }

    #[test]
    fn eval_examples() {
        let c3 = cycle(3);
        let f = parse_sentence("forall x. exists y. E(x,y)").unwrap();
        assert!(eval(&c3, &f).unwrap());

        let edgeless = Graph::empty(4, 2);
        let f = parse_sentence("exists x. exists y. E(x,y)").unwrap();
        assert!(!eval(&edgeless, &f).unwrap());

        let f = parse_sentence("forall x. x = x").unwrap();
        assert!(eval(&edgeless, &f).unwrap());
    }

    #[test]
    fn degree_atoms_match_direct_computation() {
        let g = Graph::new(5, 3, &[(0, 1), (1, 2), (2, 3), (3, 1)]).unwrap();
        for c in 0..=3u32 {
            for (op, text) in [(CmpOp::Eq, "="), (CmpOp::Ge, ">="), (CmpOp::Le, "<=")] {
                let sugar = parse_sentence(&format!("exists x. deg(x) {text} {c}")).unwrap();
                let expect = (0..g.n()).any(|v| match op {
                    CmpOp::Eq => g.degree(v) as u32 == c,
                    CmpOp::Ge => g.degree(v) as u32 >= c,
                    CmpOp::Le => g.degree(v) as u32 <= c,
                });
                assert_eq!(eval(&g, &sugar).unwrap(), expect, "deg {text} {c}");
                // The desugared form agrees.
                let expanded = sugar.desugar_degrees();
                assert_eq!(eval(&g, &expanded).unwrap(), expect, "expanded {text} {c}");
            }
        }
    }

    #[test]
    fn budget_is_enforced() {
        // A triple universal over a tautology cannot short-circuit.
        let g = cycle(30);
        let f = parse_sentence("forall x. forall y. forall z. (x = y | !x = y)").unwrap();
        assert!(matches!(
            eval_with_budget(&g, &f, 100),
            Err(LogicError::BudgetExceeded)
        ));
    }

    #[test]
    fn free_variables_rejected() {
        let f = crate::logic::parse("E(x,y)").unwrap();
        let g = cycle(3);
        assert!(matches!(eval(&g, &f), Err(LogicError::FreeVariable(_))));
    }

    /// Reference evaluator without guards or buckets.
    pub(crate) fn eval_naive(g: &Graph, f: &Formula, env: &mut HashMap<String, usize>) -> bool {
        match f {
            Formula::Edge(a, b) => g.has_edge(env[a], env[b]),
            Formula::Eq(a, b) => env[a] == env[b],
            Formula::Deg(v, op, c) => {
                let d = g.degree(env[v]) as u32;
                match op {
                    CmpOp::Eq => d == *c,
                    CmpOp::Ge => d >= *c,
                    CmpOp::Le => d <= *c,
                }
            }
            Formula::Not(inner) => !eval_naive(g, inner, env),
            Formula::And(a, b) => eval_naive(g, a, env) && eval_naive(g, b, env),
            Formula::Or(a, b) => eval_naive(g, a, env) || eval_naive(g, b, env),
            Formula::Implies(a, b) => !eval_naive(g, a, env) || eval_naive(g, b, env),
            Formula::Exists(v, body) | Formula::Forall(v, body) => {
                let existential = matches!(f, Formula::Exists(..));
                let saved = env.get(v).copied();
                let mut result = !existential;
                for x in 0..g.n() {
                    env.insert(v.clone(), x);
                    if eval_naive(g, body, env) == existential {
                        result = existential;
                        break;
                    }
                }
                match saved {
                    Some(x) => env.insert(v.clone(), x),
                    None => env.remove(v),
                };
                result
            }
        }
    }

    #[test]
    fn agrees_with_naive_evaluator_on_corpus() {
        use crate::logic::parse::tests::random_formula;
        use crate::oracle::enumerate_graphs;

        let mut rng = ChaCha8Rng::seed_from_u64(77);
        let graphs: Vec<Graph> = enumerate_graphs(4, 3)
            .unwrap()
            .iter()
            .collect();
        let mut corpus = Vec::new();
        while corpus.len() < 60 {
            let f = random_formula(&mut rng, &[], 3);
            if f.free_vars().is_empty() && f.qrank() <= 3 {
                corpus.push(f);
            }
        }
        // Include sentences that exercise the guard paths hard.
        for text in [
            "exists x. exists y. exists z. (E(x,y) & E(y,z) & E(z,x))",
            "forall x. (deg(x) = 2 -> exists y. (E(x,y) & deg(y) = 2))",
            "exists x. exists y. (x = y & E(x,y))",
            "forall x. forall y. (E(x,y) -> exists z. (E(y,z) & !z = x))",
            "exists x. (deg(x) >= 2 & forall y. (E(x,y) -> deg(y) <= 1))",
        ] {
            corpus.push(parse_sentence(text).unwrap());
        }
        for f in &corpus {
            for g in &graphs {
                let fast = eval(g, f).unwrap();
                let slow = eval_naive(g, f, &mut HashMap::new());
                assert_eq!(fast, slow, "formula {f} on {:?}", g.edges());
            }
        }
    }

    #[test]
    fn guarded_triangle_search_is_fast() {
        // A 3-cycle probe on a large sparse graph must not go n^3.
        let n = 3000;
        let mut edges: Vec<_> = (0..n - 1).map(|i| (i, i + 1)).collect();
        edges.push((0, 2)); // one triangle at the start
        let g = Graph::new(n, 3, &edges).unwrap();
        let f = parse_sentence("exists x. exists y. exists z. (E(x,y) & E(y,z) & E(z,x))")
            .unwrap();
        // Budget far below n^2: passes only if the guards engage.
        assert!(eval_with_budget(&g, &f, 2_000_000).unwrap());
    }
}
