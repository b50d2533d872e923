//! Ehrenfeucht–Fraïssé game solver: exhaustive search over game positions
//! (partial maps between the two graphs), memoized on the normalized
//! position. Duplicator winning the k-round game certifies agreement on all
//! sentences of quantifier rank at most k.

use std::collections::HashMap;

use super::LogicError;
use crate::graph::Graph;

pub const DEFAULT_EF_BUDGET: u64 = 50_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Winner {
    Duplicator,
    Spoiler,
}

pub fn ef_game(g: &Graph, h: &Graph, rounds: u32) -> Result<Winner, LogicError> {
    ef_game_with_budget(g, h, rounds, DEFAULT_EF_BUDGET)
}

pub fn ef_game_with_budget(
    g: &Graph,
    h: &Graph,
    rounds: u32,
    budget: u64,
) -> Result<Winner, LogicError> {
    let mut solver = EfSolver {
        g,
        h,
        memo: HashMap::new(),
        visited: 0,
        budget,
    };
    let wins = solver.duplicator_wins(&mut Vec::new(), rounds)?;
    Ok(if wins { Winner::Duplicator } else { Winner::Spoiler })
}

struct EfSolver<'a> {
    g: &'a Graph,
    h: &'a Graph,
    memo: HashMap<(Vec<(u16, u16)>, u32), bool>,
    visited: u64,
    budget: u64,
}

impl EfSolver<'_> {
    /// Whether Duplicator wins from the given position (assumed to already
    /// be a partial isomorphism) with `rounds` rounds to go.
    fn duplicator_wins(
        &mut self,
        pairs: &mut Vec<(u16, u16)>,
        rounds: u32,
    ) -> Result<bool, LogicError> {
        if rounds == 0 {
            return Ok(true);
        }
        self.visited += 1;
        if self.visited > self.budget {
            return Err(LogicError::BudgetExceeded);
        }
        let key = {
            let mut k = pairs.clone();
            k.sort_unstable();
            k.dedup();
            (k, rounds)
        };
        if let Some(&cached) = self.memo.get(&key) {
            return Ok(cached);
        }

        let mut duplicator_wins = true;
        'spoiler: for side_g in [true, false] {
            let spoiler_n = if side_g { self.g.n() } else { self.h.n() };
            let responder_n = if side_g { self.h.n() } else { self.g.n() };
            for v in 0..spoiler_n as u16 {
                let mut answered = false;
                for w in 0..responder_n as u16 {
                    let pair = if side_g { (v, w) } else { (w, v) };
                    if !self.extends_partial_iso(pairs, pair) {
                        continue;
                    }
                    pairs.push(pair);
                    let wins = self.duplicator_wins(pairs, rounds - 1)?;
                    pairs.pop();
                    if wins {
                        answered = true;
                        break;
                    }
                }
                if !answered {
                    duplicator_wins = false;
                    break 'spoiler;
                }
            }
        }
        self.memo.insert(key, duplicator_wins);
        Ok(duplicator_wins)
    }

    /// Whether adding `pair` keeps the map a partial isomorphism.
    fn extends_partial_iso(&self, pairs: &[(u16, u16)], pair: (u16, u16)) -> bool {
        let (a, b) = pair;
        for &(x, y) in pairs {
            if (a == x) != (b == y) {
                return false;
            }
            if self.g.has_edge(a as usize, x as usize) != self.h.has_edge(b as usize, y as usize)
            {
                return false;
            }
        }
        true
    }
}
