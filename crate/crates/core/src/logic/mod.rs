//! First-order logic over graphs: sentences built from the edge relation and
//! equality, with a degree-comparison convenience atom that desugars to pure
//! first-order form. Parsing, model checking, Ehrenfeucht–Fraïssé games and
//! limiting-probability computation.

mod ef;
mod eval;
mod limit;
mod parse;

pub use ef::{ef_game, ef_game_with_budget, Winner};
pub use eval::{eval, eval_with_budget, DEFAULT_EVAL_BUDGET};
pub use limit::{
    limit_mc, limit_profile_property, LimitEstimate, PerNEstimate, ProfileCoord,
};
pub use parse::{parse, parse_sentence, ParseError};

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::sampler::SamplerError;

#[derive(Debug, Error)]
pub enum LogicError {
    #[error("evaluation budget exceeded")]
    BudgetExceeded,
    #[error("free variable `{0}` in sentence position")]
    FreeVariable(String),
    #[error("profile coordinate out of range: {0}")]
    CoordOutOfRange(String),
    #[error("duplicate profile coordinate {0}")]
    DuplicateCoord(String),
    #[error(transparent)]
    Sampler(#[from] SamplerError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CmpOp {
    Eq,
    Ge,
    Le,
}

impl fmt::Display for CmpOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CmpOp::Eq => "=",
            CmpOp::Ge => ">=",
            CmpOp::Le => "<=",
        })
    }
}

/// Formula AST. `Deg` is surface sugar for a first-order degree constraint;
/// [`Formula::desugar_degrees`] removes it.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Formula {
    Edge(String, String),
    Eq(String, String),
    Deg(String, CmpOp, u32),
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Exists(String, Box<Formula>),
    Forall(String, Box<Formula>),
}

impl Formula {
    /// Standard inductive quantifier rank. `Deg` atoms count as their
    /// first-order expansion: `deg >= c` costs `c` quantifiers, `=` and `<=`
    /// cost `c + 1`.
    pub fn qrank(&self) -> u32 {
        match self {
            Formula::Edge(..) | Formula::Eq(..) => 0,
            Formula::Deg(_, op, c) => match op {
                CmpOp::Ge => *c,
                CmpOp::Eq | CmpOp::Le => *c + 1,
            },
            Formula::Not(inner) => inner.qrank(),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
                a.qrank().max(b.qrank())
            }
            Formula::Exists(_, inner) | Formula::Forall(_, inner) => 1 + inner.qrank(),
        }
    }

    pub fn free_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_free(&mut BTreeSet::new(), &mut out);
        out
    }

    fn collect_free(&self, bound: &mut BTreeSet<String>, out: &mut BTreeSet<String>) {
        match self {
            Formula::Edge(a, b) | Formula::Eq(a, b) => {
                for v in [a, b] {
                    if !bound.contains(v) {
                        out.insert(v.clone());
                    }
                }
            }
            Formula::Deg(v, _, _) => {
                if !bound.contains(v) {
                    out.insert(v.clone());
                }
            }
            Formula::Not(inner) => inner.collect_free(bound, out),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
                a.collect_free(bound, out);
                b.collect_free(bound, out);
            }
            Formula::Exists(v, inner) | Formula::Forall(v, inner) => {
                let fresh = bound.insert(v.clone());
                inner.collect_free(bound, out);
                if fresh {
                    bound.remove(v);
                }
            }
        }
    }

    fn all_var_names(&self, out: &mut BTreeSet<String>) {
        match self {
            Formula::Edge(a, b) | Formula::Eq(a, b) => {
                out.insert(a.clone());
                out.insert(b.clone());
            }
            Formula::Deg(v, _, _) => {
                out.insert(v.clone());
            }
            Formula::Not(inner) => inner.all_var_names(out),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
                a.all_var_names(out);
                b.all_var_names(out);
            }
            Formula::Exists(v, inner) | Formula::Forall(v, inner) => {
                out.insert(v.clone());
                inner.all_var_names(out);
            }
        }
    }

    /// Degree atoms whose constant exceeds `max_degree`; such atoms are
    /// vacuous over the bounded ensemble but remain expandable.
    pub fn degree_atoms_exceeding(&self, max_degree: u32) -> Vec<(String, CmpOp, u32)> {
        let mut out = Vec::new();
        self.walk(&mut |f| {
            if let Formula::Deg(v, op, c) = f {
                if *c > max_degree {
                    out.push((v.clone(), *op, *c));
                }
            }
        });
        out
    }

    fn walk(&self, f: &mut impl FnMut(&Formula)) {
        f(self);
        match self {
            Formula::Not(inner) | Formula::Exists(_, inner) | Formula::Forall(_, inner) => {
                inner.walk(f)
            }
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
                a.walk(f);
                b.walk(f);
            }
            _ => {}
        }
    }

    /// Rewrites every `Deg` atom into pure first-order form. Fresh variable
    /// names avoid every name occurring anywhere in the formula.
    pub fn desugar_degrees(&self) -> Formula {
        let mut used = BTreeSet::new();
        self.all_var_names(&mut used);
        self.desugar_inner(&mut used)
    }

    fn desugar_inner(&self, used: &mut BTreeSet<String>) -> Formula {
        match self {
            Formula::Edge(..) | Formula::Eq(..) => self.clone(),
            Formula::Deg(v, op, c) => desugar_degree(v, *op, *c, used),
            Formula::Not(inner) => Formula::Not(Box::new(inner.desugar_inner(used))),
            Formula::And(a, b) => Formula::And(
                Box::new(a.desugar_inner(used)),
                Box::new(b.desugar_inner(used)),
            ),
            Formula::Or(a, b) => Formula::Or(
                Box::new(a.desugar_inner(used)),
                Box::new(b.desugar_inner(used)),
            ),
            Formula::Implies(a, b) => Formula::Implies(
                Box::new(a.desugar_inner(used)),
                Box::new(b.desugar_inner(used)),
            ),
            Formula::Exists(v, inner) => {
                Formula::Exists(v.clone(), Box::new(inner.desugar_inner(used)))
            }
            Formula::Forall(v, inner) => {
                Formula::Forall(v.clone(), Box::new(inner.desugar_inner(used)))
            }
        }
    }
}

/// First-order expansion of one degree atom. `deg(x) >= c` becomes
/// `exists y_1..y_c` (pairwise distinct, all adjacent to `x`); `=` and `<=`
/// are boolean combinations of `>=`. Fresh names are drawn outside `used`.
pub fn desugar_degree(var: &str, op: CmpOp, c: u32, used: &mut BTreeSet<String>) -> Formula {
    match op {
        CmpOp::Ge => at_least(var, c, used),
        CmpOp::Le => Formula::Not(Box::new(at_least(var, c + 1, used))),
        CmpOp::Eq => {
            if c == 0 {
                Formula::Not(Box::new(at_least(var, 1, used)))
            } else {
                Formula::And(
                    Box::new(at_least(var, c, used)),
                    Box::new(Formula::Not(Box::new(at_least(var, c + 1, used)))),
                )
            }
        }
    }
}

fn at_least(var: &str, c: u32, used: &mut BTreeSet<String>) -> Formula {
    if c == 0 {
        return Formula::Eq(var.to_string(), var.to_string());
    }
    let names: Vec<String> = fresh_names(c as usize, used);
    let mut conjuncts: Vec<Formula> = Vec::new();
    for i in 0..names.len() {
        for j in i + 1..names.len() {
            conjuncts.push(Formula::Not(Box::new(Formula::Eq(
                names[i].clone(),
                names[j].clone(),
            ))));
        }
    }
    for name in &names {
        conjuncts.push(Formula::Edge(var.to_string(), name.clone()));
    }
    let mut body = conjuncts
        .into_iter()
        .reduce(|a, b| Formula::And(Box::new(a), Box::new(b)))
        .expect("c >= 1 gives at least one conjunct");
    for name in names.into_iter().rev() {
        body = Formula::Exists(name, Box::new(body));
    }
    body
}

fn fresh_names(count: usize, used: &mut BTreeSet<String>) -> Vec<String> {
    let mut out = Vec::with_capacity(count);
    let mut i = 1usize;
    while out.len() < count {
        let candidate = format!("y{i}");
        if used.insert(candidate.clone()) {
            out.push(candidate);
        }
        i += 1;
    }
    out
}

// Precedence levels for printing: -> lowest, then |, &, !, atoms.
fn precedence(f: &Formula) -> u8 {
    match f {
        Formula::Implies(..) => 1,
        Formula::Or(..) => 2,
        Formula::And(..) => 3,
        Formula::Not(..) => 4,
        Formula::Exists(..) | Formula::Forall(..) => 0,
        _ => 5,
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_prec(self, 0, f)
    }
}

fn fmt_prec(formula: &Formula, min_prec: u8, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    let prec = precedence(formula);
    let needs_parens = prec < min_prec;
    if needs_parens {
        f.write_str("(")?;
    }
    match formula {
        Formula::Edge(a, b) => write!(f, "E({a},{b})")?,
        Formula::Eq(a, b) => write!(f, "{a} = {b}")?,
        Formula::Deg(v, op, c) => write!(f, "deg({v}) {op} {c}")?,
        Formula::Not(inner) => {
            f.write_str("!")?;
            fmt_prec(inner, 5, f)?;
        }
        Formula::And(a, b) => {
            fmt_prec(a, 3, f)?;
            f.write_str(" & ")?;
            fmt_prec(b, 4, f)?;
        }
        Formula::Or(a, b) => {
            fmt_prec(a, 2, f)?;
            f.write_str(" | ")?;
            fmt_prec(b, 3, f)?;
        }
        Formula::Implies(a, b) => {
            fmt_prec(a, 2, f)?;
            f.write_str(" -> ")?;
            fmt_prec(b, 1, f)?;
        }
        Formula::Exists(v, inner) => {
            write!(f, "exists {v}. ")?;
            fmt_prec(inner, 0, f)?;
        }
        Formula::Forall(v, inner) => {
            write!(f, "forall {v}. ")?;
            fmt_prec(inner, 0, f)?;
        }
    }
    if needs_parens {
        f.write_str(")")?;
    }
    Ok(())
}
