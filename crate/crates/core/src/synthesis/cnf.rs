//! Reduction from CNF satisfiability to register-automaton emptiness: a
//! one-letter machine whose register counts through all assignments and
//! whose acceptance circuit is the formula itself, so the represented
//! language is non-empty exactly when the formula is satisfiable.

use std::fmt::Write as _;

use super::{gadget_increment, SynthesisError};
use crate::circuit::{CircuitBuilder, CostModel, Ref};
use crate::encoding::Representation;
use crate::ParseError;

/// A CNF formula: clauses of DIMACS-style literals, where literal `v+1`
/// means variable `v` and `-(v+1)` its negation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cnf {
    num_vars: usize,
    clauses: Vec<Vec<i64>>,
}

impl Cnf {
    pub fn new(num_vars: usize, clauses: Vec<Vec<i64>>) -> Result<Cnf, SynthesisError> {
        for clause in &clauses {
            assert!(!clause.is_empty(), "clauses must be non-empty");
            for &lit in clause {
                let var = lit.unsigned_abs() as usize;
                assert!(lit != 0, "literals are non-zero");
                if var > num_vars {
                    return Err(SynthesisError::TooManyVariables(var, num_vars));
                }
            }
        }
        Ok(Cnf { num_vars, clauses })
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn clauses(&self) -> &[Vec<i64>] {
        &self.clauses
    }

    /// Evaluates the formula on an assignment given as bits of a counter
    /// value: variable `i` is bit `i` of `assignment`.
    pub fn evaluate(&self, assignment: u64) -> bool {
        self.clauses.iter().all(|clause| {
            clause.iter().any(|&lit| {
                let v = lit.unsigned_abs() as usize - 1;
                ((assignment >> v) & 1 == 1) == (lit > 0)
            })
        })
    }
}

/// Cap on the number of variables accepted by [`cnf_to_representation`].
pub const CNF_VAR_CAP: usize = 20;

/// The counter reduction: a one-letter representation with `num_vars`
/// register bits, `F` = increment (the register walks through every
/// assignment) and `G` the formula with variable `i` read from register bit
/// `i`. Its language is non-empty iff the formula is satisfiable.
pub fn cnf_to_representation(
    c: &Cnf,
    cost_model: CostModel,
) -> Result<Representation, SynthesisError> {
    let n = c.num_vars;
    if n > CNF_VAR_CAP {
        return Err(SynthesisError::TooManyVariables(n, CNF_VAR_CAP));
    }
    let f = gadget_increment(n)?;
    let mut bld = CircuitBuilder::new(n);
    // Register bits are MSB-first, so variable i sits at input n-1-i.
    let lit_ref = |bld: &mut CircuitBuilder, lit: i64| {
        let v = lit.unsigned_abs() as usize - 1;
        let r = Ref::Input(n - 1 - v);
        if lit > 0 {
            r
        } else {
            bld.not(r)
        }
    };
    let clause_outs: Vec<Ref> = c
        .clauses
        .iter()
        .map(|clause| {
            let lits: Vec<Ref> = clause.iter().map(|&l| lit_ref(&mut bld, l)).collect();
            bld.or_all(&lits)
        })
        .collect();
    let out = bld.and_all(&clause_outs);
    let g = bld.finish(vec![out]);
    // One letter with an empty code.
    Ok(Representation::semantic(vec![Vec::new()], f, g, cost_model)?)
}

/// Parses a DIMACS CNF file: `c` comment lines, a `p cnf <vars> <clauses>`
/// header, then whitespace-separated literals with `0` terminating each
/// clause.
pub fn parse_dimacs(text: &str) -> Result<Cnf, ParseError> {
    let mut num_vars: Option<usize> = None;
    let mut num_clauses = 0usize;
    let mut clauses: Vec<Vec<i64>> = Vec::new();
    let mut current: Vec<i64> = Vec::new();
    let mut last_line = 0;
    for (ln, raw) in text.lines().enumerate() {
        let ln = ln + 1;
        last_line = ln;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        if line.starts_with('p') {
            if num_vars.is_some() {
                return Err(ParseError::new(ln, "duplicate problem line"));
            }
            let toks: Vec<&str> = line.split_whitespace().collect();
            if toks.len() != 4 || toks[1] != "cnf" {
                return Err(ParseError::new(ln, "expected `p cnf <vars> <clauses>`"));
            }
            num_vars = Some(
                toks[2]
                    .parse()
                    .map_err(|_| ParseError::new(ln, "bad variable count"))?,
            );
            num_clauses = toks[3]
                .parse()
                .map_err(|_| ParseError::new(ln, "bad clause count"))?;
            continue;
        }
        let vars = num_vars.ok_or_else(|| ParseError::new(ln, "literals before problem line"))?;
        for tok in line.split_whitespace() {
            let lit: i64 = tok
                .parse()
                .map_err(|_| ParseError::new(ln, format!("bad literal `{tok}`")))?;
            if lit == 0 {
                if current.is_empty() {
                    return Err(ParseError::new(ln, "empty clause"));
                }
                clauses.push(std::mem::take(&mut current));
            } else {
                if lit.unsigned_abs() as usize > vars {
                    return Err(ParseError::new(
                        ln,
                        format!("literal {lit} exceeds {vars} variables"),
                    ));
                }
                current.push(lit);
            }
        }
    }
    let num_vars = num_vars.ok_or_else(|| ParseError::new(last_line, "missing problem line"))?;
    if !current.is_empty() {
        return Err(ParseError::new(last_line, "unterminated clause"));
    }
    if clauses.len() != num_clauses {
        return Err(ParseError::new(
            last_line,
            format!("expected {num_clauses} clauses, found {}", clauses.len()),
        ));
    }
    Cnf::new(num_vars, clauses).map_err(|e| ParseError::new(last_line, e.to_string()))
}

/// Serializes a formula back to DIMACS.
pub fn write_dimacs(c: &Cnf) -> String {
    let mut s = String::new();
    writeln!(s, "p cnf {} {}", c.num_vars, c.clauses.len()).unwrap();
    for clause in &c.clauses {
        for lit in clause {
            write!(s, "{lit} ").unwrap();
        }
        s.push_str("0\n");
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::encoding::extract_dfa;

    fn language_nonempty(c: &Cnf) -> bool {
        let d = extract_dfa(&cnf_to_representation(c, CostModel::default()).unwrap()).unwrap();
        // The register is a full-period counter: some reachable state
        // accepts iff some assignment satisfies the formula.
        (0..d.num_states()).any(|q| d.is_accepting(q))
    }

    #[test]
    fn contradiction_is_empty() {
        let c = Cnf::new(1, vec![vec![1], vec![-1]]).unwrap();
        assert!(!language_nonempty(&c));
        let d = extract_dfa(&cnf_to_representation(&c, CostModel::default()).unwrap()).unwrap();
        assert_eq!(d.minimized().num_states(), 1);
        assert!(d.minimized().accepting().is_empty());
    }

    #[test]
    fn single_positive_clause() {
        let c = Cnf::new(1, vec![vec![1]]).unwrap();
        let d = extract_dfa(&cnf_to_representation(&c, CostModel::default()).unwrap()).unwrap();
        // First accepted word has length 1: the register reaches value 1.
        assert!(!d.run(&[]).unwrap());
        assert!(d.run(&[0]).unwrap());
    }

    #[test]
    fn random_formulas_match_brute_force() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(29);
        for _ in 0..30 {
            let n = 3;
            let mut clauses: Vec<Vec<i64>> = Vec::new();
            for _ in 0..rng.gen_range(1..=6) {
                let mut clause = Vec::new();
                for v in 1..=n {
                    if rng.gen_bool(0.6) {
                        clause.push(if rng.gen_bool(0.5) { v } else { -v });
                    }
                }
                if !clause.is_empty() {
                    clauses.push(clause);
                }
            }
            if clauses.is_empty() {
                continue;
            }
            let c = Cnf::new(n as usize, clauses).unwrap();
            let brute = (0..1u64 << n).any(|a| c.evaluate(a));
            assert_eq!(language_nonempty(&c), brute, "{c:?}");
        }
    }

    #[test]
    fn dimacs_round_trip_and_errors() {
        let text = "c example\np cnf 3 2\n1 -2 0\n2 3 0\n";
        let c = parse_dimacs(text).unwrap();
        assert_eq!(c.num_vars(), 3);
        assert_eq!(c.clauses(), &[vec![1, -2], vec![2, 3]]);
        assert_eq!(parse_dimacs(&write_dimacs(&c)).unwrap(), c);
        assert_eq!(parse_dimacs("p cnf 1 1\n2 0\n").unwrap_err().line, 2);
        assert_eq!(parse_dimacs("1 0\n").unwrap_err().line, 1);
        assert_eq!(parse_dimacs("p cnf 1 2\n1 0\n").unwrap_err().line, 2);
    }
}
