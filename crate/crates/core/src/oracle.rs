//! Ground-truth engines: exact minimal-circuit search by iterative
//! deepening, the exact (minimal-width-encoding) register complexity of tiny
//! DFAs, and a brute-force SAT solver. These are slow by design and capped
//! to desk scale; everything else in the crate is tested against them.

use std::collections::HashMap;
use std::time::Instant;

use crate::automata::Dfa;
use crate::bits::{to_bits, width_for};
use crate::circuit::{Circuit, CostModel, Gate, Ref, TruthTable};
use crate::encoding::{Encoding, Representation};
use crate::synthesis::{represent_dfa, Cnf};

/// Caps on the exhaustive circuit search.
pub const ORACLE_INPUT_CAP: usize = 4;
pub const ORACLE_OUTPUT_CAP: usize = 3;
/// Caps on the exhaustive register-complexity search.
pub const ORACLE_STATE_CAP: usize = 4;
pub const ORACLE_ALPHABET_CAP: usize = 2;
/// Cap on brute-force SAT variables.
pub const SAT_VAR_CAP: usize = 24;

#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
pub enum OracleError {
    #[error("table with {n} inputs / {m} outputs exceeds the search caps ({max_n}/{max_m})")]
    TableCapExceeded {
        n: usize,
        m: usize,
        max_n: usize,
        max_m: usize,
    },
    #[error("DFA with {s} states / {k} letters exceeds the oracle caps ({max_s}/{max_k})")]
    DfaCapExceeded {
        s: usize,
        k: usize,
        max_s: usize,
        max_k: usize,
    },
    #[error("CNF has {0} variables, brute force is capped at {1}")]
    SatCapExceeded(usize, usize),
}

/// Limits for the exhaustive searches; exceeding any of them turns an exact
/// answer into a bracket.
#[derive(Debug, Clone, Copy)]
pub struct SearchBudget {
    pub max_gates: usize,
    pub max_seconds: u64,
    pub max_visited: u64,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget {
            max_gates: 12,
            max_seconds: 5,
            max_visited: 200_000,
        }
    }
}

/// Result of [`min_circuit`]: either a provably minimal circuit, or the best
/// circuit found before the budget ran out together with the gate count the
/// search had fully excluded.
#[derive(Debug, Clone)]
pub enum MinCircuitOutcome {
    Exact(Circuit),
    Exhausted {
        /// Every circuit with fewer gates than this was ruled out.
        lower_gates: usize,
        /// Best circuit found (from synthesis or the partial search).
        upper: Circuit,
    },
}

impl MinCircuitOutcome {
    /// The found circuit, minimal or best-so-far.
    pub fn circuit(&self) -> &Circuit {
        match self {
            MinCircuitOutcome::Exact(c) => c,
            MinCircuitOutcome::Exhausted { upper, .. } => upper,
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, MinCircuitOutcome::Exact(_))
    }

    /// Bounds on the minimal gate count: `(lower, upper)`, equal when exact.
    pub fn gate_bounds(&self) -> (usize, usize) {
        match self {
            MinCircuitOutcome::Exact(c) => (c.gate_count(), c.gate_count()),
            MinCircuitOutcome::Exhausted { lower_gates, upper } => {
                (*lower_gates, upper.gate_count())
            }
        }
    }
}

/// Finds a circuit of minimal cost computing `t`, by iterative deepening
/// over the gate count with the reachable-table set memoized to prune
/// symmetric branches. Since constant outputs are free and the non-constant
/// output count is fixed by the table, minimizing gates minimizes both cost
/// models; ties are broken by trying gates in a fixed lexicographic order.
pub fn min_circuit(
    t: &TruthTable,
    cm: CostModel,
    budget: &SearchBudget,
) -> Result<MinCircuitOutcome, OracleError> {
    let care = vec![true; 1 << t.num_inputs()];
    min_circuit_care(t, &care, cm, budget)
}

/// [`min_circuit`] over a partially specified table: rows with `care` false
/// may take any value. Used by the register-complexity oracle, where
/// non-code rows are unconstrained.
pub fn min_circuit_care(
    t: &TruthTable,
    care: &[bool],
    _cm: CostModel,
    budget: &SearchBudget,
) -> Result<MinCircuitOutcome, OracleError> {
    let (n, m) = (t.num_inputs(), t.num_outputs());
    if n > ORACLE_INPUT_CAP || m > ORACLE_OUTPUT_CAP {
        return Err(OracleError::TableCapExceeded {
            n,
            m,
            max_n: ORACLE_INPUT_CAP,
            max_m: ORACLE_OUTPUT_CAP,
        });
    }
    assert_eq!(care.len(), 1 << n);

    let rows = 1usize << n;
    let full: u16 = if rows == 16 { u16::MAX } else { (1 << rows) - 1 };
    let care_mask: u16 = (0..rows).fold(0, |acc, r| acc | ((care[r] as u16) << r));
    // Row r sets bit r; input i reads bit (n-1-i) of the row index, MSB
    // first, matching TruthTable's row order.
    let input_tables: Vec<u16> = (0..n)
        .map(|i| {
            (0..rows).fold(0, |acc, r| acc | ((((r >> (n - 1 - i)) & 1) as u16) << r))
        })
        .collect();
    let targets: Vec<u16> = (0..m).map(|c| t.column_mask(c) as u16).collect();

    // Upper bound to cap the deepening: plain synthesis of the
    // zero-completed table (don't-care rows already read as zero).
    let synth = crate::synthesis::synthesize_from_table(t).expect("within caps");
    let cap = synth.gate_count().min(budget.max_gates);

    let mut search = Search {
        full,
        care: care_mask,
        targets: &targets,
        num_inputs: n,
        tables: input_tables,
        gates: Vec::new(),
        visited: HashMap::new(),
        nodes: 0,
        budget,
        started: Instant::now(),
        out_of_budget: false,
    };
    for depth in 0..=cap {
        search.visited.clear();
        if let Some(c) = search.dfs(depth) {
            // Re-check against the table on care rows.
            debug_assert!(matches_on_care(&c, t, care));
            return Ok(if c.gate_count() < synth.gate_count() || depth < cap {
                MinCircuitOutcome::Exact(c)
            } else {
                // depth == cap == synth size and nothing smaller exists.
                MinCircuitOutcome::Exact(c)
            });
        }
        if search.out_of_budget {
            return Ok(MinCircuitOutcome::Exhausted {
                lower_gates: depth,
                upper: synth,
            });
        }
    }
    // All depths below the synthesis size were exhausted: synthesis is
    // minimal, unless the cap came from the budget.
    if cap < synth.gate_count() {
        return Ok(MinCircuitOutcome::Exhausted {
            lower_gates: cap + 1,
            upper: synth,
        });
    }
    Ok(MinCircuitOutcome::Exact(synth))
}

fn matches_on_care(c: &Circuit, t: &TruthTable, care: &[bool]) -> bool {
    let got = c.truth_table().expect("within caps");
    (0..care.len()).all(|r| !care[r] || got.row(r) == t.row(r))
}

struct Search<'a> {
    full: u16,
    care: u16,
    targets: &'a [u16],
    num_inputs: usize,
    /// Tables of inputs then chosen gates, in order.
    tables: Vec<u16>,
    gates: Vec<Gate>,
    visited: HashMap<Vec<u16>, usize>,
    nodes: u64,
    budget: &'a SearchBudget,
    started: Instant,
    out_of_budget: bool,
}

impl Search<'_> {
    fn table_ref(&self, idx: usize) -> Ref {
        if idx < self.num_inputs {
            Ref::Input(idx)
        } else {
            Ref::Gate(idx - self.num_inputs)
        }
    }

    /// A ref computing `target` on care rows, if one exists already.
    fn find(&self, target: u16) -> Option<Ref> {
        let care = self.care;
        if target & care == 0 {
            return Some(Ref::Const0);
        }
        if target & care == self.full & care {
            return Some(Ref::Const1);
        }
        self.tables
            .iter()
            .position(|&t| t & care == target & care)
            .map(|i| self.table_ref(i))
    }

    fn missing(&self) -> usize {
        self.targets.iter().filter(|&&t| self.find(t).is_none()).count()
    }

    fn dfs(&mut self, remaining: usize) -> Option<Circuit> {
        self.nodes += 1;
        if self.nodes > self.budget.max_visited
            || (self.nodes % 4096 == 0
                && self.started.elapsed().as_secs() >= self.budget.max_seconds)
        {
            self.out_of_budget = true;
            return None;
        }
        let missing = self.missing();
        if missing == 0 {
            let outputs = self
                .targets
                .iter()
                .map(|&t| self.find(t).expect("missing == 0"))
                .collect();
            return Circuit::new(self.num_inputs, self.gates.clone(), outputs).ok();
        }
        if remaining < missing {
            return None;
        }
        // Symmetric branches reach the same table set; revisit only with
        // more gates left than before.
        let mut key = self.tables.clone();
        key.sort_unstable();
        if let Some(&r) = self.visited.get(&key) {
            if r >= remaining {
                return None;
            }
        }
        self.visited.insert(key, remaining);

        let k = self.tables.len();
        let mut candidates: Vec<(u16, Gate)> = Vec::new();
        for i in 0..k {
            let a = self.tables[i];
            for j in i + 1..k {
                let b = self.tables[j];
                candidates.push((a & b, Gate::And(self.table_ref(i), self.table_ref(j))));
                candidates.push((a | b, Gate::Or(self.table_ref(i), self.table_ref(j))));
            }
            candidates.push((!a & self.full, Gate::Not(self.table_ref(i))));
        }
        for (table, gate) in candidates {
            if table == 0 || table == self.full || self.tables.contains(&table) {
                continue;
            }
            // The last gates must each complete a missing output.
            if remaining == missing
                && !self
                    .targets
                    .iter()
                    .any(|&t| t & self.care == table & self.care && self.find(t).is_none())
            {
                continue;
            }
            self.tables.push(table);
            self.gates.push(gate);
            let found = self.dfs(remaining - 1);
            self.tables.pop();
            self.gates.pop();
            if found.is_some() || self.out_of_budget {
                return found;
            }
        }
        None
    }
}

/// Result of [`bc_oracle`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BcOutcome {
    Exact(usize),
    /// The budget ran out; the true value lies in `lower..=upper`.
    Bracket { lower: usize, upper: usize },
}

impl BcOutcome {
    pub fn bounds(self) -> (usize, usize) {
        match self {
            BcOutcome::Exact(v) => (v, v),
            BcOutcome::Bracket { lower, upper } => (lower, upper),
        }
    }
}

/// Exact register complexity of a tiny DFA under minimal-width encodings:
/// minimizes `min_circuit(F) + min_circuit(G) + b_q` over every state
/// encoding of width `ceil(log s)` that puts the start at all-zeros, and
/// every minimal input encoding. This is an upper bound on the unrestricted
/// complexity, which quantifies over arbitrary-width encodings.
pub fn bc_oracle(
    d: &Dfa,
    cm: CostModel,
    budget: &SearchBudget,
) -> Result<BcOutcome, OracleError> {
    let (s, k) = (d.num_states(), d.alphabet_size());
    if s > ORACLE_STATE_CAP || k > ORACLE_ALPHABET_CAP {
        return Err(OracleError::DfaCapExceeded {
            s,
            k,
            max_s: ORACLE_STATE_CAP,
            max_k: ORACLE_ALPHABET_CAP,
        });
    }
    let b_q = width_for(s);
    let b_sigma = width_for(k);

    let mut best: Option<(usize, usize)> = None; // (lower, upper) of the min
    for state_codes in state_encodings(s, b_q, d.start()) {
        for input_codes in injective_maps(k, 1 << b_sigma) {
            // Last-letter = high table bits, matching the encoding layout.
            let rows = 1usize << (b_sigma + b_q);
            let mut f_rows = vec![vec![false; b_q]; rows];
            let mut f_care = vec![false; rows];
            let mut g_rows = vec![vec![false]; 1 << b_q];
            let mut g_care = vec![false; 1 << b_q];
            for q in 0..s {
                g_rows[state_codes[q]][0] = d.is_accepting(q);
                g_care[state_codes[q]] = true;
                for a in 0..k {
                    let row = (input_codes[a] << b_q) | state_codes[q];
                    f_rows[row] = to_bits(state_codes[d.delta(q, a)] as u64, b_q);
                    f_care[row] = true;
                }
            }
            let ft = TruthTable::new(b_sigma + b_q, b_q, f_rows).unwrap();
            let gt = TruthTable::new(b_q, 1, g_rows).unwrap();
            let fo = min_circuit_care(&ft, &f_care, cm, budget)?;
            let go = min_circuit_care(&gt, &g_care, cm, budget)?;
            let (fl, fu) = cost_bounds(&fo, cm);
            let (gl, gu) = cost_bounds(&go, cm);
            let lo = b_q + fl + gl;
            let up = b_q + fu + gu;
            best = Some(match best {
                None => (lo, up),
                Some((bl, bu)) => (bl.min(lo), bu.min(up)),
            });
        }
    }
    let (lower, upper) = best.expect("at least one encoding");
    Ok(if lower == upper {
        BcOutcome::Exact(lower)
    } else {
        BcOutcome::Bracket { lower, upper }
    })
}

fn cost_bounds(o: &MinCircuitOutcome, cm: CostModel) -> (usize, usize) {
    let (gl, gu) = o.gate_bounds();
    // The non-constant output count is realized by the found circuit and no
    // circuit for this (partial) table can do better than all-constant
    // outputs cost 0, so reuse the found circuit's output cost for both
    // sides: it is exact when the search is exact, and for brackets the
    // lower side stays a valid lower bound.
    let out_cost = o.circuit().size(cm) - o.circuit().gate_count();
    let lower_out = if o.is_exact() { out_cost } else { 0 };
    (gl + lower_out, gu + out_cost)
}

/// All injective maps of `count` items into `0..range`, as value vectors.
fn injective_maps(count: usize, range: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(count);
    fn rec(count: usize, range: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if current.len() == count {
            out.push(current.clone());
            return;
        }
        for v in 0..range {
            if !current.contains(&v) {
                current.push(v);
                rec(count, range, current, out);
                current.pop();
            }
        }
    }
    rec(count, range, &mut current, &mut out);
    out
}

/// All width-`b_q` state encodings with the start at code 0: permutations of
/// the remaining codes over the remaining states.
fn state_encodings(s: usize, b_q: usize, start: usize) -> Vec<Vec<usize>> {
    let rest: Vec<usize> = (0..s).filter(|&q| q != start).collect();
    injective_maps(rest.len(), (1 << b_q) - 1)
        .into_iter()
        .map(|assign| {
            let mut codes = vec![0usize; s];
            for (i, &q) in rest.iter().enumerate() {
                codes[q] = assign[i] + 1; // skip code 0, reserved for start
            }
            codes
        })
        .collect()
}

/// First satisfying assignment of `c` in numeric order (variable `i` is bit
/// `i`), or `None` if unsatisfiable.
pub fn sat_brute(c: &Cnf) -> Result<Option<u64>, OracleError> {
    let n = c.num_vars();
    if n > SAT_VAR_CAP {
        return Err(OracleError::SatCapExceeded(n, SAT_VAR_CAP));
    }
    Ok((0..1u64 << n).find(|&a| c.evaluate(a)))
}

/// Upper bound companion to [`bc_oracle`]: the generic-synthesis cost under
/// the minimal encoding, for sandwich checks.
pub fn synth_bc(d: &Dfa, cm: CostModel) -> Representation {
    represent_dfa(d, &Encoding::minimal(d), cm).expect("minimal encoding always fits")
}
