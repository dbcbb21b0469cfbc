//! The Shannon-effect sampling experiment: measure register complexity over
//! a population of minimal DFAs and report how many fall below the
//! almost-all threshold. Output is a deterministic CSV string; the CLI only
//! writes it to disk.

use num_bigint::BigInt;
use num_rational::BigRational;
use std::fmt::Write as _;

use crate::automata::{enumerate_minimal_dfas, random_dfa, Dfa, DEFAULT_ENUM_BUDGET};
use crate::bounds::{bc_lower_bound, rational_to_decimal, shannon_threshold};
use crate::circuit::CostModel;
use crate::encoding::Encoding;
use crate::oracle::{bc_oracle, BcOutcome, SearchBudget};
use crate::synthesis::{represent_dfa, tadpole_representation};

/// Caps: the oracle runs only in exhaustive mode, sampling is synth-only.
pub const EXHAUSTIVE_STATE_CAP: usize = 3;
pub const EXHAUSTIVE_ALPHABET_CAP: usize = 2;
pub const SAMPLE_STATE_CAP: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
pub enum ExperimentError {
    #[error("exhaustive mode needs s <= {EXHAUSTIVE_STATE_CAP} and k <= {EXHAUSTIVE_ALPHABET_CAP}, got s={0} k={1}")]
    ExhaustiveCap(usize, usize),
    #[error("sample mode needs s <= {SAMPLE_STATE_CAP}, got s={0}")]
    SampleCap(usize),
    #[error("s must be at least 3 for the threshold formulas, got {0}")]
    TooFewStates(usize),
    #[error("could not draw enough s-state-minimal DFAs (kept {kept} of {want} after {attempts} attempts)")]
    SampleExhausted {
        kept: usize,
        want: usize,
        attempts: usize,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExperimentMode {
    /// Every s-state-minimal language, one canonical representative each,
    /// with the exact-search oracle on every record.
    Exhaustive,
    /// `n` uniform draws over transition tables and accepting sets, filtered
    /// to those already minimal with s states; synthesis sizes only.
    Sample(usize),
}

/// One measured DFA. `tadpole` is present when some letter of the DFA acts
/// as a single tadpole-shaped map, `oracle` when the exact search finished.
#[derive(Debug, Clone)]
pub struct ExperimentRecord {
    pub s: usize,
    pub k: usize,
    pub dfa_id: String,
    pub lower: usize,
    pub synth: usize,
    pub tadpole: Option<usize>,
    pub oracle: Option<usize>,
    pub cost_model: CostModel,
}

impl ExperimentRecord {
    /// The best complexity actually established for this DFA.
    pub fn measured(&self) -> usize {
        let mut best = self.synth;
        if let Some(t) = self.tadpole {
            best = best.min(t);
        }
        if let Some(o) = self.oracle {
            best = best.min(o);
        }
        best
    }

    fn csv_line(&self) -> String {
        let opt = |v: Option<usize>| v.map(|v| v.to_string()).unwrap_or_default();
        format!(
            "{},{},{},{},{},{},{},{}",
            self.s,
            self.k,
            self.dfa_id,
            self.lower,
            self.synth,
            opt(self.tadpole),
            opt(self.oracle),
            self.cost_model
        )
    }
}

/// Measures one DFA. The oracle is only consulted when `budget` is given,
/// and its time limit is ignored so that a fixed seed gives byte-identical
/// output regardless of machine speed.
pub fn measure_dfa(
    d: &Dfa,
    cost_model: CostModel,
    budget: Option<&SearchBudget>,
) -> ExperimentRecord {
    let (s, k) = (d.num_states(), d.alphabet_size());
    let synth = represent_dfa(d, &Encoding::minimal(d), cost_model)
        .expect("minimal encoding fits")
        .bc();
    let tadpole = (0..k)
        .filter_map(|a| tadpole_representation(d, a, cost_model).ok())
        .map(|r| r.bc())
        .min();
    let oracle = budget.and_then(|b| {
        let b = SearchBudget {
            max_seconds: u64::MAX / 2,
            ..*b
        };
        match bc_oracle(d, cost_model, &b) {
            Ok(BcOutcome::Exact(v)) => Some(v),
            _ => None,
        }
    });
    ExperimentRecord {
        s,
        k,
        dfa_id: d.language_hash(),
        lower: bc_lower_bound(s).expect("s >= 2 in experiments"),
        synth,
        tadpole,
        oracle,
        cost_model,
    }
}

/// Runs the experiment and renders the full CSV: a `#` parameter header,
/// the record rows, and `#` summary lines giving the fraction of the
/// population below the almost-all threshold for eps in {0.1, 0.3, 0.5}.
pub fn shannon_experiment(
    s: usize,
    k: usize,
    mode: ExperimentMode,
    seed: u64,
    cost_model: CostModel,
    budget: &SearchBudget,
) -> Result<String, ExperimentError> {
    if s < 3 {
        return Err(ExperimentError::TooFewStates(s));
    }
    let records = match mode {
        ExperimentMode::Exhaustive => {
            if s > EXHAUSTIVE_STATE_CAP || k > EXHAUSTIVE_ALPHABET_CAP {
                return Err(ExperimentError::ExhaustiveCap(s, k));
            }
            enumerate_minimal_dfas(s, k, DEFAULT_ENUM_BUDGET)
                .expect("capped sizes fit the enumeration budget")
                .map(|d| measure_dfa(&d, cost_model, Some(budget)))
                .collect::<Vec<_>>()
        }
        ExperimentMode::Sample(n) => {
            if s > SAMPLE_STATE_CAP {
                return Err(ExperimentError::SampleCap(s));
            }
            use rand::SeedableRng;
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let mut kept = Vec::new();
            let max_attempts = 1000 * n.max(1);
            let mut attempts = 0;
            while kept.len() < n && attempts < max_attempts {
                attempts += 1;
                let d = random_dfa(s, k, &mut rng);
                if d.minimized().num_states() == s {
                    kept.push(measure_dfa(&d, cost_model, None));
                }
            }
            if kept.len() < n {
                return Err(ExperimentError::SampleExhausted {
                    kept: kept.len(),
                    want: n,
                    attempts,
                });
            }
            kept
        }
    };

    let mode_str = match mode {
        ExperimentMode::Exhaustive => "exhaustive".to_string(),
        ExperimentMode::Sample(n) => format!("sample:{n}"),
    };
    let mut out = String::new();
    writeln!(
        out,
        "# shannon s={s} k={k} mode={mode_str} seed={seed} cost_model={cost_model} \
         budget_gates={} budget_visited={}",
        budget.max_gates, budget.max_visited
    )
    .unwrap();
    writeln!(out, "s,k,dfa_id,lower,synth,tadpole,oracle,cost_model").unwrap();
    for r in &records {
        writeln!(out, "{}", r.csv_line()).unwrap();
    }
    writeln!(out, "# population={}", records.len()).unwrap();
    for (num, den) in [(1i64, 10i64), (3, 10), (5, 10)] {
        let eps = BigRational::new(BigInt::from(num), BigInt::from(den));
        let threshold = shannon_threshold(s, k, &eps).expect("validated above");
        let below = records
            .iter()
            .filter(|r| BigRational::from_integer(BigInt::from(r.measured())) < threshold)
            .count();
        writeln!(
            out,
            "# eps={} threshold={} below_threshold={below}/{}",
            rational_to_decimal(&eps, 1),
            rational_to_decimal(&threshold, 3),
            records.len()
        )
        .unwrap();
    }
    Ok(out)
}
