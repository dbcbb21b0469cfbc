//! Exhaustive enumeration of minimal DFAs: one representative per language
//! whose minimal automaton has exactly `s` states.

use std::collections::HashSet;

use super::{AutomataError, Dfa};

/// Default cap on `s^(k*s) * 2^s`, the number of raw candidates scanned.
pub const DEFAULT_ENUM_BUDGET: u128 = 1 << 24;

/// Streams one canonical representative per s-state-minimal language over a
/// k-letter alphabet. Candidates are all transition tables with start state 0
/// and all accepting sets, deduplicated by minimized canonical form.
pub fn enumerate_minimal_dfas(
    s: usize,
    k: usize,
    budget: u128,
) -> Result<MinimalDfaIter, AutomataError> {
    assert!(s >= 1 && k >= 1);
    let tables = (s as u128).pow((k * s) as u32);
    let required = tables * (1u128 << s);
    if required > budget {
        return Err(AutomataError::EnumerationBudget { required, budget });
    }
    Ok(MinimalDfaIter {
        s,
        k,
        table: 0,
        tables: tables as u64,
        acc: 0,
        seen: HashSet::new(),
    })
}

pub struct MinimalDfaIter {
    s: usize,
    k: usize,
    table: u64,
    tables: u64,
    acc: u64,
    seen: HashSet<Vec<u8>>,
}

impl Iterator for MinimalDfaIter {
    type Item = Dfa;

    fn next(&mut self) -> Option<Dfa> {
        loop {
            if self.table >= self.tables {
                return None;
            }
            let (s, k) = (self.s, self.k);
            // decode the transition table from the mixed-radix index
            let mut idx = self.table;
            let transitions: Vec<Vec<usize>> = (0..s)
                .map(|_| {
                    (0..k)
                        .map(|_| {
                            let t = (idx % s as u64) as usize;
                            idx /= s as u64;
                            t
                        })
                        .collect()
                })
                .collect();
            let accepting = (0..s).filter(|q| (self.acc >> q) & 1 == 1);
            let d = Dfa::new(transitions, 0, accepting, k).unwrap();

            self.acc += 1;
            if self.acc == 1u64 << s {
                self.acc = 0;
                self.table += 1;
            }

            let m = d.minimized();
            if m.num_states() != s {
                continue;
            }
            if self.seen.insert(m.canonical_key()) {
                return Some(m);
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_state_unary() {
        // accept-all and reject-all
        let count = enumerate_minimal_dfas(1, 1, DEFAULT_ENUM_BUDGET).unwrap().count();
        assert_eq!(count, 2);
    }

    #[test]
    fn representatives_are_minimal_and_distinct() {
        let reps: Vec<Dfa> = enumerate_minimal_dfas(2, 1, DEFAULT_ENUM_BUDGET)
            .unwrap()
            .collect();
        for d in &reps {
            assert_eq!(d.minimized().num_states(), 2);
        }
        let keys: std::collections::HashSet<_> =
            reps.iter().map(|d| d.canonical_key()).collect();
        assert_eq!(keys.len(), reps.len());
    }

    #[test]
    fn budget_refusal_names_requirement() {
        let err = enumerate_minimal_dfas(6, 2, 1000).err().expect("budget too small");
        match err {
            AutomataError::EnumerationBudget { required, budget } => {
                assert!(required > budget);
            }
            other => panic!("unexpected error {other:?}"),
        }
    }
}
