//! Exhaustive enumeration of the Boolean functions realizable with a bounded
//! number of gates, canonicalized by truth table.

use std::collections::{HashMap, HashSet};

use super::CircuitError;

const INPUT_CAP: usize = 4;
const OUTPUT_CAP: usize = 3;
const GATE_CAP: usize = 6;
const BUDGET: u128 = 10_000_000_000;

/// Counts distinct `n`-input `m`-output functions computable with at most
/// `max_gates` AND/OR/NOT gates. Gate operands and outputs range over inputs
/// and earlier gates; constants are not admitted here, matching the counting
/// convention the result is compared against.
pub fn enumerate_functions(n: usize, m: usize, max_gates: usize) -> Result<u64, CircuitError> {
    if n == 0 || n > INPUT_CAP || m == 0 || m > OUTPUT_CAP || max_gates > GATE_CAP {
        let estimate = raw_estimate(n, max_gates);
        return Err(CircuitError::BudgetExceeded {
            estimate,
            budget: BUDGET,
        });
    }
    let estimate = raw_estimate(n, max_gates);
    if estimate > BUDGET {
        return Err(CircuitError::BudgetExceeded {
            estimate,
            budget: BUDGET,
        });
    }

    let rows = 1usize << n;
    let full: u64 = if rows == 64 { u64::MAX } else { (1u64 << rows) - 1 };
    // table of input i: bit r set iff input i is 1 in row r (row = MSB-first input vector)
    let mut tables: Vec<u64> = (0..n)
        .map(|i| {
            (0..rows).fold(0u64, |acc, r| acc | ((((r >> (n - 1 - i)) & 1) as u64) << r))
        })
        .collect();

    let mut results: HashSet<Vec<u64>> = HashSet::new();
    let mut visited: HashMap<Vec<u64>, usize> = HashMap::new();
    dfs(&mut tables, max_gates, full, m, &mut results, &mut visited);
    Ok(results.len() as u64)
}

fn raw_estimate(n: usize, c: usize) -> u128 {
    // With t wires available there are at most t(t-1) AND/OR candidates and
    // t NOT candidates, i.e. t^2; multiply over the gates added.
    (n..n + c).map(|t| (t * t) as u128).product()
}

fn dfs(
    tables: &mut Vec<u64>,
    remaining: usize,
    full: u64,
    m: usize,
    results: &mut HashSet<Vec<u64>>,
    visited: &mut HashMap<Vec<u64>, usize>,
) {
    let mut key = tables.clone();
    key.sort_unstable();
    match visited.get(&key) {
        Some(&r) if r >= remaining => return,
        _ => {
            visited.insert(key, remaining);
        }
    }

    // every m-tuple over the available wires is a realizable function
    let mut tuple = vec![0usize; m];
    loop {
        results.insert(tuple.iter().map(|&i| tables[i]).collect());
        let mut pos = m;
        loop {
            if pos == 0 {
                break;
            }
            pos -= 1;
            tuple[pos] += 1;
            if tuple[pos] < tables.len() {
                break;
            }
            tuple[pos] = 0;
        }
        if tuple.iter().all(|&i| i == 0) {
            break;
        }
    }

    if remaining == 0 {
        return;
    }
    let len = tables.len();
    let mut candidates: Vec<u64> = Vec::new();
    for i in 0..len {
        candidates.push(!tables[i] & full);
        for j in (i + 1)..len {
            candidates.push(tables[i] & tables[j]);
            candidates.push(tables[i] | tables[j]);
        }
    }
    for cand in candidates {
        if tables.contains(&cand) {
            continue;
        }
        tables.push(cand);
        dfs(tables, remaining - 1, full, m, results, visited);
        tables.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_input_counts() {
        // only the identity is realizable with zero gates and no constants
        assert_eq!(enumerate_functions(1, 1, 0).unwrap(), 1);
        // one gate adds NOT
        assert!(enumerate_functions(1, 1, 1).unwrap() >= 2);
        assert_eq!(enumerate_functions(1, 1, 1).unwrap(), 2);
    }

    #[test]
    fn monotone_in_gate_budget() {
        let mut prev = 0;
        for c in 0..4 {
            let count = enumerate_functions(2, 1, c).unwrap();
            assert!(count >= prev);
            prev = count;
        }
    }

    #[test]
    fn two_inputs_all_functions_eventually() {
        // 2^4 = 16 single-output functions of 2 inputs; even the constants
        // are reachable (x AND NOT x) once enough gates are allowed
        assert_eq!(enumerate_functions(2, 1, 6).unwrap(), 16);
        // without gates: just the two input projections
        assert_eq!(enumerate_functions(2, 1, 0).unwrap(), 2);
    }

    #[test]
    fn budget_refusal() {
        assert!(enumerate_functions(5, 1, 2).is_err());
        assert!(enumerate_functions(2, 1, 12).is_err());
    }
}
