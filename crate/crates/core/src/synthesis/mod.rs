//! Circuit constructions: generic truth-table synthesis, the single-letter
//! tadpole construction with its arithmetic gadgets, NFA-to-circuit
//! determinization, language-operation combinators, and the CNF reduction.

mod cnf;
mod gadgets;
mod language_ops;
mod nfa_circuit;
mod tadpole;

pub use cnf::{cnf_to_representation, parse_dimacs, write_dimacs, Cnf};
pub use gadgets::{
    gadget_increment, gadget_mod_check, gadget_range_check, gadget_subtract_const,
};
pub use language_ops::{op_complement, op_concat, op_intersect, op_reverse, op_star, op_union};
pub use nfa_circuit::{nfa_circuit_gate_budget, nfa_to_circuit};
pub use tadpole::{
    best_single_letter_representation, build_f1_single_letter, component_layout,
    tadpole_decompose, tadpole_representation, ComponentLayout, LayoutBlock, TadpoleComponent,
};

use std::collections::HashMap;

use crate::automata::Dfa;
use crate::bits::to_value;
use crate::circuit::{Circuit, CircuitBuilder, CostModel, Ref, TruthTable};
use crate::encoding::{Encoding, EncodingError, Representation};

#[derive(Debug, Clone, thiserror::Error)]
pub enum SynthesisError {
    #[error("truth table has {0} inputs, exceeding the synthesis cap of {1}")]
    InputCapExceeded(usize, usize),
    #[error("constant {0} does not fit in {1} bits")]
    ConstantOutOfRange(u64, usize),
    #[error("modulus must be nonzero")]
    ZeroModulus,
    #[error(
        "transition graph is not a disjoint union of paths feeding cycles: \
         paths merge at state {state}"
    )]
    NotTadpole { state: usize },
    #[error("letter {0} out of range for alphabet size {1}")]
    LetterOutOfRange(usize, usize),
    #[error("representations read different input codes")]
    InputCodeMismatch,
    #[error("alphabet sizes differ: {0} vs {1}")]
    AlphabetMismatch(usize, usize),
    #[error("CNF has {0} variables, exceeding the cap of {1}")]
    TooManyVariables(usize, usize),
    #[error(transparent)]
    Encoding(#[from] EncodingError),
}

/// Input cap for [`synthesize_from_table`].
pub const SYNTHESIS_INPUT_CAP: usize = 20;

/// Builds a circuit computing exactly the given table, by Shannon cofactor
/// decomposition with subcircuit sharing across outputs. Falls back to a
/// shared-minterm DNF when that comes out smaller, so the result never
/// exceeds the trivial DNF size.
pub fn synthesize_from_table(t: &TruthTable) -> Result<Circuit, SynthesisError> {
    let n = t.num_inputs();
    if n > SYNTHESIS_INPUT_CAP {
        return Err(SynthesisError::InputCapExceeded(n, SYNTHESIS_INPUT_CAP));
    }
    let shannon = synthesize_shannon(t);
    // The DNF fallback enumerates all rows; skip it once the Shannon result
    // is clearly below any DNF's size.
    if n <= 12 {
        let dnf = synthesize_dnf(t);
        if dnf.gate_count() < shannon.gate_count() {
            return Ok(dnf);
        }
    }
    Ok(shannon)
}

fn synthesize_shannon(t: &TruthTable) -> Circuit {
    let n = t.num_inputs();
    let mut bld = CircuitBuilder::new(n);
    // One column bitset per output, row-major over 2^n rows.
    let mut memo: HashMap<(usize, Vec<u64>), Ref> = HashMap::new();
    let outputs = (0..t.num_outputs())
        .map(|col| {
            let bits: Vec<u64> = (0..(1usize << n).div_ceil(64))
                .map(|w| {
                    let mut word = 0u64;
                    for b in 0..64.min((1usize << n) - 64 * w) {
                        if t.row(64 * w + b)[col] {
                            word |= 1 << b;
                        }
                    }
                    word
                })
                .collect();
            shannon_rec(&mut bld, &mut memo, &bits, 1usize << n, 0, &mut { 0 })
        })
        .collect();
    bld.finish(outputs)
}

/// Cofactor recursion on a packed subtable of `len` rows. `depth` counts
/// decided inputs; input `depth` splits the subtable in half (it is the most
/// significant remaining row-index bit).
fn shannon_rec(
    bld: &mut CircuitBuilder,
    memo: &mut HashMap<(usize, Vec<u64>), Ref>,
    bits: &[u64],
    len: usize,
    depth: usize,
    _guard: &mut usize,
) -> Ref {
    if all_equal(bits, len, false) {
        return Ref::Const0;
    }
    if all_equal(bits, len, true) {
        return Ref::Const1;
    }
    let key = (depth, bits.to_vec());
    if let Some(&r) = memo.get(&key) {
        return r;
    }
    let half = len / 2;
    let (lo, hi) = split(bits, half);
    let f0 = shannon_rec(bld, memo, &lo, half, depth + 1, _guard);
    let f1 = shannon_rec(bld, memo, &hi, half, depth + 1, _guard);
    let r = bld.mux(bld.input(depth), f1, f0);
    memo.insert(key, r);
    r
}

fn all_equal(bits: &[u64], len: usize, value: bool) -> bool {
    let want = if value { u64::MAX } else { 0 };
    for (w, &word) in bits.iter().enumerate() {
        let rem = len.saturating_sub(64 * w).min(64);
        if rem == 0 {
            break;
        }
        let mask = if rem == 64 { u64::MAX } else { (1 << rem) - 1 };
        if word & mask != want & mask {
            return false;
        }
    }
    true
}

/// Splits a packed bitset of `2*half` rows into its lower and upper halves.
fn split(bits: &[u64], half: usize) -> (Vec<u64>, Vec<u64>) {
    let take = |start: usize| -> Vec<u64> {
        (0..half.div_ceil(64).max(1))
            .map(|w| {
                let bit = start + 64 * w;
                let mut word = bits[bit / 64] >> (bit % 64);
                if bit % 64 != 0 && bit / 64 + 1 < bits.len() {
                    word |= bits[bit / 64 + 1] << (64 - bit % 64);
                }
                word
            })
            .collect()
    };
    (take(0), take(half))
}

fn synthesize_dnf(t: &TruthTable) -> Circuit {
    let n = t.num_inputs();
    let mut bld = CircuitBuilder::new(n);
    let inputs = bld.inputs();
    let mut terms: Vec<Vec<Ref>> = vec![Vec::new(); t.num_outputs()];
    for (r, row) in t.rows().iter().enumerate() {
        if row.iter().any(|&b| b) {
            let minterm = bld.eq_const(&inputs, r as u64);
            for (col, &b) in row.iter().enumerate() {
                if b {
                    terms[col].push(minterm);
                }
            }
        }
    }
    let outputs = terms.iter().map(|ts| bld.or_all(ts)).collect();
    bld.finish(outputs)
}

/// Synthesizes a representation of `d` under the encoding `e`: `F` and `G`
/// are built from the encoded transition and acceptance tables, with rows
/// that are not code points mapped to all-zeros.
pub fn represent_dfa(
    d: &Dfa,
    e: &Encoding,
    cost_model: CostModel,
) -> Result<Representation, SynthesisError> {
    if e.num_states() != d.num_states() || e.num_letters() != d.alphabet_size() {
        return Err(EncodingError::InterfaceMismatch(format!(
            "encoding covers {} states / {} letters, DFA has {} / {}",
            e.num_states(),
            e.num_letters(),
            d.num_states(),
            d.alphabet_size()
        ))
        .into());
    }
    let (b_sigma, b_q) = (e.b_sigma(), e.b_q());
    let mut f_rows = vec![vec![false; b_q]; 1 << (b_sigma + b_q)];
    let mut g_rows = vec![vec![false]; 1 << b_q];
    for q in 0..d.num_states() {
        let qc = to_value(&e.state_code()[q]) as usize;
        g_rows[qc][0] = d.is_accepting(q);
        for a in 0..d.alphabet_size() {
            let ac = to_value(&e.input_code()[a]) as usize;
            f_rows[(ac << b_q) | qc] = e.state_code()[d.delta(q, a)].clone();
        }
    }
    let f = synthesize_from_table(&TruthTable::new(b_sigma + b_q, b_q, f_rows).unwrap())?;
    let g = synthesize_from_table(&TruthTable::new(b_q, 1, g_rows).unwrap())?;
    Ok(Representation::new(e, f, g, cost_model)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automata::{equivalent, random_dfa};
    use crate::encoding::{extract_dfa, verify_representation};
    use rand::SeedableRng;

    #[test]
    fn constant_zero_table_is_free() {
        let t = TruthTable::from_fn(3, 1, |_| vec![false]);
        let c = synthesize_from_table(&t).unwrap();
        assert_eq!(c.gate_count(), 0);
        assert_eq!(c.outputs(), &[Ref::Const0]);
    }

    #[test]
    fn identity_table_is_wires() {
        let t = TruthTable::from_fn(3, 3, |r| crate::bits::to_bits(r as u64, 3));
        let c = synthesize_from_table(&t).unwrap();
        assert_eq!(c.gate_count(), 0);
        assert_eq!(c.truth_table().unwrap(), t);
    }

    #[test]
    fn random_tables_round_trip() {
        use rand::Rng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..50 {
            let t = TruthTable::from_fn(4, 2, |_| vec![rng.gen(), rng.gen()]);
            let c = synthesize_from_table(&t).unwrap();
            assert_eq!(c.truth_table().unwrap(), t, "synthesis must match the table");
            assert!(dnf_size_bound(&t) >= c.gate_count());
        }
    }

    /// Gate count of the shared-minterm DNF: the explicit upper bound that
    /// synthesis must never exceed.
    fn dnf_size_bound(t: &TruthTable) -> usize {
        synthesize_dnf(t).gate_count()
    }

    #[test]
    fn represent_round_trips() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..30 {
            let d = random_dfa(5, 2, &mut rng);
            let r = represent_dfa(&d, &Encoding::minimal(&d), CostModel::default()).unwrap();
            assert!(verify_representation(&d, &r).unwrap());
            assert!(equivalent(&d, &extract_dfa(&r).unwrap()).unwrap());
        }
    }

    #[test]
    fn accept_all_singleton() {
        let d = Dfa::new(vec![vec![0]], 0, [0], 1).unwrap();
        let r = represent_dfa(&d, &Encoding::minimal(&d), CostModel::GatesPlusOutputs).unwrap();
        assert_eq!(r.f().gate_count(), 0);
        assert_eq!(r.g().outputs(), &[Ref::Const1]);
        assert_eq!(r.bc(), 0); // constant outputs are free
    }

    #[test]
    fn shift_register_under_shift_encoding_is_gate_free() {
        let d = Dfa::shift_register(2);
        let r = represent_dfa(&d, &Encoding::minimal(&d), CostModel::GatesOnly).unwrap();
        assert_eq!(r.f().gate_count(), 0);
        assert!(verify_representation(&d, &r).unwrap());
    }
}
