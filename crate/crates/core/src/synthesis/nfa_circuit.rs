//! Determinization by circuit: one register bit per NFA state, with each
//! next-state bit the disjunction, over letters, of "letter matches AND some
//! predecessor bit is set". Gate count is bounded by
//! `t + (k+1)n + k*ceil(log k)` (plus `3n` relabeling slack when the NFA has
//! several start states), where `t` counts transitions.

use super::SynthesisError;
use crate::automata::Nfa;
use crate::bits::{to_bits, width_for};
use crate::circuit::{CircuitBuilder, CostModel, Ref};
use crate::encoding::{normalize_start_zero, Representation};

/// Builds a representation whose register is the subset-construction state
/// set of `n`, one bit per NFA state, start bits moved to all-zeros.
pub fn nfa_to_circuit(
    nfa: &Nfa,
    cost_model: CostModel,
) -> Result<Representation, SynthesisError> {
    let n = nfa.num_states();
    let k = nfa.alphabet_size();
    let b_sigma = width_for(k);

    let mut bld = CircuitBuilder::new(b_sigma + n);
    let x: Vec<Ref> = (0..b_sigma).map(|i| bld.input(i)).collect();
    let q: Vec<Ref> = (b_sigma..b_sigma + n).map(|i| bld.input(i)).collect();
    // One shared letter decoder per letter.
    let decoders: Vec<Ref> = (0..k).map(|a| bld.eq_const(&x, a as u64)).collect();

    let mut outputs = Vec::with_capacity(n);
    for i in 0..n {
        let mut terms = Vec::new();
        for (a, &dec) in decoders.iter().enumerate() {
            let preds: Vec<Ref> = nfa
                .transitions()
                .iter()
                .filter(|&&(_, la, to)| la == a && to == i)
                .map(|&(from, _, _)| q[from])
                .collect();
            if !preds.is_empty() {
                let any = bld.or_all(&preds);
                terms.push(bld.and(dec, any));
            }
        }
        outputs.push(bld.or_all(&terms));
    }
    let f = bld.finish(outputs);

    let mut gb = CircuitBuilder::new(n);
    let acc: Vec<Ref> = nfa.accepting().iter().map(|&i| gb.input(i)).collect();
    let out = gb.or_all(&acc);
    let g = gb.finish(vec![out]);

    let input_code = (0..k).map(|a| to_bits(a as u64, b_sigma)).collect();
    let rep = Representation::semantic(input_code, f, g, cost_model)?;
    let mut start_mask = vec![false; n];
    for &s in nfa.starts() {
        start_mask[s] = true;
    }
    if start_mask.iter().any(|&b| b) {
        Ok(normalize_start_zero(&rep, &start_mask)?)
    } else {
        Ok(rep)
    }
}

/// The gates-only budget the construction is audited against (without the
/// multi-start relabeling slack).
pub fn nfa_circuit_gate_budget(nfa: &Nfa) -> usize {
    let n = nfa.num_states();
    let k = nfa.alphabet_size();
    nfa.transition_count() + (k + 1) * n + k * width_for(k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automata::{equivalent, subset_construct, Dfa};
    use crate::encoding::extract_dfa;
    use crate::circuit::CostModel;

    #[test]
    fn dfa_as_nfa_round_trips() {
        let d = Dfa::shift_register(2);
        let nfa = Nfa::from_dfa(&d);
        let r = nfa_to_circuit(&nfa, CostModel::GatesOnly).unwrap();
        assert!(equivalent(&d, &extract_dfa(&r).unwrap()).unwrap());
    }

    #[test]
    fn ends_in_11_nfa() {
        // 3 states: 0 loops on both letters, 1 after a 1, 2 after 11.
        let nfa = Nfa::new(
            3,
            2,
            [(0, 0, 0), (0, 1, 0), (0, 1, 1), (1, 1, 2)],
            [0],
            [2],
        )
        .unwrap();
        let r = nfa_to_circuit(&nfa, CostModel::GatesOnly).unwrap();
        let d = extract_dfa(&r).unwrap();
        let expect = subset_construct(&nfa).unwrap();
        assert!(equivalent(&d, &expect).unwrap());
        // Single start: the stated budget holds without slack.
        let size = r.f().size(CostModel::GatesOnly) + r.g().size(CostModel::GatesOnly);
        assert!(
            size <= nfa_circuit_gate_budget(&nfa),
            "{size} > {}",
            nfa_circuit_gate_budget(&nfa)
        );
    }

    #[test]
    fn empty_transitions_accepts_at_most_epsilon() {
        let nfa = Nfa::new(2, 2, [], [0], [0]).unwrap();
        let r = nfa_to_circuit(&nfa, CostModel::GatesOnly).unwrap();
        // No transitions: every next-state bit is constant.
        assert!(r
            .f()
            .outputs()
            .iter()
            .all(|&o| matches!(o, Ref::Const0 | Ref::Const1)));
        let d = extract_dfa(&r).unwrap();
        assert!(d.run(&[]).unwrap());
        assert!(!d.run(&[0]).unwrap());
        assert!(!d.run(&[1, 0]).unwrap());
    }

    #[test]
    fn multi_start_within_slack() {
        let nfa = Nfa::new(
            3,
            2,
            [(0, 0, 1), (1, 1, 2), (2, 0, 0), (2, 1, 1)],
            [0, 2],
            [1],
        )
        .unwrap();
        let r = nfa_to_circuit(&nfa, CostModel::GatesOnly).unwrap();
        let d = extract_dfa(&r).unwrap();
        let expect = subset_construct(&nfa).unwrap();
        assert!(equivalent(&d, &expect).unwrap());
        let size = r.f().size(CostModel::GatesOnly) + r.g().size(CostModel::GatesOnly);
        assert!(size <= nfa_circuit_gate_budget(&nfa) + 3 * nfa.num_states());
    }

    #[test]
    fn single_start_budget_holds_on_many_nfas() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for _ in 0..60 {
            let n = rng.gen_range(1..=5);
            let k = rng.gen_range(1..=3);
            let mut transitions = Vec::new();
            for from in 0..n {
                for a in 0..k {
                    for to in 0..n {
                        if rng.gen_bool(0.3) {
                            transitions.push((from, a, to));
                        }
                    }
                }
            }
            let accepting: Vec<usize> = (0..n).filter(|_| rng.gen_bool(0.4)).collect();
            let nfa = Nfa::new(n, k, transitions, [0], accepting).unwrap();
            let r = nfa_to_circuit(&nfa, CostModel::GatesOnly).unwrap();
            let size = r.f().size(CostModel::GatesOnly) + r.g().size(CostModel::GatesOnly);
            assert!(
                size <= nfa_circuit_gate_budget(&nfa),
                "n={n} k={k} t={}: {size} > {}",
                nfa.transition_count(),
                nfa_circuit_gate_budget(&nfa)
            );
            // Membership agreement with subset construction, words <= 8.
            let d = extract_dfa(&r).unwrap();
            let expect = subset_construct(&nfa).unwrap();
            assert!(equivalent(&d, &expect).unwrap());
        }
    }
}
