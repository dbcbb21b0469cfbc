//! Randomized invariants over the core types.

use proptest::prelude::*;

use bcx::automata::{equivalent, parse_dfa, write_dfa};
use bcx::bits::to_bits;
use bcx::circuit::CostModel;
use bcx::encoding::{extract_dfa, verify_representation, Encoding};
use bcx::synthesis::{represent_dfa, synthesize_from_table};
use bcx::{Dfa, TruthTable};

/// Arbitrary complete DFA with up to 5 states over up to 3 letters.
fn dfa_strategy() -> impl Strategy<Value = Dfa> {
    (1usize..=5, 1usize..=3)
        .prop_flat_map(|(s, k)| {
            (
                proptest::collection::vec(proptest::collection::vec(0..s, k), s),
                0..s,
                proptest::collection::vec(any::<bool>(), s),
                Just(k),
            )
        })
        .prop_map(|(t, start, acc, k)| {
            let accepting: Vec<usize> =
                acc.iter().enumerate().filter(|(_, &b)| b).map(|(q, _)| q).collect();
            Dfa::new(t, start, accepting, k).unwrap()
        })
}

/// Arbitrary truth table with up to 4 inputs and up to 3 outputs.
fn table_strategy() -> impl Strategy<Value = TruthTable> {
    (1usize..=4, 1usize..=3)
        .prop_flat_map(|(n, m)| {
            proptest::collection::vec(0u64..(1 << m), 1 << n)
                .prop_map(move |vals| TruthTable::from_fn(n, m, |r| to_bits(vals[r], m)))
        })
}

fn swap_states(d: &Dfa, a: usize, b: usize) -> Dfa {
    let swap = |q: usize| {
        if q == a {
            b
        } else if q == b {
            a
        } else {
            q
        }
    };
    let transitions = (0..d.num_states())
        .map(|q| (0..d.alphabet_size()).map(|x| swap(d.delta(swap(q), x))).collect())
        .collect();
    let accepting: Vec<usize> = (0..d.num_states()).filter(|&q| d.is_accepting(swap(q))).collect();
    Dfa::new(transitions, swap(d.start()), accepting, d.alphabet_size()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn minimize_preserves_language_and_is_idempotent(d in dfa_strategy()) {
        let m = d.minimized();
        prop_assert!(equivalent(&d, &m).unwrap());
        prop_assert!(m.num_states() <= d.num_states());
        prop_assert_eq!(m.minimized().num_states(), m.num_states());
    }

    #[test]
    fn dfa_text_round_trip(d in dfa_strategy()) {
        let back = parse_dfa(&write_dfa(&d)).unwrap();
        prop_assert!(equivalent(&d, &back).unwrap());
        prop_assert_eq!(back.num_states(), d.num_states());
    }

    #[test]
    fn synthesized_circuit_computes_its_table(t in table_strategy()) {
        let c = synthesize_from_table(&t).unwrap();
        let n = t.num_inputs();
        for r in 0..(1usize << n) {
            let input = to_bits(r as u64, n);
            prop_assert_eq!(&c.evaluate(&input).unwrap(), t.row(r));
        }
    }

    #[test]
    fn cost_models_differ_by_nonconstant_outputs(t in table_strategy()) {
        let c = synthesize_from_table(&t).unwrap();
        let nonconst = c.outputs().iter().filter(|o| !o.is_const()).count();
        prop_assert_eq!(
            c.size(CostModel::GatesPlusOutputs),
            c.size(CostModel::GatesOnly) + nonconst
        );
    }

    #[test]
    fn representation_round_trip(d in dfa_strategy()) {
        // The minimal encoding fixes the start state at code 0, so relabel
        // the start to state 0 first (language-preserving).
        let d = swap_states(&d, 0, d.start());
        let r = represent_dfa(&d, &Encoding::minimal(&d), CostModel::default()).unwrap();
        prop_assert!(verify_representation(&d, &r).unwrap());
        prop_assert!(equivalent(&extract_dfa(&r).unwrap(), &d).unwrap());
    }
}
