//! Random DFA sampling, uniform over all s^(s*k) transition tables and 2^s
//! accepting sets with start state 0. This is the population the minimal-DFA
//! counting bound speaks about, once filtered to s-state-minimal samples.

use rand::Rng;

use super::Dfa;

pub fn random_dfa(s: usize, k: usize, rng: &mut impl Rng) -> Dfa {
    let transitions = (0..s)
        .map(|_| (0..k).map(|_| rng.gen_range(0..s)).collect())
        .collect();
    let accepting: Vec<usize> = (0..s).filter(|_| rng.gen_bool(0.5)).collect();
    Dfa::new(transitions, 0, accepting, k).unwrap()
}
