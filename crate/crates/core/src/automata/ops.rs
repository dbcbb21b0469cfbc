//! Language operations at the automata level: determinization, products,
//! concatenation and star. Epsilon transitions are eliminated inside the
//! constructions, so `Nfa` never stores them.

use std::collections::{BTreeSet, HashMap, VecDeque};

use super::{AutomataError, Dfa, Nfa};

/// Powerset determinization restricted to reachable subsets. The start state
/// of the result is the subset of the NFA's start states.
pub fn subset_construct(n: &Nfa) -> Result<Dfa, AutomataError> {
    if n.num_states > 24 {
        return Err(AutomataError::TooManyNfaStates(n.num_states));
    }
    let k = n.alphabet_size;
    // successor masks per (state, letter)
    let mut step = vec![0u64; n.num_states * k.max(1)];
    for &(q, a, r) in &n.transitions {
        step[q * k + a] |= 1u64 << r;
    }
    let start_mask: u64 = n.starts.iter().fold(0, |m, &q| m | (1 << q));
    let accept_mask: u64 = n.accepting.iter().fold(0, |m, &q| m | (1 << q));

    let mut index: HashMap<u64, usize> = HashMap::from([(start_mask, 0)]);
    let mut order: Vec<u64> = vec![start_mask];
    let mut transitions: Vec<Vec<usize>> = Vec::new();
    let mut queue = VecDeque::from([start_mask]);
    while let Some(mask) = queue.pop_front() {
        let mut row = Vec::with_capacity(k);
        for a in 0..k {
            let mut out = 0u64;
            let mut m = mask;
            while m != 0 {
                let q = m.trailing_zeros() as usize;
                m &= m - 1;
                out |= step[q * k + a];
            }
            let id = *index.entry(out).or_insert_with(|| {
                order.push(out);
                queue.push_back(out);
                order.len() - 1
            });
            row.push(id);
        }
        transitions.push(row);
    }
    let accepting = order
        .iter()
        .enumerate()
        .filter(|(_, &m)| m & accept_mask != 0)
        .map(|(i, _)| i);
    Dfa::new(transitions, 0, accepting, k)
}

/// Product automaton over reachable pairs; accepts `combine(a accepts, b accepts)`.
pub fn product(
    a: &Dfa,
    b: &Dfa,
    combine: impl Fn(bool, bool) -> bool,
) -> Result<Dfa, AutomataError> {
    if a.alphabet_size != b.alphabet_size {
        return Err(AutomataError::AlphabetMismatch {
            a: a.alphabet_size,
            b: b.alphabet_size,
        });
    }
    let k = a.alphabet_size;
    let start = (a.start, b.start);
    let mut index: HashMap<(usize, usize), usize> = HashMap::from([(start, 0)]);
    let mut order = vec![start];
    let mut transitions: Vec<Vec<usize>> = Vec::new();
    let mut head = 0;
    while head < order.len() {
        let (qa, qb) = order[head];
        head += 1;
        let row = (0..k)
            .map(|x| {
                let t = (a.delta(qa, x), b.delta(qb, x));
                *index.entry(t).or_insert_with(|| {
                    order.push(t);
                    order.len() - 1
                })
            })
            .collect();
        transitions.push(row);
    }
    let accepting = order
        .iter()
        .enumerate()
        .filter(|(_, &(qa, qb))| combine(a.is_accepting(qa), b.is_accepting(qb)))
        .map(|(i, _)| i);
    Dfa::new(transitions, 0, accepting, k)
}

/// NFA for the concatenation L(a)L(b). The epsilon transitions from `a`'s
/// accepting states to `b`'s start are eliminated by duplicating every edge
/// that enters an accepting state of `a`.
pub fn concat_nfa(a: &Dfa, b: &Dfa) -> Result<Nfa, AutomataError> {
    if a.alphabet_size != b.alphabet_size {
        return Err(AutomataError::AlphabetMismatch {
            a: a.alphabet_size,
            b: b.alphabet_size,
        });
    }
    let off = a.num_states;
    let mut transitions: BTreeSet<(usize, usize, usize)> = BTreeSet::new();
    for q in 0..a.num_states {
        for x in 0..a.alphabet_size {
            let r = a.delta(q, x);
            transitions.insert((q, x, r));
            if a.is_accepting(r) {
                transitions.insert((q, x, off + b.start));
            }
        }
    }
    for q in 0..b.num_states {
        for x in 0..b.alphabet_size {
            transitions.insert((off + q, x, off + b.delta(q, x)));
        }
    }
    let mut starts: BTreeSet<usize> = [a.start].into_iter().collect();
    if a.is_accepting(a.start) {
        starts.insert(off + b.start);
    }
    Nfa::new(
        a.num_states + b.num_states,
        a.alphabet_size,
        transitions,
        starts,
        b.accepting.iter().map(|&q| off + q),
    )
}

/// NFA for L(d)*. Adds one fresh accepting initial state (so the result has
/// m + 1 states) to account for the empty word; loop-back epsilon edges are
/// eliminated by copying the start state's outgoing edges onto every
/// accepting state and onto the fresh state.
pub fn star_nfa(d: &Dfa) -> Nfa {
    let fresh = d.num_states;
    let mut transitions: BTreeSet<(usize, usize, usize)> = BTreeSet::new();
    for q in 0..d.num_states {
        for x in 0..d.alphabet_size {
            transitions.insert((q, x, d.delta(q, x)));
        }
    }
    for x in 0..d.alphabet_size {
        let r = d.delta(d.start, x);
        transitions.insert((fresh, x, r));
        for &q in &d.accepting {
            transitions.insert((q, x, r));
        }
    }
    let mut accepting = d.accepting.clone();
    accepting.insert(fresh);
    Nfa::new(
        d.num_states + 1,
        d.alphabet_size,
        transitions,
        [fresh],
        accepting,
    )
    .expect("star construction is well-formed")
}
