//! Minimization (reachability trim + Hopcroft partition refinement),
//! canonical forms and language equivalence.

use std::collections::{BTreeSet, HashMap, VecDeque};

use super::{AutomataError, Dfa};

impl Dfa {
    /// The unique minimal DFA for the same language, in canonical BFS
    /// numbering with state 0 as the start state.
    pub fn minimized(&self) -> Dfa {
        let reachable = self.reachable_states();
        let partition = hopcroft(self, &reachable);

        // block id per reachable state
        let mut block_of: HashMap<usize, usize> = HashMap::new();
        for (i, block) in partition.iter().enumerate() {
            for &q in block {
                block_of.insert(q, i);
            }
        }

        // BFS over blocks from the start block for canonical numbering
        let k = self.alphabet_size;
        let start_block = block_of[&self.start];
        let mut order: Vec<usize> = vec![start_block];
        let mut number: HashMap<usize, usize> = HashMap::from([(start_block, 0)]);
        let mut head = 0;
        while head < order.len() {
            let b = order[head];
            head += 1;
            let rep = partition[b][0];
            for a in 0..k {
                let tb = block_of[&self.delta(rep, a)];
                if !number.contains_key(&tb) {
                    number.insert(tb, order.len());
                    order.push(tb);
                }
            }
        }

        let transitions = order
            .iter()
            .map(|&b| {
                let rep = partition[b][0];
                (0..k).map(|a| number[&block_of[&self.delta(rep, a)]]).collect()
            })
            .collect();
        let accepting = order
            .iter()
            .enumerate()
            .filter(|(_, &b)| self.is_accepting(partition[b][0]))
            .map(|(i, _)| i);
        Dfa::new(transitions, 0, accepting, k).expect("minimization preserves well-formedness")
    }

    fn reachable_states(&self) -> Vec<usize> {
        let mut seen = vec![false; self.num_states];
        let mut queue = VecDeque::from([self.start]);
        seen[self.start] = true;
        let mut out = Vec::new();
        while let Some(q) = queue.pop_front() {
            out.push(q);
            for a in 0..self.alphabet_size {
                let r = self.delta(q, a);
                if !seen[r] {
                    seen[r] = true;
                    queue.push_back(r);
                }
            }
        }
        out
    }

    /// Stable byte key of the transition structure; equal keys mean equal
    /// automata up to nothing (the numbering is part of the key). Apply to
    /// minimized DFAs to compare languages.
    pub fn canonical_key(&self) -> Vec<u8> {
        let mut key = Vec::new();
        key.extend_from_slice(&(self.num_states as u32).to_be_bytes());
        key.extend_from_slice(&(self.alphabet_size as u32).to_be_bytes());
        key.extend_from_slice(&(self.start as u32).to_be_bytes());
        for &t in &self.next {
            key.extend_from_slice(&(t as u32).to_be_bytes());
        }
        for q in 0..self.num_states {
            key.push(self.is_accepting(q) as u8);
        }
        key
    }

    /// Hex digest identifying the language (hash of the minimized canonical form).
    pub fn language_hash(&self) -> String {
        use sha2::{Digest, Sha256};
        let key = self.minimized().canonical_key();
        let digest = Sha256::digest(&key);
        digest.iter().take(8).map(|b| format!("{b:02x}")).collect()
    }
}

/// Hopcroft's partition refinement over the reachable states. Returns the
/// blocks of language-equivalent states.
fn hopcroft(d: &Dfa, reachable: &[usize]) -> Vec<Vec<usize>> {
    let in_scope: BTreeSet<usize> = reachable.iter().copied().collect();
    let acc: BTreeSet<usize> = in_scope.intersection(d.accepting()).copied().collect();
    let rej: BTreeSet<usize> = in_scope.difference(&acc).copied().collect();

    let mut partition: Vec<BTreeSet<usize>> = Vec::new();
    let mut worklist: VecDeque<(BTreeSet<usize>, usize)> = VecDeque::new();
    for block in [acc, rej] {
        if !block.is_empty() {
            for a in 0..d.alphabet_size {
                worklist.push_back((block.clone(), a));
            }
            partition.push(block);
        }
    }

    while let Some((splitter, a)) = worklist.pop_front() {
        let preimage: BTreeSet<usize> = in_scope
            .iter()
            .copied()
            .filter(|&q| splitter.contains(&d.delta(q, a)))
            .collect();
        let mut next_partition = Vec::with_capacity(partition.len());
        for block in partition {
            let inside: BTreeSet<usize> = block.intersection(&preimage).copied().collect();
            if inside.is_empty() || inside.len() == block.len() {
                next_partition.push(block);
                continue;
            }
            let outside: BTreeSet<usize> = block.difference(&preimage).copied().collect();
            let smaller = if inside.len() <= outside.len() {
                inside.clone()
            } else {
                outside.clone()
            };
            for b in 0..d.alphabet_size {
                worklist.push_back((smaller.clone(), b));
            }
            next_partition.push(inside);
            next_partition.push(outside);
        }
        partition = next_partition;
    }

    partition.into_iter().map(|b| b.into_iter().collect()).collect()
}

/// True iff the two DFAs recognize the same language.
pub fn equivalent(a: &Dfa, b: &Dfa) -> Result<bool, AutomataError> {
    if a.alphabet_size != b.alphabet_size {
        return Err(AutomataError::AlphabetMismatch {
            a: a.alphabet_size,
            b: b.alphabet_size,
        });
    }
    Ok(a.minimized().canonical_key() == b.minimized().canonical_key())
}
