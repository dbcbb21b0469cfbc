//! Classical automata: complete DFAs, epsilon-free NFAs, language operations,
//! Hopcroft minimization and canonical forms. These are the semantic oracles
//! every circuit construction is checked against.

mod enumerate;
mod minimize;
mod ops;
mod sample;
mod text;

pub use enumerate::{enumerate_minimal_dfas, MinimalDfaIter, DEFAULT_ENUM_BUDGET};
pub use minimize::equivalent;
pub use ops::{concat_nfa, product, star_nfa, subset_construct};
pub use sample::random_dfa;
pub use text::{parse_dfa, parse_nfa, write_dfa, write_nfa};

use std::collections::BTreeSet;

/// A letter is a dense id below the alphabet size.
pub type Letter = usize;

/// An input word over letter ids.
pub type Word = Vec<Letter>;

#[derive(Debug, Clone, thiserror::Error)]
pub enum AutomataError {
    #[error("letter {letter} out of range for alphabet of size {alphabet_size}")]
    LetterOutOfRange { letter: usize, alphabet_size: usize },
    #[error("state {state} out of range for {num_states} states")]
    StateOutOfRange { state: usize, num_states: usize },
    #[error("alphabet mismatch: {a} vs {b}")]
    AlphabetMismatch { a: usize, b: usize },
    #[error("incomplete transition table: missing ({state}, {letter})")]
    MissingTransition { state: usize, letter: usize },
    #[error("enumeration needs budget {required}, configured {budget}")]
    EnumerationBudget { required: u128, budget: u128 },
    #[error("subset construction over {0} states exceeds the supported width")]
    TooManyNfaStates(usize),
}

/// A complete deterministic finite automaton over a dense alphabet.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dfa {
    num_states: usize,
    alphabet_size: usize,
    /// next[state * alphabet_size + letter]
    next: Vec<usize>,
    start: usize,
    accepting: BTreeSet<usize>,
}

impl Dfa {
    /// `transitions[q][a]` is the successor of state `q` on letter `a`.
    pub fn new(
        transitions: Vec<Vec<usize>>,
        start: usize,
        accepting: impl IntoIterator<Item = usize>,
        alphabet_size: usize,
    ) -> Result<Self, AutomataError> {
        let num_states = transitions.len();
        assert!(num_states > 0, "a complete DFA has at least one state");
        let mut next = Vec::with_capacity(num_states * alphabet_size);
        for (q, row) in transitions.iter().enumerate() {
            if row.len() != alphabet_size {
                return Err(AutomataError::MissingTransition {
                    state: q,
                    letter: row.len(),
                });
            }
            for &t in row {
                if t >= num_states {
                    return Err(AutomataError::StateOutOfRange {
                        state: t,
                        num_states,
                    });
                }
                next.push(t);
            }
        }
        if start >= num_states {
            return Err(AutomataError::StateOutOfRange {
                state: start,
                num_states,
            });
        }
        let accepting: BTreeSet<usize> = accepting.into_iter().collect();
        if let Some(&q) = accepting.iter().find(|&&q| q >= num_states) {
            return Err(AutomataError::StateOutOfRange {
                state: q,
                num_states,
            });
        }
        Ok(Dfa {
            num_states,
            alphabet_size,
            next,
            start,
            accepting,
        })
    }

    pub fn num_states(&self) -> usize {
        self.num_states
    }

    pub fn alphabet_size(&self) -> usize {
        self.alphabet_size
    }

    pub fn start(&self) -> usize {
        self.start
    }

    pub fn accepting(&self) -> &BTreeSet<usize> {
        &self.accepting
    }

    pub fn is_accepting(&self, q: usize) -> bool {
        self.accepting.contains(&q)
    }

    pub fn delta(&self, q: usize, a: Letter) -> usize {
        self.next[q * self.alphabet_size + a]
    }

    /// Runs the word from the start state; true iff the final state accepts.
    pub fn run(&self, w: &[Letter]) -> Result<bool, AutomataError> {
        let mut q = self.start;
        for &a in w {
            if a >= self.alphabet_size {
                return Err(AutomataError::LetterOutOfRange {
                    letter: a,
                    alphabet_size: self.alphabet_size,
                });
            }
            q = self.delta(q, a);
        }
        Ok(self.is_accepting(q))
    }

    /// Same language, accepting set flipped.
    pub fn complemented(&self) -> Dfa {
        let mut d = self.clone();
        d.accepting = (0..d.num_states).filter(|q| !self.is_accepting(*q)).collect();
        d
    }

    /// NFA for the reversed language: arrows flipped, starts = old accepting,
    /// the old start is the only accepting state. Has exactly k*s transitions.
    pub fn reversed(&self) -> Nfa {
        let mut transitions = BTreeSet::new();
        for q in 0..self.num_states {
            for a in 0..self.alphabet_size {
                transitions.insert((self.delta(q, a), a, q));
            }
        }
        Nfa {
            num_states: self.num_states,
            alphabet_size: self.alphabet_size,
            transitions,
            starts: self.accepting.clone(),
            accepting: [self.start].into_iter().collect(),
        }
    }

    /// The shift-register DFA over {0,1} accepting words whose n-th letter
    /// from the end is 1. State ids encode the last n letters, newest letter
    /// in the most significant bit; 2^n states.
    pub fn shift_register(n: usize) -> Dfa {
        assert!(n >= 1 && n <= 20);
        let s = 1usize << n;
        let transitions = (0..s)
            .map(|v| (0..2).map(|x| (v >> 1) | (x << (n - 1))).collect())
            .collect();
        let accepting = (0..s).filter(|v| v & 1 == 1);
        Dfa::new(transitions, 0, accepting, 2).unwrap()
    }

    /// One-letter cyclic counter 0 -> 1 -> ... -> s-1 -> 0.
    pub fn counter(s: usize, accepting: impl IntoIterator<Item = usize>) -> Dfa {
        let transitions = (0..s).map(|q| vec![(q + 1) % s]).collect();
        Dfa::new(transitions, 0, accepting, 1).unwrap()
    }
}

/// A nondeterministic automaton without epsilon transitions. The start is a
/// set of states, which reversal needs; it may be empty (empty language).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Nfa {
    num_states: usize,
    alphabet_size: usize,
    transitions: BTreeSet<(usize, Letter, usize)>,
    starts: BTreeSet<usize>,
    accepting: BTreeSet<usize>,
}

impl Nfa {
    pub fn new(
        num_states: usize,
        alphabet_size: usize,
        transitions: impl IntoIterator<Item = (usize, Letter, usize)>,
        starts: impl IntoIterator<Item = usize>,
        accepting: impl IntoIterator<Item = usize>,
    ) -> Result<Self, AutomataError> {
        let transitions: BTreeSet<(usize, Letter, usize)> = transitions.into_iter().collect();
        let starts: BTreeSet<usize> = starts.into_iter().collect();
        let accepting: BTreeSet<usize> = accepting.into_iter().collect();
        for &(q, a, r) in &transitions {
            if q >= num_states || r >= num_states {
                return Err(AutomataError::StateOutOfRange {
                    state: q.max(r),
                    num_states,
                });
            }
            if a >= alphabet_size {
                return Err(AutomataError::LetterOutOfRange {
                    letter: a,
                    alphabet_size,
                });
            }
        }
        for &q in starts.iter().chain(&accepting) {
            if q >= num_states {
                return Err(AutomataError::StateOutOfRange {
                    state: q,
                    num_states,
                });
            }
        }
        Ok(Nfa {
            num_states,
            alphabet_size,
            transitions,
            starts,
            accepting,
        })
    }

    /// Views a DFA as an NFA with a single start state.
    pub fn from_dfa(d: &Dfa) -> Nfa {
        let transitions = (0..d.num_states)
            .flat_map(|q| (0..d.alphabet_size).map(move |a| (q, a, d.delta(q, a))))
            .collect();
        Nfa {
            num_states: d.num_states,
            alphabet_size: d.alphabet_size,
            transitions,
            starts: [d.start].into_iter().collect(),
            accepting: d.accepting.clone(),
        }
    }

    pub fn num_states(&self) -> usize {
        self.num_states
    }

    pub fn alphabet_size(&self) -> usize {
        self.alphabet_size
    }

    pub fn transitions(&self) -> &BTreeSet<(usize, Letter, usize)> {
        &self.transitions
    }

    /// Number of transitions (the symbol `t` of the size bounds).
    pub fn transition_count(&self) -> usize {
        self.transitions.len()
    }

    pub fn starts(&self) -> &BTreeSet<usize> {
        &self.starts
    }

    pub fn accepting(&self) -> &BTreeSet<usize> {
        &self.accepting
    }

    pub fn run(&self, w: &[Letter]) -> Result<bool, AutomataError> {
        let mut current: BTreeSet<usize> = self.starts.clone();
        for &a in w {
            if a >= self.alphabet_size {
                return Err(AutomataError::LetterOutOfRange {
                    letter: a,
                    alphabet_size: self.alphabet_size,
                });
            }
            current = self
                .transitions
                .iter()
                .filter(|&&(q, x, _)| x == a && current.contains(&q))
                .map(|&(_, _, r)| r)
                .collect();
        }
        Ok(current.iter().any(|q| self.accepting.contains(q)))
    }
}
