//! Finite automata represented as Boolean circuits.
//!
//! The crate has three layers:
//!
//! * [`automata`] — classical DFA/NFA algorithms used as semantic oracles,
//! * [`circuit`] — a DAG circuit model in the standard base (AND, OR, NOT)
//!   together with [`encoding`] and [`synthesis`], which turn automata into
//!   register/circuit representations and back,
//! * [`bounds`] and [`oracle`] — closed-form bound evaluators and exhaustive
//!   ground-truth searches (minimal circuits, exact register complexity for
//!   tiny automata, brute-force SAT).

pub mod automata;
pub mod bits;
pub mod bounds;
pub mod circuit;
pub mod encoding;
pub mod experiment;
pub mod oracle;
pub mod synthesis;

pub use automata::{Dfa, Nfa, Word};
pub use circuit::{Circuit, CostModel, Gate, Ref, TruthTable};
pub use encoding::{Encoding, Representation};

/// Error for the line-oriented text formats (.dfa, .nfa, .bcirc, .bcrep, DIMACS).
#[derive(Debug, Clone, thiserror::Error)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

impl ParseError {
    pub fn new(line: usize, message: impl Into<String>) -> Self {
        ParseError {
            line,
            message: message.into(),
        }
    }
}

/// Content lines of a text block: trimmed, `#`-comment-stripped, 1-based.
pub(crate) fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, l)| {
        let l = match l.find('#') {
            Some(p) => &l[..p],
            None => l,
        }
        .trim();
        if l.is_empty() {
            None
        } else {
            Some((i + 1, l))
        }
    })
}
