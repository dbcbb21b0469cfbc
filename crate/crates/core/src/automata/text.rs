//! Text formats for automata.
//!
//! `.dfa`:
//! ```text
//! DFA <s> <k>
//! START <id>
//! ACCEPT <id>*
//! T <state> <letter> <next>     # exactly s*k lines
//! ```
//!
//! `.nfa`: `NFA <n> <k>`, `STARTS <id>+`, `ACCEPT <id>*`, then any number of
//! distinct `T` lines. Duplicate and missing transitions are rejected.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use super::{Dfa, Nfa};
use crate::{content_lines, ParseError};

pub fn write_dfa(d: &Dfa) -> String {
    let mut s = String::new();
    writeln!(s, "DFA {} {}", d.num_states(), d.alphabet_size()).unwrap();
    writeln!(s, "START {}", d.start()).unwrap();
    s.push_str("ACCEPT");
    for q in d.accepting() {
        write!(s, " {q}").unwrap();
    }
    s.push('\n');
    for q in 0..d.num_states() {
        for a in 0..d.alphabet_size() {
            writeln!(s, "T {} {} {}", q, a, d.delta(q, a)).unwrap();
        }
    }
    s
}

pub fn write_nfa(n: &Nfa) -> String {
    let mut s = String::new();
    writeln!(s, "NFA {} {}", n.num_states(), n.alphabet_size()).unwrap();
    s.push_str("STARTS");
    for q in n.starts() {
        write!(s, " {q}").unwrap();
    }
    s.push('\n');
    s.push_str("ACCEPT");
    for q in n.accepting() {
        write!(s, " {q}").unwrap();
    }
    s.push('\n');
    for &(q, a, r) in n.transitions() {
        writeln!(s, "T {q} {a} {r}").unwrap();
    }
    s
}

fn parse_ids(toks: &[&str], ln: usize) -> Result<Vec<usize>, ParseError> {
    toks.iter()
        .map(|t| {
            t.parse()
                .map_err(|_| ParseError::new(ln, format!("bad id `{t}`")))
        })
        .collect()
}

pub fn parse_dfa(text: &str) -> Result<Dfa, ParseError> {
    let mut lines = content_lines(text);

    let (ln, header) = lines.next().ok_or_else(|| ParseError::new(0, "empty file"))?;
    let toks: Vec<&str> = header.split_whitespace().collect();
    if toks.len() != 3 || toks[0] != "DFA" {
        return Err(ParseError::new(ln, "expected `DFA <s> <k>`"));
    }
    let [s, k]: [usize; 2] = parse_ids(&toks[1..], ln)?.try_into().unwrap();
    if s == 0 || k == 0 {
        return Err(ParseError::new(ln, "state and alphabet counts must be positive"));
    }

    let (ln, start_line) = lines
        .next()
        .ok_or_else(|| ParseError::new(0, "missing START line"))?;
    let toks: Vec<&str> = start_line.split_whitespace().collect();
    if toks.len() != 2 || toks[0] != "START" {
        return Err(ParseError::new(ln, "expected `START <id>`"));
    }
    let start = parse_ids(&toks[1..], ln)?[0];

    let (aln, accept_line) = lines
        .next()
        .ok_or_else(|| ParseError::new(0, "missing ACCEPT line"))?;
    let toks: Vec<&str> = accept_line.split_whitespace().collect();
    if toks[0] != "ACCEPT" {
        return Err(ParseError::new(aln, "expected `ACCEPT <id>*`"));
    }
    let accepting = parse_ids(&toks[1..], aln)?;

    let mut table: Vec<Vec<Option<usize>>> = vec![vec![None; k]; s];
    let mut last_ln = aln;
    for (ln, line) in lines {
        last_ln = ln;
        let toks: Vec<&str> = line.split_whitespace().collect();
        if toks.len() != 4 || toks[0] != "T" {
            return Err(ParseError::new(ln, "expected `T <state> <letter> <next>`"));
        }
        let [q, a, r]: [usize; 3] = parse_ids(&toks[1..], ln)?.try_into().unwrap();
        if q >= s || r >= s {
            return Err(ParseError::new(ln, format!("state out of range in `{line}`")));
        }
        if a >= k {
            return Err(ParseError::new(ln, format!("letter out of range in `{line}`")));
        }
        if table[q][a].is_some() {
            return Err(ParseError::new(ln, format!("duplicate transition ({q}, {a})")));
        }
        table[q][a] = Some(r);
    }
    let mut transitions = Vec::with_capacity(s);
    for (q, row) in table.into_iter().enumerate() {
        let mut out = Vec::with_capacity(k);
        for (a, t) in row.into_iter().enumerate() {
            out.push(t.ok_or_else(|| {
                ParseError::new(last_ln, format!("missing transition ({q}, {a})"))
            })?);
        }
        transitions.push(out);
    }
    Dfa::new(transitions, start, accepting, k).map_err(|e| ParseError::new(ln, e.to_string()))
}

pub fn parse_nfa(text: &str) -> Result<Nfa, ParseError> {
    let mut lines = content_lines(text);

    let (ln, header) = lines.next().ok_or_else(|| ParseError::new(0, "empty file"))?;
    let toks: Vec<&str> = header.split_whitespace().collect();
    if toks.len() != 3 || toks[0] != "NFA" {
        return Err(ParseError::new(ln, "expected `NFA <n> <k>`"));
    }
    let [n, k]: [usize; 2] = parse_ids(&toks[1..], ln)?.try_into().unwrap();

    let (sln, starts_line) = lines
        .next()
        .ok_or_else(|| ParseError::new(0, "missing STARTS line"))?;
    let toks: Vec<&str> = starts_line.split_whitespace().collect();
    if toks[0] != "STARTS" || toks.len() < 2 {
        return Err(ParseError::new(sln, "expected `STARTS <id>+`"));
    }
    let starts = parse_ids(&toks[1..], sln)?;

    let (aln, accept_line) = lines
        .next()
        .ok_or_else(|| ParseError::new(0, "missing ACCEPT line"))?;
    let toks: Vec<&str> = accept_line.split_whitespace().collect();
    if toks[0] != "ACCEPT" {
        return Err(ParseError::new(aln, "expected `ACCEPT <id>*`"));
    }
    let accepting = parse_ids(&toks[1..], aln)?;

    let mut transitions: BTreeSet<(usize, usize, usize)> = BTreeSet::new();
    let mut final_ln = aln;
    for (ln, line) in lines {
        final_ln = ln;
        let toks: Vec<&str> = line.split_whitespace().collect();
        if toks.len() != 4 || toks[0] != "T" {
            return Err(ParseError::new(ln, "expected `T <state> <letter> <next>`"));
        }
        let [q, a, r]: [usize; 3] = parse_ids(&toks[1..], ln)?.try_into().unwrap();
        if !transitions.insert((q, a, r)) {
            return Err(ParseError::new(ln, format!("duplicate transition ({q}, {a}, {r})")));
        }
    }
    Nfa::new(n, k, transitions, starts, accepting)
        .map_err(|e| ParseError::new(final_ln, e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dfa_round_trip() {
        let d = Dfa::shift_register(2);
        let txt = write_dfa(&d);
        let back = parse_dfa(&txt).unwrap();
        assert_eq!(d, back);
    }

    #[test]
    fn nfa_round_trip() {
        let n = Dfa::shift_register(2).reversed();
        let txt = write_nfa(&n);
        assert_eq!(parse_nfa(&txt).unwrap(), n);
    }

    #[test]
    fn rejects_duplicates_and_missing() {
        let txt = "DFA 1 1\nSTART 0\nACCEPT 0\nT 0 0 0\nT 0 0 0\n";
        assert!(parse_dfa(txt).is_err());
        let txt = "DFA 2 1\nSTART 0\nACCEPT\nT 0 0 1\n";
        assert!(parse_dfa(txt).is_err());
        let txt = "NFA 2 2\nSTARTS 0\nACCEPT 1\nT 0 1 1\nT 0 1 1\n";
        assert!(parse_nfa(txt).is_err());
    }

    #[test]
    fn comments_allowed() {
        let txt = "# header\nDFA 1 1\nSTART 0\nACCEPT\nT 0 0 0 # loop\n";
        let d = parse_dfa(txt).unwrap();
        assert_eq!(d.num_states(), 1);
    }
}
