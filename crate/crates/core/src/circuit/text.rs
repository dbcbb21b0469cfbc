//! Line-oriented circuit text format (.bcirc):
//!
//! ```text
//! CIRCUIT <num_inputs> <num_outputs>
//! G0 = AND X0 X1
//! G1 = NOT G0
//! OUTPUTS G1 ZERO
//! ```
//!
//! Refs are `X<i>`, `G<j>`, `ZERO`, `ONE`; gate indices must be consecutive
//! from 0; `#` starts a comment.

use std::fmt::Write as _;

use super::{Circuit, Gate, Ref};
use crate::{content_lines, ParseError};

pub fn write_circuit(c: &Circuit) -> String {
    let mut s = String::new();
    writeln!(s, "CIRCUIT {} {}", c.num_inputs(), c.num_outputs()).unwrap();
    for (j, g) in c.gates().iter().enumerate() {
        match *g {
            Gate::And(a, b) => writeln!(s, "G{} = AND {} {}", j, fmt_ref(a), fmt_ref(b)).unwrap(),
            Gate::Or(a, b) => writeln!(s, "G{} = OR {} {}", j, fmt_ref(a), fmt_ref(b)).unwrap(),
            Gate::Not(a) => writeln!(s, "G{} = NOT {}", j, fmt_ref(a)).unwrap(),
        }
    }
    s.push_str("OUTPUTS");
    for &o in c.outputs() {
        s.push(' ');
        s.push_str(&fmt_ref(o));
    }
    s.push('\n');
    s
}

fn fmt_ref(r: Ref) -> String {
    match r {
        Ref::Input(i) => format!("X{i}"),
        Ref::Gate(j) => format!("G{j}"),
        Ref::Const0 => "ZERO".to_string(),
        Ref::Const1 => "ONE".to_string(),
    }
}

fn parse_ref(tok: &str, line: usize) -> Result<Ref, ParseError> {
    match tok {
        "ZERO" => Ok(Ref::Const0),
        "ONE" => Ok(Ref::Const1),
        _ => {
            let (kind, idx) = tok.split_at(1);
            let i: usize = idx
                .parse()
                .map_err(|_| ParseError::new(line, format!("bad ref `{tok}`")))?;
            match kind {
                "X" => Ok(Ref::Input(i)),
                "G" => Ok(Ref::Gate(i)),
                _ => Err(ParseError::new(line, format!("bad ref `{tok}`"))),
            }
        }
    }
}

pub fn parse_circuit(text: &str) -> Result<Circuit, ParseError> {
    let mut lines = content_lines(text);
    parse_circuit_lines(&mut lines)
}

/// Parses one CIRCUIT block from a line stream; used both standalone and for
/// the embedded blocks of representation bundles.
pub(crate) fn parse_circuit_lines<'a>(
    lines: &mut impl Iterator<Item = (usize, &'a str)>,
) -> Result<Circuit, ParseError> {
    let (ln, header) = lines
        .next()
        .ok_or_else(|| ParseError::new(0, "missing CIRCUIT header"))?;
    let toks: Vec<&str> = header.split_whitespace().collect();
    if toks.len() != 3 || toks[0] != "CIRCUIT" {
        return Err(ParseError::new(ln, "expected `CIRCUIT <inputs> <outputs>`"));
    }
    let num_inputs: usize = toks[1]
        .parse()
        .map_err(|_| ParseError::new(ln, "bad input count"))?;
    let num_outputs: usize = toks[2]
        .parse()
        .map_err(|_| ParseError::new(ln, "bad output count"))?;

    let mut gates: Vec<Gate> = Vec::new();
    for (ln, line) in lines {
        let toks: Vec<&str> = line.split_whitespace().collect();
        if toks[0] == "OUTPUTS" {
            if toks.len() - 1 != num_outputs {
                return Err(ParseError::new(
                    ln,
                    format!("expected {} outputs, found {}", num_outputs, toks.len() - 1),
                ));
            }
            let outputs = toks[1..]
                .iter()
                .map(|t| parse_ref(t, ln))
                .collect::<Result<Vec<_>, _>>()?;
            return Circuit::new(num_inputs, gates, outputs)
                .map_err(|e| ParseError::new(ln, e.to_string()));
        }
        // G<j> = KIND <ref> [<ref>]
        if toks.len() < 4 || toks[1] != "=" {
            return Err(ParseError::new(ln, "expected `G<j> = <KIND> <ref>...`"));
        }
        let idx = match parse_ref(toks[0], ln)? {
            Ref::Gate(j) => j,
            _ => return Err(ParseError::new(ln, "gate definitions must start with G<j>")),
        };
        if idx != gates.len() {
            return Err(ParseError::new(
                ln,
                format!("gate indices must be consecutive: expected G{}", gates.len()),
            ));
        }
        let gate = match (toks[2], toks.len()) {
            ("AND", 5) => Gate::And(parse_ref(toks[3], ln)?, parse_ref(toks[4], ln)?),
            ("OR", 5) => Gate::Or(parse_ref(toks[3], ln)?, parse_ref(toks[4], ln)?),
            ("NOT", 4) => Gate::Not(parse_ref(toks[3], ln)?),
            _ => return Err(ParseError::new(ln, format!("bad gate line `{line}`"))),
        };
        gates.push(gate);
    }
    Err(ParseError::new(0, "missing OUTPUTS line"))
}
