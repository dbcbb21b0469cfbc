//! State/input encodings and register/circuit representations of DFAs.
//!
//! A representation of a DFA is a pair of circuits over an encoding of its
//! states and letters: a transition circuit `F` with `b_sigma + b_q` inputs
//! (letter bits first, then state bits, MSB-first) and `b_q` outputs, and an
//! acceptance circuit `G` with `b_q` inputs and one output. The contract is
//!
//! * `code(delta(q, x)) = F(code(x), code(q))` for every state and letter,
//! * `G(code(q)) = 1` exactly for accepting states,
//!
//! with the start state encoded as the all-zeros register value. The cost of
//! a representation is `size(F) + size(G) + b_q`.

use std::collections::HashMap;
use std::fmt::Write as _;

use crate::automata::Dfa;
use crate::bits::{format_bits, parse_bits, to_bits, to_value, width_for, Bits};
use crate::circuit::{Circuit, CircuitError, CostModel, Gate, Ref};
use crate::{content_lines, ParseError};

#[derive(Debug, Clone, thiserror::Error)]
pub enum EncodingError {
    #[error("expected {expected} codes of width {width}, got {got}")]
    BadCodeTable {
        expected: usize,
        width: usize,
        got: usize,
    },
    #[error("codes are not injective (states {0} and {1} collide)")]
    NotInjective(usize, usize),
    #[error("start state must be encoded as all zeros")]
    StartNotZero,
    #[error("circuit interface does not match encoding: {0}")]
    InterfaceMismatch(String),
    #[error("representation has no state codes")]
    MissingStateCodes,
    #[error("register width {0} exceeds extraction cap {1}")]
    WidthCapExceeded(usize, usize),
    #[error("new zero must have width {expected}, got {got}")]
    WidthMismatch { expected: usize, got: usize },
    #[error(transparent)]
    Circuit(#[from] CircuitError),
}

/// Injective maps from states and letters to fixed-width bitstrings, with the
/// start state at the all-zeros code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Encoding {
    b_q: usize,
    b_sigma: usize,
    state_code: Vec<Bits>,
    input_code: Vec<Bits>,
}

impl Encoding {
    /// Builds an encoding from explicit code tables. `start` is the state
    /// whose code must be all zeros.
    pub fn new(
        state_code: Vec<Bits>,
        input_code: Vec<Bits>,
        start: usize,
    ) -> Result<Encoding, EncodingError> {
        let b_q = state_code.first().map_or(0, Vec::len);
        let b_sigma = input_code.first().map_or(0, Vec::len);
        check_codes(&state_code, b_q)?;
        check_codes(&input_code, b_sigma)?;
        if state_code
            .get(start)
            .is_some_and(|c| c.iter().any(|&b| b))
        {
            return Err(EncodingError::StartNotZero);
        }
        Ok(Encoding {
            b_q,
            b_sigma,
            state_code,
            input_code,
        })
    }

    /// The minimal encoding of `d`: state `i` maps to the binary of `i` in
    /// `ceil(log s)` bits, letter `j` likewise in `ceil(log k)` bits. The
    /// start state must already be state 0.
    pub fn minimal(d: &Dfa) -> Encoding {
        assert_eq!(d.start(), 0, "minimal encoding requires start state 0");
        let b_q = width_for(d.num_states());
        let b_sigma = width_for(d.alphabet_size());
        Encoding {
            b_q,
            b_sigma,
            state_code: (0..d.num_states()).map(|i| to_bits(i as u64, b_q)).collect(),
            input_code: (0..d.alphabet_size())
                .map(|j| to_bits(j as u64, b_sigma))
                .collect(),
        }
    }

    pub fn b_q(&self) -> usize {
        self.b_q
    }

    pub fn b_sigma(&self) -> usize {
        self.b_sigma
    }

    pub fn state_code(&self) -> &[Bits] {
        &self.state_code
    }

    pub fn input_code(&self) -> &[Bits] {
        &self.input_code
    }

    pub fn num_states(&self) -> usize {
        self.state_code.len()
    }

    pub fn num_letters(&self) -> usize {
        self.input_code.len()
    }
}

fn check_codes(codes: &[Bits], width: usize) -> Result<(), EncodingError> {
    let mut seen: HashMap<&[bool], usize> = HashMap::new();
    for (i, c) in codes.iter().enumerate() {
        if c.len() != width {
            return Err(EncodingError::BadCodeTable {
                expected: codes.len(),
                width,
                got: c.len(),
            });
        }
        if let Some(&j) = seen.get(c.as_slice()) {
            return Err(EncodingError::NotInjective(j, i));
        }
        seen.insert(c, i);
    }
    Ok(())
}

/// An encoded-circuit representation: input codes, optional state codes, the
/// transition circuit `F`, the acceptance circuit `G`, and the cost model
/// under which its size is reported.
///
/// State codes are needed to verify against a concrete DFA; representations
/// produced by language operations carry only the semantics (register values
/// are themselves the states) and omit them.
#[derive(Debug, Clone)]
pub struct Representation {
    input_code: Vec<Bits>,
    state_code: Option<Vec<Bits>>,
    f: Circuit,
    g: Circuit,
    cost_model: CostModel,
}

impl Representation {
    /// Builds a representation under a full encoding, checking the circuit
    /// interfaces against it.
    pub fn new(
        encoding: &Encoding,
        f: Circuit,
        g: Circuit,
        cost_model: CostModel,
    ) -> Result<Representation, EncodingError> {
        if f.num_inputs() != encoding.b_sigma + encoding.b_q
            || f.num_outputs() != encoding.b_q
            || g.num_inputs() != encoding.b_q
            || g.num_outputs() != 1
        {
            return Err(EncodingError::InterfaceMismatch(format!(
                "b_sigma={} b_q={} but F is {}->{} and G is {}->{}",
                encoding.b_sigma,
                encoding.b_q,
                f.num_inputs(),
                f.num_outputs(),
                g.num_inputs(),
                g.num_outputs()
            )));
        }
        Ok(Representation {
            input_code: encoding.input_code.clone(),
            state_code: Some(encoding.state_code.clone()),
            f,
            g,
            cost_model,
        })
    }

    /// Builds a representation without state codes: the register values
    /// reachable from all-zeros are the states.
    pub fn semantic(
        input_code: Vec<Bits>,
        f: Circuit,
        g: Circuit,
        cost_model: CostModel,
    ) -> Result<Representation, EncodingError> {
        let b_sigma = input_code.first().map_or(0, Vec::len);
        check_codes(&input_code, b_sigma)?;
        if f.num_inputs() < b_sigma
            || f.num_outputs() != f.num_inputs() - b_sigma
            || g.num_inputs() != f.num_outputs()
            || g.num_outputs() != 1
        {
            return Err(EncodingError::InterfaceMismatch(format!(
                "b_sigma={} but F is {}->{} and G is {}->{}",
                b_sigma,
                f.num_inputs(),
                f.num_outputs(),
                g.num_inputs(),
                g.num_outputs()
            )));
        }
        Ok(Representation {
            input_code,
            state_code: None,
            f,
            g,
            cost_model,
        })
    }

    pub fn b_q(&self) -> usize {
        self.g.num_inputs()
    }

    pub fn b_sigma(&self) -> usize {
        self.f.num_inputs() - self.b_q()
    }

    pub fn num_letters(&self) -> usize {
        self.input_code.len()
    }

    pub fn input_code(&self) -> &[Bits] {
        &self.input_code
    }

    pub fn state_code(&self) -> Option<&[Bits]> {
        self.state_code.as_deref()
    }

    pub fn f(&self) -> &Circuit {
        &self.f
    }

    pub fn g(&self) -> &Circuit {
        &self.g
    }

    pub fn cost_model(&self) -> CostModel {
        self.cost_model
    }

    pub fn with_cost_model(mut self, cm: CostModel) -> Representation {
        self.cost_model = cm;
        self
    }

    /// Swaps in a new acceptance circuit of the same interface.
    pub fn with_g(mut self, g: Circuit) -> Representation {
        assert_eq!(g.num_inputs(), self.g.num_inputs());
        assert_eq!(g.num_outputs(), 1);
        self.g = g;
        self
    }

    /// The cost of the representation: `size(F) + size(G) + b_q`.
    pub fn bc(&self) -> usize {
        self.f.size(self.cost_model) + self.g.size(self.cost_model) + self.b_q()
    }
}

/// A concrete pair witnessing that a representation does not represent a DFA.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Violation {
    /// `F(code(letter), code(state))` is not the code of `delta(state, letter)`.
    Transition { state: usize, letter: usize },
    /// `G(code(state))` disagrees with whether `state` accepts.
    Acceptance { state: usize },
}

/// Checks both representation conditions for every (state, letter) pair of
/// `d`: transitions simulated by `F` on the codes, acceptance decided by `G`.
pub fn verify_representation(d: &Dfa, r: &Representation) -> Result<bool, EncodingError> {
    Ok(first_violation(d, r)?.is_none())
}

/// Like [`verify_representation`] but reports the first failing pair.
pub fn first_violation(d: &Dfa, r: &Representation) -> Result<Option<Violation>, EncodingError> {
    let codes = r.state_code.as_ref().ok_or(EncodingError::MissingStateCodes)?;
    if codes.len() != d.num_states() || r.input_code.len() != d.alphabet_size() {
        return Err(EncodingError::InterfaceMismatch(format!(
            "encoding covers {} states / {} letters, DFA has {} / {}",
            codes.len(),
            r.input_code.len(),
            d.num_states(),
            d.alphabet_size()
        )));
    }
    if codes[d.start()].iter().any(|&b| b) {
        return Err(EncodingError::StartNotZero);
    }
    for q in 0..d.num_states() {
        for (a, code) in r.input_code.iter().enumerate() {
            let mut input = code.clone();
            input.extend_from_slice(&codes[q]);
            let out = r.f.evaluate(&input)?;
            if out != codes[d.delta(q, a)] {
                return Ok(Some(Violation::Transition { state: q, letter: a }));
            }
        }
        let accept = r.g.evaluate(&codes[q])?[0];
        if accept != d.is_accepting(q) {
            return Ok(Some(Violation::Acceptance { state: q }));
        }
    }
    Ok(None)
}

/// Default cap on the register width accepted by [`extract_dfa`].
pub const EXTRACT_WIDTH_CAP: usize = 20;

/// Runs the circuits as an automaton: BFS over register values from
/// all-zeros, one transition per encoded letter, acceptance from `G`.
/// Returns the reachable-register DFA.
pub fn extract_dfa(r: &Representation) -> Result<Dfa, EncodingError> {
    Ok(extract_dfa_with_codes(r)?.0)
}

/// [`extract_dfa`] plus the register value backing each extracted state, so
/// the result can be rewrapped as a representation with state codes.
pub fn extract_dfa_with_codes(r: &Representation) -> Result<(Dfa, Vec<Bits>), EncodingError> {
    let b_q = r.b_q();
    if b_q > EXTRACT_WIDTH_CAP {
        return Err(EncodingError::WidthCapExceeded(b_q, EXTRACT_WIDTH_CAP));
    }
    let k = r.input_code.len();
    let mut index: HashMap<u64, usize> = HashMap::new();
    let mut codes: Vec<Bits> = Vec::new();
    let mut next: Vec<usize> = Vec::new();
    let mut accepting = Vec::new();
    index.insert(0, 0);
    codes.push(vec![false; b_q]);
    let mut frontier = 0;
    while frontier < codes.len() {
        let code = codes[frontier].clone();
        accepting.push(r.g.evaluate(&code)?[0]);
        for letter_code in &r.input_code {
            let mut input = letter_code.clone();
            input.extend_from_slice(&code);
            let out = r.f.evaluate(&input)?;
            let v = to_value(&out);
            let id = *index.entry(v).or_insert_with(|| {
                codes.push(out);
                codes.len() - 1
            });
            next.push(id);
        }
        frontier += 1;
    }
    let acc = (0..codes.len()).filter(|&q| accepting[q]);
    let rows = if k == 0 {
        vec![Vec::new(); codes.len()]
    } else {
        next.chunks(k).map(<[usize]>::to_vec).collect()
    };
    let d = Dfa::new(rows, 0, acc, k).expect("extracted table is closed");
    Ok((d, codes))
}

/// XOR-relabels the register space by `new_zero`, so the register value
/// `new_zero` of the input becomes all-zeros in the result. Adds at most
/// `3 * b_q` NOT gates: at `F`'s state inputs, `F`'s outputs, and `G`'s
/// inputs, skipping positions where `new_zero` is 0 and folding negations of
/// constants and double negations.
pub fn normalize_start_zero(
    r: &Representation,
    new_zero: &[bool],
) -> Result<Representation, EncodingError> {
    let b_q = r.b_q();
    if new_zero.len() != b_q {
        return Err(EncodingError::WidthMismatch {
            expected: b_q,
            got: new_zero.len(),
        });
    }
    let b_sigma = r.b_sigma();
    let mut f_in = vec![false; b_sigma + b_q];
    f_in[b_sigma..].copy_from_slice(new_zero);
    let f = relabel_circuit(&r.f, &f_in, new_zero);
    let g = relabel_circuit(&r.g, new_zero, &[false]);
    let state_code = r.state_code.as_ref().map(|codes| {
        codes
            .iter()
            .map(|c| c.iter().zip(new_zero).map(|(&a, &b)| a ^ b).collect())
            .collect()
    });
    Ok(Representation {
        input_code: r.input_code.clone(),
        state_code,
        f,
        g,
        cost_model: r.cost_model,
    })
}

/// Rewrites `c` so that flipped inputs are read negated and flipped outputs
/// are produced negated. Inserts one NOT per flipped input that is actually
/// read and at most one NOT per flipped output.
fn relabel_circuit(c: &Circuit, input_flip: &[bool], output_flip: &[bool]) -> Circuit {
    let mut gates: Vec<Gate> = Vec::new();
    // One NOT per flipped input that some gate or output actually reads.
    let mut input_map: HashMap<usize, Ref> = HashMap::new();
    let used = used_inputs(c);
    for (i, &flip) in input_flip.iter().enumerate() {
        if flip && used[i] {
            gates.push(Gate::Not(Ref::Input(i)));
            input_map.insert(i, Ref::Gate(gates.len() - 1));
        }
    }
    let remap = |r: Ref| match r {
        Ref::Input(i) => *input_map.get(&i).unwrap_or(&Ref::Input(i)),
        Ref::Gate(j) => Ref::Gate(j + input_map.len()),
        c => c,
    };
    for g in c.gates() {
        gates.push(match *g {
            Gate::And(a, b) => Gate::And(remap(a), remap(b)),
            Gate::Or(a, b) => Gate::Or(remap(a), remap(b)),
            Gate::Not(a) => Gate::Not(remap(a)),
        });
    }
    let mut outputs = Vec::with_capacity(c.num_outputs());
    for (&o, &flip) in c.outputs().iter().zip(output_flip) {
        let o = remap(o);
        outputs.push(if flip { negate(&mut gates, o) } else { o });
    }
    Circuit::new(c.num_inputs(), gates, outputs).expect("relabeling preserves validity")
}

/// A ref computing NOT `r`, folding constants and double negations instead
/// of stacking a new gate where possible.
fn negate(gates: &mut Vec<Gate>, r: Ref) -> Ref {
    match r {
        Ref::Const0 => Ref::Const1,
        Ref::Const1 => Ref::Const0,
        Ref::Gate(j) => {
            if let Gate::Not(inner) = gates[j] {
                return inner;
            }
            gates.push(Gate::Not(r));
            Ref::Gate(gates.len() - 1)
        }
        Ref::Input(_) => {
            gates.push(Gate::Not(r));
            Ref::Gate(gates.len() - 1)
        }
    }
}

fn used_inputs(c: &Circuit) -> Vec<bool> {
    let mut used = vec![false; c.num_inputs()];
    let mut mark = |r: Ref| {
        if let Ref::Input(i) = r {
            used[i] = true;
        }
    };
    for g in c.gates() {
        match *g {
            Gate::And(a, b) | Gate::Or(a, b) => {
                mark(a);
                mark(b);
            }
            Gate::Not(a) => mark(a),
        }
    }
    for &o in c.outputs() {
        mark(o);
    }
    used
}

/// Serializes a representation bundle (.bcrep): header, code tables, then
/// the two circuits under `TRANSITION` and `ACCEPT` headers.
pub fn write_representation(r: &Representation) -> String {
    let mut s = String::new();
    let num_states = r.state_code.as_ref().map_or(0, Vec::len);
    writeln!(
        s,
        "BCREP {} {} {} {}",
        r.b_sigma(),
        r.b_q(),
        r.input_code.len(),
        num_states
    )
    .unwrap();
    for (a, code) in r.input_code.iter().enumerate() {
        writeln!(s, "INPUTCODE {} {}", a, format_bits(code)).unwrap();
    }
    if let Some(codes) = &r.state_code {
        for (q, code) in codes.iter().enumerate() {
            writeln!(s, "STATECODE {} {}", q, format_bits(code)).unwrap();
        }
    }
    s.push_str("TRANSITION\n");
    s.push_str(&crate::circuit::text::write_circuit(&r.f));
    s.push_str("ACCEPT\n");
    s.push_str(&crate::circuit::text::write_circuit(&r.g));
    s
}

/// Parses a representation bundle (.bcrep). The state-code table is optional
/// (header `<s>` of 0 means none); the cost model defaults to
/// gates-plus-outputs and is not part of the format.
pub fn parse_representation(text: &str) -> Result<Representation, ParseError> {
    let mut lines = content_lines(text).peekable();
    let (ln, header) = lines
        .next()
        .ok_or_else(|| ParseError::new(0, "missing BCREP header"))?;
    let toks: Vec<&str> = header.split_whitespace().collect();
    if toks.len() != 5 || toks[0] != "BCREP" {
        return Err(ParseError::new(ln, "expected `BCREP <b_sigma> <b_q> <k> <s>`"));
    }
    let nums: Vec<usize> = toks[1..]
        .iter()
        .map(|t| t.parse().map_err(|_| ParseError::new(ln, "bad header number")))
        .collect::<Result<_, _>>()?;
    let (b_sigma, b_q, k, s) = (nums[0], nums[1], nums[2], nums[3]);

    let mut input_code: Vec<Option<Bits>> = vec![None; k];
    let mut state_code: Vec<Option<Bits>> = vec![None; s];
    let mut last_ln = ln;
    while let Some(&(ln, line)) = lines.peek() {
        last_ln = ln;
        let toks: Vec<&str> = line.split_whitespace().collect();
        let (table, width, name): (&mut Vec<Option<Bits>>, usize, &str) = match toks[0] {
            "INPUTCODE" => (&mut input_code, b_sigma, "letter"),
            "STATECODE" => (&mut state_code, b_q, "state"),
            _ => break,
        };
        if toks.len() != 3 {
            return Err(ParseError::new(ln, format!("expected `{} <index> <bits>`", toks[0])));
        }
        let idx: usize = toks[1]
            .parse()
            .map_err(|_| ParseError::new(ln, format!("bad {name} index")))?;
        let bits = parse_bits(toks[2])
            .ok_or_else(|| ParseError::new(ln, format!("bad bit string `{}`", toks[2])))?;
        if bits.len() != width {
            return Err(ParseError::new(
                ln,
                format!("code width {} does not match header ({width})", bits.len()),
            ));
        }
        let slot = table
            .get_mut(idx)
            .ok_or_else(|| ParseError::new(ln, format!("{name} index {idx} out of range")))?;
        if slot.replace(bits).is_some() {
            return Err(ParseError::new(ln, format!("duplicate code for {name} {idx}")));
        }
        lines.next();
    }
    let input_code: Vec<Bits> = input_code
        .into_iter()
        .collect::<Option<_>>()
        .ok_or_else(|| ParseError::new(last_ln, "missing INPUTCODE line"))?;
    let state_code: Vec<Bits> = state_code
        .into_iter()
        .collect::<Option<_>>()
        .ok_or_else(|| ParseError::new(last_ln, "missing STATECODE line"))?;

    let f = expect_block(&mut lines, "TRANSITION")?;
    let g = expect_block(&mut lines, "ACCEPT")?;
    if let Some((ln, line)) = lines.next() {
        return Err(ParseError::new(ln, format!("unexpected trailing line `{line}`")));
    }

    let build = if s == 0 {
        Representation::semantic(input_code, f, g, CostModel::default())
    } else {
        let start = state_code
            .iter()
            .position(|c| c.iter().all(|&b| !b))
            .unwrap_or(0);
        Encoding::new(state_code, input_code, start)
            .and_then(|e| Representation::new(&e, f, g, CostModel::default()))
    };
    build.map_err(|e| ParseError::new(last_ln, e.to_string()))
}

fn expect_block<'a>(
    lines: &mut impl Iterator<Item = (usize, &'a str)>,
    header: &str,
) -> Result<Circuit, ParseError> {
    match lines.next() {
        Some((_, line)) if line == header => crate::circuit::text::parse_circuit_lines(lines),
        Some((ln, line)) => Err(ParseError::new(
            ln,
            format!("expected `{header}`, found `{line}`"),
        )),
        None => Err(ParseError::new(0, format!("missing `{header}` block"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automata::equivalent;
    use crate::circuit::unroll;
    use crate::synthesis::represent_dfa;

    fn shift_rep(n: usize) -> Representation {
        // The register holds the last n letters, newest in the MSB: F drops
        // the oldest (LSB) bit and feeds the letter in at the top, G reads
        // the oldest bit. Input 0 is the letter, inputs 1..=n the state.
        let f = Circuit::wires(1 + n, (0..n).map(Ref::Input).collect()).unwrap();
        let g = Circuit::wires(n, vec![Ref::Input(n - 1)]).unwrap();
        let e = Encoding::minimal(&Dfa::shift_register(n));
        Representation::new(&e, f, g, CostModel::GatesOnly).unwrap()
    }

    #[test]
    fn shift_register_representation_verifies() {
        let d = Dfa::shift_register(2);
        let r = shift_rep(2);
        assert!(verify_representation(&d, &r).unwrap());
        // Negating G flips acceptance.
        let bad = Representation {
            g: Circuit::new(2, vec![Gate::Not(Ref::Input(0))], vec![Ref::Gate(0)]).unwrap(),
            ..r.clone()
        };
        assert_eq!(
            first_violation(&d, &bad).unwrap(),
            Some(Violation::Acceptance { state: 0 })
        );
    }

    #[test]
    fn shift_register_bc_values() {
        let r = shift_rep(3);
        assert_eq!(r.bc(), 3); // gate-free; only the register counts
        assert_eq!(r.clone().with_cost_model(CostModel::GatesPlusOutputs).bc(), 7);
    }

    #[test]
    fn never_accepting_singleton_has_bc_zero() {
        let d = Dfa::new(vec![vec![0]], 0, [], 1).unwrap();
        let e = Encoding::minimal(&d);
        assert_eq!(e.b_q(), 0);
        let f = Circuit::wires(0, vec![]).unwrap();
        let g = Circuit::wires(0, vec![Ref::Const0]).unwrap();
        let r = Representation::new(&e, f, g, CostModel::GatesPlusOutputs).unwrap();
        assert!(verify_representation(&d, &r).unwrap());
        assert_eq!(r.bc(), 0);
    }

    #[test]
    fn minimal_encoding_tables() {
        let d = Dfa::counter(3, [0]);
        let e = Encoding::minimal(&d);
        assert_eq!(e.b_q(), 2);
        assert_eq!(
            e.state_code(),
            &[vec![false, false], vec![false, true], vec![true, false]]
        );
        let one = Dfa::new(vec![vec![0]], 0, [0], 1).unwrap();
        let e = Encoding::minimal(&one);
        assert_eq!((e.b_q(), e.b_sigma()), (0, 0));
    }

    #[test]
    fn extract_round_trips_shift_register() {
        let d = Dfa::shift_register(2);
        let r = shift_rep(2);
        let x = extract_dfa(&r).unwrap();
        assert_eq!(x.num_states(), 4);
        assert!(equivalent(&d, &x).unwrap());
    }

    #[test]
    fn extract_identity_f_is_stuck_at_zero() {
        let f = Circuit::wires(3, vec![Ref::Input(1), Ref::Input(2)]).unwrap();
        let g = Circuit::wires(2, vec![Ref::Const1]).unwrap();
        let r = Representation::semantic(vec![vec![false]], f, g, CostModel::default()).unwrap();
        assert_eq!(extract_dfa(&r).unwrap().num_states(), 1);
    }

    #[test]
    fn unroll_matches_dfa_runs() {
        let d = Dfa::shift_register(2);
        let r = shift_rep(2);
        for len in 0..=6usize {
            for w in 0..1u32 << len {
                let word: Vec<usize> = (0..len).map(|i| ((w >> i) & 1) as usize).collect();
                let u = unroll(&r.f, &r.g, 1, 2, len).unwrap();
                let input: Vec<bool> = word.iter().map(|&a| a == 1).collect();
                assert_eq!(u.evaluate(&input).unwrap()[0], d.run(&word).unwrap());
            }
        }
    }

    #[test]
    fn normalize_identity_zero_adds_nothing() {
        let r = shift_rep(2);
        let n = normalize_start_zero(&r, &[false, false]).unwrap();
        assert_eq!(n.f.gate_count(), r.f.gate_count());
        assert_eq!(n.g.gate_count(), r.g.gate_count());
    }

    #[test]
    fn normalize_moves_start_and_bounds_growth() {
        let d = Dfa::counter(4, [2]);
        let r = represent_dfa(&d, &Encoding::minimal(&d), CostModel::GatesPlusOutputs).unwrap();
        let n = normalize_start_zero(&r, &[true, true]).unwrap();
        for cm in [CostModel::GatesOnly, CostModel::GatesPlusOutputs] {
            assert!(
                n.f.size(cm) + n.g.size(cm) <= r.f.size(cm) + r.g.size(cm) + 3 * r.b_q(),
                "growth exceeds 3*b_q under {cm:?}"
            );
        }
        // The new machine, started at all-zeros, runs the old one from
        // register value 11 (state 3 of the counter).
        let moved = Dfa::new(
            (0..4)
                .map(|q| (0..d.alphabet_size()).map(|a| d.delta(q, a)).collect())
                .collect(),
            3,
            d.accepting().iter().copied(),
            d.alphabet_size(),
        )
        .unwrap();
        assert!(equivalent(&extract_dfa(&n).unwrap(), &moved).unwrap());
    }

    #[test]
    fn bundle_round_trip() {
        let r = shift_rep(2);
        let text = write_representation(&r);
        let back = parse_representation(&text).unwrap();
        assert_eq!(back.input_code(), r.input_code());
        assert_eq!(back.state_code(), r.state_code());
        assert_eq!(write_representation(&back), text);
        // Semantic bundles omit state codes.
        let s = Representation::semantic(
            r.input_code.clone(),
            r.f.clone(),
            r.g.clone(),
            CostModel::default(),
        )
        .unwrap();
        let text = write_representation(&s);
        assert!(!text.contains("STATECODE"));
        let back = parse_representation(&text).unwrap();
        assert!(back.state_code().is_none());
    }

    #[test]
    fn bundle_parse_errors_carry_line_numbers() {
        let err = parse_representation("BCREP 1 2 2\n").unwrap_err();
        assert_eq!(err.line, 1);
        let text = "BCREP 1 2 2 0\nINPUTCODE 0 0\nINPUTCODE 1 11\nTRANSITION\n";
        let err = parse_representation(text).unwrap_err();
        assert_eq!(err.line, 3);
    }
}
