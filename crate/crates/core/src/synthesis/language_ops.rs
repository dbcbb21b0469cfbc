//! Language operations on representations: boolean combinations by parallel
//! composition, reversal/star by determinizing the classical NFA, and
//! concatenation by grafting a bit-vector block for the second language onto
//! the first representation.

use super::nfa_circuit::nfa_to_circuit;
use super::SynthesisError;
use crate::automata::{star_nfa, Dfa};
use crate::bits::to_value;
use crate::circuit::{Circuit, CircuitBuilder, CostModel, Gate, Ref};
use crate::encoding::{normalize_start_zero, Representation};

/// Parallel composition: both registers run side by side and a single gate
/// combines the acceptance outputs, so the cost grows by at most 1 beyond
/// the sum.
fn op_boolean(
    r1: &Representation,
    r2: &Representation,
    or: bool,
) -> Result<Representation, SynthesisError> {
    if r1.input_code() != r2.input_code() {
        return Err(SynthesisError::InputCodeMismatch);
    }
    let b_sigma = r1.b_sigma();
    let (b1, b2) = (r1.b_q(), r2.b_q());

    // F: verbatim copies of both transition circuits over a shared letter.
    let mut f = Circuit::wires(b_sigma + b1 + b2, vec![]).unwrap();
    let map1: Vec<Ref> = (0..b_sigma + b1).map(Ref::Input).collect();
    let map2: Vec<Ref> = (0..b_sigma)
        .chain(b_sigma + b1..b_sigma + b1 + b2)
        .map(Ref::Input)
        .collect();
    let mut outs = f.append(r1.f(), &map1);
    outs.extend(f.append(r2.f(), &map2));
    let f = Circuit::new(f.num_inputs(), f.gates().to_vec(), outs).unwrap();

    // G: both acceptance circuits plus one combining gate.
    let mut g = Circuit::wires(b1 + b2, vec![]).unwrap();
    let o1 = g.append(r1.g(), &(0..b1).map(Ref::Input).collect::<Vec<_>>())[0];
    let o2 = g.append(r2.g(), &(b1..b1 + b2).map(Ref::Input).collect::<Vec<_>>())[0];
    let mut gates = g.gates().to_vec();
    // Fold the combining gate when an operand is constant, so acceptance
    // stays free whenever both halves were free.
    let (absorb, neutral) = if or {
        (Ref::Const1, Ref::Const0)
    } else {
        (Ref::Const0, Ref::Const1)
    };
    let out = if o1 == absorb || o2 == absorb {
        absorb
    } else if o1 == neutral {
        o2
    } else if o2 == neutral {
        o1
    } else {
        gates.push(if or { Gate::Or(o1, o2) } else { Gate::And(o1, o2) });
        Ref::Gate(gates.len() - 1)
    };
    let g = Circuit::new(b1 + b2, gates, vec![out]).unwrap();

    Ok(Representation::semantic(
        r1.input_code().to_vec(),
        f,
        g,
        r1.cost_model(),
    )?)
}

/// Union of the two represented languages; cost at most `bc(r1)+bc(r2)+1`.
pub fn op_union(
    r1: &Representation,
    r2: &Representation,
) -> Result<Representation, SynthesisError> {
    op_boolean(r1, r2, true)
}

/// Intersection of the two represented languages; same cost bound as union.
pub fn op_intersect(
    r1: &Representation,
    r2: &Representation,
) -> Result<Representation, SynthesisError> {
    op_boolean(r1, r2, false)
}

/// Complement: one NOT on the acceptance output (folded away when the output
/// is a constant or already a negation), so cost grows by at most 1.
pub fn op_complement(r: &Representation) -> Representation {
    let g = r.g();
    let mut gates = g.gates().to_vec();
    let out = match g.outputs()[0] {
        Ref::Const0 => Ref::Const1,
        Ref::Const1 => Ref::Const0,
        Ref::Gate(j) if matches!(gates[j], Gate::Not(_)) => match gates[j] {
            Gate::Not(inner) => inner,
            _ => unreachable!(),
        },
        o => {
            gates.push(Gate::Not(o));
            Ref::Gate(gates.len() - 1)
        }
    };
    // Same states and codes, acceptance flipped.
    r.clone()
        .with_g(Circuit::new(g.num_inputs(), gates, vec![out]).unwrap())
}

/// Representation of the reversed language, one register bit per state of
/// `d`; gates-only cost at most `(2k+1)m + k*ceil(log k)` plus `3m`
/// relabeling slack (the reversed NFA starts in every accepting state).
pub fn op_reverse(d: &Dfa, cost_model: CostModel) -> Result<Representation, SynthesisError> {
    nfa_to_circuit(&d.reversed(), cost_model)
}

/// Representation of L(r1)·L(d2): `r1`'s circuits are kept verbatim and a
/// one-bit-per-state block for `d2` is grafted on, with `d2`'s start bit
/// forced whenever the `r1` part has just accepted.
pub fn op_concat(r1: &Representation, d2: &Dfa) -> Result<Representation, SynthesisError> {
    let k = r1.num_letters();
    if k != d2.alphabet_size() {
        return Err(SynthesisError::AlphabetMismatch(k, d2.alphabet_size()));
    }
    let b_sigma = r1.b_sigma();
    let b1 = r1.b_q();
    let n2 = d2.num_states();

    let mut bld = CircuitBuilder::new(b_sigma + b1 + n2);
    let x: Vec<Ref> = (0..b_sigma).map(|i| bld.input(i)).collect();
    let q1: Vec<Ref> = (b_sigma..b_sigma + b1).map(|i| bld.input(i)).collect();
    let q2: Vec<Ref> = (b_sigma + b1..b_sigma + b1 + n2).map(|i| bld.input(i)).collect();

    let map1: Vec<Ref> = x.iter().chain(&q1).copied().collect();
    let f1_out = bld.append(r1.f(), &map1);
    // Did the first language just accept? Then the second one starts.
    let g1_next = bld.append(r1.g(), &f1_out)[0];

    let decoders: Vec<Ref> = r1
        .input_code()
        .iter()
        .map(|c| bld.eq_const(&x, to_value(c)))
        .collect();
    let mut outputs = f1_out;
    for i in 0..n2 {
        let mut terms = Vec::new();
        for (a, &dec) in decoders.iter().enumerate() {
            let preds: Vec<Ref> = (0..n2)
                .filter(|&q| d2.delta(q, a) == i)
                .map(|q| q2[q])
                .collect();
            if !preds.is_empty() {
                let any = bld.or_all(&preds);
                terms.push(bld.and(dec, any));
            }
        }
        let mut bit = bld.or_all(&terms);
        if i == d2.start() {
            bit = bld.or(bit, g1_next);
        }
        outputs.push(bit);
    }
    let f = bld.finish(outputs);

    let mut gb = CircuitBuilder::new(b1 + n2);
    let acc2: Vec<Ref> = d2.accepting().iter().map(|&q| gb.input(b1 + q)).collect();
    let mut out = gb.or_all(&acc2);
    if d2.is_accepting(d2.start()) {
        // The empty word is in L2, so accepting the first part suffices.
        let g1_here = gb.append(r1.g(), &(0..b1).map(|i| gb.input(i)).collect::<Vec<_>>())[0];
        out = gb.or(out, g1_here);
    }
    let g = gb.finish(vec![out]);

    let rep = Representation::semantic(r1.input_code().to_vec(), f, g, r1.cost_model())?;
    // If epsilon is in L1, the machine starts with d2's start bit already on.
    let eps_in_l1 = r1.g().evaluate(&vec![false; b1]).map_err(crate::encoding::EncodingError::from)?[0];
    if eps_in_l1 {
        let mut mask = vec![false; b1 + n2];
        mask[b1 + d2.start()] = true;
        Ok(normalize_start_zero(&rep, &mask)?)
    } else {
        Ok(rep)
    }
}

/// Representation of L(d)*: determinizes the star NFA, which has one fresh
/// accepting start state, so the register is `m + 1` bits wide.
pub fn op_star(d: &Dfa, cost_model: CostModel) -> Result<Representation, SynthesisError> {
    nfa_to_circuit(&star_nfa(d), cost_model)
}
