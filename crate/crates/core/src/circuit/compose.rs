//! Structural composition: verbatim circuit splicing, transition/acceptance
//! merging, and chained unrolling of a transition circuit over time steps.

use super::{Circuit, CircuitError, Gate, Ref};

impl Circuit {
    /// Splices `other` into `self`, substituting `input_map[i]` for
    /// `other`'s input `i`. Gates are copied verbatim (no simplification),
    /// so the gate count grows by exactly `other.gate_count()`. Returns
    /// `other`'s outputs as refs into `self`.
    pub fn append(&mut self, other: &Circuit, input_map: &[Ref]) -> Vec<Ref> {
        assert_eq!(input_map.len(), other.num_inputs);
        let offset = self.gates.len();
        let remap = |r: Ref| match r {
            Ref::Input(i) => input_map[i],
            Ref::Gate(j) => Ref::Gate(offset + j),
            c => c,
        };
        for g in &other.gates {
            let g = match *g {
                Gate::And(a, b) => Gate::And(remap(a), remap(b)),
                Gate::Or(a, b) => Gate::Or(remap(a), remap(b)),
                Gate::Not(a) => Gate::Not(remap(a)),
            };
            self.gates.push(g);
        }
        other.outputs.iter().map(|&o| remap(o)).collect()
    }
}

/// Merges a transition circuit `f` (b_sigma + b_q inputs, b_q outputs) and an
/// acceptance circuit `g` (b_q inputs, 1 output) into one circuit with
/// b_sigma + b_q inputs and b_q + 1 outputs. The first b_q outputs are `f`'s;
/// the last is `g` applied to the state-bit inputs (not to `f`'s outputs).
/// Gate count is exactly `f.gate_count() + g.gate_count()`.
pub fn merge_fg(f: &Circuit, g: &Circuit, b_q: usize) -> Result<Circuit, CircuitError> {
    if f.num_inputs < b_q || f.outputs.len() != b_q || g.num_inputs != b_q || g.outputs.len() != 1 {
        return Err(CircuitError::InterfaceMismatch(format!(
            "merge: f {}in/{}out, g {}in/{}out, b_q {}",
            f.num_inputs,
            f.outputs.len(),
            g.num_inputs,
            g.outputs.len(),
            b_q
        )));
    }
    let b_sigma = f.num_inputs - b_q;
    let mut h = f.clone();
    let state_inputs: Vec<Ref> = (b_sigma..b_sigma + b_q).map(Ref::Input).collect();
    let g_out = h.append(g, &state_inputs);
    h.outputs.push(g_out[0]);
    Ok(h)
}

/// Chains `steps` copies of the transition circuit `f` followed by one copy
/// of the acceptance circuit `g`. The state input of stage 1 is wired to
/// constant zeros (the start state), and stage i+1 reads stage i's state
/// outputs. The result has `steps * b_sigma` inputs and one output.
pub fn unroll(
    f: &Circuit,
    g: &Circuit,
    b_sigma: usize,
    b_q: usize,
    steps: usize,
) -> Result<Circuit, CircuitError> {
    if f.num_inputs != b_sigma + b_q
        || f.outputs.len() != b_q
        || g.num_inputs != b_q
        || g.outputs.len() != 1
    {
        return Err(CircuitError::InterfaceMismatch(format!(
            "unroll: f {}in/{}out, g {}in/{}out, b_sigma {}, b_q {}",
            f.num_inputs,
            f.outputs.len(),
            g.num_inputs,
            g.outputs.len(),
            b_sigma,
            b_q
        )));
    }
    let mut c = Circuit {
        num_inputs: steps * b_sigma,
        gates: Vec::new(),
        outputs: Vec::new(),
    };
    let mut state: Vec<Ref> = vec![Ref::Const0; b_q];
    for step in 0..steps {
        let mut map: Vec<Ref> = (0..b_sigma).map(|i| Ref::Input(step * b_sigma + i)).collect();
        map.extend_from_slice(&state);
        state = c.append(f, &map);
    }
    let out = c.append(g, &state);
    c.outputs = vec![out[0]];
    Ok(c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::CostModel;

    #[test]
    fn merge_wires() {
        // f = identity on 1 state bit (b_sigma = 0), g = NOT
        let f = Circuit::identity(1);
        let g = Circuit::new(1, vec![Gate::Not(Ref::Input(0))], vec![Ref::Gate(0)]).unwrap();
        let h = merge_fg(&f, &g, 1).unwrap();
        assert_eq!(h.outputs(), &[Ref::Input(0), Ref::Gate(0)]);
        assert_eq!(h.gate_count(), 1);
        assert_eq!(h.evaluate(&[true]).unwrap(), vec![true, false]);
    }

    #[test]
    fn merge_shift_register() {
        // width-2 shift register F plus wire G: 3-output gate-free circuit
        let f = Circuit::wires(3, vec![Ref::Input(0), Ref::Input(1)]).unwrap();
        let g = Circuit::wires(2, vec![Ref::Input(1)]).unwrap();
        let h = merge_fg(&f, &g, 2).unwrap();
        assert_eq!(h.gate_count(), 0);
        assert_eq!(h.num_outputs(), 3);
        // G reads the state register, not F's outputs
        assert_eq!(h.outputs()[2], Ref::Input(2));
    }

    #[test]
    fn merge_gate_counts_are_exact() {
        let mut fb = crate::circuit::CircuitBuilder::new(3);
        let a = fb.input(0);
        let s0 = fb.input(1);
        let s1 = fb.input(2);
        let o0 = fb.xor(a, s1);
        let f = fb.finish(vec![o0, s0]);
        let mut gb = crate::circuit::CircuitBuilder::new(2);
        let i0 = gb.input(0);
        let i1 = gb.input(1);
        let o = gb.and(i0, i1);
        let g = gb.finish(vec![o]);
        let h = merge_fg(&f, &g, 2).unwrap();
        assert_eq!(h.gate_count(), f.gate_count() + g.gate_count());
    }

    #[test]
    fn unroll_zero_steps_is_start_acceptance() {
        let f = Circuit::wires(3, vec![Ref::Input(0), Ref::Input(1)]).unwrap();
        let g = Circuit::wires(2, vec![Ref::Input(1)]).unwrap();
        let c = unroll(&f, &g, 1, 2, 0).unwrap();
        assert_eq!(c.num_inputs(), 0);
        // start state all zeros, G reads bit 1 -> 0
        assert_eq!(c.evaluate(&[]).unwrap(), vec![false]);
    }

    #[test]
    fn unroll_size_bound() {
        let mut fb = crate::circuit::CircuitBuilder::new(3);
        let a = fb.input(0);
        let s1 = fb.input(2);
        let o0 = fb.xor(a, s1);
        let s0 = fb.input(1);
        let f = fb.finish(vec![o0, s0]);
        let g = Circuit::wires(2, vec![Ref::Input(1)]).unwrap();
        for steps in 0..5 {
            let c = unroll(&f, &g, 1, 2, steps).unwrap();
            assert!(
                c.size(CostModel::GatesOnly)
                    <= steps * f.size(CostModel::GatesOnly) + g.size(CostModel::GatesOnly)
            );
        }
    }
}
