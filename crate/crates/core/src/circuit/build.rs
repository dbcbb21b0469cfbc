//! Incremental circuit construction with constant folding and structural
//! sharing. `and`/`or`/`not` fold constants, collapse trivial operands and
//! hash-cons structurally identical gates, so repeated subterms cost nothing.

use std::collections::HashMap;

use super::{Circuit, Gate, Ref};

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
enum Key {
    And(Ref, Ref),
    Or(Ref, Ref),
    Not(Ref),
}

pub struct CircuitBuilder {
    num_inputs: usize,
    gates: Vec<Gate>,
    cache: HashMap<Key, Ref>,
}

impl CircuitBuilder {
    pub fn new(num_inputs: usize) -> Self {
        CircuitBuilder {
            num_inputs,
            gates: Vec::new(),
            cache: HashMap::new(),
        }
    }

    pub fn input(&self, i: usize) -> Ref {
        assert!(i < self.num_inputs);
        Ref::Input(i)
    }

    pub fn inputs(&self) -> Vec<Ref> {
        (0..self.num_inputs).map(Ref::Input).collect()
    }

    pub fn gate_count(&self) -> usize {
        self.gates.len()
    }

    fn push(&mut self, key: Key, gate: Gate) -> Ref {
        if let Some(&r) = self.cache.get(&key) {
            return r;
        }
        self.gates.push(gate);
        let r = Ref::Gate(self.gates.len() - 1);
        self.cache.insert(key, r);
        r
    }

    pub fn and(&mut self, a: Ref, b: Ref) -> Ref {
        match (a, b) {
            (Ref::Const0, _) | (_, Ref::Const0) => Ref::Const0,
            (Ref::Const1, x) | (x, Ref::Const1) => x,
            (a, b) if a == b => a,
            (a, b) => {
                let (a, b) = if a <= b { (a, b) } else { (b, a) };
                self.push(Key::And(a, b), Gate::And(a, b))
            }
        }
    }

    pub fn or(&mut self, a: Ref, b: Ref) -> Ref {
        match (a, b) {
            (Ref::Const1, _) | (_, Ref::Const1) => Ref::Const1,
            (Ref::Const0, x) | (x, Ref::Const0) => x,
            (a, b) if a == b => a,
            (a, b) => {
                let (a, b) = if a <= b { (a, b) } else { (b, a) };
                self.push(Key::Or(a, b), Gate::Or(a, b))
            }
        }
    }

    pub fn not(&mut self, a: Ref) -> Ref {
        match a {
            Ref::Const0 => Ref::Const1,
            Ref::Const1 => Ref::Const0,
            // collapse double negation
            Ref::Gate(j) => {
                if let Gate::Not(inner) = self.gates[j] {
                    inner
                } else {
                    self.push(Key::Not(a), Gate::Not(a))
                }
            }
            _ => self.push(Key::Not(a), Gate::Not(a)),
        }
    }

    pub fn xor(&mut self, a: Ref, b: Ref) -> Ref {
        let both = self.and(a, b);
        let either = self.or(a, b);
        let nboth = self.not(both);
        self.and(either, nboth)
    }

    /// `c ? a : b`.
    pub fn mux(&mut self, c: Ref, a: Ref, b: Ref) -> Ref {
        if a == b {
            return a;
        }
        match (a, b) {
            (Ref::Const1, Ref::Const0) => c,
            (Ref::Const0, Ref::Const1) => self.not(c),
            (Ref::Const0, b) => {
                let nc = self.not(c);
                self.and(nc, b)
            }
            (Ref::Const1, b) => self.or(c, b),
            (a, Ref::Const0) => self.and(c, a),
            (a, Ref::Const1) => {
                let nc = self.not(c);
                self.or(nc, a)
            }
            (a, b) => {
                let nc = self.not(c);
                let t = self.and(c, a);
                let e = self.and(nc, b);
                self.or(t, e)
            }
        }
    }

    pub fn and_all(&mut self, refs: &[Ref]) -> Ref {
        refs.iter().copied().fold(Ref::Const1, |acc, r| self.and(acc, r))
    }

    pub fn or_all(&mut self, refs: &[Ref]) -> Ref {
        refs.iter().copied().fold(Ref::Const0, |acc, r| self.or(acc, r))
    }

    /// 1 iff the MSB-first bit vector `v` equals the constant `c`.
    pub fn eq_const(&mut self, v: &[Ref], c: u64) -> Ref {
        let lits: Vec<Ref> = v
            .iter()
            .enumerate()
            .map(|(i, &r)| {
                if (c >> (v.len() - 1 - i)) & 1 == 1 {
                    r
                } else {
                    self.not(r)
                }
            })
            .collect();
        self.and_all(&lits)
    }

    /// 1 iff the MSB-first bit vector `v` is >= the constant `c`.
    pub fn geq_const(&mut self, v: &[Ref], c: u64) -> Ref {
        // scan from MSB: geq(i) = v_i > c_i  or  (v_i == c_i and geq(i+1))
        let mut acc = Ref::Const1;
        for (i, &r) in v.iter().enumerate().rev() {
            let ci = (c >> (v.len() - 1 - i)) & 1 == 1;
            acc = if ci {
                self.and(r, acc)
            } else {
                self.or(r, acc)
            };
        }
        acc
    }

    /// 1 iff the MSB-first bit vector `v` is <= the constant `c`.
    pub fn leq_const(&mut self, v: &[Ref], c: u64) -> Ref {
        let mut acc = Ref::Const1;
        for (i, &r) in v.iter().enumerate().rev() {
            let ci = (c >> (v.len() - 1 - i)) & 1 == 1;
            acc = if ci {
                let nr = self.not(r);
                self.or(nr, acc)
            } else {
                let nr = self.not(r);
                self.and(nr, acc)
            };
        }
        acc
    }

    /// MSB-first `v + c` modulo 2^width via a constant-folded carry chain.
    pub fn add_const(&mut self, v: &[Ref], c: u64) -> Vec<Ref> {
        let w = v.len();
        let mut out = vec![Ref::Const0; w];
        let mut carry = Ref::Const0;
        for i in (0..w).rev() {
            let bit = v[i];
            let ki = (c >> (w - 1 - i)) & 1 == 1;
            if ki {
                // sum = bit ^ !carry, carry' = bit | carry
                let x = self.xor(bit, carry);
                out[i] = self.not(x);
                carry = self.or(bit, carry);
            } else {
                out[i] = self.xor(bit, carry);
                carry = self.and(bit, carry);
            }
        }
        out
    }

    /// MSB-first `v + 1` modulo 2^width; also returns the carry out.
    pub fn increment(&mut self, v: &[Ref]) -> (Vec<Ref>, Ref) {
        let w = v.len();
        let mut out = vec![Ref::Const0; w];
        let mut carry = Ref::Const1;
        for i in (0..w).rev() {
            out[i] = self.xor(v[i], carry);
            carry = self.and(v[i], carry);
        }
        (out, carry)
    }

    /// Per-bit `c ? a : b` over MSB-first vectors.
    pub fn mux_vec(&mut self, c: Ref, a: &[Ref], b: &[Ref]) -> Vec<Ref> {
        assert_eq!(a.len(), b.len());
        a.iter()
            .zip(b)
            .map(|(&x, &y)| self.mux(c, x, y))
            .collect()
    }

    /// Replays `other`'s gates through this builder (so folding and sharing
    /// apply), reading its inputs from `input_map`. Returns its output refs.
    pub fn append(&mut self, other: &Circuit, input_map: &[Ref]) -> Vec<Ref> {
        assert_eq!(input_map.len(), other.num_inputs());
        let mut map: Vec<Ref> = Vec::with_capacity(other.gates().len());
        fn resolve(r: Ref, input_map: &[Ref], map: &[Ref]) -> Ref {
            match r {
                Ref::Input(i) => input_map[i],
                Ref::Gate(j) => map[j],
                c => c,
            }
        }
        for g in other.gates() {
            let r = match *g {
                Gate::And(a, b) => {
                    let (a, b) = (resolve(a, input_map, &map), resolve(b, input_map, &map));
                    self.and(a, b)
                }
                Gate::Or(a, b) => {
                    let (a, b) = (resolve(a, input_map, &map), resolve(b, input_map, &map));
                    self.or(a, b)
                }
                Gate::Not(a) => {
                    let a = resolve(a, input_map, &map);
                    self.not(a)
                }
            };
            map.push(r);
        }
        other
            .outputs()
            .iter()
            .map(|&o| resolve(o, input_map, &map))
            .collect()
    }

    /// Finalizes the circuit, dropping gates not reachable from the outputs.
    pub fn finish(self, outputs: Vec<Ref>) -> Circuit {
        let mut live = vec![false; self.gates.len()];
        let mut stack: Vec<usize> = outputs
            .iter()
            .filter_map(|&o| match o {
                Ref::Gate(j) => Some(j),
                _ => None,
            })
            .collect();
        while let Some(j) = stack.pop() {
            if std::mem::replace(&mut live[j], true) {
                continue;
            }
            let mut visit = |r: Ref| {
                if let Ref::Gate(i) = r {
                    stack.push(i);
                }
            };
            match self.gates[j] {
                Gate::And(a, b) | Gate::Or(a, b) => {
                    visit(a);
                    visit(b);
                }
                Gate::Not(a) => visit(a),
            }
        }
        let mut new_index = vec![usize::MAX; self.gates.len()];
        let mut gates = Vec::new();
        for (j, g) in self.gates.iter().enumerate() {
            if !live[j] {
                continue;
            }
            fn remap(new_index: &[usize], r: Ref) -> Ref {
                match r {
                    Ref::Gate(i) => Ref::Gate(new_index[i]),
                    r => r,
                }
            }
            new_index[j] = gates.len();
            gates.push(match *g {
                Gate::And(a, b) => Gate::And(remap(&new_index, a), remap(&new_index, b)),
                Gate::Or(a, b) => Gate::Or(remap(&new_index, a), remap(&new_index, b)),
                Gate::Not(a) => Gate::Not(remap(&new_index, a)),
            });
        }
        let outputs = outputs
            .into_iter()
            .map(|o| match o {
                Ref::Gate(j) => Ref::Gate(new_index[j]),
                o => o,
            })
            .collect();
        Circuit::new(self.num_inputs, gates, outputs)
            .expect("builder produces well-formed circuits")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bits::{to_bits, to_value};

    fn eval_vec(width: usize, f: impl Fn(&mut CircuitBuilder, Vec<Ref>) -> Vec<Ref>) -> Circuit {
        let mut b = CircuitBuilder::new(width);
        let ins = b.inputs();
        let outs = f(&mut b, ins);
        b.finish(outs)
    }

    #[test]
    fn folding() {
        let mut b = CircuitBuilder::new(2);
        let x = b.input(0);
        assert_eq!(b.and(x, Ref::Const0), Ref::Const0);
        assert_eq!(b.and(x, Ref::Const1), x);
        assert_eq!(b.or(x, x), x);
        let nx = b.not(x);
        assert_eq!(b.not(nx), x);
        // hash-consing: same gate built twice is one gate
        let y = b.input(1);
        let g1 = b.and(x, y);
        let g2 = b.and(y, x);
        assert_eq!(g1, g2);
        assert_eq!(b.gate_count(), 2); // the NOT and one AND
    }

    #[test]
    fn add_const_exhaustive() {
        for w in 1..5usize {
            for c in 0..(1u64 << w) {
                let circ = eval_vec(w, |b, ins| b.add_const(&ins, c));
                for v in 0..(1u64 << w) {
                    let out = circ.evaluate(&to_bits(v, w)).unwrap();
                    assert_eq!(to_value(&out), (v + c) & ((1 << w) - 1));
                }
            }
        }
    }

    #[test]
    fn comparisons_exhaustive() {
        let w = 3;
        for c in 0..8u64 {
            let ge = eval_vec(w, |b, ins| vec![b.geq_const(&ins, c)]);
            let le = eval_vec(w, |b, ins| vec![b.leq_const(&ins, c)]);
            let eq = eval_vec(w, |b, ins| vec![b.eq_const(&ins, c)]);
            for v in 0..8u64 {
                let bits = to_bits(v, w);
                assert_eq!(ge.evaluate(&bits).unwrap()[0], v >= c, "geq {v} {c}");
                assert_eq!(le.evaluate(&bits).unwrap()[0], v <= c, "leq {v} {c}");
                assert_eq!(eq.evaluate(&bits).unwrap()[0], v == c, "eq {v} {c}");
            }
        }
    }

    #[test]
    fn increment_carry() {
        let w = 3;
        let circ = eval_vec(w, |b, ins| {
            let (out, carry) = b.increment(&ins);
            let mut o = out;
            o.push(carry);
            o
        });
        for v in 0..8u64 {
            let out = circ.evaluate(&to_bits(v, w)).unwrap();
            assert_eq!(to_value(&out[..w as usize]), (v + 1) & 7);
            assert_eq!(out[w], v == 7);
        }
    }
}
