//! Boolean circuits in the standard base (AND, OR, NOT) over input wires and
//! the two constant wires, with an ordered output list.

mod build;
mod compose;
mod enumerate;
pub(crate) mod text;

pub use build::CircuitBuilder;
pub use compose::{merge_fg, unroll};
pub use enumerate::enumerate_functions;
pub use text::{parse_circuit, write_circuit};

use crate::bits::Bits;

/// Default cap on the number of inputs for exhaustive evaluation.
pub const TRUTH_TABLE_INPUT_CAP: usize = 20;

/// A wire: an input, an earlier gate, or a constant.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum Ref {
    Input(usize),
    Gate(usize),
    Const0,
    Const1,
}

impl Ref {
    pub fn is_const(self) -> bool {
        matches!(self, Ref::Const0 | Ref::Const1)
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Gate {
    And(Ref, Ref),
    Or(Ref, Ref),
    Not(Ref),
}

impl Gate {
    fn operands(&self) -> (Ref, Option<Ref>) {
        match *self {
            Gate::And(a, b) | Gate::Or(a, b) => (a, Some(b)),
            Gate::Not(a) => (a, None),
        }
    }
}

/// How circuit size is measured.
///
/// `GatesPlusOutputs` charges one unit per gate and one per non-constant
/// output wire. `GatesOnly` charges gates alone; it exists because gate-free
/// shift registers are naturally graded by their register width.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default)]
pub enum CostModel {
    #[default]
    GatesPlusOutputs,
    GatesOnly,
}

impl std::fmt::Display for CostModel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            CostModel::GatesPlusOutputs => "gates-outputs",
            CostModel::GatesOnly => "gates",
        })
    }
}

impl std::str::FromStr for CostModel {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "gates-outputs" => Ok(CostModel::GatesPlusOutputs),
            "gates" => Ok(CostModel::GatesOnly),
            other => Err(format!(
                "unknown cost model {other:?}, expected \"gates\" or \"gates-outputs\""
            )),
        }
    }
}

#[derive(Debug, Clone, thiserror::Error)]
pub enum CircuitError {
    #[error("input width mismatch: circuit has {expected} inputs, got {got}")]
    WidthMismatch { expected: usize, got: usize },
    #[error("invalid reference {what} at gate {at}")]
    InvalidRef { at: usize, what: String },
    #[error("circuit has {inputs} inputs, exceeding the cap of {cap}")]
    InputCapExceeded { inputs: usize, cap: usize },
    #[error("interface mismatch: {0}")]
    InterfaceMismatch(String),
    #[error("enumeration budget exceeded: estimated {estimate} candidates over budget {budget}")]
    BudgetExceeded { estimate: u128, budget: u128 },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Circuit {
    num_inputs: usize,
    gates: Vec<Gate>,
    outputs: Vec<Ref>,
}

impl Circuit {
    /// Builds a circuit, checking that every reference points to an input,
    /// a constant, or an earlier gate.
    pub fn new(num_inputs: usize, gates: Vec<Gate>, outputs: Vec<Ref>) -> Result<Self, CircuitError> {
        let check = |r: Ref, at: usize, limit: usize| match r {
            Ref::Input(i) if i >= num_inputs => Err(CircuitError::InvalidRef {
                at,
                what: format!("input {i} out of {num_inputs}"),
            }),
            Ref::Gate(j) if j >= limit => Err(CircuitError::InvalidRef {
                at,
                what: format!("gate {j} not before position {limit}"),
            }),
            _ => Ok(()),
        };
        for (j, g) in gates.iter().enumerate() {
            let (a, b) = g.operands();
            check(a, j, j)?;
            if let Some(b) = b {
                check(b, j, j)?;
            }
        }
        for &o in &outputs {
            check(o, gates.len(), gates.len())?;
        }
        Ok(Circuit {
            num_inputs,
            gates,
            outputs,
        })
    }

    /// Circuit that copies its inputs straight to its outputs.
    pub fn identity(width: usize) -> Self {
        Circuit {
            num_inputs: width,
            gates: Vec::new(),
            outputs: (0..width).map(Ref::Input).collect(),
        }
    }

    /// Circuit with the given inputs and constant/wire outputs, no gates.
    pub fn wires(num_inputs: usize, outputs: Vec<Ref>) -> Result<Self, CircuitError> {
        Circuit::new(num_inputs, Vec::new(), outputs)
    }

    pub fn num_inputs(&self) -> usize {
        self.num_inputs
    }

    pub fn num_outputs(&self) -> usize {
        self.outputs.len()
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn outputs(&self) -> &[Ref] {
        &self.outputs
    }

    /// Number of gates, ignoring outputs.
    pub fn gate_count(&self) -> usize {
        self.gates.len()
    }

    /// Circuit size under the given cost model. Constant outputs are free in
    /// both models.
    pub fn size(&self, cm: CostModel) -> usize {
        match cm {
            CostModel::GatesOnly => self.gates.len(),
            CostModel::GatesPlusOutputs => {
                self.gates.len() + self.outputs.iter().filter(|o| !o.is_const()).count()
            }
        }
    }

    fn resolve(&self, r: Ref, input: &[bool], values: &[bool]) -> bool {
        match r {
            Ref::Input(i) => input[i],
            Ref::Gate(j) => values[j],
            Ref::Const0 => false,
            Ref::Const1 => true,
        }
    }

    /// Evaluates the circuit on one input vector.
    pub fn evaluate(&self, input: &[bool]) -> Result<Bits, CircuitError> {
        if input.len() != self.num_inputs {
            return Err(CircuitError::WidthMismatch {
                expected: self.num_inputs,
                got: input.len(),
            });
        }
        let mut values = Vec::with_capacity(self.gates.len());
        for g in &self.gates {
            let v = match *g {
                Gate::And(a, b) => {
                    self.resolve(a, input, &values) & self.resolve(b, input, &values)
                }
                Gate::Or(a, b) => {
                    self.resolve(a, input, &values) | self.resolve(b, input, &values)
                }
                Gate::Not(a) => !self.resolve(a, input, &values),
            };
            values.push(v);
        }
        Ok(self
            .outputs
            .iter()
            .map(|&o| self.resolve(o, input, &values))
            .collect())
    }

    /// Exhaustive evaluation over all input vectors, rows in input-lexicographic
    /// order, capped at [`TRUTH_TABLE_INPUT_CAP`] inputs.
    pub fn truth_table(&self) -> Result<TruthTable, CircuitError> {
        self.truth_table_capped(TRUTH_TABLE_INPUT_CAP)
    }

    pub fn truth_table_capped(&self, cap: usize) -> Result<TruthTable, CircuitError> {
        if self.num_inputs > cap {
            return Err(CircuitError::InputCapExceeded {
                inputs: self.num_inputs,
                cap,
            });
        }
        let n = self.num_inputs;
        let rows = (0..1usize << n)
            .map(|r| {
                let input = crate::bits::to_bits(r as u64, n);
                self.evaluate(&input)
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(TruthTable {
            num_inputs: n,
            num_outputs: self.outputs.len(),
            rows,
        })
    }
}

/// Exhaustive function table: 2^n rows of m output bits, rows in
/// input-lexicographic order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TruthTable {
    num_inputs: usize,
    num_outputs: usize,
    rows: Vec<Bits>,
}

impl TruthTable {
    pub fn new(num_inputs: usize, num_outputs: usize, rows: Vec<Bits>) -> Result<Self, CircuitError> {
        if rows.len() != 1usize << num_inputs || rows.iter().any(|r| r.len() != num_outputs) {
            return Err(CircuitError::InterfaceMismatch(format!(
                "truth table must have {} rows of width {}",
                1usize << num_inputs,
                num_outputs
            )));
        }
        Ok(TruthTable {
            num_inputs,
            num_outputs,
            rows,
        })
    }

    /// Builds a table by evaluating `f` on every row index.
    pub fn from_fn(num_inputs: usize, num_outputs: usize, mut f: impl FnMut(usize) -> Bits) -> Self {
        let rows: Vec<Bits> = (0..1usize << num_inputs).map(&mut f).collect();
        assert!(rows.iter().all(|r| r.len() == num_outputs));
        TruthTable {
            num_inputs,
            num_outputs,
            rows,
        }
    }

    pub fn num_inputs(&self) -> usize {
        self.num_inputs
    }

    pub fn num_outputs(&self) -> usize {
        self.num_outputs
    }

    pub fn rows(&self) -> &[Bits] {
        &self.rows
    }

    pub fn row(&self, r: usize) -> &Bits {
        &self.rows[r]
    }

    /// Bitmask of one output column, bit `r` set iff row `r` outputs 1.
    pub fn column_mask(&self, col: usize) -> u64 {
        assert!(self.num_inputs <= 6);
        self.rows
            .iter()
            .enumerate()
            .fold(0u64, |acc, (r, row)| acc | ((row[col] as u64) << r))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn evaluate_wires_and_gates() {
        // identity circuit: 0 gates, output = Input(0)
        let id = Circuit::identity(1);
        assert_eq!(id.evaluate(&[true]).unwrap(), vec![true]);
        assert_eq!(id.size(CostModel::GatesPlusOutputs), 1);
        assert_eq!(id.size(CostModel::GatesOnly), 0);

        let not = Circuit::new(1, vec![Gate::Not(Ref::Input(0))], vec![Ref::Gate(0)]).unwrap();
        assert_eq!(not.evaluate(&[false]).unwrap(), vec![true]);
        assert_eq!(not.size(CostModel::GatesPlusOutputs), 2);
        assert_eq!(not.truth_table().unwrap().rows(), &[vec![true], vec![false]]);
    }

    #[test]
    fn two_bit_increment() {
        let c = crate::synthesis::gadget_increment(2).unwrap();
        // input 01 (value 1) -> 10 (value 2)
        assert_eq!(c.evaluate(&[false, true]).unwrap(), vec![true, false]);
        // 11 wraps to 00
        assert_eq!(c.evaluate(&[true, true]).unwrap(), vec![false, false]);
    }

    #[test]
    fn shift_register_sizes() {
        // gate-free transition circuit for a width-2 shift register
        let f = Circuit::wires(3, vec![Ref::Input(0), Ref::Input(1)]).unwrap();
        assert_eq!(f.size(CostModel::GatesPlusOutputs), 2);
        assert_eq!(f.size(CostModel::GatesOnly), 0);
    }

    #[test]
    fn and_truth_table() {
        let c = Circuit::new(
            2,
            vec![Gate::And(Ref::Input(0), Ref::Input(1))],
            vec![Ref::Gate(0)],
        )
        .unwrap();
        let t = c.truth_table().unwrap();
        let col: Vec<bool> = t.rows().iter().map(|r| r[0]).collect();
        assert_eq!(col, vec![false, false, false, true]);
    }

    #[test]
    fn dag_validation() {
        assert!(Circuit::new(1, vec![Gate::Not(Ref::Gate(0))], vec![]).is_err());
        assert!(Circuit::new(1, vec![], vec![Ref::Input(1)]).is_err());
        assert!(Circuit::new(2, vec![Gate::And(Ref::Input(0), Ref::Gate(5))], vec![]).is_err());
    }

    #[test]
    fn width_mismatch() {
        let id = Circuit::identity(2);
        assert!(matches!(
            id.evaluate(&[true]),
            Err(CircuitError::WidthMismatch { .. })
        ));
    }

    #[test]
    fn const_outputs_are_free() {
        let c = Circuit::wires(0, vec![Ref::Const1, Ref::Const0]).unwrap();
        assert_eq!(c.size(CostModel::GatesPlusOutputs), 0);
        assert_eq!(c.evaluate(&[]).unwrap(), vec![true, false]);
    }
}
