//! The single-letter construction: decompose one letter's transition graph
//! into path-into-cycle ("tadpole") components, renumber states so equal
//! component shapes sit in consecutive blocks, and realize that letter's
//! transition function as increment-with-corrections — far smaller than
//! generic synthesis for counter-like automata.

use std::collections::BTreeMap;

use super::{represent_dfa, synthesize_from_table, SynthesisError};
use crate::automata::Dfa;
use crate::bits::{to_bits, to_value, width_for};
use crate::circuit::{Circuit, CircuitBuilder, CostModel, Ref, TruthTable};
use crate::encoding::{normalize_start_zero, Encoding, Representation};

/// One component of a single-letter transition graph: a path `q_1 .. q_m`
/// whose last state loops back to `q_j` (so `q_j .. q_m` is a cycle and
/// `q_1 .. q_{j-1}` a tail; `j = 1` is a pure cycle).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TadpoleComponent {
    pub m: usize,
    pub j: usize,
    /// Original state ids, in path order.
    pub members: Vec<usize>,
}

/// A block of consecutively renumbered states covering all components with
/// the same shape `(m, j)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LayoutBlock {
    pub m: usize,
    pub j: usize,
    /// First renumbered state of the block.
    pub first: usize,
    /// Last renumbered state of the block (inclusive).
    pub last: usize,
}

/// Components ordered by shape, with the consecutive renumbering that the
/// single-letter circuit assumes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentLayout {
    blocks: Vec<LayoutBlock>,
    /// order[new_state] = original state.
    order: Vec<usize>,
}

impl ComponentLayout {
    pub fn blocks(&self) -> &[LayoutBlock] {
        &self.blocks
    }

    /// Original state ids in renumbered order.
    pub fn state_order(&self) -> &[usize] {
        &self.order
    }

    /// Number of distinct component shapes.
    pub fn num_shapes(&self) -> usize {
        self.blocks.len()
    }
}

/// Splits the functional graph of `delta(letter, .)` into tadpole
/// components. Fails when two paths merge (a state with two predecessors
/// off the cycle, or a cycle entered from more than one side) — such graphs
/// have no path-into-cycle form and callers must fall back to generic
/// synthesis.
pub fn tadpole_decompose(
    d: &Dfa,
    letter: usize,
) -> Result<Vec<TadpoleComponent>, SynthesisError> {
    if letter >= d.alphabet_size() {
        return Err(SynthesisError::LetterOutOfRange(letter, d.alphabet_size()));
    }
    let s = d.num_states();
    let f: Vec<usize> = (0..s).map(|q| d.delta(q, letter)).collect();

    // Mark every state on a cycle: iterate to the eventual cycle from each
    // state (memoized by a visit stamp).
    let mut on_cycle = vec![false; s];
    let mut state = vec![0u8; s]; // 0 unvisited, 1 in progress, 2 done
    for q0 in 0..s {
        if state[q0] != 0 {
            continue;
        }
        let mut path = Vec::new();
        let mut q = q0;
        while state[q] == 0 {
            state[q] = 1;
            path.push(q);
            q = f[q];
        }
        if state[q] == 1 {
            // Found a fresh cycle: everything from q onward in the path.
            let start = path.iter().position(|&p| p == q).unwrap();
            for &p in &path[start..] {
                on_cycle[p] = true;
            }
        }
        for &p in &path {
            state[p] = 2;
        }
    }

    // A tadpole needs every merge point ruled out: no state may have two
    // off-cycle predecessors, and no cycle may be entered twice.
    let mut off_cycle_preds: Vec<Vec<usize>> = vec![Vec::new(); s];
    for q in 0..s {
        if !on_cycle[q] {
            off_cycle_preds[f[q]].push(q);
        }
    }
    for (q, preds) in off_cycle_preds.iter().enumerate() {
        if preds.len() >= 2 {
            return Err(SynthesisError::NotTadpole { state: q });
        }
    }

    // Components, rooted at their cycles.
    let mut comp_of = vec![usize::MAX; s];
    let mut components = Vec::new();
    for q0 in 0..s {
        if !on_cycle[q0] || comp_of[q0] != usize::MAX {
            continue;
        }
        // Collect the cycle through q0 (starting at its smallest state for
        // a deterministic member order).
        let mut cycle = vec![q0];
        let mut q = f[q0];
        while q != q0 {
            cycle.push(q);
            q = f[q];
        }
        let min_pos = cycle.iter().enumerate().min_by_key(|&(_, &p)| p).unwrap().0;
        cycle.rotate_left(min_pos);
        let id = components.len();
        for &p in &cycle {
            comp_of[p] = id;
        }
        components.push(cycle);
    }

    // Extend each component by its tail. Entries into a cycle (or into a
    // tail) are unique by the merge check above, so tails are single chains.
    let mut result = Vec::new();
    for cycle in components {
        let m_cycle = cycle.len();
        let mut entries: Vec<usize> = cycle
            .iter()
            .filter(|&&q| !off_cycle_preds[q].is_empty())
            .copied()
            .collect();
        if entries.len() >= 2 {
            return Err(SynthesisError::NotTadpole { state: entries[1] });
        }
        let (members, j) = match entries.pop() {
            None => (cycle, 1),
            Some(entry) => {
                // Walk the tail backwards from the entry point.
                let mut tail = Vec::new();
                let mut q = entry;
                while let Some(&p) = off_cycle_preds[q].first() {
                    tail.push(p);
                    q = p;
                }
                tail.reverse();
                let j = tail.len() + 1;
                // Rotate the cycle so it starts at the entry state.
                let pos = cycle.iter().position(|&p| p == entry).unwrap();
                let mut members = tail;
                members.extend(cycle[pos..].iter().chain(&cycle[..pos]));
                (members, j)
            }
        };
        result.push(TadpoleComponent {
            m: members.len(),
            j,
            members,
        });
        debug_assert_eq!(result.last().unwrap().m - (result.last().unwrap().j - 1), m_cycle);
    }
    Ok(result)
}

/// Orders components lexicographically by `(m, j)` and renumbers their
/// states consecutively, grouping equal shapes into blocks.
pub fn component_layout(components: &[TadpoleComponent]) -> ComponentLayout {
    let mut groups: BTreeMap<(usize, usize), Vec<&TadpoleComponent>> = BTreeMap::new();
    for c in components {
        groups.entry((c.m, c.j)).or_default().push(c);
    }
    let mut blocks = Vec::new();
    let mut order = Vec::new();
    for ((m, j), comps) in groups {
        let first = order.len();
        for c in comps {
            order.extend_from_slice(&c.members);
        }
        blocks.push(LayoutBlock {
            m,
            j,
            first,
            last: order.len() - 1,
        });
    }
    ComponentLayout { blocks, order }
}

/// Emits the renumbered transition function of the single letter into a
/// builder: increment by default, and on the last state of each component
/// (detected per block by a range test plus a residue test, or by direct
/// comparisons when the block holds few components) jump back by `m - j`.
pub(crate) fn f1_refs(bld: &mut CircuitBuilder, q: &[Ref], layout: &ComponentLayout) -> Vec<Ref> {
    let b = q.len();
    let wrap = |v: u64| if b >= 64 { v } else { v & ((1u64 << b) - 1) };
    let mut out = bld.add_const(q, 1);
    for blk in layout.blocks() {
        let count = (blk.last - blk.first + 1) / blk.m;
        let ends = || (0..count).map(|i| (blk.first + (i + 1) * blk.m - 1) as u64);
        // Direct end comparisons cost about 2b gates each; the shared
        // range-plus-residue test costs about 12b, so it wins for blocks
        // holding many components.
        let cond = if count <= 4 {
            let eqs: Vec<Ref> = ends().map(|e| bld.eq_const(q, e)).collect();
            bld.or_all(&eqs)
        } else {
            let ge = bld.geq_const(q, blk.first as u64);
            let le = bld.leq_const(q, blk.last as u64);
            let range = bld.and(ge, le);
            let res = super::gadgets::residue_mod(bld, q, blk.m as u64);
            let want = ((blk.first + blk.m - 1) % blk.m) as u64;
            let eq = bld.eq_const(&res, want);
            bld.and(range, eq)
        };
        // q - (m - j) mod 2^b; for a full-period cycle this is q + 1 again
        // and hash-consing collapses the whole correction away.
        let target = bld.add_const(q, wrap((blk.j as u64).wrapping_sub(blk.m as u64)));
        out = bld.mux_vec(cond, &target, &out);
    }
    out
}

/// Standalone circuit for [`f1_refs`]: maps the renumbered code of `q` to
/// the code of its successor under the single letter. Only rows that are
/// state codes are meaningful.
pub fn build_f1_single_letter(layout: &ComponentLayout, b_q: usize) -> Circuit {
    let mut bld = CircuitBuilder::new(b_q);
    let q = bld.inputs();
    let out = f1_refs(&mut bld, &q, layout);
    bld.finish(out)
}

/// Representation of `d` built around the tadpole decomposition of one
/// letter: that letter's transitions become increment-with-corrections over
/// the renumbered states, the remaining letters are synthesized generically,
/// and the start is moved to all-zeros at the end.
pub fn tadpole_representation(
    d: &Dfa,
    letter: usize,
    cost_model: CostModel,
) -> Result<Representation, SynthesisError> {
    let comps = tadpole_decompose(d, letter)?;
    let layout = component_layout(&comps);
    let s = d.num_states();
    let k = d.alphabet_size();
    let b_q = width_for(s);
    let b_sigma = width_for(k);

    // new_of[old_state] = renumbered state.
    let mut new_of = vec![0usize; s];
    for (new, &old) in layout.state_order().iter().enumerate() {
        new_of[old] = new;
    }

    let mut bld = CircuitBuilder::new(b_sigma + b_q);
    let x: Vec<Ref> = (0..b_sigma).map(|i| bld.input(i)).collect();
    let q: Vec<Ref> = (b_sigma..b_sigma + b_q).map(|i| bld.input(i)).collect();
    let f1 = f1_refs(&mut bld, &q, &layout);
    let out = if k == 1 {
        f1
    } else {
        // The other letters, synthesized from the renumbered table. With one
        // remaining letter the table only needs the state bits.
        let (table_inputs, rest_letters): (usize, Vec<usize>) = if k == 2 {
            (b_q, vec![1 - letter])
        } else {
            (b_sigma + b_q, (0..k).filter(|&a| a != letter).collect())
        };
        let mut rows = vec![vec![false; b_q]; 1 << table_inputs];
        for &a in &rest_letters {
            for old in 0..s {
                let row = if k == 2 {
                    new_of[old]
                } else {
                    (a << b_q) | new_of[old]
                };
                rows[row] = to_bits(new_of[d.delta(old, a)] as u64, b_q);
            }
        }
        let f2 = synthesize_from_table(&TruthTable::new(table_inputs, b_q, rows).unwrap())?;
        let f2_out = if k == 2 {
            bld.append(&f2, &q)
        } else {
            let map: Vec<Ref> = x.iter().chain(&q).copied().collect();
            bld.append(&f2, &map)
        };
        let is_letter = bld.eq_const(&x, letter as u64);
        bld.mux_vec(is_letter, &f1, &f2_out)
    };
    let f = bld.finish(out);

    let mut g_rows = vec![vec![false]; 1 << b_q];
    for old in 0..s {
        g_rows[new_of[old]][0] = d.is_accepting(old);
    }
    let g = synthesize_from_table(&TruthTable::new(b_q, 1, g_rows).unwrap())?;

    let state_code: Vec<_> = (0..s).map(|old| to_bits(new_of[old] as u64, b_q)).collect();
    let input_code: Vec<_> = (0..k).map(|a| to_bits(a as u64, b_sigma)).collect();
    let start_code = state_code[d.start()].clone();
    if to_value(&start_code) == 0 {
        let e = Encoding::new(state_code, input_code, d.start())?;
        return Ok(Representation::new(&e, f, g, cost_model)?);
    }
    // The renumbering rarely puts the start at zero; XOR-relabel by its code.
    let semantic = Representation::semantic(input_code.clone(), f, g, cost_model)?;
    let n = normalize_start_zero(&semantic, &start_code)?;
    let codes = state_code
        .iter()
        .map(|c| c.iter().zip(&start_code).map(|(&a, &z)| a ^ z).collect())
        .collect();
    let e = Encoding::new(codes, input_code, d.start())?;
    Ok(Representation::new(&e, n.f().clone(), n.g().clone(), cost_model)?)
}

/// Generic-synthesis fallback used when a DFA has no tadpole letter; also
/// the baseline the tadpole construction is measured against.
pub fn best_single_letter_representation(
    d: &Dfa,
    cost_model: CostModel,
) -> Result<Representation, SynthesisError> {
    let mut best: Option<Representation> = None;
    for letter in 0..d.alphabet_size() {
        if let Ok(r) = tadpole_representation(d, letter, cost_model) {
            if best.as_ref().is_none_or(|b| r.bc() < b.bc()) {
                best = Some(r);
            }
        }
    }
    match best {
        Some(r) => Ok(r),
        None => represent_dfa(d, &Encoding::minimal(d), cost_model),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automata::equivalent;
    use crate::encoding::{extract_dfa, verify_representation};

    #[test]
    fn pure_cycle_is_one_component() {
        let d = Dfa::counter(5, [0]);
        let comps = tadpole_decompose(&d, 0).unwrap();
        assert_eq!(comps.len(), 1);
        assert_eq!((comps[0].m, comps[0].j), (5, 1));
        assert_eq!(comps[0].members, vec![0, 1, 2, 3, 4]);
    }

    #[test]
    fn chain_into_self_loop() {
        // 0 -> 1 -> 2 -> 2
        let d = Dfa::new(vec![vec![1], vec![2], vec![2]], 0, [2], 1).unwrap();
        let comps = tadpole_decompose(&d, 0).unwrap();
        assert_eq!(comps.len(), 1);
        assert_eq!((comps[0].m, comps[0].j), (3, 3));
        assert_eq!(comps[0].members, vec![0, 1, 2]);
    }

    #[test]
    fn merge_is_rejected() {
        // 0 -> 2, 1 -> 2, 2 -> 2: two off-cycle predecessors of 2.
        let d = Dfa::new(vec![vec![2], vec![2], vec![2]], 0, [2], 1).unwrap();
        match tadpole_decompose(&d, 0) {
            Err(SynthesisError::NotTadpole { state: 2 }) => {}
            other => panic!("expected NotTadpole at 2, got {other:?}"),
        }
    }

    #[test]
    fn double_entry_cycle_is_rejected() {
        // cycle 2 <-> 3 entered from 0 (at 2) and 1 (at 3).
        let d = Dfa::new(vec![vec![2], vec![3], vec![3], vec![2]], 0, [2], 1).unwrap();
        assert!(matches!(
            tadpole_decompose(&d, 0),
            Err(SynthesisError::NotTadpole { .. })
        ));
    }

    #[test]
    fn layout_groups_by_shape() {
        let d = Dfa::counter(4, [0]);
        let layout = component_layout(&tadpole_decompose(&d, 0).unwrap());
        assert_eq!(
            layout.blocks(),
            &[LayoutBlock { m: 4, j: 1, first: 0, last: 3 }]
        );
        // Two self-loops and a 2-cycle: blocks (1,1,0,1) and (2,1,2,3).
        let d = Dfa::new(vec![vec![0], vec![1], vec![3], vec![2]], 0, [0], 1).unwrap();
        let layout = component_layout(&tadpole_decompose(&d, 0).unwrap());
        assert_eq!(
            layout.blocks(),
            &[
                LayoutBlock { m: 1, j: 1, first: 0, last: 1 },
                LayoutBlock { m: 2, j: 1, first: 2, last: 3 },
            ]
        );
    }

    #[test]
    fn f1_matches_transition_function_exhaustively() {
        // Random-ish single-letter graphs that are tadpoles, up to s = 12.
        let graphs: Vec<Vec<usize>> = vec![
            vec![1, 2, 3, 0],                          // 4-cycle
            vec![1, 2, 2],                             // chain into loop
            vec![0, 1, 3, 2],                          // loops and a 2-cycle
            vec![1, 2, 3, 4, 5, 2],                    // tail 0,1 into 4-cycle
            vec![1, 0, 3, 4, 2, 6, 5, 0],              // mixed shapes
            (1..12).chain([0]).collect(),              // 12-cycle
        ];
        for f in graphs {
            let s = f.len();
            let d = Dfa::new(f.iter().map(|&t| vec![t]).collect(), 0, [0], 1).unwrap();
            let comps = tadpole_decompose(&d, 0).unwrap();
            let layout = component_layout(&comps);
            let b_q = width_for(s);
            let c = build_f1_single_letter(&layout, b_q);
            let mut new_of = vec![0usize; s];
            for (new, &old) in layout.state_order().iter().enumerate() {
                new_of[old] = new;
            }
            for old in 0..s {
                let input = to_bits(new_of[old] as u64, b_q);
                let got = to_value(&c.evaluate(&input).unwrap());
                assert_eq!(
                    got as usize,
                    new_of[d.delta(old, 0)],
                    "graph {:?} state {old}",
                    d
                );
            }
        }
    }

    #[test]
    fn full_cycle_f1_is_bare_increment() {
        let d = Dfa::counter(8, [0]);
        let layout = component_layout(&tadpole_decompose(&d, 0).unwrap());
        let f1 = build_f1_single_letter(&layout, 3);
        let inc = crate::synthesis::gadget_increment(3).unwrap();
        assert_eq!(f1.gate_count(), inc.gate_count());
    }

    #[test]
    fn shape_count_is_sublinear() {
        // K <= 4 s^(2/3) on assorted single-letter graphs.
        for s in [4usize, 9, 16, 27, 64] {
            let f: Vec<usize> = (0..s).map(|q| (q * q + 1) % s).collect();
            let d = Dfa::new(f.iter().map(|&t| vec![t]).collect(), 0, [0], 1).unwrap();
            if let Ok(comps) = tadpole_decompose(&d, 0) {
                let k = component_layout(&comps).num_shapes() as f64;
                assert!(k <= 4.0 * (s as f64).powf(2.0 / 3.0));
            }
        }
    }

    #[test]
    fn representation_verifies_and_extracts() {
        // k = 2: letter 0 cycles, letter 1 arbitrary.
        let d = Dfa::new(
            vec![vec![1, 2], vec![2, 0], vec![3, 3], vec![0, 1]],
            0,
            [1, 3],
            2,
        )
        .unwrap();
        let r = tadpole_representation(&d, 0, CostModel::GatesPlusOutputs).unwrap();
        assert!(verify_representation(&d, &r).unwrap());
        assert!(equivalent(&d, &extract_dfa(&r).unwrap()).unwrap());
    }

    #[test]
    fn nonzero_start_is_normalized() {
        // Start state 2 lands at a nonzero renumbered code; the result must
        // still verify (start at all-zeros) and stay equivalent.
        let d = Dfa::new(
            vec![vec![1, 0], vec![2, 0], vec![0, 1]],
            2,
            [0],
            2,
        )
        .unwrap();
        let r = tadpole_representation(&d, 0, CostModel::GatesPlusOutputs).unwrap();
        assert!(verify_representation(&d, &r).unwrap());
        assert!(equivalent(&d, &extract_dfa(&r).unwrap()).unwrap());
    }

    #[test]
    fn counter_beats_generic_synthesis_at_16() {
        for s in [16usize, 24, 32] {
            let d = Dfa::counter(s, [0]);
            let t = tadpole_representation(&d, 0, CostModel::GatesPlusOutputs).unwrap();
            let g = represent_dfa(&d, &Encoding::minimal(&d), CostModel::GatesPlusOutputs)
                .unwrap();
            assert!(
                t.bc() < g.bc(),
                "s={s}: tadpole {} vs generic {}",
                t.bc(),
                g.bc()
            );
        }
    }
}
