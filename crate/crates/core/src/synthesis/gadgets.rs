//! Small arithmetic and predicate circuits over b-bit unsigned values
//! (MSB-first). Increment, subtraction and range checks are linear in b;
//! the modulo check is O(b * log modulus).

use super::SynthesisError;
use crate::bits::width_for;
use crate::circuit::{Circuit, CircuitBuilder, Ref};

/// Cap on the register width accepted by the gadgets.
pub const GADGET_WIDTH_CAP: usize = 20;

fn check_width(b: usize) -> Result<(), SynthesisError> {
    if b > GADGET_WIDTH_CAP {
        return Err(SynthesisError::InputCapExceeded(b, GADGET_WIDTH_CAP));
    }
    Ok(())
}

fn check_const(c: u64, b: usize) -> Result<(), SynthesisError> {
    if b < 64 && c >> b != 0 {
        return Err(SynthesisError::ConstantOutOfRange(c, b));
    }
    Ok(())
}

/// `v + 1` modulo 2^b; at most 5 gates per bit.
pub fn gadget_increment(b: usize) -> Result<Circuit, SynthesisError> {
    check_width(b)?;
    let mut bld = CircuitBuilder::new(b);
    let (out, _carry) = bld.increment(&bld.inputs());
    Ok(bld.finish(out))
}

/// `v - c` modulo 2^b; at most 6 gates per bit.
pub fn gadget_subtract_const(b: usize, c: u64) -> Result<Circuit, SynthesisError> {
    check_width(b)?;
    check_const(c, b)?;
    let complement = if b == 0 { 0 } else { c.wrapping_neg() & (u64::MAX >> (64 - b)) };
    let mut bld = CircuitBuilder::new(b);
    let out = bld.add_const(&bld.inputs(), complement);
    Ok(bld.finish(out))
}

/// 1 iff `lo <= v <= hi`; at most 3 gates per bit.
pub fn gadget_range_check(b: usize, lo: u64, hi: u64) -> Result<Circuit, SynthesisError> {
    check_width(b)?;
    check_const(lo, b)?;
    check_const(hi, b)?;
    let mut bld = CircuitBuilder::new(b);
    let inputs = bld.inputs();
    let ge = bld.geq_const(&inputs, lo);
    let le = bld.leq_const(&inputs, hi);
    let out = bld.and(ge, le);
    Ok(bld.finish(vec![out]))
}

/// 1 iff `v mod modulus == residue`.
pub fn gadget_mod_check(b: usize, residue: u64, modulus: u64) -> Result<Circuit, SynthesisError> {
    check_width(b)?;
    if modulus == 0 {
        return Err(SynthesisError::ZeroModulus);
    }
    // The modulus may be as large as 2^b (one full period).
    if b < 63 && modulus > 1 << b {
        return Err(SynthesisError::ConstantOutOfRange(modulus, b));
    }
    if residue >= modulus {
        return Err(SynthesisError::ConstantOutOfRange(residue, b));
    }
    let mut bld = CircuitBuilder::new(b);
    let inputs = bld.inputs();
    let r = residue_mod(&mut bld, &inputs, modulus);
    let out = bld.eq_const(&r, residue);
    Ok(bld.finish(vec![out]))
}

/// `v mod m` as a bit vector, by the schoolbook left-to-right scan: double
/// the accumulator, bring in the next bit, conditionally subtract `m`.
pub(crate) fn residue_mod(bld: &mut CircuitBuilder, v: &[Ref], m: u64) -> Vec<Ref> {
    // The accumulator stays below m; doubling plus one bit stays below 2m.
    let w = width_for(2 * m as usize).max(1);
    let mut acc = vec![Ref::Const0; w];
    for &bit in v {
        acc.rotate_left(1);
        acc[w - 1] = bit;
        let ge = bld.geq_const(&acc, m);
        let sub = bld.add_const(&acc, m.wrapping_neg() & (u64::MAX >> (64 - w)));
        acc = bld.mux_vec(ge, &sub, &acc);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bits::{to_bits, to_value};

    fn eval(c: &Circuit, b: usize, v: u64) -> u64 {
        to_value(&c.evaluate(&to_bits(v, b)).unwrap())
    }

    #[test]
    fn increment_wraps() {
        let c = gadget_increment(2).unwrap();
        assert_eq!(eval(&c, 2, 0b11), 0b00);
        for b in 0..=6 {
            let c = gadget_increment(b).unwrap();
            for v in 0..1u64 << b {
                assert_eq!(eval(&c, b, v), (v + 1) % (1 << b).max(1));
            }
            assert!(c.gate_count() <= 5 * b);
        }
    }

    #[test]
    fn subtract_const_exhaustive() {
        for b in 1..=5 {
            for k in 0..1u64 << b {
                let c = gadget_subtract_const(b, k).unwrap();
                assert!(c.gate_count() <= 6 * b);
                for v in 0..1u64 << b {
                    assert_eq!(eval(&c, b, v), (v + (1 << b) - k) % (1 << b));
                }
            }
        }
        assert!(gadget_subtract_const(2, 4).is_err());
    }

    #[test]
    fn range_check_exhaustive() {
        let c = gadget_range_check(3, 2, 5).unwrap();
        assert_eq!(eval(&c, 3, 4), 1);
        assert_eq!(eval(&c, 3, 6), 0);
        for b in 1..=5 {
            for lo in 0..1u64 << b {
                for hi in lo..1u64 << b {
                    let c = gadget_range_check(b, lo, hi).unwrap();
                    assert!(c.gate_count() <= 3 * b);
                    for v in 0..1u64 << b {
                        assert_eq!(eval(&c, b, v) == 1, lo <= v && v <= hi);
                    }
                }
            }
        }
    }

    #[test]
    fn mod_check_exhaustive() {
        let c = gadget_mod_check(4, 1, 3).unwrap();
        assert_eq!(eval(&c, 4, 7), 1);
        for b in 1..=6 {
            for m in 1..=(1u64 << b) {
                for r in 0..m {
                    let c = gadget_mod_check(b, r, m).unwrap();
                    assert!(c.gate_count() <= 12 * b * b.max(1));
                    for v in 0..1u64 << b {
                        assert_eq!(eval(&c, b, v) == 1, v % m == r, "b={b} m={m} r={r} v={v}");
                    }
                }
            }
        }
        assert!(gadget_mod_check(3, 3, 3).is_err());
        assert!(gadget_mod_check(3, 0, 0).is_err());
    }
}
