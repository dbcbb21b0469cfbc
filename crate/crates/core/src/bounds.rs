//! Closed-form counting and complexity bounds, evaluated exactly: DFA and
//! circuit counting formulas in big integers, register-complexity bounds,
//! and the Shannon-effect threshold as an exact rational (with log2 of
//! non-powers of two approximated to 64 fractional bits).

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::bits::width_for;

#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
pub enum BoundsError {
    #[error("state count must be at least {min}, got {got}")]
    TooFewStates { got: usize, min: usize },
    #[error("eps must satisfy 0 < eps < 1")]
    EpsOutOfRange,
}

/// Lower bound on the number of distinct minimal DFA languages with `s`
/// states over `k` letters: `2^s * s^((k-1) s)`, valid for `s >= 3`.
pub fn bound_min_dfa_count(s: usize, k: usize) -> Result<BigUint, BoundsError> {
    if s < 3 {
        return Err(BoundsError::TooFewStates { got: s, min: 3 });
    }
    let two_pow = BigUint::one() << s;
    let s_pow = BigUint::from(s).pow(((k.saturating_sub(1)) * s) as u32);
    Ok(two_pow * s_pow)
}

/// Upper bound on the number of functions of `n` inputs and `m` outputs
/// computable with at most `c` gates: `9^(c+n) * (c+n)^(c+m)`.
pub fn bound_circuit_count(n: usize, m: usize, c: usize) -> BigUint {
    BigUint::from(9u32).pow((c + n) as u32) * BigUint::from(c + n).pow((c + m) as u32)
}

/// `ceil(log2 s)`: every representation needs at least this many state bits.
pub fn bc_lower_bound(s: usize) -> Result<usize, BoundsError> {
    if s < 2 {
        return Err(BoundsError::TooFewStates { got: s, min: 2 });
    }
    Ok(width_for(s))
}

/// Guide value for the worst-case register complexity of an `s`-state,
/// `k`-letter DFA: `(k-1) s` for `k >= 2`, and the asymptotic `s / log2 s`
/// for `k = 1`.
pub fn bc_upper_bound(s: usize, k: usize) -> Result<BigRational, BoundsError> {
    if s < 2 {
        return Err(BoundsError::TooFewStates { got: s, min: 2 });
    }
    if k >= 2 {
        Ok(BigRational::from_integer(((k - 1) * s).into()))
    } else {
        Ok(BigRational::from_integer(s.into()) / log2_rational(s))
    }
}

/// The Shannon-effect cutoff `(1 - eps) * (k-1) s` (or `(1 - eps) s / log2 s`
/// when `k = 1`): almost all minimal DFAs need at least this complexity.
pub fn shannon_threshold(s: usize, k: usize, eps: &BigRational) -> Result<BigRational, BoundsError> {
    if s < 3 {
        return Err(BoundsError::TooFewStates { got: s, min: 3 });
    }
    if eps <= &BigRational::zero() || eps >= &BigRational::one() {
        return Err(BoundsError::EpsOutOfRange);
    }
    Ok((BigRational::one() - eps) * bc_upper_bound(s, k).expect("s >= 3"))
}

/// Gate bound for the NFA determinization circuit with `t` transitions:
/// `t + (k+1) n + k ceil(log k)`.
pub fn bound_nfa_circuit(n: usize, t: usize, k: usize) -> usize {
    t + (k + 1) * n + k * width_for(k)
}

/// [`bound_nfa_circuit`] with the dense worst case `t = k n^2`.
pub fn bound_nfa_circuit_dense(n: usize, k: usize) -> usize {
    bound_nfa_circuit(n, k * n * n, k)
}

/// `log2 s` as an exact rational for powers of two, otherwise approximated
/// to 64 fractional bits (error below 2^-64).
pub fn log2_rational(s: usize) -> BigRational {
    assert!(s >= 2);
    if s.is_power_of_two() {
        return BigRational::from_integer((s.trailing_zeros() as u64).into());
    }
    // Bit-by-bit: log2(s) = int part + log2(x) with 1 <= x < 2, doubling and
    // squaring to peel one fractional bit per round.
    const FRAC_BITS: u32 = 64;
    // Mantissa precision; truncating to this many bits each round keeps the
    // numbers small while leaving the first 64 emitted bits exact.
    const PREC: u64 = 192;
    let int_part = (usize::BITS - 1 - s.leading_zeros()) as u64;
    let mut num = BigUint::from(s);
    let mut den = BigUint::one() << int_part;
    let mut frac = BigUint::zero();
    for _ in 0..FRAC_BITS {
        // Truncate x = num/den to PREC fractional bits before squaring.
        num = (&num << PREC) / &den;
        den = BigUint::one() << PREC;
        // x in [1, 2): square it; if it reaches 2, emit a 1 bit and halve.
        num = &num * &num;
        den = &den * &den;
        frac <<= 1;
        if num >= (&den << 1) {
            frac += BigUint::one();
            den <<= 1;
        }
    }
    BigRational::from_integer(int_part.into())
        + BigRational::new(frac.into(), (BigUint::one() << FRAC_BITS).into())
}

/// A labeled bound evaluation, for the CLI table.
#[derive(Debug, Clone)]
pub struct BoundReport {
    pub name: String,
    pub params: String,
    pub value: String,
}

impl BoundReport {
    pub fn new(
        name: impl Into<String>,
        params: impl Into<String>,
        value: impl ToString,
    ) -> BoundReport {
        BoundReport {
            name: name.into(),
            params: params.into(),
            value: value.to_string(),
        }
    }
}

/// Renders a rational as a decimal with the given number of fraction digits
/// (exact when it terminates, truncated otherwise).
pub fn rational_to_decimal(r: &BigRational, digits: u32) -> String {
    let scale = BigUint::from(10u32).pow(digits);
    let scaled = (r * BigRational::from_integer(scale.clone().into()))
        .floor()
        .to_integer();
    let scale_i = num_bigint::BigInt::from(scale);
    let (int, frac) = (&scaled / &scale_i, (&scaled % &scale_i));
    if digits == 0 || frac.is_zero() {
        // Show integers without a fraction part only if exact.
        if r.is_integer() {
            return int.to_string();
        }
    }
    format!("{}.{:0width$}", int, frac.magnitude(), width = digits as usize)
}
