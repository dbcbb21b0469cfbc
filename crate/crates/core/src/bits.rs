//! Bit-string helpers. Codes are MSB-first: `bits[0]` is the most
//! significant bit, so the lexicographic order of codes matches the numeric
//! order of the encoded values.

/// A fixed-width bit string, MSB first.
pub type Bits = Vec<bool>;

/// Number of bits needed to address `n` distinct values; 0 for `n <= 1`.
pub fn width_for(n: usize) -> usize {
    if n <= 1 {
        0
    } else {
        (usize::BITS - (n - 1).leading_zeros()) as usize
    }
}

/// `value` as a `width`-bit MSB-first string (mod 2^width).
pub fn to_bits(value: u64, width: usize) -> Bits {
    (0..width).map(|i| (value >> (width - 1 - i)) & 1 == 1).collect()
}

pub fn to_value(bits: &[bool]) -> u64 {
    bits.iter().fold(0, |acc, &b| (acc << 1) | b as u64)
}

pub fn format_bits(bits: &[bool]) -> String {
    if bits.is_empty() {
        "-".to_string()
    } else {
        bits.iter().map(|&b| if b { '1' } else { '0' }).collect()
    }
}

/// Inverse of [`format_bits`]; `-` denotes the empty string.
pub fn parse_bits(s: &str) -> Option<Bits> {
    if s == "-" {
        return Some(Vec::new());
    }
    s.chars()
        .map(|c| match c {
            '0' => Some(false),
            '1' => Some(true),
            _ => None,
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn widths() {
        assert_eq!(width_for(0), 0);
        assert_eq!(width_for(1), 0);
        assert_eq!(width_for(2), 1);
        assert_eq!(width_for(3), 2);
        assert_eq!(width_for(4), 2);
        assert_eq!(width_for(5), 3);
    }

    #[test]
    fn round_trip() {
        for w in 0..6 {
            for v in 0..(1u64 << w) {
                assert_eq!(to_value(&to_bits(v, w)), v);
            }
        }
        assert_eq!(parse_bits("-"), Some(vec![]));
        assert_eq!(parse_bits("01"), Some(vec![false, true]));
        assert_eq!(parse_bits("0x1"), None);
        assert_eq!(format_bits(&[]), "-");
    }
}
