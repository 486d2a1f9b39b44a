//! Bit-vector conventions shared by symbols and states.
//!
//! Symbols and compacted states are stored MSB-first: in a `width`-bit value,
//! position 0 (the first component, or the first tuple entry) is bit
//! `width - 1`. Numeric order therefore matches the printed order.

use crate::error::{Error, Result};

/// Bit at `pos` (0-based, MSB-first) of a `width`-bit value.
#[inline]
pub fn get(value: u32, width: usize, pos: usize) -> bool {
    debug_assert!(pos < width);
    (value >> (width - 1 - pos)) & 1 == 1
}

/// The `width`-bit value with only position `pos` set.
#[inline]
pub fn unit(width: usize, pos: usize) -> u32 {
    debug_assert!(pos < width);
    1 << (width - 1 - pos)
}

#[inline]
pub fn set(value: u32, width: usize, pos: usize, bit: bool) -> u32 {
    if bit {
        value | unit(width, pos)
    } else {
        value & !unit(width, pos)
    }
}

/// Formats a state tuple, e.g. `(1,0)`. A zero-width state prints as `()`.
pub fn fmt_tuple(value: u32, width: usize) -> String {
    let parts: Vec<&str> = (0..width)
        .map(|p| if get(value, width, p) { "1" } else { "0" })
        .collect();
    format!("({})", parts.join(","))
}

/// Parses `(1,0)`, `1,0` or `10` into `(value, width)`.
pub fn parse_tuple(text: &str) -> Result<(u32, usize)> {
    let inner = text.trim();
    let inner = inner
        .strip_prefix('(')
        .and_then(|s| s.strip_suffix(')'))
        .unwrap_or(inner);
    let digits: Vec<char> = inner
        .chars()
        .filter(|c| !c.is_whitespace() && *c != ',')
        .collect();
    if digits.len() > 32 {
        return Err(Error::UnknownState(text.to_string()));
    }
    let mut value = 0u32;
    for (i, c) in digits.iter().enumerate() {
        match c {
            '0' => value <<= 1,
            '1' => value = (value << 1) | 1,
            _ => {
                return Err(Error::Parse {
                    line: 1,
                    column: i + 1,
                    message: format!("unexpected character `{c}` in state `{text}`"),
                })
            }
        }
    }
    Ok((value, digits.len()))
}

/// Formats a `width`-bit symbol as a bit string.
pub fn fmt_bits(value: u32, width: usize) -> String {
    (0..width)
        .map(|p| if get(value, width, p) { '1' } else { '0' })
        .collect()
}
