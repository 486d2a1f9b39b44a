use std::fmt;
use std::str::FromStr;

use crate::bits;
use crate::error::{Error, Result};

/// A length-`N` sequence of `width`-bit symbols with 1-based cyclic indexing.
///
/// Symbol values are MSB-first: component 1 is the leftmost printed bit.
/// Ordering is lexicographic over the printed form.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SymbolSequence {
    width: usize,
    symbols: Vec<u32>,
}

impl SymbolSequence {
    pub const MAX_WIDTH: usize = 32;

    pub fn new(width: usize, symbols: Vec<u32>) -> Result<Self> {
        if width > Self::MAX_WIDTH {
            return Err(Error::Dimension(format!("symbol width {width} exceeds 32")));
        }
        if let Some(k) = symbols
            .iter()
            .position(|&s| width < 32 && s >> width != 0)
        {
            return Err(Error::Dimension(format!(
                "symbol {} does not fit in {width} bits",
                k + 1
            )));
        }
        Ok(SymbolSequence { width, symbols })
    }

    pub fn zeros(width: usize, len: usize) -> Self {
        SymbolSequence {
            width,
            symbols: vec![0; len],
        }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn symbols(&self) -> &[u32] {
        &self.symbols
    }

    /// Symbol at time `k`, `1 <= k <= N`.
    pub fn get(&self, k: usize) -> u32 {
        self.symbols[k - 1]
    }

    /// Maps any integer time onto `1..=N`: `<0> = N`, `<N+1> = 1`.
    pub fn cyclic_index(&self, t: i64) -> usize {
        let n = self.symbols.len() as i64;
        ((t - 1).rem_euclid(n) + 1) as usize
    }

    /// Symbol at cyclic time `<t>`.
    pub fn cyclic(&self, t: i64) -> u32 {
        self.get(self.cyclic_index(t))
    }

    /// Component `j` (0-based) of the symbol at time `k` (1-based).
    pub fn bit(&self, k: usize, j: usize) -> bool {
        bits::get(self.get(k), self.width, j)
    }

    pub fn set_bit(&mut self, k: usize, j: usize, v: bool) {
        let s = &mut self.symbols[k - 1];
        *s = bits::set(*s, self.width, j, v);
    }

    pub fn is_zero(&self) -> bool {
        self.symbols.iter().all(|&s| s == 0)
    }

    /// Symbol-wise sum over GF(2).
    pub fn xor(&self, other: &SymbolSequence) -> Result<SymbolSequence> {
        if self.width != other.width || self.len() != other.len() {
            return Err(Error::Dimension(format!(
                "cannot add sequences of shape {}x{} and {}x{}",
                self.len(),
                self.width,
                other.len(),
                other.width
            )));
        }
        Ok(SymbolSequence {
            width: self.width,
            symbols: self
                .symbols
                .iter()
                .zip(&other.symbols)
                .map(|(a, b)| a ^ b)
                .collect(),
        })
    }

    /// Rotates time by `r`: the result at time `k` is the input at `<k - r>`.
    pub fn rotate(&self, r: i64) -> SymbolSequence {
        let symbols = (1..=self.len() as i64).map(|k| self.cyclic(k - r)).collect();
        SymbolSequence {
            width: self.width,
            symbols,
        }
    }
}

impl fmt::Display for SymbolSequence {
    /// Space-separated bit strings, e.g. `110 101 101 011`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, &s) in self.symbols.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            f.write_str(&bits::fmt_bits(s, self.width))?;
        }
        Ok(())
    }
}

impl FromStr for SymbolSequence {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut width = None;
        let mut symbols = Vec::new();
        let mut column = 1;
        for chunk in s.split(char::is_whitespace) {
            let token = chunk.trim();
            if token.is_empty() {
                column += chunk.len() + 1;
                continue;
            }
            let w = *width.get_or_insert(token.len());
            if token.len() != w {
                return Err(Error::Parse {
                    line: 1,
                    column,
                    message: format!("symbol `{token}` has {} bits, expected {w}", token.len()),
                });
            }
            if w > SymbolSequence::MAX_WIDTH {
                return Err(Error::Parse {
                    line: 1,
                    column,
                    message: format!("symbol width {w} exceeds 32"),
                });
            }
            let value = u32::from_str_radix(token, 2).map_err(|_| Error::Parse {
                line: 1,
                column,
                message: format!("`{token}` is not a bit string"),
            })?;
            if token.starts_with('+') {
                return Err(Error::Parse {
                    line: 1,
                    column,
                    message: format!("`{token}` is not a bit string"),
                });
            }
            symbols.push(value);
            column += chunk.len() + 1;
        }
        match width {
            Some(w) => SymbolSequence::new(w, symbols),
            None => Err(Error::Parse {
                line: 1,
                column: 1,
                message: "empty sequence".into(),
            }),
        }
    }
}
