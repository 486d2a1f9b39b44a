use std::fmt;
use std::ops::{Add, AddAssign, Mul};

/// Degree of a polynomial. The zero polynomial has degree `MinusInfinity`,
/// which orders below every finite degree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Degree {
    MinusInfinity,
    Finite(u32),
}

impl Degree {
    pub fn finite(self) -> Option<u32> {
        match self {
            Degree::MinusInfinity => None,
            Degree::Finite(d) => Some(d),
        }
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degree::MinusInfinity => f.write_str("-inf"),
            Degree::Finite(d) => write!(f, "{d}"),
        }
    }
}

/// A polynomial in the delay operator `D` over GF(2).
///
/// Bit `i` of the backing word is the coefficient of `D^i`, so degrees up to
/// 63 are representable. The encoding is canonical: two equal polynomials
/// always have the same bits.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct BinaryPoly(u64);

impl BinaryPoly {
    pub const ZERO: Self = BinaryPoly(0);
    pub const ONE: Self = BinaryPoly(1);
    pub const MAX_DEGREE: u32 = 63;

    pub const fn from_bits(bits: u64) -> Self {
        BinaryPoly(bits)
    }

    pub const fn bits(self) -> u64 {
        self.0
    }

    /// `D^exp`.
    pub fn monomial(exp: u32) -> Self {
        assert!(exp <= Self::MAX_DEGREE, "degree {exp} out of range");
        BinaryPoly(1 << exp)
    }

    /// Sum of the monomials `D^e` for every `e` in `exps`. Repeated exponents cancel.
    pub fn from_exponents(exps: &[u32]) -> Self {
        exps.iter()
            .fold(Self::ZERO, |acc, &e| acc + Self::monomial(e))
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    pub fn is_one(self) -> bool {
        self.0 == 1
    }

    pub fn degree(self) -> Degree {
        if self.0 == 0 {
            Degree::MinusInfinity
        } else {
            Degree::Finite(63 - self.0.leading_zeros())
        }
    }

    pub fn coeff(self, i: u32) -> bool {
        i <= Self::MAX_DEGREE && (self.0 >> i) & 1 == 1
    }

    /// Largest `l` such that `D^l` divides `self`, or `None` for zero.
    pub fn monomial_factor(self) -> Option<u32> {
        (self.0 != 0).then(|| self.0.trailing_zeros())
    }

    /// Multiplies by `D^l`.
    ///
    /// # Panics
    /// If the product would exceed degree 63.
    #[allow(clippy::should_implement_trait)]
    pub fn shl(self, l: u32) -> Self {
        if self.0 == 0 {
            return self;
        }
        let deg = 63 - self.0.leading_zeros();
        assert!(deg + l <= Self::MAX_DEGREE, "degree overflow in D^{l} shift");
        BinaryPoly(self.0 << l)
    }

    /// Division by the monomial `D^l`: returns `(quotient, remainder)` with
    /// `deg remainder < l`.
    pub fn divmod_monomial(self, l: u32) -> (Self, Self) {
        if l > Self::MAX_DEGREE {
            return (Self::ZERO, self);
        }
        let mask = (1u64 << l) - 1;
        (BinaryPoly(self.0 >> l), BinaryPoly(self.0 & mask))
    }

    /// Euclidean division. Returns `None` when dividing by zero.
    pub fn div_rem(self, divisor: Self) -> Option<(Self, Self)> {
        let d = divisor.degree().finite()?;
        let mut quot = 0u64;
        let mut rem = self.0;
        while let Degree::Finite(r) = BinaryPoly(rem).degree() {
            if r < d {
                break;
            }
            let shift = r - d;
            quot |= 1 << shift;
            rem ^= divisor.0 << shift;
        }
        Some((BinaryPoly(quot), BinaryPoly(rem)))
    }

    pub fn gcd(self, other: Self) -> Self {
        let (mut a, mut b) = (self, other);
        while !b.is_zero() {
            let (_, r) = a.div_rem(b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        a
    }

    /// Evaluates at `D = 0`, i.e. returns the constant coefficient.
    pub fn constant(self) -> bool {
        self.0 & 1 == 1
    }
}

impl Add for BinaryPoly {
    type Output = Self;
    #[allow(clippy::suspicious_arithmetic_impl)] // addition over GF(2) is XOR
    fn add(self, rhs: Self) -> Self {
        BinaryPoly(self.0 ^ rhs.0)
    }
}

impl AddAssign for BinaryPoly {
    #[allow(clippy::suspicious_op_assign_impl)]
    fn add_assign(&mut self, rhs: Self) {
        self.0 ^= rhs.0;
    }
}

impl Mul for BinaryPoly {
    type Output = Self;

    /// Carry-less product.
    ///
    /// # Panics
    /// If the product degree exceeds 63.
    fn mul(self, rhs: Self) -> Self {
        let (Some(da), Some(db)) = (self.degree().finite(), rhs.degree().finite()) else {
            return Self::ZERO;
        };
        assert!(da + db <= Self::MAX_DEGREE, "degree overflow in product");
        let mut acc = 0u64;
        let mut b = rhs.0;
        while b != 0 {
            let i = b.trailing_zeros();
            acc ^= self.0 << i;
            b &= b - 1;
        }
        BinaryPoly(acc)
    }
}

impl fmt::Display for BinaryPoly {
    /// Ascending powers, e.g. `1+D+D^3`. Zero prints as `0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 == 0 {
            return f.write_str("0");
        }
        let mut first = true;
        let mut bits = self.0;
        while bits != 0 {
            let i = bits.trailing_zeros();
            bits &= bits - 1;
            if !first {
                f.write_str("+")?;
            }
            first = false;
            match i {
                0 => f.write_str("1")?,
                1 => f.write_str("D")?,
                _ => write!(f, "D^{i}")?,
            }
        }
        Ok(())
    }
}
