//! Arithmetic in the prime field used for all counting answers.
//!
//! Every aggregate the engine produces is a residue modulo [`MODULUS`]
//! (`10^9 + 7`). The modulus is part of the answer format and is not
//! configurable.

/// The fixed counting modulus, `10^9 + 7`.
pub const MODULUS: u64 = 1_000_000_007;

/// A residue in `[0, MODULUS)`.
///
/// Closed under `+`, `-` and `*`; subtraction always returns the
/// non-negative representative.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct ModValue(u64);

impl ModValue {
    pub const ZERO: ModValue = ModValue(0);
    pub const ONE: ModValue = ModValue(1);

    /// Reduces an arbitrary integer into the field.
    pub fn new(v: u64) -> Self {
        ModValue(v % MODULUS)
    }

    /// The canonical representative in `[0, MODULUS)`.
    pub fn value(self) -> u64 {
        self.0
    }
}

impl std::ops::Add for ModValue {
    type Output = ModValue;

    fn add(self, rhs: ModValue) -> ModValue {
        let s = self.0 + rhs.0;
        ModValue(if s >= MODULUS { s - MODULUS } else { s })
    }
}

impl std::ops::Sub for ModValue {
    type Output = ModValue;

    /// Always the non-negative representative.
    fn sub(self, rhs: ModValue) -> ModValue {
        ModValue(if self.0 >= rhs.0 {
            self.0 - rhs.0
        } else {
            self.0 + MODULUS - rhs.0
        })
    }
}

impl std::ops::Mul for ModValue {
    type Output = ModValue;

    fn mul(self, rhs: ModValue) -> ModValue {
        ModValue((self.0 as u128 * rhs.0 as u128 % MODULUS as u128) as u64)
    }
}

impl std::ops::AddAssign for ModValue {
    fn add_assign(&mut self, rhs: ModValue) {
        *self = *self + rhs;
    }
}

impl std::fmt::Debug for ModValue {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl std::fmt::Display for ModValue {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl From<u64> for ModValue {
    fn from(v: u64) -> Self {
        ModValue::new(v)
    }
}
