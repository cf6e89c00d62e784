//! Edge weights.
//!
//! A weight system is a commutative semiring. Three instances are provided:
//!
//! * [`Boolean`]: `{0, 1}` with `1 + 1 = 1`. Idags over it are plain relations
//!   with nodes (degenerate commutative bialgebras with a node).
//! * `u64`: the natural numbers (commutative bialgebras with a node).
//! * `i64`: the integers (commutative Hopf algebras with a node).

use std::fmt;
use std::hash::Hash;
use std::ops::{Add, Mul};
use std::str::FromStr;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

/// Runtime tag of a weight system.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum WeightKind {
    Bool,
    Nat,
    Int,
}

impl WeightKind {
    pub fn as_str(self) -> &'static str {
        match self {
            WeightKind::Bool => "bool",
            WeightKind::Nat => "nat",
            WeightKind::Int => "int",
        }
    }

    /// The antipode generator is available exactly over the integers.
    pub fn has_antipode(self) -> bool {
        self == WeightKind::Int
    }
}

impl fmt::Display for WeightKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for WeightKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "bool" => Ok(WeightKind::Bool),
            "nat" => Ok(WeightKind::Nat),
            "int" => Ok(WeightKind::Int),
            other => Err(format!("unknown weight system `{other}` (expected bool, nat or int)")),
        }
    }
}

/// A commutative semiring usable as an edge weight.
///
/// `from_count`/`to_count` embed weights into the integers, which is how
/// relations over one weight system are read in a model over another.
pub trait Weight:
    Copy
    + Eq
    + Ord
    + Hash
    + fmt::Debug
    + fmt::Display
    + Zero
    + One
    + Add<Output = Self>
    + Mul<Output = Self>
    + Send
    + Sync
    + 'static
{
    const KIND: WeightKind;

    /// Image of an integer under the unique semiring map from the integers,
    /// or `None` when the integer has no image (negative outside `Int`).
    fn from_count(n: i64) -> Option<Self>;

    /// Integer representative of the weight.
    fn to_count(self) -> i64;

    /// Additive inverse, when it exists.
    fn negate(self) -> Option<Self>;
}

/// The Boolean semiring `({0,1}, or, and)`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Boolean(pub bool);

impl Boolean {
    pub const TRUE: Boolean = Boolean(true);
    pub const FALSE: Boolean = Boolean(false);
}

impl fmt::Display for Boolean {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(if self.0 { "1" } else { "0" })
    }
}

impl Add for Boolean {
    type Output = Boolean;
    fn add(self, rhs: Boolean) -> Boolean {
        Boolean(self.0 || rhs.0)
    }
}

impl Mul for Boolean {
    type Output = Boolean;
    fn mul(self, rhs: Boolean) -> Boolean {
        Boolean(self.0 && rhs.0)
    }
}

impl Zero for Boolean {
    fn zero() -> Self {
        Boolean(false)
    }
    fn is_zero(&self) -> bool {
        !self.0
    }
}

impl One for Boolean {
    fn one() -> Self {
        Boolean(true)
    }
}

impl Weight for Boolean {
    const KIND: WeightKind = WeightKind::Bool;

    fn from_count(n: i64) -> Option<Self> {
        (n >= 0).then_some(Boolean(n != 0))
    }

    fn to_count(self) -> i64 {
        i64::from(self.0)
    }

    fn negate(self) -> Option<Self> {
        // only zero has an additive inverse
        (!self.0).then_some(self)
    }
}

impl Weight for u64 {
    const KIND: WeightKind = WeightKind::Nat;

    fn from_count(n: i64) -> Option<Self> {
        u64::try_from(n).ok()
    }

    fn to_count(self) -> i64 {
        i64::try_from(self).expect("natural weight exceeds i64 range")
    }

    fn negate(self) -> Option<Self> {
        (self == 0).then_some(0)
    }
}

impl Weight for i64 {
    const KIND: WeightKind = WeightKind::Int;

    fn from_count(n: i64) -> Option<Self> {
        Some(n)
    }

    fn to_count(self) -> i64 {
        self
    }

    fn negate(self) -> Option<Self> {
        Some(-self)
    }
}
