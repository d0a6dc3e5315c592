//! Minimal ring/field abstractions shared by the sparse linear algebra
//! and the chain complex machinery.

use core::fmt::Debug;

/// A commutative ring with exact arithmetic.
pub trait Ring: Clone + PartialEq + Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn is_zero(&self) -> bool;
}

/// A field: every nonzero element is invertible.
pub trait Field: Ring {
    /// Multiplicative inverse. Panics on zero.
    fn inv(&self) -> Self;

    fn div(&self, other: &Self) -> Self {
        self.mul(&other.inv())
    }
}
