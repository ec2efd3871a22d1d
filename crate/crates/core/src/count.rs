use std::fmt;
use std::ops::AddAssign;

use num_bigint::BigUint;
use num_traits::ToPrimitive;

/// Number of geodesics. Stays a machine word until an addition overflows,
/// then switches to an arbitrary-size integer.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GeodesicCount {
    Small(u64),
    Big(Box<BigUint>),
}

impl GeodesicCount {
    pub const ZERO: GeodesicCount = GeodesicCount::Small(0);
    pub const ONE: GeodesicCount = GeodesicCount::Small(1);

    pub fn is_zero(&self) -> bool {
        matches!(self, GeodesicCount::Small(0))
    }

    pub fn is_one(&self) -> bool {
        matches!(self, GeodesicCount::Small(1))
    }

    pub fn to_biguint(&self) -> BigUint {
        match self {
            GeodesicCount::Small(v) => BigUint::from(*v),
            GeodesicCount::Big(b) => (**b).clone(),
        }
    }

    pub fn to_u64(&self) -> Option<u64> {
        match self {
            GeodesicCount::Small(v) => Some(*v),
            GeodesicCount::Big(b) => b.to_u64(),
        }
    }

    fn normalise(b: BigUint) -> Self {
        match b.to_u64() {
            Some(v) => GeodesicCount::Small(v),
            None => GeodesicCount::Big(Box::new(b)),
        }
    }
}

impl Default for GeodesicCount {
    fn default() -> Self {
        GeodesicCount::ZERO
    }
}

impl From<u64> for GeodesicCount {
    fn from(v: u64) -> Self {
        GeodesicCount::Small(v)
    }
}

impl From<BigUint> for GeodesicCount {
    fn from(b: BigUint) -> Self {
        GeodesicCount::normalise(b)
    }
}

impl AddAssign<&GeodesicCount> for GeodesicCount {
    fn add_assign(&mut self, rhs: &GeodesicCount) {
        if let (GeodesicCount::Small(a), GeodesicCount::Small(b)) = (&*self, rhs) {
            if let Some(s) = a.checked_add(*b) {
                *self = GeodesicCount::Small(s);
                return;
            }
        }
        let sum = self.to_biguint() + rhs.to_biguint();
        *self = GeodesicCount::normalise(sum);
    }
}

impl std::iter::Sum for GeodesicCount {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        let mut acc = GeodesicCount::ZERO;
        for x in iter {
            acc += &x;
        }
        acc
    }
}

impl PartialEq<u64> for GeodesicCount {
    fn eq(&self, other: &u64) -> bool {
        self.to_u64() == Some(*other)
    }
}

impl fmt::Display for GeodesicCount {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GeodesicCount::Small(v) => write!(f, "{v}"),
            GeodesicCount::Big(b) => write!(f, "{b}"),
        }
    }
}
