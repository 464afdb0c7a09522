use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// An exact Gaussian integer `re + im·i`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GaussInt {
    pub re: i64,
    pub im: i64,
}

impl GaussInt {
    pub const ZERO: GaussInt = GaussInt::new(0, 0);
    pub const ONE: GaussInt = GaussInt::new(1, 0);
    pub const NEG_ONE: GaussInt = GaussInt::new(-1, 0);
    pub const I: GaussInt = GaussInt::new(0, 1);
    pub const NEG_I: GaussInt = GaussInt::new(0, -1);

    /// The four units in search tie-break order: 1, -1, i, -i.
    pub const UNITS: [GaussInt; 4] = [Self::ONE, Self::NEG_ONE, Self::I, Self::NEG_I];

    pub const fn new(re: i64, im: i64) -> Self {
        GaussInt { re, im }
    }

    pub const fn real(re: i64) -> Self {
        GaussInt { re, im: 0 }
    }

    pub const fn conj(self) -> Self {
        GaussInt::new(self.re, -self.im)
    }

    /// Squared magnitude `re² + im²`.
    pub const fn norm(self) -> i64 {
        self.re * self.re + self.im * self.im
    }

    pub const fn is_zero(self) -> bool {
        self.re == 0 && self.im == 0
    }

    pub const fn is_unit(self) -> bool {
        self.norm() == 1
    }

    /// Divides both components by `k`, or `None` if either is not a multiple of `k`.
    pub fn div_exact(self, k: i64) -> Option<Self> {
        if k == 0 || self.re % k != 0 || self.im % k != 0 {
            None
        } else {
            Some(GaussInt::new(self.re / k, self.im / k))
        }
    }

    pub fn to_complex(self) -> num_complex::Complex64 {
        num_complex::Complex64::new(self.re as f64, self.im as f64)
    }
}

impl From<i64> for GaussInt {
    fn from(re: i64) -> Self {
        GaussInt::real(re)
    }
}

impl Add for GaussInt {
    type Output = GaussInt;
    #[inline]
    fn add(self, rhs: Self) -> Self {
        GaussInt::new(self.re + rhs.re, self.im + rhs.im)
    }
}

impl Sub for GaussInt {
    type Output = GaussInt;
    #[inline]
    fn sub(self, rhs: Self) -> Self {
        GaussInt::new(self.re - rhs.re, self.im - rhs.im)
    }
}

impl Mul for GaussInt {
    type Output = GaussInt;
    #[inline]
    fn mul(self, rhs: Self) -> Self {
        GaussInt::new(
            self.re * rhs.re - self.im * rhs.im,
            self.re * rhs.im + self.im * rhs.re,
        )
    }
}

impl Neg for GaussInt {
    type Output = GaussInt;
    #[inline]
    fn neg(self) -> Self {
        GaussInt::new(-self.re, -self.im)
    }
}

impl AddAssign for GaussInt {
    #[inline]
    fn add_assign(&mut self, rhs: Self) {
        self.re += rhs.re;
        self.im += rhs.im;
    }
}

impl SubAssign for GaussInt {
    #[inline]
    fn sub_assign(&mut self, rhs: Self) {
        self.re -= rhs.re;
        self.im -= rhs.im;
    }
}

impl Sum for GaussInt {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(GaussInt::ZERO, Add::add)
    }
}

impl fmt::Display for GaussInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re, self.im) {
            (re, 0) => write!(f, "{re}"),
            (0, 1) => write!(f, "i"),
            (0, -1) => write!(f, "-i"),
            (0, im) => write!(f, "{im}i"),
            (re, 1) => write!(f, "{re}+i"),
            (re, -1) => write!(f, "{re}-i"),
            (re, im) if im > 0 => write!(f, "{re}+{im}i"),
            (re, im) => write!(f, "{re}{im}i"),
        }
    }
}

// Entries serialize as `[re, im]` integer pairs.
impl Serialize for GaussInt {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        [self.re, self.im].serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for GaussInt {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let [re, im] = <[i64; 2]>::deserialize(deserializer)?;
        Ok(GaussInt::new(re, im))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn small() -> impl Strategy<Value = GaussInt> {
        (-50i64..=50, -50i64..=50).prop_map(|(re, im)| GaussInt::new(re, im))
    }

    #[test]
    fn units_square_as_expected() {
        assert_eq!(GaussInt::I * GaussInt::I, GaussInt::NEG_ONE);
        assert_eq!(GaussInt::I * GaussInt::NEG_I, GaussInt::ONE);
        assert!(GaussInt::UNITS.iter().all(|u| u.is_unit()));
    }

    #[test]
    fn exact_division() {
        assert_eq!(GaussInt::new(2, -4).div_exact(2), Some(GaussInt::new(1, -2)));
        assert_eq!(GaussInt::new(1, 0).div_exact(2), None);
        assert_eq!(GaussInt::new(0, 3).div_exact(2), None);
        assert_eq!(GaussInt::ONE.div_exact(0), None);
    }

    #[test]
    fn display() {
        let shown: Vec<String> = [
            GaussInt::new(-1, 1),
            GaussInt::new(0, -1),
            GaussInt::new(3, 0),
            GaussInt::new(2, -5),
        ]
        .iter()
        .map(|g| g.to_string())
        .collect();
        assert_eq!(shown, ["-1+i", "-i", "3", "2-5i"]);
    }

    #[test]
    fn json_pairs() {
        let g: GaussInt = serde_json::from_str("[-1, 2]").unwrap();
        assert_eq!(g, GaussInt::new(-1, 2));
        assert_eq!(serde_json::to_string(&g).unwrap(), "[-1,2]");
    }

    proptest! {
        #[test]
        fn ring_laws(a in small(), b in small(), c in small()) {
            prop_assert_eq!(a * (b + c), a * b + a * c);
            prop_assert_eq!((a * b) * c, a * (b * c));
            prop_assert_eq!(a * b, b * a);
            prop_assert_eq!((a * b).conj(), a.conj() * b.conj());
            prop_assert_eq!((a * b).norm(), a.norm() * b.norm());
            prop_assert!(a.norm() >= 0);
            prop_assert_eq!(a + (-a), GaussInt::ZERO);
        }
    }
}
