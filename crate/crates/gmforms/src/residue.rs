use std::fmt;
use std::ops::{Add, Neg};

macro_rules! residue {
    ($name:ident, $m:expr, $doc:expr) => {
        #[doc = $doc]
        #[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
        pub struct $name(u8);

        impl $name {
            pub const MODULUS: i64 = $m;

            pub fn new(v: i64) -> Self {
                Self(v.rem_euclid(Self::MODULUS) as u8)
            }

            pub fn value(self) -> u8 {
                self.0
            }
        }

        impl Add for $name {
            type Output = Self;
            fn add(self, rhs: Self) -> Self {
                Self((self.0 + rhs.0) % Self::MODULUS as u8)
            }
        }

        impl Neg for $name {
            type Output = Self;
            fn neg(self) -> Self {
                Self::new(-i64::from(self.0))
            }
        }

        impl From<$name> for i64 {
            fn from(x: $name) -> i64 {
                i64::from(x.0)
            }
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write!(f, "{}", self.0)
            }
        }
    };
}

residue!(Z4, 4, "A residue mod 4.");
residue!(Z8, 8, "A residue mod 8.");
