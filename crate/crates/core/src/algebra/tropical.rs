use std::fmt;

use num::BigRational;

/// Rationals extended by −∞ and +∞, totally ordered with −∞ < finite < +∞.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Ext {
    NegInf,
    Fin(BigRational),
    PosInf,
}

impl Ext {
    pub fn int(v: i64) -> Ext {
        Ext::Fin(BigRational::from_integer(v.into()))
    }

    /// Sum where +∞ absorbs (min-plus convention).
    pub fn add_min(&self, o: &Ext) -> Ext {
        match (self, o) {
            (Ext::PosInf, _) | (_, Ext::PosInf) => Ext::PosInf,
            (Ext::NegInf, _) | (_, Ext::NegInf) => Ext::NegInf,
            (Ext::Fin(a), Ext::Fin(b)) => Ext::Fin(a + b),
        }
    }

    /// Sum where −∞ absorbs (max-plus convention).
    pub fn add_max(&self, o: &Ext) -> Ext {
        match (self, o) {
            (Ext::NegInf, _) | (_, Ext::NegInf) => Ext::NegInf,
            (Ext::PosInf, _) | (_, Ext::PosInf) => Ext::PosInf,
            (Ext::Fin(a), Ext::Fin(b)) => Ext::Fin(a + b),
        }
    }
}

impl fmt::Display for Ext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ext::NegInf => write!(f, "-inf"),
            Ext::PosInf => write!(f, "inf"),
            Ext::Fin(r) => write!(f, "{r}"),
        }
    }
}
