use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::de::{self, Deserializer};
use serde::ser::Serializer;
use serde::{Deserialize, Serialize};

use super::IntervalError;

pub type Rational = BigRational;

/// Parses `"p/q"` or `"p"`.
pub fn parse_rational(text: &str) -> Result<Rational, IntervalError> {
    Rational::from_str(text.trim()).map_err(|_| IntervalError::ParseRational(text.to_string()))
}

pub fn rat(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn int(value: i64) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

/// JSON form of a rational: a `"p/q"` string, or a bare integer on input.
#[derive(Deserialize)]
#[serde(untagged)]
enum RawRational {
    Text(String),
    Integer(i64),
}

pub(crate) mod text_vec {
    use super::*;
    use serde::ser::SerializeSeq;

    pub fn serialize<S: Serializer>(values: &[Rational], s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(values.len()))?;
        for v in values {
            seq.serialize_element(&v.to_string())?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rational>, D::Error> {
        Vec::<RawRational>::deserialize(d)?
            .into_iter()
            .map(|r| match r {
                RawRational::Text(t) => parse_rational(&t).map_err(de::Error::custom),
                RawRational::Integer(i) => Ok(int(i)),
            })
            .collect()
    }
}

/// A closed interval `[lo, hi]` with rational endpoints, `lo <= hi`.
///
/// Serialized as a two-element array of rational strings.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalInterval {
    lo: Rational,
    hi: Rational,
}

impl RationalInterval {
    pub fn new(lo: Rational, hi: Rational) -> Result<Self, IntervalError> {
        if lo > hi {
            return Err(IntervalError::InvertedInterval {
                lo: lo.to_string(),
                hi: hi.to_string(),
            });
        }
        Ok(Self { lo, hi })
    }

    pub fn point(x: Rational) -> Self {
        Self { lo: x.clone(), hi: x }
    }

    /// Parses `"lo,hi"` (brackets optional), e.g. `"[2/5, 3/5]"`.
    pub fn parse(text: &str) -> Result<Self, IntervalError> {
        let inner = text.trim().trim_start_matches('[').trim_end_matches(']');
        let mut parts = inner.split(',');
        let (Some(lo), Some(hi), None) = (parts.next(), parts.next(), parts.next()) else {
            return Err(IntervalError::ParseInterval(text.to_string()));
        };
        Self::new(parse_rational(lo)?, parse_rational(hi)?)
    }

    pub fn lo(&self) -> &Rational {
        &self.lo
    }

    pub fn hi(&self) -> &Rational {
        &self.hi
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn is_degenerate(&self) -> bool {
        self.lo == self.hi
    }

    pub fn contains(&self, x: &Rational) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    /// `x` lies in the open interval `(lo, hi)`.
    pub fn contains_interior(&self, x: &Rational) -> bool {
        &self.lo < x && x < &self.hi
    }

    pub fn contains_interval(&self, other: &RationalInterval) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    pub fn intersects(&self, other: &RationalInterval) -> bool {
        self.lo <= other.hi && other.lo <= self.hi
    }

    /// Meets the open interior of `other`.
    pub fn meets_interior_of(&self, other: &RationalInterval) -> bool {
        self.lo < other.hi && other.lo < self.hi
    }

    pub fn intersection(&self, other: &RationalInterval) -> Option<RationalInterval> {
        let lo = (&self.lo).max(&other.lo).clone();
        let hi = (&self.hi).min(&other.hi).clone();
        (lo <= hi).then_some(RationalInterval { lo, hi })
    }

    pub fn hull(&self, other: &RationalInterval) -> RationalInterval {
        RationalInterval {
            lo: (&self.lo).min(&other.lo).clone(),
            hi: (&self.hi).max(&other.hi).clone(),
        }
    }

    pub fn midpoint(&self) -> Rational {
        (&self.lo + &self.hi) / int(2)
    }

    /// The `2^resolution` equal closed cells covering the interval.
    pub fn dyadic_cells(&self, resolution: u32) -> Vec<RationalInterval> {
        let points = self.dyadic_grid(resolution);
        points
            .windows(2)
            .map(|w| RationalInterval {
                lo: w[0].clone(),
                hi: w[1].clone(),
            })
            .collect()
    }

    /// The `2^resolution + 1` grid points `lo + k * width / 2^resolution`.
    pub fn dyadic_grid(&self, resolution: u32) -> Vec<Rational> {
        let cells = 1i64 << resolution;
        let step = self.width() / int(cells);
        (0..=cells).map(|k| &self.lo + &step * int(k)).collect()
    }
}

impl fmt::Display for RationalInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

impl Serialize for RationalInterval {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        [self.lo.to_string(), self.hi.to_string()].serialize(s)
    }
}

impl<'de> Deserialize<'de> for RationalInterval {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let ends = text_vec::deserialize(d)?;
        let [lo, hi]: [Rational; 2] = ends
            .try_into()
            .map_err(|v: Vec<Rational>| de::Error::invalid_length(v.len(), &"two endpoints"))?;
        RationalInterval::new(lo, hi).map_err(de::Error::custom)
    }
}
