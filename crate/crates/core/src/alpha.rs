//! Exponent vectors `α = (α_1, α_2, ...)` with `p_i = n^{-α_i}`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// A nonnegative extended real: finite, or `∞` meaning `p_i = 0`.
#[derive(Clone, Debug, PartialEq)]
pub enum AlphaEntry<T> {
    Finite(T),
    Infinite,
}

impl<T: Scalar> AlphaEntry<T> {
    pub fn is_infinite(&self) -> bool {
        matches!(self, AlphaEntry::Infinite)
    }

    pub fn finite(&self) -> Option<&T> {
        match self {
            AlphaEntry::Finite(v) => Some(v),
            AlphaEntry::Infinite => None,
        }
    }

    /// `α ≤ β` in the extended order.
    pub fn le(&self, other: &Self) -> bool {
        match (self, other) {
            (_, AlphaEntry::Infinite) => true,
            (AlphaEntry::Infinite, AlphaEntry::Finite(_)) => false,
            (AlphaEntry::Finite(a), AlphaEntry::Finite(b)) => a <= b,
        }
    }
}

/// A real that may be `-∞`, as produced by `s - α·v_s` when an infinite
/// entry of `α` meets a positive coefficient.
#[derive(Clone, Debug, PartialEq)]
pub enum Exponent<T> {
    NegInfinite,
    Finite(T),
}

impl<T: Scalar> Exponent<T> {
    pub fn finite(&self) -> Option<&T> {
        match self {
            Exponent::Finite(v) => Some(v),
            Exponent::NegInfinite => None,
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Exponent::NegInfinite => f64::NEG_INFINITY,
            Exponent::Finite(v) => v.to_f64().unwrap_or(f64::NAN),
        }
    }

    pub fn lt(&self, other: &Self) -> bool {
        match (self, other) {
            (Exponent::NegInfinite, Exponent::NegInfinite) => false,
            (Exponent::NegInfinite, Exponent::Finite(_)) => true,
            (Exponent::Finite(_), Exponent::NegInfinite) => false,
            (Exponent::Finite(a), Exponent::Finite(b)) => a < b,
        }
    }

    /// Strictly greater than a finite bound.
    pub fn gt_value(&self, bound: &T) -> bool {
        self.finite().is_some_and(|v| v > bound)
    }

    /// Strictly less than a finite bound.
    pub fn lt_value(&self, bound: &T) -> bool {
        self.finite().is_none_or(|v| v < bound)
    }

    pub fn plus(self, other: Self) -> Self {
        match (self, other) {
            (Exponent::Finite(a), Exponent::Finite(b)) => Exponent::Finite(a + b),
            _ => Exponent::NegInfinite,
        }
    }
}

/// Exponent vector `(α_1, ..., α_D)`; entries past the stored length are `∞`.
///
/// `p_0 = 1` is implied and not stored.
#[derive(Clone, Debug, PartialEq)]
pub struct AlphaVector<T = f64> {
    entries: Vec<AlphaEntry<T>>,
}

impl<T: Scalar> AlphaVector<T> {
    pub fn new(entries: Vec<AlphaEntry<T>>) -> Result<Self> {
        for (i, e) in entries.iter().enumerate() {
            if let AlphaEntry::Finite(v) = e {
                if v.is_negative() {
                    return Err(Error::pre(format!("alpha_{} = {:?} is negative", i + 1, v)));
                }
            }
        }
        Ok(Self { entries })
    }

    /// All-finite vector.
    pub fn finite(values: Vec<T>) -> Result<Self> {
        Self::new(values.into_iter().map(AlphaEntry::Finite).collect())
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[AlphaEntry<T>] {
        &self.entries
    }

    /// `α_i` for `i ≥ 1`; `∞` past the end.
    pub fn get(&self, i: usize) -> AlphaEntry<T> {
        assert!(i >= 1, "alpha is indexed from 1");
        self.entries.get(i - 1).cloned().unwrap_or(AlphaEntry::Infinite)
    }

    /// Copy with `α_i` replaced, padding with `∞` if needed.
    pub fn with_entry(&self, i: usize, value: AlphaEntry<T>) -> Result<Self> {
        assert!(i >= 1, "alpha is indexed from 1");
        let mut entries = self.entries.clone();
        if entries.len() < i {
            entries.resize(i, AlphaEntry::Infinite);
        }
        entries[i - 1] = value;
        Self::new(entries)
    }

    /// Entrywise `self ≤ other` over the first `dims` coordinates.
    pub fn le_entrywise(&self, other: &Self, dims: usize) -> bool {
        (1..=dims).all(|i| self.get(i).le(&other.get(i)))
    }

    /// Inclusion probability `n^{-α_i}` of an `i`-face whose boundary is present.
    pub fn probability(&self, i: usize, n: usize) -> f64 {
        match self.get(i) {
            AlphaEntry::Infinite => 0.0,
            AlphaEntry::Finite(a) => {
                let a = a.to_f64().unwrap_or(f64::INFINITY);
                (n as f64).powf(-a)
            }
        }
    }
}

impl<T: Scalar + fmt::Display> fmt::Display for AlphaVector<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, e) in self.entries.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            match e {
                AlphaEntry::Finite(v) => write!(f, "{v}")?,
                AlphaEntry::Infinite => f.write_str("inf")?,
            }
        }
        Ok(())
    }
}

/// Parses a comma list such as `0.5,inf,2`.
impl<T: Scalar + FromStr> FromStr for AlphaVector<T> {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Err(Error::Parse("empty alpha list".into()));
        }
        let mut entries = Vec::new();
        for tok in s.split(',') {
            let tok = tok.trim();
            let entry = match tok.to_ascii_lowercase().as_str() {
                "inf" | "infinity" | "∞" => AlphaEntry::Infinite,
                _ => {
                    let v: T = tok
                        .parse()
                        .map_err(|_| Error::Parse(format!("malformed alpha entry {tok:?}")))?;
                    AlphaEntry::Finite(v)
                }
            };
            entries.push(entry);
        }
        Self::new(entries)
    }
}

impl<T: Scalar + fmt::Display> Serialize for AlphaVector<T> {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de, T: Scalar + FromStr> Deserialize<'de> for AlphaVector<T> {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
