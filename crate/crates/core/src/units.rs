//! Exact quantities used throughout the designer.
//!
//! Money is held in integer minor units (cents), power in milliwatts and
//! weight in grams, so that every sum and product in a design is exact.
//! Catalog documents express power and weight as plain numbers in watts and
//! kilograms with at most three decimals.

use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Mul, Sub};
use std::str::FromStr;

use num_rational::Ratio;
use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Minor units per major currency unit.
pub const MINOR_PER_MAJOR: i64 = 100;

/// An amount of money in minor currency units.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Money(pub i64);

impl Money {
    pub const ZERO: Money = Money(0);

    pub fn from_major(major: i64) -> Money {
        Money(major * MINOR_PER_MAJOR)
    }

    pub fn minor(self) -> i64 {
        self.0
    }

    /// Parses a decimal amount of major units ("80", "80.5", "1200.25").
    pub fn parse_major(s: &str) -> Result<Money, String> {
        let s = s.trim();
        let (int, frac) = match s.split_once('.') {
            Some((i, f)) => (i, f),
            None => (s, ""),
        };
        if int.is_empty() || !int.bytes().all(|b| b.is_ascii_digit()) {
            return Err(format!("invalid amount `{s}`"));
        }
        if frac.len() > 2 || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(format!("invalid amount `{s}` (at most two decimals)"));
        }
        let int: i64 = int.parse().map_err(|_| format!("amount `{s}` out of range"))?;
        let mut frac_minor: i64 = if frac.is_empty() { 0 } else { frac.parse().unwrap() };
        if frac.len() == 1 {
            frac_minor *= 10;
        }
        int.checked_mul(MINOR_PER_MAJOR)
            .and_then(|v| v.checked_add(frac_minor))
            .map(Money)
            .ok_or_else(|| format!("amount `{s}` out of range"))
    }

    pub fn as_ratio(self) -> Ratio<i64> {
        Ratio::from_integer(self.0)
    }
}

impl Add for Money {
    type Output = Money;
    fn add(self, rhs: Money) -> Money {
        Money(self.0 + rhs.0)
    }
}

impl AddAssign for Money {
    fn add_assign(&mut self, rhs: Money) {
        self.0 += rhs.0;
    }
}

impl Sub for Money {
    type Output = Money;
    fn sub(self, rhs: Money) -> Money {
        Money(self.0 - rhs.0)
    }
}

impl Mul<u64> for Money {
    type Output = Money;
    fn mul(self, rhs: u64) -> Money {
        Money(self.0 * rhs as i64)
    }
}

impl Sum for Money {
    fn sum<I: Iterator<Item = Money>>(iter: I) -> Money {
        iter.fold(Money::ZERO, Add::add)
    }
}

impl fmt::Display for Money {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = if self.0 < 0 { "-" } else { "" };
        let abs = self.0.unsigned_abs();
        let major = abs / MINOR_PER_MAJOR as u64;
        let minor = abs % MINOR_PER_MAJOR as u64;
        write!(f, "{sign}{}.{minor:02}", group_thousands(major))
    }
}

fn group_thousands(v: u64) -> String {
    let digits = v.to_string();
    let mut out = String::with_capacity(digits.len() + digits.len() / 3);
    for (i, c) in digits.chars().enumerate() {
        if i > 0 && (digits.len() - i).is_multiple_of(3) {
            out.push(',');
        }
        out.push(c);
    }
    out
}

macro_rules! milli_quantity {
    ($name:ident, $unit:literal, $what:literal) => {
        #[doc = concat!("A ", $what, " in thousandths of a ", $unit, ".")]
        #[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
        pub struct $name(pub i64);

        impl $name {
            pub const ZERO: $name = $name(0);

            pub fn from_units(units: i64) -> $name {
                $name(units * 1000)
            }

            pub fn milli(self) -> i64 {
                self.0
            }

            pub fn as_ratio(self) -> Ratio<i64> {
                Ratio::new(self.0, 1000)
            }
        }

        impl Add for $name {
            type Output = $name;
            fn add(self, rhs: $name) -> $name {
                $name(self.0 + rhs.0)
            }
        }

        impl AddAssign for $name {
            fn add_assign(&mut self, rhs: $name) {
                self.0 += rhs.0;
            }
        }

        impl Sub for $name {
            type Output = $name;
            fn sub(self, rhs: $name) -> $name {
                $name(self.0 - rhs.0)
            }
        }

        impl Mul<u64> for $name {
            type Output = $name;
            fn mul(self, rhs: u64) -> $name {
                $name(self.0 * rhs as i64)
            }
        }

        impl Sum for $name {
            fn sum<I: Iterator<Item = $name>>(iter: I) -> $name {
                iter.fold($name::ZERO, Add::add)
            }
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write!(f, "{} {}", format_milli(self.0), $unit)
            }
        }

        impl Serialize for $name {
            fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
                serialize_milli(self.0, s)
            }
        }

        impl<'de> Deserialize<'de> for $name {
            fn deserialize<D: Deserializer<'de>>(d: D) -> Result<$name, D::Error> {
                d.deserialize_any(MilliVisitor).map($name)
            }
        }
    };
}

milli_quantity!(Watts, "W", "power draw");
milli_quantity!(Kilograms, "kg", "mass");

fn format_milli(v: i64) -> String {
    let sign = if v < 0 { "-" } else { "" };
    let abs = v.unsigned_abs();
    let (int, frac) = (abs / 1000, abs % 1000);
    if frac == 0 {
        format!("{sign}{int}")
    } else {
        let frac = format!("{frac:03}");
        format!("{sign}{int}.{}", frac.trim_end_matches('0'))
    }
}

fn serialize_milli<S: Serializer>(v: i64, s: S) -> Result<S::Ok, S::Error> {
    if v % 1000 == 0 {
        s.serialize_i64(v / 1000)
    } else {
        s.serialize_f64(v as f64 / 1000.0)
    }
}

struct MilliVisitor;

impl Visitor<'_> for MilliVisitor {
    type Value = i64;

    fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
        f.write_str("a number with at most three decimals")
    }

    fn visit_i64<E: de::Error>(self, v: i64) -> Result<i64, E> {
        v.checked_mul(1000).ok_or_else(|| E::custom("number out of range"))
    }

    fn visit_u64<E: de::Error>(self, v: u64) -> Result<i64, E> {
        i64::try_from(v)
            .ok()
            .and_then(|v| v.checked_mul(1000))
            .ok_or_else(|| E::custom("number out of range"))
    }

    fn visit_f64<E: de::Error>(self, v: f64) -> Result<i64, E> {
        let scaled = v * 1000.0;
        if !scaled.is_finite() || scaled.abs() > 9.0e15 {
            return Err(E::custom("number out of range"));
        }
        let rounded = scaled.round();
        if (scaled - rounded).abs() > 1e-6 {
            return Err(E::custom("at most three decimals are supported"));
        }
        Ok(rounded as i64)
    }
}

/// Ratio of node-facing to core-facing ports on an edge switch.
///
/// Always a positive rational; decimal notation is rejected so that floor
/// and ceiling operations stay exact.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BlockingFactor(Ratio<u64>);

impl BlockingFactor {
    pub const NON_BLOCKING: BlockingFactor = BlockingFactor(Ratio::new_raw(1, 1));

    pub fn new(numer: u64, denom: u64) -> Result<BlockingFactor, String> {
        if numer == 0 || denom == 0 {
            return Err("blocking factor must be a positive rational".into());
        }
        Ok(BlockingFactor(Ratio::new(numer, denom)))
    }

    pub fn integer(v: u64) -> Result<BlockingFactor, String> {
        BlockingFactor::new(v, 1)
    }

    pub fn numer(&self) -> u64 {
        *self.0.numer()
    }

    pub fn denom(&self) -> u64 {
        *self.0.denom()
    }

    pub fn ratio(&self) -> Ratio<u64> {
        self.0
    }
}

impl FromStr for BlockingFactor {
    type Err = String;

    fn from_str(s: &str) -> Result<BlockingFactor, String> {
        let s = s.trim();
        let parse = |part: &str| -> Result<u64, String> {
            if part.is_empty() || !part.bytes().all(|b| b.is_ascii_digit()) {
                return Err(format!(
                    "invalid blocking factor `{s}`: expected an integer or `p/q`"
                ));
            }
            part.parse::<u64>().map_err(|_| format!("blocking factor `{s}` out of range"))
        };
        match s.split_once('/') {
            Some((p, q)) => BlockingFactor::new(parse(p)?, parse(q)?),
            None => BlockingFactor::new(parse(s)?, 1),
        }
    }
}

impl fmt::Display for BlockingFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_ratio(f, self.numer(), self.denom())
    }
}

pub(crate) fn fmt_ratio(f: &mut fmt::Formatter<'_>, n: u64, d: u64) -> fmt::Result {
    if d == 1 {
        write!(f, "{n}")
    } else {
        write!(f, "{n}/{d}")
    }
}

impl Serialize for BlockingFactor {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for BlockingFactor {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<BlockingFactor, D::Error> {
        struct V;
        impl Visitor<'_> for V {
            type Value = BlockingFactor;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a positive integer or a `p/q` string")
            }
            fn visit_u64<E: de::Error>(self, v: u64) -> Result<BlockingFactor, E> {
                BlockingFactor::integer(v).map_err(E::custom)
            }
            fn visit_i64<E: de::Error>(self, v: i64) -> Result<BlockingFactor, E> {
                u64::try_from(v)
                    .map_err(|_| E::custom("blocking factor must be positive"))
                    .and_then(|v| BlockingFactor::integer(v).map_err(E::custom))
            }
            fn visit_f64<E: de::Error>(self, _: f64) -> Result<BlockingFactor, E> {
                Err(E::custom("decimal blocking factors are not accepted; use `p/q`"))
            }
            fn visit_str<E: de::Error>(self, v: &str) -> Result<BlockingFactor, E> {
                v.parse().map_err(E::custom)
            }
        }
        d.deserialize_any(V)
    }
}

/// Serializes an exact ratio as `"p/q"` (or `"p"` when integral).
pub mod ratio_string {
    use super::*;

    pub fn serialize<S: Serializer, T>(r: &Ratio<T>, s: S) -> Result<S::Ok, S::Error>
    where
        T: Clone + fmt::Display + num_integer::Integer,
    {
        if r.is_integer() {
            s.collect_str(r.numer())
        } else {
            s.collect_str(&format_args!("{}/{}", r.numer(), r.denom()))
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>, T>(d: D) -> Result<Ratio<T>, D::Error>
    where
        T: Clone + FromStr + num_integer::Integer,
    {
        let s = String::deserialize(d)?;
        let (n, q) = s.split_once('/').unwrap_or((s.as_str(), "1"));
        let n = n.trim().parse::<T>().map_err(|_| de::Error::custom("bad ratio"))?;
        let q = q.trim().parse::<T>().map_err(|_| de::Error::custom("bad ratio"))?;
        if q.is_zero() {
            return Err(de::Error::custom("zero denominator"));
        }
        Ok(Ratio::new(n, q))
    }
}

/// Renders a rational as a decimal rounded half away from zero.
pub fn ratio_to_decimal(r: &Ratio<i64>, places: u32) -> String {
    let scale = 10i128.pow(places);
    let n = *r.numer() as i128 * scale;
    let d = *r.denom() as i128;
    let q = n / d;
    let rem = n % d;
    let rounded = if 2 * rem.abs() >= d.abs() { q + n.signum() * d.signum() } else { q };
    let sign = if rounded < 0 { "-" } else { "" };
    let abs = rounded.unsigned_abs();
    if places == 0 {
        return format!("{sign}{abs}");
    }
    let s = scale as u128;
    format!("{sign}{}.{:0width$}", abs / s, abs % s, width = places as usize)
}

/// Rounds a rational to the nearest multiple of `step`, half away from zero.
pub fn round_to_step(r: Ratio<i64>, step: i64) -> i64 {
    let scaled = r / step;
    scaled.round().to_integer() * step
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn blocking_factor_parsing() {
        assert_eq!("2".parse::<BlockingFactor>().unwrap().numer(), 2);
        let bl: BlockingFactor = "4/2".parse().unwrap();
        assert_eq!((bl.numer(), bl.denom()), (2, 1));
        assert_eq!("3/2".parse::<BlockingFactor>().unwrap().to_string(), "3/2");
        assert!("1.5".parse::<BlockingFactor>().is_err());
        assert!("0".parse::<BlockingFactor>().is_err());
        assert!("1/0".parse::<BlockingFactor>().is_err());
        assert!("-1".parse::<BlockingFactor>().is_err());
    }

    #[test]
    fn blocking_factor_json() {
        let bl: BlockingFactor = serde_json::from_str("3").unwrap();
        assert_eq!(bl.numer(), 3);
        let bl: BlockingFactor = serde_json::from_str("\"5/3\"").unwrap();
        assert_eq!(serde_json::to_string(&bl).unwrap(), "\"5/3\"");
        assert!(serde_json::from_str::<BlockingFactor>("1.5").is_err());
    }

    #[test]
    fn money_parse_and_display() {
        assert_eq!(Money::parse_major("80").unwrap(), Money(8000));
        assert_eq!(Money::parse_major("80.5").unwrap(), Money(8050));
        assert_eq!(Money::parse_major("0.05").unwrap(), Money(5));
        assert!(Money::parse_major("1.234").is_err());
        assert!(Money::parse_major("-3").is_err());
        assert_eq!(Money::from_major(2_515_320).to_string(), "2,515,320.00");
        assert_eq!(Money(-150).to_string(), "-1.50");
    }

    #[test]
    fn milli_quantities_round_trip() {
        let w: Watts = serde_json::from_str("152").unwrap();
        assert_eq!(w, Watts(152_000));
        let w: Watts = serde_json::from_str("4.22").unwrap();
        assert_eq!(w, Watts(4_220));
        assert_eq!(serde_json::to_string(&w).unwrap(), "4.22");
        assert!(serde_json::from_str::<Kilograms>("1.0005").is_err());
        assert_eq!(Kilograms(7_250).to_string(), "7.25 kg");
    }

    #[test]
    fn decimal_rendering() {
        assert_eq!(ratio_to_decimal(&Ratio::new(1_100_000, 36), 0), "30556");
        assert_eq!(ratio_to_decimal(&Ratio::new(152, 36), 2), "4.22");
        assert_eq!(ratio_to_decimal(&Ratio::new(-1, 2), 0), "-1");
        assert_eq!(round_to_step(Ratio::new(1_100_000, 36), 100), 30_600);
    }
}
