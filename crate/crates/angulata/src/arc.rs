//! Arcs, laminations, and the rounding maps down to objects.
//!
//! An arc is a (d+1)-tuple of points on the vertex circle that avoid the
//! vertices themselves: strictly increasing rationals in [0, m), none an
//! integer. Rounding every coordinate down (up) to the nearest vertex yields
//! the tuple A- (A+). When the rounded multiset repeats a vertex or violates
//! admissibility, the arc rounds to the distinguished zero object, a value,
//! not an error.
//!
//! All coordinate arithmetic is exact: rationals only, no floating point, so
//! interval membership tests in [`crate::shear`] can never be fooled by
//! representation error.

use itertools::Itertools;
use num_rational::Ratio;
use serde::Deserialize;
use std::fmt;

use crate::error::{Error, Result};
use crate::params::ModelParams;
use crate::tuple::{admissible_sorted, alternates, IndexTuple};

pub type Rat = Ratio<i64>;

/// Parses "p/q", a plain integer, or a decimal such as "2.5", exactly.
pub fn parse_rational(s: &str) -> Result<Rat> {
    let s = s.trim();
    let bad = || Error::Validation(format!("cannot parse rational from {s:?}"));
    if s.is_empty() {
        return Err(bad());
    }
    if let Some((num, den)) = s.split_once('/') {
        let n: i64 = num.trim().parse().map_err(|_| bad())?;
        let d: i64 = den.trim().parse().map_err(|_| bad())?;
        if d == 0 {
            return Err(Error::Validation(format!("zero denominator in {s:?}")));
        }
        return Ok(Rat::new(n, d));
    }
    if let Some((int_part, frac_part)) = s.split_once('.') {
        let negative = int_part.trim_start().starts_with('-');
        let i: i64 = if int_part == "-" || int_part.is_empty() {
            0
        } else {
            int_part.trim().parse().map_err(|_| bad())?
        };
        if frac_part.is_empty()
            || frac_part.len() > 12
            || !frac_part.bytes().all(|b| b.is_ascii_digit())
        {
            return Err(bad());
        }
        let f: i64 = frac_part.parse().map_err(|_| bad())?;
        let den = 10i64.pow(frac_part.len() as u32);
        let frac = Rat::new(f, den);
        let whole = Rat::from_integer(i);
        return Ok(if negative { whole - frac } else { whole + frac });
    }
    let i: i64 = s.parse().map_err(|_| bad())?;
    Ok(Rat::from_integer(i))
}

fn reduce_mod(r: Rat, m: u32) -> Rat {
    let mm = Rat::from_integer(m as i64);
    r - (r / mm).floor() * mm
}

/// Strictly increasing (d+1)-tuple of non-integer rationals in [0, m).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Arc {
    coords: Vec<Rat>,
}

impl Arc {
    /// Reduces every coordinate into [0, m), sorts, and validates that the
    /// result has d+1 distinct non-integer coordinates.
    pub fn new(coords: Vec<Rat>, p: &ModelParams) -> Result<Self> {
        if coords.len() != p.tuple_len() {
            return Err(Error::Validation(format!(
                "arc needs {} coordinates, got {}",
                p.tuple_len(),
                coords.len()
            )));
        }
        let mut coords: Vec<Rat> = coords.into_iter().map(|c| reduce_mod(c, p.m())).collect();
        coords.sort_unstable();
        if let Some(c) = coords.iter().find(|c| c.is_integer()) {
            return Err(Error::Validation(format!(
                "arc coordinate {c} lands on a vertex"
            )));
        }
        if coords.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::Validation(
                "arc coordinates must be distinct mod m".into(),
            ));
        }
        Ok(Arc { coords })
    }

    pub fn coords(&self) -> &[Rat] {
        &self.coords
    }

    /// Parses the textual form "1/2,5/2,9/2,13/2" (rationals or decimals).
    pub fn parse(s: &str, p: &ModelParams) -> Result<Self> {
        let coords = s
            .split(',')
            .map(parse_rational)
            .collect::<Result<Vec<_>>>()?;
        Arc::new(coords, p)
    }
}

impl fmt::Display for Arc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.coords.iter().join(","))
    }
}

/// Result of rounding an arc: an object label, or the zero object.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Rounded {
    Object(IndexTuple),
    Zero,
}

impl Rounded {
    pub fn as_object(&self) -> Option<&IndexTuple> {
        match self {
            Rounded::Object(t) => Some(t),
            Rounded::Zero => None,
        }
    }
}

fn round_with(a: &Arc, p: &ModelParams, f: impl Fn(&Rat) -> i64) -> Rounded {
    let m = p.m() as i64;
    let mut vs: Vec<u32> = a.coords.iter().map(|c| f(c).rem_euclid(m) as u32).collect();
    vs.sort_unstable();
    if vs.windows(2).any(|w| w[0] == w[1]) {
        return Rounded::Zero;
    }
    if !admissible_sorted(&vs, p) {
        return Rounded::Zero;
    }
    Rounded::Object(IndexTuple::from_unsorted(vs))
}

/// Largest vertex at or below each coordinate, taken mod m.
pub fn round_down(a: &Arc, p: &ModelParams) -> Rounded {
    round_with(a, p, |c| c.floor().to_integer())
}

/// Smallest vertex at or above each coordinate, taken mod m.
pub fn round_up(a: &Arc, p: &ModelParams) -> Rounded {
    round_with(a, p, |c| c.ceil().to_integer())
}

/// Strict-alternation test over exact rationals; shared values break it.
pub fn intertwines_arcs(a: &Arc, b: &Arc, p: &ModelParams) -> bool {
    debug_assert_eq!(a.coords.len(), p.tuple_len());
    debug_assert_eq!(b.coords.len(), p.tuple_len());
    alternates(&a.coords, &b.coords)
}

/// Pairwise non-intertwining family of arcs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lamination {
    arcs: Vec<Arc>,
}

impl Lamination {
    pub fn new(arcs: Vec<Arc>, p: &ModelParams) -> Result<Self> {
        for (i, a) in arcs.iter().enumerate() {
            for b in &arcs[i + 1..] {
                if intertwines_arcs(a, b, p) {
                    return Err(Error::RigidityViolation(format!(
                        "arcs ({a}) and ({b}) intertwine"
                    )));
                }
            }
        }
        Ok(Lamination { arcs })
    }

    pub fn arcs(&self) -> &[Arc] {
        &self.arcs
    }

    /// Loads the file format {"arcs": [["1/2","5/2",...], ...]}.
    pub fn from_json_str(s: &str, p: &ModelParams) -> Result<Self> {
        #[derive(Deserialize)]
        struct Raw {
            arcs: Vec<Vec<String>>,
        }
        let raw: Raw = serde_json::from_str(s)
            .map_err(|e| Error::Validation(format!("bad lamination file: {e}")))?;
        let arcs = raw
            .arcs
            .into_iter()
            .map(|coords| {
                let coords = coords
                    .iter()
                    .map(|c| parse_rational(c))
                    .collect::<Result<Vec<_>>>()?;
                Arc::new(coords, p)
            })
            .collect::<Result<Vec<_>>>()?;
        Lamination::new(arcs, p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(d: u32, n: u32) -> ModelParams {
        ModelParams::new(d, n).unwrap()
    }

    fn arc(s: &str, p: &ModelParams) -> Arc {
        Arc::parse(s, p).unwrap()
    }

    #[test]
    fn rational_parsing_exact() {
        assert_eq!(parse_rational("1/2").unwrap(), Rat::new(1, 2));
        assert_eq!(parse_rational("13/2").unwrap(), Rat::new(13, 2));
        assert_eq!(parse_rational("2.5").unwrap(), Rat::new(5, 2));
        assert_eq!(parse_rational("-0.25").unwrap(), Rat::new(-1, 4));
        assert_eq!(parse_rational("-1.75").unwrap(), Rat::new(-7, 4));
        assert_eq!(parse_rational("7").unwrap(), Rat::from_integer(7));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("a.5").is_err());
        assert!(parse_rational("").is_err());
    }

    #[test]
    fn arc_validation() {
        let p33 = p(3, 3);
        assert!(Arc::parse("1/2,5/2,9/2,13/2", &p33).is_ok());
        // Integer coordinate.
        assert!(Arc::parse("1,5/2,9/2,13/2", &p33).is_err());
        // Wrong arity.
        assert!(Arc::parse("1/2,5/2", &p33).is_err());
        // Duplicate after reduction mod 10.
        assert!(Arc::parse("1/2,21/2,9/2,13/2", &p33).is_err());
        // Reduction into [0, m) re-sorts.
        let a = Arc::parse("21/2,5/2,9/2,27/2", &p33).unwrap();
        assert_eq!(a.to_string(), "1/2,5/2,7/2,9/2");
    }

    #[test]
    fn rounding_examples() {
        let p33 = p(3, 3);
        let a = arc("0.5,2.5,4.5,6.5", &p33);
        assert_eq!(
            round_down(&a, &p33).as_object().unwrap().entries(),
            &[0, 2, 4, 6]
        );
        assert_eq!(
            round_up(&a, &p33).as_object().unwrap().entries(),
            &[1, 3, 5, 7]
        );

        let p6 = p(1, 3);
        assert_eq!(round_down(&arc("0.5,1.5", &p6), &p6), Rounded::Zero);
        assert_eq!(round_down(&arc("1.2,1.8", &p6), &p6), Rounded::Zero);
        // Ceilings 5 and 6 = 0 mod 6 are cyclically adjacent.
        assert_eq!(round_up(&arc("4.5,5.5", &p6), &p6), Rounded::Zero);

        let p5 = p(1, 2);
        assert_eq!(
            round_up(&arc("0.5,2.5", &p5), &p5).as_object().unwrap().entries(),
            &[1, 3]
        );
    }

    #[test]
    fn arc_intertwining_examples() {
        let p6 = p(1, 3);
        assert!(intertwines_arcs(
            &arc("0.5,3.5", &p6),
            &arc("2.5,4.5", &p6),
            &p6
        ));
        assert!(!intertwines_arcs(
            &arc("0.5,3.5", &p6),
            &arc("0.7,3.2", &p6),
            &p6
        ));
        let p33 = p(3, 3);
        assert!(intertwines_arcs(
            &arc("0.5,2.5,4.5,6.5", &p33),
            &arc("1.5,3.5,5.5,7.5", &p33),
            &p33
        ));
    }

    #[test]
    fn rounded_tuples_interleave() {
        // If both roundings exist and are disjoint, they intertwine.
        let p33 = p(3, 3);
        let a = arc("0.5,2.5,4.5,6.5", &p33);
        let lo = round_down(&a, &p33);
        let hi = round_up(&a, &p33);
        let (lo, hi) = (lo.as_object().unwrap(), hi.as_object().unwrap());
        assert!(crate::tuple::intertwines(lo, hi, &p33));
    }

    #[test]
    fn lamination_rejects_intertwining() {
        let p6 = p(1, 3);
        let good = Lamination::new(vec![arc("0.5,2.5", &p6), arc("0.7,2.2", &p6)], &p6);
        assert!(good.is_ok());
        let bad = Lamination::new(vec![arc("0.5,3.5", &p6), arc("2.5,4.5", &p6)], &p6);
        assert!(matches!(bad, Err(Error::RigidityViolation(_))));
    }

    #[test]
    fn lamination_file_round_trip() {
        let p6 = p(1, 3);
        let l = Lamination::from_json_str(r#"{"arcs": [["1/2","5/2"], ["0.7","2.2"]]}"#, &p6)
            .unwrap();
        assert_eq!(l.arcs().len(), 2);
        assert_eq!(l.arcs()[0].coords()[0], Rat::new(1, 2));
    }
}
