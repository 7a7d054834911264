//! Exact rational parameters: epsilon and stretch factors.

use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;

use crate::error::{Error, Result};
use crate::weight::{format_ratio, parse_exact, Weight};

fn to_u64_ratio(s: &str) -> Result<Ratio<u64>> {
    let r = parse_exact(s)?;
    let (p, q) = (*r.numer(), *r.denom());
    if p < 0 {
        return Err(Error::InvalidParameter(format!("{s:?} must be nonnegative")));
    }
    let conv = |x: i128| {
        u32::try_from(x)
            .map(u64::from)
            .map_err(|_| Error::InvalidParameter(format!("{s:?} has components above 2^32")))
    };
    Ok(Ratio::new(conv(p)?, conv(q)?))
}

/// The spanner slack parameter, an exact rational in `(0, 1]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Epsilon(Ratio<u64>);

impl Epsilon {
    pub fn new(num: u64, den: u64) -> Result<Self> {
        if den == 0 || num == 0 || num > den {
            return Err(Error::InvalidParameter(format!(
                "epsilon must lie in (0, 1], got {num}/{den}"
            )));
        }
        Ok(Epsilon(Ratio::new(num, den)))
    }

    /// Epsilon restricted to the open interval `(0, 1)`.
    pub fn new_open(num: u64, den: u64) -> Result<Self> {
        let e = Self::new(num, den)?;
        if e.is_one() {
            return Err(Error::InvalidParameter("epsilon must lie in (0, 1)".into()));
        }
        Ok(e)
    }

    pub fn numer(&self) -> u64 {
        *self.0.numer()
    }

    pub fn denom(&self) -> u64 {
        *self.0.denom()
    }

    pub fn is_one(&self) -> bool {
        self.numer() == self.denom()
    }

    pub fn to_f64(&self) -> f64 {
        self.numer() as f64 / self.denom() as f64
    }

    pub fn ratio(&self) -> Ratio<u64> {
        self.0
    }

    /// `1 + epsilon` as a stretch factor.
    pub fn stretch(&self) -> StretchFactor {
        StretchFactor(Ratio::new(self.numer() + self.denom(), self.denom()))
    }

    /// `2/epsilon`, the forced-edge distance threshold, as `(num, den)`.
    pub fn forced_threshold(&self) -> (u64, u64) {
        (2 * self.denom(), self.numer())
    }
}

impl FromStr for Epsilon {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let r = to_u64_ratio(s)?;
        Epsilon::new(*r.numer(), *r.denom())
    }
}

impl fmt::Display for Epsilon {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.numer(), self.denom())
    }
}

/// A stretch bound `t >= 1`, exact rational.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StretchFactor(Ratio<u64>);

impl StretchFactor {
    pub fn new(num: u64, den: u64) -> Result<Self> {
        if den == 0 || num < den {
            return Err(Error::InvalidParameter(format!(
                "stretch factor must be >= 1, got {num}/{den}"
            )));
        }
        Ok(StretchFactor(Ratio::new(num, den)))
    }

    pub fn numer(&self) -> u64 {
        *self.0.numer()
    }

    pub fn denom(&self) -> u64 {
        *self.0.denom()
    }

    pub fn to_f64(&self) -> f64 {
        self.numer() as f64 / self.denom() as f64
    }

    /// `graph <= t * metric`, exact for exact weights.
    pub fn admits<W: Weight>(&self, graph: W, metric: W) -> bool {
        graph.scale(self.denom()) <= metric.scale(self.numer())
    }

    /// Same as [`admits`](Self::admits) but with relative slack `tol` on floating weights.
    pub fn admits_with_tolerance<W: Weight>(&self, graph: W, metric: W, tol: f64) -> bool {
        if W::EXACT {
            self.admits(graph, metric)
        } else {
            graph.to_f64() <= self.to_f64() * metric.to_f64() * (1.0 + tol)
        }
    }
}

impl FromStr for StretchFactor {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let r = to_u64_ratio(s)?;
        StretchFactor::new(*r.numer(), *r.denom())
    }
}

impl fmt::Display for StretchFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_ratio(Ratio::new(self.numer() as i128, self.denom() as i128)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn epsilon_parsing() {
        assert_eq!("1/4".parse::<Epsilon>().unwrap(), Epsilon::new(1, 4).unwrap());
        assert_eq!("0.25".parse::<Epsilon>().unwrap(), Epsilon::new(1, 4).unwrap());
        assert_eq!("2/8".parse::<Epsilon>().unwrap().denom(), 4);
        assert!("1".parse::<Epsilon>().unwrap().is_one());
        assert!("0".parse::<Epsilon>().is_err());
        assert!("1.5".parse::<Epsilon>().is_err());
        assert!("-0.5".parse::<Epsilon>().is_err());
        assert!(Epsilon::new_open(1, 1).is_err());
    }

    #[test]
    fn stretch_from_epsilon() {
        let t = Epsilon::new(1, 2).unwrap().stretch();
        assert_eq!((t.numer(), t.denom()), (3, 2));
        assert!(t.admits(3u64, 2));
        assert!(!t.admits(4u64, 2));
        assert!("0.9".parse::<StretchFactor>().is_err());
        assert_eq!("1.5".parse::<StretchFactor>().unwrap().to_string(), "1.5");
    }

    #[test]
    fn forced_threshold_is_two_over_epsilon() {
        assert_eq!(Epsilon::new(1, 4).unwrap().forced_threshold(), (8, 1));
    }
}
