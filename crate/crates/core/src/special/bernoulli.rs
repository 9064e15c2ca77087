use crate::error::{domain, Error, Result};

/// Degree of a supported Bernoulli polynomial, `0..=5`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BernoulliDegree(u8);

impl BernoulliDegree {
    pub const MAX: u8 = 5;

    pub fn new(k: i64) -> Result<Self> {
        if (0..=Self::MAX as i64).contains(&k) {
            Ok(Self(k as u8))
        } else {
            Err(Error::UnsupportedDegree(k))
        }
    }

    pub fn get(self) -> u8 {
        self.0
    }
}

impl TryFrom<i64> for BernoulliDegree {
    type Error = Error;

    fn try_from(k: i64) -> Result<Self> {
        Self::new(k)
    }
}

/// `B_k(x)` for `x` in `[0, 1]`.
pub fn bernoulli_poly(k: BernoulliDegree, x: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&x) {
        return Err(domain(
            "x",
            x,
            "Bernoulli polynomials are evaluated on [0, 1]",
        ));
    }
    Ok(eval(k.0, x))
}

pub(crate) fn eval(k: u8, x: f64) -> f64 {
    match k {
        0 => 1.0,
        1 => x - 0.5,
        2 => x * (x - 1.0) + 1.0 / 6.0,
        3 => x * (x - 0.5) * (x - 1.0),
        4 => {
            let t = x * (x - 1.0);
            t * t - 1.0 / 30.0
        }
        5 => {
            let t = x * (x - 1.0);
            (x - 0.5) * t * (t - 1.0 / 3.0)
        }
        _ => unreachable!("degree validated by BernoulliDegree"),
    }
}

/// Bernoulli numbers `B_2 = 1/6` and `B_4 = -1/30`.
pub fn bernoulli_number(k: i64) -> Result<f64> {
    match k {
        2 => Ok(B2),
        4 => Ok(B4),
        _ => Err(Error::UnsupportedDegree(k)),
    }
}

pub(crate) const B2: f64 = 1.0 / 6.0;
pub(crate) const B4: f64 = -1.0 / 30.0;
// Only used to size the Euler–Maclaurin remainder at order two.
pub(crate) const B6: f64 = 1.0 / 42.0;

/// `B_{2j}` for `j = 1, 2, 3`.
pub(crate) fn even_number(j: usize) -> f64 {
    [B2, B4, B6][j - 1]
}
