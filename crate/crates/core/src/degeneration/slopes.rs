//! The slope condition on three lines through a triple point.
//!
//! Line `ℓ_i` is parametrized as `z ↦ (a_{ij} z)_j` with `a_{ii} = 0`. The
//! lines glue to a log map exactly when
//! `(a12/a13) · (a31/a32) · (a23/a21) = -1`.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Exact complex number with rational real and imaginary parts.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GaussianRational {
    pub re: BigRational,
    pub im: BigRational,
}

impl GaussianRational {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        Self { re, im }
    }

    pub fn from_integers(re: i64, im: i64) -> Self {
        Self::new(BigRational::from_integer(re.into()), BigRational::from_integer(im.into()))
    }

    pub fn conj(&self) -> Self {
        Self::new(self.re.clone(), -&self.im)
    }

    pub fn norm_sqr(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }
}

impl From<BigRational> for GaussianRational {
    fn from(re: BigRational) -> Self {
        Self::new(re, BigRational::zero())
    }
}

impl Add for GaussianRational {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self::new(self.re + o.re, self.im + o.im)
    }
}

impl Sub for GaussianRational {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Self::new(self.re - o.re, self.im - o.im)
    }
}

impl Mul for GaussianRational {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        Self::new(&self.re * &o.re - &self.im * &o.im, &self.re * &o.im + &self.im * &o.re)
    }
}

impl Div for GaussianRational {
    type Output = Self;
    /// Panics on division by zero, like the rational field it extends.
    fn div(self, o: Self) -> Self {
        let n = o.norm_sqr();
        let p = self * o.conj();
        Self::new(p.re / &n, p.im / n)
    }
}

impl Neg for GaussianRational {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.re, -self.im)
    }
}

impl Zero for GaussianRational {
    fn zero() -> Self {
        Self::new(BigRational::zero(), BigRational::zero())
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl One for GaussianRational {
    fn one() -> Self {
        Self::new(BigRational::one(), BigRational::zero())
    }
}

impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}+{}i", self.re, self.im)
    }
}

fn nonzero<F: Zero>(values: [(&F, &'static str); 6]) -> Result<()> {
    match values.iter().find(|(v, _)| v.is_zero()) {
        Some((_, name)) => Err(Error::ZeroSlope(name)),
        None => Ok(()),
    }
}

/// `(a12/a13) · (a31/a32) · (a23/a21)`; the condition holds iff this is `-1`.
pub fn star_slope_residue<F>(a12: &F, a13: &F, a21: &F, a23: &F, a31: &F, a32: &F) -> Result<F>
where
    F: Clone + Zero + Mul<Output = F> + Div<Output = F>,
{
    nonzero([(a12, "a12"), (a13, "a13"), (a21, "a21"), (a23, "a23"), (a31, "a31"), (a32, "a32")])?;
    Ok((a12.clone() / a13.clone()) * (a31.clone() / a32.clone()) * (a23.clone() / a21.clone()))
}

/// The ratio `a31/a32` that makes the residue `-1`, given the other two lines.
pub fn third_line_ratio<F>(a12: &F, a13: &F, a21: &F, a23: &F) -> Result<F>
where
    F: Clone + Zero + One + Mul<Output = F> + Div<Output = F> + Neg<Output = F>,
{
    let one = F::one();
    nonzero([(a12, "a12"), (a13, "a13"), (a21, "a21"), (a23, "a23"), (&one, "a31"), (&one, "a32")])?;
    Ok(-((a13.clone() / a12.clone()) * (a21.clone() / a23.clone())))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn rational_residues() {
        let one = q(1, 1);
        let r = star_slope_residue(&one, &one, &one, &one, &one, &q(-1, 1)).unwrap();
        assert_eq!(r, q(-1, 1));
        let r = star_slope_residue(&q(2, 1), &one, &one, &one, &one, &one).unwrap();
        assert_eq!(r, q(2, 1));
        assert_eq!(
            star_slope_residue(&one, &one, &q(0, 1), &one, &one, &one),
            Err(Error::ZeroSlope("a21"))
        );
    }

    #[test]
    fn residue_is_invariant_under_reparametrizing_a_line() {
        let a = [q(3, 2), q(-5, 7), q(2, 9), q(4, 1), q(-1, 3), q(6, 5)];
        let base = star_slope_residue(&a[0], &a[1], &a[2], &a[3], &a[4], &a[5]).unwrap();
        let t = q(-11, 4);
        let l1 = star_slope_residue(&(&a[0] * &t), &(&a[1] * &t), &a[2], &a[3], &a[4], &a[5]).unwrap();
        let l2 = star_slope_residue(&a[0], &a[1], &(&a[2] * &t), &(&a[3] * &t), &a[4], &a[5]).unwrap();
        let l3 = star_slope_residue(&a[0], &a[1], &a[2], &a[3], &(&a[4] * &t), &(&a[5] * &t)).unwrap();
        assert_eq!((l1 == base, l2 == base, l3 == base), (true, true, true));
    }

    #[test]
    fn gaussian_residues() {
        let g = GaussianRational::from_integers;
        let (a12, a13, a21, a23) = (g(1, 2), g(3, -1), g(0, 1), g(2, 2));
        let ratio = third_line_ratio(&a12, &a13, &a21, &a23).unwrap();
        let a32 = g(5, -3);
        let a31 = ratio * a32.clone();
        let r = star_slope_residue(&a12, &a13, &a21, &a23, &a31, &a32).unwrap();
        assert_eq!(r, -GaussianRational::one());
        let i = g(0, 1);
        assert_eq!(i.clone() * i.clone(), g(-1, 0));
        assert_eq!(g(1, 1) / g(1, -1), i);
    }
}
