use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::{hermite_normal_form, smith_normal_form, IntegerMatrix};

/// A lattice index, which is infinite when the sublattice has lower rank.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Index {
    Finite(BigInt),
    Infinite,
}

impl Index {
    pub fn finite(&self) -> Option<&BigInt> {
        match self {
            Index::Finite(x) => Some(x),
            Index::Infinite => None,
        }
    }
}

impl fmt::Display for Index {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Index::Finite(x) => write!(f, "{x}"),
            Index::Infinite => f.write_str("infinite"),
        }
    }
}

/// Basis of the saturated lattice `{x ∈ Z^cols : A x = 0}` in Hermite form.
pub fn kernel_basis(a: &IntegerMatrix) -> Vec<Vec<BigInt>> {
    let s = smith_normal_form(a);
    let r = s.rank();
    let cols: Vec<Vec<BigInt>> = (r..a.cols()).map(|j| s.v.column(j)).collect();
    if cols.is_empty() {
        return Vec::new();
    }
    hermite_normal_form(&IntegerMatrix::from_big_rows(cols, a.cols())).row_vecs()
}

/// Index of the row lattice `Im(Aᵀ)` inside its saturation; the product of
/// the nonzero invariant factors.
pub fn image_saturation_index(a: &IntegerMatrix) -> BigInt {
    smith_normal_form(a).invariant_factors().iter().product()
}

/// Index of `Im(Aᵀ)` in `Z^cols(A)`, the lattice the dual map lands in.
pub fn lattice_index_in_ambient(a: &IntegerMatrix) -> Index {
    let f = smith_normal_form(a).invariant_factors();
    if f.len() < a.cols() {
        Index::Infinite
    } else {
        Index::Finite(f.iter().product())
    }
}

/// Divides an integer vector by the gcd of its entries.
pub fn primitive(v: &[BigInt]) -> Vec<BigInt> {
    let g = v.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    if g.is_zero() || g.is_one() {
        return v.to_vec();
    }
    v.iter().map(|x| x / &g).collect()
}
