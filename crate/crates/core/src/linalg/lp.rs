use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::IntegerMatrix;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ColumnKind {
    /// The variable must be strictly positive.
    Strict,
    Nonnegative,
    Free,
}

/// Homogeneous system `A x = 0` with a sign requirement on every variable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StrictFeasibilityProblem {
    rows: Vec<Vec<BigRational>>,
    kinds: Vec<ColumnKind>,
}

/// Outcome of [`strict_feasible`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Feasibility {
    /// A solution meeting every sign requirement, scaled to a primitive
    /// integer vector.
    Witness(Vec<BigRational>),
    /// A row combination `y` with `w = Aᵀy` vanishing on free columns,
    /// nonnegative elsewhere and positive on some strict column. Pairing
    /// `w` with a solution would give `0 = yᵀAx = wᵀx > 0`.
    Certificate(Vec<BigRational>),
}

impl Feasibility {
    pub fn is_feasible(&self) -> bool {
        matches!(self, Feasibility::Witness(_))
    }

    pub fn witness(&self) -> Option<&[BigRational]> {
        match self {
            Feasibility::Witness(x) => Some(x),
            Feasibility::Certificate(_) => None,
        }
    }
}

impl StrictFeasibilityProblem {
    pub fn new(rows: Vec<Vec<BigRational>>, kinds: Vec<ColumnKind>) -> Result<Self> {
        if let Some(r) = rows.iter().find(|r| r.len() != kinds.len()) {
            return Err(Error::Structural(format!(
                "constraint row has {} entries but {} columns are classified",
                r.len(),
                kinds.len()
            )));
        }
        Ok(Self { rows, kinds })
    }

    pub fn from_integer(a: &IntegerMatrix, kinds: Vec<ColumnKind>) -> Result<Self> {
        if a.cols() != kinds.len() {
            return Err(Error::Structural(format!(
                "matrix has {} columns but {} are classified",
                a.cols(),
                kinds.len()
            )));
        }
        Self::new(a.to_rational_rows(), kinds)
    }

    pub fn rows(&self) -> &[Vec<BigRational>] {
        &self.rows
    }

    pub fn kinds(&self) -> &[ColumnKind] {
        &self.kinds
    }

    pub fn num_vars(&self) -> usize {
        self.kinds.len()
    }

    /// Exact check of `A x = 0` and all sign requirements.
    pub fn is_witness(&self, x: &[BigRational]) -> bool {
        if x.len() != self.num_vars() {
            return false;
        }
        let signs = self.kinds.iter().zip(x).all(|(k, v)| match k {
            ColumnKind::Strict => v.is_positive(),
            ColumnKind::Nonnegative => !v.is_negative(),
            ColumnKind::Free => true,
        });
        signs && self.rows.iter().all(|r| dot(r, x).is_zero())
    }

    /// Exact check of the certificate conditions described on [`Feasibility`].
    pub fn is_certificate(&self, y: &[BigRational]) -> bool {
        if y.len() != self.rows.len() {
            return false;
        }
        let w: Vec<BigRational> = (0..self.num_vars())
            .map(|j| self.rows.iter().zip(y).map(|(r, yi)| &r[j] * yi).sum())
            .collect();
        let mut positive = false;
        for (k, wj) in self.kinds.iter().zip(&w) {
            match k {
                ColumnKind::Free if !wj.is_zero() => return false,
                ColumnKind::Strict | ColumnKind::Nonnegative if wj.is_negative() => return false,
                ColumnKind::Strict if wj.is_positive() => positive = true,
                _ => {}
            }
        }
        positive
    }
}

fn dot(a: &[BigRational], b: &[BigRational]) -> BigRational {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Decides whether `A x = 0` has a solution with the strict columns positive
/// and the nonnegative columns nonnegative.
///
/// Solves the bounded program: maximize `t` subject to `A x = 0`,
/// `x_j >= t` on strict columns and `0 <= t <= 1`, with free columns split
/// into two nonnegative parts. The origin is feasible, so the slack basis
/// starts the simplex directly. Bland's rule guarantees termination. An
/// optimum `t > 0` yields a witness; otherwise the optimal dual values of
/// the equality rows form the certificate.
pub fn strict_feasible(p: &StrictFeasibilityProblem) -> Feasibility {
    let n = p.num_vars();
    let r = p.rows.len();
    let strict: Vec<usize> = (0..n).filter(|&j| p.kinds[j] == ColumnKind::Strict).collect();
    if strict.is_empty() {
        return Feasibility::Witness(vec![BigRational::zero(); n]);
    }

    // Structural columns: one per variable, a second (negative part) per free
    // variable, then t.
    let mut split = Vec::with_capacity(n);
    let mut width = n;
    for k in &p.kinds {
        if *k == ColumnKind::Free {
            split.push(Some(width));
            width += 1;
        } else {
            split.push(None);
        }
    }
    let t_col = width;
    let structural = width + 1;

    let mut constraints: Vec<(Vec<BigRational>, BigRational)> = Vec::new();
    for sign in [1i32, -1] {
        for row in &p.rows {
            let mut c = vec![BigRational::zero(); structural];
            for (j, a) in row.iter().enumerate() {
                let a = if sign > 0 { a.clone() } else { -a };
                if let Some(neg) = split[j] {
                    c[neg] = -&a;
                }
                c[j] = a;
            }
            constraints.push((c, BigRational::zero()));
        }
    }
    for &j in &strict {
        let mut c = vec![BigRational::zero(); structural];
        c[t_col] = BigRational::one();
        c[j] = -BigRational::one();
        constraints.push((c, BigRational::zero()));
    }
    let mut cap = vec![BigRational::zero(); structural];
    cap[t_col] = BigRational::one();
    constraints.push((cap, BigRational::one()));

    let mut objective = vec![BigRational::zero(); structural];
    objective[t_col] = BigRational::one();
    let solved = Tableau::new(&constraints, &objective).maximize();

    let z = solved.primal();
    if z[t_col].is_positive() {
        let x: Vec<BigRational> = (0..n)
            .map(|j| match split[j] {
                Some(neg) => &z[j] - &z[neg],
                None => z[j].clone(),
            })
            .collect();
        return Feasibility::Witness(to_primitive_integers(&x));
    }
    let u = solved.dual();
    let y: Vec<BigRational> = (0..r).map(|i| &u[i] - &u[r + i]).collect();
    Feasibility::Certificate(to_primitive_integers(&y))
}

/// Positive rescaling of a rational vector to a primitive integer vector.
fn to_primitive_integers(x: &[BigRational]) -> Vec<BigRational> {
    let lcm = x.iter().fold(BigInt::one(), |l, v| l.lcm(v.denom()));
    let ints: Vec<BigInt> = x.iter().map(|v| v.numer() * (&lcm / v.denom())).collect();
    let g = ints.iter().fold(BigInt::zero(), |g, v| g.gcd(v));
    let g = if g.is_zero() { BigInt::one() } else { g };
    ints.into_iter().map(|v| BigRational::from_integer(v / &g)).collect()
}

/// Dense tableau for `max cᵀz, M z <= b, z >= 0` with `b >= 0`.
struct Tableau {
    rows: Vec<Vec<BigRational>>,
    rhs: Vec<BigRational>,
    /// Reduced costs; all nonnegative at the optimum.
    cost: Vec<BigRational>,
    basis: Vec<usize>,
    structural: usize,
}

impl Tableau {
    fn new(constraints: &[(Vec<BigRational>, BigRational)], objective: &[BigRational]) -> Self {
        let m = constraints.len();
        let structural = objective.len();
        let width = structural + m;
        let mut rows = Vec::with_capacity(m);
        let mut rhs = Vec::with_capacity(m);
        for (i, (c, b)) in constraints.iter().enumerate() {
            debug_assert!(!b.is_negative());
            let mut row = c.clone();
            row.resize(width, BigRational::zero());
            row[structural + i] = BigRational::one();
            rows.push(row);
            rhs.push(b.clone());
        }
        let mut cost: Vec<BigRational> = objective.iter().map(|c| -c).collect();
        cost.resize(width, BigRational::zero());
        Self { rows, rhs, cost, basis: (structural..width).collect(), structural }
    }

    fn maximize(mut self) -> Self {
        while let Some(enter) = self.cost.iter().position(|c| c.is_negative()) {
            let mut leave: Option<(usize, BigRational)> = None;
            for i in 0..self.rows.len() {
                let a = &self.rows[i][enter];
                if !a.is_positive() {
                    continue;
                }
                let ratio = &self.rhs[i] / a;
                let better = match &leave {
                    None => true,
                    Some((l, best)) => ratio < *best || (ratio == *best && self.basis[i] < self.basis[*l]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
            let (leave, _) = leave.expect("auxiliary program is bounded by its cap row");
            self.pivot(leave, enter);
        }
        self
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let p = self.rows[r][c].clone();
        for v in self.rows[r].iter_mut() {
            *v /= &p;
        }
        self.rhs[r] /= &p;
        let pivot_row = self.rows[r].clone();
        let pivot_rhs = self.rhs[r].clone();
        for i in 0..self.rows.len() {
            if i == r || self.rows[i][c].is_zero() {
                continue;
            }
            let f = self.rows[i][c].clone();
            for (v, pr) in self.rows[i].iter_mut().zip(&pivot_row) {
                if !pr.is_zero() {
                    *v -= &f * pr;
                }
            }
            self.rhs[i] -= &f * &pivot_rhs;
        }
        if !self.cost[c].is_zero() {
            let f = self.cost[c].clone();
            for (v, pr) in self.cost.iter_mut().zip(&pivot_row) {
                if !pr.is_zero() {
                    *v -= &f * pr;
                }
            }
        }
        self.basis[r] = c;
    }

    fn primal(&self) -> Vec<BigRational> {
        let mut z = vec![BigRational::zero(); self.structural];
        for (i, &b) in self.basis.iter().enumerate() {
            if b < self.structural {
                z[b] = self.rhs[i].clone();
            }
        }
        z
    }

    /// Optimal dual values, read from the reduced costs of the slack columns.
    fn dual(&self) -> Vec<BigRational> {
        self.cost[self.structural..].to_vec()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn problem(rows: &[&[i64]], kinds: &[ColumnKind]) -> StrictFeasibilityProblem {
        let cols = kinds.len();
        StrictFeasibilityProblem::from_integer(&IntegerMatrix::from_rows_with_cols(rows, cols), kinds.to_vec())
            .unwrap()
    }

    fn ints(v: &[BigRational]) -> Vec<i64> {
        v.iter().map(|x| i64::try_from(x.to_integer()).unwrap()).collect()
    }

    use ColumnKind::*;

    #[test]
    fn empty_system_with_free_variable() {
        let p = problem(&[], &[Free]);
        assert_eq!(strict_feasible(&p), Feasibility::Witness(vec![BigRational::zero()]));
    }

    #[test]
    fn simple_witness() {
        // x - y = 0, y - 2z = 0 with all strict.
        let p = problem(&[&[1, -1, 0], &[0, 1, -2]], &[Strict, Strict, Strict]);
        match strict_feasible(&p) {
            Feasibility::Witness(x) => {
                assert!(p.is_witness(&x));
                assert_eq!(ints(&x), vec![2, 2, 1]);
            }
            other => panic!("expected witness, got {other:?}"),
        }
    }

    #[test]
    fn opposite_signs_are_infeasible() {
        // x + y = 0 with x, y > 0.
        let p = problem(&[&[1, 1]], &[Strict, Strict]);
        match strict_feasible(&p) {
            Feasibility::Certificate(y) => assert!(p.is_certificate(&y)),
            other => panic!("expected certificate, got {other:?}"),
        }
    }

    #[test]
    fn free_and_nonnegative_columns() {
        // x = f with x strict and f free: feasible.
        let p = problem(&[&[1, -1]], &[Strict, Free]);
        assert!(strict_feasible(&p).is_feasible());
        // x + n = 0 with x strict, n >= 0: infeasible.
        let p = problem(&[&[1, 1]], &[Strict, Nonnegative]);
        let f = strict_feasible(&p);
        assert!(matches!(&f, Feasibility::Certificate(y) if p.is_certificate(y)));
        // x + n - f = 0: feasible through the free column.
        let p = problem(&[&[1, 1, -1]], &[Strict, Nonnegative, Free]);
        let f = strict_feasible(&p);
        assert!(matches!(&f, Feasibility::Witness(x) if p.is_witness(x)));
    }

    #[test]
    fn degenerate_rows_are_harmless() {
        let p = problem(&[&[0, 0], &[1, -1], &[2, -2]], &[Strict, Strict]);
        assert!(strict_feasible(&p).is_feasible());
    }

    #[test]
    fn mismatched_classification_is_rejected() {
        let a = IntegerMatrix::from_rows(&[[1, 2]]);
        assert!(StrictFeasibilityProblem::from_integer(&a, vec![Strict]).is_err());
    }
}
