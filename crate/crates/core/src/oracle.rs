//! Brute-force graded dimensions of `D(A, μ)` by exact linear algebra.
//!
//! Nothing here uses the basis construction. For each degree `d` the
//! unknowns are the `2(d+1)` coefficients of `(f, g) ∈ S_d²`; a line
//! `H = ker α` with multiplicity `μ(H)` contributes the conditions that
//! `α_x f + α_y g` has no `u^k` term for `k < μ(H)`, written in coordinates
//! `(u, v)` with `u = α`. The dimension is `2(d+1)` minus the rank.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arrangement::Multiarrangement;
use crate::basis::Exponents;
use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldSpec};

/// `dims[d] = dim_𝕂 D(A, μ)_d` for `d = 0..=|μ|`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedDimensionTable {
    dims: Vec<usize>,
}

impl GradedDimensionTable {
    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    /// Reads off `e₁ ≤ e₂`: `e₁` is the first degree with a nonzero
    /// derivation, `e₂` the first degree with more than the multiples of the
    /// `e₁` generator. Fails unless `e₁ + e₂` equals `total`.
    pub fn exponents(&self, total: usize) -> Result<Exponents> {
        let e1 = self
            .dims
            .iter()
            .position(|&n| n > 0)
            .ok_or(Error::Inconsistent("no nonzero derivation up to degree |μ|"))?;
        let e2 = (e1..self.dims.len())
            .find(|&d| self.dims[d] > d - e1 + 1)
            .ok_or(Error::Inconsistent("second generator not found up to degree |μ|"))?;
        if e1 + e2 != total {
            return Err(Error::Inconsistent("oracle exponents do not add up to |μ|"));
        }
        Ok(Exponents::new(e1, e2))
    }

    /// Every entry equals `max(0, d−e₁+1) + max(0, d−e₂+1)`, the graded
    /// dimensions of a free module with generators in degrees `e₁`, `e₂`.
    pub fn matches_free_shape(&self, e: Exponents) -> bool {
        let part = |d: usize, ei: usize| if d >= ei { d - ei + 1 } else { 0 };
        self.dims.iter().enumerate().all(|(d, &n)| n == part(d, e.low()) + part(d, e.high()))
    }
}

/// `dim_𝕂 D(A, μ)_d`.
pub fn dim_degree(m: &Multiarrangement, d: usize) -> usize {
    let rows = constraint_rows(m, d);
    2 * (d + 1) - rank(m.spec(), rows, 2 * (d + 1))
}

pub fn dimension_table(m: &Multiarrangement) -> GradedDimensionTable {
    let top = m.total() as usize;
    GradedDimensionTable { dims: (0..=top).map(|d| dim_degree(m, d)).collect() }
}

/// Exponents from the dimension table alone.
pub fn exponents_by_oracle(m: &Multiarrangement) -> Result<Exponents> {
    dimension_table(m).exponents(m.total() as usize)
}

fn binomial(n: usize, k: usize) -> BigInt {
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// Unknowns: `f_0..f_d` then `g_0..g_d`, index `j` = power of `x`.
fn constraint_rows(m: &Multiarrangement, d: usize) -> Vec<Vec<FieldElement>> {
    let spec = m.spec();
    let n = 2 * (d + 1);
    let mut rows = Vec::new();
    for (alpha, mu) in m.iter() {
        let (ax, ay) = (alpha.ax(), alpha.ay());
        let conditions = (mu as usize).min(d + 1);
        for k in 0..conditions {
            let mut row = vec![spec.zero(); n];
            if ax.is_zero() {
                // u = α ∝ y, v = x: the u^k term of g is g_{d-k}
                row[d + 1 + d - k] = ay.clone();
            } else {
                // x = (u − α_y v)/α_x, y = v; x^j y^(d−j) contributes
                // α_x^{-j} C(j,k) (−α_y)^{j−k} to u^k v^(d−k)
                let ax_inv = ax.inv().expect("nonzero");
                let minus_ay = -ay;
                for j in k..=d {
                    let c = &(&spec.from_bigint(&binomial(j, k)) * &ax_inv.pow(j as u64))
                        * &minus_ay.pow((j - k) as u64);
                    row[j] = ax * &c;
                    row[d + 1 + j] = ay * &c;
                }
            }
            rows.push(row);
        }
    }
    rows
}

fn rank(spec: FieldSpec, rows: Vec<Vec<FieldElement>>, ncols: usize) -> usize {
    match spec.characteristic() {
        None => rank_integer(rows.into_iter().map(clear_denominators).collect(), ncols),
        Some(p) => rank_mod_p(
            rows.into_iter().map(|r| r.iter().map(|c| c.residue().expect("residue")).collect()).collect(),
            ncols,
            p,
        ),
    }
}

fn clear_denominators(row: Vec<FieldElement>) -> Vec<BigInt> {
    let lcm = row
        .iter()
        .map(|c| c.as_rational().expect("rational").denom().clone())
        .fold(BigInt::one(), |acc, d| acc.lcm(&d));
    row.iter()
        .map(|c| {
            let q = c.as_rational().expect("rational");
            q.numer() * (&lcm / q.denom())
        })
        .collect()
}

/// Fraction-free row reduction over ℤ; rows are divided by their content
/// after each elimination to keep entries small.
fn rank_integer(mut rows: Vec<Vec<BigInt>>, ncols: usize) -> usize {
    let mut r = 0;
    for col in 0..ncols {
        let Some(piv) = (r..rows.len())
            .filter(|&i| !rows[i][col].is_zero())
            .min_by_key(|&i| rows[i][col].abs())
        else {
            continue;
        };
        rows.swap(r, piv);
        let (head, tail) = rows.split_at_mut(r + 1);
        let pivot_row = &head[r];
        let pivot = &pivot_row[col];
        for row in tail.iter_mut() {
            if row[col].is_zero() {
                continue;
            }
            let g = pivot.gcd(&row[col]);
            let a = pivot / &g;
            let b = &row[col] / &g;
            for (x, y) in row.iter_mut().zip(pivot_row) {
                *x = &a * &*x - &b * y;
            }
            let content = row.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
            if !content.is_zero() && !content.is_one() {
                for x in row.iter_mut() {
                    *x = &*x / &content;
                }
            }
        }
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    r
}

fn rank_mod_p(mut rows: Vec<Vec<u64>>, ncols: usize, p: u64) -> usize {
    let mulmod = |a: u64, b: u64| ((a as u128 * b as u128) % p as u128) as u64;
    let inv = |a: u64| {
        let (mut acc, mut base, mut e) = (1u64, a, p - 2);
        while e > 0 {
            if e & 1 == 1 {
                acc = mulmod(acc, base);
            }
            base = mulmod(base, base);
            e >>= 1;
        }
        acc
    };
    let mut r = 0;
    for col in 0..ncols {
        let Some(piv) = (r..rows.len()).find(|&i| rows[i][col] != 0) else {
            continue;
        };
        rows.swap(r, piv);
        let scale = inv(rows[r][col]);
        for x in rows[r].iter_mut() {
            *x = mulmod(*x, scale);
        }
        let (head, tail) = rows.split_at_mut(r + 1);
        let pivot_row = &head[r];
        for row in tail.iter_mut() {
            let factor = row[col];
            if factor == 0 {
                continue;
            }
            for (x, &y) in row.iter_mut().zip(pivot_row) {
                *x = (*x + p - mulmod(factor, y)) % p;
            }
        }
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::LinearForm;

    fn arr(spec: FieldSpec, items: &[(i64, i64, u32)]) -> Multiarrangement {
        Multiarrangement::from_pairs(
            spec,
            items.iter().map(|&(a, b, k)| (LinearForm::from_ints(spec, a, b).unwrap(), k)),
        )
        .unwrap()
    }

    #[test]
    fn small_dimensions() {
        let q = FieldSpec::rationals();
        assert_eq!(dim_degree(&Multiarrangement::empty(q), 0), 2);
        assert_eq!(dim_degree(&Multiarrangement::empty(q), 3), 8);
        assert_eq!(dim_degree(&arr(q, &[(1, 0, 1)]), 0), 1);
        let three = arr(q, &[(1, 0, 1), (0, 1, 1), (1, 1, 1)]);
        assert_eq!(dim_degree(&three, 0), 0);
        assert_eq!(dim_degree(&three, 1), 1);
        assert_eq!(dim_degree(&three, 2), 2 + 1);
    }

    #[test]
    fn oracle_exponents() {
        let q = FieldSpec::rationals();
        assert_eq!(exponents_by_oracle(&Multiarrangement::empty(q)).unwrap(), Exponents::new(0, 0));
        assert_eq!(exponents_by_oracle(&arr(q, &[(1, 0, 2), (0, 1, 2)])).unwrap(), Exponents::new(2, 2));
        assert_eq!(
            exponents_by_oracle(&arr(q, &[(1, 0, 1), (0, 1, 1), (1, 1, 1)])).unwrap(),
            Exponents::new(1, 2)
        );
        // simple arrangements contain the Euler field: {1, n-1}
        assert_eq!(
            exponents_by_oracle(&arr(q, &[(1, 0, 1), (0, 1, 1), (1, 1, 1), (1, -1, 1)])).unwrap(),
            Exponents::new(1, 3)
        );
    }

    #[test]
    fn table_shape() {
        let q = FieldSpec::rationals();
        let m = arr(q, &[(1, 0, 3), (0, 1, 1), (1, 2, 2)]);
        let t = dimension_table(&m);
        let e = t.exponents(m.total() as usize).unwrap();
        assert!(t.matches_free_shape(e));
        assert!(!t.matches_free_shape(Exponents::new(e.high() + 1, e.low().saturating_sub(1))));
    }

    #[test]
    fn prime_field_dimensions() {
        // all three lines of F_2² with multiplicity 1: exponents {2, 1}
        let f2 = FieldSpec::prime(2).unwrap();
        let m = arr(f2, &[(1, 0, 1), (0, 1, 1), (1, 1, 1)]);
        assert_eq!(exponents_by_oracle(&m).unwrap(), Exponents::new(2, 1));
    }

    #[test]
    fn rank_helpers() {
        let rows = alloc::vec![
            alloc::vec![BigInt::from(2), BigInt::from(4)],
            alloc::vec![BigInt::from(3), BigInt::from(6)],
        ];
        assert_eq!(rank_integer(rows, 2), 1);
        assert_eq!(rank_mod_p(alloc::vec![alloc::vec![1, 2], alloc::vec![2, 4], alloc::vec![0, 1]], 2, 5), 2);
        assert_eq!(rank_mod_p(alloc::vec![alloc::vec![1, 2], alloc::vec![1, 2]], 2, 3), 1);
    }
}
