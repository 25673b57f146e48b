//! Exponent difference 2 on the four lines `x + y`, `x − y`, `x`, `y` over ℚ.
//!
//! For multiplicities `(μ₁, μ₂, μ₃, μ₄)` on `H₁ = {x+y=0}`, `H₂ = {x−y=0}`,
//! `H₃ = {x=0}`, `H₄ = {y=0}` with every `μᵢ < |μ|/2`, the exponent
//! difference is 2 exactly for four parity families (see [`predicted_d2`]).
//! This module enumerates a box of tuples, computes the difference with the
//! alg3 chain and compares.
//!
//! Tuples sharing a prefix of the chain share its computation: the sweep
//! walks the lines in the same canonical order alg3 uses and branches at
//! each multiplicity in range, so every visited basis is the one alg3 would
//! return for that tuple.

use alloc::vec::Vec;

use crate::arrangement::{LinearForm, Multiarrangement};
use crate::basis::{alg2, alg3, BasisPair, Exponents};
use crate::error::Result;
use crate::field::FieldSpec;

/// The multiplicity box `[20, 30]⁴`.
pub const DEFAULT_LOW: u32 = 20;
pub const DEFAULT_HIGH: u32 = 30;

/// `[x + y, x − y, x, y]` over ℚ.
pub fn lines() -> [LinearForm; 4] {
    let q = FieldSpec::rationals();
    [
        LinearForm::from_ints(q, 1, 1).expect("nonzero"),
        LinearForm::from_ints(q, 1, -1).expect("nonzero"),
        LinearForm::x(q),
        LinearForm::y(q),
    ]
}

pub fn arrangement(mu: [u32; 4]) -> Multiarrangement {
    let q = FieldSpec::rationals();
    Multiarrangement::from_pairs(q, lines().into_iter().zip(mu)).expect("rational forms")
}

/// `2μᵢ < |μ|` for every line.
pub fn hypothesis_holds(mu: [u32; 4]) -> bool {
    let total: u32 = mu.iter().sum();
    mu.iter().all(|&k| 2 * k < total)
}

/// Whether integers `k, h, l` exist with one of
///
/// ```text
/// (μ₁, μ₂, μ₃ = μ₄) = (2k+3+4h, 2k+1, 2l)
/// (μ₃, μ₄, μ₁ = μ₂) = (2k+3+4h, 2k+1, 2l)
/// (μ₁, μ₂, μ₃ = μ₄) = (2k+1+4h, 2k+1, 2l+1)
/// (μ₃, μ₄, μ₁ = μ₂) = (2k+1+4h, 2k+1, 2l+1)
/// ```
///
/// Searched by brute force over a window that contains every solution for
/// multiplicities up to `max μᵢ`.
pub fn predicted_d2(mu: [u32; 4]) -> bool {
    let [m1, m2, m3, m4] = mu.map(i64::from);
    let bound = mu.iter().copied().max().unwrap_or(0) as i64 + 2;
    let family = |a: i64, b: i64, c: i64, e: i64, shift: i64, parity: i64| {
        (-bound..=bound).any(|k| {
            2 * k + 1 == b
                && (-bound..=bound).any(|h| {
                    2 * k + shift + 4 * h == a && (-bound..=bound).any(|l| c == e && c == 2 * l + parity)
                })
        })
    };
    family(m1, m2, m3, m4, 3, 0)
        || family(m3, m4, m1, m2, 3, 0)
        || family(m1, m2, m3, m4, 1, 1)
        || family(m3, m4, m1, m2, 1, 1)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PropositionRow {
    pub mu: [u32; 4],
    pub exponents: Exponents,
    pub hypothesis: bool,
    pub predicted_d2: bool,
}

impl PropositionRow {
    fn new(mu: [u32; 4], exponents: Exponents) -> Self {
        PropositionRow { mu, exponents, hypothesis: hypothesis_holds(mu), predicted_d2: predicted_d2(mu) }
    }

    pub fn total(&self) -> u32 {
        self.mu.iter().sum()
    }

    pub fn difference(&self) -> usize {
        self.exponents.difference()
    }

    /// Tuples outside the hypothesis are not checked and count as agreeing.
    pub fn agrees(&self) -> bool {
        !self.hypothesis || (self.difference() == 2) == self.predicted_d2
    }
}

/// One tuple, computed from scratch with alg3.
pub fn classify_tuple(mu: [u32; 4]) -> Result<PropositionRow> {
    Ok(PropositionRow::new(mu, alg3(&arrangement(mu))?.exponents()))
}

/// Visits every tuple of `[low, high]⁴`, sharing chain prefixes. With
/// `first = Some(k)` only tuples whose first chain line (the line that comes
/// first in canonical order, `y`) has multiplicity `k` are visited, which
/// lets callers split the work.
pub fn sweep<F>(low: u32, high: u32, first: Option<u32>, mut visit: F) -> Result<()>
where
    F: FnMut(PropositionRow),
{
    let mut order: Vec<(usize, LinearForm)> = lines().into_iter().enumerate().collect();
    order.sort_by(|a, b| a.1.cmp(&b.1));
    let start = BasisPair::standard(FieldSpec::rationals());
    let mut mu = [0u32; 4];
    descend(&order, 0, start, low, high, first, &mut mu, &mut visit)
}

#[allow(clippy::too_many_arguments)]
fn descend<F>(
    order: &[(usize, LinearForm)],
    level: usize,
    mut pair: BasisPair,
    low: u32,
    high: u32,
    first: Option<u32>,
    mu: &mut [u32; 4],
    visit: &mut F,
) -> Result<()>
where
    F: FnMut(PropositionRow),
{
    let Some((slot, alpha)) = order.get(level) else {
        visit(PropositionRow::new(*mu, pair.exponents()));
        return Ok(());
    };
    let top = match (level, first) {
        (0, Some(k)) => k,
        _ => high,
    };
    for k in 0..=top {
        let wanted = match (level, first) {
            (0, Some(f)) => k == f,
            _ => true,
        };
        if k >= low && wanted {
            mu[*slot] = k;
            descend(order, level + 1, pair.clone(), low, high, first, mu, visit)?;
        }
        if k < top {
            pair = alg2(&pair, alpha, k)?;
        }
    }
    Ok(())
}

#[derive(Clone, Debug, Default)]
pub struct PropositionReport {
    pub rows: Vec<PropositionRow>,
}

impl PropositionReport {
    pub fn enumerated(&self) -> usize {
        self.rows.len()
    }

    /// Rows satisfying the hypothesis.
    pub fn checked(&self) -> usize {
        self.rows.iter().filter(|r| r.hypothesis).count()
    }

    pub fn disagreements(&self) -> impl Iterator<Item = &PropositionRow> + '_ {
        self.rows.iter().filter(|r| !r.agrees())
    }

    /// Rows in lexicographic order of `(μ₁, μ₂, μ₃, μ₄)`.
    pub fn sort(&mut self) {
        self.rows.sort_by_key(|r| r.mu);
    }
}

/// Every tuple of `[low, high]⁴`, sorted.
pub fn run_range(low: u32, high: u32) -> Result<PropositionReport> {
    let mut report = PropositionReport::default();
    sweep(low, high, None, |row| report.rows.push(row))?;
    report.sort();
    Ok(report)
}

/// The full `[20, 30]⁴` run: 14641 tuples.
pub fn proposition_experiment() -> Result<PropositionReport> {
    run_range(DEFAULT_LOW, DEFAULT_HIGH)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Closed-form reading of the four families, for cross-checking the
    /// brute-force search.
    fn closed_form(mu: [u32; 4]) -> bool {
        let [a, b, c, d] = mu.map(i64::from);
        let fam = |a: i64, b: i64, c: i64, e: i64, diff: i64, parity: i64| {
            b % 2 == 1 && (a - b - diff).rem_euclid(4) == 0 && c == e && c.rem_euclid(2) == parity
        };
        fam(a, b, c, d, 2, 0) || fam(c, d, a, b, 2, 0) || fam(a, b, c, d, 0, 1) || fam(c, d, a, b, 0, 1)
    }

    #[test]
    fn predicate_examples() {
        assert!(predicted_d2([23, 21, 20, 20]));
        assert!(!predicted_d2([20, 20, 20, 20]));
        assert!(predicted_d2([21, 21, 25, 25]));
        assert!(predicted_d2([22, 22, 27, 25]));
        // μ₁ < μ₂ needs h < 0
        assert!(predicted_d2([21, 23, 20, 20]));
    }

    #[test]
    fn predicate_matches_closed_form() {
        for a in 18..=32 {
            for b in 18..=32 {
                for c in [20, 21, 22, 23] {
                    for d in [20, 21, 23] {
                        let mu = [a, b, c, d];
                        assert_eq!(predicted_d2(mu), closed_form(mu), "{mu:?}");
                    }
                }
            }
        }
    }

    #[test]
    fn hypothesis() {
        assert!(hypothesis_holds([20, 20, 20, 20]));
        assert!(!hypothesis_holds([30, 5, 5, 5]));
        assert!(!hypothesis_holds([15, 5, 5, 5]));
    }

    #[test]
    fn sweep_matches_direct_alg3() {
        let report = run_range(2, 4).unwrap();
        assert_eq!(report.enumerated(), 81);
        for row in &report.rows {
            let direct = classify_tuple(row.mu).unwrap();
            assert_eq!(&direct, row);
        }
    }

    #[test]
    fn split_sweep_covers_the_box() {
        let mut rows = Vec::new();
        for k in 1..=3 {
            sweep(1, 3, Some(k), |r| rows.push(r)).unwrap();
        }
        rows.sort_by_key(|r| r.mu);
        assert_eq!(rows, run_range(1, 3).unwrap().rows);
    }

    #[test]
    fn documented_tuple() {
        let row = classify_tuple([23, 21, 20, 20]).unwrap();
        assert!(row.hypothesis);
        assert!(row.predicted_d2);
        assert_eq!(row.difference(), 2);
        assert!(row.agrees());
    }
}
