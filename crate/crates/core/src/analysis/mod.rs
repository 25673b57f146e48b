//! Consequences of the single-step update: how the exponent difference
//! moves along a chain, closed forms for unbalanced arrangements, explicit
//! Frobenius bases over `F_p`, and the four-line parity experiment.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::arrangement::{all_hyperplanes, LinearForm, Multiarrangement};
use crate::basis::{verify_basis, walk_chain, BasisPair, Branch, Exponents};
use crate::derivation::Derivation;
use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::poly::HomogPoly;

pub mod proposition;

/// One step of the alg3 chain.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StepTrace {
    pub form: LinearForm,
    /// `μ(ker α)` before the step.
    pub before: u32,
    pub branch: Branch,
    pub diff_before: usize,
    pub diff_after: usize,
}

impl StepTrace {
    pub fn increased(&self) -> bool {
        self.diff_after > self.diff_before
    }

    /// The difference grows exactly when `g` vanishes on `ker α` or the two
    /// degrees were equal; otherwise it shrinks. Always by one.
    pub fn obeys_difference_law(&self) -> bool {
        let expect_increase = self.branch == Branch::GVanishing || self.diff_before == 0;
        self.diff_after.abs_diff(self.diff_before) == 1 && self.increased() == expect_increase
    }
}

/// Runs the alg3 chain and records every step. The returned pair is the
/// alg3 basis.
pub fn trace_chain(m: &Multiarrangement) -> Result<(BasisPair, Vec<StepTrace>)> {
    let mut steps = Vec::with_capacity(m.total() as usize);
    let pair = walk_chain(m, None, |s| {
        steps.push(StepTrace {
            form: s.alpha.clone(),
            before: s.before,
            branch: s.branch,
            diff_before: s.input.exponents().difference(),
            diff_after: s.output.exponents().difference(),
        })
    })?;
    Ok((pair, steps))
}

/// Finds a line `ker α`, not in `exclude`, with `θ(α)` not divisible by `α`,
/// i.e. `α_x φ(α_y, −α_x) + α_y ψ(α_y, −α_x) ≠ 0` for `θ = φ∂x + ψ∂y`.
///
/// Candidates are tried in the order `y, x, x + y, x − y, x + 2y, x − 2y, …`.
/// The condition is a nonzero binary form of degree `deg θ + 1` in
/// `(α_x, α_y)` unless `θ` is a multiple of the Euler field, so at most
/// `deg θ + 2 + |exclude|` candidates are needed; past that, or once `F_p`
/// runs out of lines, [`Error::NoGenericForm`] is returned.
pub fn find_generic_form(theta: &Derivation, exclude: &[LinearForm]) -> Result<LinearForm> {
    let spec = theta.spec();
    if exclude.iter().any(|f| f.spec() != spec) {
        return Err(Error::FieldMismatch);
    }
    let budget = theta.degree() + 2 + exclude.len();
    let limit = spec.characteristic().map(|p| p as usize + 1).unwrap_or(usize::MAX);
    let mut tried = 0usize;
    let mut seen: Vec<LinearForm> = Vec::new();
    let offsets = core::iter::once(0).chain((1i64..).flat_map(|c| [c, -c]));
    let mut ladder = core::iter::once(LinearForm::y(spec))
        .chain(offsets.map(|c| LinearForm::from_ints(spec, 1, c).expect("nonzero")));
    while tried < budget.min(limit) {
        let alpha = ladder.next().expect("infinite ladder");
        if seen.contains(&alpha) {
            continue;
        }
        seen.push(alpha.clone());
        tried += 1;
        if exclude.contains(&alpha) {
            continue;
        }
        if !theta.apply_unchecked(&alpha).is_divisible_by_linear(&alpha)? {
            return Ok(alpha);
        }
    }
    Err(Error::NoGenericForm)
}

/// `{μ(H), |μ| − μ(H)}` when some line has `2μ(H) ≥ |μ|`, without running
/// the chain.
pub fn unbalanced_exponents(m: &Multiarrangement) -> Option<Exponents> {
    let total = m.total();
    m.iter()
        .find(|&(_, k)| 2 * k >= total && k > 0)
        .map(|(_, k)| Exponents::new(k as usize, (total - k) as usize))
}

fn prime_power(p: u64, i: u32) -> Result<u64> {
    p.checked_pow(i).ok_or(Error::Overflow(p))
}

/// `x^{p^i} ∂x + y^{p^i} ∂y` over `F_p`. It sends every linear form `α` to
/// `α^{p^i}`.
pub fn frobenius_derivation(p: u64, i: u32) -> Result<Derivation> {
    let spec = FieldSpec::prime(p)?;
    let e = prime_power(p, i)? as usize;
    Derivation::new(HomogPoly::monomial(spec.one(), e, 0), HomogPoly::monomial(spec.one(), 0, e))
}

/// The basis `{(∏_H α_H^{j_H}) · θ_{p^i}, θ_{p^{i+1}}}` of `D(A, μ)` where `A`
/// is every line of `F_p²` and `μ(H) = p^i + j_H`, with
/// `0 ≤ j_H ≤ p^{i+1} − p^i`. Lines missing from `shifts` get `j_H = 0`.
/// The result is checked with Saito's criterion before it is returned.
pub fn frobenius_basis(
    p: u64,
    i: u32,
    shifts: &BTreeMap<LinearForm, u64>,
) -> Result<(BasisPair, Multiarrangement)> {
    let spec = FieldSpec::prime(p)?;
    let low = prime_power(p, i)?;
    let high = prime_power(p, i + 1)?;
    let max = high - low;
    let lines = all_hyperplanes(spec)?;
    for (form, &j) in shifts {
        if form.spec() != spec {
            return Err(Error::FieldMismatch);
        }
        if j > max {
            return Err(Error::ShiftOutOfRange { shift: j, max });
        }
    }
    let mut theta = frobenius_derivation(p, i)?;
    let mut pairs = Vec::with_capacity(lines.len());
    for form in &lines {
        let j = shifts.get(form).copied().unwrap_or(0);
        for _ in 0..j {
            theta = theta.scale_by_linear(form)?;
        }
        let mult = u32::try_from(low + j).map_err(|_| Error::Overflow(low + j))?;
        pairs.push((form.clone(), mult));
    }
    let m = Multiarrangement::from_pairs(spec, pairs)?;
    let top = frobenius_derivation(p, i + 1)?;
    if !verify_basis(&theta, &top, &m)? {
        return Err(Error::Inconsistent("Frobenius pair failed Saito's criterion"));
    }
    Ok((BasisPair::new(theta, top)?, m))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::basis::{alg3, exponents};

    fn qq() -> FieldSpec {
        FieldSpec::rationals()
    }

    fn arr(spec: FieldSpec, items: &[(i64, i64, u32)]) -> Multiarrangement {
        Multiarrangement::from_pairs(
            spec,
            items.iter().map(|&(a, b, k)| (LinearForm::from_ints(spec, a, b).unwrap(), k)),
        )
        .unwrap()
    }

    #[test]
    fn single_line_trace() {
        let q = qq();
        let (pair, steps) = trace_chain(&arr(q, &[(1, 0, 1)])).unwrap();
        assert_eq!(steps.len(), 1);
        assert_eq!(steps[0].branch, Branch::GVanishing);
        assert_eq!((steps[0].diff_before, steps[0].diff_after), (0, 1));
        assert_eq!(pair, alg3(&arr(q, &[(1, 0, 1)])).unwrap());
    }

    #[test]
    fn traces_obey_difference_law() {
        let q = qq();
        let m = arr(q, &[(1, 0, 3), (0, 1, 2), (1, 1, 4), (1, -1, 1), (2, 3, 2)]);
        let (pair, steps) = trace_chain(&m).unwrap();
        assert_eq!(steps.len(), m.total() as usize);
        assert!(steps.iter().all(StepTrace::obeys_difference_law));
        assert_eq!(pair, alg3(&m).unwrap());
    }

    #[test]
    fn generic_form_ladder() {
        let q = qq();
        assert_eq!(find_generic_form(&Derivation::partial_y(q), &[]).unwrap(), LinearForm::y(q));
        let ydy = Derivation::new(HomogPoly::zero(q, 1), HomogPoly::y(q)).unwrap();
        assert_eq!(find_generic_form(&ydy, &[]).unwrap(), LinearForm::from_ints(q, 1, 1).unwrap());
        // excluding x + y moves on to x − y
        let ex = [LinearForm::from_ints(q, 1, 1).unwrap()];
        assert_eq!(find_generic_form(&ydy, &ex).unwrap(), LinearForm::from_ints(q, 1, -1).unwrap());
    }

    #[test]
    fn euler_multiples_have_no_generic_form() {
        assert_eq!(find_generic_form(&Derivation::euler(qq()), &[]), Err(Error::NoGenericForm));
        // x²∂x + y²∂y sends every α to α², divisible by α: all 3 lines fail
        assert_eq!(find_generic_form(&frobenius_derivation(2, 1).unwrap(), &[]), Err(Error::NoGenericForm));
    }

    #[test]
    fn generic_addition_balances_difference_one() {
        let q = qq();
        let m = arr(q, &[(1, 0, 2), (0, 1, 1)]);
        let b = alg3(&m).unwrap();
        assert_eq!(b.exponents().difference(), 1);
        let supp: Vec<_> = m.support().cloned().collect();
        let alpha = find_generic_form(b.theta2(), &supp).unwrap();
        let e = exponents(&m.incremented(&alpha).unwrap()).unwrap();
        assert_eq!(e.difference(), 0);
    }

    #[test]
    fn unbalanced_closed_form() {
        let q = qq();
        assert_eq!(unbalanced_exponents(&arr(q, &[(1, 0, 5), (0, 1, 2)])), Some(Exponents::new(5, 2)));
        assert_eq!(unbalanced_exponents(&arr(q, &[(1, 0, 1), (0, 1, 1), (1, 1, 1)])), None);
        assert_eq!(unbalanced_exponents(&Multiarrangement::empty(q)), None);
        let m = arr(q, &[(1, 0, 7), (0, 1, 2), (1, 1, 3)]);
        assert_eq!(unbalanced_exponents(&m), Some(exponents(&m).unwrap()));
    }

    #[test]
    fn frobenius_derivations() {
        let f2 = FieldSpec::prime(2).unwrap();
        assert_eq!(frobenius_derivation(2, 0).unwrap(), Derivation::euler(f2));
        let f3 = FieldSpec::prime(3).unwrap();
        let t = frobenius_derivation(3, 1).unwrap();
        assert_eq!(t.f(), &HomogPoly::monomial(f3.one(), 3, 0));
        assert_eq!(t.g(), &HomogPoly::monomial(f3.one(), 0, 3));
        let lines = all_hyperplanes(f3).unwrap();
        assert!(t.is_member(&Multiarrangement::constant(f3, &lines, 3).unwrap()).unwrap());
        assert_eq!(frobenius_derivation(4, 0), Err(Error::NotPrime(4)));
    }

    #[test]
    fn frobenius_basis_with_shifts() {
        let f2 = FieldSpec::prime(2).unwrap();
        let (b, m) = frobenius_basis(2, 0, &BTreeMap::new()).unwrap();
        assert_eq!(b.theta1(), &frobenius_derivation(2, 1).unwrap());
        assert_eq!(b.theta2(), &frobenius_derivation(2, 0).unwrap());
        assert_eq!(m.total(), 3);

        let shifts = BTreeMap::from([(LinearForm::x(f2), 1)]);
        let (b, m) = frobenius_basis(2, 0, &shifts).unwrap();
        assert_eq!(m, arr(f2, &[(1, 0, 2), (0, 1, 1), (1, 1, 1)]));
        let x_euler = Derivation::euler(f2).scale_by_linear(&LinearForm::x(f2)).unwrap();
        assert_eq!(b.exponents(), Exponents::new(2, 2));
        assert!(b.theta1() == &x_euler || b.theta2() == &x_euler);
        assert_eq!(exponents(&m).unwrap(), b.exponents());

        let bad = BTreeMap::from([(LinearForm::y(f2), 2)]);
        assert_eq!(frobenius_basis(2, 0, &bad), Err(Error::ShiftOutOfRange { shift: 2, max: 1 }));
    }
}
