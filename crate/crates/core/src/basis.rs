//! Homogeneous bases of `D(A, μ)`.
//!
//! [`alg1`] turns a basis for `(A, μ)` into one for the arrangement with one
//! multiplicity raised by one. Its only free choice is the polynomial `q` that
//! makes `θ₁ + q·θ₂` vanish to one more order along the new line; [`alg2`]
//! fixes that choice with an explicit closed form, and [`alg3`] walks a
//! saturated chain from the empty arrangement, where `(∂x, ∂y)` is a basis.
//!
//! Correctness is checked with Saito's criterion ([`verify_basis`]): two
//! independent homogeneous members whose degrees add up to `|μ|` form a
//! basis.

use alloc::vec::Vec;
use core::fmt;

use crate::arrangement::{LinearForm, Multiarrangement};
use crate::derivation::{saito_determinant, Derivation};
use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldSpec};
use crate::poly::HomogPoly;

/// Two homogeneous, S-linearly independent derivations with
/// `deg theta1 ≥ deg theta2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisPair {
    theta1: Derivation,
    theta2: Derivation,
}

impl BasisPair {
    /// Orders the pair by descending degree and checks independence.
    pub fn new(a: Derivation, b: Derivation) -> Result<Self> {
        if saito_determinant(&a, &b)?.is_zero() {
            return Err(Error::Dependent);
        }
        Ok(Self::ordered(a, b))
    }

    /// Swaps only if the second degree is strictly larger.
    pub(crate) fn ordered(a: Derivation, b: Derivation) -> Self {
        if a.degree() < b.degree() {
            BasisPair { theta1: b, theta2: a }
        } else {
            BasisPair { theta1: a, theta2: b }
        }
    }

    /// `(∂x, ∂y)`, the basis of `D(∅, 0)`.
    pub fn standard(spec: FieldSpec) -> Self {
        BasisPair { theta1: Derivation::partial_x(spec), theta2: Derivation::partial_y(spec) }
    }

    pub fn theta1(&self) -> &Derivation {
        &self.theta1
    }

    pub fn theta2(&self) -> &Derivation {
        &self.theta2
    }

    pub fn spec(&self) -> FieldSpec {
        self.theta1.spec()
    }

    pub fn exponents(&self) -> Exponents {
        Exponents::new(self.theta1.degree(), self.theta2.degree())
    }

    pub fn determinant(&self) -> HomogPoly {
        saito_determinant(&self.theta1, &self.theta2).expect("same field")
    }

    pub fn verify(&self, m: &Multiarrangement) -> Result<bool> {
        verify_basis(&self.theta1, &self.theta2, m)
    }

    pub fn into_parts(self) -> (Derivation, Derivation) {
        (self.theta1, self.theta2)
    }
}

/// The multiset of degrees of a homogeneous basis.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Exponents {
    high: usize,
    low: usize,
}

impl Exponents {
    pub fn new(a: usize, b: usize) -> Self {
        Exponents { high: a.max(b), low: a.min(b) }
    }

    pub fn high(&self) -> usize {
        self.high
    }

    pub fn low(&self) -> usize {
        self.low
    }

    pub fn sum(&self) -> usize {
        self.high + self.low
    }

    /// `|d₁ − d₂|`.
    pub fn difference(&self) -> usize {
        self.high - self.low
    }
}

impl fmt::Display for Exponents {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}, {}}}", self.high, self.low)
    }
}

/// Saito's criterion: both are members of `D(A, μ)`, they are independent
/// and their degrees add up to `|μ|`.
pub fn verify_basis(t1: &Derivation, t2: &Derivation, m: &Multiarrangement) -> Result<bool> {
    if t1.spec() != m.spec() || t2.spec() != m.spec() {
        return Err(Error::FieldMismatch);
    }
    if t1.degree() + t2.degree() != m.total() as usize {
        return Ok(false);
    }
    if saito_determinant(t1, t2)?.is_zero() {
        return Ok(false);
    }
    Ok(t1.is_member(m)? && t2.is_member(m)?)
}

/// If `det(θ₁, θ₂) = c · ∏_H α_H^{μ(H)}` for a nonzero constant `c`,
/// returns `c`.
pub fn saito_product_constant(b: &BasisPair, m: &Multiarrangement) -> Result<Option<FieldElement>> {
    if b.spec() != m.spec() {
        return Err(Error::FieldMismatch);
    }
    let mut det = b.determinant();
    if det.is_zero() {
        return Ok(None);
    }
    for (alpha, k) in m.iter() {
        match det.div_exact_linear_power(alpha, k) {
            Ok(q) => det = q,
            Err(_) => return Ok(None),
        }
    }
    if det.degree() != 0 {
        return Ok(None);
    }
    Ok(Some(det.coeff(0).clone()))
}

/// Which case of the single-step update fired.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Branch {
    /// `θ₂(α)/α^m` vanishes on `ker α`: result `(α·θ₁, θ₂)`.
    GVanishing,
    /// `θ₁(α)/α^m` vanishes on `ker α`: result `(θ₁, α·θ₂)`.
    FVanishing,
    /// Neither vanishes: result `(θ₁ + q·θ₂, α·θ₂)`.
    Generic,
}

impl fmt::Display for Branch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Branch::GVanishing => "g-vanishing",
            Branch::FVanishing => "f-vanishing",
            Branch::Generic => "generic",
        })
    }
}

/// Values a `q`-solver sees: `f` and `g` at the kernel point `(α_y, -α_x)`,
/// the form `α`, and the required degree `d = deg θ₁ − deg θ₂`.
#[derive(Clone, Copy, Debug)]
pub struct StepValues<'a> {
    pub f_at: &'a FieldElement,
    pub g_at: &'a FieldElement,
    pub alpha: &'a LinearForm,
    pub degree: usize,
}

/// The explicit solution of `f(P) + g(P)·q(P) = 0`, `P = (α_y, -α_x)`.
///
/// For `α_x ≠ 0`:
/// `q = (−f(P)/(g(P)(−α_x)^d) − Σ_{i=1}^{d} α_y^i/(−α_x)^i)·y^d + Σ_{i=1}^{d} x^i y^{d−i}`.
/// For `α_x = 0`: `q = −(f(1,0)/g(1,0))·x^d`.
pub fn canonical_q(v: StepValues<'_>) -> Result<HomogPoly> {
    let spec = v.alpha.spec();
    let d = v.degree;
    let ratio = v.f_at.checked_div(v.g_at)?;
    let (ax, ay) = (v.alpha.ax(), v.alpha.ay());
    if ax.is_zero() {
        return Ok(HomogPoly::monomial(-ratio, d, 0));
    }
    let minus_ax = -ax;
    let mut c0 = -(ratio.checked_div(&minus_ax.pow(d as u64))?);
    let step = ay.checked_div(&minus_ax)?;
    let mut term = spec.one();
    for _ in 1..=d {
        term = &term * &step;
        c0 = &c0 - &term;
    }
    let mut coeffs = Vec::with_capacity(d + 1);
    coeffs.push(c0);
    coeffs.extend((1..=d).map(|_| spec.one()));
    HomogPoly::from_coeffs(spec, coeffs)
}

/// One update step with a caller-supplied solver for `q`.
///
/// `b` must be a basis for some `D(A, μ)` with `μ(ker α) = m`; this is not
/// re-verified, but a failed exact division reports
/// [`Error::NotDivisible`]. Over ℚ both outputs are reduced to primitive
/// form.
pub fn alg1_with<S>(b: &BasisPair, alpha: &LinearForm, m: u32, solve: S) -> Result<(BasisPair, Branch)>
where
    S: FnOnce(StepValues<'_>) -> Result<HomogPoly>,
{
    if alpha.spec() != b.spec() {
        return Err(Error::FieldMismatch);
    }
    let (mut t1, mut t2) = (&b.theta1, &b.theta2);
    if t1.degree() < t2.degree() {
        core::mem::swap(&mut t1, &mut t2);
    }
    let (px, py) = alpha.kernel_point();

    let g = t2.apply_unchecked(alpha).div_exact_linear_power(alpha, m)?;
    let g_at = g.eval_unchecked(&px, &py);
    if g_at.is_zero() {
        let out = (t1.scale_by_linear(alpha)?, t2.clone());
        return Ok((finish(out), Branch::GVanishing));
    }

    let f = t1.apply_unchecked(alpha).div_exact_linear_power(alpha, m)?;
    let f_at = f.eval_unchecked(&px, &py);
    if f_at.is_zero() {
        let out = (t1.clone(), t2.scale_by_linear(alpha)?);
        return Ok((finish(out), Branch::FVanishing));
    }

    let d = t1.degree() - t2.degree();
    let q = solve(StepValues { f_at: &f_at, g_at: &g_at, alpha, degree: d })?;
    if q.degree() != d || q.spec() != alpha.spec() {
        return Err(Error::Inconsistent("q has the wrong degree"));
    }
    if !(&f_at + &(&g_at * &q.eval_unchecked(&px, &py))).is_zero() {
        return Err(Error::Inconsistent("q does not solve f(P) + g(P)q(P) = 0"));
    }
    let out = (t1.add_scaled(&q, t2)?, t2.scale_by_linear(alpha)?);
    Ok((finish(out), Branch::Generic))
}

fn finish((a, b): (Derivation, Derivation)) -> BasisPair {
    BasisPair::ordered(a.primitive(), b.primitive())
}

/// Basis for `μ` raised by one at `ker α`, from a basis for `μ` where
/// `μ(ker α) = m`. The free choice of `q` is resolved by [`canonical_q`].
pub fn alg1(b: &BasisPair, alpha: &LinearForm, m: u32) -> Result<BasisPair> {
    alg2(b, alpha, m)
}

/// The update step with the explicit choice of `q` ([`canonical_q`]).
pub fn alg2(b: &BasisPair, alpha: &LinearForm, m: u32) -> Result<BasisPair> {
    alg2_traced(b, alpha, m).map(|(pair, _)| pair)
}

/// [`alg2`], also reporting which branch was taken.
pub fn alg2_traced(b: &BasisPair, alpha: &LinearForm, m: u32) -> Result<(BasisPair, Branch)> {
    alg1_with(b, alpha, m, canonical_q)
}

/// A homogeneous basis for `D(A, μ)`, built along the saturated chain that
/// raises the lines one at a time in canonical key order, each from 0 to its
/// multiplicity.
pub fn alg3(m: &Multiarrangement) -> Result<BasisPair> {
    walk_chain(m, None, |_| {})
}

/// [`alg3`] with the lines processed in the given order, which must be a
/// permutation of the support.
pub fn alg3_with_order(m: &Multiarrangement, order: &[LinearForm]) -> Result<BasisPair> {
    walk_chain(m, Some(order), |_| {})
}

/// Exponents of `(A, μ)`, read off the [`alg3`] basis.
pub fn exponents(m: &Multiarrangement) -> Result<Exponents> {
    Ok(alg3(m)?.exponents())
}

/// What [`walk_chain`] reports after each step.
pub struct ChainStep<'a> {
    pub alpha: &'a LinearForm,
    /// Multiplicity of `ker α` before the step.
    pub before: u32,
    pub branch: Branch,
    pub input: &'a BasisPair,
    pub output: &'a BasisPair,
}

/// Runs the alg3 chain, calling `on_step` after every single-step update.
pub fn walk_chain<F>(m: &Multiarrangement, order: Option<&[LinearForm]>, mut on_step: F) -> Result<BasisPair>
where
    F: FnMut(&ChainStep<'_>),
{
    let owned: Vec<LinearForm>;
    let order = match order {
        Some(order) => {
            let mut sorted = order.to_vec();
            sorted.sort();
            sorted.dedup();
            if sorted.len() != order.len() || !sorted.iter().eq(m.support()) {
                return Err(Error::BadOrder);
            }
            order
        }
        None => {
            owned = m.support().cloned().collect();
            &owned
        }
    };
    let mut pair = BasisPair::standard(m.spec());
    for alpha in order {
        for before in 0..m.multiplicity(alpha) {
            let (next, branch) = alg2_traced(&pair, alpha, before)?;
            on_step(&ChainStep { alpha, before, branch, input: &pair, output: &next });
            pair = next;
        }
    }
    Ok(pair)
}
