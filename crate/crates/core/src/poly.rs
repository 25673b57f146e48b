//! Dense homogeneous polynomials in `x`, `y`.
//!
//! A polynomial of degree `d` is stored as `d + 1` coefficients, entry `j`
//! being the coefficient of `x^j y^(d-j)`. The zero polynomial exists at every
//! degree so that the two components of a derivation stay aligned; zero
//! polynomials compare equal regardless of their degree tag.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::arrangement::LinearForm;
use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldSpec};

#[derive(Clone, Debug)]
pub struct HomogPoly {
    spec: FieldSpec,
    coeffs: Vec<FieldElement>,
}

impl PartialEq for HomogPoly {
    fn eq(&self, other: &Self) -> bool {
        if self.spec != other.spec {
            return false;
        }
        match (self.is_zero(), other.is_zero()) {
            (true, true) => true,
            (false, false) => self.coeffs == other.coeffs,
            _ => false,
        }
    }
}

impl Eq for HomogPoly {}

impl HomogPoly {
    pub fn zero(spec: FieldSpec, degree: usize) -> Self {
        HomogPoly { spec, coeffs: vec![spec.zero(); degree + 1] }
    }

    /// Builds `Σ coeffs[j] x^j y^(d-j)` with `d = coeffs.len() - 1`.
    pub fn from_coeffs(spec: FieldSpec, coeffs: Vec<FieldElement>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::EmptyPolynomial);
        }
        if coeffs.iter().any(|c| c.spec() != spec) {
            return Err(Error::FieldMismatch);
        }
        Ok(HomogPoly { spec, coeffs })
    }

    pub fn from_ints(spec: FieldSpec, coeffs: &[i64]) -> Result<Self> {
        Self::from_coeffs(spec, coeffs.iter().map(|&c| spec.int(c)).collect())
    }

    pub fn constant(c: FieldElement) -> Self {
        HomogPoly { spec: c.spec(), coeffs: vec![c] }
    }

    /// `c · x^i · y^j`.
    pub fn monomial(c: FieldElement, x_exp: usize, y_exp: usize) -> Self {
        let spec = c.spec();
        let mut p = Self::zero(spec, x_exp + y_exp);
        p.coeffs[x_exp] = c;
        p
    }

    pub fn x(spec: FieldSpec) -> Self {
        Self::monomial(spec.one(), 1, 0)
    }

    pub fn y(spec: FieldSpec) -> Self {
        Self::monomial(spec.one(), 0, 1)
    }

    pub fn spec(&self) -> FieldSpec {
        self.spec
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    /// Coefficient of `x^j y^(d-j)`.
    pub fn coeff(&self, j: usize) -> &FieldElement {
        &self.coeffs[j]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(FieldElement::is_zero)
    }

    /// Same polynomial carried at another degree; only valid for zero.
    pub(crate) fn retag_zero(&self, degree: usize) -> Self {
        debug_assert!(self.is_zero());
        Self::zero(self.spec, degree)
    }

    fn check_field(&self, spec: FieldSpec) -> Result<()> {
        if self.spec == spec {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    /// Sum at the common degree. A zero operand adopts the other's degree.
    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_field(other.spec)?;
        if other.is_zero() {
            return Ok(self.clone());
        }
        if self.is_zero() {
            return Ok(other.clone());
        }
        if self.degree() != other.degree() {
            return Err(Error::DegreeMismatch { expected: self.degree(), found: other.degree() });
        }
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
        Ok(HomogPoly { spec: self.spec, coeffs })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        HomogPoly { spec: self.spec, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_field(other.spec)?;
        let mut out = Self::zero(self.spec, self.degree() + other.degree());
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out.coeffs[i + j] = &out.coeffs[i + j] + &(a * b);
                }
            }
        }
        Ok(out)
    }

    pub fn pow(&self, e: usize) -> Self {
        let mut acc = Self::constant(self.spec.one());
        for _ in 0..e {
            acc = acc.mul(self).expect("same field");
        }
        acc
    }

    pub fn scale(&self, c: &FieldElement) -> Result<Self> {
        self.check_field(c.spec())?;
        Ok(HomogPoly { spec: self.spec, coeffs: self.coeffs.iter().map(|a| a * c).collect() })
    }

    /// `α · p`, one degree higher.
    pub fn mul_linear(&self, alpha: &LinearForm) -> Result<Self> {
        self.check_field(alpha.spec())?;
        let (ax, ay) = (alpha.ax(), alpha.ay());
        let d = self.degree();
        let mut coeffs = Vec::with_capacity(d + 2);
        for j in 0..=d + 1 {
            // coefficient of x^j y^(d+1-j): ax·p[j-1] + ay·p[j]
            let mut c = self.spec.zero();
            if j >= 1 && !ax.is_zero() {
                c = &c + &(ax * &self.coeffs[j - 1]);
            }
            if j <= d && !ay.is_zero() {
                c = &c + &(ay * &self.coeffs[j]);
            }
            coeffs.push(c);
        }
        Ok(HomogPoly { spec: self.spec, coeffs })
    }

    /// `Σ_j coeffs[j] · a^j · b^(d-j)`.
    pub fn eval(&self, a: &FieldElement, b: &FieldElement) -> Result<FieldElement> {
        self.check_field(a.spec())?;
        self.check_field(b.spec())?;
        Ok(self.eval_unchecked(a, b))
    }

    pub(crate) fn eval_unchecked(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        let d = self.degree();
        let mut b_pows = Vec::with_capacity(d + 1);
        b_pows.push(self.spec.one());
        for k in 1..=d {
            b_pows.push(&b_pows[k - 1] * b);
        }
        let mut acc = self.spec.zero();
        let mut a_pow = self.spec.one();
        for (j, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                acc = &acc + &(&(c * &a_pow) * &b_pows[d - j]);
            }
            if j < d {
                a_pow = &a_pow * a;
            }
        }
        acc
    }

    /// A homogeneous `p` is divisible by `α` iff it vanishes at the point
    /// `(α_y, -α_x)` of `ker α`.
    pub fn is_divisible_by_linear(&self, alpha: &LinearForm) -> Result<bool> {
        self.check_field(alpha.spec())?;
        let (a, b) = alpha.kernel_point();
        Ok(self.eval_unchecked(&a, &b).is_zero())
    }

    /// One synthetic division by `α`; fails on a nonzero remainder.
    pub fn div_linear(&self, alpha: &LinearForm) -> Result<Self> {
        self.check_field(alpha.spec())?;
        self.div_linear_unchecked(alpha)
    }

    fn div_linear_unchecked(&self, alpha: &LinearForm) -> Result<Self> {
        let d = self.degree();
        let not_divisible = Error::NotDivisible { degree: d, power: 1 };
        if self.is_zero() {
            return Ok(Self::zero(self.spec, d.saturating_sub(1)));
        }
        if d == 0 {
            return Err(not_divisible);
        }
        let (ax, ay) = (alpha.ax(), alpha.ay());
        let mut q = vec![self.spec.zero(); d];
        // (q·α)[j] = ax·q[j-1] + ay·q[j]
        if !ax.is_zero() {
            let ax_inv = ax.inv()?;
            q[d - 1] = &self.coeffs[d] * &ax_inv;
            for j in (1..d).rev() {
                let r = &self.coeffs[j] - &(ay * &q[j]);
                q[j - 1] = if ax.is_one() { r } else { &r * &ax_inv };
            }
            if !(&self.coeffs[0] - &(ay * &q[0])).is_zero() {
                return Err(not_divisible);
            }
        } else {
            let ay_inv = ay.inv()?;
            for (qj, c) in q.iter_mut().zip(&self.coeffs) {
                *qj = c * &ay_inv;
            }
            if !self.coeffs[d].is_zero() {
                return Err(not_divisible);
            }
        }
        Ok(HomogPoly { spec: self.spec, coeffs: q })
    }

    /// Returns `q` with `q · α^m = p`, by `m` successive synthetic divisions.
    pub fn div_exact_linear_power(&self, alpha: &LinearForm, m: u32) -> Result<Self> {
        self.check_field(alpha.spec())?;
        let mut q = self.clone();
        for _ in 0..m {
            q = q
                .div_linear_unchecked(alpha)
                .map_err(|_| Error::NotDivisible { degree: self.degree(), power: m })?;
        }
        Ok(q)
    }
}

impl fmt::Display for HomogPoly {
    /// Renders like `3*x^2*y - 1/2*y^3`, highest power of `x` first.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let d = self.degree();
        let mut first = true;
        for j in (0..=d).rev() {
            let c = &self.coeffs[j];
            if c.is_zero() {
                continue;
            }
            let (neg, abs) = if c.is_negative() { (true, -c) } else { (false, c.clone()) };
            match (first, neg) {
                (true, true) => f.write_str("-")?,
                (true, false) => {}
                (false, true) => f.write_str(" - ")?,
                (false, false) => f.write_str(" + ")?,
            }
            first = false;
            let mut parts = alloc::vec::Vec::new();
            if !abs.is_one() || d == 0 {
                parts.push(alloc::format!("{abs}"));
            }
            match j {
                0 => {}
                1 => parts.push("x".into()),
                _ => parts.push(alloc::format!("x^{j}")),
            }
            match d - j {
                0 => {}
                1 => parts.push("y".into()),
                k => parts.push(alloc::format!("y^{k}")),
            }
            f.write_str(&parts.join("*"))?;
        }
        Ok(())
    }
}
