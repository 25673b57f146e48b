//! Lines through the origin and multiarrangements of them.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldSpec};
use crate::poly::HomogPoly;

/// A defining form `α = ax·x + ay·y` of a line, normalized so that its first
/// nonzero coefficient is 1. Proportional forms normalize identically, so a
/// `LinearForm` doubles as the key of the line `ker α`.
///
/// The derived order compares `ax` then `ay`; it is the canonical processing
/// order of hyperplanes.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LinearForm {
    ax: FieldElement,
    ay: FieldElement,
}

impl LinearForm {
    /// Normalizes `ax·x + ay·y`.
    pub fn new(ax: FieldElement, ay: FieldElement) -> Result<Self> {
        if ax.spec() != ay.spec() {
            return Err(Error::FieldMismatch);
        }
        if !ax.is_zero() {
            let inv = ax.inv()?;
            let ay = &ay * &inv;
            Ok(LinearForm { ax: ax.spec().one(), ay })
        } else if !ay.is_zero() {
            Ok(LinearForm { ax, ay: ay.spec().one() })
        } else {
            Err(Error::ZeroForm)
        }
    }

    pub fn from_ints(spec: FieldSpec, ax: i64, ay: i64) -> Result<Self> {
        Self::new(spec.int(ax), spec.int(ay))
    }

    pub fn x(spec: FieldSpec) -> Self {
        LinearForm { ax: spec.one(), ay: spec.zero() }
    }

    pub fn y(spec: FieldSpec) -> Self {
        LinearForm { ax: spec.zero(), ay: spec.one() }
    }

    pub fn spec(&self) -> FieldSpec {
        self.ax.spec()
    }

    pub fn ax(&self) -> &FieldElement {
        &self.ax
    }

    pub fn ay(&self) -> &FieldElement {
        &self.ay
    }

    /// `(α_y, -α_x)`, a nonzero point on `ker α`.
    pub fn kernel_point(&self) -> (FieldElement, FieldElement) {
        (self.ay.clone(), -&self.ax)
    }

    pub fn to_poly(&self) -> HomogPoly {
        HomogPoly::from_coeffs(self.spec(), alloc::vec![self.ay.clone(), self.ax.clone()])
            .expect("two coefficients of one field")
    }
}

impl fmt::Display for LinearForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_poly())
    }
}

/// All `p + 1` lines of `F_p²`: `y`, then `x + c·y` for `c = 0, …, p-1`.
pub fn all_hyperplanes(spec: FieldSpec) -> Result<Vec<LinearForm>> {
    let p = spec.characteristic().ok_or(Error::InfiniteField)?;
    let mut forms = Vec::with_capacity(p as usize + 1);
    forms.push(LinearForm::y(spec));
    for c in 0..p {
        forms.push(LinearForm { ax: spec.one(), ay: spec.int(c as i64) });
    }
    Ok(forms)
}

/// A multiarrangement `(A, μ)`: a finitely supported map from lines to
/// positive multiplicities. Lines not in the map have multiplicity 0.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Multiarrangement {
    spec: FieldSpec,
    mult: BTreeMap<LinearForm, u32>,
}

impl Multiarrangement {
    pub fn empty(spec: FieldSpec) -> Self {
        Multiarrangement { spec, mult: BTreeMap::new() }
    }

    /// Collects `(form, multiplicity)` pairs; repeated lines add up and zero
    /// multiplicities are dropped.
    pub fn from_pairs<I>(spec: FieldSpec, pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (LinearForm, u32)>,
    {
        let mut m = Self::empty(spec);
        for (form, k) in pairs {
            m.add_multiplicity(form, k)?;
        }
        Ok(m)
    }

    fn add_multiplicity(&mut self, form: LinearForm, k: u32) -> Result<()> {
        if form.spec() != self.spec {
            return Err(Error::FieldMismatch);
        }
        if k > 0 {
            *self.mult.entry(form).or_insert(0) += k;
        }
        Ok(())
    }

    pub fn spec(&self) -> FieldSpec {
        self.spec
    }

    /// `μ(H)`, zero off the support.
    pub fn multiplicity(&self, form: &LinearForm) -> u32 {
        self.mult.get(form).copied().unwrap_or(0)
    }

    /// `|μ| = Σ_H μ(H)`.
    pub fn total(&self) -> u32 {
        self.mult.values().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.mult.is_empty()
    }

    /// Number of distinct lines.
    pub fn len(&self) -> usize {
        self.mult.len()
    }

    /// Support in canonical key order, with multiplicities.
    pub fn iter(&self) -> impl Iterator<Item = (&LinearForm, u32)> + '_ {
        self.mult.iter().map(|(f, &k)| (f, k))
    }

    pub fn support(&self) -> impl Iterator<Item = &LinearForm> + '_ {
        self.mult.keys()
    }

    /// `self ⊂ other`: `μ(H) ≤ μ'(H)` for every line.
    pub fn le(&self, other: &Self) -> Result<bool> {
        if self.spec != other.spec {
            return Err(Error::FieldMismatch);
        }
        Ok(self.iter().all(|(f, k)| k <= other.multiplicity(f)))
    }

    pub fn incremented(&self, form: &LinearForm) -> Result<Self> {
        let mut m = self.clone();
        m.add_multiplicity(form.clone(), 1)?;
        Ok(m)
    }

    /// Lowers `μ(H)` by one, dropping `H` from the support at zero.
    pub fn decremented(&self, form: &LinearForm) -> Result<Self> {
        if form.spec() != self.spec {
            return Err(Error::FieldMismatch);
        }
        let mut m = self.clone();
        match m.mult.get_mut(form) {
            None => return Err(Error::NotInSupport),
            Some(1) => {
                m.mult.remove(form);
            }
            Some(k) => *k -= 1,
        }
        Ok(m)
    }

    /// Same arrangement with every multiplicity equal to `k` on `forms`.
    pub fn constant(spec: FieldSpec, forms: &[LinearForm], k: u32) -> Result<Self> {
        Self::from_pairs(spec, forms.iter().map(|f| (f.clone(), k)))
    }

    /// `∏_H α_H^{μ(H)}`, the defining polynomial with multiplicities.
    pub fn defining_polynomial(&self) -> HomogPoly {
        let mut acc = HomogPoly::constant(self.spec.one());
        for (form, k) in self.iter() {
            for _ in 0..k {
                acc = acc.mul_linear(form).expect("same field");
            }
        }
        acc
    }
}

impl fmt::Display for Multiarrangement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, (form, k)) in self.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{form}: {k}")?;
        }
        f.write_str("}")
    }
}
