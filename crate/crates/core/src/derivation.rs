//! Homogeneous derivations `θ = f ∂x + g ∂y`.

use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::arrangement::{LinearForm, Multiarrangement};
use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldSpec};
use crate::poly::HomogPoly;

/// A nonzero homogeneous derivation. Both components carry the derivation's
/// degree; a zero component is tagged with the degree of the other one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Derivation {
    f: HomogPoly,
    g: HomogPoly,
}

impl Derivation {
    pub fn new(f: HomogPoly, g: HomogPoly) -> Result<Self> {
        if f.spec() != g.spec() {
            return Err(Error::FieldMismatch);
        }
        match (f.is_zero(), g.is_zero()) {
            (true, true) => Err(Error::ZeroDerivation),
            (true, false) => Ok(Derivation { f: f.retag_zero(g.degree()), g }),
            (false, true) => Ok(Derivation { g: g.retag_zero(f.degree()), f }),
            (false, false) if f.degree() != g.degree() => {
                Err(Error::DegreeMismatch { expected: f.degree(), found: g.degree() })
            }
            _ => Ok(Derivation { f, g }),
        }
    }

    pub fn partial_x(spec: FieldSpec) -> Self {
        Derivation { f: HomogPoly::constant(spec.one()), g: HomogPoly::zero(spec, 0) }
    }

    pub fn partial_y(spec: FieldSpec) -> Self {
        Derivation { f: HomogPoly::zero(spec, 0), g: HomogPoly::constant(spec.one()) }
    }

    /// `x ∂x + y ∂y`.
    pub fn euler(spec: FieldSpec) -> Self {
        Derivation { f: HomogPoly::x(spec), g: HomogPoly::y(spec) }
    }

    pub fn spec(&self) -> FieldSpec {
        self.f.spec()
    }

    pub fn degree(&self) -> usize {
        self.f.degree()
    }

    /// Coefficient of `∂x`.
    pub fn f(&self) -> &HomogPoly {
        &self.f
    }

    /// Coefficient of `∂y`.
    pub fn g(&self) -> &HomogPoly {
        &self.g
    }

    /// `θ(α) = α_x·f + α_y·g`.
    pub fn apply(&self, alpha: &LinearForm) -> Result<HomogPoly> {
        if alpha.spec() != self.spec() {
            return Err(Error::FieldMismatch);
        }
        Ok(self.apply_unchecked(alpha))
    }

    pub(crate) fn apply_unchecked(&self, alpha: &LinearForm) -> HomogPoly {
        let fx = self.f.scale(alpha.ax()).expect("same field");
        let gy = self.g.scale(alpha.ay()).expect("same field");
        fx.add(&gy).expect("equal degrees")
    }

    /// `θ ∈ D(A, μ)`: `α^{μ(H)}` divides `θ(α)` for every `H = ker α`.
    pub fn is_member(&self, m: &Multiarrangement) -> Result<bool> {
        if m.spec() != self.spec() {
            return Err(Error::FieldMismatch);
        }
        Ok(m.iter().all(|(alpha, k)| self.apply_unchecked(alpha).div_exact_linear_power(alpha, k).is_ok()))
    }

    pub fn scale_by_linear(&self, alpha: &LinearForm) -> Result<Self> {
        Ok(Derivation { f: self.f.mul_linear(alpha)?, g: self.g.mul_linear(alpha)? })
    }

    pub fn scale_by_poly(&self, q: &HomogPoly) -> Result<Self> {
        Derivation::new(self.f.mul(q)?, self.g.mul(q)?)
    }

    /// `self + q · other`. A zero result is an error.
    pub fn add_scaled(&self, q: &HomogPoly, other: &Self) -> Result<Self> {
        if q.spec() != self.spec() || other.spec() != self.spec() {
            return Err(Error::FieldMismatch);
        }
        let expected = self.degree();
        let found = q.degree() + other.degree();
        if expected != found {
            return Err(Error::DegreeMismatch { expected, found });
        }
        let f = self.f.add(&other.f.mul(q)?)?;
        let g = self.g.add(&other.g.mul(q)?)?;
        match (f.is_zero(), g.is_zero()) {
            (true, true) => Err(Error::ZeroDerivation),
            (true, false) => Ok(Derivation { f: f.retag_zero(g.degree()), g }),
            (false, true) => Ok(Derivation { g: g.retag_zero(f.degree()), f }),
            _ => Ok(Derivation { f, g }),
        }
    }

    /// Primitive representative over ℚ: integer coefficients with content 1,
    /// and the leading coefficient of `f` (of `g` if `f = 0`) positive. The
    /// leading coefficient is the one of the highest power of `x`. Over `F_p`
    /// the derivation is returned unchanged.
    pub fn primitive(&self) -> Self {
        if !self.spec().is_rationals() {
            return self.clone();
        }
        let coeffs = self.f.coeffs().iter().chain(self.g.coeffs());
        let mut num_gcd = BigInt::zero();
        let mut den_lcm = BigInt::one();
        for c in coeffs.clone() {
            let q = c.as_rational().expect("rational field");
            if q.is_zero() {
                continue;
            }
            num_gcd = num_gcd.gcd(q.numer());
            den_lcm = den_lcm.lcm(q.denom());
        }
        let leading = self
            .f
            .coeffs()
            .iter()
            .rev()
            .chain(self.g.coeffs().iter().rev())
            .find(|c| !c.is_zero())
            .expect("nonzero derivation");
        if leading.is_negative() {
            num_gcd = -num_gcd;
        }
        let spec = self.spec();
        let factor = spec.ratio(&den_lcm, &num_gcd).expect("nonzero content");
        if factor.is_one() {
            return self.clone();
        }
        self.scale(&factor)
    }

    pub fn scale(&self, c: &FieldElement) -> Self {
        Derivation { f: self.f.scale(c).expect("same field"), g: self.g.scale(c).expect("same field") }
    }
}

/// `det [[f₁, g₁], [f₂, g₂]] = f₁g₂ − f₂g₁`, nonzero iff the two derivations
/// are S-linearly independent.
pub fn saito_determinant(t1: &Derivation, t2: &Derivation) -> Result<HomogPoly> {
    if t1.spec() != t2.spec() {
        return Err(Error::FieldMismatch);
    }
    let a = t1.f.mul(&t2.g)?;
    let b = t2.f.mul(&t1.g)?;
    a.sub(&b)
}

impl fmt::Display for Derivation {
    /// `(f) ∂x + (g) ∂y`; zero components are left out and a unit coefficient
    /// is written as the bare `∂x` / `∂y`.
    fn fmt(&self, fmt: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (c, name) in [(&self.f, "∂x"), (&self.g, "∂y")] {
            if c.is_zero() {
                continue;
            }
            if !first {
                fmt.write_str(" + ")?;
            }
            first = false;
            if c.degree() == 0 && c.coeff(0).is_one() {
                fmt.write_str(name)?;
            } else {
                write!(fmt, "({c}) {name}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    fn qq() -> FieldSpec {
        FieldSpec::rationals()
    }

    fn p(spec: FieldSpec, c: &[i64]) -> HomogPoly {
        HomogPoly::from_ints(spec, c).unwrap()
    }

    fn d(spec: FieldSpec, f: &[i64], g: &[i64]) -> Derivation {
        Derivation::new(p(spec, f), p(spec, g)).unwrap()
    }

    fn arr(spec: FieldSpec, items: &[(i64, i64, u32)]) -> Multiarrangement {
        Multiarrangement::from_pairs(
            spec,
            items.iter().map(|&(a, b, k)| (LinearForm::from_ints(spec, a, b).unwrap(), k)),
        )
        .unwrap()
    }

    #[test]
    fn construction() {
        let q = qq();
        assert_eq!(Derivation::new(HomogPoly::zero(q, 0), HomogPoly::zero(q, 0)), Err(Error::ZeroDerivation));
        assert_eq!(
            Derivation::new(p(q, &[1, 0]), p(q, &[1, 0, 0])),
            Err(Error::DegreeMismatch { expected: 1, found: 2 })
        );
        let t = Derivation::new(p(q, &[0, 0, 1]), HomogPoly::zero(q, 0)).unwrap();
        assert_eq!(t.degree(), 2);
        assert_eq!(t.g().degree(), 2);
    }

    #[test]
    fn application() {
        let q = qq();
        let xy = LinearForm::from_ints(q, 1, 1).unwrap();
        assert_eq!(Derivation::euler(q).apply(&xy).unwrap(), xy.to_poly());
        assert!(Derivation::partial_x(q).apply(&LinearForm::y(q)).unwrap().is_zero());
        let f5 = FieldSpec::prime(5).unwrap();
        let frob = d(f5, &[0, 0, 0, 0, 0, 1], &[1, 0, 0, 0, 0, 0]);
        let alpha = LinearForm::from_ints(f5, 1, 3).unwrap();
        assert_eq!(frob.apply(&alpha).unwrap(), alpha.to_poly().pow(5));
    }

    #[test]
    fn membership() {
        let q = qq();
        let x1 = arr(q, &[(1, 0, 1)]);
        assert!(d(q, &[0, 1], &[0, 0]).is_member(&x1).unwrap());
        assert!(Derivation::partial_y(q).is_member(&x1).unwrap());
        assert!(!Derivation::partial_x(q).is_member(&x1).unwrap());
        let f2 = FieldSpec::prime(2).unwrap();
        let frob = d(f2, &[0, 0, 1], &[1, 0, 0]);
        assert!(frob.is_member(&arr(f2, &[(1, 0, 2), (0, 1, 2), (1, 1, 2)])).unwrap());
        assert!(!frob.is_member(&arr(f2, &[(1, 1, 3)])).unwrap());
    }

    #[test]
    fn determinants() {
        let q = qq();
        assert_eq!(
            saito_determinant(&Derivation::partial_x(q), &Derivation::partial_y(q)).unwrap(),
            HomogPoly::constant(q.one())
        );
        let t = d(q, &[0, 1], &[0, 0]);
        assert!(saito_determinant(&t, &t).unwrap().is_zero());
        // θ_1 = x∂x + y∂y and θ_3 = x³∂x + y³∂y over F_3: det = x y³ − x³ y
        let f3 = FieldSpec::prime(3).unwrap();
        let e = Derivation::euler(f3);
        let t3 = d(f3, &[0, 0, 0, 1], &[1, 0, 0, 0]);
        let det = saito_determinant(&e, &t3).unwrap();
        assert_eq!(det, p(f3, &[0, 1, 0, -1, 0]));
    }

    #[test]
    fn scaling_and_combination() {
        let q = qq();
        let t = Derivation::partial_y(q).scale_by_linear(&LinearForm::x(q)).unwrap();
        assert_eq!(t, d(q, &[0, 0], &[0, 1]));
        let x2 = d(q, &[0, 0, 1], &[0, 0, 0]);
        let ydy = d(q, &[0, 0], &[1, 0]);
        let sum = x2.add_scaled(&HomogPoly::x(q), &ydy).unwrap();
        assert_eq!(sum, d(q, &[0, 0, 1], &[0, 1, 0]));
        let xdx = d(q, &[0, 1], &[0, 0]);
        let minus_one = HomogPoly::constant(q.int(-1));
        assert_eq!(xdx.add_scaled(&minus_one, &xdx), Err(Error::ZeroDerivation));
        assert_eq!(
            xdx.add_scaled(&HomogPoly::x(q), &xdx),
            Err(Error::DegreeMismatch { expected: 1, found: 2 })
        );
    }

    #[test]
    fn primitive_form() {
        let q = qq();
        let half = q.ratio(&1.into(), &2.into()).unwrap();
        let t = d(q, &[0, -4], &[6, 0]).scale(&half);
        assert_eq!(t.primitive(), d(q, &[0, 2], &[-3, 0]));
        let g_only = Derivation::new(HomogPoly::zero(q, 1), p(q, &[-5, -10])).unwrap();
        assert_eq!(g_only.primitive(), Derivation::new(HomogPoly::zero(q, 1), p(q, &[1, 2])).unwrap());
    }

    #[test]
    fn rendering() {
        let q = qq();
        assert_eq!(Derivation::partial_x(q).to_string(), "∂x");
        assert_eq!(Derivation::euler(q).to_string(), "(x) ∂x + (y) ∂y");
        assert_eq!(d(q, &[0, 0, 0], &[0, 1, -1]).to_string(), "(-x^2 + x*y) ∂y");
    }

    mod props {
        use super::*;
        use proptest::collection::vec as pvec;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn apply_is_s_linear(f1 in pvec(-5i64..5, 3), g1 in pvec(-5i64..5, 3),
                                 f2 in pvec(-5i64..5, 2), g2 in pvec(-5i64..5, 2),
                                 qc in pvec(-5i64..5, 2), a in -3i64..3, b in -3i64..3) {
                let q = qq();
                prop_assume!(a != 0 || b != 0);
                let t1 = Derivation::new(p(q, &f1), p(q, &g1));
                let t2 = Derivation::new(p(q, &f2), p(q, &g2));
                prop_assume!(t1.is_ok() && t2.is_ok());
                let (t1, t2) = (t1.unwrap(), t2.unwrap());
                let qp = p(q, &qc);
                let alpha = LinearForm::from_ints(q, a, b).unwrap();
                if let Ok(sum) = t1.add_scaled(&qp, &t2) {
                    let lhs = sum.apply(&alpha).unwrap();
                    let rhs = t1.apply(&alpha).unwrap().add(&qp.mul(&t2.apply(&alpha).unwrap()).unwrap()).unwrap();
                    prop_assert_eq!(lhs, rhs);
                }
            }

            #[test]
            fn update_multiplies_determinant_by_alpha(f1 in pvec(-5i64..5, 3), g1 in pvec(-5i64..5, 3),
                                                      f2 in pvec(-5i64..5, 2), g2 in pvec(-5i64..5, 2),
                                                      qc in pvec(-5i64..5, 2), a in -3i64..3, b in -3i64..3) {
                let q = qq();
                prop_assume!(a != 0 || b != 0);
                let t1 = Derivation::new(p(q, &f1), p(q, &g1));
                let t2 = Derivation::new(p(q, &f2), p(q, &g2));
                prop_assume!(t1.is_ok() && t2.is_ok());
                let (t1, t2) = (t1.unwrap(), t2.unwrap());
                let alpha = LinearForm::from_ints(q, a, b).unwrap();
                if let Ok(n1) = t1.add_scaled(&p(q, &qc), &t2) {
                    let n2 = t2.scale_by_linear(&alpha).unwrap();
                    let lhs = saito_determinant(&n1, &n2).unwrap();
                    let rhs = saito_determinant(&t1, &t2).unwrap().mul(&alpha.to_poly()).unwrap();
                    prop_assert_eq!(lhs, rhs);
                }
            }

            #[test]
            fn membership_is_antitone(extra in pvec((-2i64..3, -2i64..3, 1u32..3), 0..3),
                                      base in pvec((-2i64..3, -2i64..3, 1u32..3), 0..3),
                                      cf in pvec(-4i64..4, 3), cg in pvec(-4i64..4, 3)) {
                // θ = α-power multiple of a member of the larger arrangement
                let q = qq();
                let mk = |items: &[(i64, i64, u32)]| Multiarrangement::from_pairs(
                    q,
                    items.iter().filter_map(|&(a, b, k)| LinearForm::from_ints(q, a, b).ok().map(|f| (f, k))),
                ).unwrap();
                let small = mk(&base);
                let mut big = small.clone();
                for (f, k) in mk(&extra).iter() {
                    for _ in 0..k {
                        big = big.incremented(f).unwrap();
                    }
                }
                let t = Derivation::new(p(q, &cf), p(q, &cg));
                prop_assume!(t.is_ok());
                let t = t.unwrap().scale_by_poly(&big.defining_polynomial()).unwrap();
                prop_assert!(t.is_member(&big).unwrap());
                prop_assert!(t.is_member(&small).unwrap());
            }
        }
    }
}
