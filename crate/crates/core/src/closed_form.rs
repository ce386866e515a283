//! Closed forms for the first significant coefficients of p-power iterates
//! of a parabolic series f(ζ) = ζ(1 + Σ a_j ζ^j), and the periodic-point
//! norm bounds they imply.
//!
//! With d = (p^n - 1)/(p - 1) and φ = 3/2·a₂³ + a₃² - a₂a₄, the iterate
//! f^(p^n)(ζ) - ζ has its three leading coefficients at degrees
//! 2(1+p+…+p^n)+1 .. +3, equal to
//!
//!   α_n = a₂^(p^n-2d) φ^d,
//!   β_n = a₃ a₂^(p^n-2d-1) φ^d,
//!   γ_n = (a₄ a₂^(p^n-2d-1) - 3/2 a₂^(p^n-2d+1)) φ^d,
//!
//! all lower non-linear coefficients vanishing. β and γ are kept in the
//! multiplied-through form shown, which never divides by a₂ and therefore
//! evaluates at a₂ = 0 as well. λ = a₂^(p-3) φ (for p ≥ 5) is nonzero
//! exactly when the ramification numbers are i_n = 2(1+p+…+p^n).

use crate::error::{Error, Result};
use crate::laurent::LaurentScalar;
use crate::scalar::Scalar;
use crate::series::TruncatedSeries;
use num_rational::Ratio;

/// d = (p^n - 1)/(p - 1) = 1 + p + … + p^(n-1).
pub fn geometric_sum(p: u32, n: u32) -> Result<u128> {
    let mut acc: u128 = 0;
    let mut term: u128 = 1;
    for _ in 0..n {
        acc = acc.checked_add(term).ok_or(Error::ResourceLimit("exponent overflow"))?;
        term = term
            .checked_mul(p as u128)
            .ok_or(Error::ResourceLimit("exponent overflow"))?;
    }
    Ok(acc)
}

/// Degree of the leading iterate coefficient: 2(1 + p + … + p^n) + 1.
pub fn leading_degree(p: u32, n: u32) -> Result<usize> {
    let d = geometric_sum(p, n + 1)?;
    let deg = 2u128 * d + 1;
    usize::try_from(deg).map_err(|_| Error::ResourceLimit("degree overflow"))
}

#[derive(Debug, Clone, PartialEq)]
pub struct IterateLeadingTerms<C> {
    pub n: u32,
    /// (p^n - 1)/(p - 1), the exponent of φ.
    pub d: u128,
    pub phi: C,
    pub alpha: C,
    pub beta: C,
    pub gamma: C,
    /// λ = a₂^(p-3) φ; only defined for p ≥ 5.
    pub lambda: Option<C>,
}

fn coefficient_a<C: Scalar>(f: &TruncatedSeries<C>, j: usize) -> Result<C> {
    // a_j is the coefficient of ζ^(j+1); the shape ζ(1 + Σ_{j≥2} a_j ζ^j)
    // has no ζ² term
    if f.prec() < j + 1 {
        return Err(Error::PrecisionExhausted(
            "series must carry coefficients through degree 6",
        ));
    }
    if f.coeff(2).certainly_zero() != Some(true) {
        return Err(Error::Unsupported(
            "closed forms require a vanishing ζ^2 coefficient",
        ));
    }
    Ok(f.coeff(j + 1).clone())
}

/// φ = 3/2·a₂³ + a₃² - a₂a₄. In characteristic 3 the first term is
/// literally zero; no special case.
pub fn phi<C: Scalar>(f: &TruncatedSeries<C>) -> Result<C> {
    if !f.is_parabolic() {
        return Err(Error::NotParabolic);
    }
    let p = f.p();
    let a2 = coefficient_a(f, 2)?;
    let a3 = coefficient_a(f, 3)?;
    let a4 = coefficient_a(f, 4)?;
    let three_halves = fraction_scalar::<C>(p, 3, 2)?;
    Ok(three_halves
        .mul_ref(&a2.pow_u(3))
        .add_ref(&a3.mul_ref(&a3))
        .sub_ref(&a2.mul_ref(&a4)))
}

fn fraction_scalar<C: Scalar>(p: u32, num: i64, den: i64) -> Result<C> {
    let f = crate::fp::FpElem::fraction(p, num, den)?;
    Ok(C::from_residue(p, f.value() as i64))
}

/// The exact (α_n, β_n, γ_n) for n ≥ 1, with λ included for p ≥ 5.
pub fn leading_terms<C: Scalar>(f: &TruncatedSeries<C>, n: u32) -> Result<IterateLeadingTerms<C>> {
    if n == 0 {
        return Err(Error::Unsupported("leading terms are defined for n >= 1"));
    }
    let p = f.p();
    let pw = (p as u128)
        .checked_pow(n)
        .ok_or(Error::ResourceLimit("p^n overflow"))?;
    let d = geometric_sum(p, n)?;
    let e = pw - 2 * d; // = ((p-3)p^n + 2)/(p-1) >= 1 for p >= 3, n >= 1
    let a2 = coefficient_a(f, 2)?;
    let a3 = coefficient_a(f, 3)?;
    let a4 = coefficient_a(f, 4)?;
    let phi = phi(f)?;
    let phi_d = phi.pow_u(d);
    let three_halves = fraction_scalar::<C>(p, 3, 2)?;

    let alpha = a2.pow_u(e).mul_ref(&phi_d);
    let beta = a3.mul_ref(&a2.pow_u(e - 1)).mul_ref(&phi_d);
    let gamma = a4
        .mul_ref(&a2.pow_u(e - 1))
        .sub_ref(&three_halves.mul_ref(&a2.pow_u(e + 1)))
        .mul_ref(&phi_d);
    let lambda = if p >= 5 {
        Some(a2.pow_u((p - 3) as u128).mul_ref(&phi))
    } else {
        None
    };
    Ok(IterateLeadingTerms {
        n,
        d,
        phi,
        alpha,
        beta,
        gamma,
        lambda,
    })
}

/// λ = a₂^(p-3)·φ, requiring p ≥ 5. λ ≠ 0 characterizes i_n = 2(1+p+…+p^n).
pub fn lambda_invariant<C: Scalar>(f: &TruncatedSeries<C>) -> Result<C> {
    let p = f.p();
    if p < 5 {
        return Err(Error::UnsupportedPrime { p, required: "p >= 5" });
    }
    let a2 = coefficient_a(f, 2)?;
    Ok(a2.pow_u((p - 3) as u128).mul_ref(&phi(f)?))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PeriodKind {
    Fixed,
    Period(u32),
}

/// Valuation ceiling for nonzero periodic points in the open unit disk:
/// a point of minimal period p^n (n ≥ 1) has v(ζ₀) ≤ v(λ)/p, a nonzero
/// fixed point has v(ζ₀) ≤ v(a₂). Norms never become floats; the bound is
/// the exact rational valuation.
pub fn norm_bound(
    f: &TruncatedSeries<LaurentScalar>,
    kind: PeriodKind,
) -> Result<Ratio<i64>> {
    match kind {
        PeriodKind::Fixed => {
            let a2 = coefficient_a(f, 2)?;
            match a2.valuation()? {
                Some(v) => Ok(Ratio::from_integer(v)),
                None => Err(Error::LambdaZero),
            }
        }
        PeriodKind::Period(n) => {
            if n == 0 {
                return Err(Error::Unsupported("period p^0 is the fixed-point case"));
            }
            let lam = lambda_invariant(f)?;
            match lam.valuation()? {
                Some(v) => Ok(Ratio::new(v, f.p() as i64)),
                None => Err(Error::LambdaZero),
            }
        }
    }
}
