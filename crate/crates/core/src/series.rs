//! Truncated power series mod ζ^(N+1): composition, p-power iteration,
//! order computation, reduction, Weierstrass degree and truncated division.
//!
//! A series carries the precision it is certified to; every operation
//! computes the exact precision of its result. Composition of two series
//! known mod ζ^(N+1) is again certified mod ζ^(N+1) provided the inner
//! series has zero constant term.

use crate::error::{Error, Result};
use crate::fp::FpElem;
use crate::laurent::LaurentScalar;
use crate::scalar::Scalar;
use alloc::vec::Vec;
use core::fmt;

#[derive(Debug, Clone, PartialEq)]
pub struct TruncatedSeries<C: Scalar> {
    p: u32,
    prec: usize,
    coeffs: Vec<C>, // index = degree, length prec + 1
}

/// Order verdict at finite precision: either the least degree carrying a
/// certainly-nonzero coefficient, or a lower bound when all certified
/// coefficients vanish (ord(0) = +inf is never asserted).
#[derive(Debug, Clone, PartialEq)]
pub enum OrdBound<C> {
    Found { ord: usize, lead: C },
    AtLeast(usize),
}

impl<C> OrdBound<C> {
    pub fn found(&self) -> Option<usize> {
        match self {
            OrdBound::Found { ord, .. } => Some(*ord),
            OrdBound::AtLeast(_) => None,
        }
    }

    pub fn lead(&self) -> Option<&C> {
        match self {
            OrdBound::Found { lead, .. } => Some(lead),
            OrdBound::AtLeast(_) => None,
        }
    }
}

impl<C: Scalar> TruncatedSeries<C> {
    pub fn zero(p: u32, prec: usize) -> Self {
        TruncatedSeries {
            p,
            prec,
            coeffs: (0..=prec).map(|_| C::zero(p)).collect(),
        }
    }

    /// The series ζ.
    pub fn identity(p: u32, prec: usize) -> Self {
        let mut s = Self::zero(p, prec);
        s.coeffs[1] = C::one(p);
        s
    }

    pub fn from_coeffs(p: u32, prec: usize, terms: &[(usize, C)]) -> Self {
        let mut s = Self::zero(p, prec);
        for (d, c) in terms {
            assert!(*d <= prec, "degree beyond precision");
            s.coeffs[*d] = c.clone();
        }
        s
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn prec(&self) -> usize {
        self.prec
    }

    pub fn coeff(&self, degree: usize) -> &C {
        assert!(degree <= self.prec, "degree beyond certified precision");
        &self.coeffs[degree]
    }

    pub fn set_coeff(&mut self, degree: usize, c: C) {
        assert!(degree <= self.prec);
        self.coeffs[degree] = c;
    }

    /// Reinterpret the series as an exact polynomial and recertify it at a
    /// (possibly higher) precision: degrees beyond the stored ones are zero.
    pub fn as_polynomial_at(&self, prec: usize) -> Self {
        let mut s = Self::zero(self.p, prec);
        for (d, c) in self.coeffs.iter().enumerate() {
            if d <= prec {
                s.coeffs[d] = c.clone();
            }
        }
        s
    }

    pub fn is_parabolic(&self) -> bool {
        self.prec >= 1
            && self.coeffs[0].certainly_zero() == Some(true)
            && self.coeffs[1].is_one()
    }

    pub fn add(&self, rhs: &Self) -> Self {
        assert_eq!(self.p, rhs.p);
        let prec = self.prec.min(rhs.prec);
        let coeffs = (0..=prec)
            .map(|d| self.coeffs[d].add_ref(&rhs.coeffs[d]))
            .collect();
        TruncatedSeries { p: self.p, prec, coeffs }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        assert_eq!(self.p, rhs.p);
        let prec = self.prec.min(rhs.prec);
        let coeffs = (0..=prec)
            .map(|d| self.coeffs[d].sub_ref(&rhs.coeffs[d]))
            .collect();
        TruncatedSeries { p: self.p, prec, coeffs }
    }

    /// f(ζ) - ζ.
    pub fn delta(&self) -> Self {
        let mut d = self.clone();
        d.coeffs[1] = d.coeffs[1].sub_ref(&C::one(self.p));
        d
    }

    /// Product truncated to min precision. Certainly-zero coefficients are
    /// skipped, so multiplication by a sparse polynomial is cheap.
    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.p, rhs.p);
        let prec = self.prec.min(rhs.prec);
        let mut out = Self::zero(self.p, prec);
        for (i, a) in self.coeffs.iter().enumerate().take(prec + 1) {
            if a.certainly_zero() == Some(true) {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate().take(prec + 1 - i) {
                if b.certainly_zero() == Some(true) {
                    continue;
                }
                out.coeffs[i + j] = out.coeffs[i + j].add_ref(&a.mul_ref(b));
            }
        }
        out
    }

    /// f ∘ g mod ζ^(N+1), N = min precision, by Horner evaluation of f at g.
    /// Requires g(0) = 0.
    pub fn compose(&self, g: &Self) -> Result<Self> {
        if self.p != g.p {
            return Err(Error::RingMismatch);
        }
        if g.coeffs[0].certainly_zero() != Some(true) {
            return Err(Error::NotParabolic);
        }
        let prec = self.prec.min(g.prec);
        let mut acc = Self::zero(self.p, prec);
        acc.coeffs[0] = self.coeffs[prec.min(self.prec)].clone();
        for d in (0..prec).rev() {
            acc = acc.mul(g);
            acc.coeffs[0] = acc.coeffs[0].add_ref(&self.coeffs[d]);
        }
        Ok(acc)
    }

    /// f^(p^n) by sequential self-composition; n = 0 returns f unchanged.
    /// `budget` caps the number of compositions.
    pub fn iterate_p_power(&self, n: u32, budget: u64) -> Result<Self> {
        if !self.is_parabolic() {
            return Err(Error::NotParabolic);
        }
        let steps = (self.p as u128)
            .checked_pow(n)
            .ok_or(Error::ResourceLimit("p^n overflows"))?;
        if steps > budget as u128 {
            return Err(Error::ResourceLimit("composition budget"));
        }
        let mut h = self.clone();
        for _ in 1..steps {
            h = h.compose(self)?;
        }
        Ok(h)
    }

    /// Least degree >= `from` with certainly-nonzero coefficient.
    pub fn ord_from(&self, from: usize) -> Result<OrdBound<C>> {
        for d in from..=self.prec {
            match self.coeffs[d].certainly_zero() {
                Some(true) => continue,
                Some(false) => {
                    return Ok(OrdBound::Found {
                        ord: d,
                        lead: self.coeffs[d].clone(),
                    })
                }
                None => {
                    return Err(Error::PrecisionExhausted(
                        "order scan hit a coefficient not certified zero or nonzero",
                    ))
                }
            }
        }
        Ok(OrdBound::AtLeast(self.prec + 1))
    }

    /// ord(f - ζ) together with its leading coefficient.
    pub fn ord_delta(&self) -> Result<OrdBound<C>> {
        self.delta().ord_from(0)
    }

    /// Truncated long division. Requires ord(den) <= ord(num) and an
    /// invertible leading coefficient; the quotient is certified mod
    /// ζ^(M+1) with M = min(N_num, N_den) - ord(den).
    pub fn divide_truncated(num: &Self, den: &Self) -> Result<Self> {
        if num.p != den.p {
            return Err(Error::RingMismatch);
        }
        let dord = match den.ord_from(0)? {
            OrdBound::Found { ord, .. } => ord,
            OrdBound::AtLeast(_) => return Err(Error::DivisionByZero),
        };
        // every certified numerator coefficient below ord(den) must vanish
        for d in 0..dord.min(num.prec + 1) {
            match num.coeffs[d].certainly_zero() {
                Some(true) => {}
                Some(false) => return Err(Error::OrderMismatch),
                None => {
                    return Err(Error::PrecisionExhausted(
                        "dividend order not certified",
                    ))
                }
            }
        }
        let lead_inv = den.coeffs[dord].inv_ref()?;
        let prec = num.prec.min(den.prec);
        if dord > prec {
            return Err(Error::PrecisionExhausted(
                "divisor order exceeds the joint certified precision",
            ));
        }
        let m = prec - dord;
        let mut q = Self::zero(num.p, m);
        for k in 0..=m {
            let mut acc = num.coeffs[k + dord].clone();
            for j in 0..k {
                if q.coeffs[j].certainly_zero() == Some(true) {
                    continue;
                }
                let dcoeff = &den.coeffs[k - j + dord];
                if dcoeff.certainly_zero() == Some(true) {
                    continue;
                }
                acc = acc.sub_ref(&q.coeffs[j].mul_ref(dcoeff));
            }
            q.coeffs[k] = acc.mul_ref(&lead_inv);
        }
        Ok(q)
    }
}

impl TruncatedSeries<LaurentScalar> {
    /// Coefficientwise reduction of an integral series to the residue field.
    pub fn reduce_series(&self) -> Result<TruncatedSeries<FpElem>> {
        let mut out = TruncatedSeries::<FpElem>::zero(self.p, self.prec);
        for (d, c) in self.coeffs.iter().enumerate() {
            let r = c.reduce().map_err(|e| match e {
                Error::NotIntegral { .. } => Error::NotIntegral { degree: Some(d) },
                other => other,
            })?;
            out.coeffs[d] = r;
        }
        Ok(out)
    }

    /// Weierstrass degree: order of the reduced series, counted from degree 0.
    pub fn wideg(&self) -> Result<OrdBound<FpElem>> {
        for (d, c) in self.coeffs.iter().enumerate() {
            // reduce() decides unit/non-unit without requiring an exact
            // valuation for coefficients certified to have v >= 1
            let r = c.reduce().map_err(|e| match e {
                Error::NotIntegral { .. } => Error::NotIntegral { degree: Some(d) },
                other => other,
            })?;
            if !r.is_zero() {
                return Ok(OrdBound::Found { ord: d, lead: r });
            }
        }
        Ok(OrdBound::AtLeast(self.prec + 1))
    }
}

impl<C: Scalar> fmt::Display for TruncatedSeries<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (d, c) in self.coeffs.iter().enumerate() {
            if c.certainly_zero() == Some(true) {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match d {
                0 => write!(f, "({c})")?,
                1 => write!(f, "({c})*z")?,
                _ => write!(f, "({c})*z^{d}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(z^{})", self.prec + 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::laurent::LaurentScalar;

    fn fp_series(p: u32, prec: usize, terms: &[(usize, i64)]) -> TruncatedSeries<FpElem> {
        let terms: Vec<(usize, FpElem)> =
            terms.iter().map(|&(d, c)| (d, FpElem::new(p, c))).collect();
        TruncatedSeries::from_coeffs(p, prec, &terms)
    }

    #[test]
    fn compose_identity_laws() {
        let f = fp_series(5, 12, &[(1, 1), (3, 2), (4, 1), (7, 3)]);
        let id = TruncatedSeries::<FpElem>::identity(5, 12);
        assert_eq!(f.compose(&id).unwrap(), f);
        assert_eq!(id.compose(&f).unwrap(), f);
    }

    #[test]
    fn triple_composition_p3() {
        // f = z + z^3 + z^4 over F_3: f∘f∘f - z = z^9 + z^10, zero at z^11
        let f = fp_series(3, 11, &[(1, 1), (3, 1), (4, 1)]);
        let fff = f.compose(&f).unwrap().compose(&f).unwrap();
        let delta = fff.delta();
        for d in 0..=8 {
            assert!(delta.coeff(d).is_zero(), "degree {d}");
        }
        assert_eq!(*delta.coeff(9), FpElem::new(3, 1));
        assert_eq!(*delta.coeff(10), FpElem::new(3, 1));
        assert_eq!(*delta.coeff(11), FpElem::zero(3));
    }

    #[test]
    fn iterate_examples() {
        let f = fp_series(5, 16, &[(1, 1), (3, 1)]);
        assert_eq!(f.iterate_p_power(0, 1 << 20).unwrap(), f);
        let id = TruncatedSeries::<FpElem>::identity(5, 16);
        assert_eq!(id.iterate_p_power(2, 1 << 20).unwrap(), id);
        // ord(f^5 - z) = 13 = 2(1+5)+1
        let h = f.iterate_p_power(1, 1 << 20).unwrap();
        match h.ord_delta().unwrap() {
            OrdBound::Found { ord, .. } => assert_eq!(ord, 13),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn iterate_budget() {
        let f = fp_series(5, 8, &[(1, 1), (3, 1)]);
        assert!(matches!(
            f.iterate_p_power(9, 1000),
            Err(Error::ResourceLimit(_))
        ));
    }

    #[test]
    fn ord_delta_verdicts() {
        let id = TruncatedSeries::<FpElem>::identity(5, 9);
        assert_eq!(id.ord_delta().unwrap(), OrdBound::AtLeast(10));

        let f = fp_series(3, 9, &[(1, 1), (2, 1)]);
        match f.ord_delta().unwrap() {
            OrdBound::Found { ord, lead } => {
                assert_eq!((ord, lead), (2, FpElem::new(3, 1)));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn q1_ord_delta_and_reduction() {
        // q1 = z + (1+t) z^3 + z^4 over F_5((t))
        let p = 5;
        let one_plus_t = LaurentScalar::from_terms(p, 32, &[(0, 1), (1, 1)]);
        let q1 = TruncatedSeries::from_coeffs(
            p,
            10,
            &[
                (1, LaurentScalar::one(p)),
                (3, one_plus_t.clone()),
                (4, LaurentScalar::one(p)),
            ],
        );
        match q1.ord_delta().unwrap() {
            OrdBound::Found { ord, lead } => {
                assert_eq!(ord, 3);
                assert_eq!(lead, one_plus_t);
            }
            other => panic!("{other:?}"),
        }
        let red = q1.reduce_series().unwrap();
        assert_eq!(red, fp_series(p, 10, &[(1, 1), (3, 1), (4, 1)]));

        // q2 reduces coefficientwise as well
        let two_plus_t = LaurentScalar::from_terms(p, 32, &[(0, 2), (1, 1)]);
        let q2 = TruncatedSeries::from_coeffs(
            p,
            10,
            &[
                (1, LaurentScalar::one(p)),
                (3, two_plus_t),
                (4, LaurentScalar::from_residue(p, 4)),
                (5, LaurentScalar::from_residue(p, 4)),
            ],
        );
        assert_eq!(
            q2.reduce_series().unwrap(),
            fp_series(p, 10, &[(1, 1), (3, 2), (4, 4), (5, 4)])
        );

        // a coefficient with negative valuation is rejected with its degree
        let bad = TruncatedSeries::from_coeffs(
            p,
            6,
            &[(1, LaurentScalar::one(p)), (4, LaurentScalar::monomial(p, 32, -1, 1))],
        );
        assert_eq!(
            bad.reduce_series(),
            Err(Error::NotIntegral { degree: Some(4) })
        );
    }

    #[test]
    fn wideg_examples() {
        let p = 5;
        // q1(z) - z has Weierstrass degree 3
        let one_plus_t = LaurentScalar::from_terms(p, 32, &[(0, 1), (1, 1)]);
        let d = TruncatedSeries::from_coeffs(
            p,
            8,
            &[(3, one_plus_t), (4, LaurentScalar::one(p))],
        );
        assert_eq!(d.wideg().unwrap().found(), Some(3));

        // t*z^5 reduces to zero: only a lower bound
        let s = TruncatedSeries::from_coeffs(p, 8, &[(5, LaurentScalar::monomial(p, 32, 1, 1))]);
        assert_eq!(s.wideg().unwrap(), OrdBound::AtLeast(9));

        let s2 = TruncatedSeries::from_coeffs(
            p,
            8,
            &[
                (3, LaurentScalar::from_terms(p, 32, &[(0, 2), (1, 1)])),
                (4, LaurentScalar::from_residue(p, 4)),
            ],
        );
        assert_eq!(s2.wideg().unwrap().found(), Some(3));
    }

    #[test]
    fn division_examples() {
        let p = 7;
        // (z^3 + z^4) / z = z^2 + z^3
        let num = fp_series(p, 9, &[(3, 1), (4, 1)]);
        let den = fp_series(p, 9, &[(1, 1)]);
        let q = TruncatedSeries::divide_truncated(&num, &den).unwrap();
        assert_eq!(q.prec(), 8);
        assert_eq!(*q.coeff(2), FpElem::one(p));
        assert_eq!(*q.coeff(3), FpElem::one(p));
        assert!(q.coeff(4).is_zero());

        // g / g = 1
        let g = fp_series(p, 9, &[(2, 3), (5, 1), (7, 4)]);
        let one = TruncatedSeries::divide_truncated(&g, &g).unwrap();
        assert!(one.coeff(0).is_one());
        for d in 1..=one.prec() {
            assert!(one.coeff(d).is_zero());
        }

        // ord(num) < ord(den) is rejected
        assert_eq!(
            TruncatedSeries::divide_truncated(&den, &num),
            Err(Error::OrderMismatch)
        );
    }

    #[test]
    fn division_round_trip_random() {
        let mut state = 777u64;
        let mut next = move || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            (state >> 33) as i64
        };
        for _ in 0..50 {
            let p = [3u32, 5, 7][(next() % 3) as usize];
            let n = 14;
            let dord = (next() % 3 + 1) as usize;
            let mut den = TruncatedSeries::<FpElem>::zero(p, n);
            den.set_coeff(dord, FpElem::new(p, next() % (p as i64 - 1) + 1));
            for d in dord + 1..=n {
                den.set_coeff(d, FpElem::new(p, next()));
            }
            let mut num = TruncatedSeries::<FpElem>::zero(p, n);
            for d in dord..=n {
                num.set_coeff(d, FpElem::new(p, next()));
            }
            let q = TruncatedSeries::divide_truncated(&num, &den).unwrap();
            let back = q.mul(&den.as_polynomial_at(q.prec() + dord));
            for d in 0..=q.prec() {
                assert_eq!(back.coeff(d), num.coeff(d), "degree {d}");
            }
        }
    }

    #[test]
    fn composition_associativity_random() {
        let mut state = 4242u64;
        let mut next = move || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            (state >> 33) as i64
        };
        for _ in 0..40 {
            let p = [3u32, 5][(next() % 2) as usize];
            let n = 10;
            let mk = |next: &mut dyn FnMut() -> i64| {
                let mut s = TruncatedSeries::<FpElem>::identity(p, n);
                for d in 2..=n {
                    s.set_coeff(d, FpElem::new(p, next()));
                }
                s
            };
            let f = mk(&mut next);
            let g = mk(&mut next);
            let h = mk(&mut next);
            let a = f.compose(&g).unwrap().compose(&h).unwrap();
            let b = f.compose(&g.compose(&h).unwrap()).unwrap();
            assert_eq!(a, b);

            // ord(f∘g - z) >= min(ord(f - z), ord(g - z))
            let og = g.ord_delta().unwrap();
            let of = f.ord_delta().unwrap();
            if let (Some(a1), Some(b1)) = (of.found(), og.found()) {
                let fg = f.compose(&g).unwrap();
                match fg.ord_delta().unwrap() {
                    OrdBound::Found { ord, .. } => assert!(ord >= a1.min(b1)),
                    OrdBound::AtLeast(k) => assert!(k >= a1.min(b1)),
                }
            }
        }
    }

    #[test]
    fn reduction_commutes_with_composition() {
        let p = 5;
        let mk = |terms: &[(usize, &[(i64, i64)])]| {
            let mut s = TruncatedSeries::<LaurentScalar>::identity(p, 12);
            for (d, t) in terms {
                s.set_coeff(*d, LaurentScalar::from_terms(p, 32, t));
            }
            s
        };
        let f = mk(&[(2, &[(0, 3), (1, 1)]), (5, &[(0, 1), (2, 4)])]);
        let g = mk(&[(3, &[(0, 1), (1, 1)]), (4, &[(1, 2)])]);
        let lhs = f.compose(&g).unwrap().reduce_series().unwrap();
        let rhs = f
            .reduce_series()
            .unwrap()
            .compose(&g.reduce_series().unwrap())
            .unwrap();
        assert_eq!(lhs, rhs);
    }
}
