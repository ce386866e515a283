//! Lower ramification numbers i_n(f) = ord((f^(p^n)(ζ)-ζ)/ζ), the leading
//! coefficients μ_n(f), and classification of the resulting sequences.
//!
//! i_n = +∞ is never asserted: at finite truncation an entry is either a
//! certified finite value or an explicit lower bound.

use crate::error::{Error, Result};
use crate::fp::FpElem;
use crate::scalar::Scalar;
use crate::series::{OrdBound, TruncatedSeries};
use alloc::vec::Vec;

/// Caps on iteration work. `compositions` bounds p^n; `max_precision`
/// bounds the ζ-precision the doubling policy may reach.
#[derive(Debug, Clone, Copy)]
pub struct Budget {
    pub compositions: u64,
    pub max_precision: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            compositions: 1_000_000,
            max_precision: 1 << 13,
        }
    }
}

/// One ramification number: certified finite with its leading coefficient,
/// or a lower bound from the precision reached.
#[derive(Debug, Clone, PartialEq)]
pub enum INumber<C> {
    Finite { i: u64, mu: C },
    AtLeast(u64),
}

impl<C> INumber<C> {
    pub fn finite(&self) -> Option<u64> {
        match self {
            INumber::Finite { i, .. } => Some(*i),
            INumber::AtLeast(_) => None,
        }
    }

    pub fn mu(&self) -> Option<&C> {
        match self {
            INumber::Finite { mu, .. } => Some(mu),
            INumber::AtLeast(_) => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ProfileEntry<C> {
    pub n: u32,
    pub i: INumber<C>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RamificationProfile<C> {
    pub p: u32,
    pub entries: Vec<ProfileEntry<C>>,
    /// Largest ζ-precision used while certifying the entries.
    pub certified_precision: usize,
}

impl RamificationProfile<FpElem> {
    /// Profile from bare finite values (for classification and congruence
    /// checks of externally supplied sequences).
    pub fn from_finite(p: u32, values: &[u64]) -> Self {
        RamificationProfile {
            p,
            entries: values
                .iter()
                .enumerate()
                .map(|(n, &i)| ProfileEntry {
                    n: n as u32,
                    i: INumber::Finite {
                        i,
                        mu: FpElem::one(p),
                    },
                })
                .collect(),
            certified_precision: 0,
        }
    }
}

/// i_n(f) and μ_n(f). The series is treated as an exact polynomial (its
/// unstated coefficients are zero), so the precision policy may recertify
/// it as high as needed: start at N₀ = 2(1+p+…+p^n)+6 and double until the
/// order is certified or the precision budget is reached, then report the
/// bound. Returns the value and the precision that certified it.
pub fn ram_number<C: Scalar>(
    f: &TruncatedSeries<C>,
    n: u32,
    budget: &Budget,
) -> Result<(INumber<C>, usize)> {
    if !f.is_parabolic() {
        return Err(Error::NotParabolic);
    }
    let p = f.p();
    let dsum = crate::closed_form::geometric_sum(p, n + 1)?;
    let n0 = usize::try_from(2 * dsum + 6).map_err(|_| Error::ResourceLimit("precision"))?;
    let mut prec = n0.min(budget.max_precision);
    loop {
        let fe = f.as_polynomial_at(prec);
        let h = fe.iterate_p_power(n, budget.compositions)?;
        match h.ord_delta()? {
            OrdBound::Found { ord, lead } => {
                if ord < 2 {
                    return Err(Error::Internal("parabolic iterate with ord(f-z) < 2"));
                }
                return Ok((
                    INumber::Finite {
                        i: ord as u64 - 1,
                        mu: lead,
                    },
                    prec,
                ));
            }
            OrdBound::AtLeast(bound) => {
                if prec >= budget.max_precision {
                    return Ok((INumber::AtLeast(bound as u64 - 1), prec));
                }
                prec = (prec * 2).min(budget.max_precision);
            }
        }
    }
}

/// Entries n = 0..=depth. A violation of the congruence
/// i_n ≡ i_{n-1} (mod p^n) between certified finite entries is reported as
/// an internal error: it can only come from a bug, never from the input.
pub fn profile<C: Scalar>(
    f: &TruncatedSeries<C>,
    depth: u32,
    budget: &Budget,
) -> Result<RamificationProfile<C>> {
    let mut entries = Vec::new();
    let mut max_prec = 0;
    for n in 0..=depth {
        let (i, prec) = ram_number(f, n, budget)?;
        max_prec = max_prec.max(prec);
        entries.push(ProfileEntry { n, i });
    }
    let prof = RamificationProfile {
        p: f.p(),
        entries,
        certified_precision: max_prec,
    };
    if !sen_check(&prof) {
        return Err(Error::Internal("Sen congruence violated by computed profile"));
    }
    // parabolic input forces i_0 >= 1 and hence i_n >= 1 + p + ... + p^n;
    // a finite entry below that bound can only be a bug
    for e in &prof.entries {
        if let INumber::Finite { i, .. } = &e.i {
            let floor = crate::closed_form::geometric_sum(f.p(), e.n + 1)?;
            if (*i as u128) < floor {
                return Err(Error::Internal("ramification number below the minimal bound"));
            }
        }
    }
    Ok(prof)
}

/// True iff every consecutive pair of finite entries satisfies
/// i_n ≡ i_{n-1} (mod p^n).
pub fn sen_check<C>(profile: &RamificationProfile<C>) -> bool {
    let p = profile.p as u128;
    for w in profile.entries.windows(2) {
        let (a, b) = (&w[0], &w[1]);
        if let (INumber::Finite { i: i0, .. }, INumber::Finite { i: i1, .. }) = (&a.i, &b.i) {
            let modulus = p.pow(b.n);
            if (*i1 as u128) % modulus != (*i0 as u128) % modulus {
                return false;
            }
        }
    }
    true
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Classification {
    /// i_n = 1 + p + … + p^n at every computed level.
    MinimallyRamified { depth: u32 },
    /// i_n = b(1 + p + … + p^n) at every computed level, b ≥ 2.
    BRamified { b: u64, depth: u32 },
    /// All entries finite but no b fits.
    Other { depth: u32 },
    /// Lower-bound entries (or too few finite entries) prevent a verdict.
    Inconclusive { finite_entries: u32 },
}

/// Classify a profile. The b-ramified pattern must hold at every computed
/// level; verdicts are always "up to the computed depth". Requires finite
/// entries for n = 0..2 to say anything definite.
pub fn classify<C>(profile: &RamificationProfile<C>) -> Classification {
    let p = profile.p;
    let mut finite: Vec<u64> = Vec::new();
    for e in &profile.entries {
        match &e.i {
            INumber::Finite { i, .. } => finite.push(*i),
            INumber::AtLeast(_) => {
                return Classification::Inconclusive {
                    finite_entries: finite.len() as u32,
                }
            }
        }
    }
    if finite.len() < 3 {
        return Classification::Inconclusive {
            finite_entries: finite.len() as u32,
        };
    }
    let depth = finite.len() as u32 - 1;
    let b = finite[0];
    if b == 0 {
        return Classification::Other { depth };
    }
    for (n, &i) in finite.iter().enumerate() {
        let target = crate::closed_form::geometric_sum(p, n as u32 + 1)
            .ok()
            .and_then(|g| g.checked_mul(b as u128));
        if target != Some(i as u128) {
            return Classification::Other { depth };
        }
    }
    if b == 1 {
        Classification::MinimallyRamified { depth }
    } else {
        Classification::BRamified { b, depth }
    }
}
