//! Newton polygons of series over F_p((t)): lower convex hulls of
//! (degree, coefficient valuation), periodic-point valuations read off the
//! quotient (f^(p^n)(ζ)-ζ)/(f^(p^(n-1))(ζ)-ζ), and the norm-bound checks.
//!
//! A segment of slope -s and horizontal length ℓ certifies ℓ roots of
//! valuation s (counted with multiplicity). Points whose valuation is only
//! bounded below are admitted when the bound places them on or above the
//! hull; otherwise the polygon refuses to guess.

use crate::closed_form::{self, PeriodKind};
use crate::error::{Error, Result};
use crate::fp::FpElem;
use crate::laurent::LaurentScalar;
use crate::ramification::{self, Budget, INumber};
use crate::series::{OrdBound, TruncatedSeries};
use alloc::vec::Vec;
use num_rational::Ratio;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ValBound {
    Exact(i64),
    AtLeast(i64),
    /// Exactly zero coefficient: the point sits at +inf and never
    /// contributes a vertex.
    Infinite,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Segment {
    pub slope: Ratio<i64>,
    pub len: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct NewtonPolygon {
    pub points: Vec<(usize, ValBound)>,
    /// Hull vertices, slopes strictly increasing left to right.
    pub vertices: Vec<(usize, i64)>,
    pub segments: Vec<Segment>,
}

impl NewtonPolygon {
    /// Total horizontal length (= number of roots accounted for between the
    /// first and last vertex).
    pub fn span(&self) -> usize {
        self.segments.iter().map(|s| s.len).sum()
    }
}

fn hull_of(points: &[(usize, i64)]) -> Vec<(usize, i64)> {
    let mut hull: Vec<(usize, i64)> = Vec::new();
    for &(x, y) in points {
        while hull.len() >= 2 {
            let (x1, y1) = hull[hull.len() - 2];
            let (x2, y2) = hull[hull.len() - 1];
            // drop the middle point unless it turns strictly upward
            let lhs = (x2 as i128 - x1 as i128) * (y as i128 - y1 as i128);
            let rhs = (y2 as i128 - y1 as i128) * (x as i128 - x1 as i128);
            if lhs <= rhs {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push((x, y));
    }
    hull
}

fn hull_height_at(hull: &[(usize, i64)], x: usize) -> Option<Ratio<i64>> {
    if hull.is_empty() || x < hull[0].0 || x > hull[hull.len() - 1].0 {
        return None;
    }
    for w in hull.windows(2) {
        let (x1, y1) = w[0];
        let (x2, y2) = w[1];
        if x >= x1 && x <= x2 {
            let slope = Ratio::new(y2 - y1, (x2 - x1) as i64);
            return Some(Ratio::from_integer(y1) + slope * Ratio::from_integer((x - x1) as i64));
        }
    }
    Some(Ratio::from_integer(hull[hull.len() - 1].1))
}

/// Polygon of {(i, v(c_i))} for i from ord(f) through `through_degree`.
pub fn build(f: &TruncatedSeries<LaurentScalar>, through_degree: usize) -> Result<NewtonPolygon> {
    if through_degree > f.prec() {
        return Err(Error::PrecisionExhausted(
            "polygon requested beyond certified series precision",
        ));
    }
    let lo = match f.ord_from(0)? {
        OrdBound::Found { ord, .. } => ord,
        OrdBound::AtLeast(_) => {
            return Err(Error::PrecisionExhausted("polygon of a series with no certified term"))
        }
    };
    let mut points = Vec::new();
    let mut exact = Vec::new();
    let mut deferred = Vec::new();
    for i in lo..=through_degree {
        let c = f.coeff(i);
        let b = match (c.certainly_zero(), c.val_lower_bound()) {
            (Some(true), _) => ValBound::Infinite,
            (Some(false), Some(v)) => ValBound::Exact(v),
            (None, Some(k)) => ValBound::AtLeast(k),
            (_, None) => ValBound::Infinite,
        };
        points.push((i, b));
        match b {
            ValBound::Exact(v) => exact.push((i, v)),
            ValBound::AtLeast(k) => deferred.push((i, k)),
            ValBound::Infinite => {}
        }
    }
    let vertices = hull_of(&exact);
    // a lower-bounded point is harmless iff its bound keeps it on or above
    // the hull of the certified points
    for &(x, k) in &deferred {
        match hull_height_at(&vertices, x) {
            Some(h) if Ratio::from_integer(k) >= h => {}
            _ => {
                return Err(Error::PrecisionExhausted(
                    "uncertified coefficient valuation could cut the hull",
                ))
            }
        }
    }
    let segments = vertices
        .windows(2)
        .map(|w| Segment {
            slope: Ratio::new(w[1].1 - w[0].1, (w[1].0 - w[0].0) as i64),
            len: w[1].0 - w[0].0,
        })
        .collect();
    Ok(NewtonPolygon {
        points,
        vertices,
        segments,
    })
}

/// Valuations (with multiplicity) of the roots of f in the open unit disk
/// read off a polygon built from ord through the Weierstrass degree: every
/// slope there is negative, and -slope is the root valuation.
pub fn positive_valuation_roots(pg: &NewtonPolygon) -> Vec<(Ratio<i64>, usize)> {
    pg.segments
        .iter()
        .filter(|s| s.slope < Ratio::from_integer(0))
        .map(|s| (-s.slope, s.len))
        .collect()
}

/// Valuations of points of minimal period p^n (n ≥ 1), with multiplicities:
/// build g = (f^(p^n)-ζ)/(f^(p^(n-1))-ζ) and read its polygon from its
/// ζ-order through its Weierstrass degree. The precision policy starts near
/// 2(1+p)+1+3p and doubles until the Weierstrass degree is certified.
pub fn periodic_valuations(
    f: &TruncatedSeries<LaurentScalar>,
    n: u32,
    budget: &Budget,
) -> Result<Vec<(Ratio<i64>, usize)>> {
    Ok(positive_valuation_roots(&quotient_polygon(f, n, budget)?))
}

/// The quotient polygon behind [`periodic_valuations`], exposed for
/// reporting.
pub fn quotient_polygon(
    f: &TruncatedSeries<LaurentScalar>,
    n: u32,
    budget: &Budget,
) -> Result<NewtonPolygon> {
    if n == 0 {
        return Err(Error::Unsupported("periodic valuations need n >= 1"));
    }
    if !f.is_parabolic() {
        return Err(Error::NotParabolic);
    }
    let p = f.p();
    let dsum = closed_form::geometric_sum(p, n + 1)?;
    let pn = (p as u128).pow(n);
    let mut prec =
        usize::try_from(2 * dsum + 3 * pn + 7).map_err(|_| Error::ResourceLimit("precision"))?;
    prec = prec.min(budget.max_precision);
    loop {
        match quotient_polygon_at(f, n, prec, budget) {
            Ok(pg) => return Ok(pg),
            Err(Error::PrecisionExhausted(_)) if prec < budget.max_precision => {
                prec = (prec * 2).min(budget.max_precision);
            }
            Err(e) => return Err(e),
        }
    }
}

fn quotient_polygon_at(
    f: &TruncatedSeries<LaurentScalar>,
    n: u32,
    prec: usize,
    budget: &Budget,
) -> Result<NewtonPolygon> {
    let fe = f.as_polynomial_at(prec);
    let lower = fe.iterate_p_power(n - 1, budget.compositions)?;
    let upper = lower.iterate_p_power(1, budget.compositions)?;
    let num = upper.delta();
    let den = lower.delta();
    let q = TruncatedSeries::divide_truncated(&num, &den)?;
    let wq = match q.wideg()? {
        OrdBound::Found { ord, .. } => ord,
        OrdBound::AtLeast(_) => {
            return Err(Error::PrecisionExhausted(
                "Weierstrass degree of the quotient not yet certified",
            ))
        }
    };
    build(&q, wq)
}

#[derive(Debug, Clone)]
pub struct NormBoundReport {
    /// v(λ)/p, the valuation ceiling for non-fixed periodic points.
    pub bound: Ratio<i64>,
    pub buckets: Vec<(Ratio<i64>, usize)>,
    /// Every bucket valuation ≤ the ceiling.
    pub holds: bool,
    /// Every bucket valuation equals the ceiling (all points on the sphere).
    pub all_on_sphere: bool,
}

/// Check the periodic-point norm bound |ζ₀| ≥ |λ|^(1/p), i.e. every
/// valuation from [`periodic_valuations`] is ≤ v(λ)/p, exactly.
pub fn check_norm_bound(
    f: &TruncatedSeries<LaurentScalar>,
    n: u32,
    budget: &Budget,
) -> Result<NormBoundReport> {
    let bound = closed_form::norm_bound(f, PeriodKind::Period(n.max(1)))?;
    let buckets = periodic_valuations(f, n, budget)?;
    let holds = buckets.iter().all(|(v, _)| *v <= bound);
    let all_on_sphere = !buckets.is_empty() && buckets.iter().all(|(v, _)| *v == bound);
    Ok(NormBoundReport {
        bound,
        buckets,
        holds,
        all_on_sphere,
    })
}

#[derive(Debug, Clone)]
pub struct SphereReport {
    /// i_n(f~) = 3(1+p+…+p^n) for all n up to the requested depth.
    pub hypothesis_holds: bool,
    /// All tested periodic valuations equal v(λ)/p.
    pub conclusion_holds: bool,
    pub sphere: Ratio<i64>,
    pub reduced_i: Vec<INumber<FpElem>>,
    pub buckets: Vec<Vec<(Ratio<i64>, usize)>>,
}

/// Sufficiency check for the sphere statement: when λ ≠ 0 and the reduction
/// is 3-ramified (verified computationally up to `hyp_depth`), all non-fixed
/// periodic points lie on {v(ζ) = v(λ)/p}. The conclusion is tested for
/// periods p^1..p^(concl_depth) regardless of the hypothesis, so sufficiency
/// and non-necessity are both observable.
pub fn check_sphere_condition(
    f: &TruncatedSeries<LaurentScalar>,
    hyp_depth: u32,
    concl_depth: u32,
    budget: &Budget,
) -> Result<SphereReport> {
    let lam = closed_form::lambda_invariant(f)?;
    let sphere = match lam.valuation()? {
        Some(v) => Ratio::new(v, f.p() as i64),
        None => return Err(Error::LambdaZero),
    };
    let reduced = f.reduce_series()?;
    let prof = ramification::profile(&reduced, hyp_depth, budget)?;
    let mut hypothesis_holds = true;
    let mut reduced_i = Vec::new();
    for e in &prof.entries {
        let target = 3 * closed_form::geometric_sum(f.p(), e.n + 1)?;
        match &e.i {
            INumber::Finite { i, .. } => {
                if *i as u128 != target {
                    hypothesis_holds = false;
                }
            }
            INumber::AtLeast(b) => {
                if (*b as u128) > target {
                    hypothesis_holds = false;
                } else {
                    return Err(Error::PrecisionExhausted(
                        "3-ramification of the reduction undecided at budget",
                    ));
                }
            }
        }
        reduced_i.push(e.i.clone());
    }
    let mut conclusion_holds = true;
    let mut buckets = Vec::new();
    for nn in 1..=concl_depth.max(1) {
        let b = periodic_valuations(f, nn, budget)?;
        if b.iter().any(|(v, _)| *v != sphere) {
            conclusion_holds = false;
        }
        buckets.push(b);
    }
    Ok(SphereReport {
        hypothesis_holds,
        conclusion_holds,
        sphere,
        reduced_i,
        buckets,
    })
}

/// Fast sufficient condition on the reduction: i₀ = 3 and i₁ = 3 + 3p.
pub fn threeram_precheck(
    reduced: &TruncatedSeries<FpElem>,
    budget: &Budget,
) -> Result<bool> {
    let p = reduced.p();
    let (i0, _) = ramification::ram_number(reduced, 0, budget)?;
    if i0.finite() != Some(3) {
        return Ok(false);
    }
    let (i1, _) = ramification::ram_number(reduced, 1, budget)?;
    Ok(i1.finite() == Some(3 + 3 * p as u64))
}
