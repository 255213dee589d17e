//! Certified largest real roots of integer polynomials.
//!
//! A [`CertifiedRoot`] keeps a dyadic interval `(lo, hi]` in which the
//! squarefree part of its polynomial has exactly one real root and above
//! which it has none. Bisection only needs exact sign evaluation after
//! that, and two roots are ordered by refining until the intervals separate
//! (or a common factor proves them equal).

use std::cmp::Ordering;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::poly::{Dyadic, IntPoly, SturmChain};

#[derive(Clone, Debug)]
pub struct CertifiedRoot {
    poly: IntPoly,
    sqf: IntPoly,
    lo: Dyadic,
    hi: Dyadic,
}

/// JSON view of a certified root.
#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct RootRecord {
    pub value: f64,
    pub bracket: [f64; 2],
    pub poly: IntPoly,
}

const MAX_COMPARE_STEPS: usize = 4096;

impl CertifiedRoot {
    /// Largest real root, bracket width at most `tol`.
    pub fn largest(poly: &IntPoly, tol: f64) -> Result<Self> {
        if !(tol > 0.0) {
            return Err(Error::Domain(format!("tolerance must be positive, got {tol}")));
        }
        if poly.is_zero() || poly.degree() == 0 {
            return Err(Error::Domain(format!("{poly} has no real root")));
        }
        let sqf = poly.squarefree();
        let chain = SturmChain::new(&sqf);
        let bound = sqf.root_bound();
        let mut lo = Dyadic::new(-bound.numer().clone(), bound.exp());
        let mut hi = bound;
        if chain.roots_above(&lo) == 0 {
            return Err(Error::Domain(format!("{poly} has no real root")));
        }
        while chain.roots_above(&lo) > 1 {
            let mid = lo.midpoint(&hi);
            if chain.roots_above(&mid) >= 1 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let mut r = Self {
            poly: poly.clone(),
            sqf,
            lo,
            hi,
        };
        r.refine_to(tol);
        Ok(r)
    }

    /// Largest real root, seeded by a floating-point estimate. Falls back to
    /// full isolation when the estimate is not within reach.
    pub fn largest_near(poly: &IntPoly, estimate: f64, tol: f64) -> Result<Self> {
        if !(tol > 0.0) {
            return Err(Error::Domain(format!("tolerance must be positive, got {tol}")));
        }
        if !estimate.is_finite() || poly.degree() == 0 {
            return Self::largest(poly, tol);
        }
        let sqf = poly.squarefree();
        let chain = SturmChain::new(&sqf);
        let mut delta = (tol / 4.0).max(estimate.abs() * 4.0 * f64::EPSILON);
        for _ in 0..6 {
            let lo = Dyadic::from_f64(estimate - delta);
            let hi = Dyadic::from_f64(estimate + delta);
            if chain.roots_above(&hi) == 0 && chain.roots_above(&lo) == 1 {
                let mut r = Self {
                    poly: poly.clone(),
                    sqf,
                    lo,
                    hi,
                };
                r.refine_to(tol);
                return Ok(r);
            }
            delta *= 64.0;
        }
        Self::largest(poly, tol)
    }

    pub fn poly(&self) -> &IntPoly {
        &self.poly
    }

    pub fn squarefree_poly(&self) -> &IntPoly {
        &self.sqf
    }

    pub fn lo(&self) -> &Dyadic {
        &self.lo
    }

    pub fn hi(&self) -> &Dyadic {
        &self.hi
    }

    pub fn width(&self) -> Dyadic {
        self.hi.sub(&self.lo)
    }

    /// Bracket rounded outward to `f64`.
    pub fn bracket_f64(&self) -> [f64; 2] {
        [self.lo.to_f64_down(), self.hi.to_f64_up()]
    }

    /// A representative value inside the bracket.
    pub fn value_f64(&self) -> f64 {
        let [lo, hi] = self.bracket_f64();
        (0.5 * (lo + hi)).clamp(lo, hi)
    }

    pub fn record(&self) -> RootRecord {
        RootRecord {
            value: self.value_f64(),
            bracket: self.bracket_f64(),
            poly: self.poly.clone(),
        }
    }

    /// Halves the bracket.
    pub fn bisect(&mut self) {
        let mid = self.lo.midpoint(&self.hi);
        match self.sqf.sign_at(&mid) {
            Ordering::Less => self.lo = mid,
            _ => self.hi = mid,
        }
    }

    /// Bisects until the outward-rounded `f64` bracket is no wider than `tol`.
    pub fn refine_to(&mut self, tol: f64) {
        loop {
            let [lo, hi] = self.bracket_f64();
            if hi - lo <= tol {
                break;
            }
            // the f64 view cannot shrink below one ulp of the root
            if self.width().to_f64() < f64::EPSILON * hi.abs().max(1.0) * 0.25 {
                break;
            }
            self.bisect();
        }
    }

    /// Exact comparison of the root with a dyadic number.
    pub fn cmp_value(&self, x: &Dyadic) -> Ordering {
        if *x <= self.lo {
            return Ordering::Greater;
        }
        // on (lo, inf) the squarefree part is negative below the root and
        // positive above it
        match self.sqf.sign_at(x) {
            Ordering::Less => Ordering::Greater,
            Ordering::Equal => Ordering::Equal,
            Ordering::Greater => Ordering::Less,
        }
    }

    pub fn cmp_f64(&self, x: f64) -> Ordering {
        self.cmp_value(&Dyadic::from_f64(x))
    }

    /// Exact comparison of two certified roots. Brackets of both are
    /// refined as a side effect.
    pub fn compare(&mut self, other: &mut Self) -> Ordering {
        let mut common: Option<IntPoly> = None;
        for _ in 0..MAX_COMPARE_STEPS {
            if self.hi <= other.lo {
                return Ordering::Less;
            }
            if other.hi <= self.lo {
                return Ordering::Greater;
            }
            let g = common.get_or_insert_with(|| self.sqf.gcd(&other.sqf));
            if g.degree() >= 1 {
                let lo = if self.lo > other.lo { &self.lo } else { &other.lo };
                let hi = if self.hi < other.hi { &self.hi } else { &other.hi };
                if lo < hi {
                    let chain = SturmChain::new(g);
                    if chain.roots_above(lo) > chain.roots_above(hi) {
                        return Ordering::Equal;
                    }
                }
            }
            if self.width() >= other.width() {
                self.bisect();
            } else {
                other.bisect();
            }
        }
        unreachable!("distinct algebraic numbers separate after finitely many bisections")
    }

    /// Non-mutating comparison.
    pub fn cmp_root(&self, other: &Self) -> Ordering {
        let mut a = self.clone();
        let mut b = other.clone();
        a.compare(&mut b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn star_edge_cubic_root_is_three() {
        let f = IntPoly::from_desc(&[1, -1, -8, 6]);
        let r = CertifiedRoot::largest(&f, 1e-10).unwrap();
        let [lo, hi] = r.bracket_f64();
        assert!(lo <= 3.0 && 3.0 <= hi && hi - lo <= 1e-10);
        assert_eq!(r.cmp_value(&Dyadic::from_int(3)), Ordering::Equal);
    }

    #[test]
    fn near_and_global_agree() {
        // x^2 - 2
        let p = IntPoly::from_desc(&[1, 0, -2]);
        let a = CertifiedRoot::largest(&p, 1e-12).unwrap();
        let b = CertifiedRoot::largest_near(&p, 1.4, 1e-12).unwrap();
        assert_eq!(a.cmp_root(&b), Ordering::Equal);
        assert!((a.value_f64() - 2f64.sqrt()).abs() < 1e-12);
        // a bad estimate still finds the largest root
        let c = CertifiedRoot::largest_near(&p, -1.4, 1e-12).unwrap();
        assert_eq!(c.cmp_f64(1.0), Ordering::Greater);
    }

    #[test]
    fn no_real_root() {
        let p = IntPoly::from_desc(&[1, 0, 1]);
        assert!(matches!(CertifiedRoot::largest(&p, 1e-9), Err(Error::Domain(_))));
        assert!(CertifiedRoot::largest(&IntPoly::one(), 1e-9).is_err());
        let q = IntPoly::from_desc(&[1, -1]);
        assert!(CertifiedRoot::largest(&q, 0.0).is_err());
    }

    #[test]
    fn multiple_roots_handled() {
        // (x - 2)^2 (x + 1)
        let p = &(&IntPoly::from_desc(&[1, -2]) * &IntPoly::from_desc(&[1, -2]))
            * &IntPoly::from_desc(&[1, 1]);
        let r = CertifiedRoot::largest(&p, 1e-10).unwrap();
        assert_eq!(r.cmp_value(&Dyadic::from_int(2)), Ordering::Equal);
    }

    #[test]
    fn equal_roots_of_different_polys() {
        // sqrt 2 as root of x^2 - 2 and of (x^2 - 2)(x + 5)
        let p = IntPoly::from_desc(&[1, 0, -2]);
        let q = &p * &IntPoly::from_desc(&[1, 5]);
        let mut a = CertifiedRoot::largest(&p, 1e-3).unwrap();
        let mut b = CertifiedRoot::largest(&q, 1e-6).unwrap();
        assert_eq!(a.compare(&mut b), Ordering::Equal);
        // close but different: sqrt 2 vs 140/99 (just below)
        let r = IntPoly::from_desc(&[99, -140]);
        let mut c = CertifiedRoot::largest(&r, 1e-2).unwrap();
        assert_eq!(a.compare(&mut c), Ordering::Greater);
        assert_eq!(c.compare(&mut a), Ordering::Less);
    }

    #[test]
    fn golden_bound_vs_root() {
        // (1 + sqrt 33)/2 is the largest root of x^2 - x - 8
        let p = IntPoly::from_desc(&[1, -1, -8]);
        let r = CertifiedRoot::largest(&p, 1e-12).unwrap();
        assert!((r.value_f64() - (1.0 + 33f64.sqrt()) / 2.0).abs() < 1e-12);
    }
}
