use super::{Root, SupportSet, Weight};
use crate::error::{Error, Result};
use crate::linalg::solve_independent;
use crate::rational::{floor, to_i64, Q};
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::Serialize;
use std::fmt;

/// The integers `q` in `[lo, hi]` (either end may be open) with
/// `q mod modulus` among `residues`. Never empty once constructed by
/// [`direction_set`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Progression {
    pub lo: Option<i64>,
    pub hi: Option<i64>,
    pub modulus: i64,
    pub residues: Vec<i64>,
}

impl Progression {
    pub fn contains(&self, q: i64) -> bool {
        self.lo.is_none_or(|lo| q >= lo)
            && self.hi.is_none_or(|hi| q <= hi)
            && self.residues.contains(&q.rem_euclid(self.modulus))
    }

    fn is_empty(&self) -> bool {
        if self.residues.is_empty() {
            return true;
        }
        match (self.lo, self.hi) {
            (Some(lo), Some(hi)) => lo > hi || !(lo..=hi.min(lo + self.modulus)).any(|q| self.contains(q)),
            _ => false,
        }
    }
}

/// A finite union of progressions: the set `n_alpha^lambda` of integer
/// steps `q` with `lambda + q alpha` in a support.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct IntSet {
    pub parts: Vec<Progression>,
}

impl IntSet {
    pub fn contains(&self, q: i64) -> bool {
        self.parts.iter().any(|p| p.contains(q))
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn bounded_above(&self) -> bool {
        self.parts.iter().all(|p| p.hi.is_some())
    }

    pub fn bounded_below(&self) -> bool {
        self.parts.iter().all(|p| p.lo.is_some())
    }

    /// Whether every integer `q >= a` belongs to the set. Past the largest
    /// finite bound the set is periodic, so one full period decides it.
    pub fn covers_from(&self, a: i64) -> bool {
        let mut t = a;
        let mut period = 1i64;
        for p in &self.parts {
            for b in [p.lo, p.hi].into_iter().flatten() {
                t = t.max(b + 1);
            }
            period = period.lcm(&p.modulus);
        }
        (a..=t + period).all(|q| self.contains(q))
    }
}

/// Direction classes of `n_alpha^lambda`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum DirClass {
    /// bounded only from above
    Plus,
    /// bounded only from below
    Minus,
    Finite,
    Infinite,
}

impl fmt::Display for DirClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DirClass::Plus => "plus",
            DirClass::Minus => "minus",
            DirClass::Finite => "finite",
            DirClass::Infinite => "infinite",
        })
    }
}

fn int(x: &Q) -> Result<i64> {
    to_i64(x).ok_or_else(|| Error::UndecidedWithinWindow(format!("bound {x} out of range")))
}

fn ceil(x: &Q) -> Q {
    -Q::from_integer(floor(&-x))
}

/// Exact description of `{q in Z : lam + q alpha in S}`.
pub fn direction_set(s: &SupportSet, lam: &Weight, alpha: &[i64]) -> Result<IntSet> {
    let a: Vec<Q> = alpha.iter().map(|&x| Q::from_integer(x.into())).collect();
    let mut parts = Vec::new();
    for c in &s.components {
        let cols = c.columns();
        let nfree = c.free.len();
        let rhs: Vec<Q> = lam.0.iter().zip(&c.base.0).map(|(x, b)| x - b).collect();
        match solve_independent(&cols, &a) {
            Some(x1) => {
                let Some(x0) = solve_independent(&cols, &rhs) else { continue };
                let mut modulus = 1i64;
                for v in &x1 {
                    modulus = modulus.lcm(&int(&Q::from_integer(v.denom().clone()))?);
                }
                let residues: Vec<i64> = (0..modulus)
                    .filter(|&r| {
                        let rq = Q::from_integer(r.into());
                        x0.iter().zip(&x1).all(|(u, v)| (u + v * &rq).is_integer())
                    })
                    .collect();
                let (mut lo, mut hi): (Option<i64>, Option<i64>) = (None, None);
                let mut empty = false;
                for k in nfree..cols.len() {
                    let (u, v) = (&x0[k], &x1[k]);
                    if v.is_zero() {
                        empty |= u.is_negative();
                    } else if v.is_positive() {
                        let b = int(&ceil(&(-u / v)))?;
                        lo = Some(lo.map_or(b, |l| l.max(b)));
                    } else {
                        let b = int(&Q::from_integer(floor(&(u / -v))))?;
                        hi = Some(hi.map_or(b, |h| h.min(b)));
                    }
                }
                let p = Progression { lo, hi, modulus, residues };
                if !empty && !p.is_empty() {
                    parts.push(p);
                }
            }
            None => {
                let mut cols2 = cols.clone();
                cols2.push(a.iter().map(|x| -x).collect());
                let Some(sol) = solve_independent(&cols2, &rhs) else { continue };
                let (x, qv) = sol.split_at(cols.len());
                let ok = qv[0].is_integer()
                    && x.iter().all(|v| v.is_integer())
                    && x[nfree..].iter().all(|v| !v.is_negative());
                if ok {
                    let qi = int(&qv[0])?;
                    parts.push(Progression { lo: Some(qi), hi: Some(qi), modulus: 1, residues: vec![0] });
                }
            }
        }
    }
    Ok(IntSet { parts })
}

/// Classifies `n_alpha^lam` and cross-checks the exact description
/// against direct membership tests on `q in [-radius, radius]`.
pub fn classify_direction(
    s: &SupportSet,
    lam: &Weight,
    alpha: &Root,
    radius: i64,
) -> Result<DirClass> {
    s.require(lam)?;
    let set = direction_set(s, lam, alpha)?;
    for q in -radius..=radius {
        if s.contains(&lam.shift(alpha, q)) != set.contains(q) {
            return Err(Error::UndecidedWithinWindow(format!(
                "step {q} along {alpha:?}: enumeration and cone description disagree"
            )));
        }
    }
    Ok(match (set.bounded_above(), set.bounded_below()) {
        (true, true) => DirClass::Finite,
        (true, false) => DirClass::Plus,
        (false, true) => DirClass::Minus,
        (false, false) => DirClass::Infinite,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::qr;
    use crate::weights::Cone;

    fn line() -> SupportSet {
        SupportSet::single(Cone::new(Weight(vec![qr(1, 2)]), vec![vec![1]], vec![]).unwrap())
    }

    #[test]
    fn examples() {
        let lam = Weight(vec![qr(1, 2)]);
        assert_eq!(classify_direction(&line(), &lam, &vec![1], 6).unwrap(), DirClass::Infinite);
        let half = SupportSet::single(Cone::new(Weight::zero(1), vec![], vec![vec![1]]).unwrap());
        assert_eq!(classify_direction(&half, &Weight::zero(1), &vec![1], 6).unwrap(), DirClass::Minus);
        assert_eq!(classify_direction(&half, &Weight::zero(1), &vec![-1], 6).unwrap(), DirClass::Plus);
        let strip = SupportSet::single(
            Cone::new(Weight::zero(2), vec![vec![1, 0]], vec![vec![0, 1]]).unwrap(),
        );
        assert_eq!(
            classify_direction(&strip, &Weight::zero(2), &vec![1, -1], 6).unwrap(),
            DirClass::Plus
        );
        assert!(matches!(
            classify_direction(&half, &Weight::from_ints(&[-1]), &vec![1], 6),
            Err(Error::WeightNotInSupport)
        ));
    }

    #[test]
    fn periodic_and_unions() {
        // 2Z eps1 ∪ (1 + 2 Z_+ eps1): every q >= 0 and the even negatives
        let s = SupportSet::new(
            1,
            vec![
                Cone::new(Weight::zero(1), vec![vec![2]], vec![]).unwrap(),
                Cone::new(Weight::from_ints(&[1]), vec![], vec![vec![2]]).unwrap(),
            ],
        )
        .unwrap();
        let set = direction_set(&s, &Weight::zero(1), &[1]).unwrap();
        assert!(set.covers_from(0));
        assert!(!set.covers_from(-2));
        assert_eq!(classify_direction(&s, &Weight::zero(1), &vec![1], 9).unwrap(), DirClass::Infinite);
        // steps of 2 along eps1 from a point of the Z_+ part
        let set = direction_set(&s, &Weight::from_ints(&[1]), &[2]).unwrap();
        assert!(set.contains(0) && set.contains(5) && !set.contains(-1));
    }

    #[test]
    fn transversal_direction() {
        // a single point meets every line at most once
        let s = SupportSet::single(Cone::point(Weight::from_ints(&[0, 0])));
        for a in crate::weights::delta_prime(2) {
            assert_eq!(classify_direction(&s, &Weight::zero(2), &a, 4).unwrap(), DirClass::Finite);
        }
    }
}
