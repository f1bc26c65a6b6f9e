use super::{Root, Weight};
use crate::error::{Error, Result};
use crate::linalg::{rank_vectors, solve_independent};
use crate::rational::Q;
use num_traits::Signed;

/// `base + Z-span(free) + Z_+-span(plus)` with linearly independent
/// generators, so that every point has unique coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cone {
    pub base: Weight,
    pub free: Vec<Root>,
    pub plus: Vec<Root>,
}

fn to_q(r: &[i64]) -> Vec<Q> {
    r.iter().map(|&x| Q::from_integer(x.into())).collect()
}

impl Cone {
    pub fn new(base: Weight, free: Vec<Root>, plus: Vec<Root>) -> Result<Self> {
        let m = base.dim();
        for g in free.iter().chain(&plus) {
            if g.len() != m {
                return Err(Error::SizeMismatch(g.len(), m));
            }
        }
        let gens: Vec<Vec<Q>> = free.iter().chain(&plus).map(|g| to_q(g)).collect();
        if rank_vectors(&gens) != gens.len() {
            return Err(Error::DependentGenerators(format!(
                "{} generators span a space of rank {}",
                gens.len(),
                rank_vectors(&gens)
            )));
        }
        Ok(Self { base, free, plus })
    }

    /// A single point.
    pub fn point(base: Weight) -> Self {
        Self { base, free: Vec::new(), plus: Vec::new() }
    }

    pub fn dim(&self) -> usize {
        self.base.dim()
    }

    /// Generators as rational columns, free ones first.
    pub(crate) fn columns(&self) -> Vec<Vec<Q>> {
        self.free.iter().chain(&self.plus).map(|g| to_q(g)).collect()
    }

    /// Coordinates of `w - base` in the generators, if it lies in their
    /// rational span.
    pub(crate) fn coordinates(&self, w: &Weight) -> Option<Vec<Q>> {
        let v: Vec<Q> = w.0.iter().zip(&self.base.0).map(|(a, b)| a - b).collect();
        solve_independent(&self.columns(), &v)
    }

    pub fn contains(&self, w: &Weight) -> bool {
        if w.dim() != self.dim() {
            return false;
        }
        match self.coordinates(w) {
            None => false,
            Some(x) => {
                x.iter().all(|c| c.is_integer())
                    && x[self.free.len()..].iter().all(|c| !c.is_negative())
            }
        }
    }
}

/// A finite union of shifted cones in `h^*` of dimension `m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SupportSet {
    pub m: usize,
    pub components: Vec<Cone>,
}

impl SupportSet {
    pub fn new(m: usize, components: Vec<Cone>) -> Result<Self> {
        for c in &components {
            if c.dim() != m {
                return Err(Error::SizeMismatch(c.dim(), m));
            }
        }
        Ok(Self { m, components })
    }

    pub fn single(cone: Cone) -> Self {
        Self { m: cone.dim(), components: vec![cone] }
    }

    pub fn contains(&self, w: &Weight) -> bool {
        self.components.iter().any(|c| c.contains(w))
    }

    pub fn require(&self, w: &Weight) -> Result<()> {
        if self.contains(w) {
            Ok(())
        } else {
            Err(Error::WeightNotInSupport)
        }
    }

    /// The points of the support in the box `lam + [-r, r]^m`, in
    /// lexicographic order of the offset.
    pub fn window(&self, lam: &Weight, r: i64) -> Vec<Weight> {
        let m = self.m;
        let mut out = Vec::new();
        let mut off = vec![-r; m];
        loop {
            let w = Weight(
                lam.0
                    .iter()
                    .zip(&off)
                    .map(|(x, &o)| x + Q::from_integer(o.into()))
                    .collect(),
            );
            if self.contains(&w) {
                out.push(w);
            }
            let mut k = 0;
            loop {
                if k == m {
                    return out;
                }
                off[k] += 1;
                if off[k] <= r {
                    break;
                }
                off[k] = -r;
                k += 1;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::qr;

    #[test]
    fn membership() {
        let c = Cone::new(Weight(vec![qr(1, 2), qr(0, 1)]), vec![vec![1, 0]], vec![vec![0, -1]]).unwrap();
        assert!(c.contains(&Weight(vec![qr(5, 2), qr(-3, 1)])));
        assert!(!c.contains(&Weight(vec![qr(5, 2), qr(1, 1)])));
        assert!(!c.contains(&Weight(vec![qr(2, 1), qr(-1, 1)])));
        let dep = Cone::new(Weight::zero(2), vec![vec![1, 0]], vec![vec![2, 0]]);
        assert!(matches!(dep, Err(Error::DependentGenerators(_))));
    }

    #[test]
    fn skew_generators() {
        // Z_+ (eps1 - eps2) from the origin: only (k, -k), k >= 0
        let c = Cone::new(Weight::zero(2), vec![], vec![vec![1, -1]]).unwrap();
        assert!(c.contains(&Weight::from_ints(&[2, -2])));
        assert!(!c.contains(&Weight::from_ints(&[-1, 1])));
        assert!(!c.contains(&Weight::from_ints(&[1, 0])));
        let s = SupportSet::single(c);
        assert_eq!(s.window(&Weight::zero(2), 2).len(), 3);
    }
}
