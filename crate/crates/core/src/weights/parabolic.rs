use super::roots::{euclid, in_lattice, in_monoid, root_set};
use super::{Root, ShadowPartition, Weight};
use crate::enveloping::LeviSpec;
use crate::error::{Error, Result};
use crate::linalg::cone_is_pointed;
use crate::rational::Q;
use num_traits::{Signed, Zero};

/// A splitting of a symmetric root subset into a positive and a negative
/// half.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TriangularSplit {
    pub plus: Vec<Root>,
    pub minus: Vec<Root>,
}

fn to_q(r: &[i64]) -> Vec<Q> {
    r.iter().map(|&x| Q::from_integer(x.into())).collect()
}

fn neg(r: &[i64]) -> Root {
    r.iter().map(|x| -x).collect()
}

fn sorted(mut v: Vec<Root>) -> Vec<Root> {
    v.sort();
    v.dedup();
    v
}

/// The roots of `Delta'^F` orthogonal to `lam`.
fn finite_orthogonal(sh: &ShadowPartition, lam: &Weight) -> Vec<Root> {
    sh.finite.iter().filter(|a| lam.pair(a).is_zero()).cloned().collect()
}

/// Splits `roots` by the functional `alpha -> sum_i (m - i) alpha_i`, which
/// is nonzero on every `eps_i - eps_j`.
pub fn default_triangular_split(roots: &[Root]) -> TriangularSplit {
    let f = |a: &Root| -> i64 {
        let m = a.len() as i64;
        a.iter().enumerate().map(|(i, &x)| (m - i as i64) * x).sum()
    };
    TriangularSplit {
        plus: sorted(roots.iter().filter(|a| f(a) > 0).cloned().collect()),
        minus: sorted(roots.iter().filter(|a| f(a) < 0).cloned().collect()),
    }
}

/// `Delta = Delta^+ ⊔ Delta^0 ⊔ Delta^-` within a degree cap, together with
/// the splitting of `Delta'` it was built from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParabolicDecomposition {
    pub m: usize,
    pub cap: i64,
    pub plus: Vec<Root>,
    pub zero: Vec<Root>,
    pub minus: Vec<Root>,
    /// `Delta'^+ ⊔ {alpha in Delta'^F : (lam, alpha) > 0} ⊔ tri^+`
    pub prime_plus: Vec<Root>,
    /// `Delta'^- ⊔ {alpha in Delta'^F : (lam, alpha) < 0} ⊔ tri^-`
    pub prime_minus: Vec<Root>,
    pub prime_zero: Vec<Root>,
}

impl ParabolicDecomposition {
    /// Whether the three parts are disjoint and exhaust the capped root set.
    pub fn is_partition(&self) -> bool {
        let mut all: Vec<Root> = [&self.plus, &self.zero, &self.minus].into_iter().flatten().cloned().collect();
        all.sort();
        all == root_set(self.m, self.cap)
    }

    /// `<-p(Delta^+) ∪ p(Delta^-)>_{R+} ∩ <-p(Delta^-) ∪ p(Delta^+)>_{R+} = 0`
    /// in the quotient by the span of `Delta^0`. The two cones are negatives
    /// of each other, so this is pointedness of the first.
    pub fn splits(&self) -> bool {
        let gens: Vec<Vec<Q>> = self
            .plus
            .iter()
            .map(|a| to_q(&neg(a)))
            .chain(self.minus.iter().map(|a| to_q(a)))
            .collect();
        let modulo: Vec<Vec<Q>> = self.zero.iter().map(|a| to_q(a)).collect();
        cone_is_pointed(&gens, &modulo, self.m)
    }
}

pub fn parabolic_decomposition(
    sh: &ShadowPartition,
    lam: &Weight,
    tri: &TriangularSplit,
    cap: i64,
) -> Result<ParabolicDecomposition> {
    let m = sh.m;
    let f0 = sorted(finite_orthogonal(sh, lam));
    let mut given = tri.plus.clone();
    given.extend(tri.minus.iter().cloned());
    if given.len() != sorted(given.clone()).len() || sorted(given) != f0 {
        return Err(Error::InvalidTriangularSplit(
            "the two halves must partition the finite roots orthogonal to the weight".into(),
        ));
    }
    let gens: Vec<Vec<Q>> = tri
        .plus
        .iter()
        .map(|a| to_q(&neg(a)))
        .chain(tri.minus.iter().map(|a| to_q(a)))
        .collect();
    if !cone_is_pointed(&gens, &[], m) {
        return Err(Error::InvalidTriangularSplit("the two cones meet outside 0".into()));
    }
    let pairing_part = |positive: bool| -> Vec<Root> {
        sh.finite
            .iter()
            .filter(|a| {
                let p = lam.pair(a);
                if positive { p.is_positive() } else { p.is_negative() }
            })
            .cloned()
            .collect()
    };
    let prime_plus = sorted(sh.plus.iter().cloned().chain(pairing_part(true)).chain(tri.plus.iter().cloned()).collect());
    let prime_minus = sorted(sh.minus.iter().cloned().chain(pairing_part(false)).chain(tri.minus.iter().cloned()).collect());
    let prime_zero = sorted(sh.infinite.clone());

    let delta = root_set(m, cap);
    let zero: Vec<Root> = delta.iter().filter(|r| in_lattice(&prime_zero, r)).cloned().collect();
    let mut pos_gens = prime_plus.clone();
    pos_gens.extend(prime_zero.iter().cloned());
    let plus: Vec<Root> = delta
        .iter()
        .filter(|r| !zero.contains(r) && in_monoid(&pos_gens, r))
        .cloned()
        .collect();
    let minus: Vec<Root> = delta
        .iter()
        .filter(|r| !zero.contains(r) && !plus.contains(r))
        .cloned()
        .collect();
    Ok(ParabolicDecomposition { m, cap, plus, zero, minus, prime_plus, prime_minus, prime_zero })
}

/// Roots of `Delta` (within the cap) in the lattice spanned by the finite
/// roots orthogonal to `lam` but not among them; empty when the lattice
/// meets `Delta` exactly in those roots.
pub fn check_deltazero(sh: &ShadowPartition, lam: &Weight, cap: i64) -> Vec<Root> {
    let f0 = finite_orthogonal(sh, lam);
    root_set(sh.m, cap)
        .into_iter()
        .filter(|r| in_lattice(&f0, r) && !f0.contains(r))
        .collect()
}

/// The Levi data read off from a shadow: the coordinates `i` with
/// `±eps_i` infinite stay vector-field directions, the rest split into gl
/// blocks along the infinite roots `eps_i - eps_j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LeviShape {
    /// original (zero-based) coordinates kept as vector-field directions
    pub w_coords: Vec<usize>,
    /// gl blocks in original coordinates
    pub blocks: Vec<Vec<usize>>,
    /// the same data renumbered so the vector-field coordinates come first
    pub levi: LeviSpec,
}

pub fn levi_shape(sh: &ShadowPartition, n: usize) -> Result<LeviShape> {
    let m = sh.m;
    for a in &sh.finite {
        if a.iter().sum::<i64>() != 0 {
            return Err(Error::InconsistentShadow(format!(
                "finite root {} is not of the form eps_i - eps_j",
                super::root_label(a)
            )));
        }
        for b in &sh.infinite {
            if euclid(a, b) != 0 {
                return Err(Error::InconsistentShadow(format!(
                    "finite root {} is not orthogonal to infinite root {}",
                    super::root_label(a),
                    super::root_label(b)
                )));
            }
        }
    }
    let unit = |i: usize, c: i64| -> Root {
        let mut r = vec![0; m];
        r[i] = c;
        r
    };
    let w_coords: Vec<usize> = (0..m)
        .filter(|&i| sh.infinite.contains(&unit(i, 1)) && sh.infinite.contains(&unit(i, -1)))
        .collect();
    let rest: Vec<usize> = (0..m).filter(|i| !w_coords.contains(i)).collect();
    // union-find over the remaining coordinates
    let mut parent: Vec<usize> = (0..m).collect();
    fn find(p: &mut [usize], i: usize) -> usize {
        let mut r = i;
        while p[r] != r {
            r = p[r];
        }
        p[i] = r;
        r
    }
    for &i in &rest {
        for &j in &rest {
            let mut r = unit(i, 1);
            r[j] -= 1;
            if i != j && sh.infinite.contains(&r) {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                parent[a.max(b)] = a.min(b);
            }
        }
    }
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    for &i in &rest {
        let root = find(&mut parent, i);
        match blocks.iter_mut().find(|b| find(&mut parent, b[0]) == root) {
            Some(b) => b.push(i),
            None => blocks.push(vec![i]),
        }
    }
    let order: Vec<usize> = w_coords.iter().chain(&rest).cloned().collect();
    let new_index = |i: usize| order.iter().position(|&x| x == i).expect("coordinate is ordered");
    let renumbered: Vec<Vec<usize>> = blocks.iter().map(|b| b.iter().map(|&i| new_index(i)).collect()).collect();
    let levi = LeviSpec::new(m, w_coords.len(), n, renumbered)?;
    Ok(LeviShape { w_coords, blocks, levi })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::qr;
    use crate::weights::{delta_prime, shadow, Cone, SupportSet};

    fn half_plane() -> (SupportSet, Weight) {
        let lam = Weight(vec![qr(1, 2), qr(0, 1)]);
        let c = Cone::new(lam.clone(), vec![vec![1, 0]], vec![vec![0, -1]]).unwrap();
        (SupportSet::single(c), lam)
    }

    #[test]
    fn decomposition_example() {
        let (s, lam) = half_plane();
        let sh = shadow(&s, &lam).unwrap();
        let tri = default_triangular_split(&[]);
        let d = parabolic_decomposition(&sh, &lam, &tri, 3).unwrap();
        assert_eq!(d.zero, vec![vec![-1, 0], vec![1, 0], vec![2, 0], vec![3, 0]]);
        assert!(d.is_partition() && d.splits());
        // eps2 is a positive direction, -eps2 negative
        assert!(d.plus.contains(&vec![0, 1]) && d.minus.contains(&vec![0, -1]));
    }

    #[test]
    fn no_infinite_roots() {
        let quad = SupportSet::single(Cone::new(Weight::zero(2), vec![], vec![vec![1, 0], vec![0, 1]]).unwrap());
        let lam = Weight::zero(2);
        let sh = shadow(&quad, &lam).unwrap();
        let f0 = sh.finite.clone();
        let tri = default_triangular_split(&f0);
        let d = parabolic_decomposition(&sh, &lam, &tri, 3).unwrap();
        assert!(d.zero.is_empty() && d.is_partition() && d.splits());
        assert!(check_deltazero(&sh, &lam, 3).is_empty());
        // a non-triangular split is rejected
        let bad = TriangularSplit { plus: f0.clone(), minus: vec![] };
        assert!(matches!(parabolic_decomposition(&sh, &lam, &bad, 3), Err(Error::InvalidTriangularSplit(_))));
    }

    #[test]
    fn levi_examples() {
        let (s, lam) = half_plane();
        let l = levi_shape(&shadow(&s, &lam).unwrap(), 1).unwrap();
        assert_eq!((l.w_coords.clone(), l.blocks.clone()), (vec![0], vec![vec![1]]));
        assert_eq!(l.levi.q, 1);
        let full = ShadowPartition::from_parts(2, vec![], vec![], vec![], delta_prime(2));
        let l = levi_shape(&full, 0).unwrap();
        assert_eq!(l.levi.q, 2);
        assert!(l.blocks.is_empty());
        let mut inf = vec![vec![0, 1, -1], vec![0, -1, 1]];
        inf.sort();
        let rest: Vec<Root> = delta_prime(3).into_iter().filter(|r| !inf.contains(r)).collect();
        let sh = ShadowPartition::from_parts(3, rest, vec![], vec![], inf);
        let l = levi_shape(&sh, 0).unwrap();
        assert_eq!(l.levi.q, 0);
        assert_eq!(l.blocks, vec![vec![0], vec![1, 2]]);
        let bad = ShadowPartition::from_parts(1, vec![], vec![], vec![vec![1], vec![-1]], vec![]);
        assert!(matches!(levi_shape(&bad, 0), Err(Error::InconsistentShadow(_))));
    }
}
