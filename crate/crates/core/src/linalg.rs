//! Exact linear algebra over the rationals: sparse echelon bases, dense
//! row reduction, and a small simplex for cone feasibility questions.

use std::collections::BTreeMap;

use num_traits::{One, Signed, Zero};

use crate::rational::Q;

pub type SparseVec<K> = BTreeMap<K, Q>;

pub fn add_scaled<K: Ord + Clone>(acc: &mut SparseVec<K>, v: &SparseVec<K>, c: &Q) {
    if c.is_zero() {
        return;
    }
    for (k, x) in v {
        add_term(acc, k.clone(), x * c);
    }
}

pub fn add_term<K: Ord>(acc: &mut SparseVec<K>, k: K, x: Q) {
    if x.is_zero() {
        return;
    }
    match acc.entry(k) {
        std::collections::btree_map::Entry::Vacant(e) => {
            e.insert(x);
        }
        std::collections::btree_map::Entry::Occupied(mut e) => {
            *e.get_mut() += x;
            if e.get().is_zero() {
                e.remove();
            }
        }
    }
}

pub fn scaled<K: Ord + Clone>(v: &SparseVec<K>, c: &Q) -> SparseVec<K> {
    let mut out = SparseVec::new();
    add_scaled(&mut out, v, c);
    out
}

/// Row echelon form over keyed coordinates. Every stored row has leading
/// coefficient one at its pivot, the smallest key of the row.
#[derive(Debug, Clone)]
pub struct Echelon<K: Ord + Clone> {
    rows: BTreeMap<K, SparseVec<K>>,
    /// combination of inserted vectors that produced each row
    provenance: BTreeMap<K, SparseVec<usize>>,
    inserted: usize,
}

impl<K: Ord + Clone> Default for Echelon<K> {
    fn default() -> Self {
        Self {
            rows: BTreeMap::new(),
            provenance: BTreeMap::new(),
            inserted: 0,
        }
    }
}

impl<K: Ord + Clone> Echelon<K> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> impl Iterator<Item = &K> {
        self.rows.keys()
    }

    /// Reduce `v` against the stored rows, returning the remainder and the
    /// combination of inserted vectors that was subtracted.
    fn reduce_tracked(&self, v: &SparseVec<K>) -> (SparseVec<K>, SparseVec<usize>) {
        let mut rem = v.clone();
        let mut used = SparseVec::new();
        let mut cursor: Option<K> = None;
        loop {
            let next = match &cursor {
                None => rem.keys().find(|k| self.rows.contains_key(*k)).cloned(),
                Some(c) => rem
                    .range((std::ops::Bound::Excluded(c.clone()), std::ops::Bound::Unbounded))
                    .map(|(k, _)| k)
                    .find(|k| self.rows.contains_key(*k))
                    .cloned(),
            };
            let Some(k) = next else { break };
            let c = rem[&k].clone();
            add_scaled(&mut rem, &self.rows[&k], &-c.clone());
            add_scaled(&mut used, &self.provenance[&k], &c);
            cursor = Some(k);
        }
        (rem, used)
    }

    pub fn reduce(&self, v: &SparseVec<K>) -> SparseVec<K> {
        self.reduce_tracked(v).0
    }

    pub fn contains(&self, v: &SparseVec<K>) -> bool {
        self.reduce(v).is_empty()
    }

    /// Insert `v`; returns whether it enlarged the span.
    pub fn insert(&mut self, v: &SparseVec<K>) -> bool {
        let idx = self.inserted;
        self.inserted += 1;
        let (rem, used) = self.reduce_tracked(v);
        let Some((pivot, lead)) = rem.iter().next().map(|(k, x)| (k.clone(), x.clone())) else {
            return false;
        };
        let inv = lead.recip();
        let row = scaled(&rem, &inv);
        let mut prov = scaled(&used, &-inv.clone());
        add_term(&mut prov, idx, inv);
        self.rows.insert(pivot.clone(), row);
        self.provenance.insert(pivot, prov);
        true
    }

    /// Express `v` as a combination of the inserted vectors (by insertion
    /// index). Returns the coefficients and the residual.
    pub fn solve(&self, v: &SparseVec<K>) -> (SparseVec<usize>, SparseVec<K>) {
        let (rem, used) = self.reduce_tracked(v);
        (used, rem)
    }

    pub fn basis(&self) -> impl Iterator<Item = &SparseVec<K>> {
        self.rows.values()
    }
}

pub fn rank_of<K: Ord + Clone>(vs: &[SparseVec<K>]) -> usize {
    let mut e = Echelon::new();
    for v in vs {
        e.insert(v);
    }
    e.rank()
}

/// Dense matrix, row major.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<Vec<Q>>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![vec![Q::zero(); cols]; rows],
        }
    }

    pub fn from_rows(data: Vec<Vec<Q>>, cols: usize) -> Self {
        Self {
            rows: data.len(),
            cols,
            data,
        }
    }

    /// Reduced row echelon form in place; returns pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !self.data[i][c].is_zero()) else {
                continue;
            };
            self.data.swap(r, p);
            let inv = self.data[r][c].recip();
            for x in self.data[r].iter_mut() {
                *x *= &inv;
            }
            for i in 0..self.rows {
                if i != r && !self.data[i][c].is_zero() {
                    let f = self.data[i][c].clone();
                    for j in c..self.cols {
                        let t = &self.data[r][j] * &f;
                        self.data[i][j] -= t;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().rref().len()
    }

    /// Basis of the right kernel `{x : A x = 0}`.
    pub fn kernel(&self) -> Vec<Vec<Q>> {
        let mut m = self.clone();
        let pivots = m.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut x = vec![Q::zero(); self.cols];
                x[f] = Q::one();
                for (r, &p) in pivots.iter().enumerate() {
                    x[p] = -m.data[r][f].clone();
                }
                x
            })
            .collect()
    }

    pub fn mul_vec(&self, v: &[Q]) -> Vec<Q> {
        self.data
            .iter()
            .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }
}

/// The unique solution of `sum_k x_k cols[k] = v` when the columns are
/// linearly independent; `None` if `v` is outside their span.
pub fn solve_independent(cols: &[Vec<Q>], v: &[Q]) -> Option<Vec<Q>> {
    let rows = v.len();
    let n = cols.len();
    let data: Vec<Vec<Q>> = (0..rows)
        .map(|r| {
            let mut row: Vec<Q> = cols.iter().map(|c| c[r].clone()).collect();
            row.push(v[r].clone());
            row
        })
        .collect();
    let mut m = Matrix::from_rows(data, n + 1);
    let pivots = m.rref();
    if pivots.contains(&n) {
        return None;
    }
    let mut x = vec![Q::zero(); n];
    for (r, &p) in pivots.iter().enumerate() {
        x[p] = m.data[r][n].clone();
    }
    Some(x)
}

/// Rank of a list of vectors of equal length.
pub fn rank_vectors(vs: &[Vec<Q>]) -> usize {
    let cols = vs.first().map_or(0, |v| v.len());
    Matrix::from_rows(vs.to_vec(), cols).rank()
}

/// Phase-one simplex: find `x >= 0` with `A x = b`, or `None` if infeasible.
/// Bland's rule keeps it terminating; exact arithmetic throughout.
pub fn lp_feasible(a: &[Vec<Q>], b: &[Q]) -> Option<Vec<Q>> {
    let m = a.len();
    let n = a.first().map_or(0, |r| r.len());
    // tableau with artificials: [A | I | b], rows sign-normalised so b >= 0
    let width = n + m + 1;
    let mut t: Vec<Vec<Q>> = Vec::with_capacity(m + 1);
    for i in 0..m {
        let flip = b[i].is_negative();
        let mut row = vec![Q::zero(); width];
        for j in 0..n {
            row[j] = if flip { -a[i][j].clone() } else { a[i][j].clone() };
        }
        row[n + i] = Q::one();
        row[width - 1] = if flip { -b[i].clone() } else { b[i].clone() };
        t.push(row);
    }
    // objective: minimise the sum of artificials
    let mut obj = vec![Q::zero(); width];
    for row in &t {
        for j in 0..n {
            obj[j] -= &row[j];
        }
        obj[width - 1] -= &row[width - 1];
    }
    let mut basis: Vec<usize> = (n..n + m).collect();
    loop {
        let Some(enter) = (0..n + m).find(|&j| obj[j].is_negative()) else {
            break;
        };
        let mut leave: Option<(usize, Q)> = None;
        for i in 0..m {
            if t[i][enter].is_positive() {
                let ratio = &t[i][width - 1] / &t[i][enter];
                let better = match &leave {
                    None => true,
                    Some((li, lr)) => ratio < *lr || (ratio == *lr && basis[i] < basis[*li]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
        }
        let Some((r, _)) = leave else {
            // unbounded direction for a bounded-below objective cannot occur
            return None;
        };
        let inv = t[r][enter].recip();
        for x in t[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..m {
            if i != r && !t[i][enter].is_zero() {
                let f = t[i][enter].clone();
                for j in 0..width {
                    let d = &t[r][j] * &f;
                    t[i][j] -= d;
                }
            }
        }
        if !obj[enter].is_zero() {
            let f = obj[enter].clone();
            for j in 0..width {
                let d = &t[r][j] * &f;
                obj[j] -= d;
            }
        }
        basis[r] = enter;
    }
    if !obj[width - 1].is_zero() {
        return None;
    }
    let mut x = vec![Q::zero(); n];
    for (i, &bv) in basis.iter().enumerate() {
        if bv < n {
            x[bv] = t[i][width - 1].clone();
        }
    }
    Some(x)
}

/// Whether the cone generated by `gens` is pointed modulo the real span of
/// `modulo`, i.e. no nonzero nonnegative combination of `gens` lies in that
/// span.
pub fn cone_is_pointed(gens: &[Vec<Q>], modulo: &[Vec<Q>], dim: usize) -> bool {
    if gens.is_empty() {
        return true;
    }
    // variables: c_g >= 0, z+_h, z-_h >= 0
    let nv = gens.len() + 2 * modulo.len();
    let mut a = Vec::new();
    let mut b = Vec::new();
    for coord in 0..dim {
        let mut row = vec![Q::zero(); nv];
        for (g, v) in gens.iter().enumerate() {
            row[g] = v[coord].clone();
        }
        for (h, v) in modulo.iter().enumerate() {
            row[gens.len() + 2 * h] = -v[coord].clone();
            row[gens.len() + 2 * h + 1] = v[coord].clone();
        }
        a.push(row);
        b.push(Q::zero());
    }
    let mut norm = vec![Q::zero(); nv];
    for x in norm.iter_mut().take(gens.len()) {
        *x = Q::one();
    }
    a.push(norm);
    b.push(Q::one());
    lp_feasible(&a, &b).is_none()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    fn sv(entries: &[(u32, i64)]) -> SparseVec<u32> {
        let mut v = SparseVec::new();
        for &(k, x) in entries {
            add_term(&mut v, k, q(x));
        }
        v
    }

    #[test]
    fn echelon_rank_and_solve() {
        let mut e = Echelon::new();
        assert!(e.insert(&sv(&[(0, 1), (1, 2)])));
        assert!(e.insert(&sv(&[(1, 1), (2, 1)])));
        assert!(!e.insert(&sv(&[(0, 2), (1, 5), (2, 1)])));
        assert_eq!(e.rank(), 2);
        let (coeffs, residual) = e.solve(&sv(&[(0, 1), (1, 3), (2, 1)]));
        assert!(residual.is_empty());
        assert_eq!(coeffs, sv(&[(0, 1), (1, 1)]).into_iter().map(|(k, x)| (k as usize, x)).collect());
    }

    #[test]
    fn dense_kernel() {
        let m = Matrix::from_rows(vec![vec![q(1), q(2), q(3)], vec![q(2), q(4), q(6)]], 3);
        assert_eq!(m.rank(), 1);
        let k = m.kernel();
        assert_eq!(k.len(), 2);
        for v in k {
            assert!(m.mul_vec(&v).iter().all(|x| x.is_zero()));
        }
    }

    #[test]
    fn simplex_feasibility() {
        // x + y = 1, x - y = 0
        let a = vec![vec![q(1), q(1)], vec![q(1), q(-1)]];
        let x = lp_feasible(&a, &[q(1), q(0)]).unwrap();
        assert_eq!(x, vec![crate::rational::qr(1, 2), crate::rational::qr(1, 2)]);
        // x + y = -1 with x, y >= 0 is infeasible
        assert!(lp_feasible(&[vec![q(1), q(1)]], &[q(-1)]).is_none());
    }

    #[test]
    fn pointed_cones() {
        let e1 = vec![q(1), q(0)];
        let e2 = vec![q(0), q(1)];
        let me1 = vec![q(-1), q(0)];
        assert!(cone_is_pointed(&[e1.clone(), e2.clone()], &[], 2));
        assert!(!cone_is_pointed(&[e1.clone(), me1], &[], 2));
        // modulo the e2 axis, {e1, e1+e2} is still pointed but {e1, -e1+e2} is not
        assert!(cone_is_pointed(&[e1.clone(), vec![q(1), q(1)]], std::slice::from_ref(&e2), 2));
        assert!(!cone_is_pointed(std::slice::from_ref(&e2), std::slice::from_ref(&e2), 2));
        assert!(!cone_is_pointed(&[e1, vec![q(-1), q(1)]], &[e2], 2));
    }
}
