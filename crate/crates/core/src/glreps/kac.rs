use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::module::{FinModule, GlModule};
use super::ugl::{ugl, GlLetter};
use crate::algebra::GlIndex;
use crate::error::{Error, Result};
use crate::linalg::{add_scaled, add_term, Echelon, Matrix, SparseVec};
use crate::rational::Q;

/// A Kac module `Lambda(gl^{-1}) (x) V` with its Z-degree (minus the
/// number of exterior factors) recorded per basis vector. The degree-0
/// vectors are the generating copy of `V`.
#[derive(Debug, Clone)]
pub struct KacModule {
    pub module: GlModule,
    pub degree: Vec<i64>,
}

impl KacModule {
    pub fn top(&self) -> Vec<usize> {
        (0..self.degree.len()).filter(|&i| self.degree[i] == 0).collect()
    }
}

/// Induces a `gl^0`-module `V` (extended by zero on `gl^1`) to gl(m|n).
pub fn kac_module(v: &GlModule) -> Result<KacModule> {
    let sig = v.sig;
    for (l, cols) in &v.action {
        if l.parity(sig) && cols.iter().any(|c| !c.is_empty()) {
            return Err(Error::GradationError(format!("{l} is odd but acts nontrivially on V")));
        }
    }
    if v.parities.iter().any(|&p| p) {
        return Err(Error::GradationError("V must be purely even".into()));
    }
    let pbw = ugl(sig);
    let ys: Vec<GlLetter> = {
        let mut ys: Vec<GlLetter> = GlIndex::all(sig)
            .into_iter()
            .filter(|g| g.z_degree(sig) == -1)
            .map(|g| GlLetter::new(sig, g))
            .collect();
        ys.sort();
        ys
    };
    let dv = v.dim();
    let masks = 1usize << ys.len();
    let index = |mask: usize, j: usize| mask * dv + j;
    let d = sig.dim();
    let mut parities = Vec::with_capacity(masks * dv);
    let mut weights = Vec::with_capacity(masks * dv);
    let mut degree = Vec::with_capacity(masks * dv);
    for mask in 0..masks {
        for j in 0..dv {
            let k = mask.count_ones() as usize;
            parities.push(k % 2 == 1);
            let mut w = v.weights[j].clone();
            for (b, y) in ys.iter().enumerate() {
                if mask >> b & 1 == 1 {
                    w[y.idx.row] += Q::one();
                    w[y.idx.col] -= Q::one();
                }
            }
            debug_assert_eq!(w.len(), d);
            weights.push(w);
            degree.push(-(k as i64));
        }
    }
    let mut module = FinModule {
        sig,
        generators: GlIndex::all(sig),
        parities,
        weights,
        action: BTreeMap::new(),
    };
    for g in GlIndex::all(sig) {
        let letter = GlLetter::new(sig, g);
        let mut cols = Vec::with_capacity(masks * dv);
        for mask in 0..masks {
            let mut word = vec![letter];
            word.extend(ys.iter().enumerate().filter(|(b, _)| mask >> b & 1 == 1).map(|(_, y)| *y));
            let normal = pbw.normal_word(&word)?;
            for j in 0..dv {
                let mut col = SparseVec::new();
                for (w, c) in &normal.terms {
                    let split = w.iter().position(|l| l.z != -1).unwrap_or(w.len());
                    let (yw, rest) = w.split_at(split);
                    if rest.iter().any(|l| l.z == 1) {
                        continue;
                    }
                    let idxs: Vec<GlIndex> = rest.iter().map(|l| l.idx).collect();
                    let image = v.act_word(&idxs, &SparseVec::from([(j, Q::one())]));
                    if image.is_empty() {
                        continue;
                    }
                    let ymask = yw.iter().fold(0usize, |acc, l| {
                        acc | 1 << ys.iter().position(|y| y == l).expect("gl^{-1} letter")
                    });
                    for (jj, cc) in image {
                        add_term(&mut col, index(ymask, jj), c * cc);
                    }
                }
                cols.push(col);
            }
        }
        if cols.iter().any(|c| !c.is_empty()) {
            module.action.insert(g, cols);
        }
    }
    Ok(KacModule { module, degree })
}

fn to_dense_cols(vs: &[Vec<Q>], dim: usize) -> Matrix {
    // columns are the vectors
    let mut m = Matrix::zeros(dim, vs.len());
    for (j, v) in vs.iter().enumerate() {
        for i in 0..dim {
            m.data[i][j] = v[i].clone();
        }
    }
    m
}

/// The largest submodule of a Kac module inside the negative degrees,
/// computed as the fixpoint `N <- {v in N : E v in N for all E}` starting
/// from all negative-degree vectors. Returns a basis.
pub fn maximal_submodule(k: &KacModule) -> Vec<Vec<Q>> {
    let m = &k.module;
    let dim = m.dim();
    let mut basis: Vec<Vec<Q>> = (0..dim)
        .filter(|&i| k.degree[i] < 0)
        .map(|i| (0..dim).map(|r| if r == i { Q::one() } else { Q::zero() }).collect())
        .collect();
    let mats: Vec<Matrix> = m.action.keys().map(|l| m.matrix(l)).collect();
    loop {
        if basis.is_empty() {
            return basis;
        }
        let b = to_dense_cols(&basis, dim);
        // rows annihilating span(B)
        let bt = Matrix::from_rows(basis.clone(), dim);
        let ann = bt.kernel();
        let mut rows: Vec<Vec<Q>> = Vec::new();
        for e in &mats {
            let eb = matmul(e, &b);
            for a in &ann {
                let row: Vec<Q> = (0..basis.len())
                    .map(|c| (0..dim).fold(Q::zero(), |acc, r| acc + &a[r] * &eb.data[r][c]))
                    .collect();
                rows.push(row);
            }
        }
        let cons = Matrix::from_rows(rows, basis.len());
        let ker = cons.kernel();
        if ker.len() == basis.len() {
            return basis;
        }
        basis = ker.iter().map(|x| b.mul_vec(x)).collect();
    }
}

fn matmul(a: &Matrix, b: &Matrix) -> Matrix {
    let mut out = Matrix::zeros(a.rows, b.cols);
    for i in 0..a.rows {
        for k in 0..a.cols {
            if a.data[i][k].is_zero() {
                continue;
            }
            for j in 0..b.cols {
                if !b.data[k][j].is_zero() {
                    let t = &a.data[i][k] * &b.data[k][j];
                    out.data[i][j] += t;
                }
            }
        }
    }
    out
}

fn sparse(v: &[Q]) -> SparseVec<usize> {
    v.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(i, c)| (i, c.clone())).collect()
}

/// `L(V) = K(V) / N` for the maximal submodule `N`.
pub fn simple_top(k: &KacModule) -> Result<GlModule> {
    let m = &k.module;
    if k.degree.len() != m.dim() || k.top().is_empty() {
        return Err(Error::NotAKacModule("missing degree data or empty top".into()));
    }
    let mut ech = Echelon::new();
    for v in maximal_submodule(k) {
        ech.insert(&sparse(&v));
    }
    let pivots: Vec<usize> = ech.pivots().cloned().collect();
    if k.top().iter().any(|t| pivots.contains(t)) {
        return Err(Error::NotAKacModule("the radical meets the top".into()));
    }
    let keep: Vec<usize> = (0..m.dim()).filter(|i| !pivots.contains(i)).collect();
    let pos = |i: usize| keep.iter().position(|&x| x == i);
    let mut action = BTreeMap::new();
    for (l, cols) in &m.action {
        let new_cols: Vec<SparseVec<usize>> = keep
            .iter()
            .map(|&j| {
                ech.reduce(&cols[j])
                    .into_iter()
                    .map(|(i, c)| (pos(i).expect("reduced vectors avoid pivots"), c))
                    .collect()
            })
            .collect();
        if new_cols.iter().any(|c| !c.is_empty()) {
            action.insert(*l, new_cols);
        }
    }
    Ok(FinModule {
        sig: m.sig,
        generators: m.generators.clone(),
        parities: keep.iter().map(|&i| m.parities[i]).collect(),
        weights: keep.iter().map(|&i| m.weights[i].clone()).collect(),
        action,
    })
}

/// Closure of `seed` under all generators, as a list of weight vectors.
fn generate(m: &GlModule, seed: SparseVec<usize>) -> (Echelon<usize>, Vec<SparseVec<usize>>) {
    let mut ech = Echelon::new();
    let mut found = Vec::new();
    let mut queue = vec![seed];
    while let Some(v) = queue.pop() {
        if v.is_empty() || !ech.insert(&v) {
            continue;
        }
        for l in &m.generators {
            queue.push(m.act(l, &v));
        }
        found.push(v);
    }
    (ech, found)
}

/// Oracle for [`maximal_submodule`]: sums the submodules generated by
/// weight vectors (basis vectors and pairwise sums within a weight space)
/// that never reach degree 0. Returns the dimension.
pub fn maximal_submodule_sweep(k: &KacModule) -> usize {
    let m = &k.module;
    let mut by_weight: BTreeMap<&Vec<Q>, Vec<usize>> = BTreeMap::new();
    for i in 0..m.dim() {
        by_weight.entry(&m.weights[i]).or_default().push(i);
    }
    let mut total = Echelon::new();
    for idx in by_weight.values() {
        let mut seeds: Vec<SparseVec<usize>> = idx.iter().map(|&i| SparseVec::from([(i, Q::one())])).collect();
        for (a, &i) in idx.iter().enumerate() {
            for &j in &idx[a + 1..] {
                let mut v = SparseVec::from([(i, Q::one())]);
                add_scaled(&mut v, &SparseVec::from([(j, Q::one())]), &Q::one());
                seeds.push(v);
            }
        }
        for s in seeds {
            let (_, vecs) = generate(m, s);
            let meets_top = vecs.iter().any(|v| v.keys().any(|&i| k.degree[i] == 0));
            if !meets_top {
                for v in &vecs {
                    total.insert(v);
                }
            }
        }
    }
    total.rank()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Signature;
    use crate::glreps::module::{gl0_character, gl0_natural_even};
    use crate::rational::q;

    #[test]
    fn trivial_kac_module_gl11() {
        let sig = Signature::new(1, 1);
        let k = kac_module(&gl0_character(sig, &[q(0), q(0)])).unwrap();
        assert_eq!(k.module.dim(), 2);
        assert!(k.module.bracket_failures().is_empty());
        assert!(k.module.grading_failures().is_empty());
        let l = simple_top(&k).unwrap();
        assert_eq!(l.dim(), 1);
        assert!(l.is_trivial());
        assert_eq!(maximal_submodule_sweep(&k), 1);
    }

    #[test]
    fn typicality_gl11() {
        // K(a, b) is simple exactly when a + b != 0
        let sig = Signature::new(1, 1);
        for (a, b) in [(1, 0), (2, -2), (0, 3), (-1, 1), (3, 5)] {
            let k = kac_module(&gl0_character(sig, &[q(a), q(b)])).unwrap();
            assert!(k.module.bracket_failures().is_empty());
            let l = simple_top(&k).unwrap();
            let expected = if a + b == 0 { 1 } else { 2 };
            assert_eq!(l.dim(), expected, "({a}, {b})");
            assert!(l.bracket_failures().is_empty());
            assert_eq!(2 - maximal_submodule_sweep(&k), expected);
        }
    }

    #[test]
    fn dimensions_and_brackets() {
        for sig in [Signature::new(2, 1), Signature::new(1, 2), Signature::new(2, 2)] {
            let v = gl0_natural_even(sig, &vec![q(0); sig.n]);
            let k = kac_module(&v).unwrap();
            assert_eq!(k.module.dim(), (1 << (sig.m * sig.n)) * v.dim());
            assert!(k.module.bracket_failures().is_empty(), "{sig}");
            assert!(k.module.grading_failures().is_empty());
            let l = simple_top(&k).unwrap();
            assert!(l.bracket_failures().is_empty());
            assert_eq!(k.module.dim() - l.dim(), maximal_submodule_sweep(&k), "{sig}");
        }
    }

    #[test]
    fn odd_action_rejected() {
        let sig = Signature::new(1, 1);
        let mut v = gl0_character(sig, &[q(1), q(0)]);
        v.set(GlIndex::new(0, 1), 0, 0, q(1));
        assert!(matches!(kac_module(&v), Err(Error::GradationError(_))));
    }
}
