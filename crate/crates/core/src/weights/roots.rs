use crate::algebra::{FieldTerm, Monomial, Signature, VectorField};
use crate::linalg::{lp_feasible, rank_vectors};
use crate::rational::{q, Q};

/// An integer vector in the `epsilon` basis.
pub type Root = Vec<i64>;

/// Compositions of `total` into `parts` non-negative integers.
fn compositions(parts: usize, total: i64, out: &mut Vec<Vec<i64>>, cur: &mut Vec<i64>) {
    if cur.len() + 1 == parts {
        cur.push(total);
        out.push(cur.clone());
        cur.pop();
        return;
    }
    for k in 0..=total {
        cur.push(k);
        compositions(parts, total - k, out, cur);
        cur.pop();
    }
}

/// The roots of `W_m` of coefficient sum at most `cap`: all `sum s_j eps_j`
/// and `-eps_i + sum_{j != i} s_j eps_j` with `s_j >= 0`, without `0`.
/// Sorted.
pub fn root_set(m: usize, cap: i64) -> Vec<Root> {
    let mut out = std::collections::BTreeSet::new();
    for total in 0..=cap.max(0) {
        let mut comps = Vec::new();
        compositions(m, total, &mut comps, &mut Vec::new());
        for c in &comps {
            if total > 0 {
                out.insert(c.clone());
            }
        }
    }
    for i in 0..m {
        // coefficient sum is -1 + sum s_j, so sum s_j <= cap + 1
        for total in 0..=(cap + 1).max(0) {
            let mut comps = Vec::new();
            if m > 1 {
                compositions(m - 1, total, &mut comps, &mut Vec::new());
            } else if total == 0 {
                comps.push(Vec::new());
            }
            for c in comps {
                let mut r = Vec::with_capacity(m);
                r.extend_from_slice(&c[..i]);
                r.push(-1);
                r.extend_from_slice(&c[i..]);
                if r.iter().any(|&x| x != 0) {
                    out.insert(r);
                }
            }
        }
    }
    out.into_iter().collect()
}

fn unit(m: usize, i: usize, c: i64) -> Root {
    let mut r = vec![0; m];
    r[i] = c;
    r
}

/// `Delta'' = {eps_i - eps_j : i != j}`, sorted.
pub fn delta_double_prime(m: usize) -> Vec<Root> {
    let mut out = Vec::new();
    for i in 0..m {
        for j in 0..m {
            if i != j {
                let mut r = unit(m, i, 1);
                r[j] = -1;
                out.push(r);
            }
        }
    }
    out.sort();
    out
}

/// `Delta' = {eps_i - eps_j} ∪ {±eps_i}`, sorted.
pub fn delta_prime(m: usize) -> Vec<Root> {
    let mut out = delta_double_prime(m);
    for i in 0..m {
        out.push(unit(m, i, 1));
        out.push(unit(m, i, -1));
    }
    out.sort();
    out
}

fn columns(gens: &[Root], dim: usize) -> Vec<Vec<Q>> {
    (0..dim)
        .map(|r| gens.iter().map(|g| Q::from_integer(g[r].into())).collect())
        .collect()
}

fn target(t: &[i64]) -> Vec<Q> {
    t.iter().map(|&x| Q::from_integer(x.into())).collect()
}

/// Whether `t` lies in the `Z_+`-span of `gens ⊆ Delta'`. The vectors of
/// `Delta'` are the columns of a network matrix, hence totally unimodular,
/// so the rational cone and the integer monoid agree on integer points.
pub(crate) fn in_monoid(gens: &[Root], t: &[i64]) -> bool {
    debug_assert!(gens.iter().all(|g| g.iter().map(|x| x.abs()).sum::<i64>() <= 2));
    if t.iter().all(|&x| x == 0) {
        return true;
    }
    if gens.is_empty() {
        return false;
    }
    lp_feasible(&columns(gens, t.len()), &target(t)).is_some()
}

/// Whether `t` lies in the `Z`-span of `gens ⊆ Delta'` (again exact by
/// total unimodularity: the lattice is the rational span meets `Z^m`).
pub(crate) fn in_lattice(gens: &[Root], t: &[i64]) -> bool {
    let cols: Vec<Vec<Q>> = gens.iter().map(|g| target(g)).collect();
    if t.iter().all(|&x| x == 0) {
        return true;
    }
    let mut cand = cols.clone();
    cand.push(target(t));
    rank_vectors(&cand) == rank_vectors(&cols)
}

/// Euclidean pairing of two integer vectors.
pub fn euclid(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// `2eps1-eps3` style label for a root.
pub fn root_label(r: &[i64]) -> String {
    let mut s = String::new();
    for (i, &c) in r.iter().enumerate() {
        if c == 0 {
            continue;
        }
        if c < 0 {
            s.push('-');
        } else if !s.is_empty() {
            s.push('+');
        }
        if c.abs() != 1 {
            s.push_str(&c.abs().to_string());
        }
        s.push_str(&format!("eps{}", i + 1));
    }
    if s.is_empty() {
        s.push('0');
    }
    s
}

/// The embedding of `sl_{m+1}` into `W_m`: `d_i -> t_i d_i`,
/// `e_{eps_i - eps_j} -> t_i d_j`, `e_{eps_i} -> -t_i sum_j t_j d_j`,
/// `e_{-eps_i} -> d_i`. Labels are returned alongside the images.
pub fn sl_embedding(m: usize) -> Vec<(String, VectorField)> {
    let sig = Signature::new(m, 0);
    let t = |i: usize| Monomial::var(sig, i);
    let mut out = Vec::new();
    for i in 0..m {
        out.push((format!("d{}", i + 1), VectorField::term(sig, t(i), i)));
    }
    for i in 0..m {
        for j in 0..m {
            if i != j {
                out.push((format!("e[eps{}-eps{}]", i + 1, j + 1), VectorField::term(sig, t(i), j)));
            }
        }
    }
    for i in 0..m {
        let terms = (0..m).map(|j| {
            let (_, mono) = t(i).mul(&t(j)).expect("even variables commute");
            (FieldTerm::new(mono, j), q(-1))
        });
        out.push((format!("e[eps{}]", i + 1), VectorField::from_terms(sig, terms)));
    }
    for i in 0..m {
        out.push((
            format!("e[-eps{}]", i + 1),
            VectorField::term(sig, Monomial::one(m), i),
        ));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{Echelon, SparseVec};

    #[test]
    fn root_set_small() {
        assert_eq!(root_set(1, 3), vec![vec![-1], vec![1], vec![2], vec![3]]);
        assert_eq!(delta_prime(2).len(), 6);
        assert!(root_set(3, 2).iter().all(|r| r.iter().any(|&x| x != 0)));
        for r in root_set(2, 3) {
            assert!(r.iter().sum::<i64>() <= 3);
            assert!(r.iter().filter(|&&x| x < 0).count() <= 1);
            assert!(r.iter().all(|&x| x >= -1));
        }
        // Delta' is contained in Delta
        let d = root_set(3, 1);
        assert!(delta_prime(3).iter().all(|r| d.contains(r)));
    }

    #[test]
    fn sl2_relation() {
        let e = sl_embedding(1);
        let get = |l: &str| e.iter().find(|(k, _)| k == l).unwrap().1.clone();
        let br = get("e[-eps1]").bracket(&get("e[eps1]")).unwrap();
        assert_eq!(br, get("d1").scale(&q(-2)));
    }

    fn to_sparse(v: &VectorField) -> SparseVec<FieldTerm> {
        v.terms.clone()
    }

    #[test]
    fn sl3_closes() {
        let e = sl_embedding(2);
        assert_eq!(e.len(), 8);
        let mut span = Echelon::new();
        for (_, v) in &e {
            assert!(span.insert(&to_sparse(v)));
        }
        for (_, a) in &e {
            for (_, b) in &e {
                let br = a.bracket(b).unwrap();
                assert!(span.contains(&to_sparse(&br)));
            }
        }
    }

    #[test]
    fn monoid_and_lattice() {
        let g = vec![vec![1, -1], vec![0, 1]];
        assert!(in_monoid(&g, &[1, 0]));
        assert!(in_monoid(&g, &[2, 3]));
        assert!(!in_monoid(&g, &[-1, 0]));
        assert!(in_lattice(&[vec![1, -1]], &[-3, 3]));
        assert!(!in_lattice(&[vec![1, -1]], &[1, 0]));
        // brute-force oracle for the monoid over a box
        let gens = vec![vec![1, -1, 0], vec![0, 1, -1], vec![-1, 0, 0]];
        let mut reach = std::collections::BTreeSet::new();
        for a in 0..8i64 {
            for b in 0..8i64 {
                for c in 0..8i64 {
                    reach.insert(vec![a - c, b - a, -b]);
                }
            }
        }
        for x in -2..=2 {
            for y in -2..=2 {
                for z in -2..=2 {
                    let t = vec![x, y, z];
                    assert_eq!(in_monoid(&gens, &t), reach.contains(&t), "{t:?}");
                }
            }
        }
    }

    #[test]
    fn labels() {
        assert_eq!(root_label(&[1, -1, 0]), "eps1-eps2");
        assert_eq!(root_label(&[-1, 2]), "-eps1+2eps2");
    }
}
