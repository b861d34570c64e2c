//! Reduction, canonical forms, isometries and automorphisms of definite lattices.

use num_bigint::BigInt;
use num_integer::Integer;

use super::short::{check_definite, vectors_in_range};
use crate::error::{Error, Result};
use crate::lattice::Lattice;
use crate::linalg::{unimodular_inverse, IntMatrix};

/// An integral matrix P with P^T G_source P = G_target. Column j of P holds the
/// source coordinates of the image of the j-th target basis vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DefIsometry {
    matrix: Vec<Vec<i64>>,
}

impl DefIsometry {
    pub fn new(source: &Lattice, target: &Lattice, p: IntMatrix) -> Result<Self> {
        if p.rows() != source.rank() || p.cols() != target.rank() {
            return Err(Error::DimensionMismatch("isometry matrix".into()));
        }
        if p.transpose().mul(source.gram())?.mul(&p)? != *target.gram() {
            return Err(Error::InvalidParameters("matrix does not intertwine the Gram matrices".into()));
        }
        Ok(DefIsometry { matrix: p.to_i64_rows()? })
    }

    fn from_rows_unchecked(matrix: Vec<Vec<i64>>) -> Self {
        DefIsometry { matrix }
    }

    pub fn matrix(&self) -> IntMatrix {
        IntMatrix::from_rows(&self.matrix)
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.matrix
    }
}

fn gram_i64(l: &Lattice) -> Result<Vec<Vec<i64>>> {
    l.gram_i64()
}

fn dot(g: &[Vec<i64>], x: &[i64], y: &[i64]) -> i128 {
    let mut s = 0i128;
    for (i, &xi) in x.iter().enumerate() {
        if xi == 0 {
            continue;
        }
        for (j, &yj) in y.iter().enumerate() {
            s += g[i][j] as i128 * xi as i128 * yj as i128;
        }
    }
    s
}

/// Greedy pairwise reduction. Returns T (columns = new basis) and T^T G T.
pub fn reduce_basis(l: &Lattice) -> Result<(IntMatrix, Lattice)> {
    let g = gram_i64(l)?;
    let n = l.rank();
    let mut basis: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect();
    loop {
        let mut changed = false;
        basis.sort_by_key(|b| (dot(&g, b, b), b.clone()));
        for i in 0..n {
            for j in 0..n {
                if i == j {
                    continue;
                }
                let nj = dot(&g, &basis[j], &basis[j]);
                let ij = dot(&g, &basis[i], &basis[j]);
                // nearest integer to ij / nj
                let r = num_integer::Integer::div_floor(&(2 * ij + nj), &(2 * nj));
                if r != 0 && r * r * nj - 2 * r * ij < 0 {
                    let r = r as i64;
                    let bj = basis[j].clone();
                    for (a, b) in basis[i].iter_mut().zip(&bj) {
                        *a -= r * b;
                    }
                    changed = true;
                }
            }
        }
        if !changed {
            break;
        }
    }
    basis.sort_by_key(|b| (dot(&g, b, b), b.clone()));
    let t = IntMatrix::from_rows(&basis).transpose();
    let red = l.transform(&t)?;
    Ok((t, red))
}

fn gcd_i64(v: &[i64]) -> i64 {
    v.iter().fold(0i64, |a, &b| a.gcd(&b))
}

/// Whether the rows extend to a basis of Z^n (n <= 3).
fn extends_to_basis(rows: &[&Vec<i64>], n: usize) -> bool {
    match rows.len() {
        1 => gcd_i64(rows[0]) == 1,
        2 => {
            let (a, b) = (rows[0], rows[1]);
            let mut minors = Vec::new();
            for i in 0..n {
                for j in i + 1..n {
                    minors.push(a[i] * b[j] - a[j] * b[i]);
                }
            }
            gcd_i64(&minors) == 1
        }
        3 => {
            let m = rows;
            let det = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
                + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
            det.abs() == 1
        }
        _ => false,
    }
}

/// Canonical Gram matrix of a positive definite lattice of rank at most 3:
/// the diagonal is lexicographically minimal over all bases (the successive
/// minima), and among bases with that diagonal the off-diagonal entries
/// (g12, g13, g23) are lexicographically maximal.
pub fn minkowski_canonical(l: &Lattice) -> Result<IntMatrix> {
    check_definite(l, 3)?;
    let n = l.rank();
    let (_, red) = reduce_basis(l)?;
    let g = gram_i64(l)?;
    let bound = (0..n).map(|i| red.gram()[(i, i)].clone()).max().expect("rank >= 1");
    let vecs: Vec<(Vec<i64>, i128)> = vectors_in_range(l, &BigInt::from(1), &bound, 3)?
        .into_iter()
        .map(|(v, _)| {
            let nv = dot(&g, &v, &v);
            (v, nv)
        })
        .collect();
    let mut sorted = vecs;
    sorted.sort_by_key(|(v, nv)| (*nv, v.clone()));
    let mut best: Option<(Vec<i128>, Vec<i128>)> = None;
    let mut chosen: Vec<usize> = Vec::new();
    search_canonical(&g, &sorted, n, &mut chosen, &mut best);
    let (diag, off) = best.expect("a reduced basis always exists");
    let mut m = vec![vec![0i64; n]; n];
    for i in 0..n {
        m[i][i] = diag[i] as i64;
    }
    let mut t = 0;
    for i in 0..n {
        for j in i + 1..n {
            m[i][j] = off[t] as i64;
            m[j][i] = off[t] as i64;
            t += 1;
        }
    }
    Ok(IntMatrix::from_rows(&m))
}

fn search_canonical(
    g: &[Vec<i64>],
    vecs: &[(Vec<i64>, i128)],
    n: usize,
    chosen: &mut Vec<usize>,
    best: &mut Option<(Vec<i128>, Vec<i128>)>,
) {
    let k = chosen.len();
    if k == n {
        let diag: Vec<i128> = chosen.iter().map(|&i| vecs[i].1).collect();
        let mut off = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                off.push(dot(g, &vecs[chosen[i]].0, &vecs[chosen[j]].0));
            }
        }
        let better = match best {
            None => true,
            Some((bd, bo)) => diag < *bd || (diag == *bd && off > *bo),
        };
        if better {
            *best = Some((diag, off));
        }
        return;
    }
    let prefix: Vec<i128> = chosen.iter().map(|&i| vecs[i].1).collect();
    for (idx, (v, nv)) in vecs.iter().enumerate() {
        if let Some((bd, _)) = best {
            // prune: the diagonal can no longer beat the best one
            let mut cand = prefix.clone();
            cand.push(*nv);
            if cand > bd[..=k].to_vec() {
                break;
            }
        }
        if k > 0 && *nv < vecs[chosen[k - 1]].1 {
            continue;
        }
        // overall sign of the basis does not matter
        if k == 0 && v.iter().find(|&&c| c != 0).is_some_and(|&c| c < 0) {
            continue;
        }
        let mut rows: Vec<&Vec<i64>> = chosen.iter().map(|&i| &vecs[i].0).collect();
        rows.push(v);
        if !extends_to_basis(&rows, n) {
            continue;
        }
        chosen.push(idx);
        search_canonical(g, vecs, n, chosen, best);
        chosen.pop();
    }
}

/// All (or at most `limit`) integral P with P^T G_source P = target_gram,
/// found by assigning images of the target basis among source vectors of the
/// right norms.
fn intertwiners(source: &Lattice, target_gram: &[Vec<i64>], limit: usize, max_rank: usize) -> Result<Vec<Vec<Vec<i64>>>> {
    let n = target_gram.len();
    let g = gram_i64(source)?;
    let norms: Vec<i64> = (0..n).map(|i| target_gram[i][i]).collect();
    let lo = norms.iter().min().copied().unwrap_or(1);
    let hi = norms.iter().max().copied().unwrap_or(1);
    let all = vectors_in_range(source, &BigInt::from(lo), &BigInt::from(hi), max_rank)?;
    let candidates: Vec<Vec<(Vec<i64>, Vec<i128>)>> = norms
        .iter()
        .map(|&m| {
            all.iter()
                .filter(|(_, nv)| *nv == BigInt::from(m))
                .map(|(v, _)| {
                    let gv: Vec<i128> = (0..n).map(|i| (0..n).map(|j| g[i][j] as i128 * v[j] as i128).sum()).collect();
                    (v.clone(), gv)
                })
                .collect()
        })
        .collect();
    let mut out = Vec::new();
    let mut chosen: Vec<usize> = Vec::new();
    fn rec(
        i: usize,
        candidates: &[Vec<(Vec<i64>, Vec<i128>)>],
        target: &[Vec<i64>],
        chosen: &mut Vec<usize>,
        out: &mut Vec<Vec<Vec<i64>>>,
        limit: usize,
    ) {
        if out.len() >= limit {
            return;
        }
        let n = target.len();
        if i == n {
            // columns are the chosen vectors
            let mut p = vec![vec![0i64; n]; n];
            for (col, &c) in chosen.iter().enumerate() {
                for (row, &x) in candidates[col][c].0.iter().enumerate() {
                    p[row][col] = x;
                }
            }
            out.push(p);
            return;
        }
        for (idx, (v, _)) in candidates[i].iter().enumerate() {
            let ok = (0..i).all(|j| {
                let gw = &candidates[j][chosen[j]].1;
                v.iter().zip(gw).map(|(&a, b)| a as i128 * b).sum::<i128>() == target[i][j] as i128
            });
            if ok {
                chosen.push(idx);
                rec(i + 1, candidates, target, chosen, out, limit);
                chosen.pop();
            }
        }
    }
    rec(0, &candidates, target_gram, &mut chosen, &mut out, limit);
    Ok(out)
}

/// A witness P with P^T G1 P = G2, if the lattices are isometric.
pub fn is_isometric_definite(l1: &Lattice, l2: &Lattice) -> Result<Option<DefIsometry>> {
    check_definite(l1, super::short::DEFAULT_MAX_RANK)?;
    check_definite(l2, super::short::DEFAULT_MAX_RANK)?;
    if l1.rank() != l2.rank() || l1.det() != l2.det() {
        return Ok(None);
    }
    let (t2, r2) = reduce_basis(l2)?;
    let found = intertwiners(l1, &gram_i64(&r2)?, 1, super::short::DEFAULT_MAX_RANK)?;
    let Some(q) = found.into_iter().next() else { return Ok(None) };
    let p = IntMatrix::from_rows(&q).mul(&unimodular_inverse(&t2)?)?;
    Ok(Some(DefIsometry::new(l1, l2, p)?))
}

/// O(L) for positive definite L of rank at most 4, sorted.
pub fn automorphism_group(l: &Lattice) -> Result<Vec<DefIsometry>> {
    check_definite(l, 4)?;
    let (t, r) = reduce_basis(l)?;
    let tinv = unimodular_inverse(&t)?;
    let sols = intertwiners(&r, &gram_i64(&r)?, usize::MAX, 4)?;
    let mut out = Vec::with_capacity(sols.len());
    for s in sols {
        let p = t.mul(&IntMatrix::from_rows(&s))?.mul(&tinv)?;
        out.push(DefIsometry::from_rows_unchecked(p.to_i64_rows()?));
    }
    out.sort();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lat(rows: &[&[i64]]) -> Lattice {
        Lattice::from_rows(rows).unwrap()
    }

    #[test]
    fn canonical_examples() {
        assert_eq!(minkowski_canonical(&lat(&[&[126, 16], &[16, 4]])).unwrap(), IntMatrix::from_rows(&[[4, 0], [0, 62]]));
        assert_eq!(minkowski_canonical(&lat(&[&[7]])).unwrap(), IntMatrix::from_rows(&[[7]]));
        let a = minkowski_canonical(&lat(&[&[10, -3], &[-3, 24]])).unwrap();
        assert_eq!(a, IntMatrix::from_rows(&[[10, 3], [3, 24]]));
        assert_eq!(a, minkowski_canonical(&lat(&[&[24, -3], &[-3, 10]])).unwrap());
        assert!(matches!(minkowski_canonical(&crate::catalog::e8()), Err(Error::RankBound { .. })));
    }

    #[test]
    fn isometry_witnesses() {
        let a = lat(&[&[126, 16], &[16, 4]]);
        let b = lat(&[&[62, 0], &[0, 4]]);
        let w = is_isometric_definite(&a, &b).unwrap().unwrap();
        assert_eq!(w.matrix().transpose().mul(a.gram()).unwrap().mul(&w.matrix()).unwrap(), *b.gram());
        let n = lat(&[&[24, -3], &[-3, 10]]);
        let np = lat(&[&[6, -3], &[-3, 40]]);
        assert!(is_isometric_definite(&n, &np).unwrap().is_none());
    }

    #[test]
    fn automorphism_orders() {
        assert_eq!(automorphism_group(&lat(&[&[24, -3], &[-3, 10]])).unwrap().len(), 2);
        assert_eq!(automorphism_group(&lat(&[&[14, 2], &[2, 18]])).unwrap().len(), 2);
        let a2 = lat(&[&[2, -1], &[-1, 2]]);
        let g = automorphism_group(&a2).unwrap();
        assert_eq!(g.len(), 12);
        for f in &g {
            let p = f.matrix();
            assert_eq!(p.transpose().mul(a2.gram()).unwrap().mul(&p).unwrap(), *a2.gram());
        }
    }
}
