//! Exact enumeration of short vectors in positive definite lattices.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::lattice::{Lattice, LatticeVector};
use crate::linalg::isqrt;

pub const DEFAULT_MAX_RANK: usize = 8;

/// Q(x) = sum_i d_i (x_i + sum_{j>i} mu_ij x_j)^2.
struct Decomposition {
    d: Vec<BigRational>,
    mu: Vec<Vec<BigRational>>,
}

fn decompose(l: &Lattice) -> Result<Decomposition> {
    let n = l.rank();
    let mut a: Vec<Vec<BigRational>> =
        (0..n).map(|i| (0..n).map(|j| BigRational::from_integer(l.gram()[(i, j)].clone())).collect()).collect();
    let mut d = Vec::with_capacity(n);
    let mut mu = vec![vec![BigRational::zero(); n]; n];
    for i in 0..n {
        let piv = a[i][i].clone();
        if !piv.is_positive() {
            return Err(Error::NotPositiveDefinite);
        }
        for j in i + 1..n {
            mu[i][j] = &a[i][j] / &piv;
        }
        for j in i + 1..n {
            for k in i + 1..n {
                let t = &a[i][j] * &a[i][k] / &piv;
                a[j][k] -= t;
            }
        }
        d.push(piv);
    }
    Ok(Decomposition { d, mu })
}

pub(crate) fn check_definite(l: &Lattice, max_rank: usize) -> Result<()> {
    if l.rank() == 0 || l.rank() > max_rank {
        return Err(Error::RankBound { rank: l.rank(), min: 1, max: max_rank });
    }
    if !l.is_positive_definite() {
        return Err(Error::NotPositiveDefinite);
    }
    Ok(())
}

/// Every nonzero v with lo <= v^2 <= hi, both signs, with their norms.
pub fn vectors_in_range(l: &Lattice, lo: &BigInt, hi: &BigInt, max_rank: usize) -> Result<Vec<(Vec<i64>, BigInt)>> {
    check_definite(l, max_rank)?;
    let n = l.rank();
    let dec = decompose(l)?;
    let hi_r = BigRational::from_integer(hi.clone());
    let mut out = Vec::new();
    let mut x = vec![0i64; n];
    enumerate_level(&dec, n, &mut x, &hi_r, &mut out);
    let mut res = Vec::new();
    for v in out {
        if v.iter().all(|&c| c == 0) {
            continue;
        }
        let norm = l.norm(&LatticeVector::new(v.clone()))?;
        if &norm >= lo && &norm <= hi {
            res.push((v, norm));
        }
    }
    res.sort();
    Ok(res)
}

fn enumerate_level(dec: &Decomposition, level: usize, x: &mut [i64], budget: &BigRational, out: &mut Vec<Vec<i64>>) {
    if level == 0 {
        out.push(x.to_vec());
        return;
    }
    let i = level - 1;
    let n = x.len();
    let mut c = BigRational::zero();
    for j in i + 1..n {
        if x[j] != 0 {
            c += &dec.mu[i][j] * BigRational::from_integer(BigInt::from(x[j]));
        }
    }
    // need d_i (x_i + c)^2 <= budget
    let r = budget / &dec.d[i];
    let s = isqrt(&r.floor().to_integer()) + BigInt::from(1);
    let lo = (-&c - BigRational::from_integer(s.clone())).ceil().to_integer();
    let hi = (-&c + BigRational::from_integer(s)).floor().to_integer();
    let (lo, hi) = (lo.to_i64().expect("coordinate bound"), hi.to_i64().expect("coordinate bound"));
    for xi in lo..=hi {
        let y = BigRational::from_integer(BigInt::from(xi)) + &c;
        let used = &dec.d[i] * &y * &y;
        if used > *budget {
            continue;
        }
        x[i] = xi;
        let rest = budget - used;
        enumerate_level(dec, i, x, &rest, out);
    }
    x[i] = 0;
}

fn canonical_sign(v: &[i64]) -> bool {
    v.iter().find(|&&c| c != 0).is_some_and(|&c| c > 0)
}

/// All v with v^2 = m, one per sign pair (first nonzero coordinate positive).
pub fn short_vectors(l: &Lattice, m: i64) -> Result<Vec<LatticeVector>> {
    short_vectors_bounded(l, m, DEFAULT_MAX_RANK)
}

pub fn short_vectors_bounded(l: &Lattice, m: i64, max_rank: usize) -> Result<Vec<LatticeVector>> {
    let m = BigInt::from(m);
    Ok(vectors_in_range(l, &m, &m, max_rank)?
        .into_iter()
        .filter(|(v, _)| canonical_sign(v))
        .map(|(v, _)| LatticeVector::new(v))
        .collect())
}

/// Vectors with v^2 = m and divisibility exactly d, one per sign pair.
pub fn vectors_of_square_and_divisibility(l: &Lattice, m: i64, d: i64) -> Result<Vec<LatticeVector>> {
    let d = BigInt::from(d);
    let mut out = Vec::new();
    for v in short_vectors(l, m)? {
        if l.divisibility(&v)? == d {
            out.push(v);
        }
    }
    Ok(out)
}
