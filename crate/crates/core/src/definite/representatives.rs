//! Enumeration of genera of binary and ternary positive definite lattices.

use std::collections::BTreeMap;

use num_traits::ToPrimitive;

use super::genus::genus_symbol;
use super::reduce::minkowski_canonical;
use crate::error::{Error, Result};
use crate::lattice::Lattice;
use crate::linalg::IntMatrix;

fn canonical_key(m: &IntMatrix) -> Vec<i64> {
    m.to_i64_rows().expect("small entries").concat()
}

/// One lattice per isometry class in the genus of `l`, each given by its
/// canonical Gram matrix and sorted by it.
pub fn genus_representatives(l: &Lattice) -> Result<Vec<Lattice>> {
    if !l.is_positive_definite() {
        return Err(Error::NotPositiveDefinite);
    }
    let det = l.det().to_i64().ok_or_else(|| Error::Overflow("determinant too large to enumerate".into()))?;
    let even = l.is_even();
    let target = genus_symbol(l);
    let mut found: BTreeMap<Vec<i64>, Lattice> = BTreeMap::new();
    let mut consider = |rows: Vec<Vec<i64>>| -> Result<()> {
        let cand = Lattice::from_rows(&rows)?;
        if cand.is_even() != even || !cand.is_positive_definite() || genus_symbol(&cand) != target {
            return Ok(());
        }
        let canon = minkowski_canonical(&cand)?;
        found.entry(canonical_key(&canon)).or_insert(Lattice::new(canon)?);
        Ok(())
    };
    match l.rank() {
        1 => consider(vec![vec![det]])?,
        2 => {
            // 0 <= 2b <= a <= c, ac - b^2 = det, so 3a^2 <= 4 det
            let mut a = 1;
            while 3 * a * a <= 4 * det {
                for b in 0..=a / 2 {
                    let num = det + b * b;
                    if num % a == 0 && num / a >= a {
                        consider(vec![vec![a, b], vec![b, num / a]])?;
                    }
                }
                a += 1;
            }
        }
        3 => {
            // a <= b <= c, 2|off| <= the smaller diagonal, abc <= 2 det
            let mut a = 1;
            while a * a * a <= 2 * det {
                let mut b = a;
                while a * b * b <= 2 * det {
                    for f12 in -a / 2..=a / 2 {
                        let m12 = a * b - f12 * f12;
                        if m12 <= 0 {
                            continue;
                        }
                        for f13 in -a / 2..=a / 2 {
                            for f23 in -b / 2..=b / 2 {
                                if 2 * f12.abs() > a || 2 * f13.abs() > a || 2 * f23.abs() > b {
                                    continue;
                                }
                                let num = det - 2 * f12 * f13 * f23 + a * f23 * f23 + b * f13 * f13;
                                if num % m12 != 0 {
                                    continue;
                                }
                                let c = num / m12;
                                if c < b || a * b * c > 2 * det {
                                    continue;
                                }
                                consider(vec![vec![a, f12, f13], vec![f12, b, f23], vec![f13, f23, c]])?;
                            }
                        }
                    }
                    b += 1;
                }
                a += 1;
            }
        }
        r => return Err(Error::RankBound { rank: r, min: 1, max: 3 }),
    }
    Ok(found.into_values().collect())
}
