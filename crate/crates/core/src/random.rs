//! Seeded generators of random lattices and sublattices.

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::lattice::{Lattice, Sublattice};
use crate::linalg::IntMatrix;

pub const DEFAULT_SEED: u64 = 20_240_917;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_matrix<R: Rng>(rng: &mut R, rows: usize, cols: usize, bound: i64) -> IntMatrix {
    let data: Vec<Vec<i64>> = (0..rows).map(|_| (0..cols).map(|_| rng.gen_range(-bound..=bound)).collect()).collect();
    IntMatrix::from_rows(&data)
}

/// A random nondegenerate even lattice with off-diagonal entries in
/// [-bound, bound]. Definite lattices are positive definite.
pub fn random_even_lattice<R: Rng>(rng: &mut R, rank: usize, bound: i64, definite: bool) -> Lattice {
    loop {
        let mut g = vec![vec![0i64; rank]; rank];
        for i in 0..rank {
            for j in i + 1..rank {
                let x = rng.gen_range(-bound..=bound);
                g[i][j] = x;
                g[j][i] = x;
            }
            g[i][i] = if definite {
                2 * rng.gen_range(1..=bound.max(1) + rank as i64)
            } else {
                2 * rng.gen_range(-bound..=bound)
            };
        }
        let Ok(l) = Lattice::from_rows(&g) else { continue };
        if !definite || l.is_positive_definite() {
            return l;
        }
    }
}

/// Largest |det| of the sublattice and its complement drawn by
/// [`random_primitive_sublattice`].
pub const MAX_SUBLATTICE_DET: i64 = 1_000_000;

/// A random primitive sublattice of rank r whose lattice and complement are
/// both nondegenerate with |det| at most [`MAX_SUBLATTICE_DET`].
pub fn random_primitive_sublattice<R: Rng>(rng: &mut R, l: &Lattice, r: usize) -> Sublattice {
    loop {
        let basis = random_matrix(rng, r, l.rank(), 2);
        let Ok(sub) = l.sublattice(basis) else { continue };
        let sub = sub.saturation();
        let comp = sub.orthogonal_complement();
        let small = |s: &Sublattice| {
            s.rank() == 0 || s.lattice().is_ok_and(|m| m.discriminant() <= BigInt::from(MAX_SUBLATTICE_DET))
        };
        if small(&sub) && small(&comp) {
            return sub;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic() {
        let a = random_even_lattice(&mut rng(7), 3, 4, true);
        let b = random_even_lattice(&mut rng(7), 3, 4, true);
        assert_eq!(a, b);
        assert!(a.is_even() && a.is_positive_definite());
    }

    #[test]
    fn sublattices_are_primitive() {
        let mut r = rng(1);
        for _ in 0..20 {
            let l = random_even_lattice(&mut r, 4, 3, false);
            let s = random_primitive_sublattice(&mut r, &l, 2);
            assert!(s.is_primitive());
        }
    }
}
