//! Algorithms for positive definite lattices.

mod genus;
mod reduce;
mod representatives;
mod short;

pub use genus::{genus_symbol, same_genus, GenusSymbol, LocalComponent, LocalSymbol};
pub use reduce::{automorphism_group, is_isometric_definite, minkowski_canonical, reduce_basis, DefIsometry};
pub use representatives::genus_representatives;
pub use short::{short_vectors, short_vectors_bounded, vectors_in_range, vectors_of_square_and_divisibility, DEFAULT_MAX_RANK};

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::fqm::{FqmIsometry, LatticeDiscriminant, DEFAULT_ENUMERATION_BOUND};
use crate::lattice::{Lattice, LatticeVector};

/// Which vectors disqualify a lattice in [`h_filter`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum HFilterRule {
    /// square 2, or square 6 with divisibility 3
    #[default]
    RootsAndDivisibility,
    /// square 2 only
    RootsOnly,
}

/// The reason a lattice fails the filter, as an explicit vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HObstruction {
    Root(LatticeVector),
    SquareSixDivThree(LatticeVector),
}

pub fn h_obstruction(l: &Lattice, rule: HFilterRule) -> Result<Option<HObstruction>> {
    if let Some(v) = short_vectors(l, 2)?.into_iter().next() {
        return Ok(Some(HObstruction::Root(v)));
    }
    if rule == HFilterRule::RootsAndDivisibility {
        if let Some(v) = vectors_of_square_and_divisibility(l, 6, 3)?.into_iter().next() {
            return Ok(Some(HObstruction::SquareSixDivThree(v)));
        }
    }
    Ok(None)
}

/// The candidates without square-2 vectors and (by default) without vectors of
/// square 6 and divisibility 3, in their original order.
pub fn h_filter(candidates: &[Lattice], rule: HFilterRule) -> Result<Vec<Lattice>> {
    let mut out = Vec::new();
    for l in candidates {
        if h_obstruction(l, rule)?.is_none() {
            out.push(l.clone());
        }
    }
    Ok(out)
}

/// Image of O(L) -> O(A_L) for an even positive definite lattice, sorted.
pub fn disc_isometry_image(l: &Lattice) -> Result<Vec<FqmIsometry>> {
    if !l.is_even() {
        return Err(Error::OddLattice);
    }
    let disc = LatticeDiscriminant::new(l)?;
    disc.module.checked_order(DEFAULT_ENUMERATION_BOUND)?;
    let mut out = BTreeSet::new();
    for f in automorphism_group(l)? {
        out.insert(disc.induced(&f.matrix())?);
    }
    Ok(out.into_iter().collect())
}
