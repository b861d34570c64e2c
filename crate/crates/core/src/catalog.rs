//! Named lattices.
//!
//! The E8 Gram matrix uses the Bourbaki numbering of the Dynkin diagram:
//! the chain 1-3-4-5-6-7-8 with node 2 attached to node 4.

use crate::error::{Error, Result};
use crate::lattice::Lattice;

/// Catalog identifiers accepted by [`catalog`].
pub const NAMES: &[&str] = &[
    "U",
    "A2",
    "E8",
    "scalar",
    "Lambda_cub",
    "Lambda0_cub",
    "Lambda_tilde",
    "Lambda_K3",
    "Mukai",
    "L_n",
    "L_ab",
    "two_planes",
    "pfaffian",
];

pub fn hyperbolic_plane() -> Lattice {
    Lattice::from_rows(&[[0, 1], [1, 0]]).expect("U")
}

pub fn a2() -> Lattice {
    Lattice::from_rows(&[[2, -1], [-1, 2]]).expect("A2")
}

pub fn e8() -> Lattice {
    let edges = [(1, 3), (3, 4), (4, 5), (5, 6), (6, 7), (7, 8), (2, 4)];
    let mut g = [[0i64; 8]; 8];
    for (i, row) in g.iter_mut().enumerate() {
        row[i] = 2;
    }
    for (a, b) in edges {
        g[a - 1][b - 1] = -1;
        g[b - 1][a - 1] = -1;
    }
    Lattice::from_rows(&g).expect("E8")
}

/// The rank-one lattice ⟨n⟩.
pub fn scalar(n: i64) -> Result<Lattice> {
    Lattice::from_rows(&[[n]])
}

fn repeat(l: &Lattice, k: usize) -> Lattice {
    Lattice::direct_sum_all(std::iter::repeat_n(l, k))
}

/// E8^2 ⊕ U^2 ⊕ ⟨1⟩^3, signature (21, 2). The square of the hyperplane class
/// is the sum of the three ⟨1⟩ basis vectors, i.e. the last three coordinates.
pub fn lambda_cub() -> Lattice {
    let one = scalar(1).expect("<1>");
    Lattice::direct_sum_all([&repeat(&e8(), 2), &repeat(&hyperbolic_plane(), 2), &repeat(&one, 3)])
}

/// Coordinates of h² in [`lambda_cub`].
pub fn lambda_cub_h2() -> Vec<i64> {
    let mut v = vec![0; 23];
    v[20] = 1;
    v[21] = 1;
    v[22] = 1;
    v
}

/// E8^2 ⊕ U^2 ⊕ A2.
pub fn lambda0_cub() -> Lattice {
    Lattice::direct_sum_all([&repeat(&e8(), 2), &repeat(&hyperbolic_plane(), 2), &a2()])
}

/// U^4 ⊕ E8^2.
pub fn lambda_tilde() -> Lattice {
    Lattice::direct_sum_all([&repeat(&hyperbolic_plane(), 4), &repeat(&e8(), 2)])
}

/// U^3 ⊕ E8(-1)^2.
pub fn lambda_k3() -> Lattice {
    let e8m = e8().rescale(-1).expect("E8(-1)");
    Lattice::direct_sum_all([&repeat(&hyperbolic_plane(), 3), &repeat(&e8m, 2)])
}

/// H^0 ⊕ H^4 ⊕ H^2 with pairing (r, l, s)·(r', l', s') = l·l' - r s' - r' s.
/// The degree-0/degree-4 part is a hyperbolic plane, so the result is U ⊕ Λ_K3.
pub fn mukai() -> Lattice {
    let u = Lattice::from_rows(&[[0, -1], [-1, 0]]).expect("U");
    u.direct_sum(&lambda_k3())
}

pub fn l_n(n: i64) -> Result<Lattice> {
    let l = Lattice::from_rows(&[[3, 1, 1], [1, 3, 0], [1, 0, n]])?;
    if !l.is_positive_definite() {
        return Err(Error::InvalidParameters(format!("L_n is not positive definite for n = {n}")));
    }
    Ok(l)
}

pub fn l_ab(a: i64, b: i64) -> Result<Lattice> {
    let l = Lattice::from_rows(&[[14, a], [a, 2 * b]])
        .map_err(|_| Error::InvalidParameters(format!("L_ab is degenerate for (a, b) = ({a}, {b})")))?;
    if !l.is_positive_definite() {
        return Err(Error::InvalidParameters(format!("L_ab is not positive definite for (a, b) = ({a}, {b})")));
    }
    Ok(l)
}

pub fn two_planes() -> Lattice {
    l_n(3).expect("L_3")
}

/// ⟨42⟩.
pub fn pfaffian_complement() -> Lattice {
    scalar(42).expect("<42>")
}

fn arity(name: &str, params: &[i64], n: usize) -> Result<()> {
    if params.len() != n {
        return Err(Error::InvalidParameters(format!("`{name}` takes {n} parameter(s), got {}", params.len())));
    }
    Ok(())
}

/// Look up a named lattice.
pub fn catalog(name: &str, params: &[i64]) -> Result<Lattice> {
    let fixed = |l: Lattice| -> Result<Lattice> {
        arity(name, params, 0)?;
        Ok(l)
    };
    match name {
        "U" => fixed(hyperbolic_plane()),
        "A2" => fixed(a2()),
        "E8" => fixed(e8()),
        "Lambda_cub" => fixed(lambda_cub()),
        "Lambda0_cub" => fixed(lambda0_cub()),
        "Lambda_tilde" => fixed(lambda_tilde()),
        "Lambda_K3" => fixed(lambda_k3()),
        "Mukai" => fixed(mukai()),
        "two_planes" => fixed(two_planes()),
        "pfaffian" => fixed(pfaffian_complement()),
        "scalar" => {
            arity(name, params, 1)?;
            scalar(params[0]).map_err(|_| Error::InvalidParameters("⟨0⟩ is degenerate".into()))
        }
        "L_n" => {
            arity(name, params, 1)?;
            l_n(params[0])
        }
        "L_ab" => {
            arity(name, params, 2)?;
            l_ab(params[0], params[1])
        }
        _ => Err(Error::UnknownCatalog(name.to_string())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::LatticeVector;
    use num_bigint::BigInt;
    use crate::linalg::IntMatrix;

    #[test]
    fn e8_is_even_unimodular() {
        let e = e8();
        assert!(e.is_even() && e.is_unimodular());
        assert_eq!(e.signature(), (8, 0));
    }

    #[test]
    fn large_lattices() {
        let l0 = lambda0_cub();
        assert_eq!((l0.rank(), l0.signature()), (22, (20, 2)));
        assert_eq!(l0.discriminant(), BigInt::from(3));
        let lt = lambda_tilde();
        assert_eq!((lt.rank(), lt.signature(), lt.is_unimodular()), (24, (20, 4), true));
        let k3 = lambda_k3();
        assert_eq!((k3.rank(), k3.signature(), k3.is_even()), (22, (3, 19), true));
        assert_eq!(mukai().signature(), (4, 20));
        let lc = lambda_cub();
        assert_eq!((lc.rank(), lc.signature(), lc.is_even()), (23, (21, 2), false));
    }

    #[test]
    fn h2_complement_in_lambda_cub() {
        let lc = lambda_cub();
        let h2 = LatticeVector::new(lambda_cub_h2());
        assert_eq!(lc.norm(&h2).unwrap(), BigInt::from(3));
        let s = lc.sublattice(IntMatrix::from_rows(&[lambda_cub_h2()])).unwrap();
        let t = s.orthogonal_complement().lattice().unwrap();
        assert_eq!((t.rank(), t.signature(), t.is_even()), (22, (20, 2), true));
        assert_eq!(t.discriminant(), BigInt::from(3));
    }

    #[test]
    fn families() {
        assert_eq!(catalog("L_n", &[3]).unwrap().discriminant(), BigInt::from(21));
        assert_eq!(catalog("L_n", &[10]).unwrap().discriminant(), BigInt::from(77));
        assert_eq!(catalog("pfaffian", &[]).unwrap().discriminant(), BigInt::from(42));
        assert_eq!(catalog("L_ab", &[2, 9]).unwrap().discriminant(), BigInt::from(248));
        assert!(matches!(catalog("L_ab", &[14, 1]), Err(Error::InvalidParameters(_))));
        assert!(matches!(catalog("nope", &[]), Err(Error::UnknownCatalog(_))));
        assert!(matches!(catalog("L_n", &[]), Err(Error::InvalidParameters(_))));
    }
}
