// Invariants of catalog lattices and the complement of h^2 in the cubic
// fourfold lattice.
//
// ```bash
// cargo run --example lattice_invariants
// ```

use fmlattice::catalog;
use fmlattice::fqm::discriminant_form;
use fmlattice::{IntMatrix, Lattice, Result};

/// name, rank, signature, disc, even
pub type Row = (String, usize, (usize, usize), String, bool);

pub struct Summary {
    pub rows: Vec<Row>,
    /// rank, signature, disc and parity of (h^2)^⊥ in Λ_cub
    pub primitive: (usize, (usize, usize), String, bool),
    pub primitive_form: String,
}

fn describe(name: &str, l: &Lattice) -> Row {
    (name.to_string(), l.rank(), l.signature(), l.discriminant().to_string(), l.is_even())
}

pub fn run_example() -> Result<Summary> {
    let mut rows = Vec::new();
    for name in ["U", "A2", "E8", "Lambda_cub", "Lambda0_cub", "Lambda_tilde", "Lambda_K3", "Mukai"] {
        rows.push(describe(name, &catalog::catalog(name, &[])?));
    }
    rows.push(describe("L_10", &catalog::l_n(10)?));
    rows.push(describe("L_2,9", &catalog::l_ab(2, 9)?));

    let cub = catalog::lambda_cub();
    let h2 = cub.sublattice(IntMatrix::from_rows(&[catalog::lambda_cub_h2()]))?;
    let prim = h2.orthogonal_complement().lattice()?;
    Ok(Summary {
        rows,
        primitive: (prim.rank(), prim.signature(), prim.discriminant().to_string(), prim.is_even()),
        primitive_form: discriminant_form(&prim)?.to_string(),
    })
}

#[allow(dead_code)]
fn main() -> Result<()> {
    let s = run_example()?;
    println!("{:<14} {:>4} {:>9} {:>6}  parity", "lattice", "rank", "signature", "disc");
    for (name, rank, sig, disc, even) in &s.rows {
        println!("{name:<14} {rank:>4} {:>9} {disc:>6}  {}", format!("({},{})", sig.0, sig.1), if *even { "even" } else { "odd" });
    }
    let (rank, sig, disc, even) = &s.primitive;
    println!("(h^2)^perp in Lambda_cub: rank {rank}, signature {sig:?}, disc {disc}, even {even}, form {}", s.primitive_form);
    Ok(())
}
