// Gluing data of primitive sublattices and overlattices from isotropic
// subgroups.
//
// ```bash
// cargo run --example gluing
// ```

use fmlattice::catalog;
use fmlattice::definite::is_isometric_definite;
use fmlattice::fqm::discriminant_form;
use fmlattice::gluing::{check_gluing_identity, glue, gluing_data_of, overlattice_from_isotropic};
use fmlattice::{IntMatrix, Lattice, Result};

pub struct Summary {
    /// (disc N, disc T, |G|, disc L, identity holds)
    pub h2_in_cubic: (String, String, usize, String, bool),
    pub h2_perp_quotient: String,
    pub l10_glue: (usize, bool),
    pub overlattice_of_e8_sublattice: (String, bool),
}

pub fn run_example() -> Result<Summary> {
    let cub = catalog::lambda_cub();
    let sub = cub.sublattice(IntMatrix::from_rows(&[catalog::lambda_cub_h2()]))?;
    let (data, n, t) = gluing_data_of(&cub, &sub)?;
    let holds = check_gluing_identity(&t.discriminant(), &n.discriminant(), &cub.discriminant(), &data.order().into());
    let h2_in_cubic = (n.discriminant().to_string(), t.discriminant().to_string(), data.order(), cub.discriminant().to_string(), holds);
    let h2_perp_quotient = data.perp_quotient()?.to_string();

    // h^2 = e2 in L10 and its complement glue back to L10
    let l10 = catalog::l_n(10)?;
    let sub = l10.sublattice(IntMatrix::from_rows(&[[0, 1, 0]]))?;
    let (data, n, t) = gluing_data_of(&l10, &sub)?;
    let back = glue(&n, &t, &data)?;
    let l10_glue = (data.order(), is_isometric_definite(&back, &l10)?.is_some());

    // E8 is the overlattice of D8 by a spinor class
    let d8 = Lattice::from_rows(&d8_gram())?;
    let a = discriminant_form(&d8)?;
    let spinor = a
        .elements(16)?
        .into_iter()
        .find(|x| !a.is_zero(x) && a.q_numerator(x) == 0)
        .expect("D8 has isotropic classes");
    let e8 = overlattice_from_isotropic(&d8, &[spinor])?;
    let overlattice = (e8.discriminant().to_string(), is_isometric_definite(&e8, &catalog::e8())?.is_some());
    Ok(Summary { h2_in_cubic, h2_perp_quotient, l10_glue, overlattice_of_e8_sublattice: overlattice })
}

fn d8_gram() -> Vec<Vec<i64>> {
    // Dynkin diagram of D8: chain 1-...-7 and 6-8
    let mut g = vec![vec![0i64; 8]; 8];
    for i in 0..8 {
        g[i][i] = 2;
    }
    let mut edge = |i: usize, j: usize| {
        g[i][j] = -1;
        g[j][i] = -1;
    };
    for i in 0..6 {
        edge(i, i + 1);
    }
    edge(5, 7);
    g
}

#[allow(dead_code)]
fn main() -> Result<()> {
    let s = run_example()?;
    let (dn, dt, g, dl, ok) = &s.h2_in_cubic;
    println!("h^2 in Lambda_cub: disc N {dn}, disc T {dt}, |G| {g}, disc L {dl}, identity {ok}");
    println!("Gamma^perp/Gamma = {}", s.h2_perp_quotient);
    println!("L10 = <h^2> + N glued along |G| = {}: recovered {}", s.l10_glue.0, s.l10_glue.1);
    println!("overlattice of D8: disc {}, isometric to E8 {}", s.overlattice_of_e8_sublattice.0, s.overlattice_of_e8_sublattice.1);
    Ok(())
}
