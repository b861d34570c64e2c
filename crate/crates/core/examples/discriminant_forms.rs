// Discriminant forms, Milgram signatures and orthogonal groups.
//
// ```bash
// cargo run --example discriminant_forms
// ```

use fmlattice::catalog;
use fmlattice::fqm::{
    coprime_part, discriminant_form, is_isometric, isometry_group, isotropic_subgroups, primary_decomposition,
    signature_mod8, FiniteQuadraticModule, DEFAULT_ENUMERATION_BOUND,
};
use fmlattice::{Lattice, Result};

pub struct Summary {
    /// (lattice, form, Milgram signature, signature difference mod 8)
    pub milgram: Vec<(String, String, u8, u8)>,
    pub l10_transcendental_order: usize,
    pub l10_transcendental_group: usize,
    pub c3_vs_negative_isometric: bool,
    pub isotropic_in_u2: usize,
    pub primes_of_231: Vec<i64>,
}

pub fn run_example() -> Result<Summary> {
    let mut milgram = Vec::new();
    let a2 = catalog::a2();
    for (name, l) in [
        ("U", catalog::hyperbolic_plane()),
        ("A2", a2.clone()),
        ("A2(-1)", a2.rescale(-1)?),
        ("E8", catalog::e8()),
        ("D4", Lattice::from_rows(&[[2, -1, 0, 0], [-1, 2, -1, -1], [0, -1, 2, 0], [0, -1, 0, 2]])?),
        ("<42>", catalog::pfaffian_complement()),
    ] {
        let a = discriminant_form(&l)?;
        let (p, n) = l.signature();
        let diff = (p as i64 - n as i64).rem_euclid(8) as u8;
        milgram.push((name.to_string(), a.to_string(), signature_mod8(&a)?, diff));
    }

    // the part of A_N prime to 3 for N = [[24, -3], [-3, 10]]
    let n = Lattice::from_rows(&[[24, -3], [-3, 10]])?;
    let a_n = discriminant_form(&n)?;
    let a_t = coprime_part(&a_n, 3)?.module.rescale(-1)?;

    let c3 = FiniteQuadraticModule::c3();
    let u2 = discriminant_form(&catalog::hyperbolic_plane().rescale(2)?)?;
    Ok(Summary {
        milgram,
        l10_transcendental_order: a_t.order_u64().unwrap_or(0) as usize,
        l10_transcendental_group: isometry_group(&a_t)?.len(),
        c3_vs_negative_isometric: is_isometric(&c3, &c3.rescale(-1)?)?.is_some(),
        isotropic_in_u2: isotropic_subgroups(&u2, DEFAULT_ENUMERATION_BOUND)?.len(),
        primes_of_231: primary_decomposition(&a_n)?.into_iter().map(|(p, _)| p).collect(),
    })
}

#[allow(dead_code)]
fn main() -> Result<()> {
    let s = run_example()?;
    for (name, form, m, d) in &s.milgram {
        println!("{name:<7} {form:<28} milgram {m}  (l+ - l-) mod 8 = {d}");
    }
    println!("A_T for L10: order {}, |O(A_T)| = {}", s.l10_transcendental_order, s.l10_transcendental_group);
    println!("C3 isometric to C3(-1): {}", s.c3_vs_negative_isometric);
    println!("isotropic subgroups of A_U(2): {}", s.isotropic_in_u2);
    println!("primes of Z/231: {:?}", s.primes_of_231);
    Ok(())
}
