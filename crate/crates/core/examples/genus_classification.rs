// Genus symbols, genus representatives and the period filter.
//
// ```bash
// cargo run --example genus_classification
// ```

use fmlattice::catalog;
use fmlattice::definite::{
    automorphism_group, genus_representatives, genus_symbol, h_filter, h_obstruction, minkowski_canonical,
    short_vectors, HFilterRule, HObstruction,
};
use fmlattice::{Lattice, Result};

pub struct Genus {
    pub name: String,
    pub symbol: String,
    pub classes: Vec<Vec<Vec<i64>>>,
    pub filtered: usize,
}

pub struct Summary {
    pub genera: Vec<Genus>,
    pub e8_roots: usize,
    pub n2_root: Option<Vec<i64>>,
    pub l10_contains_l10_prime: bool,
    pub automorphisms: Vec<(String, usize)>,
}

pub fn run_example() -> Result<Summary> {
    let inputs = [
        ("N of L10", Lattice::from_rows(&[[24, -3], [-3, 10]])?),
        ("L2,9", catalog::l_ab(2, 9)?),
        ("two planes N", Lattice::from_rows(&[[12, -3], [-3, 6]])?),
        ("L10", catalog::l_n(10)?),
    ];
    let mut genera = Vec::new();
    for (name, l) in &inputs {
        let reps = genus_representatives(l)?;
        let filtered = if l.is_even() { h_filter(&reps, HFilterRule::default())?.len() } else { 0 };
        genera.push(Genus {
            name: name.to_string(),
            symbol: genus_symbol(l).to_string(),
            classes: reps.iter().map(|r| r.gram_i64()).collect::<Result<_>>()?,
            filtered,
        });
    }
    let n2 = Lattice::from_rows(&[[126, 2], [2, 2]])?;
    let n2_root = match h_obstruction(&n2, HFilterRule::RootsOnly)? {
        Some(HObstruction::Root(v)) => Some(v.coords().to_vec()),
        _ => None,
    };
    let l10p = minkowski_canonical(&Lattice::from_rows(&[[3, -1, 0], [-1, 4, 0], [0, 0, 7]])?)?.to_i64_rows()?;
    let mut automorphisms = Vec::new();
    for (name, l) in &inputs[..3] {
        automorphisms.push((name.to_string(), automorphism_group(l)?.len()));
    }
    Ok(Summary {
        l10_contains_l10_prime: genera[3].classes.contains(&l10p),
        genera,
        e8_roots: short_vectors(&catalog::e8(), 2)?.len(),
        n2_root,
        automorphisms,
    })
}

#[allow(dead_code)]
fn main() -> Result<()> {
    let s = run_example()?;
    for g in &s.genera {
        println!("{}: {}", g.name, g.symbol);
        for c in &g.classes {
            println!("    {c:?}");
        }
        if g.symbol.contains("_II") {
            println!("    {} class(es), {} pass the filter", g.classes.len(), g.filtered);
        } else {
            println!("    {} class(es)", g.classes.len());
        }
    }
    println!("root pairs of E8: {}", s.e8_roots);
    println!("root of N2: {:?}", s.n2_root);
    println!("L'10 in the genus of L10: {}", s.l10_contains_l10_prime);
    for (name, k) in &s.automorphisms {
        println!("|O({name})| = {k}");
    }
    Ok(())
}
