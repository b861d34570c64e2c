// Fourier-Mukai partner counts along the three counting paths.
//
// ```bash
// cargo run --example fm_counting
// ```

use fmlattice::catalog;
use fmlattice::counting::{
    count_fm, count_fm_fixed_complement, count_fm_general, CountOptions, FmCountReport, HodgeIsometrySpec,
};
use fmlattice::{Lattice, Result};

pub struct Summary {
    pub reports: Vec<(String, FmCountReport)>,
}

impl Summary {
    pub fn total(&self, label: &str) -> Option<u64> {
        self.reports.iter().find(|(l, _)| l == label).map(|(_, r)| r.total)
    }
}

pub fn run_example() -> Result<Summary> {
    let pm = CountOptions::default();
    let full = CountOptions { hodge: HodgeIsometrySpec::Full, ..CountOptions::default() };
    let virt = CountOptions { include_virtual: true, ..CountOptions::default() };

    let pfaffian = catalog::pfaffian_complement();
    let n10 = Lattice::from_rows(&[[24, -3], [-3, 10]])?;
    let planes = Lattice::from_rows(&[[12, -3], [-3, 6]])?;
    let l29 = catalog::l_ab(2, 9)?;
    let n1 = Lattice::from_rows(&[[62, 0], [0, 4]])?;

    let reports = vec![
        ("pfaffian".to_string(), count_fm(&pfaffian, &pm)?),
        ("L10".to_string(), count_fm(&n10, &pm)?),
        ("L10 general".to_string(), count_fm_general(&n10, &pm)?),
        ("L10 full hodge".to_string(), count_fm(&n10, &full)?),
        ("L10 virtual".to_string(), count_fm(&n10, &virt)?),
        ("two planes".to_string(), count_fm_general(&planes, &pm)?),
        ("L2,9 self".to_string(), count_fm_fixed_complement(&l29, &l29, &pm)?),
        ("L2,9 N1".to_string(), count_fm_fixed_complement(&l29, &n1, &pm)?),
        ("L2,9 general".to_string(), count_fm_general(&l29, &pm)?),
    ];
    Ok(Summary { reports })
}

#[allow(dead_code)]
fn main() -> Result<()> {
    let s = run_example()?;
    for (label, r) in &s.reports {
        println!("{label}: A_T = {}, total {}", r.transcendental_form, r.total);
        for row in &r.representatives {
            println!("    {:?} -> {}", row.gram, row.count);
        }
    }
    Ok(())
}
