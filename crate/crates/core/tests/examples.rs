//! Runs every example and checks the values it reports.

mod lattice_invariants {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/lattice_invariants.rs"));
}
mod discriminant_forms {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/discriminant_forms.rs"));
}
mod genus_classification {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/genus_classification.rs"));
}
mod gluing {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/gluing.rs"));
}
mod fm_counting {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/fm_counting.rs"));
}
mod command_line {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/command_line.rs"));
}
mod verify_registry {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/verify_registry.rs"));
}

#[test]
fn lattice_invariants_example() {
    let s = lattice_invariants::run_example().unwrap();
    let row = |name: &str| s.rows.iter().find(|r| r.0 == name).cloned().unwrap();
    assert_eq!(row("U"), ("U".into(), 2, (1, 1), "1".into(), true));
    assert_eq!(row("A2").3, "3");
    assert_eq!(row("Lambda_cub"), ("Lambda_cub".into(), 23, (21, 2), "1".into(), false));
    assert_eq!(row("Lambda0_cub"), ("Lambda0_cub".into(), 22, (20, 2), "3".into(), true));
    assert_eq!(row("Mukai").2, (4, 20));
    assert_eq!(row("L_10"), ("L_10".into(), 3, (3, 0), "77".into(), false));
    assert_eq!(row("L_2,9").3, "248");
    assert_eq!(s.primitive, (22, (20, 2), "3".into(), true));
    assert_eq!(s.primitive_form, "Z/3 q=[2/3]");
}

#[test]
fn discriminant_forms_example() {
    let s = discriminant_forms::run_example().unwrap();
    for (name, _, m, diff) in &s.milgram {
        assert_eq!(m, diff, "{name}");
    }
    let a2 = s.milgram.iter().find(|r| r.0 == "A2").unwrap();
    let a2m = s.milgram.iter().find(|r| r.0 == "A2(-1)").unwrap();
    assert_eq!((a2.2, a2m.2), (2, 6));
    assert_eq!(s.l10_transcendental_order, 77);
    assert_eq!(s.l10_transcendental_group, 4);
    assert!(!s.c3_vs_negative_isometric);
    assert_eq!(s.isotropic_in_u2, 3);
    assert_eq!(s.primes_of_231, vec![3, 7, 11]);
}

#[test]
fn genus_classification_example() {
    let s = genus_classification::run_example().unwrap();
    let g = |name: &str| s.genera.iter().find(|g| g.name == name).unwrap();
    assert_eq!(g("N of L10").classes.len(), 2);
    assert_eq!(g("N of L10").filtered, 1);
    assert_eq!(g("L2,9").classes.len(), 3);
    assert_eq!(g("L10").classes.len(), 5);
    assert_eq!(g("L10").symbol, "rank 3 sig (3,0) det 77 | 2: 1^-3_3 | 7: 1^+2 7^+1 | 11: 1^-2 11^+1");
    assert_eq!(s.e8_roots, 120);
    assert_eq!(s.n2_root, Some(vec![0, 1]));
    assert!(s.l10_contains_l10_prime);
    let aut: Vec<usize> = s.automorphisms.iter().map(|a| a.1).collect();
    assert_eq!(aut, vec![2, 2, 4]);
}

#[test]
fn gluing_example() {
    let s = gluing::run_example().unwrap();
    assert_eq!(s.h2_in_cubic, ("3".into(), "3".into(), 3, "1".into(), true));
    assert_eq!(s.h2_perp_quotient, "0");
    assert_eq!(s.l10_glue, (3, true));
    assert_eq!(s.overlattice_of_e8_sublattice, ("1".into(), true));
}

#[test]
fn fm_counting_example() {
    let s = fm_counting::run_example().unwrap();
    let expected = [
        ("pfaffian", 1),
        ("L10", 2),
        ("L10 general", 2),
        ("L10 full hodge", 1),
        ("L10 virtual", 4),
        ("two planes", 1),
        ("L2,9 self", 2),
        ("L2,9 N1", 1),
        ("L2,9 general", 3),
    ];
    for (label, total) in expected {
        assert_eq!(s.total(label), Some(total), "{label}");
    }
    for (label, r) in &s.reports {
        assert_eq!(r.total, r.representatives.iter().map(|x| x.count).sum::<u64>(), "{label}");
        assert!(r.assumption.contains("derived Torelli"), "{label}");
    }
}

#[test]
fn command_line_example() {
    let calls = command_line::run_example().unwrap();
    let codes: Vec<i32> = calls.iter().map(|(_, o)| o.code).collect();
    assert_eq!(codes, vec![0, 0, 0, 5, 0, 0]);
    assert!(calls[0].1.stdout.contains("77"));
    assert!(calls[2].1.stdout.contains("total       2"));
    assert!(calls[3].1.stderr.contains("count_fm_general"));
    assert!(calls[4].1.stdout.contains("\"total\": 1"));
    assert!(calls[5].1.stdout.contains("seed 7"));
}

#[test]
fn verify_registry_example() {
    use fmlattice::registry::{Provenance, Status};
    let rows = verify_registry::run_example().unwrap();
    for r in rows.iter().filter(|r| r.provenance == Provenance::Core) {
        assert_eq!(r.status, Status::Pass, "{}", r.label);
    }
    assert!(rows.iter().all(|r| r.status != Status::Fail));
}
