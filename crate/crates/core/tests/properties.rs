//! Property tests against naive oracles.

use num_bigint::BigInt;
use proptest::prelude::*;

use fmlattice::counting::{count_fm, CountOptions, HodgeIsometrySpec};
use fmlattice::definite::{genus_symbol, same_genus, short_vectors};
use fmlattice::fqm::{discriminant_form, signature_mod8};
use fmlattice::json::{lattice_to_json, parse_lattice, parse_report, report_to_json};
use fmlattice::linalg::{determinant, smith_normal_form};
use fmlattice::random::{random_even_lattice, rng};
use fmlattice::{IntMatrix, Lattice};

fn det_i128(m: &[Vec<i128>]) -> i128 {
    // cofactor expansion along the first row
    match m.len() {
        0 => 1,
        1 => m[0][0],
        n => (0..n)
            .map(|j| {
                let minor: Vec<Vec<i128>> =
                    m[1..].iter().map(|r| r.iter().enumerate().filter(|(c, _)| *c != j).map(|(_, &x)| x).collect()).collect();
                let s = if j % 2 == 0 { 1 } else { -1 };
                s * m[0][j] * det_i128(&minor)
            })
            .sum(),
    }
}

fn gcd(a: i128, b: i128) -> i128 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut out = subsets(n - 1, k);
    for mut s in subsets(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}

/// Invariant factors as quotients of gcds of k x k minors.
fn invariant_factors_by_minors(m: &[Vec<i64>]) -> Vec<BigInt> {
    let (r, c) = (m.len(), m[0].len());
    let mut prev = 1i128;
    let mut out = Vec::new();
    for k in 1..=r.min(c) {
        let mut g = 0i128;
        for rows in subsets(r, k) {
            for cols in subsets(c, k) {
                let sub: Vec<Vec<i128>> = rows.iter().map(|&i| cols.iter().map(|&j| m[i][j] as i128).collect()).collect();
                g = gcd(g, det_i128(&sub));
            }
        }
        if g == 0 {
            break;
        }
        out.push(BigInt::from(g / prev));
        prev = g;
    }
    out
}

fn matrix(rows: usize, cols: usize, bound: i64) -> impl Strategy<Value = Vec<Vec<i64>>> {
    prop::collection::vec(prop::collection::vec(-bound..=bound, cols), rows)
}

/// A unimodular matrix as a product of elementary operations.
fn unimodular(n: usize) -> impl Strategy<Value = IntMatrix> {
    prop::collection::vec((0..n, 0..n, -2i64..=2, any::<bool>()), 0..8).prop_map(move |ops| {
        let mut m: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect();
        for (i, j, c, swap) in ops {
            if i == j {
                continue;
            }
            if swap {
                m.swap(i, j);
            } else {
                for k in 0..n {
                    m[i][k] += c * m[j][k];
                }
            }
        }
        IntMatrix::from_rows(&m)
    })
}

fn even_lattice(max_rank: usize, definite: bool) -> impl Strategy<Value = Lattice> {
    (1..=max_rank, any::<u64>()).prop_map(move |(n, seed)| random_even_lattice(&mut rng(seed), n, 4, definite))
}

fn isqrt(n: i128) -> i128 {
    let mut r = 0i128;
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    r
}

/// Vectors of square m in the box |x_i|^2 <= m (G^-1)_ii, one per sign pair.
fn short_vectors_by_box(g: &[Vec<i64>], m: i64) -> Vec<Vec<i64>> {
    let n = g.len();
    let gi: Vec<Vec<i128>> = g.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let det = det_i128(&gi);
    let bounds: Vec<i64> = (0..n)
        .map(|i| {
            let minor: Vec<Vec<i128>> = gi
                .iter()
                .enumerate()
                .filter(|(r, _)| *r != i)
                .map(|(_, row)| row.iter().enumerate().filter(|(c, _)| *c != i).map(|(_, &x)| x).collect())
                .collect();
            isqrt(m as i128 * det_i128(&minor) / det) as i64
        })
        .collect();
    let mut out = Vec::new();
    let mut x = vec![0i64; n];
    fn rec(i: usize, x: &mut Vec<i64>, bounds: &[i64], g: &[Vec<i64>], m: i64, out: &mut Vec<Vec<i64>>) {
        if i == x.len() {
            let norm: i64 = (0..x.len()).flat_map(|a| (0..x.len()).map(move |b| (a, b))).map(|(a, b)| x[a] * g[a][b] * x[b]).sum();
            let first = x.iter().find(|&&c| c != 0);
            if norm == m && first.is_some_and(|&c| c > 0) {
                out.push(x.clone());
            }
            return;
        }
        for v in -bounds[i]..=bounds[i] {
            x[i] = v;
            rec(i + 1, x, bounds, g, m, out);
        }
        x[i] = 0;
    }
    rec(0, &mut x, &bounds, g, m, &mut out);
    out.sort();
    out
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, ..ProptestConfig::default() })]

    #[test]
    fn smith_form_is_a_factorization((r, c) in (1usize..=4, 1usize..=4), seed in any::<u64>()) {
        let m = fmlattice::random::random_matrix(&mut rng(seed), r, c, 6);
        let f = smith_normal_form(&m);
        prop_assert_eq!(f.u.mul(&m).unwrap().mul(&f.v).unwrap(), f.s.clone());
        prop_assert!(determinant(&f.u).unwrap().magnitude() == &1u8.into());
        prop_assert!(determinant(&f.v).unwrap().magnitude() == &1u8.into());
        let d = f.invariant_factors();
        for w in d.windows(2) {
            prop_assert!((&w[1] % &w[0]) == BigInt::from(0));
        }
        for i in 0..r {
            for j in 0..c {
                if i != j {
                    prop_assert_eq!(&f.s.row(i)[j], &BigInt::from(0));
                }
            }
        }
    }

    #[test]
    fn smith_factors_match_minors(m in (1usize..=4, 1usize..=4).prop_flat_map(|(r, c)| matrix(r, c, 9))) {
        let f = smith_normal_form(&IntMatrix::from_rows(&m));
        prop_assert_eq!(f.invariant_factors(), invariant_factors_by_minors(&m));
    }

    #[test]
    fn signature_is_a_congruence_invariant(
        (l, p) in (1usize..=4).prop_flat_map(|n| (any::<u64>().prop_map(move |s| random_even_lattice(&mut rng(s), n, 4, false)), unimodular(n)))
    ) {
        let t = l.transform(&p).unwrap();
        prop_assert_eq!(t.signature(), l.signature());
        prop_assert_eq!(t.det(), l.det());
        prop_assert!(same_genus(&l, &t));
        prop_assert_eq!(genus_symbol(&l).to_string(), genus_symbol(&t).to_string());
    }

    #[test]
    fn milgram_formula(l in even_lattice(4, false)) {
        let (p, n) = l.signature();
        let a = discriminant_form(&l).unwrap();
        prop_assert_eq!(signature_mod8(&a).unwrap() as i64, (p as i64 - n as i64).rem_euclid(8));
    }

    #[test]
    fn perp_order_times_order(l in even_lattice(3, true), picks in prop::collection::vec(any::<u64>(), 1..3)) {
        let a = discriminant_form(&l).unwrap();
        let order = a.order_u64().unwrap();
        let gens: Vec<_> = picks.iter().map(|&k| a.element_at(k % order)).collect();
        let h = a.submodule(&gens).unwrap().module.order();
        let perp = a.orthogonal_submodule(&gens).unwrap().module.order();
        prop_assert_eq!(h * perp, a.order());
    }

    #[test]
    fn short_vectors_match_box_enumeration(l in even_lattice(3, true), m in 1i64..=12) {
        let g = l.gram_i64().unwrap();
        let fast: Vec<Vec<i64>> = short_vectors(&l, m).unwrap().into_iter().map(|v| v.coords().to_vec()).collect();
        let mut fast = fast;
        fast.sort();
        prop_assert_eq!(fast, short_vectors_by_box(&g, m));
    }

    #[test]
    fn rescaling_scales_the_determinant(l in even_lattice(4, false), s in prop::sample::select(vec![-3i64, -2, -1, 2, 3])) {
        let r = l.rescale(s).unwrap();
        prop_assert_eq!(r.det(), &(l.det() * BigInt::from(s).pow(l.rank() as u32)));
        let (p, n) = l.signature();
        prop_assert_eq!(r.signature(), if s > 0 { (p, n) } else { (n, p) });
    }

    #[test]
    fn lattice_json_round_trip(l in even_lattice(4, false)) {
        let s = lattice_to_json(&l).unwrap();
        prop_assert_eq!(parse_lattice(&s).unwrap(), l);
    }
}

fn registry_inputs() -> Vec<Lattice> {
    [vec![vec![42]], vec![vec![24, -3], vec![-3, 10]], vec![vec![8, 1], vec![1, 20]], vec![vec![6, 0], vec![0, 10]]]
        .iter()
        .map(|g| Lattice::from_rows(g).unwrap())
        .collect()
}

#[test]
fn reports_round_trip_byte_identically() {
    for n in registry_inputs() {
        let r = count_fm(&n, &CountOptions::default()).unwrap();
        let s = report_to_json(&r);
        let back = parse_report(&s).unwrap();
        assert_eq!(back, r);
        assert_eq!(report_to_json(&back), s);
    }
}

#[test]
fn counts_are_deterministic() {
    for n in registry_inputs() {
        let a = report_to_json(&count_fm(&n, &CountOptions::default()).unwrap());
        let b = report_to_json(&count_fm(&n, &CountOptions::default()).unwrap());
        assert_eq!(a, b);
    }
}

#[test]
fn larger_hodge_group_never_increases_the_count() {
    for n in registry_inputs() {
        let pm = count_fm(&n, &CountOptions::default()).unwrap();
        let full = count_fm(&n, &CountOptions { hodge: HodgeIsometrySpec::Full, ..CountOptions::default() }).unwrap();
        assert!(full.total <= pm.total);
        assert!(full.total >= 1);
        for (a, b) in full.representatives.iter().zip(&pm.representatives) {
            assert_eq!(a.gram, b.gram);
            assert!(a.count <= b.count);
        }
    }
}

#[test]
fn count_total_is_the_sum_over_representatives() {
    for n in registry_inputs() {
        let r = count_fm(&n, &CountOptions { include_virtual: true, ..CountOptions::default() }).unwrap();
        assert_eq!(r.total, r.representatives.iter().map(|x| x.count).sum::<u64>());
    }
}
