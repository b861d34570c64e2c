//! Counting Fourier-Mukai partners of cubic fourfolds from the lattice N of
//! primitive algebraic classes.
//!
//! Three routes are provided. [`count_fm`] assumes the 3-primary part of
//! A_N has order 3, so that A_T is the rest of A_N with the form negated.
//! [`count_fm_fixed_complement`] counts partners with a fixed lattice N'
//! when 3 does not divide disc N. [`count_fm_general`] enumerates
//! embeddings of T directly and needs neither assumption.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::definite::{
    disc_isometry_image, genus_representatives, h_filter, h_obstruction, same_genus, short_vectors,
    vectors_of_square_and_divisibility, HFilterRule, HObstruction,
};
use crate::error::{Error, Result};
use crate::fqm::{
    coprime_part, generated_subgroup, is_isometric, isometry_group_bounded, primary_part, rat, reduce_mod,
    FiniteQuadraticModule, FqmIsometry, LatticeDiscriminant, Quotient, DEFAULT_ENUMERATION_BOUND,
};
use crate::gluing::{embedding_classes, restrict, AmbientGenus};
use crate::lattice::Lattice;

/// Rank and signature of the primitive cohomology lattice of a cubic fourfold.
pub const PRIMITIVE_RANK: usize = 22;
pub const PRIMITIVE_SIGNATURE: (usize, usize) = (20, 2);
/// Largest rank of N handled by the genus enumeration.
pub const MAX_ALGEBRAIC_RANK: usize = 3;

/// The group of Hodge isometries of T, given by its image in O(A_T).
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub enum HodgeIsometrySpec {
    /// {id, -id}, the very general case
    #[default]
    PmId,
    /// all of O(A_T)
    Full,
    /// the subgroup generated by these automorphisms of A_T
    Explicit(Vec<FqmIsometry>),
}

impl HodgeIsometrySpec {
    /// The subgroup of O(A_T) this selects.
    pub fn group(&self, a_t: &FiniteQuadraticModule, bound: u64) -> Result<Vec<FqmIsometry>> {
        match self {
            HodgeIsometrySpec::PmId => {
                let mut g = vec![FqmIsometry::identity(a_t), FqmIsometry::negation(a_t)];
                g.sort();
                g.dedup();
                Ok(g)
            }
            HodgeIsometrySpec::Full => isometry_group_bounded(a_t, bound),
            HodgeIsometrySpec::Explicit(gens) => {
                for f in gens {
                    FqmIsometry::new(a_t, f.images().to_vec())?;
                }
                let mut g = generated_subgroup(a_t, gens);
                g.sort();
                Ok(g)
            }
        }
    }

    /// The assumption line of a report.
    pub fn assumption(&self) -> String {
        format!("{}; counts are valid assuming derived Torelli for cubic fourfolds", self.describe())
    }

    pub fn describe(&self) -> String {
        match self {
            HodgeIsometrySpec::PmId => "Hodge isometries of T act on A_T as {id, -id}".into(),
            HodgeIsometrySpec::Full => "Hodge isometries of T surject onto O(A_T)".into(),
            HodgeIsometrySpec::Explicit(g) => {
                format!("Hodge isometries of T act on A_T through the subgroup generated by {} given maps", g.len())
            }
        }
    }
}

/// Which counting route produced a report.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CountPath {
    CoprimeToThree,
    FixedComplement,
    General,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RepresentativeCount {
    pub gram: Vec<Vec<i64>>,
    pub count: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FmCountReport {
    pub input: Vec<Vec<i64>>,
    pub path: CountPath,
    /// A_T as "Z/a+Z/b q=[..]"
    pub transcendental_form: String,
    pub assumption: String,
    pub representatives: Vec<RepresentativeCount>,
    pub total: u64,
    pub warnings: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountOptions {
    pub hodge: HodgeIsometrySpec,
    pub rule: HFilterRule,
    /// count over the whole genus instead of the filtered set
    pub include_virtual: bool,
    pub bound: u64,
}

impl Default for CountOptions {
    fn default() -> Self {
        CountOptions {
            hodge: HodgeIsometrySpec::PmId,
            rule: HFilterRule::default(),
            include_virtual: false,
            bound: DEFAULT_ENUMERATION_BOUND,
        }
    }
}

fn check_input(n: &Lattice) -> Result<()> {
    if n.rank() == 0 || n.rank() > MAX_ALGEBRAIC_RANK {
        return Err(Error::RankBound { rank: n.rank(), min: 1, max: MAX_ALGEBRAIC_RANK });
    }
    if !n.is_positive_definite() {
        return Err(Error::NotPositiveDefinite);
    }
    if !n.is_even() {
        return Err(Error::OddLattice);
    }
    Ok(())
}

fn gram_rows(l: &Lattice) -> Result<Vec<Vec<i64>>> {
    l.gram_i64()
}

/// A_T = (part of A_N of order prime to 3)(-1), valid when the 3-primary part
/// of A_N has order 3.
pub fn derive_transcendental_fqm(n: &Lattice) -> Result<FiniteQuadraticModule> {
    check_input(n)?;
    let a_n = LatticeDiscriminant::new(n)?.module;
    let three = primary_part(&a_n, 3)?.module.order();
    if three != BigInt::from(3) {
        return Err(Error::Precondition(format!(
            "the 3-primary part of A_N has order {three}, not 3; use the general path (count_fm_general)"
        )));
    }
    coprime_part(&a_n, 3)?.module.rescale(-1)
}

/// A_T for the general path: A_N(-1) ⊕ C3 if 3 does not divide disc N, and
/// otherwise c^⊥(-1) for the first c of order 3 with q(c) = 2/3.
pub fn derive_transcendental_fqm_general(n: &Lattice, bound: u64) -> Result<FiniteQuadraticModule> {
    check_input(n)?;
    let a_n = LatticeDiscriminant::new(n)?.module;
    if !(n.discriminant() % 3u32).is_zero() {
        return Ok(a_n.rescale(-1)?.direct_sum(&FiniteQuadraticModule::c3()));
    }
    let two_thirds = rat(2, 3);
    let c = a_n
        .elements(bound)?
        .into_iter()
        .find(|x| a_n.element_order(x) == 3 && a_n.q(x) == two_thirds)
        .ok_or_else(|| Error::Precondition("A_N has no element of order 3 with q = 2/3".into()))?;
    a_n.orthogonal_submodule(&[c])?.module.rescale(-1)
}

/// Number of double cosets left \ g / right inside the group `g`.
pub fn double_coset_count(
    a: &FiniteQuadraticModule,
    g: &[FqmIsometry],
    left: &[FqmIsometry],
    right: &[FqmIsometry],
) -> u64 {
    let index: HashMap<&FqmIsometry, usize> = g.iter().enumerate().map(|(i, f)| (f, i)).collect();
    let mut seen = vec![false; g.len()];
    let mut count = 0;
    for start in 0..g.len() {
        if seen[start] {
            continue;
        }
        count += 1;
        seen[start] = true;
        let mut stack = vec![start];
        while let Some(i) = stack.pop() {
            for h in left {
                let hg = h.compose(&g[i], a);
                for r in right {
                    let x = hg.compose(r, a);
                    let j = *index.get(&x).expect("left and right act inside g");
                    if !seen[j] {
                        seen[j] = true;
                        stack.push(j);
                    }
                }
            }
        }
    }
    count
}

/// Conjugates automorphisms of `b` into automorphisms of `a` along psi: a -> b.
fn transport(
    a: &FiniteQuadraticModule,
    b: &FiniteQuadraticModule,
    psi: &FqmIsometry,
    fs: &[FqmIsometry],
    bound: u64,
) -> Result<Vec<FqmIsometry>> {
    let mut back = HashMap::new();
    for x in a.elements(bound)? {
        back.insert(b.index_of(&psi.apply(b, &x)), x);
    }
    let mut out = Vec::new();
    for f in fs {
        let images = (0..a.num_generators())
            .map(|i| back[&b.index_of(&f.apply(b, &psi.apply(b, &a.generator(i))))].clone())
            .collect();
        out.push(FqmIsometry::new(a, images)?);
    }
    out.sort();
    out.dedup();
    Ok(out)
}

/// The image of O(N') in O(A_N), via some isometry A_N ≅ A_N'.
fn image_in(a_n: &FiniteQuadraticModule, n_prime: &Lattice, bound: u64) -> Result<Vec<FqmIsometry>> {
    let a_p = LatticeDiscriminant::new(n_prime)?.module;
    let psi = is_isometric(a_n, &a_p)?
        .ok_or_else(|| Error::InvalidParameters("lattices in one genus must have isometric discriminant forms".into()))?;
    transport(a_n, &a_p, &psi, &disc_isometry_image(n_prime)?, bound)
}

fn restrict_all(fs: &[FqmIsometry], a: &FiniteQuadraticModule, sub: &Quotient) -> Result<Vec<FqmIsometry>> {
    let mut out = fs.iter().map(|f| restrict(f, a, sub)).collect::<Result<Vec<_>>>()?;
    out.sort();
    out.dedup();
    Ok(out)
}

/// Describes why a lattice fails the filter.
pub fn describe_obstruction(ob: &HObstruction) -> String {
    match ob {
        HObstruction::Root(v) => format!("vector {:?} has square 2", v.coords()),
        HObstruction::SquareSixDivThree(v) => format!("vector {:?} has square 6 and divisibility 3", v.coords()),
    }
}

/// Number of Fourier-Mukai partners when the 3-primary part of A_N has
/// order 3: for each N' in the filtered genus of N, the double cosets
/// O(N') \ O(A_T) / O_Hodge(T).
pub fn count_fm(n: &Lattice, opts: &CountOptions) -> Result<FmCountReport> {
    let a_t = derive_transcendental_fqm(n)?;
    let a_n = LatticeDiscriminant::new(n)?.module;
    let p = coprime_part(&a_n, 3)?;
    let group = isometry_group_bounded(&p.module, opts.bound)?;
    let right = opts.hodge.group(&a_t, opts.bound)?;
    let mut warnings = Vec::new();
    if is_isometric(&primary_part(&a_n, 3)?.module, &FiniteQuadraticModule::c3())?.is_none() {
        warnings.push("the 3-primary part of A_N is not isometric to C3 with q = 2/3".into());
    }
    let genus = genus_representatives(n)?;
    let reps = if opts.include_virtual { genus } else { h_filter(&genus, opts.rule)? };
    let mut rows = Vec::new();
    for m in &reps {
        let left = restrict_all(&image_in(&a_n, m, opts.bound)?, &a_n, &p)?;
        rows.push(RepresentativeCount { gram: gram_rows(m)?, count: double_coset_count(&p.module, &group, &left, &right) });
    }
    let mut assumption = opts.hodge.assumption();
    if opts.include_virtual {
        assumption.push_str("; virtual partners included (whole genus)");
    }
    Ok(FmCountReport {
        input: gram_rows(n)?,
        path: CountPath::CoprimeToThree,
        transcendental_form: a_t.to_string(),
        assumption,
        total: rows.iter().map(|r| r.count).sum(),
        representatives: rows,
        warnings,
    })
}

/// Partners with algebraic lattice isometric to `n_prime`, when 3 does not
/// divide disc N: O(N') \ O(A_N) / O_Hodge(T), where A_T = A_N(-1) ⊕ C3 and
/// Hodge isometries act on the first summand. Explicit Hodge maps are given
/// on the generators of A_N(-1) followed by the generator of C3.
pub fn count_fm_fixed_complement(n: &Lattice, n_prime: &Lattice, opts: &CountOptions) -> Result<FmCountReport> {
    check_input(n)?;
    check_input(n_prime)?;
    if (n.discriminant() % 3u32).is_zero() {
        return Err(Error::Precondition(
            "3 divides disc N; use count_fm or the general path (count_fm_general)".into(),
        ));
    }
    if !same_genus(n, n_prime) {
        return Err(Error::GenusMismatch);
    }
    if let Some(ob) = h_obstruction(n_prime, opts.rule)? {
        return Err(Error::FailsHFilter(describe_obstruction(&ob)));
    }
    let a_n = LatticeDiscriminant::new(n)?.module;
    let (a_t, maps) = a_n.rescale(-1)?.direct_sum_with_maps(&FiniteQuadraticModule::c3());
    let k = a_n.num_generators();
    let mut right = Vec::new();
    for h in opts.hodge.group(&a_t, opts.bound)? {
        let images = (0..k)
            .map(|i| {
                let mut x = a_n.generator(i);
                x.push(0);
                let y = maps.lift(&h.apply(&a_t, &maps.coords(&x)?));
                Ok(y[..k].to_vec())
            })
            .collect::<Result<Vec<_>>>()?;
        right.push(FqmIsometry::new(&a_n, images)?);
    }
    right.sort();
    right.dedup();
    let group = isometry_group_bounded(&a_n, opts.bound)?;
    let left = image_in(&a_n, n_prime, opts.bound)?;
    let count = double_coset_count(&a_n, &group, &left, &right);
    Ok(FmCountReport {
        input: gram_rows(n)?,
        path: CountPath::FixedComplement,
        transcendental_form: a_t.to_string(),
        assumption: opts.hodge.assumption(),
        representatives: vec![RepresentativeCount { gram: gram_rows(n_prime)?, count }],
        total: count,
        warnings: vec![],
    })
}

/// Count through embeddings of T, with A_T derived from N.
pub fn count_fm_general(n: &Lattice, opts: &CountOptions) -> Result<FmCountReport> {
    let a_t = derive_transcendental_fqm_general(n, opts.bound)?;
    count_fm_general_with(n, &a_t, opts)
}

/// For every root-free N' in the genus of N, the classes of gluings of N' to
/// a lattice T with form `a_t` into a lattice with discriminant form C3,
/// up to O(N') and the Hodge group, that survive the period condition: no
/// v in N' with v^2 = 6, div(v) = 3 and v/3 orthogonal to the glue group.
pub fn count_fm_general_with(n: &Lattice, a_t: &FiniteQuadraticModule, opts: &CountOptions) -> Result<FmCountReport> {
    check_input(n)?;
    let r = n.rank();
    let sig_t = (PRIMITIVE_SIGNATURE.0 - r, PRIMITIVE_SIGNATURE.1);
    let ambient = AmbientGenus {
        rank: PRIMITIVE_RANK,
        signature: PRIMITIVE_SIGNATURE,
        form: FiniteQuadraticModule::c3(),
    };
    let right = opts.hodge.group(a_t, opts.bound)?;
    let mut rows = Vec::new();
    let mut warnings = Vec::new();
    for m in genus_representatives(n)? {
        if !short_vectors(&m, 2)?.is_empty() {
            continue;
        }
        let disc = LatticeDiscriminant::new(&m)?;
        let a_m = &disc.module;
        let left = disc_isometry_image(&m)?;
        let classes = embedding_classes(a_t, sig_t, &ambient, &m, a_m, &left, &right, opts.bound)?;
        let thirds: Vec<_> = vectors_of_square_and_divisibility(&m, 6, 3)?
            .into_iter()
            .map(|v| {
                let w: Vec<_> = v.coords().iter().map(|&c| rat(c, 3)).collect();
                disc.element_of(&w)
            })
            .collect::<Result<_>>()?;
        let mut count = 0;
        for class in &classes {
            let g: Vec<_> = class.data.graph().iter().map(|(x, _)| x).collect();
            let blocked = thirds.iter().any(|u| g.iter().all(|x| reduce_mod(&a_m.b(u, x), 1).is_zero()));
            if !blocked {
                count += 1;
            }
        }
        if count == 0 {
            warnings.push(format!("{:?}: every gluing violates the period condition", gram_rows(&m)?));
        } else {
            rows.push(RepresentativeCount { gram: gram_rows(&m)?, count });
        }
    }
    if rows.is_empty() && warnings.is_empty() {
        warnings.push("every lattice in the genus has a vector of square 2".into());
    }
    Ok(FmCountReport {
        input: gram_rows(n)?,
        path: CountPath::General,
        transcendental_form: a_t.to_string(),
        assumption: opts.hodge.assumption(),
        total: rows.iter().map(|r| r.count).sum(),
        representatives: rows,
        warnings,
    })
}
