//! Overlattices, primitive embeddings and their gluing data.

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::fqm::{
    is_isometric, FiniteQuadraticModule, FqmElement, FqmIsometry, FqmSubgroup, LatticeDiscriminant, Quotient,
};
use crate::lattice::{Lattice, Sublattice};
use crate::linalg::{is_perfect_square, rational_inverse_of, row_span_basis, IntMatrix, RatMatrix};

/// disc(T) disc(N) = |G|^2 disc(L).
pub fn check_gluing_identity(disc_t: &BigInt, disc_n: &BigInt, disc_l: &BigInt, glue_order: &BigInt) -> bool {
    disc_t * disc_n == glue_order * glue_order * disc_l
}

/// The glue order forced by the identity, if it is an integer.
pub fn forced_glue_order(disc_t: &BigInt, disc_n: &BigInt, disc_l: &BigInt) -> Option<BigInt> {
    let prod = disc_t * disc_n;
    if disc_l.is_zero() || !(&prod % disc_l).is_zero() {
        return None;
    }
    let sq = prod / disc_l;
    is_perfect_square(&sq).then(|| sq.sqrt())
}

/// A subgroup G of A_N with an injective map gamma: G -> A_T whose graph is
/// the glue group of a primitive embedding.
#[derive(Clone, Debug)]
pub struct GluingData {
    pub a_n: FiniteQuadraticModule,
    pub a_t: FiniteQuadraticModule,
    /// (g, gamma(g)) for every g in G, sorted
    graph: Vec<(FqmElement, FqmElement)>,
}

impl GluingData {
    /// Builds the data from images of generators of G.
    pub fn from_generators(
        a_n: FiniteQuadraticModule,
        a_t: FiniteQuadraticModule,
        pairs: &[(FqmElement, FqmElement)],
    ) -> Result<Self> {
        let mut seen: HashMap<FqmElement, FqmElement> = HashMap::new();
        seen.insert(a_n.zero(), a_t.zero());
        let mut queue: VecDeque<(FqmElement, FqmElement)> = VecDeque::from([(a_n.zero(), a_t.zero())]);
        while let Some((x, y)) = queue.pop_front() {
            for (g, h) in pairs {
                let nx = a_n.add(&x, g);
                let ny = a_t.add(&y, h);
                match seen.get(&nx) {
                    Some(old) if *old != ny => {
                        return Err(Error::InvalidParameters("gluing map is not well defined".into()));
                    }
                    Some(_) => {}
                    None => {
                        seen.insert(nx.clone(), ny.clone());
                        queue.push_back((nx, ny));
                    }
                }
            }
        }
        let images: HashSet<&FqmElement> = seen.values().collect();
        if images.len() != seen.len() {
            return Err(Error::InvalidParameters("gluing map is not injective".into()));
        }
        let mut graph: Vec<(FqmElement, FqmElement)> = seen.into_iter().collect();
        graph.sort();
        Ok(GluingData { a_n, a_t, graph })
    }

    pub fn order(&self) -> usize {
        self.graph.len()
    }

    pub fn graph(&self) -> &[(FqmElement, FqmElement)] {
        &self.graph
    }

    /// The subgroup G of A_N.
    pub fn subgroup(&self) -> FqmSubgroup {
        let gens: Vec<FqmElement> = self.graph.iter().map(|(g, _)| g.clone()).collect();
        FqmSubgroup::generated(&self.a_n, &gens)
    }

    pub fn gamma(&self, g: &[i64]) -> Option<&FqmElement> {
        self.graph.iter().find(|(x, _)| x.as_slice() == g).map(|(_, y)| y)
    }

    /// q_N(g) + q_T(gamma(g)) = 0 for all g (b-version for odd lattices).
    pub fn is_isotropic(&self) -> bool {
        self.graph.iter().all(|(x, y)| {
            let s = self.a_n.q(x) + self.a_t.q(y);
            let m = if self.a_n.is_quadratic() && self.a_t.is_quadratic() { 2 } else { 1 };
            crate::fqm::reduce_mod(&s, m).is_zero()
        })
    }

    /// Gamma^⊥ / Gamma inside A_N ⊕ A_T.
    pub fn perp_quotient(&self) -> Result<FiniteQuadraticModule> {
        let (sum, maps) = self.a_n.direct_sum_with_maps(&self.a_t);
        let gens = self
            .graph
            .iter()
            .map(|(x, y)| maps.coords(&[x.clone(), y.clone()].concat()))
            .collect::<Result<Vec<_>>>()?;
        Ok(sum.perp_quotient(&gens)?.module)
    }

    /// Key identifying the graph, used for orbit computations.
    pub fn key(&self) -> Vec<(u64, u64)> {
        let mut k: Vec<(u64, u64)> = self.graph.iter().map(|(x, y)| (self.a_n.index_of(x), self.a_t.index_of(y))).collect();
        k.sort_unstable();
        k
    }
}

/// Lattice spanned by rational row vectors (in the coordinates of `l`), with
/// its basis and integral Gram matrix.
fn span_rational(l: &Lattice, rows: &[Vec<BigRational>]) -> Result<(RatMatrix, Lattice)> {
    let n = l.rank();
    let den = rows
        .iter()
        .flatten()
        .fold(BigInt::one(), |acc, x| num_integer::lcm(acc, x.denom().clone()));
    let scaled: Vec<Vec<BigInt>> = rows.iter().map(|r| r.iter().map(|x| (x * &den).to_integer()).collect()).collect();
    let span = row_span_basis(&IntMatrix::from_big_rows(scaled, n)?);
    let mut basis = span.to_rational();
    let inv = BigRational::new(BigInt::one(), den);
    for i in 0..basis.rows() {
        for j in 0..n {
            basis[(i, j)] = &basis[(i, j)] * &inv;
        }
    }
    let g = basis.mul(&l.gram().to_rational())?.mul(&basis.transpose())?;
    let gram = g.to_integer().ok_or_else(|| Error::InvalidParameters("overlattice is not integral".into()))?;
    Ok((basis, Lattice::new(gram)?))
}

/// The overlattice of an even lattice corresponding to an isotropic subgroup
/// of its discriminant form (generators in the coordinates of
/// `discriminant_form(l)`).
pub fn overlattice_from_isotropic(l: &Lattice, gens: &[FqmElement]) -> Result<Lattice> {
    if !l.is_even() {
        return Err(Error::OddLattice);
    }
    let disc = LatticeDiscriminant::new(l)?;
    let a = &disc.module;
    for (i, x) in gens.iter().enumerate() {
        if a.q_numerator(x) != 0 || gens[..i].iter().any(|y| a.b_numerator(x, y) != 0) {
            return Err(Error::NotIsotropic);
        }
    }
    let n = l.rank();
    let mut rows: Vec<Vec<BigRational>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { BigRational::one() } else { BigRational::zero() }).collect())
        .collect();
    rows.extend(gens.iter().map(|g| disc.vector_of(g)));
    let (_, m) = span_rational(l, &rows)?;
    assert!(m.is_even(), "overlattice of an isotropic subgroup is even");
    Ok(m)
}

/// Gluing data of a primitive sublattice N of `parent` with complement T.
/// Returns the data together with N and T.
pub fn gluing_data_of(parent: &Lattice, sub: &Sublattice) -> Result<(GluingData, Lattice, Lattice)> {
    if !sub.is_primitive() {
        return Err(Error::NotPrimitive);
    }
    let comp = sub.orthogonal_complement();
    let n_lat = sub.lattice()?;
    let t_lat = comp.lattice()?;
    let dn = LatticeDiscriminant::new(&n_lat)?;
    let dt = LatticeDiscriminant::new(&t_lat)?;
    let r = sub.rank();
    let rows: Vec<Vec<BigInt>> = sub.basis().to_rows().into_iter().chain(comp.basis().to_rows()).collect();
    let m = IntMatrix::from_big_rows(rows, parent.rank())?;
    let minv = rational_inverse_of(&m.to_rational())?;
    let mut pairs = Vec::new();
    for k in 0..parent.rank() {
        // e_k = c * m, split into the N and T parts
        let c = minv.row(k);
        let x = dn.element_of(&c[..r])?;
        let y = dt.element_of(&c[r..])?;
        pairs.push((x, y));
    }
    let data = GluingData::from_generators(dn.module.clone(), dt.module.clone(), &pairs)?;
    Ok((data, n_lat, t_lat))
}

/// The overlattice of N ⊕ T defined by the graph of the gluing data, where
/// the data's modules are the discriminant modules of `n` and `t`.
pub fn glue(n: &Lattice, t: &Lattice, data: &GluingData) -> Result<Lattice> {
    let dn = LatticeDiscriminant::new(n)?;
    let dt = LatticeDiscriminant::new(t)?;
    let sum = n.direct_sum(t);
    let k = sum.rank();
    let mut rows: Vec<Vec<BigRational>> = (0..k)
        .map(|i| (0..k).map(|j| if i == j { BigRational::one() } else { BigRational::zero() }).collect())
        .collect();
    for (x, y) in data.graph() {
        rows.push([dn.vector_of(x), dt.vector_of(y)].concat());
    }
    Ok(span_rational(&sum, &rows)?.1)
}

/// Restriction of an automorphism of `a` to an invariant subquotient.
pub fn restrict(f: &FqmIsometry, a: &FiniteQuadraticModule, sub: &Quotient) -> Result<FqmIsometry> {
    let m = &sub.module;
    let images = (0..m.num_generators())
        .map(|i| sub.coords(&f.apply(a, &sub.lift(&m.generator(i)))))
        .collect::<Result<Vec<_>>>()?;
    FqmIsometry::new(m, images)
}

/// The component on the part of order prime to 3 of the discriminant
/// isometry induced by an automorphism f of N' (columns = images of basis).
pub fn split_action(n_prime: &Lattice, f: &crate::definite::DefIsometry) -> Result<FqmIsometry> {
    let disc = LatticeDiscriminant::new(n_prime)?;
    let three = crate::fqm::primary_part(&disc.module, 3)?;
    if three.module.order() != BigInt::from(3) {
        return Err(Error::Precondition("the 3-primary part of the discriminant group must have order 3".into()));
    }
    let fbar = disc.induced(&f.matrix())?;
    let coprime = crate::fqm::coprime_part(&disc.module, 3)?;
    restrict(&fbar, &disc.module, &coprime)
}

/// An orbit of gluing data for a fixed complement.
#[derive(Clone, Debug)]
pub struct EmbeddingClass {
    pub complement: Lattice,
    pub data: GluingData,
    pub orbit_size: usize,
}

/// Ambient genus data for [`embedding_classes`].
#[derive(Clone, Debug)]
pub struct AmbientGenus {
    pub rank: usize,
    pub signature: (usize, usize),
    pub form: FiniteQuadraticModule,
}

/// All gluings of `complement` (with discriminant module `a_n`) to a lattice
/// with discriminant module `a_t`, whose overlattice has the ambient
/// discriminant form, up to the action of `left` (automorphisms of `a_n`)
/// and `right` (automorphisms of `a_t`).
#[allow(clippy::too_many_arguments)]
pub fn embedding_classes(
    a_t: &FiniteQuadraticModule,
    sig_t: (usize, usize),
    ambient: &AmbientGenus,
    complement: &Lattice,
    a_n: &FiniteQuadraticModule,
    left: &[FqmIsometry],
    right: &[FqmIsometry],
    bound: u64,
) -> Result<Vec<EmbeddingClass>> {
    let sig_n = complement.signature();
    if sig_n.0 + sig_t.0 != ambient.signature.0
        || sig_n.1 + sig_t.1 != ambient.signature.1
        || complement.rank() + sig_t.0 + sig_t.1 != ambient.rank
    {
        return Err(Error::InvalidParameters("rank and signature data are inconsistent".into()));
    }
    let Some(m) = forced_glue_order(&a_t.order(), &a_n.order(), &ambient.form.order()) else {
        return Ok(vec![]);
    };
    let m: u64 = m.try_into().map_err(|_| Error::Overflow("glue order".into()))?;
    let t_elems = a_t.elements(bound)?;
    let mut all: Vec<GluingData> = Vec::new();
    for g in crate::fqm::subgroups_of_order(a_n, m, bound)? {
        let sub = a_n.submodule(g.generators())?;
        let gm = &sub.module;
        let k = gm.num_generators();
        let gens: Vec<FqmElement> = (0..k).map(|i| sub.lift(&gm.generator(i))).collect();
        // candidate images: anti-isometric values, orders dividing the generator orders
        let cands: Vec<Vec<&FqmElement>> = (0..k)
            .map(|i| {
                let target = crate::fqm::reduce_mod(&-a_n.q(&gens[i]), 2);
                t_elems
                    .iter()
                    .filter(|h| gm.invariant_factors()[i] % a_t.element_order(h) == 0 && a_t.q(h) == target)
                    .collect()
            })
            .collect();
        let mut chosen: Vec<&FqmElement> = Vec::new();
        let mut maps: Vec<Vec<FqmElement>> = Vec::new();
        anti_maps(0, a_n, a_t, &gens, &cands, &mut chosen, &mut maps);
        for images in maps {
            let pairs: Vec<(FqmElement, FqmElement)> = gens.iter().cloned().zip(images).collect();
            let Ok(data) = GluingData::from_generators(a_n.clone(), a_t.clone(), &pairs) else { continue };
            if data.order() as u64 != m {
                continue;
            }
            if is_isometric(&data.perp_quotient()?, &ambient.form)?.is_some() {
                all.push(data);
            }
        }
    }
    // orbits under left x right acting by (g, h) -> (f g, r h)
    let mut index: HashMap<Vec<(u64, u64)>, usize> = HashMap::new();
    for (i, d) in all.iter().enumerate() {
        index.insert(d.key(), i);
    }
    let mut orbit_of = vec![usize::MAX; all.len()];
    let mut classes = Vec::new();
    for start in 0..all.len() {
        if orbit_of[start] != usize::MAX {
            continue;
        }
        let label = classes.len();
        orbit_of[start] = label;
        let mut queue = vec![start];
        let mut size = 0;
        while let Some(i) = queue.pop() {
            size += 1;
            for f in left {
                for r in right {
                    let key: BTreeSet<(u64, u64)> = all[i]
                        .graph()
                        .iter()
                        .map(|(x, y)| (a_n.index_of(&f.apply(a_n, x)), a_t.index_of(&r.apply(a_t, y))))
                        .collect();
                    let key: Vec<(u64, u64)> = key.into_iter().collect();
                    let j = *index.get(&key).expect("actions preserve the set of gluings");
                    if orbit_of[j] == usize::MAX {
                        orbit_of[j] = label;
                        queue.push(j);
                    }
                }
            }
        }
        classes.push(EmbeddingClass { complement: complement.clone(), data: all[start].clone(), orbit_size: size });
    }
    Ok(classes)
}

fn anti_maps<'e>(
    i: usize,
    a_n: &FiniteQuadraticModule,
    a_t: &FiniteQuadraticModule,
    gens: &[FqmElement],
    cands: &[Vec<&'e FqmElement>],
    chosen: &mut Vec<&'e FqmElement>,
    out: &mut Vec<Vec<FqmElement>>,
) {
    if i == gens.len() {
        out.push(chosen.iter().map(|x| (*x).clone()).collect());
        return;
    }
    for &h in &cands[i] {
        let ok = (0..i).all(|j| {
            let s = a_n.b(&gens[i], &gens[j]) + a_t.b(h, chosen[j]);
            crate::fqm::reduce_mod(&s, 1).is_zero()
        });
        if ok {
            chosen.push(h);
            anti_maps(i + 1, a_n, a_t, gens, cands, chosen, out);
            chosen.pop();
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::definite::same_genus;
    use crate::fqm::discriminant_form;

    #[test]
    fn identity_examples() {
        let b = |x: i64| BigInt::from(x);
        assert!(check_gluing_identity(&b(77), &b(231), &b(3), &b(77)));
        assert!(check_gluing_identity(&b(14), &b(42), &b(3), &b(14)));
        assert_eq!(forced_glue_order(&b(248), &b(2232), &b(3)), None);
        assert_eq!(forced_glue_order(&b(77), &b(231), &b(3)), Some(b(77)));
    }

    #[test]
    fn hyperbolic_overlattice() {
        let l = Lattice::from_rows(&[[2, 0], [0, -2]]).unwrap();
        let a = discriminant_form(&l).unwrap();
        let x = a.elements(10).unwrap().into_iter().find(|x| !a.is_zero(x) && a.q_numerator(x) == 0).unwrap();
        let m = overlattice_from_isotropic(&l, &[x]).unwrap();
        assert!(m.is_even() && m.is_unimodular());
        assert_eq!(m.signature(), (1, 1));
        assert_eq!(overlattice_from_isotropic(&l, &[]).unwrap().discriminant(), BigInt::from(4));
    }

    #[test]
    fn h2_in_lambda_cub() {
        let lc = catalog::lambda_cub();
        let sub = lc.sublattice(IntMatrix::from_rows(&[catalog::lambda_cub_h2()])).unwrap();
        let (data, n, t) = gluing_data_of(&lc, &sub).unwrap();
        assert_eq!(data.order(), 3);
        assert!(data.is_isotropic());
        assert!(check_gluing_identity(&t.discriminant(), &n.discriminant(), &lc.discriminant(), &BigInt::from(3)));
    }

    #[test]
    fn split_summand_has_trivial_glue() {
        let l = catalog::a2().direct_sum(&catalog::hyperbolic_plane());
        let sub = l.sublattice(IntMatrix::from_rows(&[[1, 0, 0, 0], [0, 1, 0, 0]])).unwrap();
        let (data, n, t) = gluing_data_of(&l, &sub).unwrap();
        assert_eq!(data.order(), 1);
        assert!(same_genus(&glue(&n, &t, &data).unwrap(), &l));
    }

    #[test]
    fn round_trip_definite() {
        let l = Lattice::from_rows(&[[2, 1, 0], [1, 4, 1], [0, 1, 6]]).unwrap();
        let sub = l.sublattice(IntMatrix::from_rows(&[[1, 1, 0]])).unwrap();
        let (data, n, t) = gluing_data_of(&l, &sub).unwrap();
        let back = glue(&n, &t, &data).unwrap();
        assert!(crate::definite::is_isometric_definite(&back, &l).unwrap().is_some());
    }
}
