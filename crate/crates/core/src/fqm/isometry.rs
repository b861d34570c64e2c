//! Isometries of finite quadratic modules.

use std::collections::HashSet;

use super::jordan::PrimaryDecomposition;
use super::{FiniteQuadraticModule, FqmElement, DEFAULT_ENUMERATION_BOUND};
use crate::error::{Error, Result};

/// A homomorphism given by the images of the source generators, written in
/// the target's coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FqmIsometry {
    images: Vec<FqmElement>,
}

impl FqmIsometry {
    /// Images of the generators without validation; check with [`FqmIsometry::new`].
    pub fn from_images(images: Vec<FqmElement>) -> Self {
        FqmIsometry { images }
    }

    /// Checks that the images define an isometric automorphism of `a`.
    pub fn new(a: &FiniteQuadraticModule, images: Vec<FqmElement>) -> Result<Self> {
        Self::between(a, a, images)
    }

    /// Checks that the images define an isometry a -> b.
    pub fn between(a: &FiniteQuadraticModule, b: &FiniteQuadraticModule, images: Vec<FqmElement>) -> Result<Self> {
        let k = a.num_generators();
        if images.len() != k || images.iter().any(|x| x.len() != b.num_generators()) {
            return Err(Error::DimensionMismatch("isometry images".into()));
        }
        if a.order() != b.order() || a.is_quadratic() != b.is_quadratic() {
            return Err(Error::InvalidParameters("modules have different orders".into()));
        }
        let mut images = images;
        for x in images.iter_mut() {
            b.reduce(x);
        }
        for i in 0..k {
            let d = a.invariant_factors()[i];
            if !b.is_zero(&b.scale(d, &images[i])) {
                return Err(Error::InvalidParameters("images do not define a homomorphism".into()));
            }
            if a.q(&a.generator(i)) != b.q(&images[i]) {
                return Err(Error::InvalidParameters("map does not preserve q".into()));
            }
            for j in 0..i {
                if a.b(&a.generator(i), &a.generator(j)) != b.b(&images[i], &images[j]) {
                    return Err(Error::InvalidParameters("map does not preserve b".into()));
                }
            }
        }
        if b.submodule(&images)?.module.order() != b.order() {
            return Err(Error::InvalidParameters("map is not bijective".into()));
        }
        Ok(FqmIsometry { images })
    }

    pub fn identity(a: &FiniteQuadraticModule) -> Self {
        FqmIsometry { images: (0..a.num_generators()).map(|i| a.generator(i)).collect() }
    }

    pub fn negation(a: &FiniteQuadraticModule) -> Self {
        FqmIsometry { images: (0..a.num_generators()).map(|i| a.neg(&a.generator(i))).collect() }
    }

    pub fn images(&self) -> &[FqmElement] {
        &self.images
    }

    /// Image of x; `target` is the codomain.
    pub fn apply(&self, target: &FiniteQuadraticModule, x: &[i64]) -> FqmElement {
        let mut y = vec![0i128; target.num_generators()];
        for (img, &c) in self.images.iter().zip(x) {
            if c != 0 {
                for (t, &v) in img.iter().enumerate() {
                    y[t] += v as i128 * c as i128;
                }
            }
        }
        y.iter().zip(target.invariant_factors()).map(|(&v, &d)| v.rem_euclid(d as i128) as i64).collect()
    }

    /// self ∘ other, both automorphisms of `a`.
    pub fn compose(&self, other: &Self, a: &FiniteQuadraticModule) -> Self {
        FqmIsometry { images: other.images.iter().map(|x| self.apply(a, x)).collect() }
    }

    pub fn is_identity(&self, a: &FiniteQuadraticModule) -> bool {
        *self == Self::identity(a)
    }

    /// Inverse of an automorphism of `a`, found as a power of it.
    pub fn inverse(&self, a: &FiniteQuadraticModule) -> Self {
        let id = Self::identity(a);
        let mut prev = id.clone();
        let mut cur = self.clone();
        while cur != id {
            prev = cur.clone();
            cur = self.compose(&cur, a);
        }
        prev
    }
}

/// All isometries between two p-groups given as the element lists of the
/// target; `limit` stops after that many solutions.
fn search(a: &FiniteQuadraticModule, b: &FiniteQuadraticModule, limit: usize, bound: u64) -> Result<Vec<FqmIsometry>> {
    if a.invariant_factors() != b.invariant_factors() || a.is_quadratic() != b.is_quadratic() {
        return Ok(vec![]);
    }
    let k = a.num_generators();
    if k == 0 {
        return Ok(vec![FqmIsometry { images: vec![] }]);
    }
    let elems = b.elements(bound)?;
    let candidates: Vec<Vec<&FqmElement>> = (0..k)
        .map(|i| {
            let g = a.generator(i);
            let d = a.invariant_factors()[i];
            let qg = a.q_numerator(&g);
            elems.iter().filter(|h| b.element_order(h) == d && b.q_numerator(h) == qg).collect()
        })
        .collect();
    let gb: Vec<Vec<i64>> = (0..k).map(|i| (0..k).map(|j| a.b_numerator(&a.generator(i), &a.generator(j))).collect()).collect();
    let mut out = Vec::new();
    let mut chosen: Vec<&FqmElement> = Vec::with_capacity(k);
    fn rec<'e>(
        i: usize,
        b: &FiniteQuadraticModule,
        candidates: &[Vec<&'e FqmElement>],
        gb: &[Vec<i64>],
        chosen: &mut Vec<&'e FqmElement>,
        out: &mut Vec<FqmIsometry>,
        limit: usize,
    ) {
        if out.len() >= limit {
            return;
        }
        if i == candidates.len() {
            out.push(FqmIsometry { images: chosen.iter().map(|x| (*x).clone()).collect() });
            return;
        }
        for &h in &candidates[i] {
            if (0..i).all(|j| b.b_numerator(h, chosen[j]) == gb[i][j]) {
                chosen.push(h);
                rec(i + 1, b, candidates, gb, chosen, out, limit);
                chosen.pop();
            }
        }
    }
    rec(0, b, &candidates, &gb, &mut chosen, &mut out, limit);
    Ok(out)
}

/// A witness isometry a -> b if one exists.
pub fn is_isometric(a: &FiniteQuadraticModule, b: &FiniteQuadraticModule) -> Result<Option<FqmIsometry>> {
    if a.order() != b.order() || a.is_quadratic() != b.is_quadratic() {
        return Ok(None);
    }
    if a.is_trivial() {
        return Ok(Some(FqmIsometry { images: vec![] }));
    }
    let da = PrimaryDecomposition::new(a)?;
    let db = PrimaryDecomposition::new(b)?;
    if da.parts.iter().map(|p| p.0).ne(db.parts.iter().map(|p| p.0)) {
        return Ok(None);
    }
    let mut local = Vec::new();
    for ((_, pa), (_, pb)) in da.parts.iter().zip(&db.parts) {
        match search(&pa.module, &pb.module, 1, u64::MAX)?.pop() {
            Some(f) => local.push(f),
            None => return Ok(None),
        }
    }
    Ok(Some(glue_local(a, b, &da, &db, &local)))
}

fn glue_local(
    a: &FiniteQuadraticModule,
    b: &FiniteQuadraticModule,
    da: &PrimaryDecomposition,
    db: &PrimaryDecomposition,
    local: &[FqmIsometry],
) -> FqmIsometry {
    let images = (0..a.num_generators())
        .map(|i| {
            let g = a.generator(i);
            let comps: Vec<FqmElement> = local
                .iter()
                .enumerate()
                .map(|(t, f)| f.apply(&db.parts[t].1.module, &da.component(a, &g, t)))
                .collect();
            db.assemble(b, &comps)
        })
        .collect();
    FqmIsometry { images }
}

/// O(A) with the default enumeration bound.
pub fn isometry_group(a: &FiniteQuadraticModule) -> Result<Vec<FqmIsometry>> {
    isometry_group_bounded(a, DEFAULT_ENUMERATION_BOUND)
}

/// O(A), sorted. Fails if |A| exceeds `bound`.
pub fn isometry_group_bounded(a: &FiniteQuadraticModule, bound: u64) -> Result<Vec<FqmIsometry>> {
    a.checked_order(bound)?;
    if a.is_trivial() {
        return Ok(vec![FqmIsometry { images: vec![] }]);
    }
    let dec = PrimaryDecomposition::new(a)?;
    let mut groups = Vec::new();
    for (_, part) in &dec.parts {
        groups.push(search(&part.module, &part.module, usize::MAX, bound)?);
    }
    let mut out: Vec<FqmIsometry> = Vec::new();
    let mut idx = vec![0usize; groups.len()];
    loop {
        let local: Vec<FqmIsometry> = idx.iter().zip(&groups).map(|(&i, g)| g[i].clone()).collect();
        out.push(glue_local(a, a, &dec, &dec, &local));
        let mut t = 0;
        loop {
            if t == idx.len() {
                out.sort();
                return Ok(out);
            }
            idx[t] += 1;
            if idx[t] < groups[t].len() {
                break;
            }
            idx[t] = 0;
            t += 1;
        }
    }
}

/// Closure of a set of automorphisms under composition.
pub fn generated_subgroup(a: &FiniteQuadraticModule, gens: &[FqmIsometry]) -> Vec<FqmIsometry> {
    let id = FqmIsometry::identity(a);
    let mut seen: HashSet<FqmIsometry> = HashSet::from([id.clone()]);
    let mut queue = vec![id];
    while let Some(f) = queue.pop() {
        for g in gens {
            let h = g.compose(&f, a);
            if seen.insert(h.clone()) {
                queue.push(h);
            }
        }
    }
    let mut out: Vec<FqmIsometry> = seen.into_iter().collect();
    out.sort();
    out
}
