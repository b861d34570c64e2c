//! Subgroups of finite quadratic modules.

use std::collections::{BTreeSet, HashSet};

use super::{FiniteQuadraticModule, FqmElement};
use crate::error::Result;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FqmSubgroup {
    generators: Vec<FqmElement>,
    /// sorted element indices
    elements: Vec<u64>,
}

impl FqmSubgroup {
    pub fn trivial(a: &FiniteQuadraticModule) -> Self {
        FqmSubgroup { generators: vec![], elements: vec![a.index_of(&a.zero())] }
    }

    /// The subgroup generated by `gens`.
    pub fn generated(a: &FiniteQuadraticModule, gens: &[FqmElement]) -> Self {
        let mut h = Self::trivial(a);
        for g in gens {
            h = h.extend(a, g);
        }
        h
    }

    fn extend(&self, a: &FiniteQuadraticModule, x: &[i64]) -> Self {
        let xi = a.index_of(x);
        if self.elements.binary_search(&xi).is_ok() {
            return self.clone();
        }
        let base: Vec<FqmElement> = self.elements.iter().map(|&i| a.element_at(i)).collect();
        let mut set: HashSet<u64> = self.elements.iter().copied().collect();
        let mut step = x.to_vec();
        while !set.contains(&a.index_of(&step)) {
            for h in &base {
                set.insert(a.index_of(&a.add(h, &step)));
            }
            step = a.add(&step, x);
        }
        let mut elements: Vec<u64> = set.into_iter().collect();
        elements.sort_unstable();
        let mut generators = self.generators.clone();
        generators.push(x.to_vec());
        FqmSubgroup { generators, elements }
    }

    pub fn generators(&self) -> &[FqmElement] {
        &self.generators
    }

    pub fn element_indices(&self) -> &[u64] {
        &self.elements
    }

    pub fn elements(&self, a: &FiniteQuadraticModule) -> Vec<FqmElement> {
        self.elements.iter().map(|&i| a.element_at(i)).collect()
    }

    pub fn order(&self) -> u64 {
        self.elements.len() as u64
    }

    pub fn contains(&self, a: &FiniteQuadraticModule, x: &[i64]) -> bool {
        self.elements.binary_search(&a.index_of(x)).is_ok()
    }

    pub fn is_isotropic(&self, a: &FiniteQuadraticModule) -> bool {
        self.elements.iter().all(|&i| a.q_numerator(&a.element_at(i)) == 0)
    }
}

/// All subgroups whose order divides `m` (or all, if `m` is None) and whose
/// elements satisfy `admissible`, closed under the pairwise test `compatible`.
fn enumerate<F, G>(a: &FiniteQuadraticModule, m: Option<u64>, bound: u64, admissible: F, compatible: G) -> Result<Vec<FqmSubgroup>>
where
    F: Fn(&FqmElement) -> bool,
    G: Fn(&FqmSubgroup, &FqmElement) -> bool,
{
    let elems: Vec<FqmElement> = a.elements(bound)?.into_iter().filter(|x| admissible(x)).collect();
    let divides = |n: u64| m.is_none_or(|m| m % n == 0);
    let mut seen: BTreeSet<Vec<u64>> = BTreeSet::new();
    let start = FqmSubgroup::trivial(a);
    seen.insert(start.elements.clone());
    let mut all = vec![start.clone()];
    let mut frontier = vec![start];
    while let Some(h) = frontier.pop() {
        for x in &elems {
            if h.contains(a, x) || !compatible(&h, x) {
                continue;
            }
            let g = h.extend(a, x);
            if divides(g.order()) && seen.insert(g.elements.clone()) {
                all.push(g.clone());
                frontier.push(g);
            }
        }
    }
    all.sort_by(|x, y| x.order().cmp(&y.order()).then_with(|| x.elements.cmp(&y.elements)));
    Ok(all)
}

/// All isotropic subgroups, ordered by size then elements.
pub fn isotropic_subgroups(a: &FiniteQuadraticModule, bound: u64) -> Result<Vec<FqmSubgroup>> {
    enumerate(
        a,
        None,
        bound,
        |x| a.q_numerator(x) == 0,
        |h, x| h.generators.iter().all(|g| a.b_numerator(g, x) == 0),
    )
}

/// All subgroups of order exactly `m`.
pub fn subgroups_of_order(a: &FiniteQuadraticModule, m: u64, bound: u64) -> Result<Vec<FqmSubgroup>> {
    let all = enumerate(a, Some(m), bound, |x| m.is_multiple_of(a.element_order(x) as u64), |_, _| true)?;
    Ok(all.into_iter().filter(|h| h.order() == m).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fqm::discriminant_form;
    use crate::lattice::Lattice;

    #[test]
    fn isotropic_examples() {
        let a = discriminant_form(&Lattice::from_rows(&[[2, 0], [0, -2]]).unwrap()).unwrap();
        let subs = isotropic_subgroups(&a, 100).unwrap();
        assert_eq!(subs.len(), 2);
        assert_eq!(subs[1].order(), 2);
        assert!(subs.iter().all(|h| h.is_isotropic(&a)));
        let c = FiniteQuadraticModule::c3();
        assert_eq!(isotropic_subgroups(&c, 100).unwrap().len(), 1);
        let t = FiniteQuadraticModule::trivial();
        assert_eq!(isotropic_subgroups(&t, 100).unwrap().len(), 1);
    }

    #[test]
    fn subgroups_by_order() {
        // Z/3 + Z/21 has four subgroups of order 21
        let a = discriminant_form(&Lattice::from_rows(&[[12, -3], [-3, 6]]).unwrap()).unwrap();
        assert_eq!(a.invariant_factors(), &[3, 21]);
        assert_eq!(subgroups_of_order(&a, 21, 1000).unwrap().len(), 4);
        assert_eq!(subgroups_of_order(&a, 63, 1000).unwrap().len(), 1);
        assert_eq!(subgroups_of_order(&a, 1, 1000).unwrap().len(), 1);
    }
}
