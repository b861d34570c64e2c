//! Finite quadratic modules.
//!
//! A module is stored in invariant-factor form d_1 | d_2 | ... | d_k (each > 1)
//! with level e = d_k. The forms are kept as integer numerators over e:
//! b(g_i, g_j) = n_ij / e mod 1 for i != j and q(g_i) = n_ii / e mod 2.
//! Modules coming from odd lattices only carry the bilinear form; for those
//! the diagonal numerators are b(g_i, g_i) mod 1.

mod isometry;
mod jordan;
mod subgroup;

pub use isometry::{generated_subgroup, is_isometric, isometry_group, isometry_group_bounded, FqmIsometry};
pub use jordan::{coprime_part, jordan_components, primary_decomposition, primary_part, split_off_3, JordanComponent, JordanKind, PrimaryDecomposition};
pub use subgroup::{isotropic_subgroups, subgroups_of_order, FqmSubgroup};

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::lattice::{DiscriminantGroup, Lattice};
use crate::linalg::{integer_kernel, rational_inverse, row_span_basis, smith_normal_form, unimodular_inverse, IntMatrix, RatMatrix};

/// Default cap on the order of modules that get enumerated element by element.
pub const DEFAULT_ENUMERATION_BOUND: u64 = 10_000;

/// Largest level accepted; keeps element arithmetic inside i128 comfortably.
const MAX_LEVEL: i64 = 1 << 40;

/// Coordinates of an element with respect to the module generators.
pub type FqmElement = Vec<i64>;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FiniteQuadraticModule {
    factors: Vec<i64>,
    level: i64,
    gram: Vec<Vec<i64>>,
    quadratic: bool,
}

pub(crate) fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Reduce a rational into [0, m).
pub(crate) fn reduce_mod(r: &BigRational, m: i64) -> BigRational {
    let m = BigRational::from_integer(BigInt::from(m));
    let k = (r / &m).floor();
    r - k * m
}

fn to_i64(x: &BigInt) -> Result<i64> {
    x.to_i64().ok_or_else(|| Error::Overflow(format!("{x} does not fit in 64 bits")))
}

impl FiniteQuadraticModule {
    pub fn trivial() -> Self {
        FiniteQuadraticModule { factors: vec![], level: 1, gram: vec![], quadratic: true }
    }

    /// Builds a module from invariant factors and rational values of the forms
    /// on the generators. `q[i]` is taken mod 2 and `b[i][j]` mod 1.
    pub fn from_rationals(factors: &[i64], q: &[BigRational], b: &[Vec<BigRational>]) -> Result<Self> {
        Self::from_values(factors, Some(q), b)
    }

    /// A module carrying only a bilinear form, as for odd lattices.
    pub fn from_bilinear(factors: &[i64], b: &[Vec<BigRational>]) -> Result<Self> {
        Self::from_values(factors, None, b)
    }

    fn from_values(factors: &[i64], q: Option<&[BigRational]>, b: &[Vec<BigRational>]) -> Result<Self> {
        let k = factors.len();
        if q.is_some_and(|q| q.len() != k) || b.len() != k || b.iter().any(|r| r.len() != k) {
            return Err(Error::DimensionMismatch("form values do not match the number of generators".into()));
        }
        for (i, &d) in factors.iter().enumerate() {
            if d <= 1 {
                return Err(Error::InvalidParameters("invariant factors must exceed 1".into()));
            }
            if i + 1 < k && factors[i + 1] % d != 0 {
                return Err(Error::InvalidParameters("invariant factors must form a divisibility chain".into()));
            }
        }
        for i in 0..k {
            for j in 0..k {
                if reduce_mod(&(&b[i][j] - &b[j][i]), 1) != BigRational::zero() {
                    return Err(Error::InvalidParameters("bilinear form is not symmetric".into()));
                }
            }
            if q.is_some_and(|q| reduce_mod(&(&q[i] - &b[i][i]), 1) != BigRational::zero()) {
                return Err(Error::InvalidParameters("q(x) and b(x, x) disagree mod 1".into()));
            }
        }
        let p = Presentation {
            orders: factors.iter().map(|&d| BigInt::from(d)).collect(),
            q: q.map(|q| q.to_vec()),
            b: b.to_vec(),
        };
        Self::from_generators(&p)
    }

    /// Cyclic module Z/n with q(g) = value.
    pub fn cyclic(n: i64, value: BigRational) -> Result<Self> {
        if n == 1 {
            return Ok(Self::trivial());
        }
        let b = reduce_mod(&value, 1);
        Self::from_rationals(&[n], &[value], &[vec![b]])
    }

    /// The module C3 with q(g) = 2/3, the discriminant form of A2.
    pub fn c3() -> Self {
        Self::cyclic(3, rat(2, 3)).expect("C3")
    }

    /// Validates a presentation whose generators already have the listed
    /// orders in a divisibility chain.
    fn from_generators(p: &Presentation) -> Result<Self> {
        let factors: Vec<i64> = p.orders.iter().map(to_i64).collect::<Result<_>>()?;
        let level = factors.last().copied().unwrap_or(1);
        if level > MAX_LEVEL {
            return Err(Error::Overflow(format!("module level {level} is too large")));
        }
        let k = factors.len();
        let e = BigRational::from_integer(BigInt::from(level));
        let mut gram = vec![vec![0i64; k]; k];
        for i in 0..k {
            for j in 0..k {
                let d = BigRational::from_integer(BigInt::from(factors[i]));
                if !(&p.b[i][j] * &d).is_integer() {
                    return Err(Error::InvalidParameters("bilinear form is not well defined on the group".into()));
                }
                let val = if i == j {
                    match &p.q {
                        Some(q) => {
                            if !(&q[i] * &d * &d / BigRational::from_integer(BigInt::from(2))).is_integer() {
                                return Err(Error::InvalidParameters("quadratic form is not well defined on the group".into()));
                            }
                            reduce_mod(&(&q[i] * &e), 2 * level)
                        }
                        None => reduce_mod(&(&p.b[i][j] * &e), level),
                    }
                } else {
                    reduce_mod(&(&p.b[i][j] * &e), level)
                };
                if !val.is_integer() {
                    return Err(Error::InvalidParameters("form values are not compatible with the level".into()));
                }
                gram[i][j] = to_i64(&val.to_integer())?;
            }
        }
        Ok(FiniteQuadraticModule { factors, level, gram, quadratic: p.q.is_some() })
    }

    pub fn invariant_factors(&self) -> &[i64] {
        &self.factors
    }

    pub fn num_generators(&self) -> usize {
        self.factors.len()
    }

    pub fn level(&self) -> i64 {
        self.level
    }

    /// Whether q is defined (false for modules of odd lattices).
    pub fn is_quadratic(&self) -> bool {
        self.quadratic
    }

    pub fn order(&self) -> BigInt {
        self.factors.iter().map(|&d| BigInt::from(d)).product()
    }

    /// Order as u64, if it fits.
    pub fn order_u64(&self) -> Option<u64> {
        self.factors.iter().try_fold(1u64, |acc, &d| acc.checked_mul(d as u64))
    }

    pub fn is_trivial(&self) -> bool {
        self.factors.is_empty()
    }

    pub(crate) fn gram_numerators(&self) -> &[Vec<i64>] {
        &self.gram
    }

    pub fn zero(&self) -> FqmElement {
        vec![0; self.factors.len()]
    }

    pub fn generator(&self, i: usize) -> FqmElement {
        let mut x = self.zero();
        x[i] = 1;
        x
    }

    pub fn reduce(&self, x: &mut [i64]) {
        for (c, &d) in x.iter_mut().zip(&self.factors) {
            *c = c.rem_euclid(d);
        }
    }

    pub fn add(&self, x: &[i64], y: &[i64]) -> FqmElement {
        x.iter().zip(y).zip(&self.factors).map(|((a, b), &d)| (a + b).rem_euclid(d)).collect()
    }

    pub fn neg(&self, x: &[i64]) -> FqmElement {
        x.iter().zip(&self.factors).map(|(a, &d)| (-a).rem_euclid(d)).collect()
    }

    pub fn scale(&self, c: i64, x: &[i64]) -> FqmElement {
        x.iter()
            .zip(&self.factors)
            .map(|(&a, &d)| ((c as i128 * a as i128).rem_euclid(d as i128)) as i64)
            .collect()
    }

    pub fn is_zero(&self, x: &[i64]) -> bool {
        x.iter().zip(&self.factors).all(|(a, &d)| a.rem_euclid(d) == 0)
    }

    pub fn element_order(&self, x: &[i64]) -> i64 {
        x.iter().zip(&self.factors).fold(1, |acc, (&a, &d)| acc.lcm(&(d / d.gcd(&a))))
    }

    /// Numerator of b(x, y) over the level, in [0, level).
    pub fn b_numerator(&self, x: &[i64], y: &[i64]) -> i64 {
        let e = self.level as i128;
        let mut s: i128 = 0;
        for (i, &xi) in x.iter().enumerate() {
            if xi == 0 {
                continue;
            }
            let mut row: i128 = 0;
            for (j, &yj) in y.iter().enumerate() {
                row = (row + self.gram[i][j] as i128 * yj as i128) % e;
            }
            s = (s + row * xi as i128) % e;
        }
        s.rem_euclid(e) as i64
    }

    /// Numerator of q(x) over the level, in [0, 2 level).
    pub fn q_numerator(&self, x: &[i64]) -> i64 {
        let m = 2 * self.level as i128;
        if !self.quadratic {
            return self.b_numerator(x, x);
        }
        let mut s: i128 = 0;
        for (i, &xi) in x.iter().enumerate() {
            if xi == 0 {
                continue;
            }
            let xi = xi as i128;
            s = (s + self.gram[i][i] as i128 * (xi * xi % m)) % m;
            for (j, &xj) in x.iter().enumerate().skip(i + 1) {
                s = (s + 2 * (self.gram[i][j] as i128 * (xi * xj as i128 % m) % m)) % m;
            }
        }
        s.rem_euclid(m) as i64
    }

    /// b(x, y) in [0, 1).
    pub fn b(&self, x: &[i64], y: &[i64]) -> BigRational {
        rat(self.b_numerator(x, y), self.level)
    }

    /// q(x) in [0, 2). For modules without a quadratic form this is b(x, x).
    pub fn q(&self, x: &[i64]) -> BigRational {
        rat(self.q_numerator(x), self.level)
    }

    /// Values q(g_i) in [0, 2).
    pub fn q_values(&self) -> Vec<BigRational> {
        (0..self.num_generators()).map(|i| self.q(&self.generator(i))).collect()
    }

    /// Values b(g_i, g_j) in [0, 1).
    pub fn b_values(&self) -> Vec<Vec<BigRational>> {
        let k = self.num_generators();
        (0..k).map(|i| (0..k).map(|j| self.b(&self.generator(i), &self.generator(j))).collect()).collect()
    }

    /// Mixed-radix index of a reduced element.
    pub fn index_of(&self, x: &[i64]) -> u64 {
        let mut idx = 0u64;
        for (a, &d) in x.iter().zip(&self.factors).rev() {
            idx = idx * d as u64 + a.rem_euclid(d) as u64;
        }
        idx
    }

    pub fn element_at(&self, mut idx: u64) -> FqmElement {
        self.factors
            .iter()
            .map(|&d| {
                let c = (idx % d as u64) as i64;
                idx /= d as u64;
                c
            })
            .collect()
    }

    /// All elements in index order. Fails above `bound`.
    pub fn elements(&self, bound: u64) -> Result<Vec<FqmElement>> {
        let n = self.checked_order(bound)?;
        Ok((0..n).map(|i| self.element_at(i)).collect())
    }

    pub fn checked_order(&self, bound: u64) -> Result<u64> {
        match self.order_u64() {
            Some(n) if n <= bound => Ok(n),
            Some(n) => Err(Error::EnumerationBound { size: n, bound }),
            None => Err(Error::EnumerationBound { size: u64::MAX, bound }),
        }
    }

    /// Multiplies both forms by `s`.
    pub fn rescale(&self, s: i64) -> Result<Self> {
        if s == 0 {
            return Err(Error::ZeroScale);
        }
        let p = self.presentation();
        let factor = BigRational::from_integer(BigInt::from(s));
        let scaled = Presentation {
            orders: p.orders.clone(),
            q: p.q.as_ref().map(|q| q.iter().map(|v| v * &factor).collect()),
            b: p.b.iter().map(|r| r.iter().map(|v| v * &factor).collect()).collect(),
        };
        Self::from_generators(&scaled)
    }

    /// Orthogonal direct sum, renormalized to invariant-factor form.
    pub fn direct_sum(&self, other: &Self) -> Self {
        self.direct_sum_with_maps(other).0
    }

    /// Orthogonal direct sum together with coordinate maps from the summands.
    pub fn direct_sum_with_maps(&self, other: &Self) -> (Self, Quotient) {
        let a = self.presentation();
        let b = other.presentation();
        let (k1, k2) = (self.num_generators(), other.num_generators());
        let k = k1 + k2;
        let mut bm = vec![vec![BigRational::zero(); k]; k];
        for i in 0..k1 {
            for j in 0..k1 {
                bm[i][j] = a.b[i][j].clone();
            }
        }
        for i in 0..k2 {
            for j in 0..k2 {
                bm[k1 + i][k1 + j] = b.b[i][j].clone();
            }
        }
        let q = match (a.q, b.q) {
            (Some(qa), Some(qb)) => Some(qa.into_iter().chain(qb).collect()),
            _ => None,
        };
        let p = Presentation { orders: a.orders.into_iter().chain(b.orders).collect(), q, b: bm };
        let quot = p.quotient(&IntMatrix::identity(k), &p.relations()).expect("direct sum of valid modules");
        (quot.module.clone(), quot)
    }

    pub(crate) fn presentation(&self) -> Presentation {
        let k = self.num_generators();
        let e = self.level;
        Presentation {
            orders: self.factors.iter().map(|&d| BigInt::from(d)).collect(),
            q: self.quadratic.then(|| (0..k).map(|i| rat(self.gram[i][i], e)).collect()),
            b: (0..k).map(|i| (0..k).map(|j| reduce_mod(&rat(self.gram[i][j], e), 1)).collect()).collect(),
        }
    }

    fn relations(&self) -> IntMatrix {
        IntMatrix::diagonal(&self.factors.iter().map(|&d| BigInt::from(d)).collect::<Vec<_>>())
    }

    /// Rows generating the preimage in Z^k of the subgroup spanned by `gens`.
    fn preimage(&self, gens: &[FqmElement]) -> IntMatrix {
        let k = self.num_generators();
        let mut rows: Vec<Vec<BigInt>> = gens.iter().map(|g| g.iter().map(|&c| BigInt::from(c)).collect()).collect();
        rows.extend(self.relations().to_rows());
        IntMatrix::from_big_rows(rows, k).expect("widths")
    }

    /// Rows generating the preimage in Z^k of the orthogonal complement of `gens`.
    fn perp_preimage(&self, gens: &[FqmElement]) -> IntMatrix {
        let k = self.num_generators();
        let l = gens.len();
        if l == 0 {
            return IntMatrix::identity(k);
        }
        // x is in the preimage iff x . c_t = 0 mod e for the columns c_t = gram * h_t
        let mut m = IntMatrix::zeros(l, k + l);
        for (t, h) in gens.iter().enumerate() {
            for i in 0..k {
                let mut s: i128 = 0;
                for (j, &hj) in h.iter().enumerate() {
                    s += self.gram[i][j] as i128 * hj as i128;
                }
                m[(t, i)] = BigInt::from(s.rem_euclid(self.level as i128));
            }
            m[(t, k + t)] = BigInt::from(self.level);
        }
        let ker = integer_kernel(&m);
        let rows: Vec<Vec<BigInt>> = ker.to_rows().into_iter().map(|r| r[..k].to_vec()).collect();
        let proj = IntMatrix::from_big_rows(rows, k).expect("widths");
        row_span_basis(&proj)
    }

    /// The subgroup generated by `gens` as a module with the restricted forms,
    /// together with coordinate maps.
    pub fn submodule(&self, gens: &[FqmElement]) -> Result<Quotient> {
        self.presentation().quotient(&self.preimage(gens), &self.relations())
    }

    /// The orthogonal complement of the subgroup generated by `gens`.
    pub fn orthogonal_submodule(&self, gens: &[FqmElement]) -> Result<Quotient> {
        self.presentation().quotient(&self.perp_preimage(gens), &self.relations())
    }

    /// H^⊥/H for an isotropic subgroup H generated by `gens`.
    pub fn perp_quotient(&self, gens: &[FqmElement]) -> Result<Quotient> {
        for (i, x) in gens.iter().enumerate() {
            if self.quadratic && self.q_numerator(x) != 0 {
                return Err(Error::NotIsotropic);
            }
            for y in &gens[i..] {
                if self.b_numerator(x, y) != 0 {
                    return Err(Error::NotIsotropic);
                }
            }
        }
        self.presentation().quotient(&self.perp_preimage(gens), &self.preimage(gens))
    }

    /// Whether b induces an isomorphism onto the dual group.
    pub fn is_nondegenerate(&self) -> bool {
        let gens: Vec<FqmElement> = (0..self.num_generators()).map(|i| self.generator(i)).collect();
        match self.orthogonal_submodule(&gens) {
            Ok(r) => r.module.is_trivial(),
            Err(_) => false,
        }
    }

    /// Serializable description: invariant factors, q values, b values.
    pub fn describe(&self) -> FqmDescription {
        FqmDescription {
            invariant_factors: self.factors.clone(),
            q: self.q_values(),
            b: self.b_values(),
            quadratic: self.quadratic,
        }
    }
}

impl fmt::Debug for FiniteQuadraticModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for FiniteQuadraticModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.factors.iter().map(|d| format!("Z/{d}")).collect();
        write!(f, "{} q=[", parts.join("+"))?;
        let qs: Vec<String> = self.q_values().iter().map(|v| v.to_string()).collect();
        write!(f, "{}]", qs.join(","))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FqmDescription {
    pub invariant_factors: Vec<i64>,
    pub q: Vec<BigRational>,
    pub b: Vec<Vec<BigRational>>,
    pub quadratic: bool,
}

/// Generators with given orders (not necessarily a divisibility chain) and
/// rational form values. Used to build modules as subquotients of Z^k.
#[derive(Clone, Debug)]
pub(crate) struct Presentation {
    pub orders: Vec<BigInt>,
    pub q: Option<Vec<BigRational>>,
    pub b: Vec<Vec<BigRational>>,
}

impl Presentation {
    fn relations(&self) -> IntMatrix {
        IntMatrix::diagonal(&self.orders)
    }

    fn b_of(&self, x: &[BigInt], y: &[BigInt]) -> BigRational {
        let mut s = BigRational::zero();
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if !yj.is_zero() {
                    s += &self.b[i][j] * BigRational::from_integer(xi * yj);
                }
            }
        }
        s
    }

    fn q_of(&self, q: &[BigRational], x: &[BigInt]) -> BigRational {
        let mut s = BigRational::zero();
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            s += &q[i] * BigRational::from_integer(xi * xi);
            for (j, xj) in x.iter().enumerate().skip(i + 1) {
                if !xj.is_zero() {
                    s += &self.b[i][j] * BigRational::from_integer(BigInt::from(2) * xi * xj);
                }
            }
        }
        s
    }

    /// The module top/bottom where both are full-rank lattices in Z^k given by
    /// generating rows, bottom contained in top.
    pub fn quotient(&self, top: &IntMatrix, bottom: &IntMatrix) -> Result<Quotient> {
        let k = self.orders.len();
        if k == 0 {
            return Ok(Quotient::trivial());
        }
        let basis = row_span_basis(top);
        if basis.rows() != k {
            return Err(Error::InvalidParameters("subquotient lattice is not of full rank".into()));
        }
        let binv = rational_inverse(&basis)?;
        // bottom rows in the coordinates of `basis`
        let rel = bottom.to_rational().mul(&binv)?.to_integer().ok_or_else(|| {
            Error::InvalidParameters("bottom lattice is not contained in the top lattice".into())
        })?;
        let snf = smith_normal_form(&rel);
        if snf.rank() != k {
            return Err(Error::InvalidParameters("subquotient is infinite".into()));
        }
        let vinv = unimodular_inverse(&snf.v)?;
        let mut keep: Vec<usize> = (0..k).filter(|&j| !snf.s[(j, j)].is_one()).collect();
        let factors: Vec<BigInt> = keep.iter().map(|&j| snf.s[(j, j)].clone()).collect();
        let gens_all: Vec<Vec<BigInt>> = keep
            .iter()
            .map(|&j| {
                let row: Vec<BigInt> = vinv.row(j).to_vec();
                IntMatrix::from_big_rows(vec![row], k).expect("width").mul(&basis).expect("dims").row(0).to_vec()
            })
            .collect();
        // canonical order: factors ascending, then q-value
        let qv: Vec<BigRational> = match &self.q {
            Some(q) => gens_all.iter().map(|g| reduce_mod(&self.q_of(q, g), 2)).collect(),
            None => gens_all.iter().map(|g| reduce_mod(&self.b_of(g, g), 1)).collect(),
        };
        let mut order: Vec<usize> = (0..keep.len()).collect();
        order.sort_by(|&a, &b| factors[a].cmp(&factors[b]).then_with(|| qv[a].cmp(&qv[b])));
        keep = order.iter().map(|&t| keep[t]).collect();
        let factors: Vec<BigInt> = order.iter().map(|&t| factors[t].clone()).collect();
        let gens: Vec<Vec<BigInt>> = order.iter().map(|&t| gens_all[t].clone()).collect();
        let m = gens.len();
        let p = Presentation {
            orders: factors,
            q: self.q.as_ref().map(|q| gens.iter().map(|g| self.q_of(q, g)).collect()),
            b: (0..m).map(|i| (0..m).map(|j| self.b_of(&gens[i], &gens[j])).collect()).collect(),
        };
        let module = FiniteQuadraticModule::from_generators(&p)?;
        let orders: Vec<i64> = self.orders.iter().map(to_i64).collect::<Result<_>>()?;
        let gens_i64: Vec<Vec<i64>> = gens
            .iter()
            .map(|g| g.iter().zip(&orders).map(|(c, &d)| to_i64(&c.mod_floor(&BigInt::from(d)))).collect::<Result<_>>())
            .collect::<Result<_>>()?;
        Ok(Quotient { module, gens: gens_i64, ambient_orders: orders, binv_v: binv.mul(&snf.v.to_rational())?, keep })
    }
}

/// A module realized as a subquotient top/bottom of an ambient presentation
/// Z^k / (orders), with maps in both directions.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub module: FiniteQuadraticModule,
    /// Ambient representatives of the module generators.
    gens: Vec<FqmElement>,
    ambient_orders: Vec<i64>,
    /// y -> y * basis^-1 * V gives Smith coordinates.
    binv_v: RatMatrix,
    keep: Vec<usize>,
}

impl Quotient {
    fn trivial() -> Self {
        Quotient {
            module: FiniteQuadraticModule::trivial(),
            gens: vec![],
            ambient_orders: vec![],
            binv_v: RatMatrix::zeros(0, 0),
            keep: vec![],
        }
    }

    /// Ambient representative of a module element.
    pub fn lift(&self, c: &[i64]) -> FqmElement {
        let mut y = vec![0i128; self.ambient_orders.len()];
        for (g, &ci) in self.gens.iter().zip(c) {
            for (t, &gt) in g.iter().enumerate() {
                y[t] += gt as i128 * ci as i128;
            }
        }
        y.iter().zip(&self.ambient_orders).map(|(&v, &d)| v.rem_euclid(d as i128) as i64).collect()
    }

    /// Module coordinates of an ambient element lying in the top lattice.
    pub fn coords(&self, y: &[i64]) -> Result<FqmElement> {
        if self.keep.is_empty() {
            return Ok(vec![]);
        }
        let row: Vec<BigRational> = y.iter().map(|&c| BigRational::from_integer(BigInt::from(c))).collect();
        let mut out = Vec::with_capacity(self.keep.len());
        for (t, &j) in self.keep.iter().enumerate() {
            let mut s = BigRational::zero();
            for (i, yi) in row.iter().enumerate() {
                s += yi * &self.binv_v[(i, j)];
            }
            if !s.is_integer() {
                return Err(Error::InvalidParameters("element is not in the subquotient".into()));
            }
            let d = BigInt::from(self.module.invariant_factors()[t]);
            out.push(to_i64(&s.to_integer().mod_floor(&d))?);
        }
        Ok(out)
    }
}

/// The discriminant module of a lattice together with the map from dual
/// vectors to module elements.
#[derive(Clone, Debug)]
pub struct LatticeDiscriminant {
    pub module: FiniteQuadraticModule,
    group: DiscriminantGroup,
    /// module generator i corresponds to smith generator perm[i]
    perm: Vec<usize>,
    rank: usize,
}

impl LatticeDiscriminant {
    pub fn new(l: &Lattice) -> Result<Self> {
        let group = l.discriminant_group();
        let vecs = group.generator_vectors();
        let k = vecs.len();
        let quadratic = l.is_even();
        let mut qv: Vec<BigRational> = vecs
            .iter()
            .map(|x| reduce_mod(&group.pairing(x, x), if quadratic { 2 } else { 1 }))
            .collect();
        let mut perm: Vec<usize> = (0..k).collect();
        perm.sort_by(|&a, &b| group.factors()[a].cmp(&group.factors()[b]).then_with(|| qv[a].cmp(&qv[b])));
        qv = perm.iter().map(|&i| qv[i].clone()).collect();
        let p = Presentation {
            orders: perm.iter().map(|&i| group.factors()[i].clone()).collect(),
            q: quadratic.then_some(qv),
            b: perm.iter().map(|&i| perm.iter().map(|&j| group.pairing(&vecs[i], &vecs[j])).collect()).collect(),
        };
        let module = FiniteQuadraticModule::from_generators(&p)?;
        Ok(LatticeDiscriminant { module, group, perm, rank: l.rank() })
    }

    /// Dual vector (rational lattice coordinates) of a generator.
    pub fn generator_vector(&self, i: usize) -> Vec<BigRational> {
        self.group.generator_vector(self.perm[i])
    }

    /// Module element of a dual vector.
    pub fn element_of(&self, x: &[BigRational]) -> Result<FqmElement> {
        let c = self.group.coordinates(x)?;
        self.perm.iter().map(|&i| to_i64(&c[i])).collect()
    }

    /// A dual vector representing the element `x`.
    pub fn vector_of(&self, x: &[i64]) -> Vec<BigRational> {
        let mut v = vec![BigRational::zero(); self.rank];
        for (i, &c) in x.iter().enumerate() {
            if c != 0 {
                let g = self.generator_vector(i);
                for (vt, gt) in v.iter_mut().zip(&g) {
                    *vt += gt * BigRational::from_integer(BigInt::from(c));
                }
            }
        }
        v
    }

    /// Induced isometry of a lattice automorphism whose columns are the images
    /// of the basis vectors.
    pub fn induced(&self, p: &IntMatrix) -> Result<FqmIsometry> {
        let pr = p.to_rational();
        let images = (0..self.module.num_generators())
            .map(|i| self.element_of(&pr.mul_vec(&self.generator_vector(i))?))
            .collect::<Result<Vec<_>>>()?;
        FqmIsometry::new(&self.module, images)
    }
}

/// The discriminant form (A_L, q_L) of an even lattice.
pub fn discriminant_form(l: &Lattice) -> Result<FiniteQuadraticModule> {
    if !l.is_even() {
        return Err(Error::OddLattice);
    }
    Ok(LatticeDiscriminant::new(l)?.module)
}

/// The discriminant group with its bilinear form; for even lattices this is
/// the full discriminant form.
pub fn discriminant_bilinear_form(l: &Lattice) -> Result<FiniteQuadraticModule> {
    Ok(LatticeDiscriminant::new(l)?.module)
}

pub fn rescale_fqm(a: &FiniteQuadraticModule, s: i64) -> Result<FiniteQuadraticModule> {
    a.rescale(s)
}

/// Milgram signature of a nondegenerate module, mod 8.
pub fn signature_mod8(a: &FiniteQuadraticModule) -> Result<u8> {
    jordan::signature_mod8(a)
}

pub(crate) use jordan::legendre as jordan_legendre;
