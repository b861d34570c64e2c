//! Lattices presented by Gram matrices, and sublattice calculus.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::{
    determinant, gcd_all, integer_kernel, rational_inverse, smith_normal_form, symmetric_signature,
    unimodular_inverse, IntMatrix, RatMatrix,
};

/// A nondegenerate integral lattice given by its Gram matrix.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Lattice {
    gram: IntMatrix,
    signature: (usize, usize),
    det: BigInt,
    even: bool,
}

/// Coordinates of a vector in a lattice basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LatticeVector(pub Vec<i64>);

impl LatticeVector {
    pub fn new(coords: Vec<i64>) -> Self {
        LatticeVector(coords)
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    fn to_big(&self) -> Vec<BigInt> {
        self.0.iter().map(|&x| BigInt::from(x)).collect()
    }
}

impl From<Vec<i64>> for LatticeVector {
    fn from(v: Vec<i64>) -> Self {
        LatticeVector(v)
    }
}

/// A sublattice of `parent`, spanned by the rows of `basis`.
#[derive(Clone, Debug)]
pub struct Sublattice {
    parent: Lattice,
    basis: IntMatrix,
}

impl Lattice {
    pub fn new(gram: IntMatrix) -> Result<Self> {
        if !gram.is_square() {
            return Err(Error::NonSquare { rows: gram.rows(), cols: gram.cols() });
        }
        if !gram.is_symmetric() {
            return Err(Error::NotSymmetric);
        }
        let det = determinant(&gram)?;
        if det.is_zero() {
            return Err(Error::Degenerate);
        }
        let signature = symmetric_signature(&gram)?;
        let even = (0..gram.rows()).all(|i| gram[(i, i)].is_even());
        Ok(Lattice { gram, signature, det, even })
    }

    pub fn from_rows<R: AsRef<[i64]>>(rows: &[R]) -> Result<Self> {
        Self::new(IntMatrix::try_from_rows(rows)?)
    }

    /// The rank-0 lattice.
    pub fn empty() -> Self {
        Lattice { gram: IntMatrix::zeros(0, 0), signature: (0, 0), det: BigInt::one(), even: true }
    }

    pub fn gram(&self) -> &IntMatrix {
        &self.gram
    }

    pub fn rank(&self) -> usize {
        self.gram.rows()
    }

    pub fn signature(&self) -> (usize, usize) {
        self.signature
    }

    /// Signed determinant of the Gram matrix.
    pub fn det(&self) -> &BigInt {
        &self.det
    }

    /// |det|, the order of the discriminant group.
    pub fn discriminant(&self) -> BigInt {
        self.det.abs()
    }

    pub fn is_even(&self) -> bool {
        self.even
    }

    pub fn is_unimodular(&self) -> bool {
        self.det.abs().is_one()
    }

    pub fn is_positive_definite(&self) -> bool {
        self.signature.1 == 0
    }

    pub fn gram_i64(&self) -> Result<Vec<Vec<i64>>> {
        self.gram.to_i64_rows()
    }

    fn check_vector(&self, v: &LatticeVector) -> Result<()> {
        if v.len() != self.rank() {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} in a lattice of rank {}",
                v.len(),
                self.rank()
            )));
        }
        Ok(())
    }

    pub fn inner_product(&self, v: &LatticeVector, w: &LatticeVector) -> Result<BigInt> {
        self.check_vector(v)?;
        self.check_vector(w)?;
        let gw = self.gram.mul_vec(&w.to_big())?;
        Ok(v.0.iter().zip(&gw).map(|(&a, b)| BigInt::from(a) * b).sum())
    }

    pub fn norm(&self, v: &LatticeVector) -> Result<BigInt> {
        self.inner_product(v, v)
    }

    /// gcd of all pairings of `v` with the lattice, i.e. of the entries of gram * v.
    pub fn divisibility(&self, v: &LatticeVector) -> Result<BigInt> {
        self.check_vector(v)?;
        if v.is_zero() {
            return Err(Error::ZeroVector);
        }
        let gv = self.gram.mul_vec(&v.to_big())?;
        Ok(gcd_all(&gv))
    }

    pub fn rescale(&self, s: i64) -> Result<Lattice> {
        if s == 0 {
            return Err(Error::ZeroScale);
        }
        Lattice::new(self.gram.scale(&BigInt::from(s)))
    }

    pub fn direct_sum(&self, other: &Lattice) -> Lattice {
        Lattice {
            gram: self.gram.block_diagonal(&other.gram),
            signature: (self.signature.0 + other.signature.0, self.signature.1 + other.signature.1),
            det: &self.det * &other.det,
            even: self.even && other.even,
        }
    }

    pub fn direct_sum_all<'a, I: IntoIterator<Item = &'a Lattice>>(parts: I) -> Lattice {
        parts.into_iter().fold(Lattice::empty(), |acc, l| acc.direct_sum(l))
    }

    /// Gram matrix of the basis change given by the columns of `p`: p^T G p.
    pub fn transform(&self, p: &IntMatrix) -> Result<Lattice> {
        Lattice::new(p.transpose().mul(&self.gram)?.mul(p)?)
    }

    /// Lattice spanned by the given rows (in this lattice's coordinates).
    pub fn sublattice_gram(&self, basis: &IntMatrix) -> Result<Lattice> {
        Lattice::new(basis.mul(&self.gram)?.mul(&basis.transpose())?)
    }

    pub fn sublattice(&self, basis: IntMatrix) -> Result<Sublattice> {
        Sublattice::new(self.clone(), basis)
    }

    pub fn dual_gram(&self) -> RatMatrix {
        rational_inverse(&self.gram).expect("nondegenerate lattice")
    }

    /// Smith data of the Gram matrix describing the discriminant group.
    pub fn discriminant_group(&self) -> DiscriminantGroup {
        DiscriminantGroup::new(self)
    }
}

/// The finite group L^v / L with the coordinate maps needed to move between
/// dual vectors and group elements.
///
/// Dual vectors are written in the rational coordinates of the lattice basis:
/// x lies in the dual iff gram * x is integral. With u * gram * v = s, the
/// class of x has coordinates u * gram * x reduced modulo the invariant factors.
#[derive(Clone, Debug)]
pub struct DiscriminantGroup {
    gram: IntMatrix,
    u: IntMatrix,
    v: IntMatrix,
    /// positions of the nontrivial invariant factors in the smith form
    positions: Vec<usize>,
    factors: Vec<BigInt>,
}

impl DiscriminantGroup {
    fn new(l: &Lattice) -> Self {
        let snf = smith_normal_form(&l.gram);
        let mut positions = Vec::new();
        let mut factors = Vec::new();
        for i in 0..l.rank() {
            let d = snf.s[(i, i)].clone();
            if !d.is_one() {
                positions.push(i);
                factors.push(d);
            }
        }
        DiscriminantGroup { gram: l.gram.clone(), u: snf.u, v: snf.v, positions, factors }
    }

    pub fn factors(&self) -> &[BigInt] {
        &self.factors
    }

    pub fn order(&self) -> BigInt {
        self.factors.iter().product()
    }

    /// Dual vector representing the i-th generator.
    pub fn generator_vector(&self, i: usize) -> Vec<BigRational> {
        let p = self.positions[i];
        let d = &self.factors[i];
        self.v.column(p).into_iter().map(|x| BigRational::new(x, d.clone())).collect()
    }

    pub fn generator_vectors(&self) -> Vec<Vec<BigRational>> {
        (0..self.factors.len()).map(|i| self.generator_vector(i)).collect()
    }

    /// Group coordinates of a dual vector. Fails if `x` is not in the dual.
    pub fn coordinates(&self, x: &[BigRational]) -> Result<Vec<BigInt>> {
        let gx = self.gram.to_rational().mul_vec(x)?;
        let gx: Vec<BigInt> = gx
            .iter()
            .map(|c| if c.is_integer() { Ok(c.to_integer()) } else { Err(Error::Precondition("vector is not in the dual lattice".into())) })
            .collect::<Result<_>>()?;
        let ugx = self.u.mul_vec(&gx)?;
        Ok(self.positions.iter().zip(&self.factors).map(|(&p, d)| ugx[p].mod_floor(d)).collect())
    }

    /// Pairing of two dual vectors (rational).
    pub fn pairing(&self, x: &[BigRational], y: &[BigRational]) -> BigRational {
        let g = self.gram.to_rational();
        let gy = g.mul_vec(y).expect("dimensions");
        x.iter().zip(&gy).map(|(a, b)| a * b).sum()
    }
}

impl Sublattice {
    pub fn new(parent: Lattice, basis: IntMatrix) -> Result<Self> {
        if basis.cols() != parent.rank() {
            return Err(Error::DimensionMismatch("sublattice basis width".into()));
        }
        if basis.rows() > 0 && smith_normal_form(&basis).rank() != basis.rows() {
            return Err(Error::InvalidParameters("sublattice generators are linearly dependent".into()));
        }
        Ok(Sublattice { parent, basis })
    }

    pub fn parent(&self) -> &Lattice {
        &self.parent
    }

    pub fn basis(&self) -> &IntMatrix {
        &self.basis
    }

    pub fn rank(&self) -> usize {
        self.basis.rows()
    }

    /// The induced lattice on this sublattice.
    pub fn lattice(&self) -> Result<Lattice> {
        if self.rank() == 0 {
            return Ok(Lattice::empty());
        }
        self.parent.sublattice_gram(&self.basis)
    }

    /// Index of the sublattice in its saturation.
    pub fn saturation_index(&self) -> BigInt {
        smith_normal_form(&self.basis).invariant_factors().iter().product()
    }

    pub fn is_primitive(&self) -> bool {
        self.saturation_index().is_one()
    }

    /// Smallest primitive sublattice containing this one.
    pub fn saturation(&self) -> Sublattice {
        if self.rank() == 0 {
            return self.clone();
        }
        let snf = smith_normal_form(&self.basis);
        let vinv = unimodular_inverse(&snf.v).expect("unimodular");
        let idx: Vec<usize> = (0..self.rank()).collect();
        Sublattice { parent: self.parent.clone(), basis: vinv.select_rows(&idx) }
    }

    /// All parent vectors orthogonal to this sublattice.
    pub fn orthogonal_complement(&self) -> Sublattice {
        let n = self.parent.rank();
        if self.rank() == 0 {
            return Sublattice { parent: self.parent.clone(), basis: IntMatrix::identity(n) };
        }
        let m = self.basis.mul(self.parent.gram()).expect("dimensions");
        Sublattice { parent: self.parent.clone(), basis: integer_kernel(&m) }
    }

    /// Row space equality over Z.
    pub fn same_span(&self, other: &Sublattice) -> bool {
        if self.rank() != other.rank() || self.parent.rank() != other.parent.rank() {
            return false;
        }
        let stacked = IntMatrix::from_big_rows(
            self.basis.to_rows().into_iter().chain(other.basis.to_rows()).collect(),
            self.parent.rank(),
        )
        .expect("widths");
        let a: BigInt = smith_normal_form(&stacked).invariant_factors().iter().product();
        smith_normal_form(&stacked).rank() == self.rank()
            && a == self.saturation_index()
            && a == other.saturation_index()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(x: i64) -> BigInt {
        BigInt::from(x)
    }

    #[test]
    fn make_lattice_examples() {
        let l10 = Lattice::from_rows(&[[3, 1, 1], [1, 3, 0], [1, 0, 10]]).unwrap();
        assert!(!l10.is_even());
        assert_eq!(l10.discriminant(), big(77));
        assert_eq!(l10.signature(), (3, 0));
        let u = Lattice::from_rows(&[[0, 1], [1, 0]]).unwrap();
        assert!(u.is_even() && u.is_unimodular());
        let a2 = Lattice::from_rows(&[[2, -1], [-1, 2]]).unwrap();
        assert!(a2.is_even());
        assert_eq!(a2.discriminant(), big(3));
        assert_eq!(Lattice::from_rows(&[[1, 2], [3, 4]]), Err(Error::NotSymmetric));
        assert_eq!(Lattice::from_rows(&[[1, 1], [1, 1]]), Err(Error::Degenerate));
    }

    #[test]
    fn inner_products() {
        let cube = Lattice::from_rows(&[[1, 0, 0], [0, 1, 0], [0, 0, 1]]).unwrap();
        let h2 = LatticeVector::new(vec![1, 1, 1]);
        assert_eq!(cube.norm(&h2).unwrap(), big(3));
        assert_eq!(cube.inner_product(&h2, &LatticeVector::new(vec![0, 0, 0])).unwrap(), big(0));
        let l29 = Lattice::from_rows(&[[14, 2], [2, 18]]).unwrap();
        assert_eq!(l29.norm(&LatticeVector::new(vec![1, 0])).unwrap(), big(14));
        assert!(matches!(l29.norm(&h2), Err(Error::DimensionMismatch(_))));
    }

    #[test]
    fn divisibility_examples() {
        let np = Lattice::from_rows(&[[6, -3], [-3, 40]]).unwrap();
        assert_eq!(np.divisibility(&LatticeVector::new(vec![1, 0])).unwrap(), big(3));
        let u = Lattice::from_rows(&[[0, 1], [1, 0]]).unwrap();
        assert_eq!(u.divisibility(&LatticeVector::new(vec![1, 0])).unwrap(), big(1));
        assert_eq!(u.divisibility(&LatticeVector::new(vec![2, 0])).unwrap(), big(2));
        assert_eq!(u.divisibility(&LatticeVector::new(vec![0, 0])), Err(Error::ZeroVector));
    }

    #[test]
    fn rescaling() {
        let a2 = Lattice::from_rows(&[[2, -1], [-1, 2]]).unwrap();
        assert_eq!(a2.rescale(-1).unwrap().signature(), (0, 2));
        assert_eq!(a2.rescale(1).unwrap(), a2);
        assert_eq!(Lattice::from_rows(&[[1]]).unwrap().rescale(3).unwrap().gram(), &IntMatrix::from_rows(&[[3]]));
        assert_eq!(a2.rescale(0), Err(Error::ZeroScale));
    }

    #[test]
    fn saturation_examples() {
        let u = Lattice::from_rows(&[[0, 1], [1, 0]]).unwrap();
        let s = u.sublattice(IntMatrix::from_rows(&[[2, 0]])).unwrap();
        assert!(!s.is_primitive());
        assert_eq!(s.saturation().basis(), &IntMatrix::from_rows(&[[1, 0]]));
        let p = u.sublattice(IntMatrix::from_rows(&[[1, 1]])).unwrap();
        assert!(p.saturation().same_span(&p));
        let a2 = Lattice::from_rows(&[[2, -1], [-1, 2]]).unwrap();
        let full = a2.sublattice(IntMatrix::from_rows(&[[3, 0], [0, 3]])).unwrap().saturation();
        assert_eq!(full.saturation_index(), big(1));
        assert_eq!(full.rank(), 2);
    }

    #[test]
    fn complement_examples() {
        let two = Lattice::from_rows(&[[1, 0], [0, 1]]).unwrap();
        let t = two.sublattice(IntMatrix::from_rows(&[[1, 0]])).unwrap().orthogonal_complement();
        assert_eq!(t.lattice().unwrap().gram(), &IntMatrix::from_rows(&[[1]]));
    }

    #[test]
    fn discriminant_group_coordinates() {
        let a2 = Lattice::from_rows(&[[2, -1], [-1, 2]]).unwrap();
        let dg = a2.discriminant_group();
        assert_eq!(dg.factors(), &[big(3)]);
        let g = dg.generator_vector(0);
        assert_eq!(dg.coordinates(&g).unwrap(), vec![big(1)]);
        let n = dg.pairing(&g, &g);
        assert_eq!((n * BigRational::from_integer(big(3))).denom(), &big(1));
    }
}
