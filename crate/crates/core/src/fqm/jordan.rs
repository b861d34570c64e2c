//! Primary decomposition, Jordan splitting and the Milgram signature.

use num_integer::Integer;

use super::{FiniteQuadraticModule, FqmElement, Quotient};
use crate::error::{Error, Result};

pub(crate) fn prime_factors(mut n: i64) -> Vec<i64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            out.push(p);
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

pub(crate) fn p_part(n: i64, p: i64) -> i64 {
    let mut r = 1;
    let mut n = n;
    while n % p == 0 {
        n /= p;
        r *= p;
    }
    r
}

fn mod_pow(mut b: i64, mut e: i64, m: i64) -> i64 {
    let mut r: i128 = 1;
    let mut b128 = (b.rem_euclid(m)) as i128;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b128 % m as i128;
        }
        b128 = b128 * b128 % m as i128;
        e >>= 1;
    }
    b = r as i64;
    b
}

/// Legendre symbol (a/p) for an odd prime p and a unit a.
pub(crate) fn legendre(a: i64, p: i64) -> i8 {
    let r = mod_pow(a.rem_euclid(p), (p - 1) / 2, p);
    if r == 1 {
        1
    } else {
        -1
    }
}

/// A module split into its p-primary parts, with projections and reassembly.
#[derive(Clone, Debug)]
pub struct PrimaryDecomposition {
    pub parts: Vec<(i64, Quotient)>,
    idempotents: Vec<i64>,
    level: i64,
}

impl PrimaryDecomposition {
    pub fn new(a: &FiniteQuadraticModule) -> Result<Self> {
        let level = a.level();
        let mut parts = Vec::new();
        let mut idempotents = Vec::new();
        for p in prime_factors(level) {
            parts.push((p, primary_part(a, p)?));
            let pa = p_part(level, p);
            let r = level / pa;
            // e = 1 mod p^a, e = 0 mod r
            let inv = r.extended_gcd(&pa).x.rem_euclid(pa);
            idempotents.push(((r as i128 * inv as i128) % level as i128) as i64);
        }
        Ok(PrimaryDecomposition { parts, idempotents, level })
    }

    /// Coordinates of the p-component of x in the t-th part.
    pub fn component(&self, a: &FiniteQuadraticModule, x: &[i64], t: usize) -> FqmElement {
        let y = a.scale(self.idempotents[t], x);
        self.parts[t].1.coords(&y).expect("p-component lies in the primary part")
    }

    /// Sum of the lifts of the given part elements.
    pub fn assemble(&self, a: &FiniteQuadraticModule, comps: &[FqmElement]) -> FqmElement {
        let mut x = a.zero();
        for ((_, q), c) in self.parts.iter().zip(comps) {
            x = a.add(&x, &q.lift(c));
        }
        x
    }

    pub fn level(&self) -> i64 {
        self.level
    }
}

/// The p-primary part as a submodule.
pub fn primary_part(a: &FiniteQuadraticModule, p: i64) -> Result<Quotient> {
    let gens: Vec<FqmElement> = a
        .invariant_factors()
        .iter()
        .enumerate()
        .filter(|(_, &d)| d % p == 0)
        .map(|(i, &d)| a.scale(d / p_part(d, p), &a.generator(i)))
        .collect();
    a.submodule(&gens)
}

/// The part of order prime to p as a submodule.
pub fn coprime_part(a: &FiniteQuadraticModule, p: i64) -> Result<Quotient> {
    let gens: Vec<FqmElement> = a
        .invariant_factors()
        .iter()
        .enumerate()
        .map(|(i, &d)| a.scale(p_part(d, p), &a.generator(i)))
        .collect();
    a.submodule(&gens)
}

/// Orthogonal splitting into p-primary parts, primes ascending.
pub fn primary_decomposition(a: &FiniteQuadraticModule) -> Result<Vec<(i64, FiniteQuadraticModule)>> {
    Ok(PrimaryDecomposition::new(a)?.parts.into_iter().map(|(p, q)| (p, q.module)).collect())
}

/// Splits a module whose 3-primary part has order 3 into
/// (part of order prime to 3, 3-part).
pub fn split_off_3(a: &FiniteQuadraticModule) -> Result<(FiniteQuadraticModule, FiniteQuadraticModule)> {
    let three = primary_part(a, 3)?;
    if three.module.order() != 3.into() {
        return Err(Error::Precondition(format!(
            "the 3-primary part has order {}, not 3",
            three.module.order()
        )));
    }
    Ok((coprime_part(a, 3)?.module, three.module))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum JordanKind {
    /// odd p: product of Legendre symbols of the units
    Odd { legendre: i8 },
    /// p = 2, cyclic: the odd numerator u of q(x) = u / 2^k, mod 8
    Cyclic { unit: i64 },
    /// p = 2, rank two block on which q takes values in (2/2^k)Z;
    /// `odd_form` marks the anisotropic class
    Even { odd_form: bool },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JordanComponent {
    pub prime: i64,
    pub exponent: u32,
    pub dim: usize,
    pub kind: JordanKind,
}

/// A Jordan splitting of a nondegenerate p-group into cyclic and (p = 2)
/// rank-two blocks, found greedily from the top scale.
pub fn jordan_components(a: &FiniteQuadraticModule, p: i64) -> Result<Vec<JordanComponent>> {
    let mut m = a.clone();
    let mut out = Vec::new();
    while !m.is_trivial() {
        let k = m.num_generators();
        let top = m.level();
        if m.invariant_factors().iter().any(|&d| p_part(d, p) != d) {
            return Err(Error::InvalidParameters(format!("module is not {p}-primary")));
        }
        let exponent = top.trailing_zeros_in(p);
        let n = m.gram_numerators();
        let tops: Vec<usize> = (0..k).filter(|&i| m.invariant_factors()[i] == top).collect();
        if p != 2 {
            let unit = |v: i64| v.rem_euclid(p) != 0;
            let x = if let Some(&i) = tops.iter().find(|&&i| unit(n[i][i])) {
                m.generator(i)
            } else if let Some((i, j)) = pairs(&tops).find(|&(i, j)| unit(n[i][j])) {
                m.add(&m.generator(i), &m.generator(j))
            } else {
                return Err(Error::DegenerateModule);
            };
            let u = m.b_numerator(&x, &x);
            out.push(JordanComponent { prime: p, exponent, dim: 1, kind: JordanKind::Odd { legendre: legendre(u, p) } });
            m = m.orthogonal_submodule(&[x])?.module;
        } else if let Some(&i) = tops.iter().find(|&&i| n[i][i] % 2 != 0) {
            let x = m.generator(i);
            let u = m.q_numerator(&x).rem_euclid(8);
            out.push(JordanComponent { prime: 2, exponent, dim: 1, kind: JordanKind::Cyclic { unit: u } });
            m = m.orthogonal_submodule(&[x])?.module;
        } else if let Some((i, j)) = pairs(&tops).find(|&(i, j)| n[i][j] % 2 != 0) {
            let odd_form = (n[i][i] / 2) % 2 != 0 && (n[j][j] / 2) % 2 != 0;
            out.push(JordanComponent { prime: 2, exponent, dim: 2, kind: JordanKind::Even { odd_form } });
            m = m.orthogonal_submodule(&[m.generator(i), m.generator(j)])?.module;
        } else {
            return Err(Error::DegenerateModule);
        }
    }
    Ok(out)
}

fn pairs(idx: &[usize]) -> impl Iterator<Item = (usize, usize)> + '_ {
    idx.iter().enumerate().flat_map(move |(s, &i)| idx[s + 1..].iter().map(move |&j| (i, j)))
}

trait ValuationExt {
    fn trailing_zeros_in(self, p: i64) -> u32;
}

impl ValuationExt for i64 {
    fn trailing_zeros_in(mut self, p: i64) -> u32 {
        let mut v = 0;
        while self % p == 0 {
            self /= p;
            v += 1;
        }
        v
    }
}

fn component_signature(c: &JordanComponent) -> i64 {
    let odd_k = c.exponent % 2 == 1;
    match c.kind {
        JordanKind::Odd { legendre } => {
            let q = c.prime.pow(c.exponent);
            -((q - 1) + if odd_k && legendre == -1 { 4 } else { 0 })
        }
        JordanKind::Cyclic { unit } => unit + if odd_k && (unit == 3 || unit == 5) { 4 } else { 0 },
        JordanKind::Even { odd_form } => {
            if odd_k && odd_form {
                4
            } else {
                0
            }
        }
    }
}

pub(crate) fn signature_mod8(a: &FiniteQuadraticModule) -> Result<u8> {
    if !a.is_quadratic() {
        return Err(Error::OddLattice);
    }
    let mut total: i64 = 0;
    for (p, part) in primary_decomposition(a)? {
        for c in jordan_components(&part, p)? {
            total += component_signature(&c).rem_euclid(8);
        }
    }
    Ok(total.rem_euclid(8) as u8)
}
