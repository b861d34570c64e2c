//! Conway–Sloane genus symbols.
//!
//! Local Jordan decompositions are computed by exact rational elimination
//! with p-adically integral pivots. The 2-adic symbol is brought into the
//! canonical form of Conway and Sloane (oddity fusion and sign walking), so
//! two lattices are in the same genus iff their symbols are equal.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::fqm::jordan_legendre as legendre;
use crate::lattice::Lattice;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LocalComponent {
    /// the scale is p^exponent
    pub exponent: u32,
    pub dim: usize,
    pub eps: i8,
    /// p = 2 only: Some(true) for odd (type I) components
    pub odd: Option<bool>,
    /// p = 2 only: oddity of the compartment starting here (0 elsewhere)
    pub oddity: Option<u8>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LocalSymbol {
    pub prime: i64,
    pub components: Vec<LocalComponent>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GenusSymbol {
    pub rank: usize,
    pub signature: (usize, usize),
    pub det: BigInt,
    pub locals: Vec<LocalSymbol>,
}

fn valuation_int(x: &BigInt, p: i64) -> i64 {
    let p = BigInt::from(p);
    let mut x = x.abs();
    let mut v = 0;
    while (&x % &p).is_zero() {
        x /= &p;
        v += 1;
    }
    v
}

fn valuation(x: &BigRational, p: i64) -> i64 {
    valuation_int(x.numer(), p) - valuation_int(x.denom(), p)
}

/// x / p^v(x) reduced modulo m (m a power of p), as a residue in [0, m).
fn unit_residue(x: &BigRational, p: i64, m: i64) -> i64 {
    let strip = |n: &BigInt| {
        let pb = BigInt::from(p);
        let mut n = n.clone();
        while (&n % &pb).is_zero() {
            n /= &pb;
        }
        n.mod_floor(&BigInt::from(m)).to_i64().expect("small")
    };
    let num = strip(x.numer());
    let den = strip(x.denom());
    let inv = den.extended_gcd(&m).x.rem_euclid(m);
    (num as i128 * inv as i128).rem_euclid(m as i128) as i64
}

enum Block {
    One { v: i64, unit: BigRational },
    Two { v: i64, det: BigRational },
}

fn jordan_blocks(l: &Lattice, p: i64) -> Vec<Block> {
    let n = l.rank();
    let mut a: Vec<Vec<BigRational>> =
        (0..n).map(|i| (0..n).map(|j| BigRational::from_integer(l.gram()[(i, j)].clone())).collect()).collect();
    let mut live: Vec<usize> = (0..n).collect();
    let mut out = Vec::new();
    while !live.is_empty() {
        let mut min: Option<i64> = None;
        for &i in &live {
            for &j in &live {
                if !a[i][j].is_zero() {
                    let v = valuation(&a[i][j], p);
                    min = Some(min.map_or(v, |m| m.min(v)));
                }
            }
        }
        let min = min.expect("nondegenerate form");
        let diag = live.iter().copied().find(|&i| !a[i][i].is_zero() && valuation(&a[i][i], p) == min);
        let pivot = match diag {
            Some(i) => Some(i),
            None if p != 2 => {
                let (i, j) = off_diagonal_min(&a, &live, p, min);
                // replace e_i by e_i + e_j
                for &k in &live {
                    let t = a[j][k].clone();
                    a[i][k] += t;
                }
                for &k in &live {
                    let t = a[k][j].clone();
                    a[k][i] += t;
                }
                Some(i)
            }
            None => None,
        };
        if let Some(i) = pivot {
            let piv = a[i][i].clone();
            live.retain(|&k| k != i);
            for &k in &live {
                for &m in &live {
                    let t = &a[k][i] * &a[i][m] / &piv;
                    a[k][m] -= t;
                }
            }
            out.push(Block::One { v: min, unit: piv });
        } else {
            let (i, j) = off_diagonal_min(&a, &live, 2, min);
            let (x, y, z) = (a[i][i].clone(), a[i][j].clone(), a[j][j].clone());
            let det = &x * &z - &y * &y;
            live.retain(|&k| k != i && k != j);
            for &k in &live {
                for &m in &live {
                    // [a_ki a_kj] B^-1 [a_im a_jm]^T with B^-1 = adj / det
                    let t = (&a[k][i] * (&z * &a[i][m] - &y * &a[j][m]) + &a[k][j] * (&x * &a[j][m] - &y * &a[i][m])) / &det;
                    a[k][m] -= t;
                }
            }
            out.push(Block::Two { v: min, det });
        }
    }
    out
}

fn off_diagonal_min(a: &[Vec<BigRational>], live: &[usize], p: i64, min: i64) -> (usize, usize) {
    for (s, &i) in live.iter().enumerate() {
        for &j in &live[s + 1..] {
            if !a[i][j].is_zero() && valuation(&a[i][j], p) == min {
                return (i, j);
            }
        }
    }
    unreachable!("minimal valuation is attained off the diagonal")
}

fn odd_local(l: &Lattice, p: i64) -> LocalSymbol {
    let mut comps: Vec<LocalComponent> = Vec::new();
    let mut blocks: Vec<(i64, i8)> = jordan_blocks(l, p)
        .into_iter()
        .map(|b| match b {
            Block::One { v, unit } => (v, legendre(unit_residue(&unit, p, p), p)),
            Block::Two { .. } => unreachable!("odd primes only use 1x1 pivots"),
        })
        .collect();
    blocks.sort();
    for (v, s) in blocks {
        match comps.last_mut() {
            Some(c) if c.exponent as i64 == v => {
                c.dim += 1;
                c.eps *= s;
            }
            _ => comps.push(LocalComponent { exponent: v as u32, dim: 1, eps: s, odd: None, oddity: None }),
        }
    }
    LocalSymbol { prime: p, components: comps }
}

/// [exponent, dim, det residue mod 8, type (1 = odd), oddity]
type Quintuple = [i64; 5];

fn two_adic_quintuples(l: &Lattice) -> Vec<Quintuple> {
    let mut by_scale: std::collections::BTreeMap<i64, Quintuple> = std::collections::BTreeMap::new();
    for b in jordan_blocks(l, 2) {
        let (v, dim, det, odd, oddity) = match b {
            Block::One { v, unit } => {
                let u = unit_residue(&unit, 2, 8);
                (v, 1, u, 1, u)
            }
            Block::Two { v, det } => (v, 2, unit_residue(&det, 2, 8), 0, 0),
        };
        let e = by_scale.entry(v).or_insert([v, 0, 1, 0, 0]);
        e[1] += dim;
        e[2] = (e[2] * det).rem_euclid(8);
        e[3] = e[3].max(odd);
        e[4] = (e[4] + oddity).rem_euclid(8);
    }
    by_scale.into_values().collect()
}

fn compartments(sym: &[Quintuple]) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = Vec::new();
    for (i, s) in sym.iter().enumerate() {
        if s[3] == 0 {
            continue;
        }
        match out.last_mut() {
            Some(c) if sym[*c.last().expect("nonempty")][0] + 1 == s[0] => c.push(i),
            _ => out.push(vec![i]),
        }
    }
    out
}

fn trains(sym: &[Quintuple]) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = Vec::new();
    for i in 0..sym.len() {
        let joins = i > 0 && {
            let (prev, cur) = (&sym[i - 1], &sym[i]);
            let gap = cur[0] - prev[0];
            let both_odd = prev[3] == 1 && cur[3] == 1;
            let some_odd = prev[3] == 1 || cur[3] == 1;
            (gap == 1 && some_odd) || (gap == 2 && both_odd)
        };
        if joins {
            out.last_mut().expect("train").push(i);
        } else {
            out.push(vec![i]);
        }
    }
    out
}

fn canonical_two_adic(mut sym: Vec<Quintuple>) -> Vec<Quintuple> {
    for s in sym.iter_mut() {
        s[2] = if s[2] == 1 || s[2] == 7 { 1 } else { -1 };
    }
    let comps = compartments(&sym);
    for c in &comps {
        let total: i64 = c.iter().map(|&i| sym[i][4]).sum::<i64>().rem_euclid(8);
        for &i in c {
            sym[i][4] = 0;
        }
        sym[c[0]][4] = total;
    }
    for train in trains(&sym) {
        for &t1 in train.iter().skip(1).rev() {
            if sym[t1][2] == -1 {
                sym[t1][2] = 1;
                sym[t1 - 1][2] *= -1;
                for c in &comps {
                    if c.contains(&(t1 - 1)) || c.contains(&t1) {
                        sym[c[0]][4] = (sym[c[0]][4] + 4).rem_euclid(8);
                    }
                }
            }
        }
    }
    sym
}

fn two_local(l: &Lattice) -> LocalSymbol {
    let sym = canonical_two_adic(two_adic_quintuples(l));
    LocalSymbol {
        prime: 2,
        components: sym
            .iter()
            .map(|s| LocalComponent {
                exponent: s[0] as u32,
                dim: s[1] as usize,
                eps: s[2] as i8,
                odd: Some(s[3] == 1),
                oddity: Some(s[4] as u8),
            })
            .collect(),
    }
}

fn odd_primes_of(n: &BigInt) -> Vec<i64> {
    let mut n = n.abs();
    let mut out = Vec::new();
    let mut p = BigInt::from(3);
    while &p * &p <= n {
        if (&n % &p).is_zero() {
            out.push(p.to_i64().expect("prime fits"));
            while (&n % &p).is_zero() {
                n /= &p;
            }
        }
        p += 2;
    }
    while n.is_even() && !n.is_zero() {
        n /= 2;
    }
    if n > BigInt::from(1) {
        out.push(n.to_i64().expect("prime fits"));
    }
    out.sort();
    out
}

pub fn genus_symbol(l: &Lattice) -> GenusSymbol {
    let mut locals = vec![two_local(l)];
    for p in odd_primes_of(l.det()) {
        locals.push(odd_local(l, p));
    }
    GenusSymbol { rank: l.rank(), signature: l.signature(), det: l.det().clone(), locals }
}

pub fn same_genus(a: &Lattice, b: &Lattice) -> bool {
    genus_symbol(a) == genus_symbol(b)
}

impl fmt::Display for GenusSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "rank {} sig ({},{}) det {}", self.rank, self.signature.0, self.signature.1, self.det)?;
        for loc in &self.locals {
            write!(f, " | {}:", loc.prime)?;
            for c in &loc.components {
                let sign = if c.eps > 0 { '+' } else { '-' };
                let scale = BigInt::from(loc.prime).pow(c.exponent);
                write!(f, " {}^{}{}", scale, sign, c.dim)?;
                match (c.odd, c.oddity) {
                    (Some(false), _) => write!(f, "_II")?,
                    (Some(true), Some(o)) => write!(f, "_{o}")?,
                    _ => {}
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lat(rows: &[&[i64]]) -> Lattice {
        Lattice::from_rows(rows).unwrap()
    }

    #[test]
    fn unimodular_even_symbol() {
        let g = genus_symbol(&lat(&[&[0, 1], &[1, 0]]));
        assert_eq!(g.locals.len(), 1);
        assert_eq!(g.locals[0].components.len(), 1);
        assert_eq!(g.locals[0].components[0].odd, Some(false));
        assert_ne!(g, genus_symbol(&lat(&[&[1, 0], &[0, -1]])));
    }

    #[test]
    fn known_equivalences() {
        // 2-adically equivalent pairs that need sign walking
        assert_eq!(two_local(&lat(&[&[1, 0], &[0, 4]])), two_local(&lat(&[&[5, 0], &[0, 20]])));
        assert_eq!(two_local(&lat(&[&[1, 0], &[0, 2]])), two_local(&lat(&[&[3, 0], &[0, 6]])));
        assert_ne!(two_local(&lat(&[&[1, 0], &[0, 2]])), two_local(&lat(&[&[1, 0], &[0, 6]])));
        assert!(same_genus(&lat(&[&[3, 1, 1], &[1, 3, 0], &[1, 0, 10]]), &lat(&[&[3, -1, 0], &[-1, 4, 0], &[0, 0, 7]])));
        assert!(same_genus(&lat(&[&[24, -3], &[-3, 10]]), &lat(&[&[6, -3], &[-3, 40]])));
        assert!(!same_genus(&lat(&[&[1, 0], &[0, 1]]), &lat(&[&[1, 0], &[0, 1]]).rescale(3).unwrap()));
        assert!(!same_genus(&lat(&[&[2, 1], &[1, 4]]), &lat(&[&[1, 0], &[0, 7]])));
    }
}
