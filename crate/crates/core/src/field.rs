//! Coefficient fields.
//!
//! A [`Field`] value is a small descriptor (the prime, or nothing for the
//! rationals) that knows how to do arithmetic on its element type. Polynomials
//! carry their field through their ring, so elements themselves stay plain.

use std::fmt::Debug;
use std::hash::Hash;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;

use crate::error::{Error, Result};

/// The prime used when no characteristic is requested.
pub const DEFAULT_PRIME: u32 = 32003;

/// A sparse matrix row: `(column, value)` pairs with strictly increasing
/// columns and no zero values.
pub type SparseRow<E> = Vec<(usize, E)>;

pub trait Field: Clone + Debug + PartialEq + Eq + Send + Sync + 'static {
    type Elem: Clone + Debug + PartialEq + Eq + Hash + Send + Sync;

    /// 0 for the rationals, `p` for `GF(p)`.
    fn characteristic(&self) -> u64;
    fn name(&self) -> String;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_i64(&self, n: i64) -> Self::Elem;
    /// `num / den`, or `None` when `den` vanishes in this field.
    fn from_fraction(&self, num: &BigInt, den: &BigInt) -> Option<Self::Elem>;

    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        self.inv(b).map(|bi| self.mul(a, &bi))
    }

    /// Uniform nonzero element (a bounded integer range for the rationals).
    fn random_nonzero<R: Rng + ?Sized>(&self, rng: &mut R) -> Self::Elem;

    /// Signed decimal rendering, e.g. `-3` or `5/7`.
    fn format(&self, a: &Self::Elem) -> String;

    /// Rank of the span of `rows`.
    fn rank(&self, rows: Vec<SparseRow<Self::Elem>>) -> usize {
        sparse_rank(self, rows)
    }
}

/// Gaussian elimination on sparse rows with monic pivot rows.
pub fn sparse_rank<F: Field>(field: &F, rows: Vec<SparseRow<F::Elem>>) -> usize {
    use std::collections::HashMap;

    let mut pivots: HashMap<usize, SparseRow<F::Elem>> = HashMap::new();
    for mut row in rows {
        while let Some((col, lead)) = row.first().cloned() {
            match pivots.get(&col) {
                Some(pivot) => row = axpy_row(field, &row, &field.neg(&lead), pivot),
                None => {
                    let inv = field.inv(&lead).expect("nonzero lead");
                    let row: SparseRow<F::Elem> =
                        row.into_iter().map(|(c, v)| (c, field.mul(&v, &inv))).collect();
                    pivots.insert(col, row);
                    break;
                }
            }
        }
    }
    pivots.len()
}

/// `a + s·b` for sparse rows.
fn axpy_row<F: Field>(
    field: &F,
    a: &SparseRow<F::Elem>,
    s: &F::Elem,
    b: &SparseRow<F::Elem>,
) -> SparseRow<F::Elem> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let take_a = j >= b.len() || (i < a.len() && a[i].0 < b[j].0);
        let take_b = i >= a.len() || (j < b.len() && b[j].0 < a[i].0);
        if take_a {
            out.push(a[i].clone());
            i += 1;
        } else if take_b {
            out.push((b[j].0, field.mul(s, &b[j].1)));
            j += 1;
        } else {
            let v = field.add(&a[i].1, &field.mul(s, &b[j].1));
            if !field.is_zero(&v) {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// The prime field `GF(p)` with `p < 2^31`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u32,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if p >= (1 << 31) || !is_prime(p) {
            return Err(Error::InvalidCharacteristic(p));
        }
        Ok(PrimeField { p: p as u32 })
    }

    pub fn prime(&self) -> u32 {
        self.p
    }
}

impl Default for PrimeField {
    fn default() -> Self {
        PrimeField { p: DEFAULT_PRIME }
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut k = 2;
    while k * k <= n {
        if n.is_multiple_of(k) {
            return false;
        }
        k += 1;
    }
    true
}

impl Field for PrimeField {
    type Elem = u32;

    fn characteristic(&self) -> u64 {
        self.p as u64
    }

    fn name(&self) -> String {
        format!("GF({})", self.p)
    }

    fn zero(&self) -> u32 {
        0
    }

    fn one(&self) -> u32 {
        1
    }

    fn from_i64(&self, n: i64) -> u32 {
        n.rem_euclid(self.p as i64) as u32
    }

    fn from_fraction(&self, num: &BigInt, den: &BigInt) -> Option<u32> {
        let p = BigInt::from(self.p);
        let n = num.mod_floor(&p).to_u32()?;
        let d = den.mod_floor(&p).to_u32()?;
        self.div(&n, &d)
    }

    fn is_zero(&self, a: &u32) -> bool {
        *a == 0
    }

    fn add(&self, a: &u32, b: &u32) -> u32 {
        let s = *a as u64 + *b as u64;
        (s % self.p as u64) as u32
    }

    fn sub(&self, a: &u32, b: &u32) -> u32 {
        let s = *a as u64 + self.p as u64 - *b as u64;
        (s % self.p as u64) as u32
    }

    fn mul(&self, a: &u32, b: &u32) -> u32 {
        ((*a as u64 * *b as u64) % self.p as u64) as u32
    }

    fn neg(&self, a: &u32) -> u32 {
        if *a == 0 {
            0
        } else {
            self.p - *a
        }
    }

    fn inv(&self, a: &u32) -> Option<u32> {
        if *a == 0 {
            return None;
        }
        let (mut r0, mut r1) = (self.p as i64, *a as i64);
        let (mut s0, mut s1) = (0i64, 1i64);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (s0, s1) = (s1, s0 - q * s1);
        }
        Some(s0.rem_euclid(self.p as i64) as u32)
    }

    fn random_nonzero<R: Rng + ?Sized>(&self, rng: &mut R) -> u32 {
        rng.gen_range(1..self.p)
    }

    fn format(&self, a: &u32) -> String {
        // symmetric representative so that -1 prints as -1
        if *a > self.p / 2 {
            format!("-{}", self.p - *a)
        } else {
            a.to_string()
        }
    }
}

/// The rational numbers, with fraction-free rank computation.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Rationals;

/// Magnitude bound for random rational coefficients.
pub const RATIONAL_SAMPLE_BOUND: i64 = 32;

impl Field for Rationals {
    type Elem = BigRational;

    fn characteristic(&self) -> u64 {
        0
    }

    fn name(&self) -> String {
        "QQ".to_string()
    }

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }

    fn one(&self) -> BigRational {
        BigRational::one()
    }

    fn from_i64(&self, n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    fn from_fraction(&self, num: &BigInt, den: &BigInt) -> Option<BigRational> {
        if den.is_zero() {
            None
        } else {
            Some(BigRational::new(num.clone(), den.clone()))
        }
    }

    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }

    fn is_one(&self, a: &BigRational) -> bool {
        a.is_one()
    }

    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }

    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }

    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }

    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }

    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        if a.is_zero() {
            None
        } else {
            Some(a.recip())
        }
    }

    fn random_nonzero<R: Rng + ?Sized>(&self, rng: &mut R) -> BigRational {
        let mut v = 0;
        while v == 0 {
            v = rng.gen_range(-RATIONAL_SAMPLE_BOUND..=RATIONAL_SAMPLE_BOUND);
        }
        self.from_i64(v)
    }

    fn format(&self, a: &BigRational) -> String {
        if a.is_integer() {
            a.numer().to_string()
        } else {
            format!("{}/{}", a.numer(), a.denom())
        }
    }

    fn rank(&self, rows: Vec<SparseRow<BigRational>>) -> usize {
        fraction_free_rank(rows)
    }
}

/// Rank over the rationals by integer-preserving elimination.
///
/// Each row is scaled to a primitive integer vector; eliminating a lead entry
/// cross-multiplies with the pivot row and then divides out the content again.
fn fraction_free_rank(rows: Vec<SparseRow<BigRational>>) -> usize {
    use std::collections::HashMap;

    type IntRow = Vec<(usize, BigInt)>;

    fn primitive(row: IntRow) -> IntRow {
        let g = row.iter().fold(BigInt::zero(), |g, (_, v)| g.gcd(v));
        if g.is_zero() || g.is_one() {
            return row;
        }
        row.into_iter().map(|(c, v)| (c, v / &g)).collect()
    }

    fn combine(a: &IntRow, sa: &BigInt, b: &IntRow, sb: &BigInt) -> IntRow {
        // sa·a − sb·b
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() || j < b.len() {
            if j >= b.len() || (i < a.len() && a[i].0 < b[j].0) {
                out.push((a[i].0, sa * &a[i].1));
                i += 1;
            } else if i >= a.len() || b[j].0 < a[i].0 {
                out.push((b[j].0, -(sb * &b[j].1)));
                j += 1;
            } else {
                let v = sa * &a[i].1 - sb * &b[j].1;
                if !v.is_zero() {
                    out.push((a[i].0, v));
                }
                i += 1;
                j += 1;
            }
        }
        out
    }

    let mut pivots: HashMap<usize, IntRow> = HashMap::new();
    for row in rows {
        let lcm = row
            .iter()
            .fold(BigInt::one(), |l, (_, v)| l.lcm(v.denom()));
        let mut row: IntRow = primitive(
            row.into_iter()
                .map(|(c, v)| (c, (v * BigRational::from_integer(lcm.clone())).to_integer()))
                .collect(),
        );
        while let Some((col, lead)) = row.first().cloned() {
            match pivots.get(&col) {
                Some(pivot) => {
                    let plead = &pivot[0].1;
                    let g = plead.gcd(&lead);
                    let (sa, sb) = (plead / &g, &lead / &g);
                    row = primitive(combine(&row, &sa, pivot, &sb));
                }
                None => {
                    if lead.is_negative() {
                        row = row.into_iter().map(|(c, v)| (c, -v)).collect();
                    }
                    pivots.insert(col, row);
                    break;
                }
            }
        }
    }
    pivots.len()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn prime_field_axioms_exhaustive() {
        for p in [2u64, 3, 5, 7, 11, 13] {
            let f = PrimeField::new(p).unwrap();
            for a in 0..p as u32 {
                for b in 0..p as u32 {
                    assert_eq!(f.add(&a, &b), f.add(&b, &a));
                    assert_eq!(f.sub(&f.add(&a, &b), &b), a);
                    if b != 0 {
                        let bi = f.inv(&b).unwrap();
                        assert_eq!(f.mul(&f.mul(&a, &b), &bi), a);
                    }
                    for c in 0..p as u32 {
                        let lhs = f.mul(&a, &f.add(&b, &c));
                        let rhs = f.add(&f.mul(&a, &b), &f.mul(&a, &c));
                        assert_eq!(lhs, rhs);
                    }
                }
            }
        }
    }

    #[test]
    fn rejects_composite_modulus() {
        assert!(PrimeField::new(32003).is_ok());
        assert!(PrimeField::new(32001).is_err());
        assert!(PrimeField::new(1).is_err());
    }

    #[test]
    fn symmetric_printing() {
        let f = PrimeField::new(7).unwrap();
        assert_eq!(f.format(&6), "-1");
        assert_eq!(f.format(&3), "3");
        assert_eq!(f.format(&4), "-3");
    }

    #[test]
    fn fraction_into_prime_field() {
        let f = PrimeField::new(7).unwrap();
        let half = f.from_fraction(&BigInt::from(1), &BigInt::from(2)).unwrap();
        assert_eq!(f.mul(&half, &2), 1);
        assert!(f.from_fraction(&BigInt::from(1), &BigInt::from(14)).is_none());
    }

    #[test]
    fn ranks_agree_between_fields() {
        // a 3x3 rank-2 integer matrix
        let m: Vec<Vec<i64>> = vec![vec![1, 2, 3], vec![4, 5, 6], vec![7, 8, 9]];
        let q = Rationals;
        let rows: Vec<SparseRow<BigRational>> = m
            .iter()
            .map(|r| r.iter().enumerate().map(|(c, v)| (c, q.from_i64(*v))).collect())
            .collect();
        assert_eq!(q.rank(rows), 2);
        let f = PrimeField::default();
        let rows: Vec<SparseRow<u32>> = m
            .iter()
            .map(|r| r.iter().enumerate().map(|(c, v)| (c, f.from_i64(*v))).collect())
            .collect();
        assert_eq!(f.rank(rows), 2);
    }

    #[test]
    fn rank_depends_on_characteristic_when_it_should() {
        // det = 2: full rank over Q, rank 1 over GF(2)
        let m = [[1i64, 1], [1, -1]];
        let q = Rationals;
        let rows = m
            .iter()
            .map(|r| r.iter().enumerate().map(|(c, v)| (c, q.from_i64(*v))).collect())
            .collect();
        assert_eq!(q.rank(rows), 2);
        let f = PrimeField::new(2).unwrap();
        let rows = m
            .iter()
            .map(|r| {
                r.iter()
                    .enumerate()
                    .map(|(c, v)| (c, f.from_i64(*v)))
                    .filter(|(_, v)| *v != 0)
                    .collect()
            })
            .collect();
        assert_eq!(f.rank(rows), 1);
    }

    proptest! {
        #[test]
        fn rational_inverse_roundtrip(an in -1000i64..1000, ad in 1i64..50, bn in 1i64..1000, bd in 1i64..50) {
            let q = Rationals;
            let a = BigRational::new(an.into(), ad.into());
            let b = BigRational::new(bn.into(), bd.into());
            let bi = q.inv(&b).unwrap();
            prop_assert_eq!(q.mul(&q.mul(&a, &b), &bi), a);
        }

        #[test]
        fn fraction_free_matches_prime_rank_on_small_matrices(
            entries in proptest::collection::vec(-3i64..=3, 12)
        ) {
            // 3x4 integer matrices: rank over Q equals rank over a large prime
            let q = Rationals;
            let f = PrimeField::default();
            let rq = q.rank(entries.chunks(4).map(|r| r.iter().enumerate()
                .filter(|(_, v)| **v != 0).map(|(c, v)| (c, q.from_i64(*v))).collect()).collect());
            let rp = f.rank(entries.chunks(4).map(|r| r.iter().enumerate()
                .filter(|(_, v)| **v != 0).map(|(c, v)| (c, f.from_i64(*v))).collect()).collect());
            prop_assert_eq!(rq, rp);
        }
    }
}
