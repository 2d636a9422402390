use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::MonomialIdeal;
use crate::error::{Error, Result};
use crate::field::{Field, SparseRow};
use crate::groebner::IdealPresentation;
use crate::monomial::{monomials_of_degree, Monomial};
use crate::order::TermOrder;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Quotient,
    Ideal,
}

/// `C(n, k)`, zero outside `0 <= k <= n`.
pub fn binomial(n: i64, k: i64) -> Result<u128> {
    if n < 0 || k < 0 || k > n {
        return Ok(0);
    }
    let k = k.min(n - k) as u128;
    let n = n as u128;
    let mut r: u128 = 1;
    for i in 0..k {
        r = r.checked_mul(n - i).ok_or(Error::Overflow)? / (i + 1);
    }
    Ok(r)
}

/// Number of monomials of degree `t` in `nvars` variables.
pub fn ring_dim(nvars: usize, t: u32) -> Result<u128> {
    binomial(t as i64 + nvars as i64 - 1, nvars as i64 - 1)
}

fn to_u64(x: u128) -> Result<u64> {
    u64::try_from(x).map_err(|_| Error::Overflow)
}

/// Graded dimensions in degrees `0..=cutoff`, of either `R/I` or `I`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HilbertData {
    nvars: usize,
    dims: Vec<u64>,
    side: Side,
}

impl HilbertData {
    pub fn new(nvars: usize, dims: Vec<u64>, side: Side) -> Result<Self> {
        if nvars == 0 {
            return Err(Error::InvalidInput("Hilbert data needs at least one variable".into()));
        }
        for (t, &v) in dims.iter().enumerate() {
            let full = ring_dim(nvars, t as u32)?;
            if v as u128 > full {
                return Err(Error::InvalidInput(format!(
                    "dimension {v} in degree {t} exceeds the {full} monomials of that degree"
                )));
            }
        }
        Ok(HilbertData { nvars, dims, side })
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn dims(&self) -> &[u64] {
        &self.dims
    }

    pub fn side(&self) -> Side {
        self.side
    }

    /// Largest degree covered.
    pub fn cutoff(&self) -> Option<u32> {
        self.dims.len().checked_sub(1).map(|c| c as u32)
    }

    pub fn get(&self, t: u32) -> Option<u64> {
        self.dims.get(t as usize).copied()
    }

    /// The same data expressed on `side`.
    pub fn to_side(&self, side: Side) -> Result<HilbertData> {
        if side == self.side {
            return Ok(self.clone());
        }
        let dims = self
            .dims
            .iter()
            .enumerate()
            .map(|(t, &v)| Ok(to_u64(ring_dim(self.nvars, t as u32)?)? - v))
            .collect::<Result<Vec<_>>>()?;
        Ok(HilbertData {
            nvars: self.nvars,
            dims,
            side,
        })
    }
}

/// `N(t) / (1 - t)^nvars`, the Hilbert series of a quotient `R/I`.
/// `numerator[k]` is the coefficient of `t^k`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HilbertSeries {
    nvars: usize,
    numerator: Vec<i64>,
}

impl HilbertSeries {
    pub fn new(nvars: usize, numerator: Vec<i64>) -> Self {
        HilbertSeries {
            nvars,
            numerator: trim(numerator),
        }
    }

    /// Series of `R/M` by pivot recursion.
    pub fn of_monomial_ideal(ideal: &MonomialIdeal) -> Self {
        let mut memo = HashMap::new();
        let numerator = pivot_numerator(ideal.gens().to_vec(), ideal.nvars(), &mut memo);
        HilbertSeries::new(ideal.nvars(), numerator)
    }

    /// Series of a complete intersection of forms of the given degrees.
    pub fn complete_intersection(nvars: usize, degrees: &[u32]) -> Self {
        let numerator = degrees
            .iter()
            .fold(vec![1], |acc, &d| poly_mul(&acc, &one_minus_power(d)));
        HilbertSeries::new(nvars, numerator)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn numerator(&self) -> &[i64] {
        &self.numerator
    }

    /// `dim (R/I)_t`.
    pub fn coefficient(&self, t: u32) -> Result<u64> {
        let mut total: i128 = 0;
        for (k, &c) in self.numerator.iter().enumerate() {
            if c != 0 && k as u32 <= t {
                let b = ring_dim(self.nvars, t - k as u32)?;
                let b = i128::try_from(b).map_err(|_| Error::Overflow)?;
                total = total
                    .checked_add(b.checked_mul(c as i128).ok_or(Error::Overflow)?)
                    .ok_or(Error::Overflow)?;
            }
        }
        u64::try_from(total).map_err(|_| Error::Internal(format!("negative Hilbert function value {total} in degree {t}")))
    }

    /// Quotient-side Hilbert function in degrees `0..=cutoff`.
    pub fn function(&self, cutoff: u32) -> Result<HilbertData> {
        let dims = (0..=cutoff).map(|t| self.coefficient(t)).collect::<Result<Vec<_>>>()?;
        HilbertData::new(self.nvars, dims, Side::Quotient)
    }

    /// `(h, dim)` with `N(t) = h(t)(1 - t)^(nvars - dim)` and `h(1) != 0`.
    /// The zero series gives `(0, 0)`.
    pub fn reduced(&self) -> (Vec<i64>, usize) {
        if self.numerator.is_empty() {
            return (Vec::new(), 0);
        }
        let mut h = self.numerator.clone();
        let mut dim = self.nvars;
        while dim > 0 && h.iter().sum::<i64>() == 0 {
            // synthetic division by (1 - t)
            let mut q = Vec::with_capacity(h.len() - 1);
            let mut acc = 0;
            for &c in &h[..h.len() - 1] {
                acc += c;
                q.push(acc);
            }
            h = trim(q);
            dim -= 1;
        }
        (h, dim)
    }

    /// Krull dimension of `R/I`.
    pub fn krull_dim(&self) -> usize {
        self.reduced().1
    }

    /// Degree of the Hilbert polynomial, `None` when it vanishes.
    pub fn hilbert_polynomial_degree(&self) -> Option<usize> {
        self.krull_dim().checked_sub(1)
    }

    /// First degree from which the Hilbert function agrees with the Hilbert
    /// polynomial.
    pub fn polynomial_from(&self) -> u32 {
        let deg = self.numerator.len() as i64 - 1;
        (deg - self.nvars as i64 + 1).max(0) as u32
    }
}

fn trim(mut p: Vec<i64>) -> Vec<i64> {
    while p.last() == Some(&0) {
        p.pop();
    }
    p
}

fn one_minus_power(d: u32) -> Vec<i64> {
    let mut p = vec![0; d as usize + 1];
    p[0] += 1;
    p[d as usize] -= 1;
    trim(p)
}

fn poly_mul(a: &[i64], b: &[i64]) -> Vec<i64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x != 0 {
            for (j, &y) in b.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
    }
    trim(out)
}

fn poly_add_shifted(a: &[i64], b: &[i64], shift: usize) -> Vec<i64> {
    let mut out = a.to_vec();
    if out.len() < b.len() + shift {
        out.resize(b.len() + shift, 0);
    }
    for (j, &y) in b.iter().enumerate() {
        out[j + shift] += y;
    }
    trim(out)
}

/// Numerator of the series of `R/(gens)`, using
/// `N(M) = N(M + (p)) + t^{deg p} N(M : p)` for a pivot `p = x_k^e`.
fn pivot_numerator(gens: Vec<Monomial>, nvars: usize, memo: &mut HashMap<Vec<Monomial>, Vec<i64>>) -> Vec<i64> {
    if gens.is_empty() {
        return vec![1];
    }
    if gens.iter().any(|g| g.is_one()) {
        return Vec::new();
    }
    if let Some(hit) = memo.get(&gens) {
        return hit.clone();
    }
    let mut counts = vec![0usize; nvars];
    for g in &gens {
        for k in g.support() {
            counts[k] += 1;
        }
    }
    let pivot_var = (0..nvars).filter(|&k| counts[k] >= 2).max_by_key(|&k| (counts[k], k));
    let result = match pivot_var {
        None => gens
            .iter()
            .fold(vec![1], |acc, g| poly_mul(&acc, &one_minus_power(g.degree()))),
        Some(k) => {
            let e = gens
                .iter()
                .filter(|g| g.exp(k) > 0 && g.degree() > g.exp(k))
                .map(|g| g.exp(k))
                .min()
                .expect("a shared variable occurs in a mixed generator");
            let p = Monomial::var(nvars, k, e);
            let ideal = MonomialIdeal::new(nvars, gens.iter().cloned());
            let sum = ideal.with_generator(p.clone());
            let colon = ideal.colon(&p);
            let a = pivot_numerator(sum.gens().to_vec(), nvars, memo);
            let b = pivot_numerator(colon.gens().to_vec(), nvars, memo);
            poly_add_shifted(&a, &b, e as usize)
        }
    };
    memo.insert(gens, result.clone());
    result
}

/// Quotient-side Hilbert function of `R/M` through degree `cutoff`.
pub fn hilbert_function(ideal: &MonomialIdeal, cutoff: u32) -> Result<HilbertData> {
    HilbertSeries::of_monomial_ideal(ideal).function(cutoff)
}

/// Hilbert function of `R/I` through the initial ideal under `order`.
pub fn hf_of_homogeneous<F: Field>(ideal: &IdealPresentation<F>, order: TermOrder, cutoff: u32) -> Result<HilbertData> {
    ideal.require_homogeneous()?;
    let basis = ideal.groebner_basis(order);
    hilbert_function(&basis.initial_ideal(), cutoff)
}

/// Hilbert function of `R/I` from ranks of the graded pieces
/// `I_t = span{ m g : deg m + deg g = t }`.
pub fn hf_by_linear_algebra<F: Field>(ideal: &IdealPresentation<F>, cutoff: u32) -> Result<HilbertData> {
    ideal.require_homogeneous()?;
    let ring = ideal.ring();
    let field = ring.field();
    let n = ring.nvars();
    let mut dims = Vec::with_capacity(cutoff as usize + 1);
    for t in 0..=cutoff {
        let basis = monomials_of_degree(n, t);
        let index: HashMap<&Monomial, usize> = basis.iter().enumerate().map(|(i, m)| (m, i)).collect();
        let mut rows: Vec<SparseRow<F::Elem>> = Vec::new();
        for g in ideal.generators() {
            let e = g.total_degree().unwrap();
            if e > t {
                continue;
            }
            for m in monomials_of_degree(n, t - e) {
                let mut row: SparseRow<F::Elem> = g
                    .terms()
                    .iter()
                    .map(|term| (index[&term.monomial.mul(&m)], term.coeff.clone()))
                    .collect();
                row.sort_by_key(|(c, _)| *c);
                rows.push(row);
            }
        }
        let rank = field.rank(rows) as u64;
        dims.push(basis.len() as u64 - rank);
    }
    HilbertData::new(n, dims, Side::Quotient)
}

/// Series of `(1 - t^d)^n / (1 - t)^{n+m}`.
pub fn ci_hilbert_series(n: usize, d: u32, m: usize) -> HilbertSeries {
    HilbertSeries::complete_intersection(n + m, &vec![d; n])
}

/// Quotient-side Hilbert function of a complete intersection of `n` forms of
/// degree `d` in `n + m` variables.
pub fn ci_hilbert_function(n: usize, d: u32, m: usize, cutoff: u32) -> Result<HilbertData> {
    if n == 0 || d == 0 {
        return Err(Error::InvalidInput("need n >= 1 and d >= 1".into()));
    }
    ci_hilbert_series(n, d, m).function(cutoff)
}
