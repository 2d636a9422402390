//! Lex-segment ideals.
//!
//! Degree-`t` monomials are ranked in lex-descending order under
//! `x_ℓ > … > x_1`, so rank 0 is `x_ℓ^t`. A lex segment of size `k` is the
//! set of ranks `0..k`; the variable multiples of a segment ending at `u` form
//! the segment ending at `u·x_1`. This lets the construction work with sizes
//! and only materialise the minimal generators.

use super::hilbert::{binomial, ring_dim, HilbertData, HilbertSeries, Side};
use super::MonomialIdeal;
use crate::error::{Error, Result};
use crate::monomial::Monomial;
use crate::report::{InstanceBuilder, VerificationReport};

/// Number of degree-`deg u` monomials strictly above `u` in lex order.
pub fn lex_rank(u: &Monomial) -> Result<u128> {
    let n = u.nvars();
    let mut rem = u.degree() as i64;
    let mut rank: u128 = 0;
    for v in (1..n).rev() {
        let e = u.exp(v) as i64;
        // exponents e+1..=rem at x_{v+1}, the rest spread over v variables
        rank = rank
            .checked_add(binomial(rem - e - 1 + v as i64, v as i64)?)
            .ok_or(Error::Overflow)?;
        rem -= e;
    }
    Ok(rank)
}

/// The degree-`t` monomial of the given lex rank.
pub fn lex_unrank(nvars: usize, t: u32, rank: u128) -> Result<Monomial> {
    if rank >= ring_dim(nvars, t)? {
        return Err(Error::InvalidInput(format!("rank {rank} out of range in degree {t}")));
    }
    let mut exps = vec![0u32; nvars];
    let mut rem = t;
    let mut r = rank;
    for v in (1..nvars).rev() {
        let mut e = rem;
        loop {
            // monomials with exponent e at x_{v+1}: the rest has degree rem - e in v variables
            let count = binomial((rem - e) as i64 + v as i64 - 1, v as i64 - 1)?;
            if r < count {
                break;
            }
            r -= count;
            e -= 1;
        }
        exps[v] = e;
        rem -= e;
    }
    exps[0] = rem;
    Ok(Monomial::new(exps))
}

/// Size of the degree-`t+1` segment spanned by the variable multiples of the
/// degree-`t` segment of size `k`.
pub fn shadow_size(nvars: usize, t: u32, k: u128) -> Result<u128> {
    if k == 0 {
        return Ok(0);
    }
    let last = lex_unrank(nvars, t, k - 1)?;
    Ok(lex_rank(&last.times_var(0))? + 1)
}

/// Incremental construction from ideal-side dimensions.
struct Builder {
    nvars: usize,
    gens: Vec<Monomial>,
    prev: Option<(u32, u128)>,
}

impl Builder {
    fn new(nvars: usize) -> Self {
        Builder {
            nvars,
            gens: Vec::new(),
            prev: None,
        }
    }

    /// Adds degree `t` with ideal-side dimension `h`; returns the number of
    /// new minimal generators.
    fn push(&mut self, t: u32, h: u128) -> Result<usize> {
        let full = ring_dim(self.nvars, t)?;
        if h > full {
            return Err(Error::InvalidInput(format!("dimension {h} exceeds {full} in degree {t}")));
        }
        let shadow = match self.prev {
            Some((s, k)) if s + 1 == t => shadow_size(self.nvars, s, k)?,
            Some(_) => return Err(Error::Internal("lex construction skipped a degree".into())),
            None if t == 0 => 0,
            None => return Err(Error::Internal("lex construction must start at degree 0".into())),
        };
        if h < shadow {
            return Err(Error::MacaulayViolation { degree: t });
        }
        for r in shadow..h {
            self.gens.push(lex_unrank(self.nvars, t, r)?);
        }
        self.prev = Some((t, h));
        Ok((h - shadow) as usize)
    }

    fn ideal(&self) -> MonomialIdeal {
        MonomialIdeal::new(self.nvars, self.gens.iter().cloned())
    }
}

/// `Lex(h)` from ideal-side (or quotient-side, converted) data through its
/// cutoff `D`. `complete` is true when no generator appears in degrees
/// `D - 1` and `D`; this is a persistence heuristic, see
/// [`lex_ideal_from_series`] for a certified construction.
pub fn lex_segment_ideal(h: &HilbertData) -> Result<(MonomialIdeal, bool)> {
    let h = h.to_side(Side::Ideal)?;
    let mut b = Builder::new(h.nvars());
    let mut new_counts = Vec::with_capacity(h.dims().len());
    for (t, &v) in h.dims().iter().enumerate() {
        new_counts.push(b.push(t as u32, v as u128)?);
    }
    let complete = match new_counts.len() {
        0 => false,
        1 => new_counts[0] == 0,
        len => new_counts[len - 1] == 0 && new_counts[len - 2] == 0,
    };
    Ok((b.ideal(), complete))
}

/// Macaulay representation `k = Σ_{i=j..t} C(k_i, i)` with
/// `k_t > k_{t-1} > … > k_j >= j >= 1`, as pairs `(k_i, i)` from `i = t` down.
pub fn macaulay_representation(k: u128, t: u32) -> Result<Vec<(u64, u32)>> {
    let mut out = Vec::new();
    let mut rest = k;
    let mut i = t;
    while rest > 0 && i > 0 {
        // largest a with C(a, i) <= rest
        let mut a = i as u64;
        let mut c: u128 = 1;
        loop {
            let next = c.checked_mul(a as u128 + 1).ok_or(Error::Overflow)? / (a as u128 + 1 - i as u128);
            if next > rest {
                break;
            }
            c = next;
            a += 1;
        }
        out.push((a, i));
        rest -= c;
        i -= 1;
    }
    Ok(out)
}

/// `k^{<t>}` iterated to degree `s >= t`: the largest quotient dimension in
/// degree `s` reachable from dimension `k` in degree `t`.
pub fn macaulay_growth(rep: &[(u64, u32)], t: u32, s: u32) -> Result<u128> {
    let shift = (s - t) as i64;
    let mut total: u128 = 0;
    for &(a, i) in rep {
        let top = a as i64 + shift;
        let c = binomial(top, top - (i as i64 + shift))?;
        total = total.checked_add(c).ok_or(Error::Overflow)?;
    }
    Ok(total)
}

/// A lex-segment ideal whose generators are certified complete.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LexIdeal {
    pub ideal: MonomialIdeal,
    /// Degree through which segments were built.
    pub built_through: u32,
}

/// The lex-segment ideal with the Hilbert series of `series`, building
/// degrees until the generators are provably complete:
/// once no generator appears after degree `t0`, the quotient dimensions from
/// `t0` on follow the Macaulay growth polynomial of `h(t0)`; from degree
/// [`HilbertSeries::polynomial_from`] they follow the Hilbert polynomial.
/// Both have degree at most `K`, so agreement at `K + 1` consecutive degrees
/// past both thresholds rules out further generators.
///
/// Fails with [`Error::CutoffExceeded`] if this is not reached by `max_degree`.
pub fn lex_ideal_from_series(series: &HilbertSeries, max_degree: u32) -> Result<LexIdeal> {
    let nvars = series.nvars();
    let hp_deg = series.hilbert_polynomial_degree().unwrap_or(0) as u32;
    let poly_from = series.polynomial_from();
    let mut b = Builder::new(nvars);
    let mut quiet_since: u32 = 0;
    let mut growth_deg: u32 = 0;
    for t in 0..=max_degree {
        let q = series.coefficient(t)? as u128;
        let full = ring_dim(nvars, t)?;
        let fresh = b.push(t, full - q)?;
        if t == 0 {
            // no generators yet: the quotient grows like the whole ring
            growth_deg = if q > 0 { nvars as u32 - 1 } else { 0 };
        } else if fresh > 0 {
            quiet_since = t;
            growth_deg = match macaulay_representation(q, t)?.first() {
                Some(&(a, i)) => (a - i as u64) as u32,
                None => 0,
            };
        }
        let start = quiet_since.max(poly_from);
        let needed = growth_deg.max(hp_deg) + 1;
        if t >= start && t - start + 1 >= needed {
            return Ok(LexIdeal {
                ideal: b.ideal(),
                built_through: t,
            });
        }
    }
    Err(Error::CutoffExceeded { cutoff: max_degree })
}

/// `Lex(M)` for a monomial ideal, through its Hilbert series.
pub fn lex_of_monomial_ideal(ideal: &MonomialIdeal, max_degree: u32) -> Result<LexIdeal> {
    lex_ideal_from_series(&HilbertSeries::of_monomial_ideal(ideal), max_degree)
}

/// Verifies that each degree-`(i+1)` segment contains the variable multiples
/// of the degree-`i` segment.
pub fn segment_closure_check(h: &HilbertData) -> Result<VerificationReport> {
    let ideal_side = h.to_side(Side::Ideal)?;
    let nvars = ideal_side.nvars();
    let mut report = VerificationReport::new("segment-closure", "any", None);
    let mut inst = InstanceBuilder::new(&format!("closure|{nvars}|{:?}", ideal_side.dims()));
    inst.value("ideal_dims", ideal_side.dims().to_vec());
    let dims = ideal_side.dims();
    for i in 0..dims.len().saturating_sub(1) {
        let shadow = shadow_size(nvars, i as u32, dims[i] as u128)?;
        let next = dims[i + 1] as u128;
        let ok = inst.check(&format!("degree {}", i + 1), next >= shadow, || {
            format!("segment of size {next} cannot hold the {shadow} multiples from degree {i}")
        });
        if !ok {
            break;
        }
    }
    report.push(inst.finish());
    Ok(report)
}

/// Every generator stays in the ideal after replacing one of its variables
/// by any larger one.
pub fn is_strongly_stable(ideal: &MonomialIdeal) -> bool {
    let n = ideal.nvars();
    ideal.gens().iter().all(|u| {
        u.support().all(|j| {
            let base = u.over_var(j).unwrap();
            (j + 1..n).all(|i| ideal.contains(&base.times_var(i)))
        })
    })
}

/// Regularity of a strongly stable ideal: its largest generator degree.
pub fn stable_regularity(ideal: &MonomialIdeal) -> Result<u32> {
    if ideal.is_zero() || ideal.is_unit() {
        return Err(Error::TrivialIdeal);
    }
    if !is_strongly_stable(ideal) {
        return Err(Error::NotStronglyStable);
    }
    Ok(ideal.max_degree().unwrap())
}

/// Exponent bound `d^{n 2^{m-1}}` for `m >= 1`, saturating at `u64::MAX`.
pub fn g_bound(n: usize, d: u32, m: usize) -> Option<u64> {
    if m == 0 {
        return None;
    }
    let exp = (n as u128) << (m - 1);
    let mut acc: u64 = 1;
    for _ in 0..exp {
        acc = match acc.checked_mul(d as u64) {
            Some(v) => v,
            None => return Some(u64::MAX),
        };
        if d == 1 {
            break;
        }
    }
    Some(acc)
}

/// `G_{n,d,m} = reg Lex(J')` for a complete intersection `J'` of `n` forms
/// of degree `d` in `n + m` variables.
pub fn compute_g(n: usize, d: u32, m: usize) -> Result<u32> {
    stable_regularity(&lex_of_complete_intersection(n, d, m)?.ideal)
}

/// `Lex(J')` for the complete intersection with `n` forms of degree `d` in
/// `n + m` variables.
pub fn lex_of_complete_intersection(n: usize, d: u32, m: usize) -> Result<LexIdeal> {
    if n == 0 || d == 0 {
        return Err(Error::InvalidInput("need n >= 1 and d >= 1".into()));
    }
    let series = HilbertSeries::complete_intersection(n + m, &vec![d; n]);
    let artinian_top = n as u32 * (d - 1) + 1;
    let cap = g_bound(n, d, m)
        .map(|b| b.min(u32::MAX as u64) as u32)
        .unwrap_or(0)
        .max(artinian_top)
        .max(series.polynomial_from() + 64);
    lex_ideal_from_series(&series, cap).map_err(|e| match e {
        Error::CutoffExceeded { cutoff } => Error::Internal(format!(
            "Lex(J') for (n,d,m)=({n},{d},{m}) has generators beyond degree {cutoff}"
        )),
        other => other,
    })
}
