//! Graded Betti numbers as ranks of Koszul homology `H_i(x; R/I)_j`.
//!
//! For a monomial ideal `M` the Koszul complex splits by multidegree. In
//! multidegree `a` the chains are `e_F ⊗ x^{a-F}` with `F ⊆ supp(a)` and
//! `x^{a-F} ∉ M`, so each piece is a small complex with `±1` entries. Only
//! multidegrees in the lcm lattice can carry homology in positive degree, and
//! only those with `x^{a - supp(a)} ∉ M`; the enumeration below visits exactly
//! the multidegrees whose coordinates are generator exponents (or zero) and
//! meet both conditions.
//!
//! For other homogeneous ideals the complex is built degree by degree on
//! standard monomials of an initial ideal, with the differential reduced to
//! normal form.

use std::collections::{BTreeMap, HashMap};

use rayon::prelude::*;

use super::BettiTable;
use crate::error::{Error, Result};
use crate::field::{Field, SparseRow};
use crate::groebner::{GroebnerBasis, IdealPresentation};
use crate::monomial::Monomial;
use crate::monomial_tools::{MonomialIdeal, MonomialIndex, Side};
use crate::order::TermOrder;
use crate::poly::Polynomial;

/// Degree-`t` monomials outside `M`, in lex-descending order.
pub fn standard_monomial_basis(ideal: &MonomialIdeal, t: u32) -> Vec<Monomial> {
    let index = MonomialIndex::new(ideal);
    standard_with_index(&index, ideal.nvars(), t)
}

fn standard_with_index(index: &MonomialIndex, nvars: usize, t: u32) -> Vec<Monomial> {
    fn rec(index: &MonomialIndex, v: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if v == 0 {
            cur[0] = left;
            if !index.contains(cur) {
                out.push(Monomial::new(cur.iter().copied()));
            }
            cur[0] = 0;
            return;
        }
        for e in (0..=left).rev() {
            cur[v] = e;
            // membership only grows as lower variables are filled in
            if !index.contains(cur) {
                rec(index, v - 1, left - e, cur, out);
            }
        }
        cur[v] = 0;
    }
    if nvars == 0 {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut cur = vec![0u32; nvars];
    rec(index, nvars - 1, t, &mut cur, &mut out);
    out
}

/// Multidegrees `a != 0` with `x^a ∈ M`, `x^{a - supp(a)} ∉ M` and every
/// nonzero `a_k` a generator exponent of `x_k`.
fn candidate_multidegrees(ideal: &MonomialIdeal, index: &MonomialIndex) -> Vec<Vec<u32>> {
    let n = ideal.nvars();
    let mut exps: Vec<Vec<u32>> = vec![Vec::new(); n];
    for g in ideal.gens() {
        for (k, &e) in g.exps().iter().enumerate() {
            if e > 0 {
                exps[k].push(e);
            }
        }
    }
    for e in &mut exps {
        e.sort_unstable();
        e.dedup();
    }
    let top: Vec<u32> = exps.iter().map(|e| e.last().copied().unwrap_or(0)).collect();

    struct Walk<'a> {
        index: &'a MonomialIndex,
        exps: &'a [Vec<u32>],
        top: &'a [u32],
        a: Vec<u32>,
        b: Vec<u32>,
        probe: Vec<u32>,
        out: Vec<Vec<u32>>,
    }
    impl Walk<'_> {
        /// Variables above `k` are fixed; lower ones are still zero in `a`, `b`.
        fn reachable(&mut self, k: usize) -> bool {
            self.probe.copy_from_slice(&self.a);
            self.probe[..k].copy_from_slice(&self.top[..k]);
            self.index.contains(&self.probe)
        }

        fn go(&mut self, k: usize) {
            if k == 0 {
                if self.a.iter().any(|&e| e > 0) && self.index.contains(&self.a) {
                    self.out.push(self.a.clone());
                }
                return;
            }
            let v = k - 1;
            if self.reachable(v) {
                self.go(v);
            }
            for idx in 0..self.exps[v].len() {
                let e = self.exps[v][idx];
                self.a[v] = e;
                self.b[v] = e - 1;
                if self.index.contains(&self.b) {
                    break;
                }
                if self.reachable(v) {
                    self.go(v);
                }
            }
            self.a[v] = 0;
            self.b[v] = 0;
        }
    }
    let mut walk = Walk {
        index,
        exps: &exps,
        top: &top,
        a: vec![0; n],
        b: vec![0; n],
        probe: vec![0; n],
        out: Vec::new(),
    };
    walk.go(n);
    walk.out
}

/// `dim H_i` of the Koszul piece in multidegree `a`, for `i = 0..=|supp a|`.
fn multidegree_homology<F: Field>(field: &F, index: &MonomialIndex, a: &[u32]) -> Vec<u64> {
    let support: Vec<usize> = (0..a.len()).filter(|&k| a[k] > 0).collect();
    let s = support.len();
    let mut present = vec![false; 1 << s];
    let mut exps = a.to_vec();
    for (mask, slot) in present.iter_mut().enumerate() {
        for (p, &k) in support.iter().enumerate() {
            exps[k] = a[k] - ((mask >> p) & 1) as u32;
        }
        *slot = !index.contains(&exps);
    }
    // position of each present cell within its homological degree
    let mut pos = vec![usize::MAX; 1 << s];
    let mut dims = vec![0usize; s + 1];
    for mask in 0..1usize << s {
        if present[mask] {
            let i = mask.count_ones() as usize;
            pos[mask] = dims[i];
            dims[i] += 1;
        }
    }
    let one = field.one();
    let minus = field.neg(&one);
    let mut ranks = vec![0usize; s + 2];
    for i in 1..=s {
        if dims[i] == 0 || dims[i - 1] == 0 {
            continue;
        }
        let mut rows: Vec<SparseRow<F::Elem>> = Vec::with_capacity(dims[i]);
        for mask in (0..1usize << s).filter(|&m| present[m] && m.count_ones() as usize == i) {
            let mut row = Vec::new();
            let mut below = 0;
            for p in 0..s {
                if mask >> p & 1 == 1 {
                    let target = mask ^ (1 << p);
                    if present[target] {
                        let c = if below % 2 == 0 { one.clone() } else { minus.clone() };
                        row.push((pos[target], c));
                    }
                    below += 1;
                }
            }
            if !row.is_empty() {
                row.sort_by_key(|(c, _)| *c);
                rows.push(row);
            }
        }
        ranks[i] = field.rank(rows);
    }
    (0..=s)
        .map(|i| (dims[i] - ranks[i] - ranks[i + 1]) as u64)
        .collect()
}

/// Quotient-side Betti table of `R/M` over `field`. Every entry is computed:
/// nonzero Betti numbers live in multidegrees dividing the lcm of the
/// generators.
pub fn monomial_betti<F: Field>(field: &F, ideal: &MonomialIdeal) -> BettiTable {
    let n = ideal.nvars();
    let through = ideal.lcm_of_generators().degree();
    if ideal.is_zero() {
        return BettiTable::new(n, Side::Quotient, [((0, 0), 1)], 0);
    }
    if ideal.is_unit() {
        return BettiTable::new(n, Side::Quotient, [], 0);
    }
    let index = MonomialIndex::new(ideal);
    let candidates = candidate_multidegrees(ideal, &index);
    let entries = candidates
        .par_iter()
        .fold(BTreeMap::new, |mut acc: BTreeMap<(usize, u32), u64>, a| {
            let j: u32 = a.iter().sum();
            for (i, h) in multidegree_homology(field, &index, a).into_iter().enumerate() {
                if h > 0 {
                    *acc.entry((i, j)).or_insert(0) += h;
                }
            }
            acc
        })
        .reduce(BTreeMap::new, |mut x, y| {
            for (k, v) in y {
                *x.entry(k).or_insert(0) += v;
            }
            x
        });
    BettiTable::new(
        n,
        Side::Quotient,
        std::iter::once(((0, 0), 1)).chain(entries),
        through,
    )
}

/// Quotient-side Betti table of `R/I` for a homogeneous ideal. The initial
/// ideal under `order` bounds the range: `β_{i,j}(R/I) = 0` for
/// `j > i + reg(R/in(I))`. `max_degree` caps the internal degrees that may
/// be computed.
pub fn general_betti<F: Field>(
    ideal: &IdealPresentation<F>,
    order: TermOrder,
    max_degree: Option<u32>,
) -> Result<BettiTable> {
    ideal.require_homogeneous()?;
    let ring = ideal.ring();
    let n = ring.nvars();
    if ideal.is_zero() {
        return Ok(BettiTable::new(n, Side::Quotient, [((0, 0), 1)], 0));
    }
    let basis = ideal.groebner_basis(order);
    if basis.is_unit() {
        return Ok(BettiTable::new(n, Side::Quotient, [], 0));
    }
    let initial = basis.initial_ideal();
    let reg_initial = monomial_betti(ring.field(), &initial).regularity()? as u32;
    let top = reg_initial + n as u32;
    if let Some(cap) = max_degree {
        if top > cap {
            return Err(Error::CutoffExceeded { cutoff: cap });
        }
    }
    let complex = GradedKoszul::new(&basis, &initial, top);
    let cells: Vec<(usize, u32)> = (0..=top)
        .flat_map(|j| (0..=n.min(j as usize)).map(move |i| (i, j)))
        .filter(|&(i, j)| j - i as u32 <= reg_initial)
        .collect();
    let entries: Vec<((usize, u32), u64)> = cells
        .par_iter()
        .map(|&(i, j)| ((i, j), complex.homology(i, j)))
        .collect();
    Ok(BettiTable::new(n, Side::Quotient, entries, top))
}

/// The Koszul complex on standard monomials of `R/I` through degree `top`.
struct GradedKoszul<'a, F: Field> {
    basis: &'a GroebnerBasis<F>,
    nvars: usize,
    /// standard monomials by degree
    standard: Vec<Vec<Monomial>>,
    /// `mult[e][k][idx]`: normal form of `x_k · standard[e][idx]` over `standard[e+1]`
    mult: Vec<Vec<Vec<SparseRow<F::Elem>>>>,
    /// subsets of `0..nvars` by size, as bitmasks, and their positions
    subsets: Vec<Vec<usize>>,
    subset_pos: Vec<usize>,
}

impl<'a, F: Field> GradedKoszul<'a, F> {
    fn new(basis: &'a GroebnerBasis<F>, initial: &MonomialIdeal, top: u32) -> Self {
        let nvars = basis.ring().nvars();
        let index = MonomialIndex::new(initial);
        let standard: Vec<Vec<Monomial>> = (0..=top + 1).map(|t| standard_with_index(&index, nvars, t)).collect();
        let ring = basis.ring();
        let order = basis.order();
        let mult: Vec<Vec<Vec<SparseRow<F::Elem>>>> = (0..=top as usize)
            .into_par_iter()
            .map(|e| {
                let target: HashMap<&Monomial, usize> =
                    standard[e + 1].iter().enumerate().map(|(i, m)| (m, i)).collect();
                (0..nvars)
                    .map(|k| {
                        standard[e]
                            .iter()
                            .map(|m| {
                                let p = Polynomial::monomial(ring, order, ring.field().one(), m.times_var(k));
                                let r = basis.reduce(&p);
                                let mut row: SparseRow<F::Elem> = r
                                    .terms()
                                    .iter()
                                    .map(|t| (target[&t.monomial], t.coeff.clone()))
                                    .collect();
                                row.sort_by_key(|(c, _)| *c);
                                row
                            })
                            .collect()
                    })
                    .collect()
            })
            .collect();
        let mut subsets = vec![Vec::new(); nvars + 1];
        let mut subset_pos = vec![0; 1 << nvars];
        for mask in 0..1usize << nvars {
            let size = mask.count_ones() as usize;
            subset_pos[mask] = subsets[size].len();
            subsets[size].push(mask);
        }
        GradedKoszul {
            basis,
            nvars,
            standard,
            mult,
            subsets,
            subset_pos,
        }
    }

    fn dim(&self, i: usize, j: u32) -> usize {
        if i > self.nvars || (i as u32) > j {
            return 0;
        }
        self.subsets[i].len() * self.standard[(j - i as u32) as usize].len()
    }

    /// Rank of `∂: C_{i,j} → C_{i-1,j}`.
    fn boundary_rank(&self, i: usize, j: u32) -> usize {
        if i == 0 || self.dim(i, j) == 0 || self.dim(i - 1, j) == 0 {
            return 0;
        }
        let e = (j - i as u32) as usize;
        let width = self.standard[e + 1].len();
        let field = self.basis.ring().field();
        let mut rows: Vec<SparseRow<F::Elem>> = Vec::with_capacity(self.dim(i, j));
        for &mask in &self.subsets[i] {
            for idx in 0..self.standard[e].len() {
                let mut row: SparseRow<F::Elem> = Vec::new();
                let mut below = 0;
                for k in 0..self.nvars {
                    if mask >> k & 1 == 0 {
                        continue;
                    }
                    let offset = self.subset_pos[mask ^ (1 << k)] * width;
                    for (col, c) in &self.mult[e][k][idx] {
                        let v = if below % 2 == 0 { c.clone() } else { field.neg(c) };
                        row.push((offset + col, v));
                    }
                    below += 1;
                }
                if !row.is_empty() {
                    row.sort_by_key(|(c, _)| *c);
                    rows.push(row);
                }
            }
        }
        field.rank(rows)
    }

    fn homology(&self, i: usize, j: u32) -> u64 {
        let d = self.dim(i, j);
        if d == 0 {
            return 0;
        }
        (d - self.boundary_rank(i, j) - self.boundary_rank(i + 1, j)) as u64
    }
}

/// `dim_K H_i(x; R/I)_j = β_{i,j}(R/I)`.
pub fn koszul_homology_rank<F: Field>(
    ideal: &IdealPresentation<F>,
    i: usize,
    j: u32,
    order: TermOrder,
) -> Result<u64> {
    Ok(general_betti(ideal, order, None)?.get(i, j))
}

/// [`koszul_homology_rank`] for a monomial ideal.
pub fn monomial_koszul_homology_rank<F: Field>(field: &F, ideal: &MonomialIdeal, i: usize, j: u32) -> u64 {
    monomial_betti(field, ideal).get(i, j)
}
