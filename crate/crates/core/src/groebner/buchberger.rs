use std::cmp::Ordering;
use std::collections::HashSet;

use super::division::reduce;
use super::GroebnerBasis;
use crate::field::Field;
use crate::monomial::Monomial;
use crate::order::TermOrder;
use crate::poly::Polynomial;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BuchbergerOptions {
    /// Skip pairs by the coprime-leading-monomial and chain criteria.
    pub criteria: bool,
}

impl Default for BuchbergerOptions {
    fn default() -> Self {
        BuchbergerOptions { criteria: true }
    }
}

#[derive(Clone, Debug)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
}

/// Buchberger's algorithm with the normal selection strategy: the pair with
/// the smallest lcm degree goes first, ties broken by the term order on the
/// lcm and then by index. The result satisfies the Buchberger criterion but
/// is not inter-reduced.
pub fn buchberger<F: Field>(
    gens: &[Polynomial<F>],
    order: TermOrder,
    opts: BuchbergerOptions,
) -> GroebnerBasis<F> {
    let ring = gens
        .first()
        .map(|g| g.ring().clone())
        .expect("at least one generator");
    let mut basis: Vec<Polynomial<F>> = Vec::new();
    let mut pairs: Vec<Pair> = Vec::new();
    let mut pending: HashSet<(usize, usize)> = HashSet::new();

    let mut seeds: Vec<Polynomial<F>> = gens
        .iter()
        .filter(|g| !g.is_zero())
        .map(|g| g.with_order(order).monic())
        .collect();
    seeds.sort_by(|a, b| {
        order
            .compare(a.leading_monomial().unwrap(), b.leading_monomial().unwrap())
            .then_with(|| a.len().cmp(&b.len()))
    });
    for g in seeds {
        let r = reduce(&g, &basis);
        if !r.is_zero() {
            add_element(&mut basis, &mut pairs, &mut pending, r.monic());
        }
        if basis.iter().any(|b| b.is_constant()) {
            return unit(&ring, order);
        }
    }

    while let Some(idx) = select(&pairs, order) {
        let pair = pairs.swap_remove(idx);
        pending.remove(&(pair.i, pair.j));
        let (fi, fj) = (&basis[pair.i], &basis[pair.j]);
        if opts.criteria {
            let (li, lj) = (fi.leading_monomial().unwrap(), fj.leading_monomial().unwrap());
            if li.is_coprime(lj) {
                continue;
            }
            if chain_criterion(&basis, &pending, &pair) {
                continue;
            }
        }
        let s = fi.s_polynomial(fj).expect("nonzero basis elements");
        let r = reduce(&s, &basis);
        if r.is_zero() {
            continue;
        }
        if r.is_constant() {
            return unit(&ring, order);
        }
        add_element(&mut basis, &mut pairs, &mut pending, r.monic());
    }

    GroebnerBasis::from_parts(ring, order, basis, false)
}

fn unit<F: Field>(ring: &std::sync::Arc<crate::ring::PolyRing<F>>, order: TermOrder) -> GroebnerBasis<F> {
    GroebnerBasis::from_parts(ring.clone(), order, vec![Polynomial::one(ring, order)], true)
}

fn add_element<F: Field>(
    basis: &mut Vec<Polynomial<F>>,
    pairs: &mut Vec<Pair>,
    pending: &mut HashSet<(usize, usize)>,
    g: Polynomial<F>,
) {
    let k = basis.len();
    let lk = g.leading_monomial().unwrap().clone();
    for (i, b) in basis.iter().enumerate() {
        let lcm = b.leading_monomial().unwrap().lcm(&lk);
        pairs.push(Pair { i, j: k, lcm });
        pending.insert((i, k));
    }
    basis.push(g);
}

fn select(pairs: &[Pair], order: TermOrder) -> Option<usize> {
    (0..pairs.len()).min_by(|&a, &b| {
        let (pa, pb) = (&pairs[a], &pairs[b]);
        pa.lcm
            .degree()
            .cmp(&pb.lcm.degree())
            .then_with(|| order.compare(&pa.lcm, &pb.lcm))
            .then_with(|| (pa.j, pa.i).cmp(&(pb.j, pb.i)))
    })
}

/// Skip `(i, j)` if some other leading monomial divides the lcm and both of
/// its pairs with `i` and `j` have already been treated.
fn chain_criterion<F: Field>(
    basis: &[Polynomial<F>],
    pending: &HashSet<(usize, usize)>,
    pair: &Pair,
) -> bool {
    let key = |a: usize, b: usize| if a < b { (a, b) } else { (b, a) };
    basis.iter().enumerate().any(|(k, g)| {
        k != pair.i
            && k != pair.j
            && g.leading_monomial().unwrap().divides(&pair.lcm)
            && !pending.contains(&key(pair.i, k))
            && !pending.contains(&key(pair.j, k))
    })
}

/// Returns the first pair whose S-polynomial does not reduce to zero, with
/// its nonzero remainder; `None` means the Buchberger criterion holds.
pub fn buchberger_witness<F: Field>(
    elements: &[Polynomial<F>],
) -> Option<(usize, usize, Polynomial<F>)> {
    for i in 0..elements.len() {
        for j in i + 1..elements.len() {
            let s = elements[i].s_polynomial(&elements[j]).ok()?;
            let r = reduce(&s, elements);
            if !r.is_zero() {
                return Some((i, j, r));
            }
        }
    }
    None
}

pub(crate) fn cmp_leading<F: Field>(order: TermOrder, a: &Polynomial<F>, b: &Polynomial<F>) -> Ordering {
    order.compare(a.leading_monomial().unwrap(), b.leading_monomial().unwrap())
}
