use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::monomial::Monomial;
use crate::order::TermOrder;
use crate::ring::PolyRing;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Term<E> {
    pub coeff: E,
    pub monomial: Monomial,
}

/// A sparse polynomial whose terms are kept strictly decreasing under its
/// term order, with no zero coefficients.
#[derive(Clone)]
pub struct Polynomial<F: Field> {
    ring: Arc<PolyRing<F>>,
    order: TermOrder,
    terms: Vec<Term<F::Elem>>,
}

impl<F: Field> Polynomial<F> {
    pub fn zero(ring: &Arc<PolyRing<F>>, order: TermOrder) -> Self {
        Polynomial {
            ring: ring.clone(),
            order,
            terms: Vec::new(),
        }
    }

    pub fn constant(ring: &Arc<PolyRing<F>>, order: TermOrder, c: F::Elem) -> Self {
        Self::monomial(ring, order, c, Monomial::one(ring.nvars()))
    }

    pub fn one(ring: &Arc<PolyRing<F>>, order: TermOrder) -> Self {
        Self::constant(ring, order, ring.field().one())
    }

    pub fn monomial(ring: &Arc<PolyRing<F>>, order: TermOrder, c: F::Elem, m: Monomial) -> Self {
        let terms = if ring.field().is_zero(&c) {
            Vec::new()
        } else {
            vec![Term { coeff: c, monomial: m }]
        };
        Polynomial {
            ring: ring.clone(),
            order,
            terms,
        }
    }

    pub fn var(ring: &Arc<PolyRing<F>>, order: TermOrder, var: usize) -> Self {
        let one = ring.field().one();
        Self::monomial(ring, order, one, Monomial::var(ring.nvars(), var, 1))
    }

    /// Builds a polynomial from an arbitrary term list: equal monomials are
    /// merged, zero coefficients dropped and the result sorted descending.
    pub fn from_terms(
        ring: &Arc<PolyRing<F>>,
        order: TermOrder,
        mut terms: Vec<(F::Elem, Monomial)>,
    ) -> Self {
        let field = ring.field();
        terms.sort_by(|a, b| order.compare(&b.1, &a.1));
        let mut out: Vec<Term<F::Elem>> = Vec::with_capacity(terms.len());
        for (c, m) in terms {
            match out.last_mut() {
                Some(last) if last.monomial == m => last.coeff = field.add(&last.coeff, &c),
                _ => out.push(Term { coeff: c, monomial: m }),
            }
        }
        out.retain(|t| !field.is_zero(&t.coeff));
        Polynomial {
            ring: ring.clone(),
            order,
            terms: out,
        }
    }

    /// Assumes `terms` already satisfies the ordering invariant.
    pub(crate) fn from_sorted(ring: &Arc<PolyRing<F>>, order: TermOrder, terms: Vec<Term<F::Elem>>) -> Self {
        debug_assert!(terms
            .windows(2)
            .all(|w| order.compare(&w[0].monomial, &w[1].monomial) == Ordering::Greater));
        Polynomial {
            ring: ring.clone(),
            order,
            terms,
        }
    }

    pub fn ring(&self) -> &Arc<PolyRing<F>> {
        &self.ring
    }

    pub fn field(&self) -> &F {
        self.ring.field()
    }

    pub fn order(&self) -> TermOrder {
        self.order
    }

    pub fn nvars(&self) -> usize {
        self.ring.nvars()
    }

    pub fn terms(&self) -> &[Term<F::Elem>] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<Term<F::Elem>> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|t| t.monomial.is_one())
    }

    pub fn leading_term(&self) -> Option<&Term<F::Elem>> {
        self.terms.first()
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|t| &t.monomial)
    }

    pub fn leading_coeff(&self) -> Option<&F::Elem> {
        self.terms.first().map(|t| &t.coeff)
    }

    /// Largest total degree of a term.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.iter().map(|t| t.monomial.degree()).max()
    }

    /// `(true, Some(d))` if every term has degree `d`; the zero polynomial is
    /// homogeneous of every degree and reports `(true, None)`.
    pub fn is_homogeneous(&self) -> (bool, Option<u32>) {
        match self.terms.first() {
            None => (true, None),
            Some(t) => {
                let d = t.monomial.degree();
                if self.terms.iter().all(|t| t.monomial.degree() == d) {
                    (true, Some(d))
                } else {
                    (false, None)
                }
            }
        }
    }

    /// Whether every monomial lies in the first `keep` variables.
    pub fn lies_in_first(&self, keep: usize) -> bool {
        self.terms.iter().all(|t| t.monomial.lies_in_first(keep))
    }

    pub fn with_order(&self, order: TermOrder) -> Self {
        if order == self.order {
            return self.clone();
        }
        let mut terms = self.terms.clone();
        terms.sort_by(|a, b| order.compare(&b.monomial, &a.monomial));
        Polynomial {
            ring: self.ring.clone(),
            order,
            terms,
        }
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if !Arc::ptr_eq(&self.ring, &other.ring) && self.ring != other.ring {
            return Err(Error::RingMismatch);
        }
        if self.order != other.order {
            return Err(Error::InvalidInput(format!(
                "term orders differ ({} vs {})",
                self.order, other.order
            )));
        }
        Ok(())
    }

    /// `self + s·m·g`, the basic merge step of every reduction.
    pub fn add_scaled(&self, s: &F::Elem, m: &Monomial, g: &Self) -> Self {
        let field = self.ring.field();
        if field.is_zero(s) {
            return self.clone();
        }
        let order = self.order;
        let a = &self.terms;
        let b = &g.terms;
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        let mut shifted: Option<Monomial> = b.first().map(|t| t.monomial.mul(m));
        while i < a.len() || j < b.len() {
            let ord = match (a.get(i), &shifted) {
                (Some(ta), Some(sb)) => order.compare(&ta.monomial, sb),
                (Some(_), None) => Ordering::Greater,
                (None, _) => Ordering::Less,
            };
            match ord {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push(Term {
                        coeff: field.mul(s, &b[j].coeff),
                        monomial: shifted.take().unwrap(),
                    });
                    j += 1;
                    shifted = b.get(j).map(|t| t.monomial.mul(m));
                }
                Ordering::Equal => {
                    let c = field.add(&a[i].coeff, &field.mul(s, &b[j].coeff));
                    if !field.is_zero(&c) {
                        out.push(Term {
                            coeff: c,
                            monomial: shifted.take().unwrap(),
                        });
                    }
                    i += 1;
                    j += 1;
                    shifted = b.get(j).map(|t| t.monomial.mul(m));
                }
            }
        }
        Polynomial {
            ring: self.ring.clone(),
            order,
            terms: out,
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let one = self.field().one();
        Ok(self.add_scaled(&one, &Monomial::one(self.nvars()), other))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let m1 = self.field().neg(&self.field().one());
        Ok(self.add_scaled(&m1, &Monomial::one(self.nvars()), other))
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut acc = Polynomial::zero(&self.ring, self.order);
        for t in &self.terms {
            acc = acc.add_scaled(&t.coeff, &t.monomial, other);
        }
        Ok(acc)
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        let field = self.field();
        if field.is_zero(c) {
            return Polynomial::zero(&self.ring, self.order);
        }
        Polynomial {
            ring: self.ring.clone(),
            order: self.order,
            terms: self
                .terms
                .iter()
                .map(|t| Term {
                    coeff: field.mul(&t.coeff, c),
                    monomial: t.monomial.clone(),
                })
                .collect(),
        }
    }

    pub fn mul_term(&self, c: &F::Elem, m: &Monomial) -> Self {
        Polynomial::zero(&self.ring, self.order).add_scaled(c, m, self)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Polynomial::one(&self.ring, self.order);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Scales so the leading coefficient is one.
    pub fn monic(&self) -> Self {
        match self.leading_coeff() {
            None => self.clone(),
            Some(lc) if self.field().is_one(lc) => self.clone(),
            Some(lc) => {
                let inv = self.field().inv(lc).expect("nonzero leading coefficient");
                self.scale(&inv)
            }
        }
    }

    /// The S-polynomial `(L/lt(f))·f − (L/lt(h))·h` with `L = lcm(lm f, lm h)`.
    pub fn s_polynomial(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let (tf, th) = match (self.leading_term(), other.leading_term()) {
            (Some(a), Some(b)) => (a, b),
            _ => return Err(Error::ZeroPolynomial),
        };
        let field = self.field();
        let l = tf.monomial.lcm(&th.monomial);
        let uf = l.div(&tf.monomial).unwrap();
        let uh = l.div(&th.monomial).unwrap();
        let cf = field.inv(&tf.coeff).unwrap();
        let ch = field.neg(&field.inv(&th.coeff).unwrap());
        Ok(self.mul_term(&cf, &uf).add_scaled(&ch, &uh, other))
    }

    /// Substitutes `x_i ↦ images[i]`; all images must share one ring.
    pub fn compose(&self, images: &[Polynomial<F>]) -> Result<Polynomial<F>> {
        if images.len() != self.nvars() {
            return Err(Error::DimensionMismatch {
                expected: self.nvars(),
                found: images.len(),
            });
        }
        let first = images.first().ok_or(Error::RingMismatch)?;
        for g in images {
            first.check_compatible(g)?;
        }
        let target = first.ring.clone();
        let order = first.order;
        // powers[i][e] = images[i]^e
        let mut powers: Vec<Vec<Polynomial<F>>> = images
            .iter()
            .map(|_| vec![Polynomial::one(&target, order)])
            .collect();
        let mut acc = Polynomial::zero(&target, order);
        for t in &self.terms {
            let mut prod = Polynomial::constant(&target, order, t.coeff.clone());
            for (i, e) in t.monomial.exps().iter().enumerate() {
                while powers[i].len() <= *e as usize {
                    let next = &powers[i][powers[i].len() - 1] * &images[i];
                    powers[i].push(next);
                }
                if *e > 0 {
                    prod = &prod * &powers[i][*e as usize];
                }
            }
            acc = &acc + &prod;
        }
        Ok(acc)
    }

    /// Reinterprets the polynomial in `ring`, padding or truncating exponent
    /// vectors. Truncation requires the dropped variables to be absent.
    pub fn change_ring(&self, ring: &Arc<PolyRing<F>>, order: TermOrder) -> Result<Self> {
        let n = ring.nvars();
        if n < self.nvars() && !self.lies_in_first(n) {
            return Err(Error::InvalidInput(
                "polynomial involves variables outside the target ring".into(),
            ));
        }
        let terms = self
            .terms
            .iter()
            .map(|t| {
                let m = if n < self.nvars() {
                    t.monomial.truncate(n)
                } else {
                    t.monomial.extend(n)
                };
                (t.coeff.clone(), m)
            })
            .collect();
        Ok(Polynomial::from_terms(ring, order, terms))
    }

    /// Evaluates the polynomial at a point.
    pub fn evaluate(&self, point: &[F::Elem]) -> F::Elem {
        let field = self.field();
        let mut acc = field.zero();
        for t in &self.terms {
            let mut v = t.coeff.clone();
            for (i, e) in t.monomial.exps().iter().enumerate() {
                for _ in 0..*e {
                    v = field.mul(&v, &point[i]);
                }
            }
            acc = field.add(&acc, &v);
        }
        acc
    }
}

impl<F: Field> PartialEq for Polynomial<F> {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms && (Arc::ptr_eq(&self.ring, &other.ring) || self.ring == other.ring)
    }
}

impl<F: Field> Eq for Polynomial<F> {}

impl<F: Field> fmt::Display for Polynomial<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let field = self.field();
        for (k, t) in self.terms.iter().enumerate() {
            let c = field.format(&t.coeff);
            let (neg, mag) = match c.strip_prefix('-') {
                Some(rest) => (true, rest.to_string()),
                None => (false, c),
            };
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            let mono = t.monomial.format(self.ring.names());
            if t.monomial.is_one() {
                write!(f, "{mag}")?;
            } else if mag == "1" {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{mag}*{mono}")?;
            }
        }
        Ok(())
    }
}

impl<F: Field> fmt::Debug for Polynomial<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({self})")
    }
}

impl<F: Field> std::ops::Add for &Polynomial<F> {
    type Output = Polynomial<F>;
    fn add(self, rhs: Self) -> Polynomial<F> {
        self.try_add(rhs).expect("incompatible polynomials")
    }
}

impl<F: Field> std::ops::Sub for &Polynomial<F> {
    type Output = Polynomial<F>;
    fn sub(self, rhs: Self) -> Polynomial<F> {
        self.try_sub(rhs).expect("incompatible polynomials")
    }
}

impl<F: Field> std::ops::Mul for &Polynomial<F> {
    type Output = Polynomial<F>;
    fn mul(self, rhs: Self) -> Polynomial<F> {
        self.try_mul(rhs).expect("incompatible polynomials")
    }
}

impl<F: Field> std::ops::Neg for &Polynomial<F> {
    type Output = Polynomial<F>;
    fn neg(self) -> Polynomial<F> {
        let m1 = self.field().neg(&self.field().one());
        self.scale(&m1)
    }
}
