use crate::error::{Error, Result};
use crate::field::Field;
use crate::poly::{Polynomial, Term};

/// The substitution `x_i ↦ x_i^{d_i}` on a polynomial ring.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PowerMap {
    degrees: Vec<u32>,
}

impl PowerMap {
    pub fn new(degrees: Vec<u32>) -> Result<Self> {
        if degrees.contains(&0) {
            return Err(Error::InvalidInput("power map exponents must be positive".into()));
        }
        Ok(PowerMap { degrees })
    }

    /// `x_i ↦ x_i^d` on all variables.
    pub fn uniform(nvars: usize, d: u32) -> Result<Self> {
        Self::new(vec![d; nvars])
    }

    /// `x_i ↦ x_i^d` on the first `keep` variables, identity on the rest.
    pub fn on_first(nvars: usize, keep: usize, d: u32) -> Result<Self> {
        Self::new((0..nvars).map(|i| if i < keep { d } else { 1 }).collect())
    }

    pub fn identity(nvars: usize) -> Self {
        PowerMap {
            degrees: vec![1; nvars],
        }
    }

    pub fn degrees(&self) -> &[u32] {
        &self.degrees
    }

    pub fn nvars(&self) -> usize {
        self.degrees.len()
    }

    pub fn is_identity(&self) -> bool {
        self.degrees.iter().all(|d| *d == 1)
    }

    /// The restriction to the first `keep` variables.
    pub fn restrict(&self, keep: usize) -> PowerMap {
        PowerMap {
            degrees: self.degrees[..keep].to_vec(),
        }
    }

    /// Applies the map to a polynomial. Exponent scaling is injective and,
    /// for every order used here, order preserving, so the term list stays
    /// sorted and its length is unchanged.
    pub fn apply<F: Field>(&self, f: &Polynomial<F>) -> Result<Polynomial<F>> {
        if f.nvars() != self.nvars() {
            return Err(Error::DimensionMismatch {
                expected: self.nvars(),
                found: f.nvars(),
            });
        }
        let terms: Vec<Term<F::Elem>> = f
            .terms()
            .iter()
            .map(|t| Term {
                coeff: t.coeff.clone(),
                monomial: t.monomial.scale(&self.degrees),
            })
            .collect();
        let sorted = terms.windows(2).all(|w| {
            f.order().compare(&w[0].monomial, &w[1].monomial) == std::cmp::Ordering::Greater
        });
        if sorted {
            Ok(Polynomial::from_sorted(f.ring(), f.order(), terms))
        } else {
            Ok(Polynomial::from_terms(
                f.ring(),
                f.order(),
                terms.into_iter().map(|t| (t.coeff, t.monomial)).collect(),
            ))
        }
    }
}
