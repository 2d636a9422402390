use std::ops::RangeInclusive;
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::Parametrisation;
use crate::error::Result;
use crate::field::Field;
use crate::groebner::IdealPresentation;
use crate::monomial::monomials_of_degree;
use crate::order::TermOrder;
use crate::power_map::PowerMap;
use crate::poly::Polynomial;
use crate::ring::PolyRing;

/// Generator for trial `trial` of a run seeded with `seed`. Trials use
/// separate streams, so they can run in any order.
pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

/// A form of the given degree with nonzero random coefficients on
/// `max_terms` distinct monomials (all of them if `None`).
pub fn random_form<F: Field, R: Rng + ?Sized>(
    ring: &Arc<PolyRing<F>>,
    order: TermOrder,
    degree: u32,
    max_terms: Option<usize>,
    rng: &mut R,
) -> Polynomial<F> {
    let mut monomials = monomials_of_degree(ring.nvars(), degree);
    let count = match max_terms {
        Some(k) => rng.gen_range(1..=k.min(monomials.len()).max(1)),
        None => monomials.len(),
    };
    monomials.shuffle(rng);
    let field = ring.field();
    let terms = monomials
        .into_iter()
        .take(count)
        .map(|m| (field.random_nonzero(rng), m))
        .collect();
    Polynomial::from_terms(ring, order, terms)
}

/// Shape of a random homogeneous ideal.
#[derive(Clone, Debug)]
pub struct RandomIdealSpec {
    pub nvars: usize,
    pub generators: RangeInclusive<usize>,
    pub degrees: RangeInclusive<u32>,
    /// Terms per generator, at least one.
    pub max_terms: usize,
}

/// A random homogeneous ideal in `K[x1..xn]`.
pub fn random_ideal<F: Field, R: Rng + ?Sized>(
    field: &F,
    spec: &RandomIdealSpec,
    order: TermOrder,
    rng: &mut R,
) -> Result<IdealPresentation<F>> {
    let ring = PolyRing::standard(field.clone(), "x", spec.nvars)?;
    let count = rng.gen_range(spec.generators.clone());
    let gens = (0..count)
        .map(|_| {
            let degree = rng.gen_range(spec.degrees.clone());
            random_form(&ring, order, degree, Some(spec.max_terms), rng)
        })
        .collect();
    IdealPresentation::new(&ring, gens)
}

/// `n` dense forms of degree `d` in `K[y1..ym]` with nonzero coefficients.
pub fn random_parametrisation<F: Field, R: Rng + ?Sized>(
    field: &F,
    n: usize,
    m: usize,
    d: u32,
    rng: &mut R,
) -> Result<Parametrisation<F>> {
    let ring = PolyRing::standard(field.clone(), "y", m)?;
    let forms = (0..n).map(|_| random_form(&ring, TermOrder::Lex, d, None, rng)).collect();
    Parametrisation::new(n, m, d, forms)
}

/// Exponents drawn from `1..=max_entry`.
pub fn random_power_map<R: Rng + ?Sized>(nvars: usize, max_entry: u32, rng: &mut R) -> PowerMap {
    PowerMap::new((0..nvars).map(|_| rng.gen_range(1..=max_entry)).collect()).expect("positive exponents")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};
    use crate::groebner::kernel_of_map;

    #[test]
    fn same_seed_same_parametrisation() {
        let f = PrimeField::default();
        let a = random_parametrisation(&f, 2, 2, 2, &mut trial_rng(0, 0)).unwrap();
        let b = random_parametrisation(&f, 2, 2, 2, &mut trial_rng(0, 0)).unwrap();
        assert_eq!(a.forms(), b.forms());
        let c = random_parametrisation(&f, 2, 2, 2, &mut trial_rng(0, 1)).unwrap();
        assert_ne!(a.forms(), c.forms());
    }

    #[test]
    fn forms_are_homogeneous_of_degree_d() {
        for seed in 0..20 {
            let p = random_parametrisation(&Rationals, 3, 2, 3, &mut trial_rng(seed, 0)).unwrap();
            for f in p.forms() {
                assert_eq!(f.is_homogeneous(), (true, Some(3)));
                assert_eq!(f.len(), 4);
            }
        }
    }

    #[test]
    fn kernels_of_random_conics() {
        for seed in 0..10 {
            let p = random_parametrisation(&PrimeField::default(), 3, 2, 2, &mut trial_rng(seed, 0)).unwrap();
            let k = kernel_of_map(p.forms(), TermOrder::Lex).unwrap();
            assert!(k.vanishes_on_parametrisation().unwrap());
            assert_eq!(k.basis.elements().len(), 1);
        }
    }

    #[test]
    fn random_ideals_are_homogeneous() {
        let spec = RandomIdealSpec {
            nvars: 3,
            generators: 1..=3,
            degrees: 1..=3,
            max_terms: 3,
        };
        for seed in 0..20 {
            let i = random_ideal(&PrimeField::default(), &spec, TermOrder::Lex, &mut trial_rng(seed, 0)).unwrap();
            assert!(i.is_homogeneous());
            assert!((1..=3).contains(&i.generators().len()));
        }
        let phi = random_power_map(3, 3, &mut trial_rng(1, 0));
        assert!(phi.degrees().iter().all(|d| (1..=3).contains(d)));
    }
}
