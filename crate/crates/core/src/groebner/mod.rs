//! Division, Buchberger's algorithm, reduced bases, elimination and the
//! ideals obtained from power maps.

mod buchberger;
mod division;
mod kernel;
mod poweli;

use std::sync::Arc;

pub use buchberger::{buchberger, buchberger_witness, BuchbergerOptions};
pub use division::{normal_form, reduce, Division};
pub use kernel::{common_degree, graph_ideal, kernel_of_map, Kernel};
pub use poweli::verify_poweli;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::monomial_tools::MonomialIdeal;
use crate::order::TermOrder;
use crate::poly::Polynomial;
use crate::power_map::PowerMap;
use crate::ring::PolyRing;

/// An ideal given by generators.
#[derive(Clone, Debug)]
pub struct IdealPresentation<F: Field> {
    ring: Arc<PolyRing<F>>,
    generators: Vec<Polynomial<F>>,
}

impl<F: Field> IdealPresentation<F> {
    /// Zero generators are dropped.
    pub fn new(ring: &Arc<PolyRing<F>>, generators: Vec<Polynomial<F>>) -> Result<Self> {
        for g in &generators {
            if g.ring() != ring {
                return Err(Error::RingMismatch);
            }
        }
        Ok(IdealPresentation {
            ring: ring.clone(),
            generators: generators.into_iter().filter(|g| !g.is_zero()).collect(),
        })
    }

    pub fn ring(&self) -> &Arc<PolyRing<F>> {
        &self.ring
    }

    pub fn generators(&self) -> &[Polynomial<F>] {
        &self.generators
    }

    pub fn is_zero(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn is_homogeneous(&self) -> bool {
        self.generators.iter().all(|g| g.is_homogeneous().0)
    }

    /// Errors with the first non-homogeneous generator.
    pub fn require_homogeneous(&self) -> Result<()> {
        match self.generators.iter().find(|g| !g.is_homogeneous().0) {
            Some(g) => Err(Error::NotHomogeneous(g.to_string())),
            None => Ok(()),
        }
    }

    /// Reduced Gröbner basis under `order`.
    pub fn groebner_basis(&self, order: TermOrder) -> GroebnerBasis<F> {
        self.groebner_basis_with(order, BuchbergerOptions::default())
    }

    pub fn groebner_basis_with(&self, order: TermOrder, opts: BuchbergerOptions) -> GroebnerBasis<F> {
        if self.generators.is_empty() {
            return GroebnerBasis::from_parts(self.ring.clone(), order, Vec::new(), true);
        }
        buchberger(&self.generators, order, opts).reduce_basis()
    }

    /// The ideal generated by the images of the generators under `phi`.
    pub fn image(&self, phi: &PowerMap) -> Result<Self> {
        let generators = self
            .generators
            .iter()
            .map(|g| phi.apply(g))
            .collect::<Result<Vec<_>>>()?;
        Ok(IdealPresentation {
            ring: self.ring.clone(),
            generators,
        })
    }

    /// Decides equality through reduced Gröbner bases.
    pub fn equals(&self, other: &Self, order: TermOrder) -> Result<bool> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch);
        }
        let a = self.groebner_basis(order);
        let b = other.groebner_basis(order);
        Ok(a.elements() == b.elements())
    }
}

/// `I' = φ(I)`: the ideal generated by the images of the generators.
pub fn image_ideal<F: Field>(phi: &PowerMap, ideal: &IdealPresentation<F>) -> Result<IdealPresentation<F>> {
    ideal.image(phi)
}

/// True iff both presentations generate the same ideal.
pub fn ideal_equal<F: Field>(
    a: &IdealPresentation<F>,
    b: &IdealPresentation<F>,
    order: TermOrder,
) -> Result<bool> {
    a.equals(b, order)
}

/// A Gröbner basis with its order. When `reduced` is set the elements are
/// monic, inter-reduced and sorted ascending by leading monomial.
#[derive(Clone, Debug)]
pub struct GroebnerBasis<F: Field> {
    ring: Arc<PolyRing<F>>,
    order: TermOrder,
    elements: Vec<Polynomial<F>>,
    reduced: bool,
}

impl<F: Field> GroebnerBasis<F> {
    pub(crate) fn from_parts(
        ring: Arc<PolyRing<F>>,
        order: TermOrder,
        elements: Vec<Polynomial<F>>,
        reduced: bool,
    ) -> Self {
        GroebnerBasis {
            ring,
            order,
            elements,
            reduced,
        }
    }

    pub fn ring(&self) -> &Arc<PolyRing<F>> {
        &self.ring
    }

    pub fn order(&self) -> TermOrder {
        self.order
    }

    pub fn elements(&self) -> &[Polynomial<F>] {
        &self.elements
    }

    pub fn is_reduced(&self) -> bool {
        self.reduced
    }

    pub fn is_unit(&self) -> bool {
        self.elements.iter().any(|g| g.is_constant())
    }

    pub fn is_zero(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn to_ideal(&self) -> IdealPresentation<F> {
        IdealPresentation {
            ring: self.ring.clone(),
            generators: self.elements.clone(),
        }
    }

    /// Normal form of `f` modulo the basis.
    pub fn reduce(&self, f: &Polynomial<F>) -> Polynomial<F> {
        reduce(&f.with_order(self.order), &self.elements)
    }

    pub fn contains(&self, f: &Polynomial<F>) -> bool {
        self.reduce(f).is_zero()
    }

    /// `None` if every S-polynomial reduces to zero, else a witness pair.
    pub fn criterion_witness(&self) -> Option<(usize, usize, Polynomial<F>)> {
        buchberger_witness(&self.elements)
    }

    /// The reduced Gröbner basis of the same ideal.
    pub fn reduce_basis(&self) -> GroebnerBasis<F> {
        let order = self.order;
        let mut elems: Vec<Polynomial<F>> = self.elements.iter().map(|g| g.monic()).collect();
        elems.sort_by(|a, b| buchberger::cmp_leading(order, a, b).then_with(|| a.len().cmp(&b.len())));
        // minimal basis: drop elements whose leading monomial is a multiple of another's
        let mut minimal: Vec<Polynomial<F>> = Vec::new();
        for g in elems {
            let lm = g.leading_monomial().unwrap();
            if !minimal.iter().any(|h| h.leading_monomial().unwrap().divides(lm)) {
                minimal.push(g);
            }
        }
        let mut reduced = Vec::with_capacity(minimal.len());
        for k in 0..minimal.len() {
            let lead = minimal[k].leading_term().unwrap().clone();
            let others: Vec<Polynomial<F>> = minimal
                .iter()
                .enumerate()
                .filter(|(i, _)| *i != k)
                .map(|(_, g)| g.clone())
                .collect();
            let tail = Polynomial::from_sorted(&self.ring, order, minimal[k].terms()[1..].to_vec());
            let tail = reduce(&tail, &others);
            let head = Polynomial::monomial(&self.ring, order, lead.coeff, lead.monomial);
            reduced.push((&head + &tail).monic());
        }
        reduced.sort_by(|a, b| buchberger::cmp_leading(order, a, b));
        GroebnerBasis {
            ring: self.ring.clone(),
            order,
            elements: reduced,
            reduced: true,
        }
    }

    /// The ideal of leading monomials.
    pub fn initial_ideal(&self) -> MonomialIdeal {
        MonomialIdeal::new(
            self.ring.nvars(),
            self.elements.iter().map(|g| g.leading_monomial().unwrap().clone()),
        )
    }

    /// The elements lying in `K[x_1..x_keep]`, moved into that subring with
    /// the restricted order.
    pub fn eliminate(&self, keep: usize) -> Result<GroebnerBasis<F>> {
        let nvars = self.ring.nvars();
        if keep > nvars {
            return Err(Error::InvalidInput(format!("cannot keep {keep} of {nvars} variables")));
        }
        if keep == nvars {
            return Ok(self.clone());
        }
        if !self.order.eliminates(keep, nvars) {
            return Err(Error::NotElimination {
                order: self.order.to_string(),
                keep,
            });
        }
        if keep == 0 {
            return Err(Error::InvalidInput("must keep at least one variable".into()));
        }
        let sub = self.ring.subring(keep)?;
        let order = self.order.restrict(keep);
        let elements = self
            .elements
            .iter()
            .filter(|g| g.lies_in_first(keep))
            .map(|g| g.change_ring(&sub, order))
            .collect::<Result<Vec<_>>>()?;
        Ok(GroebnerBasis {
            ring: sub,
            order,
            elements,
            reduced: self.reduced,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};
    use crate::poly::tests::{mono, poly};
    use rand::seq::SliceRandom;
    use rand::SeedableRng;

    fn example_two<F: Field>(field: F) -> IdealPresentation<F> {
        let r = PolyRing::standard(field, "x", 3).unwrap();
        let o = TermOrder::Lex;
        IdealPresentation::new(
            &r,
            vec![
                poly(&r, o, &[(1, &[1, 1, 0]), (1, &[0, 1, 1])]),
                poly(&r, o, &[(1, &[1, 0, 1])]),
                poly(&r, o, &[(1, &[0, 0, 2])]),
            ],
        )
        .unwrap()
    }

    #[test]
    fn coprime_monomials_are_already_a_basis() {
        let r = PolyRing::standard(Rationals, "x", 2).unwrap();
        let o = TermOrder::Lex;
        let i = IdealPresentation::new(
            &r,
            vec![poly(&r, o, &[(1, &[2, 0])]), poly(&r, o, &[(1, &[0, 2])])],
        )
        .unwrap();
        let g = i.groebner_basis(o);
        assert_eq!(g.elements().len(), 2);
        assert_eq!(g.initial_ideal().gens(), &[mono(&[0, 2]), mono(&[2, 0])]);
    }

    #[test]
    fn example_two_eliminates_to_x1_squared_x2() {
        let j = example_two(Rationals);
        let g = j.groebner_basis(TermOrder::Lex);
        assert!(g.criterion_witness().is_none());
        let i = g.eliminate(2).unwrap();
        assert_eq!(i.elements().len(), 1);
        assert_eq!(i.elements()[0].to_string(), "x2*x1^2");
        // in(J) ∩ R = in(J ∩ R)
        assert_eq!(g.initial_ideal().restrict(2), i.initial_ideal());
    }

    #[test]
    fn normal_form_in_example_two() {
        let j = example_two(PrimeField::default());
        let g = j.groebner_basis(TermOrder::Lex);
        let r = j.ring().clone();
        let f = poly(&r, TermOrder::Lex, &[(1, &[1, 1, 1])]);
        assert!(g.contains(&f));
    }

    #[test]
    fn eliminate_example_one_and_identity() {
        let r = PolyRing::standard(Rationals, "x", 2).unwrap();
        let o = TermOrder::Lex;
        let j = IdealPresentation::new(
            &r,
            vec![poly(&r, o, &[(1, &[2, 0])]), poly(&r, o, &[(1, &[0, 2])])],
        )
        .unwrap();
        let g = j.groebner_basis(o);
        let i = g.eliminate(1).unwrap();
        assert_eq!(i.elements().len(), 1);
        assert_eq!(i.elements()[0].to_string(), "x1^2");
        assert_eq!(g.eliminate(2).unwrap().elements(), g.elements());
    }

    #[test]
    fn eliminate_requires_elimination_order() {
        let j = example_two(Rationals);
        let g = j.groebner_basis(TermOrder::DegRevLex);
        assert!(matches!(g.eliminate(2), Err(Error::NotElimination { .. })));
        let b = j.groebner_basis(TermOrder::Elimination { keep: 2 });
        let i = b.eliminate(2).unwrap();
        assert_eq!(i.elements()[0].to_string(), "x2*x1^2");
    }

    #[test]
    fn inter_reduction() {
        let r = PolyRing::standard(Rationals, "x", 2).unwrap();
        let o = TermOrder::Lex;
        let g = GroebnerBasis::from_parts(
            r.clone(),
            o,
            vec![poly(&r, o, &[(1, &[1, 0])]), poly(&r, o, &[(1, &[2, 0]), (1, &[0, 1])])],
            false,
        );
        let red = g.reduce_basis();
        let shown: Vec<String> = red.elements().iter().map(|p| p.to_string()).collect();
        assert_eq!(shown, vec!["x1", "x2"]);
        assert_eq!(red.reduce_basis().elements(), red.elements());
    }

    #[test]
    fn reduced_basis_ignores_generator_order() {
        let r = PolyRing::standard(PrimeField::default(), "x", 3).unwrap();
        let o = TermOrder::Lex;
        let gens = vec![
            poly(&r, o, &[(1, &[2, 1, 0]), (-3, &[0, 0, 3])]),
            poly(&r, o, &[(1, &[1, 1, 1]), (2, &[0, 3, 0]), (1, &[3, 0, 0])]),
            poly(&r, o, &[(1, &[0, 2, 0]), (-1, &[1, 0, 1])]),
        ];
        let base = IdealPresentation::new(&r, gens.clone()).unwrap().groebner_basis(o);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        for _ in 0..10 {
            let mut shuffled = gens.clone();
            shuffled.shuffle(&mut rng);
            let g = IdealPresentation::new(&r, shuffled).unwrap().groebner_basis(o);
            assert_eq!(g.elements(), base.elements());
        }
        let raw = IdealPresentation::new(&r, gens)
            .unwrap()
            .groebner_basis_with(o, BuchbergerOptions { criteria: false });
        assert_eq!(raw.elements(), base.elements());
    }

    #[test]
    fn unit_ideal_gives_one() {
        let r = PolyRing::standard(Rationals, "x", 2).unwrap();
        let o = TermOrder::DegRevLex;
        let i = IdealPresentation::new(
            &r,
            vec![poly(&r, o, &[(1, &[1, 0]), (-1, &[0, 0])]), poly(&r, o, &[(1, &[1, 0])])],
        )
        .unwrap();
        let g = i.groebner_basis(o);
        assert!(g.is_unit());
        assert_eq!(g.elements().len(), 1);
    }

    #[test]
    fn ideal_equality() {
        let r = PolyRing::standard(Rationals, "x", 1).unwrap();
        let o = TermOrder::Lex;
        let a = IdealPresentation::new(&r, vec![poly(&r, o, &[(1, &[1])])]).unwrap();
        let b = IdealPresentation::new(&r, vec![poly(&r, o, &[(2, &[1])])]).unwrap();
        let c = IdealPresentation::new(&r, vec![poly(&r, o, &[(1, &[2])])]).unwrap();
        assert!(ideal_equal(&a, &b, o).unwrap());
        assert!(!ideal_equal(&c, &a, o).unwrap());
    }

    #[test]
    fn image_ideal_of_monomials() {
        let r = PolyRing::standard(Rationals, "x", 2).unwrap();
        let o = TermOrder::Lex;
        let i = IdealPresentation::new(
            &r,
            vec![poly(&r, o, &[(1, &[2, 0])]), poly(&r, o, &[(1, &[0, 2])])],
        )
        .unwrap();
        let img = image_ideal(&PowerMap::uniform(2, 3).unwrap(), &i).unwrap();
        let shown: Vec<String> = img.generators().iter().map(|p| p.to_string()).collect();
        assert_eq!(shown, vec!["x1^6", "x2^6"]);
        assert!(img.is_homogeneous());
        let same = image_ideal(&PowerMap::identity(2), &i).unwrap();
        assert_eq!(same.generators(), i.generators());
    }
}
