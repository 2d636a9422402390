use std::sync::Arc;

use super::{GroebnerBasis, IdealPresentation};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::monomial::Monomial;
use crate::order::TermOrder;
use crate::poly::Polynomial;
use crate::ring::PolyRing;

/// The kernel of `x_i ↦ f_i` together with the elimination data it came from.
#[derive(Clone, Debug)]
pub struct Kernel<F: Field> {
    /// `J = (x_i − f_i)` in `S = K[x_1..x_n, y_1..y_m]`.
    pub graph: IdealPresentation<F>,
    /// Reduced basis of `J` under the elimination order.
    pub graph_basis: GroebnerBasis<F>,
    /// `P = J ∩ K[x_1..x_n]`.
    pub basis: GroebnerBasis<F>,
    /// The parametrising forms.
    pub forms: Vec<Polynomial<F>>,
}

impl<F: Field> Kernel<F> {
    /// Whether every basis element vanishes after substituting `x_i ↦ f_i`.
    pub fn vanishes_on_parametrisation(&self) -> Result<bool> {
        for g in self.basis.elements() {
            if !g.compose(&self.forms)?.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Checks that all forms are nonzero, homogeneous of one degree `d > 0`, and
/// share a ring. Returns `d`.
pub fn common_degree<F: Field>(forms: &[Polynomial<F>]) -> Result<u32> {
    let first = forms
        .first()
        .ok_or_else(|| Error::InvalidInput("a parametrisation needs at least one form".into()))?;
    let mut degree = None;
    for f in forms {
        if f.ring() != first.ring() {
            return Err(Error::RingMismatch);
        }
        match f.is_homogeneous() {
            (true, Some(d)) if d > 0 => match degree {
                None => degree = Some(d),
                Some(e) if e == d => {}
                Some(e) => {
                    return Err(Error::NotHomogeneous(format!(
                        "forms have different degrees {e} and {d}"
                    )))
                }
            },
            (true, None) => return Err(Error::ZeroPolynomial),
            (true, Some(_)) => {
                return Err(Error::InvalidInput(format!("{f} has degree 0")));
            }
            (false, _) => return Err(Error::NotHomogeneous(f.to_string())),
        }
    }
    Ok(degree.unwrap())
}

/// `J = (x_i − f_i)` in `K[x_1..x_n, y_1..y_m]`, with the `y` block as the
/// largest variables.
pub fn graph_ideal<F: Field>(forms: &[Polynomial<F>], order: TermOrder) -> Result<IdealPresentation<F>> {
    common_degree(forms)?;
    let source = forms[0].ring().clone();
    let n = forms.len();
    let m = source.nvars();
    let mut names: Vec<String> = (1..=n).map(|i| format!("x{i}")).collect();
    names.extend(source.names().iter().cloned());
    let ring: Arc<PolyRing<F>> = PolyRing::with_kept(source.field().clone(), names, n)?;
    let field = ring.field();
    let gens = forms
        .iter()
        .enumerate()
        .map(|(i, f)| {
            let mut terms: Vec<(F::Elem, Monomial)> = vec![(field.one(), Monomial::var(n + m, i, 1))];
            for t in f.terms() {
                let exps = std::iter::repeat_n(0, n).chain(t.monomial.exps().iter().copied());
                terms.push((field.neg(&t.coeff), Monomial::new(exps)));
            }
            Polynomial::from_terms(&ring, order, terms)
        })
        .collect();
    IdealPresentation::new(&ring, gens)
}

/// The kernel `P` of `K[x_1..x_n] → K[y_1..y_m]`, `x_i ↦ f_i`, computed as
/// `(x_i − f_i) ∩ K[x_1..x_n]`. `order` must be lex or the block order
/// keeping the `x` variables.
pub fn kernel_of_map<F: Field>(forms: &[Polynomial<F>], order: TermOrder) -> Result<Kernel<F>> {
    let graph = graph_ideal(forms, order)?;
    let n = forms.len();
    if !order.eliminates(n, graph.ring().nvars()) {
        return Err(Error::NotElimination {
            order: order.to_string(),
            keep: n,
        });
    }
    let graph_basis = graph.groebner_basis(order);
    let basis = graph_basis.eliminate(n)?;
    Ok(Kernel {
        graph,
        graph_basis,
        basis,
        forms: forms.to_vec(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};
    use crate::poly::tests::poly;

    fn conic_forms<F: Field>(field: F) -> Vec<Polynomial<F>> {
        let r = PolyRing::standard(field, "y", 2).unwrap();
        let o = TermOrder::Lex;
        vec![
            poly(&r, o, &[(1, &[2, 0])]),
            poly(&r, o, &[(1, &[1, 1])]),
            poly(&r, o, &[(1, &[0, 2])]),
        ]
    }

    #[test]
    fn conic_kernel() {
        let k = kernel_of_map(&conic_forms(Rationals), TermOrder::Lex).unwrap();
        let shown: Vec<String> = k.basis.elements().iter().map(|p| p.to_string()).collect();
        assert_eq!(shown, vec!["x3*x1 - x2^2"]);
        assert!(k.vanishes_on_parametrisation().unwrap());
        assert!(k
            .graph_basis
            .elements()
            .iter()
            .any(|g| g.to_string() == "x3*x1 - x2^2"));
    }

    #[test]
    fn block_order_agrees_with_lex() {
        let forms = conic_forms(PrimeField::default());
        let a = kernel_of_map(&forms, TermOrder::Lex).unwrap();
        let b = kernel_of_map(&forms, TermOrder::Elimination { keep: 3 }).unwrap();
        let ia = a.basis.to_ideal();
        let ib = b.basis.to_ideal();
        let ib = IdealPresentation::new(
            ia.ring(),
            ib.generators()
                .iter()
                .map(|g| g.change_ring(ia.ring(), TermOrder::Lex).unwrap())
                .collect(),
        )
        .unwrap();
        assert!(ia.equals(&ib, TermOrder::Lex).unwrap());
    }

    #[test]
    fn single_form_has_zero_kernel() {
        let r = PolyRing::standard(Rationals, "y", 1).unwrap();
        let f = vec![poly(&r, TermOrder::Lex, &[(1, &[3])])];
        let k = kernel_of_map(&f, TermOrder::Lex).unwrap();
        assert!(k.basis.is_zero());
    }

    #[test]
    fn rejects_bad_forms() {
        let r = PolyRing::standard(Rationals, "y", 2).unwrap();
        let o = TermOrder::Lex;
        let mixed = vec![poly(&r, o, &[(1, &[2, 0])]), poly(&r, o, &[(1, &[1, 0])])];
        assert!(kernel_of_map(&mixed, o).is_err());
        let nonhom = vec![poly(&r, o, &[(1, &[2, 0]), (1, &[1, 0])])];
        assert!(matches!(kernel_of_map(&nonhom, o), Err(Error::NotHomogeneous(_))));
        let forms = conic_forms(Rationals);
        assert!(kernel_of_map(&forms, TermOrder::DegRevLex).is_err());
    }
}
