use crate::error::{Error, Result};
use crate::field::Field;
use crate::poly::{Polynomial, Term};

/// Result of dividing `f` by a list of polynomials:
/// `f = Σ quotients[k]·divisors[k] + remainder`.
#[derive(Clone, Debug)]
pub struct Division<F: Field> {
    pub remainder: Polynomial<F>,
    pub quotients: Vec<Polynomial<F>>,
}

/// Multivariate division with remainder.
///
/// At every step the largest remaining term is reduced by the first divisor
/// (in list order) whose leading monomial divides it; irreducible terms move
/// to the remainder, so no remainder term is divisible by a leading monomial.
pub fn normal_form<F: Field>(f: &Polynomial<F>, divisors: &[Polynomial<F>]) -> Result<Division<F>> {
    check_divisors(f, divisors)?;
    let ring = f.ring();
    let order = f.order();
    let mut quotients: Vec<Vec<Term<F::Elem>>> = vec![Vec::new(); divisors.len()];
    let remainder = divide(f, divisors, |k, c, m| {
        quotients[k].push(Term {
            coeff: c.clone(),
            monomial: m.clone(),
        })
    });
    let quotients = quotients
        .into_iter()
        .map(|ts| Polynomial::from_sorted(ring, order, ts))
        .collect();
    Ok(Division {
        remainder,
        quotients,
    })
}

/// Remainder of [`normal_form`] without recording quotients.
pub fn reduce<F: Field>(f: &Polynomial<F>, divisors: &[Polynomial<F>]) -> Polynomial<F> {
    divide(f, divisors, |_, _, _| {})
}

pub(crate) fn check_divisors<F: Field>(f: &Polynomial<F>, divisors: &[Polynomial<F>]) -> Result<()> {
    for g in divisors {
        if g.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        if g.order() != f.order() {
            return Err(Error::InvalidInput(format!(
                "divisor order {} differs from dividend order {}",
                g.order(),
                f.order()
            )));
        }
        if g.nvars() != f.nvars() {
            return Err(Error::DimensionMismatch {
                expected: f.nvars(),
                found: g.nvars(),
            });
        }
    }
    Ok(())
}

fn divide<F: Field>(
    f: &Polynomial<F>,
    divisors: &[Polynomial<F>],
    mut on_step: impl FnMut(usize, &F::Elem, &crate::monomial::Monomial),
) -> Polynomial<F> {
    let ring = f.ring();
    let order = f.order();
    let field = f.field();
    let mut rem: Vec<Term<F::Elem>> = Vec::new();
    let mut p: Vec<Term<F::Elem>> = f.terms().to_vec();
    let mut pos = 0;
    while pos < p.len() {
        let lt = &p[pos];
        let hit = divisors.iter().enumerate().find_map(|(k, g)| {
            let lg = g.leading_term().unwrap();
            lt.monomial.div(&lg.monomial).map(|q| (k, q, lg))
        });
        match hit {
            Some((k, q, lg)) => {
                let c = field.div(&lt.coeff, &lg.coeff).unwrap();
                on_step(k, &c, &q);
                p.drain(..pos);
                pos = 0;
                let cur = Polynomial::from_sorted(ring, order, std::mem::take(&mut p));
                p = cur.add_scaled(&field.neg(&c), &q, &divisors[k]).into_terms();
            }
            None => {
                rem.push(lt.clone());
                pos += 1;
            }
        }
    }
    Polynomial::from_sorted(ring, order, rem)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rationals;
    use crate::order::TermOrder;
    use crate::poly::tests::poly;
    use crate::ring::PolyRing;

    #[test]
    fn divides_exactly() {
        let r = PolyRing::standard(Rationals, "x", 1).unwrap();
        let f = poly(&r, TermOrder::Lex, &[(1, &[2])]);
        let g = poly(&r, TermOrder::Lex, &[(1, &[1])]);
        let d = normal_form(&f, std::slice::from_ref(&g)).unwrap();
        assert!(d.remainder.is_zero());
        assert_eq!(d.quotients, vec![g]);
    }

    #[test]
    fn leaves_irreducible_terms() {
        let r = PolyRing::standard(Rationals, "x", 3).unwrap();
        let f = poly(&r, TermOrder::Lex, &[(1, &[0, 2, 0])]);
        let g = poly(&r, TermOrder::Lex, &[(1, &[1, 0, 1]), (-1, &[0, 2, 0])]);
        let d = normal_form(&f, &[g]).unwrap();
        assert_eq!(d.remainder, f);
        assert!(d.quotients[0].is_zero());
    }

    #[test]
    fn certificate_reconstructs_dividend() {
        let r = PolyRing::standard(Rationals, "x", 3).unwrap();
        let o = TermOrder::DegRevLex;
        let f = poly(&r, o, &[(3, &[2, 1, 1]), (1, &[0, 3, 0]), (-2, &[1, 0, 0])]);
        let gs = vec![
            poly(&r, o, &[(1, &[1, 1, 0]), (1, &[0, 0, 1])]),
            poly(&r, o, &[(2, &[0, 2, 0]), (-1, &[1, 0, 0])]),
        ];
        let d = normal_form(&f, &gs).unwrap();
        let mut acc = d.remainder.clone();
        for (q, g) in d.quotients.iter().zip(&gs) {
            acc = &acc + &(q * g);
        }
        assert_eq!(acc, f);
        for t in d.remainder.terms() {
            for g in &gs {
                assert!(!g.leading_monomial().unwrap().divides(&t.monomial));
            }
        }
    }

    #[test]
    fn rejects_zero_divisor() {
        let r = PolyRing::standard(Rationals, "x", 1).unwrap();
        let f = poly(&r, TermOrder::Lex, &[(1, &[2])]);
        let z = Polynomial::zero(&r, TermOrder::Lex);
        assert!(normal_form(&f, &[z]).is_err());
    }
}
