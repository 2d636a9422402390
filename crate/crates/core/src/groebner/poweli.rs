use super::{buchberger_witness, IdealPresentation};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::order::TermOrder;
use crate::power_map::PowerMap;
use crate::report::{InstanceBuilder, VerificationReport};

/// Checks the two power-substitution statements for `J ⊂ S` and
/// `φ(x_i) = x_i^{d_i}` under lex, with `R` the first `keep` variables:
///
/// * (i) `φ(G)` satisfies the Buchberger criterion, `G` the reduced lex basis of `J`;
/// * (ii) `α(J ∩ R)R = φ(J)S ∩ R`, with `α` the restriction of `φ` to `R`.
///
/// It also compares the reduced form of `φ(G)` with an independent
/// Buchberger run on `φ(J)`. Failures are recorded in the report.
pub fn verify_poweli<F: Field>(
    ideal: &IdealPresentation<F>,
    phi: &PowerMap,
    keep: usize,
) -> Result<VerificationReport> {
    let ring = ideal.ring();
    let nvars = ring.nvars();
    if phi.nvars() != nvars {
        return Err(Error::DimensionMismatch {
            expected: nvars,
            found: phi.nvars(),
        });
    }
    if keep == 0 || keep > nvars {
        return Err(Error::InvalidInput(format!("cannot keep {keep} of {nvars} variables")));
    }
    let order = TermOrder::Lex;
    let mut report = VerificationReport::new("poweli", &ring.field().name(), None);
    let description = format!(
        "poweli|{}|{}|{:?}|keep {keep}",
        ring.names().join(" "),
        ideal
            .generators()
            .iter()
            .map(|g| g.to_string())
            .collect::<Vec<_>>()
            .join(", "),
        phi.degrees()
    );
    let mut inst = InstanceBuilder::new(&description);
    inst.value("dvec", phi.degrees().to_vec());
    inst.value("keep", keep);

    let basis = ideal.groebner_basis(order);
    inst.value("basis_size", basis.elements().len());
    let image: Vec<_> = basis
        .elements()
        .iter()
        .map(|g| phi.apply(g))
        .collect::<Result<_>>()?;

    let witness = buchberger_witness(&image);
    inst.check("phi(G) satisfies the Buchberger criterion", witness.is_none(), || {
        let (i, j, r) = witness.clone().unwrap();
        format!("S(phi(g{i}), phi(g{j})) has nonzero remainder {r}")
    });

    let image_ideal = IdealPresentation::new(ring, image)?;
    let direct = ideal.image(phi)?.groebner_basis(order);
    let from_image = image_ideal.groebner_basis(order);
    inst.check("phi(G) reduces to the basis of phi(J)", from_image.elements() == direct.elements(), || {
        format!(
            "reduced phi(G) has {} elements, basis of phi(J) has {}",
            from_image.elements().len(),
            direct.elements().len()
        )
    });

    let contracted = basis.eliminate(keep)?;
    let alpha = phi.restrict(keep);
    let alpha_image = IdealPresentation::new(contracted.ring(), contracted.elements().to_vec())?.image(&alpha)?;
    let lhs = alpha_image.groebner_basis(contracted.order());
    let rhs = direct.eliminate(keep)?;
    inst.value("alpha(I) basis", render(lhs.elements()));
    inst.value("phi(J) cap R basis", render(rhs.elements()));
    inst.check("alpha(I)R equals phi(J)S cap R", lhs.elements() == rhs.elements(), || {
        format!(
            "alpha(I)R = ({}) but phi(J)S cap R = ({})",
            render(lhs.elements()),
            render(rhs.elements())
        )
    });

    report.push(inst.finish());
    Ok(report)
}

fn render<F: Field>(ps: &[crate::poly::Polynomial<F>]) -> String {
    ps.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(", ")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};
    use crate::poly::tests::poly;
    use crate::report::Status;
    use crate::ring::PolyRing;

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
    fn identity_map_passes() {
        let j = example_two(Rationals);
        let rep = verify_poweli(&j, &PowerMap::identity(3), 2).unwrap();
        assert_eq!(rep.status, Status::Pass, "{}", rep.to_text());
    }

    #[test]
    fn example_two_with_squares() {
        let j = example_two(PrimeField::default());
        let rep = verify_poweli(&j, &PowerMap::uniform(3, 2).unwrap(), 2).unwrap();
        assert_eq!(rep.status, Status::Pass, "{}", rep.to_text());
        let inst = &rep.instances[0];
        assert_eq!(inst.values["alpha(I) basis"], "x2^2*x1^4");
    }

    #[test]
    fn mixed_exponents_on_non_monomial_ideal() {
        let r = PolyRing::standard(Rationals, "x", 3).unwrap();
        let o = TermOrder::Lex;
        let j = IdealPresentation::new(
            &r,
            vec![
                poly(&r, o, &[(1, &[2, 0, 0]), (-1, &[0, 1, 1])]),
                poly(&r, o, &[(1, &[0, 0, 2]), (3, &[1, 1, 0]), (1, &[0, 2, 0])]),
            ],
        )
        .unwrap();
        let rep = verify_poweli(&j, &PowerMap::new(vec![2, 1, 3]).unwrap(), 1).unwrap();
        assert_eq!(rep.status, Status::Pass, "{}", rep.to_text());
    }

    #[test]
    fn rejects_wrong_dimension() {
        let j = example_two(Rationals);
        assert!(verify_poweli(&j, &PowerMap::identity(2), 1).is_err());
        assert!(verify_poweli(&j, &PowerMap::identity(3), 0).is_err());
    }
}
