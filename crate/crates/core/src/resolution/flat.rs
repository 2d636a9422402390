use num_integer::Integer;
use serde_json::json;

use super::{general_betti, monomial_betti, BettiTable};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::groebner::IdealPresentation;
use crate::monomial_tools::{MonomialIdeal, Side};
use crate::order::TermOrder;
use crate::power_map::PowerMap;
use crate::report::{InstanceBuilder, VerificationReport};

/// The ideal as a monomial ideal, if every generator is a single term.
fn as_monomial_ideal<F: Field>(ideal: &IdealPresentation<F>) -> Option<MonomialIdeal> {
    if ideal.generators().iter().all(|g| g.len() == 1) {
        Some(MonomialIdeal::new(
            ideal.ring().nvars(),
            ideal.generators().iter().map(|g| g.leading_monomial().unwrap().clone()),
        ))
    } else {
        None
    }
}

/// Quotient-side Betti table of `R/I`. Monomial ideals use the multigraded
/// complex; others the degreewise complex over the initial ideal for `order`.
pub fn betti_table<F: Field>(
    ideal: &IdealPresentation<F>,
    order: TermOrder,
    max_degree: Option<u32>,
) -> Result<BettiTable> {
    ideal.require_homogeneous()?;
    match as_monomial_ideal(ideal) {
        Some(m) => {
            let t = monomial_betti(ideal.ring().field(), &m);
            match max_degree {
                Some(cap) if t.certified_through() > cap => Err(Error::CutoffExceeded { cutoff: cap }),
                _ => Ok(t),
            }
        }
        None => general_betti(ideal, order, max_degree),
    }
}

/// [`betti_table`] converted to the ideal side.
pub fn ideal_betti_table<F: Field>(
    ideal: &IdealPresentation<F>,
    order: TermOrder,
    max_degree: Option<u32>,
) -> Result<BettiTable> {
    Ok(betti_table(ideal, order, max_degree)?.to_side(Side::Ideal))
}

/// `reg(I)` on the ideal side; the zero and unit ideals are rejected.
pub fn regularity<F: Field>(ideal: &IdealPresentation<F>, order: TermOrder) -> Result<u32> {
    if ideal.is_zero() {
        return Err(Error::TrivialIdeal);
    }
    let reg = betti_table(ideal, order, None)?.ideal_regularity()?;
    u32::try_from(reg).map_err(|_| Error::Internal(format!("negative regularity {reg}")))
}

/// `num / den` in lowest terms, e.g. `7/2` or `3`.
pub fn fraction(num: i64, den: i64) -> String {
    let g = num.gcd(&den).max(1);
    let (n, d) = (num / g, den / g);
    let (n, d) = if d < 0 { (-n, -d) } else { (n, d) };
    if d == 1 {
        n.to_string()
    } else {
        format!("{n}/{d}")
    }
}

/// Tables and invariants of `I` and `I' = α(I)R` for a uniform power map.
#[derive(Clone, Debug)]
pub struct FlatComparison {
    pub d: u32,
    pub table: BettiTable,
    pub image_table: BettiTable,
    pub reg: i64,
    pub image_reg: i64,
    pub t: Vec<u32>,
    pub image_t: Vec<u32>,
    pub p: usize,
}

impl FlatComparison {
    pub fn compute<F: Field>(ideal: &IdealPresentation<F>, d: u32, order: TermOrder) -> Result<Self> {
        ideal.require_homogeneous()?;
        if ideal.is_zero() {
            return Err(Error::TrivialIdeal);
        }
        let phi = PowerMap::uniform(ideal.ring().nvars(), d)?;
        let image = ideal.image(&phi)?;
        let table = ideal_betti_table(ideal, order, None)?;
        let image_table = ideal_betti_table(&image, order, None)?;
        let reg = table.ideal_regularity()?;
        let image_reg = image_table.ideal_regularity()?;
        let (t, p) = table.t_invariants()?;
        let (image_t, _) = image_table.t_invariants()?;
        Ok(FlatComparison {
            d,
            table,
            image_table,
            reg,
            image_reg,
            t,
            image_t,
            p,
        })
    }

    /// `reg(I')/d - reg(I)` as a reduced fraction.
    pub fn gap(&self) -> String {
        fraction(self.image_reg - self.d as i64 * self.reg, self.d as i64)
    }

    /// The lower bound `reg(I) + p(d-1)/d` for `reg(I')/d`.
    pub fn lower_bound(&self) -> String {
        let d = self.d as i64;
        fraction(self.reg * d + self.p as i64 * (d - 1), d)
    }
}

/// Verifies the Betti relation `β_{i,jd}(I') = β_{i,j}(I)`, vanishing of
/// `β_{i,j}(I')` for `d ∤ j`, `t_i(I') = d t_i(I)`,
/// `reg(I')/d >= reg(I) + p(d-1)/d` and `reg(I) <= reg(I')/d`, where
/// `I' = α(I)R` with `α(x_i) = x_i^d`.
pub fn check_flat_betti<F: Field>(ideal: &IdealPresentation<F>, d: u32, order: TermOrder) -> Result<VerificationReport> {
    ideal.require_homogeneous()?;
    let ring = ideal.ring();
    let mut report = VerificationReport::new("regflat", &ring.field().name(), None);
    let description = format!(
        "regflat|{}|{}|d={d}",
        ring.names().join(" "),
        ideal
            .generators()
            .iter()
            .map(|g| g.to_string())
            .collect::<Vec<_>>()
            .join(", ")
    );
    let mut inst = InstanceBuilder::new(&description);
    inst.value("d", d);
    if ideal.is_zero() {
        inst.value("note", "zero ideal: both sides vanish");
        report.push(inst.finish());
        return Ok(report);
    }
    let cmp = FlatComparison::compute(ideal, d, order)?;
    let dd = d as i64;
    inst.value("reg(I)", cmp.reg);
    inst.value("reg(I')", cmp.image_reg);
    inst.value("p", cmp.p);
    inst.value("t(I)", cmp.t.clone());
    inst.value("t(I')", cmp.image_t.clone());
    inst.value("reg(I')/d", fraction(cmp.image_reg, dd));
    inst.value("reg(I')/d - reg(I)", cmp.gap());
    inst.value("betti(I)", cmp.table.to_json());
    inst.value("betti(I')", cmp.image_table.to_json());
    inst.bound("reg(I) + p(d-1)/d", cmp.lower_bound());
    let lhs = cmp.image_reg;
    let rhs = cmp.reg * dd + cmp.p as i64 * (dd - 1);
    inst.value("lower bound attained", json!(lhs == rhs));

    let expected = cmp.table.scale_degrees(d);
    let mismatch = expected
        .entries()
        .find(|&((i, j), b)| cmp.image_table.get(i, j) != b)
        .map(|((i, j), b)| format!("beta_{{{i},{j}}}(I') = {} but beta_{{{i},{}}}(I) = {b}", cmp.image_table.get(i, j), j / d));
    inst.check("beta_{i,jd}(I') = beta_{i,j}(I)", mismatch.is_none(), || mismatch.clone().unwrap());
    let stray = cmp
        .image_table
        .entries()
        .find(|&((i, j), b)| j % d != 0 || expected.get(i, j) != b)
        .map(|((i, j), b)| format!("beta_{{{i},{j}}}(I') = {b} is not matched in I"));
    inst.check("beta_{i,j}(I') = 0 unless d | j", stray.is_none(), || stray.clone().unwrap());
    let scaled_t: Vec<u32> = cmp.t.iter().map(|t| t * d).collect();
    inst.check("t_i(I') = d t_i(I)", scaled_t == cmp.image_t, || {
        format!("t(I') = {:?}, d t(I) = {:?}", cmp.image_t, scaled_t)
    });
    inst.check("reg(I')/d >= reg(I) + p(d-1)/d", lhs >= rhs, || {
        format!("reg(I')/d = {} < {}", fraction(cmp.image_reg, dd), cmp.lower_bound())
    });
    inst.check("reg(I) <= reg(I')/d", cmp.reg * dd <= cmp.image_reg, || {
        format!("reg(I) = {} > reg(I')/d = {}", cmp.reg, fraction(cmp.image_reg, dd))
    });
    let principal = ideal.groebner_basis(order).elements().len() == 1;
    inst.check("p = 0 exactly for principal ideals", (cmp.p == 0) == principal, || {
        format!("p = {} but principal = {principal}", cmp.p)
    });
    report.push(inst.finish());
    Ok(report)
}
