use std::time::Instant;

use rand::Rng;
use rayon::prelude::*;

use super::random::{random_ideal, random_parametrisation, random_power_map, trial_rng, RandomIdealSpec};
use super::Parametrisation;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::groebner::{graph_ideal, kernel_of_map, verify_poweli, IdealPresentation};
use crate::monomial::Monomial;
use crate::monomial_tools::{
    ci_hilbert_series, g_bound, hf_by_linear_algebra, hilbert_function, lex_ideal_from_series,
    lex_of_complete_intersection, lex_of_monomial_ideal, stable_regularity, HilbertSeries, LexIdeal, MonomialIdeal,
    Side,
};
use crate::order::TermOrder;
use crate::poly::Polynomial;
use crate::power_map::PowerMap;
use crate::report::{Instance, InstanceBuilder, VerificationReport};
use crate::resolution::{betti_table, check_flat_betti, fraction, monomial_betti, BettiTable};
use crate::ring::PolyRing;

/// Largest degree through which `HF(J) = HF(in J)` is rechecked by ranks of
/// graded pieces.
const LINEAR_ALGEBRA_DEGREE_CAP: u32 = 10;

fn elapsed_ms(start: Instant) -> u64 {
    start.elapsed().as_millis() as u64
}

fn gens_text<F: Field>(gens: &[Polynomial<F>]) -> Vec<String> {
    gens.iter().map(|g| g.to_string()).collect()
}

fn describe<F: Field>(tag: &str, ideal: &IdealPresentation<F>, extra: &str) -> String {
    format!(
        "{tag}|{}|{}|{}|{extra}",
        ideal.ring().field().name(),
        ideal.ring().names().join(" "),
        gens_text(ideal.generators()).join(", ")
    )
}

/// Ideal-side regularity of a certified table, `None` for the zero ideal.
fn ideal_reg(table: &BettiTable) -> Result<Option<i64>> {
    match table.ideal_regularity() {
        Ok(r) => Ok(Some(r)),
        Err(Error::TrivialIdeal) if table.to_side(Side::Ideal).is_empty() => Ok(None),
        Err(e) => Err(e),
    }
}

/// Runs `f`, turning a cutoff overrun into an inconclusive note.
fn within_cutoff<T>(inst: &mut InstanceBuilder, what: &str, r: Result<T>) -> Result<Option<T>> {
    match r {
        Ok(v) => Ok(Some(v)),
        Err(Error::CutoffExceeded { cutoff }) => {
            inst.inconclusive(format!("{what} needs degrees beyond the cutoff {cutoff}"));
            Ok(None)
        }
        Err(e) => Err(e),
    }
}

/// The flat-map comparison for `I' = α(I)R`, `α(x_i) = x_i^d`.
pub fn verify_regflat<F: Field>(ideal: &IdealPresentation<F>, d: u32, order: TermOrder) -> Result<VerificationReport> {
    let start = Instant::now();
    let mut report = check_flat_betti(ideal, d, order)?;
    report.timing("regflat", elapsed_ms(start));
    Ok(report)
}

/// Checks `reg(I) <= reg(in I) <= reg(in J) <= reg(Lex J)` for
/// `I = J ∩ K[x_1..x_keep]` under lex, together with `HF(J) = HF(in J)`,
/// `Lex(J) = Lex(in J)`, `β_{ij}(J) <= β_{ij}(Lex J)` and the agreement of the
/// generator-degree and Koszul regularities of `Lex(J)`.
pub fn verify_regbound<F: Field>(ideal: &IdealPresentation<F>, keep: usize, cutoff: u32) -> Result<VerificationReport> {
    ideal.require_homogeneous()?;
    let ring = ideal.ring();
    let nvars = ring.nvars();
    if keep == 0 || keep > nvars {
        return Err(Error::InvalidInput(format!("cannot keep {keep} of {nvars} variables")));
    }
    let start = Instant::now();
    let field = ring.field();
    let mut report = VerificationReport::new("regbound", &field.name(), None);
    let mut inst = InstanceBuilder::new(&describe("regbound", ideal, &format!("keep {keep}")));
    inst.value("keep", keep);
    let order = TermOrder::Lex;
    let basis = ideal.groebner_basis(order);
    if basis.is_unit() {
        return Err(Error::TrivialIdeal);
    }
    if basis.is_zero() {
        inst.value("note", "J = 0, every link is vacuous");
        report.push(inst.finish());
        return Ok(report);
    }
    let in_j = basis.initial_ideal();
    let i_basis = basis.eliminate(keep)?;
    let in_i = i_basis.initial_ideal();
    inst.value("I", gens_text(i_basis.elements()));
    inst.value("in(J)", in_j.format(ring.names()));
    inst.check("in(I) = in(J) cap R", in_i == in_j.restrict(keep), || {
        format!(
            "in(I) = {} but in(J) cap R = {}",
            in_i.format(i_basis.ring().names()),
            in_j.restrict(keep).format(i_basis.ring().names())
        )
    });

    let in_j_table = monomial_betti(field, &in_j);
    let reg_in_j = in_j_table.ideal_regularity()?;
    inst.value("reg(in J)", reg_in_j);

    let hf_through = (reg_in_j as u32 + 1).min(LINEAR_ALGEBRA_DEGREE_CAP);
    let by_ranks = hf_by_linear_algebra(ideal, hf_through)?;
    let by_initial = hilbert_function(&in_j, hf_through)?;
    inst.value("HF(J) checked through", hf_through);
    inst.check("HF(J) = HF(in J)", by_ranks == by_initial, || {
        format!("ranks give {:?}, in(J) gives {:?}", by_ranks.dims(), by_initial.dims())
    });

    let Some(lex) = within_cutoff(&mut inst, "Lex(J)", lex_of_monomial_ideal(&in_j, cutoff))? else {
        report.push(inst.finish());
        return Ok(report);
    };
    let reg_lex = stable_regularity(&lex.ideal)? as i64;
    let lex_table = monomial_betti(field, &lex.ideal);
    let lex_koszul = lex_table.ideal_regularity()?;
    inst.value("Lex(J)", lex.ideal.format(ring.names()));
    inst.value("Lex(J) built through", lex.built_through);
    inst.value("reg(Lex J)", reg_lex);
    inst.check("max generator degree of Lex(J) = Koszul reg(Lex J)", reg_lex == lex_koszul, || {
        format!("generator degree {reg_lex}, Koszul {lex_koszul}")
    });
    let lex_hf = hilbert_function(&lex.ideal, lex.built_through)?;
    let in_hf = hilbert_function(&in_j, lex.built_through)?;
    inst.check("HF(Lex J) = HF(in J)", lex_hf == in_hf, || {
        format!("Lex gives {:?}, in(J) gives {:?}", lex_hf.dims(), in_hf.dims())
    });
    let lex_of_ranks = crate::monomial_tools::lex_segment_ideal(&by_ranks)?.0;
    let truncated = MonomialIdeal::new(
        nvars,
        lex.ideal.gens().iter().filter(|g| g.degree() <= hf_through).cloned(),
    );
    inst.check("Lex(J) = Lex(in J) in degrees where HF(J) was ranked", lex_of_ranks == truncated, || {
        format!(
            "segments of HF(J) give {}, Lex(in J) gives {}",
            lex_of_ranks.format(ring.names()),
            truncated.format(ring.names())
        )
    });

    let j_table = betti_table(ideal, TermOrder::DegRevLex, None)?.to_side(Side::Ideal);
    let reg_j = j_table.regularity()?;
    inst.value("reg(J)", reg_j);
    inst.value("betti(J)", j_table.to_json());
    inst.value("betti(Lex J)", lex_table.to_side(Side::Ideal).to_json());
    let lex_ideal_side = lex_table.to_side(Side::Ideal);
    let excess = j_table.entries().find(|&((i, j), b)| b > lex_ideal_side.get(i, j));
    inst.check("beta_ij(J) <= beta_ij(Lex J)", excess.is_none(), || {
        let ((i, j), b) = excess.unwrap();
        format!("beta_{{{i},{j}}}(J) = {b} > {} for Lex(J)", lex_ideal_side.get(i, j))
    });

    if i_basis.is_zero() {
        inst.value("note", "I = 0, the links through reg(I) and reg(in I) are vacuous");
    } else {
        let i_ideal = i_basis.to_ideal();
        let reg_i = betti_table(&i_ideal, TermOrder::DegRevLex, None)?.ideal_regularity()?;
        let reg_in_i = monomial_betti(field, &in_i).ideal_regularity()?;
        inst.value("reg(I)", reg_i);
        inst.value("reg(in I)", reg_in_i);
        inst.check("reg(I) <= reg(in I)", reg_i <= reg_in_i, || format!("{reg_i} > {reg_in_i}"));
        inst.check("reg(in I) <= reg(in J)", reg_in_i <= reg_in_j, || format!("{reg_in_i} > {reg_in_j}"));
        inst.check("reg(I) <= reg(Lex J)", reg_i <= reg_lex, || format!("{reg_i} > {reg_lex}"));
    }
    inst.check("reg(in J) <= reg(Lex J)", reg_in_j <= reg_lex, || format!("{reg_in_j} > {reg_lex}"));
    report.push(inst.finish());
    report.timing("regbound", elapsed_ms(start));
    Ok(report)
}

/// `J' = (x_i^d - f_i)` in `K[x_1..x_n, y_1..y_m]`.
pub fn power_graph_ideal<F: Field>(forms: &[Polynomial<F>], d: u32, order: TermOrder) -> Result<IdealPresentation<F>> {
    let graph = graph_ideal(forms, order)?;
    let n = forms.len();
    graph.image(&PowerMap::on_first(graph.ring().nvars(), n, d)?)
}

/// Degree cap for `Lex(J')`: the bound `d^{n 2^{m-1}}` with room for the
/// certification window.
fn lex_cap(n: usize, d: u32, m: usize, series: &HilbertSeries) -> u32 {
    g_bound(n, d, m)
        .map(|b| b.min(u32::MAX as u64 / 2) as u32)
        .unwrap_or(0)
        .max(n as u32 * (d - 1) + 1)
        .max(series.polynomial_from() + 64)
}

/// `Lex(J')` through the Hilbert series of an actual `J'`, after checking
/// that the series is the complete-intersection one.
fn lex_of_actual<F: Field>(
    inst: &mut InstanceBuilder,
    j_prime: &IdealPresentation<F>,
    n: usize,
    d: u32,
    m: usize,
) -> Result<LexIdeal> {
    let initial = j_prime.groebner_basis(TermOrder::DegRevLex).initial_ideal();
    let series = HilbertSeries::of_monomial_ideal(&initial);
    let expected = ci_hilbert_series(n, d, m);
    inst.check("HF(J') is the complete-intersection function", series == expected, || {
        format!(
            "numerator {:?}, expected {:?}",
            series.numerator(),
            expected.numerator()
        )
    });
    lex_ideal_from_series(&series, lex_cap(n, d, m, &series))
}

/// Options for [`verify_main`].
#[derive(Clone, Copy, Debug)]
pub struct MainOptions {
    /// Largest internal degree for Betti computations of `P` and `P'`.
    pub max_degree: Option<u32>,
    /// Whether to recompute `reg(Lex J')` through Koszul homology.
    pub koszul_cross_check: bool,
}

impl Default for MainOptions {
    fn default() -> Self {
        MainOptions {
            max_degree: None,
            koszul_cross_check: true,
        }
    }
}

/// Verifies `reg(P) <= reg(P')/d <= G_{n,d,m}/d <= d^{n 2^{m-1} - 1}` for
/// the kernel `P` of `x_i ↦ f_i`, with `P' = α(P)R` computed directly and
/// compared with `J' ∩ R`, and `G_{n,d,m}` computed both from the
/// complete-intersection series and from the actual `J'`.
pub fn verify_main<F: Field>(p: &Parametrisation<F>, opts: MainOptions) -> Result<VerificationReport> {
    let start = Instant::now();
    let (n, m, d) = (p.n(), p.m(), p.d());
    let field = p.ring().field().clone();
    let mut report = VerificationReport::new("main", &field.name(), None);
    let description = format!(
        "main|{}|n={n} m={m} d={d}|{}",
        field.name(),
        gens_text(p.forms()).join(", ")
    );
    let mut inst = InstanceBuilder::new(&description);
    inst.value("n", n).value("m", m).value("d", d);
    inst.value("f", gens_text(p.forms()));

    let kernel = kernel_of_map(p.forms(), TermOrder::Lex)?;
    let p_ideal = kernel.basis.to_ideal();
    inst.value("P", gens_text(p_ideal.generators()));
    inst.check("P vanishes on the parametrisation", kernel.vanishes_on_parametrisation()?, || {
        "a basis element of P does not vanish under x_i -> f_i".into()
    });
    inst.check("P is homogeneous", p_ideal.is_homogeneous(), || {
        format!("P = ({})", gens_text(p_ideal.generators()).join(", "))
    });

    let phi = PowerMap::on_first(kernel.graph.ring().nvars(), n, d)?;
    let elim = verify_poweli(&kernel.graph, &phi, n)?;
    let elim_witness = elim.instances.iter().find_map(|i| i.witness.clone());
    inst.check("P' = J' cap R and phi(G) is a Groebner basis", elim.passed(), || {
        elim_witness.clone().unwrap_or_default()
    });

    let j_prime = kernel.graph.image(&phi)?;
    let closed = lex_of_complete_intersection(n, d, m)?;
    let g = stable_regularity(&closed.ideal)? as i64;
    let actual = lex_of_actual(&mut inst, &j_prime, n, d, m)?;
    let g_actual = stable_regularity(&actual.ideal)? as i64;
    inst.value("G", g);
    inst.value("G via J'", g_actual);
    inst.check("G from the series = G from J'", g == g_actual && closed.ideal == actual.ideal, || {
        format!("series route {g}, actual route {g_actual}")
    });
    if opts.koszul_cross_check {
        let koszul = monomial_betti(&field, &actual.ideal).ideal_regularity()?;
        inst.value("Koszul reg(Lex J')", koszul);
        inst.check("max generator degree of Lex(J') = Koszul reg(Lex J')", koszul == g_actual, || {
            format!("generator degree {g_actual}, Koszul {koszul}")
        });
    }

    let bound = g_bound(n, d, m).ok_or_else(|| Error::InvalidInput("need m >= 1".into()))?;
    let dd = d as i64;
    inst.value("G/d", fraction(g, dd));
    inst.bound("d^(n2^(m-1)-1)", bound / d as u64);
    inst.check("G/d <= d^(n2^(m-1)-1)", (g as u64) <= bound, || {
        format!("G = {g} > d^(n2^(m-1)) = {bound}")
    });

    if p_ideal.is_zero() {
        inst.value("note", "P = 0, reg(P) and reg(P') impose nothing");
    } else {
        let p_prime = p_ideal.image(&PowerMap::uniform(n, d)?)?;
        let tables = within_cutoff(&mut inst, "reg(P)", betti_table(&p_ideal, TermOrder::DegRevLex, opts.max_degree))?
            .zip(within_cutoff(
                &mut inst,
                "reg(P')",
                betti_table(&p_prime, TermOrder::DegRevLex, opts.max_degree.map(|c| c.saturating_mul(d))),
            )?);
        if let Some((t, t_prime)) = tables {
            let (reg_p, reg_pp) = match (ideal_reg(&t)?, ideal_reg(&t_prime)?) {
                (Some(a), Some(b)) => (a, b),
                _ => return Err(Error::Internal("nonzero P with an empty Betti table".into())),
            };
            inst.value("reg(P)", reg_p);
            inst.value("reg(P')", reg_pp);
            inst.value("reg(P')/d", fraction(reg_pp, dd));
            inst.check("reg(P) <= reg(P')/d", reg_p * dd <= reg_pp, || {
                format!("reg(P) = {reg_p} > {}", fraction(reg_pp, dd))
            });
            inst.check("reg(P')/d <= G/d", reg_pp <= g, || format!("reg(P') = {reg_pp} > G = {g}"));
        }
    }
    report.push(inst.finish());
    report.timing("main", elapsed_ms(start));
    Ok(report)
}

/// One row of the `G_{n,d,m}` table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GRow {
    pub n: usize,
    pub d: u32,
    pub m: usize,
    pub g: u32,
    /// `d^{n 2^{m-1}}`, absent for `m = 0`.
    pub bound: Option<u64>,
    pub generators: usize,
    pub built_through: u32,
    pub koszul_reg: i64,
    /// `G` recomputed from `J'` for each random choice of `f`.
    pub actual: Vec<u32>,
}

/// `G_{n,d,m}` from the series, checked against Koszul homology and against
/// `trials` random parametrisations.
pub fn g_row<F: Field>(field: &F, n: usize, d: u32, m: usize, seed: u64, trials: u64) -> Result<(GRow, Instance)> {
    let mut inst = InstanceBuilder::new(&format!("gtable|{}|n={n} d={d} m={m}|seed {seed}|trials {trials}", field.name()));
    let closed = lex_of_complete_intersection(n, d, m)?;
    let g = stable_regularity(&closed.ideal)?;
    let koszul_reg = monomial_betti(field, &closed.ideal).ideal_regularity()?;
    let bound = g_bound(n, d, m);
    inst.value("G", g).value("generators", closed.ideal.gens().len()).value("built through", closed.built_through);
    inst.check("max generator degree of Lex(J') = Koszul reg(Lex J')", koszul_reg == g as i64, || {
        format!("generator degree {g}, Koszul {koszul_reg}")
    });
    match bound {
        Some(b) => {
            inst.bound("d^(n2^(m-1))", b);
            inst.check("G <= d^(n2^(m-1))", g as u64 <= b, || format!("G = {g} > {b}"));
        }
        None => {
            inst.value("note", "m = 0 lies outside the bound's hypothesis");
        }
    }
    let mut actual = Vec::new();
    for trial in 0..trials {
        let mut rng = trial_rng(seed, trial);
        let j_prime = if m == 0 {
            let ring = PolyRing::standard(field.clone(), "x", n)?;
            let gens = (0..n)
                .map(|i| Polynomial::monomial(&ring, TermOrder::Lex, field.one(), Monomial::var(n, i, d)))
                .collect();
            IdealPresentation::new(&ring, gens)?
        } else {
            let p = random_parametrisation(field, n, m, d, &mut rng)?;
            power_graph_ideal(p.forms(), d, TermOrder::Lex)?
        };
        let lex = lex_of_actual(&mut inst, &j_prime, n, d, m)?;
        let ga = stable_regularity(&lex.ideal)?;
        inst.check(&format!("trial {trial}: G via J' = G"), ga == g && lex.ideal == closed.ideal, || {
            format!("trial {trial} gives {ga}, series gives {g}")
        });
        actual.push(ga);
    }
    inst.value("G via J'", actual.clone());
    let row = GRow {
        n,
        d,
        m,
        g,
        bound,
        generators: closed.ideal.gens().len(),
        built_through: closed.built_through,
        koszul_reg,
        actual,
    };
    Ok((row, inst.finish()))
}

/// The `G` table over all `(n, d, m)` in the given ranges.
pub fn run_gtable<F: Field>(
    field: &F,
    ns: &[usize],
    ds: &[u32],
    ms: &[usize],
    seed: u64,
    trials: u64,
) -> Result<(Vec<GRow>, VerificationReport)> {
    let start = Instant::now();
    let cells: Vec<(usize, u32, usize)> = ns
        .iter()
        .flat_map(|&n| ds.iter().flat_map(move |&d| ms.iter().map(move |&m| (n, d, m))))
        .collect();
    let results = cells
        .par_iter()
        .map(|&(n, d, m)| g_row(field, n, d, m, seed, trials))
        .collect::<Result<Vec<_>>>()?;
    let mut report = VerificationReport::new("gtable", &field.name(), Some(seed));
    let mut rows = Vec::new();
    for (row, inst) in results {
        rows.push(row);
        report.push(inst);
    }
    report.timing("gtable", elapsed_ms(start));
    Ok((rows, report))
}

fn merge(check: &str, field: &str, seed: u64, parts: Vec<VerificationReport>, start: Instant) -> VerificationReport {
    let mut report = VerificationReport::new(check, field, Some(seed));
    for part in parts {
        report.absorb(part);
    }
    report.timings_ms.clear();
    report.timing(check, elapsed_ms(start));
    report
}

/// `trials` random ideals, each with a random number of kept variables.
pub fn run_regbound_trials<F: Field>(
    field: &F,
    spec: &RandomIdealSpec,
    trials: u64,
    seed: u64,
    cutoff: u32,
) -> Result<VerificationReport> {
    let start = Instant::now();
    let parts = (0..trials)
        .into_par_iter()
        .map(|t| {
            let mut rng = trial_rng(seed, t);
            let ideal = random_ideal(field, spec, TermOrder::Lex, &mut rng)?;
            let keep = rng.gen_range(1..spec.nvars.max(2));
            verify_regbound(&ideal, keep.min(spec.nvars), cutoff)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(merge("regbound", &field.name(), seed, parts, start))
}

/// `trials` random ideals and power maps with exponents up to `max_entry`.
pub fn run_poweli_trials<F: Field>(
    field: &F,
    spec: &RandomIdealSpec,
    max_entry: u32,
    trials: u64,
    seed: u64,
) -> Result<VerificationReport> {
    let start = Instant::now();
    let parts = (0..trials)
        .into_par_iter()
        .map(|t| {
            let mut rng = trial_rng(seed, t);
            let ideal = random_ideal(field, spec, TermOrder::Lex, &mut rng)?;
            let phi = random_power_map(spec.nvars, max_entry, &mut rng);
            let keep = rng.gen_range(1..spec.nvars.max(2)).min(spec.nvars);
            verify_poweli(&ideal, &phi, keep)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(merge("poweli", &field.name(), seed, parts, start))
}

/// `trials` random parametrisations of shape `(n, m, d)`.
pub fn run_main_trials<F: Field>(
    field: &F,
    n: usize,
    m: usize,
    d: u32,
    trials: u64,
    seed: u64,
    opts: MainOptions,
) -> Result<VerificationReport> {
    let start = Instant::now();
    let parts = (0..trials)
        .into_par_iter()
        .map(|t| {
            let p = random_parametrisation(field, n, m, d, &mut trial_rng(seed, t))?;
            verify_main(&p, opts)
        })
        .collect::<Result<Vec<_>>>()?;
    let mut report = merge("main", &field.name(), seed, parts, start);
    report.timing("main", elapsed_ms(start));
    Ok(report)
}
