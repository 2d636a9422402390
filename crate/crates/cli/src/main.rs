use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use regcert::field::{Field, PrimeField, Rationals, DEFAULT_PRIME};
use regcert::groebner::{kernel_of_map, IdealPresentation};
use regcert::harness::{
    parse_ideal_file, parse_param_file, print_ideal, run_gtable, run_main_trials, run_poweli_trials,
    run_regbound_trials, verify_main, verify_regbound, verify_regflat, IdealFile, MainOptions, ParamFile,
    RandomIdealSpec,
};
use regcert::monomial_tools::{
    hilbert_function, lex_of_monomial_ideal, lex_segment_ideal, stable_regularity, HilbertSeries,
};
use regcert::order::TermOrder;
use regcert::power_map::PowerMap;
use regcert::report::{Status, VerificationReport};
use regcert::resolution::ideal_betti_table;
use regcert::{Error, Result};

const EXIT_USAGE: u8 = 64;

#[derive(Parser, Debug)]
#[command(name = "regcert", version, about = "Certify regularity bounds for parametrised varieties")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct Output {
    /// Print the machine-readable JSON report.
    #[arg(long)]
    json: bool,
    /// Write the output to FILE instead of stdout.
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
}

#[derive(Args, Debug, Clone)]
struct FieldArg {
    /// Field characteristic: 0 for the rationals or a prime below 2^31.
    /// Overrides the file; defaults to the file's value, then 32003.
    #[arg(long = "char", value_name = "P")]
    characteristic: Option<u64>,
}

#[derive(Args, Debug, Clone)]
struct Random {
    /// Seed of the instance generator.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Number of random instances.
    #[arg(long, default_value_t = 5)]
    trials: u64,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Kernel P of x_i -> f_i for a parametrisation file.
    Kernel {
        #[arg(long, value_name = "FILE")]
        param: PathBuf,
        /// lex or elim:n
        #[arg(long, value_parser = parse_order)]
        order: Option<TermOrder>,
        #[command(flatten)]
        field: FieldArg,
        #[command(flatten)]
        output: Output,
    },
    /// Betti table and regularity of a homogeneous ideal.
    Reg {
        #[arg(long, value_name = "FILE")]
        ideal: PathBuf,
        /// Order whose initial ideal bounds the computation.
        #[arg(long, value_parser = parse_order)]
        order: Option<TermOrder>,
        /// Largest internal degree to compute.
        #[arg(long, default_value_t = 32)]
        cutoff: u32,
        #[command(flatten)]
        field: FieldArg,
        #[command(flatten)]
        output: Output,
    },
    /// Lex-segment ideal with the Hilbert function of a homogeneous ideal.
    Lex {
        #[arg(long, value_name = "FILE")]
        ideal: PathBuf,
        #[arg(long, value_parser = parse_order)]
        order: Option<TermOrder>,
        /// Largest degree in which segments are built.
        #[arg(long, default_value_t = 32)]
        cutoff: u32,
        #[command(flatten)]
        field: FieldArg,
        #[command(flatten)]
        output: Output,
    },
    /// Table of G_{n,d,m} with its bound and random cross-checks.
    Gtable {
        /// Values of n, e.g. 1..3 or 2 or 1,3.
        #[arg(long, value_parser = parse_range)]
        n: Values,
        #[arg(long, value_parser = parse_range)]
        d: Values,
        #[arg(long, value_parser = parse_range)]
        m: Values,
        #[command(flatten)]
        random: Random,
        #[command(flatten)]
        field: FieldArg,
        #[command(flatten)]
        output: Output,
    },
    /// Verification runs.
    Verify {
        #[command(subcommand)]
        check: Check,
    },
}

#[derive(Subcommand, Debug)]
enum Check {
    /// Flat power map: Betti tables, t_i and regularity of I and I'.
    Regflat {
        #[arg(long, value_name = "FILE")]
        ideal: PathBuf,
        /// Uniform exponent of the power map.
        #[arg(long)]
        d: u32,
        #[arg(long, value_parser = parse_order)]
        order: Option<TermOrder>,
        #[command(flatten)]
        field: FieldArg,
        #[command(flatten)]
        output: Output,
    },
    /// Power substitution under lex: phi(G) and alpha(I)R = phi(J)S cap R.
    Poweli {
        /// Ideal file; random ideals are used when absent.
        #[arg(long, value_name = "FILE")]
        ideal: Option<PathBuf>,
        /// Exponents of phi, e.g. 2,1,3.
        #[arg(long, value_delimiter = ',')]
        dvec: Vec<u32>,
        /// Number of kept variables; defaults to k for `order elim k`.
        #[arg(long)]
        keep: Option<usize>,
        /// Variables of the random ideals.
        #[arg(long, default_value_t = 3)]
        nvars: usize,
        /// Largest generator degree of the random ideals.
        #[arg(long, default_value_t = 3)]
        max_degree: u32,
        /// Largest exponent of the random power maps.
        #[arg(long, default_value_t = 3)]
        max_entry: u32,
        #[command(flatten)]
        random: Random,
        #[command(flatten)]
        field: FieldArg,
        #[command(flatten)]
        output: Output,
    },
    /// reg(I) <= reg(in I) <= reg(in J) <= reg(Lex J) for I = J cap R.
    Regbound {
        #[arg(long, value_name = "FILE")]
        ideal: Option<PathBuf>,
        #[arg(long)]
        keep: Option<usize>,
        #[arg(long, default_value_t = 3)]
        nvars: usize,
        #[arg(long, default_value_t = 3)]
        max_degree: u32,
        /// Largest degree for Lex(J).
        #[arg(long, default_value_t = 32)]
        cutoff: u32,
        #[command(flatten)]
        random: Random,
        #[command(flatten)]
        field: FieldArg,
        #[command(flatten)]
        output: Output,
    },
    /// reg(P) <= reg(P')/d <= G/d <= d^(n2^(m-1)-1) for a parametrisation.
    Main {
        #[arg(long, value_name = "FILE", conflicts_with_all = ["n", "m", "d"])]
        param: Option<PathBuf>,
        #[arg(long, required_unless_present = "param")]
        n: Option<usize>,
        #[arg(long, required_unless_present = "param")]
        m: Option<usize>,
        #[arg(long, required_unless_present = "param")]
        d: Option<u32>,
        /// Largest internal degree for the Betti tables of P.
        #[arg(long, default_value_t = 32)]
        cutoff: u32,
        #[command(flatten)]
        random: Random,
        #[command(flatten)]
        field: FieldArg,
        #[command(flatten)]
        output: Output,
    },
}

fn parse_order(s: &str) -> std::result::Result<TermOrder, String> {
    match s {
        "lex" => Ok(TermOrder::Lex),
        "degrevlex" => Ok(TermOrder::DegRevLex),
        _ => {
            let k = s
                .strip_prefix("elim")
                .map(|r| r.trim_start_matches([':', ' ', '=']))
                .ok_or_else(|| format!("unknown order '{s}', expected lex, degrevlex or elim:K"))?;
            match k.parse::<usize>() {
                Ok(k) if k > 0 => Ok(TermOrder::Elimination { keep: k }),
                _ => Err(format!("'{s}' needs a positive number of kept variables, e.g. elim:2")),
            }
        }
    }
}

/// Parsed value list of a range flag.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Values(Vec<u64>);

/// `a..b` (inclusive), `a`, or a comma list of either.
fn parse_range(s: &str) -> std::result::Result<Values, String> {
    let mut out = Vec::new();
    for part in s.split(',') {
        let num = |t: &str| t.trim().parse::<u64>().map_err(|_| format!("'{t}' is not a nonnegative integer"));
        match part.split_once("..") {
            Some((a, b)) => {
                let (a, b) = (num(a)?, num(b.trim_start_matches('='))?);
                if a > b {
                    return Err(format!("empty range {part}"));
                }
                out.extend(a..=b);
            }
            None => out.push(num(part)?),
        }
    }
    Ok(Values(out))
}

/// What a command produced.
struct Outcome {
    status: Status,
    text: String,
    json: Value,
}

impl Outcome {
    fn report(report: VerificationReport) -> Self {
        Outcome {
            status: report.status,
            text: report.to_text(),
            json: serde_json::to_value(&report).expect("report serialises"),
        }
    }
}

/// Fails with a usage error unless every range entry lies in `lo..=hi`.
fn positive(values: &[u64], what: &str, lo: u64) -> Result<()> {
    match values.iter().find(|&&v| v < lo) {
        Some(v) => Err(Error::InvalidInput(format!("{what} = {v} is below {lo}"))),
        None => Ok(()),
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::InvalidInput(format!("cannot read {}: {e}", path.display())))
}

/// Runs `$body` with `$f` bound to the field of characteristic `$ch`.
macro_rules! with_field {
    ($ch:expr, $f:ident => $body:expr) => {{
        let ch: u64 = $ch;
        if ch == 0 {
            let $f = Rationals;
            $body
        } else {
            let $f = PrimeField::new(ch)?;
            $body
        }
    }};
}

fn characteristic(flag: &FieldArg, file: Option<u64>) -> u64 {
    flag.characteristic.or(file).unwrap_or(DEFAULT_PRIME as u64)
}

fn load_ideal(path: &Path) -> Result<IdealFile> {
    parse_ideal_file(&read(path)?)
}

fn load_param(path: &Path) -> Result<ParamFile> {
    parse_param_file(&read(path)?)
}

fn keep_for(file: &IdealFile, order: TermOrder, keep: Option<usize>) -> Result<usize> {
    match (keep, order) {
        (Some(k), _) => Ok(k),
        (None, TermOrder::Elimination { keep }) => Ok(keep),
        _ => Err(Error::InvalidInput(format!(
            "pass --keep or use `order elim k` in the file ({} variables)",
            file.names.len()
        ))),
    }
}

fn kernel_cmd<F: Field>(field: F, file: &ParamFile, order: Option<TermOrder>) -> Result<Outcome> {
    let p = file.instantiate(field.clone())?;
    let order = order.unwrap_or(TermOrder::Lex);
    let kernel = kernel_of_map(p.forms(), order)?;
    let ideal = kernel.basis.to_ideal();
    let vanishes = kernel.vanishes_on_parametrisation()?;
    let gens: Vec<String> = ideal.generators().iter().map(|g| g.to_string()).collect();
    let status = if vanishes { Status::Pass } else { Status::Fail };
    let mut text = print_ideal(&ideal, Some(order.restrict(p.n())));
    if !vanishes {
        text.push_str("# a generator does not vanish on the parametrisation\n");
    }
    Ok(Outcome {
        status,
        text,
        json: json!({
            "check": "kernel",
            "status": status,
            "field": field.name(),
            "n": p.n(), "m": p.m(), "d": p.d(),
            "generators": gens,
            "vanishes": vanishes,
        }),
    })
}

fn reg_cmd<F: Field>(ideal: &IdealPresentation<F>, order: TermOrder, cutoff: u32) -> Result<Outcome> {
    ideal.require_homogeneous()?;
    if ideal.is_zero() {
        return Err(Error::TrivialIdeal);
    }
    let field = ideal.ring().field().name();
    match ideal_betti_table(ideal, order, Some(cutoff)) {
        Ok(table) => {
            let reg = table.ideal_regularity()?;
            let (t, p) = table.t_invariants()?;
            let text = format!("reg(I) = {reg}\nt = {t:?}, p = {p}\nBetti table of I:\n{table}");
            Ok(Outcome {
                status: Status::Pass,
                text,
                json: json!({
                    "check": "reg", "status": Status::Pass, "field": field,
                    "reg": reg, "t": t, "p": p, "betti": table.to_json(),
                }),
            })
        }
        Err(Error::CutoffExceeded { cutoff }) => Ok(Outcome {
            status: Status::Inconclusive,
            text: format!("inconclusive: the Betti table needs degrees beyond {cutoff}\n"),
            json: json!({"check": "reg", "status": Status::Inconclusive, "field": field, "cutoff": cutoff}),
        }),
        Err(e) => Err(e),
    }
}

fn lex_cmd<F: Field>(ideal: &IdealPresentation<F>, order: TermOrder, cutoff: u32) -> Result<Outcome> {
    ideal.require_homogeneous()?;
    let names = ideal.ring().names();
    let initial = ideal.groebner_basis(order).initial_ideal();
    let field = ideal.ring().field().name();
    match lex_of_monomial_ideal(&initial, cutoff) {
        Ok(lex) => {
            let reg = stable_regularity(&lex.ideal).ok();
            let text = format!(
                "Lex(J) = {}\ncertified complete (segments built through degree {})\nreg(Lex J) = {}\n",
                lex.ideal.format(names),
                lex.built_through,
                reg.map_or("undefined".into(), |r| r.to_string())
            );
            Ok(Outcome {
                status: Status::Pass,
                text,
                json: json!({
                    "check": "lex", "status": Status::Pass, "field": field,
                    "generators": lex.ideal.format(names), "built_through": lex.built_through,
                    "complete": true, "reg": reg,
                }),
            })
        }
        Err(Error::CutoffExceeded { .. }) => {
            let hf = hilbert_function(&initial, cutoff)?;
            let (partial, _) = lex_segment_ideal(&hf)?;
            let series = HilbertSeries::of_monomial_ideal(&initial);
            let text = format!(
                "Lex(J) through degree {cutoff} = {}\ninconclusive: generators may appear beyond the cutoff (Hilbert series numerator {:?})\n",
                partial.format(names),
                series.numerator()
            );
            Ok(Outcome {
                status: Status::Inconclusive,
                text,
                json: json!({
                    "check": "lex", "status": Status::Inconclusive, "field": field,
                    "generators": partial.format(names), "built_through": cutoff, "complete": false,
                }),
            })
        }
        Err(e) => Err(e),
    }
}

fn gtable_cmd<F: Field>(field: F, n: &[u64], d: &[u64], m: &[u64], random: &Random) -> Result<Outcome> {
    positive(n, "n", 1)?;
    positive(d, "d", 1)?;
    let ns: Vec<usize> = n.iter().map(|&v| v as usize).collect();
    let ds: Vec<u32> = d
        .iter()
        .map(|&v| u32::try_from(v).map_err(|_| Error::InvalidInput(format!("d = {v} is too large"))))
        .collect::<Result<_>>()?;
    let ms: Vec<usize> = m.iter().map(|&v| v as usize).collect();
    let (rows, report) = run_gtable(&field, &ns, &ds, &ms, random.seed, random.trials)?;
    let mut text = String::from("  n  d  m        G  d^(n2^(m-1))  gens  G via random f\n");
    for r in &rows {
        text.push_str(&format!(
            "{:>3}{:>3}{:>3}{:>9}{:>14}{:>6}  {:?}\n",
            r.n,
            r.d,
            r.m,
            r.g,
            r.bound.map_or("-".into(), |b| b.to_string()),
            r.generators,
            r.actual
        ));
    }
    text.push_str(&format!("gtable: {} (field {}, seed {})\n", report.status, report.field, random.seed));
    if report.status != Status::Pass {
        text.push_str(&report.to_text());
    }
    let mut out = Outcome::report(report);
    out.text = text;
    Ok(out)
}

fn random_spec(nvars: usize, max_degree: u32) -> Result<RandomIdealSpec> {
    if nvars < 2 || max_degree == 0 {
        return Err(Error::InvalidInput("random ideals need --nvars >= 2 and --max-degree >= 1".into()));
    }
    Ok(RandomIdealSpec {
        nvars,
        generators: 1..=3,
        degrees: 1..=max_degree,
        max_terms: 3,
    })
}

fn run_check(check: Check) -> Result<(Outcome, Output)> {
    match check {
        Check::Regflat {
            ideal,
            d,
            order,
            field,
            output,
        } => {
            if d == 0 {
                return Err(Error::InvalidInput("--d must be positive".into()));
            }
            let file = load_ideal(&ideal)?;
            let order = order.or(file.order).unwrap_or(TermOrder::DegRevLex);
            let out = with_field!(characteristic(&field, file.characteristic), f => {
                Outcome::report(verify_regflat(&file.instantiate(f, order)?, d, order)?)
            });
            Ok((out, output))
        }
        Check::Poweli {
            ideal,
            dvec,
            keep,
            nvars,
            max_degree,
            max_entry,
            random,
            field,
            output,
        } => {
            let out = match ideal {
                Some(path) => {
                    let file = load_ideal(&path)?;
                    let order = file.order.unwrap_or(TermOrder::Lex);
                    let keep = keep_for(&file, order, keep)?;
                    let phi = PowerMap::new(dvec)?;
                    with_field!(characteristic(&field, file.characteristic), f => {
                        Outcome::report(regcert::groebner::verify_poweli(&file.instantiate(f, TermOrder::Lex)?, &phi, keep)?)
                    })
                }
                None => {
                    if max_entry == 0 {
                        return Err(Error::InvalidInput("--max-entry must be positive".into()));
                    }
                    let spec = random_spec(nvars, max_degree)?;
                    with_field!(characteristic(&field, None), f => {
                        Outcome::report(run_poweli_trials(&f, &spec, max_entry, random.trials, random.seed)?)
                    })
                }
            };
            Ok((out, output))
        }
        Check::Regbound {
            ideal,
            keep,
            nvars,
            max_degree,
            cutoff,
            random,
            field,
            output,
        } => {
            let out = match ideal {
                Some(path) => {
                    let file = load_ideal(&path)?;
                    let order = file.order.unwrap_or(TermOrder::Lex);
                    let keep = keep_for(&file, order, keep)?;
                    with_field!(characteristic(&field, file.characteristic), f => {
                        Outcome::report(verify_regbound(&file.instantiate(f, TermOrder::Lex)?, keep, cutoff)?)
                    })
                }
                None => {
                    let spec = random_spec(nvars, max_degree)?;
                    with_field!(characteristic(&field, None), f => {
                        Outcome::report(run_regbound_trials(&f, &spec, random.trials, random.seed, cutoff)?)
                    })
                }
            };
            Ok((out, output))
        }
        Check::Main {
            param,
            n,
            m,
            d,
            cutoff,
            random,
            field,
            output,
        } => {
            let opts = MainOptions {
                max_degree: Some(cutoff),
                koszul_cross_check: true,
            };
            let out = match param {
                Some(path) => {
                    let file = load_param(&path)?;
                    with_field!(characteristic(&field, file.characteristic), f => {
                        Outcome::report(verify_main(&file.instantiate(f)?, opts)?)
                    })
                }
                None => {
                    let (n, m, d) = (n.unwrap(), m.unwrap(), d.unwrap());
                    if n == 0 || m == 0 || d == 0 {
                        return Err(Error::InvalidInput("--n, --m and --d must be positive".into()));
                    }
                    with_field!(characteristic(&field, None), f => {
                        Outcome::report(run_main_trials(&f, n, m, d, random.trials, random.seed, opts)?)
                    })
                }
            };
            Ok((out, output))
        }
    }
}

fn run(command: Command) -> Result<(Outcome, Output)> {
    match command {
        Command::Kernel {
            param,
            order,
            field,
            output,
        } => {
            let file = load_param(&param)?;
            let out = with_field!(characteristic(&field, file.characteristic), f => kernel_cmd(f, &file, order)?);
            Ok((out, output))
        }
        Command::Reg {
            ideal,
            order,
            cutoff,
            field,
            output,
        } => {
            let file = load_ideal(&ideal)?;
            let order = order.or(file.order).unwrap_or(TermOrder::DegRevLex);
            let out = with_field!(characteristic(&field, file.characteristic), f => {
                reg_cmd(&file.instantiate(f, order)?, order, cutoff)?
            });
            Ok((out, output))
        }
        Command::Lex {
            ideal,
            order,
            cutoff,
            field,
            output,
        } => {
            let file = load_ideal(&ideal)?;
            let order = order.or(file.order).unwrap_or(TermOrder::DegRevLex);
            let out = with_field!(characteristic(&field, file.characteristic), f => {
                lex_cmd(&file.instantiate(f, order)?, order, cutoff)?
            });
            Ok((out, output))
        }
        Command::Gtable {
            n,
            d,
            m,
            random,
            field,
            output,
        } => {
            let (n, d, m) = (n.0, d.0, m.0);
            let out = with_field!(characteristic(&field, None), f => gtable_cmd(f, &n, &d, &m, &random)?);
            Ok((out, output))
        }
        Command::Verify { check } => run_check(check),
    }
}

/// Errors caused by the input map to the usage exit code; a computation
/// stopped by its cutoff is inconclusive.
fn error_exit(e: &Error) -> u8 {
    match e {
        Error::CutoffExceeded { .. } | Error::Overflow => Status::Inconclusive.exit_code() as u8,
        Error::Internal(_) | Error::NotStronglyStable => Status::Fail.exit_code() as u8,
        _ => EXIT_USAGE,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli.command) {
        Ok((outcome, output)) => {
            let body = if output.json {
                format!("{}\n", serde_json::to_string_pretty(&outcome.json).expect("json serialises"))
            } else {
                outcome.text
            };
            match output.out {
                Some(path) => {
                    if let Err(e) = fs::write(&path, body) {
                        eprintln!("error: cannot write {}: {e}", path.display());
                        return ExitCode::from(EXIT_USAGE);
                    }
                }
                None => print!("{body}"),
            }
            ExitCode::from(outcome.status.exit_code() as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(error_exit(&e))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges() {
        assert_eq!(parse_range("1..3").unwrap().0, vec![1, 2, 3]);
        assert_eq!(parse_range("2").unwrap().0, vec![2]);
        assert_eq!(parse_range("1,3..4").unwrap().0, vec![1, 3, 4]);
        assert!(parse_range("3..1").is_err());
        assert!(parse_range("a").is_err());
    }

    #[test]
    fn orders() {
        assert_eq!(parse_order("lex").unwrap(), TermOrder::Lex);
        assert_eq!(parse_order("elim:2").unwrap(), TermOrder::Elimination { keep: 2 });
        assert_eq!(parse_order("elim3").unwrap(), TermOrder::Elimination { keep: 3 });
        assert!(parse_order("elim:0").is_err());
        assert!(parse_order("grlex").is_err());
    }

    #[test]
    fn cli_definition_is_consistent() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }
}
