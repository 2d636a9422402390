//! File formats, random instances and the end-to-end verification runs.

mod parse;
mod random;
mod verify;

use std::sync::Arc;

pub use parse::{
    parse_document, parse_ideal_file, parse_param_file, print_document, print_ideal, print_param, Document,
    IdealFile, ParamFile, RawPoly,
};
pub use random::{random_form, random_ideal, random_parametrisation, random_power_map, trial_rng, RandomIdealSpec};
pub use verify::{
    g_row, power_graph_ideal, run_gtable, run_main_trials, run_poweli_trials, run_regbound_trials, verify_main,
    verify_regbound, verify_regflat, GRow, MainOptions,
};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::groebner::common_degree;
use crate::poly::Polynomial;
use crate::ring::PolyRing;

/// `n` forms of degree `d` in `K[y_1..y_m]`, the data of a map
/// `K[x_1..x_n] -> K[y_1..y_m]`.
#[derive(Clone, Debug)]
pub struct Parametrisation<F: Field> {
    n: usize,
    m: usize,
    d: u32,
    forms: Vec<Polynomial<F>>,
}

impl<F: Field> Parametrisation<F> {
    pub fn new(n: usize, m: usize, d: u32, forms: Vec<Polynomial<F>>) -> Result<Self> {
        if forms.len() != n {
            return Err(Error::InvalidInput(format!("expected {n} forms, found {}", forms.len())));
        }
        let ring_vars = forms.first().map(|f| f.nvars()).unwrap_or(m);
        if ring_vars != m {
            return Err(Error::DimensionMismatch {
                expected: m,
                found: ring_vars,
            });
        }
        let degree = common_degree(&forms)?;
        if degree != d {
            return Err(Error::NotHomogeneous(format!("forms have degree {degree}, expected {d}")));
        }
        Ok(Parametrisation { n, m, d, forms })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn forms(&self) -> &[Polynomial<F>] {
        &self.forms
    }

    pub fn ring(&self) -> &Arc<PolyRing<F>> {
        self.forms[0].ring()
    }
}
