//! Graded Betti tables, regularity and the flat power-map relation.

mod betti;
mod flat;
mod koszul;

pub use betti::BettiTable;
pub use flat::{betti_table, check_flat_betti, fraction, ideal_betti_table, regularity, FlatComparison};
pub use koszul::{
    general_betti, koszul_homology_rank, monomial_betti, monomial_koszul_homology_rank, standard_monomial_basis,
};
