//! Hilbert functions, lex-segment ideals and the constant `G_{n,d,m}`.

mod hilbert;
mod ideal;
mod lex;

pub use hilbert::{
    binomial, ci_hilbert_function, ci_hilbert_series, hf_by_linear_algebra, hf_of_homogeneous, hilbert_function,
    ring_dim, HilbertData, HilbertSeries, Side,
};
pub use ideal::{sort_lex_desc, MonomialIdeal, MonomialIndex};
pub use lex::{
    compute_g, g_bound, is_strongly_stable, lex_ideal_from_series, lex_of_complete_intersection,
    lex_of_monomial_ideal, lex_rank, lex_segment_ideal, lex_unrank, macaulay_growth, macaulay_representation,
    segment_closure_check, shadow_size, stable_regularity, LexIdeal,
};
