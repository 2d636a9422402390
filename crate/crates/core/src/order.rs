//! Term orders. Variable precedence is `x_ℓ > x_{ℓ-1} > … > x_1` for every
//! order, so the highest index is the largest variable and the kept subring
//! `K[x_1..x_n]` consists of the smallest variables.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};
use crate::monomial::Monomial;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TermOrder {
    /// Pure lexicographic order.
    Lex,
    /// Graded reverse lexicographic order; ties are broken at the smallest
    /// variable, where the larger exponent loses.
    DegRevLex,
    /// Block order: degrevlex on the variables with index `>= keep`, then
    /// degrevlex on the first `keep` variables.
    Elimination { keep: usize },
}

impl TermOrder {
    /// Compares two monomials of the same ring.
    pub fn compare(&self, a: &Monomial, b: &Monomial) -> Ordering {
        debug_assert_eq!(a.nvars(), b.nvars());
        match *self {
            TermOrder::Lex => lex(a.exps(), b.exps()),
            TermOrder::DegRevLex => degrevlex(a.exps(), b.exps()),
            TermOrder::Elimination { keep } => {
                let k = keep.min(a.nvars());
                degrevlex(&a.exps()[k..], &b.exps()[k..])
                    .then_with(|| degrevlex(&a.exps()[..k], &b.exps()[..k]))
            }
        }
    }

    /// Like [`TermOrder::compare`] but reports mismatched ring dimensions.
    pub fn try_compare(&self, a: &Monomial, b: &Monomial) -> Result<Ordering> {
        if a.nvars() != b.nvars() {
            return Err(Error::DimensionMismatch {
                expected: a.nvars(),
                found: b.nvars(),
            });
        }
        Ok(self.compare(a, b))
    }

    /// Whether every monomial involving a variable of index `>= keep` is
    /// larger than every monomial in the first `keep` variables.
    pub fn eliminates(&self, keep: usize, nvars: usize) -> bool {
        if keep >= nvars || keep == 0 {
            return true;
        }
        match *self {
            TermOrder::Lex => true,
            TermOrder::DegRevLex => false,
            TermOrder::Elimination { keep: k } => k == keep,
        }
    }

    /// The order induced on the subring of the first `keep` variables.
    pub fn restrict(&self, keep: usize) -> TermOrder {
        match *self {
            TermOrder::Lex => TermOrder::Lex,
            TermOrder::DegRevLex => TermOrder::DegRevLex,
            TermOrder::Elimination { keep: k } if k >= keep => TermOrder::DegRevLex,
            TermOrder::Elimination { keep: k } => TermOrder::Elimination { keep: k },
        }
    }
}

impl fmt::Display for TermOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TermOrder::Lex => write!(f, "lex"),
            TermOrder::DegRevLex => write!(f, "degrevlex"),
            TermOrder::Elimination { keep } => write!(f, "elim(keep {keep})"),
        }
    }
}

fn lex(a: &[u32], b: &[u32]) -> Ordering {
    for (x, y) in a.iter().rev().zip(b.iter().rev()) {
        match x.cmp(y) {
            Ordering::Equal => continue,
            o => return o,
        }
    }
    Ordering::Equal
}

fn degrevlex(a: &[u32], b: &[u32]) -> Ordering {
    let da: u32 = a.iter().sum();
    let db: u32 = b.iter().sum();
    da.cmp(&db).then_with(|| {
        for (x, y) in a.iter().zip(b) {
            match x.cmp(y) {
                Ordering::Equal => continue,
                o => return o.reverse(),
            }
        }
        Ordering::Equal
    })
}
