use std::collections::BTreeMap;
use std::fmt;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::monomial_tools::{binomial, HilbertSeries, Side};

/// Graded Betti numbers `β_{i,j}` of `R/I` or of `I`, all entries with
/// `j <= certified_through` known.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BettiTable {
    nvars: usize,
    side: Side,
    entries: BTreeMap<(usize, u32), u64>,
    certified_through: u32,
}

impl BettiTable {
    pub fn new(
        nvars: usize,
        side: Side,
        entries: impl IntoIterator<Item = ((usize, u32), u64)>,
        certified_through: u32,
    ) -> Self {
        BettiTable {
            nvars,
            side,
            entries: entries.into_iter().filter(|(_, b)| *b > 0).collect(),
            certified_through,
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn side(&self) -> Side {
        self.side
    }

    pub fn certified_through(&self) -> u32 {
        self.certified_through
    }

    pub fn get(&self, i: usize, j: u32) -> u64 {
        self.entries.get(&(i, j)).copied().unwrap_or(0)
    }

    /// Nonzero entries as `((i, j), β)`, ordered by `i` then `j`.
    pub fn entries(&self) -> impl Iterator<Item = ((usize, u32), u64)> + '_ {
        self.entries.iter().map(|(&k, &v)| (k, v))
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Converts with `β_{i,j}(I) = β_{i+1,j}(R/I)`.
    pub fn to_side(&self, side: Side) -> BettiTable {
        if side == self.side {
            return self.clone();
        }
        let entries: BTreeMap<(usize, u32), u64> = match side {
            Side::Ideal => {
                if self.entries.is_empty() {
                    // R/I = 0, so I = R
                    [((0, 0), 1)].into_iter().collect()
                } else {
                    self.entries
                        .iter()
                        .filter(|((i, _), _)| *i > 0)
                        .map(|(&(i, j), &b)| ((i - 1, j), b))
                        .collect()
                }
            }
            Side::Quotient => {
                if self.entries.contains_key(&(0, 0)) {
                    BTreeMap::new()
                } else {
                    std::iter::once(((0, 0), 1))
                        .chain(self.entries.iter().map(|(&(i, j), &b)| ((i + 1, j), b)))
                        .collect()
                }
            }
        };
        BettiTable {
            nvars: self.nvars,
            side,
            entries,
            certified_through: self.certified_through,
        }
    }

    /// `max { j - i : β_{i,j} != 0 }` on this table's side.
    pub fn regularity(&self) -> Result<i64> {
        self.entries
            .keys()
            .map(|&(i, j)| j as i64 - i as i64)
            .max()
            .ok_or(Error::TrivialIdeal)
    }

    /// Regularity of the ideal, whichever side is stored.
    pub fn ideal_regularity(&self) -> Result<i64> {
        let ideal = self.to_side(Side::Ideal);
        if ideal.entries.contains_key(&(0, 0)) {
            return Err(Error::TrivialIdeal);
        }
        ideal.regularity()
    }

    /// Largest homological index with a nonzero entry.
    pub fn pdim(&self) -> Option<usize> {
        self.entries.keys().map(|&(i, _)| i).max()
    }

    /// `t_i = max { j : β_{i,j}(I) != 0 }` for `i = 0..=pdim(I)`, and the
    /// largest `p` with `reg(I) = t_p - p`.
    pub fn t_invariants(&self) -> Result<(Vec<u32>, usize)> {
        let ideal = self.to_side(Side::Ideal);
        let pdim = ideal.pdim().ok_or(Error::TrivialIdeal)?;
        let mut t = vec![None; pdim + 1];
        for &(i, j) in ideal.entries.keys() {
            t[i] = Some(t[i].map_or(j, |v: u32| v.max(j)));
        }
        let t: Vec<u32> = t
            .into_iter()
            .enumerate()
            .map(|(i, v)| v.ok_or_else(|| Error::Internal(format!("no Betti number in homological degree {i}"))))
            .collect::<Result<_>>()?;
        let reg = ideal.regularity()?;
        let p = (0..=pdim).rev().find(|&i| t[i] as i64 - i as i64 == reg).unwrap();
        Ok((t, p))
    }

    /// `β'_{i,jd} = β_{i,j}`: the table of the image under a flat power map
    /// of uniform degree `d`.
    pub fn scale_degrees(&self, d: u32) -> BettiTable {
        BettiTable {
            nvars: self.nvars,
            side: self.side,
            entries: self.entries.iter().map(|(&(i, j), &b)| ((i, j * d), b)).collect(),
            certified_through: self.certified_through.saturating_mul(d),
        }
    }

    /// First degree `j <= certified_through` where
    /// `Σ_i (-1)^i C(ℓ, i) HF(j - i) != Σ_i (-1)^i β_{i,j}(R/I)`.
    pub fn euler_defect(&self, series: &HilbertSeries) -> Result<Option<u32>> {
        let quotient = self.to_side(Side::Quotient);
        let l = self.nvars;
        for j in 0..=self.certified_through {
            let mut lhs: i128 = 0;
            let mut rhs: i128 = 0;
            for i in 0..=l.min(j as usize) {
                let sign = if i % 2 == 0 { 1 } else { -1 };
                let c = binomial(l as i64, i as i64)? as i128;
                lhs += sign * c * series.coefficient(j - i as u32)? as i128;
                rhs += sign * quotient.get(i, j) as i128;
            }
            if lhs != rhs {
                return Ok(Some(j));
            }
        }
        Ok(None)
    }

    pub fn to_json(&self) -> Value {
        let entries: Vec<Value> = self.entries.iter().map(|(&(i, j), &b)| json!([i, j, b])).collect();
        json!({
            "side": self.side,
            "certified_through": self.certified_through,
            "entries": entries,
        })
    }
}

/// Rows indexed by `j - i`, columns by `i`, dots for zeros.
impl fmt::Display for BettiTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.entries.is_empty() {
            return writeln!(f, "(zero table)");
        }
        let width_i = self.pdim().unwrap();
        let rows: Vec<i64> = {
            let lo = self.entries.keys().map(|&(i, j)| j as i64 - i as i64).min().unwrap();
            let hi = self.regularity().unwrap();
            (lo..=hi).collect()
        };
        let cell = self
            .entries
            .values()
            .map(|b| b.to_string().len())
            .max()
            .unwrap()
            .max(width_i.to_string().len())
            .max(1);
        let label = rows.iter().map(|r| r.to_string().len()).max().unwrap().max(5) + 1;
        write!(f, "{:>label$}", "")?;
        for i in 0..=width_i {
            write!(f, " {:>cell$}", i)?;
        }
        writeln!(f)?;
        write!(f, "{:>label$}", "total:")?;
        for i in 0..=width_i {
            let total: u64 = self.entries.iter().filter(|((k, _), _)| *k == i).map(|(_, b)| b).sum();
            write!(f, " {:>cell$}", total)?;
        }
        writeln!(f)?;
        for r in rows {
            write!(f, "{:>label$}", format!("{r}:"))?;
            for i in 0..=width_i {
                let j = r + i as i64;
                let b = if j >= 0 { self.get(i, j as u32) } else { 0 };
                if b == 0 {
                    write!(f, " {:>cell$}", ".")?;
                } else {
                    write!(f, " {:>cell$}", b)?;
                }
            }
            writeln!(f)?;
        }
        Ok(())
    }
}
