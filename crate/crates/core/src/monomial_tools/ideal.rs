use std::cmp::Ordering;
use std::fmt;

use crate::monomial::Monomial;
use crate::order::TermOrder;

/// A monomial ideal stored by its minimal generators, sorted descending in
/// lex order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MonomialIdeal {
    nvars: usize,
    gens: Vec<Monomial>,
}

impl MonomialIdeal {
    pub fn new(nvars: usize, gens: impl IntoIterator<Item = Monomial>) -> Self {
        let mut all: Vec<Monomial> = gens.into_iter().collect();
        debug_assert!(all.iter().all(|m| m.nvars() == nvars));
        all.sort_by_key(|m| m.degree());
        let mut kept: Vec<Monomial> = Vec::new();
        for m in all {
            if !kept.iter().any(|g| g.divides(&m)) {
                kept.push(m);
            }
        }
        kept.sort_by(|a, b| TermOrder::Lex.compare(b, a));
        MonomialIdeal { nvars, gens: kept }
    }

    pub fn zero(nvars: usize) -> Self {
        MonomialIdeal {
            nvars,
            gens: Vec::new(),
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn gens(&self) -> &[Monomial] {
        &self.gens
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.gens.iter().any(|g| g.is_one())
    }

    pub fn contains(&self, m: &Monomial) -> bool {
        self.gens.iter().any(|g| g.divides(m))
    }

    /// Largest degree of a minimal generator.
    pub fn max_degree(&self) -> Option<u32> {
        self.gens.iter().map(|g| g.degree()).max()
    }

    /// The least common multiple of all minimal generators.
    pub fn lcm_of_generators(&self) -> Monomial {
        self.gens
            .iter()
            .fold(Monomial::one(self.nvars), |acc, g| acc.lcm(g))
    }

    /// Generators lying in the first `keep` variables, as an ideal there.
    pub fn restrict(&self, keep: usize) -> MonomialIdeal {
        MonomialIdeal::new(
            keep,
            self.gens
                .iter()
                .filter(|g| g.lies_in_first(keep))
                .map(|g| g.truncate(keep)),
        )
    }

    /// `M + (m)`.
    pub fn with_generator(&self, m: Monomial) -> MonomialIdeal {
        MonomialIdeal::new(self.nvars, self.gens.iter().cloned().chain(std::iter::once(m)))
    }

    /// `M : m`.
    pub fn colon(&self, m: &Monomial) -> MonomialIdeal {
        MonomialIdeal::new(
            self.nvars,
            self.gens.iter().map(|g| {
                Monomial::new(g.exps().iter().zip(m.exps()).map(|(a, b)| a.saturating_sub(*b)))
            }),
        )
    }

    /// Image under `x_i ↦ x_i^{d_i}`.
    pub fn scale(&self, factors: &[u32]) -> MonomialIdeal {
        MonomialIdeal::new(self.nvars, self.gens.iter().map(|g| g.scale(factors)))
    }

    pub fn format(&self, names: &[String]) -> String {
        if self.gens.is_empty() {
            return "(0)".to_string();
        }
        let parts: Vec<String> = self.gens.iter().map(|g| g.format(names)).collect();
        format!("({})", parts.join(", "))
    }
}

impl fmt::Display for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (1..=self.nvars).map(|i| format!("x{i}")).collect();
        write!(f, "{}", self.format(&names))
    }
}

/// A trie over generator exponents, from the largest variable down, for
/// repeated membership tests.
#[derive(Clone, Debug)]
pub struct MonomialIndex {
    nvars: usize,
    // children[node] = (exponent, child) sorted by exponent
    children: Vec<Vec<(u32, usize)>>,
    nonempty: bool,
}

impl MonomialIndex {
    pub fn new(ideal: &MonomialIdeal) -> Self {
        let nvars = ideal.nvars();
        let mut children: Vec<Vec<(u32, usize)>> = vec![Vec::new()];
        for g in ideal.gens() {
            let mut node = 0;
            for v in (0..nvars).rev() {
                let e = g.exp(v);
                node = match children[node].iter().find(|(x, _)| *x == e) {
                    Some(&(_, c)) => c,
                    None => {
                        children.push(Vec::new());
                        let c = children.len() - 1;
                        children[node].push((e, c));
                        c
                    }
                };
            }
        }
        for c in &mut children {
            c.sort_unstable();
        }
        MonomialIndex {
            nvars,
            children,
            nonempty: !ideal.is_zero(),
        }
    }

    /// Whether `x^exps` lies in the ideal.
    pub fn contains(&self, exps: &[u32]) -> bool {
        debug_assert_eq!(exps.len(), self.nvars);
        self.nonempty && self.search(0, self.nvars, exps)
    }

    fn search(&self, node: usize, level: usize, exps: &[u32]) -> bool {
        if level == 0 {
            return true;
        }
        let bound = exps[level - 1];
        for &(e, child) in &self.children[node] {
            if e > bound {
                break;
            }
            if self.search(child, level - 1, exps) {
                return true;
            }
        }
        false
    }
}

/// Sorts monomials descending under lex.
pub fn sort_lex_desc(ms: &mut [Monomial]) {
    ms.sort_by(|a, b| match TermOrder::Lex.compare(a, b) {
        Ordering::Less => Ordering::Greater,
        Ordering::Greater => Ordering::Less,
        Ordering::Equal => Ordering::Equal,
    });
}
