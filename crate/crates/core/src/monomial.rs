use smallvec::SmallVec;

pub type Exponents = SmallVec<[u32; 8]>;

/// A monomial as a dense exponent vector; index 0 is `x1`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial {
    exps: Exponents,
    degree: u32,
}

impl Monomial {
    pub fn new<I: IntoIterator<Item = u32>>(exps: I) -> Self {
        let exps: Exponents = exps.into_iter().collect();
        let degree = exps.iter().sum();
        Monomial { exps, degree }
    }

    pub fn one(nvars: usize) -> Self {
        Monomial {
            exps: SmallVec::from_elem(0, nvars),
            degree: 0,
        }
    }

    /// `x_{var+1}^e`.
    pub fn var(nvars: usize, var: usize, e: u32) -> Self {
        let mut m = Monomial::one(nvars);
        m.exps[var] = e;
        m.degree = e;
        m
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    pub fn exp(&self, var: usize) -> u32 {
        self.exps[var]
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_one(&self) -> bool {
        self.degree == 0
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.degree <= other.degree && self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial {
            exps: self.exps.iter().zip(&other.exps).map(|(a, b)| a + b).collect(),
            degree: self.degree + other.degree,
        }
    }

    /// `self / other` if `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        if !other.divides(self) {
            return None;
        }
        Some(Monomial {
            exps: self.exps.iter().zip(&other.exps).map(|(a, b)| a - b).collect(),
            degree: self.degree - other.degree,
        })
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial::new(self.exps.iter().zip(&other.exps).map(|(a, b)| *a.max(b)))
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        Monomial::new(self.exps.iter().zip(&other.exps).map(|(a, b)| *a.min(b)))
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Multiply by a single variable.
    pub fn times_var(&self, var: usize) -> Monomial {
        let mut m = self.clone();
        m.exps[var] += 1;
        m.degree += 1;
        m
    }

    /// Divide by a single variable, if it divides.
    pub fn over_var(&self, var: usize) -> Option<Monomial> {
        if self.exps[var] == 0 {
            return None;
        }
        let mut m = self.clone();
        m.exps[var] -= 1;
        m.degree -= 1;
        Some(m)
    }

    /// Exponentwise scaling `e_i ↦ d_i·e_i`.
    pub fn scale(&self, factors: &[u32]) -> Monomial {
        Monomial::new(self.exps.iter().zip(factors).map(|(e, d)| e * d))
    }

    /// Variables with positive exponent.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.exps
            .iter()
            .enumerate()
            .filter(|(_, e)| **e > 0)
            .map(|(i, _)| i)
    }

    /// Largest variable index in the support.
    pub fn max_var(&self) -> Option<usize> {
        self.exps.iter().rposition(|e| *e > 0)
    }

    /// True if only the first `keep` variables occur.
    pub fn lies_in_first(&self, keep: usize) -> bool {
        self.exps[keep..].iter().all(|e| *e == 0)
    }

    pub fn truncate(&self, keep: usize) -> Monomial {
        Monomial::new(self.exps[..keep].iter().copied())
    }

    pub fn extend(&self, nvars: usize) -> Monomial {
        let mut exps = self.exps.clone();
        exps.resize(nvars, 0);
        Monomial {
            exps,
            degree: self.degree,
        }
    }

    /// Render with the given variable names, `1` for the empty monomial.
    pub fn format(&self, names: &[String]) -> String {
        if self.is_one() {
            return "1".to_string();
        }
        // highest variable first, matching the ring's precedence
        let mut parts = Vec::new();
        for (i, e) in self.exps.iter().enumerate().rev() {
            match e {
                0 => {}
                1 => parts.push(names[i].clone()),
                e => parts.push(format!("{}^{}", names[i], e)),
            }
        }
        parts.join("*")
    }
}

/// All monomials of the given degree in `nvars` variables, in no particular order.
pub fn monomials_of_degree(nvars: usize, degree: u32) -> Vec<Monomial> {
    fn rec(nvars: usize, var: usize, left: u32, cur: &mut Exponents, out: &mut Vec<Monomial>) {
        if var + 1 == nvars {
            cur[var] = left;
            out.push(Monomial::new(cur.iter().copied()));
            cur[var] = 0;
            return;
        }
        for e in (0..=left).rev() {
            cur[var] = e;
            rec(nvars, var + 1, left - e, cur, out);
        }
        cur[var] = 0;
    }
    if nvars == 0 {
        return if degree == 0 { vec![Monomial::one(0)] } else { vec![] };
    }
    let mut out = Vec::new();
    let mut cur: Exponents = SmallVec::from_elem(0, nvars);
    rec(nvars, 0, degree, &mut cur, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[u32]) -> Monomial {
        Monomial::new(e.iter().copied())
    }

    #[test]
    fn divisibility_and_quotients() {
        let a = m(&[1, 0, 2]);
        let b = m(&[2, 1, 2]);
        assert!(a.divides(&b));
        assert!(!b.divides(&a));
        assert_eq!(b.div(&a), Some(m(&[1, 1, 0])));
        assert_eq!(a.div(&b), None);
        assert_eq!(a.lcm(&m(&[0, 3, 1])), m(&[1, 3, 2]));
        assert_eq!(a.gcd(&b), a);
        assert!(m(&[2, 0, 0]).is_coprime(&m(&[0, 2, 1])));
    }

    #[test]
    fn degree_is_cached_consistently() {
        let a = m(&[1, 2, 3]).times_var(0).over_var(2).unwrap();
        assert_eq!(a.degree(), a.exps().iter().sum::<u32>());
        assert_eq!(m(&[1, 1]).scale(&[2, 3]).degree(), 5);
    }

    #[test]
    fn counts_monomials_of_degree() {
        assert_eq!(monomials_of_degree(3, 2).len(), 6);
        assert_eq!(monomials_of_degree(1, 5).len(), 1);
        assert_eq!(monomials_of_degree(4, 0), vec![Monomial::one(4)]);
    }

    #[test]
    fn formats_highest_variable_first() {
        let names: Vec<String> = ["x1", "x2", "x3"].iter().map(|s| s.to_string()).collect();
        assert_eq!(m(&[2, 0, 1]).format(&names), "x3*x1^2");
        assert_eq!(Monomial::one(3).format(&names), "1");
    }
}
