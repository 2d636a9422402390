//! Ideal and parametrisation files.
//!
//! ```text
//! ring x1 x2 x3; char 0; order lex; gens: x1*x2 + x2*x3, x1*x3, x3^2
//! param n=3 m=2 d=2; f: y1^2, y1*y2, y2^2
//! ```
//!
//! Clauses are separated by `;`, whitespace (including newlines) is free and
//! `#` starts a comment. The polynomial list after `gens:` or `f:` runs to
//! the end of the file. Coefficients are written as integers or fractions
//! and mapped into the target field only when the file is instantiated.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::field::{is_prime, Field};
use crate::groebner::IdealPresentation;
use crate::monomial::Monomial;
use crate::order::TermOrder;
use crate::poly::Polynomial;
use crate::ring::PolyRing;

use super::Parametrisation;

/// A polynomial with rational coefficients, normalized: no zero terms and
/// distinct monomials.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RawPoly {
    terms: BTreeMap<Vec<u32>, BigRational>,
}

impl RawPoly {
    /// `(exponents, coefficient)` pairs.
    pub fn terms(&self) -> impl Iterator<Item = (&[u32], &BigRational)> {
        self.terms.iter().map(|(e, c)| (e.as_slice(), c))
    }

    /// Maps the coefficients into `ring`'s field.
    pub fn to_polynomial<F: Field>(&self, ring: &Arc<PolyRing<F>>, order: TermOrder) -> Result<Polynomial<F>> {
        let field = ring.field();
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                field
                    .from_fraction(c.numer(), c.denom())
                    .map(|e| (e, Monomial::new(m.iter().copied())))
                    .ok_or_else(|| Error::InvalidInput(format!("coefficient {c} is undefined in {}", field.name())))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Polynomial::from_terms(ring, order, terms))
    }

    fn format(&self, names: &[String], order: TermOrder) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut terms: Vec<(Monomial, &BigRational)> = self
            .terms
            .iter()
            .map(|(e, c)| (Monomial::new(e.iter().copied()), c))
            .collect();
        terms.sort_by(|a, b| order.compare(&b.0, &a.0));
        let mut out = String::new();
        for (k, (m, c)) in terms.into_iter().enumerate() {
            let sign = if c.is_negative() { "-" } else { "+" };
            if k == 0 {
                if c.is_negative() {
                    out.push('-');
                }
            } else {
                let _ = write!(out, " {sign} ");
            }
            let mag = c.abs();
            if m.is_one() {
                let _ = write!(out, "{mag}");
            } else if mag.is_one() {
                out.push_str(&m.format(names));
            } else {
                let _ = write!(out, "{mag}*{}", m.format(names));
            }
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdealFile {
    pub names: Vec<String>,
    pub characteristic: Option<u64>,
    pub order: Option<TermOrder>,
    pub gens: Vec<RawPoly>,
}

impl IdealFile {
    /// Builds the ring and ideal over `field`. Polynomials carry `order`.
    pub fn instantiate<F: Field>(&self, field: F, order: TermOrder) -> Result<IdealPresentation<F>> {
        let kept = match order {
            TermOrder::Elimination { keep } => keep,
            _ => self.names.len(),
        };
        let ring = PolyRing::with_kept(field, self.names.clone(), kept)?;
        let gens = self
            .gens
            .iter()
            .map(|g| g.to_polynomial(&ring, order))
            .collect::<Result<Vec<_>>>()?;
        IdealPresentation::new(&ring, gens)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParamFile {
    pub n: usize,
    pub m: usize,
    pub d: u32,
    pub characteristic: Option<u64>,
    pub forms: Vec<RawPoly>,
}

impl ParamFile {
    pub fn names(&self) -> Vec<String> {
        (1..=self.m).map(|i| format!("y{i}")).collect()
    }

    pub fn instantiate<F: Field>(&self, field: F) -> Result<Parametrisation<F>> {
        let ring = PolyRing::new(field, self.names())?;
        let forms = self
            .forms
            .iter()
            .map(|f| f.to_polynomial(&ring, TermOrder::Lex))
            .collect::<Result<Vec<_>>>()?;
        Parametrisation::new(self.n, self.m, self.d, forms)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Document {
    Ideal(IdealFile),
    Param(ParamFile),
}

impl Document {
    pub fn characteristic(&self) -> Option<u64> {
        match self {
            Document::Ideal(f) => f.characteristic,
            Document::Param(f) => f.characteristic,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Nat(BigInt),
    Sym(char),
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    line: usize,
    column: usize,
}

fn parse_error(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}

fn tokenize(text: &str) -> Result<(Vec<Token>, (usize, usize))> {
    let mut tokens = Vec::new();
    let mut chars = text.chars().peekable();
    let (mut line, mut column) = (1, 1);
    while let Some(&c) = chars.peek() {
        let (l, col) = (line, column);
        let mut bump = |chars: &mut std::iter::Peekable<std::str::Chars>| {
            let c = chars.next().unwrap();
            if c == '\n' {
                line += 1;
                column = 1;
            } else {
                column += 1;
            }
            c
        };
        if c.is_whitespace() {
            bump(&mut chars);
        } else if c == '#' {
            while chars.peek().is_some_and(|&c| c != '\n') {
                bump(&mut chars);
            }
        } else if c.is_ascii_alphabetic() || c == '_' {
            let mut s = String::new();
            while chars.peek().is_some_and(|&c| c.is_ascii_alphanumeric() || c == '_') {
                s.push(bump(&mut chars));
            }
            tokens.push(Token {
                tok: Tok::Ident(s),
                line: l,
                column: col,
            });
        } else if c.is_ascii_digit() {
            let mut s = String::new();
            while chars.peek().is_some_and(|c| c.is_ascii_digit()) {
                s.push(bump(&mut chars));
            }
            tokens.push(Token {
                tok: Tok::Nat(s.parse().unwrap()),
                line: l,
                column: col,
            });
        } else if "^*+-/,;:=".contains(c) {
            bump(&mut chars);
            tokens.push(Token {
                tok: Tok::Sym(c),
                line: l,
                column: col,
            });
        } else {
            return Err(parse_error(l, col, format!("unexpected character '{c}'")));
        }
    }
    Ok((tokens, (line, column)))
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
    end: (usize, usize),
}

/// A variable occurrence before names are resolved.
type RawFactor = (String, u32, usize, usize);
/// Coefficient and factors of each term of one unresolved polynomial.
type RawTerms = Vec<(BigRational, Vec<RawFactor>)>;

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.tokens.get(self.pos).map(|t| &t.tok)
    }

    fn here(&self) -> (usize, usize) {
        self.tokens.get(self.pos).map_or(self.end, |t| (t.line, t.column))
    }

    fn error(&self, message: impl Into<String>) -> Error {
        let (l, c) = self.here();
        parse_error(l, c, message)
    }

    fn describe(&self) -> String {
        match self.peek() {
            None => "end of input".into(),
            Some(Tok::Ident(s)) => format!("'{s}'"),
            Some(Tok::Nat(n)) => format!("'{n}'"),
            Some(Tok::Sym(c)) => format!("'{c}'"),
        }
    }

    fn eat_sym(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect_sym(&mut self, c: char) -> Result<()> {
        if self.eat_sym(c) {
            Ok(())
        } else {
            Err(self.error(format!("expected '{c}', found {}", self.describe())))
        }
    }

    fn ident(&mut self) -> Option<String> {
        match self.peek() {
            Some(Tok::Ident(s)) => {
                let s = s.clone();
                self.pos += 1;
                Some(s)
            }
            _ => None,
        }
    }

    fn nat(&mut self) -> Option<BigInt> {
        match self.peek() {
            Some(Tok::Nat(n)) => {
                let n = n.clone();
                self.pos += 1;
                Some(n)
            }
            _ => None,
        }
    }

    fn small_nat(&mut self, what: &str) -> Result<u64> {
        let (l, c) = self.here();
        let n = self
            .nat()
            .ok_or_else(|| self.error(format!("expected {what}, found {}", self.describe())))?;
        u64::try_from(n).map_err(|_| parse_error(l, c, format!("{what} is too large")))
    }

    fn exponent(&mut self) -> Result<u32> {
        let (l, c) = self.here();
        let e = self.small_nat("an exponent")?;
        u32::try_from(e).map_err(|_| parse_error(l, c, "exponent is too large"))
    }

    /// `term := [coeff '*'] monomial | coeff`, with `coeff := nat ['/' nat]`.
    fn term(&mut self) -> Result<(BigRational, Vec<RawFactor>)> {
        let mut coeff = BigRational::one();
        if let Some(num) = self.nat() {
            let den = if self.eat_sym('/') {
                let (l, c) = self.here();
                let den = self
                    .nat()
                    .ok_or_else(|| self.error(format!("expected a denominator, found {}", self.describe())))?;
                if den.is_zero() {
                    return Err(parse_error(l, c, "zero denominator"));
                }
                den
            } else {
                BigInt::one()
            };
            coeff = BigRational::new(num, den);
            if !self.eat_sym('*') {
                return Ok((coeff, Vec::new()));
            }
        }
        let mut factors = Vec::new();
        loop {
            let (l, c) = self.here();
            let name = self
                .ident()
                .ok_or_else(|| self.error(format!("expected a variable, found {}", self.describe())))?;
            let e = if self.eat_sym('^') { self.exponent()? } else { 1 };
            factors.push((name, e, l, c));
            if !self.eat_sym('*') {
                break;
            }
        }
        Ok((coeff, factors))
    }

    /// `poly := ['-'] term (('+'|'-') term)*`
    fn poly(&mut self) -> Result<RawTerms> {
        let mut terms = Vec::new();
        let mut negative = self.eat_sym('-');
        loop {
            let (c, f) = self.term()?;
            terms.push((if negative { -c } else { c }, f));
            if self.eat_sym('+') {
                negative = false;
            } else if self.eat_sym('-') {
                negative = true;
            } else {
                break;
            }
        }
        Ok(terms)
    }

    fn poly_list(&mut self) -> Result<Vec<RawTerms>> {
        let mut polys = vec![self.poly()?];
        while self.eat_sym(',') {
            polys.push(self.poly()?);
        }
        self.eat_sym(';');
        if self.pos < self.tokens.len() {
            return Err(self.error(format!("expected ',' or end of input, found {}", self.describe())));
        }
        Ok(polys)
    }

    fn characteristic(&mut self) -> Result<u64> {
        let (l, c) = self.here();
        let p = self.small_nat("a characteristic")?;
        if p != 0 && !is_prime(p) {
            return Err(parse_error(l, c, format!("characteristic {p} is neither 0 nor prime")));
        }
        Ok(p)
    }
}

fn resolve(
    names: &[String],
    raw: Vec<RawTerms>,
) -> Result<Vec<RawPoly>> {
    raw.into_iter()
        .map(|terms| {
            let mut out: BTreeMap<Vec<u32>, BigRational> = BTreeMap::new();
            for (c, factors) in terms {
                let mut exps = vec![0u32; names.len()];
                for (name, e, l, col) in factors {
                    let i = names
                        .iter()
                        .position(|n| *n == name)
                        .ok_or_else(|| parse_error(l, col, format!("unknown variable '{name}'")))?;
                    exps[i] = exps[i]
                        .checked_add(e)
                        .ok_or_else(|| parse_error(l, col, "exponent is too large"))?;
                }
                *out.entry(exps).or_insert_with(BigRational::zero) += c;
            }
            out.retain(|_, c| !c.is_zero());
            Ok(RawPoly { terms: out })
        })
        .collect()
}

fn set_once<T>(slot: &mut Option<T>, value: T, what: &str, at: (usize, usize)) -> Result<()> {
    if slot.is_some() {
        return Err(parse_error(at.0, at.1, format!("duplicate {what} clause")));
    }
    *slot = Some(value);
    Ok(())
}

/// Parses an ideal or parametrisation file.
pub fn parse_document(text: &str) -> Result<Document> {
    let (tokens, end) = tokenize(text)?;
    let mut p = Parser { tokens, pos: 0, end };
    let mut names: Option<Vec<String>> = None;
    let mut characteristic = None;
    let mut order = None;
    let mut param: Option<(usize, usize, u32)> = None;
    loop {
        let at = p.here();
        let keyword = p
            .ident()
            .ok_or_else(|| p.error(format!("expected a clause keyword, found {}", p.describe())))?;
        match keyword.as_str() {
            "ring" => {
                let mut vars = Vec::new();
                while let Some(v) = p.ident() {
                    if vars.contains(&v) {
                        return Err(p.error(format!("duplicate variable '{v}'")));
                    }
                    vars.push(v);
                }
                if vars.is_empty() {
                    return Err(p.error("a ring needs at least one variable"));
                }
                set_once(&mut names, vars, "ring", at)?;
            }
            "char" => {
                let c = p.characteristic()?;
                set_once(&mut characteristic, c, "char", at)?;
            }
            "order" => {
                let word_at = p.here();
                let o = match p.ident().as_deref() {
                    Some("lex") => TermOrder::Lex,
                    Some("degrevlex") => TermOrder::DegRevLex,
                    Some("elim") => {
                        let (l, c) = p.here();
                        let k = p.small_nat("the number of kept variables")? as usize;
                        if k == 0 {
                            return Err(parse_error(l, c, "elim needs at least one kept variable"));
                        }
                        TermOrder::Elimination { keep: k }
                    }
                    _ => return Err(parse_error(word_at.0, word_at.1, "expected lex, degrevlex or elim k")),
                };
                set_once(&mut order, o, "order", at)?;
            }
            "param" => {
                let mut vals: BTreeMap<String, u64> = BTreeMap::new();
                while let Some(Tok::Ident(k)) = p.peek().cloned() {
                    let key_at = p.here();
                    p.pos += 1;
                    if !["n", "m", "d"].contains(&k.as_str()) {
                        return Err(parse_error(key_at.0, key_at.1, format!("unknown parameter '{k}'")));
                    }
                    p.expect_sym('=')?;
                    let (l, c) = p.here();
                    let v = p.small_nat("a positive integer")?;
                    if v == 0 || v > u32::MAX as u64 {
                        return Err(parse_error(l, c, format!("{k} must be a positive integer")));
                    }
                    if vals.insert(k.clone(), v).is_some() {
                        return Err(parse_error(key_at.0, key_at.1, format!("duplicate parameter '{k}'")));
                    }
                }
                let get = |k: &str| {
                    vals.get(k)
                        .copied()
                        .ok_or_else(|| parse_error(at.0, at.1, format!("param clause is missing {k}=")))
                };
                let v = (get("n")? as usize, get("m")? as usize, get("d")? as u32);
                set_once(&mut param, v, "param", at)?;
            }
            "gens" | "f" => {
                p.expect_sym(':')?;
                let raw = p.poly_list()?;
                return match (keyword.as_str(), names, param) {
                    ("gens", Some(names), None) => Ok(Document::Ideal(IdealFile {
                        gens: resolve(&names, raw)?,
                        names,
                        characteristic,
                        order,
                    })),
                    ("f", None, Some((n, m, d))) => {
                        if order.is_some() {
                            return Err(parse_error(at.0, at.1, "a parametrisation file takes no order clause"));
                        }
                        let names: Vec<String> = (1..=m).map(|i| format!("y{i}")).collect();
                        Ok(Document::Param(ParamFile {
                            n,
                            m,
                            d,
                            characteristic,
                            forms: resolve(&names, raw)?,
                        }))
                    }
                    ("gens", _, _) => Err(parse_error(at.0, at.1, "gens: needs a preceding ring clause")),
                    _ => Err(parse_error(at.0, at.1, "f: needs a preceding param clause")),
                };
            }
            other => {
                return Err(parse_error(at.0, at.1, format!("unknown clause '{other}'")));
            }
        }
        p.expect_sym(';')?;
    }
}

pub fn parse_ideal_file(text: &str) -> Result<IdealFile> {
    match parse_document(text)? {
        Document::Ideal(f) => Ok(f),
        Document::Param(_) => Err(Error::InvalidInput("expected an ideal file, found a parametrisation".into())),
    }
}

pub fn parse_param_file(text: &str) -> Result<ParamFile> {
    match parse_document(text)? {
        Document::Param(f) => Ok(f),
        Document::Ideal(_) => Err(Error::InvalidInput("expected a parametrisation file, found an ideal".into())),
    }
}

fn order_keyword(order: TermOrder) -> String {
    match order {
        TermOrder::Lex => "lex".into(),
        TermOrder::DegRevLex => "degrevlex".into(),
        TermOrder::Elimination { keep } => format!("elim {keep}"),
    }
}

/// Normalized text of a document: one line, fixed clause order, terms
/// merged and sorted by the file's order (lex if none).
pub fn print_document(doc: &Document) -> String {
    let mut out = String::new();
    match doc {
        Document::Ideal(f) => {
            let _ = write!(out, "ring {};", f.names.join(" "));
            if let Some(c) = f.characteristic {
                let _ = write!(out, " char {c};");
            }
            if let Some(o) = f.order {
                let _ = write!(out, " order {};", order_keyword(o));
            }
            let order = f.order.unwrap_or(TermOrder::Lex);
            let gens: Vec<String> = f.gens.iter().map(|g| g.format(&f.names, order)).collect();
            let _ = writeln!(out, " gens: {}", gens.join(", "));
        }
        Document::Param(f) => {
            let _ = write!(out, "param n={} m={} d={};", f.n, f.m, f.d);
            if let Some(c) = f.characteristic {
                let _ = write!(out, " char {c};");
            }
            let names = f.names();
            let forms: Vec<String> = f.forms.iter().map(|g| g.format(&names, TermOrder::Lex)).collect();
            let _ = writeln!(out, " f: {}", forms.join(", "));
        }
    }
    out
}

/// Ideal-file text for a presentation, e.g. to save a random instance.
pub fn print_ideal<F: Field>(ideal: &IdealPresentation<F>, order: Option<TermOrder>) -> String {
    let ring = ideal.ring();
    let mut out = format!("ring {}; char {};", ring.names().join(" "), ring.characteristic());
    if let Some(o) = order {
        let _ = write!(out, " order {};", order_keyword(o));
    }
    let gens: Vec<String> = ideal.generators().iter().map(|g| g.to_string()).collect();
    let _ = writeln!(out, " gens: {}", gens.join(", "));
    out
}

/// Parametrisation-file text.
pub fn print_param<F: Field>(p: &Parametrisation<F>) -> String {
    let forms: Vec<String> = p.forms().iter().map(|g| g.to_string()).collect();
    format!(
        "param n={} m={} d={}; char {}; f: {}\n",
        p.n(),
        p.m(),
        p.d(),
        p.ring().characteristic(),
        forms.join(", ")
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};

    fn round_trip(text: &str) -> String {
        let doc = parse_document(text).unwrap();
        let printed = print_document(&doc);
        assert_eq!(parse_document(&printed).unwrap(), doc, "{printed}");
        assert_eq!(print_document(&parse_document(&printed).unwrap()), printed);
        printed
    }

    #[test]
    fn two_squares_over_rationals() {
        let f = parse_ideal_file("ring x1 x2; char 0; gens: x1^2, x2^2").unwrap();
        assert_eq!(f.characteristic, Some(0));
        assert_eq!(f.order, None);
        let i = f.instantiate(Rationals, TermOrder::Lex).unwrap();
        let shown: Vec<String> = i.generators().iter().map(|g| g.to_string()).collect();
        assert_eq!(shown, ["x1^2", "x2^2"]);
        assert_eq!(round_trip("ring x1 x2; char 0; gens: x1^2, x2^2"), "ring x1 x2; char 0; gens: x1^2, x2^2\n");
    }

    #[test]
    fn conic_parametrisation() {
        let text = "param n=3 m=2 d=2; f: y1^2, y1*y2, y2^2";
        let f = parse_param_file(text).unwrap();
        assert_eq!((f.n, f.m, f.d), (3, 2, 2));
        let p = f.instantiate(PrimeField::default()).unwrap();
        assert_eq!(p.forms().len(), 3);
        assert_eq!(round_trip(text), "param n=3 m=2 d=2; f: y1^2, y2*y1, y2^2\n");
    }

    #[test]
    fn trailing_operator() {
        let err = parse_document("gens: x1 +").unwrap_err();
        assert_eq!(
            err,
            Error::Parse {
                line: 1,
                column: 11,
                message: "expected a variable, found end of input".into()
            }
        );
        let err = parse_document("ring x1;\ngens: x1 +\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, column: 1, .. }), "{err}");
    }

    #[test]
    fn normalization() {
        let printed = round_trip(
            "# comment\nring a b c;\norder degrevlex;\ngens: 2*a*b - b*a + 3/6*c^2 - 1/2*c*c, a - a, -b^2 + 4",
        );
        assert_eq!(printed, "ring a b c; order degrevlex; gens: b*a, 0, -b^2 + 4\n");
        let printed = round_trip("ring x1 x2 x3; char 7; order elim 1; gens: x3*x1 + x2^2");
        assert_eq!(printed, "ring x1 x2 x3; char 7; order elim 1; gens: x2^2 + x3*x1\n");
    }

    #[test]
    fn semantic_errors() {
        let unknown = parse_document("ring x1 x2; gens: x1*z").unwrap_err();
        assert!(matches!(unknown, Error::Parse { line: 1, column: 22, .. }), "{unknown}");
        assert!(parse_document("ring x; char 6; gens: x").unwrap_err().to_string().contains("neither 0 nor prime"));
        assert!(parse_document("ring x; char 0; char 7; gens: x")
            .unwrap_err()
            .to_string()
            .contains("duplicate char"));
        assert!(parse_document("ring x x; gens: x").is_err());
        assert!(parse_document("ring x; gens: 1/0").is_err());
        assert!(parse_document("param n=1 m=1; f: y1").is_err());
        assert!(parse_document("param n=1 m=1 d=1; f: x1").is_err());
        assert!(parse_document("ring x; gens: x x").is_err());
    }

    #[test]
    fn fractions_need_an_invertible_denominator() {
        let f = parse_ideal_file("ring x; gens: 1/7*x").unwrap();
        assert!(f.instantiate(PrimeField::new(7).unwrap(), TermOrder::Lex).is_err());
        assert!(f.instantiate(PrimeField::new(5).unwrap(), TermOrder::Lex).is_ok());
    }

    #[test]
    fn printed_presentations_parse_back() {
        let f = parse_ideal_file("ring x1 x2 x3; gens: x1*x2 + x2*x3, x1*x3, x3^2").unwrap();
        let i = f.instantiate(PrimeField::default(), TermOrder::Lex).unwrap();
        let text = print_ideal(&i, Some(TermOrder::Lex));
        let again = parse_ideal_file(&text).unwrap().instantiate(PrimeField::default(), TermOrder::Lex).unwrap();
        assert_eq!(again.generators(), i.generators());
    }
}
