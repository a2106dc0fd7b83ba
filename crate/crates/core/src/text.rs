//! Textual form of multivectors.
//!
//! ```text
//! expression := ['-'] term (('+'|'-') term)*
//! term       := [rational '*'] [monomial '*'] generators
//! rational   := INT ['/' INT]
//! monomial   := factor ('*' factor)*
//! factor     := ('t' | 'u'INT) ['^' INT]
//! generators := '1' | gen ('^' gen)*
//! gen        := 'dt' | 'du'INT
//! ```
//!
//! Whitespace is insignificant. Example: `u1*dt^du1 + u2*dt^du2` is `Λ_book` in
//! dimension 3. A term may also end right after its rational or monomial, which
//! is read as `…*1`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::algebra::{Blade, Monomial, PolyMultivector, Rational};
use crate::error::{Error, Result};
use crate::indexing::{check_dim, merge_sign_slices};

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
}

fn lex(src: &str) -> Result<Vec<(usize, Tok)>> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'+' => out.push((start, Tok::Plus)),
            b'-' => out.push((start, Tok::Minus)),
            b'*' => out.push((start, Tok::Star)),
            b'/' => out.push((start, Tok::Slash)),
            b'^' => out.push((start, Tok::Caret)),
            b'0'..=b'9' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let v: BigInt = src[start..i].parse().expect("digits");
                out.push((start, Tok::Int(v)));
                continue;
            }
            b'a'..=b'z' | b'A'..=b'Z' => {
                while i < bytes.len() && bytes[i].is_ascii_alphanumeric() {
                    i += 1;
                }
                out.push((start, Tok::Ident(src[start..i].to_string())));
                continue;
            }
            _ => {
                return Err(Error::Syntax {
                    pos: start,
                    msg: format!("unexpected character {:?}", src[start..].chars().next().unwrap()),
                })
            }
        }
        i += 1;
    }
    Ok(out)
}

enum Atom {
    /// variable index, 0 for `t`
    Var(usize),
    /// generator index, 0 for `dt`
    Gen(usize),
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    src_len: usize,
    n: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.src_len, |(p, _)| *p)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Syntax { pos: self.offset(), msg: msg.into() })
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(_, t)| t.clone());
        self.pos += 1;
        t
    }

    fn index_of(&self, ident: &str, prefix: &str) -> Result<Option<usize>> {
        let Some(rest) = ident.strip_prefix(prefix) else {
            return Ok(None);
        };
        if rest.is_empty() || !rest.bytes().all(|b| b.is_ascii_digit()) {
            return Ok(None);
        }
        let idx: usize = rest.parse().map_err(|_| Error::Syntax {
            pos: self.offset(),
            msg: format!("bad index in {ident:?}"),
        })?;
        if idx == 0 || idx >= self.n {
            return Err(Error::IndexOutOfRange { index: idx, n: self.n });
        }
        Ok(Some(idx))
    }

    fn atom(&self, ident: &str) -> Result<Atom> {
        match ident {
            "t" => return Ok(Atom::Var(0)),
            "dt" => return Ok(Atom::Gen(0)),
            _ => {}
        }
        if let Some(i) = self.index_of(ident, "du")? {
            return Ok(Atom::Gen(i));
        }
        if let Some(i) = self.index_of(ident, "u")? {
            return Ok(Atom::Var(i));
        }
        self.err(format!("unknown symbol {ident:?}"))
    }

    fn small_int(&mut self) -> Result<u32> {
        match self.bump() {
            Some(Tok::Int(v)) => u32::try_from(v).or_else(|_| {
                self.pos -= 1;
                self.err("exponent too large")
            }),
            _ => {
                self.pos -= 1;
                self.err("expected an integer exponent")
            }
        }
    }

    /// Parses one term; returns `(coefficient, monomial, generators)`.
    fn term(&mut self) -> Result<(Rational, Monomial, Vec<usize>)> {
        let mut coeff = Rational::one();
        let mut mono = vec![0u32; self.n];
        // leading rational
        if let Some(Tok::Int(v)) = self.peek().cloned() {
            let after = self.toks.get(self.pos + 1).map(|(_, t)| t.clone());
            let is_generator_one = v.is_one() && !matches!(after, Some(Tok::Slash) | Some(Tok::Star));
            if is_generator_one {
                self.bump();
                return Ok((coeff, Monomial::from_exponents(mono), Vec::new()));
            }
            self.bump();
            let mut r = Rational::from_integer(v);
            if let Some(Tok::Slash) = self.peek() {
                self.bump();
                match self.bump() {
                    Some(Tok::Int(d)) if !d.is_zero() => r /= Rational::from_integer(d),
                    _ => {
                        self.pos -= 1;
                        return self.err("expected a nonzero denominator");
                    }
                }
            }
            coeff = r;
            match self.peek() {
                Some(Tok::Star) => {
                    self.bump();
                }
                _ => return Ok((coeff, Monomial::from_exponents(mono), Vec::new())),
            }
        }
        // monomial factors, then generators
        loop {
            match self.peek().cloned() {
                Some(Tok::Int(v)) if v.is_one() => {
                    self.bump();
                    return Ok((coeff, Monomial::from_exponents(mono), Vec::new()));
                }
                Some(Tok::Ident(id)) => {
                    match self.atom(&id)? {
                        Atom::Var(i) => {
                            self.bump();
                            let mut e = 1;
                            if let Some(Tok::Caret) = self.peek() {
                                self.bump();
                                e = self.small_int()?;
                            }
                            mono[i] += e;
                            match self.peek() {
                                Some(Tok::Star) => {
                                    self.bump();
                                }
                                _ => return Ok((coeff, Monomial::from_exponents(mono), Vec::new())),
                            }
                        }
                        Atom::Gen(g) => {
                            self.bump();
                            let mut gens = vec![g];
                            while let Some(Tok::Caret) = self.peek() {
                                self.bump();
                                match self.bump() {
                                    Some(Tok::Ident(id)) => match self.atom(&id)? {
                                        Atom::Gen(g) => gens.push(g),
                                        Atom::Var(_) => {
                                            self.pos -= 1;
                                            return self.err("expected a generator after '^'");
                                        }
                                    },
                                    _ => {
                                        self.pos -= 1;
                                        return self.err("expected a generator after '^'");
                                    }
                                }
                            }
                            return Ok((coeff, Monomial::from_exponents(mono), gens));
                        }
                    }
                }
                _ => return self.err("expected a factor or generator"),
            }
        }
    }
}

/// Parses the textual form into a canonical multivector in dimension `n`.
pub fn parse_multivector(text: &str, n: usize) -> Result<PolyMultivector> {
    check_dim(n)?;
    let toks = lex(text)?;
    let mut p = Parser { toks, pos: 0, src_len: text.len(), n };
    let mut out: Option<PolyMultivector> = None;
    let mut sign = Rational::one();
    if let Some(Tok::Minus) = p.peek() {
        p.bump();
        sign = -sign;
    }
    if p.peek().is_none() {
        return p.err("empty expression");
    }
    loop {
        let start = p.offset();
        // the literal "0" stands for the zero multivector
        if let Some(Tok::Int(v)) = p.peek() {
            if v.is_zero() && p.toks.len() == 1 {
                return Ok(PolyMultivector::zero(n, 0));
            }
        }
        let (c, m, gens) = p.term()?;
        let mut sorted = gens.clone();
        sorted.sort_unstable();
        let repeated = sorted.windows(2).any(|w| w[0] == w[1]);
        let k = gens.len();
        let mut term = PolyMultivector::zero(n, k);
        if !repeated {
            let s = permutation_sign(&gens);
            let coeff = c * &sign * Rational::from_integer(s.into());
            term = PolyMultivector::monomial(coeff, m, Blade::from_generators(sorted));
            term = term.with_degree(k);
        }
        out = Some(match out {
            None => term,
            Some(acc) => {
                if acc.degree() != k {
                    return Err(Error::Degree(format!(
                        "term at byte {start} has degree {k}, expected {}",
                        acc.degree()
                    )));
                }
                acc.try_add(&term)?.with_degree(k)
            }
        });
        match p.bump() {
            None => break,
            Some(Tok::Plus) => sign = Rational::one(),
            Some(Tok::Minus) => sign = -Rational::one(),
            Some(_) => {
                p.pos -= 1;
                return p.err("expected '+' or '-'");
            }
        }
        if p.peek().is_none() {
            return p.err("dangling operator");
        }
    }
    Ok(out.expect("at least one term"))
}

fn permutation_sign(gens: &[usize]) -> i32 {
    // bubble through insertion into a sorted prefix
    let mut sign = 1;
    let mut prefix: Vec<usize> = Vec::new();
    for &g in gens {
        sign *= merge_sign_slices(&prefix, &[g]);
        let pos = prefix.partition_point(|&x| x < g);
        prefix.insert(pos, g);
    }
    sign
}

fn write_generators(f: &mut fmt::Formatter<'_>, b: &Blade) -> fmt::Result {
    let g = b.generators();
    if g.is_empty() {
        return write!(f, "1");
    }
    for (i, x) in g.iter().enumerate() {
        if i > 0 {
            write!(f, "^")?;
        }
        if *x == 0 {
            write!(f, "dt")?;
        } else {
            write!(f, "du{x}")?;
        }
    }
    Ok(())
}

/// Canonical text: `∂t`-terms first, then `J` lexicographic, then monomials.
pub struct Formatted<'a>(pub &'a PolyMultivector);

impl fmt::Display for Formatted<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mv = self.0;
        if mv.is_zero() {
            return write!(f, "0");
        }
        for (idx, (b, m, c)) in mv.flat_terms().enumerate() {
            let neg = c.is_negative();
            match (idx, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let a = c.abs();
            if !a.is_one() {
                write!(f, "{a}*")?;
            }
            if !m.is_one() {
                write!(f, "{m}*")?;
            }
            write_generators(f, b)?;
        }
        Ok(())
    }
}

pub fn format_multivector(mv: &PolyMultivector) -> String {
    Formatted(mv).to_string()
}

impl fmt::Display for PolyMultivector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        Formatted(self).fmt(f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{int, rat, Polynomial};
    use crate::indexing::IncreasingIndex;

    #[test]
    fn parse_book() {
        let mv = parse_multivector("u1*dt^du1 + u2*dt^du2", 3).unwrap();
        assert_eq!(mv, PolyMultivector::book(3));
        assert_eq!(format_multivector(&mv), "u1*dt^du1 + u2*dt^du2");
    }

    #[test]
    fn parse_normalizes_order() {
        let mv = parse_multivector("du1^dt", 2).unwrap();
        let expected = -&PolyMultivector::book(2).map_coefficients(|_| Polynomial::constant(2, int(1)));
        assert_eq!(mv, expected);
        assert_eq!(format_multivector(&mv), "-dt^du1");
    }

    #[test]
    fn parse_grammar_walkthrough() {
        let mv = parse_multivector("3/2*t^2*u1*du2", 3).unwrap();
        assert_eq!(mv.num_terms(), 1);
        let (b, m, c) = mv.flat_terms().next().unwrap();
        assert_eq!(c, &rat(3, 2));
        assert_eq!(m.exponents(), &[2, 1, 0]);
        assert_eq!(b, &Blade::new(false, IncreasingIndex::new(vec![2], 3).unwrap()));
        assert_eq!(format_multivector(&mv), "3/2*t^2*u1*du2");
    }

    #[test]
    fn format_examples() {
        assert_eq!(format_multivector(&PolyMultivector::zero(3, 1)), "0");
        assert_eq!(format_multivector(&-&PolyMultivector::euler_field(2)), "-u1*du1");
        let f = PolyMultivector::function(&Polynomial::var(3, 0) + &Polynomial::constant(3, int(2)));
        assert_eq!(format_multivector(&f), "2*1 + t*1");
        assert_eq!(parse_multivector("2*1 + t*1", 3).unwrap(), f);
        assert_eq!(parse_multivector("2 + t", 3).unwrap(), f);
        assert_eq!(parse_multivector("1", 3).unwrap(), PolyMultivector::function(Polynomial::constant(3, int(1))));
    }

    #[test]
    fn repeated_generator_is_zero() {
        let mv = parse_multivector("dt^dt", 3).unwrap();
        assert!(mv.is_zero());
        assert_eq!(mv.degree(), 2);
    }

    #[test]
    fn errors() {
        assert!(matches!(parse_multivector("u3*du1", 3), Err(Error::IndexOutOfRange { index: 3, n: 3 })));
        assert!(matches!(parse_multivector("du1 + dt^du1", 3), Err(Error::Degree(_))));
        assert!(matches!(parse_multivector("u1 * * du1", 3), Err(Error::Syntax { pos: 5, .. })));
        assert!(matches!(parse_multivector("du1 +", 3), Err(Error::Syntax { .. })));
        assert!(matches!(parse_multivector("", 3), Err(Error::Syntax { .. })));
        assert!(matches!(parse_multivector("du1 $", 3), Err(Error::Syntax { pos: 4, .. })));
        assert!(matches!(parse_multivector("1/0*du1", 3), Err(Error::Syntax { .. })));
    }

    #[test]
    fn sign_handling() {
        let mv = parse_multivector("-u1*du1 - u2*du2", 3).unwrap();
        assert_eq!(mv, -&PolyMultivector::euler_field(3));
        let mv = parse_multivector("du2^du1 + du1^du2", 3).unwrap();
        assert!(mv.is_zero());
    }
}
