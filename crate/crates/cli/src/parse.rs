//! Text formats: polynomials, field elements, shift lists, class functions.
//!
//! Polynomial grammar (whitespace ignored):
//!
//! ```text
//! expr  := ['-'] term (('+' | '-') term)*
//! term  := coeff | coeff '*' mono | mono
//! mono  := 'x' ('^' uint)?
//! coeff := uint | '(' uint (':' uint)* ')'
//! ```
//!
//! A parenthesised coefficient lists the coordinates of an extension-field
//! element in the power basis, lowest first. Integers are reduced mod `p`.

use std::path::Path;

use shortint::{BuiltinKind, ClassFunction, CycleType, FieldCtx, FieldElement, Poly, Rational};
use thiserror::Error;

/// Largest exponent accepted by the parser.
pub const MAX_PARSE_DEGREE: u64 = 4096;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("syntax error at offset {offset}: {message}")]
    Syntax { offset: usize, message: String },
    #[error("expected a polynomial of degree at least {0}")]
    DegreeZero(usize),
    #[error("{0}")]
    Invalid(String),
}

fn syntax(offset: usize, message: impl Into<String>) -> ParseError {
    ParseError::Syntax { offset, message: message.into() }
}

struct Parser<'a> {
    text: &'a str,
    pos: usize,
    ctx: &'a FieldCtx,
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while let Some(c) = self.text[self.pos..].chars().next() {
            if !c.is_whitespace() {
                break;
            }
            self.pos += c.len_utf8();
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.text[self.pos..].chars().next()
    }

    fn bump(&mut self) {
        if let Some(c) = self.text[self.pos..].chars().next() {
            self.pos += c.len_utf8();
        }
    }

    fn describe(c: Option<char>) -> String {
        match c {
            Some(c) => format!("unexpected '{c}'"),
            None => "unexpected end of input".to_string(),
        }
    }

    /// Digits reduced mod `p`.
    fn uint_mod(&mut self) -> Result<u64, ParseError> {
        let p = self.ctx.p() as u128;
        let start = self.pos;
        let mut value: u128 = 0;
        let mut seen = false;
        while let Some(c) = self.text[self.pos..].chars().next() {
            let Some(d) = c.to_digit(10) else { break };
            value = (value * 10 + d as u128) % p;
            seen = true;
            self.pos += 1;
        }
        if !seen {
            let c = self.text[start..].chars().next();
            return Err(syntax(start, format!("{}, expected a number", Self::describe(c))));
        }
        Ok(value as u64)
    }

    fn exponent(&mut self) -> Result<u64, ParseError> {
        let start = self.pos;
        let mut value: u64 = 0;
        let mut seen = false;
        while let Some(d) = self.text[self.pos..].chars().next().and_then(|c| c.to_digit(10)) {
            value = value.saturating_mul(10).saturating_add(d as u64);
            seen = true;
            self.pos += 1;
        }
        if !seen {
            let c = self.text[start..].chars().next();
            return Err(syntax(start, format!("{}, expected an exponent", Self::describe(c))));
        }
        if value > MAX_PARSE_DEGREE {
            return Err(syntax(start, format!("exponent above {MAX_PARSE_DEGREE}")));
        }
        Ok(value)
    }

    fn coeff(&mut self) -> Result<FieldElement, ParseError> {
        self.skip_ws();
        if self.peek() == Some('(') {
            let open = self.pos;
            self.bump();
            let mut parts = Vec::new();
            loop {
                self.skip_ws();
                parts.push(self.uint_mod()?);
                match self.peek() {
                    Some(':') => self.bump(),
                    Some(')') => {
                        self.bump();
                        break;
                    }
                    c => return Err(syntax(self.pos, format!("{}, expected ':' or ')'", Self::describe(c)))),
                }
            }
            return self
                .ctx
                .from_coeffs(&parts)
                .map_err(|e| syntax(open, format!("bad field element: {e}")));
        }
        Ok(self.ctx.from_u64(self.uint_mod()?))
    }

    /// After 'x' has been consumed.
    fn mono_tail(&mut self) -> Result<u64, ParseError> {
        if self.peek() == Some('^') {
            self.bump();
            self.skip_ws();
            self.exponent()
        } else {
            Ok(1)
        }
    }

    fn term(&mut self) -> Result<(FieldElement, u64), ParseError> {
        match self.peek() {
            Some('x') => {
                self.bump();
                Ok((self.ctx.one(), self.mono_tail()?))
            }
            Some(c) if c.is_ascii_digit() || c == '(' => {
                let c = self.coeff()?;
                if self.peek() == Some('*') {
                    self.bump();
                    match self.peek() {
                        Some('x') => {
                            self.bump();
                            Ok((c, self.mono_tail()?))
                        }
                        other => Err(syntax(self.pos, format!("{}, expected 'x'", Self::describe(other)))),
                    }
                } else {
                    Ok((c, 0))
                }
            }
            other => Err(syntax(self.pos, format!("{}, expected a term", Self::describe(other)))),
        }
    }

    fn expr(&mut self) -> Result<Poly, ParseError> {
        let mut coeffs: Vec<FieldElement> = Vec::new();
        let mut negate = false;
        if self.peek() == Some('-') {
            self.bump();
            negate = true;
        }
        loop {
            let (c, e) = self.term()?;
            let e = e as usize;
            if coeffs.len() <= e {
                coeffs.resize(e + 1, self.ctx.zero());
            }
            let c = if negate { self.ctx.neg(&c) } else { c };
            coeffs[e] = self.ctx.add(&coeffs[e], &c);
            match self.peek() {
                Some('+') => negate = false,
                Some('-') => negate = true,
                None => break,
                other => {
                    return Err(syntax(self.pos, format!("{}, expected '+', '-' or end", Self::describe(other))))
                }
            }
            self.bump();
        }
        Ok(Poly::new(self.ctx, coeffs))
    }
}

/// Parses a polynomial over `ctx`.
pub fn parse_poly(text: &str, ctx: &FieldCtx) -> Result<Poly, ParseError> {
    let mut parser = Parser { text, pos: 0, ctx };
    let poly = parser.expr()?;
    Ok(poly)
}

/// Parses a monic polynomial of degree at least `min_degree`.
pub fn parse_monic(text: &str, ctx: &FieldCtx, min_degree: usize) -> Result<Poly, ParseError> {
    let f = parse_poly(text, ctx)?;
    match f.degree() {
        Some(d) if d >= min_degree => {}
        _ => return Err(ParseError::DegreeZero(min_degree)),
    }
    if !f.is_monic() {
        return Err(ParseError::Invalid(format!("{f} is not monic")));
    }
    Ok(f)
}

/// One field element: an integer (optionally negative), `a0:a1:...`, or
/// `(a0:a1:...)`.
pub fn parse_element(text: &str, ctx: &FieldCtx) -> Result<FieldElement, ParseError> {
    let t = text.trim();
    let t = t.strip_prefix('(').and_then(|s| s.strip_suffix(')')).unwrap_or(t);
    let bad = || ParseError::Invalid(format!("bad field element '{text}'"));
    if t.contains(':') {
        let parts = t
            .split(':')
            .map(|s| s.trim().parse::<u64>().map(|v| v % ctx.p()).map_err(|_| bad()))
            .collect::<Result<Vec<_>, _>>()?;
        return ctx.from_coeffs(&parts).map_err(|_| bad());
    }
    let v: i128 = t.parse().map_err(|_| bad())?;
    Ok(ctx.from_u64(v.rem_euclid(ctx.p() as i128) as u64))
}

/// Comma-separated shifts, which must be distinct.
pub fn parse_shifts(text: &str, ctx: &FieldCtx) -> Result<Vec<FieldElement>, ParseError> {
    let shifts = text
        .split(',')
        .map(|s| parse_element(s, ctx))
        .collect::<Result<Vec<_>, _>>()?;
    for (i, h) in shifts.iter().enumerate() {
        if shifts[..i].contains(h) {
            return Err(ParseError::Invalid(format!("shift {h} repeated")));
        }
    }
    Ok(shifts)
}

/// A rational `num/den` or an integer.
pub fn parse_rational(text: &str) -> Result<Rational, ParseError> {
    let t = text.trim();
    let bad = || ParseError::Invalid(format!("bad rational '{text}'"));
    match t.split_once('/') {
        Some((n, d)) => {
            let n: i128 = n.trim().parse().map_err(|_| bad())?;
            let d: i128 = d.trim().parse().map_err(|_| bad())?;
            if d == 0 {
                return Err(bad());
            }
            Ok(Rational::new(n, d))
        }
        None => Ok(Rational::from_integer(t.parse().map_err(|_| bad())?)),
    }
}

/// Custom class function file: one `p1,p2,...=value` line per partition
/// (parts descending). Blank lines and `#` comments are skipped; missing
/// partitions are 0, as is the value on non-squarefree inputs.
pub fn parse_phi_table(name: &str, text: &str, d: usize) -> Result<ClassFunction<Rational>, ParseError> {
    let mut entries = Vec::new();
    for (n, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (lhs, rhs) = line
            .split_once('=')
            .ok_or_else(|| ParseError::Invalid(format!("line {}: expected 'parts=value'", n + 1)))?;
        let lam: CycleType = lhs
            .trim()
            .parse()
            .map_err(|_| ParseError::Invalid(format!("line {}: bad partition '{}'", n + 1, lhs.trim())))?;
        if lam.degree() != d {
            return Err(ParseError::Invalid(format!("line {}: {lam} is not a partition of {d}", n + 1)));
        }
        entries.push((lam, parse_rational(rhs).map_err(|e| ParseError::Invalid(format!("line {}: {e}", n + 1)))?));
    }
    ClassFunction::from_table(name, d, entries, Rational::from_integer(0))
        .map_err(|e| ParseError::Invalid(e.to_string()))
}

/// `prime`, `mu`, `dr:R` or `file:PATH`, instantiated at degree `d`.
pub fn parse_phi(text: &str, d: usize) -> Result<ClassFunction<Rational>, ParseError> {
    let t = text.trim();
    let kind = match t {
        "prime" => BuiltinKind::Prime,
        "mu" => BuiltinKind::Moebius,
        _ => {
            if let Some(r) = t.strip_prefix("dr:") {
                let r: u32 = r.parse().map_err(|_| ParseError::Invalid(format!("bad divisor order in '{t}'")))?;
                BuiltinKind::Divisor(r)
            } else if let Some(path) = t.strip_prefix("file:") {
                let body = std::fs::read_to_string(Path::new(path))
                    .map_err(|e| ParseError::Invalid(format!("cannot read {path}: {e}")))?;
                return parse_phi_table(t, &body, d);
            } else {
                return Err(ParseError::Invalid(format!("unknown class function '{t}'")));
            }
        }
    };
    ClassFunction::builtin(kind, d).map_err(|e| ParseError::Invalid(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use shortint::{make_extension, make_prime_field};

    fn ints(f: &Poly) -> Vec<u64> {
        f.coeffs().iter().map(|c| f.ctx().prime_field_value(c).unwrap()).collect()
    }

    #[test]
    fn examples() {
        let f7 = make_prime_field(7).unwrap();
        assert_eq!(ints(&parse_poly("x^4-2*x^2", &f7).unwrap()), vec![0, 0, 5, 0, 1]);
        assert_eq!(ints(&parse_poly("3", &f7).unwrap()), vec![3]);
        assert_eq!(
            parse_poly("x^^2", &f7).unwrap_err(),
            ParseError::Syntax { offset: 2, message: "unexpected '^', expected an exponent".into() }
        );
        assert_eq!(ints(&parse_poly(" - x + 10 * x ^ 3 ", &f7).unwrap()), vec![0, 6, 0, 3]);
        assert_eq!(ints(&parse_poly("x+x+x", &f7).unwrap()), vec![0, 3]);
        assert_eq!(ints(&parse_poly("x^4+x^3+3*x^2", &f7).unwrap()), vec![0, 0, 3, 1, 1]);
        assert!(parse_poly("7", &f7).unwrap().is_zero());
    }

    #[test]
    fn errors_have_offsets() {
        let f7 = make_prime_field(7).unwrap();
        let off = |s: &str| match parse_poly(s, &f7) {
            Err(ParseError::Syntax { offset, .. }) => offset,
            other => panic!("{other:?}"),
        };
        assert_eq!(off(""), 0);
        assert_eq!(off("x +"), 3);
        assert_eq!(off("2*"), 2);
        assert_eq!(off("2*3"), 2);
        assert_eq!(off("x y"), 2);
        assert_eq!(off("x^100000"), 2);
        assert_eq!(off("--x"), 1);
    }

    #[test]
    fn extension_coefficients() {
        let f25 = make_extension(&make_prime_field(5).unwrap(), 2, 0).unwrap();
        let f = parse_poly("x^2 + (1:2)*x + (3:0)", &f25).unwrap();
        assert_eq!(f.coeff(1), f25.from_coeffs(&[1, 2]).unwrap());
        assert_eq!(f.coeff(0), f25.from_u64(3));
        assert_eq!(parse_poly(&f.to_string(), &f25).unwrap(), f);
        assert!(parse_poly("(1:2:3)*x", &f25).is_err());
    }

    #[test]
    fn monic_and_degree_checks() {
        let f7 = make_prime_field(7).unwrap();
        assert_eq!(parse_monic("3", &f7, 2).unwrap_err(), ParseError::DegreeZero(2));
        assert!(matches!(parse_monic("2*x^3", &f7, 2), Err(ParseError::Invalid(_))));
        assert!(parse_monic("x^3 + 1", &f7, 2).is_ok());
    }

    #[test]
    fn shifts_and_elements() {
        let f7 = make_prime_field(7).unwrap();
        let h = parse_shifts("0, 1,-1", &f7).unwrap();
        assert_eq!(h, vec![f7.zero(), f7.one(), f7.from_u64(6)]);
        assert!(parse_shifts("1,8", &f7).is_err());
        let f9 = make_extension(&make_prime_field(3).unwrap(), 2, 0).unwrap();
        assert_eq!(parse_element("1:2", &f9).unwrap(), f9.from_coeffs(&[1, 2]).unwrap());
        assert_eq!(parse_element("(0:1)", &f9).unwrap(), f9.from_coeffs(&[0, 1]).unwrap());
    }

    #[test]
    fn class_function_specs() {
        let phi = parse_phi("dr:3", 4).unwrap();
        assert_eq!(phi.mean_constant(), Rational::from_integer(15));
        assert!(parse_phi("dr:x", 4).is_err());
        assert!(parse_phi("nope", 4).is_err());
        let table = parse_phi_table("t", "# cycles\n3=1\n2,1 = -1/2\n\n", 3).unwrap();
        assert_eq!(table.value(&"2,1".parse().unwrap()), Some(&Rational::new(-1, 2)));
        assert_eq!(table.value(&"1,1,1".parse().unwrap()), Some(&Rational::from_integer(0)));
        assert!(parse_phi_table("t", "1,2=1", 3).is_err());
        assert!(parse_phi_table("t", "2,2=1", 3).is_err());
        assert!(parse_phi_table("t", "3", 3).is_err());
    }
}
