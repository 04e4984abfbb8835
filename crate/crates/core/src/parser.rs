//! Text front end: polynomials, operator expressions and points.
//!
//! Grammar, loosest binding first:
//!
//! ```text
//! expr    := expr ('+' | '-') expr
//!          | expr ('*' | '/' | <juxtaposition>) expr
//!          | '-' expr | '+' expr
//!          | primary ('^' integer)?
//! primary := integer | 'i' | variable | 'D'variable | 'I' | '(' expr ')'
//! ```
//!
//! Identifiers are tokenised by longest match against the known names, so
//! `2xy` reads as `2·x·y` when `x` and `y` are variables. Division is only
//! allowed by non-zero constants.

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::field::{parse_scalar, GaussianRational, Rational};
use crate::polynomial::{MultiPoly, Point};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    /// Polynomials in the variables themselves.
    Symbol,
    /// Polynomials in `Dv` derivative tokens plus the identity `I`.
    Operator,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseContext {
    variables: Vec<String>,
    mode: Mode,
}

impl ParseContext {
    pub fn new<S: Into<String>>(variables: impl IntoIterator<Item = S>, mode: Mode) -> Result<Self> {
        let variables: Vec<String> = variables.into_iter().map(Into::into).collect();
        if variables.is_empty() {
            return Err(Error::InvalidVariables("at least one variable is required".into()));
        }
        for (k, v) in variables.iter().enumerate() {
            let mut chars = v.chars();
            let valid_start = chars.next().is_some_and(|c| c.is_ascii_alphabetic());
            if !valid_start || !chars.all(|c| c.is_ascii_alphanumeric() || c == '_') {
                return Err(Error::InvalidVariables(format!("`{v}` is not an identifier")));
            }
            if v == "i" || v == "I" {
                return Err(Error::InvalidVariables(format!("`{v}` is reserved")));
            }
            if variables[..k].contains(v) {
                return Err(Error::InvalidVariables(format!("`{v}` appears twice")));
            }
        }
        Ok(Self { variables, mode })
    }

    /// Symbol-mode context with variables named as in
    /// [`default_variables`](crate::polynomial::default_variables).
    pub fn symbols(dim: usize) -> Self {
        Self::new(crate::polynomial::default_variables(dim), Mode::Symbol).expect("default names are valid")
    }

    pub fn with_mode(&self, mode: Mode) -> Self {
        Self { variables: self.variables.clone(), mode }
    }

    pub fn variables(&self) -> &[String] {
        &self.variables
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn dim(&self) -> usize {
        self.variables.len()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Int(BigInt),
    Var(usize),
    Imag,
    Identity,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    End,
}

impl Tok {
    fn starts_primary(&self) -> bool {
        matches!(self, Tok::Int(_) | Tok::Var(_) | Tok::Imag | Tok::Identity | Tok::LParen)
    }
}

fn describe(tok: &Tok) -> &'static str {
    match tok {
        Tok::Int(_) => "number",
        Tok::Var(_) => "variable",
        Tok::Imag => "'i'",
        Tok::Identity => "'I'",
        Tok::Plus => "'+'",
        Tok::Minus => "'-'",
        Tok::Star => "'*'",
        Tok::Slash => "'/'",
        Tok::Caret => "'^'",
        Tok::LParen => "'('",
        Tok::RParen => "')'",
        Tok::End => "end of input",
    }
}

fn tokenize(text: &str, ctx: &ParseContext) -> Result<Vec<(Tok, usize)>> {
    // Name table for longest-match identifier scanning.
    let mut names: Vec<(String, Tok)> = vec![("i".into(), Tok::Imag)];
    for (j, v) in ctx.variables.iter().enumerate() {
        match ctx.mode {
            Mode::Symbol => names.push((v.clone(), Tok::Var(j))),
            Mode::Operator => names.push((format!("D{v}"), Tok::Var(j))),
        }
    }
    if ctx.mode == Mode::Operator {
        names.push(("I".into(), Tok::Identity));
    }

    let mut out = Vec::new();
    let mut pos = 0;
    while let Some(c) = text[pos..].chars().next() {
        let start = pos;
        if c.is_whitespace() {
            pos += c.len_utf8();
            continue;
        }
        let single = match c {
            '+' => Some(Tok::Plus),
            '-' | '−' => Some(Tok::Minus),
            '*' | '·' => Some(Tok::Star),
            '/' => Some(Tok::Slash),
            '^' => Some(Tok::Caret),
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            _ => None,
        };
        if let Some(tok) = single {
            pos += c.len_utf8();
            out.push((tok, start));
            continue;
        }
        if c.is_ascii_digit() {
            let len = text[pos..].find(|ch: char| !ch.is_ascii_digit()).unwrap_or(text.len() - pos);
            pos += len;
            out.push((Tok::Int(text[start..pos].parse().unwrap()), start));
            continue;
        }
        if c.is_ascii_alphabetic() {
            let rest = &text[pos..];
            let best = names
                .iter()
                .filter(|(n, _)| rest.starts_with(n.as_str()))
                .max_by_key(|(n, _)| n.len());
            match best {
                Some((n, tok)) => {
                    pos += n.len();
                    out.push((tok.clone(), start));
                }
                None => {
                    let len = rest
                        .find(|ch: char| !(ch.is_ascii_alphanumeric() || ch == '_'))
                        .unwrap_or(rest.len());
                    return Err(Error::UnknownVariable { name: rest[..len].to_string(), offset: start });
                }
            }
            continue;
        }
        return Err(Error::parse_at(text, start, format!("unexpected character {c:?}")));
    }
    out.push((Tok::End, text.len()));
    Ok(out)
}

const SUM_BP: (u8, u8) = (1, 2);
const PRODUCT_BP: (u8, u8) = (3, 4);
const UNARY_BP: u8 = 5;

struct Parser<'a> {
    text: &'a str,
    tokens: Vec<(Tok, usize)>,
    pos: usize,
    dim: usize,
}

impl Parser<'_> {
    fn peek(&self) -> &Tok {
        &self.tokens[self.pos].0
    }

    fn offset(&self) -> usize {
        self.tokens[self.pos].1
    }

    fn next(&mut self) -> (Tok, usize) {
        let t = self.tokens[self.pos].clone();
        if t.0 != Tok::End {
            self.pos += 1;
        }
        t
    }

    fn error(&self, message: impl Into<String>, expected: &[&str]) -> Error {
        Error::parse_expecting(
            self.text,
            self.offset(),
            message,
            expected.iter().map(|s| s.to_string()).collect(),
        )
    }

    fn expr(&mut self, min_bp: u8) -> Result<MultiPoly> {
        let mut lhs = self.prefix()?;
        loop {
            let tok = self.peek().clone();
            let (l_bp, r_bp) = match tok {
                Tok::Plus | Tok::Minus => SUM_BP,
                Tok::Star | Tok::Slash => PRODUCT_BP,
                ref t if t.starts_primary() => PRODUCT_BP,
                Tok::Caret => {
                    return Err(self.error("exponent applied to a compound expression; add parentheses", &[]))
                }
                Tok::RParen | Tok::End => break,
                _ => unreachable!("all tokens covered"),
            };
            if l_bp < min_bp {
                break;
            }
            let op_offset = self.offset();
            if matches!(tok, Tok::Plus | Tok::Minus | Tok::Star | Tok::Slash) {
                self.next();
            }
            let rhs = self.expr(r_bp)?;
            lhs = match tok {
                Tok::Plus => &lhs + &rhs,
                Tok::Minus => &lhs - &rhs,
                Tok::Slash => {
                    let divisor = constant_value(&rhs).ok_or_else(|| {
                        Error::parse_at(self.text, op_offset, "division by a non-constant expression")
                    })?;
                    let inv = divisor
                        .inv()
                        .map_err(|_| Error::parse_at(self.text, op_offset, "division by zero"))?;
                    lhs.scale(&inv)
                }
                _ => &lhs * &rhs,
            };
        }
        Ok(lhs)
    }

    fn prefix(&mut self) -> Result<MultiPoly> {
        const START: &[&str] = &["number", "variable", "'i'", "'('", "'-'"];
        let (tok, _) = self.next();
        let base = match tok {
            Tok::Minus => return Ok(-&self.expr(UNARY_BP)?),
            Tok::Plus => return self.expr(UNARY_BP),
            Tok::Int(n) => MultiPoly::constant(self.dim, GaussianRational::real(Rational::from_integer(n))),
            Tok::Imag => MultiPoly::constant(self.dim, GaussianRational::i()),
            Tok::Identity => MultiPoly::one(self.dim),
            Tok::Var(j) => MultiPoly::var(self.dim, j),
            Tok::LParen => {
                let inner = self.expr(0)?;
                if self.peek() != &Tok::RParen {
                    return Err(self.error(format!("unclosed parenthesis, found {}", describe(self.peek())), &["')'"]));
                }
                self.next();
                inner
            }
            other => {
                self.pos -= usize::from(other != Tok::End);
                return Err(self.error(format!("unexpected {}", describe(&other)), START));
            }
        };
        self.postfix_power(base)
    }

    fn postfix_power(&mut self, base: MultiPoly) -> Result<MultiPoly> {
        if self.peek() != &Tok::Caret {
            return Ok(base);
        }
        self.next();
        let Tok::Int(k) = self.peek().clone() else {
            return Err(self.error("exponent must be a non-negative integer", &["number"]));
        };
        let k = k
            .to_u32()
            .ok_or_else(|| self.error("exponent too large", &[]))?;
        self.next();
        let powered = base.pow(k);
        if self.peek() == &Tok::Caret {
            return Err(self.error("chained exponents are ambiguous; add parentheses", &[]));
        }
        Ok(powered)
    }
}

fn constant_value(p: &MultiPoly) -> Option<GaussianRational> {
    match p.degree() {
        -1 => Some(GaussianRational::zero()),
        0 => Some(p.terms().next().map(|(_, c)| c.clone()).unwrap()),
        _ => None,
    }
}

fn parse_with(text: &str, ctx: &ParseContext) -> Result<MultiPoly> {
    let tokens = tokenize(text, ctx)?;
    let mut parser = Parser { text, tokens, pos: 0, dim: ctx.dim() };
    let p = parser.expr(0)?;
    if parser.peek() != &Tok::End {
        return Err(parser.error(
            format!("unexpected {}", describe(parser.peek())),
            &["operator", "end of input"],
        ));
    }
    Ok(p)
}

/// Parses a polynomial in the context's variables.
pub fn parse_poly(text: &str, ctx: &ParseContext) -> Result<MultiPoly> {
    parse_with(text, &ctx.with_mode(Mode::Symbol))
}

/// Parses a constant-coefficient operator such as `Dx^2 + Dy^2 - I` and
/// returns its symbol `P`, with the operator equal to `P(−iD)`.
pub fn parse_operator(text: &str, ctx: &ParseContext) -> Result<MultiPoly> {
    Ok(parse_with(text, &ctx.with_mode(Mode::Operator))?.symbol_from_operator())
}

/// Parses `(a, b, …)` with any number of scalar coordinates.
pub fn parse_point_any(text: &str) -> Result<Point> {
    let open = text
        .find(|c: char| !c.is_whitespace())
        .filter(|&p| text[p..].starts_with('('))
        .ok_or_else(|| Error::parse_expecting(text, 0, "a point starts with '('", vec!["'('".into()]))?;
    let close = text
        .rfind(|c: char| !c.is_whitespace())
        .filter(|&p| text[p..].starts_with(')') && p > open)
        .ok_or_else(|| Error::parse_expecting(text, text.len(), "a point ends with ')'", vec!["')'".into()]))?;
    let body = &text[open + 1..close];
    let mut point = Vec::new();
    let mut start = open + 1;
    for part in body.split(',') {
        let value = parse_scalar(part).map_err(|e| match e {
            Error::Parse { offset, message, expected, .. } => {
                Error::parse_expecting(text, start + offset, message, expected)
            }
            other => other,
        })?;
        point.push(value);
        start += part.len() + 1;
    }
    Ok(point)
}

/// Parses a point and checks it has `dim` coordinates.
pub fn parse_point(text: &str, dim: usize) -> Result<Point> {
    let p = parse_point_any(text)?;
    if p.len() != dim {
        return Err(Error::ArityMismatch { expected: dim, found: p.len() });
    }
    Ok(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::MultiIndex;
    use crate::polynomial::{apply_operator, ExpPoly};
    use proptest::prelude::*;

    fn s(t: &str) -> GaussianRational {
        parse_scalar(t).unwrap()
    }

    fn poly(dim: usize, terms: &[(&[u32], &str)]) -> MultiPoly {
        MultiPoly::from_terms(dim, terms.iter().map(|(a, c)| (MultiIndex::new(a.to_vec()), s(c))))
    }

    fn xy() -> ParseContext {
        ParseContext::symbols(2)
    }

    #[test]
    fn symbol_inputs() {
        assert_eq!(parse_poly("-x^2-y^2", &xy()).unwrap(), poly(2, &[(&[2, 0], "-1"), (&[0, 2], "-1")]));
        assert_eq!(parse_poly("-x^2 - i y", &xy()).unwrap(), poly(2, &[(&[2, 0], "-1"), (&[0, 1], "-i")]));
        assert_eq!(
            parse_poly("2 + 3x - 2x y + y^2", &xy()).unwrap(),
            poly(2, &[(&[0, 0], "2"), (&[1, 0], "3"), (&[1, 1], "-2"), (&[0, 2], "1")])
        );
        assert_eq!(
            parse_poly("-x/2 + y - (3/2 - i/2)", &xy()).unwrap(),
            poly(2, &[(&[1, 0], "-1/2"), (&[0, 1], "1"), (&[0, 0], "-3/2+1/2i")])
        );
        assert_eq!(
            parse_poly("(i x - 1)^2 + (i y - i)^2", &xy()).unwrap(),
            poly(2, &[(&[2, 0], "-1"), (&[1, 0], "-2i"), (&[0, 2], "-1"), (&[0, 1], "2")])
        );
    }

    #[test]
    fn precedence() {
        assert_eq!(parse_poly("-x^2", &xy()).unwrap(), poly(2, &[(&[2, 0], "-1")]));
        assert_eq!(parse_poly("2x y^2", &xy()).unwrap(), poly(2, &[(&[1, 2], "2")]));
        assert_eq!(parse_poly("2xy^2", &xy()).unwrap(), poly(2, &[(&[1, 2], "2")]));
        assert_eq!(parse_poly("1 - x - y", &xy()).unwrap(), poly(2, &[(&[0, 0], "1"), (&[1, 0], "-1"), (&[0, 1], "-1")]));
        assert_eq!(parse_poly("x*y/4*2", &xy()).unwrap(), poly(2, &[(&[1, 1], "1/2")]));
        assert_eq!(parse_poly("(x+y)^2 - 2x*y", &xy()).unwrap(), poly(2, &[(&[2, 0], "1"), (&[0, 2], "1")]));
    }

    #[test]
    fn operator_inputs() {
        let xyz = ParseContext::symbols(3);
        assert_eq!(parse_operator("Dx^2 + Dy^2", &xy()).unwrap(), poly(2, &[(&[2, 0], "-1"), (&[0, 2], "-1")]));
        assert_eq!(
            parse_operator("Dx^2 + Dy^2 - I", &xy()).unwrap(),
            poly(2, &[(&[2, 0], "-1"), (&[0, 2], "-1"), (&[0, 0], "-1")])
        );
        assert_eq!(
            parse_operator("Dx*Dy + Dx*Dz + Dy*Dz", &xyz).unwrap(),
            poly(3, &[(&[1, 1, 0], "-1"), (&[1, 0, 1], "-1"), (&[0, 1, 1], "-1")])
        );
    }

    #[test]
    fn multi_character_variables() {
        let ctx = ParseContext::new(["x1", "x2", "x12"], Mode::Symbol).unwrap();
        assert_eq!(parse_poly("x12 x1", &ctx).unwrap(), poly(3, &[(&[1, 0, 1], "1")]));
        assert_eq!(parse_poly("x1x2", &ctx).unwrap(), poly(3, &[(&[1, 1, 0], "1")]));
    }

    #[test]
    fn errors() {
        assert_eq!(
            parse_poly("x + w", &xy()),
            Err(Error::UnknownVariable { name: "w".into(), offset: 4 })
        );
        assert!(matches!(parse_operator("x + Dy", &xy()), Err(Error::UnknownVariable { offset: 0, .. })));
        assert!(matches!(parse_poly("I + x", &xy()), Err(Error::UnknownVariable { .. })));
        for (text, at) in [("x +", 3), ("(x + y", 6), ("x ^ y", 4), ("x / y", 2), ("x / 0", 2), ("x )", 2), ("x^2^3", 3), ("3 $", 2)] {
            match parse_poly(text, &xy()) {
                Err(Error::Parse { offset, .. }) => assert_eq!(offset, at, "{text:?}"),
                other => panic!("{text:?} gave {other:?}"),
            }
        }
        match parse_poly("x +\n  * y", &xy()) {
            Err(Error::Parse { line, column, expected, .. }) => {
                assert_eq!((line, column), (2, 3));
                assert!(expected.contains(&"variable".to_string()));
            }
            other => panic!("{other:?}"),
        }
        assert!(matches!(ParseContext::new(["x", "i"], Mode::Symbol), Err(Error::InvalidVariables(_))));
        assert!(matches!(ParseContext::new(["x", "x"], Mode::Symbol), Err(Error::InvalidVariables(_))));
    }

    #[test]
    fn points() {
        assert_eq!(parse_point("(1,i)", 2).unwrap(), vec![s("1"), s("i")]);
        assert_eq!(parse_point("(0,0,0)", 3).unwrap(), vec![s("0"); 3]);
        assert_eq!(parse_point(" (i, 0) ", 2).unwrap(), vec![s("i"), s("0")]);
        assert_eq!(parse_point("(1/2-3i)", 1).unwrap(), vec![s("1/2-3i")]);
        assert_eq!(parse_point("(1,i)", 3), Err(Error::ArityMismatch { expected: 3, found: 2 }));
        assert!(matches!(parse_point("1,i", 2), Err(Error::Parse { offset: 0, .. })));
        assert!(matches!(parse_point("(1,x)", 2), Err(Error::Parse { offset: 3, .. })));
    }

    fn arb_poly(dim: usize) -> impl Strategy<Value = MultiPoly> {
        proptest::collection::vec(
            (proptest::collection::vec(0u32..4, dim), -9i64..10, -9i64..10, 1i64..5),
            0..6,
        )
        .prop_map(move |terms| {
            MultiPoly::from_terms(
                dim,
                terms.into_iter().map(|(e, re, im, den)| {
                    let c = &GaussianRational::complex(re, im) * &GaussianRational::ratio(1, den);
                    (MultiIndex::new(e), c)
                }),
            )
        })
    }

    proptest! {
        #[test]
        fn format_parse_round_trip(p in arb_poly(3)) {
            let ctx = ParseContext::symbols(3);
            prop_assert_eq!(parse_poly(&p.format_with(ctx.variables()), &ctx).unwrap(), p);
        }

        #[test]
        fn operator_text_matches_direct_differentiation(
            terms in proptest::collection::vec((proptest::collection::vec(0u32..3, 2), -5i64..6), 1..5),
            u in arb_poly(2),
        ) {
            // Render the operator text from a term list, then compare the
            // parsed operator against differentiating term by term.
            let text = terms
                .iter()
                .map(|(e, c)| format!("({c})*Dx^{}*Dy^{}", e[0], e[1]))
                .collect::<Vec<_>>()
                .join(" + ");
            let symbol = parse_operator(&text, &xy()).unwrap();
            let applied = apply_operator(&symbol, &ExpPoly::new(vec![s("0"), s("0")], u.clone()));
            let mut direct = MultiPoly::zero(2);
            for (e, c) in &terms {
                let d = u.derivative(&MultiIndex::new(e.clone()));
                direct = &direct + &d.scale(&GaussianRational::from(*c));
            }
            prop_assert_eq!(applied.poly(), &direct);
        }
    }
}
