//! Text grammar for coefficients, symbols, and Weyl elements, matching the
//! canonical printers: rationals `p/q`, `w` for the quadratic generator,
//! parameter names verbatim, `t^a`/`tau^b` with integer exponents, odd
//! tokens `x1 x2 y1 y2`, `d^k` in the Weyl grammar, `+ - * / ^` and
//! parentheses, juxtaposition as product.

use crate::coeff::Coefficient;
use crate::grassmann::OddVar;
use crate::poly::Param;
use crate::psymbols::PSymbol;
use crate::weyl::WeylElement;
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub pos: usize,
    pub msg: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "parse error at byte {}: {}", self.pos, self.msg)
    }
}

impl std::error::Error for ParseError {}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(i64),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn tokenize(input: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let mut out = Vec::new();
    let bytes = input.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        match c {
            ' ' | '\t' | '\n' => i += 1,
            '+' => {
                out.push((i, Tok::Plus));
                i += 1;
            }
            '-' => {
                out.push((i, Tok::Minus));
                i += 1;
            }
            '*' => {
                out.push((i, Tok::Star));
                i += 1;
            }
            '/' => {
                out.push((i, Tok::Slash));
                i += 1;
            }
            '^' => {
                out.push((i, Tok::Caret));
                i += 1;
            }
            '(' => {
                out.push((i, Tok::LParen));
                i += 1;
            }
            ')' => {
                out.push((i, Tok::RParen));
                i += 1;
            }
            '0'..='9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let text = &input[start..i];
                let value = text.parse::<i64>().map_err(|_| ParseError {
                    pos: start,
                    msg: format!("integer out of range: {text}"),
                })?;
                out.push((start, Tok::Int(value)));
            }
            'a'..='z' | 'A'..='Z' | '_' => {
                let start = i;
                while i < bytes.len()
                    && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_')
                {
                    i += 1;
                }
                out.push((start, Tok::Ident(input[start..i].to_string())));
            }
            other => {
                return Err(ParseError {
                    pos: i,
                    msg: format!("unexpected character {other:?}"),
                })
            }
        }
    }
    Ok(out)
}

/// Which generators the grammar admits.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Grammar {
    /// coefficients only
    Coefficient,
    /// `t`, `tau`, odd tokens
    Symbol,
    /// `t`, `d`
    Weyl,
}

struct Parser<'a> {
    toks: &'a [(usize, Tok)],
    pos: usize,
    grammar: Grammar,
    end: usize,
}

/// Intermediate value: every grammar parses into symbols internally; the
/// Weyl grammar reuses the tau slot for `d` powers (always nonnegative).
type Value = PSymbol;

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn here(&self) -> usize {
        self.toks
            .get(self.pos)
            .map(|(p, _)| *p)
            .unwrap_or(self.end)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(_, t)| t.clone());
        self.pos += 1;
        t
    }

    fn err(&self, msg: impl Into<String>) -> ParseError {
        ParseError {
            pos: self.here(),
            msg: msg.into(),
        }
    }

    fn expr(&mut self) -> Result<Value, ParseError> {
        let mut negate = false;
        if matches!(self.peek(), Some(Tok::Minus)) {
            self.bump();
            negate = true;
        } else if matches!(self.peek(), Some(Tok::Plus)) {
            self.bump();
        }
        let mut acc = self.term()?;
        if negate {
            acc = acc.neg();
        }
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.bump();
                    let t = self.term()?;
                    acc = acc.add(&t);
                }
                Some(Tok::Minus) => {
                    self.bump();
                    let t = self.term()?;
                    acc = acc.sub(&t);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Value, ParseError> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.bump();
                    let f = self.factor()?;
                    acc = acc.mul(&f);
                }
                Some(Tok::Slash) => {
                    self.bump();
                    let pos = self.here();
                    let f = self.factor()?;
                    let c = as_coefficient(&f).ok_or(ParseError {
                        pos,
                        msg: "division requires a coefficient-valued divisor".into(),
                    })?;
                    if c.is_zero() {
                        return Err(ParseError {
                            pos,
                            msg: "division by zero".into(),
                        });
                    }
                    let inv = c.inv().expect("nonzero");
                    acc = acc.scale(&inv);
                }
                // juxtaposition
                Some(Tok::Int(_)) | Some(Tok::Ident(_)) | Some(Tok::LParen) => {
                    let f = self.factor()?;
                    acc = acc.mul(&f);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<Value, ParseError> {
        let base_pos = self.here();
        let base = self.atom()?;
        if matches!(self.peek(), Some(Tok::Caret)) {
            self.bump();
            let mut sign = 1i64;
            if matches!(self.peek(), Some(Tok::Minus)) {
                self.bump();
                sign = -1;
            }
            let exp_pos = self.here();
            let Some(Tok::Int(e)) = self.bump() else {
                return Err(ParseError {
                    pos: exp_pos,
                    msg: "expected an integer exponent".into(),
                });
            };
            let e = sign * e;
            return power(&base, e).ok_or(ParseError {
                pos: base_pos,
                msg: "exponent not applicable to this base".into(),
            });
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Value, ParseError> {
        let pos = self.here();
        match self.bump() {
            Some(Tok::Int(n)) => Ok(PSymbol::scalar(Coefficient::from_int(n))),
            Some(Tok::LParen) => {
                let inner = self.expr()?;
                match self.bump() {
                    Some(Tok::RParen) => Ok(inner),
                    _ => Err(ParseError {
                        pos: self.here(),
                        msg: "expected )".into(),
                    }),
                }
            }
            Some(Tok::Ident(name)) => self.ident(&name, pos),
            other => Err(ParseError {
                pos,
                msg: format!("expected a value, found {other:?}"),
            }),
        }
    }

    fn ident(&mut self, name: &str, pos: usize) -> Result<Value, ParseError> {
        match (self.grammar, name) {
            (_, "w") => Ok(PSymbol::scalar(Coefficient::omega())),
            (Grammar::Symbol, "t") | (Grammar::Weyl, "t") => Ok(PSymbol::t_pow(1)),
            (Grammar::Symbol, "tau") => Ok(PSymbol::tau_pow(1)),
            (Grammar::Weyl, "d") => Ok(PSymbol::tau_pow(1)), // tau slot stores d powers
            (Grammar::Symbol, _) if odd_token(name).is_some() => {
                Ok(PSymbol::odd_word(&[odd_token(name).unwrap()]))
            }
            (Grammar::Coefficient, "t" | "tau" | "d") => Err(ParseError {
                pos,
                msg: format!("{name} is not allowed in a coefficient"),
            }),
            _ => {
                if name == "tau" || name == "d" || odd_token(name).is_some() {
                    return Err(ParseError {
                        pos,
                        msg: format!("{name} is not allowed in this grammar"),
                    });
                }
                Ok(PSymbol::scalar(Coefficient::param(Param::from_name(name))))
            }
        }
    }
}

fn odd_token(name: &str) -> Option<OddVar> {
    let (head, tail) = name.split_at(1);
    let idx: u8 = tail.parse().ok()?;
    if !(1..=crate::grassmann::MAX_INDEX).contains(&idx) {
        return None;
    }
    match head {
        "x" => Some(OddVar::Xi(idx)),
        "y" => Some(OddVar::Eta(idx)),
        _ => None,
    }
}

fn as_coefficient(v: &Value) -> Option<Coefficient> {
    if v.is_zero() {
        return Some(Coefficient::zero());
    }
    if v.num_terms() != 1 {
        return None;
    }
    let (k, c) = v.iter().next().unwrap();
    (k.t_exp == 0 && k.tau_exp == 0 && k.odd.is_one()).then(|| c.clone())
}

fn power(base: &Value, e: i64) -> Option<Value> {
    if let Some(c) = as_coefficient(base) {
        return c.powi(e).ok().map(PSymbol::scalar);
    }
    // single monomial in t / tau (or d) without odd part: shift exponents
    if base.num_terms() == 1 {
        let (k, c) = base.iter().next().unwrap();
        if k.odd.is_one() && c.is_one() {
            return Some(PSymbol::term(
                Coefficient::one(),
                k.t_exp * e,
                k.tau_exp * e,
                k.odd,
            ));
        }
    }
    // general nonnegative powers by repeated multiplication
    if e >= 0 {
        let mut acc = PSymbol::one();
        for _ in 0..e {
            acc = acc.mul(base);
        }
        return Some(acc);
    }
    None
}

fn parse_value(input: &str, grammar: Grammar) -> Result<Value, ParseError> {
    let toks = tokenize(input)?;
    let mut p = Parser {
        toks: &toks,
        pos: 0,
        grammar,
        end: input.len(),
    };
    let v = p.expr()?;
    if p.pos != toks.len() {
        return Err(p.err("trailing input"));
    }
    Ok(v)
}

/// Parses a coefficient expression.
pub fn parse_coefficient(input: &str) -> Result<Coefficient, ParseError> {
    let v = parse_value(input, Grammar::Coefficient)?;
    as_coefficient(&v).ok_or(ParseError {
        pos: 0,
        msg: "expression is not a pure coefficient".into(),
    })
}

/// Parses a symbol expression (`t`, `tau`, odd tokens, coefficients).
pub fn parse_symbol(input: &str) -> Result<PSymbol, ParseError> {
    parse_value(input, Grammar::Symbol)
}

/// Parses a `tau`-free symbol, for the contact-bracket surface.
pub fn parse_superfunction(input: &str) -> Result<PSymbol, ParseError> {
    let v = parse_value(input, Grammar::Symbol)?;
    if v.iter().any(|(k, _)| k.tau_exp != 0) {
        return Err(ParseError {
            pos: 0,
            msg: "tau is not allowed in a contact-bracket operand".into(),
        });
    }
    Ok(v)
}

/// Parses a Weyl-algebra expression (`t^a d^k`); `d` powers must be
/// nonnegative.
pub fn parse_weyl(input: &str) -> Result<WeylElement, ParseError> {
    let v = parse_value(input, Grammar::Weyl)?;
    let mut out = WeylElement::zero();
    for (k, c) in v.iter() {
        if k.tau_exp < 0 {
            return Err(ParseError {
                pos: 0,
                msg: "negative powers of d are not defined".into(),
            });
        }
        out.add_term(k.t_exp, k.tau_exp as u32, c.clone());
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grassmann::OddMonomial;

    #[test]
    fn coefficient_grammar() {
        assert_eq!(parse_coefficient("3/4").unwrap(), Coefficient::from_ratio(3, 4));
        assert_eq!(
            parse_coefficient("w*w + 2").unwrap(),
            Coefficient::zero()
        );
        let a = Coefficient::alpha();
        assert_eq!(
            parse_coefficient("(alpha+1)*(alpha-1)").unwrap(),
            &(&a * &a) - &Coefficient::one()
        );
        assert_eq!(
            parse_coefficient("(alpha^2-1)/(alpha-1)").unwrap(),
            &a + &Coefficient::one()
        );
        assert!(parse_coefficient("t").is_err());
        assert!(parse_coefficient("1/0").is_err());
    }

    #[test]
    fn symbol_grammar() {
        let got = parse_symbol("t^2 tau^-1 x1 y2").unwrap();
        let mask = OddMonomial::from_word(&[OddVar::Xi(1), OddVar::Eta(2)]).unwrap().1;
        assert_eq!(got, PSymbol::term(Coefficient::one(), 2, -1, mask));
        // anticommutation through juxtaposition
        let a = parse_symbol("y1 x1").unwrap();
        let b = parse_symbol("x1 y1").unwrap();
        assert_eq!(a, b.neg());
        assert!(parse_symbol("x1 x1").unwrap().is_zero());
        // position-tagged errors
        let e = parse_symbol("t^2 %").unwrap_err();
        assert_eq!(e.pos, 4);
    }

    #[test]
    fn weyl_grammar() {
        let got = parse_weyl("t^2 d + 3*d^2").unwrap();
        let mut expect = WeylElement::term(Coefficient::one(), 2, 1);
        expect.add_term(0, 2, Coefficient::from_int(3));
        assert_eq!(got, expect);
        assert!(parse_weyl("d^-1").is_err());
        assert!(parse_weyl("tau").is_err());
    }

    #[test]
    fn print_parse_round_trip() {
        let cases = [
            "t^2 tau^-1 x1 y2",
            "h*x1 y1 - 2*t^2 tau^-1",
            "(1/2*alpha + 3)*t x2 + w*tau^2",
            "alpha*t^-3 x1 x2 y1 y2 - 1/2",
        ];
        for c in cases {
            let v = parse_symbol(c).unwrap();
            let printed = v.to_text();
            let reparsed = parse_symbol(&printed).unwrap();
            assert_eq!(v, reparsed, "{c} -> {printed}");
        }
    }
}
