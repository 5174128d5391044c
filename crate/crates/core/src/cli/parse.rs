//! Operator expressions. Grammar:
//!
//! ```text
//! operator := sum
//! sum      := ["+"|"-"] prod { ("+"|"-") prod }
//! prod     := power { ("*"|"/") power }
//! power    := atom [ "^" nat ]
//! atom     := integer | "z" | "D" | "theta" | "(" operator ")"
//! ```
//!
//! Multiplication is explicit and non-commutative. A divisor must be a
//! nonzero rational function. D and theta cannot be mixed.

use num_bigint::BigInt;
use num_traits::{One, Signed};

use crate::arith::rational::fmt_rat;

use crate::arith::{BigRat, Poly, RatFn};
use crate::diffop::{Basis, DiffOp, Ore};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Z,
    D,
    Theta,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    End,
}

#[derive(Clone, Debug)]
struct Spanned {
    tok: Tok,
    line: usize,
    column: usize,
}

fn lex(src: &str) -> Result<Vec<Spanned>> {
    let mut out = Vec::new();
    let (mut line, mut column) = (1, 1);
    let chars: Vec<char> = src.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let (l0, c0) = (line, column);
        let push = |out: &mut Vec<Spanned>, tok| {
            out.push(Spanned {
                tok,
                line: l0,
                column: c0,
            })
        };
        if c == '\n' {
            line += 1;
            column = 1;
            i += 1;
            continue;
        }
        if c.is_whitespace() {
            column += 1;
            i += 1;
            continue;
        }
        if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            column += i - start;
            push(&mut out, Tok::Int(s.parse().expect("digits")));
            continue;
        }
        if c.is_alphabetic() {
            let start = i;
            while i < chars.len() && chars[i].is_alphanumeric() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            column += i - start;
            let tok = match s.as_str() {
                "z" => Tok::Z,
                "D" => Tok::D,
                "theta" | "θ" => Tok::Theta,
                _ => {
                    return Err(Error::Parse {
                        line: l0,
                        column: c0,
                        message: format!("unknown symbol {s:?}"),
                    })
                }
            };
            push(&mut out, tok);
            continue;
        }
        let tok = match c {
            '+' => Tok::Plus,
            '-' | '−' => Tok::Minus,
            '*' => Tok::Star,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            _ => {
                return Err(Error::Parse {
                    line,
                    column,
                    message: format!("unexpected character {c:?}"),
                })
            }
        };
        push(&mut out, tok);
        i += 1;
        column += 1;
    }
    out.push(Spanned {
        tok: Tok::End,
        line,
        column,
    });
    Ok(out)
}

struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
    basis: Basis,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn err(&self, message: impl Into<String>) -> Error {
        let t = &self.toks[self.pos];
        Error::Parse {
            line: t.line,
            column: t.column,
            message: message.into(),
        }
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].tok.clone();
        if t != Tok::End {
            self.pos += 1;
        }
        t
    }

    fn sum(&mut self) -> Result<DiffOp> {
        let neg = match self.peek() {
            Tok::Minus => {
                self.bump();
                true
            }
            Tok::Plus => {
                self.bump();
                false
            }
            _ => false,
        };
        let mut acc = self.prod()?;
        if neg {
            acc = acc.neg();
        }
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    acc = acc.add(&self.prod()?);
                }
                Tok::Minus => {
                    self.bump();
                    acc = acc.sub(&self.prod()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn prod(&mut self) -> Result<DiffOp> {
        let mut acc = self.power()?;
        loop {
            match self.peek() {
                Tok::Star => {
                    self.bump();
                    acc = acc.mul(&self.power()?);
                }
                Tok::Slash => {
                    self.bump();
                    let at = self.pos;
                    let d = self.power()?;
                    let c = match d.order() {
                        0 if !d.is_zero() => d.coeffs()[0].inv(),
                        _ => {
                            self.pos = at;
                            return Err(self.err("divisor must be a nonzero rational function"));
                        }
                    };
                    acc = acc.mul(&Ore::scalar(self.basis, c));
                }
                _ => return Ok(acc),
            }
        }
    }

    fn power(&mut self) -> Result<DiffOp> {
        let base = self.atom()?;
        if *self.peek() != Tok::Caret {
            return Ok(base);
        }
        self.bump();
        let Tok::Int(k) = self.peek().clone() else {
            return Err(self.err("expected a natural exponent"));
        };
        let k: usize = k.try_into().map_err(|_| self.err("exponent too large"))?;
        self.bump();
        let mut acc = Ore::scalar(self.basis, RatFn::one());
        for _ in 0..k {
            acc = acc.mul(&base);
        }
        Ok(acc)
    }

    fn atom(&mut self) -> Result<DiffOp> {
        let b = self.basis;
        match self.peek().clone() {
            Tok::Int(n) => {
                self.bump();
                Ok(Ore::scalar(b, RatFn::constant(BigRat::from_integer(n))))
            }
            Tok::Z => {
                self.bump();
                Ok(Ore::scalar(b, RatFn::z()))
            }
            Tok::D | Tok::Theta => {
                self.bump();
                Ok(Ore::monomial(b, RatFn::one(), 1))
            }
            Tok::LParen => {
                self.bump();
                let inner = self.sum()?;
                if *self.peek() != Tok::RParen {
                    return Err(self.err("expected ')'"));
                }
                self.bump();
                Ok(inner)
            }
            Tok::End => Err(self.err("unexpected end of input")),
            t => Err(self.err(format!("unexpected token {t:?}"))),
        }
    }
}

/// Parse an operator expression into a DiffOp in the basis its symbols use
/// (D when neither appears).
pub fn parse_operator(text: &str) -> Result<DiffOp> {
    let toks = lex(text)?;
    let has_d = toks.iter().any(|t| t.tok == Tok::D);
    let has_t = toks.iter().any(|t| t.tok == Tok::Theta);
    if has_d && has_t {
        return Err(Error::MixedBasis);
    }
    let basis = if has_t { Basis::Theta } else { Basis::D };
    let mut p = Parser {
        toks,
        pos: 0,
        basis,
    };
    let out = p.sum()?;
    if *p.peek() != Tok::End {
        return Err(p.err("trailing input"));
    }
    Ok(out)
}

/// Parse a rational function of z (no derivation symbols).
pub fn parse_ratfn(text: &str) -> Result<RatFn> {
    let l = parse_operator(text)?;
    match l.order() {
        0 => Ok(if l.is_zero() {
            RatFn::zero()
        } else {
            l.coeffs()[0].clone()
        }),
        _ => Err(Error::InvalidParameters(format!(
            "{text:?} is not a rational function"
        ))),
    }
}

fn coeff_text(c: &RatFn) -> String {
    if c.is_polynomial() {
        format!("({})", c.num().to_string_var("z"))
    } else {
        format!(
            "({})/({})",
            c.num().to_string_var("z"),
            c.den().to_string_var("z")
        )
    }
}

/// Normal form: terms from the highest order down, each "(c)*X^k".
pub fn print_operator(l: &DiffOp) -> String {
    if l.is_zero() {
        return "0".into();
    }
    let sym = match l.basis() {
        Basis::D => "D",
        Basis::Theta => "theta",
    };
    let mut out = String::new();
    for k in (0..=l.order()).rev() {
        let c = &l.coeffs()[k];
        if c.is_zero() {
            continue;
        }
        let d = match k {
            0 => String::new(),
            1 => sym.to_string(),
            _ => format!("{sym}^{k}"),
        };
        // constants carry their sign into the joiner
        let (neg, body) = match c.as_constant() {
            Some(a) => {
                let m = fmt_rat(&a.abs());
                let body = match (k, a.abs().is_one()) {
                    (0, _) => m,
                    (_, true) => d,
                    _ => format!("{m}*{d}"),
                };
                (a.is_negative(), body)
            }
            None if k == 0 => (false, coeff_text(c)),
            None => (false, format!("{}*{d}", coeff_text(c))),
        };
        match (out.is_empty(), neg) {
            (true, true) => out.push('-'),
            (true, false) => {}
            (false, true) => out.push_str(" - "),
            (false, false) => out.push_str(" + "),
        }
        out.push_str(&body);
    }
    out
}

/// Rational function as text in z, parseable by `parse_ratfn`.
pub fn print_ratfn(f: &RatFn) -> String {
    if f.is_polynomial() {
        f.num().to_string_var("z")
    } else {
        format!(
            "({})/({})",
            f.num().to_string_var("z"),
            f.den().to_string_var("z")
        )
    }
}

/// Poly as text in z, parseable by `parse_ratfn`.
pub fn print_poly(p: &Poly) -> String {
    p.to_string_var("z")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::{int, rat};
    use crate::catalog;

    #[test]
    fn li1_operator() {
        let l = parse_operator("(1-z)*D^2 - D").unwrap();
        let expect = DiffOp::from_polys(
            Basis::D,
            vec![
                Poly::zero(),
                Poly::from_ints(&[-1]),
                Poly::from_ints(&[1, -1]),
            ],
        );
        assert_eq!(l, expect);
        assert_eq!(l, catalog::polylog_operator(1));
    }

    #[test]
    fn theta_examples() {
        let l = parse_operator("theta^2 - 2").unwrap();
        assert_eq!(l, catalog::counterexample_theta2_minus_2());
        let g = parse_operator("theta*(theta) - z*(theta+1/2)^2").unwrap();
        let h = catalog::hypergeom_operator(&[rat(1, 2), rat(1, 2)], &[int(1)]).unwrap();
        assert_eq!(g, h);
    }

    #[test]
    fn errors() {
        assert_eq!(parse_operator("D*theta"), Err(Error::MixedBasis));
        match parse_operator("(1-z)*D^2 -\n  D $") {
            Err(Error::Parse { line, column, .. }) => assert_eq!((line, column), (2, 5)),
            e => panic!("{e:?}"),
        }
        assert!(parse_operator("D/D").is_err());
        assert!(parse_operator("(z+1").is_err());
        assert!(parse_operator("2 z").is_err());
    }

    #[test]
    fn ratfn_text_round_trip() {
        let f = RatFn::new(Poly::from_ints(&[-1]), Poly::from_ints(&[0, -4, 4]));
        assert_eq!(parse_ratfn(&print_ratfn(&f)).unwrap(), f);
    }

    #[test]
    fn round_trip_catalog() {
        for id in catalog::CATALOG_IDS {
            let l = catalog::get(id).unwrap().operator;
            let text = print_operator(&l);
            assert_eq!(parse_operator(&text).unwrap(), l, "{id}: {text}");
        }
    }
}
