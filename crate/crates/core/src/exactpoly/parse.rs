//! Text parser for the polynomial grammar
//!
//! ```text
//! poly     := ['-'] term (('+'|'-') term)*
//! term     := (coeff '*')? factor ('*' factor)*  |  coeff
//! factor   := variable ('^' natural)?
//! coeff    := natural | natural '/' natural
//! ```
//!
//! Whitespace is ignored. Coefficients are also accepted between factors, and
//! symbols bound to rational constants may appear wherever a variable may.

use std::collections::HashMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{Monomial, Polynomial, Rational};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseError {
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unbound symbol `{name}` at position {pos}")]
    Unbound { pos: usize, name: String },
    #[error("zero denominator at position {pos}")]
    ZeroDenominator { pos: usize },
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
}

fn tokenize(text: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        let tok = match c {
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            d if d.is_ascii_digit() => {
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let s: String = chars[start..i].iter().collect();
                out.push((start, Tok::Num(s.parse().expect("digits"))));
                continue;
            }
            a if a.is_ascii_alphabetic() => {
                while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                out.push((start, Tok::Ident(chars[start..i].iter().collect())));
                continue;
            }
            other => {
                return Err(ParseError::Syntax {
                    pos: start,
                    msg: format!("unexpected character `{other}`"),
                })
            }
        };
        out.push((start, tok));
        i += 1;
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
    vars: &'a Arc<[String]>,
    bindings: &'a HashMap<String, Rational>,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map(|(p, _)| *p).unwrap_or(self.end)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError::Syntax {
            pos: self.offset(),
            msg: msg.into(),
        })
    }

    fn natural(&mut self) -> Result<(usize, BigInt), ParseError> {
        match self.toks.get(self.pos) {
            Some((p, Tok::Num(n))) => {
                let r = (*p, n.clone());
                self.pos += 1;
                Ok(r)
            }
            _ => self.err("expected a natural number"),
        }
    }

    fn poly(&mut self) -> Result<Polynomial, ParseError> {
        let mut acc = Polynomial::zero(self.vars.clone());
        let mut sign = Rational::one();
        match self.peek() {
            Some(Tok::Minus) => {
                sign = -sign;
                self.pos += 1;
            }
            Some(Tok::Plus) => self.pos += 1,
            _ => {}
        }
        loop {
            let (m, c) = self.term()?;
            acc.add_term(m, c * &sign);
            match self.peek() {
                Some(Tok::Plus) => sign = Rational::one(),
                Some(Tok::Minus) => sign = -Rational::one(),
                None => break,
                Some(_) => return self.err("expected `+`, `-` or end of input"),
            }
            self.pos += 1;
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<(Monomial, Rational), ParseError> {
        let mut exps = vec![0u32; self.vars.len()];
        let mut coeff = Rational::one();
        loop {
            self.factor(&mut exps, &mut coeff)?;
            if self.peek() == Some(&Tok::Star) {
                self.pos += 1;
            } else {
                break;
            }
        }
        Ok((Monomial::new(exps), coeff))
    }

    fn factor(&mut self, exps: &mut [u32], coeff: &mut Rational) -> Result<(), ParseError> {
        match self.toks.get(self.pos).cloned() {
            Some((_, Tok::Num(_))) => {
                let (_, n) = self.natural()?;
                let mut q = Rational::from_integer(n);
                if self.peek() == Some(&Tok::Slash) {
                    self.pos += 1;
                    let (p, d) = self.natural()?;
                    if d.is_zero() {
                        return Err(ParseError::ZeroDenominator { pos: p });
                    }
                    q /= Rational::from_integer(d);
                }
                *coeff *= q;
                Ok(())
            }
            Some((p, Tok::Ident(name))) => {
                self.pos += 1;
                let e = if self.peek() == Some(&Tok::Caret) {
                    self.pos += 1;
                    let (ep, n) = self.natural()?;
                    u32::try_from(n).map_err(|_| ParseError::Syntax {
                        pos: ep,
                        msg: "exponent too large".into(),
                    })?
                } else {
                    1
                };
                if let Some(i) = self.vars.iter().position(|v| *v == name) {
                    exps[i] += e;
                } else if let Some(val) = self.bindings.get(&name) {
                    for _ in 0..e {
                        *coeff *= val;
                    }
                } else {
                    return Err(ParseError::Unbound { pos: p, name });
                }
                Ok(())
            }
            _ => self.err("expected a coefficient or a variable"),
        }
    }
}

/// Parses `text` over the ordered variable list `vars`; symbols in `bindings`
/// are replaced by their rational values.
pub fn parse(
    text: &str,
    vars: &Arc<[String]>,
    bindings: &HashMap<String, Rational>,
) -> Result<Polynomial, ParseError> {
    let toks = tokenize(text)?;
    if toks.is_empty() {
        return Err(ParseError::Syntax {
            pos: 0,
            msg: "empty input".into(),
        });
    }
    let mut p = Parser {
        toks,
        pos: 0,
        end: text.chars().count(),
        vars,
        bindings,
    };
    p.poly()
}

/// Parses a rational literal `p`, `-p`, `p/q` or `-p/q`.
pub fn parse_rational(text: &str) -> Result<Rational, ParseError> {
    let s = text.trim();
    let (neg, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest.trim()),
        None => (false, s),
    };
    let bad = |pos| ParseError::Syntax {
        pos,
        msg: format!("`{text}` is not a rational literal"),
    };
    let (num, den) = match body.split_once('/') {
        Some((n, d)) => (n.trim(), Some(d.trim())),
        None => (body, None),
    };
    let digits = |x: &str| !x.is_empty() && x.chars().all(|c| c.is_ascii_digit());
    if !digits(num) {
        return Err(bad(0));
    }
    let n: BigInt = num.parse().map_err(|_| bad(0))?;
    let d: BigInt = match den {
        Some(d) if digits(d) => d.parse().map_err(|_| bad(0))?,
        Some(_) => return Err(bad(s.find('/').unwrap_or(0) + 1)),
        None => BigInt::one(),
    };
    if d.is_zero() {
        return Err(ParseError::ZeroDenominator {
            pos: s.find('/').unwrap_or(0) + 1,
        });
    }
    let q = Rational::new(n, d);
    Ok(if neg { -q } else { q })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactpoly::{int, rat};

    fn vars(names: &[&str]) -> Arc<[String]> {
        names.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn cancellation_gives_zero() {
        let p = parse("z1 - z1", &vars(&["z1"]), &HashMap::new()).unwrap();
        assert!(p.is_zero());
    }

    #[test]
    fn bound_parameter_is_substituted() {
        let mut b = HashMap::new();
        b.insert("t".to_string(), int(1));
        let v = vars(&["z1", "z2", "z3"]);
        let p = parse("z1^6 + t*z1^4*z2 + z2^3 + z3^2", &v, &b).unwrap();
        assert_eq!(p.len(), 4);
        assert_eq!(p.coeff_of(&[4, 1, 0]), int(1));
        b.insert("t".to_string(), rat(-2, 3));
        let p = parse("z1^6 + t^2*z1^4*z2", &v, &b).unwrap();
        assert_eq!(p.coeff_of(&[4, 1, 0]), rat(4, 9));
    }

    #[test]
    fn fractional_coefficient() {
        let p = parse("1/2*x1^2", &vars(&["x1"]), &HashMap::new()).unwrap();
        assert_eq!(p.len(), 1);
        assert_eq!(p.coeff_of(&[2]), rat(1, 2));
    }

    #[test]
    fn errors_carry_positions() {
        let v = vars(&["x1"]);
        let b = HashMap::new();
        assert_eq!(
            parse("x1 + y", &v, &b),
            Err(ParseError::Unbound {
                pos: 5,
                name: "y".into()
            })
        );
        assert_eq!(
            parse("3/0*x1", &v, &b),
            Err(ParseError::ZeroDenominator { pos: 2 })
        );
        assert!(matches!(
            parse("x1 + * x1", &v, &b),
            Err(ParseError::Syntax { pos: 5, .. })
        ));
        assert!(matches!(
            parse("x1 $", &v, &b),
            Err(ParseError::Syntax { pos: 3, .. })
        ));
        assert!(parse("", &v, &b).is_err());
        assert!(parse("x1^", &v, &b).is_err());
    }

    #[test]
    fn rational_literals() {
        assert_eq!(parse_rational("-3/6").unwrap(), rat(-1, 2));
        assert_eq!(parse_rational(" 7 ").unwrap(), int(7));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("a/2").is_err());
        assert!(parse_rational("1.5").is_err());
    }
}
