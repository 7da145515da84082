use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{FreePoly, PolyError};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigRational),
    Ident(String),
    Star,
    Plus,
    Minus,
    LParen,
    RParen,
    Comma,
    End,
}

fn lex(src: &str) -> Result<Vec<(Tok, usize)>, PolyError> {
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
            b'*' => out.push((Tok::Star, start)),
            b'+' => out.push((Tok::Plus, start)),
            b'-' => out.push((Tok::Minus, start)),
            b'(' => out.push((Tok::LParen, start)),
            b')' => out.push((Tok::RParen, start)),
            b',' => out.push((Tok::Comma, start)),
            b'0'..=b'9' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let numer: BigInt = src[start..i].parse().expect("digits");
                let mut value = BigRational::from_integer(numer);
                if i + 1 < bytes.len() && bytes[i] == b'/' && bytes[i + 1].is_ascii_digit() {
                    let dstart = i + 1;
                    i = dstart;
                    while i < bytes.len() && bytes[i].is_ascii_digit() {
                        i += 1;
                    }
                    let denom: BigInt = src[dstart..i].parse().expect("digits");
                    if denom.is_zero() {
                        return Err(PolyError::Syntax {
                            pos: dstart,
                            message: "zero denominator".into(),
                        });
                    }
                    value /= BigRational::from_integer(denom);
                }
                out.push((Tok::Num(value), start));
                continue;
            }
            c if c.is_ascii_alphabetic() || c == b'_' => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                out.push((Tok::Ident(src[start..i].to_string()), start));
                continue;
            }
            _ => {
                let ch = src[start..].chars().next().unwrap_or('?');
                return Err(PolyError::Syntax {
                    pos: start,
                    message: format!("unexpected character '{ch}'"),
                });
            }
        }
        i += 1;
    }
    out.push((Tok::End, src.len()));
    Ok(out)
}

/// Intermediate value: a bare constant or a polynomial without constant part.
#[derive(Clone, Debug)]
enum Value {
    Const(BigRational),
    Poly(FreePoly),
}

struct Parser<'a> {
    toks: Vec<(Tok, usize)>,
    at: usize,
    vars: &'a [String],
}

impl Parser<'_> {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].0
    }

    fn pos(&self) -> usize {
        self.toks[self.at].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.at].0.clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn syntax<T>(&self, message: impl Into<String>) -> Result<T, PolyError> {
        Err(PolyError::Syntax {
            pos: self.pos(),
            message: message.into(),
        })
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<(), PolyError> {
        if *self.peek() == tok {
            self.bump();
            Ok(())
        } else {
            self.syntax(format!("expected {what}"))
        }
    }

    fn zero(&self) -> FreePoly {
        FreePoly::zero(self.vars.to_vec())
    }

    fn expr(&mut self) -> Result<Value, PolyError> {
        let mut sign = BigRational::one();
        match self.peek() {
            Tok::Minus => {
                self.bump();
                sign = -sign;
            }
            Tok::Plus => {
                self.bump();
            }
            _ => {}
        }
        let start = self.pos();
        let mut acc = scale(self.term()?, &sign);
        loop {
            let neg = match self.peek() {
                Tok::Plus => false,
                Tok::Minus => true,
                _ => break,
            };
            self.bump();
            let rhs = self.term()?;
            let rhs = if neg {
                scale(rhs, &-BigRational::one())
            } else {
                rhs
            };
            acc = match (acc, rhs) {
                (Value::Const(a), Value::Const(b)) => Value::Const(a + b),
                (Value::Poly(a), Value::Poly(b)) => Value::Poly(a.add(&b)),
                (Value::Const(c), Value::Poly(p)) | (Value::Poly(p), Value::Const(c)) => {
                    if c.is_zero() {
                        Value::Poly(p)
                    } else {
                        return Err(PolyError::Syntax {
                            pos: start,
                            message: "constant term added to a polynomial".into(),
                        });
                    }
                }
            };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Value, PolyError> {
        let start = self.pos();
        let mut coeff = BigRational::one();
        let mut factors = vec![];
        loop {
            match self.factor()? {
                Value::Const(c) => coeff *= c,
                Value::Poly(p) => factors.push(p),
            }
            if *self.peek() == Tok::Star {
                self.bump();
            } else {
                break;
            }
        }
        match factors.len() {
            0 => Ok(Value::Const(coeff)),
            1 => Ok(Value::Poly(factors[0].scale(&coeff))),
            2 => Ok(Value::Poly(factors[0].mul(&factors[1]).scale(&coeff))),
            _ => Err(PolyError::AmbiguousProduct { pos: start }),
        }
    }

    fn factor(&mut self) -> Result<Value, PolyError> {
        let pos = self.pos();
        match self.bump() {
            Tok::Num(q) => Ok(Value::Const(q)),
            Tok::LParen => {
                let v = self.expr()?;
                self.expect(Tok::RParen, "')'")?;
                Ok(v)
            }
            Tok::Ident(name) => {
                if *self.peek() == Tok::LParen {
                    self.call(&name, pos)
                } else {
                    match self.vars.iter().position(|v| *v == name) {
                        Some(i) => Ok(Value::Poly(FreePoly::variable(self.vars.to_vec(), i))),
                        None => Err(PolyError::UnknownVariable { name, pos }),
                    }
                }
            }
            _ => Err(PolyError::Syntax {
                pos,
                message: "expected a number, variable or '('".into(),
            }),
        }
    }

    fn call(&mut self, name: &str, pos: usize) -> Result<Value, PolyError> {
        let arity = match name {
            "assoc" => 3,
            "comm" | "jord" => 2,
            _ => {
                return Err(PolyError::Syntax {
                    pos,
                    message: format!("unknown function '{name}'"),
                })
            }
        };
        self.expect(Tok::LParen, "'('")?;
        let mut args = Vec::with_capacity(arity);
        loop {
            let apos = self.pos();
            match self.expr()? {
                Value::Poly(p) => args.push(p),
                Value::Const(c) if c.is_zero() => args.push(self.zero()),
                Value::Const(_) => {
                    return Err(PolyError::Syntax {
                        pos: apos,
                        message: "constant used as an algebra element".into(),
                    })
                }
            }
            if *self.peek() == Tok::Comma {
                self.bump();
            } else {
                break;
            }
        }
        self.expect(Tok::RParen, "')'")?;
        if args.len() != arity {
            return Err(PolyError::Syntax {
                pos,
                message: format!("{name} takes {arity} arguments, got {}", args.len()),
            });
        }
        let out = match name {
            "assoc" => associator(&args[0], &args[1], &args[2]),
            "comm" => args[0].mul(&args[1]).sub(&args[1].mul(&args[0])),
            _ => args[0].mul(&args[1]).add(&args[1].mul(&args[0])),
        };
        Ok(Value::Poly(out))
    }
}

fn scale(v: Value, s: &BigRational) -> Value {
    match v {
        Value::Const(c) => Value::Const(c * s),
        Value::Poly(p) => Value::Poly(p.scale(s)),
    }
}

/// `a*(b*c) - (a*b)*c`.
pub fn associator(a: &FreePoly, b: &FreePoly, c: &FreePoly) -> FreePoly {
    a.mul(&b.mul(c)).sub(&a.mul(b).mul(c))
}

/// Parses an identity expression over the given variables.
pub fn parse(expr: &str, variables: &[&str]) -> Result<FreePoly, PolyError> {
    let vars: Vec<String> = variables.iter().map(|s| s.to_string()).collect();
    parse_with(expr, &vars)
}

pub fn parse_with(expr: &str, variables: &[String]) -> Result<FreePoly, PolyError> {
    let mut p = Parser {
        toks: lex(expr)?,
        at: 0,
        vars: variables,
    };
    let v = p.expr()?;
    if *p.peek() != Tok::End {
        return p.syntax("unexpected input after expression");
    }
    match v {
        Value::Poly(poly) => Ok(poly),
        Value::Const(c) if c.is_zero() => Ok(p.zero()),
        Value::Const(_) => Err(PolyError::Syntax {
            pos: 0,
            message: "a nonzero constant is not a polynomial in the algebra product".into(),
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn right_symmetric_has_four_terms() {
        let p = parse("assoc(a,b,c) - assoc(a,c,b)", &["a", "b", "c"]).unwrap();
        assert_eq!(p.num_terms(), 4);
        assert!(p.is_multilinear());
    }

    #[test]
    fn cancellation() {
        assert!(parse("a*b - a*b", &["a", "b"]).unwrap().is_zero());
        assert!(parse("0", &["a"]).unwrap().is_zero());
    }

    #[test]
    fn tortken_expansion() {
        let p = parse(
            "(a*b)*(c*d) - (a*d)*(c*b) - assoc(a,b,c)*d + assoc(a,d,c)*b",
            &["a", "b", "c", "d"],
        )
        .unwrap();
        assert_eq!(p.num_terms(), 6);
        assert_eq!(p.degree(), 4);
    }

    #[test]
    fn errors() {
        let vars = ["a", "b", "c"];
        assert_eq!(
            parse("a*b*c", &vars),
            Err(PolyError::AmbiguousProduct { pos: 0 })
        );
        assert_eq!(
            parse("a + x", &vars),
            Err(PolyError::UnknownVariable {
                name: "x".into(),
                pos: 4
            })
        );
        assert!(matches!(
            parse("a * (b", &vars),
            Err(PolyError::Syntax { pos: 6, .. })
        ));
        assert!(matches!(
            parse("a $ b", &vars),
            Err(PolyError::Syntax { pos: 2, .. })
        ));
        assert!(matches!(parse("a + 1", &vars), Err(PolyError::Syntax { .. })));
    }

    #[test]
    fn scalars_and_round_trip() {
        let vars = ["a", "b", "c"];
        let p = parse("2*(a*b)*c - 1/2*a*(b*c) + 3*(a*b)*c", &vars).unwrap();
        assert_eq!(p.num_terms(), 2);
        let text = p.to_string();
        assert_eq!(parse(&text, &vars).unwrap(), p);
        let q = parse("-(comm(a,b)) + jord(a,b)", &vars).unwrap();
        assert_eq!(q.to_string(), "2*b*a");
    }
}
