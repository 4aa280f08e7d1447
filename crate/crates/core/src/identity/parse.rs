//! Text form of identities.
//!
//! ```text
//! identity := expr '=' expr
//! expr     := term (('+' | '-') term)*
//! term     := factor ('*' factor)*
//! factor   := atom ('^' UINT)? ('/' UINT)?
//! atom     := 'F' '[' idx ']' | 'L' '[' idx ']' | 'S' '[' idx ']'
//!           | 'U' '[' idx ';' rat ',' rat ']'
//!           | 'W' '[' idx ';' rat ',' rat ']'
//!           | 'sum' '(' IDENT ',' expr ')'
//!           | UINT | '(' expr ')'
//! idx      := '-'? (UINT '*')? VAR (('+' | '-') UINT)? | '-'? UINT
//! rat      := '-'? UINT ('/' UINT)?
//! ```
//!
//! `#` starts a comment running to end of line. There is no unary minus:
//! negation is spelled with subtraction or a sign in an index or parameter.

use crate::error::ParseError;
use crate::identity::ast::{AffineIndex, Expr, IndexVar};
use crate::scalar::Rat;
use crate::seq::{LucasParams, SeqKind};
use num_bigint::BigInt;

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Num(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LBracket,
    RBracket,
    LParen,
    RParen,
    Comma,
    Semi,
    Equals,
    Eof,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("'{s}'"),
            Tok::Num(s) => format!("number '{s}'"),
            Tok::Plus => "'+'".into(),
            Tok::Minus => "'-'".into(),
            Tok::Star => "'*'".into(),
            Tok::Slash => "'/'".into(),
            Tok::Caret => "'^'".into(),
            Tok::LBracket => "'['".into(),
            Tok::RBracket => "']'".into(),
            Tok::LParen => "'('".into(),
            Tok::RParen => "')'".into(),
            Tok::Comma => "','".into(),
            Tok::Semi => "';'".into(),
            Tok::Equals => "'='".into(),
            Tok::Eof => "end of input".into(),
        }
    }
}

#[derive(Debug, Clone)]
struct Token {
    tok: Tok,
    line: usize,
    col: usize,
}

fn lex(src: &str) -> Result<Vec<Token>, ParseError> {
    let mut out = Vec::new();
    let mut line = 1usize;
    let mut col = 1usize;
    let mut chars = src.chars().peekable();
    while let Some(&c) = chars.peek() {
        let (tline, tcol) = (line, col);
        let mut bump = |chars: &mut std::iter::Peekable<std::str::Chars>| {
            let c = chars.next().unwrap();
            if c == '\n' {
                line += 1;
                col = 1;
            } else {
                col += 1;
            }
            c
        };
        if c.is_whitespace() {
            bump(&mut chars);
            continue;
        }
        if c == '#' {
            while chars.peek().is_some_and(|&c| c != '\n') {
                bump(&mut chars);
            }
            continue;
        }
        let tok = if c.is_ascii_digit() {
            let mut s = String::new();
            while chars.peek().is_some_and(|c| c.is_ascii_digit()) {
                s.push(bump(&mut chars));
            }
            Tok::Num(s)
        } else if c.is_ascii_alphabetic() || c == '_' {
            let mut s = String::new();
            while chars
                .peek()
                .is_some_and(|&c| c.is_ascii_alphanumeric() || c == '_')
            {
                s.push(bump(&mut chars));
            }
            Tok::Ident(s)
        } else {
            bump(&mut chars);
            match c {
                '+' => Tok::Plus,
                '-' => Tok::Minus,
                '*' => Tok::Star,
                '/' => Tok::Slash,
                '^' => Tok::Caret,
                '[' => Tok::LBracket,
                ']' => Tok::RBracket,
                '(' => Tok::LParen,
                ')' => Tok::RParen,
                ',' => Tok::Comma,
                ';' => Tok::Semi,
                '=' => Tok::Equals,
                other => {
                    return Err(ParseError::new(
                        tline,
                        tcol,
                        &["a token"],
                        format!("'{other}'"),
                    ))
                }
            }
        };
        out.push(Token {
            tok,
            line: tline,
            col: tcol,
        });
    }
    out.push(Token {
        tok: Tok::Eof,
        line,
        col,
    });
    Ok(out)
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
    sum_var: Option<String>,
}

const RESERVED: [&str; 6] = ["F", "L", "U", "W", "S", "sum"];

impl Parser {
    fn peek(&self) -> &Token {
        &self.tokens[self.pos]
    }

    fn next(&mut self) -> Token {
        let t = self.tokens[self.pos].clone();
        if self.pos + 1 < self.tokens.len() {
            self.pos += 1;
        }
        t
    }

    fn fail<T>(&self, expected: &[&str]) -> Result<T, ParseError> {
        let t = self.peek();
        Err(ParseError::new(
            t.line,
            t.col,
            expected,
            t.tok.describe(),
        ))
    }

    fn expect(&mut self, want: Tok, name: &str) -> Result<Token, ParseError> {
        if self.peek().tok == want {
            Ok(self.next())
        } else {
            self.fail(&[name])
        }
    }

    fn eat(&mut self, want: &Tok) -> bool {
        if &self.peek().tok == want {
            self.next();
            true
        } else {
            false
        }
    }

    fn uint<T: std::str::FromStr>(&mut self, what: &str) -> Result<T, ParseError> {
        let t = self.peek().clone();
        match &t.tok {
            Tok::Num(s) => match s.parse::<T>() {
                Ok(v) => {
                    self.next();
                    Ok(v)
                }
                Err(_) => self.fail(&[what]),
            },
            _ => self.fail(&[what]),
        }
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut left = self.term()?;
        loop {
            if self.eat(&Tok::Plus) {
                left = Expr::add(left, self.term()?);
            } else if self.eat(&Tok::Minus) {
                left = Expr::sub(left, self.term()?);
            } else {
                return Ok(left);
            }
        }
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut left = self.factor()?;
        while self.eat(&Tok::Star) {
            left = Expr::mul(left, self.factor()?);
        }
        Ok(left)
    }

    fn factor(&mut self) -> Result<Expr, ParseError> {
        let mut e = self.atom()?;
        if self.eat(&Tok::Caret) {
            let k: u32 = self.uint("exponent")?;
            e = e.pow(k);
        }
        if self.eat(&Tok::Slash) {
            let t = self.peek().clone();
            let d: u64 = self.uint("nonzero divisor")?;
            if d == 0 {
                return Err(ParseError::new(
                    t.line,
                    t.col,
                    &["nonzero divisor"],
                    "0",
                ));
            }
            e = Expr::Scale(crate::scalar::ratio(1, d as i64), Box::new(e));
        }
        Ok(e)
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        let t = self.peek().clone();
        match &t.tok {
            Tok::Num(s) => {
                self.next();
                let v: BigInt = s.parse().expect("digits");
                Ok(Expr::Const(Rat::from_integer(v)))
            }
            Tok::LParen => {
                self.next();
                let e = self.expr()?;
                self.expect(Tok::RParen, "')'")?;
                Ok(e)
            }
            Tok::Ident(name) => match name.as_str() {
                "F" | "L" | "S" => {
                    self.next();
                    self.expect(Tok::LBracket, "'['")?;
                    let index = self.index()?;
                    self.expect(Tok::RBracket, "']'")?;
                    Ok(match name.as_str() {
                        "F" => Expr::Seq {
                            kind: SeqKind::Fib,
                            index,
                        },
                        "L" => Expr::Seq {
                            kind: SeqKind::Lucas,
                            index,
                        },
                        _ => Expr::SignPow { index },
                    })
                }
                "U" | "W" => {
                    self.next();
                    self.expect(Tok::LBracket, "'['")?;
                    let index = self.index()?;
                    self.expect(Tok::Semi, "';'")?;
                    let p = self.rational()?;
                    self.expect(Tok::Comma, "','")?;
                    let qt = self.peek().clone();
                    let q = self.rational()?;
                    self.expect(Tok::RBracket, "']'")?;
                    let params = match LucasParams::new(p, q) {
                        Ok(p) => p,
                        Err(_) => {
                            return Err(ParseError::new(
                                qt.line,
                                qt.col,
                                &["nonzero q parameter"],
                                "0",
                            ))
                        }
                    };
                    Ok(Expr::Seq {
                        kind: if name == "U" {
                            SeqKind::U(params)
                        } else {
                            SeqKind::W(params)
                        },
                        index,
                    })
                }
                "sum" => {
                    self.next();
                    if self.sum_var.is_some() {
                        return Err(ParseError::new(
                            t.line,
                            t.col,
                            &["an atom (sums do not nest)"],
                            "'sum'",
                        ));
                    }
                    self.expect(Tok::LParen, "'('")?;
                    let vt = self.peek().clone();
                    let var = match &vt.tok {
                        Tok::Ident(v) => {
                            self.next();
                            v.clone()
                        }
                        _ => return self.fail(&["summation variable"]),
                    };
                    if var == "n" || RESERVED.contains(&var.as_str()) {
                        return Err(ParseError::new(
                            vt.line,
                            vt.col,
                            &["fresh summation variable"],
                            format!("'{var}'"),
                        ));
                    }
                    self.expect(Tok::Comma, "','")?;
                    self.sum_var = Some(var.clone());
                    let body = self.expr()?;
                    self.sum_var = None;
                    self.expect(Tok::RParen, "')'")?;
                    Ok(Expr::Sum {
                        var,
                        body: Box::new(body),
                    })
                }
                _ => self.fail(&["'F'", "'L'", "'U'", "'W'", "'S'", "'sum'", "number", "'('"]),
            },
            _ => self.fail(&["'F'", "'L'", "'U'", "'W'", "'S'", "'sum'", "number", "'('"]),
        }
    }

    fn index_var(&mut self) -> Result<IndexVar, ParseError> {
        let t = self.peek().clone();
        let name = match &t.tok {
            Tok::Ident(v) => v.clone(),
            _ => return self.fail(&["index variable"]),
        };
        match (&self.sum_var, name.as_str()) {
            (None, "n") => {
                self.next();
                Ok(IndexVar::N)
            }
            (Some(v), name) if v == name => {
                self.next();
                Ok(IndexVar::Sum(name.to_string()))
            }
            (None, _) => Err(ParseError::new(
                t.line,
                t.col,
                &["'n'"],
                format!("'{name}'"),
            )),
            (Some(v), _) => {
                let want = format!("'{v}'");
                Err(ParseError::new(
                    t.line,
                    t.col,
                    &[want.as_str()],
                    format!("'{name}'"),
                ))
            }
        }
    }

    fn index(&mut self) -> Result<AffineIndex, ParseError> {
        let neg = self.eat(&Tok::Minus);
        let sign = if neg { -1i64 } else { 1 };
        let t = self.peek().clone();
        match &t.tok {
            Tok::Num(_) => {
                let v: i64 = self.uint("index (fits in 64 bits)")?;
                if self.eat(&Tok::Star) {
                    let var = self.index_var()?;
                    let offset = self.index_offset()?;
                    Ok(AffineIndex::new(sign * v, var, offset))
                } else {
                    Ok(AffineIndex::constant(sign * v))
                }
            }
            Tok::Ident(_) => {
                let var = self.index_var()?;
                let offset = self.index_offset()?;
                Ok(AffineIndex::new(sign, var, offset))
            }
            _ => self.fail(&["index"]),
        }
    }

    fn index_offset(&mut self) -> Result<i64, ParseError> {
        if self.eat(&Tok::Plus) {
            self.uint("offset (fits in 64 bits)")
        } else if self.eat(&Tok::Minus) {
            let v: i64 = self.uint("offset (fits in 64 bits)")?;
            Ok(-v)
        } else {
            Ok(0)
        }
    }

    fn rational(&mut self) -> Result<Rat, ParseError> {
        let neg = self.eat(&Tok::Minus);
        let t = self.peek().clone();
        let numer: BigInt = match &t.tok {
            Tok::Num(s) => {
                self.next();
                s.parse().expect("digits")
            }
            _ => return self.fail(&["number"]),
        };
        let denom: BigInt = if self.eat(&Tok::Slash) {
            let dt = self.peek().clone();
            let d: BigInt = match &dt.tok {
                Tok::Num(s) => {
                    self.next();
                    s.parse().expect("digits")
                }
                _ => return self.fail(&["denominator"]),
            };
            if d == BigInt::from(0) {
                return Err(ParseError::new(
                    dt.line,
                    dt.col,
                    &["nonzero denominator"],
                    "0",
                ));
            }
            d
        } else {
            BigInt::from(1)
        };
        let r = Rat::new(numer, denom);
        Ok(if neg { -r } else { r })
    }
}

/// Parse `lhs = rhs`.
pub fn parse_identity(src: &str) -> Result<(Expr, Expr), ParseError> {
    let mut p = Parser {
        tokens: lex(src)?,
        pos: 0,
        sum_var: None,
    };
    let lhs = p.expr()?;
    p.expect(Tok::Equals, "'='")?;
    let rhs = p.expr()?;
    p.expect(Tok::Eof, "end of input")?;
    Ok((lhs, rhs))
}

/// Parse a single expression.
pub fn parse_expression(src: &str) -> Result<Expr, ParseError> {
    let mut p = Parser {
        tokens: lex(src)?,
        pos: 0,
        sum_var: None,
    };
    let e = p.expr()?;
    p.expect(Tok::Eof, "end of input")?;
    Ok(e)
}
