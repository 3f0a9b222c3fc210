//! Lexer and recursive-descent parser for scenario source text.
//!
//! Parsing is total: any input yields either a `Scenario` or a positioned
//! `ParseError`. Identifier resolution happens at load time — every
//! identifier must be bound by an earlier `let`, and every `expect` must
//! reference an already-declared model.

use std::collections::HashMap;

use num_rational::Ratio;
use thiserror::Error;

use super::{ModelDef, Scenario};
use crate::poly::Polynomial;
use crate::strata::{SpaceExpr, WallTerm};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {col}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub message: String,
}

const RESERVED: &[&str] = &[
    "let", "wall", "plus", "minus", "model", "walls", "expect", "poly", "proj", "aff", "gr",
    "hilb", "relhilb", "sym2", "wedge2", "sym2od", "bundle", "equivsq",
];

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Int(String),
    Quoted(String),
    LParen,
    RParen,
    LBrace,
    RBrace,
    Comma,
    Semi,
    Star,
    Plus,
    Minus,
    Slash,
    Assign,
    EqEq,
    Eof,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Int(s) => format!("`{s}`"),
            Tok::Quoted(_) => "quoted literal".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::LBrace => "`{`".into(),
            Tok::RBrace => "`}`".into(),
            Tok::Comma => "`,`".into(),
            Tok::Semi => "`;`".into(),
            Tok::Star => "`*`".into(),
            Tok::Plus => "`+`".into(),
            Tok::Minus => "`-`".into(),
            Tok::Slash => "`/`".into(),
            Tok::Assign => "`=`".into(),
            Tok::EqEq => "`==`".into(),
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

fn lex(source: &str) -> Result<Vec<Token>, ParseError> {
    let mut tokens = Vec::new();
    let mut line = 1usize;
    let mut col = 1usize;
    let mut chars = source.chars().peekable();

    macro_rules! err {
        ($line:expr, $col:expr, $($arg:tt)*) => {
            return Err(ParseError { line: $line, col: $col, message: format!($($arg)*) })
        };
    }

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
        match c {
            c if c.is_whitespace() => {
                bump(&mut chars);
            }
            '#' => {
                while chars.peek().is_some_and(|&c| c != '\n') {
                    bump(&mut chars);
                }
            }
            '"' => {
                bump(&mut chars);
                let mut text = String::new();
                loop {
                    match chars.peek() {
                        None => err!(tline, tcol, "unterminated quoted literal"),
                        Some('\n') => err!(tline, tcol, "unterminated quoted literal"),
                        Some('"') => {
                            bump(&mut chars);
                            break;
                        }
                        Some(_) => text.push(bump(&mut chars)),
                    }
                }
                tokens.push(Token {
                    tok: Tok::Quoted(text),
                    line: tline,
                    col: tcol,
                });
            }
            c if c.is_ascii_digit() => {
                let mut text = String::new();
                while chars.peek().is_some_and(char::is_ascii_digit) {
                    text.push(bump(&mut chars));
                }
                tokens.push(Token {
                    tok: Tok::Int(text),
                    line: tline,
                    col: tcol,
                });
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let mut text = String::new();
                while chars
                    .peek()
                    .is_some_and(|&c| c.is_ascii_alphanumeric() || c == '_')
                {
                    text.push(bump(&mut chars));
                }
                tokens.push(Token {
                    tok: Tok::Ident(text),
                    line: tline,
                    col: tcol,
                });
            }
            '=' => {
                bump(&mut chars);
                let tok = if chars.peek() == Some(&'=') {
                    bump(&mut chars);
                    Tok::EqEq
                } else {
                    Tok::Assign
                };
                tokens.push(Token {
                    tok,
                    line: tline,
                    col: tcol,
                });
            }
            _ => {
                let tok = match c {
                    '(' => Tok::LParen,
                    ')' => Tok::RParen,
                    '{' => Tok::LBrace,
                    '}' => Tok::RBrace,
                    ',' => Tok::Comma,
                    ';' => Tok::Semi,
                    '*' => Tok::Star,
                    '+' => Tok::Plus,
                    '-' => Tok::Minus,
                    '/' => Tok::Slash,
                    other => err!(tline, tcol, "unexpected character `{other}`"),
                };
                bump(&mut chars);
                tokens.push(Token {
                    tok,
                    line: tline,
                    col: tcol,
                });
            }
        }
    }
    tokens.push(Token {
        tok: Tok::Eof,
        line,
        col,
    });
    Ok(tokens)
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum NameKind {
    Binding,
    Model,
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
    names: HashMap<String, NameKind>,
}

/// Parses scenario source text. The returned scenario has an empty name;
/// callers typically fill it in from the file stem.
pub fn parse_scenario(source: &str) -> Result<Scenario, ParseError> {
    let tokens = lex(source)?;
    let mut parser = Parser {
        tokens,
        pos: 0,
        names: HashMap::new(),
    };
    parser.scenario()
}

impl Parser {
    fn peek(&self) -> &Token {
        &self.tokens[self.pos]
    }

    fn bump(&mut self) -> Token {
        let t = self.tokens[self.pos].clone();
        if self.pos + 1 < self.tokens.len() {
            self.pos += 1;
        }
        t
    }

    fn error<T>(&self, token: &Token, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError {
            line: token.line,
            col: token.col,
            message: message.into(),
        })
    }

    fn expect_tok(&mut self, want: Tok) -> Result<Token, ParseError> {
        let t = self.peek().clone();
        if t.tok == want {
            Ok(self.bump())
        } else {
            self.error(
                &t,
                format!("expected {}, found {}", want.describe(), t.tok.describe()),
            )
        }
    }

    fn expect_keyword(&mut self, word: &str) -> Result<(), ParseError> {
        let t = self.peek().clone();
        match &t.tok {
            Tok::Ident(s) if s == word => {
                self.bump();
                Ok(())
            }
            other => self.error(&t, format!("expected `{word}`, found {}", other.describe())),
        }
    }

    fn scenario(&mut self) -> Result<Scenario, ParseError> {
        let mut scenario = Scenario::default();
        loop {
            let t = self.peek().clone();
            match &t.tok {
                Tok::Eof => break,
                Tok::Ident(word) => match word.as_str() {
                    "let" => {
                        self.bump();
                        let name = self.declare_name(NameKind::Binding)?;
                        self.expect_tok(Tok::Assign)?;
                        let expr = self.expr()?;
                        scenario.bindings.push((name, expr));
                    }
                    "wall" => {
                        self.bump();
                        let alpha = self.rational()?;
                        self.expect_tok(Tok::LBrace)?;
                        self.expect_keyword("plus")?;
                        self.expect_tok(Tok::Assign)?;
                        let plus = self.expr_list()?;
                        self.expect_tok(Tok::Semi)?;
                        self.expect_keyword("minus")?;
                        self.expect_tok(Tok::Assign)?;
                        let minus = self.expr_list()?;
                        self.expect_tok(Tok::RBrace)?;
                        scenario.walls.push(WallTerm::new(alpha, plus, minus));
                    }
                    "model" => {
                        self.bump();
                        let name = self.declare_name(NameKind::Model)?;
                        self.expect_tok(Tok::Assign)?;
                        let expr = self.expr()?;
                        let with_walls = if let Tok::Ident(s) = &self.peek().tok {
                            s == "walls"
                        } else {
                            false
                        };
                        if with_walls {
                            self.bump();
                        }
                        scenario.models.push(ModelDef {
                            name,
                            expr,
                            with_walls,
                        });
                    }
                    "expect" => {
                        self.bump();
                        let t = self.peek().clone();
                        let name = self.ident_text()?;
                        if self.names.get(&name) != Some(&NameKind::Model) {
                            return self.error(&t, format!("unknown model `{name}`"));
                        }
                        self.expect_tok(Tok::EqEq)?;
                        let expected = self.poly_literal()?;
                        scenario.expectations.push((name, expected));
                    }
                    other => {
                        return self.error(
                            &t,
                            format!("expected `let`, `wall`, `model` or `expect`, found `{other}`"),
                        )
                    }
                },
                other => {
                    return self.error(
                        &t,
                        format!(
                            "expected `let`, `wall`, `model` or `expect`, found {}",
                            other.describe()
                        ),
                    )
                }
            }
        }
        Ok(scenario)
    }

    fn ident_text(&mut self) -> Result<String, ParseError> {
        let t = self.peek().clone();
        match &t.tok {
            Tok::Ident(s) if !RESERVED.contains(&s.as_str()) => {
                self.bump();
                Ok(s.clone())
            }
            Tok::Ident(s) => self.error(&t, format!("`{s}` is a reserved word")),
            other => self.error(
                &t,
                format!("expected an identifier, found {}", other.describe()),
            ),
        }
    }

    fn declare_name(&mut self, kind: NameKind) -> Result<String, ParseError> {
        let t = self.peek().clone();
        let name = self.ident_text()?;
        if self.names.contains_key(&name) {
            return self.error(&t, format!("duplicate identifier `{name}`"));
        }
        self.names.insert(name.clone(), kind);
        Ok(name)
    }

    fn rational(&mut self) -> Result<Ratio<i64>, ParseError> {
        let t = self.peek().clone();
        let numer = self.int_value("wall value")?;
        let denom = if self.peek().tok == Tok::Slash {
            self.bump();
            let d = self.int_value("wall denominator")?;
            if d == 0 {
                return self.error(&t, "wall denominator must be nonzero");
            }
            d
        } else {
            1
        };
        let alpha = Ratio::new(numer, denom);
        if alpha <= Ratio::from_integer(0) {
            return self.error(&t, "wall value must be positive");
        }
        Ok(alpha)
    }

    fn int_value(&mut self, what: &str) -> Result<i64, ParseError> {
        let t = self.peek().clone();
        if t.tok == Tok::Minus {
            return self.error(&t, format!("{what} must be non-negative"));
        }
        match &t.tok {
            Tok::Int(text) => {
                self.bump();
                text.parse::<i64>().map_err(|_| ParseError {
                    line: t.line,
                    col: t.col,
                    message: format!("{what} out of range"),
                })
            }
            other => self.error(
                &t,
                format!("expected an integer, found {}", other.describe()),
            ),
        }
    }

    fn u32_arg(&mut self, what: &str) -> Result<u32, ParseError> {
        let t = self.peek().clone();
        let v = self.int_value(what)?;
        u32::try_from(v).map_err(|_| ParseError {
            line: t.line,
            col: t.col,
            message: format!("{what} out of range"),
        })
    }

    fn poly_literal(&mut self) -> Result<Polynomial, ParseError> {
        self.expect_keyword("poly")?;
        let t = self.peek().clone();
        match &t.tok {
            Tok::Quoted(text) => {
                self.bump();
                text.parse::<Polynomial>().map_err(|e| ParseError {
                    line: t.line,
                    col: t.col,
                    message: e.to_string(),
                })
            }
            other => self.error(
                &t,
                format!(
                    "expected a quoted polynomial literal, found {}",
                    other.describe()
                ),
            ),
        }
    }

    /// `expr ("+" expr)*`: strata of one wall side. Top-level `+` separates
    /// the list items; `-` binds inside an item.
    fn expr_list(&mut self) -> Result<Vec<SpaceExpr>, ParseError> {
        let mut items = vec![self.additive(true)?];
        while self.peek().tok == Tok::Plus {
            self.bump();
            items.push(self.additive(true)?);
        }
        Ok(items)
    }

    fn expr(&mut self) -> Result<SpaceExpr, ParseError> {
        self.additive(false)
    }

    fn additive(&mut self, stop_at_plus: bool) -> Result<SpaceExpr, ParseError> {
        let mut acc = self.term()?;
        loop {
            match self.peek().tok {
                Tok::Plus if !stop_at_plus => {
                    self.bump();
                    acc = acc + self.term()?;
                }
                Tok::Minus => {
                    self.bump();
                    acc = acc - self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<SpaceExpr, ParseError> {
        let mut acc = self.factor()?;
        while self.peek().tok == Tok::Star {
            self.bump();
            acc = acc * self.factor()?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<SpaceExpr, ParseError> {
        let t = self.peek().clone();
        match &t.tok {
            Tok::LParen => {
                self.bump();
                let e = self.expr()?;
                self.expect_tok(Tok::RParen)?;
                Ok(e)
            }
            Tok::Ident(word) => match word.as_str() {
                "proj" => {
                    self.bump();
                    Ok(SpaceExpr::proj(self.unary_int_args("proj")?))
                }
                "aff" => {
                    self.bump();
                    Ok(SpaceExpr::aff(self.unary_int_args("aff")?))
                }
                "hilb" => {
                    self.bump();
                    Ok(SpaceExpr::hilb(self.unary_int_args("hilb")?))
                }
                "gr" => {
                    self.bump();
                    let (k, n) = self.binary_int_args("gr")?;
                    Ok(SpaceExpr::gr(k, n))
                }
                "relhilb" => {
                    self.bump();
                    let (d, n) = self.binary_int_args("relhilb")?;
                    Ok(SpaceExpr::relhilb(d, n))
                }
                "sym2" => {
                    self.bump();
                    Ok(SpaceExpr::sym2(self.unary_expr_arg()?))
                }
                "wedge2" => {
                    self.bump();
                    Ok(SpaceExpr::wedge2(self.unary_expr_arg()?))
                }
                "sym2od" => {
                    self.bump();
                    Ok(SpaceExpr::sym2_off_diag(self.unary_expr_arg()?))
                }
                "bundle" => {
                    self.bump();
                    self.expect_tok(Tok::LParen)?;
                    let fiber = self.expr()?;
                    self.expect_tok(Tok::Comma)?;
                    let base = self.expr()?;
                    self.expect_tok(Tok::RParen)?;
                    Ok(SpaceExpr::bundle(fiber, base))
                }
                "equivsq" => {
                    self.bump();
                    self.expect_tok(Tok::LParen)?;
                    let fiber = self.expr()?;
                    self.expect_tok(Tok::Comma)?;
                    let base_plus = self.expr()?;
                    self.expect_tok(Tok::Comma)?;
                    let base_minus = self.expr()?;
                    self.expect_tok(Tok::RParen)?;
                    Ok(SpaceExpr::equivariant_square(fiber, base_plus, base_minus))
                }
                "poly" => Ok(SpaceExpr::lit(self.poly_literal()?)),
                other if RESERVED.contains(&other) => {
                    self.error(&t, format!("`{other}` is a reserved word"))
                }
                name => {
                    if self.names.get(name) != Some(&NameKind::Binding) {
                        return self.error(&t, format!("unbound identifier `{name}`"));
                    }
                    self.bump();
                    Ok(SpaceExpr::ident(name))
                }
            },
            other => self.error(
                &t,
                format!("expected an expression, found {}", other.describe()),
            ),
        }
    }

    fn unary_int_args(&mut self, what: &str) -> Result<u32, ParseError> {
        self.expect_tok(Tok::LParen)?;
        let n = self.u32_arg(&format!("argument of {what}"))?;
        self.expect_tok(Tok::RParen)?;
        Ok(n)
    }

    fn binary_int_args(&mut self, what: &str) -> Result<(u32, u32), ParseError> {
        self.expect_tok(Tok::LParen)?;
        let a = self.u32_arg(&format!("first argument of {what}"))?;
        self.expect_tok(Tok::Comma)?;
        let b = self.u32_arg(&format!("second argument of {what}"))?;
        self.expect_tok(Tok::RParen)?;
        Ok((a, b))
    }

    fn unary_expr_arg(&mut self) -> Result<SpaceExpr, ParseError> {
        self.expect_tok(Tok::LParen)?;
        let e = self.expr()?;
        self.expect_tok(Tok::RParen)?;
        Ok(e)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::strata::SpaceExpr as E;

    #[test]
    fn parses_binding_and_wall() {
        let src = r#"
            # strata over a product base
            let x = proj(2) * proj(14)
            wall 18 {
                plus = bundle(proj(7), x);
                minus = bundle(proj(3), proj(2) * (proj(14) - proj(9))) + bundle(proj(4), proj(2) * proj(9))
            }
        "#;
        let s = parse_scenario(src).unwrap();
        assert_eq!(s.bindings.len(), 1);
        assert_eq!(s.bindings[0].0, "x");
        assert_eq!(s.walls.len(), 1);
        let wall = &s.walls[0];
        assert_eq!(wall.alpha, Ratio::from_integer(18));
        assert_eq!(wall.plus.len(), 1);
        assert_eq!(wall.minus.len(), 2);
        assert_eq!(wall.plus[0], E::bundle(E::proj(7), E::ident("x")));
    }

    #[test]
    fn empty_file_is_empty_scenario() {
        let s = parse_scenario("").unwrap();
        assert!(s.bindings.is_empty() && s.walls.is_empty());
        assert!(s.models.is_empty() && s.expectations.is_empty());
        let s = parse_scenario("# only a comment\n").unwrap();
        assert!(s.walls.is_empty());
    }

    #[test]
    fn expect_requires_declared_model() {
        let err = parse_scenario("expect M == poly\"1 + 3p\"").unwrap_err();
        assert!(
            err.message.contains("unknown model M") || err.message.contains("unknown model `M`")
        );
    }

    #[test]
    fn unbound_identifier_is_a_load_time_error() {
        let err = parse_scenario("let a = b * proj(1)").unwrap_err();
        assert_eq!(err.message, "unbound identifier `b`");
        assert_eq!((err.line, err.col), (1, 9));
    }

    #[test]
    fn duplicate_identifiers_rejected() {
        let err = parse_scenario("let a = proj(1)\nlet a = proj(2)").unwrap_err();
        assert!(err.message.contains("duplicate identifier `a`"));
        assert_eq!(err.line, 2);
        let err = parse_scenario("model m = proj(1)\nlet m = proj(2)").unwrap_err();
        assert!(err.message.contains("duplicate identifier `m`"));
    }

    #[test]
    fn malformed_polynomial_literal_is_positioned() {
        let err = parse_scenario("model m = poly\"1 + + p\"").unwrap_err();
        assert!(err.message.contains("malformed polynomial literal"));
        assert_eq!(err.line, 1);
    }

    #[test]
    fn rational_walls() {
        let s = parse_scenario("wall 1/2 { plus = proj(1); minus = proj(0) }").unwrap();
        assert_eq!(s.walls[0].alpha, Ratio::new(1, 2));
        assert!(parse_scenario("wall 0 { plus = proj(1); minus = proj(0) }").is_err());
        assert!(parse_scenario("wall 1/0 { plus = proj(1); minus = proj(0) }").is_err());
        assert!(parse_scenario("wall -3 { plus = proj(1); minus = proj(0) }").is_err());
    }

    #[test]
    fn stratum_lists_split_at_top_level_plus_only() {
        let s = parse_scenario("wall 3 { plus = proj(1) + proj(2) - proj(0); minus = proj(0) }")
            .unwrap();
        assert_eq!(s.walls[0].plus.len(), 2);
        assert_eq!(s.walls[0].plus[1], E::proj(2) - E::proj(0));
    }

    #[test]
    fn model_with_walls_suffix() {
        let s = parse_scenario("model m = proj(1) walls\nexpect m == poly\"1 + p\"").unwrap();
        assert!(s.models[0].with_walls);
        assert_eq!(s.expectations.len(), 1);
        let s = parse_scenario("model m = proj(1)").unwrap();
        assert!(!s.models[0].with_walls);
    }

    #[test]
    fn negative_atom_arguments_rejected() {
        let err = parse_scenario("let a = proj(-1)").unwrap_err();
        assert!(err.message.contains("non-negative"));
    }

    #[test]
    fn reserved_words_cannot_be_bound() {
        assert!(parse_scenario("let plus = proj(1)").is_err());
        assert!(parse_scenario("let poly = proj(1)").is_err());
    }

    #[test]
    fn unterminated_quote_is_an_error() {
        assert!(parse_scenario("model m = poly\"1 + p").is_err());
    }

    #[test]
    fn syntax_errors_carry_positions() {
        let err = parse_scenario("let x = proj(2)\nlet y = proj(2) *").unwrap_err();
        assert_eq!(err.line, 2);
        let err = parse_scenario("wall 3 plus").unwrap_err();
        assert_eq!((err.line, err.col), (1, 8));
    }
}
