//! Recipe grammar:
//!
//! ```text
//! recipe := (stmt? comment? NEWLINE)*
//! stmt   := "let" IDENT "=" expr | "emit" expr
//! expr   := IDENT "(" [arg ("," arg)*] ")" | IDENT
//! arg    := expr | INT | STRING
//! ```
//!
//! `#` starts a comment. Parsing includes name resolution and type checking,
//! so a successfully parsed recipe always evaluates up to domain errors.

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

use super::ast::{Expr, ExprKind, Flag, Pos, Recipe, Stmt, ValueType};
use crate::scalar::{parse_int, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{pos}: {kind}")]
pub struct ParseError {
    pub pos: Pos,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("syntax error: {0}")]
    Syntax(String),
    #[error("unknown function `{0}`")]
    UnknownFunction(String),
    #[error("unknown name `{0}`")]
    UnknownVariable(String),
    #[error("`{name}` is already bound")]
    DuplicateBinding { name: String },
    #[error("`{func}` takes {expected} arguments, got {found}")]
    Arity { func: String, expected: String, found: usize },
    #[error("type mismatch: {context} expects {expected}, got {found}")]
    TypeMismatch { context: String, expected: String, found: String },
    #[error("recipe has no `emit` statement")]
    NoEmit,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Int(String),
    Str(String),
    LParen,
    RParen,
    Comma,
    Eq,
    Newline,
    Eof,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "`{s}`"),
            Tok::Int(s) => write!(f, "integer {s}"),
            Tok::Str(s) => write!(f, "string {s:?}"),
            Tok::LParen => f.write_str("`(`"),
            Tok::RParen => f.write_str("`)`"),
            Tok::Comma => f.write_str("`,`"),
            Tok::Eq => f.write_str("`=`"),
            Tok::Newline => f.write_str("end of line"),
            Tok::Eof => f.write_str("end of input"),
        }
    }
}

fn syntax(pos: Pos, msg: impl Into<String>) -> ParseError {
    ParseError { pos, kind: ParseErrorKind::Syntax(msg.into()) }
}

fn lex(text: &str) -> Result<Vec<(Tok, Pos)>, ParseError> {
    let mut out = Vec::new();
    let mut chars = text.chars().peekable();
    let (mut line, mut col) = (1usize, 1usize);
    macro_rules! bump {
        () => {{
            let c = chars.next();
            if c == Some('\n') {
                line += 1;
                col = 1;
            } else if c.is_some() {
                col += 1;
            }
            c
        }};
    }
    while let Some(&c) = chars.peek() {
        let pos = Pos { line, col };
        match c {
            '\n' => {
                bump!();
                out.push((Tok::Newline, pos));
            }
            c if c.is_whitespace() => {
                bump!();
            }
            '#' => {
                while chars.peek().is_some_and(|&c| c != '\n') {
                    bump!();
                }
            }
            '(' | ')' | ',' | '=' => {
                bump!();
                out.push((
                    match c {
                        '(' => Tok::LParen,
                        ')' => Tok::RParen,
                        ',' => Tok::Comma,
                        _ => Tok::Eq,
                    },
                    pos,
                ));
            }
            '"' => {
                bump!();
                let mut s = String::new();
                loop {
                    match bump!() {
                        Some('"') => break,
                        Some('\\') => match bump!() {
                            Some('"') => s.push('"'),
                            Some('\\') => s.push('\\'),
                            Some('n') => s.push('\n'),
                            other => {
                                return Err(syntax(pos, format!("bad escape {other:?} in string")))
                            }
                        },
                        Some('\n') | None => return Err(syntax(pos, "unterminated string")),
                        Some(c) => s.push(c),
                    }
                }
                out.push((Tok::Str(s), pos));
            }
            '-' | '0'..='9' => {
                let mut s = String::new();
                if c == '-' {
                    s.push('-');
                    bump!();
                }
                while let Some(&d) = chars.peek().filter(|d| d.is_ascii_digit()) {
                    s.push(d);
                    bump!();
                }
                if s == "-" {
                    return Err(syntax(pos, "expected digits after `-`"));
                }
                if chars.peek().is_some_and(|c| c.is_alphanumeric() || *c == '_') {
                    return Err(syntax(pos, "malformed integer literal"));
                }
                out.push((Tok::Int(s), pos));
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let mut s = String::new();
                while let Some(&d) = chars.peek().filter(|d| d.is_ascii_alphanumeric() || **d == '_') {
                    s.push(d);
                    bump!();
                }
                out.push((Tok::Ident(s), pos));
            }
            other => return Err(syntax(pos, format!("unexpected character {other:?}"))),
        }
    }
    out.push((Tok::Eof, Pos { line, col }));
    Ok(out)
}

/// Untyped call tree.
#[derive(Debug, Clone)]
enum Raw {
    Call { name: String, args: Vec<Raw>, pos: Pos },
    Name { name: String, pos: Pos },
    Int { text: String, pos: Pos },
    Str { text: String, pos: Pos },
}

impl Raw {
    fn pos(&self) -> Pos {
        match self {
            Raw::Call { pos, .. } | Raw::Name { pos, .. } | Raw::Int { pos, .. } | Raw::Str { pos, .. } => *pos,
        }
    }

    fn describe(&self) -> String {
        match self {
            Raw::Call { name, .. } => format!("call to `{name}`"),
            Raw::Name { name, .. } => format!("`{name}`"),
            Raw::Int { .. } => "an integer".into(),
            Raw::Str { .. } => "a string".into(),
        }
    }
}

struct Parser {
    toks: Vec<(Tok, Pos)>,
    at: usize,
}

impl Parser {
    fn peek(&self) -> &(Tok, Pos) {
        &self.toks[self.at]
    }

    fn next(&mut self) -> (Tok, Pos) {
        let t = self.toks[self.at].clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn expect(&mut self, want: Tok) -> Result<Pos, ParseError> {
        let (tok, pos) = self.next();
        if tok == want {
            Ok(pos)
        } else {
            Err(syntax(pos, format!("expected {want}, found {tok}")))
        }
    }

    fn arg(&mut self) -> Result<Raw, ParseError> {
        match self.next() {
            (Tok::Int(text), pos) => Ok(Raw::Int { text, pos }),
            (Tok::Str(text), pos) => Ok(Raw::Str { text, pos }),
            (Tok::Ident(name), pos) => self.after_ident(name, pos),
            (tok, pos) => Err(syntax(pos, format!("expected an expression, found {tok}"))),
        }
    }

    fn expr(&mut self) -> Result<Raw, ParseError> {
        match self.next() {
            (Tok::Ident(name), pos) => self.after_ident(name, pos),
            (tok, pos) => Err(syntax(pos, format!("expected an expression, found {tok}"))),
        }
    }

    fn after_ident(&mut self, name: String, pos: Pos) -> Result<Raw, ParseError> {
        if self.peek().0 != Tok::LParen {
            return Ok(Raw::Name { name, pos });
        }
        self.next();
        let mut args = Vec::new();
        if self.peek().0 == Tok::RParen {
            self.next();
            return Ok(Raw::Call { name, args, pos });
        }
        loop {
            args.push(self.arg()?);
            match self.next() {
                (Tok::Comma, _) => continue,
                (Tok::RParen, _) => break,
                (tok, p) => return Err(syntax(p, format!("expected `,` or `)`, found {tok}"))),
            }
        }
        Ok(Raw::Call { name, args, pos })
    }

    fn end_of_stmt(&mut self) -> Result<(), ParseError> {
        match self.next() {
            (Tok::Newline | Tok::Eof, _) => Ok(()),
            (tok, pos) => Err(syntax(pos, format!("expected end of line, found {tok}"))),
        }
    }
}

struct Checker {
    env: HashMap<String, ValueType>,
}

fn mismatch(pos: Pos, context: &str, expected: impl fmt::Display, found: impl fmt::Display) -> ParseError {
    ParseError {
        pos,
        kind: ParseErrorKind::TypeMismatch {
            context: context.to_string(),
            expected: expected.to_string(),
            found: found.to_string(),
        },
    }
}

impl Checker {
    fn integer<T: Scalar>(&self, raw: &Raw, context: &str) -> Result<T, ParseError> {
        match raw {
            Raw::Int { text, pos } => {
                parse_int(text).ok_or_else(|| syntax(*pos, format!("integer literal {text} out of range")))
            }
            other => Err(mismatch(other.pos(), context, "an integer", other.describe())),
        }
    }

    fn typed<T: Scalar>(&self, raw: &Raw, want: ValueType, context: &str) -> Result<Expr<T>, ParseError> {
        let (expr, ty) = self.expr(raw)?;
        if ty != want {
            return Err(mismatch(raw.pos(), context, format!("a {want}"), format!("a {ty}")));
        }
        Ok(expr)
    }

    fn expr<T: Scalar>(&self, raw: &Raw) -> Result<(Expr<T>, ValueType), ParseError> {
        let (name, args, pos) = match raw {
            Raw::Name { name, pos } => {
                let ty = *self.env.get(name).ok_or_else(|| ParseError {
                    pos: *pos,
                    kind: ParseErrorKind::UnknownVariable(name.clone()),
                })?;
                return Ok((Expr { kind: ExprKind::Var(name.clone()), pos: *pos }, ty));
            }
            Raw::Call { name, args, pos } => (name.as_str(), args.as_slice(), *pos),
            other => {
                return Err(mismatch(other.pos(), "an expression", "a surface or 3-fold", other.describe()))
            }
        };
        let arity = |expected: usize| -> Result<(), ParseError> {
            if args.len() == expected {
                Ok(())
            } else {
                Err(ParseError {
                    pos,
                    kind: ParseErrorKind::Arity {
                        func: name.to_string(),
                        expected: expected.to_string(),
                        found: args.len(),
                    },
                })
            }
        };
        use ValueType::{Surface, ThreeFold};
        let (kind, ty) = match name {
            "surface" => {
                if args.len() < 3 {
                    return Err(ParseError {
                        pos,
                        kind: ParseErrorKind::Arity {
                            func: name.into(),
                            expected: "at least 3".into(),
                            found: args.len(),
                        },
                    });
                }
                let label = match &args[0] {
                    Raw::Str { text, .. } => text.clone(),
                    other => return Err(mismatch(other.pos(), "surface name", "a string", other.describe())),
                };
                let chi = self.integer(&args[1], "surface chi")?;
                let tau = self.integer(&args[2], "surface tau")?;
                let flags = args[3..]
                    .iter()
                    .map(|a| match a {
                        Raw::Name { name, .. } if Flag::from_keyword(name).is_some() => {
                            Ok(Flag::from_keyword(name).unwrap())
                        }
                        other => Err(mismatch(other.pos(), "surface flag", "a flag keyword", other.describe())),
                    })
                    .collect::<Result<_, _>>()?;
                (ExprKind::SurfaceLiteral { name: label, chi, tau, flags }, Surface)
            }
            "catalog" => {
                arity(1)?;
                (ExprKind::CatalogSurface(self.integer(&args[0], "catalog")?), Surface)
            }
            "connsum_cp2bar" => {
                arity(2)?;
                let s = self.typed(&args[0], Surface, "connsum_cp2bar")?;
                (ExprKind::ConnSumCp2bar(Box::new(s), self.integer(&args[1], "connsum_cp2bar")?), Surface)
            }
            "twistor" => {
                arity(1)?;
                (ExprKind::Twistor(Box::new(self.typed(&args[0], Surface, "twistor")?)), ThreeFold)
            }
            "proj_canonical" => {
                arity(1)?;
                (ExprKind::ProjCanonical(Box::new(self.typed(&args[0], Surface, "proj_canonical")?)), ThreeFold)
            }
            "k3_family" => {
                arity(1)?;
                (ExprKind::K3Family(self.integer(&args[0], "k3_family")?), ThreeFold)
            }
            "cp3_ac" => {
                arity(1)?;
                (ExprKind::Cp3Ac(self.integer(&args[0], "cp3_ac")?), ThreeFold)
            }
            "blowup" => {
                arity(2)?;
                let x = self.typed(&args[0], ThreeFold, "blowup")?;
                (ExprKind::BlowUp(Box::new(x), self.integer(&args[1], "blowup")?), ThreeFold)
            }
            "corollary" => {
                arity(2)?;
                (
                    ExprKind::CorollaryFamily(
                        self.integer(&args[0], "corollary")?,
                        self.integer(&args[1], "corollary")?,
                    ),
                    ThreeFold,
                )
            }
            other => {
                return Err(ParseError { pos, kind: ParseErrorKind::UnknownFunction(other.to_string()) })
            }
        };
        Ok((Expr { kind, pos }, ty))
    }
}

/// Parses and type-checks a recipe.
pub fn parse_recipe<T: Scalar>(text: &str) -> Result<Recipe<T>, ParseError> {
    let mut p = Parser { toks: lex(text)?, at: 0 };
    let mut checker = Checker { env: HashMap::new() };
    let mut stmts = Vec::new();
    loop {
        let (tok, pos) = p.next();
        match tok {
            Tok::Eof => break,
            Tok::Newline => continue,
            Tok::Ident(kw) if kw == "let" => {
                let name = match p.next() {
                    (Tok::Ident(n), _) if n != "let" && n != "emit" => n,
                    (tok, pos) => return Err(syntax(pos, format!("expected a name after `let`, found {tok}"))),
                };
                if checker.env.contains_key(&name) {
                    return Err(ParseError { pos, kind: ParseErrorKind::DuplicateBinding { name } });
                }
                p.expect(Tok::Eq)?;
                let raw = p.expr()?;
                p.end_of_stmt()?;
                let (expr, ty) = checker.expr(&raw)?;
                checker.env.insert(name.clone(), ty);
                stmts.push(Stmt::Let { name, expr });
            }
            Tok::Ident(kw) if kw == "emit" => {
                let raw = p.expr()?;
                p.end_of_stmt()?;
                let expr = checker.typed(&raw, ValueType::ThreeFold, "emit")?;
                stmts.push(Stmt::Emit { expr });
            }
            tok => return Err(syntax(pos, format!("expected `let` or `emit`, found {tok}"))),
        }
    }
    if !stmts.iter().any(|s| matches!(s, Stmt::Emit { .. })) {
        let pos = p.peek().1;
        return Err(ParseError { pos, kind: ParseErrorKind::NoEmit });
    }
    Ok(Recipe { stmts })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(text: &str) -> Result<Recipe<i64>, ParseError> {
        parse_recipe(text)
    }

    #[test]
    fn single_emit() {
        let r = parse("emit k3_family(2)").unwrap();
        assert_eq!(r.stmts.len(), 1);
        assert_eq!(r.stmts[0].expr().kind, ExprKind::K3Family(2));
    }

    #[test]
    fn three_line_chain() {
        let r = parse("let M = connsum_cp2bar(catalog(1), 14)\nlet Z = twistor(M)\nemit blowup(Z, 6)\n").unwrap();
        assert_eq!(r.stmts.len(), 3);
        match &r.stmts[2] {
            Stmt::Emit { expr } => match &expr.kind {
                ExprKind::BlowUp(inner, 6) => assert_eq!(inner.kind, ExprKind::Var("Z".into())),
                other => panic!("unexpected {other:?}"),
            },
            other => panic!("unexpected {other:?}"),
        }
        assert_eq!(r.stmts[1].expr().pos, Pos { line: 2, col: 9 });
    }

    #[test]
    fn literal_surface_with_flags() {
        let r = parse("emit twistor(connsum_cp2bar(surface(\"K3\",24,-16,spin,kahler), 5))  # comment").unwrap();
        let ExprKind::Twistor(inner) = &r.stmts[0].expr().kind else { panic!() };
        let ExprKind::ConnSumCp2bar(s, 5) = &inner.kind else { panic!() };
        assert_eq!(
            s.kind,
            ExprKind::SurfaceLiteral {
                name: "K3".into(),
                chi: 24,
                tau: -16,
                flags: vec![Flag::Spin, Flag::Kahler]
            }
        );
    }

    #[test]
    fn twistor_of_threefold_is_type_error() {
        let err = parse("emit twistor(blowup(k3_family(1), 1))").unwrap_err();
        assert!(matches!(err.kind, ParseErrorKind::TypeMismatch { .. }), "{err}");
        assert_eq!(err.pos, Pos { line: 1, col: 14 });
    }

    #[test]
    fn blowup_of_surface_is_type_error() {
        let err = parse("let S = catalog(1)\nemit blowup(S, 2)").unwrap_err();
        assert!(matches!(err.kind, ParseErrorKind::TypeMismatch { .. }));
        assert_eq!(err.pos.line, 2);
    }

    #[test]
    fn emit_of_surface_is_type_error() {
        assert!(matches!(parse("emit catalog(1)").unwrap_err().kind, ParseErrorKind::TypeMismatch { .. }));
    }

    #[test]
    fn errors_carry_positions() {
        let err = parse("\n  emit k3_family(2").unwrap_err();
        assert!(matches!(err.kind, ParseErrorKind::Syntax(_)));
        assert_eq!(err.pos.line, 2);

        let err = parse("emit frobnicate(2)").unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::UnknownFunction("frobnicate".into()));

        let err = parse("emit blowup(k3_family(2))").unwrap_err();
        assert!(matches!(err.kind, ParseErrorKind::Arity { found: 1, .. }));

        let err = parse("emit blowup(X, 1)").unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::UnknownVariable("X".into()));

        let err = parse("let X = k3_family(1)\nlet X = k3_family(2)\nemit X").unwrap_err();
        assert!(matches!(err.kind, ParseErrorKind::DuplicateBinding { .. }));

        assert_eq!(parse("let X = k3_family(1)").unwrap_err().kind, ParseErrorKind::NoEmit);
        assert!(matches!(parse("emit k3_family(1) k3_family(2)").unwrap_err().kind, ParseErrorKind::Syntax(_)));
        assert!(matches!(parse("emit k3_family(\"two\")").unwrap_err().kind, ParseErrorKind::TypeMismatch { .. }));
        assert!(matches!(parse("emit k3_family(12a)").unwrap_err().kind, ParseErrorKind::Syntax(_)));
        assert!(matches!(parse("emit k3_family(99999999999999999999)").unwrap_err().kind, ParseErrorKind::Syntax(_)));
        assert!(matches!(parse("emit surface(\"x\", 1)").unwrap_err().kind, ParseErrorKind::Arity { .. }));
        assert!(matches!(
            parse("emit twistor(surface(\"x\", 4, 0, shiny))").unwrap_err().kind,
            ParseErrorKind::TypeMismatch { .. }
        ));
        assert!(matches!(parse("emit surface(\"x").unwrap_err().kind, ParseErrorKind::Syntax(_)));
        assert!(matches!(parse("emit k3_family(2) $").unwrap_err().kind, ParseErrorKind::Syntax(_)));
    }

    #[test]
    fn big_literals_parse_as_bigint() {
        let r: Recipe<num_bigint::BigInt> = parse_recipe("emit k3_family(99999999999999999999)").unwrap();
        assert_eq!(r.stmts[0].expr().kind, ExprKind::K3Family("99999999999999999999".parse().unwrap()));
    }

    #[test]
    fn print_is_reparseable() {
        let text = "# header\nlet M = connsum_cp2bar(surface(\"a \\\"b\\\"\", 4, 0, spin, nonkahler), 3)\n\nlet Z = proj_canonical(M)\nemit blowup(Z, 2)\nemit corollary(2, 3)\nemit cp3_ac(-1)\n";
        let r = parse(text).unwrap();
        let printed = r.to_string();
        assert_eq!(parse(&printed).unwrap(), r);
    }
}
