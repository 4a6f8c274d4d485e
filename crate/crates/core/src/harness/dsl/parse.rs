use std::fmt;

use super::ast::{Arg, BinOp, DeclKind, Expr, ExprKind, Pos, Script, Stmt, StmtKind};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub pos: Pos,
    pub msg: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}: {}", self.pos.line, self.pos.col, self.msg)
    }
}

impl std::error::Error for ParseError {}

fn err<T>(pos: Pos, msg: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError { pos, msg: msg.into() })
}

pub const KEYWORDS: &[&str] = &["domain", "ideal", "pideal", "op", "let", "eval", "compare", "check", "with", "on", "slice"];

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(i64),
    Ident(String),
    Sym(char),
    End,
}

fn lex(text: &str, line: usize, col0: usize) -> Result<Vec<(Tok, Pos)>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let pos = Pos { line, col: col0 + i };
        if c == '#' {
            break;
        }
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            let n = s.parse().map_err(|_| ParseError { pos, msg: format!("integer {s} out of range") })?;
            out.push((Tok::Int(n), pos));
        } else if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push((Tok::Ident(chars[start..i].iter().collect()), pos));
        } else if "()[],=+-*/^".contains(c) {
            out.push((Tok::Sym(c), pos));
            i += 1;
        } else {
            return err(pos, format!("unexpected character '{c}'"));
        }
    }
    out.push((Tok::End, Pos { line, col: col0 + chars.len() }));
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, Pos)>,
    i: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.i].0
    }

    fn peek2(&self) -> &Tok {
        &self.toks[(self.i + 1).min(self.toks.len() - 1)].0
    }

    fn pos(&self) -> Pos {
        self.toks[self.i].1
    }

    fn bump(&mut self) -> (Tok, Pos) {
        let t = self.toks[self.i].clone();
        if self.i + 1 < self.toks.len() {
            self.i += 1;
        }
        t
    }

    fn eat(&mut self, c: char) -> bool {
        if *self.peek() == Tok::Sym(c) {
            self.bump();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<Pos, ParseError> {
        let pos = self.pos();
        if self.eat(c) {
            Ok(pos)
        } else {
            err(pos, format!("expected '{c}', found {}", self.describe()))
        }
    }

    fn describe(&self) -> String {
        match self.peek() {
            Tok::Int(n) => format!("'{n}'"),
            Tok::Ident(s) => format!("'{s}'"),
            Tok::Sym(c) => format!("'{c}'"),
            Tok::End => "end of line".into(),
        }
    }

    fn is_word(&self, w: &str) -> bool {
        matches!(self.peek(), Tok::Ident(s) if s == w)
    }

    fn name(&mut self) -> Result<(String, Pos), ParseError> {
        match self.bump() {
            (Tok::Ident(s), pos) if !KEYWORDS.contains(&s.as_str()) => Ok((s, pos)),
            (Tok::Ident(s), pos) => err(pos, format!("'{s}' is a keyword")),
            (_, pos) => err(pos, "expected a name"),
        }
    }

    fn end(&self) -> Result<(), ParseError> {
        match self.peek() {
            Tok::End => Ok(()),
            _ => err(self.pos(), format!("unexpected {} after statement", self.describe())),
        }
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut l = self.product()?;
        loop {
            let op = match self.peek() {
                Tok::Sym('+') => BinOp::Add,
                Tok::Sym('-') => BinOp::Sub,
                _ => return Ok(l),
            };
            let pos = l.pos;
            self.bump();
            let r = self.product()?;
            l = Expr { kind: ExprKind::Bin(op, Box::new(l), Box::new(r)), pos };
        }
    }

    fn product(&mut self) -> Result<Expr, ParseError> {
        let mut l = self.unary()?;
        loop {
            let op = match self.peek() {
                Tok::Sym('*') => BinOp::Mul,
                Tok::Sym('/') => BinOp::Div,
                _ => return Ok(l),
            };
            let pos = l.pos;
            self.bump();
            let r = self.unary()?;
            l = Expr { kind: ExprKind::Bin(op, Box::new(l), Box::new(r)), pos };
        }
    }

    fn unary(&mut self) -> Result<Expr, ParseError> {
        let pos = self.pos();
        if self.eat('-') {
            let x = self.unary()?;
            return Ok(Expr { kind: ExprKind::Neg(Box::new(x)), pos });
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr, ParseError> {
        let base = self.atom()?;
        if self.eat('^') {
            let e = self.unary()?;
            let pos = base.pos;
            return Ok(Expr { kind: ExprKind::Bin(BinOp::Pow, Box::new(base), Box::new(e)), pos });
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        let pos = self.pos();
        match self.peek().clone() {
            Tok::Int(n) => {
                self.bump();
                Ok(Expr { kind: ExprKind::Int(n), pos })
            }
            Tok::Ident(_) => {
                let (name, pos) = self.name()?;
                if *self.peek() == Tok::Sym('(') {
                    let open = self.pos();
                    self.bump();
                    let args = self.args(open)?;
                    return Ok(Expr { kind: ExprKind::Call { name, args }, pos });
                }
                Ok(Expr { kind: ExprKind::Ident(name), pos })
            }
            Tok::Sym('(') => {
                self.bump();
                let x = self.expr()?;
                if *self.peek() == Tok::End {
                    return err(pos, "unclosed '('");
                }
                self.expect(')')?;
                Ok(x)
            }
            Tok::Sym('[') => {
                self.bump();
                let mut xs = Vec::new();
                if !self.eat(']') {
                    loop {
                        if *self.peek() == Tok::End {
                            return err(pos, "unclosed '['");
                        }
                        xs.push(self.expr()?);
                        if self.eat(']') {
                            break;
                        }
                        if *self.peek() == Tok::End {
                            return err(pos, "unclosed '['");
                        }
                        self.expect(',')?;
                    }
                }
                Ok(Expr { kind: ExprKind::List(xs), pos })
            }
            _ => err(pos, format!("expected an expression, found {}", self.describe())),
        }
    }

    fn args(&mut self, open: Pos) -> Result<Vec<Arg>, ParseError> {
        let mut args = Vec::new();
        if self.eat(')') {
            return Ok(args);
        }
        loop {
            if *self.peek() == Tok::End {
                return err(open, "unclosed '('");
            }
            let named = matches!(self.peek(), Tok::Ident(_)) && *self.peek2() == Tok::Sym('=');
            let name = if named {
                let (n, _) = self.name()?;
                self.bump();
                Some(n)
            } else {
                None
            };
            args.push(Arg { name, value: self.expr()? });
            if self.eat(')') {
                return Ok(args);
            }
            if *self.peek() == Tok::End {
                return err(open, "unclosed '('");
            }
            self.expect(',')?;
        }
    }
}

fn parse_line(text: &str, line: usize) -> Result<Option<Stmt>, ParseError> {
    let trimmed = text.trim_start();
    if trimmed.is_empty() || trimmed.starts_with('#') {
        return Ok(None);
    }
    let col0 = text[..text.len() - trimmed.len()].chars().count() + 1;
    let pos = Pos { line, col: col0 };
    if let Some(rest) = trimmed.strip_prefix("check").filter(|r| r.starts_with(char::is_whitespace)) {
        let body = rest.trim_start();
        let claim_col = col0 + "check".len() + rest[..rest.len() - body.len()].chars().count();
        let claim: String = body.chars().take_while(|c| !c.is_whitespace() && *c != '#').collect();
        if claim.is_empty() {
            return err(Pos { line, col: claim_col }, "expected a claim id");
        }
        let after = &body[claim.len()..];
        let mut p = Parser { toks: lex(after, line, claim_col + claim.chars().count())?, i: 0 };
        let mut with = Vec::new();
        if p.is_word("with") {
            p.bump();
            loop {
                // setting names may coincide with keywords such as `slice`
                let k = match p.bump() {
                    (Tok::Ident(k), _) => k,
                    (_, pos) => return err(pos, "expected a setting name"),
                };
                p.expect('=')?;
                with.push((k, p.expr()?));
                if !p.eat(',') {
                    break;
                }
            }
        }
        p.end()?;
        return Ok(Some(Stmt { kind: StmtKind::Check { claim, with }, pos }));
    }
    let mut p = Parser { toks: lex(text, line, 1)?, i: 0 };
    let kind = match p.peek().clone() {
        Tok::Ident(w) if DeclKind::from_keyword(&w).is_some() => {
            p.bump();
            let (name, _) = p.name()?;
            p.expect('=')?;
            let value = p.expr()?;
            StmtKind::Bind { kind: DeclKind::from_keyword(&w).expect("checked"), name, value }
        }
        Tok::Ident(w) if w == "eval" => {
            p.bump();
            let expr = p.expr()?;
            let slice = if p.is_word("slice") {
                p.bump();
                match p.bump() {
                    (Tok::Int(n), _) => Some(n as usize),
                    (_, pos) => return err(pos, "expected a slice degree"),
                }
            } else {
                None
            };
            StmtKind::Eval { expr, slice }
        }
        Tok::Ident(w) if w == "compare" => {
            p.bump();
            let left = p.expr()?;
            p.expect(',')?;
            let right = p.expr()?;
            if !p.is_word("on") {
                return err(p.pos(), "expected 'on'");
            }
            p.bump();
            let mut on = vec![p.expr()?];
            while p.eat(',') {
                on.push(p.expr()?);
            }
            StmtKind::Compare { left, right, on }
        }
        _ => return err(p.pos(), format!("expected a statement, found {}", p.describe())),
    };
    p.end()?;
    Ok(Some(Stmt { kind, pos }))
}

/// Parses a script: one statement per line, `#` starts a comment.
pub fn parse(text: &str) -> Result<Script, ParseError> {
    let mut stmts = Vec::new();
    for (i, line) in text.lines().enumerate() {
        if let Some(s) = parse_line(line, i + 1)? {
            stmts.push(s);
        }
    }
    Ok(Script { stmts })
}
