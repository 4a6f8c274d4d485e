use std::fmt;
use std::hash::{Hash, Hasher};

/// Source position, 1-based. Positions never take part in equality or
/// hashing, so two parses of the same statements compare equal.
#[derive(Debug, Clone, Copy, Default)]
pub struct Pos {
    pub line: usize,
    pub col: usize,
}

impl PartialEq for Pos {
    fn eq(&self, _: &Pos) -> bool {
        true
    }
}

impl Eq for Pos {}

impl Hash for Pos {
    fn hash<H: Hasher>(&self, _: &mut H) {}
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.col)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
    /// Powers of elements and polynomials, or application `E ^ op`.
    Pow,
}

impl BinOp {
    pub fn symbol(self) -> &'static str {
        match self {
            BinOp::Add => "+",
            BinOp::Sub => "-",
            BinOp::Mul => "*",
            BinOp::Div => "/",
            BinOp::Pow => "^",
        }
    }

    pub fn prec(self) -> u8 {
        match self {
            BinOp::Add | BinOp::Sub => 1,
            BinOp::Mul | BinOp::Div => 2,
            BinOp::Pow => 4,
        }
    }
}

pub const NEG_PREC: u8 = 3;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Arg {
    pub name: Option<String>,
    pub value: Expr,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum ExprKind {
    Int(i64),
    Ident(String),
    Call { name: String, args: Vec<Arg> },
    List(Vec<Expr>),
    Neg(Box<Expr>),
    Bin(BinOp, Box<Expr>, Box<Expr>),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Expr {
    pub kind: ExprKind,
    pub pos: Pos,
}

impl Expr {
    pub fn prec(&self) -> u8 {
        match &self.kind {
            ExprKind::Bin(op, ..) => op.prec(),
            ExprKind::Neg(_) => NEG_PREC,
            _ => u8::MAX,
        }
    }
}

/// The keyword of a binding; all but `let` also fix the value's type.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DeclKind {
    Domain,
    Ideal,
    Pideal,
    Op,
    Let,
}

impl DeclKind {
    pub fn keyword(self) -> &'static str {
        match self {
            DeclKind::Domain => "domain",
            DeclKind::Ideal => "ideal",
            DeclKind::Pideal => "pideal",
            DeclKind::Op => "op",
            DeclKind::Let => "let",
        }
    }

    pub fn from_keyword(s: &str) -> Option<Self> {
        Some(match s {
            "domain" => DeclKind::Domain,
            "ideal" => DeclKind::Ideal,
            "pideal" => DeclKind::Pideal,
            "op" => DeclKind::Op,
            "let" => DeclKind::Let,
            _ => return None,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum StmtKind {
    Bind { kind: DeclKind, name: String, value: Expr },
    Eval { expr: Expr, slice: Option<usize> },
    Compare { left: Expr, right: Expr, on: Vec<Expr> },
    Check { claim: String, with: Vec<(String, Expr)> },
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Stmt {
    pub kind: StmtKind,
    pub pos: Pos,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Script {
    pub stmts: Vec<Stmt>,
}

fn write_child(f: &mut fmt::Formatter<'_>, e: &Expr, min: u8) -> fmt::Result {
    if e.prec() < min {
        write!(f, "({e})")
    } else {
        write!(f, "{e}")
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            ExprKind::Int(n) => write!(f, "{n}"),
            ExprKind::Ident(s) => write!(f, "{s}"),
            ExprKind::Call { name, args } => {
                write!(f, "{name}(")?;
                for (i, a) in args.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    if let Some(n) = &a.name {
                        write!(f, "{n}=")?;
                    }
                    write!(f, "{}", a.value)?;
                }
                write!(f, ")")
            }
            ExprKind::List(xs) => {
                write!(f, "[")?;
                for (i, x) in xs.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{x}")?;
                }
                write!(f, "]")
            }
            ExprKind::Neg(x) => {
                write!(f, "-")?;
                write_child(f, x, NEG_PREC)
            }
            ExprKind::Bin(op, l, r) => {
                let p = op.prec();
                let (lmin, rmin) = if *op == BinOp::Pow { (p + 1, p) } else { (p, p + 1) };
                write_child(f, l, lmin)?;
                write!(f, " {} ", op.symbol())?;
                write_child(f, r, rmin)
            }
        }
    }
}

impl fmt::Display for Stmt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            StmtKind::Bind { kind, name, value } => write!(f, "{} {name} = {value}", kind.keyword()),
            StmtKind::Eval { expr, slice } => {
                write!(f, "eval {expr}")?;
                if let Some(n) = slice {
                    write!(f, " slice {n}")?;
                }
                Ok(())
            }
            StmtKind::Compare { left, right, on } => {
                write!(f, "compare {left}, {right} on ")?;
                for (i, x) in on.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{x}")?;
                }
                Ok(())
            }
            StmtKind::Check { claim, with } => {
                write!(f, "check {claim}")?;
                for (i, (k, v)) in with.iter().enumerate() {
                    write!(f, "{}{k}={v}", if i == 0 { " with " } else { ", " })?;
                }
                Ok(())
            }
        }
    }
}

impl fmt::Display for Script {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.stmts {
            writeln!(f, "{s}")?;
        }
        Ok(())
    }
}
