use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::domain::{Domain, ModuleValue, OrderDomain, PrimeIdeal, Space};
use crate::exactnum::{FieldElement, Poly};
use crate::lattice::FractionalIdeal;
use crate::polyext::{content_of, CurlyStable, Nagata, OverTag, PolyIdeal, PolyOperator, SliceValue, Triangle};
use crate::starops::{compare, default_eab_pool, CertifiedValue, Mode, SemistarOp};

use super::super::claims::{run_suite, Config};
use super::ast::{Arg, BinOp, DeclKind, Expr, ExprKind, Pos, Script, Stmt, StmtKind};
use super::parse::ParseError;

/// Arity and argument shape of a built-in function.
struct Sig {
    min: usize,
    max: Option<usize>,
    named: &'static [&'static str],
    /// Positional arguments read as bare words rather than evaluated.
    raw: &'static [usize],
}

const fn sig(min: usize, max: Option<usize>) -> Sig {
    Sig { min, max, named: &[], raw: &[] }
}

fn signature(name: &str) -> Option<Sig> {
    Some(match name {
        "integers" | "conductor" | "maxorder" | "ring" => sig(0, Some(0)),
        "order" => Sig { min: 0, max: Some(2), named: &["m", "f"], raw: &[] },
        "prime" => sig(2, Some(3)),
        "idl" | "pidl" | "spectral" | "wedge" => sig(1, None),
        "content" | "stable" | "eab" | "overring" | "finite" | "nagata" | "bracketop" => sig(1, Some(1)),
        "std" => Sig { min: 1, max: Some(1), named: &[], raw: &[0] },
        "tri" => Sig { min: 1, max: Some(2), named: &[], raw: &[1] },
        _ => return None,
    })
}

/// Names available without a binding.
const BUILTIN_NAMES: &[&str] = &["w", "X"];

fn aerr<T>(pos: Pos, msg: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError { pos, msg: msg.into() })
}

fn analyze_expr(e: &Expr, bound: &[String]) -> Result<(), ParseError> {
    match &e.kind {
        ExprKind::Int(_) => Ok(()),
        ExprKind::Ident(n) => {
            if bound.iter().any(|b| b == n) || BUILTIN_NAMES.contains(&n.as_str()) {
                Ok(())
            } else {
                aerr(e.pos, format!("unknown identifier '{n}'"))
            }
        }
        ExprKind::Call { name, args } => {
            let Some(s) = signature(name) else { return aerr(e.pos, format!("unknown function '{name}'")) };
            let positional = args.iter().filter(|a| a.name.is_none()).count();
            let named = args.len() - positional;
            if positional + named < s.min || s.max.is_some_and(|m| positional > m) {
                let want = match s.max {
                    Some(m) if m == s.min => format!("{m}"),
                    Some(m) => format!("{} to {m}", s.min),
                    None => format!("at least {}", s.min),
                };
                return aerr(e.pos, format!("{name} takes {want} arguments, got {}", args.len()));
            }
            let mut k = 0;
            for a in args {
                match &a.name {
                    Some(n) if !s.named.contains(&n.as_str()) => {
                        return aerr(a.value.pos, format!("{name} has no argument '{n}'"));
                    }
                    Some(_) => analyze_expr(&a.value, bound)?,
                    None => {
                        if s.raw.contains(&k) {
                            if !matches!(a.value.kind, ExprKind::Ident(_)) {
                                return aerr(a.value.pos, format!("argument {} of {name} must be a bare name", k + 1));
                            }
                        } else {
                            analyze_expr(&a.value, bound)?;
                        }
                        k += 1;
                    }
                }
            }
            Ok(())
        }
        ExprKind::List(xs) => xs.iter().try_for_each(|x| analyze_expr(x, bound)),
        ExprKind::Neg(x) => analyze_expr(x, bound),
        ExprKind::Bin(_, l, r) => {
            analyze_expr(l, bound)?;
            analyze_expr(r, bound)
        }
    }
}

/// Rejects unknown names, unknown functions and arity mismatches before
/// anything is evaluated.
pub fn analyze(script: &Script) -> Result<(), ParseError> {
    let mut bound: Vec<String> = Vec::new();
    for s in &script.stmts {
        match &s.kind {
            StmtKind::Bind { name, value, .. } => {
                analyze_expr(value, &bound)?;
                bound.push(name.clone());
            }
            StmtKind::Eval { expr, .. } => analyze_expr(expr, &bound)?,
            StmtKind::Compare { left, right, on } => {
                analyze_expr(left, &bound)?;
                analyze_expr(right, &bound)?;
                on.iter().try_for_each(|x| analyze_expr(x, &bound))?;
            }
            StmtKind::Check { claim, with } => {
                if claim != "all" && !super::super::claims::claim_ids().contains(&claim.as_str()) {
                    return aerr(s.pos, format!("unknown claim id '{claim}'"));
                }
                for (k, v) in with {
                    if !["slice", "mult_cap", "witness_deg", "seed", "pool_norm"].contains(&k.as_str()) {
                        return aerr(v.pos, format!("unknown setting '{k}'"));
                    }
                    analyze_expr(v, &bound)?;
                }
            }
        }
    }
    Ok(())
}

#[derive(Clone)]
pub enum Value {
    Int(i64),
    Elem(FieldElement),
    Poly(Poly),
    List(Vec<Value>),
    Domain(Domain),
    Prime(PrimeIdeal),
    Ideal(FractionalIdeal),
    Pideal(PolyIdeal),
    Op(SemistarOp),
    PolyOp(Arc<dyn PolyOperator>),
    Closed(CertifiedValue),
    Slices(Vec<SliceValue>),
}

impl Value {
    fn type_name(&self) -> &'static str {
        match self {
            Value::Int(_) => "integer",
            Value::Elem(_) => "element",
            Value::Poly(_) => "polynomial",
            Value::List(_) => "list",
            Value::Domain(_) => "domain",
            Value::Prime(_) => "prime",
            Value::Ideal(_) => "ideal",
            Value::Pideal(_) => "polynomial ideal",
            Value::Op(_) => "operation",
            Value::PolyOp(_) => "polynomial operation",
            Value::Closed(_) => "closure value",
            Value::Slices(_) => "slices",
        }
    }
}

fn write_module(f: &mut fmt::Formatter<'_>, sp: &Space, v: &ModuleValue) -> fmt::Result {
    match v {
        ModuleValue::Lattice(l) if sp.amb.slots > 1 => {
            let ps: Vec<String> = l.basis().iter().map(|b| sp.amb.vec_poly(b).to_string()).collect();
            write!(f, "Z<{}>", ps.join(", "))
        }
        _ => write!(f, "{v}"),
    }
}

fn write_certified(f: &mut fmt::Formatter<'_>, sp: &Space, c: &CertifiedValue) -> fmt::Result {
    match c.mode() {
        Mode::Exact => {
            write!(f, "exact ")?;
            write_module(f, sp, c.exact_value().expect("exact"))
        }
        m => {
            write!(f, "{} ", format!("{m:?}").to_lowercase())?;
            if let Some(l) = c.lower() {
                write!(f, "lower ")?;
                write_module(f, sp, l)?;
            }
            if let Some(u) = c.upper() {
                write!(f, "{}upper ", if c.lower().is_some() { "; " } else { "" })?;
                write_module(f, sp, u)?;
            }
            Ok(())
        }
    }
}

struct Shown<'a>(&'a Value, Option<&'a Domain>);

impl fmt::Display for Shown<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0 {
            Value::Int(n) => write!(f, "{n}"),
            Value::Elem(x) => write!(f, "{x}"),
            Value::Poly(p) => write!(f, "{p}"),
            Value::List(xs) => {
                write!(f, "[")?;
                for (i, x) in xs.iter().enumerate() {
                    write!(f, "{}{}", if i > 0 { ", " } else { "" }, Shown(x, self.1))?;
                }
                write!(f, "]")
            }
            Value::Domain(d) => write!(f, "{d}"),
            Value::Prime(p) => write!(f, "{p}"),
            Value::Ideal(e) => write!(f, "{e}"),
            Value::Pideal(a) => write!(f, "{a}"),
            Value::Op(o) => write!(f, "{}", o.name()),
            Value::PolyOp(o) => write!(f, "{}", o.name()),
            Value::Closed(c) => match self.1 {
                Some(d) => write_certified(f, &Space::new(d, 1), c),
                None => write!(f, "{c:?}"),
            },
            Value::Slices(ss) => {
                for (i, s) in ss.iter().enumerate() {
                    if i > 0 {
                        writeln!(f)?;
                    }
                    write!(f, "slice {}: ", s.n)?;
                    if s.beyond_polys {
                        write!(f, "(value leaves K[X]) ")?;
                    }
                    match self.1 {
                        Some(d) => write_certified(f, &Space::new(d, s.n + 1), &s.value)?,
                        None => write!(f, "{:?}", s.value)?,
                    }
                }
                Ok(())
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EvalError {
    pub pos: Pos,
    pub msg: String,
}

impl fmt::Display for EvalError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}: {}", self.pos.line, self.pos.col, self.msg)
    }
}

impl std::error::Error for EvalError {}

fn eerr<T>(pos: Pos, msg: impl Into<String>) -> Result<T, EvalError> {
    Err(EvalError { pos, msg: msg.into() })
}

/// Evaluation state: bindings, the domain elements are read in, and the
/// budgets used by polynomial operations and claim checks.
pub struct Session {
    env: HashMap<String, Value>,
    current: Option<Domain>,
    pub cfg: Config,
    /// Exit code of the worst `check` so far (0 when none ran).
    pub check_code: i32,
}

impl Session {
    pub fn new(cfg: Config) -> Self {
        Session { env: HashMap::new(), current: None, cfg, check_code: 0 }
    }

    fn domain(&self, pos: Pos) -> Result<&Domain, EvalError> {
        match &self.current {
            Some(d) => Ok(d),
            None => eerr(pos, "no domain declared yet"),
        }
    }

    fn elem(&self, v: Value, pos: Pos) -> Result<FieldElement, EvalError> {
        match v {
            Value::Int(n) => Ok(self.domain(pos)?.int(n)),
            Value::Elem(x) => Ok(x),
            Value::Poly(p) if p.degree().unwrap_or(0) == 0 => Ok(p.coeff(0)),
            other => eerr(pos, format!("expected an element, found {}", other.type_name())),
        }
    }

    fn poly(&self, v: Value, pos: Pos) -> Result<Poly, EvalError> {
        match v {
            Value::Poly(p) => Ok(p),
            other => Ok(Poly::constant(self.elem(other, pos)?)),
        }
    }

    fn op(v: Value, pos: Pos) -> Result<SemistarOp, EvalError> {
        match v {
            Value::Op(o) => Ok(o),
            other => eerr(pos, format!("expected an operation, found {}", other.type_name())),
        }
    }

    fn ideal(&self, v: Value, pos: Pos) -> Result<FractionalIdeal, EvalError> {
        match v {
            Value::Ideal(e) => Ok(e),
            Value::Prime(p) => Ok(p.ideal().clone()),
            other => {
                let x = self.elem(other, pos)?;
                Ok(self.domain(pos)?.ideal(&[x]))
            }
        }
    }

    fn flatten(v: Value, out: &mut Vec<Value>) {
        match v {
            Value::List(xs) => xs.into_iter().for_each(|x| Self::flatten(x, out)),
            x => out.push(x),
        }
    }

    fn positional(&mut self, args: &[Arg]) -> Result<Vec<(Value, Pos)>, EvalError> {
        let mut out = Vec::new();
        for a in args.iter().filter(|a| a.name.is_none()) {
            let v = self.eval(&a.value)?;
            let mut flat = Vec::new();
            Self::flatten(v, &mut flat);
            out.extend(flat.into_iter().map(|x| (x, a.value.pos)));
        }
        Ok(out)
    }

    fn raw_word(args: &[Arg], k: usize) -> Option<&str> {
        match args.iter().filter(|a| a.name.is_none()).nth(k).map(|a| &a.value.kind) {
            Some(ExprKind::Ident(s)) => Some(s),
            _ => None,
        }
    }

    fn call(&mut self, name: &str, args: &[Arg], pos: Pos) -> Result<Value, EvalError> {
        let wrap = |e: &dyn fmt::Display| EvalError { pos, msg: e.to_string() };
        match name {
            "integers" => Ok(Value::Domain(OrderDomain::integers())),
            "order" => {
                let mut m = None;
                let mut f = None;
                let mut pos_args = Vec::new();
                for a in args {
                    let v = self.eval(&a.value)?;
                    let Value::Int(n) = v else { return eerr(a.value.pos, "order takes integer arguments") };
                    match a.name.as_deref() {
                        Some("m") => m = Some(n),
                        Some("f") => f = Some(n),
                        _ => pos_args.push(n),
                    }
                }
                let mut it = pos_args.into_iter();
                let m = m.or_else(|| it.next()).ok_or_else(|| EvalError { pos, msg: "order needs m".into() })?;
                let f = f.or_else(|| it.next()).unwrap_or(1);
                OrderDomain::order(m, f).map(Value::Domain).map_err(|e| wrap(&e))
            }
            "conductor" => Ok(Value::Ideal(self.domain(pos)?.conductor().clone())),
            "maxorder" => Ok(Value::Ideal(self.domain(pos)?.maximal_order().clone())),
            "ring" => Ok(Value::Ideal(self.domain(pos)?.ring().clone())),
            "prime" => {
                let vals = self.positional(args)?;
                let Value::Domain(d) = &vals[0].0 else { return eerr(vals[0].1, "prime needs a domain first") };
                let Value::Int(p) = vals[1].0 else { return eerr(vals[1].1, "prime needs a rational prime") };
                if p < 2 {
                    return eerr(vals[1].1, "prime needs a rational prime");
                }
                if vals.len() == 2 {
                    return d
                        .primes_above(p as u64)
                        .into_iter()
                        .next()
                        .map(Value::Prime)
                        .ok_or_else(|| EvalError { pos, msg: format!("{p} is not prime") });
                }
                let mut gens = Vec::new();
                for (v, vp) in vals[2..].iter().cloned() {
                    gens.push(self.elem(v, vp)?);
                }
                if gens.iter().any(|g| g.field() != d.field()) {
                    return eerr(pos, "generators live in a different field");
                }
                PrimeIdeal::verified(d, d.ideal(&gens), p as u64).map(Value::Prime).map_err(|e| wrap(&e))
            }
            "idl" => {
                let d = self.domain(pos)?.clone();
                let mut gens = Vec::new();
                for (v, vp) in self.positional(args)? {
                    gens.push(self.elem(v, vp)?);
                }
                let e = d.ideal(&gens);
                if e.is_zero() {
                    return eerr(pos, "the zero ideal is not allowed");
                }
                Ok(Value::Ideal(e))
            }
            "pidl" => {
                let d = self.domain(pos)?.clone();
                let mut gens = Vec::new();
                for (v, vp) in self.positional(args)? {
                    gens.push(self.poly(v, vp)?);
                }
                PolyIdeal::new(&d, gens).map(Value::Pideal).map_err(|e| wrap(&e))
            }
            "content" => {
                let d = self.domain(pos)?.clone();
                let v = self.positional(args)?.remove(0);
                match v.0 {
                    Value::Pideal(a) => Ok(Value::Ideal(a.content())),
                    Value::Poly(p) => Ok(Value::Ideal(content_of(&d, &[p]))),
                    other => eerr(v.1, format!("content of {}", other.type_name())),
                }
            }
            "std" => {
                let d = self.domain(pos)?;
                let w = Self::raw_word(args, 0).expect("checked by analysis");
                SemistarOp::builtin(d, w).map(Value::Op).map_err(|e| wrap(&e))
            }
            "spectral" => {
                let d = self.domain(pos)?.clone();
                let mut ps = Vec::new();
                for (v, vp) in self.positional(args)? {
                    match v {
                        Value::Prime(p) => ps.push(p),
                        other => return eerr(vp, format!("spectral takes primes, found {}", other.type_name())),
                    }
                }
                Ok(Value::Op(SemistarOp::spectral(&d, ps).with_pool_norm(self.cfg.pool_norm)))
            }
            "wedge" => {
                let d = self.domain(pos)?.clone();
                let mut ops = Vec::new();
                for (v, vp) in self.positional(args)? {
                    ops.push(Self::op(v, vp)?);
                }
                SemistarOp::wedge(&d, ops).map(Value::Op).map_err(|e| wrap(&e))
            }
            "stable" | "eab" | "finite" | "nagata" | "bracketop" | "tri" => {
                let (v, vp) = self.positional(&args[..1])?.remove(0);
                let op = Self::op(v, vp)?;
                match name {
                    "stable" => Ok(Value::Op(SemistarOp::stable_closure(&op))),
                    "finite" => Ok(Value::Op(op.finite_type_closure())),
                    "eab" => {
                        let pool = default_eab_pool(op.domain(), self.cfg.pool_norm);
                        SemistarOp::eab_closure(&op, pool).map(Value::Op).map_err(|e| wrap(&e))
                    }
                    "nagata" => Nagata::new(&op, self.cfg.budget)
                        .map(|n| Value::PolyOp(Arc::new(n)))
                        .map_err(|e| wrap(&e)),
                    "bracketop" => CurlyStable::new(&op, self.cfg.budget)
                        .map(|n| Value::PolyOp(Arc::new(n)))
                        .map_err(|e| wrap(&e)),
                    _ => {
                        let tag = match Self::raw_word(args, 1) {
                            None | Some("K") => OverTag::K,
                            Some("O") => OverTag::O,
                            Some("D") => OverTag::D,
                            Some(t) => return eerr(pos, format!("overring tag must be K, O or D, found '{t}'")),
                        };
                        Triangle::new(&op, tag, self.cfg.budget)
                            .map(|t| Value::PolyOp(Arc::new(t)))
                            .map_err(|e| wrap(&e))
                    }
                }
            }
            "overring" => {
                let d = self.domain(pos)?.clone();
                let (v, vp) = self.positional(args)?.remove(0);
                let t = self.ideal(v, vp)?;
                SemistarOp::overring(&d, "star_T", t).map(Value::Op).map_err(|e| wrap(&e))
            }
            _ => eerr(pos, format!("unknown function '{name}'")),
        }
    }

    fn arith(&self, op: BinOp, l: Value, r: Value, pos: Pos) -> Result<Value, EvalError> {
        use Value::*;
        let num = |e: crate::exactnum::NumError| EvalError { pos, msg: e.to_string() };
        let as_ideal = |v: Value| match v {
            Prime(p) => Ideal(p.ideal().clone()),
            v => v,
        };
        Ok(match (op, as_ideal(l), as_ideal(r)) {
            (BinOp::Pow, Ideal(e), Op(o)) => Closed(o.apply(&e).map_err(|x| EvalError { pos, msg: x.to_string() })?),
            (BinOp::Pow, Pideal(a), PolyOp(o)) => {
                Slices(o.slices(&a, self.cfg.budget.slice).map_err(|x| EvalError { pos, msg: x.to_string() })?)
            }
            (BinOp::Pow, Ideal(e), Int(k)) if k >= 0 => Ideal(e.pow(k as u32, self.domain(pos)?.ring())),
            (BinOp::Pow, Pideal(a), Int(k)) if k >= 1 => Pideal(a.pow(k as u32)),
            (BinOp::Pow, Int(a), Int(k)) if k >= 0 => {
                Int(a.checked_pow(k as u32).ok_or_else(|| EvalError { pos, msg: "integer overflow".into() })?)
            }
            (BinOp::Pow, Poly(p), Int(k)) if k >= 0 => Poly(p.pow(k as u32)),
            (BinOp::Pow, Elem(x), Int(k)) if k >= 0 => {
                let mut acc = FieldElement::one(x.field());
                for _ in 0..k {
                    acc = acc.checked_mul(&x).map_err(num)?;
                }
                Elem(acc)
            }
            (BinOp::Add, Int(a), Int(b)) => Int(a.checked_add(b).ok_or_else(|| EvalError { pos, msg: "integer overflow".into() })?),
            (BinOp::Sub, Int(a), Int(b)) => Int(a.checked_sub(b).ok_or_else(|| EvalError { pos, msg: "integer overflow".into() })?),
            (BinOp::Mul, Int(a), Int(b)) => Int(a.checked_mul(b).ok_or_else(|| EvalError { pos, msg: "integer overflow".into() })?),
            (BinOp::Add, Ideal(a), Ideal(b)) => Ideal(a.sum(&b).map_err(|x| EvalError { pos, msg: x.to_string() })?),
            (BinOp::Mul, Ideal(a), Ideal(b)) => Ideal(a.mul(&b).map_err(|x| EvalError { pos, msg: x.to_string() })?),
            (BinOp::Mul, Pideal(a), Pideal(b)) => Pideal(a.mul(&b).map_err(|x| EvalError { pos, msg: x.to_string() })?),
            (BinOp::Mul, x @ (Int(_) | Elem(_)), Ideal(e)) | (BinOp::Mul, Ideal(e), x @ (Int(_) | Elem(_))) => {
                Ideal(e.scale(&self.elem(x, pos)?))
            }
            (BinOp::Div, Ideal(e), x @ (Int(_) | Elem(_))) => {
                Ideal(e.div_elem(&self.elem(x, pos)?).map_err(|x| EvalError { pos, msg: x.to_string() })?)
            }
            (op, l @ (Int(_) | Elem(_)), r @ (Int(_) | Elem(_))) if op != BinOp::Pow => {
                let (a, b) = (self.elem(l, pos)?, self.elem(r, pos)?);
                Elem(match op {
                    BinOp::Add => a.checked_add(&b),
                    BinOp::Sub => a.checked_sub(&b),
                    BinOp::Mul => a.checked_mul(&b),
                    _ => a.checked_div(&b),
                }
                .map_err(num)?)
            }
            (op, l @ (Int(_) | Elem(_) | Poly(_)), r @ (Int(_) | Elem(_) | Poly(_))) if op != BinOp::Pow => {
                let a = self.poly(l, pos)?;
                match (op, r) {
                    (BinOp::Div, r) => {
                        let b = self.elem(r, pos)?;
                        Poly(a.scale(&b.inv().map_err(num)?).map_err(num)?)
                    }
                    (_, r) => {
                        let b = self.poly(r, pos)?;
                        Poly(match op {
                            BinOp::Add => a.add(&b),
                            BinOp::Sub => a.sub(&b),
                            _ => a.mul(&b),
                        }
                        .map_err(num)?)
                    }
                }
            }
            (op, l, r) => {
                return eerr(pos, format!("cannot apply '{}' to {} and {}", op.symbol(), l.type_name(), r.type_name()))
            }
        })
    }

    pub fn eval(&mut self, e: &Expr) -> Result<Value, EvalError> {
        match &e.kind {
            ExprKind::Int(n) => Ok(Value::Int(*n)),
            ExprKind::Ident(n) => {
                if let Some(v) = self.env.get(n) {
                    return Ok(v.clone());
                }
                match n.as_str() {
                    "w" => FieldElement::sqrt_m(self.domain(e.pos)?.field())
                        .map(Value::Elem)
                        .map_err(|x| EvalError { pos: e.pos, msg: x.to_string() }),
                    "X" => Ok(Value::Poly(Poly::x(self.domain(e.pos)?.field()))),
                    _ => eerr(e.pos, format!("unknown identifier '{n}'")),
                }
            }
            ExprKind::Call { name, args } => self.call(name, args, e.pos),
            ExprKind::List(xs) => Ok(Value::List(xs.iter().map(|x| self.eval(x)).collect::<Result<_, _>>()?)),
            ExprKind::Neg(x) => {
                let v = self.eval(x)?;
                self.arith(BinOp::Sub, Value::Int(0), v, e.pos)
            }
            ExprKind::Bin(op, l, r) => {
                let a = self.eval(l)?;
                let b = self.eval(r)?;
                self.arith(*op, a, b, e.pos)
            }
        }
    }

    fn show(&self, v: &Value) -> String {
        Shown(v, self.current.as_ref()).to_string()
    }

    /// Runs one statement and returns its printed output.
    pub fn exec(&mut self, s: &Stmt) -> Result<Vec<String>, EvalError> {
        match &s.kind {
            StmtKind::Bind { kind, name, value } => {
                let v = self.eval(value)?;
                let ok = match kind {
                    DeclKind::Domain => matches!(v, Value::Domain(_)),
                    DeclKind::Ideal => matches!(v, Value::Ideal(_) | Value::Prime(_)),
                    DeclKind::Pideal => matches!(v, Value::Pideal(_)),
                    DeclKind::Op => matches!(v, Value::Op(_) | Value::PolyOp(_)),
                    DeclKind::Let => true,
                };
                if !ok {
                    return eerr(value.pos, format!("'{}' expects a {}, found {}", kind.keyword(), kind.keyword(), v.type_name()));
                }
                if let Value::Domain(d) = &v {
                    self.current = Some(d.clone());
                }
                self.env.insert(name.clone(), v);
                Ok(Vec::new())
            }
            StmtKind::Eval { expr, slice } => {
                let v = match (slice, &expr.kind) {
                    (Some(n), ExprKind::Bin(BinOp::Pow, l, r)) => {
                        let a = self.eval(l)?;
                        let o = self.eval(r)?;
                        match (a, o) {
                            (Value::Pideal(a), Value::PolyOp(o)) => Value::Slices(vec![o
                                .slice(&a, *n)
                                .map_err(|x| EvalError { pos: expr.pos, msg: x.to_string() })?]),
                            _ => return eerr(expr.pos, "'slice' needs a polynomial ideal under a polynomial operation"),
                        }
                    }
                    (Some(_), _) => return eerr(expr.pos, "'slice' needs a polynomial ideal under a polynomial operation"),
                    (None, _) => self.eval(expr)?,
                };
                Ok(vec![format!("{expr} => {}", self.show(&v))])
            }
            StmtKind::Compare { left, right, on } => {
                let a = Self::op(self.eval(left)?, left.pos)?;
                let b = Self::op(self.eval(right)?, right.pos)?;
                let mut samples = Vec::new();
                for x in on {
                    let v = self.eval(x)?;
                    let mut flat = Vec::new();
                    Self::flatten(v, &mut flat);
                    for f in flat {
                        samples.push(self.ideal(f, x.pos)?);
                    }
                }
                let c = compare(&a, &b, &samples);
                let mut line = format!("compare {}, {}: {:?}", a.name(), b.name(), c.order);
                if let Some(w) = &c.witness {
                    line.push_str(&format!(" (witness {w})"));
                }
                if let Some(w) = &c.second_witness {
                    line.push_str(&format!(" (second witness {w})"));
                }
                Ok(vec![line])
            }
            StmtKind::Check { claim, with } => {
                let mut cfg = self.cfg.clone();
                for (k, v) in with {
                    let Value::Int(n) = self.eval(v)? else { return eerr(v.pos, format!("{k} must be an integer")) };
                    if n < 0 {
                        return eerr(v.pos, format!("{k} must be nonnegative"));
                    }
                    let n = n as u64;
                    match k.as_str() {
                        "slice" => cfg.budget.slice = n as usize,
                        "mult_cap" => cfg.budget.mult_cap = n as usize,
                        "witness_deg" => cfg.budget.witness_deg = n as usize,
                        "seed" => cfg.seed = n,
                        _ => cfg.pool_norm = n,
                    }
                }
                let r = run_suite(claim, &cfg).map_err(|e| EvalError { pos: s.pos, msg: e.to_string() })?;
                self.check_code = match (self.check_code, r.exit_code()) {
                    (a, b) if a == 1 || b == 1 => 1,
                    (a, b) => a.max(b),
                };
                Ok(r.to_table().lines().map(String::from).collect())
            }
        }
    }
}

#[derive(Debug)]
pub enum ScriptError {
    Parse(ParseError),
    Eval(EvalError),
}

impl fmt::Display for ScriptError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ScriptError::Parse(e) => write!(f, "{e}"),
            ScriptError::Eval(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for ScriptError {}

/// Parses, analyzes and runs a script; returns the output lines and the
/// session (for its check status).
pub fn run_script(text: &str, cfg: Config) -> Result<(Vec<String>, Session), ScriptError> {
    let script = super::parse(text).map_err(ScriptError::Parse)?;
    analyze(&script).map_err(ScriptError::Parse)?;
    let mut session = Session::new(cfg);
    let mut out = Vec::new();
    for s in &script.stmts {
        out.extend(session.exec(s).map_err(ScriptError::Eval)?);
    }
    Ok((out, session))
}
