use proptest::prelude::*;

use semistar::harness::dsl::{parse, Arg, BinOp, DeclKind, Expr, ExprKind, Pos, Script, Stmt, StmtKind, KEYWORDS};

fn name() -> impl Strategy<Value = String> {
    "[a-zA-Z_][a-zA-Z0-9_]{0,5}".prop_filter("not a keyword", |s| !KEYWORDS.contains(&s.as_str()))
}

fn mk(kind: ExprKind) -> Expr {
    Expr { kind, pos: Pos::default() }
}

fn expr() -> impl Strategy<Value = Expr> {
    let leaf = prop_oneof![(0i64..10_000).prop_map(|n| mk(ExprKind::Int(n))), name().prop_map(|s| mk(ExprKind::Ident(s)))];
    leaf.prop_recursive(4, 32, 4, |inner| {
        let op = prop_oneof![Just(BinOp::Add), Just(BinOp::Sub), Just(BinOp::Mul), Just(BinOp::Div), Just(BinOp::Pow)];
        let arg = (proptest::option::of(name()), inner.clone()).prop_map(|(name, value)| Arg { name, value });
        prop_oneof![
            (op, inner.clone(), inner.clone()).prop_map(|(o, l, r)| mk(ExprKind::Bin(o, Box::new(l), Box::new(r)))),
            inner.clone().prop_map(|x| mk(ExprKind::Neg(Box::new(x)))),
            prop::collection::vec(inner.clone(), 0..3).prop_map(|xs| mk(ExprKind::List(xs))),
            (name(), prop::collection::vec(arg, 0..3)).prop_map(|(name, args)| mk(ExprKind::Call { name, args })),
        ]
    })
}

fn stmt() -> impl Strategy<Value = Stmt> {
    let decl = prop_oneof![
        Just(DeclKind::Domain),
        Just(DeclKind::Ideal),
        Just(DeclKind::Pideal),
        Just(DeclKind::Op),
        Just(DeclKind::Let)
    ];
    let kind = prop_oneof![
        (decl, name(), expr()).prop_map(|(kind, name, value)| StmtKind::Bind { kind, name, value }),
        (expr(), proptest::option::of(0usize..9)).prop_map(|(expr, slice)| StmtKind::Eval { expr, slice }),
        (expr(), expr(), prop::collection::vec(expr(), 1..3)).prop_map(|(left, right, on)| StmtKind::Compare { left, right, on }),
        ("[a-z][a-z0-9-]{0,12}", prop::collection::vec(("[a-z_]{1,6}", expr()), 0..3))
            .prop_map(|(claim, with)| StmtKind::Check { claim, with }),
    ];
    kind.prop_map(|kind| Stmt { kind, pos: Pos::default() })
}

proptest! {
    #[test]
    fn printed_scripts_parse_back(stmts in prop::collection::vec(stmt(), 0..6)) {
        let script = Script { stmts };
        let text = script.to_string();
        let back = parse(&text).map_err(|e| TestCaseError::fail(format!("{e}\n{text}")))?;
        prop_assert_eq!(&back, &script);
        prop_assert_eq!(back.to_string(), text);
    }

    #[test]
    fn arbitrary_lines_never_panic(text in "[ -~]{0,40}") {
        let _ = parse(&text);
    }
}
