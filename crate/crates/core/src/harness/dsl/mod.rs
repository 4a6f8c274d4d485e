//! A line-oriented script language over domains, ideals and operations.
//! `w` is √m and `X` the polynomial variable.
//!
//! ```text
//! domain D = order(m=-3, f=2)
//! op s = spectral(prime(D, 2, [2, 1 + w]))
//! eval conductor() ^ s
//! eval pidl(2, X) ^ tri(std(d)) slice 2
//! compare std(v), std(t) on conductor(), idl(2)
//! check triangle-two-x with slice=3
//! ```

mod ast;
mod eval;
mod parse;

pub use ast::{Arg, BinOp, DeclKind, Expr, ExprKind, Pos, Script, Stmt, StmtKind};
pub use eval::{analyze, run_script, EvalError, ScriptError, Session, Value};
pub use parse::{parse, ParseError, KEYWORDS};

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::claims::Config;

    #[test]
    fn statement_forms() {
        let s = parse("domain D = order(m=-3, f=2)\nop s = spectral(prime(D,2,[2, 1+w]))\n").unwrap();
        assert!(matches!(&s.stmts[0].kind, StmtKind::Bind { kind: DeclKind::Domain, name, .. } if name == "D"));
        assert!(matches!(&s.stmts[1].kind, StmtKind::Bind { kind: DeclKind::Op, name, .. } if name == "s"));
        assert_eq!(s.to_string(), "domain D = order(m=-3, f=2)\nop s = spectral(prime(D, 2, [2, 1 + w]))\n");
    }

    #[test]
    fn unclosed_call_points_at_paren() {
        let e = parse("ideal I = idl(").unwrap_err();
        assert_eq!((e.pos.line, e.pos.col), (1, 14));
        let e = parse("domain D = integers()\n  eval idl(2, 3").unwrap_err();
        assert_eq!((e.pos.line, e.pos.col), (2, 11));
        let e = parse("eval 2 $ 3").unwrap_err();
        assert_eq!(e.pos.col, 8);
    }

    #[test]
    fn round_trip_keeps_structure() {
        let text = "domain D = order(-3, 2)\nlet f = -X ^ 2 + (1 - w) * X / 2\nlet g = (-X) ^ 2 - -3\n\
                    eval pidl(f, g) ^ tri(std(d), O) slice 2\ncompare std(v), std(t) on conductor(), [idl(2), idl(w)]\n\
                    check triangle-two-x with slice=2, seed=3\ncheck all\n";
        let s = parse(text).unwrap();
        let again = parse(&s.to_string()).unwrap();
        assert_eq!(s, again);
        assert_eq!(s.to_string(), again.to_string());
    }

    #[test]
    fn analysis_rejects_before_running() {
        let bad = [
            ("domain D = integers()\neval idl(y)", "unknown identifier 'y'"),
            ("eval frob(2)", "unknown function 'frob'"),
            ("domain D = integers()\neval stable()", "takes 1 arguments"),
            ("check no-such-claim", "unknown claim id"),
            ("domain D = order(q=2)", "no argument 'q'"),
        ];
        for (text, msg) in bad {
            let s = parse(text).unwrap();
            let e = analyze(&s).unwrap_err();
            assert!(e.msg.contains(msg), "{text}: {e}");
        }
    }

    #[test]
    fn small_session() {
        let text = "domain D = order(m=-3, f=2)\nideal P = prime(D, 2, [2, 1 + w])\nop v = std(v)\n\
                    eval P ^ v\neval P * P\neval pidl(2, X) ^ tri(std(d)) slice 1\ncompare std(v), std(t) on P, idl(2)\n";
        let (out, _) = run_script(text, Config::default()).unwrap();
        assert_eq!(out.len(), 4);
        assert!(out[0].starts_with("P ^ v => exact"), "{}", out[0]);
        assert!(out[2].contains("slice 1: exact Z<"), "{}", out[2]);
        assert!(out[3].contains("Eq"), "{}", out[3]);
    }
}
