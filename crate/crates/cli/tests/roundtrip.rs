use gradedk_cli::ast::{Arg, Call, Expr, Pos, Script, Stmt};
use gradedk_cli::parse;
use proptest::prelude::*;

fn name() -> impl Strategy<Value = String> {
    "[A-Za-z_][A-Za-z0-9_]{0,6}"
}

fn symbol() -> impl Strategy<Value = String> {
    prop_oneof![
        name(),
        (1u32..4, prop::collection::vec(2u32..7, 0..3)).prop_map(|(r, ms)| {
            let mut parts = vec![if r == 1 { "Z".to_string() } else { format!("Z^{r}") }];
            parts.extend(ms.iter().map(|m| format!("Z{m}")));
            parts.join("*")
        }),
    ]
}

fn expr() -> impl Strategy<Value = Expr> {
    let p = Pos::default();
    let leaf = prop_oneof![
        any::<i32>().prop_map(move |n| Expr::Int(n as i64, p)),
        (any::<i32>(), 1i64..1000).prop_map(move |(a, b)| Expr::Ratio(a as i64, b, p)),
        symbol().prop_map(move |s| Expr::Symbol(s, p)),
    ];
    leaf.prop_recursive(4, 32, 4, move |inner| {
        prop_oneof![
            prop::collection::vec(inner.clone(), 0..4).prop_map(move |xs| Expr::List(xs, p)),
            (name(), prop::collection::vec((prop::option::of(name()), inner), 0..4)).prop_map(move |(head, args)| {
                Expr::Call(Call {
                    head,
                    args: args.into_iter().map(|(key, value)| Arg { key, value }).collect(),
                    pos: p,
                })
            }),
        ]
    })
}

fn stmt() -> impl Strategy<Value = Stmt> {
    let p = Pos::default();
    prop_oneof![
        (name(), expr()).prop_map(move |(name, value)| Stmt::Decl { name, value, pos: p }),
        (name(), prop::collection::vec(expr(), 0..3)).prop_map(move |(head, args)| {
            Stmt::Cmd(Call {
                head,
                args: args.into_iter().map(|value| Arg { key: None, value }).collect(),
                pos: p,
            })
        }),
    ]
}

proptest! {
    #[test]
    fn print_then_parse_is_identity(stmts in prop::collection::vec(stmt(), 0..6)) {
        let script = Script { stmts };
        let text = script.to_string();
        let back = parse(&text).unwrap();
        prop_assert_eq!(back, script);
    }
}

#[test]
fn scripts_round_trip() {
    for entry in std::fs::read_dir(concat!(env!("CARGO_MANIFEST_DIR"), "/../../scripts")).unwrap() {
        let text = std::fs::read_to_string(entry.unwrap().path()).unwrap();
        let script = parse(&text).unwrap();
        assert_eq!(parse(&script.to_string()).unwrap(), script);
    }
}
