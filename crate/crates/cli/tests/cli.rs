use std::io::Write;
use std::process::{Command, Stdio};

use clap::Parser;
use serde_json::Value;
use shpoisson_cli::cli::{execute, Cli};
use shpoisson_cli::output::{to_json, Document};

const SL2: &str = include_str!("../corpus/sl2.shp");
const PLANE: &str = include_str!("../corpus/plane_poisson.shp");

fn run(args: &[&str], source: &str) -> Document {
    let cli = Cli::try_parse_from(std::iter::once("shpoisson").chain(args.iter().copied())).expect("arguments parse");
    execute(&cli, source, None)
}

fn json(doc: &Document) -> Value {
    serde_json::from_str(&to_json(doc)).unwrap()
}

#[test]
fn parse_errors_point_at_the_offending_token() {
    let doc = run(&["check-cdga"], "algebra B {\n  d(x =\n}\n");
    assert_eq!(doc.exit_code, 2);
    let err = doc.error.unwrap();
    assert_eq!(err.kind, "ParseError");
    assert!(err.message.starts_with("2:7:"), "{}", err.message);
}

#[test]
fn duplicate_and_unresolved_names_are_usage_errors() {
    let dup = run(&["check-cdga"], "algebra B { deg(x) = 0; deg(x) = 1; }");
    assert_eq!((dup.exit_code, dup.error.unwrap().kind.as_str()), (2, "DuplicateName"));
    let missing = run(&["check-poisson"], "algebra B { deg(x) = 0; } poisson P { on = B; p0 = @y*@x; }");
    assert_eq!((missing.exit_code, missing.error.unwrap().kind.as_str()), (2, "UnresolvedReference"));
}

#[test]
fn sl2_has_one_quadratic_invariant() {
    let doc = run(&["invariants", "--kind", "sym2"], SL2);
    assert_eq!(doc.exit_code, 0);
    assert_eq!(doc.tables["dimension"], 1);
    let cubic = run(&["invariants", "--kind", "wedge3"], SL2);
    assert_eq!(cubic.tables["dimension"], 1);
}

#[test]
fn plane_bracket_table() {
    let doc = run(&["check-poisson"], PLANE);
    assert_eq!(doc.exit_code, 0);
    let rows = doc.tables["brackets"].as_array().unwrap();
    let xy = rows.iter().find(|r| r["left"] == "x" && r["right"] == "y").unwrap();
    let yx = rows.iter().find(|r| r["left"] == "y" && r["right"] == "x").unwrap();
    assert_eq!(xy["value"], Value::from("-1"));
    assert_eq!(yx["value"], Value::from("1"));
}

#[test]
fn window_precedence() {
    let src = "options o { max_weight = 4; max_degree = 5; }\nalgebra B { deg(x) = 0; }";
    let cli = Cli::try_parse_from(["shpoisson", "--max-degree", "3", "check-cdga"]).unwrap();
    let doc = execute(&cli, src, Some("max_weight=2,max_length=3,max_degree=7"));
    let w = json(&doc)["window"].clone();
    assert_eq!((w["max_length"].clone(), w["max_weight"].clone(), w["max_degree"].clone()), (3.into(), 4.into(), 3.into()));
    assert_eq!(doc.exit_code, 0);

    let bad = execute(&cli, src, Some("max_weight=two"));
    assert_eq!(bad.exit_code, 2);
}

#[test]
fn digest_depends_on_content_not_layout() {
    let a = run(&["check-poisson"], PLANE);
    let b = run(&["check-poisson"], "algebra B{deg(x)=0;deg(y)=0;} poisson P{on=B;shift=0;p0=@x*@y;}");
    assert_eq!(a.inputs_digest, b.inputs_digest);
    let c = run(&["mc"], PLANE);
    assert_ne!(a.inputs_digest, c.inputs_digest);
}

#[test]
fn block_selection() {
    let src = "lie a { dim = 1; } lie g { dim = 2; bracket[1][2] = [0, 1]; }";
    let abelian = run(&["invariants", "--kind", "sym2", "--block", "a"], src);
    assert_eq!(abelian.tables["dimension"], 1);
    let missing = run(&["invariants", "--block", "zz"], src);
    assert_eq!(missing.exit_code, 2);
}

#[test]
fn operads_need_no_input() {
    let doc = run(&["operad", "arnold", "--n", "2"], "");
    assert_eq!(doc.exit_code, 0);
    let too_big = run(&["operad", "as", "--arity", "40"], "");
    assert_eq!(too_big.exit_code, 2);
}

#[test]
fn binary_reads_standard_input() {
    let mut child = Command::new(env!("CARGO_BIN_EXE_shpoisson"))
        .args(["--json", "check-poisson", "-"])
        .env_remove("SHPOISSON_WINDOW")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(PLANE.as_bytes()).unwrap();
    let out = child.wait_with_output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let doc: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["verdict"], "pass");
}

#[test]
fn unknown_subcommands_exit_two() {
    let out = Command::new(env!("CARGO_BIN_EXE_shpoisson")).arg("frobnicate").output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn token_soup_never_panics_and_parses_round_trip() {
    use rand::{Rng, SeedableRng};
    let pieces = [
        "algebra", "poisson", "lie", "form", "ideal", "options", "complex", "B", "x", "@x", "\"a b\"", "{", "}", "(", ")", "[",
        "]", "=", ";", ",", "+", "-", "*", "^", "2", "3/4", "0", "1/0", "#c\n", "\n", " ", "d(x)", "p0 = ", "x^2",
    ];
    let mut rng = rand::rngs::StdRng::seed_from_u64(5);
    let mut parsed = 0;
    for _ in 0..4000 {
        let len = rng.gen_range(0..30);
        let mut src = String::from(if rng.gen_bool(0.5) { "algebra B { " } else { "" });
        for _ in 0..len {
            src.push_str(pieces[rng.gen_range(0..pieces.len())]);
            src.push(' ');
        }
        if let Ok(m) = shpoisson_cli::dsl::parse(&src) {
            parsed += 1;
            let text = shpoisson_cli::dsl::serialize(&m);
            assert_eq!(shpoisson_cli::dsl::parse(&text).as_ref(), Ok(&m), "{src:?} printed as {text:?}");
        }
    }
    assert!(parsed > 0);
}

fn random_expr(rng: &mut impl rand::Rng, depth: u32) -> String {
    let leaf = ["x", "@y", "\"z w\"", "2", "3/4", "-5", "0", "x'"];
    if depth == 0 || rng.gen_bool(0.3) {
        return leaf[rng.gen_range(0..leaf.len())].to_string();
    }
    let a = random_expr(rng, depth - 1);
    match rng.gen_range(0..6) {
        0 => format!("{a} + {}", random_expr(rng, depth - 1)),
        1 => format!("{a} - {}", random_expr(rng, depth - 1)),
        2 => format!("{a} * {}", random_expr(rng, depth - 1)),
        3 => format!("({a})^{}", rng.gen_range(0..4)),
        4 => format!("-({a})"),
        _ => format!("({a})"),
    }
}

#[test]
fn random_expressions_print_back_to_themselves() {
    use rand::SeedableRng;
    let mut rng = rand::rngs::StdRng::seed_from_u64(11);
    for _ in 0..2000 {
        let src = format!("options o {{ v = {}; w = [{}, [{}]]; }}", random_expr(&mut rng, 4), random_expr(&mut rng, 3), random_expr(&mut rng, 2));
        let m = shpoisson_cli::dsl::parse(&src).unwrap_or_else(|e| panic!("{src}: {e}"));
        let text = shpoisson_cli::dsl::serialize(&m);
        assert_eq!(shpoisson_cli::dsl::parse(&text).as_ref(), Ok(&m), "{src} printed as {text}");
    }
}
