use std::fmt::{self, Write};

use num_traits::Signed;

use super::lexer::is_plain_name;
use super::{Expr, Key, Manifest, Value};

/// Where an expression is printed; decides the parentheses needed for the
/// parser to rebuild the same tree.
#[derive(Clone, Copy, PartialEq, Eq)]
enum Slot {
    Top,
    Operand,
    Factor,
    Negated,
    Base,
}

fn write_name(out: &mut impl Write, name: &str) -> fmt::Result {
    if is_plain_name(name) {
        out.write_str(name)
    } else {
        out.write_char('"')?;
        for c in name.chars() {
            if c == '"' || c == '\\' {
                out.write_char('\\')?;
            }
            out.write_char(c)?;
        }
        out.write_char('"')
    }
}

fn parenthesized(out: &mut impl Write, e: &Expr) -> fmt::Result {
    out.write_char('(')?;
    write(out, e, Slot::Top)?;
    out.write_char(')')
}

fn write(out: &mut impl Write, e: &Expr, slot: Slot) -> fmt::Result {
    match e {
        Expr::Number(n) => {
            if n.is_negative() && matches!(slot, Slot::Base | Slot::Negated) {
                write!(out, "({n})")
            } else {
                write!(out, "{n}")
            }
        }
        Expr::Name(n) => write_name(out, n),
        Expr::Sum(terms) => {
            if slot != Slot::Top {
                return parenthesized(out, e);
            }
            for (k, t) in terms.iter().enumerate() {
                match t {
                    _ if k == 0 => write(out, t, Slot::Operand)?,
                    Expr::Neg(inner) => {
                        out.write_str(" - ")?;
                        write(out, inner, Slot::Operand)?;
                    }
                    Expr::Number(n) if n.is_negative() => write!(out, " - {}", -n)?,
                    _ => {
                        out.write_str(" + ")?;
                        write(out, t, Slot::Operand)?;
                    }
                }
            }
            Ok(())
        }
        Expr::Product(factors) => {
            if matches!(slot, Slot::Factor | Slot::Negated | Slot::Base) {
                return parenthesized(out, e);
            }
            for (k, f) in factors.iter().enumerate() {
                if k > 0 {
                    out.write_char('*')?;
                }
                write(out, f, Slot::Factor)?;
            }
            Ok(())
        }
        Expr::Power(base, k) => {
            if slot == Slot::Base {
                return parenthesized(out, e);
            }
            write(out, base, Slot::Base)?;
            write!(out, "^{k}")
        }
        Expr::Neg(inner) => {
            if slot == Slot::Base {
                return parenthesized(out, e);
            }
            out.write_char('-')?;
            write(out, inner, Slot::Negated)
        }
    }
}

pub fn write_expr(out: &mut impl Write, e: &Expr) -> fmt::Result {
    write(out, e, Slot::Top)
}

fn write_value(out: &mut impl Write, v: &Value) -> fmt::Result {
    match v {
        Value::Expr(e) => write_expr(out, e),
        Value::List(items) => {
            out.write_char('[')?;
            for (k, item) in items.iter().enumerate() {
                if k > 0 {
                    out.write_str(", ")?;
                }
                write_value(out, item)?;
            }
            out.write_char(']')
        }
    }
}

pub(super) fn write_key(out: &mut impl Write, key: &Key) -> fmt::Result {
    write_name(out, &key.name)?;
    if let Some(arg) = &key.argument {
        out.write_char('(')?;
        write_name(out, arg)?;
        out.write_char(')')?;
    }
    for i in &key.indices {
        write!(out, "[{i}]")?;
    }
    Ok(())
}

/// Canonical source text; `parse(serialize(m)) == m`.
pub fn serialize(m: &Manifest) -> String {
    let mut out = String::new();
    for (k, block) in m.blocks.iter().enumerate() {
        if k > 0 {
            out.push('\n');
        }
        out.push_str(block.kind.keyword());
        out.push(' ');
        write_name(&mut out, &block.name).expect("writing to a String");
        out.push_str(" {\n");
        for e in &block.entries {
            out.push_str("  ");
            write_key(&mut out, &e.key).expect("writing to a String");
            out.push_str(" = ");
            write_value(&mut out, &e.value).expect("writing to a String");
            out.push_str(";\n");
        }
        out.push_str("}\n");
    }
    out
}
