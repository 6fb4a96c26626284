use std::fmt;

use super::Formula;

// Binding strength, loosest first.
const IFF: u8 = 0;
const IMPLIES: u8 = 1;
const OR: u8 = 2;
const AND: u8 = 3;
const PREFIX: u8 = 4;

/// Recognize `(a -> b) & (b -> a)` so it prints as `a <-> b`.
fn as_iff(f: &Formula) -> Option<(&Formula, &Formula)> {
    if let Formula::And(l, r) = f {
        if let (Formula::Implies(a, b), Formula::Implies(c, d)) = (&**l, &**r) {
            if a == d && b == c {
                return Some((a, b));
            }
        }
    }
    None
}

fn level(f: &Formula) -> u8 {
    if as_iff(f).is_some() {
        return IFF;
    }
    match f {
        Formula::Implies(..) => IMPLIES,
        Formula::Or(..) => OR,
        Formula::And(..) => AND,
        _ => PREFIX,
    }
}

fn write_at(f: &Formula, min: u8, out: &mut fmt::Formatter<'_>) -> fmt::Result {
    if level(f) < min {
        out.write_str("(")?;
        write_at(f, 0, out)?;
        return out.write_str(")");
    }
    if let Some((a, b)) = as_iff(f) {
        write_at(a, IFF + 1, out)?;
        out.write_str(" <-> ")?;
        return write_at(b, IFF, out);
    }
    match f {
        Formula::Atom(name) => out.write_str(name),
        Formula::Not(a) => {
            out.write_str("~")?;
            write_at(a, PREFIX, out)
        }
        Formula::Necessity(g, a) => {
            write!(out, "[{g}]")?;
            write_at(a, PREFIX, out)
        }
        Formula::Possibility(g, a) => {
            write!(out, "<{g}>")?;
            write_at(a, PREFIX, out)
        }
        Formula::And(a, b) => {
            write_at(a, AND, out)?;
            out.write_str(" & ")?;
            write_at(b, AND + 1, out)
        }
        Formula::Or(a, b) => {
            write_at(a, OR, out)?;
            out.write_str(" | ")?;
            write_at(b, OR + 1, out)
        }
        Formula::Implies(a, b) => {
            write_at(a, IMPLIES + 1, out)?;
            out.write_str(" -> ")?;
            write_at(b, IMPLIES, out)
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_at(self, 0, f)
    }
}
