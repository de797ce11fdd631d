use std::fmt::{self, Write};

use super::LTerm;

const JOIN: u8 = 0;
const MEET: u8 = 1;
const PROD: u8 = 2;
const ATOM: u8 = 3;

fn prec(t: &LTerm) -> u8 {
    match t {
        LTerm::Join(_) => JOIN,
        LTerm::Meet(_) => MEET,
        LTerm::Product(_) => PROD,
        _ => ATOM,
    }
}

fn write_at(t: &LTerm, min: u8, out: &mut fmt::Formatter<'_>) -> fmt::Result {
    // Nested nodes of the same kind only arise from direct enum construction;
    // parenthesizing them keeps the printed form unambiguous.
    if prec(t) < min {
        out.write_char('(')?;
        write_bare(t, out)?;
        return out.write_char(')');
    }
    write_bare(t, out)
}

fn write_power(base: &LTerm, k: i64, out: &mut fmt::Formatter<'_>) -> fmt::Result {
    match base {
        LTerm::Gen(g) => write!(out, "{g}^{k}"),
        _ => {
            out.write_char('(')?;
            write_bare(base, out)?;
            write!(out, ")^{k}")
        }
    }
}

fn write_bare(t: &LTerm, out: &mut fmt::Formatter<'_>) -> fmt::Result {
    match t {
        LTerm::Identity => out.write_char('e'),
        LTerm::Gen(g) => write!(out, "{g}"),
        LTerm::Inverse(c) => write_power(c, -1, out),
        LTerm::Product(cs) => {
            let mut i = 0;
            let mut first = true;
            while i < cs.len() {
                let run = cs[i..].iter().take_while(|c| **c == cs[i]).count();
                let run = if cs[i] == LTerm::Identity { 1 } else { run };
                if !first {
                    out.write_char(' ')?;
                }
                first = false;
                match (&cs[i], run) {
                    (c, 1) => write_at(c, ATOM, out)?,
                    (LTerm::Inverse(d), k) => write_power(d, -(k as i64), out)?,
                    (c, k) => write_power(c, k as i64, out)?,
                }
                i += run;
            }
            Ok(())
        }
        LTerm::Join(cs) | LTerm::Meet(cs) => {
            let (sep, child_min) = if matches!(t, LTerm::Join(_)) {
                (" \\/ ", MEET)
            } else {
                (" /\\ ", PROD)
            };
            for (i, c) in cs.iter().enumerate() {
                if i > 0 {
                    out.write_str(sep)?;
                }
                write_at(c, child_min, out)?;
            }
            Ok(())
        }
    }
}

impl fmt::Display for LTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_bare(self, f)
    }
}
