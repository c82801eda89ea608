//! Line-oriented text format for instances.
//!
//! ```text
//! scsp 1
//! domain 4
//! var x
//! var y
//! unary x 0 1 2 inf
//! binary x y 0 1 / 1 0      # rows separated by `/`
//! gi y x 3 4 3
//! ```
//!
//! `#` starts a comment. Evaluations are integers, `p/q` or `inf`.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::evaluation::Evaluation;
use crate::interval::GeneralizedInterval;
use crate::model::{ConstraintFunction, Instance, Scope, SoftConstraint, VarId};
use crate::table::{BinaryTable, UnaryTable};

pub const VERSION: &str = "1";

struct Line<'a> {
    number: usize,
    tokens: Vec<&'a str>,
}

impl Line<'_> {
    fn err(&self, message: impl Into<String>) -> Error {
        Error::parse(self.number, message)
    }

    fn arity(&self, n: usize) -> Result<()> {
        if self.tokens.len() != n {
            return Err(self.err(format!(
                "`{}` expects {} arguments, found {}",
                self.tokens[0],
                n - 1,
                self.tokens.len() - 1
            )));
        }
        Ok(())
    }

    fn natural(&self, token: &str) -> Result<usize> {
        token
            .parse::<usize>()
            .map_err(|_| self.err(format!("expected a positive integer, found `{token}`")))
    }

    fn evaluation(&self, token: &str) -> Result<Evaluation> {
        token
            .parse::<Evaluation>()
            .map_err(|_| self.err(format!("invalid evaluation `{token}`")))
    }

    fn variable(&self, inst: &Instance, token: &str) -> Result<VarId> {
        inst.variable(token)
            .ok_or_else(|| self.err(format!("unknown variable `{token}`")))
    }
}

fn lines(text: &str) -> impl Iterator<Item = Line<'_>> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let body = raw.split('#').next().unwrap_or("");
        let tokens: Vec<&str> = body.split_whitespace().collect();
        (!tokens.is_empty()).then_some(Line { number: i + 1, tokens })
    })
}

pub fn parse(text: &str) -> Result<Instance> {
    let mut lines = lines(text);
    let header = lines.next().ok_or_else(|| Error::parse(1, "missing `scsp 1` header"))?;
    if header.tokens != ["scsp", VERSION] {
        return Err(header.err("expected `scsp 1` header"));
    }
    let mut inst: Option<Instance> = None;
    for line in lines {
        let keyword = line.tokens[0];
        if keyword == "domain" {
            line.arity(2)?;
            if inst.is_some() {
                return Err(line.err("`domain` given twice"));
            }
            let m = line.natural(line.tokens[1])?;
            inst = Some(Instance::new(m).map_err(|e| line.err(e.to_string()))?);
            continue;
        }
        let inst = inst
            .as_mut()
            .ok_or_else(|| line.err(format!("`{keyword}` before `domain`")))?;
        let m = inst.domain_size();
        let constraint = match keyword {
            "var" => {
                line.arity(2)?;
                inst.add_variable(line.tokens[1]).map_err(|e| line.err(e.to_string()))?;
                continue;
            }
            "unary" => {
                line.arity(2 + m)?;
                let v = line.variable(inst, line.tokens[1])?;
                let values = line.tokens[2..]
                    .iter()
                    .map(|t| line.evaluation(t))
                    .collect::<Result<Vec<_>>>()?;
                SoftConstraint::unary(v, UnaryTable::new(values).map_err(|e| line.err(e.to_string()))?)
            }
            "binary" => {
                if line.tokens.len() < 3 {
                    return Err(line.err("`binary` expects two variables and a table"));
                }
                let v = line.variable(inst, line.tokens[1])?;
                let w = line.variable(inst, line.tokens[2])?;
                let rows: Vec<&[&str]> = line.tokens[3..].split(|t| *t == "/").collect();
                if rows.len() != m || rows.iter().any(|r| r.len() != m) {
                    return Err(line.err(format!("binary table must have {m} rows of {m} entries")));
                }
                let values = rows
                    .iter()
                    .flat_map(|r| r.iter())
                    .map(|t| line.evaluation(t))
                    .collect::<Result<Vec<_>>>()?;
                let table = BinaryTable::new(m, values).map_err(|e| line.err(e.to_string()))?;
                SoftConstraint::binary(v, w, table)
            }
            "gi" => {
                line.arity(6)?;
                let v = line.variable(inst, line.tokens[1])?;
                let w = line.variable(inst, line.tokens[2])?;
                let a = line.natural(line.tokens[3])?;
                let b = line.natural(line.tokens[4])?;
                let rho = line.evaluation(line.tokens[5])?;
                SoftConstraint::interval(v, w, GeneralizedInterval::new(a, b, rho))
            }
            other => return Err(line.err(format!("unknown keyword `{other}`"))),
        };
        inst.add_constraint(constraint).map_err(|e| line.err(e.to_string()))?;
    }
    inst.ok_or_else(|| Error::parse(header.number, "missing `domain` line"))
}

/// Writes the header, domain and variable declarations.
pub(crate) fn print_preamble(inst: &Instance, out: &mut String) {
    let _ = writeln!(out, "scsp {VERSION}");
    let _ = writeln!(out, "domain {}", inst.domain_size());
    for v in inst.variables() {
        let _ = writeln!(out, "var {}", inst.name(v));
    }
}

pub(crate) fn print_constraint(inst: &Instance, c: &SoftConstraint, out: &mut String) {
    let scope = match c.scope() {
        Scope::Unary(v) => inst.name(v).to_string(),
        Scope::Binary(v, w) => format!("{} {}", inst.name(v), inst.name(w)),
    };
    let join = |values: &[Evaluation]| values.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ");
    let _ = match c.function() {
        ConstraintFunction::Unary(t) => writeln!(out, "unary {scope} {}", join(t.values())),
        ConstraintFunction::Binary(t) => {
            let rows: Vec<String> = (1..=t.size()).map(|x| join(t.row(x))).collect();
            writeln!(out, "binary {scope} {}", rows.join(" / "))
        }
        ConstraintFunction::Interval(g) => {
            writeln!(out, "gi {scope} {} {} {}", g.lower, g.upper, g.weight)
        }
    };
}

/// Canonical text form; `parse(&print(i)) == i`.
pub fn print(inst: &Instance) -> String {
    let mut out = String::new();
    print_preamble(inst, &mut out);
    for c in inst.constraints() {
        print_constraint(inst, c, &mut out);
    }
    out
}
