//! Cover instances as integer programs (LP file format) or, for exact
//! partitions, as CNF formulas.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::str::FromStr;

use crate::geometry::{Ambient, CoverMode, DiscreteBox};

use super::{Compiled, CoverInstance, SearchError};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModelFormat {
    Lp,
    Cnf,
}

impl FromStr for ModelFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "lp" => Ok(ModelFormat::Lp),
            "cnf" | "dimacs" => Ok(ModelFormat::Cnf),
            other => Err(format!("unknown model format '{other}' (expected lp or cnf)")),
        }
    }
}

fn row_name(point: &[usize]) -> String {
    let coords: Vec<String> = point.iter().map(|x| x.to_string()).collect();
    format!("p_{}", coords.join("_"))
}

fn var_list(vars: impl Iterator<Item = u32>, sep: &str) -> String {
    let names: Vec<String> = vars.map(|v| format!("x_{}", v + 1)).collect();
    if names.is_empty() {
        "0".to_string()
    } else {
        names.join(sep)
    }
}

/// Writes the instance as a model. Variables follow candidate order; one
/// row (LP) or clause group (CNF) per point in lexicographic order.
pub fn export_model(instance: &CoverInstance, format: ModelFormat) -> Result<String, SearchError> {
    let compiled = Compiled::new(instance);
    let n = instance.candidates.len() as u32;
    let mut out = String::new();
    match format {
        ModelFormat::Lp => {
            let rel = match instance.mode {
                CoverMode::Exact => "=",
                CoverMode::AtLeast => ">=",
            };
            out.push_str("Minimize\n");
            let _ = writeln!(out, " obj: {}", var_list(0..n, " + "));
            out.push_str("Subject To\n");
            for (p, point) in instance.ambient.points().enumerate() {
                let lhs = var_list(compiled.through[p].iter().copied(), " + ");
                let _ = writeln!(out, " {}: {} {} {}", row_name(&point), lhs, rel, instance.multiplicity);
            }
            out.push_str("Binary\n");
            let _ = writeln!(out, " {}", var_list(0..n, " "));
            out.push_str("End\n");
        }
        ModelFormat::Cnf => {
            if instance.multiplicity != 1 || instance.mode != CoverMode::Exact {
                return Err(SearchError::UnsupportedModel { format: "cnf" });
            }
            let mut clauses = Vec::new();
            for through in &compiled.through {
                let lits: Vec<String> = through.iter().map(|&c| (c + 1).to_string()).collect();
                clauses.push(format!("{} 0", lits.join(" ")).trim_start().to_string());
                for (i, &a) in through.iter().enumerate() {
                    for &b in &through[i + 1..] {
                        clauses.push(format!("-{} -{} 0", a + 1, b + 1));
                    }
                }
            }
            let _ = writeln!(out, "c exact cover of {} by {} boxes", instance.ambient, n);
            let _ = writeln!(out, "p cnf {} {}", n, clauses.len());
            for c in clauses {
                out.push_str(&c);
                out.push('\n');
            }
        }
    }
    Ok(out)
}

fn parse_err(line: usize, message: impl Into<String>) -> SearchError {
    SearchError::ModelParse { line, message: message.into() }
}

fn parse_var(token: &str, line: usize) -> Result<usize, SearchError> {
    token
        .strip_prefix("x_")
        .and_then(|v| v.parse::<usize>().ok())
        .filter(|&v| v >= 1)
        .ok_or_else(|| parse_err(line, format!("bad variable '{token}'")))
}

/// Rebuilds an instance from LP text written by [`export_model`]. The
/// ambient is the largest coordinate per axis among row names, and each
/// variable's box is recovered from the rows it appears in.
pub fn parse_lp_model(text: &str) -> Result<CoverInstance, SearchError> {
    #[derive(PartialEq)]
    enum Section {
        Start,
        Objective,
        Rows,
        Binary,
        End,
    }
    let mut section = Section::Start;
    let mut var_count = 0usize;
    let mut rows: Vec<(Vec<usize>, Vec<usize>)> = Vec::new();
    let mut rule: Option<(CoverMode, usize)> = None;
    for (i, raw) in text.lines().enumerate() {
        let lineno = i + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('\\') {
            continue;
        }
        match line {
            "Minimize" => section = Section::Objective,
            "Subject To" => section = Section::Rows,
            "Binary" => section = Section::Binary,
            "End" => section = Section::End,
            _ => match section {
                Section::Objective => {
                    let body = line
                        .strip_prefix("obj:")
                        .ok_or_else(|| parse_err(lineno, "expected 'obj:'"))?;
                    for term in body.split('+').map(str::trim).filter(|t| *t != "0") {
                        var_count = var_count.max(parse_var(term, lineno)?);
                    }
                }
                Section::Rows => {
                    let (name, body) = line
                        .split_once(':')
                        .ok_or_else(|| parse_err(lineno, "expected '<name>: <terms> = <t>'"))?;
                    let point = name
                        .trim()
                        .strip_prefix("p_")
                        .ok_or_else(|| parse_err(lineno, "row name must start with 'p_'"))?
                        .split('_')
                        .map(|c| c.parse::<usize>().ok().filter(|&x| x >= 1))
                        .collect::<Option<Vec<_>>>()
                        .ok_or_else(|| parse_err(lineno, "bad coordinates in row name"))?;
                    let (mode, lhs, rhs) = if let Some((l, r)) = body.split_once(">=") {
                        (CoverMode::AtLeast, l, r)
                    } else if let Some((l, r)) = body.split_once('=') {
                        (CoverMode::Exact, l, r)
                    } else {
                        return Err(parse_err(lineno, "missing relation"));
                    };
                    let t: usize = rhs
                        .trim()
                        .parse()
                        .map_err(|_| parse_err(lineno, "bad right-hand side"))?;
                    match rule {
                        None => rule = Some((mode, t)),
                        Some(r) if r != (mode, t) => {
                            return Err(parse_err(lineno, "rows disagree on relation or right-hand side"))
                        }
                        _ => {}
                    }
                    let vars = lhs
                        .split('+')
                        .map(str::trim)
                        .filter(|t| *t != "0")
                        .map(|t| parse_var(t, lineno))
                        .collect::<Result<Vec<_>, _>>()?;
                    rows.push((point, vars));
                }
                Section::Binary => {
                    for token in line.split_whitespace().filter(|t| *t != "0") {
                        var_count = var_count.max(parse_var(token, lineno)?);
                    }
                }
                Section::Start | Section::End => {
                    return Err(parse_err(lineno, format!("unexpected line '{line}'")));
                }
            },
        }
    }
    let (mode, t) = rule.ok_or_else(|| parse_err(0, "model has no rows"))?;
    let d = rows[0].0.len();
    if rows.iter().any(|(p, _)| p.len() != d) {
        return Err(parse_err(0, "row names have different dimensions"));
    }
    let sides: Vec<usize> = (0..d).map(|a| rows.iter().map(|(p, _)| p[a]).max().unwrap_or(1)).collect();
    let ambient = Ambient::new(sides)?;
    if rows.len() != ambient.volume() {
        return Err(parse_err(0, "rows do not list every point of the ambient"));
    }
    let mut members: BTreeMap<usize, Vec<&[usize]>> = BTreeMap::new();
    for (point, vars) in &rows {
        for &v in vars {
            var_count = var_count.max(v);
            members.entry(v).or_default().push(point);
        }
    }
    let mut candidates = Vec::with_capacity(var_count);
    for v in 1..=var_count {
        let pts = members
            .get(&v)
            .ok_or_else(|| parse_err(0, format!("variable x_{v} appears in no row")))?;
        let mut masks = vec![0u64; d];
        for p in pts {
            for (a, &x) in p.iter().enumerate() {
                masks[a] |= 1 << (x - 1);
            }
        }
        let b = DiscreteBox::from_masks(masks)?;
        if b.cardinality() != pts.len() as u128 {
            return Err(parse_err(0, format!("variable x_{v} does not describe a box")));
        }
        candidates.push(b);
    }
    CoverInstance::new(ambient, candidates, t, mode)
}
