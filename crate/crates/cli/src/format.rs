//! The line-oriented input format.
//!
//! ```text
//! # paper example
//! monoid P ambient 2
//! gen 0 2
//! gen 1 0
//! gen 2 -2
//! ideal K gens (1,0) (0,2)
//! module E num (0,0) den (1,0) rel K
//! flag F complete faces [] [(0,2)] [(0,2) (1,0) (2,-2)]
//! ```
//!
//! `den` and `rel` may be left out. Faces are given by generators and
//! resolve to the smallest face containing them.

use std::fmt;

use tflat_core::ideal::{FractionalIdeal, MonoidIdeal};
use tflat_core::modcomb::CombinatorialModule;
use tflat_core::monoid::fmt_vector;
use tflat_core::{Flag, MonoidPresentation, Vector};

use crate::CliError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleDecl {
    pub name: String,
    pub module: CombinatorialModule,
    /// Name of the ideal given after `rel`, if any.
    pub rel: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlagDecl {
    pub name: String,
    pub flag: Flag,
    pub complete: bool,
}

/// Everything declared in one input file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Document {
    pub name: String,
    pub monoid: MonoidPresentation,
    pub ideals: Vec<(String, MonoidIdeal)>,
    pub modules: Vec<ModuleDecl>,
    pub flags: Vec<FlagDecl>,
}

impl Document {
    pub fn ideal(&self, name: &str) -> Option<&MonoidIdeal> {
        self.ideals.iter().find(|(n, _)| n == name).map(|(_, k)| k)
    }
}

fn parse_err(line: usize, msg: impl Into<String>) -> CliError {
    CliError::Parse {
        line,
        msg: msg.into(),
    }
}

fn invalid(object: &str, msg: impl fmt::Display) -> CliError {
    CliError::Validation {
        object: object.to_string(),
        msg: msg.to_string(),
    }
}

/// `(a,b) (c, d)` into vectors of the given length.
fn parse_tuples(s: &str, len: usize, line: usize) -> Result<Vec<Vector>, CliError> {
    let mut out = Vec::new();
    let mut rest = s.trim();
    while !rest.is_empty() {
        let Some(body) = rest.strip_prefix('(') else {
            return Err(parse_err(line, format!("expected '(' at '{rest}'")));
        };
        let close = body
            .find(')')
            .ok_or_else(|| parse_err(line, "unclosed '('"))?;
        let v: Vector = body[..close]
            .split(',')
            .map(|x| x.trim().parse::<i64>())
            .collect::<Result<_, _>>()
            .map_err(|e| parse_err(line, format!("bad integer in '({})': {e}", &body[..close])))?;
        if v.len() != len {
            return Err(parse_err(
                line,
                format!("tuple ({}) has {} entries, expected {len}", &body[..close], v.len()),
            ));
        }
        out.push(v);
        rest = body[close + 1..].trim_start();
    }
    Ok(out)
}

/// Splits `rest` at the given keywords, returning the text after each one
/// that occurs (in order).
fn sections<'a>(rest: &'a str, keys: &[&str], line: usize) -> Result<Vec<Option<&'a str>>, CliError> {
    let words: Vec<(usize, &str)> = rest
        .split_whitespace()
        .map(|w| (w.as_ptr() as usize - rest.as_ptr() as usize, w))
        .collect();
    let mut starts: Vec<(usize, usize, usize)> = Vec::new();
    for (off, w) in &words {
        if let Some(k) = keys.iter().position(|k| k == w) {
            if starts.iter().any(|s| s.0 == k) {
                return Err(parse_err(line, format!("'{w}' given twice")));
            }
            starts.push((k, *off, off + w.len()));
        }
    }
    let mut out = vec![None; keys.len()];
    for (i, &(k, _, body)) in starts.iter().enumerate() {
        if starts[..i].iter().any(|s| s.0 > k) {
            return Err(parse_err(line, format!("'{}' out of order", keys[k])));
        }
        let end = starts.get(i + 1).map_or(rest.len(), |s| s.1);
        out[k] = Some(&rest[body..end]);
    }
    if let Some(first) = starts.first() {
        if !rest[..first.1].trim().is_empty() {
            return Err(parse_err(line, format!("unexpected '{}'", rest[..first.1].trim())));
        }
    }
    Ok(out)
}

pub fn parse_document(text: &str) -> Result<Document, CliError> {
    let mut header: Option<(String, usize, usize)> = None;
    let mut gens: Vec<Vector> = Vec::new();
    let mut monoid: Option<MonoidPresentation> = None;
    let mut ideals: Vec<(String, MonoidIdeal)> = Vec::new();
    let mut modules: Vec<ModuleDecl> = Vec::new();
    let mut flags: Vec<FlagDecl> = Vec::new();

    let finish_monoid = |header: &Option<(String, usize, usize)>,
                             gens: &[Vector],
                             monoid: &mut Option<MonoidPresentation>|
     -> Result<(), CliError> {
        if monoid.is_some() {
            return Ok(());
        }
        let Some((name, k, line)) = header else {
            return Err(parse_err(1, "missing 'monoid <name> ambient <k>' line"));
        };
        if gens.is_empty() {
            return Err(parse_err(*line, format!("monoid {name} has no generators")));
        }
        *monoid = Some(MonoidPresentation::new(*k, gens.to_vec()).map_err(|e| invalid(name, e))?);
        Ok(())
    };

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let (keyword, rest) = content.split_once(char::is_whitespace).unwrap_or((content, ""));
        let rest = rest.trim();
        match keyword {
            "monoid" => {
                if header.is_some() {
                    return Err(parse_err(line, "only one monoid per file"));
                }
                let parts: Vec<&str> = rest.split_whitespace().collect();
                let [name, "ambient", k] = parts[..] else {
                    return Err(parse_err(line, "expected 'monoid <name> ambient <k>'"));
                };
                let k: usize = k
                    .parse()
                    .map_err(|e| parse_err(line, format!("bad ambient rank: {e}")))?;
                header = Some((name.to_string(), k, line));
            }
            "gen" => {
                let Some((_, k, _)) = &header else {
                    return Err(parse_err(line, "'gen' before 'monoid'"));
                };
                if monoid.is_some() {
                    return Err(parse_err(line, "'gen' after ideals, modules or flags"));
                }
                let v: Vector = rest
                    .split_whitespace()
                    .map(str::parse)
                    .collect::<Result<_, _>>()
                    .map_err(|e| parse_err(line, format!("bad integer: {e}")))?;
                if v.len() != *k {
                    return Err(parse_err(line, format!("generator has {} entries, expected {k}", v.len())));
                }
                gens.push(v);
            }
            "ideal" => {
                finish_monoid(&header, &gens, &mut monoid)?;
                let p = monoid.as_ref().expect("monoid finished");
                let (name, body) = rest.split_once(char::is_whitespace).unwrap_or((rest, ""));
                let [Some(g)] = sections(body, &["gens"], line)?[..] else {
                    return Err(parse_err(line, "expected 'ideal <name> gens ...'"));
                };
                if ideals.iter().any(|(n, _)| n == name) {
                    return Err(parse_err(line, format!("ideal {name} declared twice")));
                }
                let gs = parse_tuples(g, p.ambient_rank(), line)?;
                if let Some(bad) = gs.iter().find(|v| !p.contains(v)) {
                    return Err(invalid(name, format!("generator {} is not in the monoid", fmt_vector(bad))));
                }
                ideals.push((name.to_string(), MonoidIdeal::new(p, gs).map_err(|e| invalid(name, e))?));
            }
            "module" => {
                finish_monoid(&header, &gens, &mut monoid)?;
                let p = monoid.as_ref().expect("monoid finished");
                let (name, body) = rest.split_once(char::is_whitespace).unwrap_or((rest, ""));
                let parts = sections(body, &["num", "den", "rel"], line)?;
                let Some(num) = parts[0] else {
                    return Err(parse_err(line, "expected 'module <name> num ... [den ...] [rel <ideal>]'"));
                };
                let a = parse_tuples(num, p.ambient_rank(), line)?;
                let b = parts[1].map_or(Ok(Vec::new()), |d| parse_tuples(d, p.ambient_rank(), line))?;
                let rel = parts[2].map(|r| r.trim().to_string());
                let k = match &rel {
                    Some(r) => ideals
                        .iter()
                        .find(|(n, _)| n == r)
                        .map(|(_, k)| k.clone())
                        .ok_or_else(|| parse_err(line, format!("unknown ideal '{r}'")))?,
                    None => MonoidIdeal::empty(p),
                };
                let a = FractionalIdeal::new(p, a).map_err(|e| invalid(name, e))?;
                let b = FractionalIdeal::new(p, b).map_err(|e| invalid(name, e))?;
                let module = CombinatorialModule::new(a, b, k).map_err(|e| invalid(name, e))?;
                modules.push(ModuleDecl {
                    name: name.to_string(),
                    module,
                    rel,
                });
            }
            "flag" => {
                finish_monoid(&header, &gens, &mut monoid)?;
                let p = monoid.as_ref().expect("monoid finished");
                let mut words = rest.split_whitespace();
                let name = words.next().ok_or_else(|| parse_err(line, "flag needs a name"))?;
                let mut body = rest[name.len()..].trim_start();
                let complete = match body.strip_prefix("complete") {
                    Some(b) => {
                        body = b.trim_start();
                        true
                    }
                    None => false,
                };
                let body = body
                    .strip_prefix("faces")
                    .ok_or_else(|| parse_err(line, "expected 'flag <name> [complete] faces [..] [..]'"))?;
                let mut faces = Vec::new();
                let mut rest = body.trim();
                while !rest.is_empty() {
                    let inner = rest
                        .strip_prefix('[')
                        .ok_or_else(|| parse_err(line, format!("expected '[' at '{rest}'")))?;
                    let close = inner.find(']').ok_or_else(|| parse_err(line, "unclosed '['"))?;
                    let vs = parse_tuples(&inner[..close], p.ambient_rank(), line)?;
                    if let Some(bad) = vs.iter().find(|v| !p.contains(v)) {
                        return Err(invalid(name, format!("{} is not in the monoid", fmt_vector(bad))));
                    }
                    faces.push(p.smallest_face_containing(&vs).map_err(|e| invalid(name, e))?);
                    rest = inner[close + 1..].trim_start();
                }
                let flag = Flag::new(faces).map_err(|e| invalid(name, e))?;
                if complete {
                    flag.check_complete().map_err(|e| invalid(name, e))?;
                }
                flags.push(FlagDecl {
                    name: name.to_string(),
                    flag,
                    complete,
                });
            }
            other => return Err(parse_err(line, format!("unknown keyword '{other}'"))),
        }
    }
    finish_monoid(&header, &gens, &mut monoid)?;
    let (name, _, _) = header.expect("checked by finish_monoid");
    Ok(Document {
        name,
        monoid: monoid.expect("finished"),
        ideals,
        modules,
        flags,
    })
}

fn tuples(vs: &[Vector]) -> String {
    vs.iter().map(|v| fmt_vector(v)).collect::<Vec<_>>().join(" ")
}

impl fmt::Display for Document {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = &self.monoid;
        writeln!(f, "monoid {} ambient {}", self.name, p.ambient_rank())?;
        for g in p.generators() {
            let entries: Vec<String> = g.iter().map(i64::to_string).collect();
            writeln!(f, "gen {}", entries.join(" "))?;
        }
        for (name, k) in &self.ideals {
            writeln!(f, "ideal {name} gens {}", tuples(k.generators()))?;
        }
        for m in &self.modules {
            write!(f, "module {} num {}", m.name, tuples(m.module.numerator().generators()))?;
            if !m.module.denominator().is_empty() {
                write!(f, " den {}", tuples(m.module.denominator().generators()))?;
            }
            if let Some(r) = &m.rel {
                write!(f, " rel {r}")?;
            }
            writeln!(f)?;
        }
        for fl in &self.flags {
            let faces: Vec<String> = fl
                .flag
                .faces()
                .iter()
                .map(|face| format!("[{}]", tuples(&face.generators())))
                .collect();
            let complete = if fl.complete { " complete" } else { "" };
            writeln!(f, "flag {}{complete} faces {}", fl.name, faces.join(" "))?;
        }
        Ok(())
    }
}
