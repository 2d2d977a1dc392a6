//! Domain description files: `[section]` headers, `key = value` lines and
//! `#` comments. Values are integers, bare words, quoted strings or tuples.

use std::collections::BTreeMap;
use std::path::Path;

use crate::error::{Error, Result};
use crate::exact::scalar::*;
use crate::exact::{ExactComplex, ExactScalar};
use crate::geometry::{local_germ_at, BoundaryPoint, DomainSpec, LocalGerm, Region};
use crate::germ::{parse_expr, to_germ, Germ, Model};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Value {
    Bare(String),
    Str(String),
    Tuple(Vec<Value>),
}

impl Value {
    /// Text of a scalar value, quoted or not.
    pub fn text(&self) -> Option<&str> {
        match self {
            Value::Bare(s) | Value::Str(s) => Some(s),
            Value::Tuple(_) => None,
        }
    }

    pub fn items(&self) -> Vec<String> {
        match self {
            Value::Tuple(v) => v.iter().filter_map(|x| x.text().map(str::to_string)).collect(),
            other => other.text().map(|s| vec![s.to_string()]).unwrap_or_default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Entry {
    pub line: usize,
    pub value: Value,
}

pub type Sections = BTreeMap<String, BTreeMap<String, Entry>>;

fn strip_comment(line: &str) -> &str {
    let mut quoted = false;
    for (i, ch) in line.char_indices() {
        match ch {
            '"' => quoted = !quoted,
            '#' if !quoted => return &line[..i],
            _ => {}
        }
    }
    line
}

fn parse_value(text: &str, line: usize) -> Result<Value> {
    let err = |msg: &str| Error::DomainFile { line, msg: msg.to_string() };
    let t = text.trim();
    if t.is_empty() {
        return Err(err("missing value"));
    }
    if let Some(rest) = t.strip_prefix('(') {
        let inner = rest.strip_suffix(')').ok_or_else(|| err("unterminated tuple"))?;
        let mut items = Vec::new();
        let mut cur = String::new();
        let mut quoted = false;
        for ch in inner.chars() {
            match ch {
                '"' => {
                    quoted = !quoted;
                    cur.push(ch);
                }
                ',' if !quoted => {
                    items.push(parse_value(&cur, line)?);
                    cur.clear();
                }
                _ => cur.push(ch),
            }
        }
        if quoted {
            return Err(err("unterminated string"));
        }
        if !cur.trim().is_empty() || !items.is_empty() {
            items.push(parse_value(&cur, line)?);
        }
        return Ok(Value::Tuple(items));
    }
    if let Some(rest) = t.strip_prefix('"') {
        let s = rest.strip_suffix('"').ok_or_else(|| err("unterminated string"))?;
        if s.contains('"') {
            return Err(err("stray quote"));
        }
        return Ok(Value::Str(s.to_string()));
    }
    if t.contains(char::is_whitespace) {
        return Err(err("bare values cannot contain spaces; quote them"));
    }
    Ok(Value::Bare(t.to_string()))
}

pub fn parse_sections(text: &str) -> Result<Sections> {
    let mut out: Sections = BTreeMap::new();
    let mut current: Option<String> = None;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let l = strip_comment(raw).trim();
        if l.is_empty() {
            continue;
        }
        if let Some(name) = l.strip_prefix('[') {
            let name = name.strip_suffix(']').ok_or(Error::DomainFile { line, msg: "malformed section header".into() })?.trim();
            if out.contains_key(name) {
                return Err(Error::DomainFile { line, msg: format!("duplicate section [{name}]") });
            }
            out.insert(name.to_string(), BTreeMap::new());
            current = Some(name.to_string());
            continue;
        }
        let (k, v) = l.split_once('=').ok_or(Error::DomainFile { line, msg: "expected `key = value`".into() })?;
        let section = current.as_ref().ok_or(Error::DomainFile { line, msg: "key outside of a section".into() })?;
        let key = k.trim().to_string();
        let map = out.get_mut(section).unwrap();
        if map.contains_key(&key) {
            return Err(Error::DomainFile { line, msg: format!("duplicate key `{key}`") });
        }
        map.insert(key, Entry { line, value: parse_value(v, line)? });
    }
    Ok(out)
}

/// Tunables that a file may set under `[params]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Params {
    pub max_order: u32,
    pub seed: u64,
    pub oracle_max_deg: usize,
    pub oracle_lattice: String,
    pub oracle_budget: usize,
    pub samples: usize,
}

impl Default for Params {
    fn default() -> Self {
        Params { max_order: 12, seed: 0, oracle_max_deg: 3, oracle_lattice: "default".into(), oracle_budget: 5000, samples: 200 }
    }
}

/// Expected values under `[expect]`: a scalar (`6`, `inf`, `pseudoconvex`) or a tuple.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expected {
    Scalar(String),
    Tuple(Vec<String>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DomainFile {
    pub name: String,
    pub n: usize,
    pub model: Model,
    pub rho_text: String,
    pub rho: Germ,
    pub point: Vec<ExactComplex>,
    pub region: Option<Region>,
    pub params: Params,
    pub expect: BTreeMap<String, Expected>,
}

fn entry<'a>(s: &'a Sections, sec: &str, key: &str) -> Result<&'a Entry> {
    s.get(sec)
        .and_then(|m| m.get(key))
        .ok_or_else(|| Error::DomainFile { line: 0, msg: format!("missing `{key}` in [{sec}]") })
}

fn parse_num<T: std::str::FromStr>(e: &Entry, what: &str) -> Result<T> {
    e.value
        .text()
        .and_then(|t| t.parse().ok())
        .ok_or_else(|| Error::DomainFile { line: e.line, msg: format!("{what} must be a nonnegative integer") })
}

fn scalars(e: &Entry) -> Result<Vec<ExactScalar>> {
    e.value
        .items()
        .iter()
        .map(|s| parse_scalar(s).map_err(|err| Error::DomainFile { line: e.line, msg: err.to_string() }))
        .collect()
}

impl DomainFile {
    pub fn parse(name: &str, text: &str) -> Result<Self> {
        let s = parse_sections(text)?;
        for sec in s.keys() {
            if !["domain", "point", "expect", "params"].contains(&sec.as_str()) {
                return Err(Error::DomainFile { line: 0, msg: format!("unknown section [{sec}]") });
            }
        }
        let n_entry = entry(&s, "domain", "n")?;
        let n: usize = parse_num(n_entry, "n")?;
        if n == 0 {
            return Err(Error::DomainFile { line: n_entry.line, msg: "n must be positive".into() });
        }
        let m = entry(&s, "domain", "model")?;
        let model = match m.value.text() {
            Some("modulus") => Model::Mod,
            Some("log") => Model::Log,
            _ => return Err(Error::DomainFile { line: m.line, msg: "model must be `modulus` or `log`".into() }),
        };
        let r = entry(&s, "domain", "rho")?;
        let rho_text = r.value.text().ok_or(Error::DomainFile { line: r.line, msg: "rho must be a string".into() })?.to_string();
        let ast = parse_expr(&rho_text, n).map_err(|e| Error::DomainFile { line: r.line, msg: format!("rho: {e}") })?;
        let pe = entry(&s, "point", "p")?;
        let point: Vec<ExactComplex> = pe
            .value
            .items()
            .iter()
            .map(|t| parse_complex(t).map_err(|e| Error::DomainFile { line: pe.line, msg: e.to_string() }))
            .collect::<Result<_>>()?;
        if point.len() != n {
            return Err(Error::DimensionMismatch { expected: n, got: point.len() });
        }
        let rho = to_germ(&ast, point.clone()).map_err(|e| Error::DomainFile { line: r.line, msg: format!("rho: {e}") })?;
        if rho.model() != Some(model) {
            return Err(Error::DomainFile { line: m.line, msg: "rho does not match the declared model".into() });
        }
        let region = match (s.get("domain").and_then(|d| d.get("region_lo")), s.get("domain").and_then(|d| d.get("region_hi"))) {
            (Some(lo), Some(hi)) => Some(Region::new(scalars(lo)?, scalars(hi)?).map_err(|e| Error::DomainFile { line: lo.line, msg: e.to_string() })?),
            (None, None) => None,
            (Some(e), None) | (None, Some(e)) => return Err(Error::DomainFile { line: e.line, msg: "region needs both region_lo and region_hi".into() }),
        };
        let mut params = Params::default();
        if let Some(p) = s.get("params") {
            for (k, e) in p {
                match k.as_str() {
                    "max_order" => params.max_order = parse_num(e, k)?,
                    "seed" => params.seed = parse_num(e, k)?,
                    "oracle_max_deg" => params.oracle_max_deg = parse_num(e, k)?,
                    "oracle_budget" => params.oracle_budget = parse_num(e, k)?,
                    "samples" => params.samples = parse_num(e, k)?,
                    "oracle_lattice" => params.oracle_lattice = e.value.text().unwrap_or_default().to_string(),
                    _ => return Err(Error::DomainFile { line: e.line, msg: format!("unknown parameter `{k}`") }),
                }
            }
        }
        let mut expect = BTreeMap::new();
        if let Some(ex) = s.get("expect") {
            for (k, e) in ex {
                let v = match &e.value {
                    Value::Tuple(_) => Expected::Tuple(e.value.items()),
                    other => Expected::Scalar(other.text().unwrap_or_default().to_string()),
                };
                expect.insert(k.clone(), v);
            }
        }
        Ok(DomainFile { name: name.to_string(), n, model, rho_text, rho, point, region, params, expect })
    }

    pub fn spec(&self) -> Result<DomainSpec> {
        DomainSpec::new(self.rho.clone(), self.region.clone())
    }

    /// The local germ at the file's point, truncated at weighted order `trunc`.
    pub fn local_germ(&self, trunc: u32) -> Result<LocalGerm> {
        let spec = self.spec()?;
        let bp = BoundaryPoint::new(&spec, self.point.clone())?;
        local_germ_at(&spec, &bp, trunc)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        let name = path.file_stem().and_then(|s| s.to_str()).unwrap_or("domain");
        Self::parse(name, &text)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const SAMPLE: &str = r#"
[domain]
n = 3
model = modulus            # or: log
rho = "|z1|^2 + |z2|^6 + |z3|^6 + |z2*z3|^2 - 1"
[point]
p = ( "1", "0", "0" )
[expect]
line = 6
qtypes = (1, 4, 6)
"#;

    #[test]
    fn parses_example() {
        let f = DomainFile::parse("r", SAMPLE).unwrap();
        assert_eq!(f.n, 3);
        assert_eq!(f.model, Model::Mod);
        assert_eq!(f.point, vec![cone(), czero(), czero()]);
        assert_eq!(f.expect["line"], Expected::Scalar("6".into()));
        assert_eq!(f.expect["qtypes"], Expected::Tuple(vec!["1".into(), "4".into(), "6".into()]));
    }

    #[test]
    fn reports_line_numbers() {
        let bad = SAMPLE.replace("n = 3", "n = three");
        assert!(matches!(DomainFile::parse("r", &bad), Err(Error::DomainFile { line: 3, .. })));
        let bad = SAMPLE.replace("|z2*z3|^2", "z2");
        match DomainFile::parse("r", &bad) {
            Err(Error::DomainFile { line: 5, msg }) => assert!(msg.starts_with("rho:")),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn dimension_mismatch() {
        let bad = SAMPLE.replace(r#"( "1", "0", "0" )"#, r#"( "1", "0" )"#);
        assert_eq!(DomainFile::parse("r", &bad), Err(Error::DimensionMismatch { expected: 3, got: 2 }));
    }
}
