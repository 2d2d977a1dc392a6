//! Type values and their provenance tags.

use std::cmp::Ordering;
use std::fmt;

use super::disc::Disc;
use crate::exact::scalar::*;
use crate::exact::ExactScalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    NewtonFastPath,
    SeriesComposition,
    JetOracle,
    Elimination,
}

impl Method {
    pub fn tag(self) -> &'static str {
        match self {
            Method::NewtonFastPath => "newton_fast_path",
            Method::SeriesComposition => "series_composition",
            Method::JetOracle => "jet_oracle",
            Method::Elimination => "elimination",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TypeKind {
    Exact(ExactScalar),
    /// `hi = None` means no finite upper bound was certified.
    Bounds { lo: ExactScalar, hi: Option<ExactScalar> },
    Infinite,
}

impl TypeKind {
    pub fn exact(v: u32) -> Self {
        TypeKind::Exact(int(v as i64))
    }

    pub fn lo(&self) -> Option<&ExactScalar> {
        match self {
            TypeKind::Exact(v) => Some(v),
            TypeKind::Bounds { lo, .. } => Some(lo),
            TypeKind::Infinite => None,
        }
    }

    /// Upper end; `None` when unbounded or infinite.
    pub fn hi(&self) -> Option<&ExactScalar> {
        match self {
            TypeKind::Exact(v) => Some(v),
            TypeKind::Bounds { hi, .. } => hi.as_ref(),
            TypeKind::Infinite => None,
        }
    }

    pub fn as_exact(&self) -> Option<&ExactScalar> {
        match self {
            TypeKind::Exact(v) => Some(v),
            _ => None,
        }
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, TypeKind::Infinite)
    }

    /// Pointwise maximum of two values.
    pub fn max(&self, other: &TypeKind) -> TypeKind {
        use TypeKind::*;
        match (self, other) {
            (Infinite, _) | (_, Infinite) => Infinite,
            (Exact(a), Exact(b)) => Exact(a.max(b).clone()),
            _ => {
                let lo = self.lo().unwrap().max(other.lo().unwrap()).clone();
                let hi = match (self.hi(), other.hi()) {
                    (Some(a), Some(b)) => Some(a.max(b).clone()),
                    _ => None,
                };
                normalized(lo, hi)
            }
        }
    }

    /// Pointwise minimum of two values.
    pub fn min(&self, other: &TypeKind) -> TypeKind {
        use TypeKind::*;
        match (self, other) {
            (Infinite, x) | (x, Infinite) => x.clone(),
            (Exact(a), Exact(b)) => Exact(a.min(b).clone()),
            _ => {
                let lo = self.lo().unwrap().min(other.lo().unwrap()).clone();
                let hi = match (self.hi(), other.hi()) {
                    (Some(a), Some(b)) => Some(a.min(b).clone()),
                    (Some(a), None) | (None, Some(a)) => Some(a.clone()),
                    _ => None,
                };
                normalized(lo, hi)
            }
        }
    }

    /// Certified comparison; `None` when bounds overlap.
    pub fn cmp_certain(&self, other: &TypeKind) -> Option<Ordering> {
        use TypeKind::*;
        match (self, other) {
            (Infinite, Infinite) => Some(Ordering::Equal),
            (Infinite, Exact(_)) => Some(Ordering::Greater),
            (Exact(_), Infinite) => Some(Ordering::Less),
            (Exact(a), Exact(b)) => Some(a.cmp(b)),
            _ => {
                if let (Some(h), Some(l)) = (self.hi(), other.lo()) {
                    if h < l {
                        return Some(Ordering::Less);
                    }
                }
                if let (Some(l), Some(h)) = (self.lo(), other.hi()) {
                    if l > h {
                        return Some(Ordering::Greater);
                    }
                }
                None
            }
        }
    }
}

fn normalized(lo: ExactScalar, hi: Option<ExactScalar>) -> TypeKind {
    match hi {
        Some(h) if h == lo => TypeKind::Exact(lo),
        hi => TypeKind::Bounds { lo, hi },
    }
}

impl fmt::Display for TypeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TypeKind::Exact(v) => f.write_str(&fmt_scalar(v)),
            TypeKind::Bounds { lo, hi: Some(hi) } => write!(f, "[{}, {}]", fmt_scalar(lo), fmt_scalar(hi)),
            TypeKind::Bounds { lo, hi: None } => write!(f, "[{}, inf)", fmt_scalar(lo)),
            TypeKind::Infinite => f.write_str("inf"),
        }
    }
}

/// A type value with the disc that attains its lower end, if one is known.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TypeValue {
    pub kind: TypeKind,
    pub witness: Option<Disc>,
    pub method: Method,
}

impl TypeValue {
    pub fn new(kind: TypeKind, witness: Option<Disc>, method: Method) -> Self {
        TypeValue { kind, witness, method }
    }

    pub fn exact(v: u32, witness: Option<Disc>, method: Method) -> Self {
        Self::new(TypeKind::exact(v), witness, method)
    }
}

impl fmt::Display for TypeValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.kind)?;
        if let Some(w) = &self.witness {
            write!(f, " via {w}")?;
        }
        Ok(())
    }
}
