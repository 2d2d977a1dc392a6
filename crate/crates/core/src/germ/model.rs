//! Canonical monomial-sum germs.

use std::fmt;

use num_traits::{One, Signed, Zero};

use super::ast::{Expr, ExprAst};
use crate::error::{Error, Result};
use crate::exact::scalar::*;
use crate::exact::{ExactComplex, ExactScalar, MPoly};

/// Which chart a variable lives in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum VarKind {
    /// `u_j = log|z_j| - log|p_j|` (near a point with `p_j != 0`).
    Log,
    /// `t_j = |z_j|^2`.
    Mod,
}

impl VarKind {
    /// Minimal order in `ζ` a variable can contribute along a regular disc.
    pub fn weight(self) -> u32 {
        match self {
            VarKind::Log => 1,
            VarKind::Mod => 2,
        }
    }
}

/// The two defining-function models.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Model {
    Log,
    Mod,
}

/// A defining-function germ `constant + Σ c_α x^α` with per-variable chart.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Germ {
    kinds: Vec<VarKind>,
    support: MPoly,
    constant: ExactScalar,
    base_point: Vec<ExactComplex>,
    normal_index: Option<usize>,
}

impl Germ {
    /// Builds a germ; the constant monomial of `poly`, if any, is split off.
    pub fn new(kinds: Vec<VarKind>, poly: MPoly, base_point: Vec<ExactComplex>) -> Self {
        let constant = poly.constant_term();
        let support = poly.without_constant();
        Germ { kinds, support, constant, base_point, normal_index: None }
    }

    pub fn pure(model: Model, poly: MPoly, base_point: Vec<ExactComplex>) -> Self {
        let kind = match model {
            Model::Log => VarKind::Log,
            Model::Mod => VarKind::Mod,
        };
        Self::new(vec![kind; poly.nvars()], poly, base_point)
    }

    pub fn with_normal_index(mut self, j: usize) -> Self {
        self.normal_index = Some(j);
        self
    }

    pub fn with_base_point(mut self, p: Vec<ExactComplex>) -> Self {
        self.base_point = p;
        self
    }

    pub fn n(&self) -> usize {
        self.kinds.len()
    }

    pub fn kinds(&self) -> &[VarKind] {
        &self.kinds
    }

    pub fn kind(&self, j: usize) -> VarKind {
        self.kinds[j]
    }

    /// `Some(model)` when every variable lives in the same chart.
    pub fn model(&self) -> Option<Model> {
        if self.kinds.iter().all(|&k| k == VarKind::Log) {
            Some(Model::Log)
        } else if self.kinds.iter().all(|&k| k == VarKind::Mod) {
            Some(Model::Mod)
        } else {
            None
        }
    }

    /// Non-constant monomials.
    pub fn support(&self) -> &MPoly {
        &self.support
    }

    pub fn constant(&self) -> &ExactScalar {
        &self.constant
    }

    /// Support plus constant as one polynomial.
    pub fn poly(&self) -> MPoly {
        self.support.add(&MPoly::constant(self.constant.clone(), self.n()))
    }

    pub fn base_point(&self) -> &[ExactComplex] {
        &self.base_point
    }

    pub fn normal_index(&self) -> Option<usize> {
        self.normal_index
    }

    pub fn weights(&self) -> Vec<u32> {
        self.kinds.iter().map(|k| k.weight()).collect()
    }

    /// Exact value at a point of the germ's variable space.
    pub fn eval(&self, x: &[ExactScalar]) -> ExactScalar {
        self.support.eval(x) + &self.constant
    }

    /// Canonical text, reparseable by [`crate::germ::parse_expr`] for pure models.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let push = |out: &mut String, c: &ExactScalar, body: &str| {
            let neg = c.is_negative();
            let a = c.abs();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            if body.is_empty() {
                out.push_str(&fmt_scalar(&a));
            } else if a.is_one() {
                out.push_str(body);
            } else {
                out.push_str(&fmt_scalar(&a));
                out.push('*');
                out.push_str(body);
            }
        };
        for (e, c) in self.support.terms() {
            let atoms: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(j, &k)| match self.kinds[j] {
                    VarKind::Mod => format!("|z{}|^{}", j + 1, 2 * k),
                    VarKind::Log if k == 1 => format!("log|z{}|", j + 1),
                    VarKind::Log => format!("log|z{}|^{}", j + 1, k),
                })
                .collect();
            push(&mut out, c, &atoms.join("*"));
        }
        if !self.constant.is_zero() || out.is_empty() {
            push(&mut out, &self.constant, "");
        }
        out
    }
}

impl fmt::Display for Germ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// Expands an AST over atom variables: `|z_i|` (modulus) or `log|z_i|`.
fn expand(e: &Expr, n: usize) -> MPoly {
    match e {
        Expr::Const(c) => MPoly::constant(c.clone(), n),
        Expr::Modulus(ix) => {
            let mut exp = vec![0; n];
            for &i in ix {
                exp[i] += 1;
            }
            MPoly::monomial(exp, ExactScalar::one())
        }
        Expr::LogModulus(ix) => ix.iter().fold(MPoly::zero(n), |acc, &i| acc.add(&MPoly::var(i, n))),
        Expr::Add(a, b) => expand(a, n).add(&expand(b, n)),
        Expr::Sub(a, b) => expand(a, n).sub(&expand(b, n)),
        Expr::Mul(a, b) => expand(a, n).mul(&expand(b, n)),
        Expr::Neg(a) => expand(a, n).neg(),
        Expr::Pow(a, k) => expand(a, n).pow(*k),
    }
}

/// Canonicalises an expression into a fully expanded LOG or MOD germ.
pub fn to_germ(ast: &ExprAst, base_point: Vec<ExactComplex>) -> Result<Germ> {
    if base_point.len() != ast.n {
        return Err(Error::DimensionMismatch { expected: ast.n, got: base_point.len() });
    }
    let (m, l) = ast.count_atoms();
    let model = match (m, l) {
        (0, 0) => return Err(Error::Domain("expression has no coordinate atoms".into())),
        (_, 0) => Model::Mod,
        (0, _) => Model::Log,
        _ => return Err(Error::MixedModel),
    };
    let raw = expand(&ast.root, ast.n);
    let poly = match model {
        Model::Log => raw,
        Model::Mod => {
            let mut halved = MPoly::zero(ast.n);
            for (e, c) in raw.terms() {
                if e.iter().any(|k| k % 2 == 1) {
                    let atoms: Vec<String> = e
                        .iter()
                        .enumerate()
                        .filter(|(_, &k)| k > 0)
                        .map(|(j, k)| format!("|z{}|^{}", j + 1, k))
                        .collect();
                    return Err(Error::OddModulusPower(atoms.join("*")));
                }
                halved.add_term(e.iter().map(|k| k / 2).collect(), c.clone());
            }
            halved
        }
    };
    let g = Germ::pure(model, poly, base_point);
    if g.support().is_zero() {
        return Err(Error::Domain("defining function is constant".into()));
    }
    Ok(g)
}

/// Requested derivative order for [`germ_derivatives`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DerivOrder {
    Gradient,
    Hessian,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Derivatives {
    Gradient(Vec<ExactScalar>),
    Hessian(Vec<Vec<ExactScalar>>),
}

pub fn germ_derivatives(g: &Germ, point: &[ExactScalar], order: DerivOrder) -> Result<Derivatives> {
    if point.len() != g.n() {
        return Err(Error::DimensionMismatch { expected: g.n(), got: point.len() });
    }
    Ok(match order {
        DerivOrder::Gradient => Derivatives::Gradient(gradient(g.support(), point)),
        DerivOrder::Hessian => Derivatives::Hessian(hessian(g.support(), point)),
    })
}

pub fn gradient(p: &MPoly, point: &[ExactScalar]) -> Vec<ExactScalar> {
    (0..p.nvars()).map(|i| p.partial(i).eval(point)).collect()
}

pub fn hessian(p: &MPoly, point: &[ExactScalar]) -> Vec<Vec<ExactScalar>> {
    let n = p.nvars();
    let firsts: Vec<MPoly> = (0..n).map(|i| p.partial(i)).collect();
    (0..n).map(|i| (0..n).map(|j| firsts[i].partial(j).eval(point)).collect()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::germ::parse_expr;

    fn origin(n: usize) -> Vec<ExactComplex> {
        vec![czero(); n]
    }

    #[test]
    fn mixed_sextic_germ() {
        let ast = parse_expr("|z1|^2 + |z2|^6 + |z3|^6 + |z2*z3|^2 - 1", 3).unwrap();
        let g = to_germ(&ast, vec![cone(), czero(), czero()]).unwrap();
        assert_eq!(g.model(), Some(Model::Mod));
        assert_eq!(g.support().len(), 4);
        for e in [[1, 0, 0], [0, 3, 0], [0, 0, 3], [0, 1, 1]] {
            assert_eq!(g.support().coeff(&e), int(1));
        }
        assert_eq!(g.constant(), &int(-1));
    }

    #[test]
    fn diagonal_quartic_germ() {
        let ast = parse_expr("log|z1| + log|z2| + (log|z1| - log|z2|)^4", 2).unwrap();
        let g = to_germ(&ast, vec![cone(), cone()]).unwrap();
        assert_eq!(g.model(), Some(Model::Log));
        assert_eq!(g.support().coeff(&[1, 0]), int(1));
        assert_eq!(g.support().coeff(&[0, 1]), int(1));
        for (e, c) in [([4, 0], 1), ([3, 1], -4), ([2, 2], 6), ([1, 3], -4), ([0, 4], 1)] {
            assert_eq!(g.support().coeff(&e), int(c));
        }
    }

    #[test]
    fn sphere_germ() {
        let ast = parse_expr("|z1|^2 - 1", 3).unwrap();
        let g = to_germ(&ast, vec![cone(), czero(), czero()]).unwrap();
        assert_eq!(g.support().len(), 1);
        assert_eq!(g.support().coeff(&[1, 0, 0]), int(1));
        assert_eq!(g.constant(), &int(-1));
    }

    #[test]
    fn model_errors() {
        let ast = parse_expr("log|z1| + |z2|^2", 2).unwrap();
        assert_eq!(to_germ(&ast, origin(2)), Err(Error::MixedModel));
        let ast = parse_expr("|z1|^3 - 1", 2).unwrap();
        assert!(matches!(to_germ(&ast, origin(2)), Err(Error::OddModulusPower(_))));
        // |z1|*|z1| is even in total
        let ast = parse_expr("|z1|*|z1| - 1", 2).unwrap();
        assert!(to_germ(&ast, origin(2)).is_ok());
    }

    #[test]
    fn derivative_examples() {
        let ast = parse_expr("log|z1| + log|z2| + (log|z1| - log|z2|)^4", 2).unwrap();
        let g = to_germ(&ast, vec![cone(), cone()]).unwrap();
        let d = germ_derivatives(&g, &[int(0), int(0)], DerivOrder::Gradient).unwrap();
        assert_eq!(d, Derivatives::Gradient(vec![int(1), int(1)]));
        // d^2/du^2 (u1-u2)^4 = 12 (u1-u2)^2; at (1,-1): 12*4 = 48
        let d = germ_derivatives(&g, &[int(1), int(-1)], DerivOrder::Hessian).unwrap();
        assert_eq!(d, Derivatives::Hessian(vec![vec![int(48), int(-48)], vec![int(-48), int(48)]]));
        let ast = parse_expr("|z2|^6 + |z3|^6 + |z2*z3|^2", 3).unwrap();
        let g = to_germ(&ast, origin(3)).unwrap();
        let d = germ_derivatives(&g, &[int(0), int(0), int(0)], DerivOrder::Gradient).unwrap();
        assert_eq!(d, Derivatives::Gradient(vec![int(0); 3]));
        assert!(matches!(
            germ_derivatives(&g, &[int(0)], DerivOrder::Gradient),
            Err(Error::DimensionMismatch { expected: 3, got: 1 })
        ));
    }

    #[test]
    fn canonical_text_round_trip() {
        for (src, n) in [
            ("|z1|^2 + |z2|^6 + |z3|^6 + |z2*z3|^2 - 1", 3),
            ("log|z1| + log|z2| + (log|z1| - log|z2|)^4", 2),
            ("-3/2*|z1|^4 + 1/7", 1),
        ] {
            let g = to_germ(&parse_expr(src, n).unwrap(), origin(n)).unwrap();
            let again = to_germ(&parse_expr(&g.to_text(), n).unwrap(), origin(n)).unwrap();
            assert_eq!(g, again, "{}", g.to_text());
        }
    }
}
