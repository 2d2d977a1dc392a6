use crate::exact::scalar::*;
use crate::exact::ExactScalar;

/// Node of a defining-function expression. Coordinates only ever appear inside
/// modulus or log-modulus atoms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    Const(ExactScalar),
    /// `|z_{i1} * ... * z_{im}|`, zero-based indices.
    Modulus(Vec<usize>),
    /// `log|z_{i1} * ... * z_{im}|`, zero-based indices.
    LogModulus(Vec<usize>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Neg(Box<Expr>),
    Pow(Box<Expr>, u32),
}

/// A parsed expression over `n` coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExprAst {
    pub n: usize,
    pub root: Expr,
}

impl Expr {
    pub fn visit<'a>(&'a self, f: &mut impl FnMut(&'a Expr)) {
        f(self);
        match self {
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) => {
                a.visit(f);
                b.visit(f);
            }
            Expr::Neg(a) | Expr::Pow(a, _) => a.visit(f),
            _ => {}
        }
    }

    /// Evaluates with `moduli[i] = |z_i|` for modulus atoms and `logs[i] = log|z_i|`
    /// for log atoms.
    pub fn eval(&self, moduli: &[ExactScalar], logs: &[ExactScalar]) -> ExactScalar {
        match self {
            Expr::Const(c) => c.clone(),
            Expr::Modulus(ix) => ix.iter().fold(int(1), |acc, &i| acc * &moduli[i]),
            Expr::LogModulus(ix) => ix.iter().fold(int(0), |acc, &i| acc + &logs[i]),
            Expr::Add(a, b) => a.eval(moduli, logs) + b.eval(moduli, logs),
            Expr::Sub(a, b) => a.eval(moduli, logs) - b.eval(moduli, logs),
            Expr::Mul(a, b) => a.eval(moduli, logs) * b.eval(moduli, logs),
            Expr::Neg(a) => -a.eval(moduli, logs),
            Expr::Pow(a, k) => {
                let v = a.eval(moduli, logs);
                (0..*k).fold(int(1), |acc, _| acc * &v)
            }
        }
    }
}

impl ExprAst {
    pub fn count_atoms(&self) -> (usize, usize) {
        let (mut m, mut l) = (0, 0);
        self.root.visit(&mut |e| match e {
            Expr::Modulus(_) => m += 1,
            Expr::LogModulus(_) => l += 1,
            _ => {}
        });
        (m, l)
    }

    pub fn constants(&self) -> Vec<ExactScalar> {
        let mut out = Vec::new();
        self.root.visit(&mut |e| {
            if let Expr::Const(c) = e {
                out.push(c.clone());
            }
        });
        out
    }

    pub fn has_power(&self, k: u32) -> bool {
        let mut found = false;
        self.root.visit(&mut |e| {
            if matches!(e, Expr::Pow(_, p) if *p == k) {
                found = true;
            }
        });
        found
    }
}
