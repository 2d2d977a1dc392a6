//! Dense two-phase simplex over exact rationals (Bland's rule).

use num_traits::{Signed, Zero};

use crate::exact::scalar::int;
use crate::exact::ExactScalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Rel {
    Le,
    Ge,
    Eq,
}

/// Minimise `objective · x` subject to `rows` and `x >= 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lp {
    pub nvars: usize,
    pub objective: Vec<ExactScalar>,
    pub rows: Vec<(Vec<ExactScalar>, Rel, ExactScalar)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LpOutcome {
    Optimal { value: ExactScalar, x: Vec<ExactScalar> },
    Infeasible,
    Unbounded,
}

struct Tableau {
    a: Vec<Vec<ExactScalar>>,
    rhs: Vec<ExactScalar>,
    basis: Vec<usize>,
}

impl Tableau {
    fn pivot(&mut self, r: usize, c: usize) {
        let p = self.a[r][c].clone();
        for v in self.a[r].iter_mut() {
            *v /= &p;
        }
        self.rhs[r] /= &p;
        for i in 0..self.a.len() {
            if i == r || self.a[i][c].is_zero() {
                continue;
            }
            let f = self.a[i][c].clone();
            for k in 0..self.a[i].len() {
                let d = &f * &self.a[r][k];
                self.a[i][k] -= d;
            }
            let d = &f * &self.rhs[r];
            self.rhs[i] -= d;
        }
        self.basis[r] = c;
    }

    /// Minimises `cost` over columns marked `allowed`; `false` if unbounded.
    fn run(&mut self, cost: &[ExactScalar], allowed: &[bool]) -> bool {
        loop {
            let ncols = cost.len();
            let entering = (0..ncols).find(|&j| {
                if !allowed[j] || self.basis.contains(&j) {
                    return false;
                }
                let mut rc = cost[j].clone();
                for (i, &b) in self.basis.iter().enumerate() {
                    rc -= &cost[b] * &self.a[i][j];
                }
                rc.is_negative()
            });
            let Some(j) = entering else { return true };
            let mut leave: Option<(usize, ExactScalar)> = None;
            for i in 0..self.a.len() {
                if !self.a[i][j].is_positive() {
                    continue;
                }
                let ratio = &self.rhs[i] / &self.a[i][j];
                let better = match &leave {
                    None => true,
                    Some((li, lr)) => ratio < *lr || (ratio == *lr && self.basis[i] < self.basis[*li]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
            let Some((r, _)) = leave else { return false };
            self.pivot(r, j);
        }
    }
}

pub fn solve(lp: &Lp) -> LpOutcome {
    let m = lp.rows.len();
    let n = lp.nvars;
    let mut rows: Vec<(Vec<ExactScalar>, Rel, ExactScalar)> = lp.rows.clone();
    for (a, rel, b) in rows.iter_mut() {
        if b.is_negative() {
            a.iter_mut().for_each(|v| *v = -v.clone());
            *b = -b.clone();
            *rel = match rel {
                Rel::Le => Rel::Ge,
                Rel::Ge => Rel::Le,
                Rel::Eq => Rel::Eq,
            };
        }
    }
    let n_slack = rows.iter().filter(|r| r.1 != Rel::Eq).count();
    let n_art = rows.iter().filter(|r| r.1 != Rel::Le).count();
    let ncols = n + n_slack + n_art;
    let mut t = Tableau { a: vec![vec![ExactScalar::zero(); ncols]; m], rhs: vec![ExactScalar::zero(); m], basis: vec![0; m] };
    let (mut s, mut art) = (n, n + n_slack);
    for (i, (a, rel, b)) in rows.iter().enumerate() {
        t.a[i][..n].clone_from_slice(a);
        t.rhs[i] = b.clone();
        match rel {
            Rel::Le => {
                t.a[i][s] = int(1);
                t.basis[i] = s;
                s += 1;
            }
            Rel::Ge => {
                t.a[i][s] = int(-1);
                s += 1;
                t.a[i][art] = int(1);
                t.basis[i] = art;
                art += 1;
            }
            Rel::Eq => {
                t.a[i][art] = int(1);
                t.basis[i] = art;
                art += 1;
            }
        }
    }
    let is_art = |j: usize| j >= n + n_slack;
    if n_art > 0 {
        let cost: Vec<ExactScalar> = (0..ncols).map(|j| if is_art(j) { int(1) } else { ExactScalar::zero() }).collect();
        t.run(&cost, &vec![true; ncols]);
        let value: ExactScalar = t.basis.iter().zip(&t.rhs).filter(|(&b, _)| is_art(b)).map(|(_, v)| v.clone()).sum();
        if value.is_positive() {
            return LpOutcome::Infeasible;
        }
        for i in 0..m {
            if is_art(t.basis[i]) {
                if let Some(j) = (0..n + n_slack).find(|&j| !t.a[i][j].is_zero()) {
                    t.pivot(i, j);
                }
            }
        }
    }
    let mut cost = vec![ExactScalar::zero(); ncols];
    cost[..n].clone_from_slice(&lp.objective);
    let allowed: Vec<bool> = (0..ncols).map(|j| !is_art(j)).collect();
    if !t.run(&cost, &allowed) {
        return LpOutcome::Unbounded;
    }
    let mut x = vec![ExactScalar::zero(); n];
    for (i, &b) in t.basis.iter().enumerate() {
        if b < n {
            x[b] = t.rhs[i].clone();
        }
    }
    let value = x.iter().zip(&lp.objective).map(|(a, b)| a * b).sum();
    LpOutcome::Optimal { value, x }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::scalar::rat;

    #[test]
    fn small_program() {
        // min x + y s.t. x + 2y >= 2, 3x + y >= 3
        let lp = Lp {
            nvars: 2,
            objective: vec![int(1), int(1)],
            rows: vec![(vec![int(1), int(2)], Rel::Ge, int(2)), (vec![int(3), int(1)], Rel::Ge, int(3))],
        };
        match solve(&lp) {
            LpOutcome::Optimal { value, x } => {
                assert_eq!(value, rat(7, 5));
                assert_eq!(x, vec![rat(4, 5), rat(3, 5)]);
            }
            o => panic!("{o:?}"),
        }
    }

    #[test]
    fn infeasible_and_unbounded() {
        let lp = Lp { nvars: 1, objective: vec![int(1)], rows: vec![(vec![int(1)], Rel::Le, int(1)), (vec![int(1)], Rel::Ge, int(2))] };
        assert_eq!(solve(&lp), LpOutcome::Infeasible);
        let lp = Lp { nvars: 1, objective: vec![int(-1)], rows: vec![(vec![int(1)], Rel::Ge, int(1))] };
        assert_eq!(solve(&lp), LpOutcome::Unbounded);
    }
}
