//! Linear systems over the DVR `A`, and bounded module-membership search in `C`.
//!
//! `solve_linear` diagonalizes with row and column operations, always pivoting
//! on an entry of least valuation in the remaining block. Over a DVR this
//! yields `P M Q = diag(t^{v_1} u_1, ...)`, so solvability over `A` (not just
//! over `Frac A`) is decided exactly.

use std::fmt;

use crate::base_ring::{AElem, BaseRing, Valuation};
use crate::error::{Error, Result};
use crate::ring_b::BElem;
use crate::ring_c::{CElem, Certificate, RingC};

/// A dense matrix over `A` with labelled rows and columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AMatrix {
    base: BaseRing,
    rows: usize,
    cols: usize,
    entries: Vec<AElem>,
    pub row_labels: Vec<String>,
    pub col_labels: Vec<String>,
}

impl AMatrix {
    pub fn zeros(base: BaseRing, rows: usize, cols: usize) -> Self {
        AMatrix {
            base,
            rows,
            cols,
            entries: vec![base.zero(); rows * cols],
            row_labels: (0..rows).map(|i| format!("r{i}")).collect(),
            col_labels: (0..cols).map(|j| format!("c{j}")).collect(),
        }
    }

    pub fn from_rows(base: BaseRing, rows: Vec<Vec<AElem>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        let mut m = AMatrix::zeros(base, rows.len(), cols);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != cols {
                return Err(Error::DimensionMismatch { expected: cols, found: row.len() });
            }
            for (j, e) in row.into_iter().enumerate() {
                m.set(i, j, e);
            }
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &AElem {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: AElem) {
        self.entries[i * self.cols + j] = value;
    }

    pub fn mul_vec(&self, x: &[AElem]) -> Result<Vec<AElem>> {
        if x.len() != self.cols {
            return Err(Error::DimensionMismatch { expected: self.cols, found: x.len() });
        }
        Ok((0..self.rows)
            .map(|i| (0..self.cols).fold(self.base.zero(), |acc, j| &acc + &(self.get(i, j) * &x[j])))
            .collect())
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.entries.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.entries.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }
}

impl fmt::Display for AMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "{}: [{}]", self.row_labels[i], row.join(", "))?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LinearSolution {
    Solution(Vec<AElem>),
    /// No solution with entries in `A`.
    NoSolution,
}

/// Solve `M h = target` over `A`.
pub fn solve_linear(m: &AMatrix, target: &[AElem]) -> Result<LinearSolution> {
    if target.len() != m.rows {
        return Err(Error::DimensionMismatch { expected: m.rows, found: target.len() });
    }
    let base = m.base;
    let mut work = m.clone();
    let mut rhs = target.to_vec();
    // Columns of q record the column operations: h = q h'.
    let mut q = AMatrix::zeros(base, m.cols, m.cols);
    for j in 0..m.cols {
        q.set(j, j, base.one());
    }
    let mut pivots = Vec::new();
    for k in 0..m.rows.min(m.cols) {
        let mut best: Option<(usize, usize, u32)> = None;
        for i in k..m.rows {
            for j in k..m.cols {
                if let Valuation::Finite(v) = work.get(i, j).valuation() {
                    if best.is_none_or(|(_, _, bv)| v < bv) {
                        best = Some((i, j, v));
                    }
                }
            }
        }
        let Some((pi, pj, _)) = best else { break };
        work.swap_rows(k, pi);
        rhs.swap(k, pi);
        work.swap_cols(k, pj);
        q.swap_cols(k, pj);
        let pivot = work.get(k, k).clone();
        for i in k + 1..m.rows {
            let e = work.get(i, k).clone();
            if e.is_zero() {
                continue;
            }
            let factor = e.checked_div(&pivot)?;
            for j in k..m.cols {
                let v = work.get(i, j) - &(&factor * work.get(k, j));
                work.set(i, j, v);
            }
            rhs[i] = &rhs[i] - &(&factor * &rhs[k]);
        }
        for j in k + 1..m.cols {
            let e = work.get(k, j).clone();
            if e.is_zero() {
                continue;
            }
            let factor = e.checked_div(&pivot)?;
            for i in k..m.rows {
                let v = work.get(i, j) - &(&factor * work.get(i, k));
                work.set(i, j, v);
            }
            for i in 0..m.cols {
                let v = q.get(i, j) - &(&factor * q.get(i, k));
                q.set(i, j, v);
            }
        }
        pivots.push(pivot);
    }
    let rank = pivots.len();
    if rhs[rank..].iter().any(|r| !r.is_zero()) {
        return Ok(LinearSolution::NoSolution);
    }
    let mut h_prime = vec![base.zero(); m.cols];
    for (k, p) in pivots.iter().enumerate() {
        match rhs[k].checked_div(p) {
            Ok(x) => h_prime[k] = x,
            Err(_) => return Ok(LinearSolution::NoSolution),
        }
    }
    let h = q.mul_vec(&h_prime)?;
    if m.mul_vec(&h)? != target {
        return Err(Error::Internal("elimination produced a non-solution".into()));
    }
    Ok(LinearSolution::Solution(h))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ModuleSearch {
    Found(Certificate),
    /// No combination with multipliers of `u`-degree at most `degree` exists;
    /// larger multipliers were not tried.
    NotFoundWithinBounds { degree: u32 },
}

/// Look for `target = sum_j m_j g_j` with `m_j` in the level-`level` part of
/// `C` of `u`-degree at most `degree_bound + slack`.
///
/// The unknowns are the `A`-coefficients of `g_j y^b` and `g_j w y^b`; the
/// equations compare coefficients of powers of `u = z_s - a_s`.
pub fn module_membership(
    rc: &RingC<'_>,
    target: &BElem,
    generators: &[CElem],
    level: usize,
    degree_bound: u32,
    slack: u32,
) -> Result<ModuleSearch> {
    let cons = rc.construction();
    cons.check_level(level)?;
    let top = cons.top_level();
    if target.level() > level {
        return Err(Error::LevelOutOfRange { level: target.level(), top });
    }
    let base = cons.base();
    let degree = degree_bound + slack;
    let words: Vec<CElem> = (0..=degree)
        .map(|k| {
            let w = if k % 2 == 0 { rc.pow(&rc.y(level)?, k / 2) } else { rc.mul(&rc.w(level)?, &rc.pow(&rc.y(level)?, k / 2)) };
            rc.coerce_c_to(&w, level)
        })
        .collect::<Result<_>>()?;
    let mut columns = Vec::new();
    let mut labels = Vec::new();
    for (j, g) in generators.iter().enumerate() {
        if g.level() > level {
            return Err(Error::LevelOutOfRange { level: g.level(), top });
        }
        let g = rc.coerce_c_to(g, level)?;
        for (k, w) in words.iter().enumerate() {
            columns.push(rc.to_u_poly(&rc.coerce_c_to(&rc.mul(&g, w), level)?));
            labels.push(format!("g{j}*{}", word_name(k as u32, level)));
        }
    }
    let target_u = match rc.from_b_at_level(target, level)? {
        Ok(c) => rc.to_u_poly(&c),
        Err(_) => return Ok(ModuleSearch::NotFoundWithinBounds { degree }),
    };
    let rows = columns.iter().map(Vec::len).chain([target_u.len()]).max().unwrap_or(0);
    let mut m = AMatrix::zeros(base, rows, columns.len());
    for (j, col) in columns.iter().enumerate() {
        for (i, e) in col.iter().enumerate() {
            m.set(i, j, e.clone());
        }
    }
    m.col_labels = labels;
    m.row_labels = (0..rows).map(|i| format!("u^{i}")).collect();
    let mut rhs = target_u;
    rhs.resize(rows, base.zero());
    let h = match solve_linear(&m, &rhs)? {
        LinearSolution::Solution(h) => h,
        LinearSolution::NoSolution => return Ok(ModuleSearch::NotFoundWithinBounds { degree }),
    };
    let per = words.len();
    let terms = generators
        .iter()
        .enumerate()
        .map(|(j, g)| {
            let mult = words
                .iter()
                .zip(&h[j * per..(j + 1) * per])
                .fold(rc.zero(), |acc, (w, c)| rc.add(&acc, &rc.scale(w, c)));
            (mult, g.clone())
        })
        .filter(|(mult, _)| !mult.is_zero())
        .collect();
    let cert = Certificate { target: target.clone(), terms };
    if !cert.verify(rc) {
        return Err(Error::Internal("module certificate does not recompose".into()));
    }
    Ok(ModuleSearch::Found(cert))
}

fn word_name(k: u32, level: usize) -> String {
    match (k % 2, k / 2) {
        (0, 0) => "1".into(),
        (0, b) => format!("y{level}^{b}"),
        (_, 0) => format!("w{level}"),
        (_, b) => format!("w{level}*y{level}^{b}"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::base_ring::ResidueField;
    use crate::construction::Construction;

    const Q: BaseRing = BaseRing::Localized(ResidueField::Rationals);

    fn mat(rows: Vec<Vec<AElem>>) -> AMatrix {
        AMatrix::from_rows(Q, rows).unwrap()
    }

    #[test]
    fn small_systems() {
        let m = mat(vec![vec![Q.t_pow(2), Q.t_pow(3)]]);
        assert_eq!(
            solve_linear(&m, &[Q.t_pow(4)]).unwrap(),
            LinearSolution::Solution(vec![Q.t_pow(2), Q.zero()])
        );
        let m = mat(vec![vec![Q.t_pow(2)]]);
        assert_eq!(solve_linear(&m, &[Q.t()]).unwrap(), LinearSolution::NoSolution);
        let m = mat(vec![vec![Q.one(), Q.t()], vec![Q.zero(), Q.t_pow(2)]]);
        let rhs = [Q.one(), Q.t_pow(2)];
        // back substitution: h1 = 1, h0 = 1 - t
        assert_eq!(
            solve_linear(&m, &rhs).unwrap(),
            LinearSolution::Solution(vec![Q.from_coeffs(&[1, -1]), Q.one()])
        );
        assert!(matches!(solve_linear(&m, &[Q.one()]), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn inconsistent_over_fraction_field() {
        let m = mat(vec![vec![Q.one()], vec![Q.one()]]);
        assert_eq!(solve_linear(&m, &[Q.one(), Q.t()]).unwrap(), LinearSolution::NoSolution);
    }

    #[test]
    fn membership_examples() {
        let c = Construction::minimal_ones(Q, 5).unwrap();
        let rc = RingC::new(&c);
        let t2 = rc.constant(Q.t_pow(2));
        let w0 = rc.w(0).unwrap();
        let tw0 = rc.mul_t_pow(&w0, 1);
        let target = rc.to_b(&rc.mul(&t2, &rc.y(0).unwrap()));
        let ModuleSearch::Found(cert) = module_membership(&rc, &target, &[t2.clone(), tw0.clone()], 0, 2, 2).unwrap()
        else {
            panic!("t^2 y_0 is in (t^2, t w_0)")
        };
        assert!(cert.verify(&rc));

        let t = rc.constant(Q.t());
        for d in 0..4 {
            assert_eq!(
                module_membership(&rc, &rc.to_b(&w0), std::slice::from_ref(&t), 0, d, 2).unwrap(),
                ModuleSearch::NotFoundWithinBounds { degree: d + 2 }
            );
        }
        let sq = rc.to_b(&rc.mul(&w0, &w0));
        assert!(matches!(module_membership(&rc, &sq, &[tw0, t2], 0, 2, 2).unwrap(), ModuleSearch::Found(_)));
    }
}
