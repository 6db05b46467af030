//! Smith normal form over `i64` with checked arithmetic.
//!
//! `U · A · V = D` with `U`, `V` unimodular and `D` diagonal, the nonzero
//! diagonal entries positive and each dividing the next. `U⁻¹` is tracked
//! alongside `U` so presentations can map both ways.

use crate::{Error, Result};

pub(crate) type Mat = Vec<Vec<i64>>;

pub(crate) fn identity(n: usize) -> Mat {
    (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect()
}

fn mul(a: i64, b: i64) -> Result<i64> {
    a.checked_mul(b).ok_or(Error::Overflow)
}

fn sub(a: i64, b: i64) -> Result<i64> {
    a.checked_sub(b).ok_or(Error::Overflow)
}

fn add(a: i64, b: i64) -> Result<i64> {
    a.checked_add(b).ok_or(Error::Overflow)
}

pub(crate) struct Snf {
    pub d: Mat,
    pub u: Mat,
    pub u_inv: Mat,
    pub v: Mat,
    /// Number of nonzero diagonal entries.
    pub rank: usize,
}

struct Work {
    a: Mat,
    u: Mat,
    u_inv: Mat,
    v: Mat,
    m: usize,
    n: usize,
}

impl Work {
    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        self.a.swap(i, j);
        self.u.swap(i, j);
        for row in &mut self.u_inv {
            row.swap(i, j);
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for row in &mut self.a {
            row.swap(i, j);
        }
        for row in &mut self.v {
            row.swap(i, j);
        }
    }

    /// `row_i -= q · row_t`.
    fn row_axpy(&mut self, i: usize, t: usize, q: i64) -> Result<()> {
        if q == 0 {
            return Ok(());
        }
        for c in 0..self.n {
            self.a[i][c] = sub(self.a[i][c], mul(q, self.a[t][c])?)?;
        }
        for c in 0..self.m {
            self.u[i][c] = sub(self.u[i][c], mul(q, self.u[t][c])?)?;
        }
        for r in 0..self.m {
            self.u_inv[r][t] = add(self.u_inv[r][t], mul(q, self.u_inv[r][i])?)?;
        }
        Ok(())
    }

    /// `col_j -= q · col_t`.
    fn col_axpy(&mut self, j: usize, t: usize, q: i64) -> Result<()> {
        if q == 0 {
            return Ok(());
        }
        for r in 0..self.m {
            self.a[r][j] = sub(self.a[r][j], mul(q, self.a[r][t])?)?;
        }
        for r in 0..self.n {
            self.v[r][j] = sub(self.v[r][j], mul(q, self.v[r][t])?)?;
        }
        Ok(())
    }

    fn negate_row(&mut self, i: usize) -> Result<()> {
        for c in 0..self.n {
            self.a[i][c] = self.a[i][c].checked_neg().ok_or(Error::Overflow)?;
        }
        for c in 0..self.m {
            self.u[i][c] = self.u[i][c].checked_neg().ok_or(Error::Overflow)?;
        }
        for r in 0..self.m {
            self.u_inv[r][i] = self.u_inv[r][i].checked_neg().ok_or(Error::Overflow)?;
        }
        Ok(())
    }

    /// Position of the smallest nonzero magnitude in the trailing block.
    fn min_pivot(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize, u64)> = None;
        for i in t..self.m {
            for j in t..self.n {
                let v = self.a[i][j].unsigned_abs();
                if v != 0 && best.map_or(true, |(_, _, b)| v < b) {
                    best = Some((i, j, v));
                }
            }
        }
        best.map(|(i, j, _)| (i, j))
    }
}

/// Smith normal form of an `m × n` matrix given as `m` rows of length `n`.
pub(crate) fn smith(a: &Mat, n: usize) -> Result<Snf> {
    let m = a.len();
    let mut w = Work { a: a.clone(), u: identity(m), u_inv: identity(m), v: identity(n), m, n };
    let mut t = 0;
    while t < m.min(n) {
        let Some((pi, pj)) = w.min_pivot(t) else { break };
        w.swap_rows(t, pi);
        w.swap_cols(t, pj);
        loop {
            let p = w.a[t][t];
            let mut dirty = false;
            for i in t + 1..m {
                let q = w.a[i][t].div_euclid(p);
                w.row_axpy(i, t, q)?;
                if w.a[i][t] != 0 {
                    dirty = true;
                }
            }
            for j in t + 1..n {
                let q = w.a[t][j].div_euclid(p);
                w.col_axpy(j, t, q)?;
                if w.a[t][j] != 0 {
                    dirty = true;
                }
            }
            if dirty {
                // A remainder is smaller than the pivot; move it into place.
                let (pi, pj) = w.min_pivot_in_cross(t);
                w.swap_rows(t, pi);
                w.swap_cols(t, pj);
                continue;
            }
            let p = w.a[t][t];
            let bad = (t + 1..m).find(|&i| (t + 1..n).any(|j| w.a[i][j] % p != 0));
            match bad {
                Some(i) => {
                    // Fold the offending row into the pivot row and reduce again.
                    w.row_axpy(t, i, -1)?;
                }
                None => break,
            }
        }
        if w.a[t][t] < 0 {
            w.negate_row(t)?;
        }
        t += 1;
    }
    let rank = t;
    Ok(Snf { d: w.a, u: w.u, u_inv: w.u_inv, v: w.v, rank })
}

impl Work {
    /// Smallest nonzero entry in row `t` or column `t` of the trailing block.
    fn min_pivot_in_cross(&self, t: usize) -> (usize, usize) {
        let mut best = (t, t, self.a[t][t].unsigned_abs());
        for i in t + 1..self.m {
            let v = self.a[i][t].unsigned_abs();
            if v != 0 && v < best.2 {
                best = (i, t, v);
            }
        }
        for j in t + 1..self.n {
            let v = self.a[t][j].unsigned_abs();
            if v != 0 && v < best.2 {
                best = (t, j, v);
            }
        }
        (best.0, best.1)
    }
}

/// A basis of the integer kernel `{x ∈ Zⁿ : A x = 0}`.
pub(crate) fn integer_kernel(a: &Mat, n: usize) -> Result<Vec<Vec<i64>>> {
    if a.is_empty() {
        return Ok(identity(n));
    }
    let s = smith(a, n)?;
    Ok((s.rank..n).map(|j| (0..n).map(|r| s.v[r][j]).collect()).collect())
}

/// One integer solution of `A x = b`, if any.
pub(crate) fn solve(a: &Mat, n: usize, b: &[i64]) -> Result<Option<Vec<i64>>> {
    if a.is_empty() {
        return Ok(Some(vec![0; n]));
    }
    let s = smith(a, n)?;
    let ub = mat_vec(&s.u, b)?;
    let mut y = vec![0i64; n];
    for (i, &v) in ub.iter().enumerate() {
        if i < s.rank {
            let d = s.d[i][i];
            if v % d != 0 {
                return Ok(None);
            }
            y[i] = v / d;
        } else if v != 0 {
            return Ok(None);
        }
    }
    Ok(Some(mat_vec(&s.v, &y)?))
}

pub(crate) fn mat_vec(a: &Mat, x: &[i64]) -> Result<Vec<i64>> {
    a.iter()
        .map(|row| row.iter().zip(x).try_fold(0i64, |acc, (&r, &v)| add(acc, mul(r, v)?)))
        .collect()
}
