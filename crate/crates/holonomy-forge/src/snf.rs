//! Smith normal form of integer matrices.
//!
//! `smith(a)` produces unimodular `u`, `v` with `u * a * v = d` diagonal,
//! nonnegative entries, and each diagonal entry dividing the next. The
//! inverses of `u` and `v` are tracked alongside so callers can move between
//! the original and the diagonalized coordinates without re-inverting.

use crate::mat::IMat;

#[derive(Clone, Debug)]
pub struct Snf {
    pub u: IMat,
    pub u_inv: IMat,
    pub d: IMat,
    pub v: IMat,
    pub v_inv: IMat,
}

impl Snf {
    /// Number of nonzero diagonal entries.
    pub fn rank(&self) -> usize {
        let n = self.d.nrows().min(self.d.ncols());
        (0..n).filter(|&i| self.d[(i, i)] != 0).count()
    }

    /// The nonzero diagonal entries, in order.
    pub fn elementary_divisors(&self) -> Vec<i64> {
        let n = self.d.nrows().min(self.d.ncols());
        (0..n).map(|i| self.d[(i, i)]).filter(|&x| x != 0).collect()
    }
}

struct Work {
    b: IMat,
    u: IMat,
    u_inv: IMat,
    v: IMat,
    v_inv: IMat,
}

impl Work {
    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for c in 0..self.b.ncols() {
            let t = self.b[(i, c)];
            self.b[(i, c)] = self.b[(j, c)];
            self.b[(j, c)] = t;
        }
        for c in 0..self.u.ncols() {
            let t = self.u[(i, c)];
            self.u[(i, c)] = self.u[(j, c)];
            self.u[(j, c)] = t;
        }
        // Inverse of a swap is the same swap, applied on the other side.
        for r in 0..self.u_inv.nrows() {
            let t = self.u_inv[(r, i)];
            self.u_inv[(r, i)] = self.u_inv[(r, j)];
            self.u_inv[(r, j)] = t;
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for r in 0..self.b.nrows() {
            let t = self.b[(r, i)];
            self.b[(r, i)] = self.b[(r, j)];
            self.b[(r, j)] = t;
        }
        for r in 0..self.v.nrows() {
            let t = self.v[(r, i)];
            self.v[(r, i)] = self.v[(r, j)];
            self.v[(r, j)] = t;
        }
        for c in 0..self.v_inv.ncols() {
            let t = self.v_inv[(i, c)];
            self.v_inv[(i, c)] = self.v_inv[(j, c)];
            self.v_inv[(j, c)] = t;
        }
    }

    /// row_i += q * row_j
    fn add_row(&mut self, i: usize, j: usize, q: i64) {
        if q == 0 {
            return;
        }
        for c in 0..self.b.ncols() {
            self.b[(i, c)] += q * self.b[(j, c)];
        }
        for c in 0..self.u.ncols() {
            self.u[(i, c)] += q * self.u[(j, c)];
        }
        // (E_{i,j}(q))^{-1} = E_{i,j}(-q), post-multiplied onto u_inv:
        // col_j -= q * col_i.
        for r in 0..self.u_inv.nrows() {
            self.u_inv[(r, j)] -= q * self.u_inv[(r, i)];
        }
    }

    /// col_i += q * col_j
    fn add_col(&mut self, i: usize, j: usize, q: i64) {
        if q == 0 {
            return;
        }
        for r in 0..self.b.nrows() {
            self.b[(r, i)] += q * self.b[(r, j)];
        }
        for r in 0..self.v.nrows() {
            self.v[(r, i)] += q * self.v[(r, j)];
        }
        for c in 0..self.v_inv.ncols() {
            self.v_inv[(j, c)] -= q * self.v_inv[(i, c)];
        }
    }

    fn negate_row(&mut self, i: usize) {
        for c in 0..self.b.ncols() {
            self.b[(i, c)] = -self.b[(i, c)];
        }
        for c in 0..self.u.ncols() {
            self.u[(i, c)] = -self.u[(i, c)];
        }
        for r in 0..self.u_inv.nrows() {
            self.u_inv[(r, i)] = -self.u_inv[(r, i)];
        }
    }
}

pub fn smith(a: &IMat) -> Snf {
    let (rows, cols) = (a.nrows(), a.ncols());
    let mut w = Work {
        b: a.clone(),
        u: IMat::identity(rows),
        u_inv: IMat::identity(rows),
        v: IMat::identity(cols),
        v_inv: IMat::identity(cols),
    };
    let steps = rows.min(cols);
    for k in 0..steps {
        loop {
            // Smallest nonzero entry of the trailing submatrix moves to (k, k).
            let mut pivot: Option<(usize, usize)> = None;
            for i in k..rows {
                for j in k..cols {
                    let x = w.b[(i, j)].abs();
                    if x != 0 && pivot.is_none_or(|p| x < w.b[p].abs()) {
                        pivot = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = pivot else {
                return finish(w, k);
            };
            w.swap_rows(k, pi);
            w.swap_cols(k, pj);
            if w.b[(k, k)] < 0 {
                w.negate_row(k);
            }
            let d = w.b[(k, k)];
            let mut dirty = false;
            for i in k + 1..rows {
                let q = w.b[(i, k)].div_euclid(d);
                w.add_row(i, k, -q);
                if w.b[(i, k)] != 0 {
                    dirty = true;
                }
            }
            for j in k + 1..cols {
                let q = w.b[(k, j)].div_euclid(d);
                w.add_col(j, k, -q);
                if w.b[(k, j)] != 0 {
                    dirty = true;
                }
            }
            if dirty {
                continue;
            }
            // Divisibility: fold any entry the pivot misses back into row k.
            let mut offender = None;
            'scan: for i in k + 1..rows {
                for j in k + 1..cols {
                    if w.b[(i, j)] % d != 0 {
                        offender = Some(i);
                        break 'scan;
                    }
                }
            }
            match offender {
                Some(i) => w.add_row(k, i, 1),
                None => break,
            }
        }
    }
    finish(w, steps)
}

fn finish(w: Work, _k: usize) -> Snf {
    debug_assert!({
        let prod = w.u.mul(&w.u_inv);
        prod.is_identity()
    });
    debug_assert!({
        let prod = w.v.mul(&w.v_inv);
        prod.is_identity()
    });
    Snf { u: w.u, u_inv: w.u_inv, d: w.b, v: w.v, v_inv: w.v_inv }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check(a: &IMat) {
        let s = smith(a);
        assert_eq!(s.u.mul(a).mul(&s.v), s.d, "u*a*v != d");
        assert!(s.u.mul(&s.u_inv).is_identity());
        assert!(s.v.mul(&s.v_inv).is_identity());
        let n = s.d.nrows().min(s.d.ncols());
        for i in 0..s.d.nrows() {
            for j in 0..s.d.ncols() {
                if i != j {
                    assert_eq!(s.d[(i, j)], 0, "off-diagonal entry");
                }
            }
        }
        let diag: Vec<i64> = (0..n).map(|i| s.d[(i, i)]).collect();
        for w in diag.windows(2) {
            assert!(w[0] >= 0 && w[1] >= 0);
            if w[1] != 0 {
                assert!(w[0] != 0, "zero before nonzero on diagonal");
                assert_eq!(w[1] % w[0], 0, "divisibility chain broken");
            }
        }
    }

    #[test]
    fn known_form() {
        let a = IMat::from_rows(&[
            vec![-6, 111, -36, 6],
            vec![5, -672, 210, 74],
            vec![0, -255, 81, 24],
            vec![-7, 255, -81, -10],
        ]);
        let s = smith(&a);
        assert_eq!(s.d, IMat::diag(&[1, 3, 21, 0]));
        check(&a);
    }

    #[test]
    fn zero_and_identity() {
        check(&IMat::zeros(3, 3));
        let s = smith(&IMat::identity(4));
        assert_eq!(s.d, IMat::identity(4));
    }

    #[test]
    fn involution_blocks() {
        // A - I for a sign-flip involution on four coordinates.
        let a = IMat::diag(&[0, 0, 0, -2, -2, -2, -2]);
        let s = smith(&a);
        assert_eq!(s.elementary_divisors(), vec![2, 2, 2, 2]);
        assert_eq!(s.rank(), 4);
        check(&a);
    }

    #[test]
    fn random_small_matrices() {
        let mut state = 0x9e3779b97f4a7c15u64;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            state
        };
        for _ in 0..200 {
            let rows = 1 + (next() % 5) as usize;
            let cols = 1 + (next() % 5) as usize;
            let mut m = IMat::zeros(rows, cols);
            for i in 0..rows {
                for j in 0..cols {
                    m[(i, j)] = (next() % 11) as i64 - 5;
                }
            }
            check(&m);
        }
    }
}
