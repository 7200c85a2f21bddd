//! Smith normal form over the integers with unimodular transforms.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::matrix::IntMatrix;

/// `u * m * v == d`, with `v_inv` the inverse of `v`.
#[derive(Clone, Debug)]
pub struct SnfResult {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
    pub v_inv: IntMatrix,
}

impl SnfResult {
    /// Diagonal entries `d_1 | d_2 | ...`, including trailing zeros up to `min(rows, cols)`.
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.d.rows().min(self.d.cols())).map(|i| self.d[(i, i)].clone()).collect()
    }

    pub fn rank(&self) -> usize {
        self.diagonal().iter().take_while(|x| !x.is_zero()).count()
    }

    /// Nonzero elementary divisors.
    pub fn divisors(&self) -> Vec<BigInt> {
        self.diagonal().into_iter().take_while(|x| !x.is_zero()).collect()
    }
}

type Rows = Vec<Vec<BigInt>>;

fn identity(n: usize) -> Rows {
    (0..n).map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect()).collect()
}

fn to_matrix(rows: Rows, cols: usize) -> IntMatrix {
    IntMatrix::from_rows(rows, cols).expect("rectangular")
}

/// row[dst] -= q * row[src]
fn row_axpy(m: &mut Rows, dst: usize, src: usize, q: &BigInt) {
    let (a, b) = if dst < src {
        let (lo, hi) = m.split_at_mut(src);
        (&mut lo[dst], &hi[0])
    } else {
        let (lo, hi) = m.split_at_mut(dst);
        (&mut hi[0], &lo[src])
    };
    for (x, y) in a.iter_mut().zip(b.iter()) {
        if !y.is_zero() {
            *x -= q * y;
        }
    }
}

/// col[dst] -= q * col[src]
fn col_axpy(m: &mut Rows, dst: usize, src: usize, q: &BigInt) {
    for row in m.iter_mut() {
        if !row[src].is_zero() {
            let t = q * &row[src];
            row[dst] -= t;
        }
    }
}

fn swap_cols(m: &mut Rows, a: usize, b: usize) {
    for row in m.iter_mut() {
        row.swap(a, b);
    }
}

pub fn smith_normal_form(m: &IntMatrix) -> SnfResult {
    let (r, c) = (m.rows(), m.cols());
    let mut a: Rows = m.to_rows();
    let mut u = identity(r);
    let mut v = identity(c);
    let mut vi = identity(c);

    for t in 0..r.min(c) {
        // smallest nonzero entry in the trailing block
        let mut best: Option<(usize, usize)> = None;
        for i in t..r {
            for j in t..c {
                if !a[i][j].is_zero() && best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        a.swap(t, pi);
        u.swap(t, pi);
        swap_cols(&mut a, t, pj);
        swap_cols(&mut v, t, pj);
        vi.swap(t, pj);

        loop {
            let mut clean = true;
            for i in t + 1..r {
                if a[i][t].is_zero() {
                    continue;
                }
                let q = a[i][t].div_floor(&a[t][t]);
                row_axpy(&mut a, i, t, &q);
                row_axpy(&mut u, i, t, &q);
                clean &= a[i][t].is_zero();
            }
            for j in t + 1..c {
                if a[t][j].is_zero() {
                    continue;
                }
                let q = a[t][j].div_floor(&a[t][t]);
                col_axpy(&mut a, j, t, &q);
                col_axpy(&mut v, j, t, &q);
                // inverse transform: row_t(vi) += q * row_j(vi)
                let neg = -q;
                row_axpy(&mut vi, t, j, &neg);
                clean &= a[t][j].is_zero();
            }
            if !clean {
                // move the smallest remainder in row/column t to the pivot
                let mut best = (t, t);
                for i in t + 1..r {
                    if !a[i][t].is_zero() && a[i][t].abs() < a[best.0][best.1].abs() {
                        best = (i, t);
                    }
                }
                for j in t + 1..c {
                    if !a[t][j].is_zero() && a[t][j].abs() < a[best.0][best.1].abs() {
                        best = (t, j);
                    }
                }
                if best.0 != t {
                    a.swap(t, best.0);
                    u.swap(t, best.0);
                } else if best.1 != t {
                    swap_cols(&mut a, t, best.1);
                    swap_cols(&mut v, t, best.1);
                    vi.swap(t, best.1);
                }
                continue;
            }
            // divisibility: the pivot must divide the whole trailing block
            let bad = (t + 1..r).find(|&i| (t + 1..c).any(|j| !a[i][j].is_multiple_of(&a[t][t])));
            match bad {
                Some(i) => {
                    let minus_one = -BigInt::one();
                    row_axpy(&mut a, t, i, &minus_one);
                    row_axpy(&mut u, t, i, &minus_one);
                }
                None => break,
            }
        }
        if a[t][t].is_negative() {
            for x in a[t].iter_mut() {
                *x = -&*x;
            }
            for x in u[t].iter_mut() {
                *x = -&*x;
            }
        }
    }

    SnfResult { u: to_matrix(u, r), d: to_matrix(a, c), v: to_matrix(v, c), v_inv: to_matrix(vi, c) }
}
