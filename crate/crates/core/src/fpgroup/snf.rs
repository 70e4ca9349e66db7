use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

/// Dense integer matrix with exact entries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    /// Builds a matrix from row vectors. All rows must have equal length.
    pub fn from_rows<T: Into<BigInt> + Clone>(rows: &[Vec<T>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged matrix rows");
        IntMatrix {
            rows: rows.len(),
            cols,
            data: rows
                .iter()
                .flat_map(|r| r.iter().cloned().map(Into::into))
                .collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &BigInt {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: BigInt) {
        self.data[r * self.cols + c] = v;
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for r in 0..self.rows {
            self.data.swap(r * self.cols + a, r * self.cols + b);
        }
    }

    /// row[dst] -= q * row[src]
    fn sub_row(&mut self, dst: usize, src: usize, q: &BigInt) {
        for c in 0..self.cols {
            let v = self.get(src, c) * q;
            self.data[dst * self.cols + c] -= v;
        }
    }

    /// col[dst] -= q * col[src]
    fn sub_col(&mut self, dst: usize, src: usize, q: &BigInt) {
        for r in 0..self.rows {
            let v = self.get(r, src) * q;
            self.data[r * self.cols + dst] -= v;
        }
    }
}

/// Invariant factors `d1 | d2 | ... | dr` of `m`, where `r` is its rank.
///
/// Unit factors are kept; every returned entry is positive.
pub fn smith_normal_form(m: &IntMatrix) -> Vec<BigInt> {
    let mut a = m.clone();
    let mut factors = Vec::new();
    let n = a.rows.min(a.cols);

    for t in 0..n {
        let Some((pr, pc)) = min_nonzero(&a, t..a.rows, t..a.cols) else {
            break;
        };
        a.swap_rows(t, pr);
        a.swap_cols(t, pc);

        loop {
            let pivot = a.get(t, t).clone();
            let mut clean = true;
            for r in t + 1..a.rows {
                if !a.get(r, t).is_zero() {
                    let q = a.get(r, t).div_floor(&pivot);
                    a.sub_row(r, t, &q);
                    clean &= a.get(r, t).is_zero();
                }
            }
            for c in t + 1..a.cols {
                if !a.get(t, c).is_zero() {
                    let q = a.get(t, c).div_floor(&pivot);
                    a.sub_col(c, t, &q);
                    clean &= a.get(t, c).is_zero();
                }
            }
            if !clean {
                // a remainder smaller than the pivot is left in row or column t
                let (r, c) = min_nonzero_cross(&a, t);
                a.swap_rows(t, r);
                a.swap_cols(t, c);
                continue;
            }
            // the pivot must divide the remaining block
            let offender = (t + 1..a.rows)
                .flat_map(|r| (t + 1..a.cols).map(move |c| (r, c)))
                .find(|&(r, c)| !a.get(r, c).is_multiple_of(&pivot));
            match offender {
                Some((r, _)) => {
                    let minus_one = BigInt::from(-1);
                    a.sub_row(t, r, &minus_one);
                }
                None => break,
            }
        }
        factors.push(a.get(t, t).abs());
    }
    factors
}

fn min_nonzero(
    a: &IntMatrix,
    rows: std::ops::Range<usize>,
    cols: std::ops::Range<usize>,
) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for r in rows {
        for c in cols.clone() {
            let v = a.get(r, c);
            if v.is_zero() {
                continue;
            }
            if best.is_none_or(|(br, bc)| v.abs() < a.get(br, bc).abs()) {
                best = Some((r, c));
            }
        }
    }
    best
}

/// Smallest nonzero entry in row `t` or column `t` (from the diagonal on).
fn min_nonzero_cross(a: &IntMatrix, t: usize) -> (usize, usize) {
    let row = min_nonzero(a, t..t + 1, t..a.cols);
    let col = min_nonzero(a, t..a.rows, t..t + 1);
    match (row, col) {
        (Some(x), Some(y)) => {
            if a.get(x.0, x.1).abs() <= a.get(y.0, y.1).abs() {
                x
            } else {
                y
            }
        }
        (Some(x), None) | (None, Some(x)) => x,
        (None, None) => (t, t),
    }
}
