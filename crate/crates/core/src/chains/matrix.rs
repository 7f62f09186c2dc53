use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

/// Dense row-major integer matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> IntMatrix {
        IntMatrix {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> IntMatrix {
        let mut m = IntMatrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    /// Panics if the rows have different lengths.
    pub fn from_rows<R: AsRef<[i64]>>(rows: &[R]) -> IntMatrix {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.as_ref().len(), cols, "ragged rows");
            data.extend_from_slice(r.as_ref());
        }
        IntMatrix {
            rows: rows.len(),
            cols,
            data,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> i64 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: i64) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[i64] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<i64> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = IntMatrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c));
            }
        }
        t
    }

    /// `None` on dimension mismatch or overflow.
    pub fn checked_mul(&self, other: &IntMatrix) -> Option<IntMatrix> {
        if self.cols != other.rows {
            return None;
        }
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a == 0 {
                    continue;
                }
                for c in 0..other.cols {
                    let v = out.get(r, c).checked_add(a.checked_mul(other.get(k, c))?)?;
                    out.set(r, c, v);
                }
            }
        }
        Some(out)
    }

    pub fn mul_vec(&self, v: &[i64]) -> Option<Vec<i64>> {
        if v.len() != self.cols {
            return None;
        }
        (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .try_fold(0i64, |acc, (&a, &b)| acc.checked_add(a.checked_mul(b)?))
            })
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    /// Rows `rows` and columns `cols`, in the given order.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> IntMatrix {
        let mut m = IntMatrix::zeros(rows.len(), cols.len());
        for (i, &r) in rows.iter().enumerate() {
            for (j, &c) in cols.iter().enumerate() {
                m.set(i, j, self.get(r, c));
            }
        }
        m
    }

    /// Determinant by fraction-free elimination; `None` if not square or on
    /// overflow.
    pub fn determinant(&self) -> Option<i64> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut a: Vec<i128> = self.data.iter().map(|&v| v as i128).collect();
        let mut sign = 1i128;
        let mut prev = 1i128;
        for k in 0..n {
            let Some(p) = (k..n).find(|&r| a[r * n + k] != 0) else {
                return Some(0);
            };
            if p != k {
                for c in 0..n {
                    a.swap(k * n + c, p * n + c);
                }
                sign = -sign;
            }
            for r in k + 1..n {
                for c in k + 1..n {
                    let v = a[r * n + c]
                        .checked_mul(a[k * n + k])?
                        .checked_sub(a[r * n + k].checked_mul(a[k * n + c])?)?;
                    a[r * n + c] = v / prev;
                }
                a[r * n + k] = 0;
            }
            prev = a[k * n + k];
        }
        let det = if n == 0 { 1 } else { sign * a[n * n - 1] };
        i64::try_from(det).ok()
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IntMatrix {}x{}", self.rows, self.cols)?;
        for r in 0..self.rows {
            writeln!(f, "  {:?}", self.row(r))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn products_and_transpose() {
        let a = IntMatrix::from_rows(&[[1, 2, 3], [4, 5, 6]]);
        let b = a.transpose();
        assert_eq!(b.rows(), 3);
        let p = a.checked_mul(&b).unwrap();
        assert_eq!(p, IntMatrix::from_rows(&[[14, 32], [32, 77]]));
        assert!(a.checked_mul(&a).is_none());
        assert_eq!(a.mul_vec(&[1, 0, -1]), Some(alloc::vec![-2, -2]));
    }

    #[test]
    fn determinants() {
        assert_eq!(IntMatrix::identity(4).determinant(), Some(1));
        assert_eq!(IntMatrix::from_rows(&[[0, 1], [1, 0]]).determinant(), Some(-1));
        assert_eq!(
            IntMatrix::from_rows(&[[2, 0, 1], [1, 3, 2], [1, 1, 2]]).determinant(),
            Some(6)
        );
        assert_eq!(IntMatrix::from_rows(&[[1, 2], [2, 4]]).determinant(), Some(0));
        assert_eq!(IntMatrix::zeros(0, 0).determinant(), Some(1));
    }
}
