//! Smith normal form over the integers.
//!
//! Elimination runs in `i64` with checked arithmetic and restarts in
//! `BigInt` when an intermediate value overflows.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt::Debug;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::IntMatrix;
use crate::error::Error;

/// Ring operations the elimination needs; `None` signals overflow.
pub(crate) trait Scalar: Clone + Debug + PartialEq {
    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(v: i64) -> Self;
    fn is_zero(&self) -> bool;
    fn is_negative(&self) -> bool;
    fn magnitude_lt(&self, other: &Self) -> bool;
    fn sub_mul(&self, q: &Self, b: &Self) -> Option<Self>;
    fn neg(&self) -> Option<Self>;
    fn quotient(&self, d: &Self) -> Option<Self>;
    fn divides(&self, other: &Self) -> bool;
    fn to_bigint(&self) -> BigInt;
}

impl Scalar for i64 {
    fn zero() -> i64 {
        0
    }
    fn one() -> i64 {
        1
    }
    fn from_i64(v: i64) -> i64 {
        v
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn is_negative(&self) -> bool {
        *self < 0
    }
    fn magnitude_lt(&self, other: &i64) -> bool {
        self.unsigned_abs() < other.unsigned_abs()
    }
    fn sub_mul(&self, q: &i64, b: &i64) -> Option<i64> {
        self.checked_sub(q.checked_mul(*b)?)
    }
    fn neg(&self) -> Option<i64> {
        self.checked_neg()
    }
    fn quotient(&self, d: &i64) -> Option<i64> {
        self.checked_div_euclid(*d)
    }
    fn divides(&self, other: &i64) -> bool {
        other.checked_rem(*self).is_some_and(|r| r == 0)
    }
    fn to_bigint(&self) -> BigInt {
        BigInt::from(*self)
    }
}

impl Scalar for BigInt {
    fn zero() -> BigInt {
        Zero::zero()
    }
    fn one() -> BigInt {
        One::one()
    }
    fn from_i64(v: i64) -> BigInt {
        BigInt::from(v)
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }
    fn magnitude_lt(&self, other: &BigInt) -> bool {
        self.magnitude() < other.magnitude()
    }
    fn sub_mul(&self, q: &BigInt, b: &BigInt) -> Option<BigInt> {
        Some(self - q * b)
    }
    fn neg(&self) -> Option<BigInt> {
        Some(-self)
    }
    fn quotient(&self, d: &BigInt) -> Option<BigInt> {
        Some(self.div_floor(d))
    }
    fn divides(&self, other: &BigInt) -> bool {
        other.is_multiple_of(self)
    }
    fn to_bigint(&self) -> BigInt {
        self.clone()
    }
}

#[derive(Clone)]
struct Dense<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Scalar> Dense<T> {
    fn identity(n: usize) -> Dense<T> {
        let mut data = alloc::vec![T::zero(); n * n];
        for i in 0..n {
            data[i * n + i] = T::one();
        }
        Dense {
            rows: n,
            cols: n,
            data,
        }
    }

    fn from_int(m: &IntMatrix) -> Dense<T> {
        let mut data = Vec::with_capacity(m.rows() * m.cols());
        for r in 0..m.rows() {
            data.extend(m.row(r).iter().map(|&v| T::from_i64(v)));
        }
        Dense {
            rows: m.rows(),
            cols: m.cols(),
            data,
        }
    }

    fn at(&self, r: usize, c: usize) -> &T {
        &self.data[r * self.cols + c]
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for c in 0..self.cols {
                self.data.swap(a * self.cols + c, b * self.cols + c);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for r in 0..self.rows {
                self.data.swap(r * self.cols + a, r * self.cols + b);
            }
        }
    }

    /// row[dst] -= q * row[src]
    fn row_sub(&mut self, dst: usize, src: usize, q: &T) -> Option<()> {
        for c in 0..self.cols {
            let v = self.at(dst, c).sub_mul(q, self.at(src, c))?;
            self.data[dst * self.cols + c] = v;
        }
        Some(())
    }

    /// col[dst] -= q * col[src]
    fn col_sub(&mut self, dst: usize, src: usize, q: &T) -> Option<()> {
        for r in 0..self.rows {
            let v = self.at(r, dst).sub_mul(q, self.at(r, src))?;
            self.data[r * self.cols + dst] = v;
        }
        Some(())
    }

    fn negate_row(&mut self, r: usize) -> Option<()> {
        for c in 0..self.cols {
            let v = self.at(r, c).neg()?;
            self.data[r * self.cols + c] = v;
        }
        Some(())
    }

    fn negate_col(&mut self, c: usize) -> Option<()> {
        for r in 0..self.rows {
            let v = self.at(r, c).neg()?;
            self.data[r * self.cols + c] = v;
        }
        Some(())
    }
}

/// `d = u · a · v` with `u`, `v` unimodular; inverses kept alongside.
struct Tracked<T> {
    a: Dense<T>,
    transforms: Option<[Dense<T>; 4]>,
}

impl<T: Scalar> Tracked<T> {
    fn u(&mut self) -> Option<&mut [Dense<T>; 4]> {
        self.transforms.as_mut()
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        self.a.swap_rows(i, j);
        if let Some([u, u_inv, _, _]) = self.u() {
            u.swap_rows(i, j);
            u_inv.swap_cols(i, j);
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        self.a.swap_cols(i, j);
        if let Some([_, _, v, v_inv]) = self.u() {
            v.swap_cols(i, j);
            v_inv.swap_rows(i, j);
        }
    }

    fn row_sub(&mut self, dst: usize, src: usize, q: &T) -> Option<()> {
        self.a.row_sub(dst, src, q)?;
        if let Some([u, u_inv, _, _]) = self.u() {
            u.row_sub(dst, src, q)?;
            u_inv.col_sub(src, dst, &q.neg()?)?;
        }
        Some(())
    }

    fn col_sub(&mut self, dst: usize, src: usize, q: &T) -> Option<()> {
        self.a.col_sub(dst, src, q)?;
        if let Some([_, _, v, v_inv]) = self.u() {
            v.col_sub(dst, src, q)?;
            v_inv.row_sub(src, dst, &q.neg()?)?;
        }
        Some(())
    }

    fn negate_row(&mut self, r: usize) -> Option<()> {
        self.a.negate_row(r)?;
        if let Some([u, u_inv, _, _]) = self.u() {
            u.negate_row(r)?;
            u_inv.negate_col(r)?;
        }
        Some(())
    }

    /// Position of the smallest non-zero entry in the block `[t.., t..]`.
    fn smallest_in_block(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for r in t..self.a.rows {
            for c in t..self.a.cols {
                let v = self.a.at(r, c);
                if !v.is_zero() && best.is_none_or(|(br, bc)| v.magnitude_lt(self.a.at(br, bc))) {
                    best = Some((r, c));
                }
            }
        }
        best
    }

    fn run(&mut self) -> Option<usize> {
        let mut t = 0;
        while t < self.a.rows.min(self.a.cols) {
            let Some((r, c)) = self.smallest_in_block(t) else {
                break;
            };
            self.swap_rows(t, r);
            self.swap_cols(t, c);
            loop {
                let mut dirty = false;
                for i in t + 1..self.a.rows {
                    if !self.a.at(i, t).is_zero() {
                        let q = self.a.at(i, t).quotient(self.a.at(t, t))?;
                        self.row_sub(i, t, &q)?;
                        if !self.a.at(i, t).is_zero() {
                            dirty = true;
                        }
                    }
                }
                for j in t + 1..self.a.cols {
                    if !self.a.at(t, j).is_zero() {
                        let q = self.a.at(t, j).quotient(self.a.at(t, t))?;
                        self.col_sub(j, t, &q)?;
                        if !self.a.at(t, j).is_zero() {
                            dirty = true;
                        }
                    }
                }
                if dirty {
                    self.bring_smallest_remainder(t);
                    continue;
                }
                // Pivot row and column are clear; enforce divisibility.
                let pivot = self.a.at(t, t).clone();
                let bad = (t + 1..self.a.rows).find(|&i| {
                    (t + 1..self.a.cols).any(|j| !pivot.divides(self.a.at(i, j)))
                });
                match bad {
                    Some(i) => {
                        let minus_one = T::one().neg()?;
                        self.row_sub(t, i, &minus_one)?;
                    }
                    None => break,
                }
            }
            if self.a.at(t, t).is_negative() {
                self.negate_row(t)?;
            }
            t += 1;
        }
        Some(t)
    }

    /// Moves the smallest non-zero entry of row `t` or column `t` to the
    /// pivot.
    fn bring_smallest_remainder(&mut self, t: usize) {
        let mut best = (t, t);
        for i in t + 1..self.a.rows {
            if !self.a.at(i, t).is_zero() && self.a.at(i, t).magnitude_lt(self.a.at(best.0, best.1)) {
                best = (i, t);
            }
        }
        for j in t + 1..self.a.cols {
            if !self.a.at(t, j).is_zero() && self.a.at(t, j).magnitude_lt(self.a.at(best.0, best.1)) {
                best = (t, j);
            }
        }
        self.swap_rows(t, best.0);
        self.swap_cols(t, best.1);
    }
}

/// Invariant factors of an integer matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    pub rows: usize,
    pub cols: usize,
    /// The non-zero diagonal entries, positive, each dividing the next.
    pub invariants: Vec<BigInt>,
}

impl SmithForm {
    pub fn rank(&self) -> usize {
        self.invariants.len()
    }

    /// Invariants greater than one.
    pub fn torsion(&self) -> impl Iterator<Item = &BigInt> + '_ {
        self.invariants.iter().filter(|d| !d.is_one())
    }
}

/// Unimodular `u`, `v` and their inverses with `u · m · v` diagonal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithTransforms {
    pub u: IntMatrix,
    pub u_inv: IntMatrix,
    pub v: IntMatrix,
    pub v_inv: IntMatrix,
}

fn eliminate<T: Scalar>(m: &IntMatrix, transforms: bool) -> Option<(SmithForm, Option<[Dense<T>; 4]>)> {
    let mut work = Tracked {
        a: Dense::<T>::from_int(m),
        transforms: transforms.then(|| {
            [
                Dense::identity(m.rows()),
                Dense::identity(m.rows()),
                Dense::identity(m.cols()),
                Dense::identity(m.cols()),
            ]
        }),
    };
    let rank = work.run()?;
    let invariants = (0..rank).map(|t| work.a.at(t, t).to_bigint()).collect();
    Some((
        SmithForm {
            rows: m.rows(),
            cols: m.cols(),
            invariants,
        },
        work.transforms,
    ))
}

pub fn smith_normal_form(m: &IntMatrix) -> SmithForm {
    if let Some((form, _)) = eliminate::<i64>(m, false) {
        return form;
    }
    eliminate::<BigInt>(m, false)
        .expect("big integer elimination cannot overflow")
        .0
}

fn to_int<T: Scalar>(d: &Dense<T>) -> Option<IntMatrix> {
    let mut out = IntMatrix::zeros(d.rows, d.cols);
    for r in 0..d.rows {
        for c in 0..d.cols {
            out.set(r, c, d.at(r, c).to_bigint().to_i64()?);
        }
    }
    Some(out)
}

fn pack<T: Scalar>(t: [Dense<T>; 4]) -> Option<SmithTransforms> {
    let [u, u_inv, v, v_inv] = t;
    Some(SmithTransforms {
        u: to_int(&u)?,
        u_inv: to_int(&u_inv)?,
        v: to_int(&v)?,
        v_inv: to_int(&v_inv)?,
    })
}

/// Smith form with the change-of-basis matrices. Errors only when a
/// transform entry does not fit in `i64`.
pub fn smith_with_transforms(m: &IntMatrix) -> Result<(SmithForm, SmithTransforms), Error> {
    if let Some((form, Some(t))) = eliminate::<i64>(m, true) {
        if let Some(t) = pack(t) {
            return Ok((form, t));
        }
    }
    let (form, t) = eliminate::<BigInt>(m, true).expect("big integer elimination cannot overflow");
    let t = pack(t.expect("transforms requested"))
        .ok_or_else(|| Error::Overflow(String::from("Smith transform entry exceeds 64 bits")))?;
    Ok((form, t))
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn diagonal(form: &SmithForm) -> IntMatrix {
        let mut d = IntMatrix::zeros(form.rows, form.cols);
        for (i, x) in form.invariants.iter().enumerate() {
            d.set(i, i, x.to_i64().unwrap());
        }
        d
    }

    #[test]
    fn small_examples() {
        let m = IntMatrix::from_rows(&[[2, 4, 4], [-6, 6, 12], [10, -4, -16]]);
        assert_eq!(smith_normal_form(&m).invariants, big(&[2, 6, 12]));

        let m = IntMatrix::from_rows(&[[2, 0], [0, 3]]);
        assert_eq!(smith_normal_form(&m).invariants, big(&[1, 6]));

        assert_eq!(smith_normal_form(&IntMatrix::zeros(3, 2)).rank(), 0);
        assert_eq!(smith_normal_form(&IntMatrix::zeros(0, 4)).rank(), 0);
    }

    #[test]
    fn transforms_diagonalise() {
        let m = IntMatrix::from_rows(&[[2, 4, 4, 1], [-6, 6, 12, 0], [10, -4, -16, 3]]);
        let (form, t) = smith_with_transforms(&m).unwrap();
        let d = t.u.checked_mul(&m).unwrap().checked_mul(&t.v).unwrap();
        assert_eq!(d, diagonal(&form));
        assert_eq!(t.u.checked_mul(&t.u_inv).unwrap(), IntMatrix::identity(3));
        assert_eq!(t.v_inv.checked_mul(&t.v).unwrap(), IntMatrix::identity(4));
    }

    #[test]
    fn escalates_past_i64() {
        let huge = i64::MAX / 2 + 1;
        let m = IntMatrix::from_rows(&[[huge, huge - 1], [huge - 1, huge - 2]]);
        let form = smith_normal_form(&m);
        // det = -1 for consecutive rows like these.
        assert_eq!(form.invariants, big(&[1, 1]));

        let m = IntMatrix::from_rows(&[[i64::MAX, 0], [0, i64::MAX]]);
        assert_eq!(smith_normal_form(&m).invariants, vec![BigInt::from(i64::MAX); 2]);
    }

    #[test]
    fn torsion_of_a_klein_bottle_relation() {
        let m = IntMatrix::from_rows(&[[2], [0]]);
        let form = smith_normal_form(&m);
        assert_eq!(form.torsion().cloned().collect::<Vec<_>>(), big(&[2]));
    }
}
