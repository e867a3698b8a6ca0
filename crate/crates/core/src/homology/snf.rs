use alloc::vec;
use alloc::vec::Vec;
use core::fmt::Debug;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// A dense row-major matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix<T = i64> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Clone + Zero> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![T::zero(); rows * cols] }
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged matrix");
        let count = rows.len();
        Self { rows: count, cols, data: rows.into_iter().flatten().collect() }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: T) {
        self.data[i * self.cols + j] = value;
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn map<U>(&self, f: impl Fn(&T) -> U) -> Matrix<U> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }
}

impl<T: Clone + Zero + One> Matrix<T> {
    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, T::one());
        }
        m
    }
}

impl Matrix<BigInt> {
    pub fn mul(&self, other: &Matrix<BigInt>) -> Matrix<BigInt> {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.data[i * other.cols + j] += a * b;
                    }
                }
            }
        }
        out
    }
}

impl Matrix<i64> {
    pub fn to_big(&self) -> Matrix<BigInt> {
        self.map(|&x| BigInt::from(x))
    }

    /// Product with overflow checking.
    pub fn checked_mul(&self, other: &Matrix<i64>) -> Option<Matrix<i64>> {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out: Matrix<i64> = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = *self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let slot = &mut out.data[i * other.cols + j];
                    *slot = slot.checked_add(a.checked_mul(*other.get(k, j))?)?;
                }
            }
        }
        Some(out)
    }
}

/// Integer arithmetic used by the elimination; `None` signals overflow.
pub trait SnfEntry: Clone + Debug + Eq + Zero + One {
    fn magnitude_lt(&self, other: &Self) -> bool;
    fn is_negative(&self) -> bool;
    fn checked_neg(&self) -> Option<Self>;
    /// `self - q * x`.
    fn checked_sub_mul(&self, q: &Self, x: &Self) -> Option<Self>;
    /// Quotient with remainder in `[0, |d|)`.
    fn euclid_quotient(&self, d: &Self) -> Option<Self>;
    fn divides(&self, other: &Self) -> bool;
    fn to_big(&self) -> BigInt;
}

impl SnfEntry for i64 {
    fn magnitude_lt(&self, other: &Self) -> bool {
        self.unsigned_abs() < other.unsigned_abs()
    }

    fn is_negative(&self) -> bool {
        *self < 0
    }

    fn checked_neg(&self) -> Option<Self> {
        i64::checked_neg(*self)
    }

    fn checked_sub_mul(&self, q: &Self, x: &Self) -> Option<Self> {
        self.checked_sub(q.checked_mul(*x)?)
    }

    fn euclid_quotient(&self, d: &Self) -> Option<Self> {
        self.checked_div_euclid(*d)
    }

    fn divides(&self, other: &Self) -> bool {
        other.checked_rem(*self).is_none_or(|r| r == 0)
    }

    fn to_big(&self) -> BigInt {
        BigInt::from(*self)
    }
}

impl SnfEntry for BigInt {
    fn magnitude_lt(&self, other: &Self) -> bool {
        self.magnitude() < other.magnitude()
    }

    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }

    fn checked_neg(&self) -> Option<Self> {
        Some(-self)
    }

    fn checked_sub_mul(&self, q: &Self, x: &Self) -> Option<Self> {
        Some(self - q * x)
    }

    fn euclid_quotient(&self, d: &Self) -> Option<Self> {
        let (q, r) = self.div_mod_floor(d);
        // floor division leaves a remainder with the sign of `d`
        Some(if Signed::is_negative(&r) { q + 1 } else { q })
    }

    fn divides(&self, other: &Self) -> bool {
        other.is_multiple_of(self)
    }

    fn to_big(&self) -> BigInt {
        self.clone()
    }
}

/// `U · M · V = D` with `U`, `V` unimodular and `D` diagonal, its nonzero
/// entries positive and each dividing the next.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    pub u: Matrix<BigInt>,
    pub v: Matrix<BigInt>,
    /// The diagonal of `D`, `min(rows, cols)` entries.
    pub diagonal: Vec<BigInt>,
}

impl SmithForm {
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        self.diagonal.iter().filter(|d| !d.is_zero()).cloned().collect()
    }

    pub fn rank(&self) -> usize {
        self.diagonal.iter().filter(|d| !d.is_zero()).count()
    }

    pub fn d(&self) -> Matrix<BigInt> {
        let mut d = Matrix::zeros(self.u.rows(), self.v.rows());
        for (i, x) in self.diagonal.iter().enumerate() {
            d.set(i, i, x.clone());
        }
        d
    }
}

/// Smith normal form, tried in `i64` first and redone with big integers if
/// any intermediate value overflows.
pub fn smith_normal_form(m: &Matrix<i64>) -> SmithForm {
    fn tracked<T: SnfEntry>(e: Elimination<T>) -> SmithForm {
        let diagonal = e.diagonal();
        let (u, v) = (e.u.unwrap(), e.v.unwrap());
        SmithForm { u: u.map(SnfEntry::to_big), v: v.map(SnfEntry::to_big), diagonal }
    }
    match Elimination::new(m.clone(), true).run() {
        Some(e) => tracked(e),
        None => tracked(Elimination::new(m.to_big(), true).run().expect("big integers do not overflow")),
    }
}

/// The nonzero invariant factors only, without tracking the transforms.
pub fn invariant_factors(m: &Matrix<i64>) -> Vec<BigInt> {
    let diagonal = match Elimination::new(m.clone(), false).run() {
        Some(e) => e.diagonal(),
        None => Elimination::new(m.to_big(), false).run().expect("big integers do not overflow").diagonal(),
    };
    diagonal.into_iter().filter(|d| !d.is_zero()).collect()
}

struct Elimination<T> {
    d: Matrix<T>,
    u: Option<Matrix<T>>,
    v: Option<Matrix<T>>,
}

impl<T: SnfEntry> Elimination<T> {
    fn new(d: Matrix<T>, track: bool) -> Self {
        let (r, c) = (d.rows, d.cols);
        Self { u: track.then(|| Matrix::identity(r)), v: track.then(|| Matrix::identity(c)), d }
    }

    fn diagonal(&self) -> Vec<BigInt> {
        (0..self.d.rows.min(self.d.cols)).map(|i| self.d.get(i, i).to_big()).collect()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for m in [Some(&mut self.d), self.u.as_mut()].into_iter().flatten() {
            for j in 0..m.cols {
                m.data.swap(a * m.cols + j, b * m.cols + j);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for m in [Some(&mut self.d), self.v.as_mut()].into_iter().flatten() {
            for i in 0..m.rows {
                m.data.swap(i * m.cols + a, i * m.cols + b);
            }
        }
    }

    /// `row target -= q * row source`, on `D` and `U`.
    fn sub_row(&mut self, target: usize, source: usize, q: &T) -> Option<()> {
        for m in [Some(&mut self.d), self.u.as_mut()].into_iter().flatten() {
            for j in 0..m.cols {
                let x = m.data[source * m.cols + j].clone();
                if !x.is_zero() {
                    let slot = &mut m.data[target * m.cols + j];
                    *slot = slot.checked_sub_mul(q, &x)?;
                }
            }
        }
        Some(())
    }

    /// `col target -= q * col source`, on `D` and `V`.
    fn sub_col(&mut self, target: usize, source: usize, q: &T) -> Option<()> {
        for m in [Some(&mut self.d), self.v.as_mut()].into_iter().flatten() {
            for i in 0..m.rows {
                let x = m.data[i * m.cols + source].clone();
                if !x.is_zero() {
                    let slot = &mut m.data[i * m.cols + target];
                    *slot = slot.checked_sub_mul(q, &x)?;
                }
            }
        }
        Some(())
    }

    fn negate_row(&mut self, i: usize) -> Option<()> {
        for m in [Some(&mut self.d), self.u.as_mut()].into_iter().flatten() {
            for j in 0..m.cols {
                let slot = &mut m.data[i * m.cols + j];
                *slot = slot.checked_neg()?;
            }
        }
        Some(())
    }

    /// Position of a nonzero entry of least magnitude in the block from `t`.
    fn smallest(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for i in t..self.d.rows {
            for j in t..self.d.cols {
                let x = self.d.get(i, j);
                if !x.is_zero() && best.is_none_or(|(bi, bj)| x.magnitude_lt(self.d.get(bi, bj))) {
                    best = Some((i, j));
                }
            }
        }
        best
    }

    fn run(mut self) -> Option<Self> {
        let (rows, cols) = (self.d.rows, self.d.cols);
        for t in 0..rows.min(cols) {
            let Some((i, j)) = self.smallest(t) else {
                break;
            };
            self.swap_rows(t, i);
            self.swap_cols(t, j);
            loop {
                let pivot = self.d.get(t, t).clone();
                let mut leftover = None;
                for i in t + 1..rows {
                    if !self.d.get(i, t).is_zero() {
                        let q = self.d.get(i, t).euclid_quotient(&pivot)?;
                        self.sub_row(i, t, &q)?;
                        if !self.d.get(i, t).is_zero() {
                            leftover = Some((i, t));
                        }
                    }
                }
                for j in t + 1..cols {
                    if !self.d.get(t, j).is_zero() {
                        let q = self.d.get(t, j).euclid_quotient(&pivot)?;
                        self.sub_col(j, t, &q)?;
                        if !self.d.get(t, j).is_zero() {
                            leftover = Some((t, j));
                        }
                    }
                }
                if let Some((i, j)) = leftover {
                    // a remainder smaller than the pivot: make it the pivot
                    let (i, j) = self.smallest_in_cross(t).unwrap_or((i, j));
                    self.swap_rows(t, i);
                    self.swap_cols(t, j);
                    continue;
                }
                let blocker = (t + 1..rows)
                    .flat_map(|i| (t + 1..cols).map(move |j| (i, j)))
                    .find(|&(i, j)| !pivot.divides(self.d.get(i, j)));
                match blocker {
                    Some((i, _)) => {
                        // pull the offending row into row t; the next sweep leaves a smaller remainder
                        self.sub_row(t, i, &T::one().checked_neg()?)?;
                    }
                    None => break,
                }
            }
            if self.d.get(t, t).is_negative() {
                self.negate_row(t)?;
            }
        }
        Some(self)
    }

    /// Smallest nonzero entry in row `t` and column `t`, pivot included.
    fn smallest_in_cross(&self, t: usize) -> Option<(usize, usize)> {
        let cells = (t..self.d.rows).map(|i| (i, t)).chain((t + 1..self.d.cols).map(|j| (t, j)));
        let mut best: Option<(usize, usize)> = None;
        for (i, j) in cells {
            let x = self.d.get(i, j);
            if !x.is_zero() && best.is_none_or(|(bi, bj)| x.magnitude_lt(self.d.get(bi, bj))) {
                best = Some((i, j));
            }
        }
        best
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check(m: &Matrix<i64>) -> SmithForm {
        let snf = smith_normal_form(m);
        assert_eq!(snf.u.mul(&m.to_big()).mul(&snf.v), snf.d());
        let factors = snf.invariant_factors();
        assert!(factors.iter().all(Signed::is_positive));
        assert!(factors.windows(2).all(|w| w[1].is_multiple_of(&w[0])));
        assert_eq!(factors, invariant_factors(m));
        snf
    }

    fn big(values: &[i64]) -> Vec<BigInt> {
        values.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn small_examples() {
        assert_eq!(check(&Matrix::from_rows(vec![vec![2, 4], vec![6, 8]])).invariant_factors(), big(&[2, 4]));
        assert_eq!(check(&Matrix::identity(3)).invariant_factors(), big(&[1, 1, 1]));
        assert!(check(&Matrix::zeros(2, 3)).invariant_factors().is_empty());
        // diag(2, 3) is not in normal form: 2 does not divide 3
        assert_eq!(check(&Matrix::from_rows(vec![vec![2, 0], vec![0, 3]])).invariant_factors(), big(&[1, 6]));
        assert_eq!(check(&Matrix::zeros(0, 4)).rank(), 0);
    }

    #[test]
    fn overflow_promotes_to_big_integers() {
        let huge = i64::MAX / 2;
        let m = Matrix::from_rows(vec![vec![huge, huge - 1], vec![huge - 3, huge + 7]]);
        let snf = check(&m);
        // det = huge·(huge+7) - (huge-1)(huge-3) = 11·huge - 3
        let det = BigInt::from(huge) * 11 - 3;
        let product: BigInt = snf.invariant_factors().iter().product();
        assert_eq!(product, det);
    }
}
