//! Dense matrices over the integers and over `Z_(2)`, Smith normal form,
//! 2-local cokernels, and linear algebra over F_2.

use std::fmt;
use std::ops::{Add, Mul, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::group::FinAbGroup2;
use crate::padic::{inv_odd, pow2, val2, Val2};
use crate::{Error, OddRational, Result};

/// Row-major dense matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    entries: Vec<T>,
}

pub type IntMatrix = Matrix<BigInt>;
pub type QMatrix = Matrix<OddRational>;

impl<T: Clone> Matrix<T> {
    pub fn from_vec(rows: usize, cols: usize, entries: Vec<T>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::Shape(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        Ok(Matrix {
            rows,
            cols,
            entries,
        })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        Matrix {
            rows,
            cols,
            entries,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<T> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn map<U: Clone>(&self, f: impl FnMut(&T) -> U) -> Matrix<U> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(f).collect(),
        }
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

impl<T: Clone + Zero + One> Matrix<T> {
    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { T::one() } else { T::zero() })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self::from_fn(rows, cols, |_, _| T::zero())
    }

    pub fn diagonal(d: &[T]) -> Self {
        Self::from_fn(d.len(), d.len(), |i, j| {
            if i == j {
                d[i].clone()
            } else {
                T::zero()
            }
        })
    }

    pub fn is_lower_triangular(&self) -> bool {
        (0..self.rows).all(|i| (i + 1..self.cols).all(|j| self.get(i, j).is_zero()))
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self.get(i, j).is_zero()))
    }
}

impl<T> Matrix<T>
where
    T: Clone + Zero,
    for<'a> &'a T: Mul<&'a T, Output = T> + Add<&'a T, Output = T>,
{
    pub fn mul(&self, rhs: &Self) -> Result<Self> {
        if self.cols != rhs.rows {
            return Err(Error::Shape(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        Ok(Self::from_fn(self.rows, rhs.cols, |i, j| {
            (0..self.cols).fold(T::zero(), |acc, k| &acc + &(self.get(i, k) * rhs.get(k, j)))
        }))
    }

    pub fn apply(&self, v: &[T]) -> Vec<T> {
        (0..self.rows)
            .map(|i| (0..self.cols).fold(T::zero(), |acc, k| &acc + &(self.get(i, k) * &v[k])))
            .collect()
    }
}

impl<T> Matrix<T>
where
    T: Clone,
    for<'a> &'a T: Sub<&'a T, Output = T>,
{
    pub fn sub(&self, rhs: &Self) -> Result<Self> {
        if (self.rows, self.cols) != (rhs.rows, rhs.cols) {
            return Err(Error::Shape(
                "subtracting matrices of different shapes".into(),
            ));
        }
        Ok(Self::from_fn(self.rows, self.cols, |i, j| {
            self.get(i, j) - rhs.get(i, j)
        }))
    }
}

impl<T: fmt::Display> fmt::Display for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols)
                .map(|j| self.entries[i * self.cols + j].to_string())
                .collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl<T: fmt::Display> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl IntMatrix {
    pub fn from_rows<I: Into<BigInt> + Copy>(rows: &[&[I]]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Shape("ragged rows".into()));
        }
        Ok(Self::from_fn(r, c, |i, j| rows[i][j].into()))
    }

    pub fn to_rational(&self) -> QMatrix {
        self.map(|x| OddRational::from(x.clone()))
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn det(&self) -> Result<BigInt> {
        if !self.is_square() {
            return Err(Error::Shape("determinant of a non-square matrix".into()));
        }
        let n = self.rows;
        if n == 0 {
            return Ok(BigInt::one());
        }
        let mut a = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a.get(k, k).is_zero() {
                match (k + 1..n).find(|&i| !a.get(i, k).is_zero()) {
                    Some(i) => {
                        a.swap_rows(i, k);
                        sign = -sign;
                    }
                    None => return Ok(BigInt::zero()),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (a.get(i, j) * a.get(k, k) - a.get(i, k) * a.get(k, j)) / &prev;
                    a.set(i, j, v);
                }
            }
            prev = a.get(k, k).clone();
        }
        Ok(sign * a.get(n - 1, n - 1))
    }

    /// Entries reduced mod 2.
    pub fn mod2(&self) -> F2Matrix {
        F2Matrix::from_fn(self.rows, self.cols, |i, j| self.get(i, j).is_odd())
    }
}

impl QMatrix {
    /// Integer matrix, if every entry has denominator 1.
    pub fn to_integer(&self) -> Option<IntMatrix> {
        self.entries
            .iter()
            .all(|x| x.is_integer())
            .then(|| self.map(|x| x.num().clone()))
    }

    /// Reduction `Z_(2) -> F_2`.
    pub fn mod2(&self) -> F2Matrix {
        F2Matrix::from_fn(self.rows, self.cols, |i, j| self.get(i, j).num().is_odd())
    }
}

/// `U A V = D` with `U`, `V` unimodular and `D` diagonal with `d_i | d_(i+1)`.
#[derive(Debug, Clone)]
pub struct Snf {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
}

impl Snf {
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.d.rows.min(self.d.cols))
            .map(|i| self.d.get(i, i).clone())
            .collect()
    }

    /// Recompute every defining property of the decomposition against `a`.
    pub fn verify(&self, a: &IntMatrix) -> Result<()> {
        let uav = self.u.mul(a)?.mul(&self.v)?;
        if uav != self.d {
            return Err(Error::InternalMismatch("U A V != D".into()));
        }
        if !self.d.is_diagonal() {
            return Err(Error::InternalMismatch("D is not diagonal".into()));
        }
        for m in [&self.u, &self.v] {
            if m.det()?.abs() != BigInt::one() {
                return Err(Error::InternalMismatch("witness is not unimodular".into()));
            }
        }
        let diag = self.diagonal();
        if diag.iter().any(|x| x.is_negative()) {
            return Err(Error::InternalMismatch("negative diagonal entry".into()));
        }
        for w in diag.windows(2) {
            let ok = if w[0].is_zero() {
                w[1].is_zero()
            } else {
                (&w[1] % &w[0]).is_zero()
            };
            if !ok {
                return Err(Error::InternalMismatch(format!(
                    "{} does not divide {}",
                    w[0], w[1]
                )));
            }
        }
        Ok(())
    }
}

/// Smith normal form with unimodular witnesses. Pivots on the entry of
/// least absolute value in the remaining block.
pub fn snf(a: &IntMatrix) -> Snf {
    let (m, n) = (a.rows, a.cols);
    let mut d = a.clone();
    let mut u = IntMatrix::identity(m);
    let mut v = IntMatrix::identity(n);

    // row_i += c * row_k, on D and U
    fn row_axpy(mat: &mut IntMatrix, i: usize, k: usize, c: &BigInt) {
        for j in 0..mat.cols {
            let t = mat.get(i, j) + c * mat.get(k, j);
            mat.set(i, j, t);
        }
    }
    fn col_axpy(mat: &mut IntMatrix, j: usize, k: usize, c: &BigInt) {
        for i in 0..mat.rows {
            let t = mat.get(i, j) + c * mat.get(i, k);
            mat.set(i, j, t);
        }
    }

    for t in 0..m.min(n) {
        loop {
            // Smallest nonzero entry of the block d[t.., t..].
            let pivot = (t..m)
                .flat_map(|i| (t..n).map(move |j| (i, j)))
                .filter(|&(i, j)| !d.get(i, j).is_zero())
                .min_by(|&(i1, j1), &(i2, j2)| d.get(i1, j1).abs().cmp(&d.get(i2, j2).abs()));
            let Some((pi, pj)) = pivot else { break };
            d.swap_rows(t, pi);
            u.swap_rows(t, pi);
            d.swap_cols(t, pj);
            v.swap_cols(t, pj);

            let mut clean = true;
            for i in t + 1..m {
                if d.get(i, t).is_zero() {
                    continue;
                }
                let q = -d.get(i, t).div_floor(d.get(t, t));
                row_axpy(&mut d, i, t, &q);
                row_axpy(&mut u, i, t, &q);
                clean &= d.get(i, t).is_zero();
            }
            for j in t + 1..n {
                if d.get(t, j).is_zero() {
                    continue;
                }
                let q = -d.get(t, j).div_floor(d.get(t, t));
                col_axpy(&mut d, j, t, &q);
                col_axpy(&mut v, j, t, &q);
                clean &= d.get(t, j).is_zero();
            }
            if !clean {
                continue;
            }
            // Divisibility: fold an offending row into row t and go again.
            let p = d.get(t, t).clone();
            let offender = (t + 1..m).find(|&i| (t + 1..n).any(|j| !(d.get(i, j) % &p).is_zero()));
            match offender {
                Some(i) => {
                    row_axpy(&mut d, t, i, &BigInt::one());
                    row_axpy(&mut u, t, i, &BigInt::one());
                }
                None => break,
            }
        }
        if d.get(t, t).is_negative() {
            for j in 0..n {
                let x = -d.get(t, j);
                d.set(t, j, x);
            }
            for j in 0..m {
                let x = -u.get(t, j);
                u.set(t, j, x);
            }
        }
    }
    Snf { u, d, v }
}

/// A cokernel `Z_(2)^m / A Z_(2)^n` as a sum of cyclic groups, together with the
/// image of every standard basis vector.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CokerPresentation {
    pub group: FinAbGroup2,
    /// `gen_images[b][s]` is the coefficient of basis vector `b` on summand `s`.
    /// Summands are ordered as in `group`: torsion by nonincreasing exponent,
    /// then free summands. Torsion coefficients lie in `[0, 2^e)`.
    pub gen_images: Vec<Vec<BigInt>>,
}

impl CokerPresentation {
    /// Cyclic order exponents per summand, `None` for free summands.
    pub fn summand_exponents(&self) -> Vec<Option<u32>> {
        self.group
            .exponents()
            .iter()
            .map(|&e| Some(e))
            .chain(std::iter::repeat_n(None, self.group.free_rank() as usize))
            .collect()
    }
}

/// Cokernel of `A` over the 2-local integers.
///
/// Odd diagonal factors of the Smith form are units and disappear.  A zero
/// diagonal entry (or a missing one, for wide shapes) is a free summand,
/// reported in `free_rank` if `allow_free`, and rejected with
/// [`Error::Infinite`] otherwise.
pub fn coker_2local(a: &IntMatrix, allow_free: bool) -> Result<CokerPresentation> {
    let s = snf(a);
    s.verify(a)?;
    let m = a.rows;
    let diag = s.diagonal();

    // (exponent or None for free, row of U)
    let mut summands: Vec<(Option<u32>, usize)> = Vec::new();
    for i in 0..m {
        let d = diag.get(i).cloned().unwrap_or_else(BigInt::zero);
        match val2(&d) {
            Val2::Infinity => {
                if !allow_free {
                    return Err(Error::Infinite);
                }
                summands.push((None, i));
            }
            Val2::Finite(0) => {}
            Val2::Finite(e) => summands.push((Some(e as u32), i)),
        }
    }
    // Torsion by nonincreasing exponent, then free; stable in the SNF order.
    summands.sort_by(|x, y| match (x.0, y.0) {
        (Some(a), Some(b)) => b.cmp(&a),
        (Some(_), None) => std::cmp::Ordering::Less,
        (None, Some(_)) => std::cmp::Ordering::Greater,
        (None, None) => std::cmp::Ordering::Equal,
    });

    let mut gen_images = vec![Vec::with_capacity(summands.len()); m];
    for &(exp, row) in &summands {
        let mut coeffs: Vec<BigInt> = (0..m).map(|b| s.u.get(row, b).clone()).collect();
        if let Some(e) = exp {
            let modulus = pow2(e);
            for c in coeffs.iter_mut() {
                *c = c.mod_floor(&modulus);
            }
            // Rescale the summand's generator so the first unit coefficient is 1.
            if let Some(c0) = coeffs.iter().find(|c| c.is_odd()).cloned() {
                let inv = inv_odd(&c0, e)?;
                for c in coeffs.iter_mut() {
                    *c = (&*c * inv.value()).mod_floor(&modulus);
                }
            }
        }
        for (b, c) in coeffs.into_iter().enumerate() {
            gen_images[b].push(c);
        }
    }

    let torsion: Vec<u32> = summands.iter().filter_map(|s| s.0).collect();
    let free = summands.iter().filter(|s| s.0.is_none()).count() as u32;
    Ok(CokerPresentation {
        group: FinAbGroup2::from_exponents(torsion).with_free_rank(free),
        gen_images,
    })
}

/// Cokernel of a square matrix whose determinant is `±2^k`, `k >= 0`.
pub fn coker_presentation(a: &IntMatrix) -> Result<CokerPresentation> {
    let det = a.det()?;
    if det.is_zero() {
        return Err(Error::Infinite);
    }
    let Val2::Finite(v) = val2(&det) else {
        unreachable!()
    };
    if (det.abs() >> v as usize) != BigInt::one() {
        return Err(Error::NotTwoLocal(det.to_string()));
    }
    coker_2local(a, false)
}

/// Express `A` restricted to the sublattice with basis columns `basis` in that basis,
/// i.e. `basis^-1 A basis`, which must be integral.
pub fn restrict_to_sublattice(a: &IntMatrix, basis: &IntMatrix) -> Result<IntMatrix> {
    let det = basis.det()?;
    if det.is_zero() {
        return Err(Error::Precondition("sublattice basis is singular".into()));
    }
    let adj = adjugate(basis)?;
    let num = adj.mul(a)?.mul(basis)?;
    let mut out = num.clone();
    for i in 0..num.rows {
        for j in 0..num.cols {
            let (q, r) = num.get(i, j).div_rem(&det);
            if !r.is_zero() {
                return Err(Error::Precondition(
                    "matrix does not preserve the sublattice".into(),
                ));
            }
            out.set(i, j, q);
        }
    }
    Ok(out)
}

/// Classical adjugate, `adj(A) A = det(A) I`.
pub fn adjugate(a: &IntMatrix) -> Result<IntMatrix> {
    if !a.is_square() {
        return Err(Error::Shape("adjugate of a non-square matrix".into()));
    }
    let n = a.rows;
    if n == 1 {
        return Ok(IntMatrix::identity(1));
    }
    let mut out = IntMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            let minor = IntMatrix::from_fn(n - 1, n - 1, |r, c| {
                let rr = if r < i { r } else { r + 1 };
                let cc = if c < j { c } else { c + 1 };
                a.get(rr, cc).clone()
            });
            let cof = minor.det()?;
            // adj = transpose of the cofactor matrix
            out.set(j, i, if (i + j) % 2 == 0 { cof } else { -cof });
        }
    }
    Ok(out)
}

/// Matrix over F_2.
pub type F2Matrix = Matrix<bool>;

impl F2Matrix {
    pub fn apply_f2(&self, v: &[bool]) -> Vec<bool> {
        (0..self.rows)
            .map(|i| (0..self.cols).fold(false, |acc, k| acc ^ (*self.get(i, k) & v[k])))
            .collect()
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (F2Matrix, Vec<usize>) {
        let mut a = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..a.cols {
            let Some(p) = (r..a.rows).find(|&i| *a.get(i, c)) else {
                continue;
            };
            a.swap_rows(r, p);
            for i in 0..a.rows {
                if i != r && *a.get(i, c) {
                    for j in 0..a.cols {
                        let x = *a.get(i, j) ^ *a.get(r, j);
                        a.set(i, j, x);
                    }
                }
            }
            pivots.push(c);
            r += 1;
            if r == a.rows {
                break;
            }
        }
        (a, pivots)
    }

    pub fn rank_f2(&self) -> usize {
        self.rref().1.len()
    }
}

/// Basis of `{v : A v = 0}` over F_2, one vector per free column of the RREF.
pub fn kernel_mod2(a: &F2Matrix) -> Vec<Vec<bool>> {
    let (r, pivots) = a.rref();
    let n = a.cols;
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![false; n];
            v[f] = true;
            for (row, &p) in pivots.iter().enumerate() {
                v[p] = *r.get(row, f);
            }
            v
        })
        .collect()
}

/// Standard basis vectors spanning a complement of the column space of `A`,
/// i.e. a basis of `F_2^m / im A`.
pub fn cokernel_mod2(a: &F2Matrix) -> Vec<Vec<bool>> {
    let (_, pivots) = a.transpose().rref();
    let m = a.rows;
    (0..m)
        .filter(|c| !pivots.contains(c))
        .map(|c| {
            let mut v = vec![false; m];
            v[c] = true;
            v
        })
        .collect()
}

/// Coordinates of `w` in the span of `basis` (vectors over F_2), if it lies there.
pub fn solve_in_span_f2(basis: &[Vec<bool>], w: &[bool]) -> Option<Vec<bool>> {
    let n = w.len();
    let k = basis.len();
    // Augmented system [basis | w], columns are the basis vectors.
    let aug = F2Matrix::from_fn(n, k + 1, |i, j| if j < k { basis[j][i] } else { w[i] });
    let (r, pivots) = aug.rref();
    if pivots.contains(&k) {
        return None;
    }
    let mut x = vec![false; k];
    for (row, &p) in pivots.iter().enumerate() {
        x[p] = *r.get(row, k);
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> IntMatrix {
        IntMatrix::from_rows(rows).unwrap()
    }

    fn theta() -> IntMatrix {
        m(&[&[8, 0, 0], &[-1, 32, 0], &[0, -1, 8192]])
    }

    #[test]
    fn determinants() {
        assert_eq!(theta().det().unwrap(), BigInt::from(1 << 21));
        assert_eq!(m(&[&[0, 1], &[1, 0]]).det().unwrap(), BigInt::from(-1));
        assert_eq!(m(&[&[2, 4], &[1, 2]]).det().unwrap(), BigInt::zero());
        assert_eq!(
            m(&[&[0, 2, 1], &[3, 0, 0], &[1, 1, 1]]).det().unwrap(),
            BigInt::from(-3)
        );
    }

    #[test]
    fn snf_examples() {
        let d = |a: &IntMatrix| {
            let s = snf(a);
            s.verify(a).unwrap();
            s.diagonal()
        };
        let big = |v: &[i64]| v.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>();
        assert_eq!(d(&m(&[&[2, 0], &[0, 4]])), big(&[2, 4]));
        assert_eq!(d(&m(&[&[4, 0], &[0, 2]])), big(&[2, 4]));
        assert_eq!(d(&m(&[&[0, 1], &[1, 0]])), big(&[1, 1]));
        assert_eq!(d(&m(&[&[2, 0], &[0, 3]])), big(&[1, 6]));
        assert_eq!(d(&theta()), big(&[1, 1, 1 << 21]));
        assert_eq!(d(&m(&[&[0, 0], &[0, 0]])), big(&[0, 0]));
        assert_eq!(d(&m(&[&[1, 2, 3], &[4, 5, 6]])), big(&[1, 3]));
    }

    #[test]
    fn theta_cokernel() {
        let c = coker_presentation(&theta()).unwrap();
        assert_eq!(c.group, FinAbGroup2::cyclic(21));
        let img: Vec<BigInt> = c.gen_images.iter().map(|v| v[0].clone()).collect();
        assert_eq!(
            img,
            vec![BigInt::from(1), BigInt::from(8), BigInt::from(256)]
        );
    }

    #[test]
    fn small_cokernels() {
        assert!(coker_presentation(&IntMatrix::identity(3))
            .unwrap()
            .group
            .is_trivial());
        let c = coker_presentation(&m(&[&[2, 0], &[0, 2]])).unwrap();
        assert_eq!(c.group.exponents(), &[1, 1]);
        assert!(matches!(
            coker_presentation(&m(&[&[3, 0], &[0, 2]])),
            Err(Error::NotTwoLocal(_))
        ));
        assert!(matches!(
            coker_presentation(&m(&[&[2, 4], &[1, 2]])),
            Err(Error::Infinite)
        ));
        let free = coker_2local(&m(&[&[2, 4], &[1, 2]]), true).unwrap();
        assert_eq!(free.group, FinAbGroup2::trivial().with_free_rank(1));
        // Odd parts are units 2-locally.
        assert_eq!(
            coker_2local(&m(&[&[6]]), false).unwrap().group,
            FinAbGroup2::cyclic(1)
        );
    }

    #[test]
    fn sublattice_restriction() {
        let two = IntMatrix::diagonal(&[BigInt::from(2), BigInt::from(2), BigInt::from(2)]);
        assert_eq!(restrict_to_sublattice(&theta(), &two).unwrap(), theta());
        let b = m(&[&[2, 0], &[0, 1]]);
        assert!(restrict_to_sublattice(&m(&[&[0, 1], &[1, 0]]), &b).is_err());
    }

    #[test]
    fn adjugate_identity() {
        let a = m(&[&[2, -1, 0], &[1, 3, 5], &[0, 7, -4]]);
        let det = a.det().unwrap();
        let prod = adjugate(&a).unwrap().mul(&a).unwrap();
        assert_eq!(prod, IntMatrix::diagonal(&[det.clone(), det.clone(), det]));
    }

    #[test]
    fn mod2_kernel_and_cokernel() {
        let t = theta().mod2();
        assert_eq!(kernel_mod2(&t), vec![vec![false, false, true]]);
        assert_eq!(cokernel_mod2(&t), vec![vec![true, false, false]]);
        let z = F2Matrix::from_fn(3, 3, |_, _| false);
        assert_eq!(kernel_mod2(&z).len(), 3);
        assert_eq!(cokernel_mod2(&z).len(), 3);
        for v in kernel_mod2(&t) {
            assert!(t.apply_f2(&v).iter().all(|x| !x));
        }
    }

    #[test]
    fn span_solve() {
        let basis = vec![vec![true, true, false], vec![false, true, true]];
        assert_eq!(
            solve_in_span_f2(&basis, &[true, false, true]),
            Some(vec![true, true])
        );
        assert_eq!(solve_in_span_f2(&basis, &[true, false, false]), None);
    }
}
