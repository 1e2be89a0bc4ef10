//! Exact integer linear algebra over arbitrary-precision integers.
//!
//! Everything in the crate that computes a group ends up here: a Smith normal
//! form with unimodular certificates, and the kernel / image / cokernel /
//! lattice-solve operations derived from it.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::abgroup::FinAbGroup;
use crate::error::{Error, Result};

/// Dense row-major integer matrix.
///
/// `0 x n` and `n x 0` shapes are legal and behave as maps to/from the trivial
/// group.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = BigInt::one();
        }
        m
    }

    /// Builds a matrix from rows of anything convertible to `BigInt`.
    ///
    /// Panics on ragged input; use [`IntMatrix::try_from_rows`] for untrusted data.
    pub fn from_rows<T: Clone + Into<BigInt>>(rows: &[Vec<T>]) -> Self {
        let big = rows
            .iter()
            .map(|r| r.iter().cloned().map(Into::into).collect())
            .collect();
        Self::try_from_rows(big).expect("ragged rows")
    }

    pub fn try_from_rows(rows: Vec<Vec<BigInt>>) -> Result<Self> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().position(|r| r.len() != ncols) {
            return Err(Error::DimensionMismatch(format!(
                "row {bad} has {} entries, expected {ncols}",
                rows[bad].len()
            )));
        }
        Ok(Self {
            rows: nrows,
            cols: ncols,
            data: rows.into_iter().flatten().collect(),
        })
    }

    /// Column-major construction: each inner vector is one column of length `rows`.
    pub fn from_columns(rows: usize, columns: &[Vec<BigInt>]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            assert_eq!(c.len(), rows, "column {j} has wrong length");
            for (i, x) in c.iter().enumerate() {
                m.data[i * m.cols + j] = x.clone();
            }
        }
        m
    }

    pub fn from_diagonal<T: Clone + Into<BigInt>>(diag: &[T]) -> Self {
        let mut m = Self::zeros(diag.len(), diag.len());
        for (i, d) in diag.iter().enumerate() {
            m.data[i * diag.len() + i] = d.clone().into();
        }
        m
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

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: impl Into<BigInt>) {
        self.data[i * self.cols + j] = value.into();
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.get(i, j).clone();
            }
        }
        t
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let x = self.get(i, j);
                    if i == j {
                        x.is_one()
                    } else {
                        x.is_zero()
                    }
                })
            })
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * k).collect(),
        }
    }

    /// `self^k` for a square matrix; `k = 0` gives the identity.
    pub fn pow(&self, mut k: u64) -> Self {
        assert!(self.is_square(), "pow of non-square matrix");
        let mut base = self.clone();
        let mut acc = Self::identity(self.rows);
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Columns `range` of the matrix as a new matrix.
    pub fn select_columns(&self, range: std::ops::Range<usize>) -> Self {
        let mut m = Self::zeros(self.rows, range.len());
        for i in 0..self.rows {
            for (jj, j) in range.clone().enumerate() {
                m.data[i * m.cols + jj] = self.get(i, j).clone();
            }
        }
        m
    }

    /// Rows `range` of the matrix as a new matrix.
    pub fn select_rows(&self, range: std::ops::Range<usize>) -> Self {
        Self {
            rows: range.len(),
            cols: self.cols,
            data: self.data[range.start * self.cols..range.end * self.cols].to_vec(),
        }
    }

    /// `[self | other]`.
    pub fn hstack(&self, other: &Self) -> Self {
        assert_eq!(self.rows, other.rows, "hstack row mismatch");
        let mut m = Self::zeros(self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.data[i * m.cols + j] = self.get(i, j).clone();
            }
            for j in 0..other.cols {
                m.data[i * m.cols + self.cols + j] = other.get(i, j).clone();
            }
        }
        m
    }

    /// Block-diagonal sum `diag(self, other)`.
    pub fn block_diag(&self, other: &Self) -> Self {
        let mut m = Self::zeros(self.rows + other.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.data[i * m.cols + j] = self.get(i, j).clone();
            }
        }
        for i in 0..other.rows {
            for j in 0..other.cols {
                m.data[(self.rows + i) * m.cols + self.cols + j] = other.get(i, j).clone();
            }
        }
        m
    }

    pub fn rank(&self) -> usize {
        smith_normal_form(self).rank()
    }

    /// Exact determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> Result<BigInt> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        if n == 0 {
            return Ok(BigInt::one());
        }
        let mut a = self.to_rows();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                    Some(i) => {
                        a.swap(i, k);
                        sign = -sign;
                    }
                    None => return Ok(BigInt::zero()),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                    a[i][j] = num / &prev;
                }
            }
            prev = a[k][k].clone();
        }
        Ok(sign * &a[n - 1][n - 1])
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.data.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    /// row[dst] += k * row[src]
    fn add_row_multiple(&mut self, dst: usize, src: usize, k: &BigInt) {
        for j in 0..self.cols {
            let delta = &self.data[src * self.cols + j] * k;
            self.data[dst * self.cols + j] += delta;
        }
    }

    /// col[dst] += k * col[src]
    fn add_col_multiple(&mut self, dst: usize, src: usize, k: &BigInt) {
        for i in 0..self.rows {
            let delta = &self.data[i * self.cols + src] * k;
            self.data[i * self.cols + dst] += delta;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let x = std::mem::take(&mut self.data[i * self.cols + j]);
            self.data[i * self.cols + j] = -x;
        }
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntMatrix{}x{}{}", self.rows, self.cols, self)
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for (j, x) in self.row(i).iter().enumerate() {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

impl Mul for &IntMatrix {
    type Output = IntMatrix;

    fn mul(self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!(
            self.cols, rhs.rows,
            "cannot multiply {}x{} by {}x{}",
            self.rows, self.cols, rhs.rows, rhs.cols
        );
        let mut out = IntMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for l in 0..self.cols {
                let a = self.get(i, l);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    out.data[i * rhs.cols + j] += a * rhs.get(l, j);
                }
            }
        }
        out
    }
}

impl Add for &IntMatrix {
    type Output = IntMatrix;

    fn add(self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "add shape mismatch");
        IntMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &IntMatrix {
    type Output = IntMatrix;

    fn sub(self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "sub shape mismatch");
        IntMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Neg for &IntMatrix {
    type Output = IntMatrix;

    fn neg(self) -> IntMatrix {
        IntMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| -x).collect(),
        }
    }
}

/// JSON entry: a plain number when it fits in 64 bits, a decimal string otherwise.
#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum JsonInt {
    Small(i64),
    Big(String),
}

impl Serialize for IntMatrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let rows: Vec<Vec<JsonInt>> = (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .map(|x| match x.to_i64() {
                        Some(v) => JsonInt::Small(v),
                        None => JsonInt::Big(x.to_string()),
                    })
                    .collect()
            })
            .collect();
        rows.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for IntMatrix {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let rows: Vec<Vec<JsonInt>> = Vec::deserialize(deserializer)?;
        let big = rows
            .into_iter()
            .map(|r| {
                r.into_iter()
                    .map(|x| match x {
                        JsonInt::Small(v) => Ok(BigInt::from(v)),
                        JsonInt::Big(s) => s
                            .trim()
                            .parse::<BigInt>()
                            .map_err(|_| serde::de::Error::custom(format!("bad integer {s:?}"))),
                    })
                    .collect::<std::result::Result<Vec<_>, _>>()
            })
            .collect::<std::result::Result<Vec<_>, _>>()?;
        IntMatrix::try_from_rows(big).map_err(serde::de::Error::custom)
    }
}

/// `U * A * V = D` with `U`, `V` unimodular and `D` in Smith normal form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SnfCertificate {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
}

impl SnfCertificate {
    /// Diagonal of `D`, length `min(rows, cols)`; nonzero entries first.
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.d.rows.min(self.d.cols))
            .map(|i| self.d.get(i, i).clone())
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.diagonal().iter().take_while(|x| !x.is_zero()).count()
    }

    /// The invariant factors `d_i > 1`.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        self.diagonal()
            .into_iter()
            .filter(|x| !x.is_zero() && !x.is_one())
            .collect()
    }
}

fn min_abs_nonzero(d: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<((usize, usize), &BigInt)> = None;
    for i in t..d.rows {
        for j in t..d.cols {
            let x = d.get(i, j);
            if x.is_zero() {
                continue;
            }
            if best.is_none_or(|(_, b)| x.abs() < b.abs()) {
                best = Some(((i, j), x));
            }
        }
    }
    best.map(|(idx, _)| idx)
}

/// Smith normal form with certificates, using a minimal-absolute-value pivot.
pub fn smith_normal_form(a: &IntMatrix) -> SnfCertificate {
    let (n, k) = (a.rows, a.cols);
    let mut d = a.clone();
    let mut u = IntMatrix::identity(n);
    let mut v = IntMatrix::identity(k);

    for t in 0..n.min(k) {
        let Some((pi, pj)) = min_abs_nonzero(&d, t) else {
            break;
        };
        d.swap_rows(t, pi);
        u.swap_rows(t, pi);
        d.swap_cols(t, pj);
        v.swap_cols(t, pj);

        loop {
            let pivot = d.get(t, t).clone();
            for i in t + 1..n {
                if !d.get(i, t).is_zero() {
                    let q = -(d.get(i, t) / &pivot);
                    d.add_row_multiple(i, t, &q);
                    u.add_row_multiple(i, t, &q);
                }
            }
            for j in t + 1..k {
                if !d.get(t, j).is_zero() {
                    let q = -(d.get(t, j) / &pivot);
                    d.add_col_multiple(j, t, &q);
                    v.add_col_multiple(j, t, &q);
                }
            }

            // Leftover remainders are strictly smaller than the pivot.
            let smaller_row = (t + 1..n)
                .filter(|&i| !d.get(i, t).is_zero())
                .min_by_key(|&i| d.get(i, t).abs());
            let smaller_col = (t + 1..k)
                .filter(|&j| !d.get(t, j).is_zero())
                .min_by_key(|&j| d.get(t, j).abs());
            match (smaller_row, smaller_col) {
                (Some(i), Some(j)) => {
                    if d.get(i, t).abs() <= d.get(t, j).abs() {
                        d.swap_rows(t, i);
                        u.swap_rows(t, i);
                    } else {
                        d.swap_cols(t, j);
                        v.swap_cols(t, j);
                    }
                    continue;
                }
                (Some(i), None) => {
                    d.swap_rows(t, i);
                    u.swap_rows(t, i);
                    continue;
                }
                (None, Some(j)) => {
                    d.swap_cols(t, j);
                    v.swap_cols(t, j);
                    continue;
                }
                (None, None) => {}
            }

            // Row and column are clear; enforce divisibility of the rest.
            let pivot = d.get(t, t).clone();
            let offender = (t + 1..n).find(|&i| {
                (t + 1..k).any(|j| !d.get(i, j).is_multiple_of(&pivot))
            });
            match offender {
                Some(i) => {
                    let one = BigInt::one();
                    d.add_row_multiple(t, i, &one);
                    u.add_row_multiple(t, i, &one);
                }
                None => break,
            }
        }

        if d.get(t, t).is_negative() {
            d.negate_row(t);
            u.negate_row(t);
        }
    }

    SnfCertificate { u, d, v }
}

/// Columns form a Z-basis of `{ v : A v = 0 }`.
pub fn kernel_basis(a: &IntMatrix) -> IntMatrix {
    let cert = smith_normal_form(a);
    let r = cert.rank();
    cert.v.select_columns(r..a.cols)
}

/// Columns form a Z-basis of the column span of `A`.
pub fn image_basis(a: &IntMatrix) -> IntMatrix {
    let cert = smith_normal_form(a);
    let r = cert.rank();
    (a * &cert.v).select_columns(0..r)
}

/// `Z^rows / colspan(A)` in canonical form.
pub fn cokernel(a: &IntMatrix) -> FinAbGroup {
    let cert = smith_normal_form(a);
    let r = cert.rank();
    let torsion = cert
        .diagonal()
        .into_iter()
        .take(r)
        .map(|x| x.magnitude().clone());
    FinAbGroup::new(a.rows - r, torsion)
}

/// Solves `B X = C` over the integers, for `B` of full column rank.
pub fn solve_in_lattice(b: &IntMatrix, c: &IntMatrix) -> Result<IntMatrix> {
    if b.rows != c.rows {
        return Err(Error::DimensionMismatch(format!(
            "basis has {} rows, right-hand side has {}",
            b.rows, c.rows
        )));
    }
    let cert = smith_normal_form(b);
    let k = b.cols;
    if cert.rank() < k {
        return Err(Error::RankDeficient);
    }
    let uc = &cert.u * c;
    let mut y = IntMatrix::zeros(k, c.cols);
    for col in 0..c.cols {
        for i in 0..k {
            let (q, r) = uc.get(i, col).div_rem(cert.d.get(i, i));
            if !r.is_zero() {
                return Err(Error::NoSolution { column: col });
            }
            y.set(i, col, q);
        }
        if (k..b.rows).any(|i| !uc.get(i, col).is_zero()) {
            return Err(Error::NoSolution { column: col });
        }
    }
    Ok(&cert.v * &y)
}

/// `L / L'` where the columns of `basis` are a basis of `L` and the columns of
/// `sub_generators` generate a sublattice `L' ⊆ L`.
pub fn subgroup_quotient(basis: &IntMatrix, sub_generators: &IntMatrix) -> Result<FinAbGroup> {
    let coords = solve_in_lattice(basis, sub_generators)?;
    Ok(cokernel(&coords))
}

/// Whether `A` induces an injective map `(Z/m)^cols → (Z/m)^rows`.
pub fn is_injective_mod(a: &IntMatrix, m: u64) -> bool {
    let cert = smith_normal_form(a);
    let m = BigInt::from(m);
    cert.rank() == a.cols && cert.diagonal().iter().all(|d| d.gcd(&m).is_one())
}
