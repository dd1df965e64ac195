//! Dense exact-integer and Boolean matrix kernels.
//!
//! Products and triangular inverses run on `i128` first and fall back to
//! `BigInt` when any intermediate value overflows, so results are always
//! exact. Both kernels skip zero entries, which dominate the upper-triangular
//! incidence matrices.

use std::fmt::Write as _;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::{Map, Number, Value};

use crate::error::{Error, Result};

pub(crate) trait Scalar: Clone {
    fn zero_value() -> Self;
    fn one_value() -> Self;
    fn is_nil(&self) -> bool;
    fn try_add(&self, other: &Self) -> Option<Self>;
    fn try_sub(&self, other: &Self) -> Option<Self>;
    fn try_mul(&self, other: &Self) -> Option<Self>;
}

impl Scalar for i128 {
    fn zero_value() -> Self {
        0
    }
    fn one_value() -> Self {
        1
    }
    fn is_nil(&self) -> bool {
        *self == 0
    }
    fn try_add(&self, other: &Self) -> Option<Self> {
        self.checked_add(*other)
    }
    fn try_sub(&self, other: &Self) -> Option<Self> {
        self.checked_sub(*other)
    }
    fn try_mul(&self, other: &Self) -> Option<Self> {
        self.checked_mul(*other)
    }
}

impl Scalar for BigInt {
    fn zero_value() -> Self {
        Zero::zero()
    }
    fn one_value() -> Self {
        One::one()
    }
    fn is_nil(&self) -> bool {
        Zero::is_zero(self)
    }
    fn try_add(&self, other: &Self) -> Option<Self> {
        Some(self + other)
    }
    fn try_sub(&self, other: &Self) -> Option<Self> {
        Some(self - other)
    }
    fn try_mul(&self, other: &Self) -> Option<Self> {
        Some(self * other)
    }
}

fn narrow(data: &[BigInt]) -> Option<Vec<i128>> {
    data.iter().map(ToPrimitive::to_i128).collect()
}

pub(crate) fn widen(data: Vec<i128>) -> Vec<BigInt> {
    data.into_iter().map(BigInt::from).collect()
}

/// Runs `kernel` on `i128` copies of the inputs, retrying on `BigInt` if the
/// inputs do not fit or the kernel reports overflow.
fn tiered<F, G>(inputs: &[&[BigInt]], small: F, big: G) -> Vec<BigInt>
where
    F: Fn(&[Vec<i128>]) -> Option<Vec<i128>>,
    G: Fn(&[&[BigInt]]) -> Vec<BigInt>,
{
    let narrowed: Option<Vec<Vec<i128>>> = inputs.iter().map(|d| narrow(d)).collect();
    if let Some(result) = narrowed.as_deref().and_then(small) {
        return widen(result);
    }
    big(inputs)
}

fn mul_kernel<T: Scalar>(a: &[T], b: &[T], n: usize, m: usize, p: usize) -> Option<Vec<T>> {
    let mut c = vec![T::zero_value(); n * p];
    for i in 0..n {
        let out = &mut c[i * p..(i + 1) * p];
        for k in 0..m {
            let aik = &a[i * m + k];
            if aik.is_nil() {
                continue;
            }
            for (j, bkj) in b[k * p..(k + 1) * p].iter().enumerate() {
                if bkj.is_nil() {
                    continue;
                }
                out[j] = out[j].try_add(&aik.try_mul(bkj)?)?;
            }
        }
    }
    Some(c)
}

/// Inverse of a unit upper-triangular `n x n` matrix by forward substitution
/// on each row of `X` in `X U = I`.
fn inverse_kernel<T: Scalar>(u: &[T], n: usize) -> Option<Vec<T>> {
    let mut x = vec![T::zero_value(); n * n];
    let mut acc = vec![T::zero_value(); n];
    for i in 0..n {
        acc.iter_mut().for_each(|v| *v = T::zero_value());
        acc[i] = T::one_value();
        for k in i..n {
            let xk = std::mem::replace(&mut acc[k], T::zero_value());
            if xk.is_nil() {
                continue;
            }
            for j in k + 1..n {
                let ukj = &u[k * n + j];
                if !ukj.is_nil() {
                    acc[j] = acc[j].try_sub(&xk.try_mul(ukj)?)?;
                }
            }
            x[i * n + k] = xk;
        }
    }
    Some(x)
}

/// A dense row-major matrix of unbounded integers.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<BigInt>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::Domain(format!(
                "matrix data has {} entries, expected {rows}x{cols}",
                data.len()
            )));
        }
        Ok(IntMatrix { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { BigInt::one() } else { BigInt::zero() })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> BigInt) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        IntMatrix { rows, cols, data }
    }

    /// Builds a matrix from nested rows; all rows must have equal length.
    pub fn from_rows<T: Into<BigInt> + Clone>(rows: &[Vec<T>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::Domain("ragged matrix rows".into()));
        }
        let data = rows.iter().flat_map(|r| r.iter().cloned().map(Into::into)).collect();
        Ok(IntMatrix { rows: rows.len(), cols, data })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn data(&self) -> &[BigInt] {
        &self.data
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: BigInt) {
        self.data[i * self.cols + j] = value;
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    /// Sub-matrix of rows `r0..r0+h` and columns `c0..c0+w`.
    pub fn submatrix(&self, r0: usize, c0: usize, h: usize, w: usize) -> IntMatrix {
        IntMatrix::from_fn(h, w, |i, j| self.get(r0 + i, c0 + j).clone())
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| {
                self.row(i).iter().enumerate().all(|(j, v)| if i == j { v.is_one() } else { v.is_zero() })
            })
    }

    pub fn count_nonzero(&self) -> usize {
        self.data.iter().filter(|v| !v.is_zero()).count()
    }

    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != other.rows {
            return Err(Error::Domain(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let (n, m, p) = (self.rows, self.cols, other.cols);
        let data = tiered(
            &[&self.data, &other.data],
            |v| mul_kernel(&v[0], &v[1], n, m, p),
            |v| mul_kernel(v[0], v[1], n, m, p).expect("unbounded arithmetic cannot overflow"),
        );
        Ok(IntMatrix { rows: n, cols: p, data })
    }

    fn zip(&self, other: &IntMatrix, f: impl Fn(&BigInt, &BigInt) -> BigInt) -> Result<IntMatrix> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::Domain("matrix shapes differ".into()));
        }
        let data = self.data.iter().zip(&other.data).map(|(a, b)| f(a, b)).collect();
        Ok(IntMatrix { rows: self.rows, cols: self.cols, data })
    }

    pub fn add(&self, other: &IntMatrix) -> Result<IntMatrix> {
        self.zip(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &IntMatrix) -> Result<IntMatrix> {
        self.zip(other, |a, b| a - b)
    }

    pub fn scale(&self, factor: &BigInt) -> IntMatrix {
        IntMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|v| v * factor).collect() }
    }

    pub fn neg(&self) -> IntMatrix {
        IntMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|v| -v).collect() }
    }

    /// Exact inverse of a unit upper-triangular matrix.
    pub fn inverse_unit_upper(&self) -> Result<IntMatrix> {
        if self.rows != self.cols {
            return Err(Error::Domain("only square matrices can be inverted".into()));
        }
        let n = self.rows;
        for i in 0..n {
            if !self.get(i, i).is_one() {
                return Err(Error::Domain(format!("diagonal entry ({i},{i}) is not 1")));
            }
            if let Some(j) = (0..i).find(|&j| !self.get(i, j).is_zero()) {
                return Err(Error::Domain(format!("entry ({i},{j}) below the diagonal is nonzero")));
            }
        }
        let data = tiered(
            &[&self.data],
            |v| inverse_kernel(&v[0], n),
            |v| inverse_kernel(v[0], n).expect("unbounded arithmetic cannot overflow"),
        );
        Ok(IntMatrix { rows: n, cols: n, data })
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for i in 0..self.rows {
            for (j, v) in self.row(i).iter().enumerate() {
                if j > 0 {
                    out.push(',');
                }
                let _ = write!(out, "{v}");
            }
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> Value {
        Value::Array(
            (0..self.rows).map(|i| Value::Array(self.row(i).iter().map(big_to_json).collect())).collect(),
        )
    }

    pub fn from_json(value: &Value) -> Result<Self> {
        let rows = value.as_array().ok_or_else(|| Error::Document("matrix must be an array of rows".into()))?;
        let parsed: Vec<Vec<BigInt>> = rows
            .iter()
            .map(|row| {
                row.as_array()
                    .ok_or_else(|| Error::Document("matrix row must be an array".into()))?
                    .iter()
                    .map(json_to_big)
                    .collect()
            })
            .collect::<Result<_>>()?;
        IntMatrix::from_rows(&parsed).map_err(|_| Error::Document("ragged matrix rows".into()))
    }
}

pub(crate) fn big_to_json(v: &BigInt) -> Value {
    Value::Number(Number::from_str(&v.to_string()).expect("decimal integer is a valid JSON number"))
}

pub(crate) fn json_to_big(v: &Value) -> Result<BigInt> {
    match v {
        Value::Number(n) => BigInt::from_str(&n.to_string())
            .map_err(|_| Error::Document(format!("expected an integer, found {n}"))),
        Value::String(s) => BigInt::from_str(s).map_err(|_| Error::Document(format!("expected an integer, found {s:?}"))),
        other => Err(Error::Document(format!("expected an integer, found {other}"))),
    }
}

/// A square 0/1 matrix packed into 64-bit words, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BitMatrix {
    n: usize,
    words: usize,
    bits: Vec<u64>,
}

impl BitMatrix {
    pub fn zeros(n: usize) -> Self {
        let words = n.div_ceil(64);
        BitMatrix { n, words, bits: vec![0; n * words] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.set(i, i);
        }
        m
    }

    /// Nonzero entries of `m` become set bits.
    pub fn from_int(m: &IntMatrix) -> Self {
        assert_eq!(m.rows(), m.cols(), "bit matrices are square");
        let mut out = Self::zeros(m.rows());
        for i in 0..m.rows() {
            for (j, v) in m.row(i).iter().enumerate() {
                if !v.is_zero() {
                    out.set(i, j);
                }
            }
        }
        out
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.bits[i * self.words + j / 64] >> (j % 64) & 1 == 1
    }

    pub fn set(&mut self, i: usize, j: usize) {
        self.bits[i * self.words + j / 64] |= 1 << (j % 64);
    }

    fn row(&self, i: usize) -> &[u64] {
        &self.bits[i * self.words..(i + 1) * self.words]
    }

    /// Boolean product: `(self * other)[i][j] = OR_k self[i][k] AND other[k][j]`.
    pub fn bool_mul(&self, other: &BitMatrix) -> BitMatrix {
        assert_eq!(self.n, other.n);
        let mut out = Self::zeros(self.n);
        for i in 0..self.n {
            for k in 0..self.n {
                if self.get(i, k) {
                    let src = other.row(k);
                    let dst = &mut out.bits[i * self.words..(i + 1) * self.words];
                    for (d, s) in dst.iter_mut().zip(src) {
                        *d |= s;
                    }
                }
            }
        }
        out
    }

    pub fn or_assign(&mut self, other: &BitMatrix) {
        assert_eq!(self.n, other.n);
        for (d, s) in self.bits.iter_mut().zip(&other.bits) {
            *d |= s;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.bits.iter().all(|w| *w == 0)
    }

    pub fn to_int(&self) -> IntMatrix {
        IntMatrix::from_fn(self.n, self.n, |i, j| BigInt::from(u8::from(self.get(i, j))))
    }
}

/// An `N x N` integer matrix indexed by the nodes of a graded poset, with
/// the level sizes that define its block structure.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IncidenceMatrix {
    sizes: Vec<usize>,
    matrix: IntMatrix,
}

impl IncidenceMatrix {
    pub fn new(sizes: Vec<usize>, matrix: IntMatrix) -> Result<Self> {
        let n: usize = sizes.iter().sum();
        if matrix.rows() != n || matrix.cols() != n {
            return Err(Error::Domain(format!(
                "level sizes sum to {n} but matrix is {}x{}",
                matrix.rows(),
                matrix.cols()
            )));
        }
        Ok(IncidenceMatrix { sizes, matrix })
    }

    pub fn identity(sizes: &[usize]) -> Self {
        let n = sizes.iter().sum();
        IncidenceMatrix { sizes: sizes.to_vec(), matrix: IntMatrix::identity(n) }
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> IntMatrix {
        self.matrix
    }

    /// Entry at 0-based node indices.
    pub fn get(&self, x: usize, y: usize) -> &BigInt {
        self.matrix.get(x, y)
    }

    /// 0-based index of the first node of a 1-based level.
    pub fn offset(&self, level: usize) -> usize {
        self.sizes[..level - 1].iter().sum()
    }

    /// 1-based level of a 0-based node index.
    pub fn level_of(&self, index: usize) -> usize {
        let mut acc = 0;
        for (l, s) in self.sizes.iter().enumerate() {
            acc += s;
            if index < acc {
                return l + 1;
            }
        }
        panic!("node index {index} out of range");
    }

    /// Block between 1-based levels `r` and `s`.
    pub fn block(&self, r: usize, s: usize) -> IntMatrix {
        self.matrix.submatrix(self.offset(r), self.offset(s), self.sizes[r - 1], self.sizes[s - 1])
    }

    pub fn mul(&self, other: &IncidenceMatrix) -> Result<IncidenceMatrix> {
        if self.sizes != other.sizes {
            return Err(Error::Domain("incidence matrices have different level structures".into()));
        }
        Ok(IncidenceMatrix { sizes: self.sizes.clone(), matrix: self.matrix.mul(&other.matrix)? })
    }

    pub fn is_identity(&self) -> bool {
        self.matrix.is_identity()
    }

    pub fn to_csv(&self) -> String {
        self.matrix.to_csv()
    }

    pub fn to_json(&self) -> Value {
        let mut map = Map::new();
        map.insert("entries".into(), self.matrix.to_json());
        map.insert("sizes".into(), self.sizes.iter().map(|&s| Value::from(s)).collect());
        Value::Object(map)
    }

    pub fn to_json_string(&self) -> String {
        self.to_json().to_string()
    }

    pub fn from_json(value: &Value) -> Result<Self> {
        let sizes = value
            .get("sizes")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Document("missing \"sizes\" array".into()))?
            .iter()
            .map(|v| {
                v.as_u64()
                    .filter(|&s| s >= 1)
                    .map(|s| s as usize)
                    .ok_or_else(|| Error::Document(format!("invalid level size {v}")))
            })
            .collect::<Result<Vec<_>>>()?;
        let entries = value.get("entries").ok_or_else(|| Error::Document("missing \"entries\" array".into()))?;
        let matrix = IntMatrix::from_json(entries)?;
        IncidenceMatrix::new(sizes, matrix).map_err(|e| Error::Document(e.to_string()))
    }

    pub fn from_json_str(text: &str) -> Result<Self> {
        Self::from_json(&serde_json::from_str(text)?)
    }

    /// True when all entries are nonnegative.
    pub fn is_nonnegative(&self) -> bool {
        self.matrix.data().iter().all(|v| !v.is_negative())
    }
}
