//! Dense matrices and certificate-tracked invertible transformations.
//!
//! A [`Certificate`] carries P, P^-1, Q, Q^-1 and the working matrix D
//! with the invariant D = P*A*Q against the matrix A it was issued for.
//! Inverses are updated alongside every operation, never recomputed:
//! determinant formulas are worthless over noncommutative rings, while
//! composing the explicit elementary inverses is always exact.

use crate::element::Element;
use crate::error::{Error, Result};
use crate::parse::{parse_element, print_element};
use crate::ring::{make_ring, Ring, RingSpec};
use crate::witness::{is_invariant, two_sided_generator};
use serde_json::{json, Value};

#[derive(Clone, Debug, PartialEq)]
pub struct Matrix {
    ring: Ring,
    rows: usize,
    cols: usize,
    entries: Vec<Element>,
}

impl Matrix {
    pub fn new(ring: Ring, rows: usize, cols: usize, entries: Vec<Element>) -> Result<Matrix> {
        if rows == 0 || cols == 0 || entries.len() != rows * cols {
            return Err(Error::DimensionMismatch);
        }
        if entries.iter().any(|e| *e.ring() != ring) {
            return Err(Error::MixedRings);
        }
        Ok(Matrix { ring, rows, cols, entries })
    }

    pub fn from_rows(ring: &Ring, rows: Vec<Vec<Element>>) -> Result<Matrix> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::DimensionMismatch);
        }
        Matrix::new(ring.clone(), r, c, rows.into_iter().flatten().collect())
    }

    pub fn zero(ring: &Ring, rows: usize, cols: usize) -> Matrix {
        let entries = vec![Element::zero(ring); rows * cols];
        Matrix { ring: ring.clone(), rows, cols, entries }
    }

    pub fn identity(ring: &Ring, n: usize) -> Matrix {
        let mut m = Matrix::zero(ring, n, n);
        for i in 0..n {
            m.set(i, i, Element::one(ring));
        }
        m
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, i: usize, j: usize) -> &Element {
        assert!(i < self.rows && j < self.cols, "entry index in range");
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, e: Element) {
        assert!(i < self.rows && j < self.cols, "entry index in range");
        self.entries[i * self.cols + j] = e;
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Element::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    if i == j {
                        self.at(i, j).is_one()
                    } else {
                        self.at(i, j).is_zero()
                    }
                })
            })
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.ring != other.ring {
            return Err(Error::MixedRings);
        }
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch);
        }
        let mut out = Matrix::zero(&self.ring, self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = Element::zero(&self.ring);
                for k in 0..self.cols {
                    acc = acc.add(&self.at(i, k).mul(other.at(k, j))?)?;
                }
                out.set(i, j, acc);
            }
        }
        Ok(out)
    }

    pub(crate) fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for c in 0..self.cols {
            self.entries.swap(i * self.cols + c, j * self.cols + c);
        }
    }

    pub(crate) fn swap_cols(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for r in 0..self.rows {
            self.entries.swap(r * self.cols + i, r * self.cols + j);
        }
    }

    /// row_i = u * row_i.
    pub(crate) fn scale_row_left(&mut self, i: usize, u: &Element) -> Result<()> {
        for c in 0..self.cols {
            let e = u.mul(self.at(i, c))?;
            self.set(i, c, e);
        }
        Ok(())
    }

    /// col_j = col_j * u.
    pub(crate) fn scale_col_right(&mut self, j: usize, u: &Element) -> Result<()> {
        for r in 0..self.rows {
            let e = self.at(r, j).mul(u)?;
            self.set(r, j, e);
        }
        Ok(())
    }

    /// row_target += m * row_source.
    pub(crate) fn add_row_left(&mut self, target: usize, source: usize, m: &Element) -> Result<()> {
        for c in 0..self.cols {
            let e = self.at(target, c).add(&m.mul(self.at(source, c))?)?;
            self.set(target, c, e);
        }
        Ok(())
    }

    /// col_target += col_source * m.
    pub(crate) fn add_col_right(&mut self, target: usize, source: usize, m: &Element) -> Result<()> {
        for r in 0..self.rows {
            let e = self.at(r, target).add(&self.at(r, source).mul(m)?)?;
            self.set(r, target, e);
        }
        Ok(())
    }

    pub fn to_json(&self) -> Value {
        let entries: Vec<Vec<String>> = (0..self.rows)
            .map(|i| (0..self.cols).map(|j| print_element(self.at(i, j))).collect())
            .collect();
        json!({
            "ring": self.ring.spec(),
            "rows": self.rows,
            "cols": self.cols,
            "entries": entries,
        })
    }

    pub fn from_json(v: &Value) -> Result<Matrix> {
        let spec: RingSpec = serde_json::from_value(
            v.get("ring").ok_or_else(|| Error::BadReport("missing ring".into()))?.clone(),
        )
        .map_err(|e| Error::BadReport(format!("bad ring spec: {e}")))?;
        let ring = make_ring(&spec)?;
        let rows = v.get("rows").and_then(Value::as_u64).ok_or_else(|| {
            Error::BadReport("missing rows".into())
        })? as usize;
        let cols = v.get("cols").and_then(Value::as_u64).ok_or_else(|| {
            Error::BadReport("missing cols".into())
        })? as usize;
        let body = v
            .get("entries")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::BadReport("missing entries".into()))?;
        if body.len() != rows {
            return Err(Error::BadReport("row count mismatch".into()));
        }
        let mut entries = Vec::with_capacity(rows * cols);
        for row in body {
            let row = row
                .as_array()
                .ok_or_else(|| Error::BadReport("entries must be rows of strings".into()))?;
            if row.len() != cols {
                return Err(Error::BadReport("column count mismatch".into()));
            }
            for cell in row {
                let src = cell
                    .as_str()
                    .ok_or_else(|| Error::BadReport("entries must be strings".into()))?;
                entries.push(parse_element(&ring, src)?);
            }
        }
        Matrix::new(ring, rows, cols, entries)
    }
}

/// One invertible row or column operation. As a row operation, `Scale`
/// multiplies the row by the unit on the left and `Add` sends
/// row_target += factor * row_source; as a column operation the factors
/// act on the right instead (col_target += col_source * factor), which
/// is what keeps products well-defined over noncommutative rings.
#[derive(Clone, Debug)]
pub enum ElementaryOp {
    Swap { i: usize, j: usize },
    Scale { i: usize, u: Element },
    Add { target: usize, source: usize, factor: Element },
}

/// Invertible P, Q with explicit inverses and D = P*A*Q.
#[derive(Clone, Debug)]
pub struct Certificate {
    pub p: Matrix,
    pub pinv: Matrix,
    pub q: Matrix,
    pub qinv: Matrix,
    pub d: Matrix,
}

impl Certificate {
    /// Identity certificate: P = I, Q = I, D = A.
    pub fn identity(a: &Matrix) -> Certificate {
        Certificate {
            p: Matrix::identity(a.ring(), a.rows()),
            pinv: Matrix::identity(a.ring(), a.rows()),
            q: Matrix::identity(a.ring(), a.cols()),
            qinv: Matrix::identity(a.ring(), a.cols()),
            d: a.clone(),
        }
    }

    fn check_row_op(&self, op: &ElementaryOp) -> Result<()> {
        let n = self.d.rows();
        let (i, j) = match op {
            ElementaryOp::Swap { i, j } => (*i, *j),
            ElementaryOp::Scale { i, u } => {
                if !u.is_unit() {
                    return Err(Error::NotAUnit);
                }
                (*i, *i)
            }
            ElementaryOp::Add { target, source, .. } => {
                if target == source {
                    return Err(Error::IndexOutOfRange);
                }
                (*target, *source)
            }
        };
        if i >= n || j >= n {
            return Err(Error::IndexOutOfRange);
        }
        Ok(())
    }

    /// D <- E*D, P <- E*P, Pinv <- Pinv*E^-1 for the elementary E.
    pub fn apply_row_op(&mut self, op: &ElementaryOp) -> Result<()> {
        self.check_row_op(op)?;
        match op {
            ElementaryOp::Swap { i, j } => {
                self.d.swap_rows(*i, *j);
                self.p.swap_rows(*i, *j);
                self.pinv.swap_cols(*i, *j);
            }
            ElementaryOp::Scale { i, u } => {
                let ui = u.unit_inverse()?;
                self.d.scale_row_left(*i, u)?;
                self.p.scale_row_left(*i, u)?;
                self.pinv.scale_col_right(*i, &ui)?;
            }
            ElementaryOp::Add { target, source, factor } => {
                self.d.add_row_left(*target, *source, factor)?;
                self.p.add_row_left(*target, *source, factor)?;
                self.pinv.add_col_right(*source, *target, &factor.neg())?;
            }
        }
        Ok(())
    }

    fn check_col_op(&self, op: &ElementaryOp) -> Result<()> {
        let n = self.d.cols();
        let (i, j) = match op {
            ElementaryOp::Swap { i, j } => (*i, *j),
            ElementaryOp::Scale { i, u } => {
                if !u.is_unit() {
                    return Err(Error::NotAUnit);
                }
                (*i, *i)
            }
            ElementaryOp::Add { target, source, .. } => {
                if target == source {
                    return Err(Error::IndexOutOfRange);
                }
                (*target, *source)
            }
        };
        if i >= n || j >= n {
            return Err(Error::IndexOutOfRange);
        }
        Ok(())
    }

    /// D <- D*F, Q <- Q*F, Qinv <- F^-1*Qinv for the elementary F.
    pub fn apply_col_op(&mut self, op: &ElementaryOp) -> Result<()> {
        self.check_col_op(op)?;
        match op {
            ElementaryOp::Swap { i, j } => {
                self.d.swap_cols(*i, *j);
                self.q.swap_cols(*i, *j);
                self.qinv.swap_rows(*i, *j);
            }
            ElementaryOp::Scale { i, u } => {
                let ui = u.unit_inverse()?;
                self.d.scale_col_right(*i, u)?;
                self.q.scale_col_right(*i, u)?;
                self.qinv.scale_row_left(*i, &ui)?;
            }
            ElementaryOp::Add { target, source, factor } => {
                self.d.add_col_right(*target, *source, factor)?;
                self.q.add_col_right(*target, *source, factor)?;
                self.qinv.add_row_left(*source, *target, &factor.neg())?;
            }
        }
        Ok(())
    }

    fn check_block(m: &Matrix, minv: &Matrix) -> Result<()> {
        if m.rows() != 2 || m.cols() != 2 || minv.rows() != 2 || minv.cols() != 2 {
            return Err(Error::DimensionMismatch);
        }
        if !m.mul(minv)?.is_identity() || !minv.mul(m)?.is_identity() {
            return Err(Error::NotInvertible);
        }
        Ok(())
    }

    /// Left-multiplies rows (i, j) by the verified invertible 2x2 block.
    pub fn apply_row_block(&mut self, i: usize, j: usize, m: &Matrix, minv: &Matrix) -> Result<()> {
        Self::check_block(m, minv)?;
        if i == j || i >= self.d.rows() || j >= self.d.rows() {
            return Err(Error::IndexOutOfRange);
        }
        for target in [&mut self.d, &mut self.p] {
            for c in 0..target.cols() {
                let a = target.at(i, c).clone();
                let b = target.at(j, c).clone();
                target.set(i, c, m.at(0, 0).mul(&a)?.add(&m.at(0, 1).mul(&b)?)?);
                target.set(j, c, m.at(1, 0).mul(&a)?.add(&m.at(1, 1).mul(&b)?)?);
            }
        }
        for r in 0..self.pinv.rows() {
            let a = self.pinv.at(r, i).clone();
            let b = self.pinv.at(r, j).clone();
            self.pinv.set(r, i, a.mul(minv.at(0, 0))?.add(&b.mul(minv.at(1, 0))?)?);
            self.pinv.set(r, j, a.mul(minv.at(0, 1))?.add(&b.mul(minv.at(1, 1))?)?);
        }
        Ok(())
    }

    /// Right-multiplies columns (i, j) by the verified invertible 2x2 block.
    pub fn apply_col_block(&mut self, i: usize, j: usize, m: &Matrix, minv: &Matrix) -> Result<()> {
        Self::check_block(m, minv)?;
        if i == j || i >= self.d.cols() || j >= self.d.cols() {
            return Err(Error::IndexOutOfRange);
        }
        for target in [&mut self.d, &mut self.q] {
            for r in 0..target.rows() {
                let a = target.at(r, i).clone();
                let b = target.at(r, j).clone();
                target.set(r, i, a.mul(m.at(0, 0))?.add(&b.mul(m.at(1, 0))?)?);
                target.set(r, j, a.mul(m.at(0, 1))?.add(&b.mul(m.at(1, 1))?)?);
            }
        }
        for c in 0..self.qinv.cols() {
            let a = self.qinv.at(i, c).clone();
            let b = self.qinv.at(j, c).clone();
            self.qinv.set(i, c, minv.at(0, 0).mul(&a)?.add(&minv.at(0, 1).mul(&b)?)?);
            self.qinv.set(j, c, minv.at(1, 0).mul(&a)?.add(&minv.at(1, 1).mul(&b)?)?);
        }
        Ok(())
    }

    /// Recomputes the four inverse identities and P*A*Q = D entrywise.
    pub fn verify(&self, a: &Matrix) -> Result<bool> {
        if self.p.rows() != a.rows() || self.q.rows() != a.cols() {
            return Err(Error::DimensionMismatch);
        }
        Ok(self.p.mul(&self.pinv)?.is_identity()
            && self.pinv.mul(&self.p)?.is_identity()
            && self.q.mul(&self.qinv)?.is_identity()
            && self.qinv.mul(&self.q)?.is_identity()
            && self.p.mul(a)?.mul(&self.q)? == self.d)
    }
}

pub fn verify_certificate(a: &Matrix, cert: &Certificate) -> Result<bool> {
    cert.verify(a)
}

/// True iff R*b*R is contained in aR intersect Ra. Commutative rings
/// reduce to plain divisibility; otherwise the two-sided generator b_*
/// of R*b*R must be divisible by a on both sides. Every a totally
/// divides 0, and units totally divide everything.
pub fn is_total_divisor(a: &Element, b: &Element) -> Result<bool> {
    if b.is_zero() {
        return Ok(true);
    }
    if a.is_zero() {
        return Ok(false);
    }
    if a.is_unit() {
        return Ok(true);
    }
    if a.ring().caps().commutative {
        return Ok(b.right_divide(a)?.is_some());
    }
    let bstar = two_sided_generator(b)?.a_star;
    Ok(bstar.right_divide(a)?.is_some() && bstar.left_divide(a)?.is_some())
}

/// Diagonal entries with the divisibility-chain and invariance flags
/// computed for them. Chain flag i asserts that diagonal[i] is a total
/// divisor of diagonal[i+1].
#[derive(Clone, Debug, PartialEq)]
pub struct DiagonalReport {
    pub diagonal: Vec<Element>,
    pub total_divisor_chain: Vec<bool>,
    pub invariant_flags: Vec<bool>,
}

impl DiagonalReport {
    /// Reads the diagonal of d and evaluates both flag lists.
    pub fn from_matrix(d: &Matrix) -> Result<DiagonalReport> {
        let n = d.rows().min(d.cols());
        let diagonal: Vec<Element> = (0..n).map(|i| d.at(i, i).clone()).collect();
        let mut total_divisor_chain = Vec::new();
        for i in 0..n.saturating_sub(1) {
            total_divisor_chain.push(is_total_divisor(&diagonal[i], &diagonal[i + 1])?);
        }
        let invariant_flags =
            diagonal.iter().map(is_invariant).collect::<Result<Vec<bool>>>()?;
        Ok(DiagonalReport { diagonal, total_divisor_chain, invariant_flags })
    }
}
