use super::{Field, Matrix, Scalar};
use crate::error::{Error, Result};

/// A subspace of `F^n`, stored as a basis in reduced column echelon form.
///
/// The stored form is canonical, so equal subspaces compare equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace {
    basis: Matrix,
    pivots: Vec<usize>,
}

/// Binary operations on spans.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SpanOp {
    Sum,
    Intersection,
    Contains,
    Equal,
}

/// Result of [`span_op`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SpanResult {
    Span(Subspace),
    Bool(bool),
}

impl Subspace {
    /// Column span of `m`.
    pub fn span(m: &Matrix) -> Subspace {
        let (r, pivots) = m.transpose().rref();
        let rows: Vec<usize> = (0..pivots.len()).collect();
        Subspace { basis: r.select_rows(&rows).transpose(), pivots }
    }

    pub fn from_vectors(field: Field, ambient: usize, vs: &[Vec<Scalar>]) -> Result<Subspace> {
        Ok(Subspace::span(&Matrix::from_cols(field, ambient, vs)?))
    }

    pub fn zero(field: Field, ambient: usize) -> Subspace {
        Subspace { basis: Matrix::zeros(field, ambient, 0), pivots: vec![] }
    }

    pub fn full(field: Field, ambient: usize) -> Subspace {
        Subspace { basis: Matrix::identity(field, ambient), pivots: (0..ambient).collect() }
    }

    pub fn field(&self) -> Field {
        self.basis.field()
    }

    pub fn ambient(&self) -> usize {
        self.basis.rows()
    }

    pub fn dim(&self) -> usize {
        self.pivots.len()
    }

    pub fn is_zero(&self) -> bool {
        self.pivots.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient()
    }

    /// Basis columns in canonical form.
    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn basis_vectors(&self) -> Vec<Vec<Scalar>> {
        self.basis.columns()
    }

    /// Row index carrying the leading one of each basis column.
    pub fn pivot_rows(&self) -> &[usize] {
        &self.pivots
    }

    fn check_ambient(&self, other: &Subspace) -> Result<()> {
        if self.field() != other.field() {
            return Err(Error::FieldMismatch(self.field(), other.field()));
        }
        if self.ambient() != other.ambient() {
            return Err(Error::Shape(format!("subspaces of F^{} and F^{}", self.ambient(), other.ambient())));
        }
        Ok(())
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other)?;
        Ok(Subspace::span(&self.basis.hcat(&other.basis)?))
    }

    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other)?;
        if self.is_full() {
            return Ok(other.clone());
        }
        if other.is_full() {
            return Ok(self.clone());
        }
        let neg = other.basis.scale(&-&self.field().one());
        let k = self.basis.hcat(&neg)?.kernel();
        let top: Vec<usize> = (0..self.dim()).collect();
        Ok(Subspace::span(&self.basis.mul(&k.select_rows(&top))?))
    }

    /// `other ⊆ self`.
    pub fn contains(&self, other: &Subspace) -> Result<bool> {
        self.check_ambient(other)?;
        Ok(other.basis_vectors().iter().all(|v| self.contains_vec(v)))
    }

    pub fn contains_vec(&self, v: &[Scalar]) -> bool {
        self.coords(v).is_some()
    }

    /// Coordinates of `v` in the canonical basis, `None` when `v` is outside.
    pub fn coords(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        if v.len() != self.ambient() {
            return None;
        }
        let c: Vec<Scalar> = self.pivots.iter().map(|&r| v[r].clone()).collect();
        let back = self.basis.mul_vec(&c).ok()?;
        (back == v).then_some(c)
    }

    /// Vectors from `sup`'s basis completing `self` to a basis of `self + sup`.
    pub fn complement_in(&self, sup: &Subspace) -> Result<Vec<Vec<Scalar>>> {
        self.check_ambient(sup)?;
        let mut span = self.clone();
        let mut out = Vec::new();
        for v in sup.basis_vectors() {
            if !span.contains_vec(&v) {
                span = span.sum(&Subspace::from_vectors(self.field(), self.ambient(), &[v.clone()])?)?;
                out.push(v);
            }
        }
        Ok(out)
    }

    /// Image under a linear map `F^n -> F^m`.
    pub fn image(&self, map: &Matrix) -> Result<Subspace> {
        Ok(Subspace::span(&map.mul(&self.basis)?))
    }

    /// `{x : map x ∈ self}` for a map into the ambient space.
    pub fn preimage(&self, map: &Matrix) -> Result<Subspace> {
        if map.rows() != self.ambient() {
            return Err(Error::Shape("preimage along map with wrong codomain".into()));
        }
        if self.is_full() {
            return Ok(Subspace::full(self.field(), map.cols()));
        }
        let neg = self.basis.scale(&-&self.field().one());
        let k = map.hcat(&neg)?.kernel();
        let top: Vec<usize> = (0..map.cols()).collect();
        Ok(Subspace::span(&k.select_rows(&top)))
    }
}

/// Sum, intersection, containment (`b ⊆ a`) or equality of two spans.
pub fn span_op(a: &Subspace, b: &Subspace, op: SpanOp) -> Result<SpanResult> {
    Ok(match op {
        SpanOp::Sum => SpanResult::Span(a.sum(b)?),
        SpanOp::Intersection => SpanResult::Span(a.intersect(b)?),
        SpanOp::Contains => SpanResult::Bool(a.contains(b)?),
        SpanOp::Equal => {
            a.check_ambient(b)?;
            SpanResult::Bool(a == b)
        }
    })
}
