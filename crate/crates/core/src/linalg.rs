//! Dense exact matrices and subspaces in canonical reduced row-echelon form.

use crate::error::LinalgError;
use crate::field::Field;

/// Dense row-major matrix over a field's element type.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactMatrix<E> {
    rows: usize,
    cols: usize,
    entries: Vec<E>,
}

impl<E: Clone> ExactMatrix<E> {
    pub fn zeros<F: Field<Elem = E>>(field: &F, rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            entries: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity<F: Field<Elem = E>>(field: &F, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    /// Builds a matrix from row vectors; `cols` is needed when there are no rows.
    pub fn from_rows(rows: Vec<Vec<E>>, cols: usize) -> Self {
        let nrows = rows.len();
        let mut entries = Vec::with_capacity(nrows * cols);
        for row in rows {
            assert_eq!(row.len(), cols, "ragged rows");
            entries.extend(row);
        }
        Self {
            rows: nrows,
            cols,
            entries,
        }
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &E {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: E) {
        self.entries[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[E] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<E>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut entries = Vec::with_capacity(self.entries.len());
        for c in 0..self.cols {
            for r in 0..self.rows {
                entries.push(self.get(r, c).clone());
            }
        }
        Self {
            rows: self.cols,
            cols: self.rows,
            entries,
        }
    }
}

/// Reduced row-echelon form (zero rows dropped) and rank.
pub fn rref<F: Field>(field: &F, m: &ExactMatrix<F::Elem>) -> (ExactMatrix<F::Elem>, usize) {
    let mut rows = m.to_rows();
    let pivots = field.reduce_rows(&mut rows, m.ncols());
    let rank = pivots.len();
    (ExactMatrix::from_rows(rows, m.ncols()), rank)
}

pub fn rank<F: Field>(field: &F, m: &ExactMatrix<F::Elem>) -> usize {
    field.rank_of(m.to_rows(), m.ncols())
}

/// Null space `{v : m v = 0}` as a subspace of dimension `cols`.
pub fn kernel<F: Field>(field: &F, m: &ExactMatrix<F::Elem>) -> Subspace<F::Elem> {
    let cols = m.ncols();
    let (basis, pivots) = field.kernel_rows(m.to_rows(), cols);
    Subspace {
        ambient_dim: cols,
        basis: ExactMatrix::from_rows(basis, cols),
        pivots,
    }
}

/// A subspace of `E^ambient_dim` stored by its canonical RREF basis.
///
/// Basis rows are nonzero, pivot columns strictly increase, pivots are one and
/// pivot columns are zero elsewhere. Equal subspaces have identical bases.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subspace<E> {
    ambient_dim: usize,
    basis: ExactMatrix<E>,
    pivots: Vec<usize>,
}

impl<E: Clone> Subspace<E> {
    pub fn zero(ambient_dim: usize) -> Self {
        Self {
            ambient_dim,
            basis: ExactMatrix::from_rows(Vec::new(), ambient_dim),
            pivots: Vec::new(),
        }
    }

    pub fn full<F: Field<Elem = E>>(field: &F, ambient_dim: usize) -> Self {
        Self {
            ambient_dim,
            basis: ExactMatrix::identity(field, ambient_dim),
            pivots: (0..ambient_dim).collect(),
        }
    }

    /// Span of arbitrary vectors, canonicalized.
    pub fn span<F: Field<Elem = E>>(field: &F, ambient_dim: usize, mut vectors: Vec<Vec<E>>) -> Self {
        let pivots = field.reduce_rows(&mut vectors, ambient_dim);
        Self {
            ambient_dim,
            basis: ExactMatrix::from_rows(vectors, ambient_dim),
            pivots,
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.pivots.len()
    }

    pub fn basis(&self) -> &ExactMatrix<E> {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Reduces `v` against the basis; the result is zero exactly when `v` lies in the subspace.
    pub fn reduce<F: Field<Elem = E>>(&self, field: &F, v: &[E]) -> Vec<E> {
        let mut v = v.to_vec();
        for (r, &c) in self.pivots.iter().enumerate() {
            if field.is_zero(&v[c]) {
                continue;
            }
            let factor = v[c].clone();
            for (j, b) in self.basis.row(r).iter().enumerate() {
                if !field.is_zero(b) {
                    v[j] = field.sub(&v[j], &field.mul(&factor, b));
                }
            }
        }
        v
    }

    /// Coordinates of `e_c` in the quotient `E^ambient / self`, indexed by the
    /// non-pivot columns in increasing order.
    pub fn quotient_image<F: Field<Elem = E>>(&self, field: &F, c: usize, free_index: &[Option<usize>]) -> Vec<E> {
        let free_count = self.ambient_dim - self.dim();
        let mut out = vec![field.zero(); free_count];
        if let Some(k) = free_index[c] {
            out[k] = field.one();
            return out;
        }
        let r = self.pivots.binary_search(&c).expect("column is a pivot");
        for (j, b) in self.basis.row(r).iter().enumerate() {
            if let Some(k) = free_index[j] {
                if !field.is_zero(b) {
                    out[k] = field.neg(b);
                }
            }
        }
        out
    }

    /// Map from column to its position among the non-pivot columns.
    pub fn free_index(&self) -> Vec<Option<usize>> {
        let mut out = vec![None; self.ambient_dim];
        let mut next = 0;
        let mut pivots = self.pivots.iter().peekable();
        for (c, slot) in out.iter_mut().enumerate() {
            if pivots.peek() == Some(&&c) {
                pivots.next();
            } else {
                *slot = Some(next);
                next += 1;
            }
        }
        out
    }

    /// Whether every basis vector of `other` lies in `self`.
    pub fn contains_subspace<F: Field<Elem = E>>(&self, field: &F, other: &Subspace<E>) -> Result<bool, LinalgError> {
        check_ambient(self.ambient_dim, other.ambient_dim)?;
        Ok((0..other.dim()).all(|r| {
            self.reduce(field, other.basis.row(r))
                .iter()
                .all(|x| field.is_zero(x))
        }))
    }
}

fn check_ambient(left: usize, right: usize) -> Result<(), LinalgError> {
    if left != right {
        return Err(LinalgError::AmbientMismatch { left, right });
    }
    Ok(())
}

pub fn subspace_contains<F: Field>(field: &F, a: &Subspace<F::Elem>, v: &[F::Elem]) -> Result<bool, LinalgError> {
    check_ambient(a.ambient_dim, v.len())?;
    Ok(a.reduce(field, v).iter().all(|x| field.is_zero(x)))
}

pub fn subspace_sum<F: Field>(
    field: &F,
    a: &Subspace<F::Elem>,
    b: &Subspace<F::Elem>,
) -> Result<Subspace<F::Elem>, LinalgError> {
    check_ambient(a.ambient_dim, b.ambient_dim)?;
    let mut rows = a.basis.to_rows();
    rows.extend(b.basis.to_rows());
    Ok(Subspace::span(field, a.ambient_dim, rows))
}

/// Zassenhaus intersection: reduce `[a | a]` stacked on `[b | 0]`; rows whose
/// left half vanishes carry a basis of `a ∩ b` in their right half.
pub fn subspace_intersect<F: Field>(
    field: &F,
    a: &Subspace<F::Elem>,
    b: &Subspace<F::Elem>,
) -> Result<Subspace<F::Elem>, LinalgError> {
    check_ambient(a.ambient_dim, b.ambient_dim)?;
    let n = a.ambient_dim;
    if a.dim() == 0 || b.dim() == 0 {
        return Ok(Subspace::zero(n));
    }
    let mut rows = Vec::with_capacity(a.dim() + b.dim());
    for r in 0..a.dim() {
        let mut row = a.basis.row(r).to_vec();
        row.extend_from_slice(a.basis.row(r));
        rows.push(row);
    }
    for r in 0..b.dim() {
        let mut row = b.basis.row(r).to_vec();
        row.extend(std::iter::repeat_n(field.zero(), n));
        rows.push(row);
    }
    let pivots = field.reduce_rows(&mut rows, 2 * n);
    let meet: Vec<Vec<F::Elem>> = rows
        .into_iter()
        .zip(pivots)
        .filter(|(_, p)| *p >= n)
        .map(|(row, _)| row[n..].to_vec())
        .collect();
    Ok(Subspace::span(field, n, meet))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};
    use num_rational::BigRational;

    fn qm(rows: &[&[i64]]) -> ExactMatrix<BigRational> {
        let cols = rows.first().map_or(0, |r| r.len());
        ExactMatrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| Rationals.from_i64(x)).collect())
                .collect(),
            cols,
        )
    }

    fn qv(v: &[i64]) -> Vec<BigRational> {
        v.iter().map(|&x| Rationals.from_i64(x)).collect()
    }

    #[test]
    fn rref_examples() {
        let empty = ExactMatrix::<BigRational>::from_rows(vec![], 0);
        assert_eq!(rref(&Rationals, &empty).1, 0);
        assert_eq!(rref(&Rationals, &ExactMatrix::identity(&Rationals, 2)).1, 2);
        let (r, k) = rref(&Rationals, &qm(&[&[1, 2], &[2, 4]]));
        assert_eq!(k, 1);
        assert_eq!(r, qm(&[&[1, 2]]));
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(kernel(&Rationals, &ExactMatrix::identity(&Rationals, 4)).dim(), 0);
        let z = ExactMatrix::zeros(&Rationals, 3, 5);
        assert_eq!(kernel(&Rationals, &z).dim(), 5);
        let k = kernel(&Rationals, &qm(&[&[1, 1, 0]]));
        assert_eq!(k.dim(), 2);
        assert!(subspace_contains(&Rationals, &k, &qv(&[1, -1, 0])).unwrap());
        assert!(subspace_contains(&Rationals, &k, &qv(&[2, -2, 0])).unwrap());
        assert!(!subspace_contains(&Rationals, &k, &qv(&[1, 1, 0])).unwrap());
    }

    #[test]
    fn intersection_examples() {
        let f = Rationals;
        let a = Subspace::span(&f, 3, vec![qv(&[1, 0, 0]), qv(&[0, 1, 0])]);
        let b = Subspace::span(&f, 3, vec![qv(&[0, 1, 0]), qv(&[0, 0, 1])]);
        assert_eq!(subspace_intersect(&f, &a, &a).unwrap(), a);
        assert_eq!(
            subspace_intersect(&f, &a, &b).unwrap(),
            Subspace::span(&f, 3, vec![qv(&[0, 1, 0])])
        );
        let x = Subspace::span(&f, 2, vec![qv(&[1, 0])]);
        let y = Subspace::span(&f, 2, vec![qv(&[0, 1])]);
        assert_eq!(subspace_intersect(&f, &x, &y).unwrap().dim(), 0);
        assert!(matches!(
            subspace_intersect(&f, &x, &a),
            Err(LinalgError::AmbientMismatch { .. })
        ));
    }

    #[test]
    fn containment_examples() {
        let f = Rationals;
        let y = Subspace::span(&f, 2, vec![qv(&[0, 1])]);
        assert!(subspace_contains(&f, &y, &qv(&[0, 0])).unwrap());
        assert!(!subspace_contains(&f, &y, &qv(&[1, 0])).unwrap());
        assert!(subspace_contains(&f, &y, &qv(&[1, 0, 0])).is_err());
    }

    #[test]
    fn quotient_image_matches_reduction() {
        let f = PrimeField::new(101).unwrap();
        let rows = vec![vec![1, 2, 0, 3], vec![0, 0, 1, 5]];
        let s = Subspace::span(&f, 4, rows);
        let free = s.free_index();
        assert_eq!(free, vec![None, Some(0), None, Some(1)]);
        // e_0 ≡ -2 e_1 - 3 e_3 modulo the span
        assert_eq!(s.quotient_image(&f, 0, &free), vec![99, 98]);
        assert_eq!(s.quotient_image(&f, 3, &free), vec![0, 1]);
    }
}
