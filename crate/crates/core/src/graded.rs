//! Degree-truncated linear algebra on the graded polynomial ring.

use std::collections::HashMap;

use rayon::prelude::*;

use crate::error::GradedError;
use crate::field::Field;
use crate::linalg::{ExactMatrix, Subspace};
use crate::poly::{HomogPoly, Monomial};

/// All monomials of one degree, in strictly increasing lex order.
#[derive(Debug, Clone)]
pub struct MonomialBasis {
    nvars: usize,
    degree: u32,
    monomials: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
}

impl MonomialBasis {
    pub fn new(nvars: usize, degree: u32) -> Self {
        let mut monomials = Vec::with_capacity(dim_s(nvars, degree as i64));
        let mut current = vec![0u32; nvars];
        fill(&mut current, 0, degree, &mut monomials);
        let index = monomials.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
        Self {
            nvars,
            degree,
            monomials,
            index,
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn monomials(&self) -> &[Monomial] {
        &self.monomials
    }

    pub fn index_of(&self, m: &Monomial) -> Option<usize> {
        self.index.get(m).copied()
    }
}

// first exponent ascending outermost gives lex-increasing output
fn fill(current: &mut Vec<u32>, pos: usize, remaining: u32, out: &mut Vec<Monomial>) {
    if current.is_empty() {
        return;
    }
    if pos == current.len() - 1 {
        current[pos] = remaining;
        out.push(Monomial(current.clone()));
        return;
    }
    for e in 0..=remaining {
        current[pos] = e;
        fill(current, pos + 1, remaining - e, out);
    }
    current[pos] = 0;
}

pub fn monomial_basis(nvars: usize, k: u32) -> MonomialBasis {
    MonomialBasis::new(nvars, k)
}

/// `dim S_k = binomial(k + nvars - 1, nvars - 1)`, zero for negative `k`.
pub fn dim_s(nvars: usize, k: i64) -> usize {
    if k < 0 || nvars == 0 {
        return 0;
    }
    binomial(k as u64 + nvars as u64 - 1, nvars as u64 - 1) as usize
}

pub fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

/// Coefficient vectors of `m * g` for every monomial `m` of degree `k - deg g`,
/// generator by generator. Generators of degree above `k` contribute nothing.
fn product_vectors<F: Field>(
    field: &F,
    nvars: usize,
    gens: &[HomogPoly],
    k: u32,
    target: &MonomialBasis,
) -> Result<Vec<Vec<F::Elem>>, GradedError> {
    let mut out = Vec::new();
    for g in gens.iter().filter(|g| g.degree() <= k) {
        let terms = g.terms_in(field)?;
        let shifts = MonomialBasis::new(nvars, k - g.degree());
        for m in shifts.monomials() {
            let mut v = vec![field.zero(); target.len()];
            for (t, c) in &terms {
                let idx = target.index_of(&t.mul(m)).expect("product has degree k");
                v[idx] = c.clone();
            }
            out.push(v);
        }
    }
    Ok(out)
}

/// Matrix of the map `⊕_j S_{k - deg g_j} → S_k`, `(a_j) ↦ Σ a_j g_j`.
///
/// Rows are indexed by the degree-`k` monomials; columns by pairs
/// `(g_j, m)` with `j` outermost and `m` in lex order.
pub fn multiplication_matrix<F: Field>(
    field: &F,
    nvars: usize,
    gens: &[HomogPoly],
    k: u32,
) -> Result<ExactMatrix<F::Elem>, GradedError> {
    if let Some(g) = gens.iter().find(|g| g.degree() > k) {
        return Err(GradedError::DegreeTooLow {
            generator_degree: g.degree(),
            degree: k,
        });
    }
    let target = MonomialBasis::new(nvars, k);
    let columns = product_vectors(field, nvars, gens, k, &target)?;
    Ok(ExactMatrix::from_rows(columns, target.len()).transpose())
}

/// Degree-`k` component of an ideal given by homogeneous generators.
#[derive(Debug, Clone)]
pub struct IdealSlice<E> {
    pub degree: u32,
    pub space: Subspace<E>,
    pub generator_degrees: Vec<u32>,
}

impl<E: Clone> IdealSlice<E> {
    pub fn dim(&self) -> usize {
        self.space.dim()
    }
}

pub fn ideal_slice<F: Field>(
    field: &F,
    nvars: usize,
    gens: &[HomogPoly],
    k: u32,
) -> Result<IdealSlice<F::Elem>, GradedError> {
    let target = MonomialBasis::new(nvars, k);
    let rows = product_vectors(field, nvars, gens, k, &target)?;
    Ok(IdealSlice {
        degree: k,
        space: Subspace::span(field, target.len(), rows),
        generator_degrees: gens.iter().map(HomogPoly::degree).collect(),
    })
}

/// Dimension of the degree-`k` component only (skips back-substitution).
pub fn ideal_slice_dim<F: Field>(field: &F, nvars: usize, gens: &[HomogPoly], k: u32) -> Result<usize, GradedError> {
    let target = MonomialBasis::new(nvars, k);
    let rows = product_vectors(field, nvars, gens, k, &target)?;
    Ok(field.rank_of(rows, target.len()))
}

/// Hilbert function of a graded module truncated at a maximal degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HilbertFunction {
    pub dims: Vec<usize>,
    pub stable_value: Option<usize>,
    pub stable_from: Option<usize>,
}

impl HilbertFunction {
    /// Detects a stable value when the last `window` recorded dims agree;
    /// `stable_from` is then the start of the final constant run.
    pub fn from_dims(dims: Vec<usize>, window: usize) -> Self {
        let mut stable_value = None;
        let mut stable_from = None;
        if let Some(&last) = dims.last() {
            let run = dims.iter().rev().take_while(|&&v| v == last).count();
            if run >= window.max(1) {
                stable_value = Some(last);
                stable_from = Some(dims.len() - run);
            }
        }
        Self {
            dims,
            stable_value,
            stable_from,
        }
    }

    pub fn kmax(&self) -> usize {
        self.dims.len().saturating_sub(1)
    }

    pub fn get(&self, k: usize) -> Option<usize> {
        self.dims.get(k).copied()
    }
}

/// `dim (S/I)_k` for `k = 0..=kmax`, slices computed in parallel.
pub fn hilbert_function_of_quotient<F: Field>(
    field: &F,
    nvars: usize,
    gens: &[HomogPoly],
    kmax: u32,
) -> Result<HilbertFunction, GradedError> {
    let dims = (0..=kmax)
        .into_par_iter()
        .map(|k| Ok(dim_s(nvars, k as i64) - ideal_slice_dim(field, nvars, gens, k)?))
        .collect::<Result<Vec<_>, GradedError>>()?;
    Ok(HilbertFunction::from_dims(dims, nvars + 1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};
    use crate::linalg::rank;

    fn partials_of_xyz() -> Vec<HomogPoly> {
        HomogPoly::from_int_terms(3, 3, &[(&[1, 1, 1], 1)])
            .unwrap()
            .partial_derivatives()
    }

    #[test]
    fn basis_sizes_and_order() {
        assert_eq!(monomial_basis(3, 0).len(), 1);
        assert_eq!(monomial_basis(3, 2).len(), 6);
        assert_eq!(monomial_basis(4, 3).len(), 20);
        let b = monomial_basis(3, 2);
        assert!(b.monomials().windows(2).all(|w| w[0] < w[1]));
        assert_eq!(b.monomials()[0], Monomial(vec![0, 0, 2]));
        assert_eq!(b.monomials()[5], Monomial(vec![2, 0, 0]));
        for nvars in 1..5 {
            for k in 0..8 {
                assert_eq!(monomial_basis(nvars, k).len(), dim_s(nvars, k as i64));
            }
        }
    }

    #[test]
    fn xyz_multiplication_matrix() {
        // yz, xz, xy are distinct monomials of S_2: a 6x3 matrix with one 1 per column
        let m = multiplication_matrix(&Rationals, 3, &partials_of_xyz(), 2).unwrap();
        assert_eq!((m.nrows(), m.ncols()), (6, 3));
        let ones = (0..6)
            .flat_map(|r| (0..3).map(move |c| (r, c)))
            .filter(|&(r, c)| *m.get(r, c) == Rationals.one())
            .count();
        assert_eq!(ones, 3);
        assert_eq!(rank(&Rationals, &m), 3);
    }

    #[test]
    fn single_linear_generator() {
        let x = HomogPoly::from_int_terms(2, 1, &[(&[1, 0], 1)]).unwrap();
        let m = multiplication_matrix(&Rationals, 2, &[x], 1).unwrap();
        assert_eq!((m.nrows(), m.ncols()), (2, 1));
        assert_eq!(rank(&Rationals, &m), 1);
    }

    #[test]
    fn degree_too_low() {
        assert!(matches!(
            multiplication_matrix(&Rationals, 3, &partials_of_xyz(), 1),
            Err(GradedError::DegreeTooLow { .. })
        ));
    }

    #[test]
    fn slices() {
        assert_eq!(ideal_slice(&Rationals, 3, &partials_of_xyz(), 2).unwrap().dim(), 3);
        assert_eq!(ideal_slice(&Rationals, 3, &partials_of_xyz(), 1).unwrap().dim(), 0);
        // (xy, z^3) at degree 3: x^2y, xy^2, xyz, z^3
        let gens = [
            HomogPoly::from_int_terms(3, 2, &[(&[1, 1, 0], 1)]).unwrap(),
            HomogPoly::from_int_terms(3, 3, &[(&[0, 0, 3], 1)]).unwrap(),
        ];
        assert_eq!(ideal_slice(&Rationals, 3, &gens, 3).unwrap().dim(), 4);
    }

    #[test]
    fn xyz_quotient() {
        let h = hilbert_function_of_quotient(&Rationals, 3, &partials_of_xyz(), 8).unwrap();
        assert_eq!(h.dims, vec![1, 3, 3, 3, 3, 3, 3, 3, 3]);
        assert_eq!(h.stable_value, Some(3));
        assert_eq!(h.stable_from, Some(1));
        let hp = hilbert_function_of_quotient(&PrimeField::new(101).unwrap(), 3, &partials_of_xyz(), 8).unwrap();
        assert_eq!(hp, h);
    }

    #[test]
    fn stable_detection_needs_window() {
        let h = HilbertFunction::from_dims(vec![1, 3, 5, 7, 7], 4);
        assert_eq!(h.stable_value, None);
        let h = HilbertFunction::from_dims(vec![1, 3, 5, 7, 7, 7, 7], 4);
        assert_eq!((h.stable_value, h.stable_from), (Some(7), Some(3)));
    }
}
