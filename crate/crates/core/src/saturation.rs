//! Degree-wise saturation `Ĵ` of the Jacobian ideal and the invariants read
//! off from it: the saturation defect module `SD = Ĵ/J`, the saturation
//! threshold, the defects of `Σ_f`, the a-invariant and the regularity of `M(f)`.
//!
//! A form `g ∈ S_k` lies in `Ĵ_k` iff `x_i^N g ∈ J_{k+N}` for every variable,
//! where `N` is chosen so that `k + N` reaches a degree `B` with `Ĵ_B = J_B`.
//! For isolated singularities `B = max(T - ct, st)` works; the chains
//! `{g : x_i^N g ∈ J}` only grow with `N`, so a single uniform exponent is enough.

use rayon::prelude::*;

use crate::error::{GradedError, SaturationError};
use crate::field::Field;
use crate::graded::{dim_s, IdealSlice, MonomialBasis};
use crate::linalg::{kernel, subspace_intersect, ExactMatrix, Subspace};
use crate::milnor::{Jacobian, MilnorProfile};

/// Degree from which `Ĵ_k = J_k` is guaranteed.
pub fn saturation_bound(t: i64, ct: Option<usize>, st: Option<usize>) -> Result<usize, SaturationError> {
    let st = st.ok_or_else(|| SaturationError::PreconditionViolated("stability threshold unknown".into()))?;
    let from_ct = ct.map_or(0, |c| (t - c as i64).max(0) as usize);
    Ok(from_ct.max(st))
}

/// Computes `Ĵ_k` for `k` below a fixed bound `B` against the reduced basis of `J_B`.
pub struct Saturator<'a, F: Field> {
    jac: &'a Jacobian<F>,
    bound: usize,
    j_bound: Subspace<F::Elem>,
    free_index: Vec<Option<usize>>,
    basis_bound: MonomialBasis,
}

impl<'a, F: Field> Saturator<'a, F> {
    pub fn new(jac: &'a Jacobian<F>, bound: usize, j_bound: Subspace<F::Elem>) -> Self {
        let free_index = j_bound.free_index();
        Self {
            jac,
            bound,
            basis_bound: MonomialBasis::new(jac.nvars(), bound as u32),
            j_bound,
            free_index,
        }
    }

    pub fn bound(&self) -> usize {
        self.bound
    }

    /// `{g ∈ S_k : x_i^N g ∈ J_B}` with `N = B - k`, as the kernel of
    /// `S_k → S_B / J_B`.
    pub fn colon_by_power(&self, k: usize, var: usize) -> Subspace<F::Elem> {
        let field = self.jac.field();
        let source = MonomialBasis::new(self.jac.nvars(), k as u32);
        let power = (self.bound - k) as u32;
        let quotient_dim = self.basis_bound.len() - self.j_bound.dim();
        let columns: Vec<Vec<F::Elem>> = source
            .monomials()
            .iter()
            .map(|m| {
                let c = self
                    .basis_bound
                    .index_of(&m.mul_var_pow(var, power))
                    .expect("degree B monomial");
                self.j_bound.quotient_image(field, c, &self.free_index)
            })
            .collect();
        if quotient_dim == 0 {
            return Subspace::full(field, source.len());
        }
        let mat = ExactMatrix::from_rows(columns, quotient_dim).transpose();
        kernel(field, &mat)
    }

    /// `Ĵ_k`; for `k ≥ B` this is `j_k` itself.
    pub fn slice(&self, k: usize, j_k: &Subspace<F::Elem>) -> Subspace<F::Elem> {
        if k >= self.bound {
            return j_k.clone();
        }
        let field = self.jac.field();
        let mut acc = self.colon_by_power(k, 0);
        for var in 1..self.jac.nvars() {
            if acc.dim() == 0 {
                break;
            }
            let next = self.colon_by_power(k, var);
            acc = subspace_intersect(field, &acc, &next).expect("same ambient");
        }
        acc
    }
}

/// `Ĵ_k` for one degree, computing the needed Jacobian slices on the spot.
pub fn saturation_slice<F: Field>(
    jac: &Jacobian<F>,
    k: usize,
    ct: Option<usize>,
    st: Option<usize>,
) -> Result<IdealSlice<F::Elem>, SatSliceError> {
    let bound = saturation_bound(jac.t(), ct, st)?;
    let j_k = jac.slice(k as u32)?;
    if k >= bound {
        return Ok(j_k);
    }
    let j_bound = jac.slice(bound as u32)?.space;
    let space = Saturator::new(jac, bound, j_bound).slice(k, &j_k.space);
    Ok(IdealSlice {
        degree: k as u32,
        space,
        generator_degrees: j_k.generator_degrees,
    })
}

#[derive(Debug, thiserror::Error)]
pub enum SatSliceError {
    #[error(transparent)]
    Saturation(#[from] SaturationError),
    #[error(transparent)]
    Graded(#[from] GradedError),
}

/// `dim SD(J)_k = dim Ĵ_k - dim J_k`.
pub fn sd_dims(hatj_dims: &[usize], j_dims: &[usize]) -> Vec<usize> {
    hatj_dims.iter().zip(j_dims).map(|(h, j)| h - j).collect()
}

/// Least `q` such that `SD_k = 0` for all recorded `k ≥ q`; 0 when SD vanishes.
pub fn sat_threshold(sd: &[usize]) -> usize {
    sd.iter().rposition(|&v| v != 0).map_or(0, |k| k + 1)
}

/// `defect_k Σ_f = τ - dim S_k / Ĵ_k`.
pub fn defect(tau: usize, nvars: usize, k: usize, hatj_dim: usize) -> i64 {
    tau as i64 - (dim_s(nvars, k as i64) as i64 - hatj_dim as i64)
}

/// Top degree of a nonzero defect (`H^1_m(M(f))`). Below degree 0 the defect
/// is `tau`, so this is `-1` when only negative degrees contribute and `None`
/// for smooth input.
pub fn a_invariant_definitional(defects: &[i64], tau: usize) -> Option<i64> {
    match defects.iter().rposition(|&v| v != 0) {
        Some(k) => Some(k as i64),
        None if tau > 0 => Some(-1),
        None => None,
    }
}

/// Definitional a-invariant, checked against `T - ct - 1`.
pub fn a_invariant(defects: &[i64], tau: usize, t: i64, ct: Option<usize>) -> Result<Option<i64>, SaturationError> {
    let computed = a_invariant_definitional(defects, tau);
    let closed_form = ct.map(|c| t - c as i64 - 1);
    if ct.is_some() && computed != closed_form {
        return Err(SaturationError::IdentityViolation {
            name: "a-invariant",
            computed,
            closed_form,
        });
    }
    Ok(computed)
}

/// `min{k : H^0_m(M)_{>k} = 0 and H^1_m(M)_{>k-1} = 0}`, i.e.
/// `max(top SD degree, a + 1)` with empty parts dropped.
pub fn regularity_definitional(sd: &[usize], a: Option<i64>) -> Option<i64> {
    let top_sd = sd.iter().rposition(|&v| v != 0).map(|k| k as i64);
    match (top_sd, a.map(|a| a + 1)) {
        (Some(x), Some(y)) => Some(x.max(y)),
        (x, y) => x.or(y),
    }
}

/// `max(T - ct, sat - 1)`.
pub fn regularity_closed_form(t: i64, ct: Option<usize>, sat: usize) -> Option<i64> {
    ct.map(|c| (t - c as i64).max(sat as i64 - 1))
}

/// Definitional regularity, checked against the closed form.
pub fn cm_regularity(sd: &[usize], a: Option<i64>, t: i64, ct: Option<usize>) -> Result<Option<i64>, SaturationError> {
    let computed = regularity_definitional(sd, a);
    let closed_form = regularity_closed_form(t, ct, sat_threshold(sd));
    if ct.is_some() && computed != closed_form {
        return Err(SaturationError::IdentityViolation {
            name: "regularity",
            computed,
            closed_form,
        });
    }
    Ok(computed)
}

/// `dim SD_k = dim SD_{T-k}` for `0 ≤ k ≤ T`.
pub fn gorenstein_symmetry_check(sd: &[usize], t: i64) -> bool {
    if t < 0 {
        return true;
    }
    let t = t as usize;
    (0..=t).all(|k| sd.get(k).copied().unwrap_or(0) == sd.get(t - k).copied().unwrap_or(0))
}

/// `dim SD_k ≤ dim SD_{k+1}` for `0 ≤ k < T/2`.
pub fn unimodality_check(sd: &[usize], t: i64) -> bool {
    (0..)
        .take_while(|&k: &i64| 2 * k < t)
        .all(|k| {
            let a = sd.get(k as usize).copied().unwrap_or(0);
            let b = sd.get(k as usize + 1).copied().unwrap_or(0);
            a <= b
        })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SaturationProfile {
    pub bound: usize,
    pub hatj_dims: Vec<usize>,
    pub sd_dims: Vec<usize>,
    pub sat: usize,
    pub defects: Vec<i64>,
    /// Definitional values; the closed forms sit next to them so a mismatch stays visible.
    pub a_invariant: Option<i64>,
    pub a_invariant_closed: Option<i64>,
    pub regularity: Option<i64>,
    pub regularity_closed: Option<i64>,
    /// Whether `J_k ⊆ Ĵ_k` held in every computed degree.
    pub j_inside_hatj: bool,
}

/// Saturation data for `k = 0..=kmax` given the Jacobian slices.
pub fn saturation_profile<F: Field>(
    jac: &Jacobian<F>,
    milnor: &MilnorProfile,
    j_slices: &[IdealSlice<F::Elem>],
) -> Result<(SaturationProfile, Vec<Subspace<F::Elem>>), SatSliceError> {
    let tau = milnor
        .tau
        .ok_or_else(|| SaturationError::PreconditionViolated("total Tjurina number unknown".into()))?;
    let t = milnor.t;
    let bound = saturation_bound(t, milnor.ct, milnor.st)?;
    let j_bound = match j_slices.get(bound) {
        Some(s) => s.space.clone(),
        None => jac.slice(bound as u32)?.space,
    };
    let saturator = Saturator::new(jac, bound, j_bound);
    let hatj: Vec<Subspace<F::Elem>> = j_slices
        .par_iter()
        .enumerate()
        .map(|(k, j)| saturator.slice(k, &j.space))
        .collect();
    let field = jac.field();
    let j_inside_hatj = hatj
        .iter()
        .zip(j_slices)
        .all(|(h, j)| h.contains_subspace(field, &j.space).expect("same ambient"));
    let hatj_dims: Vec<usize> = hatj.iter().map(Subspace::dim).collect();
    let j_dims: Vec<usize> = j_slices.iter().map(IdealSlice::dim).collect();
    let sd = sd_dims(&hatj_dims, &j_dims);
    let sat = sat_threshold(&sd);
    let defects: Vec<i64> = hatj_dims
        .iter()
        .enumerate()
        .map(|(k, &h)| defect(tau, jac.nvars(), k, h))
        .collect();
    let a = a_invariant_definitional(&defects, tau);
    let profile = SaturationProfile {
        bound,
        sat,
        a_invariant: a,
        a_invariant_closed: milnor.ct.map(|c| t - c as i64 - 1),
        regularity: regularity_definitional(&sd, a),
        regularity_closed: regularity_closed_form(t, milnor.ct, sat),
        hatj_dims,
        sd_dims: sd,
        defects,
        j_inside_hatj,
    };
    Ok((profile, hatj))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rationals;
    use crate::milnor::milnor_profile;
    use crate::parse::{parse_poly, parse_vars};

    fn run(text: &str, kmax: u32) -> (MilnorProfile, SaturationProfile) {
        let jac = Jacobian::new(Rationals, parse_poly(text, &parse_vars("x,y,z")).unwrap()).unwrap();
        let slices = jac.slices(kmax).unwrap();
        let m = milnor_profile(&jac, &slices);
        let (s, _) = saturation_profile(&jac, &m, &slices).unwrap();
        (m, s)
    }

    const CUSP: &str = "x^2*y^2 + y^2*z^2 + z^2*x^2 - 2*x*y*z*(x+y+z)";

    #[test]
    fn cusp_saturation() {
        let (_, s) = run(CUSP, 14);
        assert_eq!(&s.hatj_dims[..3], &[0, 0, 0]);
        for m in 3..=14usize {
            assert_eq!(s.hatj_dims[m], dim_s(3, m as i64) - 6, "m={m}");
        }
        assert_eq!(&s.defects[..4], &[5, 3, 0, 0]);
        assert_eq!(s.sat, 4);
        assert_eq!(&s.sd_dims[..8], &[0, 0, 0, 1, 0, 0, 0, 0]);
        assert_eq!(s.a_invariant, Some(1));
        assert_eq!(s.regularity, Some(3));
        assert_eq!(s.regularity_closed, Some(3));
        assert!(s.j_inside_hatj);
    }

    #[test]
    fn cusp_single_slice() {
        let jac = Jacobian::new(Rationals, parse_poly(CUSP, &parse_vars("x,y,z")).unwrap()).unwrap();
        assert_eq!(saturation_slice(&jac, 2, Some(4), Some(4)).unwrap().dim(), 0);
        assert_eq!(saturation_slice(&jac, 3, Some(4), Some(4)).unwrap().dim(), 4);
        assert!(matches!(
            saturation_slice(&jac, 3, Some(4), None),
            Err(SatSliceError::Saturation(SaturationError::PreconditionViolated(_)))
        ));
    }

    #[test]
    fn xyz_is_saturated() {
        let (_, s) = run("x*y*z", 11);
        assert!(s.sd_dims.iter().all(|&v| v == 0));
        assert_eq!(s.sat, 0);
        assert_eq!(s.a_invariant, Some(0));
        assert_eq!(s.regularity, Some(1));
    }

    #[test]
    fn line_plus_fermat_cubic() {
        let (_, s) = run("x*(x^3 + y^3 + z^3)", 14);
        assert_eq!(&s.sd_dims[..7], &[0, 1, 3, 4, 3, 1, 0]);
        assert!(gorenstein_symmetry_check(&s.sd_dims, 6));
        assert!(unimodality_check(&s.sd_dims, 6));
    }

    #[test]
    fn closed_form_checks() {
        assert_eq!(a_invariant(&[5, 3, 0, 0], 6, 6, Some(4)), Ok(Some(1)));
        assert!(a_invariant(&[5, 3, 1, 0], 6, 6, Some(4)).is_err());
        assert_eq!(cm_regularity(&[0, 0, 0, 1, 0], Some(1), 6, Some(4)), Ok(Some(3)));
        assert!(cm_regularity(&[0, 0, 0, 1, 0], Some(3), 6, Some(4)).is_err());
        assert_eq!(a_invariant(&[0, 0, 0, 0], 1, 3, Some(3)), Ok(Some(-1)));
        assert_eq!(a_invariant_definitional(&[0, 0], 0), None);
    }

    #[test]
    fn symmetry_and_unimodality() {
        assert!(gorenstein_symmetry_check(&[0, 0, 0, 1, 0, 0, 0], 6));
        assert!(!gorenstein_symmetry_check(&[0, 1, 0, 0, 0, 0, 0], 6));
        assert!(unimodality_check(&[0, 0, 0, 1, 0, 0, 0], 6));
        assert!(!unimodality_check(&[0, 2, 1, 2, 1, 2, 0], 6));
        assert!(unimodality_check(&[], 3));
    }
}
