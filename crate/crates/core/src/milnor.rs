//! Milnor algebra `M(f) = S/J_f`: graded dimensions, the smooth reference
//! series, the total Tjurina number and the coincidence/stability thresholds.

use rayon::prelude::*;

use crate::error::{GradedError, MilnorError};
use crate::field::Field;
use crate::graded::{binomial, dim_s, ideal_slice, HilbertFunction, IdealSlice};
use crate::poly::HomogPoly;

/// A form `f` together with its partial derivatives over a chosen field.
#[derive(Debug, Clone)]
pub struct Jacobian<F: Field> {
    field: F,
    f: HomogPoly,
    partials: Vec<HomogPoly>,
}

impl<F: Field> Jacobian<F> {
    /// Fails if a coefficient of `f` has no image in `field`.
    pub fn new(field: F, f: HomogPoly) -> Result<Self, GradedError> {
        f.terms_in(&field)?;
        let partials = f.partial_derivatives();
        Ok(Self { field, f, partials })
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn poly(&self) -> &HomogPoly {
        &self.f
    }

    pub fn partials(&self) -> &[HomogPoly] {
        &self.partials
    }

    pub fn nvars(&self) -> usize {
        self.f.nvars()
    }

    /// `n` for a hypersurface in `P^n`.
    pub fn n(&self) -> usize {
        self.f.nvars() - 1
    }

    pub fn degree(&self) -> u32 {
        self.f.degree()
    }

    /// `T = (n+1)(d-2)`, the top degree of the smooth Milnor algebra.
    pub fn t(&self) -> i64 {
        (self.n() as i64 + 1) * (self.degree() as i64 - 2)
    }

    /// `J_k`.
    pub fn slice(&self, k: u32) -> Result<IdealSlice<F::Elem>, GradedError> {
        ideal_slice(&self.field, self.nvars(), &self.partials, k)
    }

    /// `J_0, ..., J_kmax`, computed in parallel.
    pub fn slices(&self, kmax: u32) -> Result<Vec<IdealSlice<F::Elem>>, GradedError> {
        (0..=kmax).into_par_iter().map(|k| self.slice(k)).collect()
    }
}

/// Coefficient of `t^k` in `(1 - t^{d-1})^{n+1} / (1 - t)^{n+1}`.
pub fn smooth_series_coeff(n: usize, d: u32, k: i64) -> i64 {
    if k < 0 {
        return 0;
    }
    let step = d as i64 - 1;
    let mut acc: i128 = 0;
    for j in 0..=(n as i64 + 1) {
        let rest = k - j * step;
        if rest < 0 {
            break;
        }
        let term = binomial(n as u64 + 1, j as u64) as i128 * dim_s(n + 1, rest) as i128;
        acc += if j % 2 == 0 { term } else { -term };
    }
    acc as i64
}

/// `dim M(f)_k`.
pub fn milnor_dim<F: Field>(jac: &Jacobian<F>, k: u32) -> Result<usize, GradedError> {
    Ok(dim_s(jac.nvars(), k as i64) - jac.slice(k)?.dim())
}

/// Stable value of the Milnor dimensions.
pub fn total_tjurina(dims: &HilbertFunction) -> Result<usize, MilnorError> {
    dims.stable_value.ok_or(MilnorError::NotStabilized { kmax: dims.kmax() })
}

/// Least `q` with `dim M(f)_k = τ` for every recorded `k ≥ q`.
pub fn stability_threshold(dims: &HilbertFunction) -> Result<usize, MilnorError> {
    dims.stable_from.ok_or(MilnorError::NotStabilized { kmax: dims.kmax() })
}

/// Largest `q` with `dim M(f)_k = dim M(f_s)_k` for all `k ≤ q`.
pub fn coincidence_threshold(dims: &HilbertFunction, smooth: &[i64]) -> Result<usize, MilnorError> {
    let agree = dims
        .dims
        .iter()
        .zip(smooth)
        .take_while(|(a, b)| **a as i64 == **b)
        .count();
    if agree == dims.dims.len() {
        return Err(MilnorError::SmoothInput);
    }
    // dim M_0 = dim M(f_s)_0 = 1, so agree >= 1
    Ok(agree.saturating_sub(1))
}

pub const ISOLATED_METHOD: &str = "heuristic-window";

/// Outcome of the isolatedness heuristic.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IsolatedCheck {
    pub isolated: bool,
    pub method: &'static str,
}

/// Dimensions constant on `[T+1, T+n+2]`. Not a proof of isolatedness.
pub fn isolated_check(dims: &HilbertFunction, t: i64, n: usize) -> IsolatedCheck {
    let lo = (t + 1).max(0) as usize;
    let hi = lo + n + 1;
    let isolated = hi < dims.dims.len() && dims.dims[lo..=hi].iter().all(|&v| v == dims.dims[lo]);
    IsolatedCheck {
        isolated,
        method: ISOLATED_METHOD,
    }
}

/// Everything the Milnor algebra tells us about `f` up to a truncation degree.
#[derive(Debug, Clone)]
pub struct MilnorProfile {
    pub d: u32,
    pub n: usize,
    pub t: i64,
    pub milnor: HilbertFunction,
    pub smooth: Vec<i64>,
    pub isolated: IsolatedCheck,
    /// `None` when the dimensions did not stabilize.
    pub tau: Option<usize>,
    pub st: Option<usize>,
    /// `None` for smooth or non-isolated inputs.
    pub ct: Option<usize>,
}

impl MilnorProfile {
    pub fn from_dims(n: usize, d: u32, dims: Vec<usize>) -> Self {
        let t = (n as i64 + 1) * (d as i64 - 2);
        let kmax = dims.len().saturating_sub(1);
        let milnor = HilbertFunction::from_dims(dims, n + 2);
        let smooth: Vec<i64> = (0..=kmax as i64).map(|k| smooth_series_coeff(n, d, k)).collect();
        let isolated = isolated_check(&milnor, t, n);
        let (tau, st, ct) = if isolated.isolated {
            let tau = total_tjurina(&milnor).ok();
            let st = stability_threshold(&milnor).ok();
            let ct = match tau {
                Some(0) | None => None,
                Some(_) => coincidence_threshold(&milnor, &smooth).ok(),
            };
            (tau, st, ct)
        } else {
            (None, None, None)
        };
        Self {
            d,
            n,
            t,
            milnor,
            smooth,
            isolated,
            tau,
            st,
            ct,
        }
    }

    pub fn is_smooth(&self) -> bool {
        self.tau == Some(0)
    }

    pub fn dim(&self, k: i64) -> Option<usize> {
        if k < 0 {
            return Some(0);
        }
        self.milnor.get(k as usize)
    }

    pub fn smooth_dim(&self, k: i64) -> i64 {
        smooth_series_coeff(self.n, self.d, k)
    }
}

/// Profile from freshly computed slices `J_0..J_kmax`.
pub fn milnor_profile<F: Field>(jac: &Jacobian<F>, slices: &[IdealSlice<F::Elem>]) -> MilnorProfile {
    let dims = slices
        .iter()
        .enumerate()
        .map(|(k, s)| dim_s(jac.nvars(), k as i64) - s.dim())
        .collect();
    MilnorProfile::from_dims(jac.n(), jac.degree(), dims)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rationals;
    use crate::parse::{parse_poly, parse_vars};

    fn jac(text: &str) -> Jacobian<Rationals> {
        Jacobian::new(Rationals, parse_poly(text, &parse_vars("x,y,z")).unwrap()).unwrap()
    }

    #[test]
    fn smooth_series_quartic() {
        let v: Vec<i64> = (0..=7).map(|k| smooth_series_coeff(2, 4, k)).collect();
        assert_eq!(v, vec![1, 3, 6, 7, 6, 3, 1, 0]);
        assert_eq!(smooth_series_coeff(5, 7, 0), 1);
        assert_eq!(smooth_series_coeff(2, 3, 2), 3);
        assert_eq!(smooth_series_coeff(2, 3, 3), 1);
        assert_eq!(smooth_series_coeff(2, 3, 4), 0);
    }

    #[test]
    fn smooth_series_matches_polynomial_expansion() {
        // multiply out (1 + t + ... + t^{d-2})^{n+1} directly
        for n in 1..4usize {
            for d in 2..6u32 {
                let mut coeffs = vec![1i64];
                for _ in 0..=n {
                    let mut next = vec![0i64; coeffs.len() + d as usize - 2];
                    for (i, c) in coeffs.iter().enumerate() {
                        for j in 0..(d as usize - 1) {
                            next[i + j] += c;
                        }
                    }
                    coeffs = next;
                }
                for k in 0..20 {
                    let expect = coeffs.get(k).copied().unwrap_or(0);
                    assert_eq!(smooth_series_coeff(n, d, k as i64), expect, "n={n} d={d} k={k}");
                }
            }
        }
    }

    #[test]
    fn milnor_dims_examples() {
        let cusp = jac("x^2*y^2 + y^2*z^2 + z^2*x^2 - 2*x*y*z*(x+y+z)");
        assert_eq!(milnor_dim(&cusp, 3).unwrap(), 7);
        assert_eq!(milnor_dim(&cusp, 6).unwrap(), 6);
        assert_eq!(milnor_dim(&jac("x*y*z"), 2).unwrap(), 3);
    }

    #[test]
    fn thresholds_for_examples() {
        let xyz = jac("x*y*z");
        let p = milnor_profile(&xyz, &xyz.slices(11).unwrap());
        assert_eq!((p.tau, p.st, p.ct), (Some(3), Some(1), Some(2)));

        let cusp = jac("x^2*y^2 + y^2*z^2 + z^2*x^2 - 2*x*y*z*(x+y+z)");
        let p = milnor_profile(&cusp, &cusp.slices(14).unwrap());
        assert_eq!((p.tau, p.st, p.ct), (Some(6), Some(4), Some(4)));

        let fermat = jac("x^4 + y^4 + z^4");
        let p = milnor_profile(&fermat, &fermat.slices(14).unwrap());
        assert!(p.is_smooth());
        assert_eq!(p.ct, None);
        assert_eq!(
            coincidence_threshold(&p.milnor, &p.smooth),
            Err(MilnorError::SmoothInput)
        );
    }

    #[test]
    fn non_isolated_detected() {
        let f = jac("x^2*y^2");
        let p = milnor_profile(&f, &f.slices(14).unwrap());
        assert!(!p.isolated.isolated);
        assert_eq!(p.isolated.method, ISOLATED_METHOD);
        assert_eq!(p.tau, None);
        assert!(total_tjurina(&p.milnor).is_err());
    }
}
