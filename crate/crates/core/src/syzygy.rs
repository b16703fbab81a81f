//! Relations among the partial derivatives.
//!
//! `AR(f)_m` is the kernel of `(S_m)^{n+1} → S_{m+d-1}`, `(a_i) ↦ Σ a_i f_i`.
//! `KR(f)_m` is spanned by `b·t_ij` where `t_ij` has `f_j` in slot `i` and
//! `-f_i` in slot `j`. `ER(f) = AR(f)/KR(f)`.

use rayon::prelude::*;

use crate::error::GradedError;
use crate::field::Field;
use crate::graded::{dim_s, multiplication_matrix, MonomialBasis};
use crate::linalg::{kernel, Subspace};
use crate::milnor::{Jacobian, MilnorProfile};

/// Both relation spaces in one degree, in coordinates of `(S_m)^{n+1}`
/// (block `i` holds the coefficients of `a_i`).
#[derive(Debug, Clone)]
pub struct RelationSlice<E> {
    pub degree: u32,
    pub all: Subspace<E>,
    pub koszul: Subspace<E>,
}

impl<E: Clone> RelationSlice<E> {
    pub fn er_dim(&self) -> usize {
        self.all.dim() - self.koszul.dim()
    }
}

/// `AR(f)_m` via an explicit kernel computation.
pub fn all_relations<F: Field>(jac: &Jacobian<F>, m: u32) -> Result<Subspace<F::Elem>, GradedError> {
    let target = m + jac.degree() - 1;
    let mat = multiplication_matrix(jac.field(), jac.nvars(), jac.partials(), target)?;
    Ok(kernel(jac.field(), &mat))
}

/// `KR(f)_m`, spanned by monomial multiples of the Koszul relations.
pub fn koszul_relations<F: Field>(jac: &Jacobian<F>, m: u32) -> Result<Subspace<F::Elem>, GradedError> {
    let field = jac.field();
    let nvars = jac.nvars();
    let block = dim_s(nvars, m as i64);
    let ambient = nvars * block;
    let gen_degree = jac.degree() - 1;
    if m < gen_degree {
        return Ok(Subspace::zero(ambient));
    }
    let target = MonomialBasis::new(nvars, m);
    let shifts = MonomialBasis::new(nvars, m - gen_degree);
    let partials: Vec<_> = jac
        .partials()
        .iter()
        .map(|p| p.terms_in(field))
        .collect::<Result<_, _>>()?;
    let mut rows = Vec::new();
    for i in 0..nvars {
        for j in (i + 1)..nvars {
            for b in shifts.monomials() {
                let mut v = vec![field.zero(); ambient];
                for (t, c) in &partials[j] {
                    v[i * block + target.index_of(&t.mul(b)).expect("degree m")] = c.clone();
                }
                for (t, c) in &partials[i] {
                    v[j * block + target.index_of(&t.mul(b)).expect("degree m")] = field.neg(c);
                }
                rows.push(v);
            }
        }
    }
    Ok(Subspace::span(field, ambient, rows))
}

pub fn relation_slice<F: Field>(jac: &Jacobian<F>, m: u32) -> Result<RelationSlice<F::Elem>, GradedError> {
    Ok(RelationSlice {
        degree: m,
        all: all_relations(jac, m)?,
        koszul: koszul_relations(jac, m)?,
    })
}

pub fn ar_dim<F: Field>(jac: &Jacobian<F>, m: u32) -> Result<usize, GradedError> {
    Ok(all_relations(jac, m)?.dim())
}

pub fn kr_dim<F: Field>(jac: &Jacobian<F>, m: u32) -> Result<usize, GradedError> {
    Ok(koszul_relations(jac, m)?.dim())
}

pub fn er_dim<F: Field>(jac: &Jacobian<F>, m: u32) -> Result<usize, GradedError> {
    Ok(relation_slice(jac, m)?.er_dim())
}

/// `dim H^n(K*(f))_j = dim M(f)_{j+d-n-1} - dim M(f_s)_{j+d-n-1}`, computed
/// from Milnor dimensions alone. `None` when the degree is past the profile.
pub fn koszul_hn_dim(profile: &MilnorProfile, j: i64) -> Option<i64> {
    let k = j + profile.d as i64 - profile.n as i64 - 1;
    let m = profile.dim(k)? as i64;
    Some(m - profile.smooth_dim(k))
}

/// Degree-wise relation dimensions for `m = 0..=mmax`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SyzygyProfile {
    pub ar: Vec<usize>,
    pub kr: Vec<usize>,
    pub er: Vec<usize>,
    /// `None` when no essential relation exists up to the search cap.
    pub mdr: Option<usize>,
    /// Whether `KR(f)_m ⊆ AR(f)_m` held in every computed degree.
    pub koszul_inside_all: bool,
}

/// Computes relation slices in parallel; `mdr` is searched over `m ≤ cap`.
pub fn syzygy_profile<F: Field>(jac: &Jacobian<F>, mmax: u32, cap: i64) -> Result<SyzygyProfile, GradedError> {
    let slices: Vec<RelationSlice<F::Elem>> = (0..=mmax)
        .into_par_iter()
        .map(|m| relation_slice(jac, m))
        .collect::<Result<_, _>>()?;
    let field = jac.field();
    let koszul_inside_all = slices.iter().all(|s| {
        s.all
            .contains_subspace(field, &s.koszul)
            .expect("same ambient")
    });
    let ar: Vec<usize> = slices.iter().map(|s| s.all.dim()).collect();
    let kr: Vec<usize> = slices.iter().map(|s| s.koszul.dim()).collect();
    let er: Vec<usize> = slices.iter().map(RelationSlice::er_dim).collect();
    let mdr = er
        .iter()
        .enumerate()
        .take_while(|(m, _)| (*m as i64) <= cap)
        .find(|(_, &e)| e > 0)
        .map(|(m, _)| m);
    Ok(SyzygyProfile {
        ar,
        kr,
        er,
        mdr,
        koszul_inside_all,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};
    use crate::linalg::subspace_contains;
    use crate::parse::{parse_poly, parse_vars};

    fn jac(text: &str) -> Jacobian<Rationals> {
        Jacobian::new(Rationals, parse_poly(text, &parse_vars("x,y,z")).unwrap()).unwrap()
    }

    #[test]
    fn xyz_relations() {
        let f = jac("x*y*z");
        assert_eq!(ar_dim(&f, 0).unwrap(), 0);
        assert_eq!(ar_dim(&f, 1).unwrap(), 2);
        assert_eq!(kr_dim(&f, 1).unwrap(), 0);
        assert_eq!(er_dim(&f, 1).unwrap(), 2);
        // S_1 basis is z, y, x; x*(yz) - y*(xz) = 0 is the vector (x, -y, 0)
        let ar = all_relations(&f, 1).unwrap();
        let q = |v: i64| Rationals.from_i64(v);
        let v = vec![q(0), q(0), q(1), q(0), q(-1), q(0), q(0), q(0), q(0)];
        assert!(subspace_contains(&Rationals, &ar, &v).unwrap());
        let w = vec![q(0), q(0), q(1), q(0), q(0), q(0), q(-1), q(0), q(0)];
        assert!(subspace_contains(&Rationals, &ar, &w).unwrap());
    }

    #[test]
    fn smooth_has_only_koszul_relations() {
        let f = jac("x^4 + y^4 + z^4");
        for m in 0..3 {
            assert_eq!(ar_dim(&f, m).unwrap(), 0);
        }
        assert_eq!(kr_dim(&f, 3).unwrap(), 3);
        for m in 0..7 {
            assert_eq!(er_dim(&f, m).unwrap(), 0, "m={m}");
        }
    }

    #[test]
    fn below_koszul_degree() {
        let f = jac("x^2*y^2 + y^2*z^2 + z^2*x^2 - 2*x*y*z*(x+y+z)");
        assert_eq!(kr_dim(&f, 2).unwrap(), 0);
        // ER_m = dim M(f)_{m+3} - dim M(f_s)_{m+3}: m=1 gives 6-6, m=2 gives 6-3
        assert_eq!(er_dim(&f, 1).unwrap(), 0);
        assert_eq!(er_dim(&f, 2).unwrap(), 3);
        assert_eq!(
            kr_dim(&f, 3).unwrap(),
            ar_dim(&f, 3).unwrap() - er_dim(&f, 3).unwrap()
        );
    }

    #[test]
    fn mdr_examples() {
        let f = jac("x^2*y^2 + z^4");
        assert_eq!(syzygy_profile(&f, 6, 6).unwrap().mdr, Some(1));
        let f = jac("x*y*z");
        assert_eq!(syzygy_profile(&f, 4, 3).unwrap().mdr, Some(1));
        let f = jac("x^4 + y^4 + z^4");
        let p = syzygy_profile(&f, 8, 6).unwrap();
        assert_eq!(p.mdr, None);
        assert_eq!(p.ar, p.kr);
        assert!(p.koszul_inside_all);
    }

    #[test]
    fn modular_agrees_on_cusp() {
        let text = "x^2*y^2 + y^2*z^2 + z^2*x^2 - 2*x*y*z*(x+y+z)";
        let poly = parse_poly(text, &parse_vars("x,y,z")).unwrap();
        let exact = syzygy_profile(&jac(text), 6, 6).unwrap();
        let modular = syzygy_profile(
            &Jacobian::new(PrimeField::new(1_000_003).unwrap(), poly).unwrap(),
            6,
            6,
        )
        .unwrap();
        assert_eq!(exact, modular);
    }
}
