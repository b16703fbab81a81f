use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

use jacsyz::graded::{dim_s, ideal_slice_dim, monomial_basis};
use jacsyz::linalg::{kernel, rank, rref, ExactMatrix};
use jacsyz::milnor::smooth_series_coeff;
use jacsyz::poly::default_vars;
use jacsyz::{euler_check, parse_poly, Field, HomogPoly, PrimeField, Rationals};

fn to_q(rows: &[Vec<i64>], cols: usize) -> ExactMatrix<BigRational> {
    ExactMatrix::from_rows(
        rows.iter()
            .map(|r| r.iter().map(|&x| Rationals.from_i64(x)).collect())
            .collect(),
        cols,
    )
}

/// A `rows x cols` integer matrix of rank at most `inner`, as a product.
fn low_rank(max_dim: usize) -> impl Strategy<Value = (Vec<Vec<i64>>, usize)> {
    (1..=max_dim, 1..=max_dim, 1..=max_dim).prop_flat_map(|(r, c, k)| {
        (
            prop::collection::vec(prop::collection::vec(-3i64..=3, k), r),
            prop::collection::vec(prop::collection::vec(-3i64..=3, c), k),
        )
            .prop_map(move |(a, b)| {
                let prod = (0..r)
                    .map(|i| (0..c).map(|j| (0..k).map(|t| a[i][t] * b[t][j]).sum()).collect())
                    .collect();
                (prod, c)
            })
    })
}

fn dense_matrix(max_dim: usize) -> impl Strategy<Value = (Vec<Vec<i64>>, usize)> {
    (1..=max_dim, 1..=max_dim).prop_flat_map(|(r, c)| {
        prop::collection::vec(prop::collection::vec(-9i64..=9, c), r).prop_map(move |m| (m, c))
    })
}

fn any_matrix() -> impl Strategy<Value = (Vec<Vec<i64>>, usize)> {
    prop_oneof![dense_matrix(7), low_rank(7), low_rank(24)]
}

/// A nonzero form in three variables with small integer coefficients.
fn form(max_degree: u32) -> impl Strategy<Value = HomogPoly> {
    (1..=max_degree).prop_flat_map(|d| {
        let n = monomial_basis(3, d).len();
        prop::collection::vec(-4i64..=4, n)
            .prop_filter("nonzero", |c| c.iter().any(|&x| x != 0))
            .prop_map(move |coeffs| {
                let basis = monomial_basis(3, d);
                let terms: Vec<(&[u32], i64)> = basis
                    .monomials()
                    .iter()
                    .zip(&coeffs)
                    .map(|(m, &c)| (m.0.as_slice(), c))
                    .collect();
                HomogPoly::from_int_terms(3, d, &terms).unwrap()
            })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rank_equals_transpose_rank((rows, cols) in any_matrix()) {
        let m = to_q(&rows, cols);
        prop_assert_eq!(rank(&Rationals, &m), rank(&Rationals, &m.transpose()));
    }

    #[test]
    fn kernel_dimension_and_annihilation((rows, cols) in any_matrix()) {
        let m = to_q(&rows, cols);
        let k = kernel(&Rationals, &m);
        prop_assert_eq!(k.dim() + rank(&Rationals, &m), cols);
        for b in 0..k.dim() {
            let v = k.basis().row(b);
            for r in 0..m.nrows() {
                let dot = m.row(r).iter().zip(v).fold(Rationals.zero(), |acc, (a, x)| acc + a * x);
                prop_assert!(Rationals.is_zero(&dot));
            }
        }
    }

    #[test]
    fn rref_is_canonical((rows, cols) in any_matrix(), seed in any::<u64>()) {
        // Shuffle the rows and add a multiple of one row to another.
        let mut mixed = rows.clone();
        let n = mixed.len();
        mixed.rotate_left((seed as usize) % n);
        if n > 1 {
            let (i, j) = ((seed as usize / 7) % n, (seed as usize / 11) % n);
            if i != j {
                let c = (seed % 5) as i64 - 2;
                let src = mixed[j].clone();
                for (x, y) in mixed[i].iter_mut().zip(src) {
                    *x += c * y;
                }
            }
        }
        let (a, ra) = rref(&Rationals, &to_q(&rows, cols));
        let (b, rb) = rref(&Rationals, &to_q(&mixed, cols));
        prop_assert_eq!(ra, rb);
        prop_assert_eq!(a, b);
    }

    #[test]
    fn modular_rank_bounded_by_exact((rows, cols) in any_matrix(), p in prop::sample::select(vec![2u64, 3, 5, 7, 1_000_003])) {
        let field = PrimeField::new(p).unwrap();
        let mm = ExactMatrix::from_rows(
            rows.iter().map(|r| r.iter().map(|&x| field.from_i64(x)).collect()).collect(),
            cols,
        );
        prop_assert!(rank(&field, &mm) <= rank(&Rationals, &to_q(&rows, cols)));
    }

    #[test]
    fn euler_relation_holds(f in form(6)) {
        prop_assert!(euler_check(&f));
    }

    #[test]
    fn derivative_commutes_with_permutation(f in form(5), perm in Just(vec![0usize, 1, 2]).prop_shuffle(), i in 0usize..3) {
        let lhs = f.permute_vars(&perm).derivative(perm[i]);
        let rhs = f.derivative(i).permute_vars(&perm);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn print_parse_roundtrip(f in form(5)) {
        let vars = default_vars(3);
        let text = f.format_with(&vars);
        let back = parse_poly(&text, &vars).unwrap();
        prop_assert_eq!(back, f);
    }

    #[test]
    fn rational_coefficients_roundtrip(num in -50i64..=50, den in 1i64..=12) {
        prop_assume!(num != 0);
        let vars = default_vars(3);
        let f = parse_poly(&format!("{num}/{den}*x^2 + y*z"), &vars).unwrap();
        let q = BigRational::new(BigInt::from(num), BigInt::from(den));
        prop_assert_eq!(f.coeff(&jacsyz::Monomial(vec![2, 0, 0])), q);
        prop_assert_eq!(parse_poly(&f.format_with(&vars), &vars).unwrap(), f);
    }

    #[test]
    fn ideal_slices_grow(f in form(4), g in form(4), k in 0u32..7) {
        let gens = [f, g];
        let lo = ideal_slice_dim(&Rationals, 3, &gens, k).unwrap();
        let hi = ideal_slice_dim(&Rationals, 3, &gens, k + 1).unwrap();
        prop_assert!(lo <= hi);
        prop_assert!(hi <= dim_s(3, k as i64 + 1));
    }

    #[test]
    fn smooth_series_symmetric_with_total(n in 1usize..4, d in 2u32..7) {
        let t = (n as i64 + 1) * (d as i64 - 2);
        let coeffs: Vec<i64> = (0..=t).map(|k| smooth_series_coeff(n, d, k)).collect();
        for k in 0..=t as usize {
            prop_assert_eq!(coeffs[k], coeffs[t as usize - k]);
            prop_assert!(coeffs[k] > 0);
        }
        prop_assert_eq!(smooth_series_coeff(n, d, t + 1), 0);
        prop_assert_eq!(coeffs.iter().sum::<i64>(), (d as i64 - 1).pow(n as u32 + 1));
    }
}
