//! Sparse homogeneous polynomials with rational coefficients.
//!
//! Coefficients are kept exact over the rationals; a [`Field`] is only
//! involved when a polynomial is turned into matrix entries.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::field::Field;
use crate::error::FieldError;

/// Exponent vector. Ordered lexicographically on the exponent sequence.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Monomial(e)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `x_i^power * self`
    pub fn mul_var_pow(&self, i: usize, power: u32) -> Monomial {
        let mut e = self.0.clone();
        e[i] += power;
        Monomial(e)
    }

    pub fn format_with(&self, vars: &[String]) -> String {
        let parts: Vec<String> = self
            .0
            .iter()
            .zip(vars)
            .filter(|(e, _)| **e > 0)
            .map(|(e, v)| if *e == 1 { v.clone() } else { format!("{v}^{e}") })
            .collect();
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }
}

/// A homogeneous polynomial: every stored monomial has total degree `degree`
/// and no stored coefficient is zero. The empty term map is the zero form of
/// the given degree (it arises as a vanishing partial derivative).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomogPoly {
    nvars: usize,
    degree: u32,
    terms: BTreeMap<Monomial, BigRational>,
}

impl HomogPoly {
    pub fn zero(nvars: usize, degree: u32) -> Self {
        Self {
            nvars,
            degree,
            terms: BTreeMap::new(),
        }
    }

    /// Builds a form from `(monomial, coefficient)` pairs, merging repeats and
    /// dropping zeros. Returns `None` if a monomial has the wrong shape or degree.
    pub fn from_terms<I>(nvars: usize, degree: u32, terms: I) -> Option<Self>
    where
        I: IntoIterator<Item = (Monomial, BigRational)>,
    {
        let mut map: BTreeMap<Monomial, BigRational> = BTreeMap::new();
        for (m, c) in terms {
            if m.nvars() != nvars || m.degree() != degree {
                return None;
            }
            *map.entry(m).or_insert_with(BigRational::zero) += c;
        }
        map.retain(|_, c| !c.is_zero());
        Some(Self {
            nvars,
            degree,
            terms: map,
        })
    }

    /// Convenience for integer coefficients, mainly in tests.
    pub fn from_int_terms(nvars: usize, degree: u32, terms: &[(&[u32], i64)]) -> Option<Self> {
        Self::from_terms(
            nvars,
            degree,
            terms.iter().map(|(e, c)| {
                (
                    Monomial(e.to_vec()),
                    BigRational::from_integer(BigInt::from(*c)),
                )
            }),
        )
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> BigRational {
        self.terms.get(m).cloned().unwrap_or_else(BigRational::zero)
    }

    /// Coefficients mapped into `field`, in ascending lex order.
    pub fn terms_in<F: Field>(&self, field: &F) -> Result<Vec<(Monomial, F::Elem)>, FieldError> {
        self.terms
            .iter()
            .map(|(m, c)| Ok((m.clone(), field.from_rational(c)?)))
            .collect()
    }

    /// `∂f/∂x_i`; a zero result keeps degree `d - 1`.
    pub fn derivative(&self, i: usize) -> HomogPoly {
        let degree = self.degree.saturating_sub(1);
        let terms = self.terms.iter().filter(|(m, _)| m.0[i] > 0).map(|(m, c)| {
            let e = m.0[i];
            let mut exps = m.0.clone();
            exps[i] -= 1;
            (Monomial(exps), c * BigRational::from_integer(BigInt::from(e)))
        });
        HomogPoly::from_terms(self.nvars, degree, terms).expect("derivative stays homogeneous")
    }

    /// `(f_0, ..., f_n)`.
    pub fn partial_derivatives(&self) -> Vec<HomogPoly> {
        (0..self.nvars).map(|i| self.derivative(i)).collect()
    }

    pub fn add(&self, other: &HomogPoly) -> HomogPoly {
        assert_eq!(self.nvars, other.nvars);
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        assert_eq!(self.degree, other.degree, "adding forms of different degree");
        let terms = self
            .terms
            .iter()
            .chain(other.terms.iter())
            .map(|(m, c)| (m.clone(), c.clone()));
        HomogPoly::from_terms(self.nvars, self.degree, terms).expect("same degree")
    }

    pub fn scale(&self, c: &BigRational) -> HomogPoly {
        let terms = self.terms.iter().map(|(m, x)| (m.clone(), x * c));
        HomogPoly::from_terms(self.nvars, self.degree, terms).expect("same shape")
    }

    pub fn mul(&self, other: &HomogPoly) -> HomogPoly {
        assert_eq!(self.nvars, other.nvars);
        let degree = self.degree + other.degree;
        let terms = self.terms.iter().flat_map(|(a, x)| {
            other.terms.iter().map(move |(b, y)| (a.mul(b), x * y))
        });
        HomogPoly::from_terms(self.nvars, degree, terms).expect("degrees add")
    }

    /// Applies a permutation of the variables: variable `i` becomes `perm[i]`.
    pub fn permute_vars(&self, perm: &[usize]) -> HomogPoly {
        let terms = self.terms.iter().map(|(m, c)| {
            let mut e = vec![0; self.nvars];
            for (i, &x) in m.0.iter().enumerate() {
                e[perm[i]] = x;
            }
            (Monomial(e), c.clone())
        });
        HomogPoly::from_terms(self.nvars, self.degree, terms).expect("permutation keeps degree")
    }

    /// Canonical text: terms in descending lex order, `*` between factors.
    pub fn format_with(&self, vars: &[String]) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let negative = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            let mono = m.format_with(vars);
            let is_const = m.degree() == 0;
            if abs.is_one() {
                out.push_str(&mono);
            } else {
                out.push_str(&abs.to_string());
                if !is_const {
                    out.push('*');
                    out.push_str(&mono);
                }
            }
        }
        out
    }
}

/// Default variable names: `x,y,z` for three variables, else `x0..xn`.
pub fn default_vars(nvars: usize) -> Vec<String> {
    if nvars == 3 {
        vec!["x".into(), "y".into(), "z".into()]
    } else {
        (0..nvars).map(|i| format!("x{i}")).collect()
    }
}

impl fmt::Display for HomogPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.format_with(&default_vars(self.nvars)))
    }
}

/// Whether `Σ x_i f_i = d f` holds exactly.
pub fn euler_check(f: &HomogPoly) -> bool {
    let n = f.nvars();
    let mut sum = HomogPoly::zero(n, f.degree());
    for (i, fi) in f.partial_derivatives().iter().enumerate() {
        let xi = HomogPoly::from_terms(n, 1, [(Monomial::var(n, i), BigRational::one())])
            .expect("linear form");
        sum = sum.add(&xi.mul(fi));
    }
    let d = BigRational::from_integer(BigInt::from(f.degree()));
    sum == f.scale(&d)
}
