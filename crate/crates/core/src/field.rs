//! Coefficient fields: exact rationals and word-size prime fields.
//!
//! Every algorithm in the crate is generic over [`Field`]. The field owns the
//! arithmetic and the row reduction kernel, so the rational implementation can
//! use fraction-free integer elimination while the prime field runs a plain
//! Gauss-Jordan sweep.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;

use crate::error::FieldError;
use crate::multimodular::{certified_kernel, certified_rref};

/// Arithmetic and row reduction over a concrete field.
pub trait Field: Clone + Send + Sync + fmt::Debug {
    /// An element of the field (the exact scalar).
    type Elem: Clone + PartialEq + Eq + fmt::Debug + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    /// Multiplicative inverse; `None` for zero.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn from_i64(&self, v: i64) -> Self::Elem;
    /// Image of a rational number; fails when the denominator is not invertible.
    fn from_rational(&self, q: &BigRational) -> Result<Self::Elem, FieldError>;

    /// Brings `rows` (each of length `ncols`) to reduced row-echelon form in
    /// place, dropping zero rows. Returns the pivot column of each surviving row.
    fn reduce_rows(&self, rows: &mut Vec<Vec<Self::Elem>>, ncols: usize) -> Vec<usize> {
        gauss_jordan(self, rows, ncols)
    }

    /// RREF basis of the null space `{v : rows · v = 0}` and its pivot columns.
    fn kernel_rows(&self, rows: Vec<Vec<Self::Elem>>, ncols: usize) -> (Vec<Vec<Self::Elem>>, Vec<usize>) {
        kernel_via_rref(self, rows, ncols)
    }

    /// Rank of the row space. Implementations may skip the back-substitution.
    fn rank_of(&self, mut rows: Vec<Vec<Self::Elem>>, ncols: usize) -> usize {
        self.reduce_rows(&mut rows, ncols).len()
    }

    /// Short human-readable name, e.g. `exact` or `mod:1000003`.
    fn label(&self) -> String;
}

/// Null space read off the RREF (one vector per free column), then canonicalized.
pub(crate) fn kernel_via_rref<F: Field>(
    field: &F,
    mut rows: Vec<Vec<F::Elem>>,
    ncols: usize,
) -> (Vec<Vec<F::Elem>>, Vec<usize>) {
    let pivots = field.reduce_rows(&mut rows, ncols);
    let mut is_pivot = vec![false; ncols];
    for &c in &pivots {
        is_pivot[c] = true;
    }
    let mut basis = Vec::new();
    for free in (0..ncols).filter(|&c| !is_pivot[c]) {
        let mut v = vec![field.zero(); ncols];
        v[free] = field.one();
        for (row, &c) in rows.iter().zip(&pivots) {
            v[c] = field.neg(&row[free]);
        }
        basis.push(v);
    }
    let kernel_pivots = field.reduce_rows(&mut basis, ncols);
    (basis, kernel_pivots)
}

/// Textbook Gauss-Jordan over any field.
pub(crate) fn gauss_jordan<F: Field>(
    field: &F,
    rows: &mut Vec<Vec<F::Elem>>,
    ncols: usize,
) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !field.is_zero(&rows[i][c])) else {
            continue;
        };
        rows.swap(r, p);
        let inv = field.inv(&rows[r][c]).expect("pivot is nonzero");
        for x in rows[r].iter_mut() {
            if !field.is_zero(x) {
                *x = field.mul(x, &inv);
            }
        }
        let support: Vec<usize> = (c..ncols).filter(|&j| !field.is_zero(&rows[r][j])).collect();
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || field.is_zero(&row[c]) {
                continue;
            }
            let factor = row[c].clone();
            for &j in &support {
                let t = field.mul(&factor, &pivot_row[j]);
                row[j] = field.sub(&row[j], &t);
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    pivots
}

/// Matrices with at least this many entries go through the certified
/// multimodular path; smaller ones use integer elimination directly.
pub const MULTIMODULAR_MIN_ENTRIES: usize = 400;

/// The rational numbers. Row reduction is multimodular with an exact
/// certificate, falling back to fraction-free elimination.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        (!a.is_zero()).then(|| a.recip())
    }
    fn from_i64(&self, v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
    }
    fn from_rational(&self, q: &BigRational) -> Result<BigRational, FieldError> {
        Ok(q.clone())
    }

    fn reduce_rows(&self, rows: &mut Vec<Vec<BigRational>>, ncols: usize) -> Vec<usize> {
        let mut ints = clear_denominators(rows);
        if rows.len() * ncols >= MULTIMODULAR_MIN_ENTRIES {
            if let Some((reduced, pivots)) = certified_rref(&ints, ncols) {
                *rows = reduced;
                return pivots;
            }
        }
        let pivots = integer_elimination(&mut ints, ncols, true);
        *rows = ints
            .into_iter()
            .zip(&pivots)
            .map(|(row, &c)| {
                let lead = row[c].clone();
                row.into_iter()
                    .map(|x| BigRational::new(x, lead.clone()))
                    .collect()
            })
            .collect();
        pivots
    }

    fn kernel_rows(&self, rows: Vec<Vec<BigRational>>, ncols: usize) -> (Vec<Vec<BigRational>>, Vec<usize>) {
        if rows.len() * ncols >= MULTIMODULAR_MIN_ENTRIES {
            if let Some(k) = certified_kernel(&clear_denominators(&rows), ncols) {
                return k;
            }
        }
        kernel_via_rref(self, rows, ncols)
    }

    fn rank_of(&self, rows: Vec<Vec<BigRational>>, ncols: usize) -> usize {
        let mut ints = clear_denominators(&rows);
        if rows.len() * ncols >= MULTIMODULAR_MIN_ENTRIES {
            if let Some((_, pivots)) = certified_rref(&ints, ncols) {
                return pivots.len();
            }
        }
        integer_elimination(&mut ints, ncols, false).len()
    }

    fn label(&self) -> String {
        "exact".to_string()
    }
}

/// Scales every row by the lcm of its denominators. Row scaling preserves the row space.
fn clear_denominators(rows: &[Vec<BigRational>]) -> Vec<Vec<BigInt>> {
    rows.iter()
        .map(|row| {
            let l = row
                .iter()
                .filter(|x| !x.is_zero())
                .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            row.iter()
                .map(|x| {
                    if x.is_zero() {
                        BigInt::zero()
                    } else {
                        x.numer() * (&l / x.denom())
                    }
                })
                .collect()
        })
        .collect()
}

/// Divides a row by the gcd of its entries.
fn make_primitive(row: &mut [BigInt]) {
    let mut g = BigInt::zero();
    for x in row.iter().filter(|x| !x.is_zero()) {
        g = g.gcd(x);
        if g.is_one() {
            return;
        }
    }
    if g.is_zero() || g.is_one() {
        return;
    }
    for x in row.iter_mut().filter(|x| !x.is_zero()) {
        *x /= &g;
    }
}

/// Fraction-free elimination over the integers.
///
/// Each update is `row <- (p/g)*row - (a/g)*pivot_row` with `g = gcd(p, a)`,
/// followed by removal of the row content, so entries stay primitive and rows
/// that do not meet the pivot column are never touched. With `jordan` set the
/// pivot column is also cleared above the pivot and rows are sign-normalized
/// so the pivot is positive. Zero rows are dropped.
pub(crate) fn integer_elimination(rows: &mut Vec<Vec<BigInt>>, ncols: usize, jordan: bool) -> Vec<usize> {
    for row in rows.iter_mut() {
        make_primitive(row);
    }
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        // smallest pivot by bit length keeps the multipliers small
        let Some(p) = (r..rows.len())
            .filter(|&i| !rows[i][c].is_zero())
            .min_by_key(|&i| rows[i][c].bits())
        else {
            continue;
        };
        rows.swap(r, p);
        if rows[r][c].is_negative() {
            for x in rows[r].iter_mut() {
                *x = -std::mem::take(x);
            }
        }
        let pivot_row = rows[r].clone();
        let pivot = &pivot_row[c];
        let support: Vec<usize> = (c..ncols).filter(|&j| !pivot_row[j].is_zero()).collect();
        let start = if jordan { 0 } else { r + 1 };
        for i in start..rows.len() {
            if i == r || rows[i][c].is_zero() {
                continue;
            }
            let row = &mut rows[i];
            let g = pivot.gcd(&row[c]);
            let scale = pivot / &g;
            let factor = &row[c] / &g;
            if !scale.is_one() {
                for x in row.iter_mut().filter(|x| !x.is_zero()) {
                    *x *= &scale;
                }
            }
            for &j in &support {
                row[j] -= &factor * &pivot_row[j];
            }
            make_primitive(row);
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    pivots
}

/// Integers modulo a prime `p < 2^32`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    /// Lower end of the range used for randomly drawn moduli.
    pub const RANDOM_LOW: u64 = 1 << 30;
    /// Upper end (exclusive) of the range used for randomly drawn moduli.
    pub const RANDOM_HIGH: u64 = 1 << 31;

    pub fn new(p: u64) -> Result<Self, FieldError> {
        if p >= 1 << 32 || !is_prime(p) {
            return Err(FieldError::InvalidModulus(p));
        }
        Ok(Self { p })
    }

    /// A uniformly drawn prime in `[2^30, 2^31)`.
    pub fn random<R: Rng + ?Sized>(rng: &mut R) -> Self {
        loop {
            let candidate = rng.gen_range(Self::RANDOM_LOW..Self::RANDOM_HIGH) | 1;
            if is_prime(candidate) {
                return Self { p: candidate };
            }
        }
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    fn pow(&self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1u64;
        base %= self.p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base % self.p;
            }
            base = base * base % self.p;
            exp >>= 1;
        }
        acc
    }

    fn reduce_big(&self, v: &BigInt) -> u64 {
        let m = BigInt::from(self.p);
        v.mod_floor(&m).to_u64().expect("residue fits in u64")
    }
}

/// Trial division; moduli are below 2^32 so this is at most 65536 steps.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

impl Field for PrimeField {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1 % self.p
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        (a + b) % self.p
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        (a + self.p - b) % self.p
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        a * b % self.p
    }
    fn neg(&self, a: &u64) -> u64 {
        (self.p - a) % self.p
    }
    fn inv(&self, a: &u64) -> Option<u64> {
        (*a != 0).then(|| self.pow(*a, self.p - 2))
    }
    fn from_i64(&self, v: i64) -> u64 {
        v.rem_euclid(self.p as i64) as u64
    }
    fn from_rational(&self, q: &BigRational) -> Result<u64, FieldError> {
        let den = self.reduce_big(q.denom());
        let inv = self
            .inv(&den)
            .ok_or_else(|| FieldError::DenominatorNotInvertible {
                value: q.to_string(),
                modulus: self.p,
            })?;
        Ok(self.reduce_big(q.numer()) * inv % self.p)
    }

    fn label(&self) -> String {
        format!("mod:{}", self.p)
    }
}

/// User-facing choice of coefficient field.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum FieldMode {
    #[default]
    Exact,
    Modular(u64),
}

impl FieldMode {
    pub fn is_exact(&self) -> bool {
        matches!(self, FieldMode::Exact)
    }
}

impl fmt::Display for FieldMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldMode::Exact => write!(f, "exact"),
            FieldMode::Modular(p) => write!(f, "mod:{p}"),
        }
    }
}

impl FromStr for FieldMode {
    type Err = FieldError;

    /// Accepts `exact`, `mod:<prime>` and `mod:random`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s == "exact" {
            return Ok(FieldMode::Exact);
        }
        let Some(rest) = s.strip_prefix("mod:") else {
            return Err(FieldError::BadFieldMode(s.to_string()));
        };
        if rest == "random" {
            return Ok(FieldMode::Modular(PrimeField::random(&mut rand::thread_rng()).modulus()));
        }
        let p: u64 = rest
            .parse()
            .map_err(|_| FieldError::BadFieldMode(s.to_string()))?;
        PrimeField::new(p)?;
        Ok(FieldMode::Modular(p))
    }
}
