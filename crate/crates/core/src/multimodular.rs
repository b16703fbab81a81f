//! Certified multimodular RREF over the rationals.
//!
//! The integer matrix is reduced modulo a run of 31-bit primes; the images
//! that share the best pivot pattern are combined by CRT and lifted back by
//! rational reconstruction. A candidate `R` is accepted only after the exact
//! check that every input row is orthogonal to the kernel basis of `R`. That
//! gives `rowspace(A) ⊆ rowspace(R)`, hence `rank_Q(A) ≤ rank R`, and
//! `rank R = rank_p(A) ≤ rank_Q(A)` holds for any prime, so `R` is the RREF.

use std::sync::OnceLock;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::field::is_prime;

/// Primes tried before giving up and letting the caller fall back.
const MAX_PRIMES: usize = 1024;
const BATCH: usize = 8;

/// Descending primes below `2^31`, from one sieved window, generated once.
fn primes() -> &'static [u64] {
    static PRIMES: OnceLock<Vec<u64>> = OnceLock::new();
    PRIMES.get_or_init(|| {
        const HI: u64 = 1 << 31;
        const WIDTH: u64 = 1 << 16;
        let lo = HI - WIDTH;
        let small: Vec<u64> = (2..=46_341).filter(|&q| is_prime(q)).collect();
        let mut composite = vec![false; WIDTH as usize];
        for q in small {
            let first = lo.div_ceil(q) * q;
            for m in (first..HI).step_by(q as usize) {
                composite[(m - lo) as usize] = true;
            }
        }
        (lo..HI)
            .rev()
            .filter(|&n| !composite[(n - lo) as usize])
            .take(MAX_PRIMES)
            .collect()
    })
}

fn inv_mod(a: u64, p: u64) -> u64 {
    let mut result = 1u64;
    let mut base = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            result = result * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    result
}

/// RREF modulo `p`; returns the nonzero rows and their pivot columns.
fn rref_mod(mut rows: Vec<Vec<u64>>, ncols: usize, p: u64) -> (Vec<Vec<u64>>, Vec<usize>) {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(i) = (r..rows.len()).find(|&i| rows[i][c] != 0) else {
            continue;
        };
        rows.swap(r, i);
        let inv = inv_mod(rows[r][c], p);
        for x in rows[r][c..].iter_mut() {
            *x = *x * inv % p;
        }
        let pivot_row = std::mem::take(&mut rows[r]);
        let support: Vec<usize> = (c..ncols).filter(|&j| pivot_row[j] != 0).collect();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[c] == 0 {
                continue;
            }
            let factor = p - row[c];
            for &j in &support {
                row[j] = (row[j] + factor * pivot_row[j]) % p;
            }
        }
        rows[r] = pivot_row;
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    (rows, pivots)
}

fn residue(x: &BigInt, p: u64) -> u64 {
    if let Some(v) = x.to_i64() {
        return v.rem_euclid(p as i64) as u64;
    }
    let r = (x % BigInt::from(p)).to_i64().expect("below p");
    r.rem_euclid(p as i64) as u64
}

/// `a/b` with `|a|, b ≤ sqrt(m/2)` and `a ≡ b u (mod m)`, if it exists.
fn rational_reconstruct(u: &BigInt, m: &BigInt, bound: &BigInt) -> Option<(BigInt, BigInt)> {
    if u <= bound {
        return Some((u.clone(), BigInt::one()));
    }
    if &(m - u) <= bound {
        return Some((u - m, BigInt::one()));
    }
    let (mut r0, mut r1) = (m.clone(), u.clone());
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while &r1 > bound {
        let (q, r) = r0.div_rem(&r1);
        r0 = std::mem::replace(&mut r1, r);
        let t = &t0 - &q * &t1;
        t0 = std::mem::replace(&mut t1, t);
    }
    if t1.is_zero() || t1.abs() > *bound || !r1.gcd(&t1).is_one() {
        return None;
    }
    if t1.is_negative() {
        Some((-r1, -t1))
    } else {
        Some((r1, t1))
    }
}

/// Running CRT images of the non-pivot entries for one pivot pattern.
struct Accumulator {
    pivots: Vec<usize>,
    /// `free[j]` lists the non-pivot columns right of pivot `j`.
    free: Vec<Vec<usize>>,
    values: Vec<Vec<BigInt>>,
    modulus: BigInt,
    count: usize,
}

impl Accumulator {
    fn new(pivots: Vec<usize>, ncols: usize, image: &[Vec<u64>], p: u64) -> Self {
        let mut is_pivot = vec![false; ncols];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        let free: Vec<Vec<usize>> = pivots
            .iter()
            .map(|&c| (c + 1..ncols).filter(|&j| !is_pivot[j]).collect())
            .collect();
        let values = free
            .iter()
            .zip(image)
            .map(|(cols, row)| cols.iter().map(|&j| BigInt::from(row[j])).collect())
            .collect();
        Self {
            pivots,
            free,
            values,
            modulus: BigInt::from(p),
            count: 1,
        }
    }

    fn absorb(&mut self, image: &[Vec<u64>], p: u64) {
        let pb = BigInt::from(p);
        let m_inv = inv_mod(residue(&self.modulus, p), p);
        let modulus = &self.modulus;
        self.values
            .par_iter_mut()
            .zip(self.free.par_iter())
            .zip(image.par_iter())
            .for_each(|((vals, cols), row)| {
                for (v, &j) in vals.iter_mut().zip(cols) {
                    let diff = (row[j] + p - residue(v, p)) % p;
                    if diff != 0 {
                        *v += modulus * BigInt::from(diff * m_inv % p);
                    }
                }
            });
        self.modulus *= pb;
        self.count += 1;
    }

    /// Lifts every entry; per column a running denominator is folded in first
    /// so entries sharing a denominator reconstruct as integers.
    fn reconstruct(&self, ncols: usize) -> Option<Vec<Vec<BigRational>>> {
        let bound = (&self.modulus >> 1u32).sqrt();
        let mut col_den: Vec<BigInt> = vec![BigInt::one(); ncols];
        let mut out = Vec::with_capacity(self.pivots.len());
        for ((&pc, cols), vals) in self.pivots.iter().zip(&self.free).zip(&self.values) {
            let mut row = vec![BigRational::zero(); ncols];
            row[pc] = BigRational::one();
            for (&j, v) in cols.iter().zip(vals) {
                if v.is_zero() {
                    continue;
                }
                let scaled = (v * &col_den[j]).mod_floor(&self.modulus);
                let (a, b) = rational_reconstruct(&scaled, &self.modulus, &bound)?;
                let den = &col_den[j] * &b;
                row[j] = BigRational::new(a, den);
                col_den[j] *= b;
            }
            out.push(row);
        }
        Some(out)
    }
}

/// Exact test that every row of `a` lies in the row space of the RREF `r`.
fn verify(a: &[Vec<BigInt>], r: &[Vec<BigRational>], pivots: &[usize], ncols: usize) -> bool {
    let mut is_pivot = vec![false; ncols];
    for &c in pivots {
        is_pivot[c] = true;
    }
    // Per free column, the entries of `r` over one common denominator.
    let columns: Vec<(usize, BigInt, Vec<BigInt>)> = (0..ncols)
        .filter(|&f| !is_pivot[f])
        .map(|f| {
            let den = r
                .iter()
                .filter(|row| !row[f].is_zero())
                .fold(BigInt::one(), |acc, row| acc.lcm(row[f].denom()));
            let nums = r
                .iter()
                .map(|row| row[f].numer() * (&den / row[f].denom()))
                .collect();
            (f, den, nums)
        })
        .collect();
    a.par_iter().all(|row| {
        columns.iter().all(|(f, den, nums)| {
            let mut acc = &row[*f] * den;
            for (j, &pc) in pivots.iter().enumerate() {
                if !row[pc].is_zero() && !nums[j].is_zero() {
                    acc -= &row[pc] * &nums[j];
                }
            }
            acc.is_zero()
        })
    })
}

/// Integer matrix with its rows pre-converted to `i64` when they all fit.
struct Input<'a> {
    rows: &'a [Vec<BigInt>],
    small: Option<Vec<Vec<i64>>>,
}

impl<'a> Input<'a> {
    fn new(rows: &'a [Vec<BigInt>]) -> Self {
        let small = rows
            .iter()
            .map(|row| row.iter().map(ToPrimitive::to_i64).collect())
            .collect();
        Self { rows, small }
    }

    fn reduce(&self, p: u64) -> Vec<Vec<u64>> {
        match &self.small {
            Some(small) => small
                .iter()
                .map(|row| row.iter().map(|&x| x.rem_euclid(p as i64) as u64).collect())
                .collect(),
            None => self
                .rows
                .iter()
                .map(|row| row.iter().map(|x| residue(x, p)).collect())
                .collect(),
        }
    }
}

/// Whether pivot pattern `new` beats `old` when a larger row space is the
/// lucky outcome (`more_is_better`) or a smaller one is.
fn pattern_better(new: &[usize], old: &[usize], more_is_better: bool) -> bool {
    if new.len() != old.len() {
        return (new.len() > old.len()) == more_is_better;
    }
    new < old
}

/// Shared driver: combines modular RREF images with the best pivot pattern
/// until a reconstruction passes `verify`.
fn certify<I, V>(ncols: usize, more_is_better: bool, image: I, verify: V) -> Option<(Vec<Vec<BigRational>>, Vec<usize>)>
where
    I: Fn(u64) -> (Vec<Vec<u64>>, Vec<usize>) + Sync,
    V: Fn(&[Vec<BigRational>], &[usize]) -> bool,
{
    let mut acc: Option<Accumulator> = None;
    let mut next_attempt = 1;
    for batch in primes().chunks(BATCH) {
        let images: Vec<(u64, Vec<Vec<u64>>, Vec<usize>)> = batch
            .par_iter()
            .map(|&p| {
                let (rows, pivots) = image(p);
                (p, rows, pivots)
            })
            .collect();
        for (p, rows, pivots) in images {
            match &mut acc {
                Some(s) if s.pivots == pivots => s.absorb(&rows, p),
                Some(s) if !pattern_better(&pivots, &s.pivots, more_is_better) => {}
                _ => {
                    acc = Some(Accumulator::new(pivots, ncols, &rows, p));
                    next_attempt = 1;
                }
            }
        }
        let s = acc.as_ref().expect("at least one image");
        if s.count < next_attempt {
            continue;
        }
        next_attempt = s.count + s.count.div_ceil(2);
        if let Some(r) = s.reconstruct(ncols) {
            if verify(&r, &s.pivots) {
                return Some((r, s.pivots.clone()));
            }
        }
    }
    None
}

fn nonzero_rows(a: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    a.iter()
        .filter(|row| row.iter().any(|x| x.sign() != Sign::NoSign))
        .cloned()
        .collect()
}

/// RREF of the integer matrix `a`, or `None` if no candidate was certified
/// within the prime budget.
pub(crate) fn certified_rref(a: &[Vec<BigInt>], ncols: usize) -> Option<(Vec<Vec<BigRational>>, Vec<usize>)> {
    let a = nonzero_rows(a);
    if a.is_empty() {
        return Some((Vec::new(), Vec::new()));
    }
    let input = Input::new(&a);
    certify(
        ncols,
        true,
        |p| rref_mod(input.reduce(p), ncols, p),
        |r, pivots| verify(&a, r, pivots, ncols),
    )
}

/// Kernel basis mod `p` read off an RREF: one vector per free column.
fn kernel_mod(r: &[Vec<u64>], pivots: &[usize], ncols: usize, p: u64) -> Vec<Vec<u64>> {
    let mut is_pivot = vec![false; ncols];
    for &c in pivots {
        is_pivot[c] = true;
    }
    (0..ncols)
        .filter(|&f| !is_pivot[f])
        .map(|f| {
            let mut v = vec![0u64; ncols];
            v[f] = 1;
            for (row, &c) in r.iter().zip(pivots) {
                v[c] = (p - row[f]) % p;
            }
            v
        })
        .collect()
}

/// Exact test that every row of `k` is annihilated by every row of `a`.
fn verify_kernel(a: &[Vec<BigInt>], k: &[Vec<BigRational>]) -> bool {
    let scaled: Vec<Vec<BigInt>> = k
        .iter()
        .map(|row| {
            let den = row
                .iter()
                .filter(|x| !x.is_zero())
                .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            row.iter().map(|x| x.numer() * (&den / x.denom())).collect()
        })
        .collect();
    a.par_iter().all(|arow| {
        let support: Vec<usize> = (0..arow.len()).filter(|&c| !arow[c].is_zero()).collect();
        scaled.iter().all(|v| {
            let mut acc = BigInt::zero();
            for &c in &support {
                if !v[c].is_zero() {
                    acc += &arow[c] * &v[c];
                }
            }
            acc.is_zero()
        })
    })
}

/// RREF basis of `{v : a v = 0}`. The lifted basis `K` is accepted once
/// `a K^T = 0` holds exactly: its rows are independent, and the kernel over Q
/// is never larger than the kernel mod p it was lifted from.
pub(crate) fn certified_kernel(a: &[Vec<BigInt>], ncols: usize) -> Option<(Vec<Vec<BigRational>>, Vec<usize>)> {
    let a = nonzero_rows(a);
    if a.is_empty() {
        let basis = (0..ncols)
            .map(|i| {
                (0..ncols)
                    .map(|j| if i == j { BigRational::one() } else { BigRational::zero() })
                    .collect()
            })
            .collect();
        return Some((basis, (0..ncols).collect()));
    }
    let input = Input::new(&a);
    certify(
        ncols,
        false,
        |p| {
            let (r, pivots) = rref_mod(input.reduce(p), ncols, p);
            rref_mod(kernel_mod(&r, &pivots, ncols, p), ncols, p)
        },
        |k, _| verify_kernel(&a, k),
    )
}
