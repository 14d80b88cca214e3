//! Exact rationals and the positive-definite forms used for Vogan norms.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{validation, Error, Result};

pub type Rational = BigRational;

const MAX_DIGITS: usize = 64;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses `"p"` or `"p/q"` with optional leading sign. Whitespace around the
/// token is ignored; nothing else is accepted.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let s = text.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), Some(d.trim())),
        None => (s, None),
    };
    let numer = parse_int(num).ok_or_else(|| Error::Parse(format!("bad rational `{text}`")))?;
    let denom = match den {
        Some(d) => {
            if d.starts_with(['+', '-']) {
                return Err(Error::Parse(format!("signed denominator in `{text}`")));
            }
            parse_int(d).ok_or_else(|| Error::Parse(format!("bad rational `{text}`")))?
        }
        None => BigInt::one(),
    };
    if denom.is_zero() {
        return Err(Error::Parse(format!("zero denominator in `{text}`")));
    }
    Ok(Rational::new(numer, denom))
}

fn parse_int(s: &str) -> Option<BigInt> {
    let digits = s.strip_prefix(['+', '-']).unwrap_or(s);
    if digits.is_empty() || digits.len() > MAX_DIGITS || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    s.parse().ok()
}

pub fn format_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Largest integer `k >= 0` with `k * k <= r`, or `None` when `r < 0`.
pub fn isqrt_floor(r: &Rational) -> Option<BigInt> {
    if r.is_negative() {
        return None;
    }
    Some(r.floor().to_integer().sqrt())
}

/// Largest allowed common denominator and scaled entry of a Gram matrix.
const MAX_SCALED: i128 = 1 << 40;

/// Symmetric positive-definite rational matrix on a weight lattice. Kept
/// alongside an integer copy scaled by the common denominator, which is what
/// the hot loops use.
#[derive(Debug, Clone)]
pub struct Gram {
    rows: Vec<Vec<Rational>>,
    scaled: Vec<Vec<i128>>,
    denom: i128,
}

impl PartialEq for Gram {
    fn eq(&self, other: &Self) -> bool {
        self.rows == other.rows
    }
}

impl Eq for Gram {}

impl Gram {
    pub fn new(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(validation("gram", "empty matrix"));
        }
        if rows.iter().any(|r| r.len() != n) {
            return Err(validation("gram", "matrix is not square"));
        }
        for (i, row) in rows.iter().enumerate() {
            for (j, x) in row.iter().enumerate().take(i) {
                if *x != rows[j][i] {
                    return Err(validation("gram", format!("not symmetric at ({i},{j})")));
                }
            }
        }
        let mut denom = BigInt::one();
        for r in rows.iter().flatten() {
            denom = num_integer::Integer::lcm(&denom, r.denom());
        }
        let too_large = || validation("gram", format!("entries exceed the supported size {MAX_SCALED}"));
        let denom_i: i128 = (&denom).try_into().ok().filter(|d| *d <= MAX_SCALED).ok_or_else(too_large)?;
        let scaled = rows
            .iter()
            .map(|r| {
                r.iter()
                    .map(|x| {
                        let v = (x * Rational::from_integer(denom.clone())).to_integer();
                        i128::try_from(&v).ok().filter(|v| v.abs() <= MAX_SCALED).ok_or_else(too_large)
                    })
                    .collect::<Result<Vec<i128>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        let g = Gram { rows, scaled, denom: denom_i };
        for k in 1..=n {
            if !g.leading_minor(k).is_positive() {
                return Err(validation(
                    "gram",
                    format!("not positive-definite (leading minor {k} is not positive)"),
                ));
            }
        }
        Ok(g)
    }

    pub fn identity(n: usize) -> Self {
        let rows = (0..n)
            .map(|i| (0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }).collect())
            .collect();
        let scaled = (0..n).map(|i| (0..n).map(|j| i128::from(i == j)).collect()).collect();
        Gram { rows, scaled, denom: 1 }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<Rational>] {
        &self.rows
    }

    /// Common denominator `d` of the entries.
    pub fn denom(&self) -> i128 {
        self.denom
    }

    /// `d * <x, y>`, an integer.
    pub fn pair_scaled(&self, x: &[i64], y: &[i64]) -> i128 {
        let mut acc = 0i128;
        for (row, xi) in self.scaled.iter().zip(x) {
            if *xi == 0 {
                continue;
            }
            let ry: i128 = row.iter().zip(y).map(|(g, yj)| g * i128::from(*yj)).sum();
            acc += i128::from(*xi) * ry;
        }
        acc
    }

    /// Integer covector `y -> d * <x, y>`.
    pub fn covector(&self, x: &[i64]) -> Vec<i128> {
        (0..self.dim())
            .map(|j| self.scaled.iter().zip(x).map(|(row, xi)| row[j] * i128::from(*xi)).sum())
            .collect()
    }

    pub fn pair(&self, x: &[i64], y: &[i64]) -> Rational {
        Rational::new(self.pair_scaled(x, y).into(), self.denom.into())
    }

    pub fn norm(&self, x: &[i64]) -> Rational {
        self.pair(x, x)
    }

    /// Largest integer `k` with `k <= d * r`, the scaled form of a bound.
    pub fn scale_bound(&self, r: &Rational) -> Option<i128> {
        i128::try_from((r * Rational::from_integer(self.denom.into())).floor().to_integer()).ok()
    }

    fn leading_minor(&self, k: usize) -> Rational {
        let m: Vec<Vec<Rational>> = self.rows[..k].iter().map(|r| r[..k].to_vec()).collect();
        determinant(m)
    }

    /// Diagonal of the inverse matrix.
    pub fn inverse_diagonal(&self) -> Vec<Rational> {
        let n = self.dim();
        let mut a: Vec<Vec<Rational>> = self
            .rows
            .iter()
            .enumerate()
            .map(|(i, r)| {
                let mut row = r.clone();
                row.extend((0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }));
                row
            })
            .collect();
        for col in 0..n {
            // positive-definite, so the pivot on the diagonal never vanishes
            let pivot = a[col][col].clone();
            for x in a[col].iter_mut() {
                *x /= &pivot;
            }
            let pivot_row = a[col].clone();
            for (r, row) in a.iter_mut().enumerate() {
                if r != col && !row[col].is_zero() {
                    let f = row[col].clone();
                    for (x, p) in row.iter_mut().zip(&pivot_row) {
                        *x -= &f * p;
                    }
                }
            }
        }
        (0..n).map(|i| a[i][n + i].clone()).collect()
    }
}

fn determinant(mut m: Vec<Vec<Rational>>) -> Rational {
    let n = m.len();
    let mut det = Rational::one();
    for col in 0..n {
        let Some(p) = (col..n).find(|&r| !m[r][col].is_zero()) else {
            return Rational::zero();
        };
        if p != col {
            m.swap(p, col);
            det = -det;
        }
        let pivot = m[col][col].clone();
        det *= &pivot;
        let pivot_row = m[col].clone();
        for row in m.iter_mut().skip(col + 1) {
            if !row[col].is_zero() {
                let f = &row[col] / &pivot;
                for (x, pv) in row.iter_mut().zip(&pivot_row) {
                    *x -= &f * pv;
                }
            }
        }
    }
    det
}
