//! Seidel triangle, Genocchi and median Genocchi numbers, Entringer
//! numbers, and Euler numbers, all in exact big-integer arithmetic.

use num::BigInt;

use crate::error::{Error, Result};

/// Boustrophedon triangle with rows 1, 1 and ceil(i/2) entries in row i.
/// Odd rows fill left to right, even rows right to left; each entry adds
/// the previous entry of its own row to the entry above.
pub struct SeidelTriangle {
    rows: Vec<Vec<BigInt>>,
}

impl SeidelTriangle {
    /// Builds rows 1..=max_row.
    pub fn with_rows(max_row: usize) -> SeidelTriangle {
        let mut rows: Vec<Vec<BigInt>> = Vec::with_capacity(max_row);
        for i in 1..=max_row {
            let width = i.div_ceil(2);
            if i <= 2 {
                rows.push(vec![BigInt::from(1)]);
                continue;
            }
            let prev = &rows[i - 2];
            let at = |row: &[BigInt], j: usize| -> BigInt {
                if j == 0 || j > row.len() {
                    BigInt::from(0)
                } else {
                    row[j - 1].clone()
                }
            };
            let mut row = vec![BigInt::from(0); width];
            if i % 2 == 1 {
                for j in 1..=width {
                    let left = if j == 1 { BigInt::from(0) } else { row[j - 2].clone() };
                    row[j - 1] = left + at(prev, j);
                }
            } else {
                for j in (1..=width).rev() {
                    let right = if j == width { BigInt::from(0) } else { row[j].clone() };
                    row[j - 1] = right + at(prev, j);
                }
            }
            rows.push(row);
        }
        SeidelTriangle { rows }
    }

    pub fn rows(&self) -> usize {
        self.rows.len()
    }

    /// Row i as a slice, 1-based.
    pub fn row(&self, i: usize) -> Result<&[BigInt]> {
        if i == 0 || i > self.rows.len() {
            return Err(Error::PositionOutOfRange(i));
        }
        Ok(&self.rows[i - 1])
    }

    /// Entry (i, j), zero outside the triangle. Requires i <= rows().
    pub fn value(&self, i: usize, j: usize) -> Result<BigInt> {
        if i == 0 || i > self.rows.len() {
            return Err(Error::PositionOutOfRange(i));
        }
        let row = &self.rows[i - 1];
        if j == 0 || j > row.len() {
            Ok(BigInt::from(0))
        } else {
            Ok(row[j - 1].clone())
        }
    }
}

/// Entry (i, j) of the Seidel triangle; i >= 1, zero outside the row.
pub fn seidel(i: usize, j: usize) -> Result<BigInt> {
    SeidelTriangle::with_rows(i).value(i, j)
}

/// Last entry of odd row 2n-1: the Genocchi numbers 1, 1, 3, 17, 155, ...
pub fn genocchi_first(n: usize) -> Result<BigInt> {
    if n == 0 {
        return Err(Error::PositionOutOfRange(0));
    }
    seidel(2 * n - 1, n)
}

/// First entry of even row 2n: the median Genocchi numbers 1, 2, 8, 56, ...
pub fn genocchi_median(n: usize) -> Result<BigInt> {
    if n == 0 {
        return Err(Error::PositionOutOfRange(0));
    }
    seidel(2 * n, 1)
}

/// Entringer rows 1..=max_n: row n holds E(n, 0..=n) with
/// E(1, 1) = 1, E(n, 0) = 0 and E(n, k) = E(n, k-1) + E(n-1, n-k).
pub fn entringer_rows(max_n: usize) -> Vec<Vec<BigInt>> {
    let mut rows: Vec<Vec<BigInt>> = Vec::with_capacity(max_n);
    for n in 1..=max_n {
        let mut row = vec![BigInt::from(0); n + 1];
        for k in 1..=n {
            let above = if n == 1 {
                if k == 1 {
                    BigInt::from(1)
                } else {
                    BigInt::from(0)
                }
            } else {
                rows[n - 2][n - k].clone()
            };
            row[k] = row[k - 1].clone() + above;
        }
        rows.push(row);
    }
    rows
}

/// Entringer number E(n, k); requires n >= 1 and k <= n.
pub fn entringer(n: usize, k: usize) -> Result<BigInt> {
    if n == 0 {
        return Err(Error::Precondition("entringer requires n >= 1"));
    }
    if k > n {
        return Err(Error::PositionOutOfRange(k));
    }
    Ok(entringer_rows(n)[n - 1][k].clone())
}

/// Euler number: up-down permutations of 1..=n; E(n, n) for n >= 1.
pub fn euler_number(n: usize) -> BigInt {
    if n == 0 {
        return BigInt::from(1);
    }
    entringer_rows(n)[n - 1][n].clone()
}
