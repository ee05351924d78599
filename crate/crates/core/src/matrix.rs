//! Square `2g x 2g` matrices over `F_p` together with the standard
//! alternating form
//!
//! ```text
//! J = [  0   I_g ]
//!     [ -I_g  0  ]
//! ```
//!
//! so that `<u, v> = u^T J v = sum_i (u_i v_{g+i} - u_{g+i} v_i)`.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::field::{FieldElem, Multiplier, PrimeField};
use crate::poly::Poly;

/// Largest dimension accepted by [`SpMatrix::det`], which runs in `O(n 2^n)`.
pub const MAX_DET_DIM: usize = 20;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SpMatrix {
    field: PrimeField,
    g: usize,
    entries: Vec<FieldElem>,
}

/// `<u, v>` for the standard form on `F_p^{2g}`.
#[inline]
pub fn pairing(field: PrimeField, u: &[FieldElem], v: &[FieldElem]) -> FieldElem {
    let g = u.len() / 2;
    debug_assert_eq!(u.len(), v.len());
    let mut acc = 0u64;
    let p = u64::from(field.modulus());
    for i in 0..g {
        acc += u64::from(u[i].value()) * u64::from(v[g + i].value());
        acc += (p - u64::from(v[i].value())) * u64::from(u[g + i].value());
        acc %= p;
    }
    field.from_canonical(acc as u32)
}

impl SpMatrix {
    pub fn zeros(field: PrimeField, g: usize) -> Self {
        let n = 2 * g;
        SpMatrix {
            field,
            g,
            entries: vec![FieldElem::ZERO; n * n],
        }
    }

    pub fn identity(field: PrimeField, g: usize) -> Self {
        let mut m = SpMatrix::zeros(field, g);
        for i in 0..2 * g {
            m.set(i, i, FieldElem::ONE);
        }
        m
    }

    /// Row-major entries as signed integers; the length must be `(2g)^2`.
    pub fn from_ints(field: PrimeField, g: usize, entries: &[i64]) -> Result<Self> {
        let n = 2 * g;
        if entries.len() != n * n {
            return Err(Error::invalid("entry count does not match 2g x 2g"));
        }
        Ok(SpMatrix {
            field,
            g,
            entries: entries.iter().map(|&v| field.elem(v)).collect(),
        })
    }

    pub fn from_entries(field: PrimeField, g: usize, entries: Vec<FieldElem>) -> Result<Self> {
        if entries.len() != 4 * g * g {
            return Err(Error::invalid("entry count does not match 2g x 2g"));
        }
        Ok(SpMatrix { field, g, entries })
    }

    /// Builds the matrix whose `j`-th column is `columns[j]`.
    pub fn from_columns(field: PrimeField, g: usize, columns: &[Vec<FieldElem>]) -> Self {
        let n = 2 * g;
        let mut m = SpMatrix::zeros(field, g);
        for (j, col) in columns.iter().enumerate() {
            for (i, &v) in col.iter().enumerate() {
                m.entries[i * n + j] = v;
            }
        }
        m
    }

    /// The Gram matrix `J` of the standard form.
    pub fn symplectic_form(field: PrimeField, g: usize) -> Self {
        let mut m = SpMatrix::zeros(field, g);
        for i in 0..g {
            m.set(i, g + i, FieldElem::ONE);
            m.set(g + i, i, field.neg(FieldElem::ONE));
        }
        m
    }

    /// `diag(I_g, gamma I_g)`, the fixed element of multiplier `gamma`.
    pub fn coset_representative(field: PrimeField, g: usize, gamma: Multiplier) -> Self {
        let mut m = SpMatrix::identity(field, g);
        for i in g..2 * g {
            m.set(i, i, gamma.elem());
        }
        m
    }

    #[inline]
    pub fn field(&self) -> PrimeField {
        self.field
    }

    #[inline]
    pub fn genus(&self) -> usize {
        self.g
    }

    #[inline]
    pub fn dim(&self) -> usize {
        2 * self.g
    }

    #[inline]
    pub fn entries(&self) -> &[FieldElem] {
        &self.entries
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> FieldElem {
        self.entries[i * self.dim() + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: FieldElem) {
        let n = self.dim();
        self.entries[i * n + j] = v;
    }

    pub fn row(&self, i: usize) -> &[FieldElem] {
        let n = self.dim();
        &self.entries[i * n..(i + 1) * n]
    }

    pub fn column(&self, j: usize) -> Vec<FieldElem> {
        (0..self.dim()).map(|i| self.get(i, j)).collect()
    }

    pub fn transpose(&self) -> Self {
        let n = self.dim();
        let mut t = SpMatrix::zeros(self.field, self.g);
        for i in 0..n {
            for j in 0..n {
                t.entries[j * n + i] = self.entries[i * n + j];
            }
        }
        t
    }

    pub fn mul(&self, rhs: &SpMatrix) -> SpMatrix {
        assert_eq!(self.g, rhs.g, "dimension mismatch");
        let n = self.dim();
        let p = u64::from(self.field.modulus());
        let mut out = SpMatrix::zeros(self.field, self.g);
        let mut acc = vec![0u64; n];
        for i in 0..n {
            acc.iter_mut().for_each(|a| *a = 0);
            for k in 0..n {
                let a = u64::from(self.entries[i * n + k].value());
                if a == 0 {
                    continue;
                }
                for (j, slot) in acc.iter_mut().enumerate() {
                    *slot = (*slot + a * u64::from(rhs.entries[k * n + j].value())) % p;
                }
            }
            for (slot, &a) in out.entries[i * n..(i + 1) * n].iter_mut().zip(&acc) {
                *slot = self.field.from_canonical(a as u32);
            }
        }
        out
    }

    /// `A v`
    pub fn apply(&self, v: &[FieldElem]) -> Vec<FieldElem> {
        let f = self.field;
        (0..self.dim())
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(FieldElem::ZERO, |acc, (&a, &b)| f.mul_add(a, b, acc))
            })
            .collect()
    }

    /// Returns `gamma` when `A^T J A = gamma J` with `gamma != 0`.
    pub fn similitude_multiplier(&self) -> Option<Multiplier> {
        let (g, n) = (self.g, self.dim());
        if g == 0 {
            return None;
        }
        let cols: Vec<Vec<FieldElem>> = (0..n).map(|j| self.column(j)).collect();
        let gamma = pairing(self.field, &cols[0], &cols[g]);
        if gamma.is_zero() {
            return None;
        }
        for i in 0..n {
            for j in i + 1..n {
                let want = if j == i + g && i < g {
                    gamma
                } else {
                    FieldElem::ZERO
                };
                if pairing(self.field, &cols[i], &cols[j]) != want {
                    return None;
                }
            }
        }
        Multiplier::from_elem(gamma).ok()
    }

    /// Determinant by dynamic programming over column subsets (Laplace
    /// expansion with shared minors). Uses no field division at all.
    pub fn det(&self) -> FieldElem {
        let n = self.dim();
        assert!(n <= MAX_DET_DIM, "det limited to dimension {MAX_DET_DIM}");
        let f = self.field;
        let mut dp = vec![FieldElem::ZERO; 1 << n];
        dp[0] = FieldElem::ONE;
        for mask in 0usize..(1 << n) {
            let cur = dp[mask];
            if cur.is_zero() {
                continue;
            }
            let row = mask.count_ones() as usize;
            if row == n {
                continue;
            }
            for c in 0..n {
                if mask & (1 << c) != 0 {
                    continue;
                }
                let a = self.get(row, c);
                if a.is_zero() {
                    continue;
                }
                let term = f.mul(cur, a);
                let next = mask | (1 << c);
                dp[next] = if (mask >> (c + 1)).count_ones() % 2 == 0 {
                    f.add(dp[next], term)
                } else {
                    f.sub(dp[next], term)
                };
            }
        }
        dp[(1 << n) - 1]
    }

    /// Characteristic polynomial `det(x I - A)` by the Samuelson-Berkowitz
    /// recursion. Only ring operations are used, so the result is valid in
    /// every characteristic.
    pub fn charpoly(&self) -> Poly {
        let f = self.field;
        let n = self.dim();
        if n == 0 {
            return Poly::one(f);
        }
        // Coefficients highest degree first while building.
        let mut p = vec![FieldElem::ONE, f.neg(self.get(n - 1, n - 1))];
        let mut v = Vec::with_capacity(n);
        let mut w = Vec::with_capacity(n);
        for k in (0..n - 1).rev() {
            let m = n - 1 - k;
            let mut t = Vec::with_capacity(m + 2);
            t.push(FieldElem::ONE);
            t.push(f.neg(self.get(k, k)));
            v.clear();
            v.extend((k + 1..n).map(|i| self.get(i, k)));
            for step in 0..m {
                let rv = (0..m).fold(FieldElem::ZERO, |acc, j| {
                    f.mul_add(self.get(k, k + 1 + j), v[j], acc)
                });
                t.push(f.neg(rv));
                if step + 1 < m {
                    w.clear();
                    w.extend((0..m).map(|i| {
                        (0..m).fold(FieldElem::ZERO, |acc, j| {
                            f.mul_add(self.get(k + 1 + i, k + 1 + j), v[j], acc)
                        })
                    }));
                    core::mem::swap(&mut v, &mut w);
                }
            }
            let next: Vec<FieldElem> = (0..m + 2)
                .map(|i| {
                    (0..=i.min(m)).fold(FieldElem::ZERO, |acc, j| f.mul_add(t[i - j], p[j], acc))
                })
                .collect();
            p = next;
        }
        p.reverse();
        Poly::new(f, p)
    }
}

impl fmt::Display for SpMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.dim();
        f.write_str("[")?;
        for i in 0..n {
            if i > 0 {
                f.write_str(", ")?;
            }
            f.write_str("[")?;
            for j in 0..n {
                if j > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
            f.write_str("]")?;
        }
        f.write_str("]")
    }
}
