//! Exact rational linear algebra.
//!
//! Everything here works over `BigRational`; there is no floating point in
//! the crate. Ranks use fraction-free (Bareiss) elimination over integers,
//! bases and coordinates use reduced row echelon form, which is unique and
//! therefore gives deterministic representatives.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn zero_vec(n: usize) -> Vec<Rational> {
    vec![Rational::zero(); n]
}

pub fn is_zero_vec(v: &[Rational]) -> bool {
    v.iter().all(Zero::is_zero)
}

/// `dst += coeff * src`
pub fn axpy(dst: &mut [Rational], coeff: &Rational, src: &[Rational]) {
    if coeff.is_zero() {
        return;
    }
    for (d, s) in dst.iter_mut().zip(src) {
        if !s.is_zero() {
            *d += coeff * s;
        }
    }
}

/// Dense row-major matrix of exact rationals.
#[derive(Clone, PartialEq, Eq)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl fmt::Debug for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "RationalMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|c| self.get(r, c).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl RationalMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RationalMatrix { rows, cols, data: zero_vec(rows * cols) }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == ncols), "ragged rows");
        RationalMatrix { rows: nrows, cols: ncols, data: rows.into_iter().flatten().collect() }
    }

    /// Row-major integer entries; `entries.len()` must equal `rows * cols`.
    pub fn from_i64(rows: usize, cols: usize, entries: &[i64]) -> Self {
        assert_eq!(entries.len(), rows * cols);
        RationalMatrix { rows, cols, data: entries.iter().map(|&x| rat(x)).collect() }
    }

    /// Matrix whose columns are the given vectors (each of length `rows`).
    pub fn from_columns(rows: usize, columns: &[Vec<Rational>]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (c, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows);
            for (r, x) in col.iter().enumerate() {
                if !x.is_zero() {
                    m.set(r, c, x.clone());
                }
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Rational {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Rational) {
        self.data[r * self.cols + c] = v;
    }

    pub fn add_to(&mut self, r: usize, c: usize, v: &Rational) {
        self.data[r * self.cols + c] += v;
    }

    pub fn row(&self, r: usize) -> &[Rational] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<Rational> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<Rational>> {
        (0..self.cols).map(|c| self.column(c)).collect()
    }

    pub fn is_zero(&self) -> bool {
        is_zero_vec(&self.data)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                let x = self.get(r, c);
                if !x.is_zero() {
                    t.set(c, r, x.clone());
                }
            }
        }
        t
    }

    pub fn mul(&self, other: &RationalMatrix) -> RationalMatrix {
        assert_eq!(self.cols, other.rows, "matrix product dimension mismatch");
        let mut out = Self::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = other.get(k, c);
                    if !b.is_zero() {
                        out.data[r * other.cols + c] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(self.cols, v.len(), "matrix-vector dimension mismatch");
        (0..self.rows)
            .map(|r| {
                let mut acc = Rational::zero();
                for (a, x) in self.row(r).iter().zip(v) {
                    if !a.is_zero() && !x.is_zero() {
                        acc += a * x;
                    }
                }
                acc
            })
            .collect()
    }

    pub fn add(&self, other: &RationalMatrix) -> RationalMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        RationalMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &RationalMatrix) -> RationalMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        RationalMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn scale(&self, s: &Rational) -> RationalMatrix {
        RationalMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| a * s).collect() }
    }

    pub fn hstack(&self, other: &RationalMatrix) -> RationalMatrix {
        assert_eq!(self.rows, other.rows);
        let mut out = Self::zeros(self.rows, self.cols + other.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(r, c, self.get(r, c).clone());
            }
            for c in 0..other.cols {
                out.set(r, self.cols + c, other.get(r, c).clone());
            }
        }
        out
    }

    pub fn vstack(&self, other: &RationalMatrix) -> RationalMatrix {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        RationalMatrix { rows: self.rows + other.rows, cols: self.cols, data }
    }

    pub fn select_rows(&self, rows: &[usize]) -> RationalMatrix {
        let mut out = Self::zeros(rows.len(), self.cols);
        for (i, &r) in rows.iter().enumerate() {
            for c in 0..self.cols {
                out.set(i, c, self.get(r, c).clone());
            }
        }
        out
    }

    pub fn select_cols(&self, cols: &[usize]) -> RationalMatrix {
        let mut out = Self::zeros(self.rows, cols.len());
        for r in 0..self.rows {
            for (j, &c) in cols.iter().enumerate() {
                out.set(r, j, self.get(r, c).clone());
            }
        }
        out
    }

    /// Rank by fraction-free elimination: rows are scaled to integers, the
    /// pivot in each column is the entry of largest magnitude, and every
    /// update divides exactly by the previous pivot.
    pub fn rank(&self) -> usize {
        let mut rows: Vec<Vec<BigInt>> = (0..self.rows)
            .map(|r| integer_row(self.row(r)))
            .filter(|row| row.iter().any(|x| !x.is_zero()))
            .collect();
        let mut rank = 0;
        let mut prev = BigInt::one();
        for c in 0..self.cols {
            let pivot = (rank..rows.len())
                .filter(|&i| !rows[i][c].is_zero())
                .max_by(|&a, &b| rows[a][c].abs().cmp(&rows[b][c].abs()).then(b.cmp(&a)));
            let Some(p) = pivot else { continue };
            rows.swap(rank, p);
            let (head, tail) = rows.split_at_mut(rank + 1);
            let prow = &head[rank];
            let pv = prow[c].clone();
            for row in tail.iter_mut() {
                let a = row[c].clone();
                for j in c..self.cols {
                    let v = &pv * &row[j] - &a * &prow[j];
                    row[j] = v / &prev;
                }
            }
            prev = pv;
            rank += 1;
            if rank == rows.len() {
                break;
            }
        }
        rank
    }

    pub fn rref(&self) -> Rref {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else { continue };
            if p != r {
                for j in 0..m.cols {
                    m.data.swap(p * m.cols + j, r * m.cols + j);
                }
            }
            let inv = m.get(r, c).recip();
            for j in c..m.cols {
                let v = m.get(r, j) * &inv;
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let f = m.get(i, c).clone();
                if f.is_zero() {
                    continue;
                }
                for j in c..m.cols {
                    let v = m.get(r, j);
                    if !v.is_zero() {
                        let nv = m.get(i, j) - &f * v;
                        m.set(i, j, nv);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        Rref { matrix: m, pivots }
    }

    /// Basis of the null space, one vector per free column of the RREF,
    /// ordered by free column index.
    pub fn kernel(&self) -> Vec<Vec<Rational>> {
        let rref = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !rref.pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = zero_vec(self.cols);
                v[f] = Rational::one();
                for (i, &p) in rref.pivots.iter().enumerate() {
                    v[p] = -rref.matrix.get(i, f).clone();
                }
                v
            })
            .collect()
    }

    /// Columns of `self` that form a basis of the column space (the pivot
    /// columns, in order).
    pub fn column_space_basis(&self) -> Vec<Vec<Rational>> {
        self.rref().pivots.iter().map(|&c| self.column(c)).collect()
    }

    /// Some solution `x` of `self * x = b`, or `None` if inconsistent.
    pub fn solve(&self, b: &[Rational]) -> Option<Vec<Rational>> {
        assert_eq!(b.len(), self.rows);
        let aug = self.hstack(&RationalMatrix::from_columns(self.rows, &[b.to_vec()]));
        let rref = aug.rref();
        if rref.pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = zero_vec(self.cols);
        for (i, &p) in rref.pivots.iter().enumerate() {
            x[p] = rref.matrix.get(i, self.cols).clone();
        }
        Some(x)
    }

    /// Solve `self * X = rhs` column by column.
    pub fn solve_matrix(&self, rhs: &RationalMatrix) -> Option<RationalMatrix> {
        let cols: Option<Vec<Vec<Rational>>> = (0..rhs.cols).map(|c| self.solve(&rhs.column(c))).collect();
        cols.map(|cs| RationalMatrix::from_columns(self.cols, &cs))
    }

    pub fn first_nonzero_column(&self) -> Option<usize> {
        (0..self.cols).find(|&c| (0..self.rows).any(|r| !self.get(r, c).is_zero()))
    }
}

fn integer_row(row: &[Rational]) -> Vec<BigInt> {
    let mut lcm = BigInt::one();
    for x in row {
        if !x.is_zero() {
            let d = x.denom();
            lcm = num_integer_lcm(&lcm, d);
        }
    }
    row.iter().map(|x| (x * Rational::from_integer(lcm.clone())).to_integer()).collect()
}

fn num_integer_lcm(a: &BigInt, b: &BigInt) -> BigInt {
    let g = gcd(a.clone(), b.clone());
    (a / &g) * b
}

fn gcd(mut a: BigInt, mut b: BigInt) -> BigInt {
    while !b.is_zero() {
        let t = &a % &b;
        a = b;
        b = t;
    }
    a.abs()
}

#[derive(Clone, Debug)]
pub struct Rref {
    pub matrix: RationalMatrix,
    pub pivots: Vec<usize>,
}

/// A subspace kept in reduced row echelon form, growable one vector at a
/// time. Each stored row also remembers how it was combined from the
/// inserted vectors so coordinates relative to the inserted basis can be
/// recovered.
#[derive(Clone, Debug)]
pub struct EchelonBasis {
    dim: usize,
    rows: Vec<EchelonRow>,
    inserted: usize,
}

#[derive(Clone, Debug)]
struct EchelonRow {
    pivot: usize,
    vector: Vec<Rational>,
    combination: Vec<Rational>,
}

impl EchelonBasis {
    pub fn new(dim: usize) -> Self {
        EchelonBasis { dim, rows: Vec::new(), inserted: 0 }
    }

    pub fn from_vectors<'a>(dim: usize, vectors: impl IntoIterator<Item = &'a Vec<Rational>>) -> Self {
        let mut e = Self::new(dim);
        for v in vectors {
            e.insert(v);
        }
        e
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> Vec<usize> {
        self.rows.iter().map(|r| r.pivot).collect()
    }

    /// Reduce `v` against the stored rows. Returns the residual and the
    /// coefficients (per stored row) that were subtracted.
    fn reduce_tracked(&self, v: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
        assert_eq!(v.len(), self.dim);
        let mut residual = v.to_vec();
        let mut coeffs = zero_vec(self.rows.len());
        for (k, row) in self.rows.iter().enumerate() {
            let c = residual[row.pivot].clone();
            if !c.is_zero() {
                axpy(&mut residual, &-c.clone(), &row.vector);
                coeffs[k] = c;
            }
        }
        (residual, coeffs)
    }

    pub fn reduce(&self, v: &[Rational]) -> Vec<Rational> {
        self.reduce_tracked(v).0
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        is_zero_vec(&self.reduce(v))
    }

    /// Insert `v`; returns `true` if it was independent of the span.
    ///
    /// Inserted vectors are numbered in insertion order whether or not they
    /// were independent, so `coordinates` refers to that numbering.
    pub fn insert(&mut self, v: &[Rational]) -> bool {
        let index = self.inserted;
        self.inserted += 1;
        let (mut residual, coeffs) = self.reduce_tracked(v);
        let Some(pivot) = residual.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let mut combination = zero_vec(self.inserted);
        combination[index] = Rational::one();
        for (k, c) in coeffs.iter().enumerate() {
            if !c.is_zero() {
                let rc = self.rows[k].combination.clone();
                for (j, x) in rc.iter().enumerate() {
                    combination[j] -= c * x;
                }
            }
        }
        let inv = residual[pivot].recip();
        for x in residual.iter_mut() {
            *x *= &inv;
        }
        for x in combination.iter_mut() {
            *x *= &inv;
        }
        for row in self.rows.iter_mut() {
            row.combination.resize(self.inserted, Rational::zero());
            let c = row.vector[pivot].clone();
            if !c.is_zero() {
                axpy(&mut row.vector, &-c.clone(), &residual);
                axpy(&mut row.combination, &-c, &combination);
            }
        }
        let pos = self.rows.iter().position(|r| r.pivot > pivot).unwrap_or(self.rows.len());
        self.rows.insert(pos, EchelonRow { pivot, vector: residual, combination });
        true
    }

    /// Coordinates of `v` with respect to the inserted vectors (indexed by
    /// insertion order), or `None` if `v` is outside the span.
    pub fn coordinates(&self, v: &[Rational]) -> Option<Vec<Rational>> {
        let (residual, coeffs) = self.reduce_tracked(v);
        if !is_zero_vec(&residual) {
            return None;
        }
        let mut out = zero_vec(self.inserted);
        for (k, c) in coeffs.iter().enumerate() {
            if !c.is_zero() {
                let comb = &self.rows[k].combination;
                for (j, x) in comb.iter().enumerate() {
                    out[j] += c * x;
                }
            }
        }
        Some(out)
    }

    /// The stored echelon rows (a basis of the span).
    pub fn basis(&self) -> Vec<Vec<Rational>> {
        self.rows.iter().map(|r| r.vector.clone()).collect()
    }
}

/// Dimension of the span of `vectors`.
pub fn rank_of(dim: usize, vectors: &[Vec<Rational>]) -> usize {
    EchelonBasis::from_vectors(dim, vectors).rank()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_of_small_matrices() {
        assert_eq!(RationalMatrix::from_i64(2, 3, &[1, 2, 3, 2, 4, 6]).rank(), 1);
        assert_eq!(RationalMatrix::identity(4).rank(), 4);
        assert_eq!(RationalMatrix::zeros(3, 5).rank(), 0);
        assert_eq!(RationalMatrix::from_i64(3, 3, &[2, 1, 0, 4, 3, 1, 0, 1, 1]).rank(), 2);
    }

    #[test]
    fn rank_with_fractions() {
        let m = RationalMatrix::from_rows(vec![
            vec![ratio(1, 2), ratio(1, 3)],
            vec![ratio(3, 2), rat(1)],
        ]);
        assert_eq!(m.rank(), 1);
    }

    #[test]
    fn kernel_vectors_are_annihilated() {
        let m = RationalMatrix::from_i64(2, 4, &[1, 2, 0, -1, 0, 0, 1, 3]);
        let k = m.kernel();
        assert_eq!(k.len(), 2);
        for v in &k {
            assert!(is_zero_vec(&m.mul_vec(v)));
        }
    }

    #[test]
    fn solve_consistent_and_inconsistent() {
        let m = RationalMatrix::from_i64(2, 2, &[1, 1, 1, 1]);
        assert!(m.solve(&[rat(1), rat(2)]).is_none());
        let x = m.solve(&[rat(3), rat(3)]).unwrap();
        assert_eq!(m.mul_vec(&x), vec![rat(3), rat(3)]);
    }

    #[test]
    fn echelon_coordinates_follow_insertion_order() {
        let mut e = EchelonBasis::new(3);
        assert!(e.insert(&[rat(1), rat(1), rat(0)]));
        assert!(e.insert(&[rat(0), rat(1), rat(1)]));
        assert!(!e.insert(&[rat(1), rat(2), rat(1)]));
        let c = e.coordinates(&[rat(2), rat(3), rat(1)]).unwrap();
        assert_eq!(c[..2], [rat(2), rat(1)]);
        assert!(e.coordinates(&[rat(0), rat(0), rat(1)]).is_none());
    }
}
