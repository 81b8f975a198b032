//! Exact integer linear algebra: Smith and Hermite normal forms, integer
//! kernels, quotient presentations of finitely generated abelian groups and
//! splittings of saturated sublattices.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::vector::Vector;

/// Dense matrix of arbitrary-precision integers, row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = BigInt::one();
        }
        m
    }

    /// Builds a matrix from rows of machine integers. All rows must share `cols`.
    pub fn from_rows(cols: usize, rows: &[Vector]) -> Self {
        let mut m = Self::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), cols, "ragged row {i}");
            for (j, x) in r.iter().enumerate() {
                m.data[i * cols + j] = BigInt::from(*x);
            }
        }
        m
    }

    /// Builds a matrix whose columns are the given vectors of length `rows`.
    pub fn from_columns(rows: usize, columns: &[Vector]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            assert_eq!(c.len(), rows, "ragged column {j}");
            for (i, x) in c.iter().enumerate() {
                m.data[i * columns.len() + j] = BigInt::from(*x);
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

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: BigInt) {
        self.data[i * self.cols + j] = x;
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let idx = i * other.cols + j;
                    out.data[idx] += a * other.get(k, j);
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[i64]) -> Vec<BigInt> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(BigInt::zero(), |acc, (a, b)| acc + a * BigInt::from(*b))
            })
            .collect()
    }

    /// Sub-matrix of the listed columns.
    pub fn select_columns(&self, cols: &[usize]) -> IntMatrix {
        let mut out = Self::zeros(self.rows, cols.len());
        for i in 0..self.rows {
            for (jj, &j) in cols.iter().enumerate() {
                out.set(i, jj, self.get(i, j).clone());
            }
        }
        out
    }

    pub fn select_rows(&self, rows: &[usize]) -> IntMatrix {
        let mut out = Self::zeros(rows.len(), self.cols);
        for (ii, &i) in rows.iter().enumerate() {
            for j in 0..self.cols {
                out.set(ii, j, self.get(i, j).clone());
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self.get(i, j).is_zero()))
    }

    /// Determinant of a square matrix (fraction-free Bareiss elimination).
    pub fn determinant(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut a: Vec<Vec<BigInt>> = (0..n).map(|i| self.row(i).to_vec()).collect();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                    Some(i) => {
                        a.swap(i, k);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                    a[i][j] = v / &prev;
                }
            }
            prev = a[k][k].clone();
        }
        sign * a[n - 1][n - 1].clone()
    }

    pub fn rank(&self) -> usize {
        smith_normal_form(self).rank()
    }

    /// Converts to machine integers, failing if any entry does not fit.
    pub fn to_i64_rows(&self) -> Result<Vec<Vector>> {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(big_to_i64).collect())
            .collect()
    }

    pub fn to_i64_columns(&self) -> Result<Vec<Vector>> {
        self.transpose().to_i64_rows()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[dst] += factor * row[src]
    fn add_row(&mut self, dst: usize, src: usize, factor: &BigInt) {
        if factor.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let v = self.get(src, j) * factor;
            self.data[dst * self.cols + j] += v;
        }
    }

    /// col[dst] += factor * col[src]
    fn add_col(&mut self, dst: usize, src: usize, factor: &BigInt) {
        if factor.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let v = self.get(i, src) * factor;
            self.data[i * self.cols + dst] += v;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let idx = i * self.cols + j;
            self.data[idx] = -&self.data[idx];
        }
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

pub(crate) fn big_to_i64(x: &BigInt) -> Result<i64> {
    x.to_i64().ok_or(Error::Overflow)
}

/// Result of a Smith normal form computation: `u * m * v == s`.
///
/// `u_inv` and `v_inv` are the exact inverses of the unimodular transforms,
/// tracked alongside the elimination.
#[derive(Clone, Debug)]
pub struct Smith {
    pub s: IntMatrix,
    pub u: IntMatrix,
    pub v: IntMatrix,
    pub u_inv: IntMatrix,
    pub v_inv: IntMatrix,
}

impl Smith {
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.s.rows.min(self.s.cols))
            .map(|i| self.s.get(i, i).clone())
            .take_while(|d| !d.is_zero())
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.diagonal().len()
    }
}

/// Smith normal form by elementary row and column operations.
///
/// The pivot at each stage is the entry of smallest absolute value in the
/// remaining block (first in row-major order on ties), which makes the
/// transforms deterministic.
pub fn smith_normal_form(m: &IntMatrix) -> Smith {
    let (r, c) = (m.rows, m.cols);
    let mut s = m.clone();
    let mut u = IntMatrix::identity(r);
    let mut u_inv = IntMatrix::identity(r);
    let mut v = IntMatrix::identity(c);
    let mut v_inv = IntMatrix::identity(c);

    for t in 0..r.min(c) {
        loop {
            let mut best: Option<(usize, usize)> = None;
            for i in t..r {
                for j in t..c {
                    let x = s.get(i, j);
                    if x.is_zero() {
                        continue;
                    }
                    match best {
                        Some((bi, bj)) if s.get(bi, bj).abs() <= x.abs() => {}
                        _ => best = Some((i, j)),
                    }
                }
            }
            let Some((pi, pj)) = best else {
                return Smith { s, u, v, u_inv, v_inv };
            };
            s.swap_rows(t, pi);
            u.swap_rows(t, pi);
            u_inv.swap_cols(t, pi);
            s.swap_cols(t, pj);
            v.swap_cols(t, pj);
            v_inv.swap_rows(t, pj);

            let pivot = s.get(t, t).clone();
            let mut clean = true;
            for i in t + 1..r {
                if s.get(i, t).is_zero() {
                    continue;
                }
                let q = s.get(i, t).div_floor(&pivot);
                let nq = -&q;
                s.add_row(i, t, &nq);
                u.add_row(i, t, &nq);
                u_inv.add_col(t, i, &q);
                if !s.get(i, t).is_zero() {
                    clean = false;
                }
            }
            for j in t + 1..c {
                if s.get(t, j).is_zero() {
                    continue;
                }
                let q = s.get(t, j).div_floor(&pivot);
                let nq = -&q;
                s.add_col(j, t, &nq);
                v.add_col(j, t, &nq);
                v_inv.add_row(t, j, &q);
                if !s.get(t, j).is_zero() {
                    clean = false;
                }
            }
            if !clean {
                continue;
            }
            // the pivot must divide the remaining block
            let bad_row = (t + 1..r).find(|&i| (t + 1..c).any(|j| !s.get(i, j).is_multiple_of(&pivot)));
            if let Some(i) = bad_row {
                let one = BigInt::one();
                s.add_row(t, i, &one);
                u.add_row(t, i, &one);
                u_inv.add_col(i, t, &(-one));
                continue;
            }
            break;
        }
        if s.get(t, t).is_negative() {
            s.negate_row(t);
            u.negate_row(t);
            // column t of u_inv flips sign
            for i in 0..r {
                let idx = i * r + t;
                u_inv.data[idx] = -&u_inv.data[idx];
            }
        }
    }
    Smith { s, u, v, u_inv, v_inv }
}

/// Row-style Hermite normal form of the lattice spanned by `rows`.
///
/// Returns the nonzero rows: echelon form with positive pivots and entries
/// above each pivot reduced into `[0, pivot)`. The output is canonical for
/// the lattice.
pub fn hermite_rows(cols: usize, rows: &[Vector]) -> Vec<Vector> {
    let mut a: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
        .collect();
    let mut pr = 0;
    let mut pivots = Vec::new();
    for col in 0..cols {
        if pr >= a.len() {
            break;
        }
        loop {
            let best = (pr..a.len())
                .filter(|&i| !a[i][col].is_zero())
                .min_by(|&x, &y| a[x][col].abs().cmp(&a[y][col].abs()));
            let Some(b) = best else { break };
            a.swap(pr, b);
            let mut done = true;
            for i in pr + 1..a.len() {
                if a[i][col].is_zero() {
                    continue;
                }
                let q = a[i][col].div_floor(&a[pr][col]);
                let pivot_row = a[pr].clone();
                for (x, p) in a[i].iter_mut().zip(&pivot_row) {
                    *x -= &q * p;
                }
                if !a[i][col].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if pr < a.len() && !a[pr][col].is_zero() {
            if a[pr][col].is_negative() {
                for x in a[pr].iter_mut() {
                    *x = -&*x;
                }
            }
            for i in 0..pr {
                let q = a[i][col].div_floor(&a[pr][col]);
                let pivot_row = a[pr].clone();
                for (x, p) in a[i].iter_mut().zip(&pivot_row) {
                    *x -= &q * p;
                }
            }
            pivots.push(col);
            pr += 1;
        }
    }
    a.truncate(pr);
    a.into_iter()
        .map(|r| r.iter().map(|x| x.to_i64().expect("HNF entry overflow")).collect())
        .collect()
}

/// Lattice basis (as columns) of `{x : m x = 0}`, canonicalized by HNF.
pub fn kernel_basis(m: &IntMatrix) -> IntMatrix {
    let smith = smith_normal_form(m);
    let rank = smith.rank();
    let cols: Vec<usize> = (rank..m.cols).collect();
    let raw = smith.v.select_columns(&cols);
    let raw_cols = raw.to_i64_columns().expect("kernel entry overflow");
    let hnf = hermite_rows(m.cols, &raw_cols);
    IntMatrix::from_columns(m.cols, &hnf)
}

/// `Z^free_rank ⊕ Z/t_1 ⊕ ... ⊕ Z/t_n` with `t_i | t_{i+1}` and `t_i ≥ 2`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct AbelianGroupPresentation {
    pub free_rank: usize,
    pub torsion_orders: Vec<i64>,
}

impl AbelianGroupPresentation {
    pub fn is_free(&self) -> bool {
        self.torsion_orders.is_empty()
    }
}

/// Element of an [`AbelianGroupPresentation`]: free coordinates plus
/// residues reduced into `[0, t_i)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct GroupElement {
    pub free: Vec<i64>,
    pub torsion: Vec<i64>,
}

impl GroupElement {
    pub fn is_zero(&self) -> bool {
        self.free.iter().all(|&x| x == 0) && self.torsion.iter().all(|&x| x == 0)
    }
}

/// Projection `Z^n -> Z^n / <subgroup>` read off the Smith transform.
#[derive(Clone, Debug)]
pub struct QuotientMap {
    group: AbelianGroupPresentation,
    // rows of U feeding torsion coordinates, with their moduli
    torsion_rows: Vec<(Vector, i64)>,
    free_rows: Vec<Vector>,
    // columns of U^{-1} used to lift canonical representatives
    torsion_lift: Vec<Vector>,
    free_lift: Vec<Vector>,
    ambient_rank: usize,
}

impl QuotientMap {
    pub fn group(&self) -> &AbelianGroupPresentation {
        &self.group
    }

    pub fn ambient_rank(&self) -> usize {
        self.ambient_rank
    }

    pub fn project(&self, v: &[i64]) -> GroupElement {
        debug_assert_eq!(v.len(), self.ambient_rank);
        let dot = |row: &Vector| -> i128 {
            row.iter().zip(v).map(|(&a, &b)| a as i128 * b as i128).sum()
        };
        GroupElement {
            free: self.free_rows.iter().map(|r| dot(r) as i64).collect(),
            torsion: self
                .torsion_rows
                .iter()
                .map(|(r, m)| dot(r).rem_euclid(*m as i128) as i64)
                .collect(),
        }
    }

    /// Canonical representative in `Z^n` of a group element.
    pub fn lift(&self, e: &GroupElement) -> Vector {
        let mut out = vec![0i64; self.ambient_rank];
        for (col, &x) in self.torsion_lift.iter().zip(&e.torsion) {
            for (o, c) in out.iter_mut().zip(col) {
                *o += c * x;
            }
        }
        for (col, &x) in self.free_lift.iter().zip(&e.free) {
            for (o, c) in out.iter_mut().zip(col) {
                *o += c * x;
            }
        }
        out
    }
}

/// Presentation of `Z^ambient_rank / <subgroup_gens>` with its projection.
pub fn quotient_presentation(ambient_rank: usize, subgroup_gens: &[Vector]) -> QuotientMap {
    let m = IntMatrix::from_columns(ambient_rank, subgroup_gens);
    let smith = smith_normal_form(&m);
    let diag = smith.diagonal();
    let rank = diag.len();
    let u_rows = smith.u.to_i64_rows().expect("transform overflow");
    let u_inv_cols = smith.u_inv.to_i64_columns().expect("transform overflow");
    let mut torsion_rows = Vec::new();
    let mut torsion_lift = Vec::new();
    let mut torsion_orders = Vec::new();
    for (i, d) in diag.iter().enumerate() {
        let d = big_to_i64(d).expect("elementary divisor overflow");
        if d >= 2 {
            torsion_rows.push((u_rows[i].clone(), d));
            torsion_lift.push(u_inv_cols[i].clone());
            torsion_orders.push(d);
        }
    }
    QuotientMap {
        group: AbelianGroupPresentation {
            free_rank: ambient_rank - rank,
            torsion_orders,
        },
        torsion_rows,
        free_rows: u_rows[rank..].to_vec(),
        torsion_lift,
        free_lift: u_inv_cols[rank..].to_vec(),
        ambient_rank,
    }
}

/// A retraction onto a direct summand.
///
/// `basis` holds a lattice basis of the subgroup as columns (the given
/// generators themselves when they are independent) and
/// `retraction * basis == identity`.
#[derive(Clone, Debug)]
pub struct Splitting {
    pub basis: IntMatrix,
    pub retraction: IntMatrix,
}

impl Splitting {
    /// Coordinates of the retraction of `v`, relative to `basis`.
    pub fn retract(&self, v: &[i64]) -> Vector {
        self.retraction
            .mul_vec(v)
            .iter()
            .map(|x| big_to_i64(x).expect("retraction overflow"))
            .collect()
    }
}

/// Retraction `Z^ambient_rank -> <subgroup_gens>` if the subgroup is a direct
/// summand, `Error::NoSplit` otherwise.
pub fn splitting_section(subgroup_gens: &[Vector], ambient_rank: usize) -> Result<Splitting> {
    let g = IntMatrix::from_columns(ambient_rank, subgroup_gens);
    let smith = smith_normal_form(&g);
    let diag = smith.diagonal();
    if diag.iter().any(|d| !d.is_one()) {
        return Err(Error::NoSplit);
    }
    let rank = diag.len();
    let first: Vec<usize> = (0..rank).collect();
    let u_top = smith.u.select_rows(&first);
    if rank == subgroup_gens.len() {
        Ok(Splitting {
            basis: g,
            retraction: smith.v.mul(&u_top),
        })
    } else {
        Ok(Splitting {
            basis: smith.u_inv.select_columns(&first),
            retraction: u_top,
        })
    }
}

/// A sublattice of `Z^n` with its canonical (HNF) basis and a coordinate
/// solver.
#[derive(Clone, Debug)]
pub struct Lattice {
    ambient_rank: usize,
    basis: Vec<Vector>,
    u_rows: Vec<Vec<i128>>,
    v_rows: Vec<Vec<i128>>,
    diag: Vec<i128>,
}

impl Lattice {
    pub fn spanned_by(ambient_rank: usize, gens: &[Vector]) -> Self {
        let basis = hermite_rows(ambient_rank, gens);
        let m = IntMatrix::from_columns(ambient_rank, &basis);
        let smith = smith_normal_form(&m);
        let to128 = |mat: &IntMatrix| -> Vec<Vec<i128>> {
            (0..mat.rows())
                .map(|i| {
                    mat.row(i)
                        .iter()
                        .map(|x| x.to_i128().expect("transform overflow"))
                        .collect()
                })
                .collect()
        };
        Lattice {
            ambient_rank,
            diag: smith
                .diagonal()
                .iter()
                .map(|d| d.to_i128().expect("divisor overflow"))
                .collect(),
            u_rows: to128(&smith.u),
            v_rows: to128(&smith.v),
            basis,
        }
    }

    pub fn ambient_rank(&self) -> usize {
        self.ambient_rank
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vector] {
        &self.basis
    }

    /// Coordinates of `v` in the HNF basis, or `None` if `v` is not in the lattice.
    pub fn coordinates(&self, v: &[i64]) -> Option<Vector> {
        debug_assert_eq!(v.len(), self.ambient_rank);
        let r = self.basis.len();
        let w: Vec<i128> = self
            .u_rows
            .iter()
            .map(|row| row.iter().zip(v).map(|(&a, &b)| a * b as i128).sum())
            .collect();
        if w[r..].iter().any(|&x| x != 0) {
            return None;
        }
        let mut y = Vec::with_capacity(r);
        for (x, d) in w.iter().zip(&self.diag) {
            if x % d != 0 {
                return None;
            }
            y.push(x / d);
        }
        self.v_rows
            .iter()
            .map(|row| {
                let s: i128 = row.iter().zip(&y).map(|(a, b)| a * b).sum();
                i64::try_from(s).ok()
            })
            .collect()
    }

    pub fn contains(&self, v: &[i64]) -> bool {
        self.coordinates(v).is_some()
    }

    /// Ambient vector with the given coordinates.
    pub fn point(&self, coords: &[i64]) -> Vector {
        let mut out = vec![0i64; self.ambient_rank];
        for (b, &c) in self.basis.iter().zip(coords) {
            for (o, x) in out.iter_mut().zip(b) {
                *o += x * c;
            }
        }
        out
    }

    /// Integer functional on the ambient space restricting to a positive
    /// multiple of `f` (given in lattice coordinates) on the lattice.
    pub fn ambient_functional(&self, f: &[i64]) -> Vector {
        // coords(v) = V * diag^{-1} * (U v)[..r]
        let r = self.basis.len();
        let scale: i128 = self.diag.iter().fold(1i128, |acc, &d| acc.lcm(&d));
        let mut out = vec![0i128; self.ambient_rank];
        for i in 0..r {
            // weight of (U v)_i in f . coords
            let coef: i128 = (0..r).map(|j| f[j] as i128 * self.v_rows[j][i]).sum::<i128>() * (scale / self.diag[i]);
            for (o, u) in out.iter_mut().zip(&self.u_rows[i]) {
                *o += coef * u;
            }
        }
        let g = out.iter().fold(0i128, |acc, x| acc.gcd(x));
        out.iter()
            .map(|&x| i64::try_from(if g > 1 { x / g } else { x }).expect("functional overflow"))
            .collect()
    }
}
