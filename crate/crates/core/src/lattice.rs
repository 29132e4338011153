//! The lattices L and L', the discriminant group H = L'/L, the canonical
//! class K and the representatives r_h.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::graph::PlumbingGraph;
use crate::rational::{big_to_i64, frac_q, is_integer, q, Q, QMatrix};

#[derive(Clone, Debug)]
pub struct IntersectionData {
    /// (E_v, E_w).
    pub matrix: Vec<Vec<i64>>,
    /// det(-I), equal to |H|.
    pub det: i64,
    /// I^{-1}; entry (v,w) is (E*_v, E*_w).
    pub inverse: QMatrix,
}

impl IntersectionData {
    /// Inverse by fraction-free Gauss-Jordan elimination on -I. Without
    /// pivoting, the pivots are the leading principal minors, which doubles as
    /// the negative definiteness test.
    pub fn new(g: &PlumbingGraph) -> Result<Self> {
        let matrix = g.intersection_matrix();
        let n = matrix.len();
        let mut a: Vec<Vec<BigInt>> = (0..n)
            .map(|i| {
                let mut row: Vec<BigInt> = matrix[i].iter().map(|&x| BigInt::from(-x)).collect();
                row.extend((0..n).map(|j| BigInt::from(i64::from(i == j))));
                row
            })
            .collect();
        let mut prev = BigInt::one();
        for k in 0..n {
            let piv = a[k][k].clone();
            if !piv.is_positive() {
                return Err(Error::NotNegativeDefinite);
            }
            for i in 0..n {
                if i == k {
                    continue;
                }
                let f = a[i][k].clone();
                for j in 0..2 * n {
                    let t = &piv * &a[i][j] - &f * &a[k][j];
                    let (qt, r) = t.div_rem(&prev);
                    debug_assert!(r.is_zero());
                    a[i][j] = qt;
                }
            }
            prev = piv;
        }
        // Rows k < n-1 were last scaled at step n-1, so every diagonal entry is det.
        let det = prev.clone();
        let mut inverse = vec![vec![Q::zero(); n]; n];
        for i in 0..n {
            for j in 0..n {
                // (-I)^{-1} = adj / det and row i of the left block carries a factor a[i][i]/det = 1.
                let num = big_to_i64(&a[i][n + j])?;
                let den = big_to_i64(&a[i][i])?;
                inverse[i][j] = -Q::new(num, den);
            }
        }
        let det = big_to_i64(&det)?;
        let data = IntersectionData { matrix, det, inverse };
        data.verify()?;
        Ok(data)
    }

    fn verify(&self) -> Result<()> {
        let n = self.matrix.len();
        for i in 0..n {
            for j in 0..n {
                let s: Q = (0..n).map(|k| q(self.matrix[i][k]) * self.inverse[k][j]).sum();
                if s != q(i64::from(i == j)) {
                    return Err(Error::Invalid("inverse check failed".into()));
                }
            }
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.matrix.len()
    }

    pub fn is_empty(&self) -> bool {
        self.matrix.is_empty()
    }

    /// (x, y) for vectors in E-coordinates.
    pub fn pair(&self, x: &[Q], y: &[Q]) -> Q {
        let n = self.len();
        let mut s = Q::zero();
        for i in 0..n {
            for j in 0..n {
                if self.matrix[i][j] != 0 {
                    s += x[i] * y[j] * q(self.matrix[i][j]);
                }
            }
        }
        s
    }

    /// E-coordinates of sum y_v E*_v (column v of -I^{-1}).
    pub fn dual_to_e(&self, y: &[Q]) -> Vec<Q> {
        let n = self.len();
        (0..n).map(|i| -(0..n).map(|j| self.inverse[i][j] * y[j]).sum::<Q>()).collect()
    }

    /// E*-coordinates y_v = -(x, E_v).
    pub fn e_to_dual(&self, x: &[Q]) -> Vec<Q> {
        let n = self.len();
        (0..n).map(|i| -(0..n).map(|j| q(self.matrix[i][j]) * x[j]).sum::<Q>()).collect()
    }

    /// E-coordinates of E*_v.
    pub fn dual_vector(&self, v: usize) -> Vec<Q> {
        (0..self.len()).map(|i| -self.inverse[i][v]).collect()
    }

    /// The canonical class in E-coordinates: (K, E_v) = -b_v - 2.
    pub fn canonical_class(&self) -> LatticeVector {
        let rhs: Vec<Q> = (0..self.len()).map(|v| q(-self.matrix[v][v] - 2)).collect();
        let n = self.len();
        let k = (0..n).map(|i| (0..n).map(|j| self.inverse[i][j] * rhs[j]).sum()).collect();
        LatticeVector::in_e(k)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Basis {
    E,
    Dual,
}

/// Element of L' (or L tensor Q) with coordinates in one of the two bases.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeVector {
    pub coords: Vec<Q>,
    pub basis: Basis,
}

impl LatticeVector {
    pub fn in_e(coords: Vec<Q>) -> Self {
        LatticeVector { coords, basis: Basis::E }
    }

    pub fn in_dual(coords: Vec<Q>) -> Self {
        LatticeVector { coords, basis: Basis::Dual }
    }

    pub fn from_dual_ints(y: &[i64]) -> Self {
        Self::in_dual(y.iter().map(|&x| q(x)).collect())
    }

    pub fn e_coords(&self, d: &IntersectionData) -> Vec<Q> {
        match self.basis {
            Basis::E => self.coords.clone(),
            Basis::Dual => d.dual_to_e(&self.coords),
        }
    }

    pub fn dual_coords(&self, d: &IntersectionData) -> Vec<Q> {
        match self.basis {
            Basis::Dual => self.coords.clone(),
            Basis::E => d.e_to_dual(&self.coords),
        }
    }

    pub fn to_basis(&self, d: &IntersectionData, basis: Basis) -> Self {
        match basis {
            Basis::E => Self::in_e(self.e_coords(d)),
            Basis::Dual => Self::in_dual(self.dual_coords(d)),
        }
    }

    pub fn in_l(&self, d: &IntersectionData) -> bool {
        self.e_coords(d).iter().all(is_integer)
    }

    pub fn in_l_dual(&self, d: &IntersectionData) -> bool {
        self.dual_coords(d).iter().all(is_integer)
    }

    /// Integer E*-coordinates, if the vector lies in L'.
    pub fn dual_ints(&self, d: &IntersectionData) -> Result<Vec<i64>> {
        self.dual_coords(d)
            .iter()
            .map(|x| if is_integer(x) { Ok(*x.numer()) } else { Err(Error::NotInDualLattice) })
            .collect()
    }
}

/// H = L'/L through the Smith normal form U I V = D. In E*-coordinates L is
/// the column span of I, so the class of y is (U y)_i mod d_i.
#[derive(Clone, Debug)]
pub struct DiscriminantGroup {
    /// Nontrivial invariant factors d_1 | d_2 | ...
    pub factors: Vec<i64>,
    /// Rows of U belonging to the nontrivial factors.
    rows: Vec<Vec<i64>>,
    /// Columns of U^{-1} belonging to the nontrivial factors.
    lifts: Vec<Vec<i64>>,
    dim: usize,
}

pub type Class = Vec<i64>;

impl DiscriminantGroup {
    pub fn new(d: &IntersectionData) -> Result<Self> {
        let (diag, u, uinv) = smith_normal_form(&d.matrix)?;
        let mut factors = Vec::new();
        let mut rows = Vec::new();
        let mut lifts = Vec::new();
        let n = d.len();
        for (i, &f) in diag.iter().enumerate() {
            if f != 1 {
                factors.push(f);
                rows.push(u[i].clone());
                lifts.push((0..n).map(|r| uinv[r][i]).collect());
            }
        }
        let order: i64 = factors.iter().product();
        if order != d.det {
            return Err(Error::Invalid(format!("|H| = {order} but det = {}", d.det)));
        }
        Ok(DiscriminantGroup { factors, rows, lifts, dim: n })
    }

    pub fn order(&self) -> i64 {
        self.factors.iter().product()
    }

    pub fn zero(&self) -> Class {
        vec![0; self.factors.len()]
    }

    /// Class of an element given by integer E*-coordinates.
    pub fn class_of_dual(&self, y: &[i64]) -> Class {
        self.rows
            .iter()
            .zip(&self.factors)
            .map(|(row, &f)| {
                let s: i128 = row.iter().zip(y).map(|(&a, &b)| a as i128 * b as i128).sum();
                s.rem_euclid(f as i128) as i64
            })
            .collect()
    }

    pub fn class_of(&self, v: &LatticeVector, d: &IntersectionData) -> Result<Class> {
        Ok(self.class_of_dual(&v.dual_ints(d)?))
    }

    pub fn add(&self, a: &[i64], b: &[i64]) -> Class {
        a.iter().zip(b).zip(&self.factors).map(|((x, y), f)| (x + y).rem_euclid(*f)).collect()
    }

    pub fn neg(&self, a: &[i64]) -> Class {
        a.iter().zip(&self.factors).map(|(x, f)| (-x).rem_euclid(*f)).collect()
    }

    /// Some element of L' in the class, in integer E*-coordinates.
    pub fn lift(&self, h: &[i64]) -> Vec<i64> {
        let mut y = vec![0i64; self.dim];
        for (col, &c) in self.lifts.iter().zip(h) {
            for (yi, &x) in y.iter_mut().zip(col) {
                *yi += c * x;
            }
        }
        y
    }

    /// Order of g_v = [E*_v].
    pub fn order_of_dual(&self, v: usize) -> i64 {
        let mut unit = vec![0i64; self.dim];
        unit[v] = 1;
        self.class_of_dual(&unit)
            .iter()
            .zip(&self.factors)
            .map(|(&c, &f)| f / c.gcd(&f))
            .fold(1, |acc, o| acc.lcm(&o))
    }

    /// A lift with every E*-coordinate in [0, ord(g_v)).
    pub fn small_lift(&self, h: &[i64]) -> Vec<i64> {
        self.lift(h).iter().enumerate().map(|(v, y)| y.rem_euclid(self.order_of_dual(v))).collect()
    }

    /// r_h: the representative with E-coordinates in [0,1).
    pub fn representative(&self, h: &[i64], d: &IntersectionData) -> LatticeVector {
        if d.is_empty() {
            return LatticeVector::in_e(vec![]);
        }
        let y = self.lift(h);
        let yq: Vec<Q> = y.iter().map(|&x| q(x)).collect();
        LatticeVector::in_e(d.dual_to_e(&yq).iter().map(frac_q).collect())
    }

    /// All classes, in lexicographic order of their coordinates.
    pub fn elements(&self) -> Vec<Class> {
        let mut out = vec![vec![]];
        for &f in &self.factors {
            out = out
                .into_iter()
                .flat_map(|c: Vec<i64>| {
                    (0..f).map(move |x| {
                        let mut c = c.clone();
                        c.push(x);
                        c
                    })
                })
                .collect();
        }
        out
    }
}

/// Smith normal form of a square integer matrix: returns the diagonal with
/// d_1 | d_2 | ... (nonnegative), the row transform U and U^{-1}.
pub fn smith_normal_form(m: &[Vec<i64>]) -> Result<(Vec<i64>, Vec<Vec<i64>>, Vec<Vec<i64>>)> {
    let n = m.len();
    let mut a: Vec<Vec<BigInt>> = m.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
    let ident = |n: usize| -> Vec<Vec<BigInt>> {
        (0..n).map(|i| (0..n).map(|j| BigInt::from(i64::from(i == j))).collect()).collect()
    };
    let mut u = ident(n);
    let mut uinv = ident(n);

    // Row operation r_i <- r_i + f r_j; U follows, U^{-1} gets the inverse column op.
    fn add_row(a: &mut [Vec<BigInt>], u: &mut [Vec<BigInt>], uinv: &mut [Vec<BigInt>], i: usize, j: usize, f: &BigInt) {
        for k in 0..a[0].len() {
            let t = &a[j][k] * f;
            a[i][k] += t;
        }
        for k in 0..u[0].len() {
            let t = &u[j][k] * f;
            u[i][k] += t;
        }
        for r in uinv.iter_mut() {
            let t = &r[i] * f;
            r[j] -= t;
        }
    }
    fn swap_rows(a: &mut [Vec<BigInt>], u: &mut [Vec<BigInt>], uinv: &mut [Vec<BigInt>], i: usize, j: usize) {
        a.swap(i, j);
        u.swap(i, j);
        for r in uinv.iter_mut() {
            r.swap(i, j);
        }
    }
    fn add_col(a: &mut [Vec<BigInt>], i: usize, j: usize, f: &BigInt) {
        for r in a.iter_mut() {
            let t = &r[j] * f;
            r[i] += t;
        }
    }

    for t in 0..n {
        loop {
            // Pivot: smallest nonzero entry of the remaining block.
            let mut best: Option<(usize, usize)> = None;
            for i in t..n {
                for j in t..n {
                    if !a[i][j].is_zero()
                        && best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs())
                    {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else { break };
            if pi != t {
                swap_rows(&mut a, &mut u, &mut uinv, pi, t);
            }
            if pj != t {
                for r in a.iter_mut() {
                    r.swap(pj, t);
                }
            }
            let mut clean = true;
            for i in t + 1..n {
                let f = Integer::div_floor(&a[i][t], &a[t][t]);
                if !f.is_zero() {
                    add_row(&mut a, &mut u, &mut uinv, i, t, &-f);
                }
                if !a[i][t].is_zero() {
                    clean = false;
                }
            }
            for j in t + 1..n {
                let f = Integer::div_floor(&a[t][j], &a[t][t]);
                if !f.is_zero() {
                    add_col(&mut a, j, t, &-f);
                }
                if !a[t][j].is_zero() {
                    clean = false;
                }
            }
            if !clean {
                continue;
            }
            // Divisibility: fold a row holding a non-multiple into row t.
            let bad = (t + 1..n).find(|&i| (t + 1..n).any(|j| !(&a[i][j] % &a[t][t]).is_zero()));
            match bad {
                Some(i) => add_row(&mut a, &mut u, &mut uinv, t, i, &BigInt::one()),
                None => break,
            }
        }
        if a[t][t].is_negative() {
            for k in 0..n {
                a[t][k] = -a[t][k].clone();
                u[t][k] = -u[t][k].clone();
            }
            for r in uinv.iter_mut() {
                r[t] = -r[t].clone();
            }
        }
    }
    let diag = (0..n).map(|i| big_to_i64(&a[i][i])).collect::<Result<Vec<_>>>()?;
    let conv = |m: Vec<Vec<BigInt>>| -> Result<Vec<Vec<i64>>> {
        m.iter().map(|r| r.iter().map(big_to_i64).collect()).collect()
    };
    Ok((diag, conv(u)?, conv(uinv)?))
}
