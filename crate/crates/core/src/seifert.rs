//! Generalized Seifert invariants of legs and chains, orbifold Euler numbers
//! and the orbifold intersection matrix.

use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::graph::{Classification, PlumbingGraph};
use crate::lattice::IntersectionData;
use crate::rational::{inverse_det, q, Q, QMatrix};

/// (alpha, omega) with alpha/omega = k_1 - 1/(k_2 - ...).
pub fn neg_continued_fraction(ks: &[i64]) -> (i64, i64) {
    let mut num = 1i64;
    let mut den = 0i64;
    for &k in ks.iter().rev() {
        let next = k * num - den;
        den = num;
        num = next;
    }
    (num, den)
}

/// The expansion [k_1, ..., k_s] (all k_i >= 2) of alpha/omega.
pub fn expand_neg_continued_fraction(alpha: i64, omega: i64) -> Result<Vec<i64>> {
    if (alpha, omega) == (1, 0) {
        return Ok(vec![]);
    }
    if !(0 < omega && omega < alpha) || alpha.gcd(&omega) != 1 {
        return Err(Error::InvalidSeifertPair(alpha, omega));
    }
    let (mut a, mut w) = (alpha, omega);
    let mut out = Vec::new();
    while w > 0 {
        let k = (a + w - 1) / w;
        out.push(k);
        (a, w) = (w, k * w - a);
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LegInvariant {
    pub node: usize,
    pub end: usize,
    pub alpha: i64,
    pub omega: i64,
    pub omega_tilde: i64,
    pub tau: i64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainInvariant {
    pub lo: usize,
    pub hi: usize,
    pub alpha: i64,
    /// omega seen from the smaller node (chain as a leg of Gamma_lo).
    pub omega_lo: i64,
    /// omega seen from the larger node.
    pub omega_hi: i64,
    pub tau: i64,
}

#[derive(Clone, Debug)]
pub struct SeifertData {
    pub legs: Vec<LegInvariant>,
    pub chains: Vec<ChainInvariant>,
    /// Orbifold Euler numbers e_n.
    pub euler: Vec<Q>,
    pub iorb: QMatrix,
    /// (I^orb)^{-1}.
    pub iorb_inverse: QMatrix,
}

impl SeifertData {
    pub fn new(g: &PlumbingGraph, cls: &Classification, d: &IntersectionData) -> Result<Self> {
        let legs: Vec<LegInvariant> = cls
            .legs
            .iter()
            .map(|leg| {
                let p = &leg.path;
                let s = p.len();
                let alpha = g.subgraph_det(p);
                let omega = g.subgraph_det(&p[1..]);
                let omega_tilde = g.subgraph_det(&p[..s - 1]);
                let tau = if s == 1 { 0 } else { g.subgraph_det(&p[1..s - 1]) };
                LegInvariant { node: leg.node, end: leg.end, alpha, omega, omega_tilde, tau }
            })
            .collect();
        let chains: Vec<ChainInvariant> = cls
            .chains
            .iter()
            .map(|c| {
                let p = &c.interior;
                let s = p.len();
                if s == 0 {
                    return ChainInvariant { lo: c.lo, hi: c.hi, alpha: 1, omega_lo: 0, omega_hi: 0, tau: -1 };
                }
                ChainInvariant {
                    lo: c.lo,
                    hi: c.hi,
                    alpha: g.subgraph_det(p),
                    omega_lo: g.subgraph_det(&p[1..]),
                    omega_hi: g.subgraph_det(&p[..s - 1]),
                    tau: if s == 1 { 0 } else { g.subgraph_det(&p[1..s - 1]) },
                }
            })
            .collect();
        for c in &chains {
            if c.omega_lo * c.omega_hi != c.alpha * c.tau + 1 {
                return Err(Error::OrbifoldIdentityViolation(format!(
                    "chain {}-{}: omega*omega~ != alpha*tau + 1",
                    c.lo, c.hi
                )));
            }
        }

        let k = cls.num_nodes();
        let mut euler: Vec<Q> = cls.nodes.iter().map(|&v| q(g.b(v))).collect();
        for l in &legs {
            euler[l.node] += Q::new(l.omega, l.alpha);
        }
        for c in &chains {
            euler[c.lo] += Q::new(c.omega_lo, c.alpha);
            euler[c.hi] += Q::new(c.omega_hi, c.alpha);
        }
        let mut iorb = vec![vec![Q::zero(); k]; k];
        for i in 0..k {
            iorb[i][i] = euler[i];
        }
        for c in &chains {
            iorb[c.lo][c.hi] = Q::new(1, c.alpha);
            iorb[c.hi][c.lo] = Q::new(1, c.alpha);
        }
        let iorb_inverse = if k == 0 { vec![] } else { inverse_det(&iorb)?.0 };
        let data = SeifertData { legs, chains, euler, iorb, iorb_inverse };
        data.verify(g, cls, d)?;
        Ok(data)
    }

    fn verify(&self, g: &PlumbingGraph, cls: &Classification, d: &IntersectionData) -> Result<()> {
        let k = cls.num_nodes();
        if k == 0 {
            return Ok(());
        }
        if let Some(i) = self.euler.iter().position(|e| !e.is_negative()) {
            return Err(Error::OrbifoldIdentityViolation(format!("e_{} >= 0", i)));
        }
        let neg: QMatrix = self.iorb.iter().map(|r| r.iter().map(|x| -x).collect()).collect();
        let (_, det_orb) = inverse_det(&neg)?;
        let rest: Vec<usize> = (0..g.len()).filter(|v| cls.node_of_vertex[*v].is_none()).collect();
        if det_orb * q(g.subgraph_det(&rest)) != q(d.det) {
            return Err(Error::OrbifoldIdentityViolation("det_G != det(-Iorb) det_(G - N)".into()));
        }
        for i in 0..k {
            for j in 0..k {
                if self.iorb_inverse[i][j] != d.inverse[cls.nodes[i]][cls.nodes[j]] {
                    return Err(Error::OrbifoldIdentityViolation(format!("Iorb^-1 entry ({i},{j})")));
                }
            }
        }
        Ok(())
    }

    pub fn legs_of(&self, node: usize) -> impl Iterator<Item = &LegInvariant> {
        self.legs.iter().filter(move |l| l.node == node)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn continued_fractions() {
        assert_eq!(neg_continued_fraction(&[2]), (2, 1));
        assert_eq!(neg_continued_fraction(&[2, 2]), (3, 2));
        assert_eq!(neg_continued_fraction(&[]), (1, 0));
        assert_eq!(expand_neg_continued_fraction(3, 1).unwrap(), vec![3]);
        assert_eq!(expand_neg_continued_fraction(7, 3).unwrap(), vec![3, 2, 2]);
        assert!(expand_neg_continued_fraction(4, 2).is_err());
        assert!(expand_neg_continued_fraction(3, 3).is_err());
    }

    #[test]
    fn round_trip_up_to_200() {
        for a in 2..=200i64 {
            for w in 1..a {
                if a.gcd(&w) == 1 {
                    let ks = expand_neg_continued_fraction(a, w).unwrap();
                    assert!(ks.iter().all(|&k| k >= 2));
                    assert_eq!(neg_continued_fraction(&ks), (a, w));
                }
            }
        }
    }
}
