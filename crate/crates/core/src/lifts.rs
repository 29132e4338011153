//! Reduced lifts of elements of L', their node projections and the affine
//! lattices Z^N(a).

use num_integer::Integer;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::lattice::{Class, LatticeVector};
use crate::rational::{mat_vec, q, Q};
use crate::Plumbing;

/// a = sum of a_v E*_v supported on nodes, ends and chain connectors,
/// stored as a full E*-coordinate vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ReducedLift {
    pub coeffs: Vec<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NodeProjection {
    pub big_a: Vec<Q>,
    pub c: Vec<Q>,
}

impl ReducedLift {
    pub fn zero(p: &Plumbing) -> Self {
        ReducedLift { coeffs: vec![0; p.graph.len()] }
    }

    pub fn node(&self, p: &Plumbing, n: usize) -> i64 {
        self.coeffs[p.cls.nodes[n]]
    }

    /// Coefficient a_{n_{n'}} of the connector of chain `i`; empty chains
    /// carry none.
    pub fn chain(&self, p: &Plumbing, i: usize) -> i64 {
        p.cls.chains[i].connector().map_or(0, |c| self.coeffs[c])
    }

    pub fn is_reduced(&self, p: &Plumbing) -> bool {
        let mut allowed = vec![false; p.graph.len()];
        for &v in p.cls.nodes.iter().chain(&p.cls.ends) {
            allowed[v] = true;
        }
        for c in &p.cls.chains {
            if let Some(v) = c.connector() {
                allowed[v] = true;
            }
        }
        self.coeffs.iter().zip(&allowed).all(|(&x, &ok)| ok || x == 0)
    }

    /// a - sum_n k_n E*_n.
    pub fn minus_nodes(&self, p: &Plumbing, k: &[i64]) -> Self {
        let mut out = self.clone();
        for (n, &kn) in k.iter().enumerate() {
            out.coeffs[p.cls.nodes[n]] -= kn;
        }
        out
    }

    pub fn as_vector(&self) -> LatticeVector {
        LatticeVector::from_dual_ints(&self.coeffs)
    }

    pub fn class(&self, p: &Plumbing) -> Class {
        p.group.class_of_dual(&self.coeffs)
    }
}

/// Rewrites every E*_v with v inside a leg or behind a chain connector in
/// terms of the end, the connector and the smaller node, modulo L.
pub fn reduced_transform(p: &Plumbing, y: &[i64]) -> ReducedLift {
    let g = &p.graph;
    let mut a = y.to_vec();
    for leg in &p.cls.legs {
        let path = &leg.path;
        let s = path.len();
        for j in 0..s - 1 {
            let v = path[j];
            a[leg.end] += y[v] * g.subgraph_det(&path[j + 1..]);
            a[v] = 0;
        }
    }
    for chain in &p.cls.chains {
        let w = &chain.interior;
        if w.is_empty() {
            continue;
        }
        let lo = p.cls.nodes[chain.lo];
        for j in 1..w.len() {
            let v = w[j];
            a[w[0]] += y[v] * g.subgraph_det(&w[..j]);
            a[lo] -= y[v] * g.subgraph_det(&w[1..j]);
            a[v] = 0;
        }
    }
    ReducedLift { coeffs: a }
}

pub fn node_projection(p: &Plumbing, a: &ReducedLift) -> NodeProjection {
    let k = p.num_nodes();
    let mut big_a: Vec<Q> = (0..k).map(|n| q(a.node(p, n))).collect();
    for l in &p.seifert.legs {
        big_a[l.node] += Q::new(a.coeffs[l.end], l.alpha);
    }
    for (i, c) in p.seifert.chains.iter().enumerate() {
        let x = a.chain(p, i);
        big_a[c.lo] += Q::new(c.omega_lo * x, c.alpha);
        big_a[c.hi] += Q::new(x, c.alpha);
    }
    // c = (-Iorb)^{-1} A
    let c = mat_vec(&p.seifert.iorb_inverse, &big_a).into_iter().map(|x| -x).collect();
    NodeProjection { big_a, c }
}

/// pi_N of sum y_v E*_v computed straight from I^{-1}.
pub fn project_dual(p: &Plumbing, y: &[i64]) -> Vec<Q> {
    p.cls
        .nodes
        .iter()
        .map(|&w| -(0..y.len()).map(|v| p.lattice.inverse[w][v] * q(y[v])).sum::<Q>())
        .collect()
}

/// l_n + omega_{n',n} l_{n'} = a_{n_{n'}} mod alpha_{n,n'} for every chain n < n'.
pub fn affine_lattice_member(p: &Plumbing, a: &ReducedLift, l: &[i64]) -> bool {
    p.seifert.chains.iter().enumerate().all(|(i, c)| {
        (l[c.lo] + c.omega_hi * l[c.hi] - a.chain(p, i)).mod_floor(&c.alpha) == 0
    })
}

/// Reduced transform of r_h; its node projection lies in [0,1)^N.
pub fn canonical_lift(p: &Plumbing, h: &[i64]) -> Result<ReducedLift> {
    let r = p.group.representative(h, &p.lattice);
    let y = r.dual_ints(&p.lattice)?;
    Ok(reduced_transform(p, &y))
}

/// Parses an E*-coordinate vector and reduces it.
pub fn lift_from_dual(p: &Plumbing, y: &[i64]) -> Result<ReducedLift> {
    if y.len() != p.graph.len() {
        return Err(Error::Invalid(format!(
            "expected {} E*-coordinates, got {}",
            p.graph.len(),
            y.len()
        )));
    }
    Ok(reduced_transform(p, y))
}

pub fn is_zero_vec(v: &[Q]) -> bool {
    v.iter().all(|x| x.is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gamma_h9() -> Plumbing {
        Plumbing::parse(include_str!("../data/gamma_h9.txt")).unwrap()
    }

    #[test]
    fn reduction_keeps_class_and_projection() {
        let p = gamma_h9();
        for v in 0..p.graph.len() {
            let mut y = vec![0; p.graph.len()];
            y[v] = 1;
            let a = reduced_transform(&p, &y);
            assert!(a.is_reduced(&p));
            assert_eq!(a.class(&p), p.group.class_of_dual(&y));
            assert_eq!(project_dual(&p, &a.coeffs), project_dual(&p, &y));
        }
    }

    #[test]
    fn canonical_lift_projects_into_the_unit_cube() {
        let p = gamma_h9();
        for h in p.group.elements() {
            let a = canonical_lift(&p, &h).unwrap();
            assert_eq!(a.class(&p), h);
            assert!(project_dual(&p, &a.coeffs).iter().all(|x| *x >= q(0) && *x < q(1)));
        }
    }

    #[test]
    fn lift_length_is_checked() {
        assert!(lift_from_dual(&gamma_h9(), &[1, 2]).is_err());
    }
}
