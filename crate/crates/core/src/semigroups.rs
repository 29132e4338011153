//! Numerical semigroups from the monoid construction: plane curve
//! singularities (one linking pair or an arrowed resolution graph) and
//! Seifert homology spheres.

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::graph::PlumbingGraph;
use crate::monoid::{scan_region, Quasilinear};
use crate::rational::{floor_q, q};
use crate::lifts::ReducedLift;
use crate::series::direct_coefficient;
use crate::Plumbing;

/// A submonoid of Z_{>=0} with finite complement, stored up to its
/// conductor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NumericalSemigroup {
    /// Membership of 0..conductor.
    below: Vec<bool>,
    conductor: i64,
}

impl NumericalSemigroup {
    /// Scans `pred` on [0, bound), doubling the bound until some run of
    /// `multiplicity` consecutive members certifies that all larger integers
    /// are members.
    pub fn from_predicate(pred: impl Fn(i64) -> bool, bound: i64) -> Result<Self> {
        if !pred(0) {
            return Err(Error::Invalid("0 is not a member".into()));
        }
        let mut bound = bound.max(2);
        loop {
            let member: Vec<bool> = (0..bound).map(&pred).collect();
            if let Some(sg) = Self::certify(&member) {
                return Ok(sg);
            }
            if bound > 1 << 24 {
                return Err(Error::Invalid("complement does not look finite".into()));
            }
            bound *= 2;
        }
    }

    /// The semigroup whose membership on [0, len) is `member`, provided the
    /// table ends with a certifying run.
    pub fn certify(member: &[bool]) -> Option<Self> {
        let s = (1..member.len()).find(|&x| member[x])?;
        let mut run = 0;
        for (x, &m) in member.iter().enumerate() {
            run = if m { run + 1 } else { 0 };
            if run == s {
                let conductor = x + 1 - s;
                return Some(NumericalSemigroup { below: member[..conductor].to_vec(), conductor: conductor as i64 });
            }
        }
        None
    }

    pub fn from_generators(gens: &[i64]) -> Result<Self> {
        if gens.iter().any(|&g| g <= 0) || gens.iter().fold(0, |a, b| a.gcd(b)) != 1 {
            return Err(Error::Invalid("generators must be positive with gcd 1".into()));
        }
        let bound = gens.iter().max().copied().unwrap_or(1).pow(2) + 1;
        let mut member = vec![false; bound as usize];
        member[0] = true;
        for x in 1..bound as usize {
            member[x] = gens.iter().any(|&g| g as usize <= x && member[x - g as usize]);
        }
        Self::from_predicate(|x| x < bound && member[x as usize], bound)
    }

    pub fn contains(&self, x: i64) -> bool {
        x >= 0 && (x >= self.conductor || self.below[x as usize])
    }

    pub fn conductor(&self) -> i64 {
        self.conductor
    }

    pub fn frobenius(&self) -> i64 {
        self.conductor - 1
    }

    pub fn gaps(&self) -> Vec<i64> {
        (0..self.conductor).filter(|&x| !self.below[x as usize]).collect()
    }

    /// Number of gaps; the delta invariant for curve semigroups.
    pub fn genus(&self) -> i64 {
        self.gaps().len() as i64
    }

    pub fn multiplicity(&self) -> i64 {
        (1..).find(|&x| self.contains(x)).unwrap()
    }

    /// Members that are not sums of two nonzero members.
    pub fn minimal_generators(&self) -> Vec<i64> {
        let top = self.conductor + self.multiplicity();
        (1..=top)
            .filter(|&x| self.contains(x) && !(1..x).any(|y| self.contains(y) && self.contains(x - y)))
            .collect()
    }

    /// Closure under addition for members below `bound`.
    pub fn is_closed_below(&self, bound: i64) -> bool {
        let members: Vec<i64> = (0..bound).filter(|&x| self.contains(x)).collect();
        members.iter().all(|&a| members.iter().all(|&b| self.contains(a + b)))
    }

    /// (1 - t) H(t), coefficients by degree.
    pub fn alexander(&self) -> Vec<i64> {
        let mut out = vec![0i64; self.conductor as usize + 1];
        for x in 0..=self.conductor {
            let here = i64::from(self.contains(x));
            let before = i64::from(x > 0 && self.contains(x - 1));
            out[x as usize] = here - before;
        }
        trim(out)
    }

    /// P(t) = -sum over gaps of t^s, coefficients by degree.
    pub fn polynomial_part(&self) -> Vec<i64> {
        trim((0..self.conductor).map(|x| -i64::from(!self.contains(x))).collect())
    }
}

fn trim(mut v: Vec<i64>) -> Vec<i64> {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

pub fn poly_mul(a: &[i64], b: &[i64]) -> Vec<i64> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![0i64; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

/// Exact quotient of integer polynomials; the divisor must be monic up to
/// sign and divide evenly.
pub fn poly_div_exact(a: &[i64], b: &[i64]) -> Result<Vec<i64>> {
    let b = trim(b.to_vec());
    let lead = *b.last().ok_or(Error::Invalid("division by zero polynomial".into()))?;
    if lead.abs() != 1 {
        return Err(Error::Invalid("divisor is not monic".into()));
    }
    let mut rem = trim(a.to_vec());
    if rem.len() < b.len() {
        return if rem.is_empty() { Ok(vec![]) } else { Err(Error::Invalid("division is not exact".into())) };
    }
    let mut quot = vec![0i64; rem.len() - b.len() + 1];
    while rem.len() >= b.len() {
        let shift = rem.len() - b.len();
        let c = rem.last().unwrap() * lead;
        quot[shift] = c;
        for (j, y) in b.iter().enumerate() {
            rem[shift + j] -= c * y;
        }
        rem = trim(rem);
    }
    if !rem.is_empty() {
        return Err(Error::Invalid("division is not exact".into()));
    }
    Ok(trim(quot))
}

/// t^n - 1.
fn power_minus_one(n: usize) -> Vec<i64> {
    let mut v = vec![0i64; n + 1];
    v[0] = -1;
    v[n] = 1;
    v
}

/// (t^{pq} - 1)(t - 1) / ((t^p - 1)(t^q - 1)).
pub fn torus_knot_alexander(p: i64, q: i64) -> Result<Vec<i64>> {
    let num = poly_mul(&power_minus_one((p * q) as usize), &power_minus_one(1));
    let den = poly_mul(&power_minus_one(p as usize), &power_minus_one(q as usize));
    poly_div_exact(&num, &den)
}

fn inverse_mod(x: i64, m: i64) -> Result<i64> {
    let e = x.extended_gcd(&m);
    if e.gcd != 1 {
        return Err(Error::Invalid(format!("{x} is not invertible modulo {m}")));
    }
    Ok(e.x.rem_euclid(m))
}

fn ceil_div(a: i64, b: i64) -> i64 {
    -Integer::div_floor(&-a, &b)
}

/// (b0, omegas) with b0 prod alpha + sum omega_i prod_{j != i} alpha_j = -1.
pub fn seifert_invariants(alphas: &[i64]) -> Result<(i64, Vec<i64>)> {
    if alphas.len() < 3 || alphas.iter().any(|&a| a < 2) {
        return Err(Error::Invalid("need at least three integers > 1".into()));
    }
    for i in 0..alphas.len() {
        for j in i + 1..alphas.len() {
            if alphas[i].gcd(&alphas[j]) != 1 {
                return Err(Error::Invalid(format!("{} and {} are not coprime", alphas[i], alphas[j])));
            }
        }
    }
    let total: i64 = alphas.iter().product();
    let mut omegas = Vec::new();
    let mut sum = 0;
    for &a in alphas {
        let rest = total / a;
        let w = (a - inverse_mod(rest.rem_euclid(a), a)?).rem_euclid(a);
        omegas.push(w);
        sum += w * rest;
    }
    if (-1 - sum) % total != 0 {
        return Err(Error::Invalid("no integral b0".into()));
    }
    Ok(((-1 - sum) / total, omegas))
}

/// M_0 of the Seifert homology sphere Sigma(alpha_1, ..., alpha_d).
pub fn seifert_semigroup(alphas: &[i64]) -> Result<NumericalSemigroup> {
    let (b0, omegas) = seifert_invariants(alphas)?;
    let total: i64 = alphas.iter().product();
    let pred = |l: i64| -b0 * l - alphas.iter().zip(&omegas).map(|(&a, &w)| ceil_div(w * l, a)).sum::<i64>() >= 0;
    NumericalSemigroup::from_predicate(pred, total)
}

/// (omega_p, omega_a) with p a - omega_p a - omega_a p = 1.
pub fn pair_invariants(p: i64, a: i64) -> Result<(i64, i64)> {
    if p < 2 || a < 2 || p.gcd(&a) != 1 {
        return Err(Error::Invalid(format!("({p}, {a}) is not a coprime pair of integers > 1")));
    }
    let wp = (p - inverse_mod(a.rem_euclid(p), p)?).rem_euclid(p);
    let wa = (a - inverse_mod(p.rem_euclid(a), a)?).rem_euclid(a);
    if p * a - wp * a - wa * p != 1 {
        return Err(Error::Invalid("no Seifert pair solves the equation".into()));
    }
    Ok((wp, wa))
}

pub fn pair_semigroup(p: i64, a: i64) -> Result<NumericalSemigroup> {
    let (wp, wa) = pair_invariants(p, a)?;
    NumericalSemigroup::from_predicate(|l| l - ceil_div(wp * l, p) - ceil_div(wa * l, a) >= 0, p * a)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurveInvariants {
    pub semigroup: NumericalSemigroup,
    pub delta: i64,
    pub alexander: Vec<i64>,
    pub polynomial_part: Vec<i64>,
}

impl CurveInvariants {
    pub fn new(semigroup: NumericalSemigroup) -> Self {
        CurveInvariants {
            delta: semigroup.genus(),
            alexander: semigroup.alexander(),
            polynomial_part: semigroup.polynomial_part(),
            semigroup,
        }
    }
}

/// Coefficients of Z_g(t) up to degree `bound`: the reduced series of the
/// arrowed graph (a = 0) with every variable but the arrow node's set to 1.
pub fn curve_series(p: &Plumbing, bound: i64) -> Result<Vec<i64>> {
    let arrow = match p.graph.arrows() {
        [v] => *v,
        [] => return Err(Error::ArrowMisplaced("the graph carries no arrow".into())),
        _ => return Err(Error::ArrowMisplaced("several arrows".into())),
    };
    if p.graph.b(arrow) != -1 {
        return Err(Error::ArrowMisplaced("the arrow must sit on the (-1)-vertex".into()));
    }
    let r = p.cls.node_of_vertex[arrow].ok_or(Error::ArrowMisplaced("arrow vertex is not a node".into()))?;
    let k = p.num_nodes();
    let ql = Quasilinear::new(p, &ReducedLift::zero(p));
    // The cone is spanned by the pi_N(E*_n); bound every coordinate by the
    // steepest ratio against the arrow node.
    let hi: Vec<i64> = (0..k)
        .map(|m| {
            let worst = (0..k)
                .map(|n| {
                    let d = p.node_dual(n);
                    d[m] / d[r]
                })
                .max()
                .unwrap();
            floor_q(&(worst * q(bound))) + 1
        })
        .collect();
    let mut out = vec![0i64; bound as usize + 1];
    scan_region(&vec![0; k], &hi, &mut |l| {
        if l[r] <= bound && ql.in_lattice(l) {
            out[l[r] as usize] += direct_coefficient(p, &ql.values(l));
        }
    });
    Ok(out)
}

/// The semigroup of the plane curve whose resolution graph is `g`, read off
/// as the support of Z_g(t).
pub fn curve_semigroup(g: &PlumbingGraph) -> Result<CurveInvariants> {
    let p = Plumbing::with_arrows(g.clone())?;
    let mut bound = 32;
    loop {
        let z = curve_series(&p, bound)?;
        if let Some(x) = z.iter().position(|&c| c != 0 && c != 1) {
            return Err(Error::Invalid(format!("coefficient {} at degree {x} is not 0 or 1", z[x])));
        }
        let member: Vec<bool> = z.iter().map(|&c| c == 1).collect();
        if let Some(sg) = NumericalSemigroup::certify(&member) {
            return Ok(CurveInvariants::new(sg));
        }
        if bound > 1 << 12 {
            return Err(Error::Invalid("semigroup did not stabilize".into()));
        }
        bound *= 2;
    }
}

pub fn curve_from_pair(p: i64, a: i64) -> Result<CurveInvariants> {
    Ok(CurveInvariants::new(pair_semigroup(p, a)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generated_semigroup() {
        let s = NumericalSemigroup::from_generators(&[3, 5]).unwrap();
        assert_eq!(s.gaps(), vec![1, 2, 4, 7]);
        assert_eq!(s.conductor(), 8);
        assert_eq!(s.multiplicity(), 3);
        assert_eq!(s.minimal_generators(), vec![3, 5]);
        assert_eq!(s.polynomial_part(), vec![0, -1, -1, 0, -1, 0, 0, -1]);
        assert!(NumericalSemigroup::from_generators(&[4, 6]).is_err());
    }

    #[test]
    fn exact_division() {
        assert_eq!(poly_div_exact(&[-1, 0, 1], &[-1, 1]).unwrap(), vec![1, 1]);
        assert!(poly_div_exact(&[1, 0, 1], &[-1, 1]).is_err());
    }

    #[test]
    fn trefoil() {
        assert_eq!(torus_knot_alexander(2, 3).unwrap(), vec![1, -1, 1]);
    }
}
