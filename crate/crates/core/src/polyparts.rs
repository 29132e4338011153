//! Polynomial parts of the terms t^l / prod (1 - t^v) with respect to one
//! node or to the two ends of a chain, their assembly into P_h, and the
//! normalized Seiberg–Witten invariants.

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::laurent::{Exponent, Laurent};
use crate::lifts::ReducedLift;
use crate::monoid::{choose_generators, GeneratorSet, Strategy};
use crate::rational::{q, Q};
use crate::series::{graded_kappa, graded_lifts, rational_form, RationalForm};
use crate::Plumbing;

/// Division with remainder of `poly` by prod (1 - t^v) along the linear
/// height `h`: returns (quotient, remainder) with the remainder supported on
/// heights in [0, sum h(v)). Every h(v) must be positive.
pub fn divide(poly: &Laurent, factors: &[Vec<Q>], h: &dyn Fn(&[Q]) -> Q) -> Result<(Laurent, Laurent)> {
    if factors.iter().any(|v| !h(v).is_positive()) {
        return Err(Error::Decomposition("a factor has nonpositive height".into()));
    }
    let dim = match poly.terms().next() {
        Some((e, _)) => e.len(),
        None => return Ok((Laurent::zero(), Laurent::zero())),
    };
    let window: Q = factors.iter().map(|v| h(v)).sum();
    let total: Exponent = (0..dim).map(|i| factors.iter().map(|v| v[i]).sum()).collect();
    let product = Laurent::one_minus_product(factors, dim);
    let lead = if factors.len() % 2 == 0 { 1 } else { -1 };
    let mut work = poly.clone();
    let mut quotient = Laurent::zero();
    // Reductions from the top only create heights >= 0 and those from the
    // bottom only heights < window, so the two never undo each other.
    loop {
        let top = work.terms().map(|(e, c)| (h(e), e.clone(), *c)).max_by(|a, b| a.0.cmp(&b.0));
        match top {
            Some((height, e, c)) if height >= window => {
                let shifted: Exponent = e.iter().zip(&total).map(|(a, b)| a - b).collect();
                let m = Laurent::monomial(shifted, lead * c);
                work = work.sub(&m.mul(&product));
                quotient.add_assign_scaled(&m, 1);
            }
            _ => break,
        }
    }
    loop {
        let bottom = work.terms().map(|(e, c)| (h(e), e.clone(), *c)).min_by(|a, b| a.0.cmp(&b.0));
        match bottom {
            Some((height, e, c)) if height.is_negative() => {
                let m = Laurent::monomial(e, c);
                work = work.sub(&m.mul(&product));
                quotient.add_assign_scaled(&m, 1);
            }
            _ => break,
        }
    }
    Ok((quotient, work))
}

fn vectors(gens: &GeneratorSet, set: &[usize]) -> Vec<Vec<Q>> {
    set.iter().map(|&n| gens.vectors[n].iter().map(|&x| q(x)).collect()).collect()
}

/// Pol^n and R^n for t^l / prod over `factors`.
pub fn decompose_one_var(l: &[Q], factors: &[Vec<Q>], n: usize) -> Result<(Laurent, Laurent)> {
    divide(&Laurent::monomial(l.to_vec(), 1), factors, &|e: &[Q]| e[n])
}

/// The four parts of the two-variable decomposition along a chain.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoVarParts {
    pub pol: Laurent,
    pub r1: Laurent,
    pub r2: Laurent,
    pub r: Laurent,
}

fn det2(a: (Q, Q), b: (Q, Q)) -> Q {
    a.0 * b.1 - a.1 * b.0
}

/// Decomposition of t^l along the chain with index `chain`: factors on the
/// `lo` side project to multiples of alpha = pi(E*_lo), those on the `hi`
/// side to multiples of beta = pi(E*_hi).
pub fn decompose_two_var(p: &Plumbing, l: &[Q], factors: &[(usize, Vec<Q>)], chain: usize) -> Result<TwoVarParts> {
    let ch = &p.cls.chains[chain];
    let (n, m) = (ch.lo, ch.hi);
    let (lo_side, _) = p.cls.sides(ch);
    let pr = |e: &[Q]| (e[n], e[m]);
    let da = p.node_dual(n);
    let db = p.node_dual(m);
    let alpha = pr(&da);
    let beta = pr(&db);
    let d = det2(alpha, beta);
    if d.is_zero() {
        return Err(Error::Decomposition("chain directions are parallel".into()));
    }
    let mut fa = Vec::new();
    let mut fb = Vec::new();
    for (node, v) in factors {
        let (dir, list) = if lo_side.contains(node) { (alpha, &mut fa) } else { (beta, &mut fb) };
        let x = pr(v);
        if !det2(x, dir).is_zero() || !(x.0 / dir.0).is_positive() {
            return Err(Error::Decomposition(format!(
                "generator of node {} is not a positive multiple of the chain direction",
                node + 1
            )));
        }
        list.push(v.clone());
    }
    let dim = l.len();
    let sigma = move |e: &[Q]| det2(pr(e), beta) / d;
    let upsilon = move |e: &[Q]| det2(alpha, pr(e)) / d;
    let along_alpha = move |e: &[Q]| e[m] / alpha.1;
    let along_beta = move |e: &[Q]| e[n] / beta.0;

    let mono = Laurent::monomial(l.to_vec(), 1);
    let (x, rest) = divide(&mono, &fa, &sigma)?;
    let (y, r) = divide(&rest, &fb, &upsilon)?;
    let (w, r1) = divide(&y, &fa, &along_alpha)?;
    let prod_a = Laurent::one_minus_product(&fa, dim);
    let prod_b = Laurent::one_minus_product(&fb, dim);
    let v = x.add(&w.mul(&prod_b));
    let (pol, r2) = divide(&v, &fb, &along_beta)?;

    for (e, _) in r1.terms() {
        if (e[n] - along_alpha(e) * alpha.0).is_positive() {
            return Err(Error::Decomposition("R1 has a positive E_n component".into()));
        }
    }
    for (e, _) in r2.terms() {
        if (e[m] - along_beta(e) * beta.1).is_positive() {
            return Err(Error::Decomposition("R2 has a positive E_n' component".into()));
        }
    }
    if pol.terms().any(|(e, _)| e[n].is_negative() && e[m].is_negative()) {
        return Err(Error::Decomposition("polynomial part meets the negative quadrant".into()));
    }
    let back = pol
        .mul(&prod_a)
        .mul(&prod_b)
        .add(&r1.mul(&prod_b))
        .add(&r2.mul(&prod_a))
        .add(&r);
    if back != mono {
        return Err(Error::Decomposition("re-substitution failed".into()));
    }
    Ok(TwoVarParts { pol, r1, r2, r })
}

/// Pol_{(l, I)} = sum over chains of Pol^{nn'} - sum_n (delta_{n,N} - 1) Pol^n,
/// I given by its factors (node, v_node).
pub fn pol(p: &Plumbing, l: &[Q], factors: &[(usize, Vec<Q>)]) -> Result<Laurent> {
    let vs: Vec<Vec<Q>> = factors.iter().map(|(_, v)| v.clone()).collect();
    let mut out = Laurent::zero();
    for i in 0..p.cls.chains.len() {
        out.add_assign_scaled(&decompose_two_var(p, l, factors, i)?.pol, 1);
    }
    for n in 0..p.num_nodes() {
        let w = p.cls.delta_nodes[n] as i64 - 1;
        if w != 0 {
            out.add_assign_scaled(&decompose_one_var(l, &vs, n)?.0, -w);
        }
    }
    Ok(out)
}

/// Pol_{(l, I)} with I a node subset and the given generators.
pub fn pol_for_set(p: &Plumbing, l: &[Q], set: &[usize], gens: &GeneratorSet) -> Result<Laurent> {
    let factors: Vec<(usize, Vec<Q>)> = set.iter().copied().zip(vectors(gens, set)).collect();
    pol(p, l, &factors)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SWResult {
    pub p_h: Laurent,
    /// sw^norm_h = P_h(1).
    pub sw_norm: Q,
    /// sw_{-h * sigma_can} recovered from the normalization.
    pub sw_raw: Q,
    pub lift: ReducedLift,
    pub generators: GeneratorSet,
}

/// P_h from a rational form of Z_h: every monomial of a numerator over its
/// denominators contributes its polynomial part.
pub fn polynomial_part(p: &Plumbing, form: &RationalForm) -> Result<Laurent> {
    let mut out = Laurent::zero();
    for t in &form.terms {
        for (e, c) in t.numerator.terms() {
            out.add_assign_scaled(&pol(p, e, &t.denominators)?, *c);
        }
    }
    Ok(out)
}

pub fn assemble(p: &Plumbing, a: &ReducedLift, gens: &GeneratorSet, form: &RationalForm) -> Result<SWResult> {
    let p_h = polynomial_part(p, form)?;
    let sw_norm = q(p_h.eval_one());
    let h = a.class(p);
    let sw_raw = -crate::oracle::normalization(p, &h) - sw_norm;
    Ok(SWResult { p_h, sw_norm, sw_raw, lift: a.clone(), generators: gens.clone() })
}

/// The whole pipeline for one reduced lift: generators for the graded form,
/// the rational form, its polynomial part and sw^norm.
pub fn sw_for_lift(p: &Plumbing, a: &ReducedLift, strategy: &Strategy) -> Result<SWResult> {
    let gens = choose_generators(p, &graded_lifts(p, a), &graded_kappa(p), strategy)?;
    let form = rational_form(p, a, &gens)?;
    assemble(p, a, &gens, &form)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_variable_division() {
        // t^5 / (1 - t^2) = -t^3 - t + t / (1 - t^2)
        let (pol, rest) = decompose_one_var(&[q(5)], &[vec![q(2)]], 0).unwrap();
        assert_eq!(pol, Laurent::from_ints(&[3], -1).add(&Laurent::from_ints(&[1], -1)));
        assert_eq!(rest, Laurent::from_ints(&[1], 1));
        // t^-3 / (1 - t^2) = t^-3 + t^-1 + t / (1 - t^2)
        let (pol, rest) = decompose_one_var(&[q(-3)], &[vec![q(2)]], 0).unwrap();
        assert_eq!(pol, Laurent::from_ints(&[-3], 1).add(&Laurent::from_ints(&[-1], 1)));
        assert_eq!(rest, Laurent::from_ints(&[1], 1));
    }

    #[test]
    fn nonpositive_heights_are_rejected() {
        assert!(decompose_one_var(&[q(1)], &[vec![q(0)]], 0).is_err());
    }
}
