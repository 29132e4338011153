//! Truncated expansions of the reduced Poincaré series Z_h and its closed
//! rational form.

use num_traits::Signed;

use crate::error::{Error, Result};
use crate::laurent::{Exponent, Laurent};
use crate::lifts::ReducedLift;
use crate::monoid::{hilbert_form, multi_indices, scan_region, GeneratorSet, HilbertMode, Quasilinear};
use crate::rational::{ceil_q, floor_q, gen_binom, q, sign_pow, Q};
use crate::Plumbing;

/// numerator / prod over `denominators` of (1 - t^v). Repeated vectors are
/// allowed (the one-node form has a squared factor).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalTerm {
    /// The subset I of nodes the term is indexed by.
    pub set: Vec<usize>,
    /// (node, v_node) for every factor.
    pub denominators: Vec<(usize, Vec<Q>)>,
    pub numerator: Laurent,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalForm {
    pub dim: usize,
    pub terms: Vec<RationalTerm>,
}

impl RationalForm {
    pub fn zero(dim: usize) -> Self {
        RationalForm { dim, terms: Vec::new() }
    }

    /// self += factor * other, merging terms with equal denominators.
    pub fn add_scaled(&mut self, other: &RationalForm, factor: i64) {
        for t in &other.terms {
            match self.terms.iter_mut().find(|s| s.set == t.set && s.denominators == t.denominators) {
                Some(s) => s.numerator.add_assign_scaled(&t.numerator, factor),
                None => self.terms.push(RationalTerm {
                    set: t.set.clone(),
                    denominators: t.denominators.clone(),
                    numerator: t.numerator.scale(factor),
                }),
            }
        }
        self.terms.retain(|t| !t.numerator.is_zero());
        self.terms.sort_by(|a, b| (a.set.len(), &a.set).cmp(&(b.set.len(), &b.set)));
    }

    pub fn expand(&self, bound: i64) -> Laurent {
        expand_rational(self, bound)
    }
}

/// Multiplies every numerator by the truncated geometric series of its
/// denominator factors; keeps exponents with all coordinates <= bound.
pub fn expand_rational(form: &RationalForm, bound: i64) -> Laurent {
    let b = q(bound);
    let mut out = Laurent::zero();
    for t in &form.terms {
        let mut cur = t.numerator.truncate(bound);
        for (_, v) in &t.denominators {
            let mut next = Laurent::zero();
            for (e, c) in cur.terms() {
                let mut e = e.clone();
                while e.iter().all(|x| *x <= b) {
                    next.add_term(e.clone(), *c);
                    for (x, y) in e.iter_mut().zip(v) {
                        *x += y;
                    }
                }
            }
            cur = next;
        }
        out.add_assign_scaled(&cur, 1);
    }
    out
}

/// Integer points l with 0 <= c + l <= bound, as a half-open box.
fn region(c: &[Q], bound: i64) -> (Vec<i64>, Vec<i64>) {
    let lo = c.iter().map(|x| ceil_q(&-x)).collect();
    let hi = c.iter().map(|x| floor_q(&(q(bound) - x)) + 1).collect();
    (lo, hi)
}

fn exponent(c: &[Q], l: &[i64]) -> Exponent {
    l.iter().zip(c).map(|(x, y)| q(*x) + y).collect()
}

fn require_nodes(p: &Plumbing) -> Result<()> {
    if p.num_nodes() == 0 {
        Err(Error::NoNodes)
    } else {
        Ok(())
    }
}

/// prod_n (-1)^{N_n} binom(m_n, N_n), m_n the zeta exponent; zero as soon
/// as some N_n is negative.
pub fn direct_coefficient(p: &Plumbing, values: &[i64]) -> i64 {
    let mut c = 1i64;
    for (n, &v) in values.iter().enumerate() {
        if v < 0 {
            return 0;
        }
        c *= sign_pow(v) * gen_binom(p.cls.zeta_exponent[n], v);
        if c == 0 {
            return 0;
        }
    }
    c
}

/// Z_h through the sets S_a: sum over l in Z^N(a) of the product of signed
/// binomials of N_a(l, n).
pub fn expand_direct(p: &Plumbing, a: &ReducedLift, bound: i64) -> Result<Laurent> {
    require_nodes(p)?;
    let ql = Quasilinear::new(p, a);
    let c = ql.c().to_vec();
    let (lo, hi) = region(&c, bound);
    let mut out = Laurent::zero();
    scan_region(&lo, &hi, &mut |l| {
        if ql.in_lattice(l) {
            let coef = direct_coefficient(p, &ql.values(l));
            if coef != 0 {
                out.add_term(exponent(&c, l), coef);
            }
        }
    });
    Ok(out)
}

/// sum over 0 <= k <= min(N, m + 1) of (-1)^k binom(m + 1, k): the weight
/// of a point in the alternative decomposition through the modules M_a(k).
fn alternative_weight(m: i64, value: i64) -> i64 {
    if value < 0 {
        return 0;
    }
    let top = if m + 1 < 0 { value } else { value.min(m + 1) };
    (0..=top).map(|k| sign_pow(k) * gen_binom(m + 1, k)).sum()
}

/// Z_h = sum_k (-1)^k binom(delta - 1, k) sum_{l in M_a(k)} t^{c_a + l}.
pub fn expand_alternative(p: &Plumbing, a: &ReducedLift, bound: i64) -> Result<Laurent> {
    require_nodes(p)?;
    let ql = Quasilinear::new(p, a);
    let c = ql.c().to_vec();
    let (lo, hi) = region(&c, bound);
    let mut out = Laurent::zero();
    scan_region(&lo, &hi, &mut |l| {
        if !ql.in_lattice(l) {
            return;
        }
        let mut coef = 1;
        for n in 0..ql.dim() {
            coef *= alternative_weight(p.cls.zeta_exponent[n], ql.value(l, n));
            if coef == 0 {
                return;
            }
        }
        out.add_term(exponent(&c, l), coef);
    });
    Ok(out)
}

/// Filtration levels 0 <= k <= delta - 2 on N-hat with their weights
/// (-1)^k binom(delta - 2, k).
pub fn graded_levels(p: &Plumbing) -> Vec<(Vec<i64>, i64)> {
    let upper: Vec<i64> = p.cls.zeta_exponent.iter().map(|&m| m.max(0)).collect();
    multi_indices(&upper)
        .into_iter()
        .map(|k| {
            let w = k
                .iter()
                .zip(&p.cls.zeta_exponent)
                .map(|(&kn, &m)| if m < 0 { 1 } else { sign_pow(kn) * gen_binom(m, kn) })
                .product();
            (k, w)
        })
        .collect()
}

/// Levels 0 <= k <= delta - 1 with weights (-1)^k binom(delta - 1, k).
pub fn module_levels(p: &Plumbing) -> Vec<(Vec<i64>, i64)> {
    let upper: Vec<i64> = p.cls.zeta_exponent.iter().map(|&m| (m + 1).max(0)).collect();
    multi_indices(&upper)
        .into_iter()
        .map(|k| {
            let w = k
                .iter()
                .zip(&p.cls.zeta_exponent)
                .map(|(&kn, &m)| sign_pow(kn) * gen_binom((m + 1).max(0), kn))
                .product();
            (k, w)
        })
        .collect()
}

/// kappa for the graded form: 1 on N-hat, where the generators must leave
/// the graded piece, 0 elsewhere.
pub fn graded_kappa(p: &Plumbing) -> Vec<i64> {
    (0..p.num_nodes()).map(|n| p.cls.n_hat.contains(&n) as i64).collect()
}

/// The lifts a - k the generators must serve for the graded form.
pub fn graded_lifts(p: &Plumbing, a: &ReducedLift) -> Vec<ReducedLift> {
    graded_levels(p).into_iter().map(|(k, _)| a.minus_nodes(p, &k)).collect()
}

/// The lifts a - k for the module form (kappa = 0).
pub fn module_lifts(p: &Plumbing, a: &ReducedLift) -> Vec<ReducedLift> {
    module_levels(p).into_iter().map(|(k, _)| a.minus_nodes(p, &k)).collect()
}

fn is_single_node(p: &Plumbing) -> bool {
    p.num_nodes() == 1 && p.cls.zeta_exponent[0] < -1
}

/// Closed form of Z_h through the graded holes; generators must be valid
/// for [`graded_lifts`] with [`graded_kappa`].
pub fn rational_form(p: &Plumbing, a: &ReducedLift, gens: &GeneratorSet) -> Result<RationalForm> {
    require_nodes(p)?;
    if is_single_node(p) {
        return single_node_form(p, a, gens);
    }
    let mut out = RationalForm::zero(p.num_nodes());
    for (k, w) in graded_levels(p) {
        out.add_scaled(&hilbert_form(p, a, gens, &k, HilbertMode::Graded), w);
    }
    Ok(out)
}

/// Closed form through the modules M_{a-k}; generators valid for
/// [`module_lifts`] with kappa = 0.
pub fn rational_form_modules(p: &Plumbing, a: &ReducedLift, gens: &GeneratorSet) -> Result<RationalForm> {
    require_nodes(p)?;
    if is_single_node(p) {
        return single_node_form(p, a, gens);
    }
    let mut out = RationalForm::zero(p.num_nodes());
    for (k, w) in module_levels(p) {
        out.add_scaled(&hilbert_form(p, a, gens, &k, HilbertMode::Module), w);
    }
    Ok(out)
}

/// One node of valency delta_{n,E}: Z_h = sum over l with N >= 0 of
/// (N + 1) t^{c + l}. With T = t^v and N(l + v) = N(l) + lambda every residue
/// class of l modulo v sums to t^e [m (1 - T) + lambda T] / (1 - T)^2.
fn single_node_form(p: &Plumbing, a: &ReducedLift, gens: &GeneratorSet) -> Result<RationalForm> {
    let ql = Quasilinear::new(p, a);
    let c = ql.c()[0];
    let v = gens.vectors[0][0];
    let start = ceil_q(&-c);
    let mut numerator = Laurent::zero();
    let mut lambda = None;
    for l in start..start + v {
        let n0 = ql.value(&[l], 0);
        let inc = ql.value(&[l + v], 0) - n0;
        if inc <= 0 || lambda.is_some_and(|x| x != inc) {
            return Err(Error::Invalid("generator does not shift N by a constant".into()));
        }
        lambda = Some(inc);
        let j0 = if n0 >= 0 { 0 } else { (-n0 + inc - 1) / inc };
        let m = n0 + j0 * inc + 1;
        let e = q(l + j0 * v) + c;
        numerator.add_term(vec![e], m);
        numerator.add_term(vec![e + q(v)], inc - m);
    }
    let vq = vec![q(v)];
    Ok(RationalForm {
        dim: 1,
        terms: vec![RationalTerm { set: vec![], denominators: vec![(0, vq.clone()), (0, vq)], numerator }],
    })
}

/// Exponents of an expansion outside the projected Lipman cone
/// {e : -I^orb e >= 0}; N-bar_a(l, n) = -(I^orb (c_a + l))_n.
pub fn outside_cone(p: &Plumbing, series: &Laurent) -> Vec<Exponent> {
    let k = p.num_nodes();
    series
        .terms()
        .map(|(e, _)| e)
        .filter(|e| (0..k).any(|i| (0..k).map(|j| -p.seifert.iorb[i][j] * e[j]).sum::<Q>().is_negative()))
        .cloned()
        .collect()
}
