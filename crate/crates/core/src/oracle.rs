//! Brute-force oracles working on the full zeta function
//! prod_v (1 - t^{E*_v})^{delta_v - 2}: its counting function, the
//! Seiberg–Witten invariants it determines, and naive reduced expansions.

use num_integer::Integer;
use num_traits::Signed;

use crate::error::{Error, Result};
use crate::lattice::Class;
use crate::laurent::Laurent;
use crate::rational::{floor_q, gen_binom, q, sign_pow, Q};
use crate::Plumbing;

/// ((K + 2 r_h)^2 + |V|) / 8.
pub fn normalization(p: &Plumbing, h: &[i64]) -> Q {
    let d = &p.lattice;
    let k = d.canonical_class().e_coords(d);
    let r = p.group.representative(h, d).e_coords(d);
    let v: Vec<Q> = k.iter().zip(&r).map(|(a, b)| a + q(2) * b).collect();
    (d.pair(&v, &v) + q(p.graph.len() as i64)) / q(8)
}

/// Factors of the zeta function with nonzero exponent, in E-coordinates
/// scaled by det, with their classes.
struct Factor {
    exponent: i64,
    col: Vec<i64>,
    class: Class,
    order: i64,
}

fn factors(p: &Plumbing, x: &[i64]) -> Vec<Factor> {
    let g = &p.graph;
    let det = p.lattice.det;
    let mut out: Vec<Factor> = (0..g.len())
        .filter(|&v| g.valency(v) != 2)
        .map(|v| {
            let mut unit = vec![0i64; g.len()];
            unit[v] = 1;
            Factor {
                exponent: g.valency(v) as i64 - 2,
                col: p.lattice.dual_vector(v).iter().map(|x| (x * q(det)).to_integer()).collect(),
                class: p.group.class_of_dual(&unit),
                order: p.group.order_of_dual(v),
            }
        })
        .collect();
    // bounded factors first keep the search tree narrow; the geometric
    // factor with the longest run goes last, where it is summed in closed form
    let steps = |f: &Factor| x.iter().zip(&f.col).map(|(a, c)| a / c).max().unwrap_or(0);
    out.sort_by_key(|f| (f.exponent < 0, steps(f)));
    out
}

fn weight(exponent: i64, k: i64) -> i64 {
    sign_pow(k) * gen_binom(exponent, k)
}

struct Search<'a> {
    p: &'a Plumbing,
    factors: Vec<Factor>,
    target: Class,
}

impl Search<'_> {
    /// Sum of coefficients of exponents l' with [l'] = h and l' not >= x,
    /// starting from the partial sum `at`.
    fn count(&self, i: usize, at: &mut Vec<i64>, class: &Class, coef: i64, x: &[i64]) -> i64 {
        if at.iter().zip(x).all(|(a, b)| a >= b) {
            return 0;
        }
        if i == self.factors.len() {
            return if *class == self.target { coef } else { 0 };
        }
        let f = &self.factors[i];
        if f.exponent == -1 && i + 1 == self.factors.len() {
            return coef * self.geometric_tail(f, at, class, x);
        }
        let mut total = 0;
        let mut cls = class.clone();
        let mut k = 0;
        let saved = at.clone();
        loop {
            if f.exponent >= 0 && k > f.exponent {
                break;
            }
            if f.exponent < 0 && k > 0 && at.iter().zip(x).all(|(a, b)| a >= b) {
                break;
            }
            let w = weight(f.exponent, k);
            if w != 0 {
                total += self.count(i + 1, at, &cls, coef * w, x);
            }
            for (a, c) in at.iter_mut().zip(&f.col) {
                *a += c;
            }
            cls = self.p.group.add(&cls, &f.class);
            k += 1;
        }
        *at = saved;
        total
    }
}

impl Search<'_> {
    /// Number of k >= 0 with at + k col not >= x and class + k [f] = target.
    fn geometric_tail(&self, f: &Factor, at: &[i64], class: &Class, x: &[i64]) -> i64 {
        let run = at
            .iter()
            .zip(x)
            .zip(&f.col)
            .map(|((a, b), c)| if a < b { Integer::div_ceil(&(b - a), c) } else { 0 })
            .max()
            .unwrap_or(0);
        let mut cls = class.clone();
        let mut total = 0;
        for r in 0..f.order.min(run) {
            if cls == self.target {
                total += (run - 1 - r) / f.order + 1;
            }
            cls = self.p.group.add(&cls, &f.class);
        }
        total
    }
}

/// Q_h(x) = sum of the coefficients p_{l'} of Z_h over l' not >= x.
pub fn counting_function(p: &Plumbing, h: &[i64], x: &[Q]) -> Result<i64> {
    let det = p.lattice.det;
    let xs: Vec<i64> = x.iter().map(|v| floor_q(&(v * q(det)))).collect();
    let s = Search { p, factors: factors(p, &xs), target: h.to_vec() };
    let mut at = vec![0i64; p.graph.len()];
    Ok(s.count(0, &mut at, &p.group.zero(), 1, &xs))
}

/// Two points of class h deep in -K + int(S'), in E-coordinates: x = -K +
/// sum E*_v + l'_g with l'_g having E*-coordinates in [0, ord g_v), and
/// x + ord(g_w) E*_w for the vertex w of smallest order.
pub fn oracle_points(p: &Plumbing, h: &[i64]) -> Vec<Vec<Q>> {
    let n = p.graph.len();
    let kdual: Vec<i64> = (0..n).map(|v| p.graph.b(v) + 2).collect();
    let target = p.group.add(h, &p.group.class_of_dual(&kdual));
    let shift = p.group.class_of_dual(&vec![1; n]);
    let lift = p.group.small_lift(&p.group.add(&target, &p.group.neg(&shift)));
    let mut y: Vec<i64> = (0..n).map(|v| -kdual[v] + 1 + lift[v]).collect();
    let first = p.lattice.dual_to_e(&y.iter().map(|&t| q(t)).collect::<Vec<_>>());
    let w = (0..n).min_by_key(|&v| p.group.order_of_dual(v)).unwrap_or(0);
    if n > 0 {
        y[w] += p.group.order_of_dual(w);
    }
    let second = p.lattice.dual_to_e(&y.iter().map(|&t| q(t)).collect::<Vec<_>>());
    vec![first, second]
}

/// sw^norm_h = Q_h(x) + ((K + 2x)^2 + |V|)/8 - ((K + 2 r_h)^2 + |V|)/8.
pub fn sw_norm_counting(p: &Plumbing, h: &[i64], x: &[Q]) -> Result<Q> {
    let d = &p.lattice;
    let k = d.canonical_class().e_coords(d);
    let shifted: Vec<Q> = x.iter().zip(&k).map(|(a, b)| a + b).collect();
    let dual = d.e_to_dual(&shifted);
    if dual.iter().any(|y| !y.is_positive() || !y.is_integer()) {
        return Err(Error::OracleDomain("x + K must have positive integral E*-coordinates".into()));
    }
    let xdual = d.e_to_dual(x);
    let xi: Vec<i64> = xdual.iter().map(|y| y.to_integer()).collect();
    if p.group.class_of_dual(&xi) != h {
        return Err(Error::OracleDomain("x is not in the class h".into()));
    }
    let v: Vec<Q> = k.iter().zip(x).map(|(a, b)| a + q(2) * b).collect();
    let quad = (d.pair(&v, &v) + q(p.graph.len() as i64)) / q(8);
    Ok(q(counting_function(p, h, x)?) + quad - normalization(p, h))
}

/// The same invariant evaluated at every point of [`oracle_points`]; the
/// values must agree.
pub fn sw_norm_oracle(p: &Plumbing, h: &[i64]) -> Result<Vec<Q>> {
    oracle_points(p, h).iter().map(|x| sw_norm_counting(p, h, x)).collect()
}

/// Z_h(t_N) by multiplying out the factors of the zeta function, keeping
/// node exponents <= bound.
pub fn reduced_series_naive(p: &Plumbing, h: &[i64], bound: i64) -> Laurent {
    let det = p.lattice.det;
    let fs = factors(p, &vec![bound * det; p.graph.len()]);
    let nodes = p.cls.nodes.clone();
    let cap = bound * det;
    let mut out = Laurent::zero();
    if nodes.is_empty() {
        return out;
    }
    fn go(
        p: &Plumbing,
        fs: &[Factor],
        nodes: &[usize],
        cap: i64,
        h: &[i64],
        i: usize,
        at: &mut Vec<i64>,
        class: Class,
        coef: i64,
        out: &mut Laurent,
    ) {
        if nodes.iter().any(|&n| at[n] > cap) {
            return;
        }
        if i == fs.len() {
            if class == h {
                let det = p.lattice.det;
                out.add_term(nodes.iter().map(|&n| Q::new(at[n], det)).collect(), coef);
            }
            return;
        }
        let f = &fs[i];
        let saved = at.clone();
        let mut cls = class;
        let mut k = 0;
        while (f.exponent < 0 || k <= f.exponent) && nodes.iter().all(|&n| at[n] <= cap) {
            let w = weight(f.exponent, k);
            if w != 0 {
                go(p, fs, nodes, cap, h, i + 1, at, cls.clone(), coef * w, out);
            }
            for (a, c) in at.iter_mut().zip(&f.col) {
                *a += c;
            }
            cls = p.group.add(&cls, &f.class);
            k += 1;
        }
        *at = saved;
    }
    let mut at = vec![0i64; p.graph.len()];
    go(p, &fs, &nodes, cap, h, 0, &mut at, p.group.zero(), 1, &mut out);
    out
}
