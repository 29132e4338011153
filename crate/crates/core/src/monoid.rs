//! The quasilinear functions N_a, the modules M_a and their normalizations,
//! generator vectors, box points and the sets of holes.

use std::collections::BTreeMap;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::laurent::Laurent;
use crate::lifts::{affine_lattice_member, node_projection, NodeProjection, ReducedLift};
use crate::rational::{floor_q, inverse_det, lcm_denoms, mat_vec, q, Q, QMatrix};
use crate::series::{RationalForm, RationalTerm};
use crate::Plumbing;

/// N_a(., n) and its linear part for a fixed reduced lift a.
#[derive(Clone, Debug)]
pub struct Quasilinear {
    pub lift: ReducedLift,
    pub proj: NodeProjection,
    /// Constant and coefficients of N_a without floors, over a common
    /// denominator per node.
    den: Vec<i64>,
    konst: Vec<i64>,
    lin: Vec<Vec<i64>>,
    /// (a_u, omega_u, alpha_u) for the ends of each node.
    floors: Vec<Vec<(i64, i64, i64)>>,
    /// (lo, hi, omega_hi, alpha, a_connector).
    congruences: Vec<(usize, usize, i64, i64, i64)>,
    euler: Vec<Q>,
    neighbors: Vec<Vec<(usize, i64)>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Membership {
    InModule,
    Hole,
    Outside,
}

impl Quasilinear {
    pub fn new(p: &Plumbing, a: &ReducedLift) -> Self {
        let k = p.num_nodes();
        let mut konst: Vec<Q> = (0..k).map(|n| q(a.node(p, n))).collect();
        let mut lin = vec![vec![Q::zero(); k]; k];
        let mut neighbors = vec![Vec::new(); k];
        for n in 0..k {
            lin[n][n] = -q(p.graph.b(p.cls.nodes[n]));
        }
        let mut congruences = Vec::new();
        for (i, c) in p.seifert.chains.iter().enumerate() {
            let x = a.chain(p, i);
            konst[c.lo] += Q::new(c.omega_lo * x, c.alpha);
            konst[c.hi] += Q::new(x, c.alpha);
            lin[c.lo][c.lo] -= Q::new(c.omega_lo, c.alpha);
            lin[c.hi][c.hi] -= Q::new(c.omega_hi, c.alpha);
            lin[c.lo][c.hi] -= Q::new(1, c.alpha);
            lin[c.hi][c.lo] -= Q::new(1, c.alpha);
            neighbors[c.lo].push((c.hi, c.alpha));
            neighbors[c.hi].push((c.lo, c.alpha));
            congruences.push((c.lo, c.hi, c.omega_hi, c.alpha, x));
        }
        let mut floors = vec![Vec::new(); k];
        for l in &p.seifert.legs {
            floors[l.node].push((a.coeffs[l.end], l.omega, l.alpha));
        }
        let mut den = Vec::with_capacity(k);
        let mut ik = Vec::with_capacity(k);
        let mut il = Vec::with_capacity(k);
        for n in 0..k {
            let d = lcm_denoms(lin[n].iter().chain(std::iter::once(&konst[n])));
            den.push(d);
            ik.push((konst[n] * q(d)).to_integer());
            il.push(lin[n].iter().map(|x| (x * q(d)).to_integer()).collect());
        }
        Quasilinear {
            lift: a.clone(),
            proj: node_projection(p, a),
            den,
            konst: ik,
            lin: il,
            floors,
            congruences,
            euler: p.seifert.euler.clone(),
            neighbors,
        }
    }

    pub fn dim(&self) -> usize {
        self.den.len()
    }

    pub fn c(&self) -> &[Q] {
        &self.proj.c
    }

    pub fn in_lattice(&self, l: &[i64]) -> bool {
        self.congruences
            .iter()
            .all(|&(lo, hi, w, al, x)| (l[lo] + w * l[hi] - x).mod_floor(&al) == 0)
    }

    fn floor_sum(&self, l: &[i64], n: usize) -> i64 {
        self.floors[n].iter().map(|&(au, w, al)| Integer::div_floor(&(au - w * l[n]), &al)).sum()
    }

    fn linear_numerator(&self, l: &[i64], n: usize) -> i64 {
        self.konst[n] + self.lin[n].iter().zip(l).map(|(a, b)| a * b).sum::<i64>()
    }

    /// Exact value of N_a(l, n) anywhere.
    pub fn value_q(&self, l: &[i64], n: usize) -> Q {
        Q::new(self.linear_numerator(l, n), self.den[n]) + q(self.floor_sum(l, n))
    }

    /// N_a(l, n); integral on Z^N(a).
    pub fn value(&self, l: &[i64], n: usize) -> i64 {
        let num = self.linear_numerator(l, n);
        debug_assert!(num % self.den[n] == 0, "N_a evaluated off the affine lattice");
        Integer::div_floor(&num, &self.den[n]) + self.floor_sum(l, n)
    }

    pub fn values(&self, l: &[i64]) -> Vec<i64> {
        (0..self.dim()).map(|n| self.value(l, n)).collect()
    }

    /// N-bar_a(l, n) = A_n - e_n l_n - sum l_{n'}/alpha_{n,n'}.
    pub fn value_bar(&self, l: &[i64], n: usize) -> Q {
        let mut s = self.proj.big_a[n] - self.euler[n] * q(l[n]);
        for &(m, al) in &self.neighbors[n] {
            s -= Q::new(l[m], al);
        }
        s
    }

    pub fn membership(&self, l: &[i64]) -> Result<Membership> {
        if !self.in_lattice(l) {
            return Err(Error::NotInAffineLattice);
        }
        let k = self.dim();
        if (0..k).any(|n| self.value_bar(l, n).is_negative()) {
            Ok(Membership::Outside)
        } else if (0..k).all(|n| self.value(l, n) >= 0) {
            Ok(Membership::InModule)
        } else {
            Ok(Membership::Hole)
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Strategy {
    Proof,
    Small,
    Pinned(Vec<Vec<i64>>),
}

impl Strategy {
    pub fn name(&self) -> &'static str {
        match self {
            Strategy::Proof => "proof",
            Strategy::Small => "small",
            Strategy::Pinned(_) => "pinned",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorSet {
    pub vectors: Vec<Vec<i64>>,
    /// v_n = lambda_n pi_N(E*_n).
    pub lambdas: Vec<Q>,
    /// Required lower bound of N_a(l + v_n, n), per node.
    pub kappa: Vec<i64>,
    pub strategy: String,
}

impl GeneratorSet {
    pub fn as_q(&self) -> Vec<Vec<Q>> {
        self.vectors.iter().map(|v| v.iter().map(|&x| q(x)).collect()).collect()
    }

    fn matrix_inverse(&self) -> QMatrix {
        // columns are the generators
        let k = self.vectors.len();
        let g: QMatrix = (0..k).map(|i| (0..k).map(|j| q(self.vectors[j][i])).collect()).collect();
        inverse_det(&g).expect("generators are linearly independent").0
    }
}

/// Smallest positive t with t * dir satisfying the divisibility conditions,
/// returned as (t, t * dir). `strict` also demands the vanishing of the
/// fractional parts for the ends of the node itself.
fn minimal_multiple(p: &Plumbing, n: usize, strict: bool) -> (Q, Vec<i64>) {
    let dir = p.node_dual(n);
    let d = lcm_denoms(dir.iter());
    let ints: Vec<i64> = dir.iter().map(|x| (x * q(d)).to_integer()).collect();
    let g = ints.iter().fold(0i64, |acc, x| acc.gcd(x));
    let prim: Vec<i64> = ints.iter().map(|x| x / g).collect();
    let mut t0 = Q::new(d, g);
    let mut m = 1i64;
    for c in &p.seifert.chains {
        let val = prim[c.lo] + c.omega_hi * prim[c.hi];
        m = m.lcm(&(c.alpha / c.alpha.gcd(&val)));
    }
    for l in &p.seifert.legs {
        if l.node == n && !strict {
            continue;
        }
        let val = l.omega * prim[l.node];
        m = m.lcm(&(l.alpha / l.alpha.gcd(&val)));
    }
    t0 *= q(m);
    (t0, prim.iter().map(|x| x * m).collect())
}

/// Chooses generators with N_a(l + v_n, m) = N_a(l, m) for m != n and
/// N_a(l + v_n, n) >= kappa_n on the box, simultaneously for all given lifts.
pub fn choose_generators(
    p: &Plumbing,
    lifts: &[ReducedLift],
    kappa: &[i64],
    strategy: &Strategy,
) -> Result<GeneratorSet> {
    let k = p.num_nodes();
    if k == 0 {
        return Err(Error::NoNodes);
    }
    if kappa.len() != k {
        return Err(Error::Invalid(format!("expected {k} values of kappa")));
    }
    let kappa = kappa.to_vec();
    match strategy {
        Strategy::Proof => {
            let mut vectors = Vec::new();
            let mut lambdas = Vec::new();
            for n in 0..k {
                let (mu, v) = minimal_multiple(p, n, true);
                let need = q(p.seifert.legs_of(n).count() as i64 + kappa[n]);
                let mut j = (need / mu).ceil().to_integer().max(1);
                if mu * q(j) < need {
                    j += 1;
                }
                vectors.push(v.iter().map(|x| x * j).collect());
                lambdas.push(mu * q(j));
            }
            Ok(GeneratorSet { vectors, lambdas, kappa, strategy: "proof".into() })
        }
        Strategy::Small => {
            let base: Vec<(Q, Vec<i64>)> = (0..k).map(|n| minimal_multiple(p, n, k == 1)).collect();
            let mut mult = vec![1i64; k];
            for _ in 0..10_000 {
                let gens = GeneratorSet {
                    vectors: base.iter().zip(&mult).map(|((_, v), m)| v.iter().map(|x| x * m).collect()).collect(),
                    lambdas: base.iter().zip(&mult).map(|((t, _), m)| t * q(*m)).collect(),
                    kappa: kappa.clone(),
                    strategy: "small".into(),
                };
                match generator_failures(p, lifts, &gens)? {
                    None => return Ok(gens),
                    Some(bad) => {
                        for n in bad {
                            mult[n] += 1;
                        }
                    }
                }
            }
            Err(Error::Invalid("small generator search did not terminate".into()))
        }
        Strategy::Pinned(vs) => {
            if vs.len() != k || vs.iter().any(|v| v.len() != k) {
                return Err(Error::PinnedGeneratorsInvalid(format!("expected {k} vectors of length {k}")));
            }
            let mut lambdas = Vec::new();
            for (n, v) in vs.iter().enumerate() {
                let dir = p.node_dual(n);
                let lam = q(v[n]) / dir[n];
                if !lam.is_positive() || (0..k).any(|m| q(v[m]) != lam * dir[m]) {
                    return Err(Error::PinnedGeneratorsInvalid(format!(
                        "v_{} is not a positive multiple of pi_N(E*_{})",
                        n + 1,
                        n + 1
                    )));
                }
                let zero = ReducedLift::zero(p);
                if !affine_lattice_member(p, &zero, v) {
                    return Err(Error::PinnedGeneratorsInvalid(format!("v_{} is not in Z^N(0)", n + 1)));
                }
                for l in &p.seifert.legs {
                    if (l.node != n || k == 1) && (l.omega * v[l.node]) % l.alpha != 0 {
                        return Err(Error::PinnedGeneratorsInvalid(format!(
                            "v_{} has a nonzero fractional part at an end of another node",
                            n + 1
                        )));
                    }
                }
                lambdas.push(lam);
            }
            let gens = GeneratorSet { vectors: vs.clone(), lambdas, kappa, strategy: "pinned".into() };
            if let Some(bad) = generator_failures(p, lifts, &gens)? {
                return Err(Error::PinnedGeneratorsInvalid(format!(
                    "N_a(l + v_n, n) >= kappa_n fails for n in {:?}",
                    bad.iter().map(|n| n + 1).collect::<Vec<_>>()
                )));
            }
            Ok(gens)
        }
    }
}

/// Nodes n for which the generator properties fail on some box point (or its
/// translate by v_n) of some lift; None when all hold.
pub fn generator_failures(p: &Plumbing, lifts: &[ReducedLift], gens: &GeneratorSet) -> Result<Option<Vec<usize>>> {
    let k = p.num_nodes();
    let zero = Quasilinear::new(p, &ReducedLift::zero(p));
    let mut bad = vec![false; k];
    for n in 0..k {
        let v = &gens.vectors[n];
        if (0..k).any(|m| zero.value(v, m) < 0) {
            bad[n] = true;
        }
    }
    for a in lifts {
        let ql = Quasilinear::new(p, a);
        for l in enumerate_box(&ql, gens) {
            for n in 0..k {
                if bad[n] {
                    continue;
                }
                let v = &gens.vectors[n];
                let l1: Vec<i64> = l.iter().zip(v).map(|(x, y)| x + y).collect();
                let l2: Vec<i64> = l1.iter().zip(v).map(|(x, y)| x + y).collect();
                for (base, shifted) in [(&l, &l1), (&l1, &l2)] {
                    if ql.value(shifted, n) < gens.kappa[n] {
                        bad[n] = true;
                    }
                    if (0..k).any(|m| m != n && ql.value(shifted, m) != ql.value(base, m)) {
                        bad[n] = true;
                    }
                }
            }
        }
    }
    let out: Vec<usize> = (0..k).filter(|&n| bad[n]).collect();
    Ok(if out.is_empty() { None } else { Some(out) })
}

/// Lower triangular column Hermite form of the generator matrix: the
/// diagonal bounds a complete system of representatives of Z^N / <v>.
fn hermite_diagonal(cols: &[Vec<i64>]) -> Vec<i64> {
    let k = cols.len();
    let mut c: Vec<Vec<i128>> = cols.iter().map(|v| v.iter().map(|&x| x as i128).collect()).collect();
    for i in 0..k {
        for j in i + 1..k {
            while c[j][i] != 0 {
                let f = Integer::div_floor(&c[i][i], &c[j][i]);
                for r in 0..k {
                    c[i][r] -= f * c[j][r];
                }
                c.swap(i, j);
            }
        }
        if c[i][i] < 0 {
            for r in 0..k {
                c[i][r] = -c[i][r];
            }
        }
    }
    (0..k).map(|i| c[i][i] as i64).collect()
}

fn reduce_into_box(l: &mut [i64], c: &[Q], ginv: &QMatrix, gens: &[Vec<i64>]) {
    let k = l.len();
    let x: Vec<Q> = (0..k).map(|i| q(l[i]) + c[i]).collect();
    let lam = mat_vec(ginv, &x);
    for (n, lm) in lam.iter().enumerate() {
        let f = floor_q(lm);
        if f != 0 {
            for i in 0..k {
                l[i] -= f * gens[n][i];
            }
        }
    }
}

/// (Box - c_a) cap Z^N(a), sorted. Every coset of Z^N modulo the generator
/// lattice is moved into the box and kept if it lies in Z^N(a).
pub fn enumerate_box(ql: &Quasilinear, gens: &GeneratorSet) -> Vec<Vec<i64>> {
    let k = ql.dim();
    let diag = hermite_diagonal(&gens.vectors);
    let ginv = gens.matrix_inverse();
    let c = ql.c().to_vec();
    let mut out = Vec::new();
    let mut z = vec![0i64; k];
    loop {
        let mut l = z.clone();
        reduce_into_box(&mut l, &c, &ginv, &gens.vectors);
        if ql.in_lattice(&l) {
            out.push(l);
        }
        let mut i = 0;
        loop {
            if i == k {
                out.sort();
                return out;
            }
            z[i] += 1;
            if z[i] < diag[i] {
                break;
            }
            z[i] = 0;
            i += 1;
        }
    }
}

/// The same set by scanning the integer bounding box of Box - c_a and
/// testing the box coordinates exactly.
pub fn enumerate_box_scan(ql: &Quasilinear, gens: &GeneratorSet) -> Vec<Vec<i64>> {
    let k = ql.dim();
    let ginv = gens.matrix_inverse();
    let c = ql.c();
    let lo: Vec<i64> = (0..k).map(|i| (-c[i]).ceil().to_integer()).collect();
    let hi: Vec<i64> = (0..k)
        .map(|i| (q(gens.vectors.iter().map(|v| v[i]).sum::<i64>()) - c[i]).ceil().to_integer())
        .collect();
    let mut out = Vec::new();
    scan_region(&lo, &hi, &mut |l| {
        if !ql.in_lattice(l) {
            return;
        }
        let x: Vec<Q> = (0..k).map(|i| q(l[i]) + c[i]).collect();
        let lam = mat_vec(&ginv, &x);
        if lam.iter().all(|t| !t.is_negative() && *t < Q::one()) {
            out.push(l.to_vec());
        }
    });
    out.sort();
    out
}

/// Calls `f` on every integer point of the half-open box [lo, hi).
pub fn scan_region(lo: &[i64], hi: &[i64], f: &mut dyn FnMut(&[i64])) {
    let k = lo.len();
    if (0..k).any(|i| lo[i] >= hi[i]) {
        return;
    }
    let mut l = lo.to_vec();
    loop {
        f(&l);
        let mut i = 0;
        loop {
            if i == k {
                return;
            }
            l[i] += 1;
            if l[i] < hi[i] {
                break;
            }
            l[i] = lo[i];
            i += 1;
        }
    }
}

/// M^-_{a,I}: box points with N_a(l, n) < 0 for all n in I.
pub fn hole_sets(ql: &Quasilinear, box_points: &[Vec<i64>], set: &[usize]) -> Vec<Vec<i64>> {
    box_points.iter().filter(|l| set.iter().all(|&n| ql.value(l, n) < 0)).cloned().collect()
}

/// gr_k M^-_{a,I} for N-hat contained in I: points of (Box - c_{a-k}) cap
/// Z^N(a) with N_a < 0 on I minus N-hat and N_a = k on N-hat.
pub fn graded_holes(p: &Plumbing, a: &ReducedLift, gens: &GeneratorSet, k: &[i64], set: &[usize]) -> Vec<Vec<i64>> {
    let ql = Quasilinear::new(p, a);
    let shifted = Quasilinear::new(p, &a.minus_nodes(p, k));
    let nhat = &p.cls.n_hat;
    enumerate_box(&shifted, gens)
        .into_iter()
        .filter(|l| {
            set.iter().all(|&n| {
                let v = ql.value(l, n);
                if nhat.contains(&n) {
                    v == k[n]
                } else {
                    v < 0
                }
            })
        })
        .collect()
}

/// Every subset of `0..k` containing `base`, ordered by bitmask.
pub fn supersets(k: usize, base: &[usize]) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for mask in 0u32..(1 << k) {
        let s: Vec<usize> = (0..k).filter(|i| mask & (1 << i) != 0).collect();
        if base.iter().all(|b| s.contains(b)) {
            out.push(s);
        }
    }
    out
}

/// All node multi-indices with 0 <= k_n <= upper_n.
pub fn multi_indices(upper: &[i64]) -> Vec<Vec<i64>> {
    let mut out = vec![vec![]];
    for &u in upper {
        out = out
            .into_iter()
            .flat_map(|v: Vec<i64>| {
                (0..=u).map(move |x| {
                    let mut v = v.clone();
                    v.push(x);
                    v
                })
            })
            .collect();
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HilbertMode {
    /// M_a(k) = M_{a-k}, summed over all I.
    Module,
    /// gr_k M_a, summed over I containing N-hat.
    Graded,
}

/// Closed form of the fine Hilbert series of M_a(k) or gr_k M_a, with
/// exponents c_a + l.
pub fn hilbert_form(p: &Plumbing, a: &ReducedLift, gens: &GeneratorSet, k: &[i64], mode: HilbertMode) -> RationalForm {
    let nn = p.num_nodes();
    let ql = Quasilinear::new(p, a);
    let c = ql.c().to_vec();
    let gq = gens.as_q();
    let mut terms: BTreeMap<Vec<usize>, Laurent> = BTreeMap::new();
    let (sets, points): (Vec<Vec<usize>>, Box<dyn Fn(&[usize]) -> Vec<Vec<i64>>>) = match mode {
        HilbertMode::Module => {
            let shifted = Quasilinear::new(p, &a.minus_nodes(p, k));
            let bx = enumerate_box(&shifted, gens);
            (supersets(nn, &[]), Box::new(move |s: &[usize]| hole_sets(&shifted, &bx, s)))
        }
        HilbertMode::Graded => {
            let kk = k.to_vec();
            (
                supersets(nn, &p.cls.n_hat),
                Box::new(move |s: &[usize]| graded_holes(p, a, gens, &kk, s)),
            )
        }
    };
    let base = match mode {
        HilbertMode::Module => 0,
        HilbertMode::Graded => p.cls.n_hat.len(),
    };
    for s in sets {
        let sign = if (s.len() - base) % 2 == 0 { 1 } else { -1 };
        let num: Laurent = points(&s)
            .into_iter()
            .map(|l| (l.iter().zip(&c).map(|(x, y)| q(*x) + y).collect(), sign))
            .collect();
        terms.entry(s).or_default().add_assign_scaled(&num, 1);
    }
    RationalForm {
        dim: nn,
        terms: terms
            .into_iter()
            .map(|(s, numerator)| RationalTerm {
                denominators: (0..nn).filter(|n| !s.contains(n)).map(|n| (n, gq[n].clone())).collect(),
                numerator,
                set: s,
            })
            .collect(),
    }
}
