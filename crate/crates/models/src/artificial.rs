use mourre_core::linalg::{c, CMat, CVec};
use mourre_core::norm::operator_norm;
use mourre_core::{Projection, RealInterval, SelfAdjointOperator};
use ndarray::s;

use crate::lattice::{lattice_model, LatticeFlavor};
use crate::rng::Lcg;
use crate::{meta, rank_one_sum, ModelError, ModelInstance, RankOneSum};

/// Size of the perturbation added to the orthonormalized vectors.
const PERTURBATION: f64 = 0.1;

/// The blocks of `H = H0 + (lambda + C)`, `A = A0 + A1` (direct sums).
#[derive(Debug, Clone)]
pub struct ArtificialParts {
    pub h0: ModelInstance,
    pub a1: SelfAdjointOperator,
    pub h1: SelfAdjointOperator,
    pub lambda: f64,
    pub g: Vec<CVec>,
    pub alpha: Vec<f64>,
    pub c: RankOneSum,
    pub c_norm: f64,
    /// The declared bound on `||A1^2 g_n||`.
    pub weight_bound: f64,
    pub interval: RealInterval,
}

impl ArtificialParts {
    pub fn n0(&self) -> usize {
        self.h0.dim()
    }

    pub fn n1(&self) -> usize {
        self.a1.dim()
    }

    /// Projection onto the second block, which is spanned by eigenvectors of `H`.
    pub fn block_projection(&self) -> Projection {
        let (n0, n) = (self.n0(), self.n0() + self.n1());
        let mut m = CMat::zeros((n, n));
        for i in n0..n {
            m[[i, i]] = c(1.0, 0.0);
        }
        Projection { matrix: m, rank: self.n1() }
    }
}

/// `A1`: diagonal `j - (N1 - 1)/2`, off-diagonals `1/2`.
fn second_generator(n1: usize) -> SelfAdjointOperator {
    let mut a = CMat::zeros((n1, n1));
    for j in 0..n1 {
        a[[j, j]] = c(j as f64 - (n1 as f64 - 1.0) / 2.0, 0.0);
        if j + 1 < n1 {
            a[[j, j + 1]] = c(0.5, 0.0);
            a[[j + 1, j]] = c(0.5, 0.0);
        }
    }
    SelfAdjointOperator::hermitian(a).with_label("A1")
}

/// Pseudo-random complex columns, orthonormalized by modified Gram-Schmidt and
/// then perturbed by `0.1` times the normalized raw column.
fn pseudo_random_vectors(n1: usize, seed: u64) -> Vec<CVec> {
    let mut rng = Lcg::new(seed);
    let raw: Vec<CVec> = (0..n1)
        .map(|_| CVec::from_iter((0..n1).map(|_| {
            let re = rng.symmetric();
            c(re, rng.symmetric())
        })))
        .collect();
    let mut q: Vec<CVec> = Vec::with_capacity(n1);
    for v in &raw {
        let mut w = v.clone();
        for u in &q {
            let p = mourre_core::linalg::inner(u, &w);
            w = &w - &(u * p);
        }
        let nrm = mourre_core::linalg::vec_norm(&w);
        q.push(w / c(nrm, 0.0));
    }
    q.iter()
        .zip(&raw)
        .map(|(u, v)| u + &(v * c(PERTURBATION / mourre_core::linalg::vec_norm(v), 0.0)))
        .collect()
}

/// Builds the blocks; `alpha_n = (-1)^n decay^{-n}` rescaled so that
/// `||C|| = min(lambda - lo, hi - lambda) / 2` on the lattice interval.
pub fn artificial_parts(n0: usize, n1: usize, lambda: f64, decay: f64, seed: u64) -> Result<ArtificialParts, ModelError> {
    if n1 == 0 {
        return Err(ModelError::TooSmall { model: "artificial (N1)", n: n1, min: 1 });
    }
    if !(decay > 1.0) {
        return Err(ModelError::BadParameter(format!("decay must exceed 1, got {decay}")));
    }
    let h0 = lattice_model(n0, LatticeFlavor::Dirichlet)?;
    let interval = h0.recommended_interval;
    if !(lambda > interval.lo && lambda < interval.hi) {
        return Err(ModelError::BadParameter(format!("lambda = {lambda} is not interior to {interval}")));
    }
    let a1 = second_generator(n1);
    let g = pseudo_random_vectors(n1, seed);
    let gmax = g.iter().map(mourre_core::linalg::vec_norm).fold(0.0, f64::max);
    let a1_bound = (n1 as f64 - 1.0) / 2.0 + 1.0;
    let weight_bound = a1_bound * a1_bound * gmax;
    let raw: Vec<f64> = (0..n1).map(|k| (-1f64).powi(k as i32) * decay.powi(-(k as i32))).collect();
    let unscaled = rank_one_sum(&a1, &g, &raw, None, Some(weight_bound))?;
    let target = 0.5 * (lambda - interval.lo).min(interval.hi - lambda);
    let scale = target / unscaled.norm();
    let alpha: Vec<f64> = raw.iter().map(|a| a * scale).collect();
    let c_sum = rank_one_sum(&a1, &g, &alpha, None, Some(weight_bound))?;
    let c_norm = operator_norm(c_sum.c.matrix());
    let (lo, hi) = (lambda - c_norm, lambda + c_norm);
    if !(interval.contains(lo) && interval.contains(hi)) {
        return Err(ModelError::IntervalViolation { lo, hi, interval });
    }
    let mut h1 = c_sum.c.matrix().clone();
    for i in 0..n1 {
        h1[[i, i]] += c(lambda, 0.0);
    }
    Ok(ArtificialParts {
        h0,
        a1,
        h1: SelfAdjointOperator::hermitian(h1).with_label("lambda + C"),
        lambda,
        g,
        alpha,
        c: c_sum,
        c_norm,
        weight_bound,
        interval,
    })
}

fn direct_sum(x: &CMat, y: &CMat) -> CMat {
    let (n0, n1) = (x.nrows(), y.nrows());
    let mut m = CMat::zeros((n0 + n1, n0 + n1));
    m.slice_mut(s![..n0, ..n0]).assign(x);
    m.slice_mut(s![n0.., n0..]).assign(y);
    m
}

/// `H = H0 + (lambda + C)` and `A = A0 + A1` as direct sums, with
/// `(H0, A0)` the Dirichlet lattice model on `N0` sites.
pub fn artificial_example(n0: usize, n1: usize, lambda: f64, decay: f64, seed: u64) -> Result<ModelInstance, ModelError> {
    let p = artificial_parts(n0, n1, lambda, decay, seed)?;
    Ok(instance(&p, decay, seed))
}

impl ArtificialParts {
    pub fn instance(&self, decay: f64, seed: u64) -> ModelInstance {
        instance(self, decay, seed)
    }
}

fn instance(p: &ArtificialParts, decay: f64, seed: u64) -> ModelInstance {
    let (n0, n1) = (p.n0(), p.n1());
    let h = direct_sum(p.h0.h.matrix(), p.h1.matrix());
    let a = direct_sum(p.h0.a.matrix(), p.a1.matrix());
    ModelInstance {
        h: SelfAdjointOperator::hermitian(h).with_label("artificial H"),
        a: SelfAdjointOperator::hermitian(a).with_label("artificial A"),
        recommended_interval: p.interval,
        metadata: meta(&[
            ("N0", n0 as f64),
            ("N1", n1 as f64),
            ("lambda", p.lambda),
            ("decay", decay),
            ("seed", seed as f64),
            ("c_norm", p.c_norm),
            ("I_lo", p.interval.lo),
            ("I_hi", p.interval.hi),
        ]),
        name: format!("artificial{{N0={n0},N1={n1},lambda={},decay={decay},seed={seed}}}", p.lambda),
    }
}
