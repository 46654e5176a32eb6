//! Certified spectral radii.
//!
//! The fast route runs power iteration on `A + nI` from the all-ones vector
//! and turns the final iterate into a positive integer vector `x`; the
//! Collatz–Wielandt ratios `(Ax)_i / x_i` are then exact rationals bracketing
//! the Perron root. When the bracket is too wide the component falls back to
//! Sturm isolation of its integer characteristic polynomial.

pub mod charpoly;
pub mod poly;
pub mod quotient;

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

pub use charpoly::{char_poly, CharPoly};
pub use poly::{
    isolate_largest_root, parse_rational, rational_from_f64, rational_string, rational_to_f64, IntPoly, LargestRoot,
    RationalInterval, SturmChain,
};
pub use quotient::{quotient_matrix, QuotientMatrix};

use crate::error::{GraphError, SpectralError};
use crate::graph::LabeledGraph;

pub const DEFAULT_TOL: f64 = 1e-10;

const WITNESS_SCALE: f64 = (1u64 << 52) as f64;
const MAX_POWER_STEPS: usize = 200_000;
const STALL_STEPS: usize = 2_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    CollatzWielandt,
    SturmIsolated,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "method", rename_all = "kebab-case")]
pub enum Witness {
    /// Positive vector indexed like the component's vertex list.
    CollatzWielandt { vector: Vec<u64> },
    /// Characteristic polynomial of the component.
    SturmIsolated { poly: IntPoly },
}

impl Witness {
    pub fn method(&self) -> Method {
        match self {
            Witness::CollatzWielandt { .. } => Method::CollatzWielandt,
            Witness::SturmIsolated { .. } => Method::SturmIsolated,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentEvidence {
    pub vertices: Vec<usize>,
    #[serde(flatten)]
    pub enclosure: RationalInterval,
    pub witness: Witness,
}

/// `lo <= rho(G) <= hi`, with the per-component evidence behind it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpectralCertificate {
    #[serde(flatten)]
    pub enclosure: RationalInterval,
    pub method: Method,
    pub components: Vec<ComponentEvidence>,
}

impl SpectralCertificate {
    pub fn lo(&self) -> &BigRational {
        &self.enclosure.lo
    }

    pub fn hi(&self) -> &BigRational {
        &self.enclosure.hi
    }

    pub fn width(&self) -> BigRational {
        self.enclosure.width()
    }

    /// Re-derives every component enclosure from its witness and checks the
    /// overall enclosure against them.
    pub fn verify(&self, g: &LabeledGraph) -> bool {
        let comps = g.components();
        if comps.len() != self.components.len() || comps.iter().zip(&self.components).any(|(c, e)| c != &e.vertices) {
            return false;
        }
        if !self.components.iter().all(|e| verify_component(g, e)) {
            return false;
        }
        let top = top_component(&self.components);
        let lo = self.components.iter().map(|e| &e.enclosure.lo).max().expect("nonempty");
        lo == &self.enclosure.lo && top.enclosure.hi == self.enclosure.hi && top.witness.method() == self.method
    }
}

fn top_component(components: &[ComponentEvidence]) -> &ComponentEvidence {
    let mut best = &components[0];
    for e in &components[1..] {
        if e.enclosure.hi > best.enclosure.hi {
            best = e;
        }
    }
    best
}

fn verify_component(g: &LabeledGraph, e: &ComponentEvidence) -> bool {
    let nbrs = local_neighbors(g, &e.vertices);
    match &e.witness {
        Witness::CollatzWielandt { vector } => {
            vector.len() == e.vertices.len()
                && vector.iter().all(|&x| x > 0)
                && cw_bounds(&nbrs, vector) == (e.enclosure.lo.clone(), e.enclosure.hi.clone())
        }
        Witness::SturmIsolated { poly } => {
            let sub = g.induced(&e.vertices);
            let cp = char_poly(&sub.adjacency_matrix()).expect("square");
            if cp.poly() != poly {
                return false;
            }
            let sturm = SturmChain::new(poly);
            let (lo, hi) = (&e.enclosure.lo, &e.enclosure.hi);
            sturm.count_above(hi) == 0 && sturm.count_closed(lo, hi) == 1
        }
    }
}

/// Neighbour lists of the induced subgraph in local indices.
fn local_neighbors(g: &LabeledGraph, vertices: &[usize]) -> Vec<Vec<usize>> {
    let sub = g.induced(vertices);
    (1..=vertices.len())
        .map(|v| sub.neighbors(v).map(|w| w - 1).collect())
        .collect()
}

/// Exact `(min, max)` of `(Ax)_i / x_i`.
fn cw_bounds(nbrs: &[Vec<usize>], x: &[u64]) -> (BigRational, BigRational) {
    let sums: Vec<u128> = nbrs.iter().map(|nb| nb.iter().map(|&j| x[j] as u128).sum()).collect();
    // compare s_a / x_a with s_b / x_b by cross multiplication
    let less = |a: usize, b: usize| sums[a] * (x[b] as u128) < sums[b] * (x[a] as u128);
    let (mut lo, mut hi) = (0, 0);
    for i in 1..x.len() {
        if less(i, lo) {
            lo = i;
        }
        if less(hi, i) {
            hi = i;
        }
    }
    let ratio = |i: usize| BigRational::new(BigInt::from(sums[i]), BigInt::from(x[i]));
    (ratio(lo), ratio(hi))
}

/// Power iteration on `A + shift*I`; returns the iterate with the narrowest
/// floating Collatz–Wielandt bracket seen.
fn power_iterate(nbrs: &[Vec<usize>], shift: f64, target: f64) -> Vec<f64> {
    let m = nbrs.len();
    let mut x = vec![1.0; m];
    let mut best_width = f64::INFINITY;
    let mut best = x.clone();
    let mut last_gain = 0;
    for step in 0..MAX_POWER_STEPS {
        let ax: Vec<f64> = nbrs.iter().map(|nb| nb.iter().map(|&j| x[j]).sum()).collect();
        let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
        for i in 0..m {
            let r = ax[i] / x[i];
            lo = lo.min(r);
            hi = hi.max(r);
        }
        let width = hi - lo;
        if width < best_width {
            if width < 0.5 * best_width {
                last_gain = step;
            }
            best_width = width;
            best.clone_from(&x);
        }
        if width <= target || step - last_gain > STALL_STEPS {
            break;
        }
        let mut top = 0.0f64;
        for i in 0..m {
            x[i] = ax[i] + shift * x[i];
            top = top.max(x[i]);
        }
        for xi in &mut x {
            *xi /= top;
        }
    }
    best
}

fn integer_witness(x: &[f64]) -> Vec<u64> {
    let top = x.iter().copied().fold(0.0f64, f64::max);
    x.iter()
        .map(|&xi| ((xi / top) * WITNESS_SCALE).round().max(1.0) as u64)
        .collect()
}

fn component_evidence(g: &LabeledGraph, vertices: Vec<usize>, tol: f64, tol_q: &BigRational) -> ComponentEvidence {
    let nbrs = local_neighbors(g, &vertices);
    let x = power_iterate(&nbrs, g.n() as f64, tol / 4.0);
    let w = integer_witness(&x);
    let (lo, hi) = cw_bounds(&nbrs, &w);
    if &(&hi - &lo) <= tol_q {
        return ComponentEvidence {
            vertices,
            enclosure: RationalInterval::new(lo, hi),
            witness: Witness::CollatzWielandt { vector: w },
        };
    }
    let cp = char_poly(&g.induced(&vertices).adjacency_matrix()).expect("square");
    let enclosure = isolate_largest_root(&cp, tol_q).expect("adjacency spectra are real");
    ComponentEvidence {
        vertices,
        enclosure,
        witness: Witness::SturmIsolated { poly: cp.into_poly() },
    }
}

/// Certified enclosure of `rho(g)` of width at most `tol`.
///
/// Panics unless `tol` is positive and finite.
pub fn spectral_radius(g: &LabeledGraph, tol: f64) -> SpectralCertificate {
    assert!(tol.is_finite() && tol > 0.0, "tolerance must be positive");
    let tol_q = rational_from_f64(tol);
    let components: Vec<ComponentEvidence> = g
        .components()
        .into_iter()
        .map(|c| component_evidence(g, c, tol, &tol_q))
        .collect();
    let top = top_component(&components);
    let lo = components
        .iter()
        .map(|e| &e.enclosure.lo)
        .max()
        .expect("n >= 1")
        .clone();
    SpectralCertificate {
        enclosure: RationalInterval::new(lo, top.enclosure.hi.clone()),
        method: top.witness.method(),
        components,
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct PerronVector {
    /// Rayleigh quotient of `vector`.
    pub value: f64,
    /// Positive, unit Euclidean norm.
    pub vector: Vec<f64>,
}

/// Perron vector with `||Ax - value*x||_inf <= tol * value`.
pub fn perron_vector(g: &LabeledGraph, tol: f64) -> Result<PerronVector, SpectralError> {
    if !g.is_connected() {
        return Err(SpectralError::Disconnected);
    }
    let n = g.n();
    let nbrs = local_neighbors(g, &(1..=n).collect::<Vec<_>>());
    let shift = n as f64;
    let mut x = vec![1.0 / (n as f64).sqrt(); n];
    for _ in 0..MAX_POWER_STEPS {
        let ax: Vec<f64> = nbrs.iter().map(|nb| nb.iter().map(|&j| x[j]).sum()).collect();
        let value: f64 = x.iter().zip(&ax).map(|(a, b)| a * b).sum();
        let residual = x
            .iter()
            .zip(&ax)
            .map(|(xi, axi)| (axi - value * xi).abs())
            .fold(0.0, f64::max);
        if residual <= tol * value {
            return Ok(PerronVector { value, vector: x });
        }
        let y: Vec<f64> = x.iter().zip(&ax).map(|(xi, axi)| axi + shift * xi).collect();
        let norm = y.iter().map(|v| v * v).sum::<f64>().sqrt();
        x = y.into_iter().map(|v| v / norm).collect();
    }
    Err(SpectralError::NoConvergence(MAX_POWER_STEPS))
}

/// Exact comparison of the largest real roots of two polynomials.
pub fn compare_largest_roots(p: &IntPoly, q: &IntPoly) -> Result<Ordering, SpectralError> {
    let mut rp = LargestRoot::isolate(p)?;
    let mut rq = LargestRoot::isolate(q)?;
    let common = rp.poly().gcd(rq.poly());
    let shared = (common.degree() > Some(0)).then(|| SturmChain::new(&common));
    loop {
        let (a, b) = (rp.interval(), rq.interval());
        if a.hi < b.lo {
            return Ok(Ordering::Less);
        }
        if a.lo > b.hi {
            return Ok(Ordering::Greater);
        }
        // each interval holds exactly one root of its polynomial, so a
        // common root inside both intervals is both largest roots
        if let Some(s) = &shared {
            let lo = (&a.lo).max(&b.lo);
            let hi = (&a.hi).min(&b.hi);
            if s.count_closed(lo, hi) > 0 {
                return Ok(Ordering::Equal);
            }
        }
        rp.refine();
        rq.refine();
    }
}

/// Certified trichotomy for `rho(g)` against `rho(h)`.
pub fn compare_radius(g: &LabeledGraph, h: &LabeledGraph) -> Ordering {
    if g == h {
        return Ordering::Equal;
    }
    let cg = spectral_radius(g, DEFAULT_TOL);
    let ch = spectral_radius(h, DEFAULT_TOL);
    if cg.hi() < ch.lo() {
        return Ordering::Less;
    }
    if cg.lo() > ch.hi() {
        return Ordering::Greater;
    }
    compare_radius_exact(g, h)
}

/// The exact path of [`compare_radius`], without the floating fast path.
pub fn compare_radius_exact(g: &LabeledGraph, h: &LabeledGraph) -> Ordering {
    let pg = char_poly(&g.adjacency_matrix()).expect("square");
    let ph = char_poly(&h.adjacency_matrix()).expect("square");
    if pg == ph {
        return Ordering::Equal;
    }
    compare_largest_roots(pg.poly(), ph.poly()).expect("adjacency spectra are real")
}

/// Quotient of `H_{n,k}` for the parts (hub, its neighbours in the clique,
/// the rest of the clique).
pub fn hnk_quotient(n: usize, k: usize) -> Result<Vec<Vec<i64>>, SpectralError> {
    if k < 2 || k >= n {
        return Err(GraphError::Parameters(format!("need 2 <= k < n, got n={n}, k={k}")).into());
    }
    let (n, k) = (n as i64, k as i64);
    Ok(vec![
        vec![0, k - 1, 0],
        vec![1, k - 2, n - k],
        vec![0, k - 1, n - k - 1],
    ])
}

/// Isolating interval for `rho(H_{n,k})`, exact (`n - 2`) for `k = 1`.
///
/// For `k >= 2` the search starts from the bracket `(n-2, n-1]` after Sturm
/// confirms it holds the largest root, so the result satisfies
/// `n - 2 <= lo`. If the bracket check fails the root is isolated from
/// scratch and the caller sees an interval outside it.
pub fn hnk_radius(n: usize, k: usize, precision: &BigRational) -> Result<RationalInterval, SpectralError> {
    if k == 0 || k >= n {
        return Err(GraphError::Parameters(format!("need 1 <= k < n, got n={n}, k={k}")).into());
    }
    if k == 1 {
        return Ok(RationalInterval::point(BigRational::from(BigInt::from(n as i64 - 2))));
    }
    let cp = char_poly(&hnk_quotient(n, k)?)?;
    let lo = BigRational::from(BigInt::from(n as i64 - 2));
    let hi = BigRational::from(BigInt::from(n as i64 - 1));
    let mut root = match LargestRoot::isolate_bracketed(cp.poly(), lo, hi) {
        Some(r) => r,
        None => LargestRoot::isolate(cp.poly())?,
    };
    root.refine_to(precision);
    Ok(root.into_interval())
}

/// Convenience: `rho` as a float, from a certificate's midpoint.
pub fn radius_f64(g: &LabeledGraph) -> f64 {
    spectral_radius(g, DEFAULT_TOL).enclosure.mid_f64()
}

/// `true` iff the interval has zero width.
pub fn is_exact(iv: &RationalInterval) -> bool {
    iv.width().is_zero()
}
