//! Independent cross-check routes: numeric integration for the divergence
//! closed forms and exhaustive enumeration of the degree-2 polytope vertices
//! at tiny sizes.
//!
//! Nothing here shares code with the closed forms in [`crate::divergence`]
//! or with the simplex in [`crate::lp`]; agreement between the two routes is
//! what the test suite certifies.

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::graph::{EdgeIndexer, EdgeSubset};
use crate::model::{ModelKind, WeightModel};

/// `Int (dP)^rho (dQ)^(1-rho)` by direct quadrature or series summation,
/// with the erasure atom contributing `eta` verbatim.
pub fn numeric_power_integral(m: &WeightModel, rho: f64) -> Result<f64> {
    m.validate()?;
    if !(0.0 < rho && rho < 1.0) {
        return Err(Error::invalid(format!("need 0 < rho < 1, got {rho}")));
    }
    let base = match m.kind {
        ModelKind::Gaussian { mu } => {
            // Integrand of the product density power; integrate far past the
            // effective support.
            let f = move |x: f64| {
                let expo = rho * (x - mu) * (x - mu) + (1.0 - rho) * x * x;
                (-expo / 2.0).exp() / (2.0 * std::f64::consts::PI).sqrt()
            };
            let center = rho * mu;
            adaptive_simpson(&f, center - 15.0, center + 15.0, 1e-13)
        }
        ModelKind::Poisson { lambda, mu } => {
            // sum_k e^{-rho lambda - (1-rho) mu} g^k / k! with
            // g = lambda^rho mu^(1-rho); stop once terms are negligible.
            let g = lambda.powf(rho) * mu.powf(1.0 - rho);
            let mut term = (-(rho * lambda + (1.0 - rho) * mu)).exp();
            let mut sum = term;
            let mut k = 0.0;
            loop {
                k += 1.0;
                term *= g / k;
                sum += term;
                if k > g && term < 1e-16 * sum {
                    break;
                }
                if k > 1e6 {
                    return Err(Error::NumericDegeneracy(
                        "Poisson power series did not converge".into(),
                    ));
                }
            }
            sum
        }
        ModelKind::Bernoulli { p, q } => {
            p.powf(rho) * q.powf(1.0 - rho)
                + (1.0 - p).powf(rho) * (1.0 - q).powf(1.0 - rho)
        }
    };
    Ok(m.erasure + (1.0 - m.erasure) * base)
}

/// Numeric route for the (erasure-adjusted) Bhattacharyya exponent.
pub fn numeric_alpha(m: &WeightModel) -> Result<f64> {
    Ok(-2.0 * numeric_power_integral(m, 0.5)?.ln())
}

/// Numeric route for the (erasure-adjusted) order-2/3 exponent.
pub fn numeric_beta(m: &WeightModel) -> Result<f64> {
    Ok(-1.5 * numeric_power_integral(m, 2.0 / 3.0)?.ln())
}

fn adaptive_simpson(f: &dyn Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> f64 {
    fn simpson(a: f64, fa: f64, b: f64, fb: f64, fm: f64) -> f64 {
        (b - a) / 6.0 * (fa + 4.0 * fm + fb)
    }
    #[allow(clippy::too_many_arguments)]
    fn rec(
        f: &dyn Fn(f64) -> f64,
        a: f64,
        fa: f64,
        b: f64,
        fb: f64,
        fm: f64,
        whole: f64,
        tol: f64,
        depth: u32,
    ) -> f64 {
        let m = 0.5 * (a + b);
        let lm = 0.5 * (a + m);
        let rm = 0.5 * (m + b);
        let flm = f(lm);
        let frm = f(rm);
        let left = simpson(a, fa, m, fm, flm);
        let right = simpson(m, fm, b, fb, frm);
        if depth == 0 || (left + right - whole).abs() <= 15.0 * tol {
            left + right + (left + right - whole) / 15.0
        } else {
            rec(f, a, fa, m, fm, flm, left, tol / 2.0, depth - 1)
                + rec(f, m, fm, b, fb, frm, right, tol / 2.0, depth - 1)
        }
    }
    let fa = f(a);
    let fb = f(b);
    let fm = f(0.5 * (a + b));
    let whole = simpson(a, fa, b, fb, fm);
    rec(f, a, fa, b, fb, fm, whole, tol, 40)
}

/// All vertices of the degree-2 polytope
/// `{ x : sum_{e at v} x_e = 2 for all v, 0 <= x <= 1 }` on the complete
/// graph, for `n <= 6`.
///
/// Candidates are the half-integral degree-2 vectors (every vertex of the
/// polytope is one); a candidate is kept iff it is not the midpoint of two
/// distinct feasible candidates, which characterizes extremality on this
/// finite lattice. All arithmetic is exact on numerators over two.
pub fn enumerate_f2f_vertices(n: usize) -> Result<VertexCatalog> {
    const LIMIT: usize = 6;
    if n < 3 {
        return Err(Error::invalid(format!("need n >= 3, got {n}")));
    }
    if n > LIMIT {
        return Err(Error::SizeLimit { context: "vertex enumeration", n, limit: LIMIT });
    }
    let ix = EdgeIndexer::new(n);
    let m = ix.num_edges();
    let endpoints: Vec<(usize, usize)> = ix.edges().collect();
    // rem[v] at position e: incident edges of v with index >= e.
    let mut rem_after = vec![vec![0u8; m + 1]; n];
    for v in 0..n {
        for e in (0..m).rev() {
            let (i, j) = endpoints[e];
            rem_after[v][e] = rem_after[v][e + 1] + u8::from(i == v || j == v);
        }
    }

    let mut candidates: Vec<Vec<u8>> = Vec::new();
    let mut num = vec![0u8; m];
    let mut deg = vec![0u8; n];
    fn rec(
        e: usize,
        m: usize,
        endpoints: &[(usize, usize)],
        rem_after: &[Vec<u8>],
        num: &mut Vec<u8>,
        deg: &mut Vec<u8>,
        out: &mut Vec<Vec<u8>>,
    ) {
        if e == m {
            out.push(num.clone());
            return;
        }
        let (i, j) = endpoints[e];
        for v in 0..=2u8 {
            if deg[i] + v > 4 || deg[j] + v > 4 {
                continue;
            }
            deg[i] += v;
            deg[j] += v;
            num[e] = v;
            let ok = |x: usize| {
                let r = rem_after[x][e + 1];
                deg[x] + 2 * r >= 4 && (r > 0 || deg[x] == 4)
            };
            if ok(i) && ok(j) {
                rec(e + 1, m, endpoints, rem_after, num, deg, out);
            }
            deg[i] -= v;
            deg[j] -= v;
        }
        num[e] = 0;
    }
    rec(0, m, &endpoints, &rem_after, &mut num, &mut deg, &mut candidates);

    // b = 2x - a; x is the midpoint of (a, b) iff b stays on the lattice
    // and is itself feasible.
    fn mirror(x: &[u8], a: &[u8]) -> Option<Vec<u8>> {
        let mut b = vec![0u8; x.len()];
        for e in 0..x.len() {
            let t = 2 * i16::from(x[e]) - i16::from(a[e]);
            if !(0..=2).contains(&t) {
                return None;
            }
            b[e] = t as u8;
        }
        Some(b)
    }
    let set: HashSet<Vec<u8>> = candidates.iter().cloned().collect();
    let mut vertices = Vec::new();
    'outer: for x in &candidates {
        for a in &candidates {
            if a == x {
                continue;
            }
            if let Some(b) = mirror(x, a) {
                if set.contains(&b) {
                    continue 'outer;
                }
            }
        }
        vertices.push(EdgeSubset::from_numerators(n, x.clone())?);
    }
    Ok(VertexCatalog { n, set: vertices.iter().map(|v| v.numerators().to_vec()).collect(), vertices })
}

/// The vertex set produced by [`enumerate_f2f_vertices`].
#[derive(Clone, Debug)]
pub struct VertexCatalog {
    n: usize,
    vertices: Vec<EdgeSubset>,
    set: HashSet<Vec<u8>>,
}

impl VertexCatalog {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn vertices(&self) -> &[EdgeSubset] {
        &self.vertices
    }

    pub fn contains(&self, x: &EdgeSubset) -> bool {
        x.n() == self.n && self.set.contains(x.numerators())
    }
}
