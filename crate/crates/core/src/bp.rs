//! Max-product belief propagation for the maximum-weight 2-factor on the
//! complete graph.
//!
//! Messages live on directed edges: `m[i -> j](t)` summarizes how much
//! vertex `i` wants the edge `(i, j)` given everything it heard at `t - 1`.
//! One synchronous update is
//!
//! ```text
//! m[i -> j](t) = w_ij - secondmax { m[l -> i](t - 1) : l != i, l != j }
//! ```
//!
//! starting from the broadcast `m[i -> j](0) = w_ij`. Iterations are counted
//! so that the initial broadcast is iteration one: deciding after `t_f`
//! iterations reads the state with `t_f - 1` applied updates, which makes a
//! single iteration identical to per-vertex thresholding on raw weights.
//! The decision keeps, for every receiver, the two incident edges with the
//! largest incoming messages and returns the union over receivers; vertices
//! of the result may therefore have degree other than 2, and the output is
//! reported as-is.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::{EdgeSubset, WeightedGraph};

/// Directed messages after `t` synchronous updates.
#[derive(Clone, Debug)]
pub struct MessageState {
    n: usize,
    /// Receiver-major: `m[i * n + l]` is the message from `l` to `i`.
    m: Vec<f64>,
    t: usize,
}

impl MessageState {
    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of updates applied since the broadcast (one less than the
    /// iteration count).
    pub fn steps(&self) -> usize {
        self.t
    }

    pub fn message(&self, from: usize, to: usize) -> f64 {
        debug_assert_ne!(from, to);
        self.m[to * self.n + from]
    }
}

/// Broadcast the weights: `m[i -> j](0) = w_ij`.
pub fn bp_init(w: &WeightedGraph) -> Result<MessageState> {
    let n = w.n();
    if n < 3 {
        return Err(Error::invalid(format!("message passing needs n >= 3, got {n}")));
    }
    w.require_fully_observed("belief propagation")?;
    let mut m = vec![0.0; n * n];
    for i in 0..n {
        for l in 0..n {
            if l != i {
                m[i * n + l] = w.weight_unchecked(i, l);
            }
        }
    }
    Ok(MessageState { n, m, t: 0 })
}

/// Per-receiver top three incoming values plus the sources of the top two;
/// enough to answer "second largest excluding one sender" for any sender.
fn top3(row: &[f64], receiver: usize) -> ([f64; 3], [usize; 2]) {
    let mut v = [f64::NEG_INFINITY; 3];
    let mut src = [usize::MAX; 2];
    for (l, &x) in row.iter().enumerate() {
        if l == receiver {
            continue;
        }
        if x > v[0] {
            v = [x, v[0], v[1]];
            src = [l, src[0]];
        } else if x > v[1] {
            v = [v[0], x, v[1]];
            src[1] = l;
        } else if x > v[2] {
            v[2] = x;
        }
    }
    (v, src)
}

fn second_excluding(top: &([f64; 3], [usize; 2]), n: usize, excluded: usize) -> f64 {
    let (v, src) = top;
    if n == 3 {
        // One candidate remains; its value stands in for the second largest.
        if excluded == src[0] {
            v[1]
        } else {
            v[0]
        }
    } else if excluded == src[0] || excluded == src[1] {
        v[2]
    } else {
        v[1]
    }
}

/// One synchronous update of every directed message.
pub fn bp_step(s: &MessageState, w: &WeightedGraph) -> Result<MessageState> {
    let n = s.n;
    if w.n() != n {
        return Err(Error::invalid("weight graph and message state sizes differ"));
    }
    let tops: Vec<([f64; 3], [usize; 2])> = (0..n)
        .into_par_iter()
        .map(|i| top3(&s.m[i * n..(i + 1) * n], i))
        .collect();
    let mut m = vec![0.0; n * n];
    m.par_chunks_mut(n).enumerate().for_each(|(j, row)| {
        for i in 0..n {
            if i != j {
                row[i] = w.weight_unchecked(i, j) - second_excluding(&tops[i], n, j);
            }
        }
    });
    Ok(MessageState { n, m, t: s.t + 1 })
}

/// Keep, per receiver, the two incident edges with the largest incoming
/// messages (ties to the smaller sender index) and return the union.
pub fn bp_decide(s: &MessageState) -> EdgeSubset {
    let n = s.n;
    let mut keep = vec![false; n * (n - 1) / 2];
    let ix = crate::graph::EdgeIndexer::new(n);
    for i in 0..n {
        let row = &s.m[i * n..(i + 1) * n];
        let mut best: [Option<usize>; 2] = [None, None];
        for l in 0..n {
            if l == i {
                continue;
            }
            // Strict comparisons keep the smaller index on ties.
            if best[0].is_none_or(|b| row[l] > row[b]) {
                best = [Some(l), best[0]];
            } else if best[1].is_none_or(|b| row[l] > row[b]) {
                best[1] = Some(l);
            }
        }
        for b in best.into_iter().flatten() {
            keep[ix.index_unchecked(i, b)] = true;
        }
    }
    let num: Vec<u8> = keep.iter().map(|&k| if k { 2 } else { 0 }).collect();
    EdgeSubset::from_numerators(n, num).expect("numerators are 0/2")
}

/// Run `t_f` iterations (the broadcast counts as the first) and decide.
/// With a positive `early_stop_window`, stop once the decision is unchanged
/// for that many consecutive iterations; `0` disables early stopping.
pub fn bp_run(w: &WeightedGraph, t_f: usize, early_stop_window: usize) -> Result<EdgeSubset> {
    if t_f == 0 {
        return Err(Error::invalid("need at least one iteration"));
    }
    let mut state = bp_init(w)?;
    let mut last = bp_decide(&state);
    let mut stable = 0usize;
    for _ in 1..t_f {
        state = bp_step(&state, w)?;
        let d = bp_decide(&state);
        if early_stop_window > 0 {
            if d == last {
                stable += 1;
                if stable >= early_stop_window {
                    return Ok(d);
                }
            } else {
                stable = 0;
            }
        }
        last = d;
    }
    Ok(last)
}

/// Worst-case iteration budget `ceil(2 n w* / eps)` for optimality gap
/// `eps`, with `w*` the largest absolute weight. A diagnostic estimate, not
/// a stopping rule: the gap is rarely observable.
pub fn iteration_bound(w: &WeightedGraph, eps: f64) -> Result<usize> {
    if !(eps > 0.0) {
        return Err(Error::invalid(format!("optimality gap must be positive, got {eps}")));
    }
    w.require_fully_observed("iteration budget")?;
    let wmax = w.weights().iter().fold(0.0f64, |a, &b| a.max(b.abs()));
    Ok((2.0 * w.n() as f64 * wmax / eps).ceil() as usize)
}
