//! Gauss–Hermite rules for the standard Gaussian measure γ₁.

use serde::Serialize;

use crate::roots::newton_bracketed;
use crate::{Error, Real, Result};

pub const MAX_RULE_ORDER: usize = 200;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct QuadratureRule<T> {
    pub nodes: Vec<T>,
    pub weights: Vec<T>,
    pub order: usize,
}

impl<T: Real> QuadratureRule<T> {
    /// Σ wᵢ g(xᵢ).
    pub fn integrate<F: FnMut(T) -> T>(&self, mut g: F) -> T {
        self.nodes
            .iter()
            .zip(&self.weights)
            .fold(T::zero(), |s, (&x, &w)| s + w * g(x))
    }
}

/// (p_n(x), p_{n-1}(x)) for the orthonormal probabilists' Hermite polynomials.
fn orthonormal_pair(n: usize, x: f64) -> (f64, f64) {
    let (mut prev, mut cur) = (0.0, 1.0);
    for j in 0..n {
        let next = (x * cur - (j as f64).sqrt() * prev) / ((j + 1) as f64).sqrt();
        prev = cur;
        cur = next;
    }
    (cur, prev)
}

/// Nodes are the zeros of He_n, weights 1/(n·p_{n-1}(xᵢ)²), so they sum to 1.
pub fn gauss_hermite_rule<T: Real>(order: usize) -> Result<QuadratureRule<T>> {
    if order == 0 || order > MAX_RULE_ORDER {
        return Err(Error::Domain(format!(
            "quadrature order {order} outside 1..={MAX_RULE_ORDER}"
        )));
    }
    let n = order;
    let nf = n as f64;
    let step = 0.25 * std::f64::consts::PI / (2.0 * nf + 1.0).sqrt();
    let top = 2.0 * nf.sqrt() + 2.0;
    let fdf = |x: f64| -> Result<(f64, f64)> {
        let (p, q) = orthonormal_pair(n, x);
        Ok((p, nf.sqrt() * q))
    };
    let mut positive = Vec::with_capacity(n / 2 + 1);
    let mut a = if n % 2 == 1 { step * 0.5 } else { 0.0 };
    let mut fa = orthonormal_pair(n, a).0;
    while a < top && positive.len() < n / 2 {
        let b = a + step;
        let fb = orthonormal_pair(n, b).0;
        if fa == 0.0 {
            positive.push(a);
        } else if fa.signum() != fb.signum() {
            positive.push(newton_bracketed(fdf, a, b, 0.5 * (a + b))?);
        }
        a = b;
        fa = fb;
    }
    if positive.len() != n / 2 {
        return Err(Error::Bracket(format!(
            "found {} of {} positive nodes for order {n}",
            positive.len(),
            n / 2
        )));
    }
    let mut nodes: Vec<f64> = positive.iter().rev().map(|x| -x).collect();
    if n % 2 == 1 {
        nodes.push(0.0);
    }
    nodes.extend(positive.iter().copied());
    let weights: Vec<f64> = nodes
        .iter()
        .map(|&x| {
            let q = orthonormal_pair(n, x).1;
            1.0 / (nf * q * q)
        })
        .collect();
    Ok(QuadratureRule {
        nodes: nodes.into_iter().map(T::c).collect(),
        weights: weights.into_iter().map(T::c).collect(),
        order,
    })
}
