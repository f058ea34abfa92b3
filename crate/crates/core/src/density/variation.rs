//! Monotone-run variation over piecewise-analytic curves.
//!
//! Total variation is evaluated on the node sequence of a piece list: the
//! one-sided limit at every piece edge plus the value at every interior
//! stationary point, with zeros standing in for the outside of the support
//! and for gaps. Between consecutive nodes the curve is monotone, so the
//! variation is the exact sum of |Δvalue| — the canonical (non-erratic)
//! convention at discontinuities falls out of using one-sided limits.

use crate::density::segment::Segment;

/// A value the curve attains (or approaches) at a point, in sweep order.
#[derive(Debug, Clone, Copy)]
pub struct Node {
    /// Position; ±∞ marks the outside zeros.
    pub x: f64,
    pub value: f64,
}

/// Node sequence of `segments` restricted to `[a, b]`.
///
/// Segments must be sorted and non-overlapping. Zeros are inserted where the
/// curve is zero: before the support, after it, and across interior gaps.
pub fn nodes_on(segments: &[Segment], a: f64, b: f64) -> Vec<Node> {
    let mut nodes: Vec<Node> = Vec::new();
    let mut covered_to = a;
    for seg in segments {
        let lo = seg.lo.max(a);
        let hi = seg.hi.min(b);
        if lo >= hi {
            continue;
        }
        if lo > covered_to {
            // gap: the curve sits at zero
            nodes.push(Node { x: covered_to, value: 0.0 });
            nodes.push(Node { x: lo, value: 0.0 });
        }
        let v_lo = if lo.is_infinite() { 0.0 } else { seg.eval(lo) };
        nodes.push(Node { x: lo, value: v_lo });
        for &p in seg.stationary.iter().filter(|p| **p > lo && **p < hi) {
            nodes.push(Node { x: p, value: seg.eval(p) });
        }
        let v_hi = if hi.is_infinite() { 0.0 } else { seg.eval(hi) };
        nodes.push(Node { x: hi, value: v_hi });
        covered_to = hi;
    }
    if nodes.is_empty() {
        return vec![Node { x: a, value: 0.0 }, Node { x: b, value: 0.0 }];
    }
    if covered_to < b {
        nodes.push(Node { x: covered_to, value: 0.0 });
        nodes.push(Node { x: b, value: 0.0 });
    }
    // Half-line supports still start/end at zero.
    if a.is_infinite() && nodes.first().map(|n| n.value) != Some(0.0) {
        nodes.insert(0, Node { x: f64::NEG_INFINITY, value: 0.0 });
    }
    if b.is_infinite() && nodes.last().map(|n| n.value) != Some(0.0) {
        nodes.push(Node { x: f64::INFINITY, value: 0.0 });
    }
    nodes
}

/// Exact variation of the node sequence: Σ |vᵢ − vᵢ₋₁|.
pub fn variation(nodes: &[Node]) -> f64 {
    nodes
        .windows(2)
        .map(|w| (w[1].value - w[0].value).abs())
        .sum()
}

/// Supremum of the curve over its nodes (monotone pieces attain extrema there).
pub fn sup_value(nodes: &[Node]) -> f64 {
    nodes.iter().map(|n| n.value).fold(f64::NEG_INFINITY, f64::max)
}

/// Non-decreasing up to the maximum, non-increasing after — the paper's
/// unimodality, read off the node values with a tolerance for float noise.
pub fn unimodal_mode(nodes: &[Node]) -> Option<f64> {
    let max = sup_value(nodes);
    if !max.is_finite() || max <= 0.0 {
        return None;
    }
    let eps = 1e-12 * max.max(1.0);
    let peak = nodes
        .iter()
        .position(|n| (n.value - max).abs() <= eps)
        .expect("max came from the node list");
    for w in nodes[..=peak].windows(2) {
        if w[1].value < w[0].value - eps {
            return None;
        }
    }
    for w in nodes[peak..].windows(2) {
        if w[1].value > w[0].value + eps {
            return None;
        }
    }
    Some(nodes[peak].x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::density::segment::{Kind, PowerTerm, Segment};

    fn affine(lo: f64, hi: f64, c0: f64, c1: f64) -> Segment {
        Segment::new(
            lo,
            hi,
            Kind::PowerSum(vec![
                PowerTerm { coef: c0, exp: 0.0 },
                PowerTerm { coef: c1, exp: 1.0 },
            ]),
        )
    }

    #[test]
    fn tent_variation_is_twice_peak() {
        let segs = vec![affine(-1.0, 0.0, 1.0, 1.0), affine(0.0, 1.0, 1.0, -1.0)];
        let nodes = nodes_on(&segs, f64::NEG_INFINITY, f64::INFINITY);
        assert!((variation(&nodes) - 2.0).abs() < 1e-15);
        assert_eq!(unimodal_mode(&nodes), Some(0.0));
    }

    #[test]
    fn jump_discontinuities_count_once() {
        // g = 2y on [0,1]: rise of 2 plus the downfall of 2 at the right edge.
        let segs = vec![affine(0.0, 1.0, 0.0, 2.0)];
        let nodes = nodes_on(&segs, f64::NEG_INFINITY, f64::INFINITY);
        assert!((variation(&nodes) - 4.0).abs() < 1e-15);
        // increasing-then-jump-down is still unimodal in the paper's sense
        assert_eq!(unimodal_mode(&nodes), Some(1.0));
    }

    #[test]
    fn gaps_pass_through_zero() {
        let segs = vec![affine(0.0, 1.0, 1.0, 0.0), affine(2.0, 3.0, 1.0, 0.0)];
        let nodes = nodes_on(&segs, f64::NEG_INFINITY, f64::INFINITY);
        assert!((variation(&nodes) - 4.0).abs() < 1e-15);
        assert!(unimodal_mode(&nodes).is_none());
    }

    #[test]
    fn restriction_uses_boundary_values() {
        let segs = vec![affine(0.0, 2.0, 0.0, 1.0)];
        let nodes = nodes_on(&segs, 0.5, 1.5);
        assert!((variation(&nodes) - 1.0).abs() < 1e-15);
    }
}
