//! Exact minimization of the L1 norm of a rotated row pair.
//!
//! For a 2 x d input `x` and the counter-clockwise plane rotation `R(a)`,
//! `g(a) = ||R(a) x||_1` is a sum of 2d rectified sinusoids and has period
//! pi/2 (a quarter turn maps `(p, q)` to `(-q, p)`, leaving the norm
//! unchanged). Every local minimum of `g` sits at an angle where some
//! rotated coordinate crosses zero, so the global minimum over `[0, pi/2)`
//! is found by evaluating `g` at the at most 2d crossing angles.
//!
//! Between crossings `g(a) = C cos a + S sin a` for sign-dependent constants
//! `C` and `S`; sweeping the sorted crossings updates both in O(1) per
//! event, so one plane costs O(d log d) instead of the O(d^2) of evaluating
//! every candidate from scratch.

use std::f64::consts::FRAC_PI_2;

/// One rectified sinusoid `|A cos a + B sin a|`.
#[derive(Clone, Copy)]
struct Term {
    a: f64,
    b: f64,
}

impl Term {
    #[cfg(test)]
    fn eval(&self, cos: f64, sin: f64) -> f64 {
        self.a * cos + self.b * sin
    }

    /// Zero crossing inside `[0, pi/2)`, or `None` when the term keeps one
    /// sign there.
    ///
    /// The term is a single sinusoid arc over the window, so it crosses
    /// exactly once iff its endpoint values `y(0) = a` and `y(pi/2) = b`
    /// have opposite signs, at `atan(-a/b)`. Deciding by the endpoint signs
    /// rather than an `atan2` branch keeps crossings just inside either
    /// boundary from being rounded onto the wrong one, which would flip the
    /// term's sign across the whole window.
    fn crossing(&self) -> Option<f64> {
        if self.a != 0.0 && self.b != 0.0 && (self.a > 0.0) != (self.b > 0.0) {
            Some(f64::atan(-self.a / self.b))
        } else {
            None
        }
    }
}

fn terms_of(top: &[f64], bottom: &[f64]) -> Vec<Term> {
    let mut terms = Vec::with_capacity(2 * top.len());
    for (&p, &q) in top.iter().zip(bottom) {
        // Rotated coordinates: p' = p cos a - q sin a, q' = q cos a + p sin a.
        terms.push(Term { a: p, b: -q });
        terms.push(Term { a: q, b: p });
    }
    terms
}

/// Returns a global minimizer of `g(a) = ||R(a) x||_1` over `[0, pi/2)`
/// together with the minimum value, for the 2 x d input given as two rows.
///
/// An all-zero input yields `(0.0, 0.0)`. Among equal-valued candidates the
/// smallest angle wins, which makes the result deterministic.
///
/// # Panics
/// Panics if the rows have different lengths.
pub fn optimal_angle_l1(top: &[f64], bottom: &[f64]) -> (f64, f64) {
    assert_eq!(top.len(), bottom.len(), "rows must have equal length");
    let terms = terms_of(top, bottom);

    // Crossing events inside the quarter-turn window, sorted by angle with
    // the term index breaking exact ties for a stable sweep order. A ratio
    // overflowing to the upper boundary is dropped: the sign would be wrong
    // only on a sliver of ulp width where the term is itself negligible.
    let mut events: Vec<(f64, usize)> = terms
        .iter()
        .enumerate()
        .filter_map(|(idx, t)| t.crossing().filter(|c| *c < FRAC_PI_2).map(|c| (c, idx)))
        .collect();
    events.sort_by(|x, y| x.partial_cmp(y).expect("finite angles"));

    // Signs as the angle leaves 0 from above: the cosine coefficient
    // decides, the sine coefficient breaks an exact zero.
    let mut signs = vec![1.0f64; terms.len()];
    let mut c_sum = 0.0;
    let mut s_sum = 0.0;
    for (idx, t) in terms.iter().enumerate() {
        let lead = if t.a != 0.0 { t.a } else { t.b };
        if lead < 0.0 {
            signs[idx] = -1.0;
        }
        c_sum += signs[idx] * t.a;
        s_sum += signs[idx] * t.b;
    }

    let mut best_angle = 0.0;
    let mut best_value = c_sum; // g(0) = C * cos 0 + S * sin 0.
    for &(angle, idx) in &events {
        c_sum -= 2.0 * signs[idx] * terms[idx].a;
        s_sum -= 2.0 * signs[idx] * terms[idx].b;
        signs[idx] = -signs[idx];
        let (sin, cos) = angle.sin_cos();
        let value = c_sum * cos + s_sum * sin;
        if value < best_value {
            best_value = value;
            best_angle = angle;
        }
    }
    (best_angle, best_value.max(0.0))
}

/// Naive reference: evaluates the full objective at every candidate angle.
/// O(d^2); kept for cross-checking the sweep.
#[cfg(test)]
fn optimal_angle_l1_scan(top: &[f64], bottom: &[f64]) -> (f64, f64) {
    let terms = terms_of(top, bottom);
    let mut candidates: Vec<f64> = terms
        .iter()
        .filter_map(Term::crossing)
        .filter(|a| *a < FRAC_PI_2)
        .collect();
    candidates.push(0.0);
    candidates.sort_by(|x, y| x.partial_cmp(y).expect("finite angles"));

    let mut best_angle = 0.0;
    let mut best_value = f64::INFINITY;
    for &angle in &candidates {
        let (sin, cos) = angle.sin_cos();
        let value: f64 = terms.iter().map(|t| t.eval(cos, sin).abs()).sum();
        if value < best_value {
            best_value = value;
            best_angle = angle;
        }
    }
    (best_angle, best_value)
}
