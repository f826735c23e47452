//! Natural cubic spline through equally spaced knots, solved by the standard
//! tridiagonal second-derivative system.

/// Natural cubic spline on knot parameters `0, 1, ..., n-1`.
#[derive(Clone, Debug)]
pub struct CubicSpline {
    values: Vec<f64>,
    second_derivatives: Vec<f64>,
}

impl CubicSpline {
    pub fn natural(values: &[f64]) -> Self {
        let n = values.len();
        assert!(n >= 2, "spline needs at least two knots");
        let mut m = vec![0.0; n];
        if n > 2 {
            // Thomas algorithm on the interior second derivatives; unit knot
            // spacing collapses the coefficients to (1, 4, 1)
            let size = n - 2;
            let mut diag = vec![4.0; size];
            let mut rhs: Vec<f64> = (0..size)
                .map(|i| 6.0 * (values[i] - 2.0 * values[i + 1] + values[i + 2]))
                .collect();
            for i in 1..size {
                let factor = 1.0 / diag[i - 1];
                diag[i] -= factor;
                rhs[i] -= factor * rhs[i - 1];
            }
            m[size] = rhs[size - 1] / diag[size - 1];
            for i in (0..size - 1).rev() {
                m[i + 1] = (rhs[i] - m[i + 2]) / diag[i];
            }
        }
        Self {
            values: values.to_vec(),
            second_derivatives: m,
        }
    }

    pub fn knot_count(&self) -> usize {
        self.values.len()
    }

    /// Spline value at parameter `s` in `[0, n-1]`.
    pub fn evaluate(&self, s: f64) -> f64 {
        let n = self.values.len();
        let clamped = s.clamp(0.0, (n - 1) as f64);
        let segment = (clamped.floor() as usize).min(n - 2);
        let t = clamped - segment as f64;
        let (y0, y1) = (self.values[segment], self.values[segment + 1]);
        let (m0, m1) = (
            self.second_derivatives[segment],
            self.second_derivatives[segment + 1],
        );
        let a = 1.0 - t;
        a * y0 + t * y1 + (a * (a * a - 1.0) * m0 + t * (t * t - 1.0) * m1) / 6.0
    }

    /// Uniform sampling of `m` points over the full parameter range; the
    /// first and last samples coincide with the end knots exactly.
    pub fn sample(&self, m: usize) -> Vec<f64> {
        assert!(m >= 2);
        let span = (self.values.len() - 1) as f64;
        (0..m)
            .map(|i| {
                if i == 0 {
                    self.values[0]
                } else if i == m - 1 {
                    self.values[self.values.len() - 1]
                } else {
                    self.evaluate(span * i as f64 / (m - 1) as f64)
                }
            })
            .collect()
    }
}

/// Fits independent natural splines to each coordinate of `nodes` and samples
/// `m` trajectory points.
pub fn spline_interpolate(nodes: &[[f64; 3]], m: usize) -> Vec<[f64; 3]> {
    assert!(nodes.len() >= 2, "need at least two nodes");
    assert!(m >= 8, "trajectory needs at least eight samples");
    let xs: Vec<f64> = nodes.iter().map(|n| n[0]).collect();
    let ys: Vec<f64> = nodes.iter().map(|n| n[1]).collect();
    let zs: Vec<f64> = nodes.iter().map(|n| n[2]).collect();
    let sx = CubicSpline::natural(&xs).sample(m);
    let sy = CubicSpline::natural(&ys).sample(m);
    let sz = CubicSpline::natural(&zs).sample(m);
    (0..m).map(|i| [sx[i], sy[i], sz[i]]).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    /// One-sided second-derivative estimate at `at`, looking left or right,
    /// Richardson-extrapolated. The one-sided error is exactly linear in `h`
    /// for cubics, so extrapolation recovers the one-sided limit.
    fn one_sided_second_derivative(s: &CubicSpline, at: f64, h: f64, right: bool) -> f64 {
        let sided = |h: f64| {
            let sign = if right { 1.0 } else { -1.0 };
            (s.evaluate(at) - 2.0 * s.evaluate(at + sign * h) + s.evaluate(at + sign * 2.0 * h))
                / (h * h)
        };
        2.0 * sided(h / 2.0) - sided(h)
    }

    #[test]
    fn interpolates_knots_exactly() {
        let values = [3.0, -1.0, 4.0, 1.5, -5.0, 9.0, 2.0];
        let s = CubicSpline::natural(&values);
        for (i, &v) in values.iter().enumerate() {
            assert!((s.evaluate(i as f64) - v).abs() <= 1e-9);
        }
    }

    #[test]
    fn linear_data_reproduced_exactly() {
        let values: Vec<f64> = (0..7).map(|i| 2.5 * i as f64 - 1.0).collect();
        let s = CubicSpline::natural(&values);
        for k in 0..=60 {
            let t = 6.0 * k as f64 / 60.0;
            assert!((s.evaluate(t) - (2.5 * t - 1.0)).abs() <= 1e-9);
        }
    }

    #[test]
    fn natural_end_conditions() {
        let values = [0.0, 1.0, -2.0, 3.0, 0.5, -1.0, 2.0];
        let s = CubicSpline::natural(&values);
        let h = 1e-3;
        let at_start = one_sided_second_derivative(&s, 0.0, h, true);
        let at_end = one_sided_second_derivative(&s, 6.0, h, false);
        assert!(at_start.abs() < 1e-6, "start curvature {at_start}");
        assert!(at_end.abs() < 1e-6, "end curvature {at_end}");
        // the stored boundary second derivatives are exactly zero
        assert_eq!(s.second_derivatives[0], 0.0);
        assert_eq!(s.second_derivatives[6], 0.0);
    }

    #[test]
    fn interior_c2_continuity() {
        let values = [0.0, 1.0, -2.0, 3.0, 0.5, -1.0, 2.0];
        let s = CubicSpline::natural(&values);
        let h = 1e-3;
        for knot in 1..6 {
            let k = knot as f64;
            let left = one_sided_second_derivative(&s, k, h, false);
            let right = one_sided_second_derivative(&s, k, h, true);
            assert!(
                (left - right).abs() < 1e-6,
                "second derivative jump at {knot}: {left} vs {right}"
            );
        }
    }

    #[test]
    fn sampled_trajectory_hits_endpoints() {
        let nodes = [
            [0.0, 0.0, 1.0],
            [1.0, 2.0, 1.5],
            [2.0, 1.0, 2.0],
            [3.0, 4.0, 2.5],
            [4.0, 3.0, 2.0],
            [5.0, 5.0, 1.5],
            [6.0, 4.0, 1.0],
        ];
        let traj = spline_interpolate(&nodes, 100);
        assert_eq!(traj.len(), 100);
        assert_eq!(traj[0], nodes[0]);
        assert_eq!(traj[99], nodes[6]);
    }

    #[test]
    fn collinear_nodes_stay_on_line() {
        let nodes: Vec<[f64; 3]> = (0..7)
            .map(|i| [i as f64, 2.0 * i as f64, 3.0 + i as f64])
            .collect();
        let traj = spline_interpolate(&nodes, 64);
        for p in traj {
            assert!((p[1] - 2.0 * p[0]).abs() <= 1e-9);
            assert!((p[2] - (3.0 + p[0])).abs() <= 1e-9);
        }
    }
}
