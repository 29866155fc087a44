//! Natural cubic spline through tabulated samples.

use crate::CliError;

#[derive(Debug, Clone)]
pub struct CubicSpline {
    x: Vec<f64>,
    y: Vec<f64>,
    /// Second derivatives at the knots.
    m: Vec<f64>,
}

impl CubicSpline {
    pub fn new(x: Vec<f64>, y: Vec<f64>) -> Result<Self, CliError> {
        let n = x.len();
        if n != y.len() {
            return Err(CliError::usage("sample columns have different lengths"));
        }
        if n < 2 {
            return Err(CliError::usage("at least two samples are needed"));
        }
        if x.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(CliError::usage("sample abscissae must be strictly increasing"));
        }
        if x.iter().chain(&y).any(|v| !v.is_finite()) {
            return Err(CliError::usage("samples must be finite"));
        }
        let mut m = vec![0.0; n];
        if n > 2 {
            // Thomas algorithm on the interior knots.
            let k = n - 2;
            let mut diag = vec![0.0; k];
            let mut upper = vec![0.0; k];
            let mut rhs = vec![0.0; k];
            for i in 0..k {
                let (h0, h1) = (x[i + 1] - x[i], x[i + 2] - x[i + 1]);
                diag[i] = 2.0 * (h0 + h1);
                upper[i] = h1;
                rhs[i] = 6.0 * ((y[i + 2] - y[i + 1]) / h1 - (y[i + 1] - y[i]) / h0);
            }
            for i in 1..k {
                let lower = x[i + 1] - x[i];
                let w = lower / diag[i - 1];
                diag[i] -= w * upper[i - 1];
                rhs[i] -= w * rhs[i - 1];
            }
            m[k] = rhs[k - 1] / diag[k - 1];
            for i in (0..k - 1).rev() {
                m[i + 1] = (rhs[i] - upper[i] * m[i + 2]) / diag[i];
            }
        }
        Ok(CubicSpline { x, y, m })
    }

    pub fn first(&self) -> f64 {
        self.x[0]
    }

    pub fn last(&self) -> f64 {
        self.x[self.x.len() - 1]
    }

    /// Spline value; `x` is clamped to the sample range.
    pub fn eval(&self, t: f64) -> f64 {
        let t = t.clamp(self.first(), self.last());
        let i = match self.x.partition_point(|&v| v <= t) {
            0 => 0,
            p => (p - 1).min(self.x.len() - 2),
        };
        let h = self.x[i + 1] - self.x[i];
        let a = (self.x[i + 1] - t) / h;
        let b = (t - self.x[i]) / h;
        a * self.y[i]
            + b * self.y[i + 1]
            + ((a * a * a - a) * self.m[i] + (b * b * b - b) * self.m[i + 1]) * h * h / 6.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reproduces_knots_and_lines() {
        let x: Vec<f64> = (0..6).map(|i| i as f64 * 0.5).collect();
        let y: Vec<f64> = x.iter().map(|v| 3.0 * v - 1.0).collect();
        let s = CubicSpline::new(x.clone(), y.clone()).unwrap();
        for (a, b) in x.iter().zip(&y) {
            assert!((s.eval(*a) - b).abs() < 1e-14);
        }
        assert!((s.eval(1.3) - 2.9).abs() < 1e-14);
    }

    #[test]
    fn smooth_data_converges() {
        let n = 201;
        let x: Vec<f64> = (0..n).map(|i| 0.05 * i as f64).collect();
        let y: Vec<f64> = x.iter().map(|v| (-v).exp()).collect();
        let s = CubicSpline::new(x, y).unwrap();
        for t in [1.777, 4.321, 7.05] {
            assert!((s.eval(t) - (-t).exp()).abs() < 1e-7, "{t}");
        }
        // the natural end condition f'' = 0 costs accuracy next to the ends
        assert!((s.eval(0.123) - (-0.123f64).exp()).abs() < 1e-4);
    }

    #[test]
    fn rejects_unsorted() {
        assert!(CubicSpline::new(vec![0.0, 2.0, 1.0], vec![0.0; 3]).is_err());
    }
}
