use num_complex::Complex64;

/// Value and first five derivatives of a function of one angle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Jet5 {
    pub d0: Complex64,
    pub d1: Complex64,
    pub d2: Complex64,
    pub d3: Complex64,
    pub d4: Complex64,
    pub d5: Complex64,
}

impl Jet5 {
    pub(crate) fn from_derivatives(d: &[Complex64]) -> Self {
        let z = Complex64::new(0.0, 0.0);
        let at = |i: usize| d.get(i).copied().unwrap_or(z);
        Jet5 { d0: at(0), d1: at(1), d2: at(2), d3: at(3), d4: at(4), d5: at(5) }
    }

    pub fn as_array(&self) -> [Complex64; 6] {
        [self.d0, self.d1, self.d2, self.d3, self.d4, self.d5]
    }

    pub fn is_finite(&self) -> bool {
        self.as_array().iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }
}

/// Truncated Taylor series Σ c_j ε^j with complex coefficients.
#[derive(Debug, Clone, PartialEq)]
pub(crate) struct Taylor(pub Vec<Complex64>);

impl Taylor {
    pub fn zeros(n: usize) -> Self {
        Taylor(vec![Complex64::new(0.0, 0.0); n])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn mul(&self, other: &Taylor) -> Taylor {
        let n = self.len().min(other.len());
        let mut out = Taylor::zeros(n);
        for i in 0..n {
            let a = self.0[i];
            if a == Complex64::new(0.0, 0.0) {
                continue;
            }
            for j in 0..n - i {
                out.0[i + j] += a * other.0[j];
            }
        }
        out
    }

    pub fn scale(&mut self, s: Complex64) {
        for c in &mut self.0 {
            *c *= s;
        }
    }

    pub fn add_scaled(&mut self, other: &Taylor, s: Complex64) {
        for (c, o) in self.0.iter_mut().zip(&other.0) {
            *c += s * o;
        }
    }

    /// exp of a series; uses b_n = (1/n) Σ k a_k b_{n-k}.
    pub fn exp(&self) -> Taylor {
        let n = self.len();
        let mut out = Taylor::zeros(n);
        if n == 0 {
            return out;
        }
        out.0[0] = self.0[0].exp();
        for i in 1..n {
            let mut acc = Complex64::new(0.0, 0.0);
            for k in 1..=i {
                acc += self.0[k] * (k as f64) * out.0[i - k];
            }
            out.0[i] = acc / i as f64;
        }
        out
    }

    pub fn recip(&self) -> Taylor {
        let n = self.len();
        let mut out = Taylor::zeros(n);
        let inv = 1.0 / self.0[0];
        out.0[0] = inv;
        for i in 1..n {
            let mut acc = Complex64::new(0.0, 0.0);
            for k in 1..=i {
                acc += self.0[k] * out.0[i - k];
            }
            out.0[i] = -acc * inv;
        }
        out
    }

    pub fn deriv(&self) -> Taylor {
        Taylor(self.0.iter().enumerate().skip(1).map(|(j, c)| c * j as f64).collect())
    }

    /// Drop the constant term and divide by ε.
    pub fn shift_down(&self) -> Taylor {
        Taylor(self.0.iter().skip(1).copied().collect())
    }

    pub fn zero_odd(&mut self) {
        for (j, c) in self.0.iter_mut().enumerate() {
            if j % 2 == 1 {
                *c = Complex64::new(0.0, 0.0);
            }
        }
    }

    pub fn eval(&self, eps: Complex64) -> Complex64 {
        self.0.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, c| acc * eps + c)
    }

    /// Taylor coefficients of sin(c + ε).
    pub fn sin_about(c: Complex64, n: usize) -> Taylor {
        let (s, co) = (c.sin(), c.cos());
        let mut out = Taylor::zeros(n);
        let mut fact = 1.0;
        for j in 0..n {
            if j > 0 {
                fact *= j as f64;
            }
            let d = match j % 4 {
                0 => s,
                1 => co,
                2 => -s,
                _ => -co,
            };
            out.0[j] = d / fact;
        }
        out
    }

    /// Derivatives d^j f / dε^j at ε = 0.
    pub fn derivatives(&self) -> Vec<Complex64> {
        let mut fact = 1.0;
        self.0
            .iter()
            .enumerate()
            .map(|(j, c)| {
                if j > 0 {
                    fact *= j as f64;
                }
                c * fact
            })
            .collect()
    }
}
