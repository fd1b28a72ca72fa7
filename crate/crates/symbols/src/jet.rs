//! Truncated Taylor series ("jets") for exact derivatives of composed
//! elementary functions.

use std::ops::{Add, Div, Mul, Neg, Sub};

/// Number of stored Taylor coefficients; derivatives up to order `JET_LEN - 1`.
pub const JET_LEN: usize = 16;

/// Taylor coefficients `c_k = f^(k)(t0) / k!` at some base point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Jet(pub [f64; JET_LEN]);

impl Jet {
    pub fn constant(v: f64) -> Self {
        let mut c = [0.0; JET_LEN];
        c[0] = v;
        Jet(c)
    }

    pub fn zero() -> Self {
        Jet([0.0; JET_LEN])
    }

    /// The identity function expanded at `t`.
    pub fn var(t: f64) -> Self {
        let mut c = [0.0; JET_LEN];
        c[0] = t;
        c[1] = 1.0;
        Jet(c)
    }

    pub fn value(&self) -> f64 {
        self.0[0]
    }

    /// `f^(k)(t0)`.
    pub fn derivative(&self, k: usize) -> f64 {
        self.0[k] * factorial(k)
    }

    pub fn derivatives(&self, upto: usize) -> Vec<f64> {
        (0..=upto).map(|k| self.derivative(k)).collect()
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().all(|x| x.is_finite())
    }

    pub fn scale(&self, a: f64) -> Self {
        let mut c = self.0;
        c.iter_mut().for_each(|x| *x *= a);
        Jet(c)
    }

    pub fn recip(&self) -> Self {
        Jet::constant(1.0) / *self
    }

    pub fn exp(&self) -> Self {
        let a = &self.0;
        let mut e = [0.0; JET_LEN];
        e[0] = a[0].exp();
        for k in 1..JET_LEN {
            let mut s = 0.0;
            for j in 1..=k {
                s += j as f64 * a[j] * e[k - j];
            }
            e[k] = s / k as f64;
        }
        Jet(e)
    }

    pub fn ln(&self) -> Self {
        let a = &self.0;
        let mut l = [0.0; JET_LEN];
        l[0] = a[0].ln();
        for k in 1..JET_LEN {
            let mut s = 0.0;
            for j in 1..k {
                s += j as f64 * l[j] * a[k - j];
            }
            l[k] = (a[k] - s / k as f64) / a[0];
        }
        Jet(l)
    }

    /// `a^p` for a jet with positive constant term.
    pub fn powf(&self, p: f64) -> Self {
        let a = &self.0;
        let mut b = [0.0; JET_LEN];
        b[0] = a[0].powf(p);
        if b[0] == 0.0 {
            return Jet(b);
        }
        for k in 1..JET_LEN {
            let mut s = 0.0;
            for j in 1..=k {
                s += ((p + 1.0) * j as f64 - k as f64) * a[j] * b[k - j];
            }
            b[k] = s / (k as f64 * a[0]);
        }
        Jet(b)
    }

    pub fn sqrt(&self) -> Self {
        self.powf(0.5)
    }

    /// `<t> = (1 + t^2)^{1/2}`.
    pub fn japanese(&self) -> Self {
        (*self * *self + 1.0).sqrt()
    }
}

pub fn factorial(k: usize) -> f64 {
    (1..=k).fold(1.0, |a, i| a * i as f64)
}

impl Add for Jet {
    type Output = Jet;
    fn add(self, o: Jet) -> Jet {
        let mut c = self.0;
        c.iter_mut().zip(o.0.iter()).for_each(|(x, y)| *x += y);
        Jet(c)
    }
}

impl Sub for Jet {
    type Output = Jet;
    fn sub(self, o: Jet) -> Jet {
        let mut c = self.0;
        c.iter_mut().zip(o.0.iter()).for_each(|(x, y)| *x -= y);
        Jet(c)
    }
}

impl Neg for Jet {
    type Output = Jet;
    fn neg(self) -> Jet {
        self.scale(-1.0)
    }
}

impl Mul for Jet {
    type Output = Jet;
    fn mul(self, o: Jet) -> Jet {
        let (a, b) = (&self.0, &o.0);
        let mut c = [0.0; JET_LEN];
        for k in 0..JET_LEN {
            let mut s = 0.0;
            for j in 0..=k {
                s += a[j] * b[k - j];
            }
            c[k] = s;
        }
        Jet(c)
    }
}

impl Div for Jet {
    type Output = Jet;
    fn div(self, o: Jet) -> Jet {
        let (a, b) = (&self.0, &o.0);
        let mut q = [0.0; JET_LEN];
        for k in 0..JET_LEN {
            let mut s = a[k];
            for j in 1..=k {
                s -= b[j] * q[k - j];
            }
            q[k] = s / b[0];
        }
        Jet(q)
    }
}

impl Add<f64> for Jet {
    type Output = Jet;
    fn add(self, v: f64) -> Jet {
        let mut c = self.0;
        c[0] += v;
        Jet(c)
    }
}

impl Sub<f64> for Jet {
    type Output = Jet;
    fn sub(self, v: f64) -> Jet {
        self + (-v)
    }
}

impl Mul<f64> for Jet {
    type Output = Jet;
    fn mul(self, v: f64) -> Jet {
        self.scale(v)
    }
}

impl Sub<Jet> for f64 {
    type Output = Jet;
    fn sub(self, j: Jet) -> Jet {
        -j + self
    }
}
