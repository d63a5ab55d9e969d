//! Second-order forward-mode dual numbers.
//!
//! A [`Dual2`] carries a value together with its gradient and Hessian with
//! respect to a fixed set of `n` independent parameters. Arithmetic on
//! `Dual2` propagates first and second derivatives through the chain and
//! product rules, so an immersion written once in `Dual2` arithmetic yields
//! its exact analytic 2-jet at any parameter point — no finite differencing,
//! no half-the-digits loss on second derivatives.
//!
//! Storage is inline (no heap): grid scans evaluate millions of jets, and
//! per-operation allocations dominate the runtime otherwise. The Hessian is
//! kept as a packed lower triangle; it is symmetric by construction. The
//! price is a fixed capacity of [`MAX_VARS`] parameters, plenty for the
//! charts this crate ships.

/// Maximum number of independent parameters a `Dual2` can carry.
pub const MAX_VARS: usize = 6;

const TRI: usize = MAX_VARS * (MAX_VARS + 1) / 2;

/// packed lower-triangle index for `i >= j`
#[inline(always)]
fn tri(i: usize, j: usize) -> usize {
    debug_assert!(i >= j);
    i * (i + 1) / 2 + j
}

/// number of packed entries for an n-variable Hessian
#[inline(always)]
fn tri_len(n: usize) -> usize {
    n * (n + 1) / 2
}

/// Value, gradient and Hessian of a scalar quantity with respect to `n <=
/// MAX_VARS` parameters.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Dual2 {
    val: f64,
    n: usize,
    grad: [f64; MAX_VARS],
    hess: [f64; TRI],
}

impl Dual2 {
    /// A constant: zero gradient, zero Hessian.
    pub fn constant(val: f64, nvars: usize) -> Self {
        assert!(
            nvars <= MAX_VARS,
            "Dual2 supports at most {MAX_VARS} parameters, got {nvars}"
        );
        Dual2 {
            val,
            n: nvars,
            grad: [0.0; MAX_VARS],
            hess: [0.0; TRI],
        }
    }

    /// The `index`-th independent variable seeded at `val`.
    pub fn var(val: f64, index: usize, nvars: usize) -> Self {
        let mut out = Dual2::constant(val, nvars);
        out.grad[index] = 1.0;
        out
    }

    /// Seed one variable per entry of `point`.
    pub fn vars(point: &[f64]) -> Vec<Self> {
        let n = point.len();
        point
            .iter()
            .enumerate()
            .map(|(i, &v)| Dual2::var(v, i, n))
            .collect()
    }

    pub fn nvars(&self) -> usize {
        self.n
    }

    pub fn val(&self) -> f64 {
        self.val
    }

    pub fn grad(&self) -> &[f64] {
        &self.grad[..self.n]
    }

    /// Second partial with respect to variables `i` and `j`.
    pub fn hess(&self, i: usize, j: usize) -> f64 {
        if i >= j {
            self.hess[tri(i, j)]
        } else {
            self.hess[tri(j, i)]
        }
    }

    /// Unary chain rule: for `f(u)` with derivatives `fp = f'(u)` and
    /// `fpp = f''(u)`,
    /// `d_i f = fp * u_i` and `d_ij f = fp * u_ij + fpp * u_i * u_j`.
    fn chain(&self, f: f64, fp: f64, fpp: f64) -> Self {
        let mut out = Dual2::constant(f, self.n);
        for i in 0..self.n {
            out.grad[i] = fp * self.grad[i];
        }
        for i in 0..self.n {
            for j in 0..=i {
                out.hess[tri(i, j)] =
                    fp * self.hess[tri(i, j)] + fpp * self.grad[i] * self.grad[j];
            }
        }
        out
    }

    pub fn sin(&self) -> Self {
        let (s, c) = self.val.sin_cos();
        self.chain(s, c, -s)
    }

    pub fn cos(&self) -> Self {
        let (s, c) = self.val.sin_cos();
        self.chain(c, -s, -c)
    }

    pub fn exp(&self) -> Self {
        let e = self.val.exp();
        self.chain(e, e, e)
    }

    pub fn ln(&self) -> Self {
        let v = self.val;
        self.chain(v.ln(), 1.0 / v, -1.0 / (v * v))
    }

    pub fn sqrt(&self) -> Self {
        let r = self.val.sqrt();
        self.chain(r, 0.5 / r, -0.25 / (r * r * r))
    }

    pub fn sinh(&self) -> Self {
        let (s, c) = (self.val.sinh(), self.val.cosh());
        self.chain(s, c, s)
    }

    pub fn cosh(&self) -> Self {
        let (s, c) = (self.val.sinh(), self.val.cosh());
        self.chain(c, s, c)
    }

    pub fn recip(&self) -> Self {
        let v = self.val;
        self.chain(1.0 / v, -1.0 / (v * v), 2.0 / (v * v * v))
    }

    pub fn powi(&self, k: i32) -> Self {
        let v = self.val;
        self.chain(
            v.powi(k),
            f64::from(k) * v.powi(k - 1),
            f64::from(k) * f64::from(k - 1) * v.powi(k - 2),
        )
    }

    pub fn scale(&self, c: f64) -> Self {
        let mut out = *self;
        out.val *= c;
        for g in &mut out.grad[..self.n] {
            *g *= c;
        }
        for h in &mut out.hess[..tri_len(self.n)] {
            *h *= c;
        }
        out
    }
}

impl std::ops::Add for &Dual2 {
    type Output = Dual2;
    fn add(self, rhs: &Dual2) -> Dual2 {
        debug_assert_eq!(self.n, rhs.n);
        let mut out = *self;
        out.val += rhs.val;
        for i in 0..self.n {
            out.grad[i] += rhs.grad[i];
        }
        for k in 0..tri_len(self.n) {
            out.hess[k] += rhs.hess[k];
        }
        out
    }
}

impl std::ops::Sub for &Dual2 {
    type Output = Dual2;
    fn sub(self, rhs: &Dual2) -> Dual2 {
        debug_assert_eq!(self.n, rhs.n);
        let mut out = *self;
        out.val -= rhs.val;
        for i in 0..self.n {
            out.grad[i] -= rhs.grad[i];
        }
        for k in 0..tri_len(self.n) {
            out.hess[k] -= rhs.hess[k];
        }
        out
    }
}

impl std::ops::Mul for &Dual2 {
    type Output = Dual2;
    fn mul(self, rhs: &Dual2) -> Dual2 {
        debug_assert_eq!(self.n, rhs.n);
        let mut out = Dual2::constant(self.val * rhs.val, self.n);
        for i in 0..self.n {
            out.grad[i] = self.grad[i] * rhs.val + self.val * rhs.grad[i];
        }
        for i in 0..self.n {
            for j in 0..=i {
                out.hess[tri(i, j)] = self.hess[tri(i, j)] * rhs.val
                    + self.grad[i] * rhs.grad[j]
                    + self.grad[j] * rhs.grad[i]
                    + self.val * rhs.hess[tri(i, j)];
            }
        }
        out
    }
}

impl std::ops::Div for &Dual2 {
    type Output = Dual2;
    #[allow(clippy::suspicious_arithmetic_impl)] // u/v computed as u * v^{-1}
    fn div(self, rhs: &Dual2) -> Dual2 {
        self * rhs.recip()
    }
}

impl std::ops::Neg for &Dual2 {
    type Output = Dual2;
    fn neg(self) -> Dual2 {
        self.scale(-1.0)
    }
}

macro_rules! forward_owned_ops {
    ($($trait:ident :: $method:ident),*) => {$(
        impl std::ops::$trait for Dual2 {
            type Output = Dual2;
            fn $method(self, rhs: Dual2) -> Dual2 {
                std::ops::$trait::$method(&self, &rhs)
            }
        }
        impl std::ops::$trait<&Dual2> for Dual2 {
            type Output = Dual2;
            fn $method(self, rhs: &Dual2) -> Dual2 {
                std::ops::$trait::$method(&self, rhs)
            }
        }
        impl std::ops::$trait<Dual2> for &Dual2 {
            type Output = Dual2;
            fn $method(self, rhs: Dual2) -> Dual2 {
                std::ops::$trait::$method(self, &rhs)
            }
        }
    )*};
}

forward_owned_ops!(Add::add, Sub::sub, Mul::mul, Div::div);

impl std::ops::Neg for Dual2 {
    type Output = Dual2;
    fn neg(self) -> Dual2 {
        self.scale(-1.0)
    }
}
