//! Quaternion scalars and similarity orbits.
//!
//! Two quaternions `p`, `q` are similar when `p = a⁻¹ q a` for some nonzero
//! `a`. Orbits are classified by the pair (real part, imaginary magnitude),
//! and every orbit meets the complex plane in `re ± r·i`.

use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Relative guard used before inverting a quaternion.
pub const TOL_ZERO: f64 = 1e-13;

/// `q = w + x·i + y·j + z·k`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Quaternion {
    pub w: f64,
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Quaternion {
    pub const ZERO: Quaternion = Quaternion::new(0.0, 0.0, 0.0, 0.0);
    pub const ONE: Quaternion = Quaternion::new(1.0, 0.0, 0.0, 0.0);
    pub const I: Quaternion = Quaternion::new(0.0, 1.0, 0.0, 0.0);
    pub const J: Quaternion = Quaternion::new(0.0, 0.0, 1.0, 0.0);
    pub const K: Quaternion = Quaternion::new(0.0, 0.0, 0.0, 1.0);

    #[inline]
    pub const fn new(w: f64, x: f64, y: f64, z: f64) -> Self {
        Self { w, x, y, z }
    }

    #[inline]
    pub const fn real(w: f64) -> Self {
        Self::new(w, 0.0, 0.0, 0.0)
    }

    /// Embeds `a + b·i`.
    #[inline]
    pub fn from_complex(c: Complex64) -> Self {
        Self::new(c.re, c.im, 0.0, 0.0)
    }

    /// Builds `c1 + c2·j` from its two complex parts.
    #[inline]
    pub fn from_parts(c1: Complex64, c2: Complex64) -> Self {
        Self::new(c1.re, c1.im, c2.re, c2.im)
    }

    /// Splits `q = c1 + c2·j` with complex `c1`, `c2`.
    #[inline]
    pub fn parts(self) -> (Complex64, Complex64) {
        (Complex64::new(self.w, self.x), Complex64::new(self.y, self.z))
    }

    #[inline]
    pub fn components(self) -> [f64; 4] {
        [self.w, self.x, self.y, self.z]
    }

    #[inline]
    pub fn re(self) -> f64 {
        self.w
    }

    /// Pure imaginary part `x·i + y·j + z·k`.
    #[inline]
    pub fn imag(self) -> Quaternion {
        Self::new(0.0, self.x, self.y, self.z)
    }

    #[inline]
    pub fn imag_norm(self) -> f64 {
        (self.x * self.x + self.y * self.y + self.z * self.z).sqrt()
    }

    #[inline]
    pub fn conj(self) -> Self {
        Self::new(self.w, -self.x, -self.y, -self.z)
    }

    #[inline]
    pub fn norm_sqr(self) -> f64 {
        self.w * self.w + self.x * self.x + self.y * self.y + self.z * self.z
    }

    #[inline]
    pub fn norm(self) -> f64 {
        // hypot-style scaling is unnecessary at the magnitudes used here
        self.norm_sqr().sqrt()
    }

    pub fn is_zero(self) -> bool {
        self.norm() <= TOL_ZERO
    }

    /// `q̄ / |q|²`, refusing quaternions with `|q| ≤ 1e-13·max(1, |q|)`.
    pub fn inverse(self) -> Result<Self> {
        let n = self.norm();
        if !(n > TOL_ZERO * n.max(1.0)) {
            return Err(Error::ZeroDivision { norm: n });
        }
        Ok(self.conj() / self.norm_sqr())
    }

    /// `a⁻¹ · self · a`.
    pub fn conjugate_by(self, a: Quaternion) -> Result<Self> {
        Ok(a.inverse()? * self * a)
    }

    /// `self · a⁻¹`.
    pub fn right_div(self, a: Quaternion) -> Result<Self> {
        Ok(self * a.inverse()?)
    }

    /// `a⁻¹ · self`.
    pub fn left_div(self, a: Quaternion) -> Result<Self> {
        Ok(a.inverse()? * self)
    }

    /// Integer power by repeated squaring.
    pub fn powi(self, mut e: u32) -> Self {
        let mut base = self;
        let mut acc = Self::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc *= base;
            }
            base = base * base;
            e >>= 1;
        }
        acc
    }

    pub fn orbit(self) -> OrbitClass {
        OrbitClass::of(self)
    }

    /// The complex orbit representative `Re q + |Im q|·i`.
    ///
    /// Quaternions with `|Im q| ≤ 1e-13·(1 + |q|)` map to their real part.
    pub fn standardize(self) -> Self {
        self.orbit().representative()
    }

    /// Unit pure quaternion along `Im q`, or `None` when `q` is real.
    pub fn axis(self) -> Option<Quaternion> {
        let r = self.imag_norm();
        if r <= TOL_ZERO * (1.0 + self.norm()) {
            None
        } else {
            Some(self.imag() / r)
        }
    }

    pub fn is_finite(self) -> bool {
        self.components().iter().all(|c| c.is_finite())
    }
}

/// True iff the real parts and the norms agree within `tol`.
pub fn is_similar(p: Quaternion, q: Quaternion, tol: f64) -> bool {
    (p.re() - q.re()).abs() <= tol && (p.norm() - q.norm()).abs() <= tol
}

/// Similarity orbit identified by its complex representative `re + r·i`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OrbitClass {
    pub re: f64,
    /// Imaginary magnitude, `0` for real singleton orbits.
    pub r: f64,
}

impl OrbitClass {
    pub fn new(re: f64, r: f64) -> Self {
        Self { re, r: r.abs() }
    }

    pub fn of(q: Quaternion) -> Self {
        let r = q.imag_norm();
        if r <= TOL_ZERO * (1.0 + q.norm()) {
            Self { re: q.w, r: 0.0 }
        } else {
            Self { re: q.w, r }
        }
    }

    pub fn is_real(self) -> bool {
        self.r == 0.0
    }

    pub fn representative(self) -> Quaternion {
        Quaternion::new(self.re, self.r, 0.0, 0.0)
    }

    /// `re + r·u` for a unit pure quaternion `u`.
    pub fn point(self, axis: Quaternion) -> Quaternion {
        Quaternion::real(self.re) + axis * self.r
    }

    /// Norm of any element of the orbit.
    pub fn modulus(self) -> f64 {
        self.re.hypot(self.r)
    }

    pub fn contains(self, q: Quaternion, tol: f64) -> bool {
        is_similar(q, self.representative(), tol)
    }

    pub fn distance(self, other: OrbitClass) -> f64 {
        (self.re - other.re).abs() + (self.r - other.r).abs()
    }

    /// Coefficients `(2·re, re² + r²)` of the real quadratic
    /// `z² − 2·re·z + (re² + r²)` that vanishes on the whole orbit.
    pub fn quadratic(self) -> (f64, f64) {
        (2.0 * self.re, self.re * self.re + self.r * self.r)
    }
}

impl fmt::Display for OrbitClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.re, self.r)
    }
}

impl Add for Quaternion {
    type Output = Self;
    #[inline]
    fn add(self, o: Self) -> Self {
        Self::new(self.w + o.w, self.x + o.x, self.y + o.y, self.z + o.z)
    }
}

impl Sub for Quaternion {
    type Output = Self;
    #[inline]
    fn sub(self, o: Self) -> Self {
        Self::new(self.w - o.w, self.x - o.x, self.y - o.y, self.z - o.z)
    }
}

impl Neg for Quaternion {
    type Output = Self;
    #[inline]
    fn neg(self) -> Self {
        Self::new(-self.w, -self.x, -self.y, -self.z)
    }
}

/// Hamilton product.
impl Mul for Quaternion {
    type Output = Self;
    #[inline]
    fn mul(self, o: Self) -> Self {
        Self::new(
            self.w * o.w - self.x * o.x - self.y * o.y - self.z * o.z,
            self.w * o.x + self.x * o.w + self.y * o.z - self.z * o.y,
            self.w * o.y - self.x * o.z + self.y * o.w + self.z * o.x,
            self.w * o.z + self.x * o.y - self.y * o.x + self.z * o.w,
        )
    }
}

impl Mul<f64> for Quaternion {
    type Output = Self;
    #[inline]
    fn mul(self, s: f64) -> Self {
        Self::new(self.w * s, self.x * s, self.y * s, self.z * s)
    }
}

impl Mul<Quaternion> for f64 {
    type Output = Quaternion;
    #[inline]
    fn mul(self, q: Quaternion) -> Quaternion {
        q * self
    }
}

impl Div<f64> for Quaternion {
    type Output = Self;
    #[inline]
    fn div(self, s: f64) -> Self {
        Self::new(self.w / s, self.x / s, self.y / s, self.z / s)
    }
}

impl AddAssign for Quaternion {
    #[inline]
    fn add_assign(&mut self, o: Self) {
        *self = *self + o;
    }
}

impl SubAssign for Quaternion {
    #[inline]
    fn sub_assign(&mut self, o: Self) {
        *self = *self - o;
    }
}

impl MulAssign for Quaternion {
    #[inline]
    fn mul_assign(&mut self, o: Self) {
        *self = *self * o;
    }
}

impl Sum for Quaternion {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::ZERO, |a, b| a + b)
    }
}

impl From<f64> for Quaternion {
    fn from(w: f64) -> Self {
        Self::real(w)
    }
}

impl fmt::Display for Quaternion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::text::format_quaternion(*self, 17))
    }
}
