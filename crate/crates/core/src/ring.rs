//! Exact arithmetic in the ring of integers of the 10th cyclotomic field.
//!
//! Elements are stored on the basis `1, ζ, ζ², ζ³` with `ζ = e^{iπ/5}`.
//! Because `ζ⁴ = ζ³ − ζ² + ζ − 1`, every element has exactly one such
//! representation, so structural equality is ring equality and the type can
//! be hashed and ordered directly.
//!
//! The real subring is `Z[φ]`; [`ZPhi`] holds those values and has an exact
//! sign test, which is all the geometry code needs to decide orientations
//! and compare lengths without floating point.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

/// An element `c0 + c1·ζ + c2·ζ² + c3·ζ³` of `Z[ζ]`, `ζ = e^{iπ/5}`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Cyclo10 {
    c: [i64; 4],
}

impl fmt::Debug for Cyclo10 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = self.c;
        write!(f, "({a},{b},{c},{d})")
    }
}

impl fmt::Display for Cyclo10 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = self.c;
        write!(f, "{a} {b} {c} {d}")
    }
}

/// Reduce a coefficient vector of arbitrary length (powers of ζ) to the
/// canonical basis using `ζ⁵ = −1` and the minimal polynomial.
fn reduce(raw: &[i64]) -> [i64; 4] {
    let mut five = [0i64; 5];
    for (k, &v) in raw.iter().enumerate() {
        let (q, r) = (k / 5, k % 5);
        if q % 2 == 0 {
            five[r] += v;
        } else {
            five[r] -= v;
        }
    }
    let t = five[4];
    [five[0] - t, five[1] + t, five[2] - t, five[3] + t]
}

impl Cyclo10 {
    pub const ZERO: Cyclo10 = Cyclo10 { c: [0, 0, 0, 0] };
    pub const ONE: Cyclo10 = Cyclo10 { c: [1, 0, 0, 0] };
    pub const ZETA: Cyclo10 = Cyclo10 { c: [0, 1, 0, 0] };
    /// The golden ratio, `1 + ζ² − ζ³`.
    pub const PHI: Cyclo10 = Cyclo10 { c: [1, 0, 1, -1] };
    /// `1/φ = φ − 1`; φ is a unit of the ring.
    pub const PHI_INV: Cyclo10 = Cyclo10 { c: [0, 0, 1, -1] };

    pub const fn new(c0: i64, c1: i64, c2: i64, c3: i64) -> Self {
        Cyclo10 { c: [c0, c1, c2, c3] }
    }

    pub const fn coeffs(&self) -> [i64; 4] {
        self.c
    }

    pub fn from_int(n: i64) -> Self {
        Cyclo10::new(n, 0, 0, 0)
    }

    pub fn is_zero(&self) -> bool {
        self.c == [0; 4]
    }

    /// `ζᵏ` for any integer `k`.
    pub fn zeta_pow(k: i64) -> Self {
        let k = k.rem_euclid(10) as usize;
        let mut raw = [0i64; 10];
        raw[k] = 1;
        Cyclo10 { c: reduce(&raw) }
    }

    /// `φᵏ` for any integer `k` (negative powers use `1/φ = φ − 1`).
    pub fn phi_pow(k: i32) -> Self {
        let base = if k >= 0 { Self::PHI } else { Self::PHI_INV };
        (0..k.unsigned_abs()).fold(Self::ONE, |acc, _| acc * base)
    }

    /// Multiply by `ζᵏ`, i.e. rotate by `k·36°` about the origin.
    pub fn rotate(self, k: i64) -> Self {
        let k = k.rem_euclid(10) as usize;
        let mut raw = [0i64; 13];
        raw[k..k + 4].copy_from_slice(&self.c);
        Cyclo10 { c: reduce(&raw) }
    }

    pub fn mul_phi(self) -> Self {
        self * Self::PHI
    }

    pub fn div_phi(self) -> Self {
        self * Self::PHI_INV
    }

    /// Complex conjugation (`ζ ↦ ζ⁻¹`), i.e. reflection in the real axis.
    pub fn conj(self) -> Self {
        let mut raw = [0i64; 10];
        for (i, &v) in self.c.iter().enumerate() {
            raw[(10 - i) % 10] += v;
        }
        Cyclo10 { c: reduce(&raw) }
    }

    /// `z·z̄`, the squared absolute value; always lies in `Z[φ]`.
    pub fn norm_sq(self) -> ZPhi {
        (self * self.conj())
            .as_real()
            .expect("z times its conjugate is real")
    }

    /// The value as an element of `Z[φ]` if it is real.
    pub fn as_real(self) -> Option<ZPhi> {
        let [c0, c1, c2, c3] = self.c;
        (c1 == 0 && c3 == -c2).then_some(ZPhi { a: c0 - c2, b: c2 })
    }

    /// Floating-point image under `ζ ↦ e^{iπ/5}`, as `(re, im)`.
    /// Only meant for rendering and spatial bucketing.
    pub fn to_complex(self) -> (f64, f64) {
        let mut re = 0.0;
        let mut im = 0.0;
        for (k, &v) in self.c.iter().enumerate() {
            let t = std::f64::consts::PI * k as f64 / 5.0;
            re += v as f64 * t.cos();
            im += v as f64 * t.sin();
        }
        (re, im)
    }

    /// Largest absolute coefficient; a cheap size measure.
    pub fn height(&self) -> i64 {
        self.c.iter().map(|v| v.abs()).max().unwrap_or(0)
    }
}

impl Add for Cyclo10 {
    type Output = Cyclo10;
    fn add(self, o: Cyclo10) -> Cyclo10 {
        let mut c = self.c;
        for (x, y) in c.iter_mut().zip(o.c) {
            *x += y;
        }
        Cyclo10 { c }
    }
}

impl Sub for Cyclo10 {
    type Output = Cyclo10;
    fn sub(self, o: Cyclo10) -> Cyclo10 {
        let mut c = self.c;
        for (x, y) in c.iter_mut().zip(o.c) {
            *x -= y;
        }
        Cyclo10 { c }
    }
}

impl AddAssign for Cyclo10 {
    fn add_assign(&mut self, o: Cyclo10) {
        *self = *self + o;
    }
}

impl SubAssign for Cyclo10 {
    fn sub_assign(&mut self, o: Cyclo10) {
        *self = *self - o;
    }
}

impl Neg for Cyclo10 {
    type Output = Cyclo10;
    fn neg(self) -> Cyclo10 {
        Cyclo10 { c: self.c.map(|v| -v) }
    }
}

impl Mul for Cyclo10 {
    type Output = Cyclo10;
    fn mul(self, o: Cyclo10) -> Cyclo10 {
        let mut raw = [0i64; 7];
        for i in 0..4 {
            for j in 0..4 {
                raw[i + j] += self.c[i] * o.c[j];
            }
        }
        Cyclo10 { c: reduce(&raw) }
    }
}

impl Mul<i64> for Cyclo10 {
    type Output = Cyclo10;
    fn mul(self, k: i64) -> Cyclo10 {
        Cyclo10 { c: self.c.map(|v| v * k) }
    }
}

impl std::iter::Sum for Cyclo10 {
    fn sum<I: Iterator<Item = Cyclo10>>(iter: I) -> Cyclo10 {
        iter.fold(Cyclo10::ZERO, |a, b| a + b)
    }
}

/// A real number `a + b·φ` with integer `a`, `b`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct ZPhi {
    pub a: i64,
    pub b: i64,
}

impl fmt::Debug for ZPhi {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}+{}φ", self.a, self.b)
    }
}

impl ZPhi {
    pub const fn new(a: i64, b: i64) -> Self {
        ZPhi { a, b }
    }

    /// Exact sign. `a + bφ = (p + q√5)/2` with `p = 2a + b`, `q = b`.
    pub fn signum(self) -> Ordering {
        let p = 2 * self.a as i128 + self.b as i128;
        let q = self.b as i128;
        match (p.cmp(&0), q.cmp(&0)) {
            (Ordering::Equal, s) | (s, Ordering::Equal) => s,
            (Ordering::Greater, Ordering::Greater) => Ordering::Greater,
            (Ordering::Less, Ordering::Less) => Ordering::Less,
            (Ordering::Greater, Ordering::Less) => (p * p).cmp(&(5 * q * q)),
            (Ordering::Less, Ordering::Greater) => (5 * q * q).cmp(&(p * p)),
        }
    }

    pub fn to_f64(self) -> f64 {
        self.a as f64 + self.b as f64 * 1.618_033_988_749_895
    }

    pub fn to_cyclo(self) -> Cyclo10 {
        Cyclo10::new(self.a + self.b, 0, self.b, -self.b)
    }
}

impl Add for ZPhi {
    type Output = ZPhi;
    fn add(self, o: ZPhi) -> ZPhi {
        ZPhi::new(self.a + o.a, self.b + o.b)
    }
}

impl Sub for ZPhi {
    type Output = ZPhi;
    fn sub(self, o: ZPhi) -> ZPhi {
        ZPhi::new(self.a - o.a, self.b - o.b)
    }
}

impl Mul for ZPhi {
    type Output = ZPhi;
    fn mul(self, o: ZPhi) -> ZPhi {
        // φ² = φ + 1
        let bb = self.b * o.b;
        ZPhi::new(self.a * o.a + bb, self.a * o.b + self.b * o.a + bb)
    }
}

impl Ord for ZPhi {
    fn cmp(&self, other: &Self) -> Ordering {
        (*self - *other).signum()
    }
}

impl PartialOrd for ZPhi {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// `ζ − ζ⁻¹ = 2i·sin 36°`; multiplying a purely imaginary element by it
/// yields a real one with the opposite sign of the imaginary part.
const TWO_I_SIN36: Cyclo10 = Cyclo10::new(-1, 2, -1, 1);

/// Exact sign of the cross product `Im(ū·v)` of two plane vectors.
pub fn cross_sign(u: Cyclo10, v: Cyclo10) -> Ordering {
    let w = u.conj() * v - u * v.conj();
    let r = (TWO_I_SIN36 * w)
        .as_real()
        .expect("product of two imaginary elements is real");
    r.signum().reverse()
}

/// Exact sign of the dot product `Re(ū·v)`.
pub fn dot_sign(u: Cyclo10, v: Cyclo10) -> Ordering {
    let s = u.conj() * v + u * v.conj();
    s.as_real().expect("sum of conjugates is real").signum()
}

/// Orientation of the triangle `a, b, c`: `Greater` when counter-clockwise.
pub fn orient(a: Cyclo10, b: Cyclo10, c: Cyclo10) -> Ordering {
    cross_sign(b - a, c - a)
}

/// Twice the signed area of `a, b, c`, times `2i`, as a ring element:
/// `ū·v − u·v̄` with `u = b − a`, `v = c − a`. Purely imaginary.
pub fn doubled_area_element(a: Cyclo10, b: Cyclo10, c: Cyclo10) -> Cyclo10 {
    let (u, v) = (b - a, c - a);
    u.conj() * v - u * v.conj()
}

/// `k` in `0..10` with `z = scale·ζᵏ`, if any.
pub fn direction_index(z: Cyclo10, scale: Cyclo10) -> Option<u8> {
    (0..10u8).find(|&k| scale.rotate(k as i64) == z)
}
