//! Double-double arithmetic: each value is an unevaluated sum `hi + lo`
//! of two `f64`, giving roughly 106 bits (~32 decimal digits) of precision.
//!
//! The power-series branch of the Mittag-Leffler evaluator sums terms
//! xᵏ/Γ(αk + β) whose magnitudes can exceed the final result by up to
//! ~15 decimal orders before cancellation. Plain `f64` accumulation loses
//! all significance there; double-double keeps ~17 digits after the
//! cancellation, which is what the dispatcher's accuracy target needs.
//!
//! The operations implemented here are the classic error-free transforms
//! (Dekker/Knuth `two_sum`, FMA-based `two_prod`) plus the transcendental
//! kernels the series needs: `exp`, `ln`, `ln Γ` (Stirling with upward
//! shift), `sin(πx)`, and `1/Γ` via reflection.

use std::ops::{Add, Div, Mul, Neg, Sub};

/// Error-free sum: returns `(s, e)` with `s = fl(a + b)` and `a + b = s + e` exactly.
#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    let e = (a - (s - bb)) + (b - bb);
    (s, e)
}

/// Error-free sum assuming `|a| ≥ |b|`.
#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let e = b - (s - a);
    (s, e)
}

/// Error-free product via FMA: `a·b = p + e` exactly.
#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    let e = a.mul_add(b, -p);
    (p, e)
}

/// A double-double number `hi + lo` with `|lo| ≤ ½ ulp(hi)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct Dd {
    pub hi: f64,
    pub lo: f64,
}

pub(crate) const DD_ZERO: Dd = Dd { hi: 0.0, lo: 0.0 };
pub(crate) const DD_ONE: Dd = Dd { hi: 1.0, lo: 0.0 };

/// ln 2 to double-double precision.
pub(crate) const DD_LN2: Dd = Dd {
    hi: 0.693_147_180_559_945_3,
    lo: 2.319_046_813_846_299_6e-17,
};

/// π to double-double precision.
pub(crate) const DD_PI: Dd = Dd {
    hi: 3.141_592_653_589_793,
    lo: 1.224_646_799_147_353_2e-16,
};

/// ½·ln(2π) to double-double precision (Stirling's constant term).
const DD_HALF_LN_2PI: Dd = Dd {
    hi: 0.918_938_533_204_672_8,
    lo: -3.878_294_158_067_241_4e-17,
};

/// Stirling correction coefficients bₙ = B₂ₙ / (2n(2n−1)) for n = 1..13,
/// giving ln Γ(z) ≈ (z−½)ln z − z + ½ln(2π) + Σ bₙ z^(1−2n).
const STIRLING_B: [Dd; 13] = [
    Dd { hi: 0.083_333_333_333_333_33, lo: 4.625_929_269_271_485e-18 },
    Dd { hi: -0.002_777_777_777_777_778, lo: 1.060_108_790_874_715_4e-19 },
    Dd { hi: 0.000_793_650_793_650_793_7, lo: 6.883_823_317_368_282e-22 },
    Dd { hi: -0.000_595_238_095_238_095_3, lo: 5.369_382_187_547_26e-20 },
    Dd { hi: 0.000_841_750_841_750_841_7, lo: 3.687_017_488_923_769_4e-20 },
    Dd { hi: -0.001_917_526_917_526_917_6, lo: 1.067_570_277_687_247_5e-19 },
    Dd { hi: 0.006_410_256_410_256_41, lo: 2.224_004_456_380_521_7e-19 },
    Dd { hi: -0.029_550_653_594_771_242, lo: 4.861_760_957_508_855e-19 },
    Dd { hi: 0.179_644_372_368_830_57, lo: -6.401_600_482_710_946e-19 },
    Dd { hi: -1.392_432_216_905_901_1, lo: 1.583_705_698_923_030_3e-17 },
    Dd { hi: 13.402_864_044_168_393, lo: -6.154_114_101_993_966e-16 },
    Dd { hi: -156.848_284_626_002_03, lo: 9.391_823_141_715_389e-15 },
    Dd { hi: 2_193.103_333_333_333_5, lo: -1.333_925_562_600_294_8e-13 },
];

impl Dd {
    #[inline]
    pub fn new(hi: f64, lo: f64) -> Dd {
        let (s, e) = quick_two_sum(hi, lo);
        Dd { hi: s, lo: e }
    }

    #[inline]
    pub fn from_f64(x: f64) -> Dd {
        Dd { hi: x, lo: 0.0 }
    }

    /// Exact product of two `f64` as a double-double.
    #[inline]
    pub fn from_prod(a: f64, b: f64) -> Dd {
        let (p, e) = two_prod(a, b);
        Dd { hi: p, lo: e }
    }

    #[inline]
    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    #[inline]
    pub fn abs(self) -> Dd {
        if self.hi < 0.0 || (self.hi == 0.0 && self.lo < 0.0) {
            -self
        } else {
            self
        }
    }

    /// exp(x), with argument reduction x = k·ln2 + r, |r| ≤ ½ln2,
    /// followed by a Taylor series in r and a scale by 2ᵏ.
    pub fn exp(self) -> Dd {
        if self.hi < -745.0 {
            return DD_ZERO; // underflows to zero even in f64
        }
        if self.hi > 709.782712893384 {
            // beyond ln(f64::MAX)
            return Dd::from_f64(f64::INFINITY);
        }
        let k = (self.hi / DD_LN2.hi).round();
        let r = self - DD_LN2 * k;
        // Taylor: Σ rⁿ/n! — |r| ≤ 0.347 needs ~26 terms for 1e-35.
        let mut sum = DD_ONE + r;
        let mut term = r;
        let mut n = 2.0;
        loop {
            term = term * r / n;
            sum = sum + term;
            if term.hi.abs() < 1e-35 * sum.hi.abs() || n > 40.0 {
                break;
            }
            n += 1.0;
        }
        // Scale by 2ᵏ in two exact halves so results between 2¹⁰²³ and
        // f64::MAX (where 2ᵏ itself would overflow) stay representable.
        let k = k as i32;
        let (s1, s2) = (2f64.powi(k / 2), 2f64.powi(k - k / 2));
        Dd::new(sum.hi * s1 * s2, sum.lo * s1 * s2)
    }

    /// ln(x) for x > 0: start from the f64 logarithm and apply one
    /// correction step, ln x = y₀ + ln(x·e^(−y₀)) with the second log
    /// expanded to third order in δ = x·e^(−y₀) − 1 (|δ| ≲ 1e-16).
    pub fn ln(self) -> Dd {
        debug_assert!(self.hi > 0.0);
        let y0 = self.hi.ln();
        let r = self * Dd::from_f64(-y0).exp();
        let d = r - 1.0;
        let d2 = d * d;
        Dd::from_f64(y0) + d - d2 * 0.5 + d2 * d * (1.0 / 3.0)
    }

    /// sin(πx), exact zero at integer x (the nearest-integer reduction
    /// leaves a residual of exactly 0 there).
    pub fn sin_pi(self) -> Dd {
        let r = self.hi.round();
        let s = self - r;
        let z = DD_PI * s;
        // Taylor: z − z³/3! + z⁵/5! − … ; |z| ≤ π/2 needs ~16 terms.
        let z2 = z * z;
        let mut term = z;
        let mut sum = z;
        let mut n = 1.0;
        loop {
            term = term * z2 / (-((2.0 * n) * (2.0 * n + 1.0)));
            sum = sum + term;
            if term.hi.abs() < 1e-35 * (sum.hi.abs() + 1e-300) || n > 25.0 {
                break;
            }
            n += 1.0;
        }
        if (r as i64) % 2 != 0 {
            sum = -sum;
        }
        sum
    }

    /// ln Γ(z) for z > 0. Uses the Stirling series directly for z ≥ 30;
    /// below that, shifts upward with ln Γ(z) = ln Γ(z+m) − Σ ln(z+i).
    pub fn lgamma(self) -> Dd {
        debug_assert!(self.hi > 0.0);
        let mut z = self;
        let mut shift = DD_ZERO;
        while z.hi < 30.0 {
            shift = shift + z.ln();
            z = z + 1.0;
        }
        let u = DD_ONE / z;
        let u2 = u * u;
        // Horner over the Stirling corrections: Σ bₙ z^(1−2n).
        let mut s = STIRLING_B[12];
        for i in (0..12).rev() {
            s = s * u2 + STIRLING_B[i];
        }
        s = s * u;
        (z - 0.5) * z.ln() - z + DD_HALF_LN_2PI + s - shift
    }

    /// 1/Γ(g) for g > 0. Direct e^(−lnΓ) for g ≥ ½; reflection
    /// 1/Γ(g) = sin(πg)·Γ(1−g)/π for 0 < g < ½.
    pub fn recip_gamma(self) -> Dd {
        debug_assert!(self.hi > 0.0);
        if self.hi >= 0.5 {
            (-self.lgamma()).exp()
        } else {
            self.sin_pi() * (DD_ONE - self).lgamma().exp() / DD_PI
        }
    }
}

impl Add for Dd {
    type Output = Dd;
    #[inline]
    fn add(self, rhs: Dd) -> Dd {
        let (s1, s2) = two_sum(self.hi, rhs.hi);
        let (t1, t2) = two_sum(self.lo, rhs.lo);
        let (s1, s2) = quick_two_sum(s1, s2 + t1);
        let (hi, lo) = quick_two_sum(s1, s2 + t2);
        Dd { hi, lo }
    }
}

impl Add<f64> for Dd {
    type Output = Dd;
    #[inline]
    fn add(self, rhs: f64) -> Dd {
        let (s1, s2) = two_sum(self.hi, rhs);
        let (hi, lo) = quick_two_sum(s1, s2 + self.lo);
        Dd { hi, lo }
    }
}

impl Sub for Dd {
    type Output = Dd;
    #[inline]
    fn sub(self, rhs: Dd) -> Dd {
        self + (-rhs)
    }
}

impl Sub<f64> for Dd {
    type Output = Dd;
    #[inline]
    fn sub(self, rhs: f64) -> Dd {
        self + (-rhs)
    }
}

impl Mul for Dd {
    type Output = Dd;
    #[inline]
    fn mul(self, rhs: Dd) -> Dd {
        let (p1, p2) = two_prod(self.hi, rhs.hi);
        let p2 = p2 + self.hi * rhs.lo + self.lo * rhs.hi;
        let (hi, lo) = quick_two_sum(p1, p2);
        Dd { hi, lo }
    }
}

impl Mul<f64> for Dd {
    type Output = Dd;
    #[inline]
    fn mul(self, rhs: f64) -> Dd {
        let (p1, p2) = two_prod(self.hi, rhs);
        let (hi, lo) = quick_two_sum(p1, p2 + self.lo * rhs);
        Dd { hi, lo }
    }
}

impl Div for Dd {
    type Output = Dd;
    #[inline]
    fn div(self, rhs: Dd) -> Dd {
        // Long division with two correction steps.
        let q1 = self.hi / rhs.hi;
        let r = self - rhs * q1;
        let q2 = r.hi / rhs.hi;
        let r = r - rhs * q2;
        let q3 = r.hi / rhs.hi;
        let (s, e) = quick_two_sum(q1, q2);
        Dd { hi: s, lo: e } + q3
    }
}

impl Div<f64> for Dd {
    type Output = Dd;
    #[inline]
    fn div(self, rhs: f64) -> Dd {
        self / Dd::from_f64(rhs)
    }
}

impl Neg for Dd {
    type Output = Dd;
    #[inline]
    fn neg(self) -> Dd {
        Dd { hi: -self.hi, lo: -self.lo }
    }
}
