//! Minimal double-double arithmetic with a separate binary exponent, used by
//! the binomial tail evaluator. Products of tens of thousands of factors stay
//! near machine precision and never overflow or underflow, because magnitude
//! lives in the tracked exponent rather than the mantissa.

/// Error-free sum of two doubles (Knuth two-sum).
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

/// Error-free sum assuming |a| >= |b|.
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    (s, b - (s - a))
}

/// Error-free product via fused multiply-add.
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

/// An unevaluated sum `hi + lo` with |lo| <= ulp(hi)/2.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Dd {
    pub hi: f64,
    pub lo: f64,
}

impl Dd {
    pub fn from_f64(x: f64) -> Self {
        Dd { hi: x, lo: 0.0 }
    }

    /// Exact `1 - p` for p in [0, 1].
    pub fn one_minus(p: f64) -> Self {
        let (hi, lo) = two_sum(1.0, -p);
        Dd { hi, lo }
    }

    /// Exact product of two doubles.
    pub fn prod(a: f64, b: f64) -> Self {
        let (hi, lo) = two_prod(a, b);
        Dd { hi, lo }
    }

    pub fn mul(self, o: Dd) -> Dd {
        let (p, e) = two_prod(self.hi, o.hi);
        let e = e + (self.hi * o.lo + self.lo * o.hi);
        let (hi, lo) = quick_two_sum(p, e);
        Dd { hi, lo }
    }

    pub fn div_f64(self, b: f64) -> Dd {
        let q1 = self.hi / b;
        let (p, e) = two_prod(q1, b);
        let q2 = ((self.hi - p) - e + self.lo) / b;
        let (hi, lo) = quick_two_sum(q1, q2);
        Dd { hi, lo }
    }
}

// ln(2) split into an exact high part and the remainder.
const LN2_HI: f64 = 6.931471805599452862e-1;
const LN2_LO: f64 = 2.319046813846299558e-17;

/// A positive double-double mantissa with a separate power-of-two exponent:
/// the represented value is `mant * 2^exp2`.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Scaled {
    pub mant: Dd,
    pub exp2: i64,
}

impl Scaled {
    pub fn one() -> Self {
        Scaled {
            mant: Dd::from_f64(1.0),
            exp2: 0,
        }
    }

    pub fn from_dd(mant: Dd) -> Self {
        let mut s = Scaled { mant, exp2: 0 };
        s.renorm();
        s
    }

    /// Pulls the mantissa back near unit magnitude. Scaling by a power of two
    /// is exact, so this never loses precision.
    fn renorm(&mut self) {
        if self.mant.hi == 0.0 {
            self.exp2 = 0;
            return;
        }
        let e = ((self.mant.hi.abs().to_bits() >> 52) as i64) - 1023;
        if e.abs() > 256 {
            let scale = 2f64.powi(-e as i32);
            self.mant.hi *= scale;
            self.mant.lo *= scale;
            self.exp2 += e;
        }
    }

    pub fn mul_dd(mut self, d: Dd) -> Scaled {
        self.mant = self.mant.mul(d);
        self.renorm();
        self
    }

    pub fn mul(mut self, o: &Scaled) -> Scaled {
        self.mant = self.mant.mul(o.mant);
        self.exp2 += o.exp2;
        self.renorm();
        self
    }

    pub fn div_f64(mut self, b: f64) -> Scaled {
        self.mant = self.mant.div_f64(b);
        self.renorm();
        self
    }

    /// `base^e` by binary exponentiation.
    pub fn pow(base: Dd, mut e: u64) -> Scaled {
        let mut acc = Scaled::one();
        let mut sq = Scaled::from_dd(base);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&sq);
            }
            e >>= 1;
            if e > 0 {
                sq = sq.mul(&sq);
            }
        }
        acc
    }

    /// Collapses to f64, honestly under/overflowing at the extremes.
    pub fn to_f64(&self) -> f64 {
        let v = self.mant.hi + self.mant.lo;
        if self.exp2 > 1100 {
            return v * f64::INFINITY;
        }
        if self.exp2 < -1150 {
            return 0.0;
        }
        let half = (self.exp2 / 2) as i32;
        let rest = (self.exp2 - half as i64) as i32;
        v * 2f64.powi(half) * 2f64.powi(rest)
    }

    /// Natural log; `-inf` for zero.
    pub fn ln(&self) -> f64 {
        if self.mant.hi <= 0.0 {
            return f64::NEG_INFINITY;
        }
        let mant_ln = self.mant.hi.ln() + self.mant.lo / self.mant.hi;
        let e = self.exp2 as f64;
        mant_ln + e * LN2_HI + e * LN2_LO
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_one_minus() {
        let p = 0.1234567890123;
        let q = Dd::one_minus(p);
        assert_eq!(q.hi + q.lo + p, 1.0);
        // the tail beyond hi is captured
        assert!((q.hi - (1.0 - p)).abs() <= f64::EPSILON);
    }

    #[test]
    fn pow_tracks_extreme_exponents() {
        // 0.5^3000 underflows f64 but survives in scaled form
        let s = Scaled::pow(Dd::from_f64(0.5), 3000);
        assert_eq!(s.exp2 + ((s.mant.hi.abs().to_bits() >> 52) as i64 - 1023), -3000);
        assert_eq!(s.to_f64(), 0.0);
        assert!((s.ln() - 3000.0 * 0.5f64.ln()).abs() < 1e-9);
    }

    #[test]
    fn product_round_trip() {
        let a = Scaled::from_dd(Dd::prod(3.0, 7.0)).div_f64(21.0);
        assert_eq!(a.to_f64(), 1.0);
        let b = Scaled::pow(Dd::from_f64(2.0), 40);
        assert_eq!(b.to_f64(), (1u64 << 40) as f64);
    }
}
