//! Binary floating point with a big-integer mantissa, just enough to re-sum
//! alternating series whose terms cancel far beyond double precision.

use num_bigint::{BigInt, Sign};
use num_traits::{ToPrimitive, Zero};

/// The value `m · 2^e`.
#[derive(Clone, Debug)]
pub(crate) struct Wide {
    m: BigInt,
    e: i64,
}

fn ldexp(x: f64, mut k: i64) -> f64 {
    let mut y = x;
    while k > 1000 {
        y *= 2f64.powi(1000);
        k -= 1000;
    }
    while k < -1000 {
        y *= 2f64.powi(-1000);
        k += 1000;
    }
    y * 2f64.powi(k as i32)
}

impl Wide {
    pub fn zero() -> Wide {
        Wide {
            m: BigInt::zero(),
            e: 0,
        }
    }

    /// Exact conversion.
    pub fn from_f64(x: f64) -> Wide {
        assert!(x.is_finite());
        if x == 0.0 {
            return Wide::zero();
        }
        let bits = x.to_bits();
        let sign = bits >> 63;
        let exp = ((bits >> 52) & 0x7ff) as i64;
        let frac = bits & ((1u64 << 52) - 1);
        let (mant, e) = if exp == 0 {
            (frac, -1074)
        } else {
            (frac | (1u64 << 52), exp - 1075)
        };
        let m = BigInt::from(mant);
        Wide {
            m: if sign == 1 { -m } else { m },
            e,
        }
    }

    pub fn neg(self) -> Wide {
        Wide { m: -self.m, e: self.e }
    }

    fn trim(mut self, prec: u64) -> Wide {
        let bits = self.m.bits();
        if bits > prec {
            let sh = bits - prec;
            self.m = &self.m >> sh;
            self.e += sh as i64;
        }
        self
    }

    pub fn to_f64(&self) -> f64 {
        if self.m.is_zero() {
            return 0.0;
        }
        let bits = self.m.bits();
        let sh = bits.saturating_sub(64);
        let top = (self.m.magnitude() >> sh).to_u64().unwrap_or(u64::MAX) as f64;
        let v = ldexp(top, self.e + sh as i64);
        if self.m.sign() == Sign::Minus {
            -v
        } else {
            v
        }
    }

    pub fn mul(&self, o: &Wide, prec: u64) -> Wide {
        Wide {
            m: &self.m * &o.m,
            e: self.e + o.e,
        }
        .trim(prec)
    }

    pub fn div(&self, o: &Wide, prec: u64) -> Wide {
        assert!(!o.m.is_zero(), "wide division by zero");
        if self.m.is_zero() {
            return Wide::zero();
        }
        let shift = (prec + o.m.bits()).saturating_sub(self.m.bits()) + 2;
        let num = &self.m << shift;
        Wide {
            m: num / &o.m,
            e: self.e - o.e - shift as i64,
        }
        .trim(prec)
    }

    /// Sum rounded to `prec` bits relative to the larger operand.
    pub fn add(&self, o: &Wide, prec: u64) -> Wide {
        if self.m.is_zero() {
            return o.clone();
        }
        if o.m.is_zero() {
            return self.clone();
        }
        let (hi, lo) = if self.e + self.m.bits() as i64 >= o.e + o.m.bits() as i64 {
            (self, o)
        } else {
            (o, self)
        };
        // drop the bits of `lo` that sit below the retained precision of `hi`
        let floor = hi.e + hi.m.bits() as i64 - prec as i64 - 8;
        let lo = if lo.e < floor {
            let sh = (floor - lo.e) as u64;
            Wide {
                m: &lo.m >> sh,
                e: floor,
            }
        } else {
            lo.clone()
        };
        let e = hi.e.min(lo.e);
        let m = (&hi.m << (hi.e - e) as u64) + (&lo.m << (lo.e - e) as u64);
        Wide { m, e }.trim(prec)
    }
}
