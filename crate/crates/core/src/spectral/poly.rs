//! Integer polynomials, Sturm chains and real-root isolation.
//!
//! Everything here is exact. Remainders are computed as positive multiples
//! of the true remainder and reduced to primitive form, so the sign pattern
//! a Sturm chain needs survives while coefficients stay small.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::SpectralError;

/// Polynomial with integer coefficients, lowest degree first, no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn derivative(&self) -> IntPoly {
        IntPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    /// Sign of `p(x)`, evaluated without leaving the integers: with
    /// `x = a/b`, `b > 0`, the sign of `p(x)` equals that of
    /// `sum c_i a^i b^(d-i)`.
    pub fn sign_at(&self, x: &BigRational) -> Ordering {
        let Some(mut acc) = self.coeffs.last().cloned() else {
            return Ordering::Equal;
        };
        let (a, b) = (x.numer(), x.denom());
        let mut pb = BigInt::one();
        for c in self.coeffs.iter().rev().skip(1) {
            pb *= b;
            acc = acc * a + c * &pb;
        }
        acc.sign_ordering()
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + BigRational::from(c.clone());
        }
        acc
    }

    fn sign_at_infinity(&self, positive: bool) -> Ordering {
        match self.coeffs.last() {
            None => Ordering::Equal,
            Some(lc) => {
                let s = lc.sign_ordering();
                if positive || self.coeffs.len() % 2 == 1 {
                    s
                } else {
                    s.reverse()
                }
            }
        }
    }

    /// Divides out the (positive) content.
    pub fn primitive(mut self) -> IntPoly {
        let content = self.coeffs.iter().fold(BigInt::zero(), |g, c| g.gcd(c));
        if !content.is_zero() && !content.is_one() {
            for c in &mut self.coeffs {
                *c /= &content;
            }
        }
        self
    }

    /// A positive multiple of `self mod divisor`, made primitive.
    pub fn pseudo_rem(&self, divisor: &IntPoly) -> IntPoly {
        let dd = divisor.degree().expect("division by the zero polynomial");
        let lc = divisor.coeffs[dd].clone();
        let lc_abs = lc.abs();
        let lc_sign = BigInt::from(if lc.is_negative() { -1 } else { 1 });
        let mut r = self.coeffs.clone();
        while r.len() > dd && !r.is_empty() {
            let shift = r.len() - 1 - dd;
            let lead = r.last().cloned().expect("nonempty");
            for c in r.iter_mut() {
                *c *= &lc_abs;
            }
            let factor = &lc_sign * &lead;
            for (i, dc) in divisor.coeffs.iter().enumerate() {
                r[shift + i] -= &factor * dc;
            }
            while r.last().is_some_and(Zero::is_zero) {
                r.pop();
            }
        }
        IntPoly::new(r).primitive()
    }

    /// Exact quotient `self / divisor` up to a positive scalar, primitive.
    /// Panics if the division leaves a remainder.
    pub fn div_exact(&self, divisor: &IntPoly) -> IntPoly {
        let dd = divisor.degree().expect("division by the zero polynomial");
        let Some(sd) = self.degree() else {
            return IntPoly::zero();
        };
        if sd < dd {
            assert!(self.is_zero(), "inexact polynomial division");
            return IntPoly::zero();
        }
        let lc = BigRational::from(divisor.coeffs[dd].clone());
        let mut r: Vec<BigRational> = self.coeffs.iter().cloned().map(BigRational::from).collect();
        let mut q = vec![BigRational::zero(); sd - dd + 1];
        for shift in (0..=sd - dd).rev() {
            let t = &r[shift + dd] / &lc;
            for (i, dc) in divisor.coeffs.iter().enumerate() {
                r[shift + i] -= &t * BigRational::from(dc.clone());
            }
            q[shift] = t;
        }
        assert!(r.iter().all(Zero::is_zero), "inexact polynomial division");
        let lcm = q.iter().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
        IntPoly::new(
            q.iter()
                .map(|c| (c * BigRational::from(lcm.clone())).to_integer())
                .collect(),
        )
        .primitive()
    }

    /// Greatest common divisor, primitive with positive leading coefficient.
    pub fn gcd(&self, other: &IntPoly) -> IntPoly {
        let (mut a, mut b) = (self.clone().primitive(), other.clone().primitive());
        while !b.is_zero() {
            let r = a.pseudo_rem(&b);
            a = b;
            b = r;
        }
        if a.leading().is_some_and(Signed::is_negative) {
            a = IntPoly::new(a.coeffs.into_iter().map(|c| -c).collect());
        }
        a
    }

    /// The product of the distinct irreducible factors, up to a positive scalar.
    pub fn squarefree(&self) -> IntPoly {
        if self.degree().unwrap_or(0) == 0 {
            return self.clone().primitive();
        }
        let g = self.gcd(&self.derivative());
        if g.degree() == Some(0) {
            self.clone().primitive()
        } else {
            self.div_exact(&g)
        }
    }
}

impl fmt::Debug for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let show_mag = i == 0 || !mag.is_one();
            if show_mag {
                write!(f, "{mag}")?;
            }
            match i {
                0 => {}
                1 => write!(f, "x")?,
                _ => write!(f, "x^{i}")?,
            }
        }
        Ok(())
    }
}

impl Serialize for IntPoly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let strs: Vec<String> = self.coeffs.iter().map(ToString::to_string).collect();
        strs.serialize(s)
    }
}

impl<'de> Deserialize<'de> for IntPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let strs = Vec::<String>::deserialize(d)?;
        let coeffs = strs
            .iter()
            .map(|s| s.parse::<BigInt>().map_err(serde::de::Error::custom))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(IntPoly::new(coeffs))
    }
}

trait SignOrdering {
    fn sign_ordering(&self) -> Ordering;
}

impl SignOrdering for BigInt {
    fn sign_ordering(&self) -> Ordering {
        self.cmp(&BigInt::zero())
    }
}

/// Closed rational interval `[lo, hi]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalInterval {
    pub lo: BigRational,
    pub hi: BigRational,
}

impl RationalInterval {
    pub fn new(lo: BigRational, hi: BigRational) -> Self {
        debug_assert!(lo <= hi);
        RationalInterval { lo, hi }
    }

    pub fn point(x: BigRational) -> Self {
        RationalInterval { lo: x.clone(), hi: x }
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn contains(&self, x: &BigRational) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn overlaps(&self, other: &RationalInterval) -> bool {
        self.lo <= other.hi && other.lo <= self.hi
    }

    pub fn lo_f64(&self) -> f64 {
        rational_to_f64(&self.lo)
    }

    pub fn hi_f64(&self) -> f64 {
        rational_to_f64(&self.hi)
    }

    pub fn mid_f64(&self) -> f64 {
        0.5 * (self.lo_f64() + self.hi_f64())
    }
}

impl Serialize for RationalInterval {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("RationalInterval", 2)?;
        st.serialize_field("lo", &rational_string(&self.lo))?;
        st.serialize_field("hi", &rational_string(&self.hi))?;
        st.end()
    }
}

impl<'de> Deserialize<'de> for RationalInterval {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            lo: String,
            hi: String,
        }
        let raw = Raw::deserialize(d)?;
        let lo = parse_rational(&raw.lo).map_err(serde::de::Error::custom)?;
        let hi = parse_rational(&raw.hi).map_err(serde::de::Error::custom)?;
        Ok(RationalInterval { lo, hi })
    }
}

/// Always `p/q`, also for integers.
pub fn rational_string(x: &BigRational) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

pub fn parse_rational(s: &str) -> Result<BigRational, String> {
    let parse = |t: &str| t.trim().parse::<BigInt>().map_err(|e| format!("{t:?}: {e}"));
    match s.split_once('/') {
        Some((p, q)) => {
            let q = parse(q)?;
            if q.is_zero() {
                return Err("zero denominator".into());
            }
            Ok(BigRational::new(parse(p)?, q))
        }
        None => Ok(BigRational::from(parse(s)?)),
    }
}

pub fn rational_to_f64(x: &BigRational) -> f64 {
    use num_traits::ToPrimitive;
    x.to_f64().unwrap_or(f64::NAN)
}

/// Exact dyadic rational equal to `x`. Panics on non-finite input.
pub fn rational_from_f64(x: f64) -> BigRational {
    BigRational::from_float(x).expect("finite float")
}

/// Sturm chain of a squarefree polynomial.
#[derive(Clone, Debug)]
pub struct SturmChain {
    chain: Vec<IntPoly>,
}

impl SturmChain {
    /// Builds the chain of the squarefree part of `p`.
    pub fn new(p: &IntPoly) -> Self {
        let p0 = p.squarefree();
        let mut chain = vec![p0.clone()];
        if p0.degree().unwrap_or(0) == 0 {
            return SturmChain { chain };
        }
        let mut prev = p0;
        let mut cur = prev.derivative().primitive();
        while !cur.is_zero() {
            let next = prev.pseudo_rem(&cur);
            let next = IntPoly::new(next.coeffs.into_iter().map(|c| -c).collect());
            chain.push(cur.clone());
            prev = cur;
            cur = next;
        }
        SturmChain { chain }
    }

    pub fn poly(&self) -> &IntPoly {
        &self.chain[0]
    }

    fn variations<I: Iterator<Item = Ordering>>(signs: I) -> usize {
        let mut last = Ordering::Equal;
        let mut count = 0;
        for s in signs.filter(|s| *s != Ordering::Equal) {
            if last != Ordering::Equal && s != last {
                count += 1;
            }
            last = s;
        }
        count
    }

    fn variations_at(&self, x: &BigRational) -> usize {
        Self::variations(self.chain.iter().map(|p| p.sign_at(x)))
    }

    fn variations_at_infinity(&self, positive: bool) -> usize {
        Self::variations(self.chain.iter().map(|p| p.sign_at_infinity(positive)))
    }

    /// Number of distinct real roots in the half-open interval `(a, b]`.
    pub fn count_in(&self, a: &BigRational, b: &BigRational) -> usize {
        if a >= b {
            return 0;
        }
        self.variations_at(a).saturating_sub(self.variations_at(b))
    }

    /// Number of distinct real roots in `[a, b]`.
    pub fn count_closed(&self, a: &BigRational, b: &BigRational) -> usize {
        let at_a = (self.poly().sign_at(a) == Ordering::Equal) as usize;
        if a > b {
            0
        } else if a == b {
            at_a
        } else {
            self.count_in(a, b) + at_a
        }
    }

    /// Number of distinct real roots in `(a, +inf)`.
    pub fn count_above(&self, a: &BigRational) -> usize {
        self.variations_at(a).saturating_sub(self.variations_at_infinity(true))
    }

    pub fn count_real(&self) -> usize {
        self.variations_at_infinity(false)
            .saturating_sub(self.variations_at_infinity(true))
    }
}

/// An interval `[lo, hi]` isolating the largest real root of a squarefree
/// polynomial: the root lies in `(lo, hi]` (or equals `lo = hi`), no other
/// root lies in `[lo, hi]` and none lies above `hi`.
#[derive(Clone, Debug)]
pub struct LargestRoot {
    sturm: SturmChain,
    interval: RationalInterval,
}

impl LargestRoot {
    /// Isolates the largest real root of `p`.
    pub fn isolate(p: &IntPoly) -> Result<Self, SpectralError> {
        let sturm = SturmChain::new(p);
        let q = sturm.poly();
        if q.degree().unwrap_or(0) == 0 || sturm.count_real() == 0 {
            return Err(SpectralError::NoRealRoot);
        }
        // Cauchy bound: every root has |x| < 1 + max|c_i| / |c_d|
        let lc = q.leading().expect("nonzero").abs();
        let max = q.coeffs.iter().map(Signed::abs).max().expect("nonzero");
        let bound = BigRational::from(BigInt::one() + max.div_ceil(&lc));
        Self::isolate_within(sturm, -bound.clone(), bound)
    }

    /// Isolates the largest root given that it lies in `(lo, hi]` and no
    /// root exceeds `hi`. Returns `None` if that premise fails.
    pub fn isolate_bracketed(p: &IntPoly, lo: BigRational, hi: BigRational) -> Option<Self> {
        let sturm = SturmChain::new(p);
        if sturm.count_in(&lo, &hi) == 0 || sturm.count_above(&hi) != 0 {
            return None;
        }
        Self::isolate_within(sturm, lo, hi).ok()
    }

    fn isolate_within(sturm: SturmChain, mut lo: BigRational, mut hi: BigRational) -> Result<Self, SpectralError> {
        let two = BigRational::from(BigInt::from(2));
        if sturm.count_in(&lo, &hi) == 0 {
            return Err(SpectralError::NoRealRoot);
        }
        while sturm.count_in(&lo, &hi) > 1 {
            let mid = (&lo + &hi) / &two;
            if sturm.count_in(&mid, &hi) >= 1 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let mut root = LargestRoot {
            sturm,
            interval: RationalInterval::new(lo, hi),
        };
        root.settle();
        Ok(root)
    }

    /// Collapses to a point when `hi` is the root and moves `lo` off any
    /// smaller root sitting exactly on it.
    fn settle(&mut self) {
        if self.sturm.poly().sign_at(&self.interval.hi) == Ordering::Equal {
            self.interval.lo = self.interval.hi.clone();
            return;
        }
        while self.sturm.poly().sign_at(&self.interval.lo) == Ordering::Equal {
            self.bisect();
        }
    }

    fn bisect(&mut self) {
        if self.interval.lo == self.interval.hi {
            return;
        }
        let two = BigRational::from(BigInt::from(2));
        let mid = (&self.interval.lo + &self.interval.hi) / two;
        if self.sturm.count_in(&mid, &self.interval.hi) >= 1 {
            self.interval.lo = mid;
        } else {
            self.interval.hi = mid;
        }
    }

    /// Bisects until the width is at most `precision`.
    pub fn refine_to(&mut self, precision: &BigRational) {
        while &self.interval.width() > precision {
            self.bisect();
            self.settle();
        }
    }

    /// One bisection step.
    pub fn refine(&mut self) {
        self.bisect();
        self.settle();
    }

    pub fn interval(&self) -> &RationalInterval {
        &self.interval
    }

    pub fn into_interval(self) -> RationalInterval {
        self.interval
    }

    pub fn poly(&self) -> &IntPoly {
        self.sturm.poly()
    }

    pub fn is_exact(&self) -> bool {
        self.interval.lo == self.interval.hi
    }
}

/// Interval of width at most `precision` containing the largest real root of
/// `p` and no other root.
pub fn isolate_largest_root<P: AsRef<IntPoly> + ?Sized>(
    p: &P,
    precision: &BigRational,
) -> Result<RationalInterval, SpectralError> {
    let mut root = LargestRoot::isolate(p.as_ref())?;
    root.refine_to(precision);
    Ok(root.into_interval())
}
