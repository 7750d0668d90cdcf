//! Arbitrary-precision real arithmetic, exact rationals, elementary
//! functions, Bernoulli numbers and the named mathematical constants the
//! rest of the crate consumes.
//!
//! Reals are MPFR floats (via `rug`) wrapped in [`BigReal`], which carries
//! the decimal precision it was computed at. Every operation runs under a
//! [`PrecisionContext`]: `target_digits` requested by the caller plus
//! `guard_digits` of working headroom.

use std::collections::HashMap;
use std::sync::{LazyLock, Mutex};

use rug::float::Constant;
use rug::ops::{CompleteRound, Pow};
use rug::{Complete, Float, Integer};

use crate::error::{Error, Result};

/// Exact rational numbers, always in lowest terms with positive denominator.
pub type Rational = rug::Rational;

/// Shorthand for a rational from a numerator/denominator pair.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::from((num, den))
}

const MIN_TARGET_DIGITS: u32 = 10;
const MIN_GUARD_DIGITS: u32 = 10;

/// Decimal digits → MPFR bits, with headroom for rounding chains.
pub(crate) fn bits_for_digits(digits: u32) -> u32 {
    (digits as u64 * 3322 / 1000) as u32 + 24
}

/// Requested precision: target digits plus guard digits of working headroom.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrecisionContext {
    target_digits: u32,
    guard_digits: u32,
}

impl PrecisionContext {
    /// Context with the default guard policy `guard = max(15, target/4)`.
    pub fn new(target_digits: u32) -> Result<Self> {
        if target_digits < MIN_TARGET_DIGITS {
            return Err(Error::PrecisionTooLow {
                requested: target_digits,
                minimum: MIN_TARGET_DIGITS,
            });
        }
        Ok(Self {
            target_digits,
            guard_digits: (target_digits / 4).max(15),
        })
    }

    /// Context with an explicit guard-digit count (still at least 10 each).
    pub fn with_guard(target_digits: u32, guard_digits: u32) -> Result<Self> {
        if target_digits < MIN_TARGET_DIGITS {
            return Err(Error::PrecisionTooLow {
                requested: target_digits,
                minimum: MIN_TARGET_DIGITS,
            });
        }
        if guard_digits < MIN_GUARD_DIGITS {
            return Err(Error::PrecisionTooLow {
                requested: guard_digits,
                minimum: MIN_GUARD_DIGITS,
            });
        }
        Ok(Self {
            target_digits,
            guard_digits,
        })
    }

    pub fn target_digits(&self) -> u32 {
        self.target_digits
    }

    pub fn guard_digits(&self) -> u32 {
        self.guard_digits
    }

    /// All operations under this context carry `target + guard` digits.
    pub fn working_digits(&self) -> u32 {
        self.target_digits + self.guard_digits
    }

    pub fn working_bits(&self) -> u32 {
        bits_for_digits(self.working_digits())
    }

    /// Same target, `extra` more guard digits (dual-evaluation checks).
    pub fn bump(&self, extra: u32) -> Self {
        Self {
            target_digits: self.target_digits,
            guard_digits: self.guard_digits + extra,
        }
    }

    pub fn zero(&self) -> BigReal {
        BigReal::raw(Float::with_val(self.working_bits(), 0), self.working_digits())
    }

    pub fn one(&self) -> BigReal {
        self.int(1)
    }

    pub fn int(&self, n: i64) -> BigReal {
        BigReal::raw(Float::with_val(self.working_bits(), n), self.working_digits())
    }

    pub fn uint(&self, n: u64) -> BigReal {
        BigReal::raw(Float::with_val(self.working_bits(), n), self.working_digits())
    }

    pub fn rat(&self, q: &Rational) -> BigReal {
        BigReal::raw(Float::with_val(self.working_bits(), q), self.working_digits())
    }

    /// `10^(-(target_digits + extra))`, the usual stopping threshold.
    pub fn eps(&self, extra: i32) -> BigReal {
        let e = -(self.target_digits as i32 + extra);
        BigReal::raw(
            Float::with_val(self.working_bits(), 10).pow(e),
            self.working_digits(),
        )
    }
}

/// An arbitrary-precision real together with the decimal precision it was
/// computed at. Values are finite by construction; operations that could
/// produce infinities or NaN go through [`BigReal::checked`].
#[derive(Clone, Debug)]
pub struct BigReal {
    f: Float,
    digits: u32,
}

impl BigReal {
    pub(crate) fn raw(f: Float, digits: u32) -> Self {
        Self { f, digits }
    }

    pub fn float(&self) -> &Float {
        &self.f
    }

    pub fn into_float(self) -> Float {
        self.f
    }

    /// Decimal digits this value was computed at.
    pub fn precision_digits(&self) -> u32 {
        self.digits
    }

    pub fn is_zero(&self) -> bool {
        self.f.is_zero()
    }

    pub fn is_finite(&self) -> bool {
        self.f.is_finite()
    }

    pub fn is_sign_negative(&self) -> bool {
        self.f.is_sign_negative() && !self.f.is_zero()
    }

    /// Error out unless the value is finite.
    pub fn checked(self, op: &str) -> Result<Self> {
        if self.f.is_finite() {
            Ok(self)
        } else {
            Err(Error::NonFinite { op: op.to_string() })
        }
    }

    fn lift(&self, f: Float) -> BigReal {
        BigReal::raw(f, self.digits)
    }

    fn join_digits(&self, other: &BigReal) -> u32 {
        self.digits.max(other.digits)
    }

    pub fn abs(&self) -> BigReal {
        self.lift(self.f.clone().abs())
    }

    pub fn floor(&self) -> BigReal {
        self.lift(self.f.clone().floor())
    }

    pub fn exp(&self) -> BigReal {
        self.lift(self.f.clone().exp())
    }

    pub fn ln(&self) -> BigReal {
        self.lift(self.f.clone().ln())
    }

    pub fn log10(&self) -> BigReal {
        self.lift(self.f.clone().log10())
    }

    pub fn sqrt(&self) -> BigReal {
        self.lift(self.f.clone().sqrt())
    }

    pub fn cosh(&self) -> BigReal {
        self.lift(self.f.clone().cosh())
    }

    pub fn sinh(&self) -> BigReal {
        self.lift(self.f.clone().sinh())
    }

    pub fn tanh(&self) -> BigReal {
        self.lift(self.f.clone().tanh())
    }

    pub fn atanh(&self) -> BigReal {
        self.lift(self.f.clone().atanh())
    }

    pub fn sin(&self) -> BigReal {
        self.lift(self.f.clone().sin())
    }

    pub fn cos(&self) -> BigReal {
        self.lift(self.f.clone().cos())
    }

    pub fn atan(&self) -> BigReal {
        self.lift(self.f.clone().atan())
    }

    pub fn recip(&self) -> BigReal {
        self.lift(self.f.clone().recip())
    }

    /// Integer power (any sign of exponent).
    pub fn pow_i(&self, e: i32) -> BigReal {
        self.lift(self.f.clone().pow(e))
    }

    /// Real power; caller is responsible for the domain.
    pub fn pow_real(&self, e: &BigReal) -> BigReal {
        let prec = self.f.prec().max(e.f.prec());
        BigReal::raw(
            Float::with_val(prec, (&self.f).pow(&e.f)),
            self.join_digits(e),
        )
    }

    pub fn min(&self, other: &BigReal) -> BigReal {
        if self.f <= other.f {
            self.clone()
        } else {
            other.clone()
        }
    }

    pub fn max(&self, other: &BigReal) -> BigReal {
        if self.f >= other.f {
            self.clone()
        } else {
            other.clone()
        }
    }

    pub fn to_f64(&self) -> f64 {
        self.f.to_f64()
    }

    /// Decimal string with `digits` significant digits (MPFR format,
    /// possibly with an `e` exponent); round-trips through [`BigReal::parse`].
    pub fn to_decimal(&self, digits: u32) -> String {
        self.f.to_string_radix(10, Some(digits as usize))
    }

    /// Parse a decimal string at the context's working precision.
    pub fn parse(s: &str, ctx: &PrecisionContext) -> Result<BigReal> {
        let parsed = Float::parse(s).map_err(|e| Error::ExprParse(format!("{s}: {e}")))?;
        Ok(BigReal::raw(
            Float::with_val(ctx.working_bits(), parsed),
            ctx.working_digits(),
        ))
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident, $op:tt) => {
        impl std::ops::$trait<&BigReal> for &BigReal {
            type Output = BigReal;
            fn $method(self, rhs: &BigReal) -> BigReal {
                let prec = self.f.prec().max(rhs.f.prec());
                BigReal::raw(
                    (&self.f $op &rhs.f).complete(prec),
                    self.join_digits(rhs),
                )
            }
        }
        impl std::ops::$trait<BigReal> for BigReal {
            type Output = BigReal;
            fn $method(self, rhs: BigReal) -> BigReal {
                (&self) $op (&rhs)
            }
        }
        impl std::ops::$trait<&BigReal> for BigReal {
            type Output = BigReal;
            fn $method(self, rhs: &BigReal) -> BigReal {
                (&self) $op rhs
            }
        }
        impl std::ops::$trait<BigReal> for &BigReal {
            type Output = BigReal;
            fn $method(self, rhs: BigReal) -> BigReal {
                self $op (&rhs)
            }
        }
    };
}

binop!(Add, add, +);
binop!(Sub, sub, -);
binop!(Mul, mul, *);
binop!(Div, div, /);

impl std::ops::Neg for &BigReal {
    type Output = BigReal;
    fn neg(self) -> BigReal {
        self.lift((-&self.f).complete(self.f.prec()))
    }
}

impl std::ops::Neg for BigReal {
    type Output = BigReal;
    fn neg(self) -> BigReal {
        -(&self)
    }
}

impl PartialEq for BigReal {
    fn eq(&self, other: &Self) -> bool {
        self.f == other.f
    }
}

impl PartialOrd for BigReal {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        self.f.partial_cmp(&other.f)
    }
}

impl std::fmt::Display for BigReal {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.to_decimal(self.digits))
    }
}

/// Number of leading significant decimal digits on which `a` and `b`
/// agree: `floor(-log10(|a-b| / max(|a|,|b|,1)))`, with a large sentinel
/// (the operand precision) when they are exactly equal.
pub fn agree_digits(a: &BigReal, b: &BigReal) -> u32 {
    let sentinel = a.precision_digits().max(b.precision_digits());
    let diff = (a - b).abs();
    if diff.is_zero() {
        return sentinel;
    }
    let scale_bits = a.float().prec().max(b.float().prec());
    let one = Float::with_val(scale_bits, 1);
    let mut scale = a.float().clone().abs();
    let babs = b.float().clone().abs();
    if babs > scale {
        scale = babs;
    }
    if one > scale {
        scale = one;
    }
    let r = Float::with_val(scale_bits, diff.float() / &scale);
    let d = -r.log10();
    let d = d.floor().to_f64();
    if d.is_nan() || d < 0.0 {
        0
    } else if d as u64 >= sentinel as u64 {
        sentinel
    } else {
        d as u32
    }
}

/// The single-argument elementary functions of the kernel.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ElementaryFn {
    Exp,
    Log,
    Sqrt,
    Cosh,
    Atanh,
}

/// Evaluate an elementary function with domain checking.
pub fn elementary(f: ElementaryFn, x: &BigReal, ctx: &PrecisionContext) -> Result<BigReal> {
    let x = BigReal::raw(
        Float::with_val(ctx.working_bits(), x.float()),
        ctx.working_digits(),
    );
    let bad = |name: &'static str| Error::Domain {
        func: name,
        arg: x.to_decimal(20),
    };
    let out = match f {
        ElementaryFn::Exp => x.exp(),
        ElementaryFn::Log => {
            if x.float() <= &0 {
                return Err(bad("log"));
            }
            x.ln()
        }
        ElementaryFn::Sqrt => {
            if x.float() < &0 {
                return Err(bad("sqrt"));
            }
            x.sqrt()
        }
        ElementaryFn::Cosh => x.cosh(),
        ElementaryFn::Atanh => {
            if x.float() <= &-1 || x.float() >= &1 {
                return Err(bad("atanh"));
            }
            x.atanh()
        }
    };
    out.checked("elementary")
}

/// `x^y` with domain checking: `x > 0`, or `x` arbitrary with integer `y`.
pub fn pow(x: &BigReal, y: &BigReal, ctx: &PrecisionContext) -> Result<BigReal> {
    if x.float() <= &0 && !y.float().is_integer() {
        return Err(Error::Domain {
            func: "pow",
            arg: format!("{}^{}", x.to_decimal(20), y.to_decimal(20)),
        });
    }
    let bits = ctx.working_bits();
    let xf = Float::with_val(bits, x.float());
    let yf = Float::with_val(bits, y.float());
    BigReal::raw(Float::with_val(bits, xf.pow(&yf)), ctx.working_digits()).checked("pow")
}

/// The named constants of the catalog.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ConstantName {
    /// Euler–Mascheroni constant γ.
    EulerGamma,
    /// π.
    Pi,
    /// log 2.
    LogTwo,
    /// Glaisher–Kinkelin constant A.
    Glaisher,
    /// Catalan constant G = β(2).
    Catalan,
    /// Lemniscate constant ϖ = π / agm(1, √2).
    Lemniscate,
    /// Gieseking constant κ, via ψ⁽¹⁾(1/3) = 2√3·κ + 2π²/3.
    Gieseking,
    /// Euler–Gompertz constant δ = −e·Ei(−1).
    EulerGompertz,
}

impl ConstantName {
    pub const ALL: [ConstantName; 8] = [
        ConstantName::EulerGamma,
        ConstantName::Pi,
        ConstantName::LogTwo,
        ConstantName::Glaisher,
        ConstantName::Catalan,
        ConstantName::Lemniscate,
        ConstantName::Gieseking,
        ConstantName::EulerGompertz,
    ];

    pub fn label(&self) -> &'static str {
        match self {
            ConstantName::EulerGamma => "gamma",
            ConstantName::Pi => "pi",
            ConstantName::LogTwo => "log2",
            ConstantName::Glaisher => "glaisher",
            ConstantName::Catalan => "catalan",
            ConstantName::Lemniscate => "lemniscate",
            ConstantName::Gieseking => "gieseking",
            ConstantName::EulerGompertz => "gompertz",
        }
    }

    pub fn from_label(s: &str) -> Option<ConstantName> {
        ConstantName::ALL.into_iter().find(|c| c.label() == s)
    }
}

static CONST_CACHE: LazyLock<Mutex<HashMap<(ConstantName, u32), Float>>> =
    LazyLock::new(|| Mutex::new(HashMap::new()));

/// A named constant, correct to the context's target digits. Results are
/// cached per (name, working precision).
pub fn constant(name: ConstantName, ctx: &PrecisionContext) -> Result<BigReal> {
    let bits = ctx.working_bits();
    if let Some(f) = CONST_CACHE.lock().unwrap().get(&(name, bits)) {
        return Ok(BigReal::raw(f.clone(), ctx.working_digits()));
    }
    let f = compute_constant(name, ctx)?;
    CONST_CACHE
        .lock()
        .unwrap()
        .insert((name, bits), f.clone());
    Ok(BigReal::raw(f, ctx.working_digits()))
}

fn compute_constant(name: ConstantName, ctx: &PrecisionContext) -> Result<Float> {
    let bits = ctx.working_bits();
    // The derived constants are assembled at a slightly higher precision
    // and rounded down to the cache precision.
    let inner = ctx.bump(10);
    let ibits = inner.working_bits();
    let f = match name {
        ConstantName::Pi => Float::with_val(bits, Constant::Pi),
        ConstantName::EulerGamma => Float::with_val(bits, Constant::Euler),
        ConstantName::LogTwo => Float::with_val(bits, Constant::Log2),
        ConstantName::Catalan => Float::with_val(bits, Constant::Catalan),
        ConstantName::Lemniscate => {
            let pi = Float::with_val(ibits, Constant::Pi);
            let sqrt2 = Float::with_val(ibits, 2).sqrt();
            let agm = Float::with_val(ibits, 1).agm(&sqrt2);
            Float::with_val(bits, pi / agm)
        }
        ConstantName::Glaisher => {
            // log A = (γ + log 2π)/12 − ζ′(2)/(2π²)
            let gamma = Float::with_val(ibits, Constant::Euler);
            let pi = Float::with_val(ibits, Constant::Pi);
            let log2pi = Float::with_val(ibits, 2 * pi.clone()).ln();
            let zp2 = crate::specfun::zeta_prime_int(2, &inner)?;
            let log_a: Float =
                (gamma + log2pi) / 12 - zp2.float() / (2 * pi.square_ref().complete(ibits));
            Float::with_val(bits, log_a.exp())
        }
        ConstantName::Gieseking => {
            let third = inner.rat(&rat(1, 3));
            let psi1 = crate::specfun::polygamma(1, &third, &inner)?;
            let pi = Float::with_val(ibits, Constant::Pi);
            let sqrt3 = Float::with_val(ibits, 3).sqrt();
            let k: Float = (psi1.float() - 2 * pi.square_ref().complete(ibits) / 3)
                / (2 * sqrt3);
            Float::with_val(bits, k)
        }
        ConstantName::EulerGompertz => {
            let minus_one = inner.int(-1);
            let ei = crate::specfun::ei(&minus_one, &inner)?;
            let e = Float::with_val(ibits, 1).exp();
            Float::with_val(bits, -e * ei.float())
        }
    };
    if !f.is_finite() {
        return Err(Error::NonFinite {
            op: format!("constant {}", name.label()),
        });
    }
    Ok(f)
}

static BERNOULLI_CACHE: LazyLock<Mutex<Vec<Rational>>> = LazyLock::new(|| {
    Mutex::new(vec![Rational::from(1)])
});

/// Exact Bernoulli number `B_n` (convention `B_1 = -1/2`).
pub fn bernoulli(n: u32) -> Rational {
    let mut cache = BERNOULLI_CACHE.lock().unwrap();
    while cache.len() <= n as usize {
        let m = cache.len() as u32;
        // From Σ_{k=0}^{m} C(m+1,k) B_k = 0 (m ≥ 1).
        if m % 2 == 1 && m > 1 {
            cache.push(Rational::new());
            continue;
        }
        let mut acc = Rational::new();
        for (k, bk) in cache.iter().enumerate() {
            if bk.cmp0() == std::cmp::Ordering::Equal {
                continue;
            }
            let c = Integer::binomial_u(m + 1, k as u32).complete();
            acc += (bk * &c).complete();
        }
        acc /= -Rational::from(m + 1);
        cache.push(acc);
    }
    cache[n as usize].clone()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(d: u32) -> PrecisionContext {
        PrecisionContext::new(d).unwrap()
    }

    #[test]
    fn context_policy() {
        let c = ctx(50);
        assert_eq!(c.working_digits(), 65);
        let c = ctx(10);
        assert_eq!(c.working_digits(), 25);
        assert!(PrecisionContext::new(5).is_err());
    }

    #[test]
    fn agree_digits_examples() {
        let c = ctx(40);
        let a = BigReal::parse("1.0000", &c).unwrap();
        let b = BigReal::parse("1.0001", &c).unwrap();
        assert_eq!(agree_digits(&a, &b), 4);
        // identical values hit the sentinel
        let x = BigReal::parse("2.718281828", &c).unwrap();
        assert!(agree_digits(&x, &x.clone()) >= c.working_digits());
        // zero vs 1e-30 normalises against 1
        let z = c.zero();
        let t = BigReal::parse("1e-30", &c).unwrap();
        assert_eq!(agree_digits(&z, &t), 30);
    }

    #[test]
    fn bernoulli_small_values() {
        assert_eq!(bernoulli(0), Rational::from(1));
        assert_eq!(bernoulli(1), rat(-1, 2));
        assert_eq!(bernoulli(2), rat(1, 6));
        assert_eq!(bernoulli(3), Rational::new());
        assert_eq!(bernoulli(4), rat(-1, 30));
        assert_eq!(bernoulli(12), rat(-691, 2730));
    }

    #[test]
    fn bernoulli_recurrence_holds() {
        // Σ_{k=0}^{n} C(n+1,k) B_k = 0 for 1 ≤ n ≤ 40
        for n in 1..=40u32 {
            let mut acc = Rational::new();
            for k in 0..=n {
                let c = Integer::binomial_u(n + 1, k).complete();
                acc += bernoulli(k) * c;
            }
            assert_eq!(acc, Rational::new(), "recurrence fails at n={n}");
        }
    }

    #[test]
    fn elementary_domains() {
        let c = ctx(30);
        assert!(elementary(ElementaryFn::Atanh, &c.zero(), &c)
            .unwrap()
            .is_zero());
        let m1 = c.int(-1);
        assert!(matches!(
            elementary(ElementaryFn::Log, &m1, &c),
            Err(Error::Domain { func: "log", .. })
        ));
        assert!(elementary(ElementaryFn::Sqrt, &m1, &c).is_err());
        assert!(elementary(ElementaryFn::Atanh, &c.int(1), &c).is_err());
    }

    #[test]
    fn cosh_one_matches_power_series() {
        // independent oracle: cosh(1) = Σ 1/(2k)!
        let c = ctx(40);
        let mut acc = c.zero();
        let mut term = c.one();
        let mut k = 0u32;
        while !term.is_zero() && term.abs() > c.eps(10) {
            acc = &acc + &term;
            let d = ((2 * k + 1) * (2 * k + 2)) as i64;
            term = &term / &c.int(d);
            k += 1;
        }
        let got = elementary(ElementaryFn::Cosh, &c.one(), &c).unwrap();
        assert!(agree_digits(&acc, &got) >= c.target_digits());
    }

    #[test]
    fn pi_against_machin_oracle() {
        // π = 16·atan(1/5) − 4·atan(1/239)
        let c = ctx(50);
        let atan = |inv: i64| c.int(inv).recip().atan();
        let machin = &(&atan(5) * &c.int(16)) - &(&atan(239) * &c.int(4));
        let pi = constant(ConstantName::Pi, &c).unwrap();
        assert!(agree_digits(&machin, &pi) >= 50);
    }

    #[test]
    fn atanh_is_half_log_ratio() {
        let c = ctx(40);
        for k in 1..20 {
            let x = c.rat(&rat(2 * k - 20, 21)); // spread in (-0.9, 0.9)
            if x.is_zero() {
                continue;
            }
            let lhs = elementary(ElementaryFn::Atanh, &x, &c).unwrap();
            let one = c.one();
            let rhs = &(&(&one + &x).ln() - &(&one - &x).ln()) / &c.int(2);
            assert!(agree_digits(&lhs, &rhs) >= c.target_digits());
        }
    }
}
