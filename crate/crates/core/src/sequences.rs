//! Exact harmonic-type sequences, tails, rising factorials, fractional
//! parts, and the generating functions built on them.
//!
//! Finite values (`harmonic`, `gen_harmonic`, `skew_harmonic`) are exact
//! rationals from an incrementally grown cache. Series loops instead use
//! the [`streams`] helpers, which accumulate in `BigReal` at working
//! precision (exact rationals at n ~ 10⁴ are impractically large).

use std::collections::HashMap;
use std::sync::{LazyLock, Mutex};

use rug::ops::Pow;
use rug::{Complete, Float};

use crate::error::{Error, Result};
use crate::numkernel::{BigReal, PrecisionContext, Rational};
use crate::specfun;

static PLAIN: LazyLock<Mutex<Vec<Rational>>> = LazyLock::new(|| Mutex::new(vec![Rational::new()]));
static SKEW: LazyLock<Mutex<Vec<Rational>>> = LazyLock::new(|| Mutex::new(vec![Rational::new()]));
static GENERAL: LazyLock<Mutex<HashMap<u32, Vec<Rational>>>> =
    LazyLock::new(|| Mutex::new(HashMap::new()));

fn grow(table: &mut Vec<Rational>, n: u64, step: impl Fn(u64) -> Rational) {
    while (table.len() as u64) <= n {
        let m = table.len() as u64;
        let next = (table.last().unwrap() + step(m)).complete();
        table.push(next);
    }
}

/// Exact harmonic number `H_n = 1 + 1/2 + … + 1/n`.
pub fn harmonic(n: u64) -> Result<Rational> {
    if n < 1 {
        return Err(Error::Domain {
            func: "harmonic",
            arg: n.to_string(),
        });
    }
    let mut t = PLAIN.lock().unwrap();
    grow(&mut t, n, |m| Rational::from((1, m)));
    Ok(t[n as usize].clone())
}

/// Exact generalized harmonic number `H_n^(p) = Σ_{j≤n} 1/j^p`.
pub fn gen_harmonic(n: u64, p: u32) -> Result<Rational> {
    if n < 1 || p < 1 {
        return Err(Error::Domain {
            func: "gen_harmonic",
            arg: format!("n={n}, p={p}"),
        });
    }
    if p == 1 {
        return harmonic(n);
    }
    let mut map = GENERAL.lock().unwrap();
    let t = map.entry(p).or_insert_with(|| vec![Rational::new()]);
    grow(t, n, |m| {
        let d = rug::Integer::from(m).pow(p);
        Rational::from((rug::Integer::from(1), d))
    });
    Ok(t[n as usize].clone())
}

/// Exact skew-harmonic number `H̄_n = Σ_{j≤n} (-1)^(j-1)/j`.
pub fn skew_harmonic(n: u64) -> Result<Rational> {
    if n < 1 {
        return Err(Error::Domain {
            func: "skew_harmonic",
            arg: n.to_string(),
        });
    }
    let mut t = SKEW.lock().unwrap();
    grow(&mut t, n, |m| {
        if m % 2 == 1 {
            Rational::from((1, m))
        } else {
            -Rational::from((1, m))
        }
    });
    Ok(t[n as usize].clone())
}

/// Rising factorial `z(z+1)…(z+k-1)`.
pub fn pochhammer_rising(z: &BigReal, k: u64) -> Result<BigReal> {
    if k < 1 {
        return Err(Error::Domain {
            func: "pochhammer_rising",
            arg: format!("k={k}"),
        });
    }
    let mut acc = z.clone();
    let digits = z.precision_digits();
    let bits = z.float().prec();
    for j in 1..k {
        let f = (z.float() + Float::with_val(bits, j)).complete(bits);
        acc = &acc * &BigReal::raw(f, digits);
    }
    acc.checked("pochhammer_rising")
}

/// Series tail `ζ(p) - H_n^(p)`, strictly positive and decreasing in n.
pub fn tail_zeta(p: u32, n: u64, ctx: &PrecisionContext) -> Result<BigReal> {
    if p < 2 || n < 1 {
        return Err(Error::Domain {
            func: "tail_zeta",
            arg: format!("p={p}, n={n}"),
        });
    }
    let z = specfun::zeta_int(p as i64, ctx)?;
    let h = ctx.rat(&gen_harmonic(n, p)?);
    (&z - &h).checked("tail_zeta")
}

/// Exponential tail `e^y - Σ_{j≤n} y^j/j!`, evaluated as the remainder
/// series `Σ_{j>n} y^j/j!` so no cancellation occurs.
pub fn exp_tail(y: &BigReal, n: u64, ctx: &PrecisionContext) -> Result<BigReal> {
    if y.is_zero() {
        return Ok(ctx.zero());
    }
    let bits = ctx.working_bits();
    let y = Float::with_val(bits, y.float());
    // term = y^(n+1)/(n+1)!
    let mut term = Float::with_val(bits, 1);
    for j in 1..=(n + 1) {
        term *= &y;
        term /= Float::with_val(bits, j);
    }
    let mut acc = Float::with_val(bits, 0);
    let mut j = n + 1;
    let cut = Float::with_val(bits, ctx.eps(ctx.guard_digits() as i32).float());
    loop {
        acc += &term;
        j += 1;
        term *= &y;
        term /= Float::with_val(bits, j);
        let mut scale = acc.clone().abs();
        if scale < 1 {
            scale = Float::with_val(bits, 1);
        }
        if term.clone().abs() < cut.clone() * scale {
            acc += &term;
            break;
        }
    }
    BigReal::raw(acc, ctx.working_digits()).checked("exp_tail")
}

/// Fractional part `{n! e} = n!(e - 1 - 1/1! - … - 1/n!)`, in (0, 1).
pub fn frac_ne(n: u64, ctx: &PrecisionContext) -> Result<BigReal> {
    if n < 1 {
        return Err(Error::Domain {
            func: "frac_ne",
            arg: n.to_string(),
        });
    }
    let tail = exp_tail(&ctx.one(), n, ctx)?;
    let bits = ctx.working_bits();
    let mut fact = Float::with_val(bits, 1);
    for j in 2..=n {
        fact *= Float::with_val(bits, j);
    }
    (&BigReal::raw(fact, ctx.working_digits()) * &tail).checked("frac_ne")
}

/// Generating function `Σ_{n≥1} (ζ(2) - H_n^(2)) x^n = (xζ(2) - Li₂(x))/(1-x)`
/// for `x ∈ [-1, 1)`; returns 0 at `x = 0`.
pub fn gf_tail_zeta2(x: &BigReal, ctx: &PrecisionContext) -> Result<BigReal> {
    if x.float() >= &1 || x.float() < &-1 {
        return Err(Error::Domain {
            func: "gf_tail_zeta2",
            arg: x.to_decimal(20),
        });
    }
    if x.is_zero() {
        return Ok(ctx.zero());
    }
    let one = ctx.one();
    let z2 = specfun::zeta_int(2, ctx)?;
    let li2 = specfun::polylog(2, x, ctx)?;
    ((&(&(x * &z2) - &li2)) / &(&one - x)).checked("gf_tail_zeta2")
}

/// Generating function `Σ_{n≥1} (ζ(3) - H_n^(3)) x^n/n`:
/// `log(1-x)[Li₃(x) - ζ(3)] - Li₄(x) + Li₂²(x)/2` for `x ∈ [-1, 1)`,
/// and `ζ(4)/4` at the branch point `x = 1`.
pub fn gf_tail_zeta3_over_n(x: &BigReal, ctx: &PrecisionContext) -> Result<BigReal> {
    if x.float() > &1 || x.float() < &-1 {
        return Err(Error::Domain {
            func: "gf_tail_zeta3_over_n",
            arg: x.to_decimal(20),
        });
    }
    if x.is_zero() {
        return Ok(ctx.zero());
    }
    if x.float() == &1 {
        let z4 = specfun::zeta_int(4, ctx)?;
        return Ok(&z4 / &ctx.int(4));
    }
    let one = ctx.one();
    let z3 = specfun::zeta_int(3, ctx)?;
    let li2 = specfun::polylog(2, x, ctx)?;
    let li3 = specfun::polylog(3, x, ctx)?;
    let li4 = specfun::polylog(4, x, ctx)?;
    let log1mx = (&one - x).ln();
    let out = &(&(&log1mx * &(&li3 - &z3)) - &li4) + &(&(&li2 * &li2) / &ctx.int(2));
    out.checked("gf_tail_zeta3_over_n")
}

/// Generating function `Σ_{n≥0} (e^y - Σ_{j≤n} y^j/j!) x^n`:
/// `(e^y - e^{xy})/(1-x)` for `x ≠ 1`, `y·e^y` at `x = 1`.
pub fn gf_exp_tail(x: &BigReal, y: &BigReal, ctx: &PrecisionContext) -> Result<BigReal> {
    if x.float() < &0 || x.float() > &1 {
        return Err(Error::Domain {
            func: "gf_exp_tail",
            arg: x.to_decimal(20),
        });
    }
    if x.float() == &1 {
        return (y * &y.exp()).checked("gf_exp_tail");
    }
    let ey = y.exp();
    let exy = (x * y).exp();
    ((&(&ey - &exy)) / &(&ctx.one() - x)).checked("gf_exp_tail")
}

/// Incremental `BigReal` accumulators for series term generators.
pub mod streams {
    use super::*;
    use std::sync::Arc;

    type StepFn = Arc<dyn Fn(u64, &Float, u32) -> Float + Send + Sync>;
    type InitFn = Arc<dyn Fn(u32, &PrecisionContext) -> Result<Float> + Send + Sync>;

    /// A sequence defined by `v_0 = init`, `v_n = step(n, v_{n-1})`,
    /// cached per working precision.
    pub struct RecurrenceStream {
        init: InitFn,
        step: StepFn,
        state: Mutex<HashMap<u32, Vec<Float>>>,
    }

    impl RecurrenceStream {
        pub fn new(init: InitFn, step: StepFn) -> Self {
            Self {
                init,
                step,
                state: Mutex::new(HashMap::new()),
            }
        }

        pub fn value(&self, n: u64, ctx: &PrecisionContext) -> Result<BigReal> {
            let bits = ctx.working_bits();
            let mut state = self.state.lock().unwrap();
            if !state.contains_key(&bits) {
                state.insert(bits, vec![(self.init)(bits, ctx)?]);
            }
            let tape = state.get_mut(&bits).unwrap();
            while (tape.len() as u64) <= n {
                let m = tape.len() as u64;
                let next = (self.step)(m, tape.last().unwrap(), bits);
                tape.push(next);
            }
            Ok(BigReal::raw(tape[n as usize].clone(), ctx.working_digits()))
        }
    }

    /// `H_n` accumulated in floating point.
    pub fn harmonic_stream() -> RecurrenceStream {
        RecurrenceStream::new(
            Arc::new(|bits, _| Ok(Float::with_val(bits, 0))),
            Arc::new(|n, prev, bits| (prev + Float::with_val(bits, n).recip_ref()).complete(bits)),
        )
    }

    /// `H_n^(p)` accumulated in floating point.
    pub fn gen_harmonic_stream(p: u32) -> RecurrenceStream {
        RecurrenceStream::new(
            Arc::new(|bits, _| Ok(Float::with_val(bits, 0))),
            Arc::new(move |n, prev, bits| {
                (prev + Float::with_val(bits, n).pow(p as i32).recip_ref()).complete(bits)
            }),
        )
    }

    /// `H̄_n` accumulated in floating point.
    pub fn skew_harmonic_stream() -> RecurrenceStream {
        RecurrenceStream::new(
            Arc::new(|bits, _| Ok(Float::with_val(bits, 0))),
            Arc::new(|n, prev, bits| {
                let t = Float::with_val(bits, n).recip();
                if n % 2 == 1 {
                    (prev + t).complete(bits)
                } else {
                    (prev - t).complete(bits)
                }
            }),
        )
    }

    /// Skew remainder `r_n = ∫₀¹ xⁿ/(1+x) dx`, satisfying
    /// `H̄_n = log 2 - (-1)^n r_n`, via the stable two-term recurrence
    /// `r_n = 1/n - r_{n-1}` with `r_0 = log 2`.
    pub fn skew_remainder_stream() -> RecurrenceStream {
        RecurrenceStream::new(
            Arc::new(|bits, _| Ok(Float::with_val(bits, rug::float::Constant::Log2))),
            Arc::new(|n, prev, bits| (Float::with_val(bits, n).recip() - prev).complete(bits)),
        )
    }

    /// Tail `ζ(p) - H_n^(p)` accumulated by subtracting `1/n^p` from `ζ(p)`.
    pub fn tail_zeta_stream(p: u32) -> RecurrenceStream {
        RecurrenceStream::new(
            Arc::new(move |_bits, ctx| Ok(specfun::zeta_int(p as i64, ctx)?.into_float())),
            Arc::new(move |n, prev, bits| {
                (prev - Float::with_val(bits, n).pow(p as i32).recip_ref()).complete(bits)
            }),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numkernel::{agree_digits, rat};

    fn ctx(d: u32) -> PrecisionContext {
        PrecisionContext::new(d).unwrap()
    }

    #[test]
    fn harmonic_values() {
        assert_eq!(harmonic(1).unwrap(), Rational::from(1));
        assert_eq!(harmonic(3).unwrap(), rat(11, 6));
        assert_eq!(harmonic(6).unwrap(), rat(49, 20));
        assert!(harmonic(0).is_err());
    }

    #[test]
    fn gen_harmonic_values() {
        assert_eq!(gen_harmonic(2, 2).unwrap(), rat(5, 4));
        assert_eq!(gen_harmonic(5, 1).unwrap(), harmonic(5).unwrap());
        assert_eq!(gen_harmonic(3, 3).unwrap(), rat(251, 216));
        assert!(gen_harmonic(3, 0).is_err());
    }

    #[test]
    fn skew_values() {
        assert_eq!(skew_harmonic(1).unwrap(), Rational::from(1));
        assert_eq!(skew_harmonic(2).unwrap(), rat(1, 2));
        assert_eq!(skew_harmonic(4).unwrap(), rat(7, 12));
    }

    #[test]
    fn harmonic_differences() {
        for n in 2..40u64 {
            let d = harmonic(n).unwrap() - harmonic(n - 1).unwrap();
            assert_eq!(d, Rational::from((1, n)));
            let d = skew_harmonic(n).unwrap() - skew_harmonic(n - 1).unwrap();
            let expect = if n % 2 == 1 {
                Rational::from((1, n))
            } else {
                -Rational::from((1, n))
            };
            assert_eq!(d, expect);
            let d = gen_harmonic(n, 3).unwrap() - gen_harmonic(n - 1, 3).unwrap();
            assert_eq!(
                d,
                Rational::from((rug::Integer::from(1), rug::Integer::from(n).pow(3)))
            );
        }
    }

    #[test]
    fn pochhammer_values() {
        let c = ctx(30);
        let p = pochhammer_rising(&c.one(), 3).unwrap();
        assert!(agree_digits(&p, &c.int(6)) >= 25);
        let x = c.rat(&rat(7, 3));
        let p = pochhammer_rising(&x, 1).unwrap();
        assert!(agree_digits(&p, &x) >= 25);
        let p = pochhammer_rising(&c.rat(&rat(1, 2)), 2).unwrap();
        assert!(agree_digits(&p, &c.rat(&rat(3, 4))) >= 25);
        assert!(pochhammer_rising(&c.one(), 0).is_err());
    }

    #[test]
    fn exp_tail_examples() {
        let c = ctx(35);
        assert!(exp_tail(&c.zero(), 7, &c).unwrap().is_zero());
        let e = c.one().exp();
        let got = exp_tail(&c.one(), 0, &c).unwrap();
        assert!(agree_digits(&got, &(&e - &c.one())) >= 30);
        // exp_tail(1, 3) = e - 8/3
        let got = exp_tail(&c.one(), 3, &c).unwrap();
        let want = &e - &c.rat(&rat(8, 3));
        assert!(agree_digits(&got, &want) >= 30);
    }

    #[test]
    fn exp_tail_lagrange_bound() {
        // |exp_tail(y,n)| ≤ e^{|y|} |y|^{n+1}/(n+1)!
        let c = ctx(30);
        for y in [rat(-3, 1), rat(-1, 1), rat(1, 2), rat(2, 1)] {
            let y = c.rat(&y);
            for n in 0..=20u64 {
                let t = exp_tail(&y, n, &c).unwrap().abs();
                let mut bound = y.abs().exp();
                for j in 1..=(n + 1) {
                    bound = &(&bound * &y.abs()) / &c.uint(j);
                }
                assert!(
                    t <= &bound * &c.rat(&rat(1001, 1000)),
                    "bound violated at y={}, n={n}",
                    y.to_decimal(5)
                );
            }
        }
    }

    #[test]
    fn frac_ne_examples() {
        let c = ctx(35);
        let e = c.one().exp();
        let got = frac_ne(1, &c).unwrap();
        assert!(agree_digits(&got, &(&e - &c.int(2))) >= 30);
        let got = frac_ne(2, &c).unwrap();
        assert!(agree_digits(&got, &(&(&e * &c.int(2)) - &c.int(5))) >= 30);
        for n in 1..25 {
            let v = frac_ne(n, &c).unwrap();
            assert!(v > c.zero() && v < c.one(), "frac_ne({n}) out of range");
        }
    }

    #[test]
    fn skew_remainder_stream_matches_skew_harmonic() {
        let c = ctx(30);
        let r = streams::skew_remainder_stream();
        let log2 =
            crate::numkernel::constant(crate::numkernel::ConstantName::LogTwo, &c).unwrap();
        for n in 1..40u64 {
            // H̄_n = log 2 - (-1)^n r_n
            let rn = r.value(n, &c).unwrap();
            let sign = if n % 2 == 0 { 1 } else { -1 };
            let lhs = &log2 - &(&rn * &c.int(sign));
            let rhs = c.rat(&skew_harmonic(n).unwrap());
            assert!(agree_digits(&lhs, &rhs) >= c.target_digits());
        }
    }

    #[test]
    fn tail_zeta_footnote_identity() {
        // c_n := 1/n + H_n^(2) - ζ(2) satisfies c_{n+1} - c_n = -1/(n(n+1)²),
        // checked exactly on the rational part.
        for n in 1..30u64 {
            let lhs = (Rational::from((1, n + 1)) + gen_harmonic(n + 1, 2).unwrap())
                - (Rational::from((1, n)) + gen_harmonic(n, 2).unwrap());
            let rhs = -Rational::from((rug::Integer::from(1), rug::Integer::from(n) * rug::Integer::from(n + 1).pow(2)));
            assert_eq!(lhs, rhs);
        }
    }
}
