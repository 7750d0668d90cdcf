//! Summation engines: turn a term generator plus convergence metadata into
//! a value with target accuracy.
//!
//! Four routes are provided:
//! * [`sum_direct`] — plain accumulation with a per-decay-class tail bound;
//! * [`sum_alternating_accel`] — Chebyshev-weighted acceleration for
//!   alternating series (error ~ 5.83^-n);
//! * [`sum_with_asymptotic_tail`] — partial sums at several cutoffs plus a
//!   linear fit of the declared remainder basis (Richardson-style);
//! * [`abel_transform`] — summation by parts `Σ a_k b_k = lim A_n b_{n+1} +
//!   Σ A_k (b_k - b_{k+1})`.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use rug::ops::Pow;
use rug::{Complete, Float};

use crate::error::{Error, Result};
use crate::numkernel::{bits_for_digits, BigReal, PrecisionContext};

/// Term generator: `n ↦ a_n`, computable at any context precision.
pub type TermFn = Arc<dyn Fn(u64, &PrecisionContext) -> Result<BigReal> + Send + Sync>;

/// Sign structure declared by the series author.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SignPattern {
    Alternating,
    EventuallyPositive,
    General,
}

/// Upper-bound decay class for the terms.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum DecayClass {
    /// |a_n| shrinks superexponentially (ratio → 0).
    Factorial,
    /// |a_n| ≲ C·r^n for the given ratio in (0, 1).
    Geometric(f64),
    /// |a_n| ~ C·log^j(n)/n^m.
    PowerLog { power: u32, log_power: u32 },
}

/// A term generator plus convergence metadata.
#[derive(Clone)]
pub struct SeriesSpec {
    pub term: TermFn,
    pub sign: SignPattern,
    pub decay: DecayClass,
    pub start: u64,
    /// Human-readable name used in failure diagnostics.
    pub name: String,
    /// Per-series override of the direct-summation term budget.
    pub budget: Option<u64>,
}

impl SeriesSpec {
    pub fn new(name: &str, start: u64, sign: SignPattern, decay: DecayClass, term: TermFn) -> Self {
        Self {
            term,
            sign,
            decay,
            start,
            name: name.to_string(),
            budget: None,
        }
    }
}

/// How a sum was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    Direct,
    AlternatingAccel,
    AsymptoticTail,
    AbelSplit,
}

impl Method {
    pub fn label(&self) -> &'static str {
        match self {
            Method::Direct => "direct",
            Method::AlternatingAccel => "alternating-accel",
            Method::AsymptoticTail => "asymptotic-tail",
            Method::AbelSplit => "abel-split",
        }
    }
}

/// A summation outcome: value, effort, method and an honest error estimate.
#[derive(Clone, Debug)]
pub struct SumResult {
    pub value: BigReal,
    pub terms_used: u64,
    pub method: Method,
    pub est_error: BigReal,
}

const DEFAULT_BUDGET: u64 = 10_000_000;

fn scale_of(bits: u32, s: &Float) -> Float {
    let mut sc = s.clone().abs();
    if sc < 1 {
        sc = Float::with_val(bits, 1);
    }
    sc
}

/// Plain term-by-term summation with a decay-class tail bound. The bound is
/// the first omitted term for alternating input, the geometric tail for
/// geometric decay, a ratio bound for factorial decay and the integral bound
/// (safety factor 2) for power-log decay.
pub fn sum_direct(spec: &SeriesSpec, ctx: &PrecisionContext) -> Result<SumResult> {
    let bits = ctx.working_bits();
    let budget = spec.budget.unwrap_or(DEFAULT_BUDGET);
    let stop = Float::with_val(bits, ctx.eps(5).float());
    let mut acc = Float::with_val(bits, 0);
    let mut prev_abs: Option<Float> = None;
    let mut zero_run = 0u64;
    let mut n = spec.start;
    let mut used = 0u64;
    let mut bound = Float::with_val(bits, 1);
    loop {
        if used >= budget {
            let achieved = (-bound.clone().log10()).to_f64();
            return Err(Error::BudgetExhausted {
                series: spec.name.clone(),
                budget,
                achieved_digits: if achieved.is_finite() && achieved > 0.0 {
                    achieved as u32
                } else {
                    0
                },
            });
        }
        let a = (spec.term)(n, ctx)?;
        let a = a.float();
        acc += a;
        used += 1;
        let aa = a.clone().abs();
        if aa.is_zero() {
            zero_run += 1;
            // an all-zero prefix (e.g. the y = 0 exponential tail) sums to 0
            if zero_run >= 24 && acc.is_zero() {
                return Ok(SumResult {
                    value: BigReal::raw(acc, ctx.working_digits()),
                    terms_used: used,
                    method: Method::Direct,
                    est_error: ctx.zero(),
                });
            }
            n += 1;
            continue;
        }
        zero_run = 0;
        bound = match spec.decay {
            DecayClass::Factorial => {
                // once the observed ratio is < 1/2 the tail is under 2·|next|
                match &prev_abs {
                    Some(p) if !p.is_zero() => {
                        let ratio = (&aa / p).complete(bits);
                        if ratio < 0.5 {
                            let denom = (1u32 - &ratio).complete(bits);
                            aa.clone() * ratio / denom
                        } else {
                            Float::with_val(bits, 1)
                        }
                    }
                    _ => Float::with_val(bits, 1),
                }
            }
            DecayClass::Geometric(r) => {
                if !(0.0..1.0).contains(&r) {
                    return Err(Error::Domain {
                        func: "sum_direct",
                        arg: format!("geometric ratio {r}"),
                    });
                }
                let rr = Float::with_val(bits, r);
                let denom = (1u32 - &rr).complete(bits);
                aa.clone() * rr / denom
            }
            DecayClass::PowerLog { power: m, log_power: j } => {
                if m < 2 {
                    Float::with_val(bits, 1)
                } else {
                    power_log_tail_bound(bits, &aa, n, m, j)
                }
            }
        };
        if matches!(spec.sign, SignPattern::Alternating) {
            // first-omitted-term bound
            bound = aa.clone();
        }
        let sc = scale_of(bits, &acc);
        if n > spec.start + 4 && bound < stop.clone() * sc {
            let est = BigReal::raw(bound, ctx.working_digits());
            return Ok(SumResult {
                value: BigReal::raw(acc, ctx.working_digits()),
                terms_used: used,
                method: Method::Direct,
                est_error: est,
            });
        }
        prev_abs = Some(aa);
        n += 1;
    }
}

/// `2 · |a_N| · (N^m / log^j N) · ∫_N^∞ log^j x / x^m dx` for j ≤ 2.
fn power_log_tail_bound(bits: u32, a_abs: &Float, n: u64, m: u32, j: u32) -> Float {
    let nf = Float::with_val(bits, n);
    let ln_n = nf.clone().ln();
    let m1 = Float::with_val(bits, m - 1);
    // ∫_N^∞ log^j x/x^m dx, closed forms for j = 0, 1, 2
    let n_pow = nf.clone().pow((m - 1) as i32).recip();
    let integral = match j {
        0 => n_pow.clone() / &m1,
        1 => n_pow.clone() * (ln_n.clone() / &m1 + (m1.clone() * &m1).complete(bits).recip()),
        _ => {
            let l2 = ln_n.clone().square();
            let t1 = l2 / &m1;
            let t2 = (2u32 * &ln_n).complete(bits) / (m1.clone() * &m1).complete(bits);
            let t3 = Float::with_val(bits, 2) / (m1.clone() * &m1 * &m1).complete(bits);
            n_pow.clone() * (t1 + t2 + t3)
        }
    };
    let density = if j == 0 {
        nf.clone().pow(m as i32).recip()
    } else {
        ln_n.clone().pow(j as i32) / nf.clone().pow(m as i32)
    };
    if density.is_zero() {
        return Float::with_val(bits, 0);
    }
    2u32 * a_abs * integral / density
}

/// Number of acceleration terms that comfortably certify `digits`.
pub fn accel_terms_for_digits(digits: u32) -> u32 {
    (digits as f64 * 1.4) as u32 + 14
}

/// Cohen–Villegas–Zagier acceleration of an alternating series. Terms must
/// alternate in sign (zeros allowed); the error estimate combines the
/// method's geometric bound with an honest re-run at fewer terms.
pub fn sum_alternating_accel(
    spec: &SeriesSpec,
    n_terms: u32,
    ctx: &PrecisionContext,
) -> Result<SumResult> {
    if spec.sign != SignPattern::Alternating {
        return Err(Error::NotAlternating {
            at: spec.start,
            prev: spec.start,
        });
    }
    let n_terms = n_terms.max(8);
    let bits = ctx.working_bits() + 32;
    // collect magnitudes, validating the sign pattern
    let mut mags: Vec<Float> = Vec::with_capacity(n_terms as usize);
    let mut lead_sign = 0i32;
    let mut first_nonzero = 0usize;
    for k in 0..n_terms as u64 {
        let n = spec.start + k;
        let a = (spec.term)(n, ctx)?;
        let s = if a.is_zero() {
            0
        } else if a.is_sign_negative() {
            -1
        } else {
            1
        };
        if s != 0 {
            if lead_sign == 0 {
                lead_sign = if (k % 2) == 0 { s } else { -s };
                first_nonzero = k as usize;
            } else {
                let expect = if k % 2 == 0 { lead_sign } else { -lead_sign };
                if s != expect {
                    return Err(Error::NotAlternating {
                        at: n,
                        prev: spec.start + first_nonzero as u64,
                    });
                }
            }
        }
        mags.push(Float::with_val(bits, a.float().clone().abs()));
    }
    if lead_sign == 0 {
        return Ok(SumResult {
            value: ctx.zero(),
            terms_used: n_terms as u64,
            method: Method::AlternatingAccel,
            est_error: ctx.zero(),
        });
    }

    let run = |terms: usize| -> Float {
        // Σ_{k≥0} (-1)^k m_k with the Chebyshev weights
        let nn = terms as u32;
        let q = Float::with_val(bits, 3) + Float::with_val(bits, 8).sqrt();
        let mut d = q.pow(nn as i32);
        d = (d.clone() + d.recip()) / 2u32;
        let mut b = Float::with_val(bits, -1);
        let mut c = (-&d).complete(bits);
        let mut s = Float::with_val(bits, 0);
        for k in 0..terms {
            c = (&b - &c).complete(bits);
            s += (&c * &mags[k]).complete(bits);
            let kf = Float::with_val(bits, k as u32);
            let num = (kf.clone() + nn) * (kf.clone() - nn);
            let den = (kf.clone() + Float::with_val(bits, 0.5)) * (kf + 1u32);
            b = b * num / den;
        }
        s / d
    };

    let full = run(n_terms as usize);
    let less = run((n_terms - 6) as usize);
    let signed = if lead_sign < 0 {
        (-&full).complete(bits)
    } else {
        full.clone()
    };
    let sc = scale_of(bits, &signed);
    // geometric method bound plus observed stability
    let q = Float::with_val(bits, 3) + Float::with_val(bits, 8).sqrt();
    let method_bound = (&mags[first_nonzero] * &sc).complete(bits).max(&sc)
        * Float::with_val(bits, 8)
        / q.pow(n_terms as i32);
    let observed = (&full - &less).complete(bits).abs() * 2u32;
    let mut est = method_bound.max(&observed);
    let floor = sc.clone() * Float::with_val(bits, 10).pow(-(ctx.working_digits() as i32 - 2));
    est = est.max(&floor);
    let threshold = sc * Float::with_val(bits, ctx.eps(0).float());
    if est > threshold {
        let achieved = (-Float::with_val(bits, &est).log10()).to_f64();
        return Err(Error::AccelInsufficient {
            terms: n_terms,
            achieved_digits: if achieved.is_finite() && achieved > 0.0 {
                achieved as u32
            } else {
                0
            },
            needed_digits: ctx.target_digits(),
        });
    }
    Ok(SumResult {
        value: BigReal::raw(
            Float::with_val(ctx.working_bits(), signed),
            ctx.working_digits(),
        ),
        terms_used: n_terms as u64,
        method: Method::AlternatingAccel,
        est_error: BigReal::raw(
            Float::with_val(ctx.working_bits(), est),
            ctx.working_digits(),
        ),
    })
}

/// Direct sum to a cutoff plus a fitted asymptotic remainder.
///
/// `tail_model` declares the shapes of the *terms* beyond the cutoff as
/// `(m, j)` pairs meaning `log^j(n)/n^m` (each m ≥ 2). The corresponding
/// remainder functions `log^i(N)/N^(m-1)`, i ≤ j, plus the limit itself are
/// fitted through partial sums at basis+1 nodes. The whole fit is done twice
/// at staggered node sets; disagreement beyond the target tolerance is an
/// error, agreement gives the error estimate.
pub fn sum_with_asymptotic_tail(
    spec: &SeriesSpec,
    cutoff: u64,
    tail_model: &[(u32, u32)],
    ctx: &PrecisionContext,
) -> Result<SumResult> {
    if tail_model.is_empty() || cutoff < 16 {
        return Err(Error::Domain {
            func: "sum_with_asymptotic_tail",
            arg: format!("cutoff={cutoff}, basis size {}", tail_model.len()),
        });
    }
    let mut funcs: Vec<(u32, u32)> = Vec::new();
    for &(m, j) in tail_model {
        if m < 2 {
            return Err(Error::Domain {
                func: "sum_with_asymptotic_tail",
                arg: format!("term basis exponent {m} < 2"),
            });
        }
        for i in 0..=j {
            if !funcs.contains(&(m - 1, i)) {
                funcs.push((m - 1, i));
            }
        }
    }
    funcs.sort();
    let q = funcs.len();
    let k = q + 1; // unknowns: limit + coefficients

    let step = (cutoff / 8).max(4);
    let shift = step / 2 + 1;
    let nodes_a: Vec<u64> = (0..k as u64).map(|i| cutoff + i * step).collect();
    let nodes_b: Vec<u64> = (0..k as u64).map(|i| cutoff + shift + i * step).collect();
    let max_node = *nodes_b.last().unwrap();

    // the fit is ill-conditioned; solve well above working precision
    let solve_digits = ctx.working_digits() + 40 + 2 * k as u32;
    let solve_ctx = PrecisionContext::with_guard(solve_digits, 10)?;
    let sbits = bits_for_digits(solve_digits + 10);

    let mut recorded: HashMap<u64, Float> = HashMap::new();
    let mut acc = Float::with_val(sbits, 0);
    for n in spec.start..=max_node {
        let a = (spec.term)(n, &solve_ctx)?;
        acc += a.float();
        if nodes_a.binary_search(&n).is_ok() || nodes_b.binary_search(&n).is_ok() {
            recorded.insert(n, acc.clone());
        }
    }

    let solve = |nodes: &[u64]| -> Result<Float> {
        let mut mat: Vec<Vec<Float>> = Vec::with_capacity(k);
        let mut rhs: Vec<Float> = Vec::with_capacity(k);
        for &node in nodes {
            let nf = Float::with_val(sbits, node);
            let ln = nf.clone().ln();
            let mut row = Vec::with_capacity(k);
            row.push(Float::with_val(sbits, 1));
            for &(p, i) in &funcs {
                let phi = ln.clone().pow(i as i32) / nf.clone().pow(p as i32);
                row.push((-phi).complete(sbits));
            }
            mat.push(row);
            rhs.push(recorded[&node].clone());
        }
        // column scaling then Gaussian elimination with partial pivoting
        let mut scale = vec![Float::with_val(sbits, 1); k];
        for (j, s) in scale.iter_mut().enumerate() {
            let mut mx = Float::with_val(sbits, 0);
            for row in &mat {
                let a = row[j].clone().abs();
                if a > mx {
                    mx = a;
                }
            }
            if !mx.is_zero() {
                *s = mx;
            }
        }
        for row in mat.iter_mut() {
            for (j, v) in row.iter_mut().enumerate() {
                *v /= &scale[j];
            }
        }
        let mut m = mat;
        let mut b = rhs;
        for col in 0..k {
            let mut piv = col;
            for r in (col + 1)..k {
                if m[r][col].clone().abs() > m[piv][col].clone().abs() {
                    piv = r;
                }
            }
            m.swap(col, piv);
            b.swap(col, piv);
            if m[col][col].is_zero() {
                return Err(Error::UnstableExtrapolation {
                    series: spec.name.clone(),
                    cutoff_a: nodes[0],
                    cutoff_b: *nodes.last().unwrap(),
                    value_a: "singular".into(),
                    value_b: "singular".into(),
                });
            }
            for r in (col + 1)..k {
                let f = (&m[r][col] / &m[col][col]).complete(sbits);
                if f.is_zero() {
                    continue;
                }
                for c in col..k {
                    let t = (&f * &m[col][c]).complete(sbits);
                    m[r][c] -= t;
                }
                let t = (&f * &b[col]).complete(sbits);
                b[r] -= t;
            }
        }
        let mut x = vec![Float::with_val(sbits, 0); k];
        for col in (0..k).rev() {
            let mut v = b[col].clone();
            for c in (col + 1)..k {
                v -= (&m[col][c] * &x[c]).complete(sbits);
            }
            x[col] = v / &m[col][col];
        }
        Ok(x[0].clone() / &scale[0])
    };

    let va = solve(&nodes_a)?;
    let vb = solve(&nodes_b)?;
    let diff = (&va - &vb).complete(sbits).abs();
    let sc = scale_of(sbits, &vb);
    let tol = sc.clone() * Float::with_val(sbits, ctx.eps(0).float());
    if diff > tol {
        return Err(Error::UnstableExtrapolation {
            series: spec.name.clone(),
            cutoff_a: cutoff,
            cutoff_b: cutoff + shift,
            value_a: BigReal::raw(va, solve_digits).to_decimal(30),
            value_b: BigReal::raw(vb, solve_digits).to_decimal(30),
        });
    }
    let floor = sc * Float::with_val(sbits, 10).pow(-(ctx.working_digits() as i32 - 2));
    let est = (diff * 4u32).max(&floor);
    Ok(SumResult {
        value: BigReal::raw(Float::with_val(ctx.working_bits(), vb), ctx.working_digits()),
        terms_used: max_node,
        method: Method::AsymptoticTail,
        est_error: BigReal::raw(Float::with_val(ctx.working_bits(), est), ctx.working_digits()),
    })
}

/// Declared limit of `A_n b_{n+1}` in Abel's summation formula.
#[derive(Clone)]
pub enum AbelLimit {
    AssertZero,
    Supplied(TermFn),
}

impl AbelLimit {
    /// The limit's value (the supplied evaluator is called at n = 0).
    pub fn value(&self, ctx: &PrecisionContext) -> Result<BigReal> {
        match self {
            AbelLimit::AssertZero => Ok(ctx.zero()),
            AbelLimit::Supplied(f) => f(0, ctx),
        }
    }
}

/// The transformed series of Abel's summation formula together with the
/// declared limit: `Σ a_k b_k = limit + Σ A_k (b_k - b_{k+1})`.
pub struct AbelSeries {
    pub series: SeriesSpec,
    pub limit: AbelLimit,
}

/// Summation by parts: returns the series `Σ A_k (b_k - b_{k+1})` with
/// `A_k = Σ_{i≤k} a_i`, plus the declared limit term.
pub fn abel_transform(a: TermFn, b: TermFn, limit: AbelLimit, start: u64) -> AbelSeries {
    let partial: Mutex<HashMap<u32, (u64, Float)>> = Mutex::new(HashMap::new());
    let a = a.clone();
    let b = b.clone();
    let term: TermFn = Arc::new(move |n, ctx| {
        let bits = ctx.working_bits();
        let mut state = partial.lock().unwrap();
        let entry = state.entry(bits).or_insert((start - 1, Float::with_val(bits, 0)));
        if entry.0 >= n {
            // replay for random access
            *entry = (start - 1, Float::with_val(bits, 0));
        }
        while entry.0 < n {
            let m = entry.0 + 1;
            let am = a(m, ctx)?;
            entry.1 += am.float();
            entry.0 = m;
        }
        let a_n = BigReal::raw(entry.1.clone(), ctx.working_digits());
        drop(state);
        let bn = b(n, ctx)?;
        let bn1 = b(n + 1, ctx)?;
        Ok(&a_n * &(&bn - &bn1))
    });
    AbelSeries {
        series: SeriesSpec::new(
            "abel-transformed",
            start,
            SignPattern::General,
            DecayClass::PowerLog { power: 2, log_power: 0 },
            term,
        ),
        limit,
    }
}

/// Empirical check that the declared decay class dominates the observed
/// terms over the first `upto` indices (used by series construction tests).
pub fn validate_decay(spec: &SeriesSpec, upto: u64, ctx: &PrecisionContext) -> Result<bool> {
    let bits = ctx.working_bits();
    let lo = spec.start + 8;
    let hi = spec.start + upto;
    let mut early_max = Float::with_val(bits, 0);
    let mut late_max = Float::with_val(bits, 0);
    let mid = (lo + hi) / 2;
    let mut n = lo;
    let sample = ((hi - lo) / 160).max(1);
    while n <= hi {
        let a = (spec.term)(n, ctx)?.abs();
        let normalised = match spec.decay {
            DecayClass::Factorial => {
                let mut f = Float::with_val(bits, 1);
                for j in 1..=(n.min(400)) {
                    f *= Float::with_val(bits, j);
                }
                a.float().clone() * f
            }
            DecayClass::Geometric(r) => {
                a.float().clone() / Float::with_val(bits, r).pow(n as i32)
            }
            DecayClass::PowerLog { power, log_power } => {
                let nf = Float::with_val(bits, n);
                let phi = nf.clone().ln().pow(log_power as i32) / nf.pow(power as i32);
                a.float().clone() / phi
            }
        };
        if n <= mid {
            if normalised > early_max {
                early_max = normalised;
            }
        } else if normalised > late_max {
            late_max = normalised;
        }
        n += sample;
    }
    if early_max.is_zero() {
        return Ok(late_max.is_zero());
    }
    Ok(late_max <= early_max * 4u32)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numkernel::agree_digits;

    fn ctx(d: u32) -> PrecisionContext {
        PrecisionContext::new(d).unwrap()
    }

    fn geometric_half() -> SeriesSpec {
        SeriesSpec::new(
            "geometric-1/2",
            1,
            SignPattern::EventuallyPositive,
            DecayClass::Geometric(0.5),
            Arc::new(|n, c| Ok(c.rat(&crate::numkernel::rat(1, 1 << n.min(62))))),
        )
    }

    fn eta1() -> SeriesSpec {
        SeriesSpec::new(
            "eta(1)",
            1,
            SignPattern::Alternating,
            DecayClass::PowerLog { power: 1, log_power: 0 },
            Arc::new(|n, c| {
                let t = c.uint(n).recip();
                Ok(if n % 2 == 0 { -t } else { t })
            }),
        )
    }

    #[test]
    fn direct_geometric_sums_to_one() {
        let c = ctx(30);
        let r = sum_direct(&geometric_half(), &c).unwrap();
        assert!(agree_digits(&r.value, &c.one()) >= 30);
        assert!(r.est_error <= c.eps(0));
    }

    #[test]
    fn direct_alternating_harmonic_is_log2() {
        // crude decay (1/n) but alternating: first-omitted-term bound applies;
        // use a small target so the budget suffices
        let c = PrecisionContext::with_guard(10, 10).unwrap();
        let mut spec = eta1();
        spec.budget = Some(2_000_000);
        let r = sum_direct(&spec, &c).unwrap();
        let log2 = crate::numkernel::constant(crate::numkernel::ConstantName::LogTwo, &c).unwrap();
        // absolute error below the reported bound
        assert!((&r.value - &log2).abs() <= r.est_error);
    }

    #[test]
    fn direct_budget_exhaustion_is_reported() {
        let c = ctx(30);
        let mut spec = eta1();
        spec.budget = Some(10_000);
        match sum_direct(&spec, &c) {
            Err(Error::BudgetExhausted { achieved_digits, .. }) => {
                assert!(achieved_digits < 30);
            }
            other => panic!("expected budget exhaustion, got {other:?}"),
        }
    }

    #[test]
    fn accel_eta1_reaches_forty_digits() {
        let c = PrecisionContext::with_guard(40, 15).unwrap();
        let r = sum_alternating_accel(&eta1(), 60, &c).unwrap();
        let log2 = crate::numkernel::constant(crate::numkernel::ConstantName::LogTwo, &c).unwrap();
        assert!(agree_digits(&r.value, &log2) >= 40);
    }

    #[test]
    fn accel_beta2_is_catalan() {
        let c = PrecisionContext::with_guard(50, 15).unwrap();
        let spec = SeriesSpec::new(
            "beta(2)",
            0,
            SignPattern::Alternating,
            DecayClass::PowerLog { power: 2, log_power: 0 },
            Arc::new(|n, c| {
                let t = c.uint(2 * n + 1).pow_i(-2);
                Ok(if n % 2 == 0 { t } else { -t })
            }),
        );
        let r = sum_alternating_accel(&spec, 80, &c).unwrap();
        let g = crate::numkernel::constant(crate::numkernel::ConstantName::Catalan, &c).unwrap();
        assert!(agree_digits(&r.value, &g) >= 50);
    }

    #[test]
    fn accel_rejects_non_alternating() {
        let c = ctx(20);
        let mut spec = geometric_half();
        spec.sign = SignPattern::Alternating;
        assert!(matches!(
            sum_alternating_accel(&spec, 40, &c),
            Err(Error::NotAlternating { .. })
        ));
    }

    #[test]
    fn asymptotic_tail_basel() {
        // Σ 1/n² with cutoff 1000 → ζ(2) to well beyond 15 digits
        let c = ctx(30);
        let spec = SeriesSpec::new(
            "basel",
            1,
            SignPattern::EventuallyPositive,
            DecayClass::PowerLog { power: 2, log_power: 0 },
            Arc::new(|n, c| Ok(c.uint(n).pow_i(-2))),
        );
        let basis: Vec<(u32, u32)> = (2..=12).map(|m| (m, 0)).collect();
        let r = sum_with_asymptotic_tail(&spec, 1000, &basis, &c).unwrap();
        let z2 = crate::specfun::zeta_int(2, &c).unwrap();
        assert!(agree_digits(&r.value, &z2) >= 15, "only {} digits", agree_digits(&r.value, &z2));
    }

    #[test]
    fn abel_constant_b_is_identity() {
        // a_k = 1/2^k, b_k = 1: differences vanish, limit = Σ a = 1
        let c = ctx(25);
        let a: TermFn = Arc::new(|n, c| Ok(c.rat(&crate::numkernel::rat(1, 1 << n.min(62)))));
        let b: TermFn = Arc::new(|_, c| Ok(c.one()));
        let ab = abel_transform(a, b, AbelLimit::AssertZero, 1);
        // all transformed terms are zero
        for n in 1..20 {
            assert!((ab.series.term)(n, &c).unwrap().is_zero());
        }
    }

    #[test]
    fn validate_decay_flags_wrong_class() {
        let c = ctx(20);
        let mut spec = eta1();
        spec.decay = DecayClass::PowerLog { power: 2, log_power: 0 }; // too optimistic
        assert!(!validate_decay(&spec, 1000, &c).unwrap());
        let spec = eta1(); // correct class
        assert!(validate_decay(&spec, 1000, &c).unwrap());
    }
}
