//! Closed-form bounds on partition sizes and the parity counts behind the
//! odd-box lower bounds.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum BoundsError {
    #[error("subset must be nonempty")]
    EmptySubset,
    #[error("element {value} lies outside [1, {n}]")]
    OutOfUniverse { value: usize, n: usize },
    #[error("universe size {0} is outside the supported range 1..=30")]
    UniverseSize(usize),
    #[error("side length must be odd and greater than 2, got {0}")]
    BadOddSide(usize),
    #[error("parameter {name} must be at least {min}, got {got}")]
    TooSmall { name: &'static str, min: usize, got: usize },
    #[error("polynomial has no real root in the bracket [{lo}, {hi}]")]
    NoRoot { lo: f64, hi: f64 },
    #[error("recurrence needs at least one coefficient")]
    EmptyRecurrence,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ParityMode {
    /// All odd subsets of `[n]`.
    AllOdd,
    /// Odd subsets other than `[n]` itself.
    ProperOdd,
}

/// How many odd selectors `R ⊆ [n]` meet a fixed set `B` in an odd number of
/// elements.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ParityTally {
    pub universe: usize,
    pub target_set: Vec<usize>,
    pub mode: ParityMode,
    pub total_selectors: u64,
    pub odd_hits: u64,
}

/// Enumerates the odd (or proper odd) subsets of `[n]` and counts those
/// meeting `set` in an odd number of elements.
pub fn parity_count(n: usize, set: &[usize], mode: ParityMode) -> Result<ParityTally, BoundsError> {
    if n == 0 || n > 30 {
        return Err(BoundsError::UniverseSize(n));
    }
    if set.is_empty() {
        return Err(BoundsError::EmptySubset);
    }
    let mut target = 0u32;
    for &x in set {
        if x == 0 || x > n {
            return Err(BoundsError::OutOfUniverse { value: x, n });
        }
        target |= 1 << (x - 1);
    }
    let full: u32 = if n == 32 { u32::MAX } else { (1 << n) - 1 };
    let (mut total, mut hits) = (0u64, 0u64);
    for r in 1..=full {
        if r.count_ones() % 2 == 0 || (mode == ParityMode::ProperOdd && r == full) {
            continue;
        }
        total += 1;
        if (r & target).count_ones() % 2 == 1 {
            hits += 1;
        }
    }
    let mut target_set: Vec<usize> = set.to_vec();
    target_set.sort_unstable();
    target_set.dedup();
    Ok(ParityTally {
        universe: n,
        target_set,
        mode,
        total_selectors: total,
        odd_hits: hits,
    })
}

/// A bound is exact when its formula is rational.
#[derive(Debug, Clone, PartialEq)]
pub enum BoundNumber {
    Exact(BigRational),
    Approx(f64),
}

impl BoundNumber {
    pub fn integer(v: impl Into<BigInt>) -> Self {
        BoundNumber::Exact(BigRational::from_integer(v.into()))
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            BoundNumber::Exact(r) => r.to_f64().unwrap_or(f64::INFINITY),
            BoundNumber::Approx(x) => *x,
        }
    }

    /// Smallest integer at least this value. Approximate values are rounded
    /// up after discarding a relative error of `1e-12`.
    pub fn ceil(&self) -> BigInt {
        match self {
            BoundNumber::Exact(r) => r.ceil().to_integer(),
            BoundNumber::Approx(x) => {
                let nudged = x - x.abs() * 1e-12;
                BigInt::from(nudged.ceil() as i128)
            }
        }
    }

    /// The exact value when it is an integer.
    pub fn as_integer(&self) -> Option<BigInt> {
        match self {
            BoundNumber::Exact(r) if r.is_integer() => Some(r.to_integer()),
            _ => None,
        }
    }
}

impl fmt::Display for BoundNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BoundNumber::Exact(r) if r.is_integer() => write!(f, "{}", r.to_integer()),
            BoundNumber::Exact(r) => write!(f, "{}/{} (~{:.6})", r.numer(), r.denom(), self.to_f64()),
            BoundNumber::Approx(x) => write!(f, "~{x:.6}"),
        }
    }
}

/// Parameters a bound applies to.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct Validity {
    pub d: Option<usize>,
    pub k: Option<usize>,
    pub n: Option<usize>,
}

impl fmt::Display for Validity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (name, v) in [("d", self.d), ("k", self.k), ("n", self.n)] {
            if let Some(v) = v {
                parts.push(format!("{name}={v}"));
            }
        }
        f.write_str(&parts.join(" "))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BoundValue {
    pub name: &'static str,
    pub value: BoundNumber,
    pub valid_for: Validity,
}

impl fmt::Display for BoundValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} [{}] = {}", self.name, self.valid_for, self.value)
    }
}

fn at_least(name: &'static str, min: usize, got: usize) -> Result<(), BoundsError> {
    if got < min {
        return Err(BoundsError::TooSmall { name, min, got });
    }
    Ok(())
}

fn pow2(e: usize) -> BigInt {
    BigInt::one() << e
}

/// Every partition of a cube into odd boxes has at least `2^d` parts.
pub fn lower_odd_basic(d: usize) -> Result<BoundValue, BoundsError> {
    at_least("d", 1, d)?;
    Ok(BoundValue {
        name: "odd_basic_lower",
        value: BoundNumber::integer(pow2(d)),
        valid_for: Validity { d: Some(d), ..Default::default() },
    })
}

/// `((2^(n-1) - 1) / (2^(n-2) - 1))^d`, the lower bound for partitions of
/// `[n]^d` into odd proper boxes.
pub fn lower_odd_proper(n: usize, d: usize) -> Result<BoundValue, BoundsError> {
    if n <= 2 || n.is_multiple_of(2) {
        return Err(BoundsError::BadOddSide(n));
    }
    at_least("d", 1, d)?;
    let ratio = BigRational::new(pow2(n - 1) - 1, pow2(n - 2) - 1);
    let value = num_traits::pow(ratio, d);
    Ok(BoundValue {
        name: "odd_proper_lower",
        value: BoundNumber::Exact(value),
        valid_for: Validity { d: Some(d), n: Some(n), ..Default::default() },
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PiercingKind {
    Box,
    Brick,
}

/// Trivial lower and upper bounds on the size of a `k`-piercing partition
/// into proper boxes (or bricks) of a large `d`-cube.
pub fn kp_trivial_bounds(
    d: usize,
    k: usize,
    kind: PiercingKind,
) -> Result<(BoundValue, BoundValue), BoundsError> {
    at_least("d", 1, d)?;
    at_least("k", 2, k)?;
    let valid_for = Validity { d: Some(d), k: Some(k), ..Default::default() };
    let (dd, kk) = (BigInt::from(d), BigInt::from(k));
    let lower = match kind {
        PiercingKind::Brick => &dd * pow2(d - 1) * (&kk - 2) + pow2(d),
        PiercingKind::Box => {
            let linear: BigInt = &kk * (&dd - 1) + 1;
            linear.max(pow2(d))
        }
    };
    let upper = num_traits::pow(kk, d);
    let (lname, uname) = match kind {
        PiercingKind::Brick => ("piercing_brick_lower", "piercing_brick_upper"),
        PiercingKind::Box => ("piercing_box_lower", "piercing_box_upper"),
    };
    Ok((
        BoundValue { name: lname, value: BoundNumber::integer(lower), valid_for },
        BoundValue { name: uname, value: BoundNumber::integer(upper), valid_for },
    ))
}

/// The product form `prod_{i=2..d} (1 + 1/(sqrt(2i) - 1)) (k - 1) + 1` and
/// the weaker closed form `e^(sqrt(d)/4) (k - 1)`, both lower bounds for
/// `k`-piercing box partitions.
pub fn kp_box_exponential_lower(d: usize, k: usize) -> Result<(BoundValue, BoundValue), BoundsError> {
    at_least("d", 2, d)?;
    at_least("k", 2, k)?;
    let factor: f64 = (2..=d)
        .map(|i| 1.0 + 1.0 / ((2.0 * i as f64).sqrt() - 1.0))
        .product();
    let km1 = (k - 1) as f64;
    let valid_for = Validity { d: Some(d), k: Some(k), ..Default::default() };
    Ok((
        BoundValue {
            name: "piercing_box_product_lower",
            value: BoundNumber::Approx(factor * km1 + 1.0),
            valid_for,
        },
        BoundValue {
            name: "piercing_box_exp_lower",
            value: BoundNumber::Approx(((d as f64).sqrt() / 4.0).exp() * km1),
            valid_for,
        },
    ))
}

/// A root `x` of a recurrence's characteristic polynomial bracketed by
/// `lo <= x <= hi` with a sign change across the bracket.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RootCertificate {
    pub root: f64,
    pub lo: f64,
    pub hi: f64,
}

/// Largest real root of `x^m = c_1 x^(m-1) + ... + c_m`, given
/// `coefficients = [c_1, ..., c_m]`, found by bisection inside
/// `[1, 1 + sum |c_i|]`.
pub fn growth_root(coefficients: &[f64]) -> Result<RootCertificate, BoundsError> {
    if coefficients.is_empty() {
        return Err(BoundsError::EmptyRecurrence);
    }
    let m = coefficients.len();
    let poly = |x: f64| {
        let rhs: f64 = coefficients
            .iter()
            .enumerate()
            .map(|(i, c)| c * x.powi((m - 1 - i) as i32))
            .sum();
        x.powi(m as i32) - rhs
    };
    let top = 1.0 + coefficients.iter().map(|c| c.abs()).sum::<f64>();
    // Walk down from the upper end to the first sign change, then bisect.
    const STEPS: usize = 1 << 14;
    let step = (top - 1.0) / STEPS as f64;
    let mut hi = top;
    let mut lo = None;
    for i in 1..=STEPS {
        let x = top - step * i as f64;
        if poly(x) <= 0.0 {
            lo = Some(x);
            break;
        }
        hi = x;
    }
    let mut lo = lo.ok_or(BoundsError::NoRoot { lo: 1.0, hi: top })?;
    while hi - lo > 1e-12 {
        let mid = 0.5 * (lo + hi);
        if poly(mid) <= 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(RootCertificate {
        root: 0.5 * (lo + hi),
        lo,
        hi,
    })
}

/// All closed-form bounds over the given parameter ranges, grouped by
/// parameter. Odd-box bounds use the odd sides in `ns`.
pub fn bounds_table(ds: &[usize], ks: &[usize], ns: &[usize]) -> Vec<BoundValue> {
    let mut out = Vec::new();
    for &d in ds {
        out.extend(lower_odd_basic(d));
        for &n in ns {
            out.extend(lower_odd_proper(n, d));
        }
        for &k in ks {
            for kind in [PiercingKind::Brick, PiercingKind::Box] {
                if let Ok((lo, hi)) = kp_trivial_bounds(d, k, kind) {
                    out.push(lo);
                    out.push(hi);
                }
            }
            if let Ok((prod, exp)) = kp_box_exponential_lower(d, k) {
                out.push(prod);
                out.push(exp);
            }
        }
    }
    out
}

/// Largest applicable integer lower bound among `bounds` (zero if none).
pub fn best_lower(bounds: &[BoundValue]) -> BigInt {
    bounds
        .iter()
        .map(|b| b.value.ceil())
        .fold(BigInt::zero(), |a, b| if b > a { b } else { a })
        .abs()
}
