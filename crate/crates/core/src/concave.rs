//! Scalar function classes: non-negative concave functions on `[0, ∞)`,
//! the affine-shifted class used for trace inequalities, and convex powers.

use std::fmt;
use std::str::FromStr;

use rand::Rng;

use crate::error::{Error, Result};

/// A scalar function that can be applied to singular values.
pub trait RealFn {
    fn call(&self, t: f64) -> Result<f64>;
}

impl<F: Fn(f64) -> f64> RealFn for F {
    fn call(&self, t: f64) -> Result<f64> {
        Ok(self(t))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum ConcaveFn {
    /// Linear interpolation between `(breakpoints[i], values[i])`, continued
    /// past the last breakpoint with `tail_slope`.
    PiecewiseLinear { breakpoints: Vec<f64>, values: Vec<f64>, tail_slope: f64 },
    /// `t^p`, `0 < p ≤ 1`.
    Power { p: f64 },
    /// `min{t, c}`.
    MinCap { c: f64 },
    /// `a·t + b`.
    Affine { a: f64, b: f64 },
    Sqrt,
}

impl ConcaveFn {
    pub fn piecewise_linear(breakpoints: Vec<f64>, values: Vec<f64>, tail_slope: f64) -> Result<Self> {
        let f = ConcaveFn::PiecewiseLinear { breakpoints, values, tail_slope };
        f.validate()?;
        Ok(f)
    }

    pub fn power(p: f64) -> Result<Self> {
        let f = ConcaveFn::Power { p };
        f.validate()?;
        Ok(f)
    }

    pub fn min_cap(c: f64) -> Result<Self> {
        let f = ConcaveFn::MinCap { c };
        f.validate()?;
        Ok(f)
    }

    pub fn affine(a: f64, b: f64) -> Result<Self> {
        let f = ConcaveFn::Affine { a, b };
        f.validate()?;
        Ok(f)
    }

    /// Checks the structural invariants of the variant.
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidArgument(msg));
        match self {
            ConcaveFn::PiecewiseLinear { breakpoints, values, tail_slope } => {
                if breakpoints.is_empty() || breakpoints.len() != values.len() {
                    return bad("piecewise-linear needs equally many (>= 1) breakpoints and values".into());
                }
                if breakpoints[0] != 0.0 {
                    return bad(format!("first breakpoint must be 0, got {}", breakpoints[0]));
                }
                if breakpoints.iter().chain(values).chain([tail_slope]).any(|x| !x.is_finite()) {
                    return bad("piecewise-linear data must be finite".into());
                }
                let mut prev_slope = f64::INFINITY;
                for i in 1..breakpoints.len() {
                    let dt = breakpoints[i] - breakpoints[i - 1];
                    if dt <= 0.0 {
                        return bad("breakpoints must be strictly ascending".into());
                    }
                    let s = (values[i] - values[i - 1]) / dt;
                    if s > prev_slope {
                        return bad(format!("chord slope increases at breakpoint {i}"));
                    }
                    prev_slope = s;
                }
                if *tail_slope > prev_slope {
                    return bad("tail slope exceeds the last interior slope".into());
                }
                Ok(())
            }
            ConcaveFn::Power { p } if !(*p > 0.0 && *p <= 1.0) => bad(format!("power must lie in (0, 1], got {p}")),
            ConcaveFn::MinCap { c } if !(*c > 0.0 && c.is_finite()) => bad(format!("cap must be positive, got {c}")),
            ConcaveFn::Affine { a, b } if !a.is_finite() || !b.is_finite() => bad("affine coefficients must be finite".into()),
            _ => Ok(()),
        }
    }

    /// `f(t)` for `t ≥ 0`.
    pub fn eval(&self, t: f64) -> Result<f64> {
        if t.is_nan() || t < 0.0 {
            return Err(Error::Domain(format!("concave functions are defined on [0, inf), got t = {t}")));
        }
        Ok(match self {
            ConcaveFn::PiecewiseLinear { breakpoints, values, tail_slope } => {
                let last = breakpoints.len() - 1;
                if t >= breakpoints[last] {
                    values[last] + tail_slope * (t - breakpoints[last])
                } else {
                    // first index with breakpoint > t; t lies in [bp[i-1], bp[i])
                    let i = breakpoints.partition_point(|&b| b <= t);
                    let (t0, t1) = (breakpoints[i - 1], breakpoints[i]);
                    let w = (t - t0) / (t1 - t0);
                    values[i - 1] + w * (values[i] - values[i - 1])
                }
            }
            ConcaveFn::Power { p } => t.powf(*p),
            ConcaveFn::MinCap { c } => t.min(*c),
            ConcaveFn::Affine { a, b } => a * t + b,
            ConcaveFn::Sqrt => t.sqrt(),
        })
    }

    pub fn at_zero(&self) -> f64 {
        self.eval(0.0).expect("0 is in the domain")
    }

    /// `f ≥ 0` on `[0, ∞)`. For a concave function this reduces to `f(0) ≥ 0`
    /// together with a non-negative slope at infinity.
    pub fn is_non_negative(&self) -> bool {
        match self {
            ConcaveFn::PiecewiseLinear { values, tail_slope, .. } => values[0] >= 0.0 && *tail_slope >= 0.0,
            ConcaveFn::Affine { a, b } => *a >= 0.0 && *b >= 0.0,
            _ => true,
        }
    }

    /// `g(t) = f(t) − f(0)`.
    pub fn shift_to_zero(&self) -> ConcaveFn {
        match self {
            ConcaveFn::PiecewiseLinear { breakpoints, values, tail_slope } => {
                let v0 = values[0];
                ConcaveFn::PiecewiseLinear {
                    breakpoints: breakpoints.clone(),
                    values: values.iter().map(|v| v - v0).collect(),
                    tail_slope: *tail_slope,
                }
            }
            ConcaveFn::Affine { a, .. } => ConcaveFn::Affine { a: *a, b: 0.0 },
            other => other.clone(),
        }
    }
}

impl RealFn for ConcaveFn {
    fn call(&self, t: f64) -> Result<f64> {
        self.eval(t)
    }
}

impl fmt::Display for ConcaveFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConcaveFn::PiecewiseLinear { breakpoints, values, tail_slope } => {
                write!(f, "pwl:[")?;
                for (t, v) in breakpoints.iter().zip(values) {
                    write!(f, "{t:?},{v:?};")?;
                }
                write!(f, "{tail_slope:?}]")
            }
            ConcaveFn::Power { p } => write!(f, "power:{p:?}"),
            ConcaveFn::MinCap { c } => write!(f, "mincap:{c:?}"),
            ConcaveFn::Affine { a, b } => write!(f, "affine:{a:?},{b:?}"),
            ConcaveFn::Sqrt => write!(f, "sqrt"),
        }
    }
}

fn parse_f64(s: &str) -> Result<f64> {
    s.trim().parse::<f64>().map_err(|e| Error::Parse(format!("bad number {s:?}: {e}")))
}

impl FromStr for ConcaveFn {
    type Err = Error;

    /// Parses `power:p`, `mincap:c`, `sqrt`, `affine:a,b` or
    /// `pwl:[t0,v0;t1,v1;...;slope]`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (kind, arg) = s.split_once(':').unwrap_or((s, ""));
        match kind {
            "sqrt" if arg.is_empty() => Ok(ConcaveFn::Sqrt),
            "power" => ConcaveFn::power(parse_f64(arg)?),
            "mincap" => ConcaveFn::min_cap(parse_f64(arg)?),
            "affine" => {
                let (a, b) = arg.split_once(',').ok_or_else(|| Error::Parse(format!("affine needs a,b: {s:?}")))?;
                ConcaveFn::affine(parse_f64(a)?, parse_f64(b)?)
            }
            "pwl" => {
                let body = arg
                    .strip_prefix('[')
                    .and_then(|b| b.strip_suffix(']'))
                    .ok_or_else(|| Error::Parse(format!("pwl body must be bracketed: {s:?}")))?;
                let mut parts: Vec<&str> = body.split(';').collect();
                let tail = parse_f64(parts.pop().unwrap_or(""))?;
                let mut bps = Vec::new();
                let mut vals = Vec::new();
                for p in parts {
                    let (t, v) = p.split_once(',').ok_or_else(|| Error::Parse(format!("pwl point needs t,v: {p:?}")))?;
                    bps.push(parse_f64(t)?);
                    vals.push(parse_f64(v)?);
                }
                ConcaveFn::piecewise_linear(bps, vals, tail)
            }
            _ => Err(Error::Parse(format!("unknown function literal {s:?}"))),
        }
    }
}

/// `g(t) + slope·t` with `g` non-negative concave. Concave with `f(0) ≥ 0`,
/// but may take negative values when `slope < 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct AffineConcave {
    pub g: ConcaveFn,
    pub slope: f64,
}

impl AffineConcave {
    pub fn new(g: ConcaveFn, slope: f64) -> Result<Self> {
        g.validate()?;
        if !g.is_non_negative() {
            return Err(Error::InvalidArgument("base function must be non-negative".into()));
        }
        if !slope.is_finite() {
            return Err(Error::InvalidArgument("slope must be finite".into()));
        }
        Ok(AffineConcave { g, slope })
    }
}

impl RealFn for AffineConcave {
    fn call(&self, t: f64) -> Result<f64> {
        Ok(self.g.eval(t)? + self.slope * t)
    }
}

impl fmt::Display for AffineConcave {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + {:?}*t", self.g, self.slope)
    }
}

/// `t^p` with `p > 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConvexPower {
    p: f64,
}

impl ConvexPower {
    pub fn new(p: f64) -> Result<Self> {
        if !(p > 1.0 && p.is_finite()) {
            return Err(Error::InvalidArgument(format!("convex power needs p > 1, got {p}")));
        }
        Ok(ConvexPower { p })
    }

    pub fn exponent(&self) -> f64 {
        self.p
    }
}

impl RealFn for ConvexPower {
    fn call(&self, t: f64) -> Result<f64> {
        if t < 0.0 {
            return Err(Error::Domain(format!("power defined on [0, inf), got {t}")));
        }
        Ok(t.powf(self.p))
    }
}

fn check_grid(grid: &[f64], nonneg: bool) -> Result<()> {
    if grid.len() < 3 {
        return Err(Error::InvalidArgument(format!("grid needs at least 3 points, got {}", grid.len())));
    }
    if grid.iter().any(|x| !x.is_finite()) || grid.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::InvalidArgument("grid must be finite and strictly ascending".into()));
    }
    if nonneg && grid[0] < 0.0 {
        return Err(Error::InvalidArgument("grid must lie in [0, inf)".into()));
    }
    Ok(())
}

/// Second differences of `values` over `grid`, scaled so that a uniform grid
/// gives the usual `f(x+h) − 2f(x) + f(x−h)`.
fn second_differences(grid: &[f64], values: &[f64]) -> Vec<f64> {
    (1..grid.len() - 1)
        .map(|i| {
            let s0 = (values[i] - values[i - 1]) / (grid[i] - grid[i - 1]);
            let s1 = (values[i + 1] - values[i]) / (grid[i + 1] - grid[i]);
            (s1 - s0) * 0.5 * (grid[i + 1] - grid[i - 1])
        })
        .collect()
}

pub fn is_concave_on_grid<F: RealFn + ?Sized>(f: &F, grid: &[f64], tol: f64) -> Result<bool> {
    check_grid(grid, true)?;
    let values = grid.iter().map(|&t| f.call(t)).collect::<Result<Vec<_>>>()?;
    Ok(second_differences(grid, &values).iter().all(|&d| d <= tol))
}

/// Whether `t ↦ f(e^t)` is convex on a grid in the logarithmic variable.
pub fn is_e_convex<F: RealFn + ?Sized>(f: &F, log_grid: &[f64], tol: f64) -> Result<bool> {
    check_grid(log_grid, false)?;
    let values = log_grid.iter().map(|&t| f.call(t.exp())).collect::<Result<Vec<_>>>()?;
    Ok(second_differences(log_grid, &values).iter().all(|&d| d >= -tol))
}

/// 512 equally spaced points on `[0, 4·max_singular_value]`.
pub fn default_grid(max_singular_value: f64) -> Vec<f64> {
    let hi = 4.0 * max_singular_value.max(f64::MIN_POSITIVE);
    (0..512).map(|i| hi * i as f64 / 511.0).collect()
}

/// 512 equally spaced points on `[lo, hi]`, for logarithmic-variable checks.
pub fn log_grid(lo: f64, hi: f64) -> Vec<f64> {
    (0..512).map(|i| lo + (hi - lo) * i as f64 / 511.0).collect()
}

/// Random non-negative piecewise-linear concave function with between one
/// and `max_breaks` kinks placed in `(0, scale)`.
pub fn random_concave<R: Rng + ?Sized>(rng: &mut R, max_breaks: usize, scale: f64) -> ConcaveFn {
    let breaks = rng.random_range(1..=max_breaks.max(1));
    let mut kinks: Vec<f64> = (0..breaks).map(|_| scale * rng.random_range(0.02..1.0)).collect();
    kinks.sort_by(f64::total_cmp);
    kinks.dedup_by(|a, b| (*a - *b).abs() < 1e-9 * scale);
    let mut slopes: Vec<f64> = (0..kinks.len()).map(|_| rng.random_range(0.05..2.0)).collect();
    slopes.sort_by(|a, b| b.total_cmp(a));
    let tail_slope = if rng.random_bool(0.35) { 0.0 } else { slopes[slopes.len() - 1] * rng.random_range(0.0..1.0) };
    let v0 = if rng.random_bool(0.5) { 0.0 } else { rng.random_range(0.0..0.5) * scale };

    let mut breakpoints = vec![0.0];
    let mut values = vec![v0];
    for (t, s) in kinks.iter().zip(&slopes) {
        let (pt, pv) = (*breakpoints.last().unwrap(), *values.last().unwrap());
        breakpoints.push(*t);
        values.push(pv + s * (t - pt));
    }
    ConcaveFn::PiecewiseLinear { breakpoints, values, tail_slope }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    const H: f64 = std::f64::consts::FRAC_1_SQRT_2;

    #[test]
    fn eval_examples() {
        assert_eq!(ConcaveFn::MinCap { c: H }.eval(1.0).unwrap(), H);
        assert_eq!(ConcaveFn::Power { p: 1.0 }.eval(2.5).unwrap(), 2.5);
        assert_eq!(ConcaveFn::Sqrt.eval(9.0).unwrap(), 3.0);
        assert!(matches!(ConcaveFn::Sqrt.eval(-1.0), Err(Error::Domain(_))));
        let f = ConcaveFn::piecewise_linear(vec![0.0, 1.0, 3.0], vec![1.0, 3.0, 4.0], 0.25).unwrap();
        assert_eq!(f.eval(0.5).unwrap(), 2.0);
        assert_eq!(f.eval(2.0).unwrap(), 3.5);
        assert_eq!(f.eval(3.0).unwrap(), 4.0);
        assert_eq!(f.eval(7.0).unwrap(), 5.0);
    }

    #[test]
    fn piecewise_validation() {
        assert!(ConcaveFn::piecewise_linear(vec![0.0, 1.0], vec![0.0, 1.0], 2.0).is_err());
        assert!(ConcaveFn::piecewise_linear(vec![0.0, 1.0, 2.0], vec![0.0, 1.0, 3.0], 0.0).is_err());
        assert!(ConcaveFn::piecewise_linear(vec![0.5], vec![0.0], 0.0).is_err());
        assert!(ConcaveFn::piecewise_linear(vec![0.0, 0.0], vec![0.0, 0.0], 0.0).is_err());
        assert!(ConcaveFn::power(1.5).is_err());
        assert!(ConcaveFn::min_cap(0.0).is_err());
    }

    #[test]
    fn shift_examples() {
        assert_eq!(ConcaveFn::Affine { a: 2.0, b: 3.0 }.shift_to_zero(), ConcaveFn::Affine { a: 2.0, b: 0.0 });
        let f = ConcaveFn::piecewise_linear(vec![0.0, 1.0], vec![0.0, 2.0], 0.5).unwrap();
        assert_eq!(f.shift_to_zero(), f);
        assert_eq!(ConcaveFn::MinCap { c: 0.3 }.shift_to_zero(), ConcaveFn::MinCap { c: 0.3 });
    }

    #[test]
    fn grid_concavity() {
        let grid: Vec<f64> = (0..=100).map(|i| i as f64 * 0.1).collect();
        assert!(is_concave_on_grid(&ConcaveFn::Sqrt, &grid, 0.0).unwrap());
        assert!(!is_concave_on_grid(&|t: f64| t * t, &grid, 1e-12).unwrap());
        assert!(is_concave_on_grid(&|t: f64| t, &grid, 1e-12).unwrap());
        assert!(is_concave_on_grid(&|t: f64| t, &[0.0, 1.0], 0.0).is_err());
        assert!(is_concave_on_grid(&|t: f64| t, &[0.0, 2.0, 1.0], 0.0).is_err());
        assert!(is_concave_on_grid(&|t: f64| t, &[-1.0, 0.0, 1.0], 0.0).is_err());
    }

    #[test]
    fn e_convexity() {
        let g = log_grid(-3.0, 3.0);
        for p in [0.1, 0.5, 1.0] {
            assert!(is_e_convex(&ConcaveFn::Power { p }, &g, 1e-12).unwrap());
        }
        // min{e^t, 1} bends down at t = 0
        assert!(!is_e_convex(&ConcaveFn::MinCap { c: 1.0 }, &g, 1e-12).unwrap());
        assert!(is_e_convex(&ConcaveFn::Affine { a: 0.7, b: 2.0 }, &g, 1e-12).unwrap());
    }

    #[test]
    fn random_draws_are_concave_and_non_negative() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let grid = default_grid(2.0);
        for _ in 0..1000 {
            let f = random_concave(&mut rng, 5, 3.0);
            f.validate().unwrap();
            assert!(f.is_non_negative());
            assert!(is_concave_on_grid(&f, &grid, 1e-12).unwrap());
            let g = f.shift_to_zero();
            assert_eq!(g.shift_to_zero(), g);
        }
        let f = random_concave(&mut rng, 1, 1.0);
        match f {
            ConcaveFn::PiecewiseLinear { breakpoints, .. } => assert_eq!(breakpoints.len(), 2),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn literal_syntax() {
        assert_eq!("power:0.5".parse::<ConcaveFn>().unwrap(), ConcaveFn::Power { p: 0.5 });
        assert_eq!("mincap:0.7071".parse::<ConcaveFn>().unwrap(), ConcaveFn::MinCap { c: 0.7071 });
        assert_eq!("sqrt".parse::<ConcaveFn>().unwrap(), ConcaveFn::Sqrt);
        assert_eq!("affine:2,3".parse::<ConcaveFn>().unwrap(), ConcaveFn::Affine { a: 2.0, b: 3.0 });
        let f: ConcaveFn = "pwl:[0,0.5;1,1.5;2,2;0.25]".parse().unwrap();
        assert_eq!(f.eval(3.0).unwrap(), 2.25);
        assert!("cubic".parse::<ConcaveFn>().is_err());
        assert!("pwl:[0,0;1,1;2,3;0]".parse::<ConcaveFn>().is_err());
    }

    #[test]
    fn convex_power_rejects_p_at_most_one() {
        assert!(ConvexPower::new(1.0).is_err());
        assert_eq!(ConvexPower::new(2.0).unwrap().call(3.0).unwrap(), 9.0);
    }

    proptest! {
        #[test]
        fn literal_roundtrip(seed in any::<u64>()) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let f = random_concave(&mut rng, 6, 5.0);
            let back: ConcaveFn = f.to_string().parse().unwrap();
            prop_assert_eq!(back, f);
        }

        #[test]
        fn scalar_subadditivity_and_monotonicity(seed in any::<u64>(), a in 0.0f64..10.0, b in 0.0f64..10.0) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let f = random_concave(&mut rng, 6, 5.0);
            let (fa, fb, fab) = (f.eval(a).unwrap(), f.eval(b).unwrap(), f.eval(a + b).unwrap());
            prop_assert!(fab <= fa + fb + 1e-12);
            let (lo, hi) = if a <= b { (fa, fb) } else { (fb, fa) };
            prop_assert!(lo <= hi + 1e-12);
        }

        #[test]
        fn shift_is_idempotent(seed in any::<u64>()) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let f = random_concave(&mut rng, 6, 5.0);
            let once = f.shift_to_zero();
            let twice = once.shift_to_zero();
            for t in default_grid(1.5) {
                prop_assert_eq!(once.eval(t).unwrap(), twice.eval(t).unwrap());
                prop_assert!((once.eval(t).unwrap() - (f.eval(t).unwrap() - f.at_zero())).abs() < 1e-12);
            }
        }
    }
}
