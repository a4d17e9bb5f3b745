//! Symbols of Toeplitz operators: radial profiles, general bounded
//! functions, the Weyl phase `h_z`, translates, and atomic signed measures.

mod measure;
mod parse;

use std::fmt;
use std::path::Path;
use std::sync::Arc;

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::error::{FockError, Result};
use crate::fock::FockParams;
use crate::scalar::Real;

pub use measure::{carleson_ball_bound, hahn_jordan, Atom, SignedAtomicMeasure};
pub use parse::parse_symbol;

/// Real radial profile `f(|w|)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "params", rename_all = "snake_case")]
pub enum RadialProfile<T> {
    Constant(T),
    /// `r^k`, `k` even.
    Power(u32),
    /// `χ_{[0, R]}`.
    Indicator(T),
    /// Value `values[l]` on `[edges[l], edges[l+1])`, `tail` beyond the last edge.
    PiecewiseConstant { edges: Vec<T>, values: Vec<T>, tail: T },
    /// `(r² - a) / (r² + b)` with `b > 0`.
    Rational { a: T, b: T },
    /// Linear interpolation through `(radii, values)`, constant outside.
    Sampled { radii: Vec<T>, values: Vec<T> },
    Scaled { factor: T, base: Box<RadialProfile<T>> },
}

impl<T: Real> RadialProfile<T> {
    pub fn power(k: u32) -> Result<Self> {
        if k % 2 != 0 {
            return Err(FockError::invalid("power profile exponent must be even"));
        }
        Ok(Self::Power(k))
    }

    pub fn indicator(radius: T) -> Result<Self> {
        if !(radius > T::zero()) || !radius.is_finite() {
            return Err(FockError::invalid("indicator radius must be positive"));
        }
        Ok(Self::Indicator(radius))
    }

    /// Values are clamped to `[-1, 1]`.
    pub fn piecewise(edges: Vec<T>, values: Vec<T>, tail: T) -> Result<Self> {
        if edges.len() < 2 {
            return Err(FockError::invalid("piecewise profile needs at least two edges"));
        }
        if edges[0] != T::zero() {
            return Err(FockError::invalid("piecewise edges must start at 0"));
        }
        if edges.windows(2).any(|w| !(w[0] < w[1])) || !edges.iter().all(|e| e.is_finite()) {
            return Err(FockError::invalid("piecewise edges must be finite and strictly increasing"));
        }
        if values.len() + 1 != edges.len() {
            return Err(FockError::invalid("piecewise profile needs one value per interval"));
        }
        if !values.iter().all(|v| v.is_finite()) || !tail.is_finite() {
            return Err(FockError::invalid("piecewise values must be finite"));
        }
        let one = T::one();
        let values = values.into_iter().map(|v| v.max(-one).min(one)).collect();
        Ok(Self::PiecewiseConstant { edges, values, tail })
    }

    pub fn rational(a: T, b: T) -> Result<Self> {
        if !(b > T::zero()) || !a.is_finite() || !b.is_finite() {
            return Err(FockError::invalid("rational profile needs finite a and b > 0"));
        }
        Ok(Self::Rational { a, b })
    }

    pub fn sampled(radii: Vec<T>, values: Vec<T>) -> Result<Self> {
        if radii.is_empty() || radii.len() != values.len() {
            return Err(FockError::invalid("sampled profile needs equally many radii and values"));
        }
        if radii[0] < T::zero() || radii.windows(2).any(|w| !(w[0] < w[1])) {
            return Err(FockError::invalid("sampled radii must be nonnegative and strictly increasing"));
        }
        if !radii.iter().chain(&values).all(|v| v.is_finite()) {
            return Err(FockError::invalid("sampled profile must be finite"));
        }
        Ok(Self::Sampled { radii, values })
    }

    /// Reads CSV rows `r,value` (an optional non-numeric header row is skipped).
    pub fn sampled_from_csv(path: &Path) -> Result<Self> {
        let mut reader = csv::ReaderBuilder::new()
            .has_headers(false)
            .trim(csv::Trim::All)
            .from_path(path)
            .map_err(|e| FockError::Io(e.to_string()))?;
        let (mut radii, mut values) = (Vec::new(), Vec::new());
        for (i, record) in reader.records().enumerate() {
            let record = record.map_err(|e| FockError::Io(e.to_string()))?;
            if record.len() < 2 {
                return Err(FockError::Io(format!("row {i}: expected `r,value`")));
            }
            match (record[0].parse::<f64>(), record[1].parse::<f64>()) {
                (Ok(r), Ok(v)) => {
                    radii.push(T::of(r));
                    values.push(T::of(v));
                }
                _ if i == 0 => continue,
                _ => return Err(FockError::Io(format!("row {i}: unparsable number"))),
            }
        }
        Self::sampled(radii, values)
    }

    pub fn scaled(factor: T, base: RadialProfile<T>) -> Self {
        Self::Scaled { factor, base: Box::new(base) }
    }

    pub fn eval(&self, r: T) -> T {
        match self {
            Self::Constant(c) => *c,
            Self::Power(k) => r.powi(*k as i32),
            Self::Indicator(big_r) => {
                if r <= *big_r {
                    T::one()
                } else {
                    T::zero()
                }
            }
            Self::PiecewiseConstant { edges, values, tail } => {
                // edges[0] = 0 <= r
                match edges.iter().position(|e| r < *e) {
                    Some(0) => values[0],
                    Some(i) => values[i - 1],
                    None => *tail,
                }
            }
            Self::Rational { a, b } => {
                let r2 = r * r;
                (r2 - *a) / (r2 + *b)
            }
            Self::Sampled { radii, values } => interpolate(radii, values, r),
            Self::Scaled { factor, base } => *factor * base.eval(r),
        }
    }

    /// `sup_r |f(r)|`, or `None` for unbounded profiles.
    pub fn sup_norm(&self) -> Option<T> {
        match self {
            Self::Constant(c) => Some(c.abs()),
            Self::Power(0) => Some(T::one()),
            Self::Power(_) => None,
            Self::Indicator(_) => Some(T::one()),
            Self::PiecewiseConstant { values, tail, .. } => {
                Some(values.iter().fold(tail.abs(), |m, v| m.max(v.abs())))
            }
            // Monotone in r² between -a/b and 1.
            Self::Rational { a, b } => Some((*a / *b).abs().max(T::one())),
            Self::Sampled { values, .. } => Some(values.iter().fold(T::zero(), |m, v| m.max(v.abs()))),
            Self::Scaled { factor, base } => base.sup_norm().map(|s| s * factor.abs()),
        }
    }

    /// Radii where the profile (or its derivative) jumps.
    pub fn breakpoints(&self) -> Vec<T> {
        match self {
            Self::Indicator(r) => vec![*r],
            Self::PiecewiseConstant { edges, .. } => edges[1..].to_vec(),
            Self::Sampled { radii, .. } => radii.iter().copied().filter(|r| *r > T::zero()).collect(),
            Self::Scaled { base, .. } => base.breakpoints(),
            _ => Vec::new(),
        }
    }

    /// `lim_{r→∞} f(r)` when it exists.
    pub fn limit_at_infinity(&self) -> Option<T> {
        match self {
            Self::Constant(c) => Some(*c),
            Self::Power(0) => Some(T::one()),
            Self::Power(_) => None,
            Self::Indicator(_) => Some(T::zero()),
            Self::PiecewiseConstant { tail, .. } => Some(*tail),
            Self::Rational { .. } => Some(T::one()),
            Self::Sampled { values, .. } => values.last().copied(),
            Self::Scaled { factor, base } => base.limit_at_infinity().map(|l| l * *factor),
        }
    }
}

fn interpolate<T: Real>(radii: &[T], values: &[T], r: T) -> T {
    if r <= radii[0] {
        return values[0];
    }
    let n = radii.len();
    if r >= radii[n - 1] {
        return values[n - 1];
    }
    let i = radii.partition_point(|x| *x <= r);
    let (r0, r1) = (radii[i - 1], radii[i]);
    let s = (r - r0) / (r1 - r0);
    values[i - 1] + s * (values[i] - values[i - 1])
}

/// Names accepted by [`GeneralSymbol::named`].
pub const GENERAL_CATALOG: [&str; 6] = ["re", "dir", "absdir", "cosre", "halfplane", "bump"];

type Evaluator<T> = Arc<dyn Fn(Complex<T>) -> Complex<T> + Send + Sync>;

/// A bounded function `ℂ → ℂ` given by a closure with a declared sup-norm bound.
#[derive(Clone)]
pub struct GeneralSymbol<T> {
    name: String,
    bound: T,
    real: bool,
    f: Evaluator<T>,
}

impl<T: Real> GeneralSymbol<T> {
    /// `bound` may be infinite for unbounded test functions.
    pub fn new(
        name: impl Into<String>,
        bound: T,
        real: bool,
        f: impl Fn(Complex<T>) -> Complex<T> + Send + Sync + 'static,
    ) -> Self {
        Self { name: name.into(), bound, real, f: Arc::new(f) }
    }

    /// Built-in catalog addressable from the `fn:<name>` form.
    pub fn named(name: &str) -> Option<Self> {
        let re = |x: T| Complex::new(x, T::zero());
        let one = T::one();
        Some(match name {
            "re" => Self::new("re", T::infinity(), true, move |w: Complex<T>| re(w.re)),
            "dir" => Self::new("dir", one, true, move |w: Complex<T>| {
                re((w.re / (one + w.norm())).max(-one).min(one))
            }),
            "absdir" => Self::new("absdir", one, true, move |w: Complex<T>| {
                re(w.re.abs() / (one + w.norm()))
            }),
            "cosre" => Self::new("cosre", one, true, move |w: Complex<T>| re(w.re.cos())),
            "halfplane" => Self::new("halfplane", one, true, move |w: Complex<T>| {
                re(if w.re > T::zero() { one } else { T::zero() })
            }),
            "bump" => Self::new("bump", one, true, move |w: Complex<T>| {
                re((-(w - Complex::new(one, T::zero())).norm_sqr()).exp())
            }),
            _ => return None,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn bound(&self) -> T {
        self.bound
    }

    pub fn is_real(&self) -> bool {
        self.real
    }

    pub fn eval(&self, w: Complex<T>) -> Complex<T> {
        (self.f)(w)
    }
}

impl<T: fmt::Debug> fmt::Debug for GeneralSymbol<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GeneralSymbol")
            .field("name", &self.name)
            .field("bound", &self.bound)
            .field("real", &self.real)
            .finish_non_exhaustive()
    }
}

#[derive(Debug, Clone)]
pub enum Symbol<T> {
    Radial(RadialProfile<T>),
    General(GeneralSymbol<T>),
    /// `h_z(w) = e^{2i Im(w z̄)/t}`.
    WeylPhase(Complex<T>),
    /// `w ↦ base(w - shift)`.
    Translated { base: Box<Symbol<T>>, shift: Complex<T> },
    AtomicMeasure(SignedAtomicMeasure<T>),
}

impl<T: Real> Symbol<T> {
    pub fn is_measure(&self) -> bool {
        matches!(self, Symbol::AtomicMeasure(_))
    }

    pub fn is_real(&self) -> bool {
        match self {
            Symbol::Radial(_) | Symbol::AtomicMeasure(_) => true,
            Symbol::General(g) => g.is_real(),
            Symbol::WeylPhase(z) => z.norm_sqr() == T::zero(),
            Symbol::Translated { base, .. } => base.is_real(),
        }
    }

    /// Declared `sup |f|`, `None` if unbounded or not a function.
    pub fn sup_bound(&self) -> Option<T> {
        match self {
            Symbol::Radial(p) => p.sup_norm(),
            Symbol::General(g) => Some(g.bound()).filter(|b| b.is_finite()),
            Symbol::WeylPhase(_) => Some(T::one()),
            Symbol::Translated { base, .. } => base.sup_bound(),
            Symbol::AtomicMeasure(_) => None,
        }
    }

    pub fn as_radial(&self) -> Option<&RadialProfile<T>> {
        match self {
            Symbol::Radial(p) => Some(p),
            _ => None,
        }
    }

    pub(crate) fn ensure_function(&self) -> Result<()> {
        match self {
            Symbol::AtomicMeasure(_) => Err(FockError::MeasureNotEvaluable),
            Symbol::Translated { base, .. } => base.ensure_function(),
            _ => Ok(()),
        }
    }

    /// Pointwise value; callers must have checked `ensure_function`.
    pub(crate) fn value(&self, w: Complex<T>, t: T) -> Complex<T> {
        match self {
            Symbol::Radial(p) => Complex::new(p.eval(w.norm()), T::zero()),
            Symbol::General(g) => g.eval(w),
            Symbol::WeylPhase(z) => weyl_phase(*z, w, t),
            Symbol::Translated { base, shift } => base.value(w - shift, t),
            Symbol::AtomicMeasure(_) => Complex::new(T::nan(), T::nan()),
        }
    }
}

fn weyl_phase<T: Real>(z: Complex<T>, w: Complex<T>, t: T) -> Complex<T> {
    let phase = T::of(2.0) * (w * z.conj()).im / t;
    Complex::from_polar(T::one(), phase)
}

/// Value of a function symbol at `w`.
pub fn evaluate<T: Real>(s: &Symbol<T>, w: Complex<T>, p: &FockParams<T>) -> Result<Complex<T>> {
    s.ensure_function()?;
    Ok(s.value(w, p.t()))
}

/// `α_z(f)(w) = f(w - z)`.
pub fn translate<T: Real>(s: &Symbol<T>, z: Complex<T>) -> Result<Symbol<T>> {
    s.ensure_function()?;
    Ok(Symbol::Translated { base: Box::new(s.clone()), shift: z })
}

/// Grid lower bound for `sup_{|z|=ρ} sup_{|w|<=1} |f(z) - f(z - w)|`.
///
/// `grid_density` angular samples of `z`; the unit disc is sampled on
/// `max(2, density/16)` rings with twice as many angles per ring.
pub fn vo_modulus<T: Real>(s: &Symbol<T>, rho: T, p: &FockParams<T>, grid_density: usize) -> Result<T> {
    s.ensure_function()?;
    let t = p.t();
    let n_z = grid_density.max(4);
    let rings = (grid_density / 16).max(2);
    let per_ring = 2 * rings;
    let mut disc = Vec::with_capacity(rings * per_ring);
    for i in 1..=rings {
        let r = T::of_usize(i) / T::of_usize(rings);
        for k in 0..per_ring {
            let theta = T::TAU() * T::of_usize(k) / T::of_usize(per_ring);
            disc.push(Complex::from_polar(r, theta));
        }
    }
    let mut best = T::zero();
    for k in 0..n_z {
        let z = Complex::from_polar(rho, T::TAU() * T::of_usize(k) / T::of_usize(n_z));
        let fz = s.value(z, t);
        for w in &disc {
            best = best.max((fz - s.value(z - w, t)).norm());
        }
    }
    Ok(best)
}

impl<T: Real> fmt::Display for RadialProfile<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[T]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
        match self {
            Self::Constant(c) => write!(f, "const:{c}"),
            Self::Power(k) => write!(f, "pow:{k}"),
            Self::Indicator(r) => write!(f, "ind:{r}"),
            Self::PiecewiseConstant { edges, values, tail } => {
                write!(f, "pw:{}|{}|{}", join(edges), join(values), tail)
            }
            Self::Rational { a, b } => write!(f, "rat:{a},{b}"),
            Self::Sampled { radii, values } => write!(f, "samp:{}|{}", join(radii), join(values)),
            Self::Scaled { factor, base } => write!(f, "scale:{factor}:{base}"),
        }
    }
}

pub(crate) fn fmt_complex<T: Real>(z: Complex<T>) -> String {
    let sign = if z.im.is_sign_negative() { '-' } else { '+' };
    format!("{}{}{}i", z.re, sign, z.im.abs())
}

impl<T: Real> fmt::Display for Symbol<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Symbol::Radial(p) => write!(f, "radial:{p}"),
            Symbol::General(g) => write!(f, "fn:{}", g.name()),
            Symbol::WeylPhase(z) => write!(f, "weyl:{}", fmt_complex(*z)),
            Symbol::Translated { base, shift } => write!(f, "trans:{}:{}", fmt_complex(*shift), base),
            Symbol::AtomicMeasure(m) => {
                let atoms: Vec<String> = m
                    .atoms()
                    .iter()
                    .map(|a| format!("({},{},{})", a.position.re, a.position.im, a.weight))
                    .collect();
                write!(f, "measure:[{}]", atoms.join(";"))
            }
        }
    }
}
