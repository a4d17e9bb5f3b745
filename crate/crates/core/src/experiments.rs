//! Scripted experiments: the Weyl-phase norm/Berezin ratio table, the radial
//! ratio objective and its optimizer, and cross-mode consistency runs.

use num_complex::Complex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::berezin::{berezin_from_matrix, radial_berezin_series};
use crate::config::{LabConfig, SearchConfig, TailPolicy};
use crate::error::{FockError, Result};
use crate::fock::{truncation_dim, FockParams};
use crate::scalar::Real;
use crate::spectra::{
    ess_positivity_limitops, ess_positivity_radial_with, ess_positivity_vo, leading_block_singular_values,
    symbol_shell_min, EssPosReport, Verdict,
};
use crate::symbols::{GeneralSymbol, RadialProfile, Symbol};
use crate::toeplitz::{assemble_weyl_phase, radial_eigenvalues};

/// Denominators below this make the ratio objective `+∞`.
pub const DENOMINATOR_FLOOR: f64 = 1e-14;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RatioRow<T> {
    pub absz: T,
    /// `e^{-|z|²/(2t)}`.
    pub ess_norm_exact: T,
    /// Median leading-block singular value of `T_{h_z}`.
    pub ess_norm_numeric: T,
    /// `max_w |Berezin(T_{h_z})(w)|` over the sample grid.
    pub berezin_sup: T,
    pub ratio: T,
    /// `e^{-3|z|²/(2t)}`, the exponent sometimes quoted for this supremum;
    /// kept for comparison with `berezin_sup`.
    pub berezin_sup_alt: T,
}

/// Rings of `w` sample points: the origin once, then `angles` points per positive radius.
pub fn ring_grid<T: Real>(radii: &[T], angles: usize) -> Vec<Complex<T>> {
    let mut pts = Vec::new();
    for r in radii {
        if *r == T::zero() {
            pts.push(Complex::new(T::zero(), T::zero()));
            continue;
        }
        for k in 0..angles {
            pts.push(Complex::from_polar(*r, T::TAU() * T::of_usize(k) / T::of_usize(angles)));
        }
    }
    pts
}

/// One row per `|z|` (with `z` on the positive real axis), Berezin values on the default grid.
pub fn counterexample_table<T: Real>(t: T, radii: &[T], dim: usize) -> Result<Vec<RatioRow<T>>> {
    let cfg = LabConfig::default();
    let w_radii: Vec<T> = cfg.counterexample_w_radii.iter().map(|r| T::of(*r)).collect();
    counterexample_table_with(t, radii, dim, &ring_grid(&w_radii, cfg.counterexample_w_angles))
}

pub fn counterexample_table_with<T: Real>(
    t: T,
    radii: &[T],
    dim: usize,
    w_points: &[Complex<T>],
) -> Result<Vec<RatioRow<T>>> {
    if radii.iter().any(|r| !(*r >= T::zero())) {
        return Err(FockError::invalid("radii must be nonnegative"));
    }
    if w_points.is_empty() {
        return Err(FockError::invalid("need at least one Berezin sample point"));
    }
    let p = FockParams::new(t, dim)?;
    radii
        .iter()
        .map(|absz| {
            let z = Complex::new(*absz, T::zero());
            let a = assemble_weyl_phase(z, &p)?;
            let mut sv = leading_block_singular_values(&a, (dim / 2).max(1))?;
            sv.sort_by(|x, y| x.partial_cmp(y).unwrap_or(std::cmp::Ordering::Equal));
            let median = if sv.len() % 2 == 1 {
                sv[sv.len() / 2]
            } else {
                (sv[sv.len() / 2 - 1] + sv[sv.len() / 2]) * T::of(0.5)
            };
            let berezin_sup = w_points
                .iter()
                .map(|w| berezin_from_matrix(&a, *w, &p).value.norm())
                .fold(T::zero(), T::max);
            let x = *absz * *absz / t;
            let ess_norm_exact = (-x * T::of(0.5)).exp();
            Ok(RatioRow {
                absz: *absz,
                ess_norm_exact,
                ess_norm_numeric: median,
                berezin_sup,
                ratio: ess_norm_exact / berezin_sup,
                berezin_sup_alt: (-x * T::of(1.5)).exp(),
            })
        })
        .collect()
}

/// CSV with header `absz,ess_exact,ess_numeric,berezin_sup,ratio`.
pub fn ratio_table_csv<T: Real>(rows: &[RatioRow<T>]) -> Result<String> {
    let io = |e: csv::Error| FockError::Io(e.to_string());
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["absz", "ess_exact", "ess_numeric", "berezin_sup", "ratio"]).map_err(io)?;
    for r in rows {
        w.write_record([r.absz, r.ess_norm_exact, r.ess_norm_numeric, r.berezin_sup, r.ratio].map(|v| v.to_string()))
            .map_err(io)?;
    }
    let bytes = w.into_inner().map_err(|e| FockError::Io(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| FockError::Io(e.to_string()))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RatioValue<T> {
    pub ratio: T,
    /// `max |λ_m|` over the tail window.
    pub numerator: T,
    /// `max |B(s)|` over the radius grid.
    pub denominator: T,
    /// Set when the denominator fell below the floor and `ratio` is `+∞`.
    pub degenerate: bool,
}

/// `R(f) = max_{m ∈ [⌊frac·M⌋, M)} |λ_m| / max_{s ∈ s_grid} |B(s)|`.
///
/// The series for `B` uses as many eigenvalues as the largest `s` needs
/// (kernel tail below `1e-15`), independently of `M`.
pub fn ratio_objective<T: Real>(
    f: &RadialProfile<T>,
    p: &FockParams<T>,
    s_grid: &[T],
    window_frac: T,
) -> Result<RatioValue<T>> {
    if s_grid.is_empty() {
        return Err(FockError::invalid("s grid must not be empty"));
    }
    if !(window_frac >= T::zero() && window_frac < T::one()) {
        return Err(FockError::invalid("window fraction must lie in [0, 1)"));
    }
    let m = p.dim();
    let s_max = s_grid.iter().fold(T::zero(), |a, s| a.max(s.abs()));
    let n = m.max(truncation_dim(s_max, p.t(), T::of(1e-15)) + 1);
    let e = radial_eigenvalues(f, &p.with_dim(n)?)?;
    let lo = (window_frac * T::of_usize(m)).floor().to_usize().unwrap_or(0).min(m - 1);
    let numerator = e.values[lo..m].iter().fold(T::zero(), |a, v| a.max(v.abs()));
    let denominator = s_grid
        .iter()
        .map(|s| radial_berezin_series(&e, *s).value.re.abs())
        .fold(T::zero(), T::max);
    let degenerate = !(denominator >= T::of(DENOMINATOR_FLOOR));
    Ok(RatioValue {
        ratio: if degenerate { T::infinity() } else { numerator / denominator },
        numerator,
        denominator,
        degenerate,
    })
}

/// Piecewise-constant profile on `values.len()` equal rings of `[0, r_max]`.
pub fn ring_profile<T: Real>(values: &[T], r_max: T, tail: TailPolicy) -> Result<RadialProfile<T>> {
    let n = values.len();
    let edges = (0..=n).map(|i| r_max * T::of_usize(i) / T::of_usize(n)).collect();
    let tail = match tail {
        TailPolicy::LastRing => values.last().copied().unwrap_or_else(T::zero),
        TailPolicy::Zero => T::zero(),
    };
    RadialProfile::piecewise(edges, values.to_vec(), tail)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SearchDiagnostics<T> {
    pub numerator: T,
    pub denominator: T,
    /// Objective of the best profile with the truncation dimension doubled.
    pub ratio_double_dim: T,
    /// `|B(s)|` at the largest grid radius. Below the denominator floor the
    /// profile looks compactly supported at the probed scale, where both
    /// limsups vanish and the ratio says nothing.
    pub berezin_at_s_max: T,
    pub compact_at_scale: bool,
    pub evaluations: usize,
    pub candidate: bool,
    pub label: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SearchResult<T> {
    pub best_profile: RadialProfile<T>,
    pub best_values: Vec<T>,
    pub objective: T,
    /// `(iteration, best objective so far)`.
    pub history: Vec<(usize, T)>,
    pub seed: u64,
    pub t: T,
    pub config: SearchConfig,
    pub diagnostics: SearchDiagnostics<T>,
}

struct Objective<'a, T> {
    cfg: &'a SearchConfig,
    p: FockParams<T>,
    s_grid: Vec<T>,
    r_max: T,
    window_frac: T,
}

impl<T: Real> Objective<'_, T> {
    fn eval(&self, x: &[T]) -> T {
        ring_profile(x, self.r_max, self.cfg.tail)
            .and_then(|f| ratio_objective(&f, &self.p, &self.s_grid, self.window_frac))
            .map(|r| r.ratio)
            .unwrap_or_else(|_| T::infinity())
    }

    fn eval_many(&self, xs: &[Vec<T>]) -> Vec<T> {
        xs.par_iter().map(|x| self.eval(x)).collect()
    }
}

fn clamp_unit<T: Real>(x: &mut [T]) {
    for v in x {
        *v = v.max(-T::one()).min(T::one());
    }
}

struct Tracker<T> {
    best_x: Vec<T>,
    best_f: T,
    history: Vec<(usize, T)>,
    evaluations: usize,
}

impl<T: Real> Tracker<T> {
    fn offer(&mut self, x: &[T], f: T) {
        if f < self.best_f {
            self.best_f = f;
            self.best_x = x.to_vec();
        }
    }

    fn record(&mut self, iteration: usize) {
        self.history.push((iteration, self.best_f));
    }
}

/// Minimizes [`ratio_objective`] over ring profiles with values in `[-1, 1]`.
///
/// Each iteration is either one Nelder–Mead step or one annealing move
/// (a batch of Gaussian perturbations of the current point, best one accepted
/// by the Metropolis rule). Nelder–Mead restarts from the current point after
/// every annealing move. All randomness comes from a ChaCha8 stream seeded
/// with `cfg.seed`, and batch evaluations are collected in order, so results
/// do not depend on the thread count.
pub fn search_minimize<T: Real>(cfg: &SearchConfig, t: T) -> Result<SearchResult<T>> {
    if cfg.rings < 2 {
        return Err(FockError::invalid("search needs at least two rings"));
    }
    if !(cfg.r_max > 0.0) {
        return Err(FockError::invalid("r_max must be positive"));
    }
    let obj = Objective {
        cfg,
        p: FockParams::new(t, cfg.dim)?,
        s_grid: cfg.s_grid.iter().map(|s| T::of(*s)).collect(),
        r_max: T::of(cfg.r_max),
        window_frac: T::of(cfg.window_frac),
    };
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut x0: Vec<T> = match &cfg.start {
        Some(s) if s.len() == cfg.rings => s.iter().map(|v| T::of(*v)).collect(),
        Some(_) => return Err(FockError::invalid("start vector length must equal the ring count")),
        None => vec![T::one(); cfg.rings],
    };
    clamp_unit(&mut x0);
    let f0 = obj.eval(&x0);
    let mut tr = Tracker { best_x: x0.clone(), best_f: f0, history: vec![(0, f0)], evaluations: 1 };
    let (mut cur_x, mut cur_f) = (x0, f0);
    let noise = Normal::new(0.0, cfg.perturbation.max(1e-12)).map_err(|e| FockError::invalid(e.to_string()))?;
    let mut it = 0;
    let mut restart = 0u32;
    while it < cfg.iters {
        let step = T::of(cfg.perturbation) * T::of(0.5).powi(restart.min(6) as i32) + T::of(0.05);
        let (x, f) = nelder_mead(&obj, &cur_x, cur_f, step, cfg, &mut rng, &mut it, &mut tr);
        cur_x = x;
        cur_f = f;
        restart += 1;
        if it >= cfg.iters {
            break;
        }
        let batch: Vec<Vec<T>> = (0..cfg.anneal_batch.max(1))
            .map(|_| {
                let mut y: Vec<T> = cur_x.iter().map(|v| *v + T::of(noise.sample(&mut rng))).collect();
                clamp_unit(&mut y);
                y
            })
            .collect();
        let fs = obj.eval_many(&batch);
        tr.evaluations += batch.len();
        let (k, fk) = fs
            .iter()
            .enumerate()
            .fold((0, T::infinity()), |(bk, bf), (k, f)| if *f < bf { (k, *f) } else { (bk, bf) });
        let temperature = cfg.initial_temperature * (1.0 - it as f64 / cfg.iters as f64);
        let u: f64 = rng.random();
        let delta = (fk - cur_f).as_f64();
        if fk <= cur_f || (temperature > 0.0 && delta.is_finite() && u < (-delta / temperature).exp()) {
            cur_x = batch[k].clone();
            cur_f = fk;
        }
        tr.offer(&batch[k], fk);
        it += 1;
        tr.record(it);
    }
    let best_profile = ring_profile(&tr.best_x, obj.r_max, cfg.tail)?;
    let final_value = ratio_objective(&best_profile, &obj.p, &obj.s_grid, obj.window_frac)?;
    let doubled = ratio_objective(&best_profile, &obj.p.with_dim(2 * cfg.dim)?, &obj.s_grid, obj.window_frac)?;
    let s_max = obj.s_grid.iter().fold(T::zero(), |a, s| a.max(s.abs()));
    let n = cfg.dim.max(truncation_dim(s_max, t, T::of(1e-15)) + 1);
    let e = radial_eigenvalues(&best_profile, &obj.p.with_dim(n)?)?;
    let berezin_at_s_max = radial_berezin_series(&e, s_max).value.re.abs();
    let compact_at_scale = berezin_at_s_max < T::of(DENOMINATOR_FLOOR);
    let candidate = !compact_at_scale && final_value.ratio < T::of(cfg.candidate_threshold);
    let label = if compact_at_scale {
        "numerically compact at the probed scale, not a candidate"
    } else if candidate {
        "candidate, needs analytic follow-up"
    } else {
        "no candidate below threshold"
    }
    .to_string();
    Ok(SearchResult {
        best_profile,
        best_values: tr.best_x,
        objective: final_value.ratio,
        history: tr.history,
        seed: cfg.seed,
        t,
        config: cfg.clone(),
        diagnostics: SearchDiagnostics {
            numerator: final_value.numerator,
            denominator: final_value.denominator,
            ratio_double_dim: doubled.ratio,
            berezin_at_s_max,
            compact_at_scale,
            evaluations: tr.evaluations,
            candidate,
            label,
        },
    })
}

#[allow(clippy::too_many_arguments)]
fn nelder_mead<T: Real>(
    obj: &Objective<'_, T>,
    start: &[T],
    f_start: T,
    step: T,
    cfg: &SearchConfig,
    rng: &mut ChaCha8Rng,
    it: &mut usize,
    tr: &mut Tracker<T>,
) -> (Vec<T>, T) {
    let n = start.len();
    let mut simplex: Vec<Vec<T>> = vec![start.to_vec()];
    for i in 0..n {
        let mut v = start.to_vec();
        let sign = if rng.random::<bool>() { T::one() } else { -T::one() };
        v[i] += sign * step;
        if v[i].abs() > T::one() {
            v[i] = start[i] - sign * step;
        }
        clamp_unit(&mut v);
        simplex.push(v);
    }
    let mut values = vec![f_start];
    values.extend(obj.eval_many(&simplex[1..]));
    tr.evaluations += n;
    for (x, f) in simplex.iter().zip(&values) {
        tr.offer(x, *f);
    }
    let half = T::of(0.5);
    for _ in 0..cfg.nm_steps {
        if *it >= cfg.iters {
            break;
        }
        let mut order: Vec<usize> = (0..=n).collect();
        order.sort_by(|a, b| values[*a].partial_cmp(&values[*b]).unwrap_or(std::cmp::Ordering::Equal));
        simplex = order.iter().map(|i| simplex[*i].clone()).collect();
        values = order.iter().map(|i| values[*i]).collect();
        let spread = (0..n).fold(T::zero(), |m, j| m.max((simplex[n][j] - simplex[0][j]).abs()));
        if spread < T::of(1e-9) {
            break;
        }
        let centroid: Vec<T> = (0..n)
            .map(|j| simplex[..n].iter().map(|v| v[j]).sum::<T>() / T::of_usize(n))
            .collect();
        let along = |c: T| -> Vec<T> {
            let mut y: Vec<T> = (0..n).map(|j| centroid[j] + c * (simplex[n][j] - centroid[j])).collect();
            clamp_unit(&mut y);
            y
        };
        let xr = along(-T::one());
        let fr = obj.eval(&xr);
        tr.evaluations += 1;
        tr.offer(&xr, fr);
        if fr < values[0] {
            let xe = along(-T::of(2.0));
            let fe = obj.eval(&xe);
            tr.evaluations += 1;
            tr.offer(&xe, fe);
            if fe < fr {
                simplex[n] = xe;
                values[n] = fe;
            } else {
                simplex[n] = xr;
                values[n] = fr;
            }
        } else if fr < values[n - 1] {
            simplex[n] = xr;
            values[n] = fr;
        } else {
            let (xc, fc) = if fr < values[n] {
                let xc = along(-half);
                let fc = obj.eval(&xc);
                (xc, fc)
            } else {
                let xc = along(half);
                let fc = obj.eval(&xc);
                (xc, fc)
            };
            tr.evaluations += 1;
            tr.offer(&xc, fc);
            if fc < values[n].min(fr) {
                simplex[n] = xc;
                values[n] = fc;
            } else {
                let best = simplex[0].clone();
                let shrunk: Vec<Vec<T>> = simplex[1..]
                    .iter()
                    .map(|v| v.iter().zip(&best).map(|(a, b)| *b + half * (*a - *b)).collect())
                    .collect();
                let fs = obj.eval_many(&shrunk);
                tr.evaluations += n;
                for (i, (x, f)) in shrunk.into_iter().zip(fs).enumerate() {
                    tr.offer(&x, f);
                    simplex[i + 1] = x;
                    values[i + 1] = f;
                }
            }
        }
        *it += 1;
        tr.record(*it);
    }
    let k = (0..=n).fold(0, |b, i| if values[i] < values[b] { i } else { b });
    (simplex[k].clone(), values[k])
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CorollaryRow<T> {
    pub profile: String,
    pub radial: EssPosReport<T>,
    pub vo: EssPosReport<T>,
    pub agree: bool,
}

/// Radial-eigenvalue verdict next to the Berezin-on-shells verdict for each profile.
pub fn vo_corollary_demo<T: Real>(profiles: &[RadialProfile<T>], cfg: &LabConfig) -> Result<Vec<CorollaryRow<T>>> {
    let t = T::of(cfg.t);
    let tau = T::of(cfg.tau);
    let radial_p = FockParams::new(t, cfg.radial_dim)?;
    let vo_radii: Vec<T> = cfg.vo_radii.iter().map(|r| T::of(*r)).collect();
    profiles
        .iter()
        .map(|f| {
            let radial = ess_positivity_radial_with(f, &radial_p, tau, T::of(cfg.window_frac))?;
            let vo = ess_positivity_vo(&Symbol::Radial(f.clone()), &radial_p, &vo_radii, tau)?;
            Ok(CorollaryRow { profile: format!("radial:{f}"), agree: radial.verdict == vo.verdict, radial, vo })
        })
        .collect()
}

/// `(r²-5)/(r²+1)`, its negative, and the zero profile.
pub fn corollary_profiles<T: Real>() -> Vec<RadialProfile<T>> {
    let rat = RadialProfile::Rational { a: T::of(5.0), b: T::one() };
    vec![rat.clone(), RadialProfile::scaled(-T::one(), rat), RadialProfile::Constant(T::zero())]
}

/// Bounded radial profiles exercised by the consistency checks.
pub fn radial_catalog<T: Real>() -> Vec<RadialProfile<T>> {
    let v = |x: &[f64]| x.iter().map(|a| T::of(*a)).collect::<Vec<T>>();
    let mut out = vec![
        RadialProfile::Constant(T::of(0.5)),
        RadialProfile::Constant(-T::one()),
        RadialProfile::Constant(T::zero()),
        RadialProfile::Indicator(T::one()),
        RadialProfile::PiecewiseConstant { edges: v(&[0.0, 1.0, 2.0]), values: v(&[-1.0, 0.5]), tail: T::of(0.25) },
        RadialProfile::Sampled { radii: v(&[0.0, 1.0, 3.0]), values: v(&[-0.5, 0.2, 0.8]) },
    ];
    out.extend(corollary_profiles::<T>().into_iter().take(2));
    out
}

/// Bounded real symbols from the general catalog.
pub fn general_catalog<T: Real>() -> Vec<Symbol<T>> {
    ["dir", "absdir", "cosre", "halfplane", "bump"]
        .iter()
        .filter_map(|n| GeneralSymbol::named(n).map(Symbol::General))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConsistencyRow<T> {
    pub symbol: String,
    /// Verdict the row was checked against.
    pub verdict: Verdict,
    /// The quantity the implication constrains: the Berezin limsup estimate
    /// for radial rows, the outer-shell symbol minimum for limit-operator rows.
    pub statistic: T,
    pub holds: bool,
}

/// Two implications, checked over the catalogs:
/// an essentially positive radial operator has Berezin limsup `>= -τ`, and a
/// symbol with nonnegative liminf is never reported not positive by the
/// limit-operator sampler.
pub fn prop_consistency<T: Real>(cfg: &LabConfig) -> Result<(Vec<ConsistencyRow<T>>, Vec<ConsistencyRow<T>>)> {
    let t = T::of(cfg.t);
    let tau = T::of(cfg.tau);
    let radial_p = FockParams::new(t, cfg.radial_dim)?;
    let s_max = cfg.berezin_radii.iter().fold(0.0f64, |a, b| a.max(*b));
    let series_p = radial_p.with_dim(cfg.radial_dim.max(truncation_dim(T::of(s_max), t, T::of(1e-15)) + 1))?;
    let tail_radii: Vec<T> = cfg.berezin_radii.iter().filter(|s| **s >= s_max / 2.0).map(|s| T::of(*s)).collect();

    let mut berezin_rows = Vec::new();
    for f in radial_catalog::<T>() {
        let report = ess_positivity_radial_with(&f, &radial_p, tau, T::of(cfg.window_frac))?;
        let e = radial_eigenvalues(&f, &series_p)?;
        let limsup = tail_radii
            .iter()
            .map(|s| radial_berezin_series(&e, *s).value.re)
            .fold(T::neg_infinity(), T::max);
        let holds = report.verdict != Verdict::Positive || limsup >= -tau;
        berezin_rows.push(ConsistencyRow { symbol: format!("radial:{f}"), verdict: report.verdict, statistic: limsup, holds });
    }

    let lim_p = FockParams::new(t, cfg.limitops_dim)?;
    let lim_radii: Vec<T> = cfg.limitops_radii.iter().map(|r| T::of(*r)).collect();
    let outer = *lim_radii.last().ok_or_else(|| FockError::invalid("no limit-operator radii"))?;
    let mut symbols: Vec<Symbol<T>> = radial_catalog::<T>().into_iter().map(Symbol::Radial).collect();
    symbols.extend(general_catalog::<T>());
    let mut limitop_rows = Vec::new();
    for s in symbols {
        let liminf = symbol_shell_min(&s, outer, &lim_p);
        if liminf < T::zero() {
            continue;
        }
        let report = ess_positivity_limitops(&s, &lim_p, cfg.theta_count, &lim_radii, tau)?;
        limitop_rows.push(ConsistencyRow {
            symbol: s.to_string(),
            verdict: report.verdict,
            statistic: liminf,
            holds: report.verdict != Verdict::NotPositive,
        });
    }
    Ok((berezin_rows, limitop_rows))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_radius_row() {
        let rows = counterexample_table(2.0f64, &[0.0], 40).unwrap();
        let r = rows[0];
        assert!((r.ess_norm_exact - 1.0).abs() < 1e-15);
        assert!((r.berezin_sup - 1.0).abs() < 1e-14);
        assert!((r.ratio - 1.0).abs() < 1e-14);
        let csv = ratio_table_csv(&rows).unwrap();
        assert!(csv.starts_with("absz,ess_exact,ess_numeric,berezin_sup,ratio\n0,1,"));
    }

    #[test]
    fn constant_ratio_is_one_and_scale_free() {
        let p = FockParams::new(2.0f64, 256).unwrap();
        let s = SearchConfig::default().s_grid;
        for c in [1.0, -0.3] {
            let r = ratio_objective(&RadialProfile::Constant(c), &p, &s, 0.5).unwrap();
            assert!((r.ratio - 1.0).abs() < 1e-12);
        }
        let f = RadialProfile::rational(5.0, 1.0).unwrap();
        let a = ratio_objective(&f, &p, &s, 0.5).unwrap().ratio;
        let b = ratio_objective(&RadialProfile::scaled(-0.25, f), &p, &s, 0.5).unwrap().ratio;
        assert!((a - b).abs() < 1e-12 * a);
    }

    #[test]
    fn indicator_ratio_is_finite() {
        let p = FockParams::new(2.0f64, 64).unwrap();
        let r = ratio_objective(&RadialProfile::indicator(1.0).unwrap(), &p, &[0.5, 1.0, 2.0], 0.5).unwrap();
        assert!(r.ratio.is_finite() && r.ratio > 0.0 && !r.degenerate);
        let far = ratio_objective(&RadialProfile::indicator(1.0).unwrap(), &p, &[40.0], 0.5).unwrap();
        assert!(far.degenerate && far.ratio.is_infinite());
    }

    #[test]
    fn evaluation_only_search() {
        let cfg = SearchConfig { rings: 2, iters: 0, ..SearchConfig::default() };
        let r = search_minimize(&cfg, 2.0f64).unwrap();
        assert!((r.objective - 1.0).abs() < 1e-12);
        assert_eq!(r.history, vec![(0, r.objective)]);
    }

    #[test]
    fn short_search_is_monotone_and_reproducible() {
        let cfg = SearchConfig { rings: 3, iters: 30, dim: 96, s_grid: vec![2.0, 4.0, 8.0], ..SearchConfig::default() };
        let a = search_minimize(&cfg, 2.0f64).unwrap();
        let b = search_minimize(&cfg, 2.0f64).unwrap();
        assert_eq!(a, b);
        assert!(a.history.windows(2).all(|w| w[1].1 <= w[0].1));
        assert!(a.objective <= a.history[0].1);
        let p = FockParams::new(2.0, 96).unwrap();
        let again = ratio_objective(&a.best_profile, &p, &[2.0, 4.0, 8.0], 0.5).unwrap().ratio;
        assert_eq!(again, a.objective);
    }

    #[test]
    fn corollary_demo_defaults() {
        let rows = vo_corollary_demo(&corollary_profiles::<f64>(), &LabConfig::default()).unwrap();
        let verdicts: Vec<_> = rows.iter().map(|r| (r.radial.verdict, r.vo.verdict)).collect();
        assert_eq!(
            verdicts,
            vec![
                (Verdict::Positive, Verdict::Positive),
                (Verdict::NotPositive, Verdict::NotPositive),
                (Verdict::Inconclusive, Verdict::Inconclusive)
            ]
        );
        assert!(rows.iter().all(|r| r.agree));
    }
}
