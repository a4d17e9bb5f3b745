//! Every tunable default in one place. The CLI overrides fields from flags
//! and records the whole struct in its run manifest.

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct LabConfig {
    pub t: f64,
    /// Decision threshold τ for essential-positivity verdicts.
    pub tau: f64,
    /// Fraction of the eigenvalue sequence skipped before the tail window.
    pub window_frac: f64,
    /// Dimension for radial verdicts and the search objective.
    pub radial_dim: usize,
    pub vo_radii: Vec<f64>,
    pub vo_grid_density: usize,
    pub limitops_dim: usize,
    pub theta_count: usize,
    pub limitops_radii: Vec<f64>,
    pub berezin_radii: Vec<f64>,
    pub counterexample_radii: Vec<f64>,
    pub counterexample_dim: usize,
    /// Radii of the `w` rings on which the Berezin supremum is sampled.
    pub counterexample_w_radii: Vec<f64>,
    pub counterexample_w_angles: usize,
    pub search: SearchConfig,
}

impl Default for LabConfig {
    fn default() -> Self {
        Self {
            t: 2.0,
            tau: 1e-3,
            window_frac: 0.5,
            radial_dim: 256,
            vo_radii: vec![5.0, 10.0, 20.0],
            vo_grid_density: 64,
            limitops_dim: 80,
            theta_count: 16,
            limitops_radii: vec![4.0, 8.0, 16.0],
            berezin_radii: vec![1.0, 2.0, 4.0, 8.0, 12.0, 16.0],
            counterexample_radii: vec![0.0, 1.0, 2.0, 3.0],
            counterexample_dim: 100,
            counterexample_w_radii: vec![0.0, 1.0, 2.0, 3.0],
            counterexample_w_angles: 8,
            search: SearchConfig::default(),
        }
    }
}

/// How a piecewise-constant search profile continues past `r_max`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TailPolicy {
    /// The outermost ring value extends to infinity.
    LastRing,
    Zero,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct SearchConfig {
    pub rings: usize,
    pub r_max: f64,
    pub iters: usize,
    pub seed: u64,
    pub dim: usize,
    pub s_grid: Vec<f64>,
    pub window_frac: f64,
    pub tail: TailPolicy,
    /// Starting ring values; all ones when absent.
    pub start: Option<Vec<f64>>,
    /// Nelder–Mead steps per restart before an annealing move.
    pub nm_steps: usize,
    /// Candidates drawn per annealing move.
    pub anneal_batch: usize,
    pub initial_temperature: f64,
    pub perturbation: f64,
    /// Objectives below this are labelled as candidates.
    pub candidate_threshold: f64,
}

impl Default for SearchConfig {
    fn default() -> Self {
        Self {
            rings: 8,
            r_max: 6.0,
            iters: 500,
            seed: 0,
            dim: 256,
            s_grid: vec![4.0, 4.0 * 2f64.sqrt(), 8.0, 8.0 * 2f64.sqrt(), 16.0],
            window_frac: 0.5,
            tail: TailPolicy::LastRing,
            start: None,
            nm_steps: 40,
            anneal_batch: 4,
            initial_temperature: 0.05,
            perturbation: 0.3,
            candidate_threshold: 0.1,
        }
    }
}
