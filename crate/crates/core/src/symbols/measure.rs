use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::error::{FockError, Result};
use crate::scalar::Real;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Atom<T> {
    pub position: Complex<T>,
    pub weight: T,
}

/// Finite signed combination of point masses `ν = Σ w_i δ_{p_i}`.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct SignedAtomicMeasure<T> {
    atoms: Vec<Atom<T>>,
}

impl<T: Real> SignedAtomicMeasure<T> {
    /// Atoms must have distinct positions and nonzero finite weights.
    pub fn new(atoms: Vec<Atom<T>>) -> Result<Self> {
        for (i, a) in atoms.iter().enumerate() {
            if a.weight == T::zero() || !a.weight.is_finite() {
                return Err(FockError::invalid(format!("atom {i} has zero or non-finite weight")));
            }
            if !(a.position.re.is_finite() && a.position.im.is_finite()) {
                return Err(FockError::invalid(format!("atom {i} has a non-finite position")));
            }
            if atoms[..i].iter().any(|b| b.position == a.position) {
                return Err(FockError::invalid(format!("atom {i} repeats an earlier position")));
            }
        }
        Ok(Self { atoms })
    }

    pub fn empty() -> Self {
        Self { atoms: Vec::new() }
    }

    pub fn dirac(position: Complex<T>, weight: T) -> Result<Self> {
        Self::new(vec![Atom { position, weight }])
    }

    pub fn atoms(&self) -> &[Atom<T>] {
        &self.atoms
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    /// `|ν| = ν₊ + ν₋`.
    pub fn total_variation(&self) -> Self {
        Self {
            atoms: self
                .atoms
                .iter()
                .map(|a| Atom { position: a.position, weight: a.weight.abs() })
                .collect(),
        }
    }

    pub fn scaled(&self, c: T) -> Self {
        Self {
            atoms: self
                .atoms
                .iter()
                .map(|a| Atom { position: a.position, weight: a.weight * c })
                .filter(|a| a.weight != T::zero())
                .collect(),
        }
    }
}

/// Hahn–Jordan split `ν = ν₊ - ν₋` by weight sign; both parts carry positive weights.
pub fn hahn_jordan<T: Real>(m: &SignedAtomicMeasure<T>) -> (SignedAtomicMeasure<T>, SignedAtomicMeasure<T>) {
    let (pos, neg): (Vec<Atom<T>>, Vec<Atom<T>>) = m.atoms.iter().partition(|a| a.weight > T::zero());
    let neg = neg
        .into_iter()
        .map(|a| Atom { position: a.position, weight: -a.weight })
        .collect();
    (SignedAtomicMeasure { atoms: pos }, SignedAtomicMeasure { atoms: neg })
}

/// `max_z |ν|(B̄(z, R))` over the supplied centres; a lower bound for the
/// Fock–Carleson constant `sup_z |ν|(B(z, R))`.
pub fn carleson_ball_bound<T: Real>(m: &SignedAtomicMeasure<T>, radius: T, centers: &[Complex<T>]) -> Result<T> {
    if !(radius > T::zero()) {
        return Err(FockError::invalid("ball radius must be positive"));
    }
    let r2 = radius * radius;
    Ok(centers
        .iter()
        .map(|c| {
            m.atoms
                .iter()
                .filter(|a| (a.position - c).norm_sqr() <= r2)
                .map(|a| a.weight.abs())
                .fold(T::zero(), |acc, w| acc + w)
        })
        .fold(T::zero(), T::max))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex<f64> {
        Complex::new(re, im)
    }

    #[test]
    fn rejects_bad_atoms() {
        assert!(SignedAtomicMeasure::new(vec![Atom { position: c(0.0, 0.0), weight: 0.0 }]).is_err());
        let dup = vec![
            Atom { position: c(1.0, 0.0), weight: 1.0 },
            Atom { position: c(1.0, 0.0), weight: 2.0 },
        ];
        assert!(SignedAtomicMeasure::new(dup).is_err());
    }

    #[test]
    fn hahn_jordan_examples() {
        let all_pos = SignedAtomicMeasure::new(vec![
            Atom { position: c(0.0, 0.0), weight: 1.0 },
            Atom { position: c(2.0, 0.0), weight: 0.5 },
        ])
        .unwrap();
        let (p, n) = hahn_jordan(&all_pos);
        assert_eq!(p, all_pos);
        assert!(n.is_empty());

        let m = SignedAtomicMeasure::new(vec![
            Atom { position: c(0.0, 0.0), weight: 1.0 },
            Atom { position: c(1.0, 0.0), weight: -2.0 },
        ])
        .unwrap();
        let (p, n) = hahn_jordan(&m);
        assert_eq!(p.atoms(), &[Atom { position: c(0.0, 0.0), weight: 1.0 }]);
        assert_eq!(n.atoms(), &[Atom { position: c(1.0, 0.0), weight: 2.0 }]);
        let tv: Vec<f64> = m.total_variation().atoms().iter().map(|a| a.weight).collect();
        assert_eq!(tv, vec![1.0, 2.0]);
    }

    #[test]
    fn carleson_examples() {
        let empty = SignedAtomicMeasure::<f64>::empty();
        assert_eq!(carleson_ball_bound(&empty, 1.0, &[c(0.0, 0.0)]).unwrap(), 0.0);

        let single = SignedAtomicMeasure::dirac(c(1.0, 1.0), -3.0).unwrap();
        for r in [0.1, 1.0, 10.0] {
            assert_eq!(carleson_ball_bound(&single, r, &[c(1.0, 1.0)]).unwrap(), 3.0);
        }

        let r = 0.75;
        let pair = SignedAtomicMeasure::new(vec![
            Atom { position: c(0.0, 0.0), weight: 1.0 },
            Atom { position: c(2.0 * r, 0.0), weight: 1.0 },
        ])
        .unwrap();
        assert_eq!(carleson_ball_bound(&pair, r, &[c(0.0, 0.0)]).unwrap(), 1.0);
        assert_eq!(carleson_ball_bound(&pair, r, &[c(2.0 * r, 0.0)]).unwrap(), 1.0);
        assert_eq!(carleson_ball_bound(&pair, r, &[c(r, 0.0)]).unwrap(), 2.0);
        assert!(carleson_ball_bound(&pair, 0.0, &[]).is_err());
    }
}
