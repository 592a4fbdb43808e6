//! Finitely supported probability measures on the real line.
//!
//! Every [`DiscreteMeasure`] is kept in canonical form: atoms strictly
//! increasing, weights strictly positive and summing to one. Quantiles use the
//! left-continuous generalized inverse `F⁻¹(u) = inf{x : F(x) ≥ u}`, which
//! makes the 2-Wasserstein distance an exact finite sum over merged
//! cumulative-weight breakpoints.

use serde::{Deserialize, Serialize};

use crate::error::{ensure, Error, Result};
use crate::maps::MonotoneMap;

/// Largest deviation of the raw total mass from one that is still renormalized.
pub const MASS_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "MeasureRepr", into = "MeasureRepr")]
pub struct DiscreteMeasure {
    atoms: Vec<f64>,
    weights: Vec<f64>,
    /// Prefix sums of `weights`; the last entry is exactly 1.
    cumulative: Vec<f64>,
}

#[derive(Serialize, Deserialize)]
struct MeasureRepr {
    atoms: Vec<f64>,
    weights: Vec<f64>,
}

impl TryFrom<MeasureRepr> for DiscreteMeasure {
    type Error = Error;

    fn try_from(repr: MeasureRepr) -> Result<Self> {
        DiscreteMeasure::new(repr.atoms, repr.weights)
    }
}

impl From<DiscreteMeasure> for MeasureRepr {
    fn from(m: DiscreteMeasure) -> Self {
        MeasureRepr {
            atoms: m.atoms,
            weights: m.weights,
        }
    }
}

impl DiscreteMeasure {
    /// Builds a measure from atoms and weights, canonicalizing on the way.
    ///
    /// Zero weights are dropped, equal atoms are merged and the result is
    /// renormalized when the total mass is within [`MASS_TOLERANCE`] of one.
    /// Anything else (negative or non-finite input, mass far from one) is
    /// rejected.
    pub fn new(atoms: Vec<f64>, weights: Vec<f64>) -> Result<Self> {
        ensure!(
            atoms.len() == weights.len(),
            Argument,
            "{} atoms but {} weights",
            atoms.len(),
            weights.len()
        );
        ensure!(!atoms.is_empty(), Argument, "measure needs at least one atom");
        let pairs = atoms.into_iter().zip(weights).collect();
        Self::from_pairs(pairs)
    }

    /// Point mass at `x`.
    pub fn dirac(x: f64) -> Result<Self> {
        Self::new(vec![x], vec![1.0])
    }

    /// Equal weights on the given atoms.
    pub fn uniform_on(atoms: &[f64]) -> Result<Self> {
        ensure!(!atoms.is_empty(), Argument, "measure needs at least one atom");
        let w = 1.0 / atoms.len() as f64;
        Self::new(atoms.to_vec(), vec![w; atoms.len()])
    }

    fn from_pairs(mut pairs: Vec<(f64, f64)>) -> Result<Self> {
        for &(x, w) in &pairs {
            ensure!(x.is_finite(), Argument, "non-finite atom {x}");
            ensure!(
                w.is_finite() && w >= 0.0,
                Argument,
                "weight {w} at atom {x} is not a finite nonnegative number"
            );
        }
        pairs.retain(|&(_, w)| w > 0.0);
        ensure!(!pairs.is_empty(), Argument, "all weights are zero");
        pairs.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.total_cmp(&b.1)));

        let mut atoms: Vec<f64> = Vec::with_capacity(pairs.len());
        let mut weights: Vec<f64> = Vec::with_capacity(pairs.len());
        for (x, w) in pairs {
            match atoms.last() {
                Some(&last) if last == x => *weights.last_mut().unwrap() += w,
                _ => {
                    atoms.push(x);
                    weights.push(w);
                }
            }
        }

        let total: f64 = weights.iter().sum();
        ensure!(
            (total - 1.0).abs() <= MASS_TOLERANCE,
            Argument,
            "total mass {total} differs from 1 by more than {MASS_TOLERANCE}"
        );
        if total != 1.0 {
            for w in &mut weights {
                *w /= total;
            }
        }

        let mut cumulative = Vec::with_capacity(weights.len());
        let mut acc = 0.0;
        for &w in &weights {
            acc += w;
            cumulative.push(acc.min(1.0));
        }
        *cumulative.last_mut().unwrap() = 1.0;

        Ok(Self {
            atoms,
            weights,
            cumulative,
        })
    }

    pub fn atoms(&self) -> &[f64] {
        &self.atoms
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// Cumulative weights `F(x_0), F(x_1), …`; the last entry is exactly 1.
    pub fn cumulative(&self) -> &[f64] {
        &self.cumulative
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn is_dirac(&self) -> bool {
        self.atoms.len() == 1
    }

    pub fn min_atom(&self) -> f64 {
        self.atoms[0]
    }

    pub fn max_atom(&self) -> f64 {
        self.atoms[self.atoms.len() - 1]
    }

    pub fn mean(&self) -> f64 {
        self.atoms.iter().zip(&self.weights).map(|(x, w)| x * w).sum()
    }

    /// Right-continuous distribution function: total weight of atoms `≤ x`.
    pub fn cdf(&self, x: f64) -> f64 {
        match self.atoms.partition_point(|&a| a <= x) {
            0 => 0.0,
            k => self.cumulative[k - 1],
        }
    }

    /// Left-continuous quantile `inf{x : F(x) ≥ u}` for `u ∈ (0, 1]`.
    pub fn quantile(&self, u: f64) -> Result<f64> {
        ensure!(u > 0.0 && u <= 1.0, Domain, "quantile level {u} outside (0, 1]");
        let k = self.cumulative.partition_point(|&c| c < u);
        Ok(self.atoms[k.min(self.atoms.len() - 1)])
    }

    /// Applies `f` to every atom and re-canonicalizes (atoms landing on the
    /// same value are merged).
    pub fn map_atoms<F>(&self, mut f: F) -> Result<Self>
    where
        F: FnMut(f64) -> Result<f64>,
    {
        let pairs = self
            .atoms
            .iter()
            .zip(&self.weights)
            .map(|(&x, &w)| Ok((f(x)?, w)))
            .collect::<Result<Vec<_>>>()?;
        Self::from_pairs(pairs)
    }

    /// `T # m`, the law of `T(X)` for `X ~ m`.
    pub fn pushforward(&self, map: &MonotoneMap) -> Result<Self> {
        self.map_atoms(|x| map.eval(x))
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string(self)?)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }
}

/// Walks the merged cumulative-weight breakpoints of two measures.
///
/// Calls `visit(len, i, j)` for every nonempty `u`-segment on which the
/// quantile of `a` is `a.atoms[i]` and the quantile of `b` is `b.atoms[j]`.
pub(crate) fn for_each_quantile_segment<F>(a: &DiscreteMeasure, b: &DiscreteMeasure, mut visit: F)
where
    F: FnMut(f64, usize, usize),
{
    let (ca, cb) = (a.cumulative(), b.cumulative());
    let (mut i, mut j) = (0, 0);
    let mut prev = 0.0;
    while i < ca.len() && j < cb.len() {
        let next = ca[i].min(cb[j]);
        let len = next - prev;
        if len > 0.0 {
            visit(len, i, j);
        }
        prev = next;
        if ca[i] == next {
            i += 1;
        }
        if cb[j] == next {
            j += 1;
        }
    }
}

/// Exact squared 2-Wasserstein distance `∫₀¹ (F₁⁻¹(u) − F₂⁻¹(u))² du`.
pub fn wasserstein2_sq(a: &DiscreteMeasure, b: &DiscreteMeasure) -> f64 {
    let mut total = 0.0;
    for_each_quantile_segment(a, b, |len, i, j| {
        let d = a.atoms[i] - b.atoms[j];
        total += len * d * d;
    });
    total
}

/// Linear average `N⁻¹ Σ μ_i`, the empirical version of the design measure `Q`.
pub fn average_measure(measures: &[DiscreteMeasure]) -> Result<DiscreteMeasure> {
    ensure!(!measures.is_empty(), Argument, "cannot average an empty sequence");
    let n = measures.len() as f64;
    let pairs = measures
        .iter()
        .flat_map(|m| m.atoms.iter().zip(&m.weights).map(move |(&x, &w)| (x, w / n)))
        .collect();
    DiscreteMeasure::from_pairs(pairs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn m(atoms: &[f64], weights: &[f64]) -> DiscreteMeasure {
        DiscreteMeasure::new(atoms.to_vec(), weights.to_vec()).unwrap()
    }

    #[test]
    fn canonicalization() {
        let c = m(&[1.0, 0.0, 1.0, 2.0], &[0.5, 0.25, 0.25, 0.0]);
        assert_eq!(c.atoms(), &[0.0, 1.0]);
        assert_eq!(c.weights(), &[0.25, 0.75]);
        assert_eq!(c.cumulative(), &[0.25, 1.0]);
        assert!(DiscreteMeasure::new(vec![0.0, 1.0], vec![0.5, 0.4]).is_err());
        let r = m(&[0.0, 1.0], &[0.5, 0.5 + 5e-10]);
        assert!((r.weights().iter().sum::<f64>() - 1.0).abs() <= 1e-12);
        assert!(DiscreteMeasure::new(vec![0.0], vec![-1.0]).is_err());
        assert!(DiscreteMeasure::new(vec![f64::NAN], vec![1.0]).is_err());
        assert!(DiscreteMeasure::new(vec![], vec![]).is_err());
        assert!(DiscreteMeasure::new(vec![0.0], vec![0.5, 0.5]).is_err());
    }

    #[test]
    fn cdf_examples() {
        let d = DiscreteMeasure::dirac(0.5).unwrap();
        assert_eq!(d.cdf(0.4), 0.0);
        assert_eq!(d.cdf(0.5), 1.0);
        assert_eq!(m(&[0.0, 1.0], &[0.5, 0.5]).cdf(0.3), 0.5);
    }

    #[test]
    fn quantile_examples() {
        let q = m(&[1.0, 2.0], &[0.5, 0.5]);
        assert_eq!(q.quantile(0.3).unwrap(), 1.0);
        assert_eq!(q.quantile(0.5).unwrap(), 1.0);
        assert_eq!(q.quantile(0.7).unwrap(), 2.0);
        assert_eq!(q.quantile(1.0).unwrap(), 2.0);
        assert!(matches!(q.quantile(0.0), Err(Error::Domain(_))));
        assert!(matches!(q.quantile(1.5), Err(Error::Domain(_))));
    }

    #[test]
    fn pushforward_examples() {
        use crate::maps::{Interval, MonotoneMap};
        let dom = Interval::new(0.0, 1.0).unwrap();
        let d = DiscreteMeasure::dirac(0.3).unwrap();
        let sq = MonotoneMap::linear(dom, vec![(0.0, 0.0), (0.5, 0.1), (1.0, 1.0)]).unwrap();
        assert_eq!(d.pushforward(&sq).unwrap(), DiscreteMeasure::dirac(sq.eval(0.3).unwrap()).unwrap());

        let two = m(&[0.0, 1.0], &[0.5, 0.5]);
        assert_eq!(two.pushforward(&MonotoneMap::identity(dom)).unwrap(), two);
        let half = MonotoneMap::constant(dom, 0.5);
        let pushed = two.pushforward(&half).unwrap();
        assert_eq!(pushed.atoms(), &[0.5]);
        assert_eq!(pushed.weights(), &[1.0]);

        let outside = DiscreteMeasure::dirac(2.0).unwrap();
        assert!(matches!(outside.pushforward(&half), Err(Error::Domain(_))));
    }

    #[test]
    fn w2_examples() {
        let d0 = DiscreteMeasure::dirac(0.0).unwrap();
        let d1 = DiscreteMeasure::dirac(1.0).unwrap();
        assert_eq!(wasserstein2_sq(&d0, &d1), 1.0);
        let a = m(&[0.0, 1.0], &[0.5, 0.5]);
        assert_eq!(wasserstein2_sq(&a, &m(&[2.0, 3.0], &[0.5, 0.5])), 4.0);
        // quantiles differ by one only on (1/4, 1/2]
        assert_eq!(wasserstein2_sq(&a, &m(&[0.0, 1.0], &[0.25, 0.75])), 0.25);
    }

    #[test]
    fn average_examples() {
        let d0 = DiscreteMeasure::dirac(0.0).unwrap();
        let d1 = DiscreteMeasure::dirac(1.0).unwrap();
        assert_eq!(average_measure(&[d0, d1]).unwrap(), m(&[0.0, 1.0], &[0.5, 0.5]));
        let a = m(&[0.0, 1.0], &[0.5, 0.5]);
        assert_eq!(average_measure(std::slice::from_ref(&a)).unwrap(), a);
        let avg = average_measure(&[a, m(&[1.0, 2.0], &[0.5, 0.5])]).unwrap();
        assert_eq!(avg.atoms(), &[0.0, 1.0, 2.0]);
        assert_eq!(avg.weights(), &[0.25, 0.5, 0.25]);
        assert!(average_measure(&[]).is_err());
    }

    #[test]
    fn json_reader_canonicalizes() {
        let parsed = DiscreteMeasure::from_json(r#"{"atoms":[2,1,2],"weights":[0.25,0.5,0.25]}"#).unwrap();
        assert_eq!(parsed.atoms(), &[1.0, 2.0]);
        assert_eq!(parsed.weights(), &[0.5, 0.5]);
        assert_eq!(DiscreteMeasure::from_json(&parsed.to_json().unwrap()).unwrap(), parsed);
        assert!(DiscreteMeasure::from_json(r#"{"atoms":[1],"weights":[2]}"#).is_err());
    }

    fn arb_measure() -> impl Strategy<Value = DiscreteMeasure> {
        prop::collection::vec((-5.0f64..5.0, 0.01f64..1.0), 1..12).prop_map(|pairs| {
            let total: f64 = pairs.iter().map(|p| p.1).sum();
            let (atoms, weights): (Vec<_>, Vec<_>) = pairs.into_iter().map(|(x, w)| (x, w / total)).unzip();
            DiscreteMeasure::new(atoms, weights).unwrap()
        })
    }

    proptest! {
        #[test]
        fn canonical_form(m in arb_measure()) {
            prop_assert!(m.atoms().windows(2).all(|w| w[0] < w[1]));
            prop_assert!(m.weights().iter().all(|&w| w > 0.0));
            prop_assert!((m.weights().iter().sum::<f64>() - 1.0).abs() <= 1e-12);
        }

        #[test]
        fn metric_axioms(a in arb_measure(), b in arb_measure(), c in arb_measure()) {
            prop_assert_eq!(wasserstein2_sq(&a, &a), 0.0);
            let ab = wasserstein2_sq(&a, &b);
            prop_assert!((ab - wasserstein2_sq(&b, &a)).abs() <= 1e-12 * (1.0 + ab));
            let bc = wasserstein2_sq(&b, &c).sqrt();
            let ac = wasserstein2_sq(&a, &c).sqrt();
            prop_assert!(ac <= ab.sqrt() + bc + 1e-10);
        }

        #[test]
        fn quantile_cdf_duality(m in arb_measure()) {
            for &x in m.atoms() {
                prop_assert_eq!(m.quantile(m.cdf(x)).unwrap(), x);
            }
        }

        #[test]
        fn pushforward_quantile_identity(m in arb_measure(), u in 1e-9f64..=1.0,
                                         ts in prop::collection::vec(0.01f64..1.0, 2..6)) {
            use crate::maps::{Interval, MonotoneMap};
            let dom = Interval::new(-5.0, 5.0).unwrap();
            let mut t = -2.0;
            let step = 10.0 / (ts.len() - 1) as f64;
            let knots = ts.iter().enumerate().map(|(k, d)| { t += d; (-5.0 + step * k as f64, t) }).collect();
            let map = MonotoneMap::linear(dom, knots).unwrap();
            let pushed = m.pushforward(&map).unwrap();
            prop_assert_eq!(pushed.quantile(u).unwrap(), map.eval(m.quantile(u).unwrap()).unwrap());
            prop_assert!((pushed.weights().iter().sum::<f64>() - 1.0).abs() <= 1e-12);
            prop_assert_eq!(*pushed.cumulative().last().unwrap(), 1.0);
        }
    }
}
