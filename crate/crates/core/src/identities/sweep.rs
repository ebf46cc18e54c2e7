//! Batch verification over a grid of theorem instances.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::theorems::{verify_theorem_with, Perturbation, Theorem, TheoremInstance, VerificationReport};
use super::Weights;
use crate::bernoulli::BernoulliCache;
use crate::characters::enumerate_characters;
use crate::cyclotomic::Rational;
use crate::error::{Error, Result};

/// Which characters of each modulus to include.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CharacterSelector {
    pub include_imprimitive: bool,
    /// explicit labels; `None` selects every eligible character
    pub labels: Option<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SweepGrid {
    pub moduli: Vec<u64>,
    pub characters: CharacterSelector,
    pub theorems: Vec<Theorem>,
    pub n_values: Vec<usize>,
    pub weights: Vec<Weights>,
    /// `y` tuples; each is cut to the theorem's arity and duplicates dropped
    pub ys: Vec<Vec<Rational>>,
    pub perturbation: Option<Perturbation>,
}

impl SweepGrid {
    /// Instances in the order modulus, character, theorem, weights, `y`, `n`.
    pub fn instances(&self) -> Result<Vec<TheoremInstance>> {
        let mut out = Vec::new();
        for &d in &self.moduli {
            let chars = enumerate_characters(d)?;
            let selected: Vec<_> = match &self.characters.labels {
                Some(labels) => labels
                    .iter()
                    .map(|&l| {
                        let chi = chars.get(l).ok_or_else(|| {
                            Error::InvalidArgument(format!("modulus {d} has {} characters, no label {l}", chars.len()))
                        })?;
                        if !chi.is_primitive() && !self.characters.include_imprimitive {
                            return Err(Error::InvalidArgument(format!(
                                "character {} is imprimitive (conductor {}); enable imprimitive characters to use it",
                                chi.id(),
                                chi.conductor()
                            )));
                        }
                        Ok(chi.id())
                    })
                    .collect::<Result<_>>()?,
                None => chars
                    .iter()
                    .filter(|c| c.is_primitive() || self.characters.include_imprimitive)
                    .map(|c| c.id())
                    .collect(),
            };
            for id in selected {
                for &theorem in &self.theorems {
                    let ys = self.ys_for(theorem);
                    for &weights in &self.weights {
                        for y in &ys {
                            for &n in &self.n_values {
                                let mut inst = TheoremInstance::new(theorem, n, weights, y, id);
                                inst.perturbation = self.perturbation;
                                out.push(inst);
                            }
                        }
                    }
                }
            }
        }
        Ok(out)
    }

    fn ys_for(&self, theorem: Theorem) -> Vec<Vec<Rational>> {
        let arity = theorem.y_arity();
        let mut out: Vec<Vec<Rational>> = Vec::new();
        let source: Vec<Vec<Rational>> = if self.ys.is_empty() { vec![Vec::new()] } else { self.ys.clone() };
        for y in source {
            let mut y: Vec<Rational> = y.into_iter().take(arity).collect();
            y.resize(arity, Rational::default());
            if !out.contains(&y) {
                out.push(y);
            }
        }
        out
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepSummary {
    pub instances: usize,
    pub passed: usize,
    pub failures: usize,
    /// T3 instances where the slot-1 division variant could differ
    pub t3_variant_probed: usize,
    /// of those, how many broke the identity
    pub t3_variant_failures: usize,
}

impl SweepSummary {
    pub fn from_reports(reports: &[VerificationReport]) -> SweepSummary {
        let mut s = SweepSummary { instances: reports.len(), ..SweepSummary::default() };
        for r in reports {
            if r.passed() {
                s.passed += 1;
            } else {
                s.failures += 1;
            }
            if let Some(pv) = &r.t3_variant {
                if pv.distinguishable {
                    s.t3_variant_probed += 1;
                    if !pv.equals_orbit_value {
                        s.t3_variant_failures += 1;
                    }
                }
            }
        }
        s
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SweepOutcome {
    pub reports: Vec<VerificationReport>,
    pub summary: SweepSummary,
}

fn verify_one(inst: &TheoremInstance) -> Result<VerificationReport> {
    verify_theorem_with(&*BernoulliCache::shared_by_id(inst.character)?, inst)
}

/// Verifies every instance of `grid`. `jobs` caps the worker count (`None`
/// uses the global pool); reports come back in grid order either way.
pub fn sweep_verify(grid: &SweepGrid, jobs: Option<usize>) -> Result<SweepOutcome> {
    let instances = grid.instances()?;
    let run = || instances.par_iter().map(verify_one).collect::<Result<Vec<_>>>();
    let reports = match jobs {
        Some(j) => rayon::ThreadPoolBuilder::new()
            .num_threads(j.max(1))
            .build()
            .map_err(|e| Error::InvalidArgument(format!("cannot start {j} workers: {e}")))?
            .install(run)?,
        None => run()?,
    };
    let summary = SweepSummary::from_reports(&reports);
    Ok(SweepOutcome { reports, summary })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    fn grid() -> SweepGrid {
        SweepGrid {
            moduli: vec![1, 4],
            characters: CharacterSelector::default(),
            theorems: vec![Theorem::T2, Theorem::T8],
            n_values: vec![0, 1, 2],
            weights: vec![Weights::new(1, 2, 3).unwrap()],
            ys: vec![vec![q(0, 1), q(1, 2), q(2, 3)], vec![q(0, 1), q(1, 2), q(1, 5)]],
            perturbation: None,
        }
    }

    #[test]
    fn empty_grid_gives_no_reports() {
        let g = SweepGrid { moduli: vec![], ..grid() };
        let out = sweep_verify(&g, Some(1)).unwrap();
        assert!(out.reports.is_empty());
        assert_eq!(out.summary.instances, 0);
    }

    #[test]
    fn single_trivial_instance() {
        let g = SweepGrid {
            moduli: vec![1],
            theorems: vec![Theorem::T1],
            n_values: vec![2],
            weights: vec![Weights::new(1, 1, 1).unwrap()],
            ys: vec![],
            ..grid()
        };
        let out = sweep_verify(&g, None).unwrap();
        assert_eq!(out.reports.len(), 1);
        assert!(out.reports[0].passed());
    }

    #[test]
    fn y_tuples_are_cut_and_deduplicated() {
        let g = grid();
        // T2 reads (y1, y2): both tuples collapse to (0, 1/2); T8 reads none
        assert_eq!(g.instances().unwrap().len(), 2 * (3 + 3));
    }

    #[test]
    fn order_is_independent_of_workers() {
        let a = sweep_verify(&grid(), Some(1)).unwrap();
        let b = sweep_verify(&grid(), Some(3)).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.summary.failures, 0);
    }

    #[test]
    fn imprimitive_needs_opt_in() {
        let mut g = grid();
        g.moduli = vec![8];
        g.characters.labels = Some(vec![1]);
        let chars = enumerate_characters(8).unwrap();
        if chars[1].is_primitive() {
            return;
        }
        assert!(g.instances().is_err());
        g.characters.include_imprimitive = true;
        assert!(!g.instances().unwrap().is_empty());
    }
}
