//! Randomized exact verification of catalog entries.

use num_traits::{One, Zero};
use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::index::Layout;
use crate::algebra::scalar::Rat;
use crate::cumulants::transform::{moments_to_cumulants, powersum_cumulants};
use crate::cumulants::vector::CumulantVector;
use crate::error::{Error, Result};
use crate::geometry::random::{seeded, Rng64, SampleBox};
use crate::geometry::triangulation::default_triangulation;
use crate::invariants::hypersurface::linear_density_moments;
use crate::moments::affine::project_moments;
use crate::moments::generating::{canonical_spline_moments, polytope_moments, simplex_moments};
use crate::moments::vector::MomentVector;
use crate::relations::catalog::{check_relation, Ambient, Family, RelationData, RelationEntry};

/// Which instances to draw and from where.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GeneratorSpec {
    pub family: Family,
    pub sample: SampleBox,
}

impl GeneratorSpec {
    pub fn new(family: Family) -> Self {
        GeneratorSpec {
            family,
            sample: SampleBox::default(),
        }
    }

    /// The family the entry is stated for.
    pub fn for_entry(entry: &RelationEntry) -> Self {
        Self::new(entry.family)
    }
}

/// RNG for trial `trial` of a run seeded with `seed`; independent of how
/// trials are scheduled.
pub fn trial_rng(seed: u64, trial: usize) -> Rng64 {
    let mut rng = seeded(seed);
    rng.set_stream(trial as u64);
    rng
}

fn point_mass(x: &[Rat], order: u32) -> MomentVector<Rat> {
    MomentVector::from_fn(x.len(), order, |idx| {
        x.iter()
            .zip(idx.exponents())
            .fold(Rat::one(), |acc, (v, &e)| acc * num_traits::pow(v.clone(), e as usize))
    })
}

fn project_to(m: MomentVector<Rat>, d: usize) -> Result<MomentVector<Rat>> {
    match (m.dim(), d) {
        (a, b) if a == b => Ok(m),
        (_, 1) => {
            let mut v = vec![Rat::zero(); m.dim()];
            v[0] = Rat::one();
            let order = m.order();
            MomentVector::from_values(1, order, project_moments(&m, &v)?)
        }
        (a, b) => Err(Error::Dimension(format!(
            "cannot take moments in dimension {b} from dimension {a}"
        ))),
    }
}

/// Data for the entry drawn from the given family.
///
/// For configurations of points (simplices and canonical splines) the
/// cumulants are the power sums of the vertices; otherwise they are
/// obtained from the moments.
pub fn family_instance(entry: &RelationEntry, spec: &GeneratorSpec, rng: &mut impl Rng) -> Result<RelationData> {
    let b = &spec.sample;
    let d = entry.d;
    let r = entry.r;
    let simplex = |rng: &mut _, dim: usize| -> Result<(MomentVector<Rat>, Option<Vec<Vec<Rat>>>)> {
        let v = b.simplex_vertices(rng, dim);
        Ok((simplex_moments(&v, r)?, Some(v)))
    };
    let (moments, points) = match spec.family {
        Family::Segment => simplex(rng, 1)?,
        Family::Triangle => simplex(rng, 2)?,
        Family::Tetrahedron => simplex(rng, 3)?,
        Family::Point => (point_mass(&b.point(rng, d), r), None),
        Family::Quadrilateral => {
            let q = b.convex_polygon(rng, 4);
            let t = default_triangulation(&q)?;
            (polytope_moments(&q, &t, r)?, None)
        }
        Family::LinearDensityTriangle => {
            if d != 2 || r != 3 {
                return Err(Error::Unsupported(
                    "linear densities are generated for planar moments of order 3".into(),
                ));
            }
            let v = b.simplex_vertices(rng, 2);
            let m = simplex_moments(&v, 4)?;
            let (alpha, beta, gamma) = (b.rat(rng), b.rat(rng), b.rat(rng));
            (linear_density_moments(&m, &alpha, &beta, &gamma)?, None)
        }
        Family::CanonicalSpline { points } => {
            if points < d + 1 {
                return Err(Error::Dimension(format!(
                    "a canonical spline in dimension {d} needs at least {} points",
                    d + 1
                )));
            }
            let x = b.points(rng, points, d);
            (canonical_spline_moments(&x, r)?, Some(x))
        }
    };
    data_for_entry(entry, moments, points.as_deref())
}

/// Data for the entry from moments of a measure, projected to the first
/// axis when the entry lives on the line. Cumulants, when needed, are the
/// power sums of `points` if given in the entry's dimension and otherwise
/// come from the moments.
pub fn data_for_entry(entry: &RelationEntry, moments: MomentVector<Rat>, points: Option<&[Vec<Rat>]>) -> Result<RelationData> {
    let d = entry.d;
    let moments = project_to(moments.truncate(entry.r)?, d)?;
    let cumulants = match entry.ambient {
        Ambient::Moments | Ambient::Invariants => None,
        Ambient::Cumulants | Ambient::Mixed => Some(match points {
            Some(x) if x[0].len() == d => powersum_cumulants(x, entry.r)?,
            _ => moments_to_cumulants(&moments)?,
        }),
    };
    Ok(RelationData {
        moments: Some(moments),
        cumulants,
    })
}

/// Random data of the right shape with no structure: a normalized moment
/// vector and an unrelated cumulant vector.
pub fn random_instance(entry: &RelationEntry, sample: &SampleBox, rng: &mut impl Rng) -> Result<RelationData> {
    let layout = Layout::get(entry.d, entry.r);
    let mut mv: Vec<Rat> = (0..layout.len()).map(|_| sample.rat(rng)).collect();
    mv[0] = Rat::one();
    let kv: Vec<Rat> = (1..layout.len()).map(|_| sample.rat(rng)).collect();
    Ok(RelationData {
        moments: Some(MomentVector::from_values(entry.d, entry.r, mv)?),
        cumulants: Some(CumulantVector::from_values(entry.d, entry.r, kv)?),
    })
}

/// A trial that did not evaluate to zero.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TrialFailure {
    pub trial: usize,
    /// The nonzero value, or the error raised while generating or
    /// evaluating.
    pub value: Option<String>,
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FuzzReport {
    pub id: String,
    pub family: String,
    pub seed: u64,
    pub trials: usize,
    pub zeros: usize,
    pub failures: Vec<TrialFailure>,
}

impl FuzzReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty() && self.zeros == self.trials
    }
}

/// Evaluate the entry on `trials` instances drawn from `spec`. Trials run
/// in parallel; trial `i` uses [`trial_rng`]`(seed, i)`, so the report
/// depends only on the arguments.
pub fn fuzz_relation(entry: &RelationEntry, spec: &GeneratorSpec, trials: usize, seed: u64) -> FuzzReport {
    fuzz_relation_with(entry, spec, trials, seed, true)
}

/// [`fuzz_relation`] on the current thread only when `parallel` is false.
pub fn fuzz_relation_with(entry: &RelationEntry, spec: &GeneratorSpec, trials: usize, seed: u64, parallel: bool) -> FuzzReport {
    let run = |i: usize| -> Result<Rat> {
        let mut rng = trial_rng(seed, i);
        let data = family_instance(entry, spec, &mut rng)?;
        check_relation(entry, &data)
    };
    let outcomes: Vec<Result<Rat>> = if parallel {
        (0..trials).into_par_iter().map(run).collect()
    } else {
        (0..trials).map(run).collect()
    };
    let mut zeros = 0;
    let mut failures = Vec::new();
    for (trial, out) in outcomes.into_iter().enumerate() {
        match out {
            Ok(v) if v.is_zero() => zeros += 1,
            Ok(v) => failures.push(TrialFailure {
                trial,
                value: Some(v.to_string()),
                error: None,
            }),
            Err(e) => failures.push(TrialFailure {
                trial,
                value: None,
                error: Some(e.to_string()),
            }),
        }
    }
    FuzzReport {
        id: entry.id.clone(),
        family: spec.family.name(),
        seed,
        trials,
        zeros,
        failures,
    }
}

/// Value of the entry on an unstructured random data point; nonzero for
/// any relation that is not identically zero, barring a vanishingly
/// unlikely draw.
pub fn negative_control(entry: &RelationEntry, seed: u64) -> Result<Rat> {
    let mut rng = seeded(seed);
    let data = random_instance(entry, &SampleBox::default(), &mut rng)?;
    check_relation(entry, &data)
}
