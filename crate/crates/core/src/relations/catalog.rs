//! Embedded relations and their exact evaluation.

use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use crate::algebra::index::Layout;
use crate::algebra::poly::SparsePoly;
use crate::algebra::scalar::Rat;
use crate::cumulants::vector::{cumulant_names, CumulantVector};
use crate::datafile::{self, PolyFile};
use crate::error::{Error, Result};
use crate::invariants::affine::affine_invariant;
use crate::invariants::hypersurface::INVARIANT_VARS;
use crate::moments::vector::{moment_names, MomentVector};

/// What the variables of a relation are.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Ambient {
    Moments,
    Cumulants,
    /// Cumulants followed by moments, for identities between the two.
    Mixed,
    /// `m00, s, t, h, g` of a planar moment vector of order 3.
    Invariants,
}

impl Ambient {
    pub fn name(self) -> &'static str {
        match self {
            Ambient::Moments => "moments",
            Ambient::Cumulants => "cumulants",
            Ambient::Mixed => "mixed",
            Ambient::Invariants => "invariants",
        }
    }
}

impl FromStr for Ambient {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "moments" => Ambient::Moments,
            "cumulants" => Ambient::Cumulants,
            "mixed" => Ambient::Mixed,
            "invariants" => Ambient::Invariants,
            _ => return Err(Error::DataIntegrity(format!("unknown ambient {s:?}"))),
        })
    }
}

impl fmt::Display for Ambient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Polytope families the relations are stated for.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    Segment,
    /// Point masses, i.e. segments of length zero.
    Point,
    Triangle,
    Quadrilateral,
    Tetrahedron,
    /// Triangles carrying a density `αx + βy + γ`.
    LinearDensityTriangle,
    /// Projection of a simplex with `points` vertices to the space of
    /// the relation.
    CanonicalSpline { points: usize },
}

impl Family {
    pub fn name(&self) -> String {
        match self {
            Family::Segment => "segment".into(),
            Family::Point => "point".into(),
            Family::Triangle => "triangle".into(),
            Family::Quadrilateral => "quadrilateral".into(),
            Family::Tetrahedron => "tetrahedron".into(),
            Family::LinearDensityTriangle => "linear-density-triangle".into(),
            Family::CanonicalSpline { points } => format!("canonical-spline-{points}"),
        }
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "segment" => Family::Segment,
            "point" => Family::Point,
            "triangle" => Family::Triangle,
            "quadrilateral" => Family::Quadrilateral,
            "tetrahedron" => Family::Tetrahedron,
            "linear-density-triangle" => Family::LinearDensityTriangle,
            _ => {
                let n = s
                    .strip_prefix("canonical-spline-")
                    .and_then(|n| n.parse().ok())
                    .ok_or_else(|| Error::Parse(format!("unknown family {s:?}")))?;
                Family::CanonicalSpline { points: n }
            }
        })
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

/// One relation of the catalog.
#[derive(Debug, Clone, PartialEq)]
pub struct RelationEntry {
    pub id: String,
    pub ambient: Ambient,
    pub d: usize,
    pub r: u32,
    pub degree: Vec<i64>,
    pub family: Family,
    pub description: String,
    pub vars: Vec<String>,
    pub poly: SparsePoly<Rat>,
}

fn index_of(name: &str, prefix: char, d: usize) -> Option<Vec<u32>> {
    let digits = name.strip_prefix(prefix)?;
    let e: Option<Vec<u32>> = digits.chars().map(|c| c.to_digit(10)).collect();
    e.filter(|e| e.len() == d)
}

fn expected_vars(ambient: Ambient, d: usize, r: u32) -> Vec<String> {
    match ambient {
        Ambient::Moments => moment_names(d, r),
        Ambient::Cumulants => cumulant_names(d, r),
        Ambient::Mixed => {
            let mut v = cumulant_names(d, r);
            v.extend(moment_names(d, r));
            v
        }
        Ambient::Invariants => {
            let mut v: Vec<String> = INVARIANT_VARS.iter().map(|k| k.name().to_string()).collect();
            v[0] = "m".into();
            v
        }
    }
}

impl RelationEntry {
    pub fn from_file(file: &PolyFile) -> Result<Self> {
        let id = file.require("id")?.to_string();
        let ambient: Ambient = file.require("ambient")?.parse()?;
        let int = |key: &str| -> Result<i64> {
            match file.int_list(key)?.as_slice() {
                [x] if *x >= 0 => Ok(*x),
                _ => Err(Error::DataIntegrity(format!("{id}: bad {key}"))),
            }
        };
        let d = int("d")? as usize;
        let r = int("r")? as u32;
        let family: Family = file
            .require("family")?
            .parse()
            .map_err(|e: Error| Error::DataIntegrity(format!("{id}: {e}")))?;
        if file.vars != expected_vars(ambient, d, r) {
            return Err(Error::DataIntegrity(format!(
                "{id}: variables do not match ambient {ambient} with d = {d}, r = {r}"
            )));
        }
        let entry = RelationEntry {
            degree: file.int_list("degree")?,
            description: file.field("description").unwrap_or("").to_string(),
            vars: file.vars.clone(),
            poly: file.poly.clone(),
            id,
            ambient,
            d,
            r,
            family,
        };
        if num_traits::Zero::is_zero(&entry.poly) {
            return Err(Error::DataIntegrity(format!("{}: empty polynomial", entry.id)));
        }
        if entry.poly.multidegree(&entry.weights()) != Some(entry.degree.clone()) {
            return Err(Error::DataIntegrity(format!(
                "{} is not homogeneous of degree {:?}",
                entry.id, entry.degree
            )));
        }
        Ok(entry)
    }

    pub fn parse(src: &str) -> Result<Self> {
        Self::from_file(&datafile::parse(src)?)
    }

    /// Multidegree of each variable: `(1, I)` for `m_I` in a moment
    /// relation, `I` for `k_I` and for both kinds in a mixed relation.
    pub fn weights(&self) -> Vec<Vec<i64>> {
        let exps = |i: &crate::algebra::index::MultiIndex| -> Vec<i64> {
            i.exponents().iter().map(|&e| e as i64).collect()
        };
        let layout = Layout::get(self.d, self.r);
        match self.ambient {
            Ambient::Moments => layout
                .indices()
                .iter()
                .map(|i| {
                    let mut w = vec![1];
                    w.extend(exps(i));
                    w
                })
                .collect(),
            Ambient::Cumulants => layout.indices()[1..].iter().map(exps).collect(),
            Ambient::Mixed => layout.indices()[1..]
                .iter()
                .chain(layout.indices())
                .map(exps)
                .collect(),
            Ambient::Invariants => INVARIANT_VARS.iter().map(|k| k.multidegree()).collect(),
        }
    }

    /// Exponent `e` with `value(λ-scaled data) = λ^e · value(data)` when
    /// every `m_I` and `k_I` is multiplied by `λ^{|I|}`.
    pub fn scaling_exponent(&self) -> Option<i64> {
        match self.ambient {
            Ambient::Moments => Some(self.degree[1..].iter().sum()),
            Ambient::Cumulants | Ambient::Mixed => Some(self.degree.iter().sum()),
            Ambient::Invariants => None,
        }
    }

    /// The polynomial with variable names, for display.
    pub fn display_poly(&self) -> String {
        self.poly.display_with(&self.vars)
    }
}

/// Data a relation is evaluated on.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct RelationData {
    pub moments: Option<MomentVector<Rat>>,
    pub cumulants: Option<CumulantVector<Rat>>,
}

impl From<MomentVector<Rat>> for RelationData {
    fn from(m: MomentVector<Rat>) -> Self {
        RelationData {
            moments: Some(m),
            cumulants: None,
        }
    }
}

impl From<CumulantVector<Rat>> for RelationData {
    fn from(k: CumulantVector<Rat>) -> Self {
        RelationData {
            moments: None,
            cumulants: Some(k),
        }
    }
}

impl RelationData {
    pub fn both(m: MomentVector<Rat>, k: CumulantVector<Rat>) -> Self {
        RelationData {
            moments: Some(m),
            cumulants: Some(k),
        }
    }
}

fn missing(id: &str, what: &str) -> Error {
    Error::MissingData(format!("relation {id} needs {what}"))
}

fn lookup(entry: &RelationEntry, data: &RelationData, name: &str) -> Result<Rat> {
    if let Some(e) = index_of(name, 'k', entry.d) {
        let k = data
            .cumulants
            .as_ref()
            .ok_or_else(|| missing(&entry.id, "cumulants"))?;
        if k.dim() != entry.d {
            return Err(Error::Dimension(format!("relation {} lives in dimension {}", entry.id, entry.d)));
        }
        return k.at(&e).cloned().map_err(|_| missing(&entry.id, name));
    }
    if let Some(e) = index_of(name, 'm', entry.d) {
        let m = data
            .moments
            .as_ref()
            .ok_or_else(|| missing(&entry.id, "moments"))?;
        if m.dim() != entry.d {
            return Err(Error::Dimension(format!("relation {} lives in dimension {}", entry.id, entry.d)));
        }
        return m.at(&e).cloned().map_err(|_| missing(&entry.id, name));
    }
    Err(Error::DataIntegrity(format!("{}: unknown variable {name}", entry.id)))
}

/// Exact value of the relation at the data point.
pub fn check_relation(entry: &RelationEntry, data: &RelationData) -> Result<Rat> {
    let vals: Vec<Rat> = if entry.ambient == Ambient::Invariants {
        let m = data
            .moments
            .as_ref()
            .ok_or_else(|| missing(&entry.id, "moments"))?;
        if m.dim() != 2 || m.order() < 3 {
            return Err(missing(&entry.id, "planar moments through order 3"));
        }
        INVARIANT_VARS
            .iter()
            .map(|k| affine_invariant(m, *k))
            .collect::<Result<_>>()?
    } else {
        entry
            .vars
            .iter()
            .map(|v| lookup(entry, data, v))
            .collect::<Result<_>>()?
    };
    Ok(entry.poly.eval(&vals))
}

macro_rules! relation_files {
    ($($name:literal),* $(,)?) => {
        &[$(($name, include_str!(concat!("../../data/relations/", $name, ".poly")))),*]
    };
}

const RELATION_FILES: &[(&str, &str)] = relation_files![
    "segment_cubic",
    "twisted_cubic_02",
    "twisted_cubic_03",
    "twisted_cubic_13",
    "triangle_quartic_423",
    "plucker_1",
    "plucker_2",
    "plucker_3",
    "plucker_4",
    "plucker_5",
    "cumulant_order4_k04",
    "cumulant_order4_k13",
    "cumulant_order4_k22",
    "cumulant_order4_k31",
    "cumulant_order4_k40",
    "moment_translation_k04",
    "moment_translation_k13",
    "tetrahedron_cumulant_322",
    "tetrahedron_moment_5322",
    "quad_axial_hankel",
];

const HYPERSURFACE_FILES: &[(&str, &str)] = &[
    ("quad18", include_str!("../../data/quad18.poly")),
    ("linear_density52", include_str!("../../data/linear_density52.poly")),
];

/// Raw text of every embedded relation file, keyed by id.
pub fn embedded_sources() -> impl Iterator<Item = (&'static str, &'static str)> {
    RELATION_FILES.iter().chain(HYPERSURFACE_FILES).copied()
}

/// Parse a set of relation files; ids must be unique and match the keys.
pub fn load_catalog<'a>(sources: impl IntoIterator<Item = (&'a str, &'a str)>) -> Result<Vec<RelationEntry>> {
    let mut out: Vec<RelationEntry> = Vec::new();
    for (key, src) in sources {
        let e = RelationEntry::parse(src)?;
        if e.id != key {
            return Err(Error::DataIntegrity(format!("file {key} declares id {}", e.id)));
        }
        if out.iter().any(|x| x.id == e.id) {
            return Err(Error::DataIntegrity(format!("duplicate relation id {}", e.id)));
        }
        out.push(e);
    }
    Ok(out)
}

/// Every embedded relation, loaded once.
pub fn builtin_catalog() -> Result<&'static [RelationEntry]> {
    static CELL: OnceLock<Result<Vec<RelationEntry>>> = OnceLock::new();
    CELL.get_or_init(|| load_catalog(embedded_sources()))
        .as_ref()
        .map(|v| v.as_slice())
        .map_err(Clone::clone)
}

/// Observed constant `c` with `R₅(m) = c · R₃(k(m))` for normalized
/// moments `m` in dimension 3, where `R₅` is `tetrahedron_moment_5322`,
/// `R₃` is `tetrahedron_cumulant_322` and `k(m)` the cumulants of `m`.
pub fn tetrahedron_translation_scalar() -> Rat {
    crate::algebra::scalar::rat(-1, 96000)
}

pub fn find_relation(id: &str) -> Result<&'static RelationEntry> {
    builtin_catalog()?
        .iter()
        .find(|e| e.id == id)
        .ok_or_else(|| Error::Parse(format!("no relation named {id:?}")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::scalar::{rat, rat_int};
    use crate::cumulants::transform::{moments_to_cumulants, powersum_cumulants};
    use crate::geometry::random::{seeded, SampleBox};
    use crate::moments::generating::simplex_moments;
    use crate::relations::fuzz::random_instance;
    use num_traits::Zero;

    #[test]
    fn catalog_loads() {
        let cat = builtin_catalog().unwrap();
        assert!(cat.len() >= 16);
        assert_eq!(cat.len(), 22);
        let moments = cat.iter().filter(|e| e.ambient == Ambient::Moments).count();
        assert_eq!(moments, 7);
        for e in cat {
            assert_eq!(e.poly.multidegree(&e.weights()), Some(e.degree.clone()), "{}", e.id);
        }
        let e = find_relation("tetrahedron_moment_5322").unwrap();
        assert_eq!(e.degree, vec![5, 3, 2, 2]);
        assert_eq!(e.poly.num_terms(), 50);
        assert!(find_relation("nope").is_err());
    }

    #[test]
    fn segment_cubic_on_a_segment() {
        let e = find_relation("segment_cubic").unwrap();
        let seg = vec![vec![rat_int(2)], vec![rat_int(3)]];
        let m = simplex_moments(&seg, 3).unwrap();
        assert!(check_relation(e, &m.into()).unwrap().is_zero());
        let m = MomentVector::from_values(1, 3, vec![rat_int(1), rat_int(0), rat_int(1), rat_int(1)]).unwrap();
        assert_eq!(check_relation(e, &m.into()).unwrap(), rat_int(1));
    }

    #[test]
    fn twisted_cubic_on_point_masses() {
        for a in [rat(3, 2), rat(-5, 7), rat_int(0)] {
            let m = MomentVector::from_fn(1, 3, |i| num_traits::pow(a.clone(), i.total() as usize));
            for id in ["twisted_cubic_02", "twisted_cubic_03", "twisted_cubic_13"] {
                let e = find_relation(id).unwrap();
                assert!(check_relation(e, &m.clone().into()).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn quartic_on_the_standard_triangle() {
        let e = find_relation("triangle_quartic_423").unwrap();
        let tri = vec![vec![rat_int(0), rat_int(0)], vec![rat_int(1), rat_int(0)], vec![rat_int(0), rat_int(1)]];
        let m = simplex_moments(&tri, 3).unwrap();
        assert!(check_relation(e, &m.into()).unwrap().is_zero());
    }

    #[test]
    fn tetrahedron_cumulant_relation() {
        let e = find_relation("tetrahedron_cumulant_322").unwrap();
        let b = SampleBox::default();
        let mut rng = seeded(21);
        for _ in 0..10 {
            let v = b.simplex_vertices(&mut rng, 3);
            let k = powersum_cumulants(&v, 3).unwrap();
            assert!(check_relation(e, &k.into()).unwrap().is_zero());
        }
    }

    #[test]
    fn missing_data_is_reported() {
        let e = find_relation("tetrahedron_cumulant_322").unwrap();
        let m = MomentVector::<Rat>::dirac(3, 3);
        assert!(matches!(check_relation(e, &m.into()), Err(Error::MissingData(_))));
        let e = find_relation("triangle_quartic_423").unwrap();
        let m = MomentVector::<Rat>::dirac(2, 2);
        assert!(matches!(check_relation(e, &m.into()), Err(Error::MissingData(_))));
    }

    #[test]
    fn scaling_by_lambda() {
        let b = SampleBox::default();
        let mut rng = seeded(4);
        for e in builtin_catalog().unwrap() {
            let Some(exp) = e.scaling_exponent() else { continue };
            let data = random_instance(e, &b, &mut rng).unwrap();
            let v = check_relation(e, &data).unwrap();
            for lambda in [rat_int(2), rat(1, 3)] {
                let pw = |i: &crate::algebra::index::MultiIndex| num_traits::pow(lambda.clone(), i.total() as usize);
                let m = data.moments.as_ref().unwrap();
                let k = data.cumulants.as_ref().unwrap();
                let scaled = RelationData::both(
                    MomentVector::from_fn(e.d, e.r, |i| m.get(i).unwrap() * pw(i)),
                    CumulantVector::from_fn(e.d, e.r, |i| k.get(i).unwrap() * pw(i)),
                );
                let w = check_relation(e, &scaled).unwrap();
                let factor = if exp >= 0 {
                    num_traits::pow(lambda.clone(), exp as usize)
                } else {
                    num_traits::pow(lambda.recip(), (-exp) as usize)
                };
                assert_eq!(w, v.clone() * factor, "{}", e.id);
            }
        }
    }

    #[test]
    fn tetrahedron_relations_agree_up_to_a_constant() {
        let r5 = find_relation("tetrahedron_moment_5322").unwrap();
        let r3 = find_relation("tetrahedron_cumulant_322").unwrap();
        let mut rng = seeded(30);
        for _ in 0..10 {
            let data = random_instance(r5, &SampleBox::default(), &mut rng).unwrap();
            let k = moments_to_cumulants(data.moments.as_ref().unwrap()).unwrap();
            let a = check_relation(r5, &data).unwrap();
            let b = check_relation(r3, &k.into()).unwrap();
            assert!(!b.is_zero());
            assert_eq!(a, b * tetrahedron_translation_scalar());
        }
    }

    #[test]
    fn damaged_files_are_rejected() {
        let (_, src) = embedded_sources().next().unwrap();
        let bad = src.replacen("1 1 1 0 -3", "1 1 1 0 -4", 1);
        assert_ne!(bad, src);
        assert!(matches!(RelationEntry::parse(&bad), Err(Error::DataIntegrity(_))));
        let mut file = datafile::parse(src).unwrap();
        file.header.retain(|(k, _)| k != "degree");
        file.header.push(("degree".into(), "3 2".into()));
        let text = file.render();
        assert!(matches!(RelationEntry::parse(&text), Err(Error::DataIntegrity(_))));
        let dup = load_catalog([("segment_cubic", src), ("segment_cubic", src)]);
        assert!(dup.is_err());
    }
}
