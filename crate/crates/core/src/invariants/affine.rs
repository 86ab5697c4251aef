//! Normalized affine invariants `m00, s, t, h, g, j` of planar moments of
//! order three, and `a, b, c, d` on the line.

use std::fmt;
use std::sync::OnceLock;

use crate::algebra::poly::SparsePoly;
use crate::algebra::scalar::{is_neg, Rat, Scalar};
use crate::datafile::{self, PolyFile};
use crate::error::{Error, Result};
use crate::invariants::binary::binary_cubic_invariants;
use crate::invariants::ternary::{psi_covariants, symbolic_ternary_cubic, CUBIC_MOMENTS};
use crate::moments::vector::MomentVector;

/// The fundamental invariants.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum InvariantKind {
    M00,
    S,
    T,
    H,
    G,
    J,
    A,
    B,
    C,
    D,
}

impl InvariantKind {
    pub const PLANAR: [InvariantKind; 6] = [Self::M00, Self::S, Self::T, Self::H, Self::G, Self::J];
    pub const LINEAR: [InvariantKind; 4] = [Self::A, Self::B, Self::C, Self::D];

    pub fn name(self) -> &'static str {
        match self {
            Self::M00 => "m00",
            Self::S => "s",
            Self::T => "t",
            Self::H => "h",
            Self::G => "g",
            Self::J => "j",
            Self::A => "a",
            Self::B => "b",
            Self::C => "c",
            Self::D => "d",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Self::PLANAR
            .iter()
            .chain(&Self::LINEAR)
            .copied()
            .find(|k| k.name() == name)
    }

    /// Ambient dimension `d` of the moments.
    pub fn dim(self) -> usize {
        if Self::LINEAR.contains(&self) {
            1
        } else {
            2
        }
    }

    /// Degree and order `(p, o)` of the covariant of the cubic form.
    pub fn degree_order(self) -> (i64, i64) {
        match self {
            Self::M00 | Self::A => (1, 3),
            Self::S => (4, 0),
            Self::T => (6, 0),
            Self::H => (3, 3),
            Self::G => (8, 6),
            Self::J => (12, 9),
            Self::B => (2, 2),
            Self::C => (3, 3),
            Self::D => (4, 0),
        }
    }

    /// `q = (3p − o)/(d + 1)`: the invariant picks up `det(A)^q` under an
    /// affine map with linear part `A`.
    pub fn weight(self) -> i64 {
        let (p, o) = self.degree_order();
        (3 * p - o) / (self.dim() as i64 + 1)
    }

    /// Multidegree `(p, q, …, q)` in the grading `deg m_I = (1, I)`.
    pub fn multidegree(self) -> Vec<i64> {
        let mut v = vec![self.degree_order().0];
        v.extend(std::iter::repeat_n(self.weight(), self.dim()));
        v
    }
}

impl fmt::Display for InvariantKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// An invariant evaluated at a moment vector.
#[derive(Debug, Clone, PartialEq)]
pub struct InvariantValue<T: Scalar = Rat> {
    pub kind: InvariantKind,
    pub value: T,
    pub multidegree: Vec<i64>,
    pub weight: i64,
}

impl<T: Scalar> InvariantValue<T> {
    fn new(kind: InvariantKind, value: T) -> Self {
        InvariantValue {
            kind,
            value,
            multidegree: kind.multidegree(),
            weight: kind.weight(),
        }
    }

    pub fn name(&self) -> &'static str {
        self.kind.name()
    }
}

/// Variable priority for normalization, largest first:
/// m30 > m21 > m12 > m03 > m20 > m11 > m02 > m10 > m01 > m00,
/// as indices into [`CUBIC_MOMENTS`].
pub const MONOMIAL_PRIORITY: [usize; 10] = [6, 7, 8, 9, 3, 4, 5, 1, 2, 0];

/// Leading term in lexicographic order with [`MONOMIAL_PRIORITY`].
pub fn leading_term_lex(p: &SparsePoly<Rat>) -> Option<(Vec<u32>, Rat)> {
    p.terms()
        .map(|(mut e, c)| {
            e.resize(10, 0);
            (e, c.clone())
        })
        .max_by(|(a, _), (b, _)| {
            let ka: Vec<u32> = MONOMIAL_PRIORITY.iter().map(|&v| a[v]).collect();
            let kb: Vec<u32> = MONOMIAL_PRIORITY.iter().map(|&v| b[v]).collect();
            ka.cmp(&kb)
        })
}

/// Divide by the content and fix the sign so the leading coefficient is
/// positive.
pub fn normalize(p: &SparsePoly<Rat>) -> SparsePoly<Rat> {
    let q = p.primitive_part();
    match leading_term_lex(&q) {
        Some((_, c)) if is_neg(&c) => -q,
        _ => q,
    }
}

/// Normalized `s, t, h, g, j` as polynomials in the ten moments.
#[derive(Debug, Clone, PartialEq)]
pub struct InvariantPolys {
    pub s: SparsePoly<Rat>,
    pub t: SparsePoly<Rat>,
    pub h: SparsePoly<Rat>,
    pub g: SparsePoly<Rat>,
    pub j: SparsePoly<Rat>,
}

impl InvariantPolys {
    pub fn get(&self, kind: InvariantKind) -> Option<&SparsePoly<Rat>> {
        match kind {
            InvariantKind::S => Some(&self.s),
            InvariantKind::T => Some(&self.t),
            InvariantKind::H => Some(&self.h),
            InvariantKind::G => Some(&self.g),
            InvariantKind::J => Some(&self.j),
            _ => None,
        }
    }

    fn entries(&self) -> [(InvariantKind, &SparsePoly<Rat>); 5] {
        [
            (InvariantKind::S, &self.s),
            (InvariantKind::T, &self.t),
            (InvariantKind::H, &self.h),
            (InvariantKind::G, &self.g),
            (InvariantKind::J, &self.j),
        ]
    }
}

/// Term counts of the normalized expansions.
pub const EXPECTED_TERMS: [(InvariantKind, usize); 5] = [
    (InvariantKind::S, 25),
    (InvariantKind::T, 103),
    (InvariantKind::H, 5),
    (InvariantKind::G, 168),
    (InvariantKind::J, 892),
];

// Leading monomials fixing the normalization, exponents in CUBIC_MOMENTS order.
const EXPECTED_LEADS: [(InvariantKind, [u32; 10]); 4] = [
    (InvariantKind::S, [1, 0, 0, 0, 0, 1, 1, 0, 1, 0]),
    (InvariantKind::T, [2, 0, 0, 0, 0, 0, 2, 0, 0, 2]),
    (InvariantKind::H, [1, 0, 0, 1, 0, 1, 0, 0, 0, 0]),
    (InvariantKind::G, [3, 0, 0, 0, 0, 3, 2, 0, 0, 0]),
];

/// Expand the covariants of the generic ternary cubic, apply ψ and
/// normalize. Fails with a configuration error if the result does not
/// have the expected term counts, multidegrees and leading monomials.
pub fn expand_invariants() -> Result<InvariantPolys> {
    let psi = psi_covariants(&symbolic_ternary_cubic());
    let polys = InvariantPolys {
        s: normalize(&psi.s),
        t: normalize(&psi.t),
        h: normalize(&psi.h),
        g: normalize(&psi.g),
        j: normalize(&psi.j),
    };
    check_invariants(&polys)?;
    Ok(polys)
}

fn moment_weights() -> Vec<Vec<i64>> {
    CUBIC_MOMENTS
        .iter()
        .map(|ij| vec![1, ij[0] as i64, ij[1] as i64])
        .collect()
}

fn check_invariants(polys: &InvariantPolys) -> Result<()> {
    let weights = moment_weights();
    for (kind, p) in polys.entries() {
        let want = EXPECTED_TERMS.iter().find(|(k, _)| *k == kind).map(|x| x.1);
        if Some(p.num_terms()) != want {
            return Err(Error::Configuration(format!(
                "{kind} has {} terms, expected {want:?}",
                p.num_terms()
            )));
        }
        if p.multidegree(&weights) != Some(kind.multidegree()) {
            return Err(Error::Configuration(format!("{kind} is not of degree {:?}", kind.multidegree())));
        }
        if let Some((_, lead)) = EXPECTED_LEADS.iter().find(|(k, _)| *k == kind) {
            match leading_term_lex(p) {
                Some((e, c)) if e == lead && c == Rat::from_integer(1.into()) => {}
                other => {
                    return Err(Error::Configuration(format!(
                        "{kind} has leading term {other:?}, expected exponents {lead:?} with coefficient 1"
                    )))
                }
            }
        }
    }
    Ok(())
}

const EMBEDDED: [(InvariantKind, &str); 5] = [
    (InvariantKind::S, include_str!("../../data/invariants/s.poly")),
    (InvariantKind::T, include_str!("../../data/invariants/t.poly")),
    (InvariantKind::H, include_str!("../../data/invariants/h.poly")),
    (InvariantKind::G, include_str!("../../data/invariants/g.poly")),
    (InvariantKind::J, include_str!("../../data/invariants/j.poly")),
];

fn moment_var_names() -> Vec<String> {
    CUBIC_MOMENTS
        .iter()
        .map(|ij| format!("m{}{}", ij[0], ij[1]))
        .collect()
}

/// Data files for the given expansions, as (file stem, contents).
pub fn render_invariant_files(polys: &InvariantPolys) -> Vec<(String, String)> {
    polys
        .entries()
        .iter()
        .map(|(kind, p)| {
            let deg: Vec<String> = kind.multidegree().iter().map(|x| x.to_string()).collect();
            let file = PolyFile::new(
                vec![
                    ("id".into(), kind.name().into()),
                    ("ambient".into(), "moments".into()),
                    ("d".into(), "2".into()),
                    ("r".into(), "3".into()),
                    ("degree".into(), deg.join(" ")),
                    ("weight".into(), kind.weight().to_string()),
                    ("terms".into(), p.num_terms().to_string()),
                ],
                moment_var_names(),
                (*p).clone(),
            );
            (kind.name().to_string(), file.render())
        })
        .collect()
}

/// Parse the embedded data files.
pub fn load_embedded_invariants() -> Result<InvariantPolys> {
    let mut polys = Vec::with_capacity(5);
    for (kind, src) in EMBEDDED {
        let file = datafile::parse(src)?;
        if file.vars != moment_var_names() || file.field("id") != Some(kind.name()) {
            return Err(Error::DataIntegrity(format!("data file for {kind} has the wrong header")));
        }
        polys.push(file.poly);
    }
    let mut it = polys.into_iter();
    let mut next = || it.next().expect("five entries");
    let polys = InvariantPolys {
        s: next(),
        t: next(),
        h: next(),
        g: next(),
        j: next(),
    };
    check_invariants(&polys).map_err(|e| Error::DataIntegrity(e.to_string()))?;
    Ok(polys)
}

/// The normalized invariants, loaded once.
pub fn invariant_polys() -> Result<&'static InvariantPolys> {
    static CACHE: OnceLock<std::result::Result<InvariantPolys, Error>> = OnceLock::new();
    CACHE
        .get_or_init(load_embedded_invariants)
        .as_ref()
        .map_err(Clone::clone)
}

fn cubic_values<T: Scalar>(m: &MomentVector<T>) -> Result<Vec<T>> {
    if m.dim() != 2 {
        return Err(Error::Dimension("planar moments required".into()));
    }
    CUBIC_MOMENTS.iter().map(|ij| m.at(ij).cloned()).collect()
}

/// `m00, s, t, h, g, j` at a planar moment vector of order at least 3.
pub fn affine_invariants<T: Scalar>(m: &MomentVector<T>) -> Result<Vec<InvariantValue<T>>> {
    let vals = cubic_values(m)?;
    let polys = invariant_polys()?;
    let mut out = vec![InvariantValue::new(InvariantKind::M00, vals[0].clone())];
    for (kind, p) in polys.entries() {
        out.push(InvariantValue::new(kind, p.eval(&vals)));
    }
    Ok(out)
}

/// A single planar invariant (`m00, s, t, h, g` or `j`).
pub fn affine_invariant<T: Scalar>(m: &MomentVector<T>, kind: InvariantKind) -> Result<T> {
    let vals = cubic_values(m)?;
    if kind == InvariantKind::M00 {
        return Ok(vals[0].clone());
    }
    let p = invariant_polys()?
        .get(kind)
        .ok_or_else(|| Error::Dimension(format!("{kind} is not a planar invariant")))?;
    Ok(p.eval(&vals))
}

/// `a, b, c, d` at moments `m₀..m₃` on the line.
pub fn linear_affine_invariants<T: Scalar>(m: &[T]) -> Result<Vec<InvariantValue<T>>> {
    let vals = binary_cubic_invariants(m)?;
    Ok(InvariantKind::LINEAR
        .iter()
        .zip(vals)
        .map(|(k, v)| InvariantValue::new(*k, v))
        .collect())
}

/// Look up one invariant by kind.
pub fn invariant_value<T: Scalar>(values: &[InvariantValue<T>], kind: InvariantKind) -> Option<&T> {
    values.iter().find(|v| v.kind == kind).map(|v| &v.value)
}
