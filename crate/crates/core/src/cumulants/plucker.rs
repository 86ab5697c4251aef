//! Plücker coordinates of triangle cumulants of order at most three.

use std::sync::OnceLock;

use crate::algebra::parse::parse_script;
use crate::algebra::poly::SparsePoly;
use crate::algebra::scalar::{Coefficient, Rat};
use crate::cumulants::vector::CumulantVector;
use crate::error::{Error, Result};

/// Cumulant names in graded order, the variables of the polynomials below.
pub const TRIANGLE_CUMULANTS: [&str; 9] = [
    "k10", "k01", "k20", "k11", "k02", "k30", "k21", "k12", "k03",
];

const PLUCKER_SRC: &str = "
p01 = 3*k20-k10^2;
p02 = 6*k11-2*k10*k01;
p03 = 9*k21+12*k11*k10-5*k10^2*k01;
p04 = 18*k30-24*k20*k10+6*k10^3;
p12 = 3*k02-k01^2;
p13 = 9*k12-6*k11*k01+6*k02*k10-k10*k01^2;
p14 = 18*k21-12*k11*k10+12*k20*k01-2*k10^2*k01;
p23 = 9*k03-12*k02*k01+3*k01^3;
p24 = 18*k12+24*k11*k01-10*k10*k01^2;
p34 = 72*k21*k01+72*k12*k10+9*k20*k02-9*k20*k01^2
    -9*k11^2+18*k11*k10*k01-9*k02*k10^2-16*k10^2*k01^2;
";

pub const PLUCKER_NAMES: [&str; 10] = [
    "p01", "p02", "p03", "p04", "p12", "p13", "p14", "p23", "p24", "p34",
];

const RELATIONS_SRC: &str = "
p01*p23-p02*p13+p03*p12; p01*p24-p02*p14+p04*p12;
p01*p34-p03*p14+p04*p13; p02*p34-p03*p24+p04*p23; p12*p34-p13*p24+p14*p23
";

/// The ten coordinates as polynomials in the nine cumulants.
pub fn plucker_polys() -> &'static [SparsePoly<Rat>] {
    static CELL: OnceLock<Vec<SparsePoly<Rat>>> = OnceLock::new();
    CELL.get_or_init(|| {
        parse_script(PLUCKER_SRC, &TRIANGLE_CUMULANTS)
            .expect("embedded coordinates parse")
            .into_iter()
            .map(|(_, p)| p)
            .collect()
    })
}

/// The five three-term relations as polynomials in `p01, …, p34`.
pub fn plucker_relation_polys() -> &'static [SparsePoly<Rat>] {
    static CELL: OnceLock<Vec<SparsePoly<Rat>>> = OnceLock::new();
    CELL.get_or_init(|| {
        parse_script(RELATIONS_SRC, &PLUCKER_NAMES)
            .expect("embedded relations parse")
            .into_iter()
            .map(|(_, p)| p)
            .collect()
    })
}

fn triangle_values<C: Coefficient>(k: &CumulantVector<C>) -> Result<Vec<C>> {
    if k.dim() != 2 || k.order() < 3 {
        return Err(Error::MissingData(
            "need planar cumulants through order 3".into(),
        ));
    }
    Ok(k.values()[..9].to_vec())
}

/// `p01, p02, …, p34` evaluated on planar cumulants of order ≤ 3.
pub fn plucker_from_cumulants<C: Coefficient>(k: &CumulantVector<C>) -> Result<Vec<C>> {
    let vals = triangle_values(k)?;
    Ok(plucker_polys().iter().map(|p| p.eval(&vals)).collect())
}

/// The five Grassmann–Plücker relations evaluated on ten coordinates.
pub fn plucker_relations<C: Coefficient>(p: &[C]) -> Result<Vec<C>> {
    if p.len() != 10 {
        return Err(Error::Dimension("expected ten Plücker coordinates".into()));
    }
    Ok(plucker_relation_polys().iter().map(|r| r.eval(p)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::scalar::rat_int;
    use crate::cumulants::transform::powersum_cumulants;
    use crate::geometry::random::{seeded, SampleBox};
    use num_traits::Zero;

    #[test]
    fn standard_triangle_and_relations() {
        let tri: Vec<Vec<Rat>> = vec![
            vec![rat_int(0), rat_int(0)],
            vec![rat_int(1), rat_int(0)],
            vec![rat_int(0), rat_int(1)],
        ];
        let p = plucker_from_cumulants(&powersum_cumulants(&tri, 3).unwrap()).unwrap();
        assert_eq!(p[0], rat_int(2));
        assert!(plucker_relations(&p).unwrap().iter().all(|v| v.is_zero()));
        let zero = plucker_from_cumulants(&CumulantVector::<Rat>::zero(2, 3)).unwrap();
        assert!(zero.iter().all(|v| v.is_zero()));
        let mut rng = seeded(2);
        for _ in 0..5 {
            let x = SampleBox::default().simplex_vertices(&mut rng, 2);
            let p = plucker_from_cumulants(&powersum_cumulants(&x, 3).unwrap()).unwrap();
            assert!(plucker_relations(&p).unwrap().iter().all(|v| v.is_zero()));
        }
    }
}
