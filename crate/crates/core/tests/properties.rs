use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

use polymoments::algebra::{rat, rat_int, Layout, MultiIndex, Rat, SparsePoly, TruncSeries};
use polymoments::cumulants::transform::{cumulants_to_moments, moments_to_cumulants};
use polymoments::geometry::random::{seeded, SampleBox};
use polymoments::geometry::triangulation::{default_triangulation, polytope_volume};
use polymoments::invariants::affine::{affine_invariants, InvariantKind};
use polymoments::invariants::ternary::moments_to_ternary_cubic;
use polymoments::io::{rat_from_json, rat_to_json};
use polymoments::moments::affine::{transform_moments, AffineMap};
use polymoments::moments::generating::{polytope_moments, simplex_moments};
use polymoments::moments::vector::MomentVector;
use polymoments::recovery::hankel::{build_hankel, model_moments, recover_spline};
use polymoments::relations::catalog::{builtin_catalog, check_relation, RelationData};
use polymoments::relations::fuzz::{random_instance, trial_rng};

fn small_rat() -> impl Strategy<Value = Rat> {
    (-60i64..=60, 1i64..=12).prop_map(|(p, q)| rat(p, q))
}

fn poly(nvars: usize) -> impl Strategy<Value = SparsePoly<Rat>> {
    prop::collection::vec((prop::collection::vec(0u32..3, nvars), small_rat()), 0..6)
        .prop_map(move |terms| SparsePoly::from_terms(nvars, terms))
}

fn normalized(vals: Vec<Rat>) -> Vec<Rat> {
    let mut v = vals;
    v[0] = Rat::one();
    v
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn rationals_are_reduced(a in small_rat(), b in small_rat()) {
        for r in [&a + &b, &a * &b, &a - &b] {
            prop_assert!(r.denom().is_positive());
            prop_assert!(r.numer().gcd(r.denom()).is_one());
            prop_assert_eq!(rat_from_json(&rat_to_json(&r)).unwrap(), r);
        }
    }

    #[test]
    fn multi_index_totals(e in prop::collection::vec(0u32..6, 1..4)) {
        let idx = MultiIndex::new(e.clone());
        prop_assert_eq!(idx.total(), e.iter().sum::<u32>());
        prop_assert_eq!(MultiIndex::parse_key(&idx.key()).unwrap(), idx);
    }

    #[test]
    fn polynomials_store_no_zeros(p in poly(3), q in poly(3)) {
        for r in [p.clone() + q.clone(), &p * &q, p.clone() - p.clone()] {
            prop_assert!(r.terms().all(|(e, c)| !c.is_zero() && e.len() <= 3));
        }
        prop_assert!((p.clone() - p.clone()).is_zero());
        let x = [rat(1, 2), rat_int(-3), rat(2, 5)];
        prop_assert_eq!((&p * &q).eval(&x), p.eval(&x) * q.eval(&x));
    }

    #[test]
    fn series_stay_truncated(c in prop::collection::vec(small_rat(), 10), order in 1u32..4) {
        let len = Layout::get(2, order).len();
        let mut c = c;
        c.resize(len, Rat::zero());
        c[0] = Rat::one();
        let s = TruncSeries::from_coeffs(2, order, c).unwrap();
        prop_assert!(s.iter().all(|(i, _)| i.total() <= order));
        let prod = s.mul(&s.inv().unwrap()).unwrap();
        prop_assert_eq!(prod, TruncSeries::one(2, order));
        let back = s.log().unwrap().exp().unwrap();
        prop_assert_eq!(back, s);
    }

    #[test]
    fn polygon_triangulations(seed in any::<u64>(), n in 3usize..7) {
        let mut rng = seeded(seed);
        let p = SampleBox::default().convex_polygon(&mut rng, n);
        for f in p.facets() {
            prop_assert_eq!(f.len(), 2);
            prop_assert!(f[0] != f[1] && f.iter().all(|&k| k < n));
        }
        let t = default_triangulation(&p).unwrap();
        prop_assert!(t.volumes().iter().all(|v| v.is_positive()));
        let total: Rat = t.volumes().iter().cloned().sum();
        prop_assert_eq!(total, polytope_volume(&p, &t).unwrap());
        let m = polytope_moments(&p, &t, 3).unwrap();
        prop_assert!(m.is_normalized());
        prop_assert!(m.iter().all(|(i, _)| i.total() <= 3));
    }

    #[test]
    fn cumulants_round_trip(vals in prop::collection::vec(small_rat(), 10), d in 1usize..3) {
        let len = Layout::get(d, 3).len();
        let mut v = vals;
        v.resize(len, Rat::zero());
        let m = MomentVector::from_values(d, 3, normalized(v)).unwrap();
        let k = moments_to_cumulants(&m).unwrap();
        prop_assert_eq!(k.values().len(), len - 1);
        prop_assert!(k.iter().all(|(i, _)| !i.is_zero()));
        prop_assert_eq!(cumulants_to_moments(&k).unwrap(), m);
    }

    #[test]
    fn singular_maps_are_rejected(a in small_rat(), b in small_rat(), s in small_rat()) {
        let rows = vec![vec![a.clone(), b.clone()], vec![&a * &s, &b * &s]];
        prop_assert!(AffineMap::new(rows, vec![Rat::zero(), Rat::zero()]).is_err());
    }

    #[test]
    fn hankel_entries_are_constant_on_antidiagonals(
        vals in prop::collection::vec(small_rat(), 9),
        dn in prop::sample::select(vec![(1usize, 2usize), (1, 3), (2, 3), (2, 4), (3, 4)]),
    ) {
        let (d, n) = dn;
        prop_assert!(build_hankel(&vals[..2 * n - d], d, n).is_err());
        let h = build_hankel(&vals, d, n).unwrap();
        for j in 0..h.nrows() {
            for l in 0..h.ncols() {
                if j > 0 && l + 1 < h.ncols() {
                    prop_assert_eq!(h.entry(j, l), h.entry(j - 1, l + 1));
                }
            }
        }
    }

    #[test]
    fn recovered_models_are_normalized(seed in any::<u64>()) {
        let mut rng = seeded(seed);
        let b = SampleBox::default();
        let mut nodes = b.distinct_rats(&mut rng, 3);
        nodes.sort();
        let m = model_moments(2, &nodes, &[Rat::one()], 6).unwrap();
        let model = recover_spline(&m, 2, 3).unwrap();
        prop_assert_eq!(model.n(), 3);
        prop_assert!(model.numerator[0].is_one());
        prop_assert_eq!(model.moments(6).unwrap(), m);
    }

    #[test]
    fn invariants_of_planar_moments(seed in any::<u64>()) {
        let mut rng = seeded(seed);
        let b = SampleBox::default();
        let vals: Vec<Rat> = (0..10).map(|_| b.rat(&mut rng)).collect();
        let m = MomentVector::from_values(2, 3, vals).unwrap();
        let f = moments_to_ternary_cubic(&m).unwrap();
        prop_assert!(f.poly().terms().all(|(e, _)| e.iter().sum::<u32>() == 3));
        let (a, shift) = b.affine_map(&mut rng, 2);
        let g = AffineMap::new(a, shift).unwrap();
        let before = affine_invariants(&m).unwrap();
        let after = affine_invariants(&transform_moments(&m, &g).unwrap()).unwrap();
        for (x, y) in before.iter().zip(&after) {
            let (p, o) = x.kind.degree_order();
            prop_assert_eq!(x.weight, (3 * p - o) / 3);
            let factor = num_traits::pow(g.det(), x.weight as usize);
            prop_assert_eq!(&y.value, &(x.value.clone() * factor));
        }
        prop_assert_eq!(InvariantKind::PLANAR.len(), before.len());
    }

    #[test]
    fn relations_are_homogeneous(seed in any::<u64>(), k in 0usize..22) {
        let catalog = builtin_catalog().unwrap();
        let entry = &catalog[k % catalog.len()];
        let weights = entry.weights();
        prop_assert!(entry.poly.multidegree(&weights).is_some());
        let mut rng = trial_rng(seed, 0);
        let data = random_instance(entry, &SampleBox::default(), &mut rng);
        let data = match data {
            Ok(d) => d,
            Err(_) => return Ok(()),
        };
        // values are finite and deterministic
        let v1 = check_relation(entry, &data);
        let v2 = check_relation(entry, &data);
        prop_assert_eq!(v1.is_ok(), v2.is_ok());
        if let (Ok(a), Ok(b)) = (v1, v2) {
            prop_assert_eq!(a, b);
        }
    }

    #[test]
    fn simplex_moments_scale(seed in any::<u64>(), num in 1i64..5, den in 1i64..5) {
        let mut rng = seeded(seed);
        let x = SampleBox::default().simplex_vertices(&mut rng, 2);
        let lambda = rat(num, den);
        let scaled: Vec<Vec<Rat>> = x.iter().map(|v| v.iter().map(|c| c * &lambda).collect()).collect();
        let m = simplex_moments(&x, 4).unwrap();
        let ms = simplex_moments(&scaled, 4).unwrap();
        for ((i, a), b) in m.iter().zip(ms.values()) {
            prop_assert_eq!(b, &(a * num_traits::pow(lambda.clone(), i.total() as usize)));
        }
        let data = RelationData::from(m);
        prop_assert!(data.moments.is_some());
    }
}
