//! Acceptance run: one line per criterion.
//!
//! Runs as a plain binary (`harness = false`). The process fails when the
//! set of failing criteria differs from `KNOWN_FAILING`.

use std::path::PathBuf;
use std::process::Command;
use std::time::{Duration, Instant};

use num_traits::{One, Zero};
use polymoments::algebra::linalg::rank;
use polymoments::algebra::parse::parse_poly;
use polymoments::algebra::{rat, rat_int, Layout, Rat, SparsePoly};
use polymoments::cumulants::plucker::{plucker_from_cumulants, plucker_relations};
use polymoments::cumulants::transform::{
    cumulants_to_moments, moments_to_cumulants, newton_reduce, powersum_cumulants,
};
use polymoments::geometry::random::{seeded, SampleBox};
use polymoments::geometry::triangulation::{
    default_triangulation, pulling_triangulation, quad_diagonal_point, star_triangulation,
};
use polymoments::geometry::Polytope;
use polymoments::invariants::affine::{affine_invariants, expand_invariants, InvariantKind, EXPECTED_TERMS};
use polymoments::invariants::binary::binary_cubic_invariants;
use polymoments::invariants::hypersurface::{
    linear_density_hypersurface52, linear_density_moments, quad_axial_hankel_det, quad_hypersurface18,
};
use polymoments::moments::adjoint::{adjoint_poly, nonface_vanishing_check, NonFaceStatus};
use polymoments::moments::affine::{transform_moments, AffineMap};
use polymoments::moments::generating::{
    mgf_to_moments, polytope_moments, simplex_mgf, simplex_moment_direct, simplex_moments,
};
use polymoments::moments::monte_carlo::monte_carlo_moments;
use polymoments::moments::vector::{moment_names, MomentVector};
use polymoments::recovery::hankel::{build_hankel, hankel_minor_check, model_moments, recover_spline};
use polymoments::relations::catalog::builtin_catalog;
use polymoments::relations::fuzz::{fuzz_relation, fuzz_relation_with, negative_control, GeneratorSpec};
use polymoments::{Result, Scalar};

const KNOWN_FAILING: [usize; 1] = [7];

#[derive(Default)]
struct Check {
    failures: Vec<String>,
    notes: Vec<String>,
}

impl Check {
    fn ensure(&mut self, ok: bool, what: impl FnOnce() -> String) {
        if !ok {
            self.failures.push(what());
        }
    }

    fn ok<T>(&mut self, r: Result<T>, what: &str) -> Option<T> {
        match r {
            Ok(v) => Some(v),
            Err(e) => {
                self.failures.push(format!("{what}: {e}"));
                None
            }
        }
    }

    fn note(&mut self, s: impl Into<String>) {
        self.notes.push(s.into());
    }

    fn within(&mut self, start: Instant, limit: Duration, what: &str) {
        let t = start.elapsed();
        self.note(format!("{what} {:.1}s", t.as_secs_f64()));
        self.ensure(t < limit, || format!("{what} took {t:?}, limit {limit:?}"));
    }
}

fn sample() -> SampleBox {
    SampleBox::default()
}

fn moments_of(p: &Polytope, order: u32) -> Result<MomentVector> {
    polytope_moments(p, &default_triangulation(p)?, order)
}

fn cross_oracle_moments(c: &mut Check) {
    let start = Instant::now();
    let b = sample();
    let mut rng = seeded(101);
    let mut compared = 0;
    for d in [2usize, 3] {
        for _ in 0..20 {
            let rows = b.simplex_vertices(&mut rng, d);
            let Some(via_mgf) = c.ok(simplex_mgf(&rows, 5).and_then(|s| mgf_to_moments(&s, d as u32)), "mgf")
            else {
                continue;
            };
            for (idx, v) in via_mgf.iter() {
                if let Some(direct) = c.ok(simplex_moment_direct(idx, &rows), "direct") {
                    c.ensure(direct == *v, || format!("d={d} {idx:?}: {direct} != {v}"));
                    compared += 1;
                }
            }
        }
    }
    c.note(format!("{compared} exact comparisons"));
    let mut worst = 0.0f64;
    for d in [2usize, 3] {
        let p = b.simplex(&mut rng, d);
        let Some(t) = c.ok(default_triangulation(&p), "triangulation") else { return };
        let Some(exact) = c.ok(polytope_moments(&p, &t, 5), "moments") else { return };
        let Some((mean, se)) = c.ok(monte_carlo_moments(&p, &t, 5, 1_000_000, 17), "sampling") else {
            return;
        };
        for ((idx, e), (m, s)) in exact.iter().zip(mean.values().iter().zip(se.values())) {
            if idx.is_zero() {
                continue;
            }
            let z = (m - e.to_f64()).abs() / s;
            worst = worst.max(z);
            c.ensure(z <= 3.0, || format!("d={d} {idx:?}: sample mean off by {z:.2} standard errors"));
        }
    }
    c.note(format!("largest deviation {worst:.2} standard errors"));
    c.within(start, Duration::from_secs(120), "runtime");
}

fn triangulation_independence(c: &mut Check) {
    let b = sample();
    let mut rng = seeded(202);
    for _ in 0..10 {
        let p = b.convex_polygon(&mut rng, 5);
        let centroid = p.vertex_centroid();
        let other: Vec<Rat> = centroid
            .iter()
            .zip(p.vertex(0))
            .map(|(g, v)| (g * rat_int(2) + v) / rat_int(3))
            .collect();
        let ts = [
            star_triangulation(&p, &centroid),
            star_triangulation(&p, &other),
            pulling_triangulation(&p, 2),
        ];
        let mut results = Vec::new();
        for t in ts {
            let Some(t) = c.ok(t, "triangulation") else { return };
            let m = c.ok(polytope_moments(&p, &t, 5), "moments");
            let a = c.ok(adjoint_poly(&p, &t), "adjoint");
            results.push((m, a));
        }
        for r in &results[1..] {
            c.ensure(r.0 == results[0].0, || "moment vectors differ between triangulations".into());
            c.ensure(r.1 == results[0].1, || "adjoints differ between triangulations".into());
        }
    }
}

fn octahedron() -> Result<Polytope> {
    let mut vertices = Vec::new();
    for i in 0..3 {
        for s in [1, -1] {
            let mut v = vec![rat_int(0); 3];
            v[i] = rat_int(s);
            vertices.push(v);
        }
    }
    let facets = (0..8)
        .map(|bits: usize| (0..3).map(|i| 2 * i + ((bits >> i) & 1)).collect())
        .collect();
    Polytope::new(vertices, facets)
}

fn adjoint_correctness(c: &mut Check) {
    let b = sample();
    let mut rng = seeded(303);
    for d in [1usize, 2, 3] {
        for _ in 0..5 {
            let s = b.simplex(&mut rng, d);
            if let Some(ad) = c.ok(default_triangulation(&s).and_then(|t| adjoint_poly(&s, &t)), "simplex adjoint") {
                c.ensure(ad == SparsePoly::constant(d, Rat::one()), || format!("simplex adjoint {ad:?}"));
            }
        }
    }
    for _ in 0..10 {
        let q = b.convex_polygon(&mut rng, 4);
        let Some(delta) = c.ok(quad_diagonal_point(&q), "diagonal point") else { continue };
        let want = SparsePoly::linear(Rat::one(), &[-delta[0].clone(), -delta[1].clone()]);
        let Some(ad) = c.ok(default_triangulation(&q).and_then(|t| adjoint_poly(&q, &t)), "quad adjoint") else {
            continue;
        };
        c.ensure(ad == want, || format!("quadrilateral adjoint {ad:?}, expected {want:?}"));
        let report = nonface_vanishing_check(&q, &ad);
        c.ensure(report.len() == 2, || format!("{} diagonals", report.len()));
        c.ensure(
            report.iter().all(|r| r.status != NonFaceStatus::NonZero),
            || "adjoint does not vanish on a diagonal".into(),
        );
    }
    if let Some(oct) = c.ok(octahedron(), "octahedron") {
        if let Some(ad) = c.ok(default_triangulation(&oct).and_then(|t| adjoint_poly(&oct, &t)), "octahedron adjoint") {
            c.ensure(ad == SparsePoly::constant(3, Rat::one()), || format!("octahedron adjoint {ad:?}"));
        }
    }
    let mut checked = 0;
    for _ in 0..5 {
        let h = b.convex_polygon(&mut rng, 6);
        let Some(ad) = c.ok(default_triangulation(&h).and_then(|t| adjoint_poly(&h, &t)), "hexagon adjoint") else {
            continue;
        };
        let report = nonface_vanishing_check(&h, &ad);
        c.ensure(report.len() == 9, || format!("hexagon has {} non-edges", report.len()));
        for r in &report {
            c.ensure(r.status != NonFaceStatus::NonZero, || format!("non-edge {:?} nonzero", r.tau));
            checked += (r.status == NonFaceStatus::Vanishes) as usize;
        }
    }
    c.note(format!("{checked} hexagon non-edges vanish"));
}

fn random_model(b: &SampleBox, rng: &mut impl rand::Rng, d: usize, n: usize) -> (Vec<Rat>, Vec<Rat>) {
    loop {
        let mut nodes = b.distinct_rats(rng, n);
        nodes.sort();
        let mut numerator = vec![Rat::one()];
        numerator.extend((1..n - d).map(|_| b.rat(rng)));
        // A must not vanish at any 1/u, or the model has a smaller type
        let reduced = nodes.iter().all(|u| {
            // t^deg A(1/t) at t = u
            let val = numerator.iter().fold(Rat::zero(), |acc, a| acc * u + a);
            !val.is_zero()
        });
        if reduced {
            return (nodes, numerator);
        }
    }
}

fn hankel_suite(c: &mut Check) {
    let start = Instant::now();
    let b = sample();
    let mut rng = seeded(404);
    let types = [(1usize, 2usize), (1, 3), (2, 4), (3, 4), (2, 5)];
    let mut models = 0;
    for &(d, n) in &types {
        for _ in 0..4 {
            let (nodes, numerator) = random_model(&b, &mut rng, d, n);
            let r = 2 * n - d + 1;
            let Some(m) = c.ok(model_moments(d, &nodes, &numerator, r), "model moments") else { continue };
            models += 1;
            if let Some(h) = c.ok(build_hankel(&m, d, n), "hankel") {
                let k = rank(&h.rows());
                c.ensure(k == n, || format!("({d},{n}) Hankel rank {k}"));
            }
            if let Some(rep) = c.ok(hankel_minor_check(&m, d, n), "minors") {
                c.ensure(rep.all_vanish(), || format!("({d},{n}) nonzero maximal minor"));
            }
            if let Some(model) = c.ok(recover_spline(&m, d, n), "recovery") {
                let got = c.ok(model.rational_nodes(), "rational nodes");
                c.ensure(got.as_ref() == Some(&nodes), || format!("({d},{n}) nodes {got:?}, expected {nodes:?}"));
                c.ensure(model.numerator == numerator, || format!("({d},{n}) numerator {:?}", model.numerator));
            }
        }
    }
    c.note(format!("{models} models"));
    let names = ["m0", "m1", "m2", "m3", "m4"];
    let sym: Vec<SparsePoly<Rat>> = (0..5).map(|k| SparsePoly::var(5, k)).collect();
    let cubic = parse_poly("2*m1^3 - 3*m0*m1*m2 + m0^2*m3", &names).expect("parses");
    if let Some(minor) = c.ok(build_hankel(&sym, 1, 2).and_then(|h| h.minor(&[0, 1, 2])), "symbolic minor") {
        c.ensure(minor == cubic.scale(&rat_int(-4)), || format!("leftmost minor {minor:?}"));
        c.note("leftmost minor is -4 times the segment cubic");
        for _ in 0..5 {
            let (lo, hi) = (b.rat(&mut rng), b.rat(&mut rng));
            if lo == hi {
                continue;
            }
            let Some(seg) = c.ok(simplex_moments(&[vec![lo], vec![hi]], 4), "segment") else { continue };
            let vals = seg.values().to_vec();
            c.ensure(minor.eval(&vals).is_zero() && cubic.eval(&vals).is_zero(), || "cubic nonzero on a segment".into());
        }
    }
    c.within(start, Duration::from_secs(60), "runtime");
}

fn random_vector(b: &SampleBox, rng: &mut impl rand::Rng, d: usize, r: u32) -> MomentVector {
    let vals = (0..Layout::get(d, r).len()).map(|_| b.rat(rng)).collect();
    MomentVector::from_values(d, r, vals).expect("layout")
}

fn random_normalized(b: &SampleBox, rng: &mut impl rand::Rng, d: usize, r: u32) -> MomentVector {
    let mut vals = random_vector(b, rng, d, r).into_values();
    vals[0] = Rat::one();
    MomentVector::from_values(d, r, vals).expect("layout")
}

fn cumulant_suite(c: &mut Check) {
    let b = sample();
    let mut rng = seeded(505);
    for d in 1..=3usize {
        for r in 1..=5u32 {
            let m = random_normalized(&b, &mut rng, d, r);
            let back = moments_to_cumulants(&m).and_then(|k| cumulants_to_moments(&k));
            if let Some(back) = c.ok(back, "round trip") {
                c.ensure(back == m, || format!("round trip d={d} r={r}"));
            }
        }
    }
    for k in 0..20 {
        let d = 1 + k % 3;
        let x = b.simplex_vertices(&mut rng, d);
        let ps = powersum_cumulants(&x, 5);
        let log = simplex_moments(&x, 5).and_then(|m| moments_to_cumulants(&m));
        if let (Some(ps), Some(log)) = (c.ok(ps, "power sums"), c.ok(log, "log transform")) {
            c.ensure(ps == log, || format!("power sums differ from cumulants, d={d}"));
        }
    }

    let sym = MomentVector::symbolic(2, 4, false);
    if let Some(k) = c.ok(moments_to_cumulants(&sym), "symbolic transform") {
        let names = moment_names(2, 4);
        let vars: Vec<&str> = names.iter().map(String::as_str).collect();
        let printed: [(&[u32], &str); 9] = [
            (&[0, 1], "3*m01"),
            (&[0, 2], "12*m02-9*m01^2"),
            (&[1, 1], "12*m11-9*m01*m10"),
            (&[0, 3], "27*m01^3+30*m03-54*m01*m02"),
            (&[1, 2], "-36*m01*m11-18*m10*m02+30*m12+27*m10*m01^2"),
            (&[2, 1], "-18*m01*m20-36*m10*m11+30*m21+27*m01*m10^2"),
            (&[3, 0], "30*m30+27*m10^3-54*m10*m20"),
            (&[0, 4], "60*m04-72*m02^2-81*m01^4+216*m01^2*m02-120*m01*m03"),
            (&[1, 3], "60*m13+108*m10*m01*m02-30*m10*m03-81*m10*m01^3+108*m01^2*m11-90*m01*m12-72*m11*m02"),
        ];
        for (e, src) in printed {
            let want = parse_poly(src, &vars).expect("parses");
            c.ensure(k.at(e).ok() == Some(&want), || format!("k{e:?} differs from its printed formula"));
        }
    }

    let mut reduced = 0;
    for d in 1..=3usize {
        for _ in 0..3 {
            let x = b.simplex_vertices(&mut rng, d);
            let top = d as u32 + 3;
            let (Some(full), Some(low)) = (
                c.ok(powersum_cumulants(&x, top), "power sums"),
                c.ok(powersum_cumulants(&x, d as u32 + 1), "low power sums"),
            ) else {
                continue;
            };
            for (idx, v) in full.iter().filter(|(i, _)| i.total() >= d as u32 + 2) {
                if let Some(nr) = c.ok(newton_reduce(&low, idx), "newton") {
                    c.ensure(nr == *v, || format!("newton reduction at {idx:?}"));
                    reduced += 1;
                }
            }
        }
    }
    c.note(format!("{reduced} Newton reductions"));

    for _ in 0..20 {
        let x = b.simplex_vertices(&mut rng, 2);
        let p = powersum_cumulants(&x, 3).and_then(|k| plucker_from_cumulants(&k));
        if let Some(rel) = c.ok(p.and_then(|p| plucker_relations(&p)), "plucker") {
            c.ensure(rel.len() == 5 && rel.iter().all(Zero::is_zero), || "Plücker relation nonzero".into());
        }
    }
}

fn invariant_pipeline(c: &mut Check) {
    let start = Instant::now();
    let Some(polys) = c.ok(expand_invariants(), "expansion") else { return };
    c.within(start, Duration::from_secs(300), "expansion");
    let weights: Vec<Vec<i64>> = polymoments::invariants::ternary::CUBIC_MOMENTS
        .iter()
        .map(|ij| vec![1, ij[0] as i64, ij[1] as i64])
        .collect();
    for (kind, terms) in EXPECTED_TERMS {
        let p = polys.get(kind).expect("expanded");
        c.ensure(p.num_terms() == terms, || format!("{kind} has {} terms", p.num_terms()));
        c.ensure(p.multidegree(&weights) == Some(kind.multidegree()), || format!("{kind} degree"));
    }
    let m: Vec<SparsePoly<Rat>> = (0..4).map(|k| SparsePoly::var(4, k)).collect();
    if let Some([a, bb, cc, d]) = c.ok(binary_cubic_invariants(&m), "binary invariants") {
        let lhs = &(&a * &a) * &d - (&(&bb * &bb) * &bb).scale(&rat_int(4)) - &cc * &cc;
        c.ensure(lhs.is_zero(), || "binary syzygy".into());
    }
    let want = [(InvariantKind::H, 2), (InvariantKind::S, 4), (InvariantKind::T, 6), (InvariantKind::G, 6), (InvariantKind::J, 9)];
    for (kind, w) in want {
        c.ensure(kind.weight() == w, || format!("{kind} has weight {}", kind.weight()));
    }
    let b = sample();
    let mut rng = seeded(606);
    for _ in 0..10 {
        let m = random_vector(&b, &mut rng, 2, 3);
        let (a, shift) = b.affine_map(&mut rng, 2);
        let Some(g) = c.ok(AffineMap::new(a, shift), "map") else { continue };
        let before = c.ok(affine_invariants(&m), "invariants");
        let after = transform_moments(&m, &g).and_then(|m| affine_invariants(&m));
        let (Some(before), Some(after)) = (before, c.ok(after, "invariants")) else { continue };
        for (x, y) in before.iter().zip(&after) {
            let factor = num_traits::pow(g.det(), x.weight as usize);
            c.ensure(y.value == x.value.clone() * factor, || format!("{} is not relatively invariant", x.kind));
        }
    }
}

fn hypersurfaces(c: &mut Check) {
    let b = sample();
    let mut rng = seeded(707);
    for _ in 0..20 {
        let q = b.convex_polygon(&mut rng, 4);
        let Some(m) = c.ok(moments_of(&q, 6), "quad moments") else { continue };
        if let Some(v) = c.ok(quad_hypersurface18(&m), "quad18") {
            c.ensure(v.is_zero(), || format!("quad18 = {v} on a quadrilateral"));
        }
        let dir = [b.nonzero_rat(&mut rng), b.nonzero_rat(&mut rng)];
        if let Some(v) = c.ok(quad_axial_hankel_det(&m, &dir), "axial determinant") {
            c.ensure(v.is_zero(), || "axial Hankel determinant nonzero on a quadrilateral".into());
        }
    }
    let mut tri_nonzero = 0;
    for _ in 0..20 {
        let t = b.simplex_vertices(&mut rng, 2);
        if let Some(v) = c.ok(simplex_moments(&t, 3).and_then(|m| quad_hypersurface18(&m)), "quad18") {
            tri_nonzero += !v.is_zero() as usize;
        }
    }
    c.note(format!("quad18 nonzero on {tri_nonzero}/20 random triangles"));
    c.ensure(tri_nonzero > 0, || "quad18 vanishes on every random triangle".into());
    let mut noise_nonzero = 0;
    for _ in 0..10 {
        let m = random_vector(&b, &mut rng, 2, 3);
        noise_nonzero += quad_hypersurface18(&m).map(|v| !v.is_zero()).unwrap_or(false) as usize;
        let p = b.convex_polygon(&mut rng, 5);
        noise_nonzero += moments_of(&p, 3)
            .and_then(|m| quad_hypersurface18(&m))
            .map(|v| !v.is_zero())
            .unwrap_or(false) as usize;
    }
    c.note(format!("quad18 nonzero on {noise_nonzero}/20 pentagons and random vectors"));
    c.ensure(noise_nonzero == 20, || "quad18 vanishes off the quadrilaterals".into());

    for _ in 0..20 {
        let t = b.simplex_vertices(&mut rng, 2);
        let (al, be, ga) = (b.rat(&mut rng), b.rat(&mut rng), b.rat(&mut rng));
        let v = simplex_moments(&t, 4)
            .and_then(|m| linear_density_moments(&m, &al, &be, &ga))
            .and_then(|m| linear_density_hypersurface52(&m));
        if let Some(v) = c.ok(v, "linear density") {
            c.ensure(v.is_zero(), || "linear-density hypersurface nonzero on its family".into());
        }
    }
    let mut off = 0;
    for _ in 0..10 {
        let m = random_vector(&b, &mut rng, 2, 3);
        off += linear_density_hypersurface52(&m).map(|v| !v.is_zero()).unwrap_or(false) as usize;
        let q = b.convex_polygon(&mut rng, 4);
        off += moments_of(&q, 3)
            .and_then(|m| linear_density_hypersurface52(&m))
            .map(|v| !v.is_zero())
            .unwrap_or(false) as usize;
    }
    c.note(format!("linear-density hypersurface nonzero on {off}/20 off-family inputs"));
    c.ensure(off == 20, || "linear-density hypersurface vanishes off its family".into());
}

fn relation_catalog(c: &mut Check) {
    let Some(catalog) = c.ok(builtin_catalog(), "catalog") else { return };
    let mut passed = 0;
    for entry in catalog {
        let report = fuzz_relation(entry, &GeneratorSpec::for_entry(entry), 50, 0);
        c.ensure(report.passed(), || format!("{}: {} of 50 trials fail", entry.id, report.failures.len()));
        if let Some(v) = c.ok(negative_control(entry, 0), &entry.id) {
            c.ensure(!v.is_zero(), || format!("{}: negative control vanishes", entry.id));
            passed += (report.passed() && !v.is_zero()) as usize;
        }
    }
    c.note(format!("{passed}/{} relations", catalog.len()));
}

fn equivariance(c: &mut Check) {
    let b = sample();
    let mut rng = seeded(909);
    let mut polys: Vec<Polytope> = Vec::new();
    for _ in 0..3 {
        polys.push(b.simplex(&mut rng, 2));
        polys.push(b.convex_polygon(&mut rng, 4));
        polys.push(b.simplex(&mut rng, 3));
    }
    for p in &polys {
        let d = p.dim();
        let (a, shift) = b.affine_map(&mut rng, d);
        let Some(g) = c.ok(AffineMap::new(a.clone(), shift.clone()), "map") else { continue };
        let lhs = moments_of(p, 4).and_then(|m| transform_moments(&m, &g));
        let rhs = p.map_affine(&a, &shift).and_then(|q| moments_of(&q, 4));
        if let (Some(l), Some(r)) = (c.ok(lhs, "transformed moments"), c.ok(rhs, "moments of image")) {
            c.ensure(l == r, || format!("transform disagrees in dimension {d}"));
        }
        for lambda in [rat_int(2), rat(1, 3)] {
            let Some(m) = c.ok(moments_of(p, 4), "moments") else { continue };
            let Some(scaled) = c.ok(p.scaled(&lambda).and_then(|q| moments_of(&q, 4)), "scaled") else {
                continue;
            };
            for ((idx, x), y) in m.iter().zip(scaled.values()) {
                let want = x * num_traits::pow(lambda.clone(), idx.total() as usize);
                c.ensure(*y == want, || format!("scaling by {lambda} at {idx:?}"));
            }
        }
    }
}

fn cli_binary() -> Option<PathBuf> {
    let exe = std::env::current_exe().ok()?;
    let dir = exe.parent()?.parent()?;
    let bin = dir.join(format!("polymom{}", std::env::consts::EXE_SUFFIX));
    bin.exists().then_some(bin)
}

fn cli_determinism(c: &mut Check) {
    let catalog = builtin_catalog().expect("catalog");
    for entry in catalog.iter().take(6) {
        let spec = GeneratorSpec::for_entry(entry);
        let a = serde_json::to_string(&fuzz_relation_with(entry, &spec, 5, 7, false)).unwrap();
        let b = serde_json::to_string(&fuzz_relation_with(entry, &spec, 5, 7, true)).unwrap();
        c.ensure(a == b, || format!("{}: serial and parallel reports differ", entry.id));
    }
    let Some(bin) = cli_binary() else {
        c.ensure(false, || "polymom binary not built".into());
        return;
    };
    let dir = std::env::temp_dir().join(format!("polymom-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let run = |args: &[&str]| Command::new(&bin).args(args).output().expect("binary runs");
    let path = |name: &str| dir.join(name).to_string_lossy().into_owned();

    let v1 = run(&["verify", "--all", "--trials", "3", "--seed", "7"]);
    let v2 = run(&["verify", "--all", "--trials", "3", "--seed", "7"]);
    let v3 = run(&["verify", "--all", "--trials", "3", "--seed", "7", "--parallel"]);
    c.ensure(v1.status.code() == Some(0), || format!("verify --all exit {:?}", v1.status.code()));
    c.ensure(v1.stdout == v2.stdout && v1.stdout == v3.stdout, || "verify --all output differs between runs".into());
    let s1 = run(&["sample", "--family", "quadrilateral", "--seed", "3"]);
    let s2 = run(&["sample", "--family", "quadrilateral", "--seed", "3"]);
    c.ensure(s1.stdout == s2.stdout && !s1.stdout.is_empty(), || "sample output differs between runs".into());

    std::fs::write(path("quad.json"), &s1.stdout).unwrap();
    std::fs::write(path("tri.json"), r#"{"d": 2, "vertices": [[0,0],[2,0],[0,3]]}"#).unwrap();
    std::fs::write(path("flat.json"), r#"{"d": 2, "vertices": [[0,0],[1,1],[2,2]]}"#).unwrap();
    let relation = include_str!("../data/relations/segment_cubic.poly");
    std::fs::write(path("bad.poly"), relation.replace("1 1 1 0 -3", "1 1 1 0 -2")).unwrap();
    let cases: [(Vec<String>, i32); 7] = [
        (vec!["verify".into(), "--relation".into(), "quad18".into(), "--polytope".into(), path("quad.json")], 0),
        (vec!["verify".into(), "--relation".into(), "segment_cubic".into(), "--polytope".into(), path("tri.json")], 1),
        (vec!["moments".into(), "--polytope".into(), path("missing.json"), "--order".into(), "2".into()], 2),
        (vec!["moments".into(), "--polytope".into(), path("flat.json"), "--order".into(), "2".into()], 3),
        (vec!["verify".into(), "--relation-file".into(), path("bad.poly"), "--trials".into(), "2".into()], 3),
        (vec!["moments".into(), "--order".into(), "2".into()], 64),
        (vec!["--help".into()], 0),
    ];
    for (args, want) in cases {
        let refs: Vec<&str> = args.iter().map(String::as_str).collect();
        let out = run(&refs);
        c.ensure(out.status.code() == Some(want), || format!("{} exited {:?}, expected {want}", args.join(" "), out.status.code()));
    }
    let _ = std::fs::remove_dir_all(&dir);
}

fn main() {
    let criteria: [(&str, fn(&mut Check)); 10] = [
        ("cross-oracle moment agreement", cross_oracle_moments),
        ("triangulation independence", triangulation_independence),
        ("adjoint correctness", adjoint_correctness),
        ("Hankel suite", hankel_suite),
        ("cumulant suite", cumulant_suite),
        ("invariant pipeline", invariant_pipeline),
        ("hypersurface vanishing", hypersurfaces),
        ("relation catalog", relation_catalog),
        ("equivariance and homogeneity", equivariance),
        ("CLI determinism and exit codes", cli_determinism),
    ];
    let mut failing = Vec::new();
    for (k, (name, f)) in criteria.iter().enumerate() {
        let mut c = Check::default();
        let start = Instant::now();
        f(&mut c);
        let n = k + 1;
        let status = if c.failures.is_empty() { "PASS" } else { "FAIL" };
        let mut line = format!("criterion {n:>2} {name}: {status} ({:.1}s)", start.elapsed().as_secs_f64());
        if !c.notes.is_empty() {
            line.push_str(&format!("; {}", c.notes.join("; ")));
        }
        println!("{line}");
        for f in c.failures.iter().take(5) {
            println!("    {f}");
        }
        if c.failures.len() > 5 {
            println!("    ... {} more", c.failures.len() - 5);
        }
        if !c.failures.is_empty() {
            failing.push(n);
        }
    }
    println!(
        "{} of {} criteria pass; failing: {:?}; known failing: {:?}",
        criteria.len() - failing.len(),
        criteria.len(),
        failing,
        KNOWN_FAILING
    );
    if failing != KNOWN_FAILING {
        std::process::exit(1);
    }
}

