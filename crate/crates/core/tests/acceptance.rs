//! One pass/fail line per acceptance criterion.

mod common;

use std::time::Instant;

use common::*;
use forge_core::asd::{
    check_calderbank_singer, check_conditions_ab, fano_from_isotropy, stabilizer_orders, IsotropyData,
};
use forge_core::fanpoly::{
    anticanonical_polytope, barycenter, canonical_support, einstein_verdict, fans_isomorphic, index, is_fano,
    is_strictly_upper_convex, same_ray_set, symmetry, volume, AugmentedFan, EinsteinVerdict, Polytope,
};
use forge_core::lattice::IVec2;
use forge_core::metriclab::{futaki_quadrature, mul2, soliton_vector, MetricProblem};
use forge_core::reduction::{cohomology_table, is_admissible, torsion_order, torsion_order_matrix_tree, WeightMatrix};
use forge_core::sasaki::{
    analyze_fano_fan, canonical_root_lift, classify_5mfd, delta_kp_family, delta_kp_printed_rays, iterated_sphere_join,
    join, se_from_3sasakian, total_space_smooth, volume_se, Diffeotype, JoinFactor,
};
use forge_core::Rational;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use rand::Rng;

struct Outcome {
    failures: Vec<String>,
}

impl Outcome {
    fn check(&mut self, ok: bool, what: impl Into<String>) {
        if !ok {
            self.failures.push(what.into());
        }
    }
}

fn run(n: usize, title: &str, body: impl FnOnce(&mut Outcome)) -> bool {
    let start = Instant::now();
    let mut out = Outcome { failures: Vec::new() };
    body(&mut out);
    let secs = start.elapsed().as_secs_f64();
    if out.failures.is_empty() {
        println!("criterion {n} PASS  {title} ({secs:.1}s)");
        true
    } else {
        println!("criterion {n} FAIL  {title} ({secs:.1}s)");
        for f in out.failures.iter().take(12) {
            println!("    - {f}");
        }
        if out.failures.len() > 12 {
            println!("    ... {} more", out.failures.len() - 12);
        }
        false
    }
}

fn q(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

fn example_data() -> IsotropyData {
    IsotropyData::from_i64(&[(-7, -2), (-5, -2), (-1, -1), (5, 1), (7, 2)]).unwrap()
}

fn criterion_1(o: &mut Outcome) {
    let w = WeightMatrix::from_rows(&[[1, 0, 1, 1], [0, 1, 1, 2]]).unwrap();
    o.check(is_admissible(&w), "example weight matrix admissible");
    match cohomology_table(&w) {
        Ok(t) => o.check(t.b2() == 2, format!("b2 = {} (want 2)", t.b2())),
        Err(e) => o.check(false, format!("cohomology table: {e}")),
    }
    let data = example_data();
    o.check(check_conditions_ab(&data), "conditions a/b");
    o.check(check_calderbank_singer(&data), "convex position of the doubled data");
    let mut orders: Vec<BigInt> = stabilizer_orders(&data);
    orders.sort();
    let want: Vec<BigInt> = [3, 3, 4, 4].iter().map(|&x| BigInt::from(x)).collect();
    o.check(orders == want, format!("stabilizer orders {orders:?}"));
    let fan = fano_from_isotropy(&data).unwrap();
    o.check(same_ray_set(fan.rays(), fig2_fan().rays()), "ray set matches the octagon");
    o.check(symmetry(&fan).is_special_symmetric, "special symmetric");
    o.check(is_fano(&fan), "Fano");
    let verdict = einstein_verdict(&fan).unwrap();
    o.check(verdict.barycenter == [Rational::zero(), Rational::zero()], "barycenter exactly 0");
    o.check(verdict.einstein == EinsteinVerdict::Einstein, "Einstein verdict");
    let m = analyze_fano_fan(&fan).unwrap();
    o.check(m.b2 == 5, format!("b2(M) = {}", m.b2));
    o.check(m.diffeotype == Diffeotype::ConnSumSxS(5), format!("diffeotype {}", m.diffeotype));
    let s = se_from_3sasakian(2);
    o.check(s.b2 == 5 && s.diffeotype == Diffeotype::ConnSumSxS(5), "3-Sasakian route gives #5(S²×S³)");
}

/// Spanning-tree sum by subset enumeration and breadth-first connectivity.
fn brute_tree_sum(w: &WeightMatrix) -> (BigInt, usize) {
    let n = w.n();
    let edges: Vec<(usize, usize, BigInt)> = (0..n)
        .flat_map(|s| (s + 1..n).map(move |t| (s, t)))
        .map(|(s, t)| (s, t, w.deleted_minor(s, t).unwrap().abs()))
        .collect();
    let mut total = BigInt::zero();
    let mut trees = 0;
    for mask in 0u32..(1 << edges.len()) {
        if mask.count_ones() as usize != n - 1 {
            continue;
        }
        let chosen: Vec<&(usize, usize, BigInt)> =
            edges.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, e)| e).collect();
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(x) = stack.pop() {
            for e in &chosen {
                let y = if e.0 == x { e.1 } else if e.1 == x { e.0 } else { continue };
                if !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
        if seen.iter().all(|&s| s) {
            trees += 1;
            total += chosen.iter().map(|e| e.2.clone()).product::<BigInt>();
        }
    }
    (total, trees)
}

fn criterion_2(o: &mut Outcome) {
    let w = WeightMatrix::from_rows(&[[1, 0, 1, 1], [0, 1, 1, 2]]).unwrap();
    let (brute, trees) = brute_tree_sum(&w);
    o.check(trees == 16, format!("{trees} spanning trees of K4"));
    let t = torsion_order(&w).unwrap();
    o.check(t == brute, format!("torsion_order {t} vs brute force {brute}"));
    o.check(t > BigInt::from(3), format!("|G| = {t} > |a1 a2| + |b1 b2| = 3"));
    let mut r = rng(2);
    let mut tested = 0;
    while tested < 200 {
        let k = r.gen_range(1..=4);
        let a: Vec<i64> = (0..k).map(|_| r.gen_range(-9..=9)).collect();
        let b: Vec<i64> = (0..k).map(|_| r.gen_range(-9..=9)).collect();
        let w = WeightMatrix::normal_form_matrix(&a, &b).unwrap();
        if !is_admissible(&w) {
            continue;
        }
        tested += 1;
        let e = torsion_order(&w).unwrap();
        let m = torsion_order_matrix_tree(&w).unwrap();
        o.check(e == m, format!("a={a:?} b={b:?}: enumeration {e} vs Matrix-Tree {m}"));
        let bound: BigInt = a.iter().map(|&x| BigInt::from(x)).product::<BigInt>().abs()
            + b.iter().map(|&x| BigInt::from(x)).product::<BigInt>().abs();
        o.check(e > bound, format!("a={a:?} b={b:?}: {e} not above {bound}"));
    }
}

fn criterion_3(o: &mut Outcome) {
    let square = fano_from_isotropy(&IsotropyData::from_i64(&[(-1, 0), (0, 1), (1, 0)]).unwrap()).unwrap();
    o.check(fans_isomorphic(&square, &square_fan()), "square data gives CP1 x CP1");
    o.check(index(&square).unwrap() == BigInt::from(2), "square index 2");
    let vol = volume(&anticanonical_polytope(&square).unwrap());
    o.check(vol == q(4, 1), format!("square Vol = {vol}"));
    let vse = volume_se(&square).unwrap();
    let want = 16.0 * std::f64::consts::PI.powi(3) / 27.0;
    o.check(vse.exact == q(16, 1), "exact volume factor 16");
    o.check(((vse.numeric - want) / want).abs() <= 1e-12, format!("volume_se {} vs {want}", vse.numeric));

    let hex_data = IsotropyData::from_i64(&[(-1, 0), (0, 1), (1, 1), (1, 0)]).unwrap();
    let hex = fano_from_isotropy(&hex_data).unwrap();
    o.check(fans_isomorphic(&hex, &hexagon_fan()), "hexagon data gives CP2 blown up in 3 points");
    o.check(index(&hex).unwrap() == BigInt::from(1), "hexagon index 1");
    let vol = volume(&anticanonical_polytope(&hex).unwrap());
    o.check(vol == q(3, 1), format!("hexagon Vol = {vol}"));
    o.check(einstein_verdict(&hex).unwrap().einstein == EinsteinVerdict::Einstein, "hexagon Einstein");

    for (name, f) in [("square", &square), ("hexagon", &hex)] {
        let l = canonical_root_lift(f).unwrap();
        o.check(total_space_smooth(f, &l).unwrap(), format!("{name} total space smooth"));
    }
    let cp2 = cp2_fan();
    o.check(!total_space_smooth(&cp2, &canonical_support(&cp2)).unwrap(), "CP2 with the K-lift is not smooth");
}

fn random_fano_fan(r: &mut rand_chacha::ChaCha8Rng) -> AugmentedFan {
    loop {
        let n = r.gen_range(3..=6);
        let rays: Vec<IVec2> = (0..n).map(|_| v(r.gen_range(-4..=4), r.gen_range(-4..=4))).collect();
        if let Ok(f) = AugmentedFan::new(rays) {
            if is_fano(&f) {
                return f;
            }
        }
    }
}

fn criterion_4(o: &mut Outcome) {
    let mut r = rng(4);
    let zero = [Rational::zero(), Rational::zero()];
    for i in 0..500 {
        let fan = random_special_symmetric_fan(&mut r);
        let poly = anticanonical_polytope(&fan).unwrap();
        let bc = barycenter(&poly).unwrap();
        o.check(bc == zero, format!("fan {i} {:?}: barycenter {bc:?}", fan.rays()));
        if i < 40 {
            let p = MetricProblem::<f64>::from_fan(&fan).unwrap();
            let s = soliton_vector(&p).unwrap();
            o.check(s.b[0].hypot(s.b[1]) <= 1e-9, format!("symmetric fan {i}: soliton {:?}", s.b));
        }
    }

    let pts: Vec<[Rational; 2]> =
        [(-1, -1), (0, -1), (2, 1), (-1, 1)].iter().map(|&(x, y)| [q(x, 1), q(y, 1)]).collect();
    let labels = vec![BigInt::from(1); 4];
    let f1 = Polytope::from_vertices(&pts, &labels).unwrap();
    let bc = barycenter(&f1).unwrap();
    o.check(bc == [q(1, 12), q(1, 6)], format!("F1 barycenter {bc:?}"));
    let p = MetricProblem::<f64>::from_polytope(&f1).unwrap();
    let fq = futaki_quadrature(p.polygon()).unwrap();
    o.check(
        (fq[0] - 1.0 / 12.0).abs() <= 1e-12 && (fq[1] - 1.0 / 6.0).abs() <= 1e-12,
        format!("F1 quadrature {fq:?}"),
    );
    let s = soliton_vector(&p).unwrap();
    o.check(s.b[0].hypot(s.b[1]) > 1e-9, format!("F1 soliton {:?} is nonzero", s.b));

    // zero soliton exactly when the barycenter vanishes
    for i in 0..60 {
        let fan = if i % 2 == 0 { random_fano_fan(&mut r) } else { random_special_symmetric_fan(&mut r) };
        let poly = anticanonical_polytope(&fan).unwrap();
        let bc = barycenter(&poly).unwrap();
        let p = MetricProblem::<f64>::from_fan(&fan).unwrap();
        let fq = futaki_quadrature(p.polygon()).unwrap();
        let exact = [bc[0].clone(), bc[1].clone()].map(|c| forge_core::Scalar::to_f64_lossy(&c));
        o.check(
            (fq[0] - exact[0]).abs() <= 1e-12 && (fq[1] - exact[1]).abs() <= 1e-12,
            format!("quadrature {fq:?} vs {exact:?} for {:?}", fan.rays()),
        );
        let s = soliton_vector(&p).unwrap();
        let b_zero = s.b[0].hypot(s.b[1]) <= 1e-9;
        o.check(b_zero == (bc == zero), format!("soliton {:?} vs barycenter {bc:?} for {:?}", s.b, fan.rays()));
    }
}

fn criterion_5(o: &mut Outcome) {
    let mut r = rng(5);
    for (name, fan) in [("square", square_fan()), ("hexagon", hexagon_fan()), ("octagon", fig2_fan())] {
        let p = MetricProblem::<f64>::from_fan(&fan).unwrap();
        for _ in 0..50 {
            let x = [r.gen_range(-5.0..=5.0), r.gen_range(-5.0..=5.0)];
            let y = match p.moment(&x) {
                Ok(y) => y,
                Err(e) => {
                    o.check(false, format!("{name}: moment({x:?}) failed: {e}"));
                    continue;
                }
            };
            let g = p.grad_g(&y).unwrap();
            let res = (g[0] - x[0]).hypot(g[1] - x[1]);
            o.check(res < 1e-10, format!("{name}: duality residual {res:e} at {x:?}"));
            let prod = mul2(&p.hess_f(&x).unwrap(), &p.hess_g(&y).unwrap());
            for (i, row) in prod.iter().enumerate() {
                for (j, &v) in row.iter().enumerate() {
                    let e = v - if i == j { 1.0 } else { 0.0 };
                    o.check(e.abs() < 1e-8, format!("{name}: Hess F Hess G - I entry {e:e}"));
                }
            }
        }
        let exact = forge_core::Scalar::to_f64_lossy(&volume(&anticanonical_polytope(&fan).unwrap()));
        let start = Instant::now();
        let num = p.numeric_volume(p.default_cutoff(), 200);
        let secs = start.elapsed().as_secs_f64();
        let rel = (num - exact).abs() / exact;
        o.check(rel < 0.01, format!("{name}: numeric volume {num} vs {exact} (rel {rel:.2e})"));
        o.check(secs < 30.0, format!("{name}: 200² quadrature took {secs:.1}s"));
    }
}

fn criterion_6(o: &mut Outcome) {
    for k in 1..=5i64 {
        for p in 0..=5i64 {
            let printed = delta_kp_printed_rays(k, p);
            let printed_fails = delta_kp_family(k, p, false).is_err();
            let upper = printed.iter().all(|r| !r.y.is_negative());
            o.check(printed_fails && upper, format!("({k},{p}): printed data not flagged as incomplete"));
            let d = match delta_kp_family(k, p, true) {
                Ok(d) => d,
                Err(e) => {
                    o.check(false, format!("({k},{p}): repaired data invalid: {e}"));
                    continue;
                }
            };
            o.check(is_strictly_upper_convex(&d.fan, &d.l).unwrap(), format!("({k},{p}): l not strictly convex"));
            o.check(!d.spin(), format!("({k},{p}): spin_w2 finds w2 = 0 (rays {:?})", d.fan.rays()));
            let want = Diffeotype::XInfConnSum((k - 1) as usize);
            match classify_5mfd(d.b2(), d.spin()) {
                Ok(t) => o.check(t == want, format!("({k},{p}): classified {t}, expected {want}")),
                Err(e) => o.check(false, format!("({k},{p}): classification error {e}")),
            }
        }
    }
}

fn criterion_7(o: &mut Outcome) {
    let s3 = JoinFactor::sphere(1);
    for (k, fan) in [(1usize, square_fan()), (3, hexagon_fan()), (5, fig2_fan())] {
        let mk = JoinFactor::from_report(&analyze_fano_fan(&fan).unwrap()).unwrap();
        o.check(mk.b2 == k, format!("M_{k} has b2 {}", mk.b2));
        let g = s3.index.gcd(&mk.index);
        let (l1, l2) = (&s3.index / &g, &mk.index / &g);
        let j = join(&s3, &mk, &l1, &l2).unwrap();
        o.check(j.dimension_out == 7, format!("S3*M_{k}: dim {}", j.dimension_out));
        o.check(j.b2_out == k + 1, format!("S3*M_{k}: b2 {}", j.b2_out));
        o.check(j.smooth && j.einstein, format!("S3*M_{k}: smooth {} einstein {}", j.smooth, j.einstein));
        for p in 0..=4 {
            let it = iterated_sphere_join(&mk, p).unwrap();
            o.check(2 * it.m + 1 == 5 + 2 * p, format!("M_{k} with {p} S3 factors: dim {}", 2 * it.m + 1));
            o.check(it.b2 == k + p, format!("M_{k} with {p} S3 factors: b2 {}", it.b2));
        }
    }
    let pairs = [(1, 1), (1, 2), (2, 3), (3, 5)];
    let mut cases = 0;
    for v1 in 1..=5i64 {
        for v2 in 1..=5i64 {
            for &(k1, k2) in &pairs {
                cases += 1;
                let a = JoinFactor { ord: v1.into(), ..JoinFactor::sphere(1) };
                let b = JoinFactor { ord: v2.into(), ..JoinFactor::sphere(2) };
                let j = join(&a, &b, &k1.into(), &k2.into()).unwrap();
                let (x, y) = (v1 * k2, v2 * k1);
                let common = (2..=x.min(y)).any(|d| x % d == 0 && y % d == 0);
                o.check(j.smooth == !common, format!("v=({v1},{v2}) k=({k1},{k2}): smooth {}", j.smooth));
            }
        }
    }
    o.check(cases == 100, format!("{cases} grid cases"));
}

fn criterion_8(o: &mut Outcome) {
    let mut r = rng(8);
    for i in 0..500 {
        let fan = if i % 2 == 0 {
            random_special_symmetric_fan(&mut r)
        } else {
            fano_from_isotropy(&random_isotropy_data(&mut r)).unwrap()
        };
        o.check(symmetry(&fan).is_special_symmetric, format!("fan {:?} not special symmetric", fan.rays()));
        let ind = index(&fan).unwrap();
        o.check(ind == 1.into() || ind == 2.into(), format!("fan {:?}: index {ind}", fan.rays()));
    }
}

fn main() {
    let results = [
        run(1, "worked example end to end", criterion_1),
        run(2, "torsion order", criterion_2),
        run(3, "smooth classics", criterion_3),
        run(4, "Futaki invariant and barycenter", criterion_4),
        run(5, "canonical metric lab", criterion_5),
        run(6, "non-spin family", criterion_6),
        run(7, "joins", criterion_7),
        run(8, "index law", criterion_8),
    ];
    let passed = results.iter().filter(|&&ok| ok).count();
    println!("{passed}/{} criteria passed", results.len());
    if passed != results.len() {
        std::process::exit(1);
    }
}
