//! Acceptance suite: one PASS/FAIL line per criterion, each with its time budget.
//! Runs sequentially (no libtest harness) so that timings are not shared.

use std::process::ExitCode;
use std::sync::Arc;
use std::time::{Duration, Instant};

use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use torifan::catalog::{generators, Catalog};
use torifan::verify::{gap_report, sweep_catalog, verify_sweeps};
use torifan_core::invariants::{
    delta_toric, exceptional_chain, expected_vanishing_order, expected_vanishing_order_integral,
    fujita_profile, score, seshadri,
};
use torifan_core::okounkov::{
    bm_concavity_check, cone_structure_check, nef_by_origin, okounkov_body, pseff_threshold,
    segment_membership_check, slice_profile, translation_identity_check, FlagSpec,
};
use torifan_core::rational::{factorial, pow};
use torifan_core::{
    int, rat, Blowup, Point, Polynomial, Polytope, Rational, TDivisor, ToricVariety,
};

type Outcome = Result<String, String>;

/// Name, time budget in seconds, check.
type Criterion = (&'static str, u64, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn surfaces() -> Vec<Arc<ToricVariety>> {
    Catalog::bundled()
        .of_dim(2)
        .entries()
        .iter()
        .map(|e| e.variety.clone())
        .collect()
}

fn projective_space(n: usize) -> Arc<ToricVariety> {
    Arc::new(generators::projective_space(n).validate().unwrap())
}

fn hyperplane(x: &Arc<ToricVariety>) -> TDivisor {
    let mut c = vec![0; x.num_rays()];
    c[x.num_rays() - 1] = 1;
    TDivisor::from_ints(x.clone(), &c).unwrap()
}

fn projective_equality() -> Outcome {
    let mut scores = Vec::new();
    for n in 1..=4 {
        let x = projective_space(n);
        let h = hyperplane(&x);
        let report = score(&h).map_err(|e| e.to_string())?;
        let p = h.section_polytope();
        let verts = p.vertices().map_err(|e| e.to_string())?;
        ensure(verts.len() == n + 1, || {
            format!("P{n}: {} vertices", verts.len())
        })?;
        // centroid of a simplex = mean of its vertices
        let mean = verts
            .iter()
            .fold(Point::zero(n), |acc, v| acc.add(v))
            .scale(&rat(1, n as i64 + 1));
        ensure(p.barycenter().unwrap() == mean, || {
            format!("P{n}: barycenter")
        })?;
        for (u, a) in x.rays().iter().zip(h.coeffs()) {
            ensure(mean.dot_ints(u) + a == rat(1, n as i64 + 1), || {
                format!("P{n}: S != 1/(n+1)")
            })?;
        }
        let m = int(n as i64 + 1);
        ensure(
            report.eps == m && report.delta == m && report.beta == m,
            || format!("P{n}: beta components"),
        )?;
        ensure(
            report.score == pow(&m, n as u32) && report.is_extremal,
            || format!("P{n}: score {}", report.score),
        )?;
        scores.push(report.score.to_string());
    }
    Ok(format!("scores {}", scores.join(", ")))
}

/// Centroid of a convex polygon from the shoelace formula.
fn shoelace_centroid(verts: &[Point]) -> Point {
    let cx: f64 = verts.iter().map(|v| v.to_f64()[0]).sum::<f64>() / verts.len() as f64;
    let cy: f64 = verts.iter().map(|v| v.to_f64()[1]).sum::<f64>() / verts.len() as f64;
    let mut ring = verts.to_vec();
    ring.sort_by(|a, b| {
        let (pa, pb) = (a.to_f64(), b.to_f64());
        (pa[1] - cy)
            .atan2(pa[0] - cx)
            .total_cmp(&(pb[1] - cy).atan2(pb[0] - cx))
    });
    let (mut area2, mut mx, mut my) = (Rational::zero(), Rational::zero(), Rational::zero());
    for i in 0..ring.len() {
        let (p, q) = (&ring[i].0, &ring[(i + 1) % ring.len()].0);
        let cross = &p[0] * &q[1] - &q[0] * &p[1];
        mx += (&p[0] + &q[0]) * &cross;
        my += (&p[1] + &q[1]) * &cross;
        area2 += cross;
    }
    let six_area = area2 * int(3);
    Point(vec![mx / &six_area, my / &six_area])
}

fn f1_pipeline() -> Outcome {
    let x = Catalog::bundled().get("F1").unwrap().variety.clone();
    let k = TDivisor::anticanonical(&x);
    let (delta, witness) = delta_toric(&k).map_err(|e| e.to_string())?;
    let (eps, _) = seshadri(&k).map_err(|e| e.to_string())?;
    let report = score(&k).map_err(|e| e.to_string())?;
    ensure(delta == rat(6, 7) && witness == 1, || {
        format!("delta {delta} at ray {witness}")
    })?;
    ensure(x.rays()[witness] == [0, 1], || "witness ray".into())?;
    let s = expected_vanishing_order(&k, witness).unwrap();
    ensure(s == rat(7, 6), || format!("S = {s}"))?;
    ensure(eps == int(1), || format!("eps {eps}"))?;
    ensure(
        report.beta == rat(6, 7) && report.score == rat(288, 49),
        || format!("score {}", report.score),
    )?;
    let p = k.section_polytope();
    let bary = p.barycenter().unwrap();
    ensure(bary == Point(vec![rat(1, 12), rat(1, 6)]), || {
        format!("barycenter {:?}", bary.to_strings())
    })?;
    let oracle = shoelace_centroid(p.vertices().unwrap());
    ensure(oracle == bary, || {
        format!("shoelace {:?}", oracle.to_strings())
    })?;
    for ray in 0..x.num_rays() {
        let integral = expected_vanishing_order_integral(&k, ray).unwrap();
        ensure(
            integral == expected_vanishing_order(&k, ray).unwrap(),
            || format!("ray {ray}: integral {integral}"),
        )?;
    }
    Ok(format!(
        "delta 6/7 (ray 1, S 7/6), eps 1, score {} ~ {:.3}",
        report.score,
        288.0 / 49.0
    ))
}

fn surface_sweep() -> Outcome {
    let catalog = Catalog::bundled().of_dim(2);
    let sweeps = sweep_catalog(&catalog, 8).map_err(|e| e.to_string())?;
    verify_sweeps(8, &sweeps).map_err(|e| e.to_string())?;
    let nine = int(9);
    let mut classes = 0;
    let mut points = 0;
    for s in &sweeps {
        ensure(s.ample_points >= 100, || {
            format!("{}: {} ample samples", s.variety_name, s.ample_points)
        })?;
        for sample in &s.samples {
            ensure(
                sample.report.score <= nine && sample.report.delta_score <= nine,
                || format!("{} sample #{}", s.variety_name, sample.index),
            )?;
        }
        ensure(s.is_projective_space || s.gap.is_positive(), || {
            format!("{}: gap {}", s.variety_name, s.gap)
        })?;
        classes += s.samples.len();
        points += s.ample_points;
    }
    let maxima: Vec<String> = sweeps
        .iter()
        .map(|s| format!("{} {}", s.variety_name, s.max_score))
        .collect();
    Ok(format!(
        "{points} ample samples, {classes} classes, 0 violations; max {}",
        maxima.join(", ")
    ))
}

fn fujita_profiles() -> Outcome {
    let p2 = projective_space(2);
    let h = hyperplane(&p2);
    for cone in 0..3 {
        let prof = fujita_profile(&h, cone).map_err(|e| e.to_string())?;
        let model = Polynomial::new(vec![int(1), int(0), int(-1)]);
        ensure(prof.profile.support() == Some((&int(0), &int(1))), || {
            "P2 support".into()
        })?;
        ensure(prof.profile.pieces().iter().all(|p| *p == model), || {
            "P2 profile is not 1 - x^2".into()
        })?;
    }
    let mut checked = 0;
    let mut positive = 0;
    for x in surfaces() {
        let k = TDivisor::anticanonical(&x);
        for cone in 0..x.cones().len() {
            let prof = fujita_profile(&k, cone).map_err(|e| e.to_string())?;
            let top = prof.threshold.clone();
            let samples = (0..=100).map(|j| &top * rat(j, 100));
            for t in prof.profile.breakpoints().iter().cloned().chain(samples) {
                let m = prof.margin(&t);
                ensure(!m.is_negative(), || {
                    format!("{} cone {cone}: margin {m} at x = {t}", x.name())
                })?;
                positive += usize::from(m.is_positive());
                checked += 1;
            }
            ensure(prof.inequality_holds, || {
                format!("{} cone {cone}", x.name())
            })?;
        }
    }
    Ok(format!(
        "P2 profile = 1 - x^2 on [0,1]; {checked} margins >= 0 ({positive} strictly)"
    ))
}

fn random_ample(rng: &mut ChaCha8Rng, xs: &[Arc<ToricVariety>]) -> TDivisor {
    loop {
        let x = &xs[rng.gen_range(0..xs.len())];
        let coeffs = (0..x.num_rays())
            .map(|_| rat(rng.gen_range(1..=12), rng.gen_range(1..=4)))
            .collect();
        let d = TDivisor::new(x.clone(), coeffs).unwrap();
        if d.is_ample() {
            return d;
        }
    }
}

fn s_integrals() -> Outcome {
    let xs = surfaces();
    let mut checks = 0;
    let mut agree = |d: &TDivisor| -> Result<(), String> {
        for ray in 0..d.variety().num_rays() {
            let a = expected_vanishing_order(d, ray).map_err(|e| e.to_string())?;
            let b = expected_vanishing_order_integral(d, ray).map_err(|e| e.to_string())?;
            ensure(a == b, || {
                format!(
                    "{} {:?} ray {ray}: {a} vs {b}",
                    d.variety().name(),
                    d.coeffs()
                )
            })?;
            checks += 1;
        }
        Ok(())
    };
    for x in &xs {
        agree(&TDivisor::anticanonical(x))?;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..50 {
        agree(&random_ample(&mut rng, &xs))?;
    }
    for x in &xs {
        let k = TDivisor::anticanonical(x);
        for cone in 0..x.cones().len() {
            let chain = exceptional_chain(&k, cone).map_err(|e| e.to_string())?;
            ensure(
                chain.expected_vanishing_order == chain.expected_vanishing_order_barycenter,
                || format!("{} cone {cone}: exceptional S", x.name()),
            )?;
            ensure(chain.holds(), || format!("{} cone {cone}: chain", x.name()))?;
        }
    }
    let chain =
        exceptional_chain(&hyperplane(&projective_space(2)), 0).map_err(|e| e.to_string())?;
    ensure(chain.all_tight(), || "P2 chain not tight".into())?;
    ensure(
        chain.log_discrepancy == int(2) && chain.beta_times_s == int(2),
        || "P2: A(E) = beta S = 2".into(),
    )?;
    ensure(chain.lower_bound == Some(int(2)), || {
        "P2 lower bound".into()
    })?;
    Ok(format!(
        "{checks} (class, ray) pairs agree; P2 chain 2 = 2 = 2, score 9 = 9"
    ))
}

fn random_big(rng: &mut ChaCha8Rng, x: &Arc<ToricVariety>) -> TDivisor {
    loop {
        let coeffs = (0..x.num_rays())
            .map(|_| rat(rng.gen_range(-4..=8), rng.gen_range(1..=3)))
            .collect();
        let d = TDivisor::new(x.clone(), coeffs).unwrap();
        if d.is_big().unwrap() {
            return d;
        }
    }
}

fn okounkov_suite() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let (mut bodies, mut pairs, mut translations, mut nef, mut non_nef) = (0, 0, 0, 0, 0);
    for x in surfaces() {
        for i in 0..50 {
            let d = random_big(&mut rng, &x);
            let by_origin = nef_by_origin(&d).map_err(|e| e.to_string())?;
            ensure(by_origin == d.is_nef(), || {
                format!("{} {:?}: origin test disagrees", x.name(), d.coeffs())
            })?;
            if by_origin {
                nef += 1;
            } else {
                non_nef += 1;
            }
            let vol = d.vol().unwrap();
            for cone in 0..x.cones().len() {
                for flip in [false, true] {
                    let mut order = x.cones()[cone].clone();
                    if flip {
                        order.reverse();
                    }
                    let flag = FlagSpec::new(&x, cone, order).unwrap();
                    let body = okounkov_body(&d, &flag).map_err(|e| e.to_string())?;
                    ensure(body.normalized_volume().unwrap() == vol, || {
                        format!("{} {:?}: volume", x.name(), d.coeffs())
                    })?;
                    bodies += 1;
                }
            }
            if i < 5 {
                let flag = FlagSpec::standard(&x, i % x.cones().len()).unwrap();
                let tau = pseff_threshold(&d, &flag).unwrap();
                for _ in 0..10 {
                    let t = &tau * rat(rng.gen_range(0..1000), 1000);
                    let ok =
                        translation_identity_check(&d, &flag, &t).map_err(|e| e.to_string())?;
                    ensure(ok, || {
                        format!("{} {:?}: translation at t = {t}", x.name(), d.coeffs())
                    })?;
                    translations += 1;
                }
                pairs += 1;
            }
        }
    }
    ensure(nef > 0 && non_nef > 0, || {
        "random classes miss a nef type".into()
    })?;
    Ok(format!(
        "{bodies} bodies vol = vol; {translations} translations on {pairs} pairs; origin test on {} classes ({nef} nef, {non_nef} not), 0 disagreements",
        nef + non_nef
    ))
}

fn brunn_minkowski() -> Outcome {
    for n in 2..=4 {
        let mut gens = vec![Point::zero(n), Point::unit(n, 0)];
        gens.extend((1..n).map(|i| Point::unit(n, 0).add(&Point::unit(n, i))));
        let body = Polytope::from_vertices(n, &gens).unwrap();
        let prof = slice_profile(&body).unwrap();
        let expected = Polynomial::monomial(n - 1).scale(&factorial(n - 1).recip());
        ensure(prof.profile.pieces() == [expected], || {
            format!("model cone n = {n}")
        })?;
    }
    let mut concave = 0;
    for e in Catalog::bundled().entries() {
        let x = &e.variety;
        let k = TDivisor::anticanonical(x);
        for cone in 0..x.cones().len() {
            for flip in [false, true] {
                let mut order = x.cones()[cone].clone();
                if flip {
                    order.reverse();
                }
                let body = okounkov_body(&k, &FlagSpec::new(x, cone, order).unwrap()).unwrap();
                ensure(
                    bm_concavity_check(&slice_profile(body.body()).unwrap()),
                    || format!("{} cone {cone}", e.name),
                )?;
                concave += 1;
            }
        }
    }
    let p2 = projective_space(2);
    let b = Blowup::new(&p2, 0).unwrap();
    let e = b.exceptional_ray();
    let cone = b
        .variety()
        .cones()
        .iter()
        .position(|c| c.contains(&e))
        .unwrap();
    let other = *b.variety().cones()[cone].iter().find(|&&r| r != e).unwrap();
    let flag = FlagSpec::new(b.variety(), cone, vec![e, other]).unwrap();
    let body = okounkov_body(&b.pullback(&hyperplane(&p2)).unwrap(), &flag).unwrap();
    let one = int(1);
    ensure(cone_structure_check(body.body(), &one).unwrap(), || {
        "equality body is not a cone".into()
    })?;
    ensure(segment_membership_check(body.body(), &one), || {
        "equality body misses the segment".into()
    })?;
    let square = Polytope::cube(2, &int(0), &one);
    let square_cone = cone_structure_check(&square, &one).unwrap();
    let square_segment = segment_membership_check(&square, &one);
    ensure(!square_cone, || "unit square passes the cone check".into())?;
    ensure(!(square_cone && square_segment), || {
        "unit square passes the combined check".into()
    })?;
    let off_axis = square.translate(&Point::from_ints(&[0, 1]));
    ensure(!segment_membership_check(&off_axis, &one), || {
        "off-axis square contains the segment".into()
    })?;
    Ok(format!(
        "A(r) = r^(n-1)/(n-1)! for n = 2..4; {concave} catalog bodies concave; equality body: cone + segment; \
         unit square: cone false, combined false (segment alone {square_segment}); off-axis square: segment false"
    ))
}

fn gap_refinement() -> Outcome {
    let catalog = Catalog::bundled().of_dim(2);
    let fine = gap_report(&catalog, 16).map_err(|e| e.to_string())?;
    let coarse = gap_report(&catalog, 8).map_err(|e| e.to_string())?;
    let f = fine.dimension(2).ok_or("no dimension-2 row")?;
    let c = coarse.dimension(2).ok_or("no dimension-2 row")?;
    let q = f
        .entries
        .iter()
        .find(|e| e.variety == "P1xP1")
        .ok_or("P1xP1 missing")?;
    ensure(q.max_score == int(8), || {
        format!("P1xP1 max {}", q.max_score)
    })?;
    ensure(f.eps_toric.is_positive() && f.eps_toric <= int(1), || {
        format!("eps_toric(2) = {}", f.eps_toric)
    })?;
    ensure(f.eps_toric <= c.eps_toric, || {
        format!("refinement raised eps: {} -> {}", c.eps_toric, f.eps_toric)
    })?;
    for (a, b) in c.entries.iter().zip(&f.entries) {
        ensure(b.max_score >= a.max_score, || {
            format!("{}: grid max dropped", a.variety)
        })?;
    }
    Ok(format!(
        "eps_toric(2) = {} at resolution 16 (achieved by {}, score {}); {} at resolution 8",
        f.eps_toric, f.achieving_variety, f.achieving_score, c.eps_toric
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("projective space equality case", 1, projective_equality),
        ("F1 anticanonical pipeline", 1, f1_pipeline),
        ("surface sweep at resolution 8", 30, surface_sweep),
        ("blow-up volume profiles", 10, fujita_profiles),
        ("expected vanishing order integrals", 60, s_integrals),
        ("Okounkov body suite", 60, okounkov_suite),
        ("slice concavity and cone structure", 60, brunn_minkowski),
        ("empirical gap report", 120, gap_refinement),
    ];
    let mut failures = 0;
    for (i, (name, budget, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let over = elapsed > Duration::from_secs(*budget);
        let (verdict, detail) = match (&outcome, over) {
            (Ok(d), false) => ("PASS", d.clone()),
            (Ok(d), true) => ("FAIL", format!("over the {budget} s budget; {d}")),
            (Err(e), _) => ("FAIL", e.clone()),
        };
        if verdict == "FAIL" {
            failures += 1;
        }
        println!(
            "{verdict} criterion {} ({name}) [{:.2} s / {budget} s]: {detail}",
            i + 1,
            elapsed.as_secs_f64()
        );
    }
    if failures == 0 {
        println!("acceptance: 8/8 criteria passed");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {failures} of 8 criteria failed");
        ExitCode::FAILURE
    }
}
