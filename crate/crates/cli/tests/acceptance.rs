//! One PASS/FAIL line per acceptance criterion; exits nonzero if any fails.

use std::f64::consts::PI;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use swlab_core::cohomology::{cap, cup, cup_i, poincare_dual_of_cocycle, steenrod_sq, wu_classes_with, VertexOrder};
use swlab_core::corpus::{corpus, NAMES};
use swlab_core::homology::{cohomology, same_class, same_cohomology_class};
use swlab_core::pipeline::{compute_report, ht_chain};
use swlab_core::subdivision::{barycentric_subdivide, flag_dual_cells, flag_partner};
use swlab_core::{BitVec, Chain, Cochain, SimplicialComplex};
use swlab_metric::constants::{cgb_constant, omega, omega_even, sphere_constants};
use swlab_metric::frames::{frame_det_w1, gauss_equation_check};
use swlab_metric::probes::Grid;
use swlab_metric::{gauss_bonnet_disk, w3_limit, Model, Point};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn secs(d: Duration) -> f64 {
    d.as_secs_f64()
}

fn whitney_representatives() -> Outcome {
    let t = Instant::now();
    for name in NAMES {
        let (_, k) = corpus(name).map_err(|e| e.to_string())?;
        let r = compute_report(&k).map_err(|e| format!("{name}: {e}"))?;
        for row in &r.degrees {
            ensure(row.all_ones_is_cocycle, || format!("{name}: all-ones {}-cochain is not a cocycle", row.degree))?;
            ensure(row.matches_oracle == Some(true), || format!("{name}: degree {} differs from the Wu class", row.degree))?;
        }
        ensure(r.w0.cocycle && r.w0.unit_class, || format!("{name}: degree 0 unit check"))?;
    }
    let elapsed = secs(t.elapsed());
    ensure(elapsed < 60.0, || format!("took {elapsed:.1} s"))?;
    Ok(format!("6 entries, all degrees, {elapsed:.2} s"))
}

fn class_patterns() -> Outcome {
    let expected: [(&str, &[bool]); 6] = [
        ("rp2-6", &[true, true, true]),
        ("klein", &[true, true, false]),
        ("t2-7", &[true, false, false]),
        ("s2", &[true, false, false]),
        ("s3", &[true, false, false, false]),
        ("rp3", &[true, false, false, false]),
    ];
    for (name, pattern) in expected {
        let (_, k) = corpus(name).map_err(|e| e.to_string())?;
        let r = compute_report(&k).map_err(|e| format!("{name}: {e}"))?;
        ensure(r.w_pattern() == pattern, || format!("{name}: pattern {:?}", r.w_pattern()))?;
        let dual: Vec<bool> = r.degrees.iter().map(|d| d.class_nonzero).collect();
        ensure(dual == pattern, || format!("{name}: dual-cell pattern {dual:?}"))?;
    }
    Ok("rp2-6 w1,w2 != 0; klein w1 != 0, w2 = 0; t2-7, s2, s3, rp3 trivial".into())
}

fn halperin_toledo_chains() -> Outcome {
    let mut checked = 0;
    for name in NAMES {
        let (_, k) = corpus(name).map_err(|e| e.to_string())?;
        let n = k.dim();
        let s = barycentric_subdivide(&k).map_err(|e| e.to_string())?;
        let l = s.derived();
        let order = VertexOrder::numeric(&k);
        let wu = wu_classes_with(&k, &order, &cohomology(&k)).map_err(|e| e.to_string())?;
        for i in 0..=n {
            let ht = ht_chain(&s, i).map_err(|e| e.to_string())?;
            ensure(l.boundary(&ht).map_err(|e| e.to_string())?.is_zero(), || format!("{name}: HT chain {i} is not a cycle"))?;
            let pd = poincare_dual_of_cocycle(&k, &order, &wu.w[n - i].representative).map_err(|e| e.to_string())?;
            let pushed = s.subdivide_chain(&pd).map_err(|e| e.to_string())?;
            let same = same_class(l, i, &ht, &pushed).map_err(|e| e.to_string())?;
            ensure(same, || format!("{name}: HT chain {i} is not dual to w{}", n - i))?;
            checked += 1;
        }
    }
    Ok(format!("{checked} chains"))
}

fn odd_cell_pairing() -> Outcome {
    let mut cells = 0;
    for name in NAMES {
        let (_, k) = corpus(name).map_err(|e| e.to_string())?;
        let s = barycentric_subdivide(&k).map_err(|e| e.to_string())?;
        for i in 1..=k.dim() {
            let mut list = flag_dual_cells(&s, i).map_err(|e| e.to_string())?;
            list.sort();
            for c in &list {
                let p = flag_partner(&s, c).map_err(|e| e.to_string())?;
                ensure(p != *c, || format!("{name}: {c} is fixed"))?;
                ensure(list.binary_search(&p).is_ok(), || format!("{name}: partner of {c} is not a dual cell"))?;
                ensure(flag_partner(&s, &p).map_err(|e| e.to_string())? == *c, || format!("{name}: partner of {c} is not an involution"))?;
            }
            cells += list.len();
        }
    }
    Ok(format!("{cells} flag cells"))
}

fn w2_metric() -> Outcome {
    let mut worst: f64 = 0.0;
    let mut slowest: f64 = 0.0;
    for name in ["round-s2", "hyperbolic-2", "flat-2"] {
        let m = Model::parse(name, None).map_err(|e| e.to_string())?;
        for eps in [0.25, 0.5] {
            let t = Instant::now();
            let r = gauss_bonnet_disk(&m, &[0.0, 0.0], eps, &Grid::disk()).map_err(|e| format!("{name} eps={eps}: {e}"))?;
            let took = secs(t.elapsed());
            let gap = (r.total - 2.0 * PI).abs();
            ensure(gap <= 1e-6 && r.cochain == 1, || format!("{name} eps={eps}: total {} (gap {gap:.2e})", r.total))?;
            ensure(took < 5.0, || format!("{name} eps={eps}: {took:.1} s"))?;
            worst = worst.max(gap);
            slowest = slowest.max(took);
        }
    }
    Ok(format!("max |total - 2pi| {worst:.1e}, slowest probe {slowest:.2} s"))
}

fn w3_metric() -> Outcome {
    let mut parts = Vec::new();
    for name in ["round-s3", "flat-3", "warped-3"] {
        let m = Model::parse(name, None).map_err(|e| e.to_string())?;
        let t = Instant::now();
        let r = w3_limit(&m, &[0.0; 3], &[0.2, 0.1, 0.05], &Grid::sphere(3)).map_err(|e| format!("{name}: {e}"))?;
        let took = secs(t.elapsed());
        let gap = (r.limit - 1.0).abs();
        ensure(gap <= 1e-4 && r.cochain == 1, || format!("{name}: limit {}", r.limit))?;
        ensure(took < 30.0, || format!("{name}: {took:.1} s"))?;
        parts.push(format!("{name} {gap:.1e} in {took:.1} s"));
    }
    Ok(parts.join(", "))
}

fn w1_metric() -> Outcome {
    let t = Instant::now();
    let mut rng = StdRng::seed_from_u64(7);
    let mut worst: f64 = 0.0;
    let mut charts = 0;
    for name in swlab_metric::models::MODEL_NAMES {
        let m = Model::parse(name, None).map_err(|e| e.to_string())?;
        let mut dets = Vec::new();
        if m.dim() == 2 {
            let (probe, polar) = (m.probe_chart2().map_err(|e| e.to_string())?, m.polar_chart2().map_err(|e| e.to_string())?);
            for _ in 0..100 {
                let p = Point::<2>::new(rng.gen_range(-0.6..0.6), rng.gen_range(-0.6..0.6));
                let q = Point::<2>::new(rng.gen_range(0.1..1.5), rng.gen_range(0.0..2.0 * PI));
                dets.push(frame_det_w1(&*probe, &p).map_err(|e| format!("{name}: {e}"))?);
                dets.push(frame_det_w1(&polar, &q).map_err(|e| format!("{name}: {e}"))?);
            }
        } else {
            let (probe, polar) = (m.probe_chart3().map_err(|e| e.to_string())?, m.polar_chart3().map_err(|e| e.to_string())?);
            for _ in 0..100 {
                let p = Point::<3>::from_fn(|_, _| rng.gen_range(-0.5..0.5));
                let q = Point::<3>::new(rng.gen_range(0.1..1.5), rng.gen_range(0.1..3.0), rng.gen_range(0.0..2.0 * PI));
                dets.push(frame_det_w1(&*probe, &p).map_err(|e| format!("{name}: {e}"))?);
                dets.push(frame_det_w1(&polar, &q).map_err(|e| format!("{name}: {e}"))?);
            }
        }
        for d in dets {
            ensure(d.value == 1, || format!("{name}: value {}", d.value))?;
            worst = worst.max((d.det - 1.0).abs());
        }
        charts += 2;
    }
    let took = secs(t.elapsed());
    ensure(worst <= 1e-10, || format!("|det - 1| = {worst:.1e}"))?;
    ensure(took < 1.0, || format!("{took:.2} s"))?;
    Ok(format!("{charts} charts x 100 points, max |det - 1| {worst:.1e}, {took:.3} s"))
}

fn constants() -> Outcome {
    let mut worst: f64 = 0.0;
    for k in 1..=8 {
        let c = sphere_constants(k);
        ensure(c.relative_gap <= 1e-12, || format!("k={k}: relative gap {:.1e}", c.relative_gap))?;
        worst = worst.max(c.relative_gap);
    }
    ensure(cgb_constant(1) == 2.0 * PI, || format!("cgb_1 = {}", cgb_constant(1)))?;
    ensure(omega_even(1) == 4.0 * PI, || format!("omega_2 = {}", omega_even(1)))?;
    ensure((omega(2) / (4.0 * PI) - 1.0).abs() <= 1e-12, || format!("Gamma form omega_2 = {}", omega(2)))?;
    Ok(format!("k = 1..8 max relative gap {worst:.1e}; cgb_1 = 2pi, omega_2 = 4pi"))
}

fn gauss_equation() -> Outcome {
    let mut rng = StdRng::seed_from_u64(9);
    let s3 = swlab_metric::chart::Conformal::<3>::stereographic();
    let flat = swlab_metric::chart::Euclidean::<3>;
    let (mut round, mut plane): (f64, f64) = (0.0, 0.0);
    for _ in 0..20 {
        let p = Point::<2>::new(rng.gen_range(-1.5..1.5), rng.gen_range(-1.5..1.5));
        round = round.max(gauss_equation_check(&s3, &p).map_err(|e| e.to_string())?);
        plane = plane.max(gauss_equation_check(&flat, &p).map_err(|e| e.to_string())?);
    }
    ensure(round <= 1e-3, || format!("round-s3 residual {round:.1e}"))?;
    ensure(plane <= 1e-8, || format!("flat residual {plane:.1e}"))?;
    Ok(format!("round-s3 equator {round:.1e}, flat plane {plane:.1e} over 20 points"))
}

fn random_bits(rng: &mut StdRng, len: usize) -> BitVec {
    BitVec::from_bools(&(0..len).map(|_| rng.gen_bool(0.5)).collect::<Vec<_>>())
}

fn random_cochain(rng: &mut StdRng, x: &SimplicialComplex, p: usize) -> Cochain {
    Cochain::new(x, p, random_bits(rng, x.count(p))).expect("length matches")
}

fn shuffled(rng: &mut StdRng, x: &SimplicialComplex) -> VertexOrder {
    let mut seq: Vec<u32> = x.vertex_ids().collect();
    for i in (1..seq.len()).rev() {
        seq.swap(i, rng.gen_range(0..=i));
    }
    VertexOrder::from_sequence(x, seq).expect("permutation of the vertices")
}

fn oracle_self_tests() -> Outcome {
    const TRIALS: usize = 100;
    let mut rng = StdRng::seed_from_u64(10);
    let mut checks = 0usize;
    for name in NAMES {
        let (_, x) = corpus(name).map_err(|e| e.to_string())?;
        let n = x.dim();
        let o = shuffled(&mut rng, &x);
        let h = cohomology(&x);
        let e = |e: swlab_core::Error| format!("{name}: {e}");
        for _ in 0..TRIALS {
            // Leibniz rules for cup and cap
            let p = rng.gen_range(0..n);
            let q = rng.gen_range(0..n - p);
            let a = random_cochain(&mut rng, &x, p);
            let b = random_cochain(&mut rng, &x, q);
            let lhs = x.coboundary(&cup(&x, &o, &a, &b).map_err(e)?).map_err(e)?;
            let rhs = cup(&x, &o, &x.coboundary(&a).map_err(e)?, &b).map_err(e)?.add(&cup(&x, &o, &a, &x.coboundary(&b).map_err(e)?).map_err(e)?);
            ensure(lhs == rhs, || format!("{name}: cup Leibniz p={p} q={q}"))?;

            let d = rng.gen_range(p + 1..=n);
            let c = Chain::new(&x, d, random_bits(&mut rng, x.count(d))).map_err(e)?;
            let lhs = x.boundary(&cap(&x, &o, &a, &c).map_err(e)?).map_err(e)?;
            let rhs = cap(&x, &o, &x.coboundary(&a).map_err(e)?, &c).map_err(e)?.add(&cap(&x, &o, &a, &x.boundary(&c).map_err(e)?).map_err(e)?);
            ensure(lhs == rhs, || format!("{name}: cap formula p={p} d={d}"))?;

            // Sq axioms on a random cocycle: Sq^0 = id, Sq^p a = a ∪ a, Sq^k a = 0 for k > p
            let deg = rng.gen_range(0..=n);
            let mut z = Cochain::zero(&x, deg);
            for r in &h.degree(deg).map_err(e)?.representatives {
                if rng.gen_bool(0.5) {
                    z = z.add(&Cochain::new(&x, deg, r.clone()).map_err(e)?);
                }
            }
            if deg > 0 {
                z = z.add(&x.coboundary(&random_cochain(&mut rng, &x, deg - 1)).map_err(e)?);
            }
            let sq0 = steenrod_sq(&x, &o, 0, &z).map_err(e)?;
            ensure(same_cohomology_class(&x, &h, &sq0, &z).map_err(e)?, || format!("{name}: Sq0 in degree {deg}"))?;
            if 2 * deg <= n {
                let top = steenrod_sq(&x, &o, deg, &z).map_err(e)?;
                let square = cup(&x, &o, &z, &z).map_err(e)?;
                ensure(same_cohomology_class(&x, &h, &top, &square).map_err(e)?, || format!("{name}: Sq{deg} is not the square"))?;
            }
            for k in deg + 1..=n - deg {
                ensure(steenrod_sq(&x, &o, k, &z).map_err(e)?.is_zero(), || format!("{name}: Sq{k} of a degree {deg} class"))?;
            }
            // cup-1 coboundary identity on 1-cochains (surfaces and 3-manifolds)
            let (u, v) = (random_cochain(&mut rng, &x, 1), random_cochain(&mut rng, &x, 1));
            let lhs = x.coboundary(&cup_i(&x, &o, &u, &v, 1).map_err(e)?).map_err(e)?;
            let (du, dv) = (x.coboundary(&u).map_err(e)?, x.coboundary(&v).map_err(e)?);
            let rhs = cup(&x, &o, &u, &v)
                .map_err(e)?
                .add(&cup(&x, &o, &v, &u).map_err(e)?)
                .add(&cup_i(&x, &o, &du, &v, 1).map_err(e)?)
                .add(&cup_i(&x, &o, &u, &dv, 1).map_err(e)?);
            ensure(lhs == rhs, || format!("{name}: cup-1 identity"))?;
            checks += 1;
        }
        // Wu vanishing and order independence
        let numeric = VertexOrder::numeric(&x);
        let base = wu_classes_with(&x, &numeric, &h).map_err(e)?;
        for k in 0..=n {
            ensure(2 * k <= n || base.v[k].is_zero(), || format!("{name}: v{k} != 0"))?;
        }
        for other_order in [numeric.reversed(), shuffled(&mut rng, &x)] {
            let other = wu_classes_with(&x, &other_order, &h).map_err(e)?;
            for i in 0..=n {
                ensure(other.w[i].coordinates == base.w[i].coordinates, || format!("{name}: w{i} depends on the vertex order"))?;
                ensure(other.v[i].coordinates == base.v[i].coordinates, || format!("{name}: v{i} depends on the vertex order"))?;
            }
        }
    }
    Ok(format!("{checks} randomized trials, {TRIALS} per entry"))
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("all-ones dual cochains represent the Wu classes", whitney_representatives),
        ("known class patterns", class_patterns),
        ("Halperin-Toledo chains", halperin_toledo_chains),
        ("odd-cell pairing involution", odd_cell_pairing),
        ("w2 metric identity (disk Gauss-Bonnet)", w2_metric),
        ("w3 metric identity (sphere-area limit)", w3_metric),
        ("w1 metric identity (frame determinant)", w1_metric),
        ("sphere volume constants", constants),
        ("Gauss equation", gauss_equation),
        ("oracle self-tests", oracle_self_tests),
    ];
    let mut failed = 0;
    for (i, (title, f)) in criteria.iter().enumerate() {
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
            let msg = p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()));
            Err(format!("panicked: {}", msg.unwrap_or_default()))
        });
        match outcome {
            Ok(detail) => println!("criterion {:>2}: PASS  {title}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {:>2}: FAIL  {title}: {detail}", i + 1);
            }
        }
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
