use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use swlab_core::cohomology::{
    cap, cup, cup_i, fundamental_cycle, poincare_dual_of_cocycle, steenrod_sq, wu_classes, wu_classes_with,
    VertexOrder,
};
use swlab_core::corpus::{corpus, NAMES};
use swlab_core::homology::{cohomology, homology, same_class, same_cohomology_class};
use swlab_core::subdivision::barycentric_subdivide;
use swlab_core::{BitVec, Chain, Cochain, SimplicialComplex};

const TRIALS: usize = 100;

fn random_bits(rng: &mut StdRng, len: usize) -> BitVec {
    BitVec::from_bools(&(0..len).map(|_| rng.gen_bool(0.5)).collect::<Vec<_>>())
}

fn random_cochain(rng: &mut StdRng, x: &SimplicialComplex, p: usize) -> Cochain {
    Cochain::new(x, p, random_bits(rng, x.count(p))).unwrap()
}

fn random_order(rng: &mut StdRng, x: &SimplicialComplex) -> VertexOrder {
    let mut seq: Vec<u32> = x.vertex_ids().collect();
    for i in (1..seq.len()).rev() {
        seq.swap(i, rng.gen_range(0..=i));
    }
    VertexOrder::from_sequence(x, seq).unwrap()
}

#[test]
fn cup_leibniz_on_random_cochains() {
    let mut rng = StdRng::seed_from_u64(1);
    for name in NAMES {
        let (_, x) = corpus(name).unwrap();
        let n = x.dim();
        let o = VertexOrder::numeric(&x);
        for _ in 0..TRIALS {
            let p = rng.gen_range(0..n);
            let q = rng.gen_range(0..n - p);
            let a = random_cochain(&mut rng, &x, p);
            let b = random_cochain(&mut rng, &x, q);
            let lhs = x.coboundary(&cup(&x, &o, &a, &b).unwrap()).unwrap();
            let r1 = cup(&x, &o, &x.coboundary(&a).unwrap(), &b).unwrap();
            let r2 = cup(&x, &o, &a, &x.coboundary(&b).unwrap()).unwrap();
            assert_eq!(lhs, r1.add(&r2), "{name} p={p} q={q}");
        }
    }
}

#[test]
fn cap_boundary_formula_on_random_cochains() {
    let mut rng = StdRng::seed_from_u64(2);
    for name in NAMES {
        let (_, x) = corpus(name).unwrap();
        let n = x.dim();
        let o = random_order(&mut rng, &x);
        for _ in 0..TRIALS {
            let d = rng.gen_range(1..=n);
            let p = rng.gen_range(0..d);
            let a = random_cochain(&mut rng, &x, p);
            let c = Chain::new(&x, d, random_bits(&mut rng, x.count(d))).unwrap();
            let lhs = x.boundary(&cap(&x, &o, &a, &c).unwrap()).unwrap();
            let r1 = cap(&x, &o, &x.coboundary(&a).unwrap(), &c).unwrap();
            let r2 = cap(&x, &o, &a, &x.boundary(&c).unwrap()).unwrap();
            assert_eq!(lhs, r1.add(&r2), "{name} d={d} p={p}");
        }
    }
}

#[test]
fn cup_i_coboundary_identity() {
    let mut rng = StdRng::seed_from_u64(3);
    for name in NAMES {
        let (_, x) = corpus(name).unwrap();
        let n = x.dim();
        let o = random_order(&mut rng, &x);
        let mut checked = 0;
        while checked < TRIALS {
            let p = rng.gen_range(1..=n);
            let q = rng.gen_range(1..=n);
            let i = rng.gen_range(1..=p.min(q));
            if p + q - i + 1 > n {
                continue;
            }
            let a = random_cochain(&mut rng, &x, p);
            let b = random_cochain(&mut rng, &x, q);
            let da = x.coboundary(&a).unwrap();
            let db = x.coboundary(&b).unwrap();
            let lhs = x.coboundary(&cup_i(&x, &o, &a, &b, i).unwrap()).unwrap();
            let rhs = cup_i(&x, &o, &a, &b, i - 1)
                .unwrap()
                .add(&cup_i(&x, &o, &b, &a, i - 1).unwrap())
                .add(&cup_i(&x, &o, &da, &b, i).unwrap())
                .add(&cup_i(&x, &o, &a, &db, i).unwrap());
            assert_eq!(lhs, rhs, "{name} p={p} q={q} i={i}");
            checked += 1;
        }
    }
}

#[test]
fn cup_zero_is_cup() {
    let mut rng = StdRng::seed_from_u64(4);
    let (_, x) = corpus("s2").unwrap();
    let o = VertexOrder::numeric(&x);
    for _ in 0..TRIALS {
        let a = random_cochain(&mut rng, &x, 1);
        let b = random_cochain(&mut rng, &x, 1);
        assert_eq!(cup_i(&x, &o, &a, &b, 0).unwrap(), cup(&x, &o, &a, &b).unwrap());
    }
}

#[test]
fn steenrod_axioms_on_classes() {
    let mut rng = StdRng::seed_from_u64(5);
    for name in NAMES {
        let (_, x) = corpus(name).unwrap();
        let n = x.dim();
        let h = cohomology(&x);
        let o = random_order(&mut rng, &x);
        for trial in 0..TRIALS {
            let p = trial % (n + 1);
            let reps = &h.degree(p).unwrap().representatives;
            let mut a = Cochain::zero(&x, p);
            for r in reps {
                if rng.gen_bool(0.5) {
                    a = a.add(&Cochain::new(&x, p, r.clone()).unwrap());
                }
            }
            if p > 0 {
                let beta = random_cochain(&mut rng, &x, p - 1);
                a = a.add(&x.coboundary(&beta).unwrap());
            }
            let sq0 = steenrod_sq(&x, &o, 0, &a).unwrap();
            assert!(same_cohomology_class(&x, &h, &sq0, &a).unwrap(), "{name}: Sq0");
            if 2 * p <= n {
                let top = steenrod_sq(&x, &o, p, &a).unwrap();
                let square = cup(&x, &o, &a, &a).unwrap();
                assert!(same_cohomology_class(&x, &h, &top, &square).unwrap(), "{name}: top square");
            }
            for k in 0..=n - p {
                let s = steenrod_sq(&x, &o, k, &a).unwrap();
                x.check_cocycle(&s, "square").unwrap();
                if k > p {
                    assert!(s.is_zero());
                }
            }
        }
    }
}

#[test]
fn wu_vanishing_and_order_independence() {
    let mut rng = StdRng::seed_from_u64(6);
    for name in NAMES {
        let (entry, x) = corpus(name).unwrap();
        let n = x.dim();
        let h = cohomology(&x);
        let numeric = VertexOrder::numeric(&x);
        let base = wu_classes_with(&x, &numeric, &h).unwrap();
        for k in 0..=n {
            if 2 * k > n {
                assert!(base.v[k].is_zero(), "{name}: v{k}");
            }
        }
        assert!(!base.v[0].is_zero());
        assert_eq!(base.w_pattern(), entry.expected_w, "{name}");
        for o in [numeric.reversed(), random_order(&mut rng, &x)] {
            let other = wu_classes_with(&x, &o, &h).unwrap();
            for i in 0..=n {
                assert_eq!(other.w[i].coordinates, base.w[i].coordinates, "{name} w{i}");
                assert_eq!(other.v[i].coordinates, base.v[i].coordinates, "{name} v{i}");
            }
        }
    }
}

#[test]
fn classes_are_natural_under_subdivision() {
    for name in NAMES {
        let (_, x) = corpus(name).unwrap();
        let n = x.dim();
        let s = barycentric_subdivide(&x).unwrap();
        let l = s.derived();
        let ox = VertexOrder::numeric(&x);
        let ol = VertexOrder::numeric(l);
        let wx = wu_classes(&x, &ox).unwrap();
        let wl = wu_classes(l, &ol).unwrap();
        for i in 0..=n {
            let pushed = s.subdivide_chain(&poincare_dual_of_cocycle(&x, &ox, &wx.w[i].representative).unwrap()).unwrap();
            let direct = poincare_dual_of_cocycle(l, &ol, &wl.w[i].representative).unwrap();
            assert!(same_class(l, n - i, &pushed, &direct).unwrap(), "{name} w{i}");
        }
    }
}

#[test]
fn projective_plane_products() {
    let (_, x) = corpus("rp2-6").unwrap();
    let o = VertexOrder::numeric(&x);
    let h = cohomology(&x);
    let a = Cochain::new(&x, 1, h.degree(1).unwrap().representatives[0].clone()).unwrap();
    let a2 = cup(&x, &o, &a, &a).unwrap();
    assert!(!h.degree(2).unwrap().is_boundary(a2.bits()));
    let sq1 = steenrod_sq(&x, &o, 1, &a).unwrap();
    assert!(same_cohomology_class(&x, &h, &sq1, &a2).unwrap());
    assert!(steenrod_sq(&x, &o, 2, &a).unwrap().is_zero());

    let gamma = fundamental_cycle(&x).unwrap();
    assert_eq!(gamma.bits().count_ones(), 10);
    let pd = cap(&x, &o, &a, &gamma).unwrap();
    assert!(x.boundary(&pd).unwrap().is_zero());
    let hh = homology(&x);
    assert!(!hh.degree(1).unwrap().is_boundary(pd.bits()));

    let wu = wu_classes(&x, &o).unwrap();
    assert!(same_cohomology_class(&x, &h, &wu.v[1].representative, &a).unwrap());
    let pd_w1 = poincare_dual_of_cocycle(&x, &o, &wu.w[1].representative).unwrap();
    assert!(!hh.degree(1).unwrap().is_boundary(pd_w1.bits()));
}

#[test]
fn torus_intersection_form() {
    let (_, x) = corpus("t2-7").unwrap();
    let o = VertexOrder::numeric(&x);
    let h = cohomology(&x);
    let reps: Vec<Cochain> =
        h.degree(1).unwrap().representatives.iter().map(|r| Cochain::new(&x, 1, r.clone()).unwrap()).collect();
    let gamma = fundamental_cycle(&x).unwrap();
    let pair = |a: &Cochain, b: &Cochain| cup(&x, &o, a, b).unwrap().evaluate(&gamma);
    assert!(pair(&reps[0], &reps[1]));
    assert!(!pair(&reps[0], &reps[0]));
    assert!(!pair(&reps[1], &reps[1]));
}

#[test]
fn dual_depends_only_on_class() {
    let mut rng = StdRng::seed_from_u64(7);
    for name in NAMES {
        let (_, x) = corpus(name).unwrap();
        let o = VertexOrder::numeric(&x);
        let h = cohomology(&x);
        for p in 1..=x.dim() {
            for r in &h.degree(p).unwrap().representatives {
                let a = Cochain::new(&x, p, r.clone()).unwrap();
                let a2 = a.add(&x.coboundary(&random_cochain(&mut rng, &x, p - 1)).unwrap());
                let d = x.dim() - p;
                let z1 = poincare_dual_of_cocycle(&x, &o, &a).unwrap();
                let z2 = poincare_dual_of_cocycle(&x, &o, &a2).unwrap();
                assert!(same_class(&x, d, &z1, &z2).unwrap(), "{name} p={p}");
            }
        }
    }
}

#[test]
fn disjoint_union_has_no_fundamental_cycle() {
    let x = SimplicialComplex::from_facets(&[
        [0, 1, 2], [0, 1, 3], [0, 2, 3], [1, 2, 3],
        [4, 5, 6], [4, 5, 7], [4, 6, 7], [5, 6, 7],
    ])
    .unwrap();
    assert!(matches!(fundamental_cycle(&x), Err(swlab_core::Error::NotPseudomanifold(_))));
}
