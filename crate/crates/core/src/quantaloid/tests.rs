use super::*;

fn ql(n: usize) -> Quantaloid {
    quantaloid_from_divisible_quantale(&build_lukasiewicz_chain(n).unwrap()).unwrap()
}

fn boolean4() -> Quantaloid {
    quantaloid_from_divisible_quantale(&build_boolean_algebra(2).unwrap()).unwrap()
}

fn fixtures() -> Vec<(&'static str, Quantaloid)> {
    vec![("2", build_boolean()), ("QL3", ql(3)), ("B4", boolean4())]
}

fn le(q: &Quantaloid, x: usize, y: usize, a: usize, b: usize) -> bool {
    q.hom(x, y).leq(a, b)
}

fn len(q: &Quantaloid, x: usize, y: usize) -> usize {
    q.hom(x, y).len()
}

fn obj_quads(n: usize) -> impl Iterator<Item = (usize, usize, usize, usize)> {
    (0..n).flat_map(move |a| {
        (0..n).flat_map(move |b| (0..n).flat_map(move |c| (0..n).map(move |d| (a, b, c, d))))
    })
}

#[test]
fn boolean_tables() {
    let q = build_boolean();
    assert_eq!(q.n(), 1);
    assert_eq!(len(&q, 0, 0), 2);
    let one = q.hom(0, 0).index_of("1").unwrap();
    let zero = q.hom(0, 0).index_of("0").unwrap();
    assert_eq!(q.comp_idx(0, 0, 0, one, one), one);
    assert_eq!(q.comp_idx(0, 0, 0, one, zero), zero);
    assert_eq!(q.unit_idx(0), q.hom(0, 0).top());
    assert!(q.validate().is_empty());
    assert_eq!(
        q.residual(Side::Left, Arrow::new(0, 0, zero), Arrow::new(0, 0, one))
            .unwrap()
            .idx,
        zero
    );
}

#[test]
fn divisible_quantaloid_examples() {
    let q = ql(3);
    let (half, one) = (q.object("1/2").unwrap(), q.object("1").unwrap());
    let alpha = Arrow::new(one, half, q.hom(one, half).index_of("1/2").unwrap());
    let beta = Arrow::new(half, one, q.hom(half, one).index_of("1/2").unwrap());
    let c = q.compose(beta, alpha).unwrap();
    assert_eq!(q.arrow_label(c), "1/2");
    let h = Arrow::new(one, one, q.hom(one, one).index_of("0").unwrap());
    let r = q.residual(Side::Left, h, alpha).unwrap();
    assert_eq!((r.dom, r.cod), (half, one));
    assert_eq!(q.arrow_label(r), "0");
    assert!(ql(4).validate().is_empty());
}

#[test]
fn divisible_boolean_two_adds_a_trivial_object() {
    let q = quantaloid_from_divisible_quantale(&build_boolean_algebra(1).unwrap()).unwrap();
    assert_eq!(q.n(), 2);
    let (zero, one) = (q.object("0").unwrap(), q.object("1").unwrap());
    assert_eq!(len(&q, one, one), 2);
    for (x, y) in [(zero, zero), (zero, one), (one, zero)] {
        assert_eq!(len(&q, x, y), 1);
    }
}

#[test]
fn patched_unit_is_reported() {
    let q = build_boolean();
    let one = q.unit(0);
    let broken = q
        .with_patched_compose(one, one, q.hom(0, 0).bottom())
        .unwrap();
    assert!(!broken.validate().is_empty());
}

#[test]
fn mismatched_composition_is_an_error() {
    let q = ql(3);
    let f = Arrow::new(0, 1, 0);
    let g = Arrow::new(2, 0, 0);
    assert!(matches!(q.compose(g, f), Err(Error::ObjectMismatch(_))));
}

#[test]
fn residuation_three_ways() {
    for (name, q) in fixtures() {
        for (x, y, z, _) in obj_quads(q.n()).filter(|t| t.3 == 0) {
            for f in 0..len(&q, x, y) {
                for g in 0..len(&q, y, z) {
                    for h in 0..len(&q, x, z) {
                        let a = le(&q, x, z, q.comp_idx(x, y, z, g, f), h);
                        let b = le(&q, y, z, g, q.lres_idx(x, y, z, h, f));
                        let c = le(&q, x, y, f, q.rres_idx(x, y, z, g, h));
                        assert!(a == b && b == c, "{name}: ({x},{y},{z}) f={f} g={g} h={h}");
                    }
                }
            }
        }
        assert!(q.residuation_violations().is_empty(), "{name}");
    }
}

#[test]
fn implications_preserve_meets_and_reverse_joins() {
    for (name, q) in fixtures() {
        for (x, y, z, _) in obj_quads(q.n()).filter(|t| t.3 == 0) {
            let (hy, hz) = (q.hom(x, y), q.hom(x, z));
            for f in 0..hy.len() {
                for h1 in 0..hz.len() {
                    for h2 in 0..hz.len() {
                        let lhs = q.lres_idx(x, y, z, hz.meet(h1, h2), f);
                        let rhs = q
                            .hom(y, z)
                            .meet(q.lres_idx(x, y, z, h1, f), q.lres_idx(x, y, z, h2, f));
                        assert_eq!(lhs, rhs, "{name}: item 2 left");
                    }
                }
                for f2 in 0..hy.len() {
                    for h in 0..hz.len() {
                        let lhs = q.lres_idx(x, y, z, h, hy.join(f, f2));
                        let rhs = q
                            .hom(y, z)
                            .meet(q.lres_idx(x, y, z, h, f), q.lres_idx(x, y, z, h, f2));
                        assert_eq!(lhs, rhs, "{name}: item 3 left");
                    }
                }
            }
            for g in 0..len(&q, y, z) {
                for h1 in 0..hz.len() {
                    for h2 in 0..hz.len() {
                        let lhs = q.rres_idx(x, y, z, g, hz.meet(h1, h2));
                        let rhs = hy.meet(q.rres_idx(x, y, z, g, h1), q.rres_idx(x, y, z, g, h2));
                        assert_eq!(lhs, rhs, "{name}: item 2 right");
                    }
                }
                for g2 in 0..len(&q, y, z) {
                    for h in 0..hz.len() {
                        let lhs = q.rres_idx(x, y, z, q.hom(y, z).join(g, g2), h);
                        let rhs = hy.meet(q.rres_idx(x, y, z, g, h), q.rres_idx(x, y, z, g2, h));
                        assert_eq!(lhs, rhs, "{name}: item 3 right");
                    }
                }
            }
        }
    }
}

#[test]
fn composites_of_implications() {
    for (name, q) in fixtures() {
        for (x, y, w, z) in obj_quads(q.n()) {
            // (h ↙ g) . (g ↙ f) <= h ↙ f with f: x->y, g: x->w, h: x->z
            for f in 0..len(&q, x, y) {
                for g in 0..len(&q, x, w) {
                    for h in 0..len(&q, x, z) {
                        let c = q.comp_idx(
                            y,
                            w,
                            z,
                            q.lres_idx(x, w, z, h, g),
                            q.lres_idx(x, y, w, g, f),
                        );
                        assert!(
                            le(&q, y, z, c, q.lres_idx(x, y, z, h, f)),
                            "{name}: item 4 left"
                        );
                    }
                }
            }
            // (f ↘ g) . (g ↘ h) <= f ↘ h with h: x->z, g: y->z, f: w->z
            for h in 0..len(&q, x, z) {
                for g in 0..len(&q, y, z) {
                    for f in 0..len(&q, w, z) {
                        let c = q.comp_idx(
                            x,
                            y,
                            w,
                            q.rres_idx(y, w, z, f, g),
                            q.rres_idx(x, y, z, g, h),
                        );
                        assert!(
                            le(&q, x, w, c, q.rres_idx(x, w, z, f, h)),
                            "{name}: item 4 right"
                        );
                    }
                }
            }
            // (h ↙ f) ↙ g = h ↙ (g . f) with f: x->y, g: y->w, h: x->z
            for f in 0..len(&q, x, y) {
                for g in 0..len(&q, y, w) {
                    for h in 0..len(&q, x, z) {
                        let lhs = q.lres_idx(y, w, z, q.lres_idx(x, y, z, h, f), g);
                        let rhs = q.lres_idx(x, w, z, h, q.comp_idx(x, y, w, g, f));
                        assert_eq!(lhs, rhs, "{name}: item 5 left");
                    }
                }
            }
            // f ↘ (g ↘ h) = (g . f) ↘ h with h: x->z, g: w->z, f: y->w
            for h in 0..len(&q, x, z) {
                for g in 0..len(&q, w, z) {
                    for f in 0..len(&q, y, w) {
                        let lhs = q.rres_idx(x, y, w, f, q.rres_idx(x, w, z, g, h));
                        let rhs = q.rres_idx(x, y, z, q.comp_idx(y, w, z, g, f), h);
                        assert_eq!(lhs, rhs, "{name}: item 5 right");
                    }
                }
            }
            // (g ↘ h) ↙ f = g ↘ (h ↙ f) with h: x->z, g: y->z, f: x->w
            for h in 0..len(&q, x, z) {
                for g in 0..len(&q, y, z) {
                    for f in 0..len(&q, x, w) {
                        let lhs = q.lres_idx(x, w, y, q.rres_idx(x, y, z, g, h), f);
                        let rhs = q.rres_idx(w, y, z, g, q.lres_idx(x, w, z, h, f));
                        assert_eq!(lhs, rhs, "{name}: item 6");
                    }
                }
            }
            // h . (g ↙ f) <= (h . g) ↙ f with f: x->y, g: x->w, h: w->z
            for f in 0..len(&q, x, y) {
                for g in 0..len(&q, x, w) {
                    for h in 0..len(&q, w, z) {
                        let lhs = q.comp_idx(y, w, z, h, q.lres_idx(x, y, w, g, f));
                        let rhs = q.lres_idx(x, y, z, q.comp_idx(x, w, z, h, g), f);
                        assert!(le(&q, y, z, lhs, rhs), "{name}: item 8 left");
                    }
                }
            }
            // (g ↘ h) . f <= g ↘ (h . f) with h: x->z, g: y->z, f: w->x
            for h in 0..len(&q, x, z) {
                for g in 0..len(&q, y, z) {
                    for f in 0..len(&q, w, x) {
                        let lhs = q.comp_idx(w, x, y, q.rres_idx(x, y, z, g, h), f);
                        let rhs = q.rres_idx(w, y, z, g, q.comp_idx(w, x, z, h, f));
                        assert!(le(&q, w, y, lhs, rhs), "{name}: item 8 right");
                    }
                }
            }
        }
    }
}

#[test]
fn counit_inequalities() {
    for (name, q) in fixtures() {
        for (x, y, z, _) in obj_quads(q.n()).filter(|t| t.3 == 0) {
            for f in 0..len(&q, x, y) {
                for h in 0..len(&q, x, z) {
                    let c = q.comp_idx(x, y, z, q.lres_idx(x, y, z, h, f), f);
                    assert!(le(&q, x, z, c, h), "{name}: item 7 left");
                }
            }
            for g in 0..len(&q, y, z) {
                for h in 0..len(&q, x, z) {
                    let c = q.comp_idx(x, y, z, g, q.rres_idx(x, y, z, g, h));
                    assert!(le(&q, x, z, c, h), "{name}: item 7 right");
                }
            }
        }
    }
}

#[test]
fn tops_bottoms_and_units() {
    for (name, q) in fixtures() {
        for (x, y, z, _) in obj_quads(q.n()).filter(|t| t.3 == 0) {
            let (ux, uy) = (q.unit_idx(x), q.unit_idx(y));
            for f in 0..len(&q, x, y) {
                assert_eq!(q.lres_idx(x, x, y, f, ux), f, "{name}: f ↙ 1");
                assert_eq!(q.rres_idx(x, y, y, uy, f), f, "{name}: 1 ↘ f");
                let bot_yz = q.hom(y, z).bottom();
                assert_eq!(
                    q.comp_idx(x, y, z, bot_yz, f),
                    q.hom(x, z).bottom(),
                    "{name}: ⊥ . f"
                );
                assert_eq!(
                    q.lres_idx(x, y, z, q.hom(x, z).top(), f),
                    q.hom(y, z).top(),
                    "{name}: ⊤ ↙ f"
                );
            }
            for g in 0..len(&q, y, z) {
                let bot_xy = q.hom(x, y).bottom();
                assert_eq!(
                    q.comp_idx(x, y, z, g, bot_xy),
                    q.hom(x, z).bottom(),
                    "{name}: g . ⊥"
                );
                assert_eq!(
                    q.rres_idx(x, y, z, g, q.hom(x, z).top()),
                    q.hom(x, y).top(),
                    "{name}: g ↘ ⊤"
                );
            }
            for h in 0..len(&q, x, z) {
                assert_eq!(
                    q.lres_idx(x, y, z, h, q.hom(x, y).bottom()),
                    q.hom(y, z).top()
                );
                assert_eq!(
                    q.rres_idx(x, y, z, q.hom(y, z).bottom(), h),
                    q.hom(x, y).top()
                );
            }
        }
    }
}

#[test]
fn adjoint_arrows_are_unique() {
    for (name, q) in fixtures() {
        for x in 0..q.n() {
            for y in 0..q.n() {
                for f in q.arrows(x, y) {
                    let rights: Vec<Arrow> = q
                        .arrows(y, x)
                        .filter(|&g| q.arrow_adjoint_check(f, g).unwrap())
                        .collect();
                    assert!(rights.len() <= 1, "{name}: two right adjoints of {f:?}");
                }
            }
        }
    }
    let q = build_boolean();
    let (one, zero) = (q.unit(0), q.bottom(0, 0));
    assert!(q.arrow_adjoint_check(one, one).unwrap());
    assert!(!q.arrow_adjoint_check(one, zero).unwrap());
    let q3 = ql(3);
    let h = q3.object("1/2").unwrap();
    assert!(q3.arrow_adjoint_check(q3.unit(h), q3.unit(h)).unwrap());
}

#[test]
fn divisible_builders_validate() {
    for n in 2..=6 {
        assert!(ql(n).validate().is_empty(), "Łukasiewicz {n}");
    }
    for k in 1..=3 {
        let q = quantaloid_from_divisible_quantale(&build_boolean_algebra(k).unwrap()).unwrap();
        assert!(q.validate().is_empty(), "Boolean {k}");
    }
    let nm = build_nilpotent_minimum(5).unwrap();
    match quantaloid_from_divisible_quantale(&nm) {
        Err(Error::NotDivisible { a, b }) => assert_eq!((a.as_str(), b.as_str()), ("3/4", "1/4")),
        other => panic!("expected a divisibility failure, got {other:?}"),
    }
}

#[test]
fn girard_on_two() {
    let q = std::sync::Arc::new(build_boolean());
    let d = DualizingFamily(vec![q.hom(0, 0).bottom()]);
    let g = girard_structure(&q, &d).unwrap();
    assert_eq!(g.neg(q.unit(0)), q.bottom(0, 0));
    assert_eq!(g.neg(q.bottom(0, 0)), q.unit(0));
    assert!(girard_structure(&q, &DualizingFamily(vec![q.unit_idx(0)])).is_err());
}

#[test]
fn girard_on_boolean_four_and_not_on_ql3() {
    let q = std::sync::Arc::new(boolean4());
    let families = find_dualizing_families(&q);
    assert!(!families.is_empty());
    for d in &families {
        let g = girard_structure(&q, d).unwrap();
        for x in 0..q.n() {
            for y in 0..q.n() {
                for f in q.arrows(x, y) {
                    assert_eq!(g.neg(g.neg(f)), f);
                }
            }
        }
    }
    let q3 = ql(3);
    assert!(find_dualizing_families(&q3).is_empty());
}

#[test]
fn girard_identities_hold_on_boolean_four() {
    let q = std::sync::Arc::new(boolean4());
    let d = find_dualizing_families(&q).remove(0);
    let dd = &d.0;
    for (x, y, z, _) in obj_quads(q.n()).filter(|t| t.3 == 0) {
        for f in 0..len(&q, x, y) {
            for g in 0..len(&q, y, z) {
                // g . f = d_Z ↙ (f ↘ (g ↘ d_Z)) with d_Z ↙ (.) taken over x -> z.
                let inner = q.rres_idx(z, x, y, f, q.rres_idx(z, y, z, g, dd[z]));
                assert_eq!(q.comp_idx(x, y, z, g, f), q.lres_idx(z, x, z, dd[z], inner));
                // (d_Y ↙ g) ↘ f = g ↙ (f ↘ d_Y)
                let lhs = q.rres_idx(x, z, y, q.lres_idx(y, z, y, dd[y], g), f);
                let rhs = q.lres_idx(y, x, z, g, q.rres_idx(y, x, y, f, dd[y]));
                assert_eq!(lhs, rhs);
            }
            for h in 0..len(&q, x, z) {
                // h ↙ f = (d_X ↙ h) ↘ (d_X ↙ f)
                let lhs = q.lres_idx(x, y, z, h, f);
                let rhs = q.rres_idx(
                    y,
                    z,
                    x,
                    q.lres_idx(x, z, x, dd[x], h),
                    q.lres_idx(x, y, x, dd[x], f),
                );
                assert_eq!(lhs, rhs);
            }
        }
    }
}
