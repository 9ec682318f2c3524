use pconf_core::exactla::{q, Rational, RationalMatrix, Subspace};
use pconf_core::pushact::{
    dual_action, dual_invariants, loops_fixed_by_pushes, push_action, quotient_action_trivial,
    PuncturedH1, PushDirection, PushGenerator,
};
use pconf_core::sampling::random_vector;
use rand::seq::{IndexedRandom, SliceRandom};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn matrices(space: &PuncturedH1) -> Vec<RationalMatrix> {
    space
        .generators()
        .iter()
        .map(|g| push_action(g, space).unwrap())
        .collect()
}

#[test]
fn pushes_are_unipotent() {
    for g in 2..=3 {
        for n in 1..=4 {
            let space = PuncturedH1::new(g, n).unwrap();
            let id = RationalMatrix::identity(space.dim());
            for a in matrices(&space) {
                let nil = &a - &id;
                assert!((&nil * &nil).is_zero());
            }
        }
    }
}

#[test]
fn compositions_move_only_by_puncture_loops() {
    let mut rng = ChaCha8Rng::seed_from_u64(20);
    for g in 2..=3 {
        for n in 2..=4 {
            let space = PuncturedH1::new(g, n).unwrap();
            let cs: Vec<Vec<Rational>> = (1..=n).map(|i| space.c(i)).collect();
            let punct = Subspace::span(space.dim(), &cs).unwrap();
            let ms = matrices(&space);
            for _ in 0..50 {
                let a = ms.choose(&mut rng).unwrap();
                let b = ms.choose(&mut rng).unwrap();
                let ab = a * b;
                for c in &cs {
                    assert_eq!(&ab.mul_vec(c).unwrap(), c);
                }
                let v = random_vector(&mut rng, space.dim());
                let moved: Vec<Rational> =
                    ab.mul_vec(&v).unwrap().iter().zip(&v).map(|(x, y)| x - y).collect();
                assert!(punct.contains(&moved).unwrap());
            }
        }
    }
}

#[test]
fn invariants_do_not_depend_on_generator_order() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    let space = PuncturedH1::new(3, 3).unwrap();
    let mut duals: Vec<RationalMatrix> =
        matrices(&space).iter().map(|a| dual_action(a).unwrap()).collect();
    let base = dual_invariants(&space).unwrap();
    for _ in 0..5 {
        duals.shuffle(&mut rng);
        let s = pconf_core::exactla::fixed_subspace(space.dim(), &duals).unwrap();
        assert_eq!(s, base);
    }
}

#[test]
fn dual_action_is_contragredient() {
    let space = PuncturedH1::new(2, 3).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(22);
    for a in matrices(&space) {
        let d = dual_action(&a).unwrap();
        // (f∘A⁻¹)(A v) = f(v)
        let f = random_vector(&mut rng, space.dim());
        let v = random_vector(&mut rng, space.dim());
        let lhs: Rational = d.mul_vec(&f).unwrap().iter().zip(a.mul_vec(&v).unwrap()).map(|(x, y)| x * y).sum();
        let rhs: Rational = f.iter().zip(&v).map(|(x, y)| x * y).sum();
        assert_eq!(lhs, rhs);
    }
}

#[test]
fn single_puncture_has_trivial_quotient() {
    for g in 2..=4 {
        let space = PuncturedH1::new(g, 1).unwrap();
        // c₁ = 0 when n = 1, so every push acts as the identity
        let id = RationalMatrix::identity(space.dim());
        assert!(matrices(&space).iter().all(|a| *a == id));
        let inv = dual_invariants(&space).unwrap();
        assert_eq!(inv.dim(), 2 * g);
        assert_eq!(space.dim() - space.c_annihilator().dim(), 0);
    }
}

#[test]
fn invariants_are_the_puncture_annihilator() {
    for g in 2..=4 {
        for n in 1..=4 {
            let space = PuncturedH1::new(g, n).unwrap();
            let inv = dual_invariants(&space).unwrap();
            assert_eq!(inv, space.c_annihilator(), "g={g} n={n}");
            assert_eq!(inv.dim(), 2 * g);
            assert!(quotient_action_trivial(&space).unwrap());
            assert!(loops_fixed_by_pushes(&space).unwrap());
        }
    }
}

#[test]
fn malformed_generators_are_rejected() {
    let space = PuncturedH1::new(2, 3).unwrap();
    let bad = [
        PushGenerator { point: 0, direction: PushDirection::A(1) },
        PushGenerator { point: 4, direction: PushDirection::A(1) },
        PushGenerator { point: 1, direction: PushDirection::B(3) },
        PushGenerator { point: 2, direction: PushDirection::C(2) },
        PushGenerator { point: 2, direction: PushDirection::C(5) },
    ];
    for g in bad {
        assert!(push_action(&g, &space).is_err(), "{g:?}");
    }
    let ok = PushGenerator { point: 3, direction: PushDirection::C(1) };
    let a = push_action(&ok, &space).unwrap();
    // ⟨c1, ·⟩ is identically zero, so pushing along a puncture loop is trivial
    assert_eq!(a, RationalMatrix::identity(space.dim()));
    assert_eq!(space.pairing(&space.a(1), &space.b(1)), q(1));
}
