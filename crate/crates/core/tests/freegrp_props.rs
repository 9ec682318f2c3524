use pconf_core::freegrp::{commutator, fh_obstruction, nil2_class, FreeWord, Letter, NilClass2};
use proptest::prelude::*;

/// Collects a word into x₁^{e₁}⋯x_h^{e_h}·∏[x_s,x_t]^{c_st} by bubble-sorting
/// letters. Swapping x_u^a x_t^b (u > t) into x_t^b x_u^a leaves behind the
/// central factor [x_u^a, x_t^b] = [x_t, x_u]^{−ab} modulo γ₃.
fn bubble_collect(w: &FreeWord) -> NilClass2 {
    let h = w.rank();
    let mut letters: Vec<(usize, i64)> = w
        .letters()
        .iter()
        .map(|l| (l.generator, l.exponent()))
        .collect();
    let mut central = vec![vec![0i64; h]; h];
    while let Some(i) = (0..letters.len().saturating_sub(1)).find(|&i| letters[i].0 > letters[i + 1].0) {
        let (u, a) = letters[i];
        let (t, b) = letters[i + 1];
        central[t][u] -= a * b;
        letters.swap(i, i + 1);
    }
    let mut abelian = vec![0i64; h];
    for (g, e) in letters {
        abelian[g] += e;
    }
    let mut comm = Vec::new();
    for s in 0..h {
        for t in s + 1..h {
            comm.push(central[s][t]);
        }
    }
    NilClass2::from_parts(h, abelian, comm).unwrap()
}

/// Degree ≤ 2 Magnus expansion with noncommuting X: returns (degree-one
/// coefficients, full degree-two coefficient matrix).
fn magnus(w: &FreeWord) -> (Vec<i64>, Vec<Vec<i64>>) {
    let h = w.rank();
    let mut lin = vec![0i64; h];
    let mut quad = vec![vec![0i64; h]; h];
    for l in w.letters() {
        let t = l.generator;
        // factor: 1 + εX_t + δX_t², δ = 0 for x, 1 for x⁻¹
        let eps = l.exponent();
        let delta = if l.inverse { 1 } else { 0 };
        for s in 0..h {
            quad[s][t] += lin[s] * eps;
        }
        quad[t][t] += delta;
        lin[t] += eps;
    }
    (lin, quad)
}

fn all_reduced_words(rank: usize, max_len: usize) -> Vec<FreeWord> {
    let letters: Vec<Letter> = (0..rank)
        .flat_map(|g| [Letter::new(g, false), Letter::new(g, true)])
        .collect();
    let mut out = vec![FreeWord::identity(rank)];
    let mut frontier = vec![Vec::<Letter>::new()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &frontier {
            for &l in &letters {
                if w.last() == Some(&l.inv()) {
                    continue;
                }
                let mut v = w.clone();
                v.push(l);
                next.push(v);
            }
        }
        out.extend(next.iter().map(|w| FreeWord::reduce(rank, w).unwrap()));
        frontier = next;
    }
    out
}

fn wedge(u: &[i64], v: &[i64]) -> Vec<i64> {
    let h = u.len();
    let mut out = Vec::new();
    for s in 0..h {
        for t in s + 1..h {
            out.push(u[s] * v[t] - u[t] * v[s]);
        }
    }
    out
}

#[test]
fn reduced_word_count_rank_three() {
    // 1 + 6 + 6·5 + 6·25 + 6·125
    assert_eq!(all_reduced_words(3, 4).len(), 937);
}

#[test]
fn nil2_matches_bubble_collector_exhaustively() {
    for w in all_reduced_words(3, 4) {
        assert_eq!(nil2_class(&w), bubble_collect(&w), "word {w}");
    }
}

#[test]
fn nil2_matches_magnus_oracle_exhaustively() {
    for w in all_reduced_words(3, 4) {
        let (lin, quad) = magnus(&w);
        let class = nil2_class(&w);
        assert_eq!(class.abelian(), lin.as_slice());
        for s in 0..3 {
            for t in s + 1..3 {
                // off-diagonal shuffle identity
                assert_eq!(quad[s][t] + quad[t][s], lin[s] * lin[t]);
                assert_eq!(class.commutator_coeff(s, t), quad[s][t] - lin[s] * lin[t]);
            }
        }
    }
}

#[test]
fn commutator_class_is_wedge_of_abelianizations() {
    let words = all_reduced_words(3, 4);
    for u in &words {
        let hu = u.abelianize();
        for v in &words {
            let c = nil2_class(&commutator(u, v).unwrap());
            assert!(c.abelian().iter().all(|&e| e == 0));
            assert_eq!(c.commutator_part(), wedge(&hu, &v.abelianize()).as_slice(), "[{u}, {v}]");
        }
    }
}

#[test]
fn product_commutator_example_against_collector() {
    let u = FreeWord::from_signed(2, &[1, 2]).unwrap();
    let v = FreeWord::from_signed(2, &[2]).unwrap();
    let c = commutator(&u, &v).unwrap();
    assert_eq!(nil2_class(&c), bubble_collect(&c));
    assert_eq!(nil2_class(&c).commutator_part(), &[1]);
    assert!(fh_obstruction(&u, &v).unwrap());
}

#[test]
fn nested_commutators_vanish() {
    for (a, b, c) in [(1, 2, 3), (2, 1, 3), (1, 1, 2), (3, 2, 1)] {
        let x = |i| FreeWord::generator(3, i).unwrap();
        let w = commutator(&commutator(&x(a), &x(b)).unwrap(), &x(c)).unwrap();
        assert!(nil2_class(&w).is_identity());
    }
}

fn word(rank: usize, max_len: usize) -> impl Strategy<Value = FreeWord> {
    prop::collection::vec((0..rank, any::<bool>()), 0..=max_len).prop_map(move |ls| {
        let letters: Vec<Letter> = ls.into_iter().map(|(g, i)| Letter::new(g, i)).collect();
        FreeWord::reduce(rank, &letters).unwrap()
    })
}

proptest! {
    #[test]
    fn reduce_is_idempotent_and_shortening(raw in prop::collection::vec((0usize..3, any::<bool>()), 0..30)) {
        let letters: Vec<Letter> = raw.into_iter().map(|(g, i)| Letter::new(g, i)).collect();
        let w = FreeWord::reduce(3, &letters).unwrap();
        prop_assert!(w.len() <= letters.len());
        prop_assert_eq!(FreeWord::reduce(3, w.letters()).unwrap(), w);
    }

    #[test]
    fn word_times_inverse_is_identity(w in word(4, 20)) {
        prop_assert!(w.mul(&w.inverse()).unwrap().is_identity());
    }

    #[test]
    fn nil2_is_a_homomorphism(u in word(4, 20), v in word(4, 20)) {
        let lhs = nil2_class(&u.mul(&v).unwrap());
        let rhs = nil2_class(&u).mul(&nil2_class(&v)).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn commutators_die_in_abelianization(u in word(3, 10), v in word(3, 10)) {
        prop_assert!(commutator(&u, &v).unwrap().abelianize().iter().all(|&e| e == 0));
    }
}
