//! Acceptance criteria, one test each. Every test prints a single
//! `criterion N ... PASS|FAIL` line and then asserts; nothing is approximate.

use std::process::Command;

use pconf_core::binomial;
use pconf_core::confcoh::{
    cover_genus, find_moving_transvection, relations, sym_invariants, ConfSpaceModel, RelationSign,
};
use pconf_core::exactla::Subspace;
use pconf_core::freegrp::{commutator, nil2_class, FreeWord, Letter, NilClass2};
use pconf_core::johnson::{johnson_image, tau_hits};
use pconf_core::pushact::{dual_invariants, loops_fixed_by_pushes, quotient_action_trivial, PuncturedH1};
use pconf_core::sampling::{random_block_isotropic, random_crossing};
use pconf_core::surface::SymplecticSpace;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn verdict(n: usize, name: &str, failures: &[String]) {
    if failures.is_empty() {
        println!("criterion {n:>2} {name}: PASS");
    } else {
        println!("criterion {n:>2} {name}: FAIL ({})", failures.join("; "));
    }
    assert!(failures.is_empty(), "criterion {n} failed: {failures:?}");
}

fn grid(gs: &[usize], ns: &[usize]) -> Vec<(usize, usize)> {
    gs.iter().flat_map(|&g| ns.iter().map(move |&n| (g, n))).collect()
}

#[test]
fn criterion_01_rank_identity() {
    let mut failures = Vec::new();
    for (g, n) in grid(&[2, 3], &[2, 3, 4]) {
        let model = ConfSpaceModel::new(g, n).unwrap();
        let rank = relations(&model, RelationSign::Minus).image_rank();
        // written out independently of image_rank_formula
        let pairs = n * (n - 1) / 2;
        let expected = pairs * 4 * g * g + n - pairs;
        if rank != expected {
            failures.push(format!("(g={g}, n={n}) computed {rank}, expected {expected}"));
        }
    }
    let spot = [((2, 2), 17), ((2, 3), 48), ((3, 2), 37)];
    for ((g, n), v) in spot {
        let rank = relations(&ConfSpaceModel::new(g, n).unwrap(), RelationSign::Minus).image_rank();
        if rank != v {
            failures.push(format!("(g={g}, n={n}) computed {rank}, stated {v}"));
        }
    }
    verdict(1, "rank identity", &failures);
}

#[test]
fn criterion_02_relation_independence() {
    let mut failures = Vec::new();
    for (g, n) in grid(&[2, 3], &[2, 3, 4]) {
        let model = ConfSpaceModel::new(g, n).unwrap();
        for sign in [RelationSign::Minus, RelationSign::Plus] {
            let r = relations(&model, sign).relation_rank();
            if r != binomial(n, 2) {
                failures.push(format!("(g={g}, n={n}, {sign:?}) rank {r}"));
            }
        }
    }
    verdict(2, "relation independence", &failures);
}

#[test]
fn criterion_03_crossing_lemma() {
    let mut failures = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for (g, n) in grid(&[2, 3], &[2, 3]) {
        let model = ConfSpaceModel::new(g, n).unwrap();
        let p = relations(&model, RelationSign::Minus);
        for k in 0..200 {
            let x = random_crossing(&mut rng, &model);
            let ann = p.annihilator(&x).unwrap();
            let line = Subspace::span(model.h1_dim(), &[x.coords().to_vec()]).unwrap();
            if ann.dim() != 1 || ann != line {
                failures.push(format!("(g={g}, n={n}) sample {k}: dim {}", ann.dim()));
            }
        }
    }
    verdict(3, "crossing lemma", &failures);
}

#[test]
fn criterion_04_push_invariants() {
    let mut failures = Vec::new();
    for (g, n) in grid(&[2, 3, 4], &[1, 2, 3, 4]) {
        let space = PuncturedH1::new(g, n).unwrap();
        let inv = dual_invariants(&space).unwrap();
        if inv.dim() != 2 * g || inv != space.c_annihilator() {
            failures.push(format!("(g={g}, n={n}) dim {}", inv.dim()));
        }
    }
    verdict(4, "point-push invariants", &failures);
}

#[test]
fn criterion_05_trivial_quotient_action() {
    let mut failures = Vec::new();
    for (g, n) in grid(&[2, 3, 4], &[1, 2, 3, 4]) {
        let space = PuncturedH1::new(g, n).unwrap();
        if !quotient_action_trivial(&space).unwrap() {
            failures.push(format!("(g={g}, n={n}) quotient action nontrivial"));
        }
        if !loops_fixed_by_pushes(&space).unwrap() {
            failures.push(format!("(g={g}, n={n}) some push moves a puncture loop"));
        }
    }
    verdict(5, "trivial quotient action", &failures);
}

#[test]
fn criterion_06_diagonal_invariants() {
    let mut failures = Vec::new();
    for (g, n) in grid(&[2, 3], &[2, 3, 4]) {
        let model = ConfSpaceModel::new(g, n).unwrap();
        let inv = sym_invariants(&model).unwrap();
        if inv.dim() != 2 * g || inv != model.diagonal_subspace() {
            failures.push(format!("(g={g}, n={n}) dim {}", inv.dim()));
        }
    }
    verdict(6, "diagonal invariants", &failures);
}

#[test]
fn criterion_07_isotropic_movers() {
    let mut failures = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for (g, n) in grid(&[2, 3], &[2, 3]) {
        let model = ConfSpaceModel::new(g, n).unwrap();
        let p = relations(&model, RelationSign::Minus);
        let mut samples: Vec<(String, Subspace)> = Vec::new();
        for k in 0..60 {
            let x = random_crossing(&mut rng, &model);
            samples.push((
                format!("crossing line {k}"),
                Subspace::span(model.h1_dim(), &[x.coords().to_vec()]).unwrap(),
            ));
        }
        // every block and every dimension 1..=g
        for k in 0..60 {
            let block = k % n;
            let dim = 1 + (k / n) % g;
            samples.push((
                format!("block {block} dim {dim}"),
                random_block_isotropic(&mut rng, &model, block, dim),
            ));
        }
        for (label, s) in samples {
            if s.is_zero() || !p.is_isotropic(&s).unwrap() {
                failures.push(format!("(g={g}, n={n}) {label} not a nonzero isotropic subspace"));
            } else if find_moving_transvection(&s, &model).unwrap().is_none() {
                failures.push(format!("(g={g}, n={n}) {label} fixed by every transvection"));
            }
        }
    }
    verdict(7, "isotropic movers", &failures);
}

#[test]
fn criterion_08_johnson_solvability() {
    let mut failures = Vec::new();
    for g in [3, 4] {
        let s = SymplecticSpace::new(g).unwrap();
        let target = s.wedge2(&s.a(1), &s.a(2)).unwrap();
        if !tau_hits(g, &s.b(1), &target).unwrap() {
            failures.push(format!("g={g}: no element of the image sends b1 to a1^a2"));
        }
    }
    for g in [2, 3, 4] {
        let d = johnson_image(g).unwrap().quotient_dim();
        let expected = binomial(2 * g, 3) - 2 * g;
        if d != expected {
            failures.push(format!("g={g}: quotient dim {d}, expected {expected}"));
        }
    }
    if johnson_image(2).unwrap().quotient_dim() != 0 {
        failures.push("g=2: quotient not zero-dimensional".into());
    }
    verdict(8, "Johnson solvability", &failures);
}

/// Bubble-sort collector: moving x_u^a past x_t^b (u > t) leaves [x_t, x_u]^{−ab}.
fn collect(w: &FreeWord) -> NilClass2 {
    let h = w.rank();
    let mut letters: Vec<(usize, i64)> =
        w.letters().iter().map(|l| (l.generator, l.exponent())).collect();
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
    let comm = (0..h)
        .flat_map(|s| (s + 1..h).map(move |t| (s, t)))
        .map(|(s, t)| central[s][t])
        .collect();
    NilClass2::from_parts(h, abelian, comm).unwrap()
}

fn reduced_words(rank: usize, max_len: usize) -> Vec<FreeWord> {
    let alphabet: Vec<Letter> = (0..rank)
        .flat_map(|g| [Letter::new(g, false), Letter::new(g, true)])
        .collect();
    let mut layer: Vec<Vec<Letter>> = vec![vec![]];
    let mut out = vec![FreeWord::identity(rank)];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &layer {
            for &l in &alphabet {
                if w.last() != Some(&l.inv()) {
                    let mut v = w.clone();
                    v.push(l);
                    next.push(v);
                }
            }
        }
        out.extend(next.iter().map(|w| FreeWord::reduce(rank, w).unwrap()));
        layer = next;
    }
    out
}

#[test]
fn criterion_09_fh_obstruction() {
    let mut failures = Vec::new();
    let x = |i| FreeWord::generator(2, i).unwrap();
    let c = nil2_class(&commutator(&x(1), &x(2)).unwrap());
    if c.commutator_part() != [1] || c.abelian() != [0, 0] {
        failures.push(format!("[x1,x2] collected to {c:?}"));
    }
    let words = reduced_words(3, 4);
    if words.len() != 937 {
        failures.push(format!("enumerated {} words, expected 937", words.len()));
    }
    let bad = words.iter().filter(|w| nil2_class(w) != collect(w)).count();
    if bad > 0 {
        failures.push(format!("{bad} words disagree with the collector"));
    }
    verdict(9, "F_h obstruction", &failures);
}

#[test]
fn criterion_10_cover_genus() {
    let mut failures = Vec::new();
    for g in 2..=5 {
        for n in 1..=6 {
            let r = cover_genus(g, n).unwrap();
            let chi_cover = n as i64 * (2 - 2 * g as i64);
            if 2 - 2 * r as i64 != chi_cover {
                failures.push(format!("(g={g}, n={n}) r={r} breaks chi multiplicativity"));
            }
            if r != n * (g - 1) + 1 || (r > g) != (n > 1) || (r == g) != (n == 1) {
                failures.push(format!("(g={g}, n={n}) r={r}"));
            }
        }
    }
    verdict(10, "cover genus", &failures);
}

#[test]
fn criterion_11_harness_determinism() {
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_pconf"))
            .args(["verify", "--suite", "all", "--seed", "1", "--format", "json"])
            .output()
            .expect("binary runs")
    };
    let (first, second) = (run(), run());
    let mut failures = Vec::new();
    if first.stdout.is_empty() {
        failures.push("empty report".into());
    }
    if first.stdout != second.stdout {
        failures.push("reports differ between runs".into());
    }
    if first.status.code() == Some(2) {
        failures.push(format!("usage error: {}", String::from_utf8_lossy(&first.stderr)));
    }
    match serde_json::from_slice::<serde_json::Value>(&first.stdout) {
        Ok(v) => {
            for key in ["config", "checks", "summary"] {
                if v.get(key).is_none() {
                    failures.push(format!("report lacks `{key}`"));
                }
            }
        }
        Err(e) => failures.push(format!("report is not JSON: {e}")),
    }
    verdict(11, "harness determinism", &failures);
}
