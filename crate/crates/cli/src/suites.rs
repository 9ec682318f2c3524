use std::fmt::Display;

use pconf_core::binomial;
use pconf_core::confcoh::{
    cover_genus, find_moving_transvection, image_rank_formula, relations, sym_invariants,
    ConfSpaceModel,
};
use pconf_core::exactla::Subspace;
use pconf_core::freegrp::{commutator, fh_obstruction, nil2_class, FreeWord, Letter, NilClass2};
use pconf_core::johnson::{johnson_image, tau_hits, tau_witness};
use pconf_core::pushact::{dual_invariants, loops_fixed_by_pushes, quotient_action_trivial, PuncturedH1};
use pconf_core::sampling::{random_block_isotropic, random_crossing};
use pconf_core::surface::SymplecticSpace;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::{task_seed, CheckRecord, HarnessError, Suite, SuiteConfig};

#[derive(Debug, Clone, Copy)]
pub(crate) enum Task {
    Cell { suite: Suite, g: usize, n: usize },
    Genus(usize),
    FreeGroup,
}

pub(crate) fn plan(cfg: &SuiteConfig) -> Vec<Task> {
    let suites: Vec<Suite> = match cfg.suite {
        Suite::All => Suite::CONCRETE.to_vec(),
        s => vec![s],
    };
    let mut tasks = Vec::new();
    for suite in suites {
        if suite == Suite::Johnson {
            tasks.extend(cfg.g_range.iter().map(Task::Genus));
            tasks.push(Task::FreeGroup);
            continue;
        }
        for g in cfg.g_range.iter() {
            for n in cfg.n_range.iter() {
                // crossing elements and point permutations need two points
                if n < 2 && matches!(suite, Suite::Crossing | Suite::Sym) {
                    continue;
                }
                tasks.push(Task::Cell { suite, g, n });
            }
        }
    }
    tasks
}

pub(crate) fn run(task: &Task, cfg: &SuiteConfig) -> Result<Vec<CheckRecord>, HarnessError> {
    match *task {
        Task::Cell { suite, g, n } => {
            let mut rng = ChaCha8Rng::seed_from_u64(task_seed(cfg.seed, suite, g, n));
            let cell = Cell { suite, g, n };
            match suite {
                Suite::Cup => cup(cell, cfg),
                Suite::Crossing => crossing(cell, cfg, &mut rng),
                Suite::Push => push(cell),
                Suite::Sym => sym(cell),
                Suite::Isotropic => isotropic(cell, cfg, &mut rng),
                Suite::Cover => cover(cell),
                Suite::Johnson | Suite::All => unreachable!("planned separately"),
            }
        }
        Task::Genus(g) => johnson(g),
        Task::FreeGroup => free_group(),
    }
}

#[derive(Clone, Copy)]
struct Cell {
    suite: Suite,
    g: usize,
    n: usize,
}

impl Cell {
    fn id(&self, name: &str) -> String {
        format!("{}/g{}/n{}/{name}", self.suite.name(), self.g, self.n)
    }

    fn inputs(&self) -> String {
        format!("g={} n={}", self.g, self.n)
    }

    fn eq<T: PartialEq + Display>(&self, name: &str, anchor: &str, expected: T, actual: T) -> CheckRecord {
        record(self.id(name), anchor, self.inputs(), expected, actual)
    }
}

fn record<T: PartialEq + Display>(
    id: String,
    anchor: &str,
    inputs: String,
    expected: T,
    actual: T,
) -> CheckRecord {
    CheckRecord {
        pass: expected == actual,
        id,
        anchor: anchor.to_string(),
        inputs,
        expected: expected.to_string(),
        actual: actual.to_string(),
    }
}

fn cup(cell: Cell, cfg: &SuiteConfig) -> Result<Vec<CheckRecord>, HarnessError> {
    let model = ConfSpaceModel::new(cell.g, cell.n)?;
    let p = relations(&model, cfg.relation_sign.into());
    Ok(vec![
        cell.eq(
            "image_rank",
            "rank of cup image",
            image_rank_formula(cell.g, cell.n),
            p.image_rank(),
        ),
        cell.eq(
            "relation_rank",
            "relation independence",
            binomial(cell.n, 2),
            p.relation_rank(),
        ),
    ])
}

fn crossing(cell: Cell, cfg: &SuiteConfig, rng: &mut ChaCha8Rng) -> Result<Vec<CheckRecord>, HarnessError> {
    let model = ConfSpaceModel::new(cell.g, cell.n)?;
    let p = relations(&model, cfg.relation_sign.into());
    let mut good = 0;
    for _ in 0..cfg.samples {
        let x = random_crossing(rng, &model);
        let ann = p.annihilator(&x)?;
        // dim 1 and containing x is the same as equal to span{x}
        if ann.dim() == 1 && ann.contains(x.coords()).map_err(pconf_core::Error::from)? {
            good += 1;
        }
    }
    Ok(vec![cell.eq(
        "annihilator_is_line",
        "crossing lemma",
        format!("{0}/{0}", cfg.samples),
        format!("{good}/{}", cfg.samples),
    )])
}

fn push(cell: Cell) -> Result<Vec<CheckRecord>, HarnessError> {
    let space = PuncturedH1::new(cell.g, cell.n)?;
    let inv = dual_invariants(&space)?;
    let matches = inv == space.c_annihilator();
    Ok(vec![
        cell.eq("invariant_dim", "push invariants", 2 * cell.g, inv.dim()),
        cell.eq("invariants_are_c_annihilator", "push invariants", true, matches),
        cell.eq(
            "quotient_action_trivial",
            "trivial quotient action",
            true,
            quotient_action_trivial(&space)?,
        ),
        cell.eq(
            "loops_fixed",
            "trivial quotient action",
            true,
            loops_fixed_by_pushes(&space)?,
        ),
    ])
}

fn sym(cell: Cell) -> Result<Vec<CheckRecord>, HarnessError> {
    let model = ConfSpaceModel::new(cell.g, cell.n)?;
    let inv = sym_invariants(&model)?;
    Ok(vec![
        cell.eq("invariant_dim", "diagonal invariants", 2 * cell.g, inv.dim()),
        cell.eq(
            "invariants_are_diagonal",
            "diagonal invariants",
            true,
            inv == model.diagonal_subspace(),
        ),
    ])
}

fn isotropic(cell: Cell, cfg: &SuiteConfig, rng: &mut ChaCha8Rng) -> Result<Vec<CheckRecord>, HarnessError> {
    let model = ConfSpaceModel::new(cell.g, cell.n)?;
    let p = relations(&model, cfg.relation_sign.into());
    let (mut isotropic, mut moved) = (0, 0);
    for i in 0..cfg.samples {
        let s = if cell.n >= 2 && i % 2 == 0 {
            let x = random_crossing(rng, &model);
            Subspace::span(model.h1_dim(), &[x.coords().to_vec()]).map_err(pconf_core::Error::from)?
        } else {
            let block = rng.random_range(0..cell.n);
            let dim = rng.random_range(1..=cell.g);
            random_block_isotropic(rng, &model, block, dim)
        };
        if p.is_isotropic(&s)? {
            isotropic += 1;
        }
        if find_moving_transvection(&s, &model)?.is_some() {
            moved += 1;
        }
    }
    let all = format!("{0}/{0}", cfg.samples);
    Ok(vec![
        cell.eq("samples_isotropic", "isotropic movers", all.clone(), format!("{isotropic}/{}", cfg.samples)),
        cell.eq("movers_found", "isotropic movers", all, format!("{moved}/{}", cfg.samples)),
    ])
}

fn cover(cell: Cell) -> Result<Vec<CheckRecord>, HarnessError> {
    // Euler characteristic is multiplicative: 2 − 2r = n(2 − 2g)
    let chi = cell.n as i64 * (2 - 2 * cell.g as i64);
    let expected = ((2 - chi) / 2) as usize;
    let r = cover_genus(cell.g, cell.n)?;
    Ok(vec![
        cell.eq("genus", "cover genus", expected, r),
        cell.eq("grows_iff_nontrivial", "cover genus", cell.n > 1, r > cell.g),
    ])
}

fn johnson(g: usize) -> Result<Vec<CheckRecord>, HarnessError> {
    let id = |name: &str| format!("johnson/g{g}/{name}");
    let inputs = || format!("g={g}");
    let space = SymplecticSpace::new(g)?;
    let image = johnson_image(g)?;
    let mut out = vec![
        record(
            id("quotient_dim"),
            "Johnson image",
            inputs(),
            binomial(2 * g, 3) - 2 * g,
            image.quotient_dim(),
        ),
        record(
            id("h_in_image"),
            "Johnson image",
            inputs(),
            true,
            image.image.contains_subspace(&image.h_copy).map_err(pconf_core::Error::from)?,
        ),
    ];
    let target = space.wedge2(&space.a(1), &space.a(2))?;
    let hits_b1 = tau_hits(g, &space.b(1), &target)?;
    if g < 3 {
        // ∧³H/H vanishes at g = 2, so nothing is reachable
        out.push(record(id("tau_b1_a1a2"), "tau solvability", format!("{inputs} v=b1", inputs = inputs()), false, hits_b1));
        return Ok(out);
    }
    out.push(record(
        id("contraction_kernel_dim"),
        "Johnson image",
        inputs(),
        0,
        image.contraction_kernel_dim,
    ));
    out.push(record(
        id("tau_b1_a1a2"),
        "tau solvability",
        format!("g={g} v=b1 value=a1^a2"),
        true,
        hits_b1,
    ));
    let witness = tau_witness(g, &space.b(3), &target)?;
    let actual = match &witness {
        Some(w) => {
            let triples = space.triples();
            let terms: Vec<String> = w
                .integral
                .iter()
                .zip(&triples)
                .filter(|(c, _)| **c != Default::default())
                .map(|(c, &(s, t, u))| {
                    format!("{c}*{}^{}^{}", space.label(s), space.label(t), space.label(u))
                })
                .collect();
            format!("solvable: {} (scale {})", terms.join(" + "), w.scale)
        }
        None => "unsolvable".to_string(),
    };
    out.push(CheckRecord {
        id: id("tau_b3_a1a2"),
        anchor: "tau solvability".to_string(),
        inputs: format!("g={g} v=b3 value=a1^a2"),
        expected: "solvable".to_string(),
        pass: witness.is_some(),
        actual,
    });
    Ok(out)
}

fn free_group() -> Result<Vec<CheckRecord>, HarnessError> {
    let id = |name: &str| format!("johnson/free/{name}");
    let x1 = FreeWord::generator(2, 1)?;
    let x2 = FreeWord::generator(2, 2)?;
    let class = nil2_class(&commutator(&x1, &x2)?);
    let words = all_reduced_words(3, 4);
    let agree = words.iter().filter(|w| nil2_class(w) == collect(w)).count();
    Ok(vec![
        record(
            id("commutator_x1_x2"),
            "F_h obstruction",
            "rank 2".to_string(),
            "[1]".to_string(),
            format!("{:?}", class.commutator_part()),
        ),
        record(
            id("obstruction_nonzero"),
            "F_h obstruction",
            "rank 2, a1->x1, a2->x2".to_string(),
            true,
            fh_obstruction(&x1, &x2)?,
        ),
        record(
            id("collector_agreement"),
            "F_h obstruction",
            "rank 3, reduced words of length <= 4".to_string(),
            format!("{0}/{0}", words.len()),
            format!("{agree}/{}", words.len()),
        ),
    ])
}

/// Independent collector: bubble-sort the letters into generator order,
/// recording [x_t, x_u]^{−ab} for each swap of x_u^a past x_t^b (u > t).
fn collect(w: &FreeWord) -> NilClass2 {
    let h = w.rank();
    let mut letters: Vec<(usize, i64)> =
        w.letters().iter().map(|l| (l.generator, l.exponent())).collect();
    let mut central = vec![vec![0i64; h]; h];
    let mut sorted = false;
    while !sorted {
        sorted = true;
        for i in 0..letters.len().saturating_sub(1) {
            if letters[i].0 > letters[i + 1].0 {
                let (u, a) = letters[i];
                let (t, b) = letters[i + 1];
                central[t][u] -= a * b;
                letters.swap(i, i + 1);
                sorted = false;
            }
        }
    }
    let mut abelian = vec![0i64; h];
    for (g, e) in letters {
        abelian[g] += e;
    }
    let comm = (0..h)
        .flat_map(|s| (s + 1..h).map(move |t| (s, t)))
        .map(|(s, t)| central[s][t])
        .collect();
    NilClass2::from_parts(h, abelian, comm).expect("sized")
}

fn all_reduced_words(rank: usize, max_len: usize) -> Vec<FreeWord> {
    let alphabet: Vec<Letter> = (0..rank)
        .flat_map(|g| [Letter::new(g, false), Letter::new(g, true)])
        .collect();
    let mut layer = vec![Vec::<Letter>::new()];
    let mut out = vec![FreeWord::identity(rank)];
    for _ in 0..max_len {
        layer = layer
            .iter()
            .flat_map(|w| {
                alphabet
                    .iter()
                    .filter(move |&&l| w.last() != Some(&l.inv()))
                    .map(move |&l| {
                        let mut v = w.clone();
                        v.push(l);
                        v
                    })
            })
            .collect();
        out.extend(layer.iter().map(|w| FreeWord::reduce(rank, w).expect("in range")));
    }
    out
}
