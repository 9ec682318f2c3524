use std::fmt::Write;

use pconf_core::confcoh::{image_rank_formula, relations, ConfSpaceModel, RelationSign};
use rayon::prelude::*;

use crate::{check_ranges, HarnessError, IntRange};

/// Computed cup-image rank beside the closed form, one row per genus.
/// Mismatching cells are marked with `!`.
pub fn rank_table(g_range: IntRange, n_range: IntRange, unsafe_large: bool) -> Result<String, HarnessError> {
    check_ranges(g_range, n_range, unsafe_large)?;
    let cells: Vec<(usize, usize)> = g_range
        .iter()
        .flat_map(|g| n_range.iter().map(move |n| (g, n)))
        .collect();
    let ranks: Vec<(usize, usize)> = cells
        .par_iter()
        .map(|&(g, n)| {
            let model = ConfSpaceModel::new(g, n)?;
            Ok((relations(&model, RelationSign::Minus).image_rank(), image_rank_formula(g, n)))
        })
        .collect::<Result<_, HarnessError>>()?;

    let mut out = String::new();
    write!(out, "{:>4}", "g\\n").unwrap();
    for n in n_range.iter() {
        write!(out, " | {:>15}", format!("n={n}")).unwrap();
    }
    out.push('\n');
    let mut mismatches = 0;
    let width = n_range.hi - n_range.lo + 1;
    for (g, row) in g_range.iter().zip(ranks.chunks(width)) {
        write!(out, "{g:>4}").unwrap();
        for &(computed, formula) in row {
            let flag = if computed == formula { ' ' } else { '!' };
            mismatches += usize::from(computed != formula);
            write!(out, " | {:>6} / {:>5}{flag}", computed, formula).unwrap();
        }
        out.push('\n');
    }
    writeln!(out, "cells show computed / closed form; {mismatches} mismatch(es)").unwrap();
    Ok(out)
}
