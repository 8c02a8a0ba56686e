//! Betti tables: assembly with completeness checking, the classic session
//! text layout, regularity and Cohen-Macaulay reports.

use crate::error::{Error, Result};
use crate::groebner::{Budget, Ideal};
use crate::hilbert::{hilbert_data, HilbertData};
use crate::koszul::{betti_window, QuotientRing};
use serde::Serialize;
use std::collections::BTreeMap;
use std::fmt::Write as _;

#[derive(Debug, Clone, Serialize)]
pub struct BettiTable {
    /// (homological index i, internal degree j) -> beta, zeros absent.
    pub entries: BTreeMap<(u32, u32), u64>,
    pub nvars: usize,
    /// Computed window: rows 0..=row_bound (r = j - i), columns 0..=col_bound.
    pub row_bound: u32,
    pub col_bound: u32,
    /// True when the window provably holds the whole table: the column
    /// range is the variable count (Hilbert syzygy bound) and the
    /// alternating column sums reproduce the Hilbert numerator degree by
    /// degree.
    pub complete: bool,
    /// First uncomputed cells when incomplete.
    pub frontier: Vec<(u32, u32)>,
}

impl BettiTable {
    pub fn beta(&self, i: u32, j: u32) -> u64 {
        self.entries.get(&(i, j)).copied().unwrap_or(0)
    }

    pub fn total(&self, i: u32) -> u64 {
        self.entries.iter().filter(|((ii, _), _)| *ii == i).map(|(_, &b)| b).sum()
    }

    pub fn max_col(&self) -> u32 {
        self.entries.keys().map(|&(i, _)| i).max().unwrap_or(0)
    }

    pub fn max_row(&self) -> u32 {
        self.entries.keys().map(|&(i, j)| j - i).max().unwrap_or(0)
    }

    /// Projective dimension: length of the minimal free resolution.
    pub fn projective_dimension(&self) -> u32 {
        self.max_col()
    }

    /// Castelnuovo-Mumford regularity of the module: max j - i.
    pub fn regularity(&self) -> u32 {
        self.max_row()
    }

    /// Number of nonzero entries in a fixed row.
    pub fn row_nonzeros(&self, r: u32) -> usize {
        self.entries.keys().filter(|&&(i, j)| j - i == r).count()
    }

    /// The classic session layout: header of column indices, a `total:`
    /// row, rows labeled by i, `.` for zero, every column right-aligned.
    pub fn paper_text(&self) -> String {
        let cmax = self.max_col();
        let rmax = self.max_row();
        let cols: Vec<u32> = (0..=cmax).collect();
        let cell = |i: u32, r: u32| -> String {
            let b = self.beta(i, i + r);
            if b == 0 {
                ".".into()
            } else {
                b.to_string()
            }
        };
        let mut widths: Vec<usize> = cols
            .iter()
            .map(|&c| {
                let mut w = c.to_string().len().max(self.total(c).to_string().len());
                for r in 0..=rmax {
                    w = w.max(cell(c, r).len());
                }
                w
            })
            .collect();
        let label_w = "total:".len().max(rmax.to_string().len() + 1);
        let mut out = String::new();
        let _ = write!(out, "{:label_w$}", "");
        for (&c, w) in cols.iter().zip(&widths) {
            let _ = write!(out, " {:>w$}", c);
        }
        out.push('\n');
        let _ = write!(out, "{:>label_w$}", "total:");
        for (&c, w) in cols.iter().zip(&widths) {
            let _ = write!(out, " {:>w$}", self.total(c));
        }
        out.push('\n');
        for r in 0..=rmax {
            let _ = write!(out, "{:>label_w$}", format!("{r}:"));
            for (&c, w) in cols.iter().zip(widths.iter_mut()) {
                let _ = write!(out, " {:>w$}", cell(c, r));
            }
            out.push('\n');
        }
        out
    }
}

/// Check the Euler-characteristic identity: the alternating column sums of
/// the table must reproduce the Hilbert-series numerator of S/I degree by
/// degree.  Exact; any phantom row outside the window breaks it.
pub fn euler_consistent(table: &BettiTable, hd: &HilbertData) -> bool {
    let jmax = table.row_bound + table.col_bound;
    let mut sums: Vec<i64> = vec![0; jmax as usize + 1];
    for (&(i, j), &b) in &table.entries {
        let sign = if i % 2 == 0 { 1 } else { -1 };
        sums[j as usize] += sign * b as i64;
    }
    for j in 0..=jmax as usize {
        let n = hd.numerator.get(j).copied().unwrap_or(0);
        if sums[j] != n {
            return false;
        }
    }
    hd.numerator.iter().skip(jmax as usize + 1).all(|&c| c == 0)
}

/// Row bound guess from Hilbert data: the degree of the numerator after
/// all (1-t) factors are stripped (exact for Cohen-Macaulay quotients).
pub fn regularity_guess(hd: &HilbertData) -> u32 {
    let mut n = hd.numerator.clone();
    loop {
        while n.last() == Some(&0) {
            n.pop();
        }
        if n.is_empty() {
            return 0;
        }
        if n.iter().sum::<i64>() != 0 {
            return (n.len() - 1) as u32;
        }
        let mut q = Vec::with_capacity(n.len() - 1);
        let mut acc = 0i64;
        for k in 0..n.len() - 1 {
            acc += n[k];
            q.push(acc);
        }
        n = q;
    }
}

pub struct BettiOptions {
    pub row_bound: Option<u32>,
    pub col_bound: Option<u32>,
    /// Extra rows to try when the Euler identity fails under the guessed
    /// bound (auto mode only).
    pub max_row_extension: u32,
}

impl Default for BettiOptions {
    fn default() -> Self {
        BettiOptions { row_bound: None, col_bound: None, max_row_extension: 16 }
    }
}

/// Graded Betti numbers of S/I through Koszul strand ranks.  With no
/// explicit bounds the row window starts at the Hilbert-data guess and
/// extends until the Euler identity certifies completeness.
pub fn betti_table(
    ideal: &Ideal,
    opts: &BettiOptions,
    budget: &Budget,
) -> Result<(BettiTable, HilbertData)> {
    ideal.ensure_homogeneous()?;
    let hd = hilbert_data(ideal, 0, budget)?;
    let nvars = ideal.ring().nvars();
    let col_bound = opts.col_bound.unwrap_or(nvars as u32).min(nvars as u32);
    let auto = opts.row_bound.is_none();
    let mut row_bound = opts.row_bound.unwrap_or_else(|| regularity_guess(&hd));
    let mut q = QuotientRing::new(ideal, budget)?;
    let mut extensions = 0;
    loop {
        let t0 = std::time::Instant::now();
        let entries = betti_window(&mut q, row_bound, col_bound);
        log::info!(
            "betti window rows 0..={row_bound} cols 0..={col_bound}: {:.3}s",
            t0.elapsed().as_secs_f64()
        );
        let mut table = BettiTable {
            entries,
            nvars,
            row_bound,
            col_bound,
            complete: false,
            frontier: Vec::new(),
        };
        let full_cols = col_bound == nvars as u32;
        table.complete = full_cols && euler_consistent(&table, &hd);
        if table.complete {
            return Ok((table, hd));
        }
        if auto && extensions < opts.max_row_extension {
            extensions += 1;
            row_bound += 1;
            continue;
        }
        table.frontier = (0..=col_bound).map(|i| (i, i + row_bound + 1)).collect();
        return Ok((table, hd));
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct RegularityReport {
    /// reg of the module S/I.
    pub reg_module: i64,
    /// reg of the ideal itself: reg(S/I) + 1 for nonzero I.
    pub reg_ideal: Option<i64>,
    pub projective_dimension: u32,
    pub codim: i64,
    pub acm: bool,
}

/// Regularity, projective dimension and the ACM flag from a complete table.
/// An incomplete table is refused unless the caller acknowledges the bound.
pub fn regularity_report(
    table: &BettiTable,
    ideal: &Ideal,
    acknowledge_bounds: bool,
    budget: &Budget,
) -> Result<RegularityReport> {
    if !table.complete && !acknowledge_bounds {
        return Err(Error::IncompleteTable);
    }
    let hd = hilbert_data(ideal, 0, budget)?;
    let pd = table.projective_dimension();
    let codim = hd.codim();
    Ok(RegularityReport {
        reg_module: table.regularity() as i64,
        reg_ideal: if ideal.is_zero_ideal() {
            None
        } else {
            Some(table.regularity() as i64 + 1)
        },
        projective_dimension: pd,
        codim,
        acm: pd as i64 == codim,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;
    use crate::parse::parse_poly;
    use crate::ring::{RingRef, RingSpec};

    fn proj(n: usize) -> RingRef {
        RingSpec::projective(PrimeField::default_field(), n - 1).unwrap()
    }

    fn ideal(r: &RingRef, gens: &[&str]) -> Ideal {
        Ideal::new(r, gens.iter().map(|s| parse_poly(r, s).unwrap()).collect())
    }

    #[test]
    fn koszul_demo_table_layout() {
        let r = proj(2);
        let i = ideal(&r, &["x_0", "x_1"]);
        let (t, hd) = betti_table(&i, &BettiOptions::default(), &Budget::default()).unwrap();
        assert!(t.complete);
        assert!(euler_consistent(&t, &hd));
        let text = t.paper_text();
        let expect = concat!("       0 1 2\n", "total: 1 2 1\n", "    0: 1 2 1\n");
        assert_eq!(text, expect);
    }

    #[test]
    fn twisted_cubic_regularity() {
        let r = proj(4);
        let i = ideal(&r, &["x_0*x_2-x_1^2", "x_0*x_3-x_1*x_2", "x_1*x_3-x_2^2"]);
        let (t, _) = betti_table(&i, &BettiOptions::default(), &Budget::default()).unwrap();
        let rep = regularity_report(&t, &i, false, &Budget::default()).unwrap();
        assert_eq!(rep.reg_module, 1);
        assert_eq!(rep.reg_ideal, Some(2));
        assert_eq!(rep.projective_dimension, 2);
        assert_eq!(rep.codim, 2);
        assert!(rep.acm);
    }

    #[test]
    fn zero_ideal_table() {
        let r = proj(3);
        let (t, _) = betti_table(&Ideal::zero(&r), &BettiOptions::default(), &Budget::default())
            .unwrap();
        assert_eq!(t.entries.len(), 1);
        assert_eq!(t.beta(0, 0), 1);
        let rep = regularity_report(&t, &Ideal::zero(&r), false, &Budget::default()).unwrap();
        assert_eq!(rep.reg_module, 0);
        assert_eq!(rep.reg_ideal, None);
    }

    #[test]
    fn incomplete_when_rows_cut_short() {
        let r = proj(4);
        // reg(S/I) = 1 but force rows 0..=0.
        let i = ideal(&r, &["x_0*x_2-x_1^2", "x_0*x_3-x_1*x_2", "x_1*x_3-x_2^2"]);
        let opts = BettiOptions { row_bound: Some(0), ..Default::default() };
        let (t, _) = betti_table(&i, &opts, &Budget::default()).unwrap();
        assert!(!t.complete);
        assert!(!t.frontier.is_empty());
        assert!(matches!(
            regularity_report(&t, &i, false, &Budget::default()),
            Err(Error::IncompleteTable)
        ));
    }
}
