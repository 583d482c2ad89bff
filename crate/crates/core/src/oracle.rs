//! Brute-force exact solver: enumerates every partition of the rows into
//! blocks of at least `k` rows and keeps the cheapest.
//!
//! Partitions are generated as restricted-growth strings (row `i` joins one
//! of the blocks opened so far or opens the next one). A prefix is abandoned
//! as soon as the rows left cannot fill the deficits of undersized blocks.
//! This module shares nothing with the matching-based solver beyond the
//! table model; it is the reference those results are checked against.

use crate::error::{Error, Result};
use crate::table::{resolution_of, Clustering, Table};

/// Default row cap for `k >= 2`.
pub const DEFAULT_CAP: usize = 12;
/// Default row cap for `k = 1`, where no block-size pruning applies.
pub const DEFAULT_CAP_K1: usize = 8;

#[derive(Clone, Debug)]
pub struct OracleResult {
    pub cost: u64,
    /// First optimum in enumeration order.
    pub clustering: Clustering,
    /// Complete partitions whose cost was evaluated.
    pub partitions_examined: u64,
}

/// Minimum suppression cost over all k-feasible partitions of `table`.
///
/// `limit` replaces the default row cap.
pub fn brute_force_min(table: &Table, k: usize, limit: Option<usize>) -> Result<OracleResult> {
    let n = table.n();
    if k == 0 || k > n {
        return Err(Error::InvalidK { k, n });
    }
    let cap = limit.unwrap_or(if k == 1 { DEFAULT_CAP_K1 } else { DEFAULT_CAP });
    if n > cap {
        return Err(Error::OracleCap { n, cap });
    }
    let mut search = Search {
        table,
        k,
        labels: vec![0; n],
        sizes: Vec::new(),
        best: None,
        examined: 0,
    };
    search.descend(0, 0);
    let (cost, labels) = search
        .best
        .ok_or_else(|| Error::Internal("no k-feasible partition found".into()))?;
    let mut blocks: Vec<Vec<usize>> = vec![Vec::new(); labels.iter().max().map_or(0, |b| b + 1)];
    for (row, &b) in labels.iter().enumerate() {
        blocks[b].push(row);
    }
    let clustering = Clustering::new(table, blocks)?;
    debug_assert_eq!(clustering.cost(), cost);
    Ok(OracleResult {
        cost,
        clustering,
        partitions_examined: search.examined,
    })
}

struct Search<'a> {
    table: &'a Table,
    k: usize,
    labels: Vec<usize>,
    sizes: Vec<usize>,
    best: Option<(u64, Vec<usize>)>,
    examined: u64,
}

impl Search<'_> {
    fn deficit(&self) -> usize {
        self.sizes.iter().map(|&s| self.k.saturating_sub(s)).sum()
    }

    fn descend(&mut self, row: usize, open: usize) {
        let n = self.labels.len();
        if n - row < self.deficit() {
            return;
        }
        if row == n {
            self.examined += 1;
            let cost = self.cost(open);
            if self.best.as_ref().is_none_or(|(b, _)| cost < *b) {
                self.best = Some((cost, self.labels.clone()));
            }
            return;
        }
        for block in 0..=open {
            self.labels[row] = block;
            if block == open {
                self.sizes.push(1);
                self.descend(row + 1, open + 1);
                self.sizes.pop();
            } else {
                self.sizes[block] += 1;
                self.descend(row + 1, open);
                self.sizes[block] -= 1;
            }
        }
    }

    fn cost(&self, open: usize) -> u64 {
        (0..open)
            .map(|b| {
                let rows = self
                    .labels
                    .iter()
                    .enumerate()
                    .filter(|(_, &l)| l == b)
                    .map(|(i, _)| self.table.row(i));
                let del = resolution_of(rows).map_or(0, |v| v.del());
                (self.sizes[b] * del) as u64
            })
            .sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances::figure_one;
    use crate::table::is_k_anonymous;

    fn bell(n: usize) -> u64 {
        // Bell triangle.
        let mut row = vec![1u64];
        for _ in 1..=n {
            let mut next = vec![*row.last().unwrap()];
            for &x in &row {
                next.push(next.last().unwrap() + x);
            }
            row = next;
        }
        row[0]
    }

    #[test]
    fn figure_one_optimum() {
        let r = brute_force_min(&figure_one(), 2, None).unwrap();
        assert_eq!(r.cost, 4);
        assert!(r.clustering.is_k_feasible(2));
        assert_eq!(r.clustering.cost(), 4);
    }

    #[test]
    fn identical_rows_cost_nothing() {
        let t = Table::from_records(vec![vec!["x", "y"]; 5]).unwrap();
        for k in 1..=5 {
            assert_eq!(brute_force_min(&t, k, None).unwrap().cost, 0);
        }
    }

    #[test]
    fn bell_numbers_for_k1() {
        for n in 1..=8 {
            let t = Table::from_records((0..n).map(|i| vec![i.to_string()])).unwrap();
            let r = brute_force_min(&t, 1, None).unwrap();
            assert_eq!(r.partitions_examined, bell(n), "n = {n}");
            assert_eq!(r.cost, 0);
        }
    }

    #[test]
    fn caps_and_bad_k() {
        let t = Table::from_records((0..9).map(|i| vec![i.to_string()])).unwrap();
        assert!(matches!(
            brute_force_min(&t, 1, None),
            Err(Error::OracleCap { n: 9, cap: 8 })
        ));
        assert!(brute_force_min(&t, 1, Some(9)).is_ok());
        assert!(matches!(
            brute_force_min(&t, 10, None),
            Err(Error::InvalidK { .. })
        ));
        assert!(matches!(
            brute_force_min(&t, 0, None),
            Err(Error::InvalidK { .. })
        ));
        let big = Table::from_records((0..13).map(|i| vec![i.to_string()])).unwrap();
        assert!(matches!(
            brute_force_min(&big, 3, None),
            Err(Error::OracleCap { .. })
        ));
    }

    #[test]
    fn lower_bound_when_suppression_is_needed() {
        let t = figure_one();
        for k in 2..=7 {
            let r = brute_force_min(&t, k, None).unwrap();
            if !is_k_anonymous(&t, k) {
                assert!(r.cost >= k as u64, "k = {k}: cost {}", r.cost);
            }
        }
    }
}
