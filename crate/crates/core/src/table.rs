//! Table model and suppression-cost semantics.
//!
//! Symbols are interned per column: entry `j` of every row is an index into
//! the alphabet of column `j`. Identity of symbols across columns is never
//! used, since suppression cost only compares entries within a column.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use crate::error::{Error, Result};

/// Text used for a suppressed entry on input and output.
pub const STAR: &str = "*";

/// Interned symbol of one column.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SymbolId(pub u32);

/// The distinct values of one column, in first-appearance order.
#[derive(Clone, Debug, Default)]
pub struct ColumnAlphabet {
    symbols: Vec<String>,
    lookup: HashMap<String, SymbolId>,
}

impl ColumnAlphabet {
    pub fn intern(&mut self, text: &str) -> SymbolId {
        if let Some(&id) = self.lookup.get(text) {
            return id;
        }
        let id = SymbolId(self.symbols.len() as u32);
        self.symbols.push(text.to_owned());
        self.lookup.insert(text.to_owned(), id);
        id
    }

    pub fn get(&self, text: &str) -> Option<SymbolId> {
        self.lookup.get(text).copied()
    }

    pub fn text(&self, id: SymbolId) -> &str {
        &self.symbols[id.0 as usize]
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn ids(&self) -> impl Iterator<Item = SymbolId> {
        (0..self.symbols.len() as u32).map(SymbolId)
    }
}

/// One table row: a symbol id per column, never suppressed.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Row(Vec<SymbolId>);

impl Row {
    pub fn new(entries: Vec<SymbolId>) -> Self {
        Row(entries)
    }

    pub fn entries(&self) -> &[SymbolId] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// An entry of a resolution vector. `Star` orders after every symbol.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Cell {
    Sym(SymbolId),
    Star,
}

/// Template over `Σ_j ∪ {*}` to which every row of a cluster is reduced.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ResolutionVector {
    cells: Vec<Cell>,
    del: usize,
}

impl ResolutionVector {
    pub fn new(cells: Vec<Cell>) -> Self {
        let del = cells.iter().filter(|c| **c == Cell::Star).count();
        ResolutionVector { cells, del }
    }

    /// The vector that keeps every entry of `row`.
    pub fn exact(row: &Row) -> Self {
        ResolutionVector {
            cells: row.entries().iter().map(|&s| Cell::Sym(s)).collect(),
            del: 0,
        }
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    /// Number of suppressed positions.
    pub fn del(&self) -> usize {
        self.del
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    /// Compatibility test without the length check; lengths must agree.
    pub fn accepts(&self, row: &Row) -> bool {
        debug_assert_eq!(self.cells.len(), row.len());
        self.cells
            .iter()
            .zip(row.entries())
            .all(|(c, s)| matches!(c, Cell::Star) || *c == Cell::Sym(*s))
    }
}

/// `|{i : a[i] != b[i]}|`.
pub fn hamming(a: &Row, b: &Row) -> Result<usize> {
    if a.len() != b.len() {
        return Err(Error::LengthMismatch {
            expected: a.len(),
            actual: b.len(),
        });
    }
    Ok(a.entries()
        .iter()
        .zip(b.entries())
        .filter(|(x, y)| x != y)
        .count())
}

/// True iff `v` has a star at every column where it differs from `r`.
pub fn compatible(v: &ResolutionVector, r: &Row) -> Result<bool> {
    if v.len() != r.len() {
        return Err(Error::LengthMismatch {
            expected: v.len(),
            actual: r.len(),
        });
    }
    Ok(v.accepts(r))
}

/// Positions of the vectors of `candidates` compatible with `r`, in the
/// order of `candidates`.
pub fn comp_set(r: &Row, candidates: &[ResolutionVector]) -> Vec<usize> {
    candidates
        .iter()
        .enumerate()
        .filter(|(_, v)| v.accepts(r))
        .map(|(i, _)| i)
        .collect()
}

/// Resolution vector of a nonempty set of rows; `None` when the set is empty.
pub fn resolution_of<'a, I>(rows: I) -> Option<ResolutionVector>
where
    I: IntoIterator<Item = &'a Row>,
{
    let mut iter = rows.into_iter();
    let first = iter.next()?;
    let mut cells: Vec<Cell> = first.entries().iter().map(|&s| Cell::Sym(s)).collect();
    for row in iter {
        for (cell, sym) in cells.iter_mut().zip(row.entries()) {
            if *cell != Cell::Sym(*sym) {
                *cell = Cell::Star;
            }
        }
    }
    Some(ResolutionVector::new(cells))
}

/// A problem instance: `n >= 1` rows over `m` per-column alphabets.
#[derive(Clone, Debug)]
pub struct Table {
    alphabets: Vec<ColumnAlphabet>,
    rows: Vec<Row>,
}

impl Table {
    /// Builds a table from textual records. Rejects empty input, ragged
    /// records and the reserved `*` symbol.
    pub fn from_records<R, S>(records: R) -> Result<Table>
    where
        R: IntoIterator,
        R::Item: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let mut alphabets: Vec<ColumnAlphabet> = Vec::new();
        let mut rows = Vec::new();
        let mut width = None;
        for (record_no, record) in records.into_iter().enumerate() {
            let fields: Vec<S> = record.into_iter().collect();
            let m = *width.get_or_insert_with(|| {
                alphabets = vec![ColumnAlphabet::default(); fields.len()];
                fields.len()
            });
            if fields.len() != m {
                return Err(Error::RaggedRecord {
                    record: record_no,
                    expected: m,
                    actual: fields.len(),
                });
            }
            let mut entries = Vec::with_capacity(m);
            for (column, field) in fields.iter().enumerate() {
                let text = field.as_ref();
                if text == STAR {
                    return Err(Error::ReservedSymbol {
                        record: record_no,
                        column,
                    });
                }
                entries.push(alphabets[column].intern(text));
            }
            rows.push(Row(entries));
        }
        if rows.is_empty() {
            return Err(Error::EmptyTable);
        }
        Ok(Table { alphabets, rows })
    }

    /// Number of rows.
    pub fn n(&self) -> usize {
        self.rows.len()
    }

    /// Number of columns.
    pub fn m(&self) -> usize {
        self.alphabets.len()
    }

    pub fn rows(&self) -> &[Row] {
        &self.rows
    }

    pub fn row(&self, index: usize) -> &Row {
        &self.rows[index]
    }

    pub fn alphabet(&self, column: usize) -> &ColumnAlphabet {
        &self.alphabets[column]
    }

    pub fn alphabet_sizes(&self) -> Vec<usize> {
        self.alphabets.iter().map(ColumnAlphabet::len).collect()
    }

    /// `Π_j (|Σ_j| + 1)`, saturating.
    pub fn candidate_space_size(&self) -> u64 {
        self.alphabets
            .iter()
            .fold(1u64, |acc, a| acc.saturating_mul(a.len() as u64 + 1))
    }

    pub fn row_text(&self, index: usize) -> Vec<&str> {
        self.rows[index]
            .entries()
            .iter()
            .enumerate()
            .map(|(j, &s)| self.alphabets[j].text(s))
            .collect()
    }

    pub fn vector_text(&self, v: &ResolutionVector) -> Vec<&str> {
        v.cells()
            .iter()
            .enumerate()
            .map(|(j, c)| match c {
                Cell::Sym(s) => self.alphabets[j].text(*s),
                Cell::Star => STAR,
            })
            .collect()
    }

    /// Parses a vector written with the table's own symbols and `*`.
    pub fn parse_vector<S: AsRef<str>>(&self, fields: &[S]) -> Result<ResolutionVector> {
        if fields.len() != self.m() {
            return Err(Error::LengthMismatch {
                expected: self.m(),
                actual: fields.len(),
            });
        }
        let cells = fields
            .iter()
            .enumerate()
            .map(|(j, f)| match f.as_ref() {
                STAR => Ok(Cell::Star),
                text => self.alphabets[j]
                    .get(text)
                    .map(Cell::Sym)
                    .ok_or_else(|| Error::Parse(format!("column {j}: unknown symbol `{text}`"))),
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(ResolutionVector::new(cells))
    }

    /// Records of the table after suppressing entries per `clustering`.
    pub fn suppressed_records(&self, clustering: &Clustering) -> Vec<Vec<String>> {
        let mut out: Vec<Vec<String>> = (0..self.n())
            .map(|i| self.row_text(i).into_iter().map(str::to_owned).collect())
            .collect();
        for (row, column) in clustering.suppressed_cells() {
            out[row][column] = STAR.to_owned();
        }
        out
    }
}

/// Maximal set of identical rows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Group {
    pub representative: Row,
    /// Sorted row indices.
    pub members: Vec<usize>,
}

impl Group {
    pub fn size(&self) -> usize {
        self.members.len()
    }

    /// `max(0, s(g) - k)`.
    pub fn exc(&self, k: usize) -> usize {
        self.size().saturating_sub(k)
    }
}

/// Groups of identical rows, ordered by representative.
pub fn group_rows(table: &Table) -> Vec<Group> {
    let mut by_row: BTreeMap<&Row, Vec<usize>> = BTreeMap::new();
    for (i, row) in table.rows().iter().enumerate() {
        by_row.entry(row).or_default().push(i);
    }
    by_row
        .into_iter()
        .map(|(row, members)| Group {
            representative: row.clone(),
            members,
        })
        .collect()
}

/// True iff every group has at least `k` rows, i.e. no suppression is needed.
pub fn is_k_anonymous(table: &Table, k: usize) -> bool {
    group_rows(table).iter().all(|g| g.size() >= k)
}

/// One cluster of a clustering with its resolution vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Block {
    rows: Vec<usize>,
    resolution: ResolutionVector,
}

impl Block {
    pub fn rows(&self) -> &[usize] {
        &self.rows
    }

    pub fn resolution(&self) -> &ResolutionVector {
        &self.resolution
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// `|P| * del(resolution)`.
    pub fn cost(&self) -> u64 {
        self.rows.len() as u64 * self.resolution.del() as u64
    }
}

/// A partition of the rows of a table into blocks, with its suppression cost.
///
/// Blocks are kept in a normal form: rows sorted inside each block, blocks
/// sorted by their smallest row. Two clusterings of the same partition are
/// therefore equal regardless of how they were built.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Clustering {
    blocks: Vec<Block>,
    cost: u64,
}

impl Clustering {
    pub fn new(table: &Table, blocks: Vec<Vec<usize>>) -> Result<Clustering> {
        let n = table.n();
        let mut seen = vec![false; n];
        let mut out = Vec::with_capacity(blocks.len());
        let mut cost: u64 = 0;
        for mut rows in blocks {
            if rows.is_empty() {
                return Err(Error::NotAPartition("empty block".into()));
            }
            rows.sort_unstable();
            for &r in &rows {
                if r >= n {
                    return Err(Error::NotAPartition(format!("row {r} out of range")));
                }
                if std::mem::replace(&mut seen[r], true) {
                    return Err(Error::NotAPartition(format!("row {r} appears twice")));
                }
            }
            let resolution =
                resolution_of(rows.iter().map(|&r| table.row(r))).expect("block is nonempty");
            let block = Block { rows, resolution };
            cost = cost
                .checked_add(block.cost())
                .ok_or_else(|| Error::Internal("cost overflow".into()))?;
            out.push(block);
        }
        if let Some(missing) = seen.iter().position(|s| !s) {
            return Err(Error::NotAPartition(format!(
                "row {missing} is not covered"
            )));
        }
        out.sort_by_key(|b| b.rows[0]);
        Ok(Clustering { blocks: out, cost })
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    pub fn cost(&self) -> u64 {
        self.cost
    }

    /// Every block has at least `k` rows.
    pub fn is_k_feasible(&self, k: usize) -> bool {
        self.blocks.iter().all(|b| b.len() >= k)
    }

    pub fn block_sizes(&self) -> Vec<usize> {
        self.blocks.iter().map(Block::len).collect()
    }

    /// Index of the block holding each row.
    pub fn assignment(&self) -> Vec<usize> {
        let n = self.blocks.iter().map(Block::len).sum();
        let mut out = vec![0; n];
        for (b, block) in self.blocks.iter().enumerate() {
            for &r in &block.rows {
                out[r] = b;
            }
        }
        out
    }

    /// `(row, column)` of every suppressed entry, sorted.
    pub fn suppressed_cells(&self) -> Vec<(usize, usize)> {
        let mut cells = Vec::new();
        for block in &self.blocks {
            let stars: Vec<usize> = block
                .resolution
                .cells()
                .iter()
                .enumerate()
                .filter(|(_, c)| **c == Cell::Star)
                .map(|(j, _)| j)
                .collect();
            for &r in &block.rows {
                cells.extend(stars.iter().map(|&j| (r, j)));
            }
        }
        cells.sort_unstable();
        cells
    }

    /// Block sets as sorted row lists; convenient for comparisons in tests.
    pub fn partition(&self) -> Vec<Vec<usize>> {
        self.blocks.iter().map(|b| b.rows.clone()).collect()
    }
}

/// Total suppression cost of a partition of `table`'s rows.
pub fn clustering_cost(table: &Table, blocks: Vec<Vec<usize>>) -> Result<u64> {
    Clustering::new(table, blocks).map(|c| c.cost())
}

impl fmt::Display for Row {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|s| s.0.to_string()).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances::figure_one;

    fn table(rows: &[&str]) -> Table {
        Table::from_records(rows.iter().map(|r| r.chars().map(|c| c.to_string()))).unwrap()
    }

    #[test]
    fn hamming_examples() {
        let t = table(&["aaa", "aaa", "aba", "bbb"]);
        assert_eq!(hamming(t.row(0), t.row(1)).unwrap(), 0);
        assert_eq!(hamming(t.row(2), t.row(3)).unwrap(), 2);
        let short = Row::new(vec![SymbolId(0)]);
        assert!(matches!(
            hamming(t.row(0), &short),
            Err(Error::LengthMismatch { .. })
        ));
    }

    #[test]
    fn groups_of_figure_one() {
        let t = figure_one();
        let sizes: Vec<usize> = group_rows(&t).iter().map(Group::size).collect();
        assert_eq!(sizes, vec![4, 1, 1, 1]);
        assert_eq!(group_rows(&t)[0].members, vec![0, 1, 2, 3]);
        assert!(!is_k_anonymous(&t, 2));
        assert!(is_k_anonymous(&t, 1));
    }

    #[test]
    fn identical_and_distinct_groups() {
        let t = table(&["ab", "ab", "ab"]);
        assert_eq!(group_rows(&t).len(), 1);
        assert!(is_k_anonymous(&t, 3));
        let t = table(&["ab", "ba", "bb"]);
        assert_eq!(group_rows(&t).len(), 3);
        assert!(group_rows(&t).iter().all(|g| g.size() == 1));
    }

    #[test]
    fn resolution_and_compatibility() {
        let t = figure_one();
        let v = resolution_of([t.row(0), t.row(4)]).unwrap();
        assert_eq!(t.vector_text(&v), vec!["a", "*", "a"]);
        assert_eq!(v.del(), 1);
        let w = resolution_of([t.row(5), t.row(6)]).unwrap();
        assert_eq!(t.vector_text(&w), vec!["b", "b", "*"]);
        let single = resolution_of([t.row(5)]).unwrap();
        assert_eq!(single, ResolutionVector::exact(t.row(5)));
        assert!(resolution_of(std::iter::empty()).is_none());

        assert!(compatible(&v, t.row(4)).unwrap());
        assert!(!compatible(&v, t.row(5)).unwrap());
        assert!(compatible(&single, t.row(5)).unwrap());
        assert!(compatible(&ResolutionVector::new(vec![Cell::Star]), t.row(0)).is_err());
    }

    #[test]
    fn comp_sets_of_figure_one() {
        let t = figure_one();
        let s = vec![
            t.parse_vector(&["a", "a", "a"]).unwrap(),
            t.parse_vector(&["a", "*", "a"]).unwrap(),
            t.parse_vector(&["b", "b", "*"]).unwrap(),
        ];
        assert_eq!(comp_set(t.row(0), &s), vec![0, 1]);
        assert_eq!(comp_set(t.row(4), &s), vec![1]);
        assert!(comp_set(t.row(0), &[]).is_empty());
    }

    #[test]
    fn cost_of_figure_one_solution() {
        let t = figure_one();
        let c = Clustering::new(&t, vec![vec![0, 1, 2], vec![3, 4], vec![5, 6]]).unwrap();
        assert_eq!(c.cost(), 4);
        assert_eq!(
            c.blocks().iter().map(Block::cost).collect::<Vec<_>>(),
            vec![0, 2, 2]
        );
        assert_eq!(c.suppressed_cells(), vec![(3, 1), (4, 1), (5, 2), (6, 2)]);
        assert!(c.is_k_feasible(2));
        assert!(!c.is_k_feasible(3));
        let same = table(&["ab", "ab"]);
        assert_eq!(clustering_cost(&same, vec![vec![0, 1]]).unwrap(), 0);
    }

    #[test]
    fn non_partitions_are_rejected() {
        let t = figure_one();
        for blocks in [
            vec![vec![0, 1, 2], vec![3, 4], vec![5]],
            vec![vec![0, 1, 2, 3], vec![3, 4, 5, 6]],
            vec![vec![0, 1, 2, 3, 4, 5, 6], vec![]],
            vec![vec![0, 1, 2, 3, 4, 5, 6, 7]],
        ] {
            assert!(matches!(
                Clustering::new(&t, blocks),
                Err(Error::NotAPartition(_))
            ));
        }
    }

    #[test]
    fn parsing_rejects_bad_input() {
        let empty: Vec<Vec<&str>> = vec![];
        assert_eq!(Table::from_records(empty).unwrap_err(), Error::EmptyTable);
        assert!(matches!(
            Table::from_records(vec![vec!["a", "b"], vec!["a"]]),
            Err(Error::RaggedRecord { record: 1, .. })
        ));
        assert!(matches!(
            Table::from_records(vec![vec!["a", "*"]]),
            Err(Error::ReservedSymbol {
                record: 0,
                column: 1
            })
        ));
    }

    #[test]
    fn star_orders_last() {
        assert!(Cell::Sym(SymbolId(u32::MAX)) < Cell::Star);
    }
}
