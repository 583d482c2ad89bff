//! Small reference instances and seeded random generators used by the
//! self-test, the property tests and the acceptance suite.

use rand::Rng;

use crate::table::Table;

/// The seven-row worked example: `aaa` four times, then `aba`, `bbb`, `bbc`.
pub fn figure_one() -> Table {
    let rows = ["aaa", "aaa", "aaa", "aaa", "aba", "bbb", "bbc"];
    Table::from_records(rows.iter().map(|r| r.chars().map(String::from)))
        .expect("static table is valid")
}

/// Shape of randomly generated tables. Ranges are inclusive.
#[derive(Clone, Copy, Debug)]
pub struct RandomTableSpec {
    pub rows: (usize, usize),
    pub columns: (usize, usize),
    pub alphabet: (usize, usize),
    /// Upper bound on `Π_j (|Σ_j| + 1)` of the drawn column alphabets.
    pub max_space: u64,
    /// Values of `k` to draw from.
    pub ks: &'static [usize],
}

impl Default for RandomTableSpec {
    fn default() -> Self {
        RandomTableSpec {
            rows: (4, 8),
            columns: (2, 3),
            alphabet: (2, 3),
            max_space: 64,
            ks: &[2, 3],
        }
    }
}

/// A generated table together with the `k` to solve it for.
#[derive(Clone, Debug)]
pub struct RandomInstance {
    pub table: Table,
    pub k: usize,
}

/// Draws one instance. Column `j` draws its entries uniformly from
/// `|Σ_j|` symbols `a, b, c, ...`; a symbol may end up unused.
pub fn random_instance<R: Rng>(rng: &mut R, spec: &RandomTableSpec) -> RandomInstance {
    let n = rng.gen_range(spec.rows.0..=spec.rows.1);
    let m = rng.gen_range(spec.columns.0..=spec.columns.1);
    let sizes: Vec<usize> = loop {
        let sizes: Vec<usize> = (0..m)
            .map(|_| rng.gen_range(spec.alphabet.0..=spec.alphabet.1))
            .collect();
        let space: u64 = sizes.iter().map(|&s| s as u64 + 1).product();
        if space <= spec.max_space {
            break sizes;
        }
    };
    let records: Vec<Vec<String>> = (0..n)
        .map(|_| {
            sizes
                .iter()
                .map(|&s| char::from(b'a' + rng.gen_range(0..s) as u8).to_string())
                .collect()
        })
        .collect();
    let table = Table::from_records(records).expect("generated table is valid");
    let mut k = spec.ks[rng.gen_range(0..spec.ks.len())];
    k = k.min(n);
    RandomInstance { table, k }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn figure_one_shape() {
        let t = figure_one();
        assert_eq!((t.n(), t.m()), (7, 3));
        assert_eq!(t.alphabet_sizes(), vec![2, 2, 3]);
    }

    #[test]
    fn generator_respects_spec_and_seed() {
        let spec = RandomTableSpec::default();
        let mut a = ChaCha8Rng::seed_from_u64(7);
        let mut b = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..50 {
            let x = random_instance(&mut a, &spec);
            let y = random_instance(&mut b, &spec);
            assert_eq!(x.table.rows(), y.table.rows());
            assert!((4..=8).contains(&x.table.n()));
            assert!((2..=3).contains(&x.table.m()));
            assert!(x.table.candidate_space_size() <= 64);
            assert!(x.k == 2 || x.k == 3);
        }
    }
}
